"""Operator <-> droplet-spectrum mapping and its function-space side.

A droplet spectrum assigns to every basis label the coefficients
c_{j,m} of the corresponding spherical function f(theta, phi) =
sum c_{j,m} Y_{j,m}(theta, phi).  The mapping is the orthonormal
projection onto the tensor basis, so it is bijective by construction;
the checks for the generalized Wigner-function conditions (linearity,
reality, norm, covariance, trace) live here too, evaluated both in
coefficient space and by spherical quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.special

from . import opalg
from .tensorbasis import DropLabel, LisaBasis, build_lisa_basis, spin_ops
from .symgroup import StandardTableau

__all__ = [
    "DropletSpectrum",
    "decompose",
    "reconstruct",
    "spherical_harmonic",
    "eval_droplet",
    "sphere_quadrature",
    "check_wigner_properties",
    "check_covariance",
    "coherence_orders",
    "reduce_spectrum",
    "rotation_generator",
    "rotation_matrix",
    "spectrum_to_json",
    "spectrum_from_json",
]


@dataclass
class DropletSpectrum:
    """Coefficients c_{j,m} per droplet label."""

    n: int
    coefficients: dict  # label -> {(j, m): complex}

    def droplet(self, label) -> dict:
        return self.coefficients[label]

    def max_abs(self, label) -> float:
        vals = self.coefficients[label].values()
        return max((abs(v) for v in vals), default=0.0)

    def copy_scaled(self, factor: complex) -> "DropletSpectrum":
        return DropletSpectrum(
            self.n,
            {
                lab: {jm: factor * c for jm, c in terms.items()}
                for lab, terms in self.coefficients.items()
            },
        )


def decompose(a: np.ndarray, basis: LisaBasis) -> DropletSpectrum:
    """Project an operator onto the tensor basis, c_{j,m} = Tr(T^dagger a)."""
    a = np.asarray(a, dtype=complex)
    if a.shape[0] != 2**basis.n:
        raise ValueError(f"operator dimension {a.shape[0]} != 2**{basis.n}")
    coeffs: dict = {}
    for tensor in basis.tensors:
        terms = coeffs.setdefault(tensor.label, {})
        for m in range(-tensor.j, tensor.j + 1):
            terms[(tensor.j, m)] = complex(np.vdot(tensor.components[m], a))
    return DropletSpectrum(basis.n, coeffs)


def reconstruct(spectrum: DropletSpectrum, basis: LisaBasis) -> np.ndarray:
    """Sum c_{j,m} T_{j,m}; left inverse of decompose."""
    known = set(basis.droplets)
    unknown = set(spectrum.coefficients) - known
    if unknown:
        raise ValueError(f"labels not in basis: {sorted(map(repr, unknown))}")
    out = np.zeros((2**basis.n, 2**basis.n), dtype=complex)
    for tensor in basis.tensors:
        terms = spectrum.coefficients.get(tensor.label, {})
        for m in range(-tensor.j, tensor.j + 1):
            c = terms.get((tensor.j, m), 0.0)
            if c:
                out += c * tensor.components[m]
    return out


# --------------------------------------------------------------------------
# spherical harmonics and quadrature

def spherical_harmonic(j: int, m: int, theta, phi):
    """Orthonormal complex Y_{j,m} with the Condon-Shortley phase."""
    if abs(m) > j:
        raise ValueError(f"|m| = {abs(m)} exceeds j = {j}")
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    mm = abs(m)
    norm = math.sqrt(
        (2 * j + 1) / (4 * math.pi) * math.factorial(j - mm) / math.factorial(j + mm)
    )
    # scipy's lpmv already carries the Condon-Shortley (-1)**m
    leg = scipy.special.lpmv(mm, j, np.cos(theta))
    val = norm * leg * np.exp(1j * mm * phi)
    if m < 0:
        val = (-1) ** mm * np.conj(val)
    return val if val.ndim else complex(val)


def eval_droplet(spectrum: DropletSpectrum, label, theta, phi):
    """f(theta, phi) of one droplet."""
    if label not in spectrum.coefficients:
        raise ValueError(f"unknown label {label!r}")
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    out = np.zeros(np.broadcast(theta, phi).shape, dtype=complex)
    for (j, m), c in spectrum.coefficients[label].items():
        if c:
            out = out + c * spherical_harmonic(j, m, theta, phi)
    return out if out.ndim else complex(out)


def sphere_quadrature(max_degree: int) -> tuple:
    """Nodes and weights integrating spherical polynomials exactly.

    Gauss-Legendre in cos(theta) crossed with a uniform azimuthal grid;
    exact for products of harmonics up to total degree ``max_degree``.
    Returns flat arrays (theta, phi, weight).
    """
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    n_theta = (max_degree + 2) // 2
    n_phi = max_degree + 1
    x, w = np.polynomial.legendre.leggauss(max(n_theta, 1))
    phis = np.arange(max(n_phi, 1)) * 2 * math.pi / max(n_phi, 1)
    theta = np.repeat(np.arccos(x), len(phis))
    phi = np.tile(phis, len(x))
    weight = np.repeat(w, len(phis)) * (2 * math.pi / len(phis))
    return theta, phi, weight


def rotation_generator(n: int, axis: str) -> np.ndarray:
    """Total spin operator J_axis for non-selective rotations."""
    ops = spin_ops(n)
    if axis == "z":
        return ops["z"]
    if axis == "x":
        return 0.5 * (ops["+"] + ops["-"])
    if axis == "y":
        return -0.5j * (ops["+"] - ops["-"])
    raise ValueError(f"unknown axis {axis!r}")


def rotation_matrix(axis: str, alpha: float) -> np.ndarray:
    """SO(3) rotation of sphere points matching conjugation by exp(-i a J)."""
    c, s = math.cos(alpha), math.sin(alpha)
    if axis == "x":
        return np.array([[1, 0, 0], [0, c, -s], [0, s, c]])
    if axis == "y":
        return np.array([[c, 0, s], [0, 1, 0], [-s, 0, c]])
    if axis == "z":
        return np.array([[c, -s, 0], [s, c, 0], [0, 0, 1]])
    raise ValueError(f"unknown axis {axis!r}")


def _angles_to_xyz(theta, phi):
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=-1)


def _xyz_to_angles(xyz):
    theta = np.arccos(np.clip(xyz[..., 2], -1.0, 1.0))
    phi = np.mod(np.arctan2(xyz[..., 1], xyz[..., 0]), 2 * math.pi)
    return theta, phi


def check_covariance(
    a: np.ndarray,
    axis: str,
    alpha: float,
    basis: LisaBasis,
    grid: tuple = (32, 64),
) -> float:
    """Rotate the operator, rotate the evaluation point, compare.

    Conjugation by U = exp(-i alpha J_axis) must equal evaluating every
    droplet at the inversely rotated point; returns the worst absolute
    difference over the grid.
    """
    u = opalg.exp_hermitian(rotation_generator(basis.n, axis), alpha)
    rotated = decompose(u @ a @ u.conj().T, basis)
    original = decompose(a, basis)
    theta = np.linspace(0, math.pi, grid[0])
    phi = np.linspace(0, 2 * math.pi, grid[1], endpoint=False)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    back = _angles_to_xyz(tt, pp) @ rotation_matrix(axis, alpha)  # R^-1 applied
    tb_, pb = _xyz_to_angles(back)
    worst = 0.0
    for label in basis.droplets:
        lhs = eval_droplet(rotated, label, tt, pp)
        rhs = eval_droplet(original, label, tb_, pb)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def _parseval_trace(sa: DropletSpectrum, sb: DropletSpectrum) -> complex:
    """sum over labels and (j, m) of c^A_{j,m} (-1)^m c^B_{j,-m}."""
    total = 0.0 + 0.0j
    for label, terms in sa.coefficients.items():
        other = sb.coefficients.get(label, {})
        for (j, m), c in terms.items():
            total += c * (-1) ** m * other.get((j, -m), 0.0)
    return total


def _quad_functions(spectrum: DropletSpectrum, theta, phi) -> dict:
    return {
        label: eval_droplet(spectrum, label, theta, phi)
        for label in spectrum.coefficients
    }


def check_wigner_properties(
    a: np.ndarray,
    b: np.ndarray,
    basis: LisaBasis,
    degree: int = 8,
    rng=None,
) -> dict:
    """Deviations of the generalized Wigner-function conditions.

    Each property is evaluated in coefficient space (exact identities of
    the mapping) and through spherical quadrature of the droplet
    functions; covariance is checked by point rotation on a grid.
    """
    if a.shape != b.shape:
        raise ValueError("operators must share a dimension")
    rng = np.random.default_rng(0) if rng is None else rng
    theta, phi, weight = sphere_quadrature(degree)
    sa, sb = decompose(a, basis), decompose(b, basis)
    fa, fb = _quad_functions(sa, theta, phi), _quad_functions(sb, theta, phi)
    report: dict = {}

    # (a) linearity
    al, be = complex(*rng.normal(size=2)), complex(*rng.normal(size=2))
    combo = decompose(al * a + be * b, basis)
    dev_c, dev_q = 0.0, 0.0
    for label, terms in combo.coefficients.items():
        for jm, c in terms.items():
            expect = al * sa.coefficients[label][jm] + be * sb.coefficients[label][jm]
            dev_c = max(dev_c, abs(c - expect))
        fc = eval_droplet(combo, label, theta, phi)
        dev_q = max(dev_q, float(np.max(np.abs(fc - al * fa[label] - be * fb[label]))))
    report["linearity"] = {"coeff": dev_c, "quad": dev_q}

    # (b) reality
    sdag = decompose(a.conj().T, basis)
    dev_c = max(
        abs(sdag.coefficients[label][(j, m)] - (-1) ** m * np.conj(sa.coefficients[label][(j, -m)]))
        for label, terms in sa.coefficients.items()
        for (j, m) in terms
    )
    dev_q = max(
        float(np.max(np.abs(eval_droplet(sdag, label, theta, phi) - np.conj(fa[label]))))
        for label in sa.coefficients
    )
    report["reality"] = {"coeff": dev_c, "quad": dev_q}

    # (c) norm: the identity droplet weighting removes traceless content
    ident = decompose(np.eye(2**basis.n, dtype=complex), basis)
    fid = _quad_functions(ident, theta, phi)
    coeff_sum = _parseval_trace(sa, ident)
    quad_sum = sum(
        complex(np.sum(weight * fa[label] * fid[label])) for label in sa.coefficients
    )
    tr = complex(np.trace(a))
    report["norm"] = {"coeff": abs(coeff_sum - tr), "quad": abs(quad_sum - tr)}

    # (d) covariance under a random non-selective rotation
    axis = ("x", "y", "z")[rng.integers(0, 3)]
    alpha = float(rng.uniform(0.2, 2 * math.pi - 0.2))
    dev = check_covariance(a, axis, alpha, basis)
    report["covariance"] = {"coeff": dev, "quad": dev}

    # (e) trace
    coeff_sum = _parseval_trace(sa, sb)
    quad_sum = sum(
        complex(np.sum(weight * fa[label] * fb[label])) for label in sa.coefficients
    )
    tr = complex(np.trace(a @ b))
    report["trace"] = {"coeff": abs(coeff_sum - tr), "quad": abs(quad_sum - tr)}
    return report


# --------------------------------------------------------------------------
# coherence orders and spectrum reduction

def coherence_orders(a: np.ndarray, basis: LisaBasis, tol: float = 1e-12) -> dict:
    """Split an operator by coherence order p (tensor order m = p)."""
    spectrum = decompose(a, basis)
    parts: dict = {}
    for tensor in basis.tensors:
        terms = spectrum.coefficients[tensor.label]
        for m in range(-tensor.j, tensor.j + 1):
            c = terms[(tensor.j, m)]
            if abs(c) > tol:
                acc = parts.setdefault(m, np.zeros_like(a, dtype=complex))
                acc += c * tensor.components[m]
    return dict(sorted(parts.items()))


def reduce_spectrum(spectrum: DropletSpectrum, keep) -> DropletSpectrum:
    """Delete droplets of traced-out spins; result represents the
    partial trace over the complement of ``keep`` (labels are re-indexed
    to 1..|keep| and coefficients absorb the trace normalization)."""
    keep = sorted(set(keep))
    if not keep:
        raise ValueError("keep set must be nonempty")
    index = {k: i + 1 for i, k in enumerate(keep)}
    scale = math.sqrt(2.0) ** (spectrum.n - len(keep))
    out: dict = {}
    for label, terms in spectrum.coefficients.items():
        if not set(label.spins) <= set(keep):
            continue
        tab = None
        if label.tableau is not None:
            tab = label.tableau.relabel({k: index[k] for k in label.spins})
        new_label = DropLabel(tuple(index[k] for k in label.spins), tab)
        out[new_label] = {jm: scale * c for jm, c in terms.items()}
    return DropletSpectrum(len(keep), out)


# --------------------------------------------------------------------------
# interchange format

def spectrum_to_json(spectrum: DropletSpectrum) -> dict:
    droplets = []
    for label, terms in spectrum.coefficients.items():
        label_json = label.to_json() if hasattr(label, "to_json") else label
        droplets.append(
            {
                "label": label_json,
                "terms": [
                    {"j": j, "m": m, "re": float(c.real), "im": float(c.imag)}
                    for (j, m), c in sorted(terms.items())
                ],
            }
        )
    return {"n": spectrum.n, "droplets": droplets}


def _label_from_json(obj: dict) -> DropLabel:
    tab = obj.get("tau")
    tableau = None if tab is None else StandardTableau(tuple(tuple(r) for r in tab))
    return DropLabel(tuple(obj["G"]), tableau)


def spectrum_from_json(data: dict) -> DropletSpectrum:
    coeffs: dict = {}
    for rec in data["droplets"]:
        label = _label_from_json(rec["label"])
        coeffs[label] = {
            (t["j"], t["m"]): complex(t["re"], t["im"]) for t in rec["terms"]
        }
    return DropletSpectrum(data["n"], coeffs)
