"""Hamiltonians, pulse-sequence simulation, and state indicators.

Pulses are ideal hard pulses by default (couplings switched off while
the pulse is on); pass ``couplings_during_pulse=True`` on a segment for
the combined generator.  Frequency inputs are plain Hz, durations are
seconds; generators carry the 2*pi internally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.optimize

from . import cartesian, opalg
from .dropsmap import DropletSpectrum, eval_droplet
from .tensorbasis import DropLabel

__all__ = [
    "PulseSegment",
    "SequenceTrace",
    "coupling_hamiltonian",
    "pulse_hamiltonian",
    "segment_hamiltonian",
    "run_sequence",
    "named_state",
    "bloch_length",
    "concurrence_from_radius",
    "spin_flip_concurrence",
]

TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class PulseSegment:
    """One step of a sequence: an rf pulse or a free-evolution delay.

    ``couplings`` maps spin pairs (k, l) with k < l to coupling
    constants in Hz; (a, b) select the coupling model (transverse and
    longitudinal weights).
    """

    kind: str  # "pulse" | "delay"
    duration: float  # seconds
    amplitude: float = 0.0  # Hz, pulses only
    phase: str = "x"  # pulse axis
    couplings: dict = field(default_factory=dict)
    a: float = 0.0
    b: float = 1.0
    couplings_during_pulse: bool = False

    def __post_init__(self):
        if self.kind not in ("pulse", "delay"):
            raise ValueError(f"unknown segment kind {self.kind!r}")
        if self.duration < 0:
            raise ValueError("duration must be non-negative")
        for k, l in self.couplings:
            if not k < l:
                raise ValueError(f"coupling pair {(k, l)} must satisfy k < l")


@dataclass
class SequenceTrace:
    states: list  # density operators at t_0 .. t_N
    propagators: list  # segment propagators U_i
    effective_propagator: np.ndarray
    effective_hamiltonian: np.ndarray | None
    total_time: float


def coupling_hamiltonian(n: int, couplings: dict, a: float, b: float) -> np.ndarray:
    """2*pi * sum_kl J_kl (a I_kx I_lx + a I_ky I_ly + b I_kz I_lz).

    (a, b) = (0, 1) is the longitudinal (Ising) model, (1, 1) isotropic,
    (1, 0) planar, and (1, -2) dipolar coupling.
    """
    h = np.zeros((2**n, 2**n), dtype=complex)
    for (k, l), j_hz in couplings.items():
        if not 1 <= k < l <= n:
            raise ValueError(f"coupling pair {(k, l)} outside 1..{n}")
        for axis, weight in (("x", a), ("y", a), ("z", b)):
            if weight:
                # product_op carries the conventional factor 2
                h += TWO_PI * j_hz * weight * cartesian.product_op({k: axis, l: axis}, n) / 2
    return h


def pulse_hamiltonian(n: int, amplitude: float, axis: str) -> np.ndarray:
    """2*pi * amplitude * sum_k I_k,axis."""
    if amplitude < 0:
        raise ValueError("amplitude must be non-negative")
    h = np.zeros((2**n, 2**n), dtype=complex)
    for k in range(1, n + 1):
        h += TWO_PI * amplitude * cartesian.product_op({k: axis}, n)
    return h


def segment_hamiltonian(segment: PulseSegment, n: int) -> np.ndarray:
    if segment.kind == "delay":
        return coupling_hamiltonian(n, segment.couplings, segment.a, segment.b)
    h = pulse_hamiltonian(n, segment.amplitude, segment.phase)
    if segment.couplings_during_pulse:
        h = h + coupling_hamiltonian(n, segment.couplings, segment.a, segment.b)
    return h


def run_sequence(rho0: np.ndarray, segments, n: int | None = None) -> SequenceTrace:
    """Propagate a density operator through a list of segments.

    The trace records every intermediate state, the per-segment
    propagators, the ordered effective propagator, and the effective
    Hamiltonian from its principal logarithm (None for zero total time
    or when an eigenphase sits on the branch cut).
    """
    rho0 = opalg.as_operator(rho0)
    n = opalg.n_spins(rho0) if n is None else n
    states = [rho0]
    props = []
    u_eff = np.eye(2**n, dtype=complex)
    total = 0.0
    for seg in segments:
        h = segment_hamiltonian(seg, n)
        u = opalg.exp_hermitian(h, seg.duration)
        props.append(u)
        states.append(u @ states[-1] @ u.conj().T)
        u_eff = u @ u_eff
        total += seg.duration
    h_eff = None
    if total > 0:
        try:
            h_eff = opalg.log_unitary_principal(u_eff, total)
        except ValueError:
            h_eff = None
    return SequenceTrace(states, props, u_eff, h_eff, total)


# --------------------------------------------------------------------------
# named pure states

def _ket_state(amplitudes: dict, dim: int) -> np.ndarray:
    ket = np.zeros(dim, dtype=complex)
    for idx, amp in amplitudes.items():
        ket[idx] = amp
    ket /= np.linalg.norm(ket)
    return np.outer(ket, ket.conj())


def named_state(name: str, n: int | None = None) -> np.ndarray:
    """Density matrix of a named pure state.

    Two-spin names: Phi+, Phi-, Psi+, Psi-, partial-entangled-example.
    Three-spin names: W, GHZ.  "zero-product" takes any spin count
    (default 2).
    """
    s2 = 1 / math.sqrt(2)
    if name == "zero-product":
        n = 2 if n is None else n
        return _ket_state({0: 1.0}, 2**n)
    if name in ("Phi+", "Phi-"):
        sign = 1.0 if name.endswith("+") else -1.0
        return _ket_state({0: s2, 3: sign * s2}, 4)
    if name in ("Psi+", "Psi-"):
        sign = 1.0 if name.endswith("+") else -1.0
        return _ket_state({1: s2, 2: sign * s2}, 4)
    if name == "partial-entangled-example":
        # [(|00> + |01>)/sqrt(2) + 3 |Psi->]/4, normalized
        amp = {
            0: 1 / (4 * math.sqrt(2)),
            1: 1 / (4 * math.sqrt(2)) + 3 / (4 * math.sqrt(2)),
            2: -3 / (4 * math.sqrt(2)),
        }
        return _ket_state(amp, 4)
    if name == "W":
        a = 1 / math.sqrt(3)
        return _ket_state({4: a, 2: a, 1: a}, 8)
    if name == "GHZ":
        return _ket_state({0: s2, 7: s2}, 8)
    raise ValueError(f"unknown state name {name!r}")


# --------------------------------------------------------------------------
# entanglement indicators

def _max_droplet_radius(spectrum: DropletSpectrum, label: DropLabel) -> float:
    """Maximum of |f| over the sphere, grid-seeded then refined."""
    theta = np.linspace(0, math.pi, 61)
    phi = np.linspace(0, 2 * math.pi, 121, endpoint=False)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    vals = np.abs(eval_droplet(spectrum, label, tt, pp))
    seed = np.unravel_index(np.argmax(vals), vals.shape)
    if vals[seed] < 1e-14:
        return 0.0

    def negabs(x):
        return -abs(eval_droplet(spectrum, label, x[0], x[1]))

    res = scipy.optimize.minimize(
        negabs,
        [tt[seed], pp[seed]],
        method="Nelder-Mead",
        options={"xatol": 1e-10, "fatol": 1e-14},
    )
    return float(max(vals[seed], -res.fun))


def bloch_length(spectrum: DropletSpectrum, k: int) -> float:
    """Length of spin k's Bloch vector from its linear droplet radius."""
    label = DropLabel((k,))
    r = _max_droplet_radius(spectrum, label)
    return r * math.sqrt(2 ** (spectrum.n + 2) * math.pi / 3)


def concurrence_from_radius(r1: float) -> float:
    """Two-spin pure-state concurrence from the maximal linear radius."""
    x = 16 * math.pi * r1**2 / 3
    if x > 1 + 1e-9:
        raise ValueError(f"radius {r1} outside the pure-state domain")
    return math.sqrt(max(1.0 - x, 0.0))


def spin_flip_concurrence(rho: np.ndarray) -> float:
    """Independent two-spin concurrence via the spin-flipped overlap.

    For a pure state |psi> this is |<psi| sigma_y x sigma_y |psi*>|.
    """
    if rho.shape != (4, 4):
        raise ValueError("spin-flip concurrence is defined for two spins")
    evals, vecs = np.linalg.eigh(rho)
    psi = vecs[:, np.argmax(evals)]
    sy = np.array([[0, -1j], [1j, 0]])
    flip = np.kron(sy, sy)
    return float(abs(psi @ flip @ psi))
