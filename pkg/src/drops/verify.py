"""Named verification suites behind the CLI ``verify`` command.

Every check returns (name, passed, detail).  The expected counting
tables are recorded here; the numeric suites re-derive everything else
from the constructed bases at the stated tolerances.
"""

from __future__ import annotations

import math

import numpy as np

from . import cartesian as ca
from . import dropsmap as dm
from . import dynamics as dy
from . import multipole as mp
from . import opalg
from . import tensorbasis as tb
from .symgroup import Permutation, all_standard_tableaux

__all__ = ["SUITES", "run_suite", "EXPECTED_DROPLET_COUNTS", "EXPECTED_MULTIPLICITIES", "EXPECTED_RANK_CONTENT"]

# droplet-count table: n -> (minimum, multipole, lisa, maximum)
EXPECTED_DROPLET_COUNTS = {
    1: (1, 1, 2, 2),
    2: (3, 4, 4, 6),
    3: (9, 9, 11, 20),
    4: (28, 36, 36, 70),
    5: (90, 100, 122, 252),
    6: (297, 400, 423, 924),
    7: (1001, 1225, 1486, 3432),
    8: (3640, 4900, 5246, 12870),
}

# multiplicity table: n -> {j: (n_j, nbar_j)}
EXPECTED_MULTIPLICITIES = {
    0: {0: (1, 1)},
    1: {0: (0, 1), 1: (1, 1)},
    2: {0: (1, 2), 1: (1, 3), 2: (1, 1)},
    3: {0: (1, 5), 1: (3, 9), 2: (2, 5), 3: (1, 1)},
    4: {0: (3, 14), 1: (6, 28), 2: (6, 20), 3: (3, 7), 4: (1, 1)},
    5: {0: (6, 42), 1: (15, 90), 2: (15, 75), 3: (10, 35), 4: (4, 9), 5: (1, 1)},
    6: {0: (15, 132), 1: (36, 297), 2: (40, 275), 3: (29, 154), 4: (15, 54),
        5: (5, 11), 6: (1, 1)},
    7: {0: (36, 429), 1: (91, 1001), 2: (105, 1001), 3: (84, 637), 4: (49, 273),
        5: (21, 77), 6: (6, 13), 7: (1, 1)},
    8: {0: (91, 1430), 1: (232, 3432), 2: (280, 3640), 3: (238, 2548),
        4: (154, 1260), 5: (76, 440), 6: (28, 104), 7: (7, 15), 8: (1, 1)},
}

# (shape -> (#tableaux, rank multiset)) per linearity, up to six spins
EXPECTED_RANK_CONTENT = {
    1: {(1,): (1, (1,))},
    2: {(2,): (1, (0, 2)), (1, 1): (1, (1,))},
    3: {(3,): (1, (1, 3)), (2, 1): (2, (1, 2)), (1, 1, 1): (1, (0,))},
    4: {(4,): (1, (0, 2, 4)), (3, 1): (3, (1, 2, 3)), (2, 2): (2, (0, 2)),
        (2, 1, 1): (3, (1,))},
    5: {(5,): (1, (1, 3, 5)), (4, 1): (4, (1, 2, 3, 4)), (3, 2): (5, (1, 2, 3)),
        (3, 1, 1): (6, (0, 2)), (2, 2, 1): (5, (1,))},
    6: {(6,): (1, (0, 2, 4, 6)), (5, 1): (5, (1, 2, 3, 4, 5)),
        (4, 2): (9, (0, 2, 2, 3, 4)), (4, 1, 1): (10, (1, 3)),
        (3, 3): (5, (1, 3)), (3, 2, 1): (16, (1, 2)), (2, 2, 2): (5, (0,))},
}

_rng = np.random.default_rng(2024)


def _random_operator(n):
    d = 2**n
    return _rng.normal(size=(d, d)) + 1j * _rng.normal(size=(d, d))


def _random_density(n):
    a = _random_operator(n)
    rho = a @ a.conj().T
    return rho / np.trace(rho)


def check_basis(n_max: int = 3):
    out = []
    for n in range(1, n_max + 1):
        basis = tb.build_lisa_basis(n)
        racah = max(tb.racah_deviation(t, n) for t in basis.tensors)
        out.append((f"basis n={n} tensor commutators", racah <= 1e-10, f"{racah:.2e}"))
        cs = max(
            float(np.max(np.abs(t.components[m] - (-1) ** m * t.components[-m].conj().T)))
            for t in basis.tensors
            for m in range(0, t.j + 1)
        )
        out.append((f"basis n={n} conjugation symmetry", cs <= 1e-12, f"{cs:.2e}"))
        mats = [t.components[m] for t in basis.tensors for m in range(-t.j, t.j + 1)]
        stack = np.array([m.ravel() for m in mats])
        gram = stack.conj() @ stack.T
        ortho = float(np.max(np.abs(gram - np.eye(len(mats)))))
        out.append((f"basis n={n} orthonormality", ortho <= 1e-10, f"{ortho:.2e}"))
    return out


def check_tables():
    out = []
    a = ca.bilinear_transform("to_lisa", (1, 2), 2)
    b = ca.bilinear_transform("from_lisa", (1, 2), 2)
    dev = float(np.max(np.abs(a @ b - np.eye(9))))
    out.append(("bilinear transforms inverse pair", dev <= 1e-12, f"{dev:.2e}"))

    basis2 = tb.build_lisa_basis(2)
    fams = {t.j: t for t in basis2.tensors if t.label.spins == (1, 2)}
    cart = [ca.product_op({1: x1, 2: x2}, 2) for x1, x2 in ca.BILINEAR_CART_ORDER]
    worst = 0.0
    for row, (j, m) in enumerate(ca.BILINEAR_TENSOR_ORDER):
        expect = sum(a[row, col] * cart[col] for col in range(9))
        worst = max(worst, float(np.max(np.abs(fams[j].components[m] - expect))))
    out.append(("bilinear table vs built basis", worst <= 1e-10, f"{worst:.2e}"))

    basis3 = tb.build_lisa_basis(3)
    order = all_standard_tableaux(3)
    tri = {}
    for t in basis3.tensors:
        if t.label.g == 3:
            base = t.label.tableau.relabel(
                {e: i + 1 for i, e in enumerate(t.label.tableau.entries)}
            )
            tri[(order.index(base) + 1, t.j)] = t
    to_cart, from_cart = ca.trilinear_tables()

    def cart3(abc):
        return ca.product_op({1: abc[0], 2: abc[1], 3: abc[2]}, 3) / 4

    worst = max(
        float(
            np.max(
                np.abs(
                    tri[(tau, j)].components[m]
                    - sum(c * cart3(abc) for c, abc in terms)
                )
            )
        )
        for (tau, j, m), terms in to_cart.items()
    )
    out.append(("trilinear tensor expansion table", worst <= 1e-10, f"{worst:.2e}"))
    worst = max(
        float(
            np.max(
                np.abs(
                    4 * cart3(abc)
                    - sum(c * tri[(tau, j)].components[m] for (tau, j, m), c in terms)
                )
            )
        )
        for abc, terms in from_cart.items()
    )
    out.append(("trilinear product expansion table", worst <= 1e-10, f"{worst:.2e}"))

    cb = mp.coupled_basis(3)
    worst = 0.0
    for from_key, to_key, j, terms in mp.decomposition_rows():
        comp = mp.multipole_tensor(cb, from_key, to_key, j)
        for m in range(-j, j + 1):
            expect = _resolve_row(terms, m, basis3)
            worst = max(worst, float(np.max(np.abs(comp[m] - expect))))
    out.append(("multipole decomposition table", worst <= 1e-10, f"{worst:.2e}"))
    return out


def _resolve_row(terms, m, basis3):
    order = all_standard_tableaux(3)
    total = 0
    for c, key in terms:
        kind = key[0]
        if kind == "id":
            fam = next(t for t in basis3.tensors if t.label.g == 0)
        elif kind == "lin":
            fam = next(t for t in basis3.tensors if t.label.spins == (key[1],))
        elif kind == "bil":
            fam = next(
                t for t in basis3.tensors if t.label.spins == key[1] and t.j == key[2]
            )
        else:
            fam = next(
                t
                for t in basis3.tensors
                if t.label.g == 3
                and t.j == key[2]
                and order.index(
                    t.label.tableau.relabel(
                        {e: i + 1 for i, e in enumerate(t.label.tableau.entries)}
                    )
                )
                + 1
                == key[1]
            )
        total = total + c * fam.components[m]
    return total


def check_counting():
    out = []
    ok = True
    for n, (mn, mpole, lisa, mx) in EXPECTED_DROPLET_COUNTS.items():
        got = tb.droplet_bounds(n)
        ok = ok and got == (mn, lisa, mx) and mp.multipole_droplet_count(n) == mpole
    out.append(("droplet count table n<=8", ok, ""))
    ok = True
    for n, rows in EXPECTED_MULTIPLICITIES.items():
        got = {j: (nj, nbar) for j, nj, nbar in tb.multiplicity_table(n)}
        ok = ok and got == rows
    out.append(("multiplicity table n<=8", ok, ""))
    ok = True
    for g, rows in EXPECTED_RANK_CONTENT.items():
        got = {shape: (ntab, content) for shape, ntab, content in tb.symmetry_rank_table(g)}
        ok = ok and got == rows
    out.append(("symmetry/rank classification g<=6", ok, ""))
    return out


def check_wigner(pairs: int = 50):
    out = []
    worst_c, worst_q = 0.0, 0.0
    for n in (2, 3):
        basis = tb.build_lisa_basis(n)
        for _ in range(pairs):
            report = dm.check_wigner_properties(
                _random_operator(n), _random_operator(n), basis, rng=_rng
            )
            for devs in report.values():
                worst_c = max(worst_c, devs["coeff"])
                worst_q = max(worst_q, devs["quad"])
    out.append(("wigner properties coefficient space", worst_c <= 1e-8, f"{worst_c:.2e}"))
    out.append(("wigner properties quadrature", worst_q <= 1e-6, f"{worst_q:.2e}"))
    basis2 = tb.build_lisa_basis(2)
    t00 = next(t for t in basis2.tensors if t.label.spins == (1, 2) and t.j == 0)
    rep = dm.check_wigner_properties(t00.components[0], t00.components[0], basis2)
    out.append(
        (
            "traceless operator norm condition",
            rep["norm"]["coeff"] <= 1e-12 and rep["norm"]["quad"] <= 1e-10,
            f"{rep['norm']['quad']:.2e}",
        )
    )
    return out


def _triple_quantum_trace():
    rho0 = sum(ca.product_op({k: "z"}, 3) for k in (1, 2, 3))
    couplings = {(1, 2): 10.0, (1, 3): 10.0, (2, 3): 10.0}
    segments = [
        dy.PulseSegment("pulse", 25e-6, amplitude=10e3, phase="x"),
        dy.PulseSegment("delay", 50e-3, couplings=couplings, a=0.0, b=1.0),
        dy.PulseSegment("pulse", 25e-6, amplitude=10e3, phase="y"),
    ]
    return dy.run_sequence(rho0, segments)


def check_sequence():
    out = []
    trace = _triple_quantum_trace()
    rho1 = -sum(ca.product_op({k: "y"}, 3) for k in (1, 2, 3))
    dev = float(np.max(np.abs(trace.states[1] - rho1)))
    out.append(("sequence state after first pulse", dev <= 1e-10, f"{dev:.2e}"))
    basis = tb.build_lisa_basis(3)
    tau1 = next(l for l in basis.droplets if l.g == 3 and l.tableau.shape == (3,))
    t2 = dm.decompose(trace.states[2], basis).coefficients[tau1]
    t3 = dm.decompose(trace.states[3], basis).coefficients[tau1]
    ok = (
        abs(abs(t2[(1, 1)]) - 0.78) <= 0.01
        and abs(abs(t2[(3, 1)]) - 1.55) <= 0.01
        and abs(abs(t3[(3, 1)]) - 0.39) <= 0.01
        and abs(t3[(3, 3)] - 1.5j) <= 0.01
    )
    out.append(("sequence droplet coefficients", ok, ""))
    heff = trace.effective_hamiltonian

    def coef(factors):
        bare = ca.product_op(factors, 3) / (2 ** (len(factors) - 1))
        return complex(np.vdot(bare, heff) / np.vdot(bare, bare))

    ok = (
        abs(coef({1: "z"}).real + 18.1) <= 0.1
        and abs(coef({1: "x", 2: "x", 3: "x"}).real + 24.2) <= 0.1
        and abs(coef({1: "x", 2: "x", 3: "y"}).real + 72.5) <= 0.1
    )
    out.append(("effective hamiltonian coefficients", ok, ""))
    u1 = trace.propagators[0]
    ok = (
        abs(np.trace(u1) / 8 - 0.35) <= 0.01
        and abs(np.trace(trace.effective_propagator) / 8 - (0.18 + 0.18j)) <= 0.015
    )
    out.append(("propagator coefficients", ok, ""))
    return out


def check_entanglement():
    out = []
    basis2 = tb.build_lisa_basis(2)
    spec00 = dm.decompose(dy.named_state("zero-product", 2), basis2)
    r00 = dy._max_droplet_radius(spec00, tb.DropLabel((1,)))
    c00 = dy.concurrence_from_radius(r00)
    spec_bell = dm.decompose(dy.named_state("Phi+"), basis2)
    rb = dy._max_droplet_radius(spec_bell, tb.DropLabel((1,)))
    cb = dy.concurrence_from_radius(rb)
    out.append(
        ("concurrence endpoints", abs(c00) <= 1e-6 and abs(cb - 1) <= 1e-6, f"{c00:.1e}/{cb:.8f}")
    )
    worst = 0.0
    for _ in range(20):
        amps = _rng.normal(size=4) + 1j * _rng.normal(size=4)
        amps /= np.linalg.norm(amps)
        rho = np.outer(amps, amps.conj())
        r = dy._max_droplet_radius(dm.decompose(rho, basis2), tb.DropLabel((1,)))
        worst = max(
            worst, abs(dy.concurrence_from_radius(r) - dy.spin_flip_concurrence(rho))
        )
    out.append(("concurrence vs spin-flip oracle", worst <= 1e-6, f"{worst:.2e}"))
    basis3 = tb.build_lisa_basis(3)
    ghz = dm.decompose(dy.named_state("GHZ"), basis3)
    worst = max(ghz.max_abs(tb.DropLabel((k,))) for k in (1, 2, 3))
    out.append(("GHZ linear droplets vanish", worst <= 1e-12, f"{worst:.2e}"))
    spec_w = dm.decompose(dy.named_state("W"), basis3)
    spec_ref = dm.decompose(dy.named_state("zero-product", 3), basis3)
    r_w = dy._max_droplet_radius(spec_w, tb.DropLabel((1,)))
    r_ref = dy._max_droplet_radius(spec_ref, tb.DropLabel((1,)))
    ok = abs(r_w - r_ref / 3) <= 1e-8 and r_w < 0.1
    out.append(("W linear droplets small (ratio exactly 1/3)", ok, f"{r_w:.4f}"))
    return out


def check_coherence():
    out = []
    basis = tb.build_lisa_basis(3)
    ok = True
    for tensor in basis.tensors:
        for m in range(-tensor.j, tensor.j + 1):
            parts = dm.coherence_orders(tensor.components[m], basis)
            ok = ok and set(parts) == {m}
    out.append(("tensor components have unique order", ok, ""))
    basis2 = tb.build_lisa_basis(2)
    op = ca.product_op({1: "x", 2: "y"}, 2)
    parts = dm.coherence_orders(op, basis2)
    dq = (ca.product_op({1: "x", 2: "y"}, 2) + ca.product_op({1: "y", 2: "x"}, 2)) / 2
    zq = (-ca.product_op({1: "x", 2: "y"}, 2) + ca.product_op({1: "y", 2: "x"}, 2)) / 2
    ok = (
        set(parts) == {-2, 0, 2}
        and float(np.max(np.abs(parts[2] + parts[-2] - dq))) <= 1e-10
        and float(np.max(np.abs(parts[0] + zq))) <= 1e-10
    )
    out.append(("antiphase splits into DQ and ZQ", ok, ""))
    return out


def check_restriction():
    out = []
    basis = tb.build_lisa_basis(3)
    swap = tb.restrict_basis(basis, [Permutation.from_cycles(3, (1, 2))])
    ok = (
        len(swap.families) == 12
        and swap.dimension == 40
        and swap.droplet_count == 7
    )
    out.append(("two-identical-spins restriction", ok, f"{len(swap.families)}/{swap.dimension}/{swap.droplet_count}"))
    full = tb.restrict_basis(
        basis,
        [Permutation.from_cycles(3, (1, 2)), Permutation.from_cycles(3, (1, 2, 3))],
    )
    ok = (
        len(full.families) == 6 and full.dimension == 20 and full.droplet_count == 4
    )
    out.append(("fully symmetric restriction", ok, f"{len(full.families)}/{full.dimension}/{full.droplet_count}"))
    return out


def check_reduction(samples: int = 50):
    out = []
    worst = 0.0
    for n in (2, 3):
        basis = tb.build_lisa_basis(n)
        keeps = [{1}, {2}] if n == 2 else [{1}, {2, 3}, {1, 3}]
        for _ in range(samples):
            rho = _random_density(n)
            spec = dm.decompose(rho, basis)
            for keep in keeps:
                reduced = dm.reduce_spectrum(spec, keep)
                target = tb.build_lisa_basis(len(keep))
                dev = float(
                    np.max(
                        np.abs(
                            dm.reconstruct(reduced, target)
                            - opalg.partial_trace(rho, n, keep)
                        )
                    )
                )
                worst = max(worst, dev)
    out.append(("spectrum reduction vs partial trace", worst <= 1e-10, f"{worst:.2e}"))
    return out


SUITES = {
    "basis": check_basis,
    "tables": check_tables,
    "counting": check_counting,
    "wigner": check_wigner,
    "sequence": check_sequence,
    "entanglement": check_entanglement,
    "coherence": check_coherence,
    "restriction": check_restriction,
    "reduction": check_reduction,
}


def run_suite(names) -> list:
    results = []
    for name in names:
        results.extend(SUITES[name]())
    return results
