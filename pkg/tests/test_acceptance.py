"""Acceptance criteria, one test per criterion at its stated tolerance.

Each test prints a PASS line on success (run with -v or -s to see
them); tolerances are pinned here, not configurable.
"""

import math
import time

import numpy as np
import pytest

from drops import cartesian as ca
from drops import dropsmap as dm
from drops import dynamics as dy
from drops import multipole as mp
from drops import opalg
from drops import tensorbasis as tb
from drops.symgroup import Permutation, all_standard_tableaux
from drops.verify import (
    EXPECTED_DROPLET_COUNTS,
    EXPECTED_MULTIPLICITIES,
    EXPECTED_RANK_CONTENT,
)

rng = np.random.default_rng(99)


def _random_operator(n):
    d = 2**n
    return rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))


def _report(name):
    print(f"[ACCEPTANCE] {name}: PASS")


def test_basis_correctness():
    tb.build_lisa_basis.cache_clear()
    start = time.perf_counter()
    for n in (1, 2, 3):
        basis = tb.build_lisa_basis(n)
        racah = max(tb.racah_deviation(t, n) for t in basis.tensors)
        assert racah <= 1e-10
        for t in basis.tensors:
            for m in range(0, t.j + 1):
                dev = np.max(
                    np.abs(t.components[m] - (-1) ** m * t.components[-m].conj().T)
                )
                assert dev <= 1e-12
        mats = [t.components[m] for t in basis.tensors for m in range(-t.j, t.j + 1)]
        stack = np.array([m.ravel() for m in mats])
        gram = stack.conj() @ stack.T
        assert np.max(np.abs(gram - np.eye(4**n))) <= 1e-10
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0, f"basis checks took {elapsed:.1f} s"
    _report("basis correctness (commutators / conjugation / orthonormality)")


def test_table_fidelity():
    a = ca.bilinear_transform("to_lisa", (1, 2), 2)
    b = ca.bilinear_transform("from_lisa", (1, 2), 2)
    assert np.max(np.abs(a @ b - np.eye(9))) <= 1e-12

    basis2 = tb.build_lisa_basis(2)
    lin = ca.linear_transform("to_lisa", 1, 2)
    cart1 = [ca.product_op({1: ax}, 2) for ax in ca.AXES]
    fam = next(t for t in basis2.tensors if t.label.spins == (1,))
    for row, m in enumerate((-1, 0, 1)):
        expect = sum(lin[row, col] * cart1[col] for col in range(3))
        assert np.max(np.abs(fam.components[m] - expect)) <= 1e-10

    fams = {t.j: t for t in basis2.tensors if t.label.spins == (1, 2)}
    cart2 = [ca.product_op({1: x1, 2: x2}, 2) for x1, x2 in ca.BILINEAR_CART_ORDER]
    for row, (j, m) in enumerate(ca.BILINEAR_TENSOR_ORDER):
        expect = sum(a[row, col] * cart2[col] for col in range(9))
        assert np.max(np.abs(fams[j].components[m] - expect)) <= 1e-10

    basis3 = tb.build_lisa_basis(3)
    order = all_standard_tableaux(3)
    tri = {}
    families = {}
    for t in basis3.tensors:
        if t.label.g == 3:
            base = t.label.tableau.relabel(
                {e: i + 1 for i, e in enumerate(t.label.tableau.entries)}
            )
            tri[(order.index(base) + 1, t.j)] = t
            families[("tri", order.index(base) + 1, t.j)] = t
        elif t.label.g == 2:
            families[("bil", t.label.spins, t.j)] = t
        elif t.label.g == 1:
            families[("lin", t.label.spins[0])] = t
        else:
            families[("id",)] = t

    def cart3(abc):
        return ca.product_op({1: abc[0], 2: abc[1], 3: abc[2]}, 3) / 4

    to_cart, from_cart = ca.trilinear_tables()
    for (tau, j, m), terms in to_cart.items():
        expect = sum(c * cart3(abc) for c, abc in terms)
        assert np.max(np.abs(tri[(tau, j)].components[m] - expect)) <= 1e-10
    for abc, terms in from_cart.items():
        expect = sum(c * tri[(tau, j)].components[m] for (tau, j, m), c in terms)
        assert np.max(np.abs(4 * cart3(abc) - expect)) <= 1e-10

    cb = mp.coupled_basis(3)
    for from_key, to_key, j, terms in mp.decomposition_rows():
        comp = mp.multipole_tensor(cb, from_key, to_key, j)
        for m in range(-j, j + 1):
            expect = sum(c * families[key].components[m] for c, key in terms)
            assert np.max(np.abs(comp[m] - expect)) <= 1e-10
    _report("table fidelity (linear / bilinear / trilinear / multipole)")


def test_counting_tables():
    tb.symmetry_rank_table.cache_clear()
    tb._linear_multiplicities.cache_clear()
    start = time.perf_counter()
    for n, (minimum, mpole, lisa, maximum) in EXPECTED_DROPLET_COUNTS.items():
        assert tb.droplet_bounds(n) == (minimum, lisa, maximum)
        assert mp.multipole_droplet_count(n) == mpole
    for n, rows in EXPECTED_MULTIPLICITIES.items():
        got = {j: (nj, nbar) for j, nj, nbar in tb.multiplicity_table(n)}
        assert got == rows
    for g, rows in EXPECTED_RANK_CONTENT.items():
        got = {
            shape: (ntab, content)
            for shape, ntab, content in tb.symmetry_rank_table(g)
        }
        assert got == rows
    assert tuple(sorted(got[(4, 2)][1])).count(2) == 2  # duplicated pair at g=6
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0, f"counting checks took {elapsed:.1f} s"
    _report(f"counting tables (droplet bounds / multiplicities / rank content, {elapsed:.1f} s)")


def test_wigner_properties():
    for n in (2, 3):
        basis = tb.build_lisa_basis(n)
        for _ in range(50):
            report = dm.check_wigner_properties(
                _random_operator(n), _random_operator(n), basis, degree=8, rng=rng
            )
            for prop, devs in report.items():
                assert devs["coeff"] <= 1e-8, (n, prop, devs)
                assert devs["quad"] <= 1e-6, (n, prop, devs)
    basis2 = tb.build_lisa_basis(2)
    t00 = next(t for t in basis2.tensors if t.label.spins == (1, 2) and t.j == 0)
    rep = dm.check_wigner_properties(t00.components[0], t00.components[0], basis2)
    assert rep["norm"]["coeff"] <= 1e-12
    assert rep["norm"]["quad"] <= 1e-10
    _report("generalized Wigner conditions (a)-(e) on 50 random pairs, n = 2 and 3")


def test_pulse_sequence_reproduction():
    start = time.perf_counter()
    rho0 = sum(ca.product_op({k: "z"}, 3) for k in (1, 2, 3))
    couplings = {(1, 2): 10.0, (1, 3): 10.0, (2, 3): 10.0}
    segments = [
        dy.PulseSegment("pulse", 25e-6, amplitude=10e3, phase="x"),
        dy.PulseSegment("delay", 50e-3, couplings=couplings, a=0.0, b=1.0),
        dy.PulseSegment("pulse", 25e-6, amplitude=10e3, phase="y"),
    ]
    trace = dy.run_sequence(rho0, segments)

    rho1 = -sum(ca.product_op({k: "y"}, 3) for k in (1, 2, 3))
    assert np.max(np.abs(trace.states[1] - rho1)) <= 1e-10

    basis = tb.build_lisa_basis(3)
    tau1 = next(l for l in basis.droplets if l.g == 3 and l.tableau.shape == (3,))
    t2 = dm.decompose(trace.states[2], basis).coefficients[tau1]
    for m in (-1, 1):
        assert abs(abs(t2[(1, m)]) - 0.78) <= 0.01
        assert abs(abs(t2[(3, m)]) - 1.55) <= 0.01
    t3 = dm.decompose(trace.states[3], basis).coefficients[tau1]
    for m in (-1, 1):
        assert abs(abs(t3[(1, m)]) - 0.78) <= 0.01
        assert abs(abs(t3[(3, m)]) - 0.39) <= 0.01
    for m in (-3, 3):
        assert abs(t3[(3, m)] - 1.5j) <= 0.01

    heff = trace.effective_hamiltonian

    def coef(op, factors):
        bare = ca.product_op(factors, 3) / (2 ** (len(factors) - 1))
        return complex(np.vdot(bare, op) / np.vdot(bare, bare))

    assert abs(coef(heff, {1: "z"}).real - (-18.1)) <= 0.1
    assert abs(coef(heff, {1: "x", 2: "x", 3: "x"}).real - (-24.2)) <= 0.1
    assert abs(coef(heff, {1: "x", 2: "x", 3: "y"}).real - (-72.5)) <= 0.1

    u1, u2, u3 = trace.propagators
    assert abs(np.trace(u1) / 8 - 0.35) <= 0.01
    assert abs(abs(coef(u1, {1: "x"})) - 0.71) <= 0.01
    assert abs(coef(u1, {1: "x", 2: "x"}) - (-1.41)) <= 0.01
    assert abs(abs(coef(u1, {1: "x", 2: "x", 3: "x"})) - 2.83) <= 0.01
    assert abs(np.trace(u2) / 8 - (0.35 + 0.35j)) <= 0.015
    assert abs(coef(u2, {1: "z", 2: "z"}) - (-1.41 - 1.41j)) <= 0.015
    assert abs(np.trace(u3) / 8 - 0.35) <= 0.01
    assert abs(abs(coef(u3, {1: "y"})) - 0.71) <= 0.01
    assert abs(coef(u3, {1: "y", 2: "y"}) - (-1.41)) <= 0.01
    ue = trace.effective_propagator
    assert abs(np.trace(ue) / 8 - (0.18 + 0.18j)) <= 0.015
    lin = coef(ue, {1: "z"})
    assert abs(abs(lin.real) - 0.35) <= 0.01 and abs(abs(lin.imag) - 0.35) <= 0.01
    assert abs(coef(ue, {1: "x", 2: "x", 3: "x"}) - (-1.41 + 1.41j)) <= 0.015
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0, f"sequence checks took {elapsed:.2f} s"
    _report("triple-quantum pulse sequence reproduction")


def test_entanglement_indicators():
    basis2 = tb.build_lisa_basis(2)
    spec00 = dm.decompose(dy.named_state("zero-product", 2), basis2)
    r00 = dy._max_droplet_radius(spec00, tb.DropLabel((1,)))
    assert abs(dy.concurrence_from_radius(r00)) <= 1e-6
    spec_bell = dm.decompose(dy.named_state("Phi+"), basis2)
    rb = dy._max_droplet_radius(spec_bell, tb.DropLabel((1,)))
    assert abs(dy.concurrence_from_radius(rb) - 1.0) <= 1e-6

    for _ in range(20):
        amps = rng.normal(size=4) + 1j * rng.normal(size=4)
        amps /= np.linalg.norm(amps)
        rho = np.outer(amps, amps.conj())
        r = dy._max_droplet_radius(dm.decompose(rho, basis2), tb.DropLabel((1,)))
        assert abs(
            dy.concurrence_from_radius(r) - dy.spin_flip_concurrence(rho)
        ) <= 1e-6

    basis3 = tb.build_lisa_basis(3)
    ghz = dm.decompose(dy.named_state("GHZ"), basis3)
    for k in (1, 2, 3):
        assert ghz.max_abs(tb.DropLabel((k,))) <= 1e-12
    _report("entanglement indicators (concurrence endpoints / oracle / GHZ)")


@pytest.mark.xfail(
    strict=True,
    reason=(
        "unattainable threshold: the reduced one-spin state of W is "
        "diag(2/3, 1/3), so the linear droplet radius is exactly one "
        "third of the product-state reference for every implementation"
    ),
)
def test_entanglement_w_droplet_below_tenth_of_reference():
    basis3 = tb.build_lisa_basis(3)
    spec_w = dm.decompose(dy.named_state("W"), basis3)
    spec_ref = dm.decompose(dy.named_state("zero-product", 3), basis3)
    r_w = dy._max_droplet_radius(spec_w, tb.DropLabel((1,)))
    r_ref = dy._max_droplet_radius(spec_ref, tb.DropLabel((1,)))
    assert r_w < 0.1 * r_ref


def test_entanglement_w_droplet_true_values():
    # companion to the expected failure above: the exact ratio is 1/3,
    # and the radius is small in absolute terms
    basis3 = tb.build_lisa_basis(3)
    spec_w = dm.decompose(dy.named_state("W"), basis3)
    spec_ref = dm.decompose(dy.named_state("zero-product", 3), basis3)
    r_w = dy._max_droplet_radius(spec_w, tb.DropLabel((1,)))
    r_ref = dy._max_droplet_radius(spec_ref, tb.DropLabel((1,)))
    assert abs(r_w - r_ref / 3) <= 1e-8
    assert r_w < 0.1
    _report("entanglement indicators (W droplet radius = reference/3)")


def test_coherence_orders():
    basis3 = tb.build_lisa_basis(3)
    for tensor in basis3.tensors:
        for m in range(-tensor.j, tensor.j + 1):
            parts = dm.coherence_orders(tensor.components[m], basis3)
            assert set(parts) == {m}
    basis2 = tb.build_lisa_basis(2)
    op = ca.product_op({1: "x", 2: "y"}, 2)
    parts = dm.coherence_orders(op, basis2)
    assert set(parts) == {-2, 0, 2}
    dq = (ca.product_op({1: "x", 2: "y"}, 2) + ca.product_op({1: "y", 2: "x"}, 2)) / 2
    zq = (-ca.product_op({1: "x", 2: "y"}, 2) + ca.product_op({1: "y", 2: "x"}, 2)) / 2
    assert np.max(np.abs(parts[2] + parts[-2] - dq)) <= 1e-10
    assert np.max(np.abs(parts[0] + zq)) <= 1e-10
    _report("coherence orders (unique m per component, DQ/ZQ split)")


def test_restricted_bases():
    basis = tb.build_lisa_basis(3)
    swap = tb.restrict_basis(basis, [Permutation.from_cycles(3, (1, 2))])
    assert len(swap.families) == 12
    assert swap.dimension == 40
    assert swap.droplet_count == 7
    full = tb.restrict_basis(
        basis,
        [Permutation.from_cycles(3, (1, 2)), Permutation.from_cycles(3, (1, 2, 3))],
    )
    assert len(full.families) == 6
    assert full.dimension == 20
    assert full.droplet_count == 4
    _report("restricted bases (12/40/7 and 6/20/4)")


def test_reduction_cross_oracle():
    for n in (2, 3):
        basis = tb.build_lisa_basis(n)
        keeps = [{1}, {2}] if n == 2 else [{1}, {3}, {1, 2}, {2, 3}]
        for _ in range(50):
            a = _random_operator(n)
            rho = a @ a.conj().T
            rho /= np.trace(rho)
            spec = dm.decompose(rho, basis)
            for keep in keeps:
                reduced = dm.reduce_spectrum(spec, keep)
                target = tb.build_lisa_basis(len(keep))
                dev = np.max(
                    np.abs(
                        dm.reconstruct(reduced, target)
                        - opalg.partial_trace(rho, n, keep)
                    )
                )
                assert dev <= 1e-10
    _report("spectrum reduction matches partial trace on 50 random states")
