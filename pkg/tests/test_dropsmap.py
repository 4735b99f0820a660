import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from drops import cartesian as ca
from drops import dropsmap as dm
from drops import opalg
from drops import tensorbasis as tb

rng = np.random.default_rng(5)


def random_operator(n):
    d = 2**n
    return rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))


def linear_label(basis, k):
    return next(lab for lab in basis.droplets if lab.spins == (k,))


@pytest.fixture(scope="module")
def basis3():
    return tb.build_lisa_basis(3)


@pytest.fixture(scope="module")
def basis2():
    return tb.build_lisa_basis(2)


# -- decompose / reconstruct ---------------------------------------------------

def test_decompose_thermal_state(basis3):
    rho = sum(ca.product_op({k: "z"}, 3) for k in (1, 2, 3))
    spec = dm.decompose(rho, basis3)
    for label, terms in spec.coefficients.items():
        for (j, m), c in terms.items():
            if label.g == 1 and (j, m) == (1, 0):
                assert c == pytest.approx(math.sqrt(2), abs=1e-12)
            else:
                assert abs(c) <= 1e-12


def test_decompose_zero(basis2):
    spec = dm.decompose(np.zeros((4, 4)), basis2)
    assert all(abs(c) == 0 for terms in spec.coefficients.values() for c in terms.values())


@pytest.mark.parametrize("n", [2, 3])
def test_round_trip_random(n):
    basis = tb.build_lisa_basis(n)
    a = random_operator(n)
    back = dm.reconstruct(dm.decompose(a, basis), basis)
    assert np.max(np.abs(back - a)) <= 1e-10


def test_reconstruct_identity_on_basis_elements(basis2):
    tensor = basis2.tensors[5]
    spec = dm.decompose(tensor.components[0], basis2)
    back = dm.reconstruct(spec, basis2)
    assert_allclose(back, tensor.components[0], atol=1e-12)


def test_reconstruct_unknown_label(basis2):
    spec = dm.decompose(np.eye(4), basis2)
    spec.coefficients[tb.DropLabel((1, 2, 3))] = {(0, 0): 1.0}
    with pytest.raises(ValueError):
        dm.reconstruct(spec, basis2)


def test_parseval_trace_identity(basis3):
    a, b = random_operator(3), random_operator(3)
    total = dm._parseval_trace(dm.decompose(a, basis3), dm.decompose(b, basis3))
    assert abs(total - np.trace(a @ b)) <= 1e-10


def test_hermitian_coefficient_symmetry(basis2):
    a = random_operator(2)
    a = a + a.conj().T
    spec = dm.decompose(a, basis2)
    for terms in spec.coefficients.values():
        for (j, m), c in terms.items():
            assert c == pytest.approx((-1) ** m * np.conj(terms[(j, -m)]), abs=1e-12)


# -- spherical harmonics --------------------------------------------------------

def test_y00_constant():
    assert dm.spherical_harmonic(0, 0, 0.3, 1.2) == pytest.approx(0.2820947917738781)


def test_y10_pole_value():
    assert dm.spherical_harmonic(1, 0, 0.0, 0.7) == pytest.approx(
        math.sqrt(3 / (4 * math.pi))
    )


def test_harmonic_conjugation_symmetry():
    for j in range(0, 5):
        for m in range(-j, j + 1):
            th, ph = rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi)
            lhs = dm.spherical_harmonic(j, m, th, ph)
            rhs = (-1) ** m * np.conj(dm.spherical_harmonic(j, -m, th, ph))
            assert lhs == pytest.approx(rhs, abs=1e-12)


def test_harmonic_rejects_bad_order():
    with pytest.raises(ValueError):
        dm.spherical_harmonic(2, 3, 0.1, 0.1)


def test_harmonics_against_sympy_oracle():
    import sympy

    th, ph = 0.8, 2.1
    for j, m in [(1, 1), (2, -1), (3, 2), (4, -3), (6, 5)]:
        expect = complex(sympy.Ynm(j, m, th, ph).evalf())
        assert dm.spherical_harmonic(j, m, th, ph) == pytest.approx(expect, abs=1e-12)


# -- quadrature -------------------------------------------------------------------

def test_quadrature_mean_of_y00():
    theta, phi, w = dm.sphere_quadrature(0)
    total = np.sum(w * dm.spherical_harmonic(0, 0, theta, phi))
    assert total == pytest.approx(2 * math.sqrt(math.pi), abs=1e-12)


def test_quadrature_orthonormality_j_up_to_six():
    theta, phi, w = dm.sphere_quadrature(12)
    for j in range(7):
        for m in range(-j, j + 1):
            y = dm.spherical_harmonic(j, m, theta, phi)
            assert np.sum(w * y * np.conj(y)) == pytest.approx(1.0, abs=1e-12)
    y21 = dm.spherical_harmonic(2, 1, theta, phi)
    y31 = dm.spherical_harmonic(3, 1, theta, phi)
    assert abs(np.sum(w * y21 * np.conj(y31))) <= 1e-12


def test_quadrature_mean_zero_harmonic():
    theta, phi, w = dm.sphere_quadrature(4)
    assert abs(np.sum(w * dm.spherical_harmonic(2, 1, theta, phi))) <= 1e-12


# -- droplet evaluation -------------------------------------------------------------

def test_linear_z_droplet_points_up(basis3):
    spec = dm.decompose(ca.product_op({1: "z"}, 3), basis3)
    label = linear_label(basis3, 1)
    top = dm.eval_droplet(spec, label, 0.0, 0.0)
    bottom = dm.eval_droplet(spec, label, math.pi, 0.0)
    assert top.real > 0 and abs(top.imag) <= 1e-12
    assert bottom.real < 0


def test_identity_droplet_constant(basis2):
    spec = dm.decompose(np.eye(4, dtype=complex), basis2)
    vals = dm.eval_droplet(
        spec, tb.DropLabel(()), np.array([0.1, 1.0, 2.0]), np.array([0.0, 3.0, 5.0])
    )
    assert np.max(np.abs(vals - vals[0])) <= 1e-12


def test_phase_locked_droplets_for_scaled_hermitian(basis2):
    gamma = 0.83
    h = random_operator(2)
    h = h + h.conj().T
    spec = dm.decompose(np.exp(1j * gamma) * h, basis2)
    theta = rng.uniform(0, math.pi, size=40)
    phi = rng.uniform(0, 2 * math.pi, size=40)
    for label in basis2.droplets:
        vals = dm.eval_droplet(spec, label, theta, phi)
        vals = vals[np.abs(vals) > 1e-8]
        if vals.size:
            off = np.mod(np.angle(vals) - gamma, math.pi)
            off = np.minimum(off, math.pi - off)
            assert np.max(off) <= 1e-10


# -- Wigner properties ---------------------------------------------------------------

def test_wigner_trace_single_coefficient(basis2):
    t00 = next(t for t in basis2.tensors if t.label.spins == (1, 2) and t.j == 0)
    a = t00.components[0]
    report = dm.check_wigner_properties(a, a, basis2)
    assert report["trace"]["coeff"] <= 1e-12
    assert report["trace"]["quad"] <= 1e-12
    # Tr(A A) for this hermitian unit-norm tensor is one
    assert np.trace(a @ a) == pytest.approx(1.0)


def test_wigner_norm_resolves_traceless_contradiction(basis2):
    # the identity-droplet weighting sends this traceless operator to 0,
    # not to the bare spherical integral 2*sqrt(pi)
    t00 = next(t for t in basis2.tensors if t.label.spins == (1, 2) and t.j == 0)
    a = t00.components[0]
    theta, phi, w = dm.sphere_quadrature(8)
    spec = dm.decompose(a, basis2)
    bare = np.sum(w * dm.eval_droplet(spec, t00.label, theta, phi))
    assert bare == pytest.approx(2 * math.sqrt(math.pi), abs=1e-10)
    report = dm.check_wigner_properties(a, a, basis2)
    assert report["norm"]["coeff"] <= 1e-12
    assert report["norm"]["quad"] <= 1e-10


def test_wigner_reality_for_hermitian(basis3):
    a = random_operator(3)
    a = a + a.conj().T
    spec = dm.decompose(a, basis3)
    theta, phi, _ = dm.sphere_quadrature(8)
    for label in basis3.droplets:
        vals = dm.eval_droplet(spec, label, theta, phi)
        assert np.max(np.abs(vals.imag)) <= 1e-10


@pytest.mark.parametrize("n", [2, 3])
def test_wigner_properties_random_pairs(n):
    basis = tb.build_lisa_basis(n)
    for _ in range(3):
        report = dm.check_wigner_properties(
            random_operator(n), random_operator(n), basis, rng=rng
        )
        for prop, devs in report.items():
            assert devs["coeff"] <= 1e-8, prop
            assert devs["quad"] <= 1e-6, prop


# -- covariance -------------------------------------------------------------------

def test_covariance_zero_angle(basis2):
    assert dm.check_covariance(random_operator(2), "y", 0.0, basis2) <= 1e-12


def test_covariance_random(basis3):
    a = random_operator(3)
    dev = dm.check_covariance(a, "x", 1.234, basis3)
    assert dev <= 1e-8


def test_pi_rotation_flips_antiphase_droplet(basis2):
    # conjugating 2 I_kx I_lz by a pi rotation about x gives -2 I_kx I_lz
    op = ca.product_op({1: "x", 2: "z"}, 2)
    u = opalg.exp_hermitian(dm.rotation_generator(2, "x"), math.pi)
    assert np.max(np.abs(u @ op @ u.conj().T + op)) <= 1e-12
    spec = dm.decompose(op, basis2)
    spec_rot = dm.decompose(u @ op @ u.conj().T, basis2)
    label = next(lab for lab in basis2.droplets if lab.spins == (1, 2))
    theta = rng.uniform(0, math.pi, size=20)
    phi = rng.uniform(0, 2 * math.pi, size=20)
    assert np.max(
        np.abs(
            dm.eval_droplet(spec_rot, label, theta, phi)
            + dm.eval_droplet(spec, label, theta, phi)
        )
    ) <= 1e-12


def test_z_rotation_multiplies_single_component_samples(basis2):
    tensor = next(t for t in basis2.tensors if t.j == 2 and t.label.spins == (1, 2))
    m = 1
    a = tensor.components[m]
    alpha = 0.9
    u = opalg.exp_hermitian(dm.rotation_generator(2, "z"), alpha)
    spec = dm.decompose(a, basis2)
    rot = dm.decompose(u @ a @ u.conj().T, basis2)
    theta = rng.uniform(0, math.pi, size=15)
    phi = rng.uniform(0, 2 * math.pi, size=15)
    lhs = dm.eval_droplet(rot, tensor.label, theta, phi)
    rhs = np.exp(-1j * m * alpha) * dm.eval_droplet(spec, tensor.label, theta, phi)
    assert np.max(np.abs(lhs - rhs)) <= 1e-10


# -- coherence orders -----------------------------------------------------------------

def test_coherence_orders_of_antiphase(basis2):
    op = ca.product_op({1: "x", 2: "y"}, 2)  # 2 I_1x I_2y
    parts = dm.coherence_orders(op, basis2)
    assert set(parts) == {-2, 0, 2}
    dq = ca.product_op({1: "x", 2: "y"}, 2) / 2 + ca.product_op({1: "y", 2: "x"}, 2) / 2
    zq = -ca.product_op({1: "x", 2: "y"}, 2) / 2 + ca.product_op({1: "y", 2: "x"}, 2) / 2
    assert np.max(np.abs(parts[2] + parts[-2] - dq)) <= 1e-10
    assert np.max(np.abs(parts[0] + zq)) <= 1e-10


def test_coherence_orders_longitudinal(basis2):
    parts = dm.coherence_orders(ca.product_op({1: "z"}, 2), basis2)
    assert set(parts) == {0}


def test_coherence_partition_and_eigenrelation(basis3):
    a = random_operator(3)
    parts = dm.coherence_orders(a, basis3)
    assert np.max(np.abs(sum(parts.values()) - a)) <= 1e-10
    jz = dm.rotation_generator(3, "z")
    for alpha in (math.pi / 7, math.pi / 3):
        u = opalg.exp_hermitian(jz, alpha)
        for p, part in parts.items():
            lhs = u @ part @ u.conj().T
            assert np.max(np.abs(lhs - np.exp(-1j * p * alpha) * part)) <= 1e-10


def test_basis_components_have_unique_order(basis3):
    for tensor in basis3.tensors:
        for m in range(-tensor.j, tensor.j + 1):
            parts = dm.coherence_orders(tensor.components[m], basis3)
            assert set(parts) == {m}


# -- reduction -----------------------------------------------------------------------

def test_reduce_matches_partial_trace_product_state(basis2):
    ket = np.zeros(4)
    ket[0] = 1.0
    rho = np.outer(ket, ket).astype(complex)
    reduced = dm.reduce_spectrum(dm.decompose(rho, basis2), {1})
    basis1 = tb.build_lisa_basis(1)
    back = dm.reconstruct(reduced, basis1)
    assert_allclose(back, opalg.partial_trace(rho, 2, {1}), atol=1e-12)
    assert set(reduced.coefficients) == {tb.DropLabel(()), tb.DropLabel((1,))}


def test_reduce_keep_all_is_identity(basis3):
    a = random_operator(3)
    spec = dm.decompose(a, basis3)
    reduced = dm.reduce_spectrum(spec, {1, 2, 3})
    assert reduced.n == 3
    for label, terms in spec.coefficients.items():
        for jm, c in terms.items():
            assert reduced.coefficients[label][jm] == pytest.approx(c, abs=1e-14)


@pytest.mark.parametrize("keep", [{1}, {2}, {1, 3}, {2, 3}])
def test_reduce_matches_partial_trace_random(keep, basis3):
    a = random_operator(3)
    rho = a @ a.conj().T
    rho /= np.trace(rho)
    reduced = dm.reduce_spectrum(dm.decompose(rho, basis3), keep)
    target = tb.build_lisa_basis(len(keep))
    assert np.max(
        np.abs(dm.reconstruct(reduced, target) - opalg.partial_trace(rho, 3, keep))
    ) <= 1e-10


def test_ghz_reduction_is_maximally_mixed(basis3):
    ket = np.zeros(8)
    ket[0] = ket[7] = 1 / math.sqrt(2)
    rho = np.outer(ket, ket).astype(complex)
    reduced = dm.reduce_spectrum(dm.decompose(rho, basis3), {1})
    assert reduced.max_abs(tb.DropLabel((1,))) <= 1e-12
    basis1 = tb.build_lisa_basis(1)
    assert_allclose(dm.reconstruct(reduced, basis1), np.eye(2) / 2, atol=1e-12)


# -- interchange format -----------------------------------------------------------------

def test_spectrum_json_round_trip(basis3):
    spec = dm.decompose(random_operator(3), basis3)
    data = dm.spectrum_to_json(spec)
    back = dm.spectrum_from_json(data)
    assert back.n == spec.n
    for label, terms in spec.coefficients.items():
        for jm, c in terms.items():
            assert back.coefficients[label][jm] == pytest.approx(c, abs=1e-15)
