import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from drops import opalg
from drops import tensorbasis as tb
from drops.symgroup import Permutation, all_standard_tableaux, act, young_projector

rng = np.random.default_rng(3)


def tableau_index(tab):
    order = all_standard_tableaux(tab.size)
    base = tab.relabel({e: i + 1 for i, e in enumerate(tab.entries)})
    return order.index(base) + 1


# -- single-spin tensors ----------------------------------------------------

def test_single_spin_printed_matrices():
    fam = tb.single_spin_tensors()
    assert_allclose(fam[0][0], np.eye(2) / math.sqrt(2))
    assert_allclose(fam[1][0], np.diag([1, -1]) / math.sqrt(2))
    assert_allclose(fam[1][1], [[0, -1], [0, 0]])
    assert_allclose(fam[1][-1], [[0, 0], [1, 0]])


def test_single_spin_condon_shortley():
    fam = tb.single_spin_tensors()[1]
    assert_allclose(fam[1], -fam[-1].conj().T)


# -- Clebsch-Gordan coefficients --------------------------------------------

def test_cg_values_from_bilinear_expansion():
    assert tb.cg_coefficient(1, -1, 1, 1, 0, 0) == pytest.approx(1 / math.sqrt(3))
    assert tb.cg_coefficient(1, 1, 1, 1, 2, 2) == pytest.approx(1.0)
    assert tb.cg_coefficient(1, 0, 1, 0, 0, 0) == pytest.approx(-1 / math.sqrt(3))


def test_cg_selection_rules_give_zero():
    assert tb.cg_coefficient(1, 0, 1, 0, 1, 1) == 0.0  # m mismatch
    assert tb.cg_coefficient(1, 1, 1, 1, 4, 2) == 0.0  # triangle violated
    # half-integer coupling: <j m; 1 0 | j m> = m / sqrt(j(j+1))
    assert tb.cg_coefficient(0.5, 0.5, 1, 0, 0.5, 0.5) == pytest.approx(
        1 / math.sqrt(3)
    )


@pytest.mark.parametrize("j1,j2", [(1, 1), (2, 1), (1.5, 0.5), (2.5, 1)])
def test_cg_columns_orthonormal(j1, j2):
    # brute force over the full m grid
    js = np.arange(abs(j1 - j2), j1 + j2 + 1)
    m1s = np.arange(-j1, j1 + 1)
    m2s = np.arange(-j2, j2 + 1)
    for j in js:
        for jp in js:
            for m in np.arange(-j, j + 1):
                for mp in np.arange(-jp, jp + 1):
                    total = sum(
                        tb.cg_coefficient(j1, m1, j2, m2, j, m)
                        * tb.cg_coefficient(j1, m1, j2, m2, jp, mp)
                        for m1 in m1s
                        for m2 in m2s
                    )
                    expect = 1.0 if (j == jp and m == mp) else 0.0
                    assert total == pytest.approx(expect, abs=1e-12)


# -- coupling ----------------------------------------------------------------

def test_couple_rank_zero_gives_only_rank_one():
    fam = tb.couple(tb.single_spin_tensors()[0], 0)
    assert set(fam) == {1}


def test_couple_bilinear_explicit_components():
    t1 = tb.single_spin_tensors()[1]
    fam = tb.couple(t1, 1)
    assert set(fam) == {0, 1, 2}
    expect_10 = (-opalg.kron(t1[-1], t1[1]) + opalg.kron(t1[1], t1[-1])) / math.sqrt(2)
    assert_allclose(fam[1][0], expect_10, atol=1e-14)
    assert_allclose(fam[2][2], opalg.kron(t1[1], t1[1]), atol=1e-14)


def test_couple_trilinear_rank3_component():
    t1 = tb.single_spin_tensors()[1]
    t2 = tb.couple(t1, 1)[2]
    fam = tb.couple(t2, 2)
    expect_30 = (
        opalg.kron(t2[-1], t1[1])
        + math.sqrt(3) * opalg.kron(t2[0], t1[0])
        + opalg.kron(t2[1], t1[-1])
    ) / math.sqrt(5)
    assert_allclose(fam[3][0], expect_30, atol=1e-14)


def test_coupled_families_satisfy_racah():
    for j, comps in tb._coupled_families(3):
        fake = tb.LabeledTensorOp(tb.DropLabel((1, 2, 3)), j, comps)
        assert tb.racah_deviation(fake, 3) <= 1e-12


# -- basis construction ------------------------------------------------------

@pytest.mark.parametrize("n,droplets", [(1, 2), (2, 4), (3, 11)])
def test_droplet_and_component_counts(n, droplets):
    basis = tb.build_lisa_basis(n)
    assert len(basis.droplets) == droplets
    assert sum(2 * t.j + 1 for t in basis.tensors) == 4**n


def test_rank_uniqueness_within_labels():
    for n in (1, 2, 3, 4):
        basis = tb.build_lisa_basis(n)
        for label, ranks in basis.droplets.items():
            assert len(ranks) == len(set(ranks)), label


@pytest.mark.parametrize("n", [1, 2, 3])
def test_racah_conditions(n):
    basis = tb.build_lisa_basis(n)
    assert max(tb.racah_deviation(t, n) for t in basis.tensors) <= 1e-10


@pytest.mark.parametrize("n", [1, 2, 3])
def test_condon_shortley_and_normalization(n):
    basis = tb.build_lisa_basis(n)
    for t in basis.tensors:
        for m in range(0, t.j + 1):
            dev = np.max(np.abs(t.components[m] - (-1) ** m * t.components[-m].conj().T))
            assert dev <= 1e-12
        assert opalg.frobenius(t.components[0], t.components[0]) == pytest.approx(
            1.0, abs=1e-12
        )


def test_m0_components_hermitian():
    basis = tb.build_lisa_basis(3)
    for t in basis.tensors:
        m0 = t.components[0]
        assert np.max(np.abs(m0 - m0.conj().T)) <= 1e-12


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_orthonormal_complete(n):
    basis = tb.build_lisa_basis(n)
    mats = [t.components[m] for t in basis.tensors for m in range(-t.j, t.j + 1)]
    assert len(mats) == 4**n
    stack = np.array([m.ravel() for m in mats])
    gram = stack.conj() @ stack.T
    assert np.max(np.abs(gram - np.eye(4**n))) <= 1e-10


def test_parseval_on_random_operator():
    for n in (2, 3):
        basis = tb.build_lisa_basis(n)
        a = rng.normal(size=(2**n, 2**n)) + 1j * rng.normal(size=(2**n, 2**n))
        total = sum(
            abs(opalg.frobenius(t.components[m], a)) ** 2
            for t in basis.tensors
            for m in range(-t.j, t.j + 1)
        )
        assert total == pytest.approx(opalg.frobenius(a, a).real, rel=1e-10)


def test_trilinear_antisymmetric_cartesian_expansion():
    basis = tb.build_lisa_basis(3)
    tau4 = [t for t in basis.tensors if t.label.g == 3 and t.j == 0]
    assert len(tau4) == 1
    from drops.cartesian import product_op

    def pr(abc):
        return product_op({1: abc[0], 2: abc[1], 3: abc[2]}, 3) / 4

    expect = (2 / math.sqrt(3)) * (
        pr("xyz") - pr("xzy") - pr("yxz") + pr("yzx") + pr("zxy") - pr("zyx")
    )
    assert_allclose(tau4[0].components[0], expect, atol=1e-12)


def test_projector_actions_sort_built_families():
    # each trilinear family is fixed by its own projector, annihilated by
    # projectors of any other shape, and mapped within the same-rank
    # multiplicity space by same-shape projectors (the constructed
    # same-shape families stay mutually orthogonal regardless)
    basis = tb.build_lisa_basis(3)
    tabs = all_standard_tableaux(3)
    tri = [t for t in basis.tensors if t.label.g == 3]
    for t in tri:
        own = tableau_index(t.label.tableau)
        for idx, tab in enumerate(tabs, start=1):
            out = act(young_projector(tab), t.components[0], 3)
            if idx == own:
                assert np.max(np.abs(out - t.components[0])) <= 1e-12
            elif tab.shape != t.label.tableau.shape:
                assert np.max(np.abs(out)) <= 1e-12
    for a in tri:
        for b in tri:
            if a is not b and a.j == b.j:
                assert abs(np.vdot(a.components[0], b.components[0])) <= 1e-12


def test_spins_outside_subsystem_carry_identity_factors():
    # every component must factor as (reduced tensor) x Id/sqrt(2) on
    # each spin outside its label
    basis = tb.build_lisa_basis(3)
    moves = {1: Permutation.from_cycles(3, (1, 2, 3)), 2: Permutation.from_cycles(3, (2, 3)), 3: Permutation.identity(3)}
    for t in basis.tensors:
        for k in (s for s in (1, 2, 3) if s not in t.label.spins):
            others = {s for s in (1, 2, 3) if s != k}
            for m, comp in t.components.items():
                reduced = opalg.partial_trace(comp, 3, others) / math.sqrt(2)
                rebuilt = opalg.kron(reduced, np.eye(2) / math.sqrt(2))
                rebuilt = act(moves[k], rebuilt, 3)
                assert np.max(np.abs(rebuilt - comp)) <= 1e-12, (t.label, m, k)


def test_permutation_equivariance():
    basis = tb.build_lisa_basis(3)
    by_rank = {}
    for t in basis.tensors:
        by_rank.setdefault(t.j, []).append(t)
    for sigma in [Permutation.from_cycles(3, (1, 2)), Permutation.from_cycles(3, (1, 2, 3))]:
        for t in basis.tensors:
            moved = act(sigma, t.components[0], 3)
            spins_image = tuple(sorted(sigma(k) for k in t.label.spins))
            # residual after projecting onto same-rank families of the
            # permuted subsystem must vanish
            residual = moved.copy()
            for cand in by_rank[t.j]:
                if cand.label.spins != spins_image:
                    continue
                residual -= opalg.frobenius(cand.components[0], moved) * cand.components[0]
            assert np.max(np.abs(residual)) <= 1e-10, (t.label, sigma)


@pytest.mark.slow
def test_five_spin_basis_invariants():
    basis = tb.build_lisa_basis(5)
    assert len(basis.droplets) == 122
    mats = [t.components[m] for t in basis.tensors for m in range(-t.j, t.j + 1)]
    assert len(mats) == 4**5
    stack = np.array([m.ravel() for m in mats])
    gram = stack.conj() @ stack.T
    assert np.max(np.abs(gram - np.eye(4**5))) <= 1e-10
    worst = max(tb.racah_deviation(t, 5) for t in basis.tensors)
    assert worst <= 1e-10


# -- counting ----------------------------------------------------------------

def test_multiplicity_table_small():
    assert tb.multiplicity_table(1) == [(0, 0, 1), (1, 1, 1)]
    assert tb.multiplicity_table(2) == [(0, 1, 2), (1, 1, 3), (2, 1, 1)]
    rows = {j: (nj, nbar) for j, nj, nbar in tb.multiplicity_table(3)}
    assert rows[2] == (2, 5)
    assert rows[1] == (3, 9)


def test_droplet_bounds_examples():
    assert tb.droplet_bounds(1) == (1, 2, 2)
    assert tb.droplet_bounds(3) == (9, 11, 20)
    assert tb.droplet_bounds(5) == (90, 122, 252)


def test_symmetry_rank_table_three_linear():
    rows = {shape: (ntab, content) for shape, ntab, content in tb.symmetry_rank_table(3)}
    assert rows[(3,)] == (1, (1, 3))
    assert rows[(2, 1)] == (2, (1, 2))
    assert rows[(1, 1, 1)] == (1, (0,))


def test_symmetry_rank_table_single_spin():
    assert tb.symmetry_rank_table(1) == [((1,), 1, (1,))]


def test_symmetry_rank_table_rejects_large():
    with pytest.raises(ValueError):
        tb.symmetry_rank_table(7)


def test_recorded_rank_content_matches_cg_multiplicities():
    # the recorded 7- and 8-linear classification must reproduce the
    # independently computed rank multiplicities
    from drops.symgroup import standard_tableaux

    for g in (7, 8):
        mult = tb._linear_multiplicities(g)
        derived = {}
        for shape, content in tb._RANK_CONTENT_LARGE[g].items():
            ntab = len(standard_tableaux(shape))
            for j in content:
                derived[j] = derived.get(j, 0) + ntab
        assert derived == mult


# -- restriction --------------------------------------------------------------

def test_restrict_two_identical_spins():
    basis = tb.build_lisa_basis(3)
    restricted = tb.restrict_basis(basis, [Permutation.from_cycles(3, (1, 2))])
    assert len(restricted.families) == 12
    assert restricted.dimension == 40
    assert restricted.droplet_count == 7


def test_restrict_fully_symmetric():
    basis = tb.build_lisa_basis(3)
    restricted = tb.restrict_basis(
        basis, [Permutation.from_cycles(3, (1, 2)), Permutation.from_cycles(3, (1, 2, 3))]
    )
    assert len(restricted.families) == 6
    assert restricted.dimension == 20
    assert restricted.droplet_count == 4


def test_restrict_trivial_group_keeps_everything():
    basis = tb.build_lisa_basis(2)
    restricted = tb.restrict_basis(basis, [])
    assert len(restricted.families) == len(basis.tensors)
    assert restricted.droplet_count == len(basis.droplets)
    for orig, kept in zip(basis.tensors, restricted.families):
        assert orig.j == kept.j
        assert_allclose(kept.components[0], orig.components[0], atol=1e-12)


def test_restricted_families_commute_with_group():
    basis = tb.build_lisa_basis(3)
    sigma = Permutation.from_cycles(3, (1, 2))
    restricted = tb.restrict_basis(basis, [sigma])
    for fam in restricted.families:
        for m, comp in fam.components.items():
            assert np.max(np.abs(act(sigma, comp, 3) - comp)) <= 1e-10


# -- export -------------------------------------------------------------------

def test_basis_json_shape():
    basis = tb.build_lisa_basis(2)
    records = tb.basis_to_json(basis)
    assert len(records) == 16
    first = records[0]
    assert set(first) == {"label", "j", "m", "matrix"}
    assert first["label"] == {"G": [], "tau": None}
    assert len(first["matrix"]) == 16
