import copy
from fractions import Fraction

import pytest

from e7holo.chevalley import chevalley_constants, jacobi_residual_exhaustive
from e7holo.liecore import LieError, cartan_matrix, generate_roots
from e7holo.repbuild import (
    build_adjoint,
    build_minuscule,
    check_rep_exhaustive,
    circ_equivariance_defects,
    circ_symmetry_defects,
    derive_mu,
    invariant_symplectic,
    sparse_mul,
)


def make_cb(name):
    return chevalley_constants(generate_roots(cartan_matrix(name)))


# ---------------------------------------------------------------------------
# structure constants


def test_a1_constants_vacuous():
    cb = make_cb("A1")
    assert cb.dim == 3
    e, f = cb.index_of[(1,)], cb.index_of[(-1,)]
    assert cb.bracket_basis(e, f) == {0: 1}
    assert cb.bracket_basis(0, e) == {e: 2}
    assert cb.bracket_basis(0, f) == {f: -2}


def test_a2_constants_unit_antisymmetric():
    cb = make_cb("A2")
    rs = cb.rs
    for a in rs.roots:
        for b in rs.roots:
            g = tuple(x + y for x, y in zip(a, b))
            if rs.is_root(g):
                n_ab = cb.structure_constant(a, b)
                assert n_ab in (1, -1)
                assert cb.structure_constant(b, a) == -n_ab


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "D4"])
def test_jacobi_small(name):
    assert jacobi_residual_exhaustive(make_cb(name)) == 0


def test_chevalley_antisymmetry_on_negatives():
    cb = make_cb("A2")
    rs = cb.rs
    for a in rs.positive_roots:
        for b in rs.positive_roots:
            g = tuple(x + y for x, y in zip(a, b))
            if rs.is_root(g):
                na = tuple(-x for x in a)
                nb = tuple(-x for x in b)
                assert cb.structure_constant(na, nb) == -cb.structure_constant(a, b)


def test_non_simply_laced_rejected():
    with pytest.raises(LieError):
        make_cb("B2")


def test_e7_jacobi_exhaustive(wb):
    assert jacobi_residual_exhaustive(wb.cb) == 0


# ---------------------------------------------------------------------------
# adjoint + Killing


def test_a1_adjoint_and_killing():
    cb = make_cb("A1")
    rep, killing = build_adjoint(cb)
    assert rep.dim == 3
    assert check_rep_exhaustive(rep) == 0
    # Killing form of sl2: B(h, h) = 8 in the Chevalley normalization
    assert killing.entries[(0, 0)] == 8
    assert killing.invariance_defect_count() == 0


def test_e7_adjoint_dimension(wb):
    assert wb.adjoint.dim == 133
    assert len(wb.rs.roots) == 126


def test_e7_killing_cartan_block(wb):
    # trace form on the Cartan: 2 h-dual-Coxeter(=18) * symmetrized Cartan
    a = wb.rs.cartan.entries
    for i in range(7):
        for j in range(7):
            assert wb.killing.entries.get((i, j), 0) == 36 * a[i][j]


def test_e7_killing_invariance(wb):
    assert wb.killing.invariance_defect_count() == 0


def test_killing_dualize_roundtrip(wb):
    elem = {0: Fraction(3), 10: Fraction(-2), 100: Fraction(1, 7)}
    func = wb.killing.pair_with_basis(elem)
    assert wb.killing.dualize(func) == elem


# ---------------------------------------------------------------------------
# minuscule representations


def test_a1_minuscule_standard():
    cb = make_cb("A1")
    rep = build_minuscule(cb, 0)
    assert rep.dim == 2
    assert check_rep_exhaustive(rep) == 0


def test_non_minuscule_rejected():
    cb = make_cb("D4")
    with pytest.raises(LieError):
        build_minuscule(cb, 1)  # adjoint-adjacent node of D4 is not minuscule


def test_e7_minuscule_56(wb):
    rep = wb.rep
    assert rep.dim == 56
    assert len({rep.weight_of(i) for i in range(56)}) == 56


def test_e7_minuscule_commutation_exhaustive(wb):
    assert check_rep_exhaustive(wb.rep) == 0


# ---------------------------------------------------------------------------
# invariant pairing


def test_sl2_standard_area_form():
    cb = make_cb("A1")
    rep = build_minuscule(cb, 0)
    pairing = invariant_symplectic(rep)
    assert pairing.basis_value(0, 1) == 1
    assert pairing.basis_value(1, 0) == -1


def test_sym2_sl2_is_orthogonal_not_symplectic():
    from e7holo.oracles import sl2_symmetric_power

    rep = sl2_symmetric_power(2)
    with pytest.raises(LieError, match="dimension 0"):
        invariant_symplectic(rep)


def test_e7_pairing_normalization(wb):
    pairing = wb.pairing
    hi = max(range(56), key=lambda i: wb.rep.weight_of(i))
    lo = min(range(56), key=lambda i: wb.rep.weight_of(i))
    assert pairing.basis_value(hi, lo) == 1
    for (i, j), v in pairing.matrix.items():
        assert pairing.basis_value(j, i) == -v
        assert Fraction(v).denominator == 1


def test_e7_pairing_invariance_exhaustive(wb):
    # rho(X)^T S + S rho(X) = 0 for every generator covers every basis pair
    s_mat = {k: Fraction(x) for k, x in wb.pairing.matrix.items()}
    for a in range(wb.cb.dim):
        m = wb.rep.mats[a]
        mt = {(j, i): v for (i, j), v in m.items()}
        lhs = sparse_mul(mt, s_mat)
        for key, v in sparse_mul(s_mat, m).items():
            w = lhs.get(key, 0) + v
            if w:
                lhs[key] = w
            else:
                lhs.pop(key, None)
        assert not lhs


# ---------------------------------------------------------------------------
# circ product and mu


def test_e7_circ_symmetry_and_equivariance(wb):
    assert circ_symmetry_defects(wb.circ) == 0
    assert circ_equivariance_defects(wb.circ, wb.adjoint) == 0


def test_e7_circ_highest_weight_square(wb):
    # twice the minuscule highest weight is not a weight of the adjoint, so
    # the square of the highest weight vector has no component at all
    hi = max(range(56), key=lambda i: wb.rep.weight_of(i))
    assert wb.circ.of_basis(hi, hi) == {}


def test_e7_circ_extreme_pair_lands_in_cartan(wb):
    hi = max(range(56), key=lambda i: wb.rep.weight_of(i))
    lo = min(range(56), key=lambda i: wb.rep.weight_of(i))
    elem = wb.circ.of_basis(hi, lo)
    assert elem and all(a < 7 for a in elem)


def test_e7_mu_reproducible(wb):
    assert wb.mu != 0
    assert wb.mu == derive_mu(wb.killing, wb.pairing, wb.circ, seed=123, samples=5)


def test_mu_negative_control(wb):
    bad = copy.deepcopy(wb.circ)
    (i, j), elem = next(iter(bad.table.items()))
    a = next(iter(elem))
    elem[a] += 1
    with pytest.raises(LieError):
        derive_mu(wb.killing, wb.pairing, bad, seed=5, samples=40)
