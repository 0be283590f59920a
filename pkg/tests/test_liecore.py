import pytest

from e7holo.liecore import (
    LieError,
    DecompositionMultiset,
    cartan_matrix,
    generate_roots,
    rho_shift_resolve,
    symmetric_power_decompose,
    tensor_decompose,
    weight_multiplicities,
    weyl_dimension,
)


@pytest.fixture(scope="module")
def e7():
    return generate_roots(cartan_matrix("E7"))


@pytest.fixture(scope="module")
def e6():
    return generate_roots(cartan_matrix("E6"))


@pytest.fixture(scope="module")
def a1():
    return generate_roots(cartan_matrix("A1"))


# ---------------------------------------------------------------------------
# root generation


def test_a1_roots(a1):
    assert sorted(a1.roots) == [(-1,), (1,)]


def test_a2_roots():
    rs = generate_roots(cartan_matrix("A2"))
    assert len(rs.roots) == 6
    assert set(rs.positive_roots) == {(1, 0), (0, 1), (1, 1)}


# classical counts: |roots| = dim g - rank
@pytest.mark.parametrize(
    "name,count",
    [("A3", 12), ("B2", 8), ("C3", 18), ("D4", 24), ("G2", 12), ("F4", 48), ("E6", 72), ("E7", 126)],
)
def test_root_counts(name, count):
    rs = generate_roots(cartan_matrix(name))
    assert len(rs.roots) == count
    assert len(rs.positive_roots) == count // 2
    # closed under negation by construction
    assert all(tuple(-x for x in b) in rs._root_set for b in rs.roots)


def test_rho_pairs_to_one_on_simple(e7):
    for i in range(7):
        simple = tuple(int(j == i) for j in range(7))
        assert e7.pair_coroot(e7.rho, simple) == 1


def test_non_finite_type_rejected():
    with pytest.raises(LieError):
        # affine A1 matrix
        cartan_matrix_entries = ((2, -2), (-2, 2))
        from e7holo.liecore import CartanMatrix

        CartanMatrix(cartan_matrix_entries)


# ---------------------------------------------------------------------------
# Weyl dimension formula


@pytest.mark.parametrize(
    "algebra,hw,dim",
    [
        ("E7", (0, 0, 0, 0, 0, 0, 1), 56),
        ("E7", (1, 0, 0, 0, 0, 0, 0), 133),
        ("E6", (1, 0, 0, 0, 0, 0), 27),
        ("E6", (0, 1, 0, 0, 0, 0), 78),
        ("A1", (3,), 4),
    ],
)
def test_weyl_dimension(algebra, hw, dim):
    rs = generate_roots(cartan_matrix(algebra))
    assert weyl_dimension(rs, hw) == dim


def test_weyl_dimension_rejects_non_dominant(a1):
    with pytest.raises(LieError):
        weyl_dimension(a1, (-1,))


# ---------------------------------------------------------------------------
# weight multiplicities (Freudenthal)


def test_sl2_string(a1):
    mult = weight_multiplicities(a1, (3,))
    assert mult == {(3,): 1, (1,): 1, (-1,): 1, (-3,): 1}


def test_e7_minuscule_weights(e7):
    hw = (0, 0, 0, 0, 0, 0, 1)
    mult = weight_multiplicities(e7, hw)
    assert len(mult) == 56
    assert all(m == 1 for m in mult.values())
    # independent route: the Weyl orbit of the highest weight
    assert e7.weyl_orbit(hw) == set(mult)


def test_e7_adjoint_zero_weight(e7):
    mult = weight_multiplicities(e7, (1, 0, 0, 0, 0, 0, 0))
    assert mult[(0,) * 7] == 7
    assert sum(mult.values()) == 133


def test_multiplicities_sum_to_dimension(e6):
    for hw in [(1, 0, 0, 0, 0, 0), (0, 0, 0, 0, 0, 1), (0, 1, 0, 0, 0, 0)]:
        assert sum(weight_multiplicities(e6, hw).values()) == weyl_dimension(e6, hw)


# ---------------------------------------------------------------------------
# tensor decomposition (Klimyk)


def test_clebsch_gordan(a1):
    dec = tensor_decompose(a1, (1,), (1,))
    assert dec.terms == [((0,), 1), ((2,), 1)]


def test_tensor_trivial_factor(e7):
    hw = (0, 0, 0, 0, 0, 0, 1)
    dec = tensor_decompose(e7, hw, (0,) * 7)
    assert dec.terms == [(hw, 1)]


def test_e6_27_square(e6):
    hw = (1, 0, 0, 0, 0, 0)
    dec = tensor_decompose(e6, hw, hw)
    assert dec.total_dimension(e6) == 729
    dims = sorted(weyl_dimension(e6, w) * m for w, m in dec)
    assert dims == [27, 351, 351]
    # the 27-dimensional summand is the dual module
    assert ((0, 0, 0, 0, 0, 1), 1) in dec.terms


def test_tensor_commutes(e6):
    a = (1, 0, 0, 0, 0, 0)
    b = (0, 0, 0, 0, 0, 1)
    assert tensor_decompose(e6, a, b) == tensor_decompose(e6, b, a)


# ---------------------------------------------------------------------------
# symmetric powers


def test_sym2_of_sl2_fundamental(a1):
    dec = symmetric_power_decompose(a1, (1,), 2)
    assert dec.terms == [((2,), 1)]


def test_sym2_of_27(e6):
    hw = (1, 0, 0, 0, 0, 0)
    dec = symmetric_power_decompose(e6, hw, 2)
    assert dec.total_dimension(e6) == 378
    assert len(dec) == 2  # two irreducible summands
    dims = sorted(weyl_dimension(e6, w) * m for w, m in dec)
    assert dims == [27, 351]


def test_sym3_of_27(e6):
    hw = (1, 0, 0, 0, 0, 0)
    dec = symmetric_power_decompose(e6, hw, 3)
    assert dec.total_dimension(e6) == 3654
    assert len(dec) == 3  # three irreducible summands


def test_sym2_complement_is_alternating_square(e6):
    hw = (1, 0, 0, 0, 0, 0)
    sym = symmetric_power_decompose(e6, hw, 2)
    full = tensor_decompose(e6, hw, hw)
    assert full.total_dimension(e6) - sym.total_dimension(e6) == 27 * 26 // 2


# ---------------------------------------------------------------------------
# rho-shift resolution


def test_resolve_wall(a1):
    assert rho_shift_resolve(a1, (-1,)) == "singular"


@pytest.mark.parametrize("k", [0, 1, 5])
def test_resolve_dominant_is_idempotent(a1, k):
    assert rho_shift_resolve(a1, (k,)) == (0, (k,))


def test_resolve_serre_duality(a1):
    # frozen from Serre duality on P^1: H^1(O(-k)) = H^0(O(k-2))^* for k >= 2
    assert rho_shift_resolve(a1, (-2,)) == (1, (0,))
    assert rho_shift_resolve(a1, (-5,)) == (1, (3,))


def test_decomposition_multiset_requires_positive_mults():
    with pytest.raises(LieError):
        DecompositionMultiset([((1,), 0)])
