import pytest

from e7holo.bbw import (
    CohomologyTable,
    HomogeneousBundle,
    conormal_fiber,
    kostant_cohomology,
    levi_decompose,
    parabolic_from_node,
    spencer_cross_check,
    symmetric_cube_sequence_check,
    symmetric_square_sequence_check,
    twisted_conormal_cohomology,
    twisted_conormal_cohomology_graded,
    weightwise_euler,
)
from e7holo.liecore import LieError, cartan_matrix, generate_roots


@pytest.fixture(scope="module")
def a1():
    return generate_roots(cartan_matrix("A1"))


@pytest.fixture(scope="module")
def e7():
    return generate_roots(cartan_matrix("E7"))


@pytest.fixture(scope="module")
def e7_conormal(e7):
    return conormal_fiber(e7, 6)


# ---------------------------------------------------------------------------
# parabolics


def test_p1_parabolic(a1):
    assert parabolic_from_node(a1, 0).dim_x == 1


def test_e7_p7_is_27_dimensional(e7):
    assert parabolic_from_node(e7, 6).dim_x == 27


def test_e6_p1_is_16_dimensional():
    e6 = generate_roots(cartan_matrix("E6"))
    assert parabolic_from_node(e6, 0).dim_x == 16


def test_non_cominuscule_refused():
    d4 = generate_roots(cartan_matrix("D4"))
    with pytest.raises(LieError, match="cominuscule"):
        conormal_fiber(d4, 1)  # the central node of D4 has coefficient 2


# ---------------------------------------------------------------------------
# Kostant on P^1: line bundle with fiber weight nu is O(-nu)


@pytest.mark.parametrize(
    "fiber,expected",
    [
        ((1,), {}),  # O(-1): no cohomology (singular shift)
        ((-1,), {0: 2}),  # O(1)
        ((-4,), {0: 5}),  # O(4)
        ((2,), {1: 1}),  # O(-2): H^1 one-dimensional
        ((5,), {1: 4}),  # O(-5)
    ],
)
def test_p1_line_bundles(a1, fiber, expected):
    pd = parabolic_from_node(a1, 0)
    table = kostant_cohomology(HomogeneousBundle(parabolic=pd, summands=[(fiber, 1)]))
    assert {i: table.dimension(i) for i in table.degrees()} == expected


def test_p1_serre_duality(a1):
    # H^1(O(-k)) = H^0(O(k-2)) for k >= 2
    pd = parabolic_from_node(a1, 0)
    for k in range(2, 8):
        h1 = kostant_cohomology(
            HomogeneousBundle(parabolic=pd, summands=[((k,), 1)])
        ).dimension(1)
        h0 = kostant_cohomology(
            HomogeneousBundle(parabolic=pd, summands=[((2 - k,), 1)])
        ).dimension(0)
        assert h1 == h0 == k - 1


def test_kostant_single_degree_per_summand(e7, e7_conormal):
    # each irreducible summand contributes to at most one degree by
    # construction; spot-check that the k=3 graded table has no summand twice
    table = twisted_conormal_cohomology_graded(e7_conormal, 3)
    for i in table.degrees():
        for w, m in table.by_degree[i]:
            assert m >= 1


# ---------------------------------------------------------------------------
# conormal data


def test_e7_conormal_rank_28(e7_conormal):
    assert sum(e7_conormal.nstar_weights.values()) == 28
    assert e7_conormal.l_weight == (0, 0, 0, 0, 0, 0, -1)
    # two Levi summands: the 27-bar piece and the L*-line
    summands = e7_conormal.nstar_bundle().summands
    dims = sorted(e7_conormal.parabolic.levi_dimension(w) for w, _ in summands)
    assert dims == [1, 27]


def test_rational_normal_curve_conormal(a1):
    for k in (2, 3, 4):
        data = conormal_fiber(a1, 0, level=k)
        assert sum(data.nstar_weights.values()) == 2  # 1 + dim X
        assert data.l_weight == (-k,)


def test_e7_sequence_multiset_identities(e7_conormal):
    assert symmetric_square_sequence_check(e7_conormal)
    assert symmetric_cube_sequence_check(e7_conormal)


def test_h0_of_l_is_v(e7, e7_conormal):
    pd = e7_conormal.parabolic
    table = kostant_cohomology(
        HomogeneousBundle(parabolic=pd, summands=[(e7_conormal.l_weight, 1)])
    )
    assert {i: table.dimension(i) for i in table.degrees()} == {0: 56}


def test_tangent_bundle_sections_are_the_adjoint(e7, e7_conormal):
    pd = e7_conormal.parabolic
    summands = levi_decompose(pd, e7_conormal.tangent_weights)
    table = kostant_cohomology(HomogeneousBundle(parabolic=pd, summands=summands))
    assert {i: table.dimension(i) for i in table.degrees()} == {0: 133}
    assert table.by_degree[0].terms == [((1, 0, 0, 0, 0, 0, 0), 1)]


def test_sym2_tangent_display_has_two_summands(e7_conormal):
    from e7holo.liecore import symmetric_power_character

    pd = e7_conormal.parabolic
    char = symmetric_power_character(e7_conormal.tangent_weights, 2)
    assert len(levi_decompose(pd, char)) == 2


def test_sym3_tangent_display_has_three_summands(e7_conormal):
    from e7holo.liecore import symmetric_power_character

    pd = e7_conormal.parabolic
    char = symmetric_power_character(e7_conormal.tangent_weights, 3)
    assert len(levi_decompose(pd, char)) == 3


# ---------------------------------------------------------------------------
# the three twisted tables (Theorem 1's cohomology computation)


def test_e7_twisted_k1(e7_conormal):
    table = twisted_conormal_cohomology(e7_conormal, 1)
    assert {i: table.dimension(i) for i in table.degrees()} == {0: 134}
    assert table.by_degree[0].terms == [
        ((0, 0, 0, 0, 0, 0, 0), 1),
        ((1, 0, 0, 0, 0, 0, 0), 1),
    ]


def test_e7_twisted_k2_vanishes(e7_conormal):
    table = twisted_conormal_cohomology(e7_conormal, 2)
    assert table.by_degree == {}


def test_e7_twisted_k3_is_the_adjoint_in_h1(e7_conormal):
    table = twisted_conormal_cohomology(e7_conormal, 3)
    assert table.dimension(0) == 0
    assert table.dimension(1) == 133
    assert table.by_degree[1].terms == [((1, 0, 0, 0, 0, 0, 0), 1)]


def test_e7_graded_k3_euler_matches_actual(e7_conormal):
    graded = twisted_conormal_cohomology_graded(e7_conormal, 3)
    actual = twisted_conormal_cohomology(e7_conormal, 3)
    assert graded.euler() == actual.euler() == -133


def test_weightwise_euler_agrees(e7_conormal):
    from e7holo.bbw import twisted_conormal_character

    pd = e7_conormal.parabolic
    for k in (1, 2):
        char = twisted_conormal_character(e7_conormal, k)
        graded = twisted_conormal_cohomology_graded(e7_conormal, k)
        assert graded.euler() == weightwise_euler(pd, char)


# ---------------------------------------------------------------------------
# two-pipeline cross-checks (criterion 8 content)


def test_spencer_cross_check_k1_not_applicable():
    assert spencer_cross_check(1)["applicable"] is False


@pytest.mark.parametrize("k", [2, 3])
def test_spencer_cross_check(k):
    report = spencer_cross_check(k)
    assert report["applicable"]
    assert report["g1_matches_h0"]
    assert report["bianchi_bound_holds"]
    assert report["spencer_image_in_K"]


def test_spencer_frozen_values():
    r2 = spencer_cross_check(2)
    assert (r2["dim_g1_bruteforce"], r2["dim_K_bruteforce"]) == (3, 9)
    assert r2["h0_L_sym2_Nstar"] == 3
    r3 = spencer_cross_check(3)
    assert (r3["dim_g1_bruteforce"], r3["dim_K_bruteforce"]) == (0, 8)
    assert (r3["h0_L_sym2_Nstar"], r3["h1_L_sym3_Nstar"]) == (0, 8)
