from fractions import Fraction

import pytest

from e7holo.curvature import (
    CapExceeded,
    PhiTwo,
    bianchi_residual_empty,
    chevalley_generator_indices,
    curvature_action,
    curvature_basis_rank,
    curvature_element,
    curvature_space_bruteforce,
    equivariance_defect,
    equivariant_endomorphism_dimension,
    i2_residual_empty,
    k0_membership,
    p1_bruteforce,
    p1_slices_in_v_tensor_k1,
    phi2_direct_invariance_slice,
    phi2_equivariance_defects,
    phi2_formula_agreement,
    prolongation,
    second_curvature_bruteforce,
    second_curvature_element,
    second_curvature_rank,
    spencer_image,
    spencer_image_dimension,
    tensor_in_kernel_i1,
    weyl_reflection_adjoint,
)
from e7holo.oracles import gl_matrices, sl2_symmetric_power, so_n_matrices


def regular_cartan(wb):
    """A regular semisimple element: distinct powers keep all root values nonzero."""
    elem = {i: Fraction(10**i) for i in range(7)}
    for beta in wb.rs.roots:
        assert sum(wb.rs.root_to_weight(beta)[i] * 10**i for i in range(7)) != 0
    return elem


# ---------------------------------------------------------------------------
# brute-force kernels on small representations (frozen oracle values)


def test_gl2_prolongation_is_everything():
    assert prolongation(gl_matrices(2), 2).dim == 6


def test_so3_prolongation_vanishes():
    assert prolongation(so_n_matrices(3), 3).dim == 0


@pytest.mark.parametrize("n,kdim", [(3, 6), (4, 20)])
def test_so_n_curvature_dims(n, kdim):
    k = curvature_space_bruteforce(so_n_matrices(n), n)
    # the computed value doubles as the classical Riemann count n^2(n^2-1)/12
    assert k.dim == kdim == n * n * (n * n - 1) // 12


def test_zero_algebra_curvature():
    assert curvature_space_bruteforce([], 3).dim == 0


@pytest.mark.parametrize(
    "k,g1,kdim,k1dim,p1dim",
    [(1, 4, 3, 6, 6), (2, 0, 6, 15, 9), (3, 0, 2, 0, 0)],
)
def test_sl2_sym_power_dims(k, g1, kdim, k1dim, p1dim):
    rep = sl2_symmetric_power(k)
    mats, n = rep.mats, rep.dim
    g1_basis = prolongation(mats, n)
    k_basis = curvature_space_bruteforce(mats, n)
    assert (g1_basis.dim, k_basis.dim) == (g1, kdim)
    assert second_curvature_bruteforce(mats, n, k_basis).dim == k1dim
    p1 = p1_bruteforce(mats, n)
    assert p1.dim == p1dim
    assert p1_slices_in_v_tensor_k1(mats, n, p1, k_basis)
    # del(g^(1) (x) V*) lies inside K(g), exactly
    for img in spencer_image(g1_basis, n):
        assert tensor_in_kernel_i1(mats, n, img)


def test_k1_of_zero_k_is_zero():
    rep = sl2_symmetric_power(3)
    k_basis = curvature_space_bruteforce(rep.mats, rep.dim)
    k1 = second_curvature_bruteforce(rep.mats, rep.dim, k_basis)
    assert k1.dim == 0


def test_cap_refusal():
    with pytest.raises(CapExceeded, match="cap"):
        prolongation(gl_matrices(8), 8, cap=100)


# ---------------------------------------------------------------------------
# E7 curvature elements (Theorem 1 machinery)


def test_zero_input_gives_zero_element(wb):
    assert curvature_element(wb, {}).is_zero()


def test_e7_basis_bianchi_exhaustive(wb):
    for a in range(133):
        r = curvature_element(wb, {a: Fraction(1)})
        assert bianchi_residual_empty(wb, r)


def test_e7_curvature_rank_133(wb):
    assert curvature_basis_rank(wb) == 133


def test_e7_curvature_equivariance_on_generators(wb):
    for e in chevalley_generator_indices(wb.cb):
        for a in range(133):
            assert equivariance_defect(wb, e, {a: Fraction(1)}).is_zero()


def test_e7_second_curvature_i2_and_rank(wb):
    for w in range(56):
        q = second_curvature_element(wb, {w: Fraction(1)})
        assert i2_residual_empty(q)
    assert second_curvature_rank(wb) == 56


def test_second_element_slices_are_curvature_elements(wb):
    # each s-slice of Q_w is R_{s o w} by construction; spot-assert equality
    wvec = {3: Fraction(1)}
    q = second_curvature_element(wb, wvec)
    for s in list(q)[:5]:
        a_elem = wb.circ.of_vectors({s: Fraction(1)}, wvec)
        assert q[s].slices == curvature_element(wb, a_elem).slices


def test_k0_membership(wb):
    assert not k0_membership(curvature_element(wb, {}))
    # single Cartan generator: recorded outcome is False (rank drops)
    assert not k0_membership(curvature_element(wb, {0: Fraction(1)}))
    assert k0_membership(curvature_element(wb, regular_cartan(wb)))


def test_k0_invariant_under_weyl_conjugation(wb):
    reg = regular_cartan(wb)
    single = {0: Fraction(1)}
    for i in (0, 3, 6):
        conj = weyl_reflection_adjoint(wb, i)
        assert k0_membership(curvature_element(wb, conj(reg)))
        assert not k0_membership(curvature_element(wb, conj(single)))


# ---------------------------------------------------------------------------
# phi2


@pytest.fixture(scope="session")
def phi2(wb):
    return PhiTwo(wb)


def test_phi2_defining_vs_manifest_full_sweep(wb, phi2):
    # entrywise equality over all 133 x 133 (C, D) pairs; the manifest form
    # is symmetric in (C, D) and skew in (u, v) by construction, so this is
    # the symmetry + skewness residual check
    assert phi2_formula_agreement(wb, phi2) == 0


def test_phi2_manifest_symmetry_sample(wb, phi2):
    for c, d in [(0, 8), (12, 100), (55, 55), (7, 132)]:
        assert phi2.manifest_slice_cd(c, d) == phi2.manifest_slice_cd(d, c)


def test_phi2_invariance_via_equivariance_sweep(wb, phi2):
    assert phi2_equivariance_defects(wb, phi2) == 0


def test_phi2_direct_invariance_samples(wb, phi2):
    import random

    rng = random.Random(2024)
    for _ in range(30):
        e = rng.randrange(133)
        c = rng.randrange(133)
        d = rng.randrange(133)
        assert phi2_direct_invariance_slice(wb, phi2, e, c, d) == {}


def test_phi2_prime_rank_is_133(wb, phi2):
    # phi2' : g* -> K(g) is C -> R_C through the Killing identification
    assert curvature_basis_rank(wb, [phi2.curvature_of_basis(a) for a in range(133)]) == 133


def test_phi2_doubleprime_rank_is_56(wb):
    assert second_curvature_rank(wb) == 56


def test_invariant_part_of_g_tensor_k_is_one_dimensional(wb):
    assert equivariant_endomorphism_dimension(wb) == 1


def test_curvature_action_is_a_derivation_spotcheck(wb):
    # [E1, E2] . R = E1.(E2.R) - E2.(E1.R) on a sample element
    r = curvature_element(wb, {20: Fraction(1)})
    e1, e2 = 2, 9
    lhs = CurvatureAction = None
    b = wb.cb.bracket_basis(e1, e2)
    lhs = curvature_element(wb, {})  # zero
    for a, c in b.items():
        lhs.scaled_add(curvature_action(wb, a, r), c)
    rhs = curvature_action(wb, e1, curvature_action(wb, e2, r))
    rhs.scaled_add(curvature_action(wb, e2, curvature_action(wb, e1, r)), -1)
    assert lhs.slices == rhs.slices
