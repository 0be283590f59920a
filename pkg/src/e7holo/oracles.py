"""Small explicit representations used as brute-force test subjects:
symmetric powers of the defining sl2 module and the vector representations
of so(n)."""

from fractions import Fraction

from .chevalley import chevalley_constants
from .liecore import cartan_matrix, generate_roots
from .repbuild import MatrixRep

_A1_CB = None


def a1_chevalley():
    global _A1_CB
    if _A1_CB is None:
        _A1_CB = chevalley_constants(generate_roots(cartan_matrix("A1")))
    return _A1_CB


def sl2_symmetric_power(k):
    """sl2 acting on the (k+1)-dimensional module Sym^k C^2.

    Basis v_0..v_k with h v_i = (k - 2i) v_i, f v_i = (i+1) v_{i+1},
    e v_i = i (k - i + 1) v_{i-1}; generator order matches the A1 Chevalley
    basis [h, e, f].
    """
    cb = a1_chevalley()
    n = k + 1
    h = {(i, i): Fraction(k - 2 * i) for i in range(n) if k != 2 * i}
    e = {(i - 1, i): Fraction(i * (k - i + 1)) for i in range(1, n)}
    f = {(i + 1, i): Fraction(i + 1) for i in range(n - 1)}
    labels = [((k - 2 * i,), 0) for i in range(n)]
    return MatrixRep(cb=cb, dim=n, mats=[h, e, f], labels=labels)


def so_n_matrices(n):
    """Basis E_ij - E_ji (i < j) of so(n) inside gl(n)."""
    mats = []
    for i in range(n):
        for j in range(i + 1, n):
            mats.append({(i, j): Fraction(1), (j, i): Fraction(-1)})
    return mats


def gl_matrices(n):
    """Full basis E_ij of gl(n)."""
    return [{(i, j): Fraction(1)} for i in range(n) for j in range(n)]
