"""Chevalley bases for simply-laced algebras via a sign cocycle.

The structure constants come from a bimultiplicative form eps on the root
lattice with eps(a, b) eps(b, a) = (-1)^(a,b): orient the Dynkin diagram by
node order and set the exponent matrix M[i][i] = 1, M[i][j] = 1 for an edge
i < j, else 0.  With c_b = +1 for positive and -1 for negative roots,

    [e_a, e_b] = (c_a c_b / c_{a+b}) eps(a, b) e_{a+b}   (a + b a root)
    [e_a, e_{-a}] = h_{a^vee},   [h_i, e_a] = <a, alpha_i^vee> e_a,

which is a Chevalley basis: all N(a, b) = +-1, N(-a, -b) = -N(a, b), and the
Jacobi identity holds exactly (verified exhaustively in the tests).
"""

from dataclasses import dataclass, field

from .liecore import LieError, generate_roots


def _eps_exponent_matrix(cartan):
    n = cartan.rank
    a = cartan.entries
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 1
        for j in range(i + 1, n):
            if a[i][j] == -1:
                m[i][j] = 1
            elif a[i][j] not in (0, -1):
                raise LieError("sign cocycle construction requires a simply-laced algebra")
    return m


@dataclass
class ChevalleyBasis:
    """Basis h_0..h_{r-1}, then e_beta for positive then negative roots."""

    rs: object
    eps_matrix: list
    index_of: dict = field(default_factory=dict)  # root -> basis index
    _bracket_cache: dict = field(default_factory=dict)

    def __post_init__(self):
        r = self.rs.rank
        for k, beta in enumerate(self.rs.roots):
            self.index_of[beta] = r + k

    @property
    def dim(self):
        return self.rs.rank + len(self.rs.roots)

    @property
    def rank(self):
        return self.rs.rank

    def label(self, idx):
        """("h", i) for Cartan generators, ("e", root) for root vectors."""
        if idx < self.rank:
            return ("h", idx)
        return ("e", self.rs.roots[idx - self.rank])

    def weight_of_basis(self, idx):
        """Adjoint weight of a basis element, in fundamental coordinates."""
        if idx < self.rank:
            return (0,) * self.rank
        return self.rs.root_to_weight(self.rs.roots[idx - self.rank])

    def eps(self, a, b):
        """Bimultiplicative sign on the root lattice (integer coordinate tuples)."""
        m = self.eps_matrix
        n = self.rank
        s = 0
        for i in range(n):
            ai = a[i]
            if not ai:
                continue
            row = m[i]
            for j in range(n):
                if b[j] and row[j]:
                    s += ai * b[j]
        return -1 if s % 2 else 1

    def structure_constant(self, alpha, beta):
        """N(alpha, beta) for roots with alpha + beta a root."""
        gamma = tuple(x + y for x, y in zip(alpha, beta))
        c = 1
        if sum(alpha) < 0:
            c = -c
        if sum(beta) < 0:
            c = -c
        if sum(gamma) < 0:
            c = -c
        return c * self.eps(alpha, beta)

    def bracket_basis(self, i, j):
        """[X_i, X_j] as a sparse dict over basis indices."""
        key = (i, j)
        out = self._bracket_cache.get(key)
        if out is not None:
            return out
        r = self.rank
        rs = self.rs
        if i < r and j < r:
            out = {}
        elif i < r:
            beta = rs.roots[j - r]
            pairing = rs.root_to_weight(beta)[i]
            out = {j: pairing} if pairing else {}
        elif j < r:
            beta = rs.roots[i - r]
            pairing = rs.root_to_weight(beta)[j]
            out = {i: -pairing} if pairing else {}
        else:
            alpha = rs.roots[i - r]
            beta = rs.roots[j - r]
            gamma = tuple(x + y for x, y in zip(alpha, beta))
            if all(x == 0 for x in gamma):
                coeffs = rs.coroot_of_simple(alpha)
                out = {k: c for k, c in enumerate(coeffs) if c}
            elif rs.is_root(gamma):
                out = {self.index_of[gamma]: self.structure_constant(alpha, beta)}
            else:
                out = {}
        self._bracket_cache[key] = out
        return out

    def bracket(self, x, y):
        """Bracket of two sparse algebra vectors {basis index: coefficient}."""
        out = {}
        for i, xi in x.items():
            for j, yj in y.items():
                f = xi * yj
                if not f:
                    continue
                for k, c in self.bracket_basis(i, j).items():
                    w = out.get(k, 0) + f * c
                    if w:
                        out[k] = w
                    else:
                        del out[k]
        return out


def chevalley_constants(rs):
    """Chevalley basis with a consistent sign choice; simply-laced only."""
    eps_m = _eps_exponent_matrix(rs.cartan)
    cb = ChevalleyBasis(rs=rs, eps_matrix=eps_m)
    return cb


def jacobi_residual_exhaustive(cb, limit=None):
    """Max-nnz Jacobi residual over all basis triples (must be 0 everywhere).

    Returns the number of failing triples; 0 means the identity holds.
    """
    n = cb.dim
    bad = 0
    checked = 0
    for i in range(n):
        for j in range(i + 1, n):
            bij = cb.bracket_basis(i, j)
            for k in range(j + 1, n):
                res = {}
                for t, c in cb.bracket(bij, {k: 1}).items():
                    res[t] = res.get(t, 0) + c
                for t, c in cb.bracket(cb.bracket_basis(j, k), {i: 1}).items():
                    res[t] = res.get(t, 0) + c
                for t, c in cb.bracket(cb.bracket_basis(k, i), {j: 1}).items():
                    res[t] = res.get(t, 0) + c
                if any(res.values()):
                    bad += 1
                checked += 1
                if limit and checked >= limit:
                    return bad
    return bad
