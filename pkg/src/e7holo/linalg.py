"""Exact sparse linear algebra over the rationals.

Vectors and matrix rows are dicts {column index: Fraction}; zero entries are
never stored.  Everything here is deterministic and exact -- no floats.
"""

import heapq
from fractions import Fraction
from math import gcd

try:
    from gmpy2 import mpz
except ImportError:  # pragma: no cover - gmpy2 is an optional speedup
    mpz = int

ZERO = Fraction(0)
ONE = Fraction(1)


def vec_add_scaled(dst, src, factor):
    """dst += factor * src, in place, dropping zeros."""
    if not factor:
        return dst
    for k, v in src.items():
        w = dst.get(k, ZERO) + factor * v
        if w:
            dst[k] = w
        else:
            dst.pop(k, None)
    return dst


def vec_scale(v, factor):
    if not factor:
        return {}
    return {k: factor * x for k, x in v.items()}


def vec_dot(u, v):
    if len(u) > len(v):
        u, v = v, u
    s = ZERO
    for k, x in u.items():
        y = v.get(k)
        if y is not None:
            s += x * y
    return s


def integerize(v):
    """Scale a rational dict-vector to coprime integers, first entry sign fixed."""
    if not v:
        return {}
    denom_lcm = 1
    for x in v.values():
        d = x.denominator
        denom_lcm = denom_lcm // gcd(denom_lcm, d) * d
    ints = {k: x.numerator * (denom_lcm // x.denominator) for k, x in v.items()}
    g = 0
    for n in ints.values():
        g = gcd(g, abs(n))
    lead = ints[min(ints)]
    sign = -1 if lead < 0 else 1
    return {k: Fraction(sign * n // g) for k, n in ints.items()}


class RowEchelon:
    """Incremental exact row echelon form.

    Rows are fed one at a time; each is reduced against the current pivots.
    A surviving nonzero row is normalized (pivot = 1) and recorded.  Supports
    early exit once a target rank is reached.
    """

    def __init__(self):
        self.pivot_rows = {}  # pivot column -> normalized row

    @property
    def rank(self):
        return len(self.pivot_rows)

    def reduce(self, row):
        """Return the residue of `row` modulo the current row space."""
        row = {k: v for k, v in row.items() if v}
        heap = list(row)
        heapq.heapify(heap)
        last = None
        while heap:
            col = heapq.heappop(heap)
            if col == last:
                continue
            last = col
            v = row.get(col)
            if not v:
                continue
            piv = self.pivot_rows.get(col)
            if piv is None:
                continue
            del row[col]
            # Pivot rows have support in columns >= their pivot, so fill-in
            # lands strictly ahead of the current position.
            for k, pv in piv.items():
                if k == col:
                    continue
                w = row.get(k, ZERO) - v * pv
                if w:
                    if k not in row:
                        heapq.heappush(heap, k)
                    row[k] = w
                else:
                    row.pop(k, None)
        return row

    def add_row(self, row):
        """Insert a row; returns True if it increased the rank."""
        row = self.reduce(row)
        if not row:
            return False
        col = min(row)
        inv = ONE / row[col]
        self.pivot_rows[col] = {k: v * inv for k, v in row.items()}
        return True


def rank_of_rows(rows, stop_at=None):
    ech = RowEchelon()
    for row in rows:
        if ech.add_row(row) and stop_at is not None and ech.rank >= stop_at:
            return ech.rank
    return ech.rank


def nullspace(rows, ncols):
    """Exact kernel basis of the system {row . x = 0 for each row}.

    `rows` iterates over constraint rows (dict col -> coeff); columns are
    0..ncols-1.  Returns a list of dict vectors spanning the kernel, each
    scaled to coprime integers.
    """
    ech = RowEchelon()
    for row in rows:
        ech.add_row(row)
        if ech.rank == ncols:
            return []
    pivots = ech.pivot_rows
    free_cols = [j for j in range(ncols) if j not in pivots]
    # Back-substitute so each pivot row mentions only free columns.
    solved = {}
    for col in sorted(pivots, reverse=True):
        row = dict(pivots[col])
        row.pop(col)
        expr = {}  # free column -> coefficient in the expression of x_col
        for j, coeff in row.items():
            if j in solved:
                vec_add_scaled(expr, solved[j], -coeff)
            else:
                expr[j] = expr.get(j, ZERO) - coeff
                if not expr[j]:
                    del expr[j]
        solved[col] = expr
    basis = []
    for j in free_cols:
        vec = {j: ONE}
        for col, expr in solved.items():
            c = expr.get(j)
            if c:
                vec[col] = c
        basis.append(integerize(vec))
    return basis


def solve_dense(matrix, rhs):
    """Solve a small dense square system exactly; returns list or None."""
    n = len(matrix)
    aug = [list(map(Fraction, row)) + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def invert_dense(matrix):
    """Exact inverse of a small dense matrix as list of lists of Fractions."""
    n = len(matrix)
    cols = []
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        x = solve_dense(matrix, e)
        if x is None:
            raise ValueError("matrix is singular")
        cols.append(x)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def det_dense(matrix):
    """Exact determinant by fraction-free style elimination on Fractions."""
    n = len(matrix)
    a = [list(map(Fraction, row)) for row in matrix]
    det = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return ZERO
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        pv = a[col][col]
        det *= pv
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] / pv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def bareiss_rank(rows, ncols):
    """Exact rank of a rational matrix via integer fraction-free elimination.

    Rows are scaled to integers (rank-preserving), then eliminated with the
    Bareiss pivoting scheme so intermediate entries stay integral.
    """
    mat = []
    for row in rows:
        if not row:
            continue
        lcm = 1
        for x in row.values():
            d = x.denominator
            lcm = lcm // gcd(lcm, d) * d
        mat.append({k: mpz(x.numerator * (lcm // x.denominator)) for k, x in row.items()})
    rank = 0
    prev = mpz(1)
    cols_done = set()
    while mat:
        pivot_row = None
        pivot_col = None
        best = None
        for r in mat:
            for c in r:
                if c in cols_done:
                    continue
                size = (len(r), abs(r[c]))
                if best is None or size < best:
                    best = size
                    pivot_row, pivot_col = r, c
        if pivot_row is None:
            break
        mat.remove(pivot_row)
        rank += 1
        cols_done.add(pivot_col)
        pv = pivot_row[pivot_col]
        nxt = []
        for r in mat:
            f = r.get(pivot_col)
            if f is None:
                r2 = {c: (v * pv) // prev for c, v in r.items()}
            else:
                r2 = {}
                for c in set(r) | set(pivot_row):
                    if c == pivot_col:
                        continue
                    v = r.get(c, 0) * pv - f * pivot_row.get(c, 0)
                    if v:
                        r2[c] = v // prev
            if r2:
                nxt.append(r2)
        mat = nxt
        prev = pv
    return rank
