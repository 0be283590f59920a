"""The deformed Poisson structure on W* = g* + V* induced by an admissible
polynomial map, with exact pointwise brackets, Jacobi verification, rank and
symmetry-dimension computation, and the Schur-type solver.

Conventions: points and observables use coordinates 0..dim_g-1 for g* and
dim_g..dim_g+dim_v-1 for V*; a linear observable is a pair (A, x) of sparse
dicts (A an algebra vector, x a V-vector).  The bracket is

    {f, g}(p + nu) = p([A, B]) + nu(A.y - B.x) + phi(p)(x, y)

with df = A + x, dg = B + y evaluated at the point.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .curvature import CurvatureElement, curvature_element, k0_membership
from .linalg import bareiss_rank
from .liecore import LieError


@dataclass
class WPoint:
    p: dict  # sparse g* coordinates {a: value}
    nu: dict  # sparse V* coordinates {i: value}

    def key(self):
        return (tuple(sorted(self.p.items())), tuple(sorted(self.nu.items())))


def random_point(rng, dim_g, dim_v, density=1.0):
    """Seeded random rational point, entries in [-10, 10], denominators <= 10."""

    def draw(n):
        out = {}
        for i in range(n):
            if density < 1 and rng.random() > density:
                continue
            x = Fraction(rng.randint(-10, 10), rng.randint(1, 10))
            if x:
                out[i] = x
        return out

    return WPoint(p=draw(dim_g), nu=draw(dim_v))


@dataclass
class PhiMap:
    """phi = phi_2 + q tau, with tau the invariant symplectic form.

    An optional perturbation (a0, i0, j0, eps) adds
    eps * p_{a0}^2 (x_{i0} y_{j0} - x_{j0} y_{i0}) and serves as the
    negative control: it destroys admissibility, hence the Jacobi identity.
    """

    wbench: object
    phi2: object  # PhiTwo; None for the pure Lie-Poisson structure
    tau_coeff: Fraction = Fraction(0)
    perturbation: tuple = None

    def dual_point(self, pt):
        """B^{-1} of the g*-part: the algebra element representing p."""
        return self.wbench.killing.dualize(pt.p)

    def curvature_at(self, pt):
        """d(phi)*_p / 2 = R_{p-hat} as a CurvatureElement (tau drops out)."""
        if self.phi2 is None:
            return CurvatureElement(self.wbench.dim_g, self.wbench.rep.dim, {})
        r = self.phi2.curvature_of(self.dual_point(pt))
        if self.perturbation:
            a0, i0, j0, eps = self.perturbation
            pa = pt.p.get(a0, 0)
            if pa:
                extra = CurvatureElement(
                    self.wbench.dim_g,
                    self.wbench.rep.dim,
                    {(i0, j0): {a0: Fraction(eps) * pa}},
                )
                r.scaled_add(extra)
        return r

    def form_value(self, pt, x, y):
        """phi(p)(x, y) for sparse V-vectors x, y."""
        total = Fraction(0)
        if self.phi2 is not None:
            p_hat = self.dual_point(pt)
            r = self.phi2.curvature_of(p_hat)
            val = Fraction(0)
            for i, xi in x.items():
                for j, yj in y.items():
                    gvec = r.slice(i, j)
                    if gvec:
                        val += xi * yj * self.wbench.killing.value(gvec, p_hat)
            total += val
        if self.tau_coeff:
            total += self.tau_coeff * self.wbench.pairing.value(x, y)
        if self.perturbation:
            a0, i0, j0, eps = self.perturbation
            pa = pt.p.get(a0, 0)
            if pa:
                term = x.get(i0, 0) * y.get(j0, 0) - x.get(j0, 0) * y.get(i0, 0)
                total += Fraction(eps) * pa * pa * term
        return total

    def gradient_extra(self, pt, x, y):
        """g-part of the p-gradient of phi(p)(x, y): 2 R_{p-hat}(x, y)."""
        out = {}
        r = self.curvature_at(pt)
        for i, xi in x.items():
            for j, yj in y.items():
                f = 2 * xi * yj
                for a, c in r.slice(i, j).items():
                    w = out.get(a, 0) + f * c
                    if w:
                        out[a] = w
                    else:
                        del out[a]
        return out


def lie_poisson_term(cb, pt, a_vec, b_vec):
    """p([A, B])."""
    total = Fraction(0)
    for t, c in cb.bracket(a_vec, b_vec).items():
        v = pt.p.get(t)
        if v:
            total += c * v
    return total


def nu_term(wbench, pt, a_vec, y, b_vec, x):
    """nu(A.y - B.x)."""
    rep = wbench.rep
    total = Fraction(0)
    for m, v in rep.apply_element(a_vec, y).items():
        w = pt.nu.get(m)
        if w:
            total += v * w
    for m, v in rep.apply_element(b_vec, x).items():
        w = pt.nu.get(m)
        if w:
            total -= v * w
    return total


def poisson_bracket(phi, pt, f, g):
    """{f, g} at pt for linear observables f = (A, x), g = (B, y)."""
    a_vec, x = f
    b_vec, y = g
    total = lie_poisson_term(phi.wbench.cb, pt, a_vec, b_vec)
    total += nu_term(phi.wbench, pt, a_vec, y, b_vec, x)
    total += phi.form_value(pt, x, y)
    return total


def bracket_differential(phi, pt, f, g):
    """d{f, g} at pt for linear f, g, as an observable pair (A', x')."""
    a_vec, x = f
    b_vec, y = g
    a_out = phi.wbench.cb.bracket(a_vec, b_vec)
    for a, c in phi.gradient_extra(pt, x, y).items():
        w = a_out.get(a, 0) + c
        if w:
            a_out[a] = w
        else:
            del a_out[a]
    rep = phi.wbench.rep
    x_out = rep.apply_element(a_vec, y)
    for m, v in rep.apply_element(b_vec, x).items():
        w = x_out.get(m, 0) - v
        if w:
            x_out[m] = w
        else:
            del x_out[m]
    return (a_out, x_out)


def jacobi_residual(phi, pt, triple):
    """{{f,g},h} + {{g,h},f} + {{h,f},g} at pt, exactly."""
    f, g, h = triple
    total = Fraction(0)
    for u, v, w in ((f, g, h), (g, h, f), (h, f, g)):
        total += poisson_bracket(phi, pt, bracket_differential(phi, pt, u, v), w)
    return total


def random_linear_observable(rng, dim_g, dim_v, terms=2):
    a_vec = {}
    x = {}
    for _ in range(terms):
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 5))
        if c:
            a_vec[rng.randrange(dim_g)] = c
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 5))
        if c:
            x[rng.randrange(dim_v)] = c
    return (a_vec, x)


def jacobi_suite(phi, seed=0, points=100, triples=20):
    """Exact Jacobi residuals on seeded random points and linear triples.

    Returns a report with the residual count (0 unless phi is corrupted) and
    a witness when nonzero.
    """
    wb = phi.wbench
    rng = random.Random(seed)
    obs = [
        [random_linear_observable(rng, wb.dim_g, wb.rep.dim) for _ in range(3)]
        for _ in range(triples)
    ]
    nonzero = 0
    witness = None
    pts = [random_point(rng, wb.dim_g, wb.rep.dim, density=0.15) for _ in range(points)]
    for pt in pts:
        for triple in obs:
            if jacobi_residual(phi, pt, triple):
                nonzero += 1
                if witness is None:
                    witness = pt.key()
    return {
        "seed": seed,
        "points": points,
        "triples": triples,
        "nonzero_residuals": nonzero,
        "witness": witness,
    }


def admissibility_check(phi, seed=0, points=100, direct=2):
    """Per-point membership of d(phi)*_p in K(g).

    At each sampled p the element is assembled through the closed formula and
    matched against the linear combination sum_a p-hat_a R_{X_a} of the basis
    elements (each an exact Bianchi-checked kernel element), which certifies
    membership; for the first `direct` points the i1 residual is recomputed
    from scratch as well.
    """
    from .curvature import bianchi_residual_empty

    wb = phi.wbench
    rng = random.Random(seed)
    passed = 0
    pts = [random_point(rng, wb.dim_g, wb.rep.dim, density=0.5) for _ in range(points)]
    for idx, pt in enumerate(pts):
        p_hat = phi.dual_point(pt)
        direct_elem = curvature_element(wb, p_hat)
        combo = phi.phi2.curvature_of(p_hat)
        ok = direct_elem.slices == combo.slices
        if ok and idx < direct:
            ok = bianchi_residual_empty(wb, direct_elem)
        if ok:
            passed += 1
    return {"seed": seed, "points": points, "passed": passed, "direct_checks": min(direct, points)}


def u0_sample(phi, seed=0, points=20):
    """Fraction of sampled points with d(phi)*_p in K_0 (full g-span)."""
    wb = phi.wbench
    rng = random.Random(seed)
    hits = 0
    witness = None
    pts = [random_point(rng, wb.dim_g, wb.rep.dim, density=0.5) for _ in range(points)]
    for pt in pts:
        if k0_membership(phi.curvature_at(pt), wb.dim_g):
            hits += 1
            if witness is None:
                witness = pt.key()
    return {"seed": seed, "points": points, "hits": hits, "witness": witness}


def structure_matrix(phi, pt):
    """The 189 x 189 bracket matrix of the coordinate observables at pt."""
    wb = phi.wbench
    g, n = wb.dim_g, wb.rep.dim
    total = g + n
    rows = [{} for _ in range(total)]

    def put(i, j, v):
        if v:
            rows[i][j] = v

    for a in range(g):
        for b in range(a + 1, g):
            v = lie_poisson_term(wb.cb, pt, {a: 1}, {b: 1})
            put(a, b, v)
            put(b, a, -v)
    rep = wb.rep
    for a in range(g):
        col = {}
        for (m, i), v in rep.mats[a].items():
            w = pt.nu.get(m)
            if w:
                col[i] = col.get(i, 0) + v * w
        for i, v in col.items():
            if v:
                put(a, g + i, Fraction(v))
                put(g + i, a, Fraction(-v))
    # V-V block: phi(p)(u_i, u_j) = B(R_{p-hat}(u_i,u_j), p-hat) + tau-part;
    # the perturbation rides along inside curvature_at
    r = phi.curvature_at(pt)
    p_hat = phi.dual_point(pt)
    for (i, j), gvec in r.slices.items():
        v = wb.killing.value(gvec, p_hat)
        if phi.tau_coeff:
            v = v + phi.tau_coeff * wb.pairing.basis_value(i, j)
        put(g + i, g + j, Fraction(v))
        put(g + j, g + i, Fraction(-v))
    if phi.tau_coeff:
        for (i, j), s in wb.pairing.matrix.items():
            if i < j and (i, j) not in r.slices:
                v = phi.tau_coeff * s
                put(g + i, g + j, Fraction(v))
                put(g + j, g + i, Fraction(-v))
    return rows


def poisson_rank(phi, pt):
    """(rank, symmetry dimension) of the structure matrix at pt, exact."""
    wb = phi.wbench
    total = wb.dim_g + wb.rep.dim
    rows = structure_matrix(phi, pt)
    rank = bareiss_rank((r for r in rows if r), total)
    if rank % 2:
        raise LieError("skew structure matrix produced an odd rank")
    return rank, total - rank


def rank_suite(phi, seed=0, points=20):
    counts = {}
    wb = phi.wbench
    rng = random.Random(seed)
    sym_ok = True
    for _ in range(points):
        pt = random_point(rng, wb.dim_g, wb.rep.dim, density=0.5)
        rank, sym = poisson_rank(phi, pt)
        counts[rank] = counts.get(rank, 0) + 1
        if sym < 1:
            sym_ok = False
    generic = max(counts, key=lambda r: (counts[r], r))
    return {
        "seed": seed,
        "points": points,
        "rank_counts": counts,
        "generic_rank": generic,
        "symmetry_dim_at_generic": wb.dim_g + wb.rep.dim - generic,
        "symmetry_dim_positive_everywhere": sym_ok,
    }


# ---------------------------------------------------------------------------
# Schur-type solver (Lemma 4 machinery)


def schur_solver(mats_v, mats_w, dim_v, dim_w, include_products=True, cap=20000):
    """Exact solution space of {rho: V -> W with A rho B = B rho A for all
    A, B in g}, with matrices acting as rho_W(A) rho rho_V(B).

    The condition is bilinear, so basis pairs alone already span all
    constraints; pairs built from quadratic products of basis matrices are
    imposed as well (redundancy, kept per the build contract).  Returns a
    list of dict matrices {(w, v): value}.
    """
    from .linalg import nullspace
    from .repbuild import sparse_mul

    if len(mats_v) != len(mats_w):
        raise LieError("representations must share the algebra basis")
    if dim_v * dim_w > cap:
        raise LieError(f"Schur system size {dim_v * dim_w} exceeds the cap {cap}")
    pairs_v = list(mats_v)
    pairs_w = list(mats_w)
    if include_products:
        for a in range(len(mats_v)):
            for b in range(len(mats_v)):
                pairs_v.append(sparse_mul(mats_v[a], mats_v[b]))
                pairs_w.append(sparse_mul(mats_w[a], mats_w[b]))
    ncols = dim_v * dim_w

    def unknown(w, v):
        return w * dim_v + v

    rows = {}
    for ai in range(len(pairs_v)):
        for bi in range(len(pairs_v)):
            key_base = (ai, bi)
            for (rw, mw), va in pairs_w[ai].items():
                for (mv, cv), vb in pairs_v[bi].items():
                    row = rows.setdefault((key_base, rw, cv), {})
                    col = unknown(mw, mv)
                    w = row.get(col, 0) + va * vb
                    if w:
                        row[col] = w
                    else:
                        del row[col]
            for (rw, mw), vb in pairs_w[bi].items():
                for (mv, cv), va in pairs_v[ai].items():
                    row = rows.setdefault((key_base, rw, cv), {})
                    col = unknown(mw, mv)
                    w = row.get(col, 0) - vb * va
                    if w:
                        row[col] = w
                    else:
                        del row[col]
    kernel = nullspace(rows.values(), ncols)
    return [
        {(col // dim_v, col % dim_v): v for col, v in vec.items()} for vec in kernel
    ]
