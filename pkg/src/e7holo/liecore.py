"""Root systems, weights, characters: the combinatorial layer.

Conventions, fixed once and used everywhere:
  * Cartan matrix entries a[i][j] = 2(alpha_i, alpha_j)/(alpha_i, alpha_i)
    = <alpha_j, alpha_i^vee>.
  * Weights are tuples of integers in fundamental-weight coordinates.
  * Roots are tuples of integers in simple-root coordinates.
  * A root beta has fundamental coordinates A.b, so <beta, alpha_i^vee>
    is row i of that product.
All arithmetic is exact (ints and Fractions).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .linalg import det_dense, invert_dense

Weight = tuple
Root = tuple


class LieError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Cartan matrices


@dataclass(frozen=True)
class CartanMatrix:
    entries: tuple

    @property
    def rank(self):
        return len(self.entries)

    def __post_init__(self):
        a = self.entries
        n = len(a)
        for i in range(n):
            if len(a[i]) != n:
                raise LieError("Cartan matrix is not square")
            if a[i][i] != 2:
                raise LieError("Cartan matrix diagonal must be 2")
            for j in range(n):
                if i != j:
                    if a[i][j] > 0:
                        raise LieError("off-diagonal Cartan entries must be <= 0")
                    if (a[i][j] == 0) != (a[j][i] == 0):
                        raise LieError("Cartan zero pattern must be symmetric")
        d = symmetrizers(a)
        sym = [[Fraction(d[i] * a[i][j]) for j in range(n)] for i in range(n)]
        for k in range(1, n + 1):
            minor = [row[:k] for row in sym[:k]]
            if det_dense(minor) <= 0:
                raise LieError("Cartan matrix is not of finite type")


def symmetrizers(a):
    """Minimal positive integers d with d_i a_ij = d_j a_ji."""
    n = len(a)
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        queue = [start]
        while queue:
            i = queue.pop()
            for j in range(n):
                if a[i][j] and d[j] is None:
                    d[j] = d[i] * a[j][i] / a[i][j]
                    queue.append(j)
    lcm = 1
    for x in d:
        lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in d]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints]


def _chain(n):
    return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]


def cartan_matrix(name):
    """Cartan matrix from Dynkin-type notation such as "A1", "E7", "D4"."""
    name = name.strip().upper()
    if len(name) < 2 or name[0] not in "ABCDEFG":
        raise LieError(f"unrecognized algebra name {name!r}")
    family, n = name[0], int(name[1:])
    if family == "A" and n >= 1:
        a = _chain(n)
    elif family == "B" and n >= 2:
        a = _chain(n)
        a[n - 2][n - 1] = -2
    elif family == "C" and n >= 2:
        a = _chain(n)
        a[n - 1][n - 2] = -2
    elif family == "D" and n >= 3:
        a = _chain(n)
        a[n - 1][n - 2] = a[n - 2][n - 1] = 0
        a[n - 1][n - 3] = a[n - 3][n - 1] = -1
    elif family == "E" and n in (6, 7, 8):
        # Bourbaki: chain 1-3-4-...-n with node 2 attached to node 4.
        a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        edges = [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]
        for i, j in edges:
            a[i][j] = a[j][i] = -1
    elif family == "F" and n == 4:
        a = _chain(4)
        a[1][2] = -2
        a[2][1] = -1
    elif family == "G" and n == 2:
        a = [[2, -1], [-3, 2]]
    else:
        raise LieError(f"unrecognized algebra name {name!r}")
    return CartanMatrix(tuple(tuple(row) for row in a))


# ---------------------------------------------------------------------------
# Root system data


@dataclass
class RootSystemData:
    cartan: CartanMatrix
    positive_roots: list  # root coordinates, sorted by (height, lex)
    roots: list  # positives then matching negatives
    d: list  # symmetrizers (alpha_i, alpha_i)/2 up to overall scale
    cartan_inv: list  # Fraction matrix
    _root_set: set = field(default_factory=set)
    _coroot_coeffs: dict = field(default_factory=dict)
    _root_weight: dict = field(default_factory=dict)

    @property
    def rank(self):
        return self.cartan.rank

    @property
    def rho(self):
        return (1,) * self.rank

    def is_root(self, beta):
        return beta in self._root_set

    def root_to_weight(self, beta):
        """Fundamental coordinates of a root."""
        w = self._root_weight.get(beta)
        if w is None:
            a = self.cartan.entries
            w = tuple(sum(a[i][j] * beta[j] for j in range(self.rank)) for i in range(self.rank))
            self._root_weight[beta] = w
        return w

    def weight_to_root_coords(self, lam):
        """Exact simple-root coordinates of a weight (Fractions)."""
        return tuple(
            sum(self.cartan_inv[j][i] * lam[i] for i in range(self.rank))
            for j in range(self.rank)
        )

    def coroot_pairing_coeffs(self, beta):
        """Coefficients c with <lam, beta^vee> = sum_j c_j lam_j."""
        c = self._coroot_coeffs.get(beta)
        if c is None:
            norm2 = self.root_norm2(beta)
            c = tuple(Fraction(2 * beta[j] * self.d[j], 1) / norm2 for j in range(self.rank))
            self._coroot_coeffs[beta] = c
        return c

    def pair_coroot(self, lam, beta):
        """<lam, beta^vee> for lam in fundamental coordinates."""
        return sum(c * x for c, x in zip(self.coroot_pairing_coeffs(beta), lam))

    def root_norm2(self, beta):
        """(beta, beta) in the symmetrizer normalization."""
        a = self.cartan.entries
        n = self.rank
        return sum(
            beta[i] * beta[j] * self.d[j] * a[j][i] for i in range(n) for j in range(n)
        )

    def inner(self, lam, mu):
        """(lam, mu) for weights in fundamental coordinates."""
        n = self.rank
        return sum(
            lam[i] * mu[k] * self.d[i] * self.cartan_inv[i][k]
            for i in range(n)
            for k in range(n)
        )

    def inner_weight_root(self, lam, beta):
        """(lam, beta) with lam in fundamental and beta in root coordinates."""
        return sum(beta[j] * lam[j] * self.d[j] for j in range(self.rank))

    def reflect(self, lam, i):
        """Simple reflection s_i acting on fundamental coordinates."""
        a = self.cartan.entries
        li = lam[i]
        if not li:
            return tuple(lam)
        return tuple(lam[j] - li * a[j][i] for j in range(self.rank))

    def coroot_of_simple(self, beta):
        """Coroot beta^vee as an integer combination of simple coroots."""
        norm2 = self.root_norm2(beta)
        coeffs = [Fraction(2 * beta[j] * self.d[j], 1) / norm2 for j in range(self.rank)]
        for c in coeffs:
            if c.denominator != 1:
                raise LieError("coroot coefficients are not integral")
        return tuple(int(c) for c in coeffs)

    def highest_root(self):
        top = max(self.positive_roots, key=sum)
        return top

    def dominant(self, lam):
        return all(x >= 0 for x in lam)

    def weyl_orbit(self, lam):
        """Full Weyl orbit of a weight."""
        seen = {tuple(lam)}
        queue = [tuple(lam)]
        while queue:
            mu = queue.pop()
            for i in range(self.rank):
                nu = self.reflect(mu, i)
                if nu not in seen:
                    seen.add(nu)
                    queue.append(nu)
        return seen


def generate_roots(cartan):
    """Closure of the simple roots under root strings; raises for bad input."""
    if not isinstance(cartan, CartanMatrix):
        cartan = CartanMatrix(tuple(tuple(row) for row in cartan))
    n = cartan.rank
    a = cartan.entries
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    levels = [set(simple)]
    known = set(simple)
    while levels[-1]:
        nxt = set()
        for beta in levels[-1]:
            for i in range(n):
                # r = how far the alpha_i-string continues below beta; the
                # string through a positive root stays positive, so membership
                # in `known` is the right test.
                r = 0
                down = tuple(beta[j] - (1 if j == i else 0) for j in range(n))
                while down in known:
                    r += 1
                    down = tuple(down[j] - (1 if j == i else 0) for j in range(n))
                pairing = sum(a[i][j] * beta[j] for j in range(n))
                if r - pairing > 0:
                    up = tuple(beta[j] + (1 if j == i else 0) for j in range(n))
                    if up not in known:
                        nxt.add(up)
        known |= nxt
        levels.append(nxt)
    positives = sorted(known, key=lambda b: (sum(b), b))
    negatives = [tuple(-x for x in b) for b in positives]
    rs = RootSystemData(
        cartan=cartan,
        positive_roots=positives,
        roots=positives + negatives,
        d=symmetrizers(a),
        cartan_inv=invert_dense([list(row) for row in a]),
    )
    rs._root_set = set(rs.roots)
    return rs


# ---------------------------------------------------------------------------
# Dimensions, weight multiplicities, decompositions


def weyl_dimension(rs, hw):
    """Weyl dimension formula, exact."""
    if not rs.dominant(hw):
        raise LieError(f"weight {hw} is not dominant")
    rho = rs.rho
    num = Fraction(1)
    for beta in rs.positive_roots:
        shifted = rs.pair_coroot(tuple(h + r for h, r in zip(hw, rho)), beta)
        base = rs.pair_coroot(rho, beta)
        num *= Fraction(shifted) / base
    if num.denominator != 1:
        raise LieError("Weyl dimension did not come out integral")
    return int(num)


def _weight_set(rs, hw):
    """Saturated weight set of the irreducible module with highest weight hw."""
    weights = {tuple(hw)}
    queue = [tuple(hw)]
    while queue:
        mu = queue.pop()
        for beta in rs.positive_roots:
            m = rs.pair_coroot(mu, beta)
            if m > 0:
                bw = rs.root_to_weight(beta)
                nu = mu
                for _ in range(int(m)):
                    nu = tuple(x - y for x, y in zip(nu, bw))
                    if nu not in weights:
                        weights.add(nu)
                        queue.append(nu)
    return weights


def weight_multiplicities(rs, hw):
    """Full weight system via Freudenthal's recursion: {weight: multiplicity}."""
    if not rs.dominant(hw):
        raise LieError(f"weight {hw} is not dominant")
    hw = tuple(hw)
    weights = _weight_set(rs, hw)
    rho = rs.rho
    lam_rho = tuple(h + r for h, r in zip(hw, rho))
    c_top = rs.inner(lam_rho, lam_rho)
    # Depth = height of hw - mu in root coordinates; process shallow to deep.
    def depth(mu):
        rc = rs.weight_to_root_coords(tuple(h - m for h, m in zip(hw, mu)))
        return sum(rc)

    order = sorted(weights, key=depth)
    mult = {hw: 1}
    pos_data = [(beta, rs.root_to_weight(beta)) for beta in rs.positive_roots]
    for mu in order[1:]:
        mu_rho = tuple(m + r for m, r in zip(mu, rho))
        denom = c_top - rs.inner(mu_rho, mu_rho)
        total = Fraction(0)
        for beta, bw in pos_data:
            nu = mu
            while True:
                nu = tuple(x + y for x, y in zip(nu, bw))
                if nu not in weights:
                    break
                # nu is shallower than mu, hence already processed
                total += mult[nu] * rs.inner_weight_root(nu, beta)
        m = 2 * total / denom
        if m.denominator != 1 or m <= 0:
            raise LieError("Freudenthal recursion produced a bad multiplicity")
        mult[mu] = int(m)
    return mult


@dataclass
class DecompositionMultiset:
    """Dominant weights with multiplicities, e.g. an irreducible decomposition."""

    terms: list  # sorted list of (Weight, multiplicity)

    def __post_init__(self):
        self.terms = sorted((tuple(w), int(m)) for w, m in self.terms)
        for w, m in self.terms:
            if m <= 0:
                raise LieError("multiplicities must be positive")

    def total_dimension(self, rs):
        return sum(m * weyl_dimension(rs, w) for w, m in self.terms)

    def as_dict(self):
        return dict(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return isinstance(other, DecompositionMultiset) and self.terms == other.terms


def rho_shift_resolve(rs, lam):
    """Resolve lam + rho to the dominant chamber.

    Returns "singular" if lam + rho lies on a wall, otherwise the pair
    (Weyl length, dominant weight w(lam + rho) - rho).
    """
    v = [x + 1 for x in lam]
    length = 0
    while True:
        neg = next((i for i, x in enumerate(v) if x < 0), None)
        if neg is None:
            break
        v = list(rs.reflect(tuple(v), neg))
        length += 1
    if any(x == 0 for x in v):
        return "singular"
    return length, tuple(x - 1 for x in v)


def tensor_decompose(rs, hw1, hw2):
    """Klimyk's rho-shifted orbit formula for L(hw1) (x) L(hw2)."""
    for hw in (hw1, hw2):
        if not rs.dominant(hw):
            raise LieError(f"weight {hw} is not dominant")
    # Sum over the smaller weight system.
    if weyl_dimension(rs, hw2) > weyl_dimension(rs, hw1):
        hw1, hw2 = hw2, hw1
    out = {}
    for nu, m in weight_multiplicities(rs, hw2).items():
        shifted = tuple(a + b for a, b in zip(hw1, nu))
        res = rho_shift_resolve(rs, shifted)
        if res == "singular":
            continue
        length, dom = res
        out[dom] = out.get(dom, 0) + m * (-1) ** length
    terms = [(w, m) for w, m in out.items() if m]
    if any(m < 0 for _, m in terms):
        raise LieError("Klimyk accumulation left a negative multiplicity")
    return DecompositionMultiset(terms)


def _convolve(c1, c2):
    out = {}
    for w1, m1 in c1.items():
        for w2, m2 in c2.items():
            w = tuple(a + b for a, b in zip(w1, w2))
            out[w] = out.get(w, 0) + m1 * m2
    return out


def symmetric_power_character(char, k):
    """Weight multiset of the k-th symmetric power from a weight multiset."""
    if k == 1:
        return dict(char)
    sq = _convolve(char, char)
    # p2 / p3: characters evaluated on squared / cubed torus elements
    p2 = {tuple(2 * x for x in w): m for w, m in char.items()}
    if k == 2:
        out = {}
        for w in set(sq) | set(p2):
            v = sq.get(w, 0) + p2.get(w, 0)
            if v % 2:
                raise LieError("symmetric square character is not integral")
            if v:
                out[w] = v // 2
        return out
    if k == 3:
        cu = _convolve(sq, char)
        p3 = {tuple(3 * x for x in w): m for w, m in char.items()}
        mixed = _convolve(char, p2)
        out = {}
        for w in set(cu) | set(p3) | set(mixed):
            v = cu.get(w, 0) + 3 * mixed.get(w, 0) + 2 * p3.get(w, 0)
            if v % 6:
                raise LieError("symmetric cube character is not integral")
            if v:
                out[w] = v // 6
        return out
    raise LieError(f"symmetric power k={k} not supported (k must be 1, 2 or 3)")


def peel_character(rs, char):
    """Greedy decomposition of a character into irreducible highest weights."""
    remaining = {w: m for w, m in char.items() if m}

    def ht(w):
        # Drops by the root height when subtracting a positive root, so a
        # maximizer is a maximal weight of the remaining character.
        return sum(rs.weight_to_root_coords(w))

    terms = []
    while remaining:
        top = max(remaining, key=lambda w: (ht(w), w))
        if not rs.dominant(top):
            raise LieError(f"maximal weight {top} is not dominant; not a character")
        mult = remaining[top]
        for nu, m in weight_multiplicities(rs, top).items():
            have = remaining.get(nu, 0) - mult * m
            if have < 0:
                raise LieError("character peeling went negative; not a character")
            if have:
                remaining[nu] = have
            else:
                remaining.pop(nu, None)
        terms.append((top, mult))
    return DecompositionMultiset(terms)


def symmetric_power_decompose(rs, hw, k):
    """Irreducible decomposition of the k-th symmetric power of L(hw)."""
    if k not in (2, 3):
        raise LieError("k must be 2 or 3")
    if not rs.dominant(hw):
        raise LieError(f"weight {hw} is not dominant")
    char = symmetric_power_character(weight_multiplicities(rs, hw), k)
    dec = peel_character(rs, char)
    d = weyl_dimension(rs, hw)
    expect = {2: d * (d + 1) // 2, 3: d * (d + 1) * (d + 2) // 6}[k]
    if dec.total_dimension(rs) != expect:
        raise LieError("symmetric power dimension bookkeeping failed")
    return dec
