"""Grade-k exterior algebra of R^d over exact scalars.

Index sets are ascending tuples of 1-based coordinates.  The linear order
on k-subsets compares the largest differing position (with sentinel d+1),
which is colexicographic order: sort keys are simply reversed tuples.

Multivectors are sparse maps from index sets to scalars (Fraction or
MultiPoly); zero components are never stored.  The matrix action comes in
two deliberately independent implementations, a wedge of transformed
basis vectors for decomposable inputs and a minor-sum formula for general
ones, so each can check the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from .scalars import MultiPoly, det_bareiss, rat_from_str, rat_to_str

IndexSet = tuple


def all_index_sets(d: int, k: int):
    """All k-subsets of {1..d} in increasing colex order."""
    return sorted(combinations(range(1, d + 1), k), key=colex_key)


def colex_key(index_set):
    return tuple(reversed(index_set))


def colex_compare(j1, j2):
    """-1, 0, 1 as j1 precedes, equals, or follows j2 in the subset order."""
    if len(j1) != len(j2):
        raise ValueError("index sets of different grade are not comparable")
    k1, k2 = colex_key(j1), colex_key(j2)
    return (k1 > k2) - (k1 < k2)


@dataclass(frozen=True)
class WeightVector:
    """Block-ordered positive weights, each block summing to 1."""

    m: int
    n: int
    weights: tuple

    def __post_init__(self):
        w = tuple(Fraction(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if self.m < 1 or self.n < 1:
            raise ValueError("both blocks must be nonempty")
        if len(w) != self.m + self.n:
            raise ValueError("need m + n weights")
        top, bottom = w[:self.m], w[self.m:]
        for block in (top, bottom):
            if any(x <= 0 for x in block):
                raise ValueError("weights must be positive")
            if any(block[i] < block[i + 1] for i in range(len(block) - 1)):
                raise ValueError("weights must be non-increasing within blocks")
            if sum(block) != 1:
                raise ValueError("each block must sum to 1")

    @classmethod
    def equal(cls, m: int, n: int):
        return cls(m, n, (Fraction(1, m),) * m + (Fraction(1, n),) * n)

    @property
    def d(self):
        return self.m + self.n

    def flow_exponents(self):
        """Diagonal exponents of the flow: +w_i on the first block, -w_j after."""
        return tuple(self.weights[i] if i < self.m else -self.weights[i]
                     for i in range(self.d))

    def to_json(self):
        return {"m": self.m, "n": self.n,
                "weights": [rat_to_str(x) for x in self.weights]}

    @classmethod
    def from_json(cls, data):
        return cls(data["m"], data["n"],
                   tuple(rat_from_str(s) for s in data["weights"]))


def mu(index_set, w: WeightVector) -> Fraction:
    """Eigen-exponent of e_I under the time-1 flow."""
    total = Fraction(0)
    for i in index_set:
        if not 1 <= i <= w.d:
            raise ValueError(f"index {i} out of range")
        total += w.weights[i - 1] if i <= w.m else -w.weights[i - 1]
    return total


class Multivector:
    __slots__ = ("grade", "dim", "comps")

    def __init__(self, grade, dim, comps=None):
        if not 0 <= grade <= dim:
            raise ValueError("grade out of range")
        self.grade = grade
        self.dim = dim
        self.comps = {}
        if comps:
            for idx, c in comps.items():
                idx = tuple(idx)
                if len(idx) != grade or list(idx) != sorted(set(idx)) \
                        or (idx and (idx[0] < 1 or idx[-1] > dim)):
                    raise ValueError(f"bad index set {idx}")
                if c:
                    self.comps[idx] = c

    @classmethod
    def zero(cls, grade, dim):
        return cls(grade, dim)

    @classmethod
    def basis(cls, index_set, dim, scalar=Fraction(1)):
        return cls(len(index_set), dim, {tuple(index_set): scalar})

    @classmethod
    def from_vector(cls, vec):
        return cls(1, len(vec), {(i + 1,): x for i, x in enumerate(vec) if x})

    def __bool__(self):
        return bool(self.comps)

    def support(self):
        return sorted(self.comps, key=colex_key)

    def __getitem__(self, index_set):
        idx = tuple(index_set)
        if idx in self.comps:
            return self.comps[idx]
        return Fraction(0)

    def __eq__(self, other):
        return (isinstance(other, Multivector) and self.grade == other.grade
                and self.dim == other.dim and self.comps == other.comps)

    def __hash__(self):
        return hash((self.grade, self.dim,
                     frozenset((i, c) for i, c in self.comps.items())))

    def __add__(self, other):
        if self.grade != other.grade or self.dim != other.dim:
            raise ValueError("grade or dimension mismatch")
        out = dict(self.comps)
        for idx, c in other.comps.items():
            s = out.get(idx, 0) + c
            if s:
                out[idx] = s
            else:
                out.pop(idx, None)
        return Multivector(self.grade, self.dim, out)

    def __neg__(self):
        return Multivector(self.grade, self.dim,
                           {i: -c for i, c in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, scalar):
        if not scalar:
            return Multivector.zero(self.grade, self.dim)
        return Multivector(self.grade, self.dim,
                           {i: scalar * c for i, c in self.comps.items()})

    def canonical(self):
        """Primitive-integer representative with the colex-smallest nonzero
        component positive; rational components only.  Subspace identity in
        the Pluecker embedding is exactly this normal form."""
        if not self.comps:
            return self
        lcm = 1
        for c in self.comps.values():
            den = Fraction(c).denominator
            lcm = lcm * den // gcd(lcm, den)
        ints = {i: int(c * lcm) for i, c in self.comps.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, abs(v))
        first = min(ints, key=colex_key)
        sign = 1 if ints[first] > 0 else -1
        return Multivector(self.grade, self.dim,
                           {i: Fraction(v, sign * g) for i, v in ints.items()})

    def key(self):
        c = self.canonical()
        return tuple((i, c.comps[i]) for i in c.support())

    def to_json(self):
        out = {}
        for idx in self.support():
            c = self.comps[idx]
            name = ",".join(str(i) for i in idx)
            out[name] = c.to_dict() if isinstance(c, MultiPoly) else rat_to_str(c)
        return out

    def __repr__(self):
        if not self.comps:
            return "Multivector(0)"
        bits = [f"{self.comps[i]!r}*e{{{','.join(map(str, i))}}}"
                for i in self.support()]
        return "Multivector(" + " + ".join(bits) + ")"


def _merge_sign(i_set, j_set):
    """Sign of sorting the concatenation of two disjoint ascending tuples."""
    inversions = 0
    for a in i_set:
        for b in j_set:
            if b < a:
                inversions += 1
    return -1 if inversions % 2 else 1


def wedge(a: Multivector, b: Multivector) -> Multivector:
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    if a.grade + b.grade > a.dim:
        raise ValueError("grade overflow")
    out = {}
    for i_set, ca in a.comps.items():
        for j_set, cb in b.comps.items():
            if set(i_set) & set(j_set):
                continue
            sign = _merge_sign(i_set, j_set)
            merged = tuple(sorted(i_set + j_set))
            c = ca * cb
            s = out.get(merged, 0) + (c if sign > 0 else -c)
            if s:
                out[merged] = s
            else:
                out.pop(merged, None)
    return Multivector(a.grade + b.grade, a.dim, out)


def wedge_all(vectors_as_multivectors):
    result = None
    for v in vectors_as_multivectors:
        result = v if result is None else wedge(result, v)
    return result


def plucker(vectors) -> Multivector:
    """Wedge of spanning vectors, via k x k minors of the d x k matrix.

    Components are the raw minors det v_W(J) of the basis as given; use
    .canonical() when a scale-free representative is wanted.  Raises on
    rank-deficient input.
    """
    vectors = [list(v) for v in vectors]
    k = len(vectors)
    d = len(vectors[0]) if k else 0
    comps = {}
    for j_set in combinations(range(1, d + 1), k):
        minor = det_bareiss([[vectors[c][j - 1] for c in range(k)] for j in j_set])
        if minor:
            comps[j_set] = minor
    if k and not comps:
        raise ValueError("vectors do not span a k-dimensional space")
    return Multivector(k, d, comps)


def submatrix_det(a, rows, cols):
    """det A(I, J): rows and cols are 1-based ascending index sets."""
    return det_bareiss([[a[i - 1][j - 1] for j in cols] for i in rows])


def matrix_action(a, v: Multivector) -> Multivector:
    """Action of a d x d matrix on a general multivector by the minor-sum
    formula: the e_I coefficient of A v is sum_J det A(I,J) * v_J."""
    d = v.dim
    if len(a) != d or any(len(row) != d for row in a):
        raise ValueError("matrix does not match multivector dimension")
    support = list(v.comps.items())
    out = {}
    for i_set in combinations(range(1, d + 1), v.grade):
        total = None
        for j_set, c in support:
            term = submatrix_det(a, i_set, j_set) * c
            total = term if total is None else total + term
        if total:
            out[i_set] = total
    return Multivector(v.grade, d, out)


def apply_to_basis(a, vectors):
    """Matrix times each spanning vector; wedge route for decomposables."""
    return [[sum(a[i][j] * v[j] for j in range(len(v))) for i in range(len(a))]
            for v in vectors]


def matrix_action_decomposable(a, vectors) -> Multivector:
    """Action computed as the wedge of transformed basis vectors."""
    return plucker(apply_to_basis(a, vectors))


def max_eigen_exponent(v: Multivector, w: WeightVector):
    """Largest exponent mu_I over the support of v; v must be nonzero.

    The connectedness criterion for the subspace represented by v holds
    exactly when this value is positive.
    """
    if not v:
        raise ValueError("zero multivector has no eigen decomposition")
    if v.dim != w.d:
        raise ValueError("dimension mismatch")
    return max(mu(i_set, w) for i_set in v.comps)


def argmax_eigen_exponent(v: Multivector, w: WeightVector):
    """The colex-least index set attaining the largest exponent."""
    best = max_eigen_exponent(v, w)
    return min((i for i in v.comps if mu(i, w) == best), key=colex_key)
