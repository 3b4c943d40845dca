"""Rational subspaces, flag indices, and pencils in matrix space.

A `Subspace` is the Q-span of integer spanning vectors (denominators are
cleared on construction); its identity is the saturated integer lattice in
column Hermite form, so equal spans always hash equal.

The two flag-jump index sets attached to a matrix point x are computed
from rank profiles only, which keeps one code path valid for rational and
for symbolic (generic) points alike: the ascending flag of ker(xt) inside
W uses ranks of xt restricted to W meet coordinate prefixes, and the
descending flag of xt(W) inside the first block uses ranks of leading row
prefixes of xt times the basis.

A pencil is the locus where the contracting flag weight psi stays >= a
while the expanding flag weight phi stays <= b.  Its Zariski description
is emitted as an AND/OR tree of rank conditions; each atom bounds the
rank of a leading-row prefix of xt times an explicit rational matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import intlinalg as la
from .exterior import WeightVector
from .scalars import (MultiPoly, matrix_vars, rank_bareiss, rat_from_str,
                      rat_to_str)


def _primitive_int_vector(vec):
    lcm = 1
    for x in vec:
        d = Fraction(x).denominator
        g = la.gcd(lcm, d)
        lcm = lcm * d // g
    ints = [int(Fraction(x) * lcm) for x in vec]
    g = la.vec_gcd(ints)
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints)


class Subspace:
    """Q-linear subspace of R^d with a canonical saturated integer form."""

    __slots__ = ("ambient", "vectors", "_key")

    def __init__(self, vectors, ambient=None):
        vecs = [list(v) for v in vectors]
        if not vecs:
            if ambient is None:
                raise ValueError("ambient dimension required for the zero space")
            self.ambient = ambient
            self.vectors = ()
            self._key = None
            return
        self.ambient = ambient if ambient is not None else len(vecs[0])
        if any(len(v) != self.ambient for v in vecs):
            raise ValueError("vector length mismatch")
        ints = [_primitive_int_vector(v) for v in vecs]
        if la.int_rank(ints) != len(ints):
            raise ValueError("spanning vectors are linearly dependent")
        self.vectors = tuple(ints)
        self._key = None

    @classmethod
    def from_spanning(cls, vectors, ambient):
        """Span of possibly dependent vectors; keeps an independent subset."""
        ech = la.RowEchelon(ambient)
        kept = []
        for v in vectors:
            iv = _primitive_int_vector(v)
            if any(iv) and ech.insert(iv):
                kept.append(iv)
        return cls(kept, ambient)

    @classmethod
    def coordinate_prefix(cls, i, ambient):
        """<e_1, ..., e_i> inside R^ambient."""
        return cls([[1 if r == c else 0 for r in range(ambient)]
                    for c in range(i)], ambient)

    @classmethod
    def coordinate_suffix(cls, j, m, ambient=None):
        """<e_j, ..., e_m>, the descending flag space, in ambient dim m."""
        ambient = ambient if ambient is not None else m
        return cls([[1 if r == c else 0 for r in range(ambient)]
                    for c in range(j - 1, m)], ambient)

    @property
    def dim(self):
        return len(self.vectors)

    def basis_matrix(self):
        """ambient x dim integer matrix whose columns span the space."""
        return [[v[r] for v in self.vectors] for r in range(self.ambient)]

    def key(self):
        if self._key is None:
            if not self.vectors:
                self._key = (self.ambient, ())
            else:
                sat = la.saturate([list(v) for v in self.vectors], self.ambient)
                hnf = la.column_hnf([[v[r] for v in sat] for r in range(self.ambient)])
                cols = tuple(tuple(hnf[r][c] for r in range(self.ambient))
                             for c in range(len(sat)))
                self._key = (self.ambient, cols)
        return self._key

    def canonical_vectors(self):
        return self.key()[1]

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def contains_vector(self, vec):
        iv = _primitive_int_vector(vec)
        if not any(iv):
            return True
        ech = la.RowEchelon(self.ambient)
        for v in self.vectors:
            ech.insert(list(v))
        return ech.contains(list(iv))

    def meet_prefix(self, i):
        """Intersection with <e_1..e_i>: solve for combinations whose
        trailing coordinates vanish."""
        if not self.vectors:
            return Subspace([], self.ambient)
        tail = [[v[r] for v in self.vectors] for r in range(i, self.ambient)]
        if not tail:
            return self
        coeffs = la.int_kernel(tail)
        vecs = [[sum(c * v[r] for c, v in zip(alpha, self.vectors))
                 for r in range(self.ambient)] for alpha in coeffs]
        return Subspace(vecs, self.ambient)

    def to_json(self):
        return {"ambient": self.ambient,
                "vectors": [[str(x) for x in v] for v in self.vectors]}

    @classmethod
    def from_json(cls, data):
        return cls([[rat_from_str(x) for x in v] for v in data["vectors"]],
                   data["ambient"])

    def __repr__(self):
        return f"Subspace(dim {self.dim} of R^{self.ambient})"


@dataclass(frozen=True)
class MatrixPoint:
    """A point of the matrix space M_{m,n}, rational or symbolic."""

    m: int
    n: int
    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.entries)
        if len(rows) != self.m or any(len(r) != self.n for r in rows):
            raise ValueError("entry shape mismatch")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows):
        rows = [[Fraction(x) for x in row] for row in rows]
        return cls(len(rows), len(rows[0]), tuple(tuple(r) for r in rows))

    @classmethod
    def zero(cls, m, n):
        return cls(m, n, tuple((Fraction(0),) * n for _ in range(m)))

    @classmethod
    def symbolic(cls, m, n):
        names = matrix_vars(m, n)
        rows = tuple(tuple(MultiPoly.variable(names, names[i * n + j])
                           for j in range(n)) for i in range(m))
        return cls(m, n, rows)

    @property
    def is_symbolic(self):
        return any(isinstance(x, MultiPoly) for row in self.entries for x in row)

    @property
    def d(self):
        return self.m + self.n

    def to_json(self):
        if self.is_symbolic:
            return {"m": self.m, "n": self.n, "symbolic": True}
        return {"m": self.m, "n": self.n,
                "entries": [[rat_to_str(x) for x in row] for row in self.entries]}


def u_of(x: MatrixPoint):
    """The unipotent matrix [[I_m, x], [0, I_n]] as d x d rows."""
    d, m = x.d, x.m
    rows = []
    for i in range(m):
        rows.append([Fraction(1) if j == i else Fraction(0) for j in range(m)]
                    + list(x.entries[i]))
    for i in range(x.n):
        rows.append([Fraction(0)] * m
                    + [Fraction(1) if j == i else Fraction(0) for j in range(x.n)])
    return rows


def xt_of(x: MatrixPoint):
    """First m rows of u(x): the m x d matrix [I_m | x]."""
    return u_of(x)[:x.m]


def _xt_int(x: MatrixPoint):
    """Integer row-scaled xt for rational points (rank-equivalent)."""
    return la.scale_to_int_rows(xt_of(x))


def i_set(W: Subspace, w: WeightVector):
    """Ascending flag-jump set of W past the first block: the i in
    {m+1..d} where dim(W meet <e_1..e_i>) increases."""
    if W.ambient != w.d:
        raise ValueError("ambient dimension mismatch")
    if not W.vectors:
        return ()
    k = W.dim
    mat = W.basis_matrix()
    dims = []
    for i in range(w.m, w.d + 1):
        tail = mat[i:]
        dims.append(k - (la.int_rank(tail) if tail else 0))
    return tuple(w.m + j for j in range(1, w.n + 1) if dims[j] > dims[j - 1])


def j_set(Wp: Subspace, w: WeightVector):
    """Descending flag-jump set of a subspace of the first block: the j in
    {1..m} where dim(W' meet <e_j..e_m>) exceeds dim(W' meet <e_{j+1}..e_m>).

    Accepts ambient m, or ambient d with vanishing trailing coordinates.
    """
    mat = None
    if Wp.ambient == w.m:
        mat = Wp.basis_matrix()
    elif Wp.ambient == w.d:
        if any(v[r] for v in Wp.vectors for r in range(w.m, w.d)):
            raise ValueError("subspace not contained in the first block")
        mat = [[v[r] for v in Wp.vectors] for r in range(w.m)]
    else:
        raise ValueError("ambient dimension mismatch")
    if not Wp.vectors:
        return ()
    ranks = la.row_prefix_ranks(mat)
    return tuple(j for j in range(1, w.m + 1) if ranks[j] > ranks[j - 1])


def psi(W: Subspace, w: WeightVector) -> Fraction:
    return sum((w.weights[i - 1] for i in i_set(W, w)), Fraction(0))


def phi(Wp: Subspace, w: WeightVector) -> Fraction:
    return sum((w.weights[j - 1] for j in j_set(Wp, w)), Fraction(0))


def kernel_meet(x: MatrixPoint, W: Subspace) -> Subspace:
    """ker(xt) meet W for a rational point, as an explicit subspace."""
    if x.is_symbolic:
        raise ValueError("explicit kernels need a rational point")
    xt = _xt_int(x)
    prod = la.scale_to_int_rows(
        [[sum(xt[i][r] * v[r] for r in range(W.ambient)) for v in W.vectors]
         for i in range(x.m)])
    coeffs = la.int_kernel(prod) if W.vectors else []
    vecs = [[sum(c * v[r] for c, v in zip(alpha, W.vectors))
             for r in range(W.ambient)] for alpha in coeffs]
    return Subspace(vecs, W.ambient)


def image(x: MatrixPoint, W: Subspace) -> Subspace:
    """xt(W) as a subspace of the first block (ambient m)."""
    if x.is_symbolic:
        raise ValueError("explicit images need a rational point")
    xt = xt_of(x)
    vecs = [[sum(xt[i][r] * Fraction(v[r]) for r in range(W.ambient))
             for i in range(x.m)] for v in W.vectors]
    return Subspace.from_spanning(vecs, x.m)


def _rank_of_product_prefix(x, W_mat_cols, rows):
    """rank of the first `rows` rows of xt(x) times an integer d x q matrix."""
    if rows == 0 or not W_mat_cols or not W_mat_cols[0]:
        return 0
    xt = xt_of(x)
    prod = [[sum(xt[i][r] * W_mat_cols[r][c] for r in range(len(W_mat_cols)))
             for c in range(len(W_mat_cols[0]))] for i in range(rows)]
    if x.is_symbolic:
        return rank_bareiss(prod)
    return la.rank(prod)


def flag_data(x: MatrixPoint, W: Subspace, w: WeightVector):
    """(i_set of ker xt meet W, j_set of xt W) from rank profiles alone.

    Valid for symbolic points, where ranks are generic ranks over the
    fraction field.  The ascending side uses that the kernel dimension
    inside W meet E_{m+i} is its dimension minus rank(xt * basis); the
    descending side reads jumps off leading-row-prefix ranks of xt * W.
    """
    if W.ambient != w.d:
        raise ValueError("ambient dimension mismatch")
    m = w.m
    # ascending flag of the kernel part
    h = [0]
    for i in range(1, w.n + 1):
        meet = W.meet_prefix(m + i)
        q = meet.dim
        r = _rank_of_product_prefix(x, meet.basis_matrix(), m) if q else 0
        h.append(q - r)
    iset = tuple(m + i for i in range(1, w.n + 1) if h[i] > h[i - 1])
    # descending flag of the image part
    if W.vectors:
        xt = xt_of(x)
        bm = W.basis_matrix()
        prod = [[sum(xt[i][r] * bm[r][c] for r in range(w.d))
                 for c in range(W.dim)] for i in range(m)]
        if x.is_symbolic:
            from .scalars import poly_matrix_prefix_ranks
            ranks = poly_matrix_prefix_ranks(prod)
        else:
            ech = la.RowEchelon(W.dim)
            ranks = [0]
            for row in la.scale_to_int_rows(prod):
                ech.insert(row)
                ranks.append(ech.rank)
        jset = tuple(j for j in range(1, m + 1) if ranks[j] > ranks[j - 1])
    else:
        jset = ()
    return iset, jset


def psi_phi(x: MatrixPoint, W: Subspace, w: WeightVector):
    iset, jset = flag_data(x, W, w)
    return (sum((w.weights[i - 1] for i in iset), Fraction(0)),
            sum((w.weights[j - 1] for j in jset), Fraction(0)))


def weight_subsums(weights, max_size):
    """All subset sums of the given weights with size <= max_size."""
    sums = {Fraction(0)}
    weights = list(weights)
    for size in range(1, min(max_size, len(weights)) + 1):
        for combo in combinations(weights, size):
            sums.add(sum(combo, Fraction(0)))
    return sorted(sums)


class Pencil:
    """Matrix points where psi(ker xt meet W) >= a and phi(xt W) <= b.

    Raw thresholds are kept as given; `eff_a` / `eff_b` are the clamps to
    the attainable value range, with None marking an unsatisfiable side
    (then the pencil is empty).  Clamping never changes membership since
    psi and phi only take attainable values.
    """

    __slots__ = ("W", "a", "b", "w", "eff_a", "eff_b")

    def __init__(self, W: Subspace, a, b, w: WeightVector):
        if W.ambient != w.d:
            raise ValueError("ambient dimension mismatch")
        self.W = W
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.w = w
        k = W.dim
        psis = weight_subsums(w.weights[w.m:], min(k, w.n))
        phis = weight_subsums(w.weights[:w.m], min(k, w.m))
        self.eff_a = next((v for v in psis if v >= self.a), None)
        self.eff_b = next((v for v in reversed(phis) if v <= self.b), None)

    @property
    def weakly_constraining(self):
        return self.b <= self.a

    def to_json(self):
        return {"W": self.W.to_json(), "a": rat_to_str(self.a),
                "b": rat_to_str(self.b), "weights": self.w.to_json()}

    @classmethod
    def from_json(cls, data):
        return cls(Subspace.from_json(data["W"]), rat_from_str(data["a"]),
                   rat_from_str(data["b"]), WeightVector.from_json(data["weights"]))

    def __repr__(self):
        return (f"Pencil(dim {self.W.dim}, a={self.a}, b={self.b})")


@dataclass(frozen=True)
class MembershipCertificate:
    member: bool
    psi: Fraction
    phi: Fraction
    i_set: tuple
    j_set: tuple

    def to_json(self):
        return {"member": self.member, "psi": rat_to_str(self.psi),
                "phi": rat_to_str(self.phi), "I": list(self.i_set),
                "J": list(self.j_set)}


def pencil_membership(x: MatrixPoint, p: Pencil) -> MembershipCertificate:
    """Exact membership with the flag sets as certificate.

    For rational points this goes through the explicit kernel and image
    subspaces, independent of the rank-profile route used elsewhere.
    """
    if x.m != p.w.m or x.n != p.w.n:
        raise ValueError("matrix shape does not match the weight vector")
    if x.is_symbolic:
        iset, jset = flag_data(x, p.W, p.w)
    else:
        iset = i_set(kernel_meet(x, p.W), p.w)
        jset = j_set(image(x, p.W), p.w)
    pv = sum((p.w.weights[i - 1] for i in iset), Fraction(0))
    fv = sum((p.w.weights[j - 1] for j in jset), Fraction(0))
    return MembershipCertificate(pv >= p.a and fv <= p.b, pv, fv, iset, jset)


def classify_pencil(p: Pencil):
    """weakly_constraining is the threshold comparison; proper is decided
    at the symbolic generic point via generic ranks over the fraction
    field (the authoritative route; sampling is only a cross-check)."""
    generic = MatrixPoint.symbolic(p.w.m, p.w.n)
    pv, fv = psi_phi(generic, p.W, p.w)
    member_generic = pv >= p.a and fv <= p.b
    return {"weakly_constraining": p.weakly_constraining,
            "proper": not member_generic,
            "generic_psi": pv, "generic_phi": fv}


def properness_by_sampling(p: Pencil, rng, trials=20, denominator_bound=7):
    """True as soon as one non-member sample witnesses properness."""
    for _ in range(trials):
        rows = [[Fraction(rng.randint(-9, 9), rng.randint(1, denominator_bound))
                 for _ in range(p.w.n)] for _ in range(p.w.m)]
        if not pencil_membership(MatrixPoint.from_rows(rows), p).member:
            return True
    return False


TRUE_FORMULA = {"op": "true"}
FALSE_FORMULA = {"op": "false"}


def _atom(basis_cols, row_prefix, bound):
    # rank of the first row_prefix rows of xt times the d x q basis <= bound
    if bound < 0:
        return FALSE_FORMULA
    if bound >= min(row_prefix, len(basis_cols[0]) if basis_cols and basis_cols[0] else 0):
        return TRUE_FORMULA
    return {"op": "rank_le", "basis": basis_cols,
            "rows": row_prefix, "bound": bound}


def _and(args):
    args = [a for a in args if a["op"] != "true"]
    if any(a["op"] == "false" for a in args):
        return FALSE_FORMULA
    if not args:
        return TRUE_FORMULA
    if len(args) == 1:
        return args[0]
    return {"op": "and", "args": args}


def _or(args):
    args = [a for a in args if a["op"] != "false"]
    if any(a["op"] == "true" for a in args):
        return TRUE_FORMULA
    if not args:
        return FALSE_FORMULA
    if len(args) == 1:
        return args[0]
    return {"op": "or", "args": args}


def zariski_decomposition(p: Pencil):
    """The pencil as an AND/OR tree of rank conditions on xt.

    The contracting side follows the ascending-flag claim: psi >= a holds
    iff some weight tuple (i_1 < .. < i_s) with sum >= a has
    dim(ker xt meet W meet E_{m+i_j}) >= j for every j, each a rank bound
    on xt times an explicit basis of W meet E_{m+i_j}.

    The expanding side counts descending-flag jumps from the top: phi <= b
    iff for every tuple (j_1 < .. < j_s) with sum > b some row prefix of
    xt W stays defective, rank((xt W)[:j_i]) <= i-1.  Counting through row
    prefixes is anchored at rank 0, which keeps the equivalence exact even
    when xt W degenerates at special points.
    """
    w, W = p.w, p.W
    m, n = w.m, w.n
    # psi >= a
    if p.eff_a is None:
        psi_formula = FALSE_FORMULA
    elif p.a <= 0:
        psi_formula = TRUE_FORMULA
    else:
        meets = {}
        for i in range(1, n + 1):
            meet = W.meet_prefix(m + i)
            meets[i] = (meet.basis_matrix(), meet.dim)
        branches = []
        for s in range(1, n + 1):
            for tup in combinations(range(1, n + 1), s):
                if sum(w.weights[m + i - 1] for i in tup) < p.a:
                    continue
                atoms = []
                for j, i in enumerate(tup, start=1):
                    basis, q = meets[i]
                    atoms.append(_atom(basis, m, q - j) if q else
                                 (TRUE_FORMULA if j <= 0 else FALSE_FORMULA))
                branches.append(_and(atoms))
        psi_formula = _or(branches)
    # phi <= b
    if p.b < 0:
        phi_formula = FALSE_FORMULA
    else:
        bm = W.basis_matrix() if W.vectors else []
        clauses = []
        for s in range(1, m + 1):
            for tup in combinations(range(1, m + 1), s):
                if sum(w.weights[j - 1] for j in tup) <= p.b:
                    continue
                opts = [
                    _atom(bm, j_i, i - 1) if bm else TRUE_FORMULA
                    for i, j_i in enumerate(tup, start=1)
                ]
                clauses.append(_or(opts))
        phi_formula = _and(clauses)
    return _and([psi_formula, phi_formula])


def evaluate_decomposition(formula, x: MatrixPoint) -> bool:
    """Evaluate a rank-condition tree at a point (rational or symbolic)."""
    cache = {}

    def atom_rank(basis, rows):
        key = (id(basis), rows)
        if key not in cache:
            cache[key] = _rank_of_product_prefix(x, basis, rows)
        return cache[key]

    def walk(node):
        op = node["op"]
        if op == "true":
            return True
        if op == "false":
            return False
        if op == "and":
            return all(walk(a) for a in node["args"])
        if op == "or":
            return any(walk(a) for a in node["args"])
        if op == "rank_le":
            return atom_rank(node["basis"], node["rows"]) <= node["bound"]
        raise ValueError(f"unknown node {op}")

    return walk(formula)


def formula_to_json(formula):
    def walk(node):
        if node["op"] in ("true", "false"):
            return {"op": node["op"]}
        if node["op"] == "rank_le":
            return {"op": "rank_le",
                    "basis": [[str(x) for x in row] for row in node["basis"]],
                    "rows": node["rows"], "bound": node["bound"]}
        return {"op": node["op"], "args": [walk(a) for a in node["args"]]}

    return walk(formula)


def enumerate_pencil_family(W: Subspace, w: WeightVector):
    """The finitely many pencils on W: one per attainable threshold pair,
    deduplicated by their rank-condition decompositions."""
    k = W.dim
    psis = weight_subsums(w.weights[w.m:], min(k, w.n))
    phis = weight_subsums(w.weights[:w.m], min(k, w.m))
    out = []
    seen = set()
    import json

    for a in psis:
        for b in phis:
            p = Pencil(W, a, b, w)
            key = json.dumps(formula_to_json(zariski_decomposition(p)),
                             sort_keys=True) + f"|{a}|{b}" * 0
            if key not in seen:
                seen.add(key)
                out.append(p)
    return out
