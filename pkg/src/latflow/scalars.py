"""Exact scalars: arbitrary-precision rationals and sparse polynomials.

Rationals are `fractions.Fraction` (always reduced, positive denominator);
this module adds the string form "p/q" used by every serialized interface.

A `MultiPoly` is a sparse multivariate polynomial over Q: an ordered tuple
of variable names plus a dict mapping exponent tuples to nonzero Fraction
coefficients.  The zero polynomial has an empty dict.  Polynomials appear
as symbolic matrix entries (coordinates xi1..xi{d-1} or x11..xmn), so the
arithmetic here is tuned for few variables and low degree.

Determinants and ranks of matrices over either scalar kind go through
fraction-free Bareiss elimination; divisions are exact by construction.
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction


def rat_from_str(s: str) -> Fraction:
    """Parse "p/q" or "p"; rejects zero denominators and junk."""
    s = s.strip()
    try:
        q = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational {s!r}") from exc
    return q


def rat_to_str(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, variables, terms=None):
        self.vars = tuple(variables)
        clean = {}
        if terms:
            n = len(self.vars)
            for exp, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff == 0:
                    continue
                if len(exp) != n:
                    raise ValueError("exponent arity mismatch")
                clean[tuple(exp)] = coeff
        self.terms = clean

    @classmethod
    def zero(cls, variables):
        return cls(variables, {})

    @classmethod
    def const(cls, variables, value):
        v = tuple(variables)
        return cls(v, {(0,) * len(v): Fraction(value)})

    @classmethod
    def variable(cls, variables, name):
        v = tuple(variables)
        i = v.index(name)
        exp = [0] * len(v)
        exp[i] = 1
        return cls(v, {tuple(exp): Fraction(1)})

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(all(e == 0 for e in exp) for exp in self.terms)

    def constant_value(self):
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return next(iter(self.terms.values()))

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(exp) for exp in self.terms)

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), Fraction(0))

    def coefficient_of_var(self, name):
        """Coefficient of the degree-1 monomial in `name` alone."""
        i = self.vars.index(name)
        exp = [0] * len(self.vars)
        exp[i] = 1
        return self.terms.get(tuple(exp), Fraction(0))

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise ValueError("variable sets differ")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, Fraction(0)) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return MultiPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MultiPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.const(self.vars, 1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.terms
            return self.is_constant() and self.constant_value() == other
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def _leading(self):
        exp = max(self.terms)  # lex order on exponent tuples
        return exp, self.terms[exp]

    def divexact(self, other):
        """Exact polynomial division; raises if the quotient is not exact."""
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        lt_exp, lt_c = other._leading()
        rem = dict(self.terms)
        out = {}
        while rem:
            exp = max(rem)
            c = rem[exp]
            diff = tuple(a - b for a, b in zip(exp, lt_exp))
            if any(e < 0 for e in diff):
                raise ArithmeticError("inexact polynomial division")
            q = c / lt_c
            out[diff] = out.get(diff, Fraction(0)) + q
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(diff, e2))
                s = rem.get(e, Fraction(0)) - q * c2
                if s:
                    rem[e] = s
                else:
                    rem.pop(e, None)
        return MultiPoly(self.vars, out)

    def eval(self, values):
        """Evaluate at a mapping name -> Fraction (or a full sequence)."""
        if not isinstance(values, dict):
            values = dict(zip(self.vars, values))
        total = Fraction(0)
        for exp, c in self.terms.items():
            term = c
            for name, e in zip(self.vars, exp):
                if e:
                    term *= Fraction(values[name]) ** e
            total += term
        return total

    def substitute_zero(self):
        """Evaluate all variables at 0 (the constant term)."""
        zero = (0,) * len(self.vars)
        return self.terms.get(zero, Fraction(0))

    def monomial_str(self, exp):
        parts = []
        for name, e in zip(self.vars, exp):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def to_dict(self):
        return {self.monomial_str(e): rat_to_str(c)
                for e, c in sorted(self.terms.items())}

    @classmethod
    def from_dict(cls, variables, data):
        v = tuple(variables)
        terms = {}
        for mono, coeff in data.items():
            exp = [0] * len(v)
            if mono != "1":
                for factor in mono.split("*"):
                    if "^" in factor:
                        name, p = factor.split("^")
                        exp[v.index(name)] += int(p)
                    else:
                        exp[v.index(factor)] += 1
            terms[tuple(exp)] = rat_from_str(coeff)
        return cls(v, terms)

    def __repr__(self):
        if not self.terms:
            return "MultiPoly(0)"
        bits = []
        for exp, c in sorted(self.terms.items(), reverse=True):
            mono = self.monomial_str(exp)
            if mono == "1":
                bits.append(rat_to_str(c))
            elif c == 1:
                bits.append(mono)
            elif c == -1:
                bits.append(f"-{mono}")
            else:
                bits.append(f"{rat_to_str(c)}*{mono}")
        return "MultiPoly(" + " + ".join(bits).replace("+ -", "- ") + ")"


def xi_vars(d: int):
    """Variable names xi1..xi{d-1} for symbolic column/row coordinates."""
    return tuple(f"xi{i}" for i in range(1, d))


def matrix_vars(m: int, n: int):
    """Variable names for a symbolic m x n matrix point, row-major."""
    if m <= 9 and n <= 9:
        return tuple(f"x{i}{j}" for i in range(1, m + 1) for j in range(1, n + 1))
    return tuple(f"x{i}_{j}" for i in range(1, m + 1) for j in range(1, n + 1))


def _is_poly_matrix(mat):
    return any(isinstance(x, MultiPoly) for row in mat for x in row)


def _exact_div(a, b):
    if isinstance(a, MultiPoly):
        return a.divexact(b)
    if isinstance(b, MultiPoly):
        return MultiPoly.const(b.vars, a).divexact(b)
    return Fraction(a) / Fraction(b)


def det_bareiss(mat):
    """Determinant over Q or Q[x..] by fraction-free elimination.

    Row swaps only (sign tracked); all divisions by the previous pivot are
    exact, so polynomial entries never leave the ring.
    """
    n = len(mat)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in mat):
        raise ValueError("determinant of a non-square matrix")
    m = [list(row) for row in mat]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return _zero_like(mat)
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * pivot - m[i][k] * m[k][j]
                m[i][j] = num if prev is None else _exact_div(num, prev)
            m[i][k] = _zero_like(mat)
        prev = pivot
    result = m[n - 1][n - 1]
    return -result if sign < 0 else result


def det_cofactor(mat):
    """Cofactor-expansion determinant; the independent oracle for Bareiss."""
    n = len(mat)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return mat[0][0]
    total = _zero_like(mat)
    for j in range(n):
        if not mat[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = mat[0][j] * det_cofactor(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


def _zero_like(mat):
    for row in mat:
        for x in row:
            if isinstance(x, MultiPoly):
                return MultiPoly.zero(x.vars)
    return Fraction(0)


def rank_bareiss(mat):
    """Rank over the fraction field; full pivoting, fraction-free."""
    if not mat or not mat[0]:
        return 0
    m = [list(row) for row in mat]
    rows, cols = len(m), len(m[0])
    r = 0
    prev = None
    for k in range(min(rows, cols)):
        pr = pc = -1
        for i in range(k, rows):
            for j in range(k, cols):
                if m[i][j]:
                    pr, pc = i, j
                    break
            if pr >= 0:
                break
        if pr < 0:
            break
        m[k], m[pr] = m[pr], m[k]
        if pc != k:
            for row in m:
                row[k], row[pc] = row[pc], row[k]
        pivot = m[k][k]
        for i in range(k + 1, rows):
            for j in range(k + 1, cols):
                num = m[i][j] * pivot - m[i][k] * m[k][j]
                m[i][j] = num if prev is None else _exact_div(num, prev)
            m[i][k] = _zero_like(mat)
        prev = pivot
        r += 1
    return r


def poly_matrix_prefix_ranks(mat):
    """ranks[r] = rank of the first r rows, for polynomial or rational rows."""
    out = [0]
    for r in range(1, len(mat) + 1):
        out.append(rank_bareiss(mat[:r]))
    return out
