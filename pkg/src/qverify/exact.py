"""Exact scalar and polynomial arithmetic.

Everything here is immutable once built.  Scalars are ``int``/``Fraction``
(the rational field) or :class:`QuadExt` (a quadratic extension of it).
:class:`LaurentPoly` is a one-variable Laurent polynomial over any of those
scalars and :class:`TruncSeries` is a multivariate power series cut off at a
total-degree bound.
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from fractions import Fraction

from .errors import (
    BoundExceeded,
    DiscriminantMismatch,
    DivisionByZero,
    NonSquare,
    ZeroAtNegativeExponent,
)

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce an int/Fraction (or a rational-valued :class:`QuadExt`) to ``Fraction``."""
    if isinstance(value, QuadExt):
        if value.b != 0:
            raise ValueError(f"{value} is not rational")
        return value.a
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not a rational scalar: {value!r}")


def _div(a, b):
    """Exact field division that keeps ints inside the rationals."""
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


# ---------------------------------------------------------------------------
# Quadratic extensions Q(sqrt d)
# ---------------------------------------------------------------------------


class QuadExt:
    """The number ``a + b*sqrt(d)`` with rational ``a``, ``b``.

    The package uses ``d = 5`` and ``d = -3``; any non-square ``d`` works.
    Plain ints and Fractions mix freely and are promoted with ``b = 0``.
    """

    __slots__ = ("d", "a", "b")

    def __init__(self, d: int, a=0, b=0):
        d = int(d)
        if d >= 0 and math.isqrt(d) ** 2 == d:
            raise ValueError(f"d = {d} is a perfect square")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    def __reduce__(self):
        return (QuadExt, (self.d, self.a, self.b))

    @classmethod
    def sqrt(cls, d: int) -> "QuadExt":
        return cls(d, 0, 1)

    @classmethod
    def omega(cls, sign: int = 1) -> "QuadExt":
        """Primitive cube root of unity (-1 + sign*sqrt(-3))/2."""
        return cls(-3, Fraction(-1, 2), Fraction(sign, 2))

    def _coerce(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise DiscriminantMismatch(f"Q(sqrt {self.d}) vs Q(sqrt {other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(self.d, other, 0)
        return None

    def conj(self) -> "QuadExt":
        return QuadExt(self.d, self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def is_rational(self) -> bool:
        return self.b == 0

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.d, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(self.d, -self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.d, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(
            self.d,
            self.a * o.a + self.d * self.b * o.b,
            self.a * o.b + self.b * o.a,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            raise DivisionByZero("inverse of zero in Q(sqrt d)")
        return QuadExt(self.d, self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = QuadExt(self.d, 1, 0)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return (self.d, self.a, self.b) == (other.d, other.a, other.b)
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.d, self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"QuadExt({self.d}, {self.a!s}, {self.b!s})"

    def __str__(self):
        return f"{self.a} + {self.b}*sqrt({self.d})"


def quadext_arith(x: QuadExt, y: QuadExt, op: str) -> QuadExt:
    if not isinstance(x, QuadExt) or not isinstance(y, QuadExt):
        raise TypeError("quadext_arith takes two QuadExt operands")
    if x.d != y.d:
        raise DiscriminantMismatch(f"Q(sqrt {x.d}) vs Q(sqrt {y.d})")
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# Laurent polynomials in one variable
# ---------------------------------------------------------------------------


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, QuadExt))


class LaurentPoly:
    """Finitely supported ``{exponent: coefficient}`` in a single variable.

    No zero coefficient is ever stored, so ``==`` is plain term equality.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c != 0:
                    clean[int(e)] = c
        object.__setattr__(self, "_terms", clean)

    @classmethod
    def _wrap(cls, terms: dict) -> "LaurentPoly":
        p = object.__new__(cls)
        object.__setattr__(p, "_terms", terms)
        return p

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    def __reduce__(self):
        return (LaurentPoly, (self._terms,))

    # construction helpers
    @classmethod
    def monomial(cls, exponent: int, coeff=1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def from_coeffs(cls, coeffs, start: int = 0) -> "LaurentPoly":
        """``coeffs[i]`` is the coefficient of ``q**(start + i)``."""
        return cls({start + i: c for i, c in enumerate(coeffs)})

    # inspection
    def terms(self) -> list[tuple[int, object]]:
        return sorted(self._terms.items())

    def coeff(self, exponent: int):
        return self._terms.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def degree(self) -> int:
        if not self._terms:
            raise ValueError("degree of the zero polynomial")
        return max(self._terms)

    def valuation(self) -> int:
        if not self._terms:
            raise ValueError("valuation of the zero polynomial")
        return min(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    # ring operations
    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if _is_scalar(other):
            return LaurentPoly({0: other})
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in o._terms.items():
            s = out.get(e, 0) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return LaurentPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._wrap({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c) -> "LaurentPoly":
        if c == 0:
            return LaurentPoly._wrap({})
        if c == 1:
            return self
        return LaurentPoly._wrap({e: v * c for e, v in self._terms.items()})

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = e1 + e2
                out[e] = get(e, 0) + c1 * c2
        return LaurentPoly._wrap({e: c for e, c in out.items() if c != 0})

    def __rmul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            ((e, c),) = self._terms.items()
            return LaurentPoly({e * k: _div(1, c) ** -k})
        result = LaurentPoly({0: 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``q**k``."""
        return LaurentPoly._wrap({e + k: c for e, c in self._terms.items()})

    def invert_variable(self) -> "LaurentPoly":
        """Substitute ``q -> 1/q``."""
        return LaurentPoly._wrap({-e: c for e, c in self._terms.items()})

    def dilate(self, k: int) -> "LaurentPoly":
        """Substitute ``q -> q**k``."""
        if k == 0:
            return LaurentPoly({0: sum(self._terms.values())})
        return LaurentPoly._wrap({e * k: c for e, c in self._terms.items()})

    def truncate(self, degree: int) -> "LaurentPoly":
        """Drop every term of exponent above ``degree``."""
        return LaurentPoly._wrap({e: c for e, c in self._terms.items() if e <= degree})

    def map_coeffs(self, fn) -> "LaurentPoly":
        return LaurentPoly({e: fn(c) for e, c in self._terms.items()})

    def eval(self, v):
        return laurent_eval(self, v)

    def __divmod__(self, divisor: "LaurentPoly"):
        """Polynomial long division; both operands must have no negative exponents."""
        if not isinstance(divisor, LaurentPoly):
            divisor = LaurentPoly({0: divisor})
        if divisor.is_zero():
            raise DivisionByZero("polynomial division by zero")
        if (self._terms and self.valuation() < 0) or divisor.valuation() < 0:
            raise ValueError("divmod needs ordinary polynomials")
        dd = divisor.degree()
        lead = divisor._terms[dd]
        rem = dict(self._terms)
        quot = {}
        while rem and max(rem) >= dd:
            top = max(rem)
            c = _div(rem[top], lead)
            quot[top - dd] = c
            for e, v in divisor._terms.items():
                k = e + top - dd
                s = rem.get(k, 0) - c * v
                if s == 0:
                    rem.pop(k, None)
                else:
                    rem[k] = s
        return LaurentPoly(quot), LaurentPoly(rem)

    # comparison
    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if _is_scalar(other):
            if other == 0:
                return not self._terms
            return self._terms == {0: other}
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return f"LaurentPoly({dict(self.terms())!r})"

    def to_str(self, var: str = "q") -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.terms():
            if e == 0:
                mono = ""
            elif e == 1:
                mono = var
            else:
                mono = f"{var}^{e}"
            if isinstance(c, QuadExt):
                cs = f"({c})"
            else:
                cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    __str__ = to_str


def laurent_mul(p: LaurentPoly, r: LaurentPoly) -> LaurentPoly:
    return p * r


def laurent_eval(p: LaurentPoly, v):
    """Value of ``p`` at ``q = v`` (exact)."""
    terms = p._terms
    if not terms:
        return 0
    if v == 0:
        if min(terms) < 0:
            raise ZeroAtNegativeExponent("negative exponent evaluated at q = 0")
        return terms.get(0, 0)
    lo, hi = min(terms), max(terms)
    # Horner over [lo, hi] after factoring out v**lo
    acc = 0
    for e in range(hi, lo - 1, -1):
        acc = acc * v + terms.get(e, 0)
    if lo >= 0:
        return acc * v**lo
    return _div(acc, v ** (-lo))


q = LaurentPoly({1: 1})
ONE = LaurentPoly({0: 1})
ZERO = LaurentPoly({})


# ---------------------------------------------------------------------------
# Truncated multivariate power series
# ---------------------------------------------------------------------------


class TruncSeries:
    """Power series in ``num_vars`` variables, known up to total degree ``bound``.

    Products and powers discard everything above the bound, so arithmetic is
    that of ``Q[x_1..x_m] / (monomials of degree > bound)``.
    """

    __slots__ = ("num_vars", "bound", "_terms")

    def __init__(self, num_vars: int, bound: int, terms: Mapping | None = None):
        if num_vars < 1:
            raise ValueError("num_vars must be positive")
        if bound < 0:
            raise ValueError("bound must be nonnegative")
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(v) for v in e)
                if len(e) != num_vars or min(e) < 0:
                    raise ValueError(f"bad exponent vector {e}")
                if c != 0 and sum(e) <= bound:
                    clean[e] = clean.get(e, 0) + c
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "bound", bound)
        object.__setattr__(self, "_terms", {e: c for e, c in clean.items() if c != 0})

    @classmethod
    def _wrap(cls, m, bound, terms):
        s = object.__new__(cls)
        object.__setattr__(s, "num_vars", m)
        object.__setattr__(s, "bound", bound)
        object.__setattr__(s, "_terms", terms)
        return s

    def __setattr__(self, name, value):
        raise AttributeError("TruncSeries is immutable")

    def __reduce__(self):
        return (TruncSeries, (self.num_vars, self.bound, self._terms))

    @classmethod
    def constant(cls, num_vars: int, bound: int, c=1) -> "TruncSeries":
        return cls(num_vars, bound, {(0,) * num_vars: c})

    @classmethod
    def variable(cls, num_vars: int, bound: int, i: int) -> "TruncSeries":
        e = [0] * num_vars
        e[i] = 1
        return cls(num_vars, bound, {tuple(e): 1})

    @classmethod
    def monomial(cls, num_vars: int, bound: int, exps, c=1) -> "TruncSeries":
        return cls(num_vars, bound, {tuple(exps): c})

    def terms(self):
        return sorted(self._terms.items())

    def coeff(self, r) -> object:
        r = tuple(r)
        if sum(r) > self.bound:
            raise BoundExceeded(f"|r| = {sum(r)} exceeds bound {self.bound}")
        return self._terms.get(r, 0)

    def constant_term(self):
        return self._terms.get((0,) * self.num_vars, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def truncate(self, bound: int) -> "TruncSeries":
        if bound > self.bound:
            raise BoundExceeded(f"cannot raise bound {self.bound} to {bound}")
        return TruncSeries._wrap(
            self.num_vars, bound, {e: c for e, c in self._terms.items() if sum(e) <= bound}
        )

    def agrees_with(self, other: "TruncSeries", bound: int | None = None) -> bool:
        """Equality after truncating both sides to ``bound`` (default: the smaller bound)."""
        if bound is None:
            bound = min(self.bound, other.bound)
        return self.truncate(bound)._terms == other.truncate(bound)._terms

    def _check(self, other: "TruncSeries"):
        if other.num_vars != self.num_vars:
            raise ValueError("series in different numbers of variables")

    def __add__(self, other):
        if _is_scalar(other):
            other = TruncSeries.constant(self.num_vars, self.bound, other)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._check(other)
        bound = min(self.bound, other.bound)
        out = {e: c for e, c in self._terms.items() if sum(e) <= bound}
        for e, c in other._terms.items():
            if sum(e) > bound:
                continue
            s = out.get(e, 0) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return TruncSeries._wrap(self.num_vars, bound, out)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries._wrap(self.num_vars, self.bound, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if _is_scalar(other):
            return self + (-other)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            if other == 0:
                return TruncSeries._wrap(self.num_vars, self.bound, {})
            return TruncSeries._wrap(
                self.num_vars, self.bound, {e: c * other for e, c in self._terms.items()}
            )
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._check(other)
        bound = min(self.bound, other.bound)
        a = [(e, sum(e), c) for e, c in self._terms.items()]
        b = [(e, sum(e), c) for e, c in other._terms.items()]
        out: dict = {}
        for e1, d1, c1 in a:
            if d1 > bound:
                continue
            for e2, d2, c2 in b:
                if d1 + d2 > bound:
                    continue
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return TruncSeries._wrap(self.num_vars, bound, {e: c for e, c in out.items() if c != 0})

    __rmul__ = __mul__

    def inverse(self) -> "TruncSeries":
        c0 = self.constant_term()
        if c0 == 0:
            raise DivisionByZero("series with zero constant term has no inverse")
        # self = c0 * (1 - h) with h(0) = 0, so 1/self = (1/c0) * sum h^k, k <= bound
        inv_c0 = _div(1, c0)
        h = -(self * inv_c0 - 1)
        result = TruncSeries.constant(self.num_vars, self.bound, 1)
        power = result
        for _ in range(self.bound):
            power = power * h
            if power.is_zero():
                break
            result = result + power
        return result * inv_c0

    def __truediv__(self, other):
        if _is_scalar(other):
            return self * _div(1, other)
        if isinstance(other, TruncSeries):
            return self * other.inverse()
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = TruncSeries.constant(self.num_vars, self.bound, 1)
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def derivative(self, j: int) -> "TruncSeries":
        """Partial derivative in ``x_j``; the result keeps the same nominal bound."""
        out = {}
        for e, c in self._terms.items():
            if e[j]:
                e2 = list(e)
                e2[j] -= 1
                out[tuple(e2)] = c * e[j]
        return TruncSeries._wrap(self.num_vars, self.bound, out)

    def mul_var(self, j: int) -> "TruncSeries":
        """Multiply by ``x_j``."""
        out = {}
        for e, c in self._terms.items():
            if sum(e) + 1 <= self.bound:
                e2 = list(e)
                e2[j] += 1
                out[tuple(e2)] = c
        return TruncSeries._wrap(self.num_vars, self.bound, out)

    def compose(self, subs: list["TruncSeries"]) -> "TruncSeries":
        """Substitute ``x_i -> subs[i]``; every substituted series must vanish at 0."""
        if len(subs) != self.num_vars:
            raise ValueError("need one substitution per variable")
        k = subs[0].num_vars
        bound = min(s.bound for s in subs)
        for s in subs:
            if s.num_vars != k:
                raise ValueError("substituted series disagree on num_vars")
            if s.constant_term() != 0:
                raise ValueError("substituted series must have zero constant term")
        powers: list[list[TruncSeries]] = [[TruncSeries.constant(k, bound, 1)] for _ in subs]
        result = TruncSeries._wrap(k, bound, {})
        for e, c in self._terms.items():
            if sum(e) > bound:
                continue  # every factor has order >= 1
            term = TruncSeries.constant(k, bound, c)
            for i, ei in enumerate(e):
                pw = powers[i]
                while len(pw) <= ei:
                    pw.append(pw[-1] * subs[i])
                if ei:
                    term = term * pw[ei]
            result = result + term
        return result

    def __eq__(self, other):
        if isinstance(other, TruncSeries):
            return (
                self.num_vars == other.num_vars
                and self.bound == other.bound
                and self._terms == other._terms
            )
        if _is_scalar(other):
            return self._terms == ({(0,) * self.num_vars: other} if other != 0 else {})
        return NotImplemented

    def __hash__(self):
        return hash((self.num_vars, self.bound, frozenset(self._terms.items())))

    def __repr__(self):
        return f"TruncSeries({self.num_vars}, {self.bound}, {dict(self.terms())!r})"


def _laplace_det(mat, n):
    """Cofactor expansion along successive rows, memoised on the remaining column set."""
    memo: dict[int, TruncSeries] = {}
    proto = mat[0][0]

    def minor(row: int, cols: int) -> TruncSeries:
        if row == n:
            return TruncSeries.constant(proto.num_vars, proto.bound, 1)
        if cols in memo:
            return memo[cols]
        total = TruncSeries._wrap(proto.num_vars, proto.bound, {})
        sign = 1
        for j in range(n):
            if cols >> j & 1:
                entry = mat[row][j]
                if not entry.is_zero():
                    sub = minor(row + 1, cols & ~(1 << j))
                    total = total + entry * sub * sign
                sign = -sign
        memo[cols] = total
        return total

    return minor(0, (1 << n) - 1)


def _elimination_det(mat, n):
    """Gaussian elimination with unit pivots (constant term != 0); None if none is found."""
    a = [list(row) for row in mat]
    det = TruncSeries.constant(a[0][0].num_vars, a[0][0].bound, 1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c].constant_term() != 0), None)
        if piv is None:
            return None
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det = det * a[c][c]
        inv = a[c][c].inverse()
        for r in range(c + 1, n):
            if a[r][c].is_zero():
                continue
            factor = a[r][c] * inv
            a[r] = [a[r][j] - factor * a[c][j] if j > c else a[r][j] for j in range(n)]
    return det


def series_det(mat, bound: int) -> TruncSeries:
    """Determinant of a square matrix of :class:`TruncSeries`, truncated at ``bound``.

    Cofactor expansion for n <= 4; beyond that, elimination on unit pivots,
    falling back to cofactor expansion when a column has no unit entry.
    """
    n = len(mat)
    if n == 0 or any(len(row) != n for row in mat):
        raise NonSquare(f"matrix is not square: {[len(r) for r in mat]}")
    m = mat[0][0].num_vars
    for row in mat:
        for s in row:
            if s.num_vars != m:
                raise ValueError("entries disagree on num_vars")
            if s.bound < bound:
                raise BoundExceeded(f"entry known only to degree {s.bound} < {bound}")
    mat = [[s.truncate(bound) for s in row] for row in mat]
    if n <= 4:
        return _laplace_det(mat, n)
    det = _elimination_det(mat, n)
    if det is None:
        det = _laplace_det(mat, n)
    return det
