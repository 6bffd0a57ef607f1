"""Exact scalar and polynomial arithmetic.

The base layer for everything else: arbitrary-precision rationals, dense
univariate polynomials tagged by their variable, sparse Laurent polynomials,
and the quadratic field Q(sqrt5). All values are immutable and all
operations are pure functions, so unrestricted concurrent use is safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

# Canonical exact scalar. Fraction already guarantees the invariants we
# need: gcd-reduced, positive denominator, zero stored as 0/1.
Rational = Fraction

_VARS = ("t", "x")


def as_rational(value: int | Rational | str) -> Rational:
    """Coerce an int, Fraction, or "p/q" string to a Rational.

    Floats are rejected: silently converting binary floats would smuggle
    rounding error into a library whose point is exactness.
    """
    if isinstance(value, Rational):
        return value
    if isinstance(value, int) or isinstance(value, str):
        return Rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def _term_str(num: int, den: int, var: str, k: int) -> str:
    # |num| is rendered; the caller decides the sign separator
    mag = abs(num)
    if k == 0:
        body = str(mag)
    else:
        head = "" if mag == 1 else str(mag)
        body = f"{head}{var}" if k == 1 else f"{head}{var}^{k}"
    if den != 1:
        body += f"/{den}"
    return body


@dataclass(frozen=True, slots=True)
class UniPoly:
    """Dense univariate polynomial over Rational, tagged "t" or "x".

    Coefficients are stored constant-term first and never end in a zero;
    the zero polynomial stores no coefficients and has degree None (a
    sentinel, deliberately unusable in arithmetic).
    """

    var: str
    coeffs: tuple[Rational, ...]

    def __post_init__(self):
        if self.var not in _VARS:
            raise ValueError(f"unknown variable tag {self.var!r}")
        cs = tuple(as_rational(c) for c in self.coeffs)
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def zero(cls, var: str) -> UniPoly:
        return cls(var, ())

    @classmethod
    def one(cls, var: str) -> UniPoly:
        return cls(var, (Rational(1),))

    @classmethod
    def const(cls, var: str, c) -> UniPoly:
        return cls(var, (as_rational(c),))

    @classmethod
    def variable(cls, var: str) -> UniPoly:
        return cls(var, (Rational(0), Rational(1)))

    @classmethod
    def monomial(cls, var: str, c, k: int) -> UniPoly:
        return cls(var, (Rational(0),) * k + (as_rational(c),))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    def coeff(self, k: int) -> Rational:
        """Coefficient of var**k (zero beyond the stored degree)."""
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Rational(0)

    def _check_var(self, other: UniPoly):
        if self.var != other.var:
            raise ValueError(f"variable mismatch: {self.var!r} vs {other.var!r}")

    def __add__(self, other):
        if isinstance(other, (int, Rational)):
            other = UniPoly.const(self.var, other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        self._check_var(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(self.var, tuple(out))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(self.var, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, (int, Rational)):
            other = UniPoly.const(self.var, other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            c = as_rational(other)
            if c == 0:
                return UniPoly.zero(self.var)
            return UniPoly(self.var, tuple(c * a for a in self.coeffs))
        if not isinstance(other, UniPoly):
            return NotImplemented
        self._check_var(other)
        if self.is_zero or other.is_zero:
            return UniPoly.zero(self.var)
        # Pull out common denominators so the convolution runs on plain
        # ints; one gcd per output coefficient instead of one per product.
        dp = math.lcm(*(c.denominator for c in self.coeffs))
        dq = math.lcm(*(c.denominator for c in other.coeffs))
        p = [int(c * dp) for c in self.coeffs]
        q = [int(c * dq) for c in other.coeffs]
        out = [0] * (len(p) + len(q) - 1)
        for i, a in enumerate(p):
            if a:
                for j, b in enumerate(q):
                    out[i + j] += a * b
        d = dp * dq
        return UniPoly(self.var, tuple(Rational(n, d) for n in out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = as_rational(other)
        if c == 0:
            raise ZeroDivisionError("polynomial division by zero scalar")
        return self * (Rational(1) / c)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = UniPoly.one(self.var)
        for _ in range(n):
            result = result * self
        return result

    def __call__(self, point):
        """Evaluate by Horner's rule.

        Works in any algebra the coefficients embed into: Rational,
        float, UniPoly (substitution), LaurentPoly, QuadExt.
        """
        result = Rational(0) * point
        for c in reversed(self.coeffs):
            result = result * point + c
        return result

    def __str__(self) -> str:
        return poly_str(self)


def poly_str(p: UniPoly, descending: bool = False) -> str:
    """Human-readable rendering, e.g. "3x + 4x^3 + x^5" or "t^3/48 - t/12"."""
    if p.is_zero:
        return "0"
    indices = range(len(p.coeffs))
    if descending:
        indices = reversed(indices)
    pieces = []
    for k in indices:
        c = p.coeffs[k]
        if c == 0:
            continue
        term = _term_str(c.numerator, c.denominator, p.var, k)
        if not pieces:
            pieces.append(term if c > 0 else "-" + term)
        else:
            pieces.append(("+ " if c > 0 else "- ") + term)
    return " ".join(pieces)


def gbinom(p, k: int):
    """Generalized binomial coefficient C(p, k) = p(p-1)...(p-k+1)/k!.

    The upper argument may be a Rational or a UniPoly; the result lives in
    the same ring. C(p, 0) = 1 for every p.
    """
    if k < 0:
        raise ValueError("lower index of a binomial coefficient must be >= 0")
    if k == 0:
        return UniPoly.one(p.var) if isinstance(p, UniPoly) else Rational(1)
    acc = p
    for i in range(1, k):
        acc = acc * (p - i)
    return acc / math.factorial(k)


def affine_sub(p: UniPoly, a, b) -> UniPoly:
    """Substitute var -> a*var + b and expand."""
    arg = UniPoly(p.var, (as_rational(b), as_rational(a)))
    return p(arg)


class LaurentPoly:
    """Finite sum of integer powers of x, negative exponents allowed.

    Stored sparsely as exponent -> coefficient; substituting x -> x - 1/x
    doubles the exponent span, so a dense layout would waste space.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for e, c in dict(terms).items():
                c = as_rational(c)
                if c != 0:
                    cleaned[int(e)] = c
        self._terms = cleaned

    @classmethod
    def zero(cls) -> LaurentPoly:
        return cls()

    @classmethod
    def monomial(cls, exp: int, c=1) -> LaurentPoly:
        return cls({exp: c})

    @property
    def terms(self) -> dict[int, Rational]:
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, exp: int) -> Rational:
        return self._terms.get(exp, Rational(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Rational)):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        if isinstance(other, (int, Rational)):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, Rational(0)) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Rational)):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            c = as_rational(other)
            return LaurentPoly({e: c * v for e, v in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict[int, Rational] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, Rational(0)) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            term = _term_str(c.numerator, c.denominator, "x", abs(e))
            if e < 0:
                term = term.replace(f"x^{abs(e)}" if abs(e) != 1 else "x",
                                    f"x^{e}")
            if not pieces:
                pieces.append(term if c > 0 else "-" + term)
            else:
                pieces.append(("+ " if c > 0 else "- ") + term)
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"LaurentPoly({dict(sorted(self._terms.items()))!r})"


def laurent_substitute(p: UniPoly, arg: LaurentPoly) -> LaurentPoly:
    """Exact expansion of the polynomial p at a Laurent-polynomial argument."""
    result = p(arg)
    if isinstance(result, Rational):  # zero polynomial evaluates to a scalar
        return LaurentPoly({0: result})
    return result


@dataclass(frozen=True, slots=True)
class QuadExt:
    """Element a + b*sqrt5 of the real quadratic field Q(sqrt5).

    sqrt5 is irrational, so the representation is unique and equality is
    componentwise.
    """

    a: Rational
    b: Rational

    def __post_init__(self):
        object.__setattr__(self, "a", as_rational(self.a))
        object.__setattr__(self, "b", as_rational(self.b))

    @classmethod
    def from_rational(cls, c) -> QuadExt:
        return cls(as_rational(c), Rational(0))

    @classmethod
    def zero(cls) -> QuadExt:
        return cls(Rational(0), Rational(0))

    @classmethod
    def one(cls) -> QuadExt:
        return cls(Rational(1), Rational(0))

    @classmethod
    def sqrt5(cls) -> QuadExt:
        return cls(Rational(0), Rational(1))

    @property
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __add__(self, other):
        if isinstance(other, (int, Rational)):
            other = QuadExt.from_rational(other)
        if not isinstance(other, QuadExt):
            return NotImplemented
        return QuadExt(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b)

    def __sub__(self, other):
        if isinstance(other, (int, Rational)):
            other = QuadExt.from_rational(other)
        if not isinstance(other, QuadExt):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            c = as_rational(other)
            return QuadExt(self.a * c, self.b * c)
        if not isinstance(other, QuadExt):
            return NotImplemented
        return QuadExt(self.a * other.a + 5 * self.b * other.b,
                       self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def conjugate(self) -> QuadExt:
        return QuadExt(self.a, -self.b)

    def norm(self) -> Rational:
        return self.a * self.a - 5 * self.b * self.b

    def inverse(self) -> QuadExt:
        n = self.norm()
        if n == 0:
            # sqrt5 irrational, so norm zero forces a = b = 0
            raise ZeroDivisionError("inverse of zero in Q(sqrt5)")
        return QuadExt(self.a / n, -self.b / n)

    def __pow__(self, k: int) -> QuadExt:
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadExt.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(5.0)

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        root = _term_str(self.b.numerator, self.b.denominator, "sqrt5", 1)
        if self.a == 0:
            return root if self.b > 0 else "-" + root
        sign = "+" if self.b > 0 else "-"
        return f"{self.a} {sign} {root}"
