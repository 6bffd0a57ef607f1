"""Truncated formal power series in x.

A series is known modulo x^N: it stores exactly N coefficients, constant
term first, trailing zeros kept. Coefficients live in one of two rings,
plain rationals or polynomials in t, and the ring tag travels with the
value. Binary operations insist on equal order and equal ring tag; the
alternative (silent re-truncation) is how series engines usually go wrong.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .exactcore import Rational, UniPoly, as_rational, gbinom, affine_sub

RATIONAL = "rational"
POLY_T = "poly-in-t"

DEFAULT_ORDER = 32

Coeff = Union[Rational, UniPoly]


class OrderMismatchError(ValueError):
    """Binary operation on series of different truncation orders."""


class RingMismatchError(ValueError):
    """Binary operation on series over different coefficient rings."""


class NonzeroConstantTermError(ValueError):
    """Composition or exponential applied to a series with nonzero constant."""


def _ring_zero(ring: str) -> Coeff:
    return UniPoly.zero("t") if ring == POLY_T else Rational(0)


def _coerce(ring: str, c) -> Coeff:
    if ring == POLY_T:
        if isinstance(c, UniPoly):
            if c.var != "t":
                raise RingMismatchError(f"coefficient in {c.var!r}, not t")
            return c
        return UniPoly.const("t", c)
    if isinstance(c, UniPoly):
        raise RingMismatchError("polynomial coefficient in a rational series")
    return as_rational(c)


def _is_zero(c: Coeff) -> bool:
    return c.is_zero if isinstance(c, UniPoly) else c == 0


@dataclass(frozen=True, slots=True)
class TruncSeries:
    """Power series in x modulo x^order, over `ring` coefficients."""

    order: int
    ring: str
    coeffs: tuple[Coeff, ...]

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("truncation order must be >= 1")
        if self.ring not in (RATIONAL, POLY_T):
            raise ValueError(f"unknown ring tag {self.ring!r}")
        if len(self.coeffs) > self.order:
            raise ValueError("more coefficients than the truncation order")
        cs = tuple(_coerce(self.ring, c) for c in self.coeffs)
        pad = (_ring_zero(self.ring),) * (self.order - len(cs))
        object.__setattr__(self, "coeffs", cs + pad)

    @classmethod
    def zero(cls, order: int, ring: str = RATIONAL) -> TruncSeries:
        return cls(order, ring, ())

    @classmethod
    def one(cls, order: int, ring: str = RATIONAL) -> TruncSeries:
        return cls(order, ring, (1,))

    @classmethod
    def const(cls, c, order: int, ring: str = RATIONAL) -> TruncSeries:
        return cls(order, ring, (c,))

    @classmethod
    def x(cls, order: int, ring: str = RATIONAL) -> TruncSeries:
        """The series x itself."""
        return cls(order, ring, (0, 1))

    def coeff(self, k: int) -> Coeff:
        if not 0 <= k < self.order:
            raise IndexError(f"x^{k} is outside a series of order {self.order}")
        return self.coeffs[k]

    @property
    def is_zero(self) -> bool:
        return all(_is_zero(c) for c in self.coeffs)

    def _compat(self, other: TruncSeries):
        if self.order != other.order:
            raise OrderMismatchError(
                f"orders {self.order} and {other.order} differ")
        if self.ring != other.ring:
            raise RingMismatchError(
                f"ring tags {self.ring!r} and {other.ring!r} differ")

    def __add__(self, other):
        if isinstance(other, (int, Rational, UniPoly)):
            c0 = self.coeffs[0] + _coerce(self.ring, other)
            return TruncSeries(self.order, self.ring, (c0,) + self.coeffs[1:])
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._compat(other)
        return TruncSeries(self.order, self.ring,
                           tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.order, self.ring,
                           tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, (int, Rational, UniPoly, TruncSeries)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            c = as_rational(other)
            return TruncSeries(self.order, self.ring,
                               tuple(x * c for x in self.coeffs))
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._compat(other)
        n = self.order
        out = [_ring_zero(self.ring)] * n
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j in range(n - i):
                b = other.coeffs[j]
                if not _is_zero(b):
                    out[i + j] = out[i + j] + a * b
        return TruncSeries(n, self.ring, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> TruncSeries:
        if k < 0:
            raise ValueError("negative series power")
        result = TruncSeries.one(self.order, self.ring)
        for _ in range(k):
            result = result * self
        return result

    def compose(self, inner: TruncSeries) -> TruncSeries:
        """self(inner(x)) mod x^order; inner must kill the constant term."""
        self._compat(inner)
        if not _is_zero(inner.coeffs[0]):
            raise NonzeroConstantTermError(
                "composition target has a nonzero constant term")
        # Horner over truncated powers: exact mod x^N because inner has
        # valuation >= 1.
        result = TruncSeries.const(self.coeffs[-1], self.order, self.ring)
        for k in range(self.order - 2, -1, -1):
            result = result * inner + self.coeffs[k]
        return result

    def integrate(self) -> TruncSeries:
        """Formal antiderivative with constant 0; the top coefficient drops."""
        out = [_ring_zero(self.ring)]
        out.extend(self.coeffs[k] / (k + 1) for k in range(self.order - 1))
        return TruncSeries(self.order, self.ring, tuple(out))

    def substitute_t(self, a, b) -> TruncSeries:
        """Replace t by a*t + b in every coefficient polynomial."""
        if self.ring != POLY_T:
            raise RingMismatchError("t-substitution needs poly-in-t coefficients")
        a, b = as_rational(a), as_rational(b)
        return TruncSeries(self.order, POLY_T,
                           tuple(affine_sub(c, a, b) for c in self.coeffs))

    def eval_t(self, t0) -> TruncSeries:
        """Evaluate every coefficient polynomial at t = t0."""
        if self.ring != POLY_T:
            raise RingMismatchError("t-evaluation needs poly-in-t coefficients")
        t0 = as_rational(t0)
        return TruncSeries(self.order, RATIONAL,
                           tuple(c(t0) for c in self.coeffs))

    def lift_to_t(self) -> TruncSeries:
        """Reinterpret rational coefficients as constant polynomials in t."""
        if self.ring == POLY_T:
            return self
        return TruncSeries(self.order, POLY_T,
                           tuple(UniPoly.const("t", c) for c in self.coeffs))

    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            parts.append(f"({c})*x^{k}" if k else f"({c})")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(x^{self.order})"


def from_poly(p: UniPoly, order: int) -> TruncSeries:
    """Embed a polynomial in x as a rational-coefficient series.

    Refuses to drop coefficients: the polynomial's degree must lie inside
    the truncation window.
    """
    if p.var != "x":
        raise ValueError("only x-polynomials embed as series")
    if p.degree is not None and p.degree >= order:
        raise ValueError(
            f"degree-{p.degree} polynomial does not fit below x^{order}")
    return TruncSeries(order, RATIONAL, tuple(p.coeff(k) for k in range(order)))


def binom_series(gamma, order: int) -> TruncSeries:
    """(1 + z)^gamma as a series: coefficients C(gamma, k)."""
    g = as_rational(gamma)
    return TruncSeries(order, RATIONAL,
                       tuple(gbinom(g, k) for k in range(order)))


def asinh_series(order: int) -> TruncSeries:
    """The odd series u(z) with sinh(u(z)) = z, i.e. sinh inverted.

    Built from the derivative: d/dz asinh(z) = (1 + z^2)^(-1/2), so
    integrate the binomial series composed at z^2.
    """
    z = TruncSeries.x(order)
    deriv = binom_series(Rational(-1, 2), order).compose(z * z)
    return deriv.integrate()


def exp_t_compose(u: TruncSeries, order: int | None = None) -> TruncSeries:
    """exp(t*u) as a series over polynomials in t.

    u must be a rational-coefficient series with zero constant term; the
    result's x^m coefficient is the polynomial sum of t^k * [x^m]u^k / k!
    over k < order, which is the whole exponential mod x^order since u^k
    has valuation k.
    """
    if u.ring != RATIONAL:
        raise RingMismatchError("exp(t*u) needs a rational-coefficient u")
    if order is None:
        order = u.order
    if order != u.order:
        raise OrderMismatchError(
            f"requested order {order} but u has order {u.order}")
    if u.coeffs[0] != 0:
        raise NonzeroConstantTermError("exp(t*u) needs u with zero constant term")
    n = order
    out: list[UniPoly] = [UniPoly.zero("t")] * n
    out[0] = UniPoly.one("t")
    upow = TruncSeries.one(n)
    fact = 1
    for k in range(1, n):
        upow = upow * u
        fact *= k
        for m in range(k, n):
            c = upow.coeffs[m]
            if c != 0:
                out[m] = out[m] + UniPoly.monomial("t", c / fact, k)
    return TruncSeries(n, POLY_T, tuple(out))
