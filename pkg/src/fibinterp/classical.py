"""Fibonacci and Lucas polynomials and their finite exact identities."""

from __future__ import annotations

import math
from functools import lru_cache

from .exactcore import LaurentPoly, Rational, UniPoly, laurent_substitute

_X = UniPoly.variable("x")


@lru_cache(maxsize=None)
def fib_poly(n: int) -> UniPoly:
    """F_n(x): F_0 = 0, F_1 = 1, F_n = x*F_{n-1} + F_{n-2}."""
    if n < 0:
        raise ValueError("index must be >= 0")
    a, b = UniPoly.zero("x"), UniPoly.one("x")
    for _ in range(n):
        a, b = b, _X * b + a
    return a


@lru_cache(maxsize=None)
def lucas_poly(n: int) -> UniPoly:
    """L_n(x): L_0 = 2, L_1 = x, same recurrence."""
    if n < 0:
        raise ValueError("index must be >= 0")
    a, b = UniPoly.const("x", 2), _X
    for _ in range(n):
        a, b = b, _X * b + a
    return a


def explicit_poly(kind: str, n: int) -> UniPoly:
    """Closed-sum coefficient formula for F_n or L_n.

    fib:   sum over k of C(n-1-k, k) * x^(n-1-2k)
    lucas: sum over k of C(n-k, k) * n/(n-k) * x^(n-2k)

    The Lucas sum's k = 0 term is indeterminate at n = 0; the constant 2
    is returned outright there.
    """
    if n < 0:
        raise ValueError("index must be >= 0")
    if kind == "fib":
        if n == 0:
            return UniPoly.zero("x")
        terms = {}
        for k in range((n - 1) // 2 + 1):
            terms[n - 1 - 2 * k] = Rational(math.comb(n - 1 - k, k))
        return _from_power_map(terms)
    if kind == "lucas":
        if n == 0:
            return UniPoly.const("x", 2)
        terms = {}
        for k in range(n // 2 + 1):
            terms[n - 2 * k] = Rational(math.comb(n - k, k)) * Rational(n, n - k)
        return _from_power_map(terms)
    raise ValueError(f"unknown kind {kind!r}")


def parity_form(kind: str, parity: str, n: int) -> UniPoly:
    """Even/odd-index coefficient formulas.

    (fib, even, n)   -> F_{2n}   = sum_{k=1..n} C(n+k-1, 2k-1) x^(2k-1)
    (fib, odd, n)    -> F_{2n+1} = sum_{k=0..n} C(n+k, 2k) x^(2k)
    (lucas, even, n) -> L_{2n}   = sum_{k=0..n} C(n+k, 2k) * 2n/(n+k) x^(2k)
    (lucas, odd, n)  -> L_{2n+1} = sum_{k=0..n} C(n+k+1, 2k+1) * (2n+1)/(n+k+1) x^(2k+1)

    The fib-even sum is empty at n = 0 (F_0 = 0); the lucas-even k = 0
    term is indeterminate at n = 0, where the constant 2 is returned.
    """
    if n < 0:
        raise ValueError("index must be >= 0")
    if (kind, parity) == ("fib", "even"):
        terms = {2 * k - 1: Rational(math.comb(n + k - 1, 2 * k - 1))
                 for k in range(1, n + 1)}
    elif (kind, parity) == ("fib", "odd"):
        terms = {2 * k: Rational(math.comb(n + k, 2 * k))
                 for k in range(n + 1)}
    elif (kind, parity) == ("lucas", "even"):
        if n == 0:
            return UniPoly.const("x", 2)
        terms = {2 * k: Rational(math.comb(n + k, 2 * k)) * Rational(2 * n, n + k)
                 for k in range(n + 1)}
    elif (kind, parity) == ("lucas", "odd"):
        terms = {2 * k + 1:
                 Rational(math.comb(n + k + 1, 2 * k + 1)) * Rational(2 * n + 1, n + k + 1)
                 for k in range(n + 1)}
    else:
        raise ValueError(f"unknown combination ({kind!r}, {parity!r})")
    return _from_power_map(terms)


def _from_power_map(terms: dict[int, Rational]) -> UniPoly:
    if not terms:
        return UniPoly.zero("x")
    coeffs = [Rational(0)] * (max(terms) + 1)
    for e, c in terms.items():
        coeffs[e] = c
    return UniPoly("x", tuple(coeffs))


def laurent_check(kind: str, parity: str, n: int) -> bool:
    """Exact substitution identity at x -> x - 1/x.

    (fib, even):   (x + 1/x) * F_{2n}(x - 1/x)   == x^(2n)   - x^(-2n)
    (fib, odd):    (x + 1/x) * F_{2n+1}(x - 1/x) == x^(2n+1) + x^(-(2n+1))
    (lucas, even):          L_{2n}(x - 1/x)      == x^(2n)   + x^(-2n)
    (lucas, odd):           L_{2n+1}(x - 1/x)    == x^(2n+1) - x^(-(2n+1))

    Computed entirely in the Laurent-polynomial ring, never numerically.
    """
    if n < 0:
        raise ValueError("index must be >= 0")
    if parity == "even":
        m = 2 * n
    elif parity == "odd":
        m = 2 * n + 1
    else:
        raise ValueError(f"unknown parity {parity!r}")
    arg = LaurentPoly({1: 1, -1: -1})
    if kind == "fib":
        lhs = LaurentPoly({1: 1, -1: 1}) * laurent_substitute(fib_poly(m), arg)
        sign = -1 if parity == "even" else 1
    elif kind == "lucas":
        lhs = laurent_substitute(lucas_poly(m), arg)
        sign = 1 if parity == "even" else -1
    else:
        raise ValueError(f"unknown kind {kind!r}")
    # summed, not a dict literal: at n = 0 both exponents are 0 and the
    # coefficients must combine
    rhs = LaurentPoly.monomial(m, 1) + LaurentPoly.monomial(-m, sign)
    return lhs == rhs


def cassini_check(kind: str, n: int) -> bool:
    """Polynomial Cassini identity.

    fib:   F_{n+1}F_{n-1} - F_n^2 == (-1)^n
    lucas: L_{n+1}L_{n-1} - L_n^2 == (-1)^(n-1) * (x^2 + 4)
    """
    if n < 1:
        raise ValueError("index must be >= 1")
    if kind == "fib":
        lhs = fib_poly(n + 1) * fib_poly(n - 1) - fib_poly(n) ** 2
        rhs = UniPoly.const("x", (-1) ** n)
    elif kind == "lucas":
        lhs = lucas_poly(n + 1) * lucas_poly(n - 1) - lucas_poly(n) ** 2
        rhs = UniPoly("x", (4, 0, 1)) * ((-1) ** (n - 1))
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return lhs == rhs
