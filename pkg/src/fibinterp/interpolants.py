"""The five interpolation families and their exact and numeric machinery.

Fibonacci and Lucas polynomials of even or odd index extend to series
Phi0, Phi1, Lam0, Lam1 in x whose coefficients are polynomials in a real
parameter t, together with AlphaT, the t-th power of the positive
characteristic root. Each family is built two independent ways:

  * def_series   -- coefficientwise, from generalized binomial formulas;
  * closed_series -- compositionally, from exp(t * asinh(x/2)) and the
    square-root-of-discriminant series.

Their exact equality is the library's central oracle. On the numeric
side every evaluation runs through two independent floating-point routes
(root powers vs hyperbolic functions) that must agree to tight relative
tolerance; disagreement signals an implementation fault, never a domain
error.
"""

from __future__ import annotations

import math
import os
from enum import Enum
from functools import lru_cache

from .classical import fib_poly, lucas_poly
from .exactcore import QuadExt, Rational, UniPoly, gbinom
from .series import (DEFAULT_ORDER, POLY_T, TruncSeries, asinh_series,
                     binom_series, exp_t_compose, from_poly)

ROUTE_REL_TOL = 1e-11

FAULT_ENV = "FIBINTERP_FAULT_DEF_SERIES"


class Family(str, Enum):
    PHI0 = "Phi0"
    PHI1 = "Phi1"
    LAM0 = "Lam0"
    LAM1 = "Lam1"
    ALPHA_T = "AlphaT"


class ParityMismatchError(ValueError):
    """Integer specialization requested at an index of the wrong parity."""


class RouteDisagreementError(RuntimeError):
    """The two numeric evaluation routes diverged: an implementation fault."""


_T = UniPoly.variable("t")
_HALF_T = UniPoly("t", (0, Rational(1, 2)))            # t/2
_SHIFT_T = UniPoly("t", (Rational(-1, 2), Rational(1, 2)))   # (t-1)/2


def _def_coeff(family: Family, m: int) -> UniPoly:
    # coefficient of x^m as a polynomial in t; zero off the family's parity
    zero = UniPoly.zero("t")
    if family is Family.PHI0:
        if m % 2 == 0:
            return zero
        k = (m + 1) // 2
        return gbinom(_HALF_T + (k - 1), m)
    if family is Family.PHI1:
        if m % 2 == 1:
            return zero
        k = m // 2
        return gbinom(_SHIFT_T + k, m)
    if family is Family.LAM0:
        if m % 2 == 1:
            return zero
        if m == 0:
            return UniPoly.const("t", 2)
        k = m // 2
        return _HALF_T * gbinom(_HALF_T + (k - 1), 2 * k - 1) * Rational(1, k)
    if family is Family.LAM1:
        if m % 2 == 0:
            return zero
        k = (m - 1) // 2
        return _T * gbinom(_SHIFT_T + k, 2 * k) / (2 * k + 1)
    # AlphaT: full support
    if m == 0:
        return UniPoly.one("t")
    half_sum = UniPoly("t", (Rational(m, 2) - 1, Rational(1, 2)))  # (t+m)/2 - 1
    return _T * gbinom(half_sum, m - 1) / (2 * m)


@lru_cache(maxsize=None)
def _def_series(family: Family, order: int) -> TruncSeries:
    if order < 1:
        raise ValueError("order must be >= 1")
    return TruncSeries(order, POLY_T,
                       tuple(_def_coeff(family, m) for m in range(order)))


def def_series(family, order: int = DEFAULT_ORDER) -> TruncSeries:
    """Coefficientwise construction of a family's series.

    Honors the FIBINTERP_FAULT_DEF_SERIES environment hook ("Family:power"),
    which perturbs one coefficient so that fault propagation through the
    verification pipeline can be exercised end to end.
    """
    s = _def_series(Family(family), order)
    fault = os.environ.get(FAULT_ENV)
    if fault:
        s = _apply_fault(s, Family(family), fault)
    return s


def _apply_fault(s: TruncSeries, family: Family, fault: str) -> TruncSeries:
    name, _, power = fault.partition(":")
    try:
        m = int(power)
    except ValueError:
        raise ValueError(f"malformed {FAULT_ENV} value {fault!r}") from None
    if Family(name) is not family or not 0 <= m < s.order:
        return s
    bumped = list(s.coeffs)
    bumped[m] = bumped[m] + UniPoly.one("t")
    return TruncSeries(s.order, POLY_T, tuple(bumped))


@lru_cache(maxsize=None)
def disc_sqrt_series(order: int, inverse: bool = False) -> TruncSeries:
    """sqrt(x^2 + 4) = 2*(1 + x^2/4)^(1/2) as a series, or its reciprocal."""
    if order < 1:
        raise ValueError("order must be >= 1")
    x = TruncSeries.x(order)
    quarter_sq = x * x * Rational(1, 4)
    if inverse:
        return binom_series(Rational(-1, 2), order).compose(quarter_sq) * Rational(1, 2)
    return binom_series(Rational(1, 2), order).compose(quarter_sq) * 2


@lru_cache(maxsize=None)
def _exp_pieces(order: int) -> tuple[TruncSeries, TruncSeries]:
    # E+ = exp(t*asinh(x/2)) and its t -> -t mirror
    half_x = TruncSeries.x(order) * Rational(1, 2)
    u = asinh_series(order).compose(half_x)
    eplus = exp_t_compose(u)
    return eplus, eplus.substitute_t(-1, 0)


def closed_series(family, order: int = DEFAULT_ORDER) -> TruncSeries:
    """Compositional construction of the same series, the oracle route."""
    return _closed_series(Family(family), order)


@lru_cache(maxsize=None)
def _closed_series(family: Family, order: int) -> TruncSeries:
    eplus, eminus = _exp_pieces(order)
    if family is Family.ALPHA_T:
        return eplus
    if family is Family.LAM0:
        return eplus + eminus
    if family is Family.LAM1:
        return eplus - eminus
    sinv = disc_sqrt_series(order, inverse=True).lift_to_t()
    if family is Family.PHI0:
        return (eplus - eminus) * sinv
    return (eplus + eminus) * sinv


def specialize(family, k: int, order: int = DEFAULT_ORDER) -> UniPoly:
    """Evaluate a family at integer t = k, landing on F_k or L_k.

    Phi0/Lam0 take even k, Phi1/Lam1 odd k; the opposite parity gives an
    irrational multiple, not a polynomial, and is rejected. Every stored
    coefficient beyond the target polynomial's degree must vanish, which
    is a built-in cross-check of the coefficient formulas.
    """
    family = Family(family)
    if family is Family.ALPHA_T:
        raise ValueError("the root-power family never collapses to a polynomial")
    if k < 0:
        raise ValueError("specialization index must be >= 0")
    if order <= k:
        raise ValueError(f"order {order} cannot hold a degree-{k} result")
    fam_parity = 0 if family in (Family.PHI0, Family.LAM0) else 1
    if k % 2 != fam_parity:
        raise ParityMismatchError(
            f"{family.value} interpolates indices of parity {fam_parity}, got {k}")
    values = def_series(family, order).eval_t(k)
    bound = k - 1 if family in (Family.PHI0, Family.PHI1) else k
    for m in range(bound + 1, order):
        if values.coeffs[m] != 0:
            raise RuntimeError(
                f"{family.value} at t = {k} has nonzero x^{m} coefficient; "
                "coefficient formulas are corrupted")
    return UniPoly("x", values.coeffs[:bound + 1])


def alpha_coeff_unhalved(n: int) -> UniPoly:
    """The n-th root-power coefficient with an unhalved upper argument.

    A faithful transcription of a formula variant whose upper binomial
    argument is NOT divided by two: t/n * C(t + n - 1, n - 1). It is kept
    only as a regression guard: at n = 1 it evaluates to 1 at t = 1,
    whereas the true x-coefficient of the positive root is 1/2, so tests
    assert it DISAGREES with the real AlphaT coefficient.
    """
    if n < 1:
        raise ValueError("defined for n >= 1")
    return _T * gbinom(_T + (n - 1), n - 1) / n


# -- numeric evaluation: two independent routes -----------------------------

def alpha_num(x: float) -> float:
    """The positive root (x + sqrt(x^2 + 4))/2; > 0 for every real x."""
    return (x + math.hypot(x, 2.0)) / 2.0


def alpha_pair(x: float) -> tuple[float, float]:
    """Both characteristic roots (alpha, -1/alpha)."""
    a = alpha_num(x)
    return a, -1.0 / a


def _num_routes(j: int, t: float, x: float, phi: bool) -> tuple[float, float]:
    a = alpha_num(x)
    disc = math.hypot(x, 2.0)
    at = a ** t
    sign = -1.0 if j % 2 else 1.0
    root_route = (at - sign / at) / disc if phi else at + sign / at
    # independent route: alpha = e^{asinh(x/2)}, so root powers become
    # hyperbolic functions of t * asinh(x/2)
    u = t * math.asinh(x / 2.0)
    wants_cosh = (j % 2 == 1) if phi else (j % 2 == 0)
    body = 2.0 * (math.cosh(u) if wants_cosh else math.sinh(u))
    hyp_route = body / disc if phi else body
    return root_route, hyp_route


def _checked(routes: tuple[float, float], label: str) -> float:
    r1, r2 = routes
    if abs(r1 - r2) > ROUTE_REL_TOL * max(1.0, abs(r1), abs(r2)):
        raise RouteDisagreementError(
            f"{label}: root-power route {r1!r} vs hyperbolic route {r2!r}")
    return r1


def phi_num_routes(j: int, t: float, x: float) -> tuple[float, float]:
    return _num_routes(j, t, x, phi=True)


def lambda_num_routes(j: int, t: float, x: float) -> tuple[float, float]:
    return _num_routes(j, t, x, phi=False)


def phi_num(j: int, t: float, x: float) -> float:
    """Fibonacci-side interpolation value by the root-power route.

    The hyperbolic route is always computed alongside and must agree to
    relative 1e-11.
    """
    return _checked(phi_num_routes(j, t, x), f"phi j={j} t={t} x={x}")


def lambda_num(j: int, t: float, x: float) -> float:
    """Lucas-side interpolation value, same dual-route contract."""
    return _checked(lambda_num_routes(j, t, x), f"lambda j={j} t={t} x={x}")


# -- exact values at x = 1 in Q(sqrt5) ---------------------------------------

_INV_SQRT5 = QuadExt(Rational(0), Rational(1, 5))  # 1/sqrt5 = sqrt5/5


@lru_cache(maxsize=None)
def golden_pow(k: int) -> QuadExt:
    """Exact k-th power of (1 + sqrt5)/2, negative k via field inverse."""
    return QuadExt(Rational(1, 2), Rational(1, 2)) ** k


def exact_at_one(family, k: int) -> QuadExt:
    """Exact value of a Phi/Lam family at integer t = k, x = 1."""
    family = Family(family)
    if family is Family.ALPHA_T:
        raise ValueError("use golden_pow for exact root powers")
    if k < 0:
        raise ValueError("index must be >= 0")
    plus, minus = golden_pow(k), golden_pow(-k)
    j = 0 if family in (Family.PHI0, Family.LAM0) else 1
    sign = -1 if j else 1
    if family in (Family.PHI0, Family.PHI1):
        return (plus - sign * minus) * _INV_SQRT5
    return plus + sign * minus


# -- exact relation suite -----------------------------------------------------

RELATIONS = ("alpha-split", "neighbor-sum", "recurrence", "cassini-cross",
             "cassini-same", "doubling", "mixed-parity")


def relation_check(name: str, j: int, order: int = DEFAULT_ORDER) -> bool:
    """Verify one named relation exactly in the series ring.

    All comparisons are coefficient-polynomial-exact modulo x^order.
    Index shifts run through affine t-substitution; the discriminant root
    appears only via its series (squared where a denominator would
    otherwise arise), so everything stays inside the polynomial ring.

      alpha-split    Lam_j + S*Phi_j == 2*AlphaT
      neighbor-sum   Lam_j(t) == Phi_{j+1}(t-1) + Phi_{j+1}(t+1)
      recurrence     Phi_j(t+2) == x*Phi_{j+1}(t+1) + Phi_j(t), and the
                     Lam twin
      cassini-cross  Phi_j(t+1)Phi_j(t-1) - Phi_{j+1}(t)^2 == (-1)^(j+1),
                     Lam_j(t+1)Lam_j(t-1) - Lam_{j+1}(t)^2 == (-1)^j (x^2+4)
      cassini-same   (Phi_j(t+1)Phi_j(t-1) - Phi_j(t)^2) * S^2 == (-1)^(j+1) x^2,
                     Lam_j(t+1)Lam_j(t-1) - Lam_j(t)^2 == (-1)^j x^2
      doubling       Phi0(2t) == Phi_j(t)*Lam_j(t),
                     Lam0(2t) == Lam_j(t)^2 - 2*(-1)^j
      mixed-parity   at concrete k = 2n+j, n = 1..5 (clamped to the window):
                     Lam_{j+1}(k) == S*F_k and Phi_{j+1}(k)*S == L_k
    """
    if order < 8:
        raise ValueError("relation checks need order >= 8")
    if j not in (0, 1):
        raise ValueError("parity index must be 0 or 1")
    jj = 1 - j
    phi = def_series((Family.PHI0, Family.PHI1)[j], order)
    phi_other = def_series((Family.PHI0, Family.PHI1)[jj], order)
    lam = def_series((Family.LAM0, Family.LAM1)[j], order)
    lam_other = def_series((Family.LAM0, Family.LAM1)[jj], order)
    sign = -1 if j else 1

    if name == "alpha-split":
        s_lift = disc_sqrt_series(order).lift_to_t()
        return lam + s_lift * phi == def_series(Family.ALPHA_T, order) * 2

    if name == "neighbor-sum":
        return lam == phi_other.substitute_t(1, -1) + phi_other.substitute_t(1, 1)

    if name == "recurrence":
        x = TruncSeries.x(order, POLY_T)
        phi_line = (phi.substitute_t(1, 2)
                    == x * phi_other.substitute_t(1, 1) + phi)
        lam_line = (lam.substitute_t(1, 2)
                    == x * lam_other.substitute_t(1, 1) + lam)
        return phi_line and lam_line

    if name == "cassini-cross":
        lhs_phi = (phi.substitute_t(1, 1) * phi.substitute_t(1, -1)
                   - phi_other * phi_other)
        lhs_lam = (lam.substitute_t(1, 1) * lam.substitute_t(1, -1)
                   - lam_other * lam_other)
        disc_sq = TruncSeries(order, POLY_T, (4, 0, 1))
        return (lhs_phi == TruncSeries.const(-sign, order, POLY_T)
                and lhs_lam == disc_sq * sign)

    if name == "cassini-same":
        s_lift = disc_sqrt_series(order).lift_to_t()
        x_sq = TruncSeries(order, POLY_T, (0, 0, 1))
        lhs_phi = (phi.substitute_t(1, 1) * phi.substitute_t(1, -1) - phi * phi)
        lhs_lam = (lam.substitute_t(1, 1) * lam.substitute_t(1, -1) - lam * lam)
        return (lhs_phi * (s_lift * s_lift) == x_sq * (-sign)
                and lhs_lam == x_sq * sign)

    if name == "doubling":
        phi0_2t = def_series(Family.PHI0, order).substitute_t(2, 0)
        lam0_2t = def_series(Family.LAM0, order).substitute_t(2, 0)
        return (phi0_2t == phi * lam
                and lam0_2t == lam * lam - 2 * sign)

    if name == "mixed-parity":
        s = disc_sqrt_series(order)
        ok = True
        for n in range(1, 6):
            k = 2 * n + j
            if k >= order:  # polynomial would not fit the window
                break
            lam_at_k = def_series((Family.LAM0, Family.LAM1)[jj], order).eval_t(k)
            phi_at_k = def_series((Family.PHI0, Family.PHI1)[jj], order).eval_t(k)
            ok = (ok
                  and lam_at_k == s * from_poly(fib_poly(k), order)
                  and phi_at_k * s == from_poly(lucas_poly(k), order))
        return ok

    raise ValueError(f"unknown relation {name!r}")


def radical_form_check(which: str, k: int) -> bool:
    """Square-root value formulas at x = 1, verified in squared form.

    Squaring keeps the comparison inside Q and sidesteps branch signs
    (nonnegativity of the table entries is asserted separately in tests).

      phi0-odd    5 * Phi0(2k+1)^2 == 1 + 5 F_{2k} F_{2k+2}
      phi1-even   5 * Phi1(2k)^2   == 5 F_{2k+1} F_{2k-1} - 1
      lam0-odd    Lam0(2k+1)^2     == L_{2k} L_{2k+2} - 1
      lam1-even   Lam1(2k)^2       == L_{2k-1} L_{2k+1} + 1
    """
    if k < 1:
        raise ValueError("index must be >= 1")
    one = Rational(1)

    def fib(n):
        return fib_poly(n)(one)

    def luc(n):
        return lucas_poly(n)(one)

    if which == "phi0-odd":
        v = exact_at_one(Family.PHI0, 2 * k + 1)
        target = 1 + 5 * fib(2 * k) * fib(2 * k + 2)
        scale = 5
    elif which == "phi1-even":
        v = exact_at_one(Family.PHI1, 2 * k)
        target = 5 * fib(2 * k + 1) * fib(2 * k - 1) - 1
        scale = 5
    elif which == "lam0-odd":
        v = exact_at_one(Family.LAM0, 2 * k + 1)
        target = luc(2 * k) * luc(2 * k + 2) - 1
        scale = 1
    elif which == "lam1-even":
        v = exact_at_one(Family.LAM1, 2 * k)
        target = luc(2 * k - 1) * luc(2 * k + 1) + 1
        scale = 1
    else:
        raise ValueError(f"unknown radical form {which!r}")
    squared = v * v
    return squared.b == 0 and scale * squared.a == target
