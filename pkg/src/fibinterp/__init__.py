"""Exact power-series interpolation of Fibonacci and Lucas polynomials.

The classical polynomials extend to five families of truncated formal
power series in x with coefficients polynomial in a parameter t; this
package constructs them two independent ways, proves their identities
exactly in the series ring, reproduces the exact value tables over
Q(sqrt5), and verifies user-written identities through a small
expression language with twin exact and numeric checkers.
"""

from .classical import (cassini_check, explicit_poly, fib_poly, laurent_check,
                        lucas_poly, parity_form)
from .dsl import (BUILTIN_IDENTITIES, check_exact, check_numeric, parse,
                  pretty)
from .exactcore import (LaurentPoly, QuadExt, Rational, UniPoly, as_rational,
                        gbinom, poly_str)
from .interpolants import (Family, ParityMismatchError, RELATIONS,
                           RouteDisagreementError, alpha_num, closed_series,
                           def_series, disc_sqrt_series, exact_at_one,
                           golden_pow, lambda_num, phi_num,
                           radical_form_check, relation_check, specialize)
from .series import DEFAULT_ORDER, TruncSeries, asinh_series, binom_series

__version__ = "0.1.0"

__all__ = [
    "BUILTIN_IDENTITIES", "DEFAULT_ORDER", "Family", "LaurentPoly",
    "ParityMismatchError", "QuadExt", "RELATIONS", "Rational",
    "RouteDisagreementError", "TruncSeries", "UniPoly", "alpha_num",
    "as_rational", "asinh_series", "binom_series", "cassini_check",
    "check_exact", "check_numeric", "closed_series", "def_series",
    "disc_sqrt_series", "exact_at_one", "explicit_poly", "fib_poly", "gbinom",
    "golden_pow", "lambda_num", "laurent_check", "lucas_poly", "parity_form",
    "parse", "phi_num", "poly_str", "pretty", "radical_form_check",
    "relation_check", "specialize",
]
