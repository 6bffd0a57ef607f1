"""Real-parameter extensions of the polynomial families.

The central oracle: every family's coefficient-rule series must equal the
independently built closed-form series (hyperbolic route through exp and
asinh). Low-order coefficients were additionally frozen from a separate
computer-algebra run, so the two in-package constructions cannot conspire.
"""

import math
import subprocess
import sys
from fractions import Fraction

import pytest

from fibinterp.classical import fib_poly, lucas_poly
from fibinterp.exactcore import QuadExt, UniPoly, poly_str
from fibinterp.interpolants import (
    RELATIONS,
    ROUTE_REL_TOL,
    Family,
    ParityMismatchError,
    RouteDisagreementError,
    alpha_coeff_unhalved,
    alpha_num,
    alpha_pair,
    closed_series,
    def_series,
    disc_sqrt_series,
    exact_at_one,
    golden_pow,
    lambda_num,
    lambda_num_routes,
    phi_num,
    phi_num_routes,
    radical_form_check,
    relation_check,
    specialize,
)
from fibinterp.sampling import DEFAULT_SEED, SplitMix64, sample_tx
from fibinterp.series import POLY_T, RATIONAL, TruncSeries

T = UniPoly.variable("t")
ALL_FAMILIES = list(Family)


def tp(p):
    """Normalize an int/arith expression to a t-polynomial."""
    return p if isinstance(p, UniPoly) else UniPoly.const("t", p)


# --------------------------------------------------- frozen coefficient oracle

# low-order coefficients from an independent symbolic expansion (factored
# forms kept so the structure is auditable)
FROZEN = {
    Family.PHI0: {
        1: T / 2,
        3: T * (T - 2) * (T + 2) / 48,
        5: T * (T - 4) * (T - 2) * (T + 2) * (T + 4) / 3840,
    },
    Family.PHI1: {
        0: tp(1),
        2: (T - 1) * (T + 1) / 8,
        4: (T - 3) * (T - 1) * (T + 1) * (T + 3) / 384,
    },
    Family.LAM0: {
        0: tp(2),
        2: T * T / 4,
        4: T * T * (T - 2) * (T + 2) / 192,
    },
    Family.LAM1: {
        1: T,
        3: T * (T - 1) * (T + 1) / 24,
        5: T * (T - 3) * (T - 1) * (T + 1) * (T + 3) / 1920,
    },
    Family.ALPHA_T: {
        0: tp(1),
        1: T / 2,
        2: T * T / 8,
        3: T * (T - 1) * (T + 1) / 48,
        4: T * T * (T - 2) * (T + 2) / 384,
    },
}


@pytest.mark.parametrize("family", ALL_FAMILIES)
def test_frozen_low_order_coefficients(family):
    s = def_series(family, order=8)
    for power, expected in FROZEN[family].items():
        assert s.coeff(power) == expected, f"{family} x^{power}"


@pytest.mark.parametrize("family", ALL_FAMILIES)
def test_definition_equals_closed_form(family):
    assert def_series(family, order=32) == closed_series(family, order=32)


@pytest.mark.parametrize("family,live", [
    (Family.PHI0, 1), (Family.PHI1, 0), (Family.LAM0, 0), (Family.LAM1, 1)])
def test_x_parity_structure(family, live):
    s = def_series(family, order=20)
    for k in range(20):
        if k % 2 != live:
            assert s.coeff(k).is_zero, f"{family} x^{k} should vanish"


def test_t_negation_symmetry():
    # t -> -t flips the sign of the odd families and fixes the even ones
    n = 24
    for family, sign in [(Family.PHI0, -1), (Family.LAM1, -1),
                         (Family.PHI1, 1), (Family.LAM0, 1)]:
        s = def_series(family, order=n)
        flipped = s.substitute_t(Fraction(-1), Fraction(0))
        assert flipped == s * Fraction(sign), family


def test_t_degree_matches_x_power():
    for family in ALL_FAMILIES:
        s = def_series(family, order=14)
        for k in range(14):
            c = s.coeff(k)
            if not c.is_zero and k >= 1:
                assert c.degree == k, f"{family} x^{k}"


def test_alpha_is_half_sum_of_even_odd_lucas():
    n = 20
    lhs = def_series(Family.ALPHA_T, order=n) * Fraction(2)
    assert lhs == def_series(Family.LAM0, order=n) + def_series(Family.LAM1, order=n)


# ---------------------------------------------------------------- disc sqrt


def test_disc_sqrt_frozen_coefficients():
    s = disc_sqrt_series(8)
    expect = {0: Fraction(2), 2: Fraction(1, 4), 4: Fraction(-1, 64),
              6: Fraction(1, 512)}
    for k in range(8):
        assert s.coeff(k) == expect.get(k, Fraction(0))
    inv = disc_sqrt_series(8, inverse=True)
    iexpect = {0: Fraction(1, 2), 2: Fraction(-1, 16), 4: Fraction(3, 256),
               6: Fraction(-5, 2048)}
    for k in range(8):
        assert inv.coeff(k) == iexpect.get(k, Fraction(0))


def test_disc_sqrt_square_and_inverse():
    n = 16
    s = disc_sqrt_series(n)
    sq = s * s
    assert sq.coeff(0) == 4 and sq.coeff(2) == 1
    assert all(sq.coeff(k) == 0 for k in range(n) if k not in (0, 2))
    assert s * disc_sqrt_series(n, inverse=True) == TruncSeries.one(n, RATIONAL)


# -------------------------------------------------------------- specialization


def test_specialize_recovers_fib():
    assert specialize(Family.PHI0, 6) == fib_poly(6)
    assert specialize(Family.PHI1, 7, order=16) == fib_poly(7)
    assert specialize(Family.PHI0, 0, order=8) == fib_poly(0)


def test_specialize_recovers_lucas():
    assert specialize(Family.LAM1, 5) == lucas_poly(5)
    assert specialize(Family.LAM0, 6, order=16) == lucas_poly(6)
    assert specialize(Family.LAM0, 0, order=8) == lucas_poly(0)


def test_specialize_full_sweep():
    for k in range(14):
        phi = Family.PHI0 if k % 2 == 0 else Family.PHI1
        lam = Family.LAM0 if k % 2 == 0 else Family.LAM1
        assert specialize(phi, k) == fib_poly(k)
        assert specialize(lam, k) == lucas_poly(k)


def test_specialize_parity_mismatch():
    with pytest.raises(ParityMismatchError):
        specialize(Family.PHI0, 5)
    with pytest.raises(ParityMismatchError):
        specialize(Family.LAM1, 4)


def test_specialize_rejects_alpha_and_tight_orders():
    with pytest.raises(ValueError):
        specialize(Family.ALPHA_T, 4)
    with pytest.raises(ValueError):
        specialize(Family.PHI0, 8, order=8)


def test_parity_split_recovered_by_affine_substitution():
    # substituting t -> 2t (even) or t -> 2t+1 (odd) and then pinning t to an
    # integer must reproduce the integer-index polynomials
    n = 16
    for j, (a, b) in ((0, (2, 0)), (1, (2, 1))):
        phi = def_series([Family.PHI0, Family.PHI1][j], order=n)
        lam = def_series([Family.LAM0, Family.LAM1][j], order=n)
        sub = (Fraction(a), Fraction(b))
        for m in range(6):
            k = 2 * m + j
            want_f = phi.substitute_t(*sub).eval_t(Fraction(m))
            want_l = lam.substitute_t(*sub).eval_t(Fraction(m))
            for p in range(n):
                assert want_f.coeff(p) == fib_poly(k).coeff(p)
                assert want_l.coeff(p) == lucas_poly(k).coeff(p)


# ------------------------------------------------------------------ relations


@pytest.mark.parametrize("name", RELATIONS)
@pytest.mark.parametrize("j", [0, 1])
def test_relations_hold(name, j):
    assert relation_check(name, j, order=32)


def test_relation_check_input_validation():
    with pytest.raises(ValueError):
        relation_check("no-such-relation", 0)
    with pytest.raises(ValueError):
        relation_check("recurrence", 2)
    with pytest.raises(ValueError):
        relation_check("recurrence", 0, order=4)


def test_relations_catalogue_is_stable():
    assert RELATIONS == ("alpha-split", "neighbor-sum", "recurrence",
                         "cassini-cross", "cassini-same", "doubling",
                         "mixed-parity")


# ------------------------------------------------------------ values at x = 1


def sqrt5_times(m):
    return QuadExt(Fraction(0), Fraction(m))


def over_sqrt5(m):
    return QuadExt(Fraction(0), Fraction(m, 5))


def plain(m):
    return QuadExt(Fraction(m), Fraction(0))


EXACT_TABLE = {
    Family.PHI0: [plain(0), over_sqrt5(1), plain(1), over_sqrt5(4), plain(3),
                  over_sqrt5(11), plain(8), over_sqrt5(29), plain(21)],
    Family.PHI1: [over_sqrt5(2), plain(1), over_sqrt5(3), plain(2),
                  over_sqrt5(7), plain(5), over_sqrt5(18), plain(13),
                  over_sqrt5(47)],
    Family.LAM0: [plain(2), sqrt5_times(1), plain(3), sqrt5_times(2), plain(7),
                  sqrt5_times(5), plain(18), sqrt5_times(13), plain(47)],
    Family.LAM1: [plain(0), plain(1), sqrt5_times(1), plain(4), sqrt5_times(3),
                  plain(11), sqrt5_times(8), plain(29), sqrt5_times(21)],
}


@pytest.mark.parametrize("family", list(EXACT_TABLE))
def test_exact_values_at_one(family):
    for k, expected in enumerate(EXACT_TABLE[family]):
        assert exact_at_one(family, k) == expected, f"{family} k={k}"


def test_exact_at_one_interleaves_integer_sequences():
    # even slots of the matching-parity families are literal F_k / L_k
    for k in range(0, 30, 2):
        assert exact_at_one(Family.PHI0, k) == plain(fib_poly(k)(Fraction(1)))
        assert exact_at_one(Family.LAM0, k) == plain(lucas_poly(k)(Fraction(1)))
    for k in range(1, 30, 2):
        assert exact_at_one(Family.PHI1, k) == plain(fib_poly(k)(Fraction(1)))
        assert exact_at_one(Family.LAM1, k) == plain(lucas_poly(k)(Fraction(1)))


def test_exact_at_one_rejects_alpha_and_negative():
    with pytest.raises(ValueError):
        exact_at_one(Family.ALPHA_T, 3)
    with pytest.raises(ValueError):
        exact_at_one(Family.PHI0, -1)


def test_golden_pow():
    golden = QuadExt(Fraction(1, 2), Fraction(1, 2))
    assert golden_pow(0) == plain(1)
    assert golden_pow(1) == golden
    assert golden_pow(3) == QuadExt(Fraction(2), Fraction(1))
    assert golden_pow(-1) == QuadExt(Fraction(-1, 2), Fraction(1, 2))
    assert golden_pow(10) == golden_pow(5) * golden_pow(5)
    # norm is -1, so inverse equals minus the conjugate
    assert golden_pow(1) * golden_pow(-1) == plain(1)


# --------------------------------------------------------------- radical forms


@pytest.mark.parametrize("which", ["phi0-odd", "phi1-even", "lam0-odd",
                                   "lam1-even"])
def test_radical_forms(which):
    for k in range(1, 5):
        assert radical_form_check(which, k)


def test_radical_form_hand_instances():
    # Phi0 at t = 5 is 11/sqrt(5): 121 = 5 * F_4 * F_6 + 1 = 5*3*8 + 1
    assert exact_at_one(Family.PHI0, 5) == over_sqrt5(11)
    assert 11 ** 2 == 5 * 3 * 8 + 1
    # Phi1 at t = 4 is 7/sqrt(5): 49 = 5 * F_3 * F_5 - 1 = 5*2*5 - 1
    assert exact_at_one(Family.PHI1, 4) == over_sqrt5(7)
    assert 7 ** 2 == 5 * 2 * 5 - 1
    with pytest.raises(ValueError):
        radical_form_check("phi0-even", 2)


def test_radical_values_are_nonnegative_floats():
    for family in (Family.PHI0, Family.PHI1, Family.LAM0, Family.LAM1):
        for k in range(9):
            assert float(exact_at_one(family, k)) >= 0.0


# ------------------------------------------------------------------- numerics


def test_alpha_num_basics():
    assert abs(alpha_num(1.0) - (1 + math.sqrt(5)) / 2) < 1e-15
    assert alpha_num(0.0) == 1.0
    a, abar = alpha_pair(2.5)
    assert abs(a * abar + 1.0) < 1e-14  # product of the two roots is -1


def test_numeric_matches_exact_at_integer_points():
    for j in (0, 1):
        for k in range(j, 21, 2):
            fam_phi = [Family.PHI0, Family.PHI1][j]
            fam_lam = [Family.LAM0, Family.LAM1][j]
            assert abs(phi_num(j, float(k), 1.0)
                       - float(exact_at_one(fam_phi, k))) <= 1e-10
            assert abs(lambda_num(j, float(k), 1.0)
                       - float(exact_at_one(fam_lam, k))) <= 1e-10


def test_numeric_spot_values():
    assert abs(phi_num(0, 6.0, 1.0) - 8.0) <= 1e-10
    assert abs(phi_num(1, 4.0, 1.0) - 7.0 / math.sqrt(5)) <= 1e-12
    assert abs(lambda_num(0, 0.0, 1.5) - 2.0) <= 1e-12
    assert abs(lambda_num(0, 2.0, 1.0) - 3.0) <= 1e-10


def test_routes_agree_on_seeded_samples():
    rng = SplitMix64(DEFAULT_SEED)
    for _ in range(200):
        t, x = sample_tx(rng)
        for j in (0, 1):
            r1, r2 = phi_num_routes(j, t, x)
            assert abs(r1 - r2) <= ROUTE_REL_TOL * max(1.0, abs(r1), abs(r2))
            r1, r2 = lambda_num_routes(j, t, x)
            assert abs(r1 - r2) <= ROUTE_REL_TOL * max(1.0, abs(r1), abs(r2))


def test_route_disagreement_raises(monkeypatch):
    import fibinterp.interpolants as interp
    real = interp.alpha_num
    monkeypatch.setattr(interp, "alpha_num", lambda x: real(x) * (1 + 1e-6))
    with pytest.raises(RouteDisagreementError):
        phi_num(0, 2.0, 1.0)


def test_lambda_even_is_increasing_in_t_at_x_one():
    values = [lambda_num(0, t / 2.0, 1.0) for t in range(0, 21)]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_series_evaluation_tracks_numerics():
    # truncated series at small x should approximate the closed numeric form
    s = def_series(Family.LAM0, order=32).eval_t(Fraction(3, 2))
    x = 0.125
    series_val = sum(float(c) * x ** k for k, c in enumerate(s.coeffs))
    assert abs(series_val - lambda_num(0, 1.5, x)) < 1e-14


# ---------------------------------------------------------- fault-hook plumbing


def test_fault_hook_perturbs_definition_route(monkeypatch):
    monkeypatch.setenv("FIBINTERP_FAULT_DEF_SERIES", "Phi0:3")
    bad = def_series(Family.PHI0, order=8)
    monkeypatch.delenv("FIBINTERP_FAULT_DEF_SERIES")
    good = def_series(Family.PHI0, order=8)
    assert bad != good
    assert bad.coeff(3) == good.coeff(3) + UniPoly.one("t")
    assert closed_series(Family.PHI0, order=8) == good


def test_fault_hook_visible_through_cli_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "fibinterp", "verify-builtin", "--order", "8"],
        capture_output=True, text=True,
        env={"PATH": "/usr/bin:/bin", "FIBINTERP_FAULT_DEF_SERIES": "Lam0:2"})
    assert proc.returncode == 1
    assert "oracle Lam0" in proc.stdout and "FAIL" in proc.stdout


# ------------------------------------------------- the deliberately naive rule


def test_unhalved_alpha_rule_disagrees_with_true_expansion():
    # the tempting coefficient rule without the halved argument: at n = 1 it
    # yields t, while the verified expansion has t/2
    naive = alpha_coeff_unhalved(1)
    true = def_series(Family.ALPHA_T, order=4).coeff(1)
    assert naive == T
    assert true == T / 2
    assert naive != true
    assert naive(Fraction(1)) == 1 and true(Fraction(1)) == Fraction(1, 2)


def test_str_rendering_of_series():
    s = def_series(Family.PHI0, order=6)
    text = str(s)
    assert "O(x^6)" in text
    assert poly_str(s.coeff(3), descending=True) == "t^3/48 - t/12"
