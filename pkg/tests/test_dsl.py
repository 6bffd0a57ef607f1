"""Identity language: lexer, parser, pretty printer, and the exact/numeric
checkers that consume parsed identities."""

import pytest

from fibinterp.dsl import (
    BUILTIN_IDENTITIES,
    Add,
    EmbedError,
    FibCall,
    IdentityAst,
    LambdaCall,
    LexError,
    Mul,
    Neg,
    NonAffineArgError,
    Num,
    ParityRangeError,
    ParseError,
    PhiCall,
    Pow,
    SqrtDisc,
    Sub,
    VarT,
    VarX,
    check_exact,
    check_numeric,
    eval_num,
    eval_series,
    parse,
    pretty,
    tokenize,
)
from fibinterp.interpolants import Family, def_series, phi_num
from fibinterp.sampling import DEFAULT_SEED

F = __import__("fractions").Fraction


# ---------------------------------------------------------------------- lexer


def test_tokenize_kinds_and_offsets():
    toks = tokenize("Phi(0, t+2)")
    kinds = [t.kind for t in toks]
    assert kinds == ["name", "lparen", "number", "comma", "name", "plus",
                     "number", "rparen"]
    offsets = [t.offset for t in toks]
    assert offsets == sorted(offsets)
    assert offsets[0] == 0 and toks[-1].offset == 10


def test_tokenize_rejects_stray_character():
    with pytest.raises(LexError) as exc:
        tokenize("Phi(0,t) @ 1")
    assert exc.value.offset == 9
    assert "offset 9" in str(exc.value)


def test_tokenize_single_equals_is_flagged():
    with pytest.raises(LexError) as exc:
        tokenize("x = 1")
    assert "==" in str(exc.value)
    assert exc.value.offset == 2


# --------------------------------------------------------------------- parser


def test_parse_neighbor_sum_shape():
    ast = parse("Lambda(0,t) == Phi(1,t-1) + Phi(1,t+1)")
    assert ast == IdentityAst(
        LambdaCall(0, F(1), F(0)),
        Add(PhiCall(1, F(1), F(-1)), PhiCall(1, F(1), F(1))))


def test_parse_recurrence_shape():
    ast = parse("Phi(0,t+2) == x*Phi(1,t+1) + Phi(0,t)")
    assert ast == IdentityAst(
        PhiCall(0, F(1), F(2)),
        Add(Mul(VarX(), PhiCall(1, F(1), F(1))), PhiCall(0, F(1), F(0))))


def test_parse_affine_forms():
    assert parse("Phi(0,2*t) == t").left == PhiCall(0, F(2), F(0))
    assert parse("Phi(1,2*t+1) == t").left == PhiCall(1, F(2), F(1))
    assert parse("Phi(1,3) == t").left == PhiCall(1, F(0), F(3))
    assert parse("Phi(0,t-4) == t").left == PhiCall(0, F(1), F(-4))


def test_parse_precedence_unary_minus_then_pow():
    # unary minus binds tighter than ^, so -x^2 squares the negation
    ast = parse("-x^2 == t")
    assert ast.left == Pow(Neg(VarX()), 2)
    flat = parse("0 - x^2 == t")
    assert flat.left == Sub(Num(F(0)), Pow(VarX(), 2))


def test_parse_pow_exponent_must_be_integer():
    with pytest.raises(ParseError):
        parse("x^t == 1")
    with pytest.raises(LexError):
        parse("x^(1/2) == 1")  # no division in the grammar at all


def test_parse_parity_out_of_range():
    with pytest.raises(ParityRangeError) as exc:
        parse("Phi(3,t) == t")
    assert exc.value.offset == 4


def test_parse_non_affine_argument():
    with pytest.raises(NonAffineArgError) as exc:
        parse("Phi(0,t*t) == t")
    assert 0 <= exc.value.offset <= len("Phi(0,t*t) == t")
    with pytest.raises(NonAffineArgError):
        parse("Lambda(1,t^2) == t")


def test_parse_requires_single_equality():
    with pytest.raises(ParseError):
        parse("Phi(0,t)")
    with pytest.raises(ParseError):
        parse("1 == 2 == 3")


def test_parse_trailing_garbage():
    with pytest.raises(ParseError) as exc:
        parse("x == 1 )")
    assert 0 <= exc.value.offset <= 8


def test_parse_fib_lucas_and_sqrtdisc():
    ast = parse("Lambda(1,4) == F(4)*S")
    assert ast.right == Mul(FibCall(4), SqrtDisc())
    assert parse("S^2 == x^2 + 4").left == Pow(SqrtDisc(), 2)


MALFORMED = [
    "Phi(0,t", "F(-1) == 1", "== x", "Phi(,t) == 1", "Lambda(0,) == 1",
    "x + == 1", "Phi(0 t) == 1", "2t == 1", "x ^^ 2 == 1",
]


@pytest.mark.parametrize("text", MALFORMED)
def test_malformed_inputs_give_positioned_errors(text):
    with pytest.raises((LexError, ParseError)) as exc:
        parse(text)
    assert 0 <= exc.value.offset <= len(text)
    assert "offset" in str(exc.value)


# ------------------------------------------------------------- pretty printer


@pytest.mark.parametrize("label,text", BUILTIN_IDENTITIES)
def test_pretty_round_trip_builtins(label, text):
    ast = parse(text)
    assert parse(pretty(ast)) == ast


@pytest.mark.parametrize("text", [
    "-x^2 == t", "0 - x^2 == t", "x*(t + 1) == t", "(x + 1)*t == t",
    "Phi(0,2*t+1) == t", "x - (t - 1) == t", "-(x^2 + 4) == t",
])
def test_pretty_round_trip_tricky_shapes(text):
    ast = parse(text)
    assert parse(pretty(ast)) == ast


# ----------------------------------------------------------- series evaluation


def test_eval_series_passthrough_for_plain_phi():
    ast = parse("Phi(0,t) == t").left
    assert eval_series(ast, 16) == def_series(Family.PHI0, order=16)


def test_eval_series_affine_scaling():
    ast = parse("Phi(0,2*t) == t").left
    doubled = def_series(Family.PHI0, order=12).substitute_t(F(2), F(0))
    assert eval_series(ast, 12) == doubled


def test_eval_series_embeds_integer_polynomials():
    from fibinterp.exactcore import UniPoly
    ast = parse("F(4) == t").left
    s = eval_series(ast, 8)
    assert s.coeff(1) == UniPoly.const("t", 2)
    assert s.coeff(3) == UniPoly.const("t", 1)


def test_eval_series_embed_error_for_high_degree():
    ast = parse("F(40) == t").left
    with pytest.raises(EmbedError):
        eval_series(ast, 32)


def test_eval_num_matches_interpolant_routes():
    ast = parse("Phi(0,t) == t").left
    assert eval_num(ast, 1.25, 0.75) == phi_num(0, 1.25, 0.75)


# ------------------------------------------------------------- exact checking


def test_check_exact_passes_neighbor_sum():
    report = check_exact(parse("Lambda(0,t) == Phi(1,t-1) + Phi(1,t+1)"))
    assert report.passed
    assert report.mismatch_power is None
    assert "modulo x^32" in report.detail()


def test_check_exact_finds_first_mismatch():
    report = check_exact(parse("Lambda(0,t) == Lambda(1,t)"))
    assert not report.passed
    assert report.mismatch_power == 0
    assert "x^0" in report.detail()


def test_check_exact_wrong_parity_fails_early():
    # corrupted neighbor-sum: same-parity terms on the right
    report = check_exact(parse("Lambda(0,t) == Phi(0,t-1) + Phi(0,t+1)"))
    assert not report.passed
    assert report.mismatch_power is not None and report.mismatch_power <= 4


@pytest.mark.parametrize("label,text", BUILTIN_IDENTITIES)
def test_check_exact_all_builtins(label, text):
    assert check_exact(parse(text), order=16).passed, label


# ----------------------------------------------------------- numeric checking


def test_check_numeric_passes_recurrence():
    report = check_numeric(
        parse("Phi(0,t+2) == x*Phi(1,t+1) + Phi(0,t)"),
        samples=100, seed=DEFAULT_SEED, tol=1e-9)
    assert report.passed
    assert report.samples == 100
    assert report.max_residual <= 1e-9
    assert "100 samples" in report.detail()


def test_check_numeric_rejects_flipped_sign():
    report = check_numeric(
        parse("Phi(0,t+2) == x*Phi(1,t+1) - Phi(0,t)"),
        samples=60, seed=DEFAULT_SEED, tol=1e-9)
    assert not report.passed
    assert report.max_residual > 1e-3


def test_check_numeric_is_deterministic():
    ident = parse("Lambda(0,2*t) == Lambda(0,t)^2 - 2")
    a = check_numeric(ident, samples=50, seed=123, tol=1e-9)
    b = check_numeric(ident, samples=50, seed=123, tol=1e-9)
    assert a.max_residual == b.max_residual
    c = check_numeric(ident, samples=50, seed=124, tol=1e-9)
    assert c.passed and c.max_residual != a.max_residual


@pytest.mark.parametrize("label,text", BUILTIN_IDENTITIES)
def test_exact_and_numeric_agree_on_builtins(label, text):
    ident = parse(text)
    exact = check_exact(ident, order=16)
    numeric = check_numeric(ident, samples=40, seed=DEFAULT_SEED, tol=1e-9)
    assert exact.passed == numeric.passed == True, label  # noqa: E712


def test_exact_and_numeric_agree_on_mutations():
    mutated = [
        "Lambda(0,t) == Phi(0,t-1) + Phi(0,t+1)",
        "Phi(0,t+1)*Phi(0,t-1) - Phi(1,t)^2 == 1",
        "Lambda(0,2*t) == Lambda(0,t)^2 + 2",
    ]
    for text in mutated:
        ident = parse(text)
        assert not check_exact(ident, order=16).passed, text
        assert not check_numeric(
            ident, samples=40, seed=DEFAULT_SEED, tol=1e-9).passed, text


def test_builtin_catalogue_size_and_labels():
    assert len(BUILTIN_IDENTITIES) == 39
    labels = [label for label, _ in BUILTIN_IDENTITIES]
    assert len(set(labels)) == len(labels)
    for _, text in BUILTIN_IDENTITIES:
        parse(text)  # every entry must be well-formed
