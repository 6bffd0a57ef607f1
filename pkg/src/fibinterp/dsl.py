"""A small language for two-sided identities over the interpolation families.

An identity is one line of the form  expr == expr  where expressions are
built from integer literals, t, x, S (the square root of x^2 + 4),
Phi(j, affine-t), Lambda(j, affine-t), F(n), L(n), and the operators
+ - * ^ with explicit multiplication. Every identity can be judged two
ways: exactly, as truncated series over polynomials in t, and
numerically, by seeded random sampling of (t, x).

Precedence, tightest first: unary minus, ^, *, binary + and -. Note the
consequence that "-x^2" squares the negation; write "0 - x^2" or
"-(x^2)" for a negated square (the builtin set does).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .classical import fib_poly, lucas_poly
from .exactcore import Rational, UniPoly
from .interpolants import Family, def_series, disc_sqrt_series, lambda_num, phi_num
from .sampling import DEFAULT_SEED, SplitMix64, sample_tx
from .series import DEFAULT_ORDER, POLY_T, TruncSeries, from_poly


class LexError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class ParityRangeError(ParseError):
    """Parity literal outside {0, 1}."""


class NonAffineArgError(ParseError):
    """Phi/Lambda t-argument is not of the form a*t + b."""


class EmbedError(ValueError):
    """A requested F_n/L_n polynomial does not fit the truncation window."""


# -- tokens -------------------------------------------------------------------

_SYMBOLS = {"+": "plus", "-": "minus", "*": "star", "^": "caret",
            "(": "lparen", ")": "rparen", ",": "comma"}


@dataclass(frozen=True, slots=True)
class Token:
    kind: str
    text: str
    offset: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("number", text[i:j], i))
            i = j
            continue
        if c.isalpha():
            j = i
            while j < n and text[j].isalpha():
                j += 1
            tokens.append(Token("name", text[i:j], i))
            i = j
            continue
        if c == "=":
            if text[i:i + 2] == "==":
                tokens.append(Token("eqeq", "==", i))
                i += 2
                continue
            raise LexError("single '=' (did you mean '==')", i)
        if c in _SYMBOLS:
            tokens.append(Token(_SYMBOLS[c], c, i))
            i += 1
            continue
        raise LexError(f"invalid character {c!r}", i)
    return tokens


# -- syntax trees -------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Num:
    value: Rational


@dataclass(frozen=True, slots=True)
class VarT:
    pass


@dataclass(frozen=True, slots=True)
class VarX:
    pass


@dataclass(frozen=True, slots=True)
class SqrtDisc:
    pass


@dataclass(frozen=True, slots=True)
class PhiCall:
    j: int
    a: int
    b: int


@dataclass(frozen=True, slots=True)
class LambdaCall:
    j: int
    a: int
    b: int


@dataclass(frozen=True, slots=True)
class FibCall:
    n: int


@dataclass(frozen=True, slots=True)
class LucasCall:
    n: int


@dataclass(frozen=True, slots=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True, slots=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True, slots=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True, slots=True)
class Neg:
    operand: object


@dataclass(frozen=True, slots=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True, slots=True)
class IdentityAst:
    left: object
    right: object


# -- parser -------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    def _peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self) -> Token | None:
        tok = self._peek()
        if tok is not None:
            self.pos += 1
        return tok

    def _at_end_offset(self) -> int:
        return len(self.text)

    def _expect(self, kind: str, what: str) -> Token:
        tok = self._next()
        if tok is None:
            raise ParseError(f"expected {what}, found end of input",
                             self._at_end_offset())
        if tok.kind != kind:
            raise ParseError(f"expected {what}, found {tok.text!r}", tok.offset)
        return tok

    def identity(self) -> IdentityAst:
        left = self.expr()
        self._expect("eqeq", "'=='")
        right = self.expr()
        trailing = self._peek()
        if trailing is not None:
            raise ParseError(f"unexpected {trailing.text!r} after the identity",
                             trailing.offset)
        return IdentityAst(left, right)

    def expr(self):
        node = self.term()
        while True:
            tok = self._peek()
            if tok is None or tok.kind not in ("plus", "minus"):
                return node
            self._next()
            rhs = self.term()
            node = Add(node, rhs) if tok.kind == "plus" else Sub(node, rhs)

    def term(self):
        node = self.factor()
        while True:
            tok = self._peek()
            if tok is None or tok.kind != "star":
                return node
            self._next()
            node = Mul(node, self.factor())

    def factor(self):
        tok = self._peek()
        negate = tok is not None and tok.kind == "minus"
        if negate:
            self._next()
        node = self.base()
        if negate:
            node = Neg(node)  # unary minus binds tighter than ^
        tok = self._peek()
        if tok is not None and tok.kind == "caret":
            self._next()
            exp = self._expect("number", "an integer exponent")
            node = Pow(node, int(exp.text))
        return node

    def base(self):
        tok = self._next()
        if tok is None:
            raise ParseError("expected an expression, found end of input",
                             self._at_end_offset())
        if tok.kind == "number":
            return Num(Rational(int(tok.text)))
        if tok.kind == "lparen":
            node = self.expr()
            self._expect("rparen", "')'")
            return node
        if tok.kind == "name":
            if tok.text == "t":
                return VarT()
            if tok.text == "x":
                return VarX()
            if tok.text == "S":
                return SqrtDisc()
            if tok.text in ("Phi", "Lambda"):
                return self.call(tok.text)
            if tok.text in ("F", "L"):
                self._expect("lparen", "'('")
                num = self._expect("number", "an index")
                self._expect("rparen", "')'")
                n = int(num.text)
                return FibCall(n) if tok.text == "F" else LucasCall(n)
            raise ParseError(f"unknown name {tok.text!r}", tok.offset)
        raise ParseError(f"expected an expression, found {tok.text!r}",
                         tok.offset)

    def call(self, which: str):
        self._expect("lparen", "'('")
        parity = self._expect("number", "a parity literal 0 or 1")
        j = int(parity.text)
        if j not in (0, 1):
            raise ParityRangeError(f"parity must be 0 or 1, got {j}",
                                   parity.offset)
        self._expect("comma", "','")
        a, b = self.affine()
        closing = self._peek()
        if closing is None:
            raise ParseError("expected ')', found end of input",
                             self._at_end_offset())
        if closing.kind != "rparen":
            raise NonAffineArgError(
                f"argument must be affine in t; found {closing.text!r}",
                closing.offset)
        self._next()
        node_type = PhiCall if which == "Phi" else LambdaCall
        return node_type(j, a, b)

    def affine(self) -> tuple[int, int]:
        """[integer "*"] "t" [("+"|"-") integer] | integer -> (a, b)."""
        tok = self._next()
        if tok is None:
            raise NonAffineArgError("expected a t-argument, found end of input",
                                    self._at_end_offset())
        a = None
        if tok.kind == "number":
            nxt = self._peek()
            if nxt is None or nxt.kind != "star":
                return 0, int(tok.text)  # constant argument
            self._next()
            a = int(tok.text)
            tok = self._next()
            if tok is None:
                raise NonAffineArgError("expected 't', found end of input",
                                        self._at_end_offset())
        if tok.kind != "name" or tok.text != "t":
            raise NonAffineArgError(
                f"argument must be affine in t; found {tok.text!r}", tok.offset)
        if a is None:
            a = 1
        nxt = self._peek()
        if nxt is not None and nxt.kind in ("plus", "minus"):
            self._next()
            num = self._peek()
            if num is None or num.kind != "number":
                where = num.offset if num is not None else self._at_end_offset()
                raise NonAffineArgError(
                    "the shift in a t-argument must be an integer", where)
            self._next()
            b = int(num.text) if nxt.kind == "plus" else -int(num.text)
            return a, b
        return a, 0


def parse(text: str) -> IdentityAst:
    """Parse one identity line; errors carry the byte offset of the fault."""
    return _Parser(text).identity()


# -- pretty printer -----------------------------------------------------------

_LEVEL_ADD, _LEVEL_MUL, _LEVEL_NEG, _LEVEL_POW, _LEVEL_ATOM = 1, 2, 3, 4, 5


def _affine_str(a: int, b: int) -> str:
    if a == 0:
        return str(b)
    head = "t" if a == 1 else f"{a}*t"
    if b > 0:
        return f"{head}+{b}"
    if b < 0:
        return f"{head}-{-b}"
    return head


def _render(node, floor: int) -> str:
    if isinstance(node, Num):
        body, level = str(node.value), _LEVEL_ATOM
    elif isinstance(node, VarT):
        body, level = "t", _LEVEL_ATOM
    elif isinstance(node, VarX):
        body, level = "x", _LEVEL_ATOM
    elif isinstance(node, SqrtDisc):
        body, level = "S", _LEVEL_ATOM
    elif isinstance(node, PhiCall):
        body, level = f"Phi({node.j},{_affine_str(node.a, node.b)})", _LEVEL_ATOM
    elif isinstance(node, LambdaCall):
        body, level = f"Lambda({node.j},{_affine_str(node.a, node.b)})", _LEVEL_ATOM
    elif isinstance(node, FibCall):
        body, level = f"F({node.n})", _LEVEL_ATOM
    elif isinstance(node, LucasCall):
        body, level = f"L({node.n})", _LEVEL_ATOM
    elif isinstance(node, Pow):
        if isinstance(node.base, Neg):
            inner = "-" + _render(node.base.operand, _LEVEL_ATOM)
        else:
            inner = _render(node.base, _LEVEL_ATOM)
        body, level = f"{inner}^{node.exponent}", _LEVEL_POW
    elif isinstance(node, Neg):
        body, level = "-" + _render(node.operand, _LEVEL_ATOM), _LEVEL_NEG
    elif isinstance(node, Mul):
        body = f"{_render(node.left, _LEVEL_MUL)}*{_render(node.right, _LEVEL_NEG)}"
        level = _LEVEL_MUL
    elif isinstance(node, (Add, Sub)):
        op = " + " if isinstance(node, Add) else " - "
        body = _render(node.left, _LEVEL_ADD) + op + _render(node.right, _LEVEL_MUL)
        level = _LEVEL_ADD
    else:
        raise TypeError(f"not an expression node: {node!r}")
    return f"({body})" if level < floor else body


def pretty(ast: IdentityAst) -> str:
    """Render an identity so that parsing it again gives an equal tree."""
    return f"{_render(ast.left, _LEVEL_ADD)} == {_render(ast.right, _LEVEL_ADD)}"


# -- exact evaluator ----------------------------------------------------------

def eval_series(node, order: int) -> TruncSeries:
    """Evaluate one side as a series over polynomials in t."""
    if isinstance(node, Num):
        return TruncSeries.const(node.value, order, POLY_T)
    if isinstance(node, VarT):
        return TruncSeries.const(UniPoly.variable("t"), order, POLY_T)
    if isinstance(node, VarX):
        return TruncSeries.x(order, POLY_T)
    if isinstance(node, SqrtDisc):
        return disc_sqrt_series(order).lift_to_t()
    if isinstance(node, (PhiCall, LambdaCall)):
        pair = (Family.PHI0, Family.PHI1) if isinstance(node, PhiCall) \
            else (Family.LAM0, Family.LAM1)
        base = def_series(pair[node.j], order)
        if (node.a, node.b) == (1, 0):
            return base
        return base.substitute_t(node.a, node.b)
    if isinstance(node, (FibCall, LucasCall)):
        poly = fib_poly(node.n) if isinstance(node, FibCall) else lucas_poly(node.n)
        if poly.degree is not None and poly.degree >= order:
            raise EmbedError(
                f"degree-{poly.degree} polynomial needs order > {poly.degree}, "
                f"have {order}")
        return from_poly(poly, order).lift_to_t()
    if isinstance(node, Add):
        return eval_series(node.left, order) + eval_series(node.right, order)
    if isinstance(node, Sub):
        return eval_series(node.left, order) - eval_series(node.right, order)
    if isinstance(node, Mul):
        return eval_series(node.left, order) * eval_series(node.right, order)
    if isinstance(node, Neg):
        return -eval_series(node.operand, order)
    if isinstance(node, Pow):
        return eval_series(node.base, order) ** node.exponent
    raise TypeError(f"not an expression node: {node!r}")


# -- numeric evaluator --------------------------------------------------------

def eval_num(node, t: float, x: float) -> float:
    if isinstance(node, Num):
        return float(node.value)
    if isinstance(node, VarT):
        return t
    if isinstance(node, VarX):
        return x
    if isinstance(node, SqrtDisc):
        return math.hypot(x, 2.0)
    if isinstance(node, PhiCall):
        return phi_num(node.j, node.a * t + node.b, x)
    if isinstance(node, LambdaCall):
        return lambda_num(node.j, node.a * t + node.b, x)
    if isinstance(node, FibCall):
        return float(fib_poly(node.n)(x))
    if isinstance(node, LucasCall):
        return float(lucas_poly(node.n)(x))
    if isinstance(node, Add):
        return eval_num(node.left, t, x) + eval_num(node.right, t, x)
    if isinstance(node, Sub):
        return eval_num(node.left, t, x) - eval_num(node.right, t, x)
    if isinstance(node, Mul):
        return eval_num(node.left, t, x) * eval_num(node.right, t, x)
    if isinstance(node, Neg):
        return -eval_num(node.operand, t, x)
    if isinstance(node, Pow):
        return eval_num(node.base, t, x) ** node.exponent
    raise TypeError(f"not an expression node: {node!r}")


# -- the two verification judgments -------------------------------------------

@dataclass(frozen=True)
class ExactReport:
    """Outcome of a series comparison; a pass is a proof modulo x^order."""
    passed: bool
    order: int
    mismatch_power: int | None = None
    left_coeff: UniPoly | None = None
    right_coeff: UniPoly | None = None

    def detail(self) -> str:
        if self.passed:
            return f"verified modulo x^{self.order}"
        return (f"first mismatch at x^{self.mismatch_power}: "
                f"{self.left_coeff} vs {self.right_coeff}")


@dataclass(frozen=True)
class NumericReport:
    passed: bool
    max_residual: float
    samples: int
    skipped: int
    tol: float

    def detail(self) -> str:
        tail = f" ({self.skipped} samples skipped)" if self.skipped else ""
        return f"max residual {self.max_residual:.3e} over {self.samples} samples{tail}"


def check_exact(identity: IdentityAst, order: int = DEFAULT_ORDER) -> ExactReport:
    """Exact comparison of both sides as series over polynomials in t."""
    left = eval_series(identity.left, order)
    right = eval_series(identity.right, order)
    for m in range(order):
        if left.coeffs[m] != right.coeffs[m]:
            return ExactReport(False, order, m, left.coeffs[m], right.coeffs[m])
    return ExactReport(True, order)


def check_numeric(identity: IdentityAst, samples: int = 100,
                  seed: int = DEFAULT_SEED, tol: float = 1e-9) -> NumericReport:
    """Sampled floating-point comparison with a per-identity fresh generator."""
    if samples < 1:
        raise ValueError("need at least one sample")
    rng = SplitMix64(seed)
    worst = 0.0
    used = skipped = 0
    for _ in range(samples):
        t, x = sample_tx(rng)
        lhs = eval_num(identity.left, t, x)
        rhs = eval_num(identity.right, t, x)
        if not (math.isfinite(lhs) and math.isfinite(rhs)):
            skipped += 1
            continue
        used += 1
        residual = abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))
        worst = max(worst, residual)
    return NumericReport(worst <= tol and used > 0, worst, used, skipped, tol)


# Every named relation of the underlying theory, both parity
# instantiations, plus the concrete mixed-parity cases that glue the two
# parities together. Doubles as the round-trip corpus for the printer.
BUILTIN_IDENTITIES: tuple[tuple[str, str], ...] = (
    ("neighbor-sum j=0", "Lambda(0,t) == Phi(1,t-1) + Phi(1,t+1)"),
    ("neighbor-sum j=1", "Lambda(1,t) == Phi(0,t-1) + Phi(0,t+1)"),
    ("recurrence phi j=0", "Phi(0,t+2) == x*Phi(1,t+1) + Phi(0,t)"),
    ("recurrence phi j=1", "Phi(1,t+2) == x*Phi(0,t+1) + Phi(1,t)"),
    ("recurrence lam j=0", "Lambda(0,t+2) == x*Lambda(1,t+1) + Lambda(0,t)"),
    ("recurrence lam j=1", "Lambda(1,t+2) == x*Lambda(0,t+1) + Lambda(1,t)"),
    ("cassini-cross phi j=0", "Phi(0,t+1)*Phi(0,t-1) - Phi(1,t)^2 == 0 - 1"),
    ("cassini-cross phi j=1", "Phi(1,t+1)*Phi(1,t-1) - Phi(0,t)^2 == 1"),
    ("cassini-cross lam j=0",
     "Lambda(0,t+1)*Lambda(0,t-1) - Lambda(1,t)^2 == x^2 + 4"),
    ("cassini-cross lam j=1",
     "Lambda(1,t+1)*Lambda(1,t-1) - Lambda(0,t)^2 == -(x^2 + 4)"),
    ("cassini-same phi j=0",
     "(Phi(0,t+1)*Phi(0,t-1) - Phi(0,t)^2)*S^2 == 0 - x^2"),
    ("cassini-same phi j=1",
     "(Phi(1,t+1)*Phi(1,t-1) - Phi(1,t)^2)*S^2 == x^2"),
    ("cassini-same lam j=0",
     "Lambda(0,t+1)*Lambda(0,t-1) - Lambda(0,t)^2 == x^2"),
    ("cassini-same lam j=1",
     "Lambda(1,t+1)*Lambda(1,t-1) - Lambda(1,t)^2 == 0 - x^2"),
    ("doubling phi j=0", "Phi(0,2*t) == Phi(0,t)*Lambda(0,t)"),
    ("doubling lam j=0", "Lambda(0,2*t) == Lambda(0,t)^2 - 2"),
    ("doubling phi j=1", "Phi(0,2*t) == Phi(1,t)*Lambda(1,t)"),
    ("doubling lam j=1", "Lambda(0,2*t) == Lambda(1,t)^2 + 2"),
    ("root-split consistency",
     "Lambda(0,t) + S*Phi(0,t) == Lambda(1,t) + S*Phi(1,t)"),
    ("mixed-parity lam k=2", "Lambda(1,2) == F(2)*S"),
    ("mixed-parity lam k=4", "Lambda(1,4) == F(4)*S"),
    ("mixed-parity lam k=6", "Lambda(1,6) == F(6)*S"),
    ("mixed-parity lam k=8", "Lambda(1,8) == F(8)*S"),
    ("mixed-parity lam k=10", "Lambda(1,10) == F(10)*S"),
    ("mixed-parity phi k=2", "Phi(1,2)*S == L(2)"),
    ("mixed-parity phi k=4", "Phi(1,4)*S == L(4)"),
    ("mixed-parity phi k=6", "Phi(1,6)*S == L(6)"),
    ("mixed-parity phi k=8", "Phi(1,8)*S == L(8)"),
    ("mixed-parity phi k=10", "Phi(1,10)*S == L(10)"),
    ("mixed-parity lam k=3", "Lambda(0,3) == F(3)*S"),
    ("mixed-parity lam k=5", "Lambda(0,5) == F(5)*S"),
    ("mixed-parity lam k=7", "Lambda(0,7) == F(7)*S"),
    ("mixed-parity lam k=9", "Lambda(0,9) == F(9)*S"),
    ("mixed-parity lam k=11", "Lambda(0,11) == F(11)*S"),
    ("mixed-parity phi k=3", "Phi(0,3)*S == L(3)"),
    ("mixed-parity phi k=5", "Phi(0,5)*S == L(5)"),
    ("mixed-parity phi k=7", "Phi(0,7)*S == L(7)"),
    ("mixed-parity phi k=9", "Phi(0,9)*S == L(9)"),
    ("mixed-parity phi k=11", "Phi(0,11)*S == L(11)"),
)
