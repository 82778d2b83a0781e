"""
Parser for the operator DSL.

    euler: i*theta^2 + (3/2)*theta
    hardy: 1 + 2/(n+1)^2
    seq: [1, 0.5, 0.25]
    euler: theta + euler: 1/2

Every literal is read exactly (``Fraction`` and ``ExactScalar``); arithmetic
inside a term is carried out on Laurent polynomials with exact coefficients,
in theta for Euler terms and in w = n+1 for Hardy terms.
"""
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, NamedTuple, Optional, Tuple, Union

import numpy as np

from core.exceptions import ParseError, VariantMismatch
from models.scalars import ExactScalar
from models.symbols import EulerPoly, Explicit, HardyRational, MultiplierSymbol
from services.symbols import symbol_add

TOKEN_SPEC = [
    ("KEYWORD", r"(?:euler|hardy|seq)\s*:"),
    ("NUMBER", r"(?:\d+\.\d*|\.\d+|\d+)(?:[eE][-+]?\d+)?"),
    ("NAME", r"[A-Za-z_]\w*"),
    ("POW", r"\*\*|\^"),
    ("OP", r"[-+*/(),\[\]]"),
    ("SPACE", r"\s+"),
    ("MISMATCH", r"."),
]
TOKEN_RE = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in TOKEN_SPEC))


class Token(NamedTuple):
    type: str
    value: str
    where: int


def tokenize(src: str) -> List[Token]:
    tokens = []
    for match in TOKEN_RE.finditer(src):
        kind = match.lastgroup
        value = match.group()
        if kind == "SPACE":
            continue
        if kind == "MISMATCH":
            raise ParseError(f"unexpected character {value!r}", match.start())
        if kind == "KEYWORD":
            value = value.rstrip(": \t\n")
        tokens.append(Token(kind, value, match.start()))
    tokens.append(Token("END", "", len(src)))
    return tokens


class LaurentPoly:
    """
    Finite sum of c_k X^k with exact coefficients and integer k.
    """

    def __init__(self, terms: Optional[Dict[int, ExactScalar]] = None):
        self.terms = {k: v for k, v in (terms or {}).items() if not v.is_zero()}

    @classmethod
    def const(cls, c: ExactScalar) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def var(cls) -> "LaurentPoly":
        return cls({1: ExactScalar.of(1)})

    def is_constant(self) -> bool:
        return all(k == 0 for k in self.terms)

    def constant(self) -> ExactScalar:
        return self.terms.get(0, ExactScalar())

    def monomial(self) -> Optional[Tuple[int, ExactScalar]]:
        if len(self.terms) == 1:
            return next(iter(self.terms.items()))
        return None

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ExactScalar()) + v
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: Dict[int, ExactScalar] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                out[k1 + k2] = out.get(k1 + k2, ExactScalar()) + v1 * v2
        return LaurentPoly(out)

    def inverse(self) -> Optional["LaurentPoly"]:
        mono = self.monomial()
        if mono is None:
            return None
        k, c = mono
        return LaurentPoly({-k: c.inverse()})


@dataclass(frozen=True)
class SymbolTerm:
    """
    One ``euler:``, ``hardy:`` or ``seq:`` term.
    """
    symbol: MultiplierSymbol
    position: int


@dataclass(frozen=True)
class SumExpr:
    terms: Tuple[SymbolTerm, ...]


OperatorExpr = Union[SymbolTerm, SumExpr]


class Parser:
    """
    Recursive-descent parser over the token stream of one source string.
    """

    def __init__(self, src: str):
        self.src = src
        self.tokens = tokenize(src)
        self.pos = 0
        self.mode = ""

    @property
    def token(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.token
        if tok.type != "END":
            self.pos += 1
        return tok

    def expect(self, value: str) -> Token:
        tok = self.token
        if tok.value != value or tok.type not in ("OP", "POW"):
            raise ParseError(f"expected {value!r}, found {tok.value or 'end of input'!r}", tok.where)
        return self.advance()

    # operator := term { "+" term }
    def parse(self) -> OperatorExpr:
        if not self.src.strip():
            raise ParseError("empty operator", 0)
        terms = [self.parse_term()]
        while self.token.type == "OP" and self.token.value == "+":
            self.advance()
            terms.append(self.parse_term())
        if self.token.type != "END":
            raise ParseError(f"unexpected {self.token.value!r}", self.token.where)
        if len(terms) == 1:
            return terms[0]
        first = type(terms[0].symbol)
        for term in terms[1:]:
            if type(term.symbol) is not first:
                raise VariantMismatch(
                    f"cannot add {first.__name__} and {type(term.symbol).__name__} terms (position {term.position})"
                )
        return SumExpr(tuple(terms))

    def parse_term(self) -> SymbolTerm:
        tok = self.token
        if tok.type != "KEYWORD":
            raise ParseError("expected 'euler:', 'hardy:' or 'seq:'", tok.where)
        self.advance()
        self.mode = tok.value
        if tok.value == "seq":
            return SymbolTerm(self.parse_list(), tok.where)
        value = self.parse_expr()
        if tok.value == "euler":
            return SymbolTerm(self._to_euler(value, tok.where), tok.where)
        return SymbolTerm(self._to_hardy(value, tok.where), tok.where)

    def parse_list(self) -> Explicit:
        self.expect("[")
        values = [self._constant(self.parse_expr())]
        while self.token.value == ",":
            self.advance()
            values.append(self._constant(self.parse_expr()))
        self.expect("]")
        return Explicit(np.array([complex(v) for v in values], dtype=np.complex128))

    def _constant(self, value: LaurentPoly) -> ExactScalar:
        if not value.is_constant():
            raise ParseError("sequence entries must be constants", self.token.where)
        return value.constant()

    # expr := product { ("+"|"-") product }, stopping before "+ <keyword>:"
    def parse_expr(self) -> LaurentPoly:
        value = self.parse_product()
        while self.token.type == "OP" and self.token.value in "+-":
            if self.token.value == "+" and self.peek().type == "KEYWORD":
                break
            op = self.advance().value
            rhs = self.parse_product()
            value = value + rhs if op == "+" else value - rhs
        return value

    # product := unary { ("*"|"/") unary }
    def parse_product(self) -> LaurentPoly:
        value = self.parse_unary()
        while self.token.type == "OP" and self.token.value in "*/":
            op = self.advance()
            rhs = self.parse_unary()
            if op.value == "*":
                value = value * rhs
            else:
                inv = rhs.inverse()
                if inv is None:
                    raise ParseError("division is only defined by a single nonzero term", op.where)
                value = value * inv
        return value

    # unary := ("-"|"+") unary | power
    def parse_unary(self) -> LaurentPoly:
        if self.token.type == "OP" and self.token.value in "+-":
            op = self.advance().value
            value = self.parse_unary()
            return -value if op == "-" else value
        return self.parse_power()

    # power := atom [ "^" unary ]
    def parse_power(self) -> LaurentPoly:
        base = self.parse_atom()
        if self.token.type == "POW":
            op = self.advance()
            exponent = self.parse_unary()
            k = self._integer_exponent(exponent, op.where)
            if k < 0:
                inv = base.inverse()
                if inv is None:
                    raise ParseError("negative powers need a single nonzero term", op.where)
                base, k = inv, -k
            result = LaurentPoly.const(ExactScalar.of(1))
            for _ in range(k):
                result = result * base
            return result
        return base

    @staticmethod
    def _integer_exponent(value: LaurentPoly, where: int) -> int:
        c = value.constant()
        if not value.is_constant() or not c.is_real() or c.re_surd != 0 or c.re_rat.denominator != 1:
            raise ParseError("exponents must be integer literals", where)
        return int(c.re_rat)

    def parse_atom(self) -> LaurentPoly:
        tok = self.token
        if tok.type == "NUMBER":
            self.advance()
            return LaurentPoly.const(ExactScalar.of(Fraction(tok.value)))
        if tok.type == "NAME":
            self.advance()
            return self._name(tok)
        if tok.type == "OP" and tok.value == "(":
            self.advance()
            value = self.parse_expr()
            self.expect(")")
            return value
        raise ParseError(f"unexpected {tok.value or 'end of input'!r}", tok.where)

    def _name(self, tok: Token) -> LaurentPoly:
        name = tok.value
        if name == "i":
            return LaurentPoly.const(ExactScalar.imag_unit())
        if name == "sqrt":
            self.expect("(")
            arg = self.token
            if arg.type != "NUMBER" or not arg.value.isdigit():
                raise ParseError("sqrt takes a nonnegative integer literal", arg.where)
            self.advance()
            self.expect(")")
            return LaurentPoly.const(ExactScalar.sqrt(int(arg.value)))
        if name == "theta" and self.mode == "euler":
            return LaurentPoly.var()
        if name == "n" and self.mode == "hardy":
            # n = w - 1 with w = n + 1
            return LaurentPoly({1: ExactScalar.of(1), 0: ExactScalar.of(-1)})
        raise ParseError(f"unknown name {name!r} in {self.mode or 'operator'} term", tok.where)

    @staticmethod
    def _to_euler(value: LaurentPoly, where: int) -> EulerPoly:
        if any(k < 0 for k in value.terms):
            raise ParseError("Euler terms must be polynomials in theta", where)
        degree = max(value.terms, default=0)
        return EulerPoly(tuple(value.terms.get(k, ExactScalar()) for k in range(degree + 1)))

    @staticmethod
    def _to_hardy(value: LaurentPoly, where: int) -> HardyRational:
        if any(k > 0 for k in value.terms):
            raise ParseError("Hardy terms must be polynomials in 1/(n+1)", where)
        degree = -min(value.terms, default=0)
        return HardyRational(tuple(value.terms.get(-k, ExactScalar()) for k in range(degree + 1)))


def parse_operator(src: str) -> OperatorExpr:
    try:
        return Parser(src).parse()
    except ZeroDivisionError:
        raise ParseError("division by zero", 0)


def iter_terms(expr: OperatorExpr) -> Iterator[SymbolTerm]:
    if isinstance(expr, SumExpr):
        yield from expr.terms
    else:
        yield expr


def to_symbol(expr: OperatorExpr) -> MultiplierSymbol:
    """
    Fold an operator expression into one multiplier symbol.
    """
    terms = list(iter_terms(expr))
    symbol = terms[0].symbol
    for term in terms[1:]:
        symbol = symbol_add(symbol, term.symbol)
    return symbol


def parse_symbol(src: str) -> MultiplierSymbol:
    return to_symbol(parse_operator(src))
