"""Recursive-descent parser and evaluator for complex-valued expressions.

Grammar (EBNF), over the single variable ``t``::

    input   = expr , { "," , expr }               (* commas only inside "(...)" *)
    expr    = term , { ("+" | "-") , term } ;
    term    = unary , { ("*" | "/") , unary } ;
    unary   = "-" , unary | power ;
    power   = primary , [ "^" , unary ] ;         (* right-assoc, binds tightest *)
    primary = NUMBER | IMAG | CONST | "t"
            | FUNC , "(" , expr , ")"
            | "(" , expr , { "," , expr } , ")" ;

IMAG is a numeric literal immediately followed by ``i`` (e.g. ``2i``,
``0.5i``); the bare identifier ``i`` is the imaginary unit.  CONST is
``pi`` or ``e``.  FUNC is one of sin cos exp sqrt abs conj re im.
A parenthesized comma list is a tuple and is only legal as the whole
input; it fixes the codomain dimension.

Unary minus binds below ``^``, so ``-t^2`` is ``-(t^2)`` while ``t^-2``
still parses (the exponent position accepts a unary expression, as in
Python).  Literal-only subtrees are folded at parse time, which keeps
printing (``to_text``) and re-parsing stable.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Callable, Iterator, Union

from .errors import ExpressionError

Node = Union["Num", "Var", "Neg", "BinOp", "Call", "Tup"]


@dataclass(frozen=True)
class Num:
    value: complex


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    arg: Node


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    lhs: Node
    rhs: Node


@dataclass(frozen=True)
class Call:
    fn: str
    arg: Node


@dataclass(frozen=True)
class Tup:
    items: tuple[Node, ...]


FUNCTIONS: dict[str, Callable[[complex], complex]] = {
    "sin": cmath.sin,
    "cos": cmath.cos,
    "exp": cmath.exp,
    "sqrt": cmath.sqrt,
    "abs": lambda z: complex(abs(z)),
    "conj": lambda z: complex(z).conjugate(),
    "re": lambda z: complex(complex(z).real),
    "im": lambda z: complex(complex(z).imag),
}

CONSTANTS: dict[str, complex] = {
    "pi": complex(cmath.pi),
    "e": complex(cmath.e),
    "i": 1j,
}


# ---------------------------------------------------------------------------
# tokenizer
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Token:
    kind: str  # num imag ident op lparen rparen comma eof
    text: str
    pos: int
    value: float = 0.0


def _tokenize(text: str) -> Iterator[_Token]:
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            start = i
            while i < n and (text[i].isdigit() or text[i] == "."):
                i += 1
            # exponent part: 1e-3, 2.5E+10
            if i < n and text[i] in "eE" and i + 1 < n and (
                text[i + 1].isdigit() or (text[i + 1] in "+-" and i + 2 < n and text[i + 2].isdigit())
            ):
                i += 2
                while i < n and text[i].isdigit():
                    i += 1
            lit = text[start:i]
            try:
                val = float(lit)
            except ValueError:
                raise ExpressionError(f"bad number literal {lit!r}", start) from None
            if i < n and text[i] == "i" and not (i + 1 < n and (text[i + 1].isalnum() or text[i + 1] == "_")):
                i += 1
                yield _Token("imag", lit + "i", start, val)
            else:
                yield _Token("num", lit, start, val)
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            yield _Token("ident", text[start:i], start)
            continue
        if ch in "+-*/^":
            yield _Token("op", ch, i)
            i += 1
            continue
        if ch == "(":
            yield _Token("lparen", ch, i)
            i += 1
            continue
        if ch == ")":
            yield _Token("rparen", ch, i)
            i += 1
            continue
        if ch == ",":
            yield _Token("comma", ch, i)
            i += 1
            continue
        raise ExpressionError(f"unexpected character {ch!r}", i)
    yield _Token("eof", "", n)


# ---------------------------------------------------------------------------
# parser with literal folding
# ---------------------------------------------------------------------------

def _fold_neg(arg: Node) -> Node:
    if isinstance(arg, Num):
        return Num(-arg.value)
    return Neg(arg)


def _fold_binop(op: str, lhs: Node, rhs: Node) -> Node:
    if isinstance(lhs, Num) and isinstance(rhs, Num):
        try:
            a, b = lhs.value, rhs.value
            if op == "+":
                return Num(a + b)
            if op == "-":
                return Num(a - b)
            if op == "*":
                return Num(a * b)
            if op == "/":
                return Num(a / b)
            if op == "^":
                return Num(a ** b)
        except (ZeroDivisionError, OverflowError, ValueError):
            pass  # leave unfolded; evaluation will raise in context
    return BinOp(op, lhs, rhs)


class _Parser:
    def __init__(self, text: str):
        self.tokens = list(_tokenize(text))
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ExpressionError(f"expected {what}, found {tok.text or 'end of input'!r}", tok.pos)
        return self.take()

    def parse_input(self) -> Node:
        node = self.parse_expr()
        tok = self.peek()
        if tok.kind != "eof":
            raise ExpressionError(f"unexpected {tok.text!r} after expression", tok.pos)
        return node

    def parse_expr(self) -> Node:
        node = self.parse_term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            node = _fold_binop(op, node, self.parse_term())
        return node

    def parse_term(self) -> Node:
        node = self.parse_unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.take().text
            node = _fold_binop(op, node, self.parse_unary())
        return node

    def parse_unary(self) -> Node:
        if self.peek().kind == "op" and self.peek().text == "-":
            self.take()
            return _fold_neg(self.parse_unary())
        return self.parse_power()

    def parse_power(self) -> Node:
        base = self.parse_primary()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            return _fold_binop("^", base, self.parse_unary())
        return base

    def parse_primary(self) -> Node:
        tok = self.peek()
        if tok.kind == "num":
            self.take()
            return Num(complex(tok.value))
        if tok.kind == "imag":
            self.take()
            return Num(complex(0.0, tok.value))
        if tok.kind == "ident":
            self.take()
            if tok.text == "t":
                return Var()
            if tok.text in CONSTANTS:
                return Num(CONSTANTS[tok.text])
            if tok.text in FUNCTIONS:
                self.expect("lparen", "'(' after function name")
                arg = self.parse_expr()
                self.expect("rparen", "')'")
                return Call(tok.text, arg)
            raise ExpressionError(f"unknown identifier {tok.text!r}", tok.pos)
        if tok.kind == "lparen":
            self.take()
            items = [self.parse_expr()]
            while self.peek().kind == "comma":
                self.take()
                items.append(self.parse_expr())
            self.expect("rparen", "')'")
            if len(items) == 1:
                return items[0]
            return Tup(tuple(items))
        raise ExpressionError(
            f"expected a value, found {tok.text or 'end of input'!r}", tok.pos
        )


def parse_expression(text: str) -> Node:
    """Parse ``text`` into an AST; a top-level Tup means a vector codomain."""
    if not text.strip():
        raise ExpressionError("empty expression", 0)
    node = _Parser(text).parse_input()
    _reject_nested_tuples(node, top=True)
    return node


def _reject_nested_tuples(node: Node, top: bool = False) -> None:
    if isinstance(node, Tup):
        if not top:
            raise ExpressionError("tuple is only allowed as the whole expression", 0)
        for item in node.items:
            _reject_nested_tuples(item)
    elif isinstance(node, Neg):
        _reject_nested_tuples(node.arg)
    elif isinstance(node, BinOp):
        _reject_nested_tuples(node.lhs)
        _reject_nested_tuples(node.rhs)
    elif isinstance(node, Call):
        _reject_nested_tuples(node.arg)


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


def _num_text(value: complex) -> str:
    re_, im_ = value.real, value.imag
    if im_ == 0.0:
        return _real_text(re_)
    if re_ == 0.0:
        return _real_text(im_) + "i"
    sign = "+" if im_ >= 0 else "-"
    return f"({_real_text(re_)} {sign} {_real_text(abs(im_))}i)"


def _real_text(x: float) -> str:
    # negative reals print parenthesized-free via the caller's fold rules:
    # parse folds "-c" back into the literal, so a bare minus is fine
    return repr(x) if x != int(x) or abs(x) >= 1e16 else repr(int(x))


def _prec_of(node: Node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return _PREC["neg"]
    if isinstance(node, Num) and (node.value.real < 0 or (node.value.real == 0 and node.value.imag < 0)):
        return _PREC["neg"]  # prints with a leading minus
    return 9


def to_text(node: Node) -> str:
    """Render an AST back to source.  parse(to_text(parse(s))) == parse(s)."""
    if isinstance(node, Tup):
        return "(" + ", ".join(to_text(item) for item in node.items) + ")"
    if isinstance(node, Num):
        return _num_text(node.value)
    if isinstance(node, Var):
        return "t"
    if isinstance(node, Neg):
        inner = to_text(node.arg)
        if _prec_of(node.arg) < _PREC["neg"]:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(node, Call):
        return f"{node.fn}({to_text(node.arg)})"
    if isinstance(node, BinOp):
        prec = _PREC[node.op]
        lhs = to_text(node.lhs)
        rhs = to_text(node.rhs)
        # left operand: parenthesize on lower precedence ("^" is also
        # right-assoc, so equal precedence on the left needs parens)
        if _prec_of(node.lhs) < prec or (node.op == "^" and _prec_of(node.lhs) == prec):
            lhs = f"({lhs})"
        # right operand: "-" and "/" are left-assoc, equal precedence needs parens
        if _prec_of(node.rhs) < prec or (node.op in "-/" and _prec_of(node.rhs) == prec):
            rhs = f"({rhs})"
        return f"{lhs} {node.op} {rhs}" if node.op in "+-" else f"{lhs}{node.op}{rhs}"
    raise TypeError(f"not an AST node: {node!r}")


# ---------------------------------------------------------------------------
# compilation to a fast callable
# ---------------------------------------------------------------------------

def components_of(node: Node) -> tuple[Node, ...]:
    """Top-level components: a Tup's items, or the node itself."""
    return node.items if isinstance(node, Tup) else (node,)


def _pysrc(node: Node) -> str:
    if isinstance(node, Num):
        return f"({node.value!r})"
    if isinstance(node, Var):
        return "t"
    if isinstance(node, Neg):
        return f"(-{_pysrc(node.arg)})"
    if isinstance(node, Call):
        return f"_{node.fn}({_pysrc(node.arg)})"
    if isinstance(node, BinOp):
        pyop = "**" if node.op == "^" else node.op
        return f"({_pysrc(node.lhs)}{pyop}{_pysrc(node.rhs)})"
    raise TypeError(f"cannot compile node {node!r}")


def scale_node(alpha: complex, node: Node) -> Node:
    """AST for alpha * node (folded when node is a literal)."""
    return _fold_binop("*", Num(complex(alpha)), node)


def add_nodes(lhs: Node, rhs: Node) -> Node:
    """AST for lhs + rhs (folded when both are literals)."""
    return _fold_binop("+", lhs, rhs)


def compile_components(components: tuple[Node, ...]) -> Callable[[float], tuple[complex, ...]]:
    """Compile component ASTs into one callable t -> component tuple.

    The generated source references only whitelisted function names; the
    namespace is closed, so this is not an eval of user text.
    """
    body = ", ".join(_pysrc(c) for c in components)
    src = f"lambda t: ({body},)"
    namespace = {f"_{name}": fn for name, fn in FUNCTIONS.items()}
    return eval(compile(src, "<expression>", "eval"), namespace)  # noqa: S307
