"""A small textual language for parameterized circuits.

::

    params 2
    rx(t0) ; rx(2*t1)        # sequence, read left to right
    rx(t0) | rx(2*t1)        # parallel, left factor is the left tensor factor

``a ; b`` runs ``a`` first, so it denotes the matrix product ``b @ a``.
``|`` binds tighter than ``;``. ``id(n)`` is the identity on dimension
``n`` and ``swap(n, m)`` is the braiding; the 2x2 bit flip is ``x``.
Angles are affine in the parameters ``t0, t1, ...`` and may use ``pi``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Optional, Union

from .core import ArityError, CompositionError, ParamError, ParamMor
from .matrix import (CONSTANT_GATES, ROTATIONS, AffineExpr, gate,
                     matrix_category)


class CircuitError(ParamError):
    def __init__(self, message: str, span: Optional["SourceSpan"] = None):
        self.span = span
        if span is not None:
            message = f"{span.line}:{span.column}: {message}"
        super().__init__(message)


class CircuitSyntaxError(CircuitError):
    pass


class DimensionError(CircuitError):
    pass


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int


@dataclass(frozen=True)
class Gate:
    name: str
    angle: Optional[AffineExpr] = None
    dims: Optional[tuple] = None
    span: Optional[SourceSpan] = None


@dataclass(frozen=True)
class Seq:
    items: tuple
    span: Optional[SourceSpan] = None


@dataclass(frozen=True)
class Par:
    items: tuple
    span: Optional[SourceSpan] = None


Node = Union[Gate, Seq, Par]


@dataclass(frozen=True)
class Program:
    params: int
    body: Node


STRUCTURAL_GATES = {"id": 1, "swap": 2}
KNOWN_GATES = set(ROTATIONS) | set(CONSTANT_GATES) | set(STRUCTURAL_GATES)


# lexer -----------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+|\#[^\n]*)
  | (?P<nl>\n)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[;|()+\-*/,])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # num, name, op, nl, eof
    text: str
    span: SourceSpan


def tokenize(text: str) -> list:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise CircuitSyntaxError(f"unexpected character {text[pos]!r}",
                                     SourceSpan(line, col, 1))
        kind = m.lastgroup
        if kind == "nl":
            tokens.append(Token("nl", "\n", SourceSpan(line, col, 1)))
            line, line_start = line + 1, m.end()
        elif kind != "ws":
            tokens.append(Token(kind, m.group(), SourceSpan(line, col,
                                                            m.end() - pos)))
        pos = m.end()
    tokens.append(Token("eof", "", SourceSpan(line, pos - line_start + 1, 0)))
    return tokens


# parser ----------------------------------------------------------------------

_PARAM = re.compile(r"t(\d+)$")


def _join(a: SourceSpan, b: SourceSpan) -> SourceSpan:
    if a.line != b.line:
        return a
    return SourceSpan(a.line, a.column, b.column + b.length - a.column)


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0
        self.params = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def skip_newlines(self):
        while self.tok.kind == "nl":
            self.i += 1

    def error(self, msg, tok=None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise CircuitSyntaxError(f"{msg}, found {found}", tok.span)

    def expect(self, text) -> Token:
        if self.tok.text != text or self.tok.kind not in ("op", "name"):
            self.error(f"expected {text!r}")
        return self.advance()

    def accept(self, text) -> Optional[Token]:
        if self.tok.kind == "op" and self.tok.text == text:
            return self.advance()
        return None

    def program(self) -> Program:
        self.skip_newlines()
        if not (self.tok.kind == "name" and self.tok.text == "params"):
            self.error("expected 'params' header")
        self.advance()
        n = self.tok
        if n.kind != "num" or not n.text.isdigit():
            self.error("expected parameter count")
        self.advance()
        self.params = int(n.text)
        if self.tok.kind != "nl":
            self.error("expected newline after header")
        # past the header, newlines are plain whitespace
        self.tokens = (self.tokens[:self.i]
                       + [t for t in self.tokens[self.i:] if t.kind != "nl"])
        body = self.circuit()
        if self.tok.kind != "eof":
            self.error("expected ';', '|' or end of input")
        return Program(self.params, body)

    def circuit(self) -> Node:
        items = [self.term()]
        while self.accept(";"):
            items.append(self.term())
        if len(items) == 1:
            return items[0]
        return Seq(tuple(items), _join(items[0].span, items[-1].span))

    def term(self) -> Node:
        items = [self.factor()]
        while self.accept("|"):
            items.append(self.factor())
        if len(items) == 1:
            return items[0]
        return Par(tuple(items), _join(items[0].span, items[-1].span))

    def factor(self) -> Node:
        open_ = self.accept("(")
        if open_:
            node = self.circuit()
            self.expect(")")
            return node
        if self.tok.kind != "name":
            self.error("expected a gate or '('")
        name_tok = self.advance()
        name = name_tok.text
        if name not in KNOWN_GATES:
            raise CircuitSyntaxError(f"unknown gate {name!r}", name_tok.span)
        angle, dims, end = None, None, name_tok.span
        if name in STRUCTURAL_GATES:
            self.expect("(")
            dims = self.dims(STRUCTURAL_GATES[name])
            end = self.expect(")").span
        elif name in ROTATIONS:
            self.expect("(")
            angle = self.expr()
            end = self.expect(")").span
        elif self.tok.kind == "op" and self.tok.text == "(":
            self.error(f"gate {name} takes no arguments")
        return Gate(name, angle, dims, _join(name_tok.span, end))

    def dims(self, count) -> tuple:
        out = []
        for k in range(count):
            if k:
                self.expect(",")
            t = self.tok
            if t.kind != "num" or not t.text.isdigit() or int(t.text) < 1:
                self.error("expected a positive integer dimension")
            out.append(int(self.advance().text))
        return tuple(out)

    def expr(self) -> AffineExpr:
        sign = -1.0 if self.accept("-") else 1.0
        const, terms = 0.0, []
        while True:
            c, t = self.prod()
            if t is None:
                const += sign * c
            else:
                terms.append((t, sign * c))
            if self.accept("+"):
                sign = 1.0
            elif self.accept("-"):
                sign = -1.0
            else:
                break
        e = AffineExpr.build(const, terms)
        if not math.isfinite(e.constant) or not all(
                math.isfinite(c) for _, c in e.coefficients):
            self.error("non-finite angle")
        return e

    def prod(self):
        """A product of numbers, ``pi`` and at most one parameter."""
        coeff, param = self.atom(None)
        while True:
            if self.accept("*"):
                c, p = self.atom(param)
                coeff *= c
                param = param if p is None else p
            elif self.accept("/"):
                tok = self.tok
                c, p = self.atom(param)
                if p is not None:
                    self.error("cannot divide by a parameter", tok)
                if c == 0:
                    self.error("division by zero", tok)
                coeff /= c
            else:
                return coeff, param

    def atom(self, have_param):
        t = self.tok
        if t.kind == "num":
            self.advance()
            return float(t.text), None
        if t.kind == "name" and t.text == "pi":
            self.advance()
            return math.pi, None
        if t.kind == "name":
            m = _PARAM.match(t.text)
            if m:
                idx = int(m.group(1))
                if have_param is not None:
                    self.error("angle terms must be affine (one parameter "
                               "per product)")
                if idx >= self.params:
                    raise CircuitSyntaxError(
                        f"parameter t{idx} out of range (params {self.params})",
                        t.span)
                self.advance()
                return 1.0, idx
        self.error("expected a number, 'pi' or a parameter")


def parse(text: str) -> Program:
    """Parse circuit source into a :class:`Program`."""
    return _Parser(text).program()


def parse_file(path) -> Program:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


# printing --------------------------------------------------------------------

def pretty(node: Union[Program, Node]) -> str:
    """Render source that parses back to the same tree (spans aside)."""
    if isinstance(node, Program):
        return f"params {node.params}\n{pretty(node.body)}\n"
    return _pp(node, None)


def _pp(node: Node, parent) -> str:
    if isinstance(node, Gate):
        if node.dims is not None:
            return f"{node.name}({', '.join(map(str, node.dims))})"
        if node.angle is not None:
            return f"{node.name}({node.angle})"
        return node.name
    if isinstance(node, Seq):
        s = " ; ".join(_pp(n, Seq) for n in node.items)
        return f"({s})" if parent is not None else s
    s = " | ".join(_pp(n, Par) for n in node.items)
    return f"({s})" if parent is Par else s


def strip_spans(node):
    """The tree with every span removed, for structural comparison."""
    if isinstance(node, Program):
        return Program(node.params, strip_spans(node.body))
    if isinstance(node, Gate):
        return Gate(node.name, node.angle, node.dims)
    return type(node)(tuple(strip_spans(n) for n in node.items))


# elaboration -----------------------------------------------------------------

def elaborate(prog: Program, cat=None) -> ParamMor:
    """Interpret a program as a parameterized matrix family.

    Raises :class:`DimensionError` when adjacent stages of a ``;`` have
    different dimensions.
    """
    if cat is None:
        cat = matrix_category(prog.params)
    elif cat.space.arity != prog.params:
        raise ArityError(f"program declares params {prog.params} but the "
                         f"category has arity {cat.space.arity}")
    return _elab(prog.body, cat)


def _elab(node: Node, cat) -> ParamMor:
    if isinstance(node, Gate):
        if node.name == "id":
            return cat.identity(node.dims[0])
        if node.name == "swap":
            return cat.braiding(*node.dims)
        try:
            return gate(cat, node.name, node.angle)
        except ArityError as exc:
            raise CircuitError(str(exc), node.span) from None
    parts = [_elab(n, cat) for n in node.items]
    if isinstance(node, Par):
        out = parts[0]
        for p in parts[1:]:
            out = cat.tensor(out, p)
        return out
    out = parts[0]
    for prev_node, nxt_node, nxt in zip(node.items, node.items[1:], parts[1:]):
        if out.cod != nxt.dom:
            raise DimensionError(
                f"dimension mismatch at ';': left side has output dimension "
                f"{out.cod} ({_where(prev_node)}), right side expects "
                f"{nxt.dom} ({_where(nxt_node)})", nxt_node.span)
        try:
            out = cat.compose(nxt, out)
        except CompositionError as exc:
            raise DimensionError(str(exc), nxt_node.span) from None
    return out


def _where(node) -> str:
    s = node.span
    return "?" if s is None else f"line {s.line}, column {s.column}"


def compile_circuit(text: str) -> ParamMor:
    return elaborate(parse(text))
