"""A small expression language for real scalar fields on C^n.

Examples::

    1 + 3*Re(z1*z2)/|z|^2
    log(|z|^2)
    sqrt(|z1^2|^2 + |z1*z2|^2 + |z2^2|^2) / |z|^2
    -log(10 - |z|^2)

``z1 .. zn`` are coordinates and ``i`` the imaginary unit; holomorphic
polynomials built from them must be wrapped in ``Re``, ``Im`` or ``|.|``
to become real fields. ``|z|`` is the Euclidean norm. ``log``, ``exp`` and
``sqrt`` apply to real fields, ``^`` takes a numeric exponent.
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass

from . import jets
from .holo import HoloPoly, coordinate
from .jets import ScalarField

__all__ = ["ExpressionError", "parse_field", "parse_holo"]


class ExpressionError(ValueError):
    """Malformed or ill-typed expression; carries 1-based line and column."""

    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"line {line}, column {col}: {message}")
        self.line, self.column = line, col


_TOKEN = _re.compile(
    r"\s*(?:(?P<num>\d+\.?\d*(?:[eE][-+]?\d+)?|\.\d+(?:[eE][-+]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()|,]))"
)


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    out, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ExpressionError(f"unexpected character {text[start]!r}", text, start)
        kind = m.lastgroup
        out.append(_Tok(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(_Tok("end", "", len(text)))
    return out


# value kinds during parsing
class _Vec:
    """The bare coordinate vector ``z``; only legal inside ``|.|``."""


@dataclass
class _Abs:
    inner: object  # HoloPoly | _Vec | complex


_FUNCS = {"log": jets.log, "exp": jets.exp, "sqrt": jets.sqrt}


class _Parser:
    def __init__(self, text: str, n: int):
        self.text, self.n = text, n
        self.toks = _tokenize(text)
        self.i = 0
        self.in_abs = 0

    # helpers
    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def err(self, msg, tok=None):
        tok = tok or self.tok
        return ExpressionError(msg, self.text, tok.pos)

    def eat(self, text):
        if self.tok.text != text:
            found = self.tok.text or "end of expression"
            raise self.err(f"expected {text!r}, found {found!r}")
        self.i += 1

    # grammar
    def parse(self):
        if self.tok.kind == "end":
            raise self.err("empty expression")
        v = self.expr()
        if self.tok.kind != "end":
            raise self.err(f"unexpected {self.tok.text!r}")
        return v

    def expr(self):
        v = self.term()
        while self.tok.text in ("+", "-"):
            op = self.tok
            self.i += 1
            w = self.term()
            v = self.binop(op, v, w)
        return v

    def term(self):
        v = self.unary()
        while self.tok.text in ("*", "/"):
            op = self.tok
            self.i += 1
            w = self.unary()
            v = self.binop(op, v, w)
        return v

    def unary(self):
        if self.tok.text == "-":
            op = self.tok
            self.i += 1
            return self.binop(_Tok("op", "*", op.pos), -1.0, self.unary())
        if self.tok.text == "+":
            self.i += 1
            return self.unary()
        return self.power()

    def power(self):
        base_tok = self.tok
        v = self.atom()
        if self.tok.text == "^":
            op = self.tok
            self.i += 1
            e = self.unary()
            if isinstance(e, (ScalarField, HoloPoly, _Vec, _Abs)) or isinstance(e, complex) and e.imag:
                raise self.err("exponent must be a real number", op)
            return self.pow(op, v, float(e.real if isinstance(e, complex) else e))
        return self.finish_abs(v, base_tok)

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return float(t.text)
        if t.text == "(":
            self.i += 1
            v = self.expr()
            self.eat(")")
            return v
        if t.text == "|":
            if self.in_abs:
                raise self.err("nested |.| is not supported")
            self.i += 1
            self.in_abs += 1
            v = self.expr()
            self.in_abs -= 1
            self.eat("|")
            if isinstance(v, ScalarField):
                raise self.err("|.| takes a holomorphic polynomial or z", t)
            return _Abs(v)
        if t.kind == "name":
            self.i += 1
            name = t.text
            if name == "i":
                return 1j
            if name == "pi":
                import math

                return math.pi
            if name == "z":
                return _Vec()
            m = _re.fullmatch(r"z(\d+)", name)
            if m:
                j = int(m.group(1))
                if not 1 <= j <= self.n:
                    raise self.err(f"coordinate {name} out of range for n={self.n}", t)
                return coordinate(self.n, j - 1)
            if name in ("Re", "Im") or name in _FUNCS:
                self.eat("(")
                arg = self.expr()
                self.eat(")")
                return self.apply(t, name, arg)
            raise self.err(f"unknown name {name!r}", t)
        found = t.text or "end of expression"
        raise self.err(f"unexpected {found!r}")

    # semantics
    def finish_abs(self, v, tok):
        if isinstance(v, _Abs):
            return self.pow(tok, v, 1.0)
        return v

    def pow(self, op, v, e):
        if isinstance(v, _Abs):
            inner = v.inner
            if isinstance(inner, _Vec):
                base = jets.norm_sq()
            elif isinstance(inner, HoloPoly):
                base = jets.abs_sq(inner)
            else:
                return abs(complex(inner)) ** e
            if e == 2:
                return base
            return jets.sqrt(base) if e == 1 else jets.power(base, e / 2)
        if isinstance(v, _Vec):
            raise self.err("bare z is only allowed inside |.|", op)
        if isinstance(v, HoloPoly):
            if e < 0 or not float(e).is_integer():
                raise self.err("holomorphic polynomials take non-negative integer powers", op)
            return v ** int(e)
        if isinstance(v, ScalarField):
            return jets.power(v, e)
        return complex(v) ** e if isinstance(v, complex) else float(v) ** e

    def apply(self, tok, name, arg):
        arg = self.finish_abs(arg, tok)
        if name in ("Re", "Im"):
            if isinstance(arg, HoloPoly):
                return jets.re(arg) if name == "Re" else jets.im(arg)
            if isinstance(arg, (int, float, complex)):
                c = complex(arg)
                return c.real if name == "Re" else c.imag
            raise self.err(f"{name} takes a holomorphic polynomial", tok)
        if isinstance(arg, HoloPoly):
            raise self.err(f"{name} needs a real field; wrap holomorphic terms in Re, Im or |.|", tok)
        if isinstance(arg, _Vec):
            raise self.err("bare z is only allowed inside |.|", tok)
        if isinstance(arg, complex) and arg.imag:
            raise self.err(f"{name} of a non-real constant", tok)
        if not isinstance(arg, ScalarField):
            arg = jets.constant(float(arg.real if isinstance(arg, complex) else arg))
        return _FUNCS[name](arg)

    def binop(self, op, a, b):
        a = self.finish_abs(a, op)
        b = self.finish_abs(b, op)
        for x in (a, b):
            if isinstance(x, _Vec):
                raise self.err("bare z is only allowed inside |.|", op)
        scalar = (int, float, complex)
        if all(isinstance(x, scalar) for x in (a, b)):
            a, b = complex(a), complex(b)
            r = {"+": a + b, "-": a - b, "*": a * b, "/": a / b if b != 0 else None}[op.text]
            if r is None:
                raise self.err("division by zero", op)
            return r.real if r.imag == 0 else r
        holo_side = any(isinstance(x, HoloPoly) for x in (a, b))
        field_side = any(isinstance(x, ScalarField) for x in (a, b))
        if holo_side and field_side:
            raise self.err("cannot mix a holomorphic polynomial with a real field; use Re, Im or |.|", op)
        if holo_side:
            if op.text == "/":
                if not isinstance(b, scalar) or b == 0:
                    raise self.err("holomorphic polynomials can only be divided by non-zero constants", op)
                return a * (1 / complex(b))
            return {"+": lambda: a + b, "-": lambda: a - b, "*": lambda: a * b}[op.text]()
        # real fields with real constants
        for x in (a, b):
            if isinstance(x, complex) and x.imag:
                raise self.err("complex constant in a real expression", op)
        a = a if isinstance(a, ScalarField) else float(complex(a).real)
        b = b if isinstance(b, ScalarField) else float(complex(b).real)
        if op.text == "+":
            return a + b
        if op.text == "-":
            return a - b
        if op.text == "*":
            return a * b
        if isinstance(b, float) and b == 0:
            raise self.err("division by zero", op)
        return a / b


def parse_field(text: str, n: int) -> ScalarField:
    """Parse ``text`` into a real :class:`ScalarField` on C^n."""
    v = _Parser(text, n).parse()
    if isinstance(v, ScalarField):
        return v
    if isinstance(v, HoloPoly):
        raise ExpressionError("expression is holomorphic, not real; wrap it in Re, Im or |.|", text, 0)
    if isinstance(v, _Vec):
        raise ExpressionError("bare z is only allowed inside |.|", text, 0)
    if isinstance(v, complex) and v.imag:
        raise ExpressionError("expression is a non-real constant", text, 0)
    return jets.constant(float(complex(v).real))


def parse_holo(text: str, n: int) -> HoloPoly:
    """Parse a holomorphic polynomial such as ``z1*z2`` or ``z1^2 + i*z2^2``."""
    v = _Parser(text, n).parse()
    if isinstance(v, HoloPoly):
        return v
    if isinstance(v, (int, float, complex)):
        return HoloPoly.constant(n, complex(v))
    raise ExpressionError("expected a holomorphic polynomial in z1..zn", text, 0)
