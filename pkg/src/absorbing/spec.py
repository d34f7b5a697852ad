"""Ring constructor expressions and the textual DSL for them.

Grammar (whitespace-insensitive; ``/`` binds tightest, then ``(+)``, then ``x``)::

    expr  := ideal ( 'x' ideal )*
    ideal := quot ( '(+)' '{' ints '}' )*
    quot  := atom ( '/' '(' ints ')' )*
    atom  := 'Z' INT | '(' expr ')'
           | 'idealization' '(' expr ',' 'proj1' ',' '{' ints '}' ')'

Integers inside braces and after ``/`` are element indices of the base ring.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .errors import InvalidSpec, ParseError
from .ring import (
    FiniteRing,
    build_idealization,
    build_product,
    build_quotient,
    build_zmod,
    check_cap,
    natural_module,
    projection_module,
    validate_ring,
)


@dataclass(frozen=True)
class Zmod:
    n: int


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Quotient:
    base: "RingSpec"
    gens: tuple[int, ...]


@dataclass(frozen=True)
class Idealization:
    base: "RingSpec"
    members: tuple[int, ...]
    action: str = "natural"  # or "proj1"


RingSpec = Union[Zmod, Product, Quotient, Idealization]


def format_spec(spec: RingSpec) -> str:
    """Canonical text for a spec; ``parse_spec(format_spec(s)) == s``."""
    if isinstance(spec, Zmod):
        return f"Z{spec.n}"
    if isinstance(spec, Product):
        return " x ".join(
            f"({format_spec(f)})" if isinstance(f, Product) else format_spec(f)
            for f in spec.factors
        )
    if isinstance(spec, Quotient):
        base = format_spec(spec.base)
        if isinstance(spec.base, Product) or (
            isinstance(spec.base, Idealization) and spec.base.action == "natural"
        ):
            base = f"({base})"
        return f"{base} / ({','.join(map(str, spec.gens))})"
    if isinstance(spec, Idealization):
        members = "{" + ",".join(map(str, spec.members)) + "}"
        if spec.action == "proj1":
            return f"idealization({format_spec(spec.base)}, proj1, {members})"
        base = format_spec(spec.base)
        if isinstance(spec.base, Product):
            base = f"({base})"
        return f"{base} (+) {members}"
    raise TypeError(f"not a ring spec: {spec!r}")


# --------------------------------------------------------------------- lexer

_TOKEN = re.compile(
    r"\s*(?:(?P<zmod>Z\d+)|(?P<kw>idealization|proj1)|(?P<oplus>\(\+\))"
    r"|(?P<times>[x×])|(?P<int>\d+)|(?P<punct>[(){},/]))"
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int
    index: int  # 1-based


def _tokenize(src: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos = 0
    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos >= len(src):
            break
        m = _TOKEN.match(src, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {src[pos]!r}", len(toks) + 1, pos)
        kind = m.lastgroup
        text = m.group(kind)
        toks.append(_Tok(kind if kind != "punct" else text, text, m.start(kind), len(toks) + 1))
        pos = m.end()
    toks.append(_Tok("eof", "", len(src), len(toks) + 1))
    return toks


class _Parser:
    def __init__(self, src: str):
        self.toks = _tokenize(src)
        self.k = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.k]

    def fail(self, what: str):
        t = self.cur
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(f"expected {what}, found {found}", t.index, t.pos)

    def take(self, kind: str, what: str | None = None) -> _Tok:
        if self.cur.kind != kind:
            self.fail(what or repr(kind))
        t = self.cur
        self.k += 1
        return t

    def ints(self, close: str) -> tuple[int, ...]:
        vals = []
        if self.cur.kind != close:
            vals.append(int(self.take("int", "integer").text))
            while self.cur.kind == ",":
                self.k += 1
                vals.append(int(self.take("int", "integer").text))
        self.take(close)
        return tuple(vals)

    def expr(self) -> RingSpec:
        factors = [self.ideal()]
        while self.cur.kind == "times":
            self.k += 1
            factors.append(self.ideal())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def ideal(self) -> RingSpec:
        spec = self.quot()
        while self.cur.kind == "oplus":
            self.k += 1
            self.take("{")
            spec = Idealization(spec, self.ints("}"))
        return spec

    def quot(self) -> RingSpec:
        spec = self.atom()
        while self.cur.kind == "/":
            self.k += 1
            self.take("(")
            spec = Quotient(spec, self.ints(")"))
        return spec

    def atom(self) -> RingSpec:
        t = self.cur
        if t.kind == "zmod":
            self.k += 1
            return Zmod(int(t.text[1:]))
        if t.kind == "(":
            self.k += 1
            spec = self.expr()
            self.take(")")
            return spec
        if t.kind == "kw" and t.text == "idealization":
            self.k += 1
            self.take("(")
            base = self.expr()
            self.take(",")
            act = self.take("kw", "'proj1'")
            if act.text != "proj1":
                raise ParseError("expected 'proj1'", act.index, act.pos)
            self.take(",")
            self.take("{")
            members = self.ints("}")
            self.take(")")
            return Idealization(base, members, "proj1")
        self.fail("a ring (Z<n>, '(' or 'idealization')")


def parse_spec(src: str) -> RingSpec:
    p = _Parser(src)
    spec = p.expr()
    if p.cur.kind != "eof":
        p.fail("end of input")
    return spec


# ------------------------------------------------------------------- builder


def _build(spec: RingSpec, cap: int | None) -> FiniteRing:
    ring = _construct(spec, cap)
    ring.label = format_spec(spec)
    ring.spec = spec
    return ring


def _construct(spec: RingSpec, cap: int | None) -> FiniteRing:
    if isinstance(spec, Zmod):
        return build_zmod(spec.n, cap)
    if isinstance(spec, Product):
        if len(spec.factors) < 2:
            raise InvalidSpec("a product needs at least two factors")
        return build_product([_build(f, cap) for f in spec.factors], cap)
    if isinstance(spec, Quotient):
        base = _build(spec.base, cap)
        for g in spec.gens:
            if not 0 <= g < base.order:
                raise InvalidSpec(f"generator {g} is not an element of {base.label}")
        return build_quotient(base, spec.gens, cap)
    if isinstance(spec, Idealization):
        base = _build(spec.base, cap)
        for m in spec.members:
            if not 0 <= m < base.order:
                raise InvalidSpec(f"module element {m} is not an element of {base.label}")
        if spec.action == "proj1":
            if not base.factors:
                raise InvalidSpec("proj1 action needs a product base ring")
            module = projection_module(base, spec.members)
        else:
            module = natural_module(base, spec.members)
        return build_idealization(base, module, cap)
    raise InvalidSpec(f"not a ring spec: {spec!r}")


def build_spec(spec: RingSpec | str, cap: int | None = None, validate: bool = True) -> FiniteRing:
    """Build a ring from a spec (or its text), label it canonically and check its axioms."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    ring = _build(spec, cap)
    check_cap(ring.order, cap)
    if validate:
        report = validate_ring(ring)
        if not report.valid:
            axiom, w = report.failures[0]
            raise InvalidSpec(f"{ring.label} fails {axiom} at {w}")
    return ring
