"""Profile searches over a corpus: flag expressions and the ideal-triple open question."""

from __future__ import annotations

import re
from typing import Callable

import numpy as np

from ..errors import AbsorbingError, ParseError
from ..predicates import PREDICATE_NAMES, _decide, classify, free_triple_zero_witness
from ..spec import build_spec
from .checks import containment_triples, elements_json, ideal_json
from .context import RingContext
from .corpus import CorpusEntry

_EXPR_TOKEN = re.compile(r"\s*(&&|\|\||!|\(|\)|[A-Za-z_][A-Za-z0-9_]*)")
_WORDS = {"and": "&&", "or": "||", "not": "!"}

Predicate = Callable[[Callable[[str], bool]], bool]


def parse_flag_expression(src: str) -> tuple[Predicate, tuple[str, ...]]:
    """Compile ``a && !(b || c)`` style expressions over predicate names.

    Returns the evaluator (taking a flag lookup) and the flag names it reads.
    ``and``/``or``/``not`` are accepted as spellings of the operators.
    """
    toks: list[tuple[str, int]] = []
    pos = 0
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        m = _EXPR_TOKEN.match(src, pos)
        if not m:
            raise ParseError(f"unexpected character {src[pos:].lstrip()[0]!r}", len(toks) + 1, pos)
        toks.append((_WORDS.get(m.group(1), m.group(1)), m.start(1)))
        pos = m.end()
    toks.append(("", len(src)))
    names: list[str] = []
    k = 0

    def fail(what):
        tok, at = toks[k]
        raise ParseError(f"expected {what}, found {tok or 'end of input'!r}", k + 1, at)

    def disj():
        nonlocal k
        terms = [conj()]
        while toks[k][0] == "||":
            k += 1
            terms.append(conj())
        return terms[0] if len(terms) == 1 else (lambda f, ts=terms: any(t(f) for t in ts))

    def conj():
        nonlocal k
        terms = [unary()]
        while toks[k][0] == "&&":
            k += 1
            terms.append(unary())
        return terms[0] if len(terms) == 1 else (lambda f, ts=terms: all(t(f) for t in ts))

    def unary():
        nonlocal k
        tok = toks[k][0]
        if tok == "!":
            k += 1
            inner = unary()
            return lambda f: not inner(f)
        if tok == "(":
            k += 1
            inner = disj()
            if toks[k][0] != ")":
                fail("')'")
            k += 1
            return inner
        if tok in PREDICATE_NAMES:
            k += 1
            names.append(tok)
            return lambda f, n=tok: f(n)
        fail("a predicate name, '!' or '('")

    expr = disj()
    if toks[k][0] != "":
        fail("end of expression")
    return expr, tuple(dict.fromkeys(names))


def search_profiles(expression: str, entries: list[CorpusEntry], cap: int | None = None) -> dict:
    """Every (ring, ideal) whose classification profile satisfies ``expression``."""
    pred, names = parse_flag_expression(expression)
    hits, errors, scanned = [], [], 0
    for e in entries:
        try:
            ctx = RingContext(build_spec(e.spec, cap=cap), cap)
        except AbsorbingError as exc:
            errors.append({"spec": e.spec, "error": f"{type(exc).__name__}: {exc}"})
            continue
        for i in ctx.ideals:
            scanned += 1
            if pred(lambda n: _decide(n, i)):
                hits.append({"ring": ctx.ring.label, "ideal": ideal_json(i), "profile": classify(i).to_json()})
    return {"expression": expression, "flags": list(names), "ideals_scanned": scanned, "hits": hits, "build_errors": errors}


def search_open_question(entries: list[CorpusEntry], cap: int | None = None) -> dict:
    """Look for weakly 1-absorbing prime I and proper I1, I2, I3 with
    ``0 != I1 I2 I3 <= I`` while ``I1 I2`` and ``I3`` both escape I.

    No freeness hypothesis is imposed. Hits are reported together with the
    triple-zero (if any) drawn from ``I1 x I2 x I3``; nothing is asserted.
    """
    hits, errors, rings, instances = [], [], [], 0
    for e in entries:
        try:
            ctx = RingContext(build_spec(e.spec, cap=cap), cap)
        except AbsorbingError as exc:
            errors.append({"spec": e.spec, "error": f"{type(exc).__name__}: {exc}"})
            continue
        p = ctx.proper_idx
        ring_hits = 0
        weakly = [k for k in p if ctx.weakly[k]]
        instances += len(weakly) * len(p) ** 3
        for k in weakly:
            I = ctx.ideals[k]
            hyp, concl = containment_triples(ctx, k)
            bad = hyp & ~concl
            if not bad.any():
                continue
            nonfree = ctx.nonfree(k)
            for a, b, c in np.argwhere(bad):
                trip = [ctx.ideals[p[x]] for x in (a, b, c)]
                tz = free_triple_zero_witness(I, *trip) if nonfree[a, b, c] else None
                ring_hits += 1
                hits.append(
                    {
                        "ring": ctx.ring.label,
                        "ideal": ideal_json(I),
                        "triple": [ideal_json(x) for x in trip],
                        "free": tz is None,
                        "triple_zero": None if tz is None else elements_json(ctx.ring, tz),
                    }
                )
        rings.append({"ring": ctx.ring.label, "weakly_ideals": len(weakly), "hits": ring_hits})
    free_hits = [h for h in hits if h["free"]]
    return {
        "question": "weakly 1-absorbing prime I, proper I1 I2 I3, 0 != I1I2I3 <= I: must I1I2 <= I or I3 <= I?",
        "instances_checked": instances,
        "rings": rings,
        "hits": hits,
        "summary": {
            "hits": len(hits),
            "hits_without_triple_zero": len(free_hits),
            "outcome": "none found up to bound" if not hits else "hits reported",
        },
        "build_errors": errors,
    }
