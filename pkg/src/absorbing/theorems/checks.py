"""Executable theorem checks.

Each check walks the hypothesis class of one statement exhaustively on a
single ring, counts the instances it evaluated (per named part), and records
the first instance whose conclusion fails as a self-describing witness. The
``facts`` list in a witness names every predicate value the verdict rests on,
so :func:`recheck_witness` can re-derive it independently.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..errors import AbsorbingError, CapExceeded, DomainError, InvalidSpec
from ..ideals import Ideal, ideal_from_mask, make_ideal, power, product, radical
from ..lattice import minimal_primes_over
from ..predicates import (
    PREDICATE_NAMES,
    _decide,
    _nonunit_products,
    is_prime,
    is_primary,
    is_weakly_one_absorbing_prime,
    is_weakly_prime,
    witness as predicate_witness,
)
from ..ring import FiniteRing, build_quotient, is_field, is_local
from ..spec import Zmod, build_spec
from .context import RingContext

VERIFIED = "Verified"
VACUOUS = "Vacuous"
COUNTEREXAMPLE = "Counterexample"
ERROR = "Error"


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.integer):
        return int(x)
    return x


def ideal_json(i: Ideal) -> dict:
    return {"members": list(i.members), "labels": [_jsonable(v) for v in i.labels()]}


def elements_json(r: FiniteRing, xs) -> dict:
    xs = [int(x) for x in xs]
    return {"elements": xs, "labels": [_jsonable(r.label_of(x)) for x in xs]}


def fact(predicate: str, i: Ideal, value: bool, factor: int | None = None) -> dict:
    out = {"predicate": predicate, "ideal": list(i.members), "value": bool(value)}
    if factor is not None:
        out["factor"] = factor
    return out


@dataclass
class TheoremVerdict:
    check_id: str
    ring: str
    outcome: str
    instances_checked: int = 0
    witness: dict | None = None
    parts: dict = field(default_factory=dict)
    findings: dict = field(default_factory=dict)
    millis: float = 0.0
    note: str = ""

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "check_id": self.check_id,
            "ring": self.ring,
            "outcome": self.outcome,
            "instances_checked": self.instances_checked,
            "parts": dict(self.parts),
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.findings:
            out["findings"] = self.findings
        if self.note:
            out["note"] = self.note
        if timing:
            out["millis"] = round(self.millis, 1)
        return out


class Tally:
    def __init__(self):
        self.parts: dict[str, int] = {}
        self.witness: dict | None = None
        self.findings: dict = {}

    def touch(self, *parts: str) -> None:
        for p in parts:
            self.parts.setdefault(p, 0)

    def count(self, part: str, n: int = 1) -> None:
        self.parts[part] = self.parts.get(part, 0) + int(n)

    def fail(self, part: str, **witness) -> None:
        if self.witness is None:
            self.witness = {"part": part, **witness}

    def find(self, key: str, value) -> None:
        self.findings.setdefault(key, value)

    @property
    def instances(self) -> int:
        return sum(self.parts.values())


@dataclass(frozen=True)
class TheoremCheck:
    id: str
    title: str
    scope: str
    run: Callable[[RingContext, Tally], None]
    # parts whose hypotheses no finite ring can satisfy, with the reason
    unmeetable: dict = field(default_factory=dict)


# ------------------------------------------------------------------ scopes


def _is_prime_power(n: int) -> bool:
    p = next(d for d in range(2, n + 1) if n % d == 0)
    while n % p == 0:
        n //= p
    return n == 1


def in_scope(scope: str, ctx: RingContext) -> bool:
    r = ctx.ring
    if scope == "all":
        return True
    if scope == "local":
        return ctx.is_local
    if scope == "non-local":
        return not ctx.is_local
    if scope == "reduced":
        return ctx.reduced
    if scope == "decomposable-2":
        return len(r.factors) == 2
    if scope == "decomposable-3":
        return len(r.factors) == 3
    if scope == "zmod-prime-power":
        return isinstance(r.spec, Zmod) and _is_prime_power(r.spec.n)
    raise ValueError(f"unknown scope {scope!r}")


# ------------------------------------------------------------------ checks


def _colon_weakly_prime(ctx: RingContext, t: Tally) -> None:
    r = ctx.ring
    t.touch("colon")
    for k in np.flatnonzero(ctx.weakly):
        I = ctx.ideals[k]
        cs = r.nonunits[~I.mask[r.nonunits]]
        if len(cs) == 0:
            continue
        cols = I.mask[r.mul[:, cs]].T  # row per c: membership mask of (I : c)
        proper = ~cols.all(axis=1)  # (I : c) = R is a vacuous instance
        t.count("colon", int(proper.sum()))
        uniq, first = np.unique(cols[proper], axis=0, return_index=True)
        cs = cs[proper]
        for row, pos in zip(uniq, first):
            Q = ideal_from_mask(r, row)
            if not is_weakly_prime(Q):
                c = int(cs[pos])
                t.fail(
                    "colon",
                    ideal=ideal_json(I),
                    c=elements_json(r, [c]),
                    colon=ideal_json(Q),
                    violation=elements_json(r, predicate_witness("weakly_prime", Q)),
                    facts=[fact("weakly_one_absorbing_prime", I, True), fact("weakly_prime", Q, False)],
                )


def _annihilator_mask(r: FiniteRing, i: Ideal) -> np.ndarray:
    """``{y : yI = 0}``."""
    return (r.mul[:, i.array] == r.zero).all(axis=1)


def _triple_zero_annihilation(ctx: RingContext, t: Tally) -> None:
    r = ctx.ring
    t.touch("abI=acI=bcI=0", "aI2=bI2=cI2=0")
    nu = r.nonunits
    table, _ = _nonunit_products(r)
    for k in np.flatnonzero(ctx.weakly_not_one_abs):
        I = ctx.ideals[k]
        m = I.mask
        ann1 = _annihilator_mask(r, I)
        ann2 = _annihilator_mask(r, power(I, 2))
        for ai, a in enumerate(nu):
            ab = table[ai]
            abc = r.mul[ab[:, None], nu[None, :]]
            tz = (abc == r.zero) & ~m[ab][:, None] & ~m[nu][None, :]
            if not tz.any():
                continue
            n_tz = int(tz.sum())
            ok1 = ann1[ab][:, None] & ann1[ab][None, :] & ann1[table]
            ok2 = ann2[a] & ann2[nu][:, None] & ann2[nu][None, :]
            t.count("abI=acI=bcI=0", n_tz)
            t.count("aI2=bI2=cI2=0", n_tz)
            for part, ok in (("abI=acI=bcI=0", ok1), ("aI2=bI2=cI2=0", ok2)):
                bad = tz & ~ok
                if bad.any():
                    bi, ci = np.argwhere(bad)[0]
                    t.fail(
                        part,
                        ideal=ideal_json(I),
                        triple=elements_json(r, [a, nu[bi], nu[ci]]),
                        facts=[fact("weakly_one_absorbing_prime", I, True), fact("one_absorbing_prime", I, False)],
                    )


def _cube_zero(ctx: RingContext, t: Tally) -> None:
    t.touch("I^3=0")
    for k in np.flatnonzero(ctx.weakly_not_one_abs):
        t.count("I^3=0")
        if ctx.power(k, 3) != ctx.zero_idx:
            I = ctx.ideals[k]
            t.fail(
                "I^3=0",
                ideal=ideal_json(I),
                cube=ideal_json(ctx.ideals[ctx.power(k, 3)]),
                facts=[fact("weakly_one_absorbing_prime", I, True), fact("one_absorbing_prime", I, False)],
            )


def _radical_collapse(ctx: RingContext, t: Tally) -> None:
    t.touch("rad(I)=nil", "reduced-local-equivalence")
    nil = ctx.nil
    for k in np.flatnonzero(ctx.weakly_not_one_abs):
        t.count("rad(I)=nil")
        I = ctx.ideals[k]
        rad = radical(I)
        if rad != nil:
            t.fail(
                "rad(I)=nil",
                ideal=ideal_json(I),
                radical=ideal_json(rad),
                nilradical=ideal_json(nil),
                facts=[fact("weakly_one_absorbing_prime", I, True), fact("one_absorbing_prime", I, False)],
            )
    if ctx.reduced:
        for k in ctx.proper_idx[1:]:
            t.count("reduced-local-equivalence")
            if ctx.weakly[k] != ctx.one_abs[k]:
                I = ctx.ideals[k]
                t.fail(
                    "reduced-local-equivalence",
                    ideal=ideal_json(I),
                    facts=[
                        fact("weakly_one_absorbing_prime", I, ctx.weakly[k]),
                        fact("one_absorbing_prime", I, ctx.one_abs[k]),
                    ],
                )


def _nilpotent_annihilation(ctx: RingContext, t: Tally) -> None:
    r = ctx.ring
    t.touch("w2-in-I-or-annihilates", "nil^2 I^2 = 0", "IJK products")
    nil = ctx.nil
    nil_sq = ctx.power(ctx.index(nil), 2)
    quals = [int(k) for k in np.flatnonzero(ctx.weakly_not_one_abs)]
    w = nil.array
    w2 = r.mul[w, w]
    for k in quals:
        I = ctx.ideals[k]
        base_facts = [fact("weakly_one_absorbing_prime", I, True), fact("one_absorbing_prime", I, False)]
        ann1 = _annihilator_mask(r, I)
        ann2 = _annihilator_mask(r, ctx.ideals[ctx.power(k, 2)])
        ok = I.mask[w2] | (ann1[w2] & ann2[w])
        t.count("w2-in-I-or-annihilates", len(w))
        if not ok.all():
            bad = int(w[np.argmin(ok)])
            t.fail("w2-in-I-or-annihilates", ideal=ideal_json(I), w=elements_json(r, [bad]), facts=base_facts)
        t.count("nil^2 I^2 = 0")
        if ctx.prod(nil_sq, ctx.power(k, 2)) != ctx.zero_idx:
            t.fail("nil^2 I^2 = 0", ideal=ideal_json(I), facts=base_facts)
    for a in quals:
        for b in quals:
            for c in quals:
                t.count("IJK products")
                combos = [(a, a, b, c), (a, b, b, c), (a, b, c, c), (a, a, b, b), (a, a, c, c), (b, b, c, c)]
                for combo in combos:
                    if ctx.prod(*combo) != ctx.zero_idx:
                        t.fail(
                            "IJK products",
                            ideals=[ideal_json(ctx.ideals[x]) for x in (a, b, c)],
                            product=[ideal_json(ctx.ideals[x]) for x in combo],
                        )
                        break


def _nilradical_prime_equiv(ctx: RingContext, t: Tally) -> None:
    t.touch("nil-prime", "nil-primary")
    nil = ctx.nil
    nil_k = ctx.index(nil)
    for part, holds in (("nil-prime", is_prime(nil)), ("nil-primary", is_primary(nil))):
        if not holds:
            continue
        for k in ctx.proper_idx:
            if not ctx.subset[nil_k, k]:
                continue
            t.count(part)
            if ctx.weakly[k] != ctx.one_abs[k]:
                I = ctx.ideals[k]
                t.fail(
                    part,
                    ideal=ideal_json(I),
                    facts=[
                        fact("prime" if part == "nil-prime" else "primary", nil, True),
                        fact("weakly_one_absorbing_prime", I, ctx.weakly[k]),
                        fact("one_absorbing_prime", I, ctx.one_abs[k]),
                    ],
                )


def _zero_triple_zero_outside_nil(ctx: RingContext):
    """A nonunit (a, b, c) with abc = 0, ab not nilpotent, c != 0 (so also ab != 0)."""
    r = ctx.ring
    nu = r.nonunits
    nil = ctx.nil.mask
    table, pvals = _nonunit_products(r)
    ps = pvals[~nil[pvals]]
    cs = nu[nu != r.zero]
    if len(ps) == 0 or len(cs) == 0:
        return None
    hit = r.mul[np.ix_(ps, cs)] == r.zero
    if not hit.any():
        return None
    pi, ci = np.argwhere(hit)[0]
    ai, bi = np.argwhere(table == ps[pi])[0]
    return int(nu[ai]), int(nu[bi]), int(cs[ci])


def _not_one_abs_iff_nil(ctx: RingContext, t: Tally) -> None:
    t.touch("iff")
    tz = _zero_triple_zero_outside_nil(ctx)
    if tz is None:
        return
    t.find("zero_triple_zero", elements_json(ctx.ring, tz))
    nil_k = ctx.index(ctx.nil)
    for k in np.flatnonzero(ctx.weakly):
        t.count("iff")
        if (not ctx.one_abs[k]) != bool(ctx.subset[k, nil_k]):
            I = ctx.ideals[k]
            t.fail(
                "iff",
                ideal=ideal_json(I),
                zero_triple_zero=elements_json(ctx.ring, tz),
                facts=[fact("one_absorbing_prime", I, ctx.one_abs[k])],
            )


def _reduced_radical_prime(ctx: RingContext, t: Tally) -> None:
    t.touch("rad(I)-prime")
    for k in np.flatnonzero(ctx.weakly):
        if k == ctx.zero_idx:
            continue
        t.count("rad(I)-prime")
        I = ctx.ideals[k]
        rad = radical(I)
        if not is_prime(rad):
            t.fail(
                "rad(I)-prime",
                ideal=ideal_json(I),
                radical=ideal_json(rad),
                facts=[fact("weakly_one_absorbing_prime", I, True), fact("prime", rad, False)],
            )


def _nonlocal_weakly_prime_equiv(ctx: RingContext, t: Tally) -> None:
    r = ctx.ring
    t.touch("equivalence")
    max_bits = {ctx.ideals[k].bits for k in ctx.maximal_idx}
    zero_cols = r.mul == r.zero
    ann_is_max = np.array(
        [ideal_from_mask(r, zero_cols[:, x]).bits in max_bits for x in range(r.order)]
    )
    wp = ctx.flag("weakly_prime")
    for k in ctx.proper_idx:
        I = ctx.ideals[k]
        if ann_is_max[I.array].any():
            continue
        t.count("equivalence")
        if ctx.weakly[k] != wp[k]:
            t.fail(
                "equivalence",
                ideal=ideal_json(I),
                facts=[
                    fact("weakly_one_absorbing_prime", I, ctx.weakly[k]),
                    fact("weakly_prime", I, wp[k]),
                ],
            )


# ---- decomposable rings


def _factor_flag(ctx: RingContext, f: int, name: str, idx: int) -> bool:
    return bool(ctx.factor_contexts[f].flag(name)[idx])


def _product_whole_factor(ctx: RingContext, t: Tally) -> None:
    t.touch("I x R2", "R1 x I")
    for f, part in ((0, "I x R2"), (1, "R1 x I")):
        other = 1 - f
        fctx = ctx.factor_contexts[f]
        whole_other = ctx.factor_contexts[other].whole_idx
        for i in fctx.proper_idx:
            parts = (i, whole_other) if f == 0 else (whole_other, i)
            J = ctx.product_ideal(parts)
            s1 = is_weakly_one_absorbing_prime(J)
            s2 = _decide("one_absorbing_prime", J)
            s3 = _factor_flag(ctx, f, "one_absorbing_prime", i)
            t.count(part)
            if not (s1 == s2 == s3):
                t.fail(
                    part,
                    ideal=ideal_json(J),
                    factor_ideal=ideal_json(fctx.ideals[i]),
                    statements={"(1)": s1, "(2)": s2, "(3)": s3},
                    violation=_violation_json(ctx.ring, "weakly_one_absorbing_prime", J),
                    facts=[
                        fact("weakly_one_absorbing_prime", J, s1),
                        fact("one_absorbing_prime", J, s2),
                        fact("one_absorbing_prime", fctx.ideals[i], s3, factor=f),
                    ],
                )


def _violation_json(r: FiniteRing, name: str, i: Ideal):
    w = predicate_witness(name, i)
    return None if w is None else elements_json(r, w)


def _product_two_factors(ctx: RingContext, t: Tally) -> None:
    t.touch("equivalence")
    c1, c2 = ctx.factor_contexts
    for i1 in range(1, c1.k):
        for i2 in range(1, c2.k):
            J = ctx.product_ideal((i1, i2))
            s1 = is_weakly_one_absorbing_prime(J)
            p1 = bool(c1.flag("prime")[i1])
            p2 = bool(c2.flag("prime")[i2])
            a1 = bool(c1.one_abs[i1])
            a2 = bool(c2.one_abs[i2])
            s2 = (i1 == c1.whole_idx and a2) or (i2 == c2.whole_idx and a1) or (p1 and p2)
            s3 = _decide("one_absorbing_prime", J)
            s4 = is_prime(J)
            t.count("equivalence")
            if not (s1 == s2 == s3 == s4):
                t.fail(
                    "equivalence",
                    ideal=ideal_json(J),
                    factor_ideals=[ideal_json(c1.ideals[i1]), ideal_json(c2.ideals[i2])],
                    statements={"(1)": s1, "(2)": s2, "(3)": s3, "(4)": s4},
                    violation=_violation_json(ctx.ring, "weakly_one_absorbing_prime", J),
                    facts=[
                        fact("weakly_one_absorbing_prime", J, s1),
                        fact("one_absorbing_prime", J, s3),
                        fact("prime", J, s4),
                        fact("prime", c1.ideals[i1], p1, factor=0),
                        fact("prime", c2.ideals[i2], p2, factor=1),
                        fact("one_absorbing_prime", c1.ideals[i1], a1, factor=0),
                        fact("one_absorbing_prime", c2.ideals[i2], a2, factor=1),
                    ],
                )


def _product_weakly_not_one_abs(ctx: RingContext, t: Tally) -> None:
    t.touch("(1)=>(2)", "(2)=>(1) fails")
    for f in (0, 1):
        other = 1 - f
        cf, co = ctx.factor_contexts[f], ctx.factor_contexts[other]
        for i1 in range(1, cf.whole_idx):
            for i2 in co.proper_idx:
                parts = (i1, i2) if f == 0 else (i2, i1)
                J = ctx.product_ideal(parts)
                s1 = is_weakly_one_absorbing_prime(J) and not _decide("one_absorbing_prime", J)
                s2 = (
                    bool(cf.flag("weakly_prime")[i1])
                    and not cf.flag("prime")[i1]
                    and i2 == co.zero_idx
                    and bool(co.flag("prime")[i2])
                )
                if s1:
                    t.count("(1)=>(2)")
                    if not s2:
                        t.fail("(1)=>(2)", ideal=ideal_json(J), statements={"(1)": s1, "(2)": s2})
                elif s2:
                    # the stated converse failure, witnessed
                    t.count("(2)=>(1) fails")
                    t.find(
                        "converse_failure",
                        {
                            "ideal": ideal_json(J),
                            "violation": _violation_json(ctx.ring, "weakly_one_absorbing_prime", J),
                        },
                    )


def _product_three_factors(ctx: RingContext, t: Tally) -> None:
    t.touch("equivalence")
    ks = [c.k for c in ctx.factor_contexts]
    for parts in np.ndindex(*ks):
        J = ctx.product_ideal(tuple(int(p) for p in parts))
        if J.is_zero or not J.proper:
            continue
        t.count("equivalence")
        s1 = is_weakly_one_absorbing_prime(J)
        s2 = _decide("one_absorbing_prime", J)
        if s1 != s2:
            t.fail(
                "equivalence",
                ideal=ideal_json(J),
                facts=[fact("weakly_one_absorbing_prime", J, s1), fact("one_absorbing_prime", J, s2)],
            )


def _product_three_characterization(ctx: RingContext, t: Tally) -> None:
    t.touch("equivalence")
    cs = ctx.factor_contexts
    for parts in np.ndindex(*[c.k for c in cs]):
        parts = tuple(int(p) for p in parts)
        J = ctx.product_ideal(parts)
        if J.is_zero or not J.proper:
            continue
        t.count("equivalence")
        whole = [p == c.whole_idx for p, c in zip(parts, cs)]
        one_abs = [bool(c.one_abs[p]) for p, c in zip(parts, cs)]
        prime = [bool(c.flag("prime")[p]) for p, c in zip(parts, cs)]
        single = any(one_abs[k] and all(whole[j] for j in range(3) if j != k) for k in range(3))
        double = any(
            prime[k] and prime[m] and all(whole[j] for j in range(3) if j not in (k, m))
            for k in range(3)
            for m in range(3)
            if k != m
        )
        s = {
            "(1)": is_weakly_one_absorbing_prime(J),
            "(2)": _decide("one_absorbing_prime", J),
            "(3)": single or double,
            "(4)": is_prime(J),
        }
        if len(set(s.values())) > 1:
            t.fail(
                "equivalence",
                ideal=ideal_json(J),
                factor_ideals=[ideal_json(c.ideals[p]) for p, c in zip(parts, cs)],
                statements=s,
                violation=_violation_json(ctx.ring, "weakly_one_absorbing_prime", J),
                facts=[
                    fact("weakly_one_absorbing_prime", J, s["(1)"]),
                    fact("one_absorbing_prime", J, s["(2)"]),
                    fact("prime", J, s["(4)"]),
                ]
                + [fact("one_absorbing_prime", c.ideals[p], a, factor=f) for f, (p, c, a) in enumerate(zip(parts, cs, one_abs))]
                + [fact("prime", c.ideals[p], q, factor=f) for f, (p, c, q) in enumerate(zip(parts, cs, prime))],
            )


# ---- ideal triples


def containment_triples(ctx: RingContext, k: int):
    """Boolean cubes over proper (I1, I2, I3) for target ideal ``k``.

    Returns ``(hyp, concl)``: ``hyp`` is ``0 != I1 I2 I3 <= I``, ``concl`` is
    ``I1 I2 <= I or I3 <= I``.
    """
    p = ctx.proper_idx
    P2 = ctx.prod2[np.ix_(p, p)]
    P3 = ctx.prod2[P2[:, :, None], p[None, None, :]]
    sub = ctx.subset[:, k]
    hyp = (P3 != ctx.zero_idx) & sub[P3]
    concl = sub[P2][:, :, None] | sub[p][None, None, :]
    return hyp, concl


def _ideal_triples(ctx: RingContext, t: Tally) -> None:
    r = ctx.ring
    t.touch("(1)=>(2)", "(2)=>(1)", "ab-in-I-or-J-in-I")
    p = ctx.proper_idx
    escapes = 0
    for k in p:
        I = ctx.ideals[k]
        hyp, concl = containment_triples(ctx, k)
        bad = hyp & ~concl
        free_bad = bad & ~ctx.nonfree(k) if bad.any() else bad
        if ctx.weakly[k]:
            t.count("(1)=>(2)", int(hyp.sum()))
            escapes += int(bad.sum() - free_bad.sum())
            if free_bad.any():
                a, b, c = np.argwhere(free_bad)[0]
                trip = [ctx.ideals[p[x]] for x in (a, b, c)]
                t.fail(
                    "(1)=>(2)",
                    ideal=ideal_json(I),
                    triple=[ideal_json(x) for x in trip],
                    facts=[fact("weakly_one_absorbing_prime", I, True)],
                )
        else:
            t.count("(2)=>(1)")
            if not free_bad.any():
                t.fail(
                    "(2)=>(1)",
                    ideal=ideal_json(I),
                    violation=_violation_json(r, "weakly_one_absorbing_prime", I),
                    note="no free proper ideal triple violates (2), yet I is not weakly 1-absorbing prime",
                    facts=[fact("weakly_one_absorbing_prime", I, False)],
                )
    if escapes:
        t.find("non_free_triples_escaping_conclusion", escapes)
    _ab_or_J(ctx, t)


def _ab_or_J(ctx: RingContext, t: Tally) -> None:
    r = ctx.ring
    table, pvals = _nonunit_products(r)
    mult = np.bincount(table.ravel(), minlength=r.order)
    proper_bits = [ctx.ideals[j].bits for j in ctx.proper_idx]
    zero_col = r.mul == r.zero
    for k in np.flatnonzero(ctx.weakly):
        I = ctx.ideals[k]
        for pv in pvals:
            pv = int(pv)
            n_pairs = int(mult[pv])
            if I.mask[pv]:
                # ab in I: every J satisfying abJ <= I meets the conclusion
                continue
            col_bits = ideal_from_mask(r, I.mask[r.mul[:, pv]]).bits
            tz_bits = ideal_from_mask(r, zero_col[:, pv] & ~I.mask).bits  # c with abc=0, c not in I
            for j, jb in zip(ctx.proper_idx, proper_bits):
                if jb & ~col_bits or jb & tz_bits:
                    continue
                t.count("ab-in-I-or-J-in-I", n_pairs)
                if jb & ~I.bits:
                    a, b = np.argwhere(table == pv)[0]
                    nu = r.nonunits
                    t.fail(
                        "ab-in-I-or-J-in-I",
                        ideal=ideal_json(I),
                        ab=elements_json(r, [nu[a], nu[b]]),
                        J=ideal_json(ctx.ideals[j]),
                        facts=[fact("weakly_one_absorbing_prime", I, True)],
                    )


# ---- all-ideals characterisations


def _principal_jacobson(ctx: RingContext, t: Tally) -> None:
    r = ctx.ring
    t.touch("Rabc")
    J = ctx.ideals[_jacobson_idx(ctx)]
    js = J.array
    ab = r.mul[np.ix_(js, js)].ravel()
    abc = r.mul[ab[:, None], js[None, :]].ravel()
    counts = np.bincount(abc, minlength=r.order)
    for v in np.flatnonzero(counts):
        v = int(v)
        mask = np.zeros(r.order, dtype=bool)
        mask[r.mul[v]] = True
        P = ideal_from_mask(r, mask)
        t.count("Rabc", int(counts[v]))
        lhs = is_weakly_one_absorbing_prime(P)
        if lhs != (v == r.zero):
            t.fail(
                "Rabc",
                abc=elements_json(r, [v]),
                ideal=ideal_json(P),
                facts=[fact("weakly_one_absorbing_prime", P, lhs)],
            )


def _jacobson_idx(ctx: RingContext) -> int:
    out = ctx.whole_idx
    for m in ctx.maximal_idx:
        out = ctx.index(ideal_from_mask(ctx.ring, ctx.ideals[out].mask & ctx.ideals[m].mask))
    return out


def _local_all_ideals(ctx: RingContext, t: Tally) -> None:
    t.touch("M^3=0 iff all weakly", "M^2=0 => all 1-absorbing")
    M = ctx.local[1]
    m = ctx.index(M)
    cube_zero = ctx.power(m, 3) == ctx.zero_idx
    proper = ctx.proper_idx
    all_weakly = bool(ctx.weakly[proper].all())
    t.count("M^3=0 iff all weakly")
    if cube_zero != all_weakly:
        bad = [ideal_json(ctx.ideals[k]) for k in proper if not ctx.weakly[k]][:1]
        t.fail(
            "M^3=0 iff all weakly",
            maximal=ideal_json(M),
            cube_zero=cube_zero,
            all_weakly=all_weakly,
            failing_ideal=bad[0] if bad else None,
        )
    if not cube_zero:
        k = next(k for k in proper if not ctx.weakly[k])
        t.find("failing_ideal", {
            "ideal": ideal_json(ctx.ideals[k]),
            "violation": _violation_json(ctx.ring, "weakly_one_absorbing_prime", ctx.ideals[k]),
        })
    if ctx.power(m, 2) == ctx.zero_idx:
        t.count("M^2=0 => all 1-absorbing")
        if not ctx.one_abs[proper].all():
            k = next(k for k in proper if not ctx.one_abs[k])
            t.fail(
                "M^2=0 => all 1-absorbing",
                ideal=ideal_json(ctx.ideals[k]),
                facts=[fact("one_absorbing_prime", ctx.ideals[k], False)],
            )


def _quotient_by(ctx: RingContext, k: int) -> FiniteRing:
    return build_quotient(ctx.ring, list(ctx.ideals[k].generators))


def _local_square_zero(q: FiniteRing) -> bool:
    loc, M = is_local(q)
    return loc and product(M, M).is_zero


def _global_classification(ctx: RingContext, t: Tally) -> None:
    r = ctx.ring
    parts = ("at-most-3-maximal", "shape", "two-local-factors", "three-factors-are-fields", "converse-field-times-local", "converse-three-fields")
    t.touch(*parts)
    all_weakly = bool(ctx.weakly[ctx.proper_idx].all())
    if all_weakly:
        maxs = ctx.maximal_idx
        t.count("at-most-3-maximal")
        if len(maxs) > 3:
            t.fail("at-most-3-maximal", maximal=[ideal_json(ctx.ideals[m]) for m in maxs])
        t.count("shape")
        shape = None
        if len(maxs) == 1:
            if ctx.power(maxs[0], 3) == ctx.zero_idx:
                shape = "local, M^3=0"
        elif len(maxs) in (2, 3):
            qs = [_quotient_by(ctx, ctx.power(m, 3)) for m in maxs]
            orders_ok = int(np.prod([q.order for q in qs])) == r.order
            fields = [is_field(q) for q in qs]
            if len(maxs) == 2 and orders_ok and any(fields) and all(_local_square_zero(q) for q in qs):
                shape = "local with M^2=0 x field"
            if len(maxs) == 3 and orders_ok and all(fields):
                shape = "field x field x field"
        t.find("shape", shape)
        if shape is None:
            t.fail("shape", maximal=[ideal_json(ctx.ideals[m]) for m in maxs])
    if len(r.factors) == 2:
        fcs = ctx.factor_contexts
        if all_weakly and all(c.is_local for c in fcs):
            t.count("two-local-factors")
            sq = [c.power(c.index(c.local[1]), 2) == c.zero_idx for c in fcs]
            fld = [is_field(c.ring) for c in fcs]
            if not (all(sq) and any(fld)):
                t.fail("two-local-factors", square_zero=sq, field=fld)
        for f in (0, 1):
            loc, fld = fcs[f], fcs[1 - f]
            if not (is_field(fld.ring) and loc.is_local and not is_field(loc.ring)):
                continue
            if loc.power(loc.index(loc.local[1]), 2) != loc.zero_idx:
                continue
            # J x {0} with J a nonzero proper ideal of the local factor is never weakly 1-absorbing
            for j in range(1, loc.whole_idx):
                parts_ = (j, fld.zero_idx) if f == 0 else (fld.zero_idx, j)
                J = ctx.product_ideal(parts_)
                t.count("converse-field-times-local")
                if is_weakly_one_absorbing_prime(J):
                    t.fail("converse-field-times-local", ideal=ideal_json(J), facts=[fact("weakly_one_absorbing_prime", J, True)])
    if len(r.factors) == 3:
        fcs = ctx.factor_contexts
        if all_weakly:
            t.count("three-factors-are-fields")
            if not all(is_field(c.ring) for c in fcs):
                t.fail("three-factors-are-fields", fields=[is_field(c.ring) for c in fcs])
        if all(is_field(c.ring) for c in fcs):
            J = ctx.product_ideal((fcs[0].whole_idx, fcs[1].zero_idx, fcs[2].zero_idx))
            t.count("converse-three-fields")
            if is_weakly_one_absorbing_prime(J):
                t.fail("converse-three-fields", ideal=ideal_json(J), facts=[fact("weakly_one_absorbing_prime", J, True)])


def _zpk_analog(ctx: RingContext, t: Tally) -> None:
    t.touch("I in {M, M^2} or I^3=0")
    M = ctx.index(ctx.local[1])
    M2 = ctx.power(M, 2)
    for k in np.flatnonzero(ctx.weakly):
        t.count("I in {M, M^2} or I^3=0")
        if k not in (M, M2) and ctx.power(k, 3) != ctx.zero_idx:
            I = ctx.ideals[k]
            t.fail("I in {M, M^2} or I^3=0", ideal=ideal_json(I), facts=[fact("weakly_one_absorbing_prime", I, True)])


CHECKS: tuple[TheoremCheck, ...] = (
    TheoremCheck("colon-weakly-prime", "(I : c) is weakly prime for weakly 1-absorbing prime I, nonunit c not in I", "all", _colon_weakly_prime),
    TheoremCheck("triple-zero-annihilation", "triple-zeros annihilate I and I^2", "local", _triple_zero_annihilation),
    TheoremCheck("cube-zero", "weakly but not 1-absorbing prime implies I^3 = 0", "local", _cube_zero),
    TheoremCheck(
        "radical-collapse",
        "rad(I) = nil(R); reduced local: weakly iff 1-absorbing",
        "local",
        _radical_collapse,
        unmeetable={"reduced-local-equivalence": "a finite reduced local ring is a field, which has no nonzero proper ideal"},
    ),
    TheoremCheck("nilpotent-annihilation", "w^2 in I or w^2 I = w I^2 = 0; nil^2 I^2 = 0; products of three", "local", _nilpotent_annihilation),
    TheoremCheck("nilradical-prime-equivalence", "nil(R) prime/primary and contained in I: weakly iff 1-absorbing", "all", _nilradical_prime_equiv),
    TheoremCheck(
        "not-one-absorbing-iff-nil",
        "zero ideal has a triple-zero with ab not nilpotent: not 1-absorbing iff I inside nil(R)",
        "local",
        _not_one_abs_iff_nil,
        unmeetable={"iff": "in a finite local ring every nonunit is nilpotent, so ab is always in nil(R)"},
    ),
    TheoremCheck("reduced-radical-prime", "reduced ring: radical of a nonzero weakly 1-absorbing prime is prime", "reduced", _reduced_radical_prime),
    TheoremCheck("nonlocal-weakly-prime-equivalence", "non-local, no ann(x) maximal for x in I: weakly 1-absorbing iff weakly prime", "non-local", _nonlocal_weakly_prime_equiv),
    TheoremCheck("product-whole-factor", "I x R2 weakly 1-abs iff 1-abs iff I 1-abs in R1", "decomposable-2", _product_whole_factor),
    TheoremCheck("product-two-factors", "nonzero I1 x I2: weakly 1-abs iff (one side whole, other 1-abs; or both prime) iff 1-abs iff prime", "decomposable-2", _product_two_factors),
    TheoremCheck(
        "product-weakly-not-one-absorbing",
        "I1 x I2 weakly but not 1-abs implies I1 weakly prime not prime, I2 = 0 prime; converse fails",
        "decomposable-2",
        _product_weakly_not_one_abs,
        unmeetable={"(1)=>(2)": "for nonzero proper I1, (1,0)(1,0)(x,1) with x in I1 shows I1 x {0} is never weakly 1-absorbing prime; for I2 != 0 the ideal is prime by the I1 x I2 equivalence"},
    ),
    TheoremCheck("product-three-factors", "nonzero proper I1 x I2 x I3: weakly 1-abs iff 1-abs", "decomposable-3", _product_three_factors),
    TheoremCheck("product-three-factors-characterization", "nonzero I1 x I2 x I3: weakly 1-abs iff 1-abs iff (one factor 1-abs, rest whole; or two prime, third whole) iff prime", "decomposable-3", _product_three_characterization),
    TheoremCheck("ideal-triples", "free triple-zero ideal triples; ab in I or J in I", "all", _ideal_triples),
    TheoremCheck("principal-jacobson", "for a,b,c in J(R): Rabc weakly 1-abs iff abc = 0", "all", _principal_jacobson),
    TheoremCheck("local-all-ideals", "local: all proper ideals weakly 1-abs iff M^3 = 0; M^2 = 0 gives all 1-abs", "local", _local_all_ideals),
    TheoremCheck(
        "global-classification",
        "all proper ideals weakly 1-abs: at most 3 maximals and one of the three shapes",
        "all",
        _global_classification,
        unmeetable={"three-factors-are-fields": "fields^3 fails via R1 x 0 x 0, and non-field factors fail by the same argument"},
    ),
    TheoremCheck(
        "zpk-analog",
        "artifact conjecture (not a published theorem): in Z_{p^k} weakly 1-abs ideals are M, M^2 or cube to zero",
        "zmod-prime-power",
        _zpk_analog,
    ),
)

CHECKS_BY_ID = {c.id: c for c in CHECKS}
MIN_PRIMES_ID = "min-primes-construction"

# checks whose hypothesis class is empty on every finite ring, with the reason
UNMEETABLE_CHECKS = {
    "not-one-absorbing-iff-nil": CHECKS_BY_ID["not-one-absorbing-iff-nil"].unmeetable["iff"],
}


def select_checks(pattern: str | None) -> list[TheoremCheck]:
    if not pattern:
        return list(CHECKS)
    return [c for c in CHECKS if pattern in c.id]


def run_check(check: TheoremCheck, ctx: RingContext) -> TheoremVerdict:
    start = time.perf_counter()
    if not in_scope(check.scope, ctx):
        return TheoremVerdict(check.id, ctx.ring.label, VACUOUS, note=f"out of scope ({check.scope})")
    t = Tally()
    try:
        check.run(ctx, t)
    except AbsorbingError as exc:
        return TheoremVerdict(
            check.id, ctx.ring.label, ERROR, note=f"{type(exc).__name__}: {exc}",
            millis=(time.perf_counter() - start) * 1e3,
        )
    if t.witness is not None:
        outcome = COUNTEREXAMPLE
    elif t.instances:
        outcome = VERIFIED
    else:
        outcome = VACUOUS
    return TheoremVerdict(
        check.id,
        ctx.ring.label,
        outcome,
        instances_checked=t.instances,
        witness=t.witness,
        parts=t.parts,
        findings=t.findings,
        millis=(time.perf_counter() - start) * 1e3,
    )


# ------------------------------------------------------------- construction


def min_primes_spec(n: int) -> str:
    return f"idealization({' x '.join(['Z8'] * n)}, proj1, {{0,4}})"


def check_min_primes_construction(n: int = 2, cap: int | None = None) -> TheoremVerdict:
    """Build ``(Z8)^n (+) {0,4}`` with first-coordinate action and test ``I = 0 (+) M``.

    The claims are: I is nonzero, I is weakly 1-absorbing prime, and exactly
    n primes are minimal over I. Each is reported as its own part.
    """
    if n < 2:
        raise InvalidSpec("the construction needs n >= 2")
    order = 2 * 8**n
    if cap is not None and order > cap:
        raise CapExceeded(f"construction for n={n} has order {order} > cap {cap}")
    start = time.perf_counter()
    ring = build_spec(min_primes_spec(n), cap=max(order, cap or 0))
    zero_d = ring.zero
    I = make_ideal(ring, [zero_d, zero_d + 1])  # (0, 0) and (0, 4): module index is the low digit
    t = Tally()
    t.count("I nonzero")
    if I.is_zero:
        t.fail("I nonzero", ideal=ideal_json(I))
    t.count("I weakly 1-absorbing prime")
    weak = is_weakly_one_absorbing_prime(I)
    if not weak:
        t.fail(
            "I weakly 1-absorbing prime",
            ideal=ideal_json(I),
            violation=_violation_json(ring, "weakly_one_absorbing_prime", I),
            facts=[fact("weakly_one_absorbing_prime", I, False)],
        )
    mins = minimal_primes_over(I, cap=ring.order)
    t.count("exactly n minimal primes")
    t.find("minimal_primes", len(mins))
    if len(mins) != n:
        t.fail("exactly n minimal primes", minimal_primes=[ideal_json(p) for p in mins])
    return TheoremVerdict(
        MIN_PRIMES_ID,
        ring.label,
        COUNTEREXAMPLE if t.witness else VERIFIED,
        instances_checked=t.instances,
        witness=t.witness,
        parts=t.parts,
        findings=t.findings,
        millis=(time.perf_counter() - start) * 1e3,
    )


# ------------------------------------------------------------------ recheck


def recheck_witness(ring: FiniteRing, witness: dict) -> bool:
    """Re-evaluate every recorded predicate fact from scratch; True iff all match."""
    facts = witness.get("facts", [])
    if not facts:
        return False
    for f in facts:
        target = ring if "factor" not in f else ring.factors[f["factor"]]
        ideal = make_ideal(target, f["ideal"])
        name = f["predicate"]
        if name not in PREDICATE_NAMES:
            raise DomainError(f"unknown predicate {name!r} in witness")
        if _decide(name, ideal) != f["value"]:
            return False
    return True
