"""Independent brute-force oracles shared by the tests.

Nothing here calls the package's scans: every oracle works from the raw
operation tables with plain loops or full subset enumeration.
"""

from __future__ import annotations

import functools
import sys
from itertools import product as cartesian

import numpy as np
import pytest

from absorbing import build_spec
from absorbing.theorems import default_corpus


@functools.lru_cache(maxsize=None)
def ring(spec: str, cap: int = 256):
    return build_spec(spec, cap=cap)


@functools.lru_cache(maxsize=None)
def corpus_specs(max_order: int | None = None) -> tuple[str, ...]:
    out = []
    for e in default_corpus():
        if e.slow:
            continue
        if max_order is None or ring(e.spec).order <= max_order:
            out.append(e.spec)
    return tuple(out)


def naive_ideals(r) -> set[frozenset[int]]:
    """Every subset of R that is an ideal, by filtering all 2^n subsets."""
    n = r.order
    codes = np.arange(1 << n, dtype=np.int64)
    masks = ((codes[:, None] >> np.arange(n)) & 1).astype(bool)
    ok = masks[:, r.zero].copy()
    for x in range(n):
        for y in range(n):
            ok &= ~(masks[:, x] & masks[:, y]) | masks[:, r.add[x, y]]
            ok &= ~masks[:, y] | masks[:, r.mul[x, y]]
    return {frozenset(np.flatnonzero(m).tolist()) for m in masks[ok]}


def naive_units(r) -> set[int]:
    return {a for a in range(r.order) if any(r.mul[a, b] == r.one for b in range(r.order))}


def naive_power(r, x: int, k: int) -> int:
    out = r.one
    for _ in range(k):
        out = r.mul[out, x]
    return out


def naive_radical(r, members: frozenset[int]) -> frozenset[int]:
    return frozenset(
        x for x in range(r.order) if any(naive_power(r, x, k) in members for k in range(1, r.order + 1))
    )


def naive_closure(r, gens) -> frozenset[int]:
    cur = {r.zero, *gens}
    while True:
        nxt = set(cur)
        nxt |= {int(r.add[x, y]) for x in cur for y in cur}
        nxt |= {int(r.mul[s, x]) for s in range(r.order) for x in cur}
        if nxt == cur:
            return frozenset(cur)
        cur = nxt


def naive_product(r, i: frozenset[int], j: frozenset[int]) -> frozenset[int]:
    return naive_closure(r, {int(r.mul[a, b]) for a in i for b in j})


def naive_violation(r, name: str, members: frozenset[int]):
    """Lexicographically first violating tuple of predicate ``name``, by direct loops.

    Returns ``False`` for an improper ideal (fails with no witness), ``None``
    if the predicate holds, else the tuple.
    """
    n = r.order
    if len(members) == n:
        return False
    I = members
    z = r.zero
    nonunits = [a for a in range(n) if a not in naive_units(r)]
    rad = naive_radical(r, I)
    sq = naive_product(r, I, I)
    mul = r.mul
    pair_tests = {
        "prime": lambda a, b, ab: ab in I and a not in I and b not in I,
        "weakly_prime": lambda a, b, ab: ab != z and ab in I and a not in I and b not in I,
        "primary": lambda a, b, ab: ab in I and a not in I and b not in rad,
        "almost_prime": lambda a, b, ab: ab in I and ab not in sq and a not in I and b not in I,
        "two_prime": lambda a, b, ab: ab in I and mul[a, a] not in I and mul[b, b] not in I,
    }
    if name in pair_tests:
        test = pair_tests[name]
        for a, b in cartesian(range(n), repeat=2):
            if test(a, b, int(mul[a, b])):
                return (a, b)
        return None
    one_abs = {
        "one_absorbing_prime": lambda ab, c, abc: abc in I and ab not in I and c not in I,
        "weakly_one_absorbing_prime": lambda ab, c, abc: abc != z and abc in I and ab not in I and c not in I,
        "one_absorbing_primary": lambda ab, c, abc: abc in I and ab not in I and c not in rad,
    }
    if name in one_abs:
        test = one_abs[name]
        for a, b, c in cartesian(nonunits, repeat=3):
            ab = int(mul[a, b])
            if test(ab, c, int(mul[ab, c])):
                return (a, b, c)
        return None
    if name in ("two_absorbing", "weakly_two_absorbing"):
        weakly = name.startswith("weakly")
        for a, b, c in cartesian(range(n), repeat=3):
            ab, ac, bc = int(mul[a, b]), int(mul[a, c]), int(mul[b, c])
            abc = int(mul[ab, c])
            if weakly and abc == z:
                continue
            if abc in I and ab not in I and ac not in I and bc not in I:
                return (a, b, c)
        return None
    raise KeyError(name)


def naive_triple_zero(r, members: frozenset[int]):
    units = naive_units(r)
    nonunits = [a for a in range(r.order) if a not in units]
    for a, b, c in cartesian(nonunits, repeat=3):
        ab = int(r.mul[a, b])
        if r.mul[ab, c] == r.zero and ab not in members and c not in members:
            return (a, b, c)
    return None


@pytest.fixture
def z12():
    return ring("Z12")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
