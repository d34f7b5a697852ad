"""Ideal-class predicates and triple-zero witnesses.

Every predicate has a ``*_violation`` form returning the lexicographically
first violating tuple (or ``None``) and a boolean ``is_*`` form. An improper
ideal fails every predicate without a witness.

Scans use two reductions, both cross-checked against naive full scans in the
test suite:

* The 1-absorbing family depends on ``a`` and ``b`` only through ``p = ab``,
  so the decision is made over (distinct nonunit products) x (nonunits).
* For the 2-absorbing family a unit in the triple always satisfies the
  conclusion, so only nonunit triples are scanned, and since the conclusion is
  symmetric in all three slots only sorted triples ``a <= b <= c``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from typing import Callable, NamedTuple

import numpy as np

from .errors import DomainError, InternalError
from .ideals import Ideal, power, product, radical


class TripleZero(NamedTuple):
    a: int
    b: int
    c: int


def _nonunit_products(r) -> tuple[np.ndarray, np.ndarray]:
    """(NU x NU product table, sorted distinct products)."""
    if "nu_products" not in r.cache:
        nu = r.nonunits
        table = r.mul[np.ix_(nu, nu)]
        r.cache["nu_products"] = (table, np.unique(table))
    return r.cache["nu_products"]


# ------------------------------------------------------------------ pair scans


def _pair_violation(i: Ideal, bad: Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]):
    """First (a, b) with ``bad(a_col, b_row, ab)`` true, scanning all elements."""
    r = i.ring
    x = r.elements
    hits = bad(x[:, None], x[None, :], r.mul)
    idx = np.argwhere(hits)
    if len(idx):
        return tuple(int(v) for v in idx[0])
    return None


def prime_violation(i: Ideal):
    m = i.mask
    return _pair_violation(i, lambda a, b, ab: m[ab] & ~m[a] & ~m[b])


def weakly_prime_violation(i: Ideal):
    m, z = i.mask, i.ring.zero
    return _pair_violation(i, lambda a, b, ab: (ab != z) & m[ab] & ~m[a] & ~m[b])


def primary_violation(i: Ideal):
    m, rad = i.mask, radical(i).mask
    return _pair_violation(i, lambda a, b, ab: m[ab] & ~m[a] & ~rad[b])


def almost_prime_violation(i: Ideal):
    m, sq = i.mask, power(i, 2).mask
    return _pair_violation(i, lambda a, b, ab: m[ab] & ~sq[ab] & ~m[a] & ~m[b])


def two_prime_violation(i: Ideal):
    m = i.mask
    sq = m[np.diagonal(i.ring.mul)]
    return _pair_violation(i, lambda a, b, ab: m[ab] & ~sq[a] & ~sq[b])


# --------------------------------------------------- product-reduced triple scans


def _pc_violation(i: Ideal, bad: Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]):
    """First nonunit (a, b, c) with ``bad(p, c, pc)`` where ``p = ab``.

    ``bad`` is evaluated on the grid (distinct nonunit products) x nonunits.
    The witness search exploits a<->b symmetry: the first violating triple has
    ``a <= b``.
    """
    r = i.ring
    nu = r.nonunits
    if len(nu) == 0:
        return None
    table, pvals = _nonunit_products(r)
    grid = bad(pvals[:, None], nu[None, :], r.mul[np.ix_(pvals, nu)])
    rows = grid.any(axis=1)
    if not rows.any():
        return None
    bad_p = np.zeros(r.order, dtype=bool)
    bad_p[pvals[rows]] = True
    first_c = np.full(r.order, -1, dtype=np.intp)
    first_c[pvals[rows]] = nu[np.argmax(grid[rows], axis=1)]
    hits = np.triu(bad_p[table])
    ai, bi = np.argwhere(hits)[0]
    a, b = int(nu[ai]), int(nu[bi])
    return TripleZero(a, b, int(first_c[r.mul[a, b]]))


def one_absorbing_prime_violation(i: Ideal):
    m = i.mask
    return _pc_violation(i, lambda p, c, pc: m[pc] & ~m[p] & ~m[c])


def weakly_one_absorbing_prime_violation(i: Ideal):
    m, z = i.mask, i.ring.zero
    return _pc_violation(i, lambda p, c, pc: (pc != z) & m[pc] & ~m[p] & ~m[c])


def one_absorbing_primary_violation(i: Ideal):
    m, rad = i.mask, radical(i).mask
    return _pc_violation(i, lambda p, c, pc: m[pc] & ~m[p] & ~rad[c])


def _triple_zero_scan(i: Ideal):
    m, z = i.mask, i.ring.zero
    return _pc_violation(i, lambda p, c, pc: (pc == z) & ~m[p] & ~m[c])


# ------------------------------------------------------------ 2-absorbing scans


def _two_absorbing_scan(i: Ideal, weakly: bool):
    r = i.ring
    m = i.mask
    nu = r.nonunits
    table, _ = _nonunit_products(r)
    in_bc = m[table]
    z = r.zero
    for k, a in enumerate(nu):
        rest = nu[k:]
        ab = table[k, k:]
        abc = r.mul[ab[:, None], rest[None, :]]
        bad = m[abc] & ~m[ab][:, None] & ~m[ab][None, :] & ~in_bc[k:, k:]
        if weakly:
            bad &= abc != z
        bad = np.triu(bad)
        if bad.any():
            bi, ci = np.argwhere(bad)[0]
            return TripleZero(int(a), int(rest[bi]), int(rest[ci]))
    return None


def two_absorbing_violation(i: Ideal):
    return _two_absorbing_scan(i, weakly=False)


def weakly_two_absorbing_violation(i: Ideal):
    return _two_absorbing_scan(i, weakly=True)


# ------------------------------------------------------------------ public API

VIOLATIONS: dict[str, Callable[[Ideal], tuple | None]] = {
    "prime": prime_violation,
    "weakly_prime": weakly_prime_violation,
    "primary": primary_violation,
    "almost_prime": almost_prime_violation,
    "two_prime": two_prime_violation,
    "two_absorbing": two_absorbing_violation,
    "weakly_two_absorbing": weakly_two_absorbing_violation,
    "one_absorbing_prime": one_absorbing_prime_violation,
    "weakly_one_absorbing_prime": weakly_one_absorbing_prime_violation,
    "one_absorbing_primary": one_absorbing_primary_violation,
}

PREDICATE_NAMES = tuple(VIOLATIONS)


def _decide(name: str, i: Ideal) -> bool:
    if not i.proper:
        return False
    cache = i.ring.cache.setdefault("verdicts", {})
    key = (name, i.bits)
    if key not in cache:
        cache[key] = VIOLATIONS[name](i)
    return cache[key] is None


def witness(name: str, i: Ideal):
    """Lexicographically first violating tuple for predicate ``name`` (None if it holds or I = R)."""
    if not i.proper:
        return None
    _decide(name, i)
    return i.ring.cache["verdicts"][(name, i.bits)]


def is_prime(i: Ideal) -> bool:
    return _decide("prime", i)


def is_weakly_prime(i: Ideal) -> bool:
    return _decide("weakly_prime", i)


def is_primary(i: Ideal) -> bool:
    return _decide("primary", i)


def is_almost_prime(i: Ideal) -> bool:
    return _decide("almost_prime", i)


def is_two_prime(i: Ideal) -> bool:
    return _decide("two_prime", i)


def is_two_absorbing(i: Ideal) -> bool:
    return _decide("two_absorbing", i)


def is_weakly_two_absorbing(i: Ideal) -> bool:
    return _decide("weakly_two_absorbing", i)


def is_one_absorbing_prime(i: Ideal) -> bool:
    return _decide("one_absorbing_prime", i)


def is_weakly_one_absorbing_prime(i: Ideal) -> bool:
    return _decide("weakly_one_absorbing_prime", i)


def is_one_absorbing_primary(i: Ideal) -> bool:
    return _decide("one_absorbing_primary", i)


def find_triple_zero(i: Ideal) -> TripleZero | None:
    """First nonunit triple with ``abc = 0``, ``ab`` not in I and ``c`` not in I."""
    if not i.proper:
        raise DomainError("triple-zeros are only defined for proper ideals")
    cache = i.ring.cache.setdefault("triple_zero", {})
    if i.bits not in cache:
        cache[i.bits] = _triple_zero_scan(i)
    return cache[i.bits]


def is_triple_zero(i: Ideal, a: int, b: int, c: int) -> bool:
    r = i.ring
    if r.unit_mask[[a, b, c]].any():
        return False
    ab = r.mul[a, b]
    return r.mul[ab, c] == r.zero and not i.mask[ab] and not i.mask[c]


def is_free_triple_zero(i: Ideal, i1: Ideal, i2: Ideal, i3: Ideal) -> bool:
    """No nonunit (a, b, c) in I1 x I2 x I3 is a triple-zero of I.

    Requires ``I1 I2 I3 <= I``.
    """
    if not product(product(i1, i2), i3) <= i:
        raise DomainError("free triple-zero needs I1*I2*I3 contained in I")
    return free_triple_zero_witness(i, i1, i2, i3) is None


def free_triple_zero_witness(i: Ideal, i1: Ideal, i2: Ideal, i3: Ideal):
    """A triple-zero of I drawn from I1 x I2 x I3, or None (no containment check)."""
    r = i.ring
    nu = ~r.unit_mask
    A = np.flatnonzero(i1.mask & nu)
    B = np.flatnonzero(i2.mask & nu)
    C = np.flatnonzero(i3.mask & nu & ~i.mask)
    if len(A) == 0 or len(B) == 0 or len(C) == 0:
        return None
    ab = r.mul[np.ix_(A, B)]
    cand = np.unique(ab[~i.mask[ab]])
    if len(cand) == 0:
        return None
    zero_pc = r.mul[np.ix_(cand, C)] == r.zero
    if not zero_pc.any():
        return None
    good = np.zeros(r.order, dtype=bool)
    good[cand[zero_pc.any(axis=1)]] = True
    ai, bi = np.argwhere(good[ab])[0]
    a, b = int(A[ai]), int(B[bi])
    c = int(C[np.argmax(r.mul[r.mul[a, b], C] == r.zero)])
    return TripleZero(a, b, c)


# -------------------------------------------------------------- classification

# (antecedent, consequent) pairs that must hold on every profile
HIERARCHY = (
    ("prime", "weakly_prime"),
    ("prime", "one_absorbing_prime"),
    ("one_absorbing_prime", "weakly_one_absorbing_prime"),
    ("weakly_prime", "weakly_one_absorbing_prime"),
    ("weakly_one_absorbing_prime", "weakly_two_absorbing"),
    ("one_absorbing_prime", "one_absorbing_primary"),
)


@dataclass
class ClassificationProfile:
    prime: bool
    weakly_prime: bool
    primary: bool
    almost_prime: bool
    two_prime: bool
    two_absorbing: bool
    weakly_two_absorbing: bool
    one_absorbing_prime: bool
    weakly_one_absorbing_prime: bool
    one_absorbing_primary: bool
    witnesses: dict = field(default_factory=dict, compare=False)

    def flags(self) -> dict[str, bool]:
        return {f.name: getattr(self, f.name) for f in fields(self) if f.name != "witnesses"}

    def hierarchy_violations(self) -> list[tuple[str, str]]:
        return [(a, b) for a, b in HIERARCHY if getattr(self, a) and not getattr(self, b)]

    def to_json(self) -> dict:
        out: dict = dict(self.flags())
        if self.witnesses:
            out["witnesses"] = {k: list(v) for k, v in self.witnesses.items()}
        return out


def classify(i: Ideal) -> ClassificationProfile:
    """Evaluate every predicate and enforce the hierarchy.

    Raises :class:`InternalError` if any implication in :data:`HIERARCHY`
    fails, since that would contradict a published result or expose a bug.
    """
    flags = {name: _decide(name, i) for name in PREDICATE_NAMES}
    wit = {}
    for name, ok in flags.items():
        if not ok:
            w = witness(name, i)
            if w is not None:
                wit[name] = tuple(w)
    profile = ClassificationProfile(**flags, witnesses=wit)
    broken = profile.hierarchy_violations()
    if broken:
        raise InternalError(
            f"hierarchy violated on {i!r}: {broken}",
            payload={"ring": i.ring.label, "ideal": list(i.members), "violations": broken},
        )
    return profile
