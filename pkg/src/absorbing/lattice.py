"""Enumeration of the full ideal lattice and the prime/maximal structure on it."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DomainError
from .ideals import Ideal, intersect, span
from .predicates import is_prime
from .ring import FiniteRing, check_cap


@dataclass(frozen=True, eq=False)
class IdealLattice:
    ring: FiniteRing
    ideals: tuple[Ideal, ...]
    maximal: tuple[bool, ...]
    prime: tuple[bool, ...]

    @property
    def proper(self) -> tuple[bool, ...]:
        return tuple(i.proper for i in self.ideals)

    def __len__(self) -> int:
        return len(self.ideals)

    def __iter__(self):
        return iter(self.ideals)

    @cached_property
    def _index(self) -> dict[int, int]:
        return {i.bits: k for k, i in enumerate(self.ideals)}

    def index(self, i: Ideal) -> int:
        return self._index[i.bits]

    def proper_ideals(self) -> list[Ideal]:
        return [i for i in self.ideals if i.proper]

    def to_json(self) -> dict:
        return {
            "ring_label": self.ring.label,
            "ideals": [
                {"members": i.to_json(), "proper": i.proper, "maximal": mx, "prime": pr}
                for i, mx, pr in zip(self.ideals, self.maximal, self.prime)
            ],
        }


def principal_ideals(r: FiniteRing) -> dict[int, int]:
    """Distinct principal ideals as ``bits -> generator``; ``Ra`` is row ``a`` of the table."""
    out: dict[int, int] = {}
    for a in range(r.order):
        mask = np.zeros(r.order, dtype=bool)
        mask[r.mul[a]] = True
        bits = int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")
        out.setdefault(bits, a)
    return out


def enumerate_ideals(r: FiniteRing, cap: int | None = None) -> IdealLattice:
    """All ideals, by breadth-first closure from ``{0}``.

    From each known ideal ``I`` and each principal ideal ``Ra`` not inside it
    the search adds ``I + Ra``. Every ideal is a finite sum of principal
    ideals, so the fixpoint is the whole lattice.
    """
    if "lattice" in r.cache:
        return r.cache["lattice"]
    check_cap(r.order, cap)
    gens = sorted(principal_ideals(r).values())
    # R-multiples of a are additively spanned by x*a, x over additive generators
    seeds = {a: np.unique(r.mul[r.additive_generators, a]) for a in gens}
    found: dict[int, Ideal] = {}
    start = r.zero_ideal
    found[start.bits] = start
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for a in gens:
            if cur.mask[a]:
                continue
            nxt = Ideal(r, span(r, seeds[a], cur.mask))
            if nxt.bits not in found:
                found[nxt.bits] = nxt
                queue.append(nxt)
    ideals = sorted(found.values(), key=lambda i: i.sort_key)
    proper = [i for i in ideals if i.proper]
    maximal = []
    for i in ideals:
        maximal.append(
            i.proper and not any(j.bits != i.bits and (i.bits & ~j.bits) == 0 for j in proper)
        )
    lattice = IdealLattice(
        ring=r,
        ideals=tuple(ideals),
        maximal=tuple(maximal),
        prime=tuple(is_prime(i) for i in ideals),
    )
    r.cache["lattice"] = lattice
    return lattice


def maximal_ideals(r: FiniteRing, cap: int | None = None) -> list[Ideal]:
    lat = enumerate_ideals(r, cap)
    return [i for i, m in zip(lat.ideals, lat.maximal) if m]


def prime_ideals(r: FiniteRing, cap: int | None = None) -> list[Ideal]:
    lat = enumerate_ideals(r, cap)
    return [i for i, p in zip(lat.ideals, lat.prime) if p]


def jacobson_radical(r: FiniteRing, cap: int | None = None) -> Ideal:
    out = r.whole
    for m in maximal_ideals(r, cap):
        out = intersect(out, m)
    return out


def minimal_primes_over(i: Ideal, cap: int | None = None) -> list[Ideal]:
    if not i.proper:
        raise DomainError("minimal primes are only defined over proper ideals")
    over = [p for p in prime_ideals(i.ring, cap) if i <= p]
    return [p for p in over if not any(q < p for q in over)]
