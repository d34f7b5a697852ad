"""Ideals of a finite ring and the arithmetic on them.

An :class:`Ideal` is a boolean membership mask over the ring's elements plus
its sorted member tuple. Subgroup closure is done by adjoining cyclic
subgroups one generator at a time, so building an ideal costs roughly its own
size times the number of generators needed.
"""

from __future__ import annotations

from functools import cached_property
from typing import TYPE_CHECKING, Iterable

import numpy as np

from .errors import DomainError

if TYPE_CHECKING:
    from .ring import FiniteRing


class Ideal:
    def __init__(self, ring: "FiniteRing", mask: np.ndarray):
        mask = np.asarray(mask, dtype=bool)
        mask.setflags(write=False)
        self.ring = ring
        self.mask = mask
        self.members = tuple(int(x) for x in np.flatnonzero(mask))
        self.bits = int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x) -> bool:
        return bool(self.mask[x])

    def __eq__(self, other) -> bool:
        return isinstance(other, Ideal) and other.ring is self.ring and other.bits == self.bits

    def __hash__(self) -> int:
        return hash((id(self.ring), self.bits))

    def __le__(self, other: "Ideal") -> bool:
        _same_ring(self, other)
        return self.bits & ~other.bits == 0

    def __lt__(self, other: "Ideal") -> bool:
        return self <= other and self.bits != other.bits

    def __repr__(self) -> str:
        return f"Ideal({self.ring.label}: {self.labels()})"

    @property
    def proper(self) -> bool:
        return len(self.members) < self.ring.order

    @property
    def is_zero(self) -> bool:
        return len(self.members) == 1

    @property
    def sort_key(self) -> tuple:
        return (len(self.members), self.members)

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.members, dtype=np.intp)

    @cached_property
    def generators(self) -> np.ndarray:
        """A small additive generating set (greedy, at most log2(|I|) elements)."""
        gens = []
        mask = np.zeros(self.ring.order, dtype=bool)
        mask[self.ring.zero] = True
        for x in self.members:
            if not mask[x]:
                gens.append(x)
                mask = span(self.ring, [x], mask)
        return np.array(gens, dtype=np.intp)

    def labels(self) -> list:
        return [self.ring.label_of(x) for x in self.members]

    def to_json(self) -> list[int]:
        return list(self.members)


def _same_ring(i: Ideal, j: Ideal) -> None:
    if i.ring is not j.ring:
        raise DomainError(f"ideals live in different rings ({i.ring.label} vs {j.ring.label})")


def ideal_from_mask(r: "FiniteRing", mask: np.ndarray) -> Ideal:
    return Ideal(r, mask)


def span(r: "FiniteRing", gens: Iterable[int], base: np.ndarray | None = None) -> np.ndarray:
    """Membership mask of the additive subgroup generated by ``base`` and ``gens``.

    ``base`` must already be a subgroup mask.
    """
    if base is None:
        mask = np.zeros(r.order, dtype=bool)
        mask[r.zero] = True
    else:
        mask = base
    for g in gens:
        g = int(g)
        if mask[g]:
            continue
        members = np.flatnonzero(mask)
        out = mask.copy()
        s = g
        # H + <g> is the union of the cosets H + kg until kg falls back into H
        while not mask[s]:
            out[r.add[members, s]] = True
            s = int(r.add[s, g])
        mask = out
    return mask


def ideal_generated(r: "FiniteRing", gens: Iterable[int]) -> Ideal:
    """Smallest ideal containing ``gens``.

    The ideal is the additive span of ``x*g`` for ``x`` ranging over additive
    generators of the ring, which is closed under multiplication already.
    """
    gens = np.array(sorted({int(g) for g in gens}), dtype=np.intp)
    if len(gens) == 0:
        return r.zero_ideal
    seeds = np.unique(r.mul[np.ix_(r.additive_generators, gens)])
    return Ideal(r, span(r, seeds))


def make_ideal(r: "FiniteRing", members: Iterable[int]) -> Ideal:
    """Wrap an explicit member set, refusing anything that is not an ideal."""
    members = {int(m) for m in members}
    gen = ideal_generated(r, members)
    if len(gen) != len(members | {r.zero}) or not all(m in gen for m in members):
        raise DomainError(f"{sorted(members)} is not an ideal of {r.label}")
    return gen


def ideal_sum(i: Ideal, j: Ideal) -> Ideal:
    _same_ring(i, j)
    return Ideal(i.ring, span(i.ring, j.generators, i.mask))


def product(i: Ideal, j: Ideal) -> Ideal:
    """``IJ``: additively spanned by products of additive generators of each factor."""
    _same_ring(i, j)
    r = i.ring
    if i.is_zero or j.is_zero:
        return r.zero_ideal
    seeds = np.unique(r.mul[np.ix_(i.generators, j.generators)])
    return Ideal(r, span(r, seeds))


def power(i: Ideal, k: int) -> Ideal:
    if k < 1:
        raise DomainError(f"ideal power needs k >= 1, got {k}")
    out = i
    for _ in range(k - 1):
        out = product(out, i)
    return out


def intersect(i: Ideal, j: Ideal) -> Ideal:
    _same_ring(i, j)
    return Ideal(i.ring, i.mask & j.mask)


def radical(i: Ideal) -> Ideal:
    """``{x : x^n in I for some n <= order}``."""
    r = i.ring
    return Ideal(r, i.mask[element_powers(r)].any(axis=0))


def element_powers(r: "FiniteRing") -> np.ndarray:
    """Row ``k-1`` holds ``x^k`` for every element ``x``, for ``k = 1..order``."""
    if "powers" not in r.cache:
        x = r.elements
        rows = [x]
        for _ in range(r.order - 1):
            rows.append(r.mul[rows[-1], x])
        pw = np.stack(rows)
        pw.setflags(write=False)
        r.cache["powers"] = pw
    return r.cache["powers"]


def colon(i: Ideal, c: int) -> Ideal:
    """``(I : c) = {x : xc in I}``."""
    r = i.ring
    return Ideal(r, i.mask[r.mul[:, int(c)]])


def annihilator(r: "FiniteRing", x: int) -> Ideal:
    return colon(r.zero_ideal, x)
