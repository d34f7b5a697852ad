"""Per-ring cache shared by all theorem checks."""

from __future__ import annotations

from functools import cached_property

import numpy as np

from ..ideals import Ideal, product
from ..lattice import IdealLattice, enumerate_ideals
from ..predicates import _decide
from ..ring import FiniteRing, factor_coordinates, is_local, is_reduced, nilradical


class RingContext:
    """Lattice-indexed views of one ring: predicate flags, inclusion and products.

    Ideals are referred to by their position in the sorted lattice, so the
    zero ideal is index 0 and the whole ring is the last index.
    """

    def __init__(self, ring: FiniteRing, cap: int | None = None):
        self.ring = ring
        self.lattice: IdealLattice = enumerate_ideals(ring, cap)
        self.ideals: tuple[Ideal, ...] = self.lattice.ideals
        self.k = len(self.ideals)
        self._flags: dict[str, np.ndarray] = {}
        self._sub: dict[tuple[int, ...], Ideal] = {}

    # ---- flags

    def flag(self, name: str) -> np.ndarray:
        if name not in self._flags:
            self._flags[name] = np.array([_decide(name, i) for i in self.ideals], dtype=bool)
        return self._flags[name]

    @property
    def weakly(self) -> np.ndarray:
        return self.flag("weakly_one_absorbing_prime")

    @property
    def one_abs(self) -> np.ndarray:
        return self.flag("one_absorbing_prime")

    @property
    def weakly_not_one_abs(self) -> np.ndarray:
        return self.weakly & ~self.one_abs

    @cached_property
    def proper_idx(self) -> np.ndarray:
        return np.arange(self.k - 1)

    @property
    def zero_idx(self) -> int:
        return 0

    @property
    def whole_idx(self) -> int:
        return self.k - 1

    # ---- structure

    @cached_property
    def local(self) -> tuple[bool, Ideal | None]:
        return is_local(self.ring)

    @property
    def is_local(self) -> bool:
        return self.local[0]

    @cached_property
    def reduced(self) -> bool:
        return is_reduced(self.ring)

    @cached_property
    def nil(self) -> Ideal:
        return nilradical(self.ring)

    @cached_property
    def maximal_idx(self) -> list[int]:
        return [k for k, m in enumerate(self.lattice.maximal) if m]

    def index(self, i: Ideal) -> int:
        return self.lattice.index(i)

    @cached_property
    def masks(self) -> np.ndarray:
        return np.stack([i.mask for i in self.ideals])

    @cached_property
    def subset(self) -> np.ndarray:
        """``subset[i, j]`` is true iff ideal i is contained in ideal j."""
        m = self.masks.astype(np.float32)
        return (m @ (1.0 - m).T) == 0

    @cached_property
    def prod2(self) -> np.ndarray:
        """Lattice index of the product of every pair of ideals."""
        out = np.empty((self.k, self.k), dtype=np.intp)
        for a in range(self.k):
            for b in range(a, self.k):
                out[a, b] = out[b, a] = self.index(product(self.ideals[a], self.ideals[b]))
        return out

    def prod(self, *idx: int) -> int:
        out = idx[0]
        for j in idx[1:]:
            out = int(self.prod2[out, j])
        return out

    def power(self, a: int, n: int) -> int:
        return self.prod(*([a] * n))

    @cached_property
    def pair_products(self) -> np.ndarray:
        """``pair_products[a, b]`` masks the set ``{xy : x in I_a, y in I_b}`` over proper a, b."""
        r = self.ring
        p = self.proper_idx
        out = np.zeros((len(p), len(p), r.order), dtype=bool)
        for a in p:
            for b in range(a, len(p)):
                vals = r.mul[np.ix_(self.ideals[a].array, self.ideals[b].array)]
                out[a, b, vals.ravel()] = True
                out[b, a] = out[a, b]
        return out

    def nonfree(self, k: int) -> np.ndarray:
        """``nonfree[a, b, c]``: some (x, y, z) in I_a x I_b x I_c is a triple-zero of I_k.

        Proper ideals consist of nonunits, so the triple-zero condition reduces
        to ``xyz = 0`` with ``xy`` and ``z`` outside I_k.
        """
        r = self.ring
        m = self.ideals[k].mask
        n = len(self.proper_idx)
        # zero_pc[p, z]: p outside I, z outside I, pz = 0
        zero_pc = (r.mul == r.zero) & ~m[:, None] & ~m[None, :]
        reach = self.pair_products.reshape(n * n, r.order).astype(np.float32) @ zero_pc.astype(np.float32)
        hit = (reach > 0).astype(np.float32) @ self.masks[self.proper_idx].T.astype(np.float32)
        return (hit > 0).reshape(n, n, n)

    # ---- products of rings

    @cached_property
    def factor_contexts(self) -> list["RingContext"]:
        return [RingContext(f) for f in self.ring.factors]

    @cached_property
    def coords(self) -> list[np.ndarray]:
        return factor_coordinates(self.ring)

    def product_ideal(self, parts: tuple[int, ...]) -> Ideal:
        """The ideal ``I1 x ... x Ik`` from lattice indices of the factor lattices."""
        if parts not in self._sub:
            mask = np.ones(self.ring.order, dtype=bool)
            for fctx, coord, p in zip(self.factor_contexts, self.coords, parts):
                mask &= fctx.ideals[p].mask[coord]
            self._sub[parts] = self.ideals[self.index(Ideal(self.ring, mask))]
        return self._sub[parts]
