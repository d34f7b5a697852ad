"""Finite commutative unital rings stored as dense operation tables.

Elements are the integers ``0..order-1``. Every constructor returns an
immutable :class:`FiniteRing`; derived data (units, nilradical, lattices) is
computed lazily and cached on the instance.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Sequence

import numpy as np

from .errors import CapExceeded, InvalidSpec
from .ideals import Ideal, ideal_from_mask, ideal_generated, span

DEFAULT_CAP = 256
CAP_ENV = "ABSORBING_CAP"


def default_cap() -> int:
    """Order cap, overridable through the ``ABSORBING_CAP`` environment variable."""
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise InvalidSpec(f"{CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 2:
        raise InvalidSpec(f"{CAP_ENV} must be >= 2, got {cap}")
    return cap


def check_cap(order: int, cap: int | None, what: str = "ring") -> None:
    cap = default_cap() if cap is None else cap
    if order > cap:
        raise CapExceeded(f"{what} of order {order} exceeds cap {cap}")


def _frozen(table: np.ndarray) -> np.ndarray:
    table = np.ascontiguousarray(table, dtype=np.intp)
    table.setflags(write=False)
    return table


class FiniteRing:
    """A finite commutative ring with identity.

    ``add`` and ``mul`` are ``order x order`` integer tables. The constructor
    only checks shapes; use :func:`validate_ring` for the axioms.
    """

    def __init__(
        self,
        add: np.ndarray,
        mul: np.ndarray,
        zero: int,
        one: int,
        label: str,
        *,
        element_labels: Sequence[Any] | None = None,
        factors: Sequence["FiniteRing"] = (),
        projection: np.ndarray | None = None,
        base: "FiniteRing | None" = None,
    ):
        add = _frozen(add)
        mul = _frozen(mul)
        n = add.shape[0]
        if add.shape != (n, n) or mul.shape != (n, n):
            raise InvalidSpec("operation tables must be square and of equal size")
        if n < 2:
            raise InvalidSpec("the zero ring is not allowed (order must be >= 2)")
        if not (0 <= zero < n and 0 <= one < n):
            raise InvalidSpec("zero/one index out of range")
        if zero == one:
            raise InvalidSpec("zero and one must differ")
        if add.min() < 0 or add.max() >= n or mul.min() < 0 or mul.max() >= n:
            raise InvalidSpec("table entry out of range")
        self.add = add
        self.mul = mul
        self.zero = int(zero)
        self.one = int(one)
        self.label = label
        self.factors = tuple(factors)
        # for quotients: base ring element -> coset index
        self.projection = None if projection is None else _frozen(projection)
        self.base = base
        self.spec = None  # set by spec.build_spec
        self.element_labels = (
            list(range(n)) if element_labels is None else list(element_labels)
        )
        if len(self.element_labels) != n:
            raise InvalidSpec("element_labels length does not match order")
        self.cache: dict[str, Any] = {}

    def __repr__(self) -> str:
        return f"FiniteRing({self.label!r}, order={self.order})"

    @property
    def order(self) -> int:
        return self.add.shape[0]

    @cached_property
    def elements(self) -> np.ndarray:
        return np.arange(self.order)

    @cached_property
    def neg(self) -> np.ndarray:
        return np.argmax(self.add == self.zero, axis=1)

    @cached_property
    def unit_mask(self) -> np.ndarray:
        mask = (self.mul == self.one).any(axis=1)
        mask.setflags(write=False)
        return mask

    @cached_property
    def units(self) -> np.ndarray:
        return np.flatnonzero(self.unit_mask)

    @cached_property
    def nonunits(self) -> np.ndarray:
        return np.flatnonzero(~self.unit_mask)

    @cached_property
    def additive_generators(self) -> np.ndarray:
        """A small generating set of the additive group, chosen greedily."""
        gens = []
        mask = np.zeros(self.order, dtype=bool)
        mask[self.zero] = True
        for x in range(self.order):
            if not mask[x]:
                gens.append(x)
                mask = span(self, [x], mask)
        return np.array(gens, dtype=np.intp)

    @cached_property
    def label_index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.element_labels)}

    def label_of(self, x: int):
        return self.element_labels[x]

    def index_of(self, label) -> int:
        """Element index for a label (an int index is accepted as-is)."""
        if isinstance(label, list):
            label = tuple(label)
        if label in self.label_index:
            return self.label_index[label]
        if isinstance(label, (int, np.integer)) and 0 <= label < self.order:
            return int(label)
        raise InvalidSpec(f"{label!r} is not an element of {self.label}")

    def power(self, x: int, k: int) -> int:
        out = self.one
        for _ in range(k):
            out = int(self.mul[out, x])
        return out

    @cached_property
    def zero_ideal(self) -> Ideal:
        mask = np.zeros(self.order, dtype=bool)
        mask[self.zero] = True
        return ideal_from_mask(self, mask)

    @cached_property
    def whole(self) -> Ideal:
        return ideal_from_mask(self, np.ones(self.order, dtype=bool))


# ---------------------------------------------------------------- modules


@dataclass(frozen=True, eq=False)
class ModuleSpec:
    """A finite module over a ring given by explicit tables.

    ``carrier`` is the addition table of the module, ``action[r, m]`` the
    index of ``r*m``.
    """

    carrier: np.ndarray
    zero: int
    action: np.ndarray
    labels: tuple = field(default=())
    kind: str = "table"

    @property
    def size(self) -> int:
        return self.carrier.shape[0]


def natural_module(r: FiniteRing, members: Sequence[int]) -> ModuleSpec:
    """The ideal ``members`` of ``r`` viewed as an ``r``-module."""
    members = sorted({int(m) for m in members} | {r.zero})
    gen = ideal_generated(r, members)
    if gen.members != tuple(members):
        raise InvalidSpec(f"{_fmt_set(r, members)} is not an ideal of {r.label}")
    pos = {m: k for k, m in enumerate(members)}
    arr = np.array(members)
    carrier = np.vectorize(pos.__getitem__)(r.add[np.ix_(arr, arr)])
    action = np.vectorize(pos.__getitem__)(r.mul[:, arr])
    return ModuleSpec(
        carrier=_frozen(carrier),
        zero=pos[r.zero],
        action=_frozen(action),
        labels=tuple(r.label_of(m) for m in members),
        kind="natural",
    )


def projection_module(r: FiniteRing, members: Sequence[int]) -> ModuleSpec:
    """An ideal of the first factor of a product ring, acted on by first coordinates.

    For ``x = (a1, ..., an)`` and ``m`` in the module, ``x*m = a1*m``.
    """
    if not r.factors:
        raise InvalidSpec("proj1 action needs a product ring")
    first = r.factors[0]
    inner = natural_module(first, members)
    # first coordinate is the most significant digit
    stride = r.order // first.order
    first_coord = r.elements // stride
    return ModuleSpec(
        carrier=inner.carrier,
        zero=inner.zero,
        action=_frozen(inner.action[first_coord]),
        labels=inner.labels,
        kind="proj1",
    )


def module_violations(r: FiniteRing, m: ModuleSpec, limit: int = 1) -> list[tuple[str, tuple]]:
    """Check abelian-group and module axioms; return up to ``limit`` failures per axiom."""
    out: list[tuple[str, tuple]] = []
    k = m.size
    c = m.carrier
    act = m.action
    if c.shape != (k, k) or act.shape != (r.order, k):
        return [("shape", (c.shape, act.shape))]
    if c.min() < 0 or c.max() >= k or act.min() < 0 or act.max() >= k:
        return [("range", ())]

    def report(name, bad, *coords):
        idx = np.argwhere(bad)
        for row in idx[:limit]:
            out.append((name, tuple(int(v) for v in row)))

    ks = np.arange(k)
    report("module addition commutative", c != c.T)
    report("module addition associative", c[c[:, :, None], ks[None, None, :]] != c[ks[:, None, None], c[None, :, :]])
    report("module zero", c[m.zero] != ks)
    report("module inverses", ~(c == m.zero).any(axis=1))
    # r(m+n) = rm + rn
    report("r(m+n) = rm+rn", act[:, c] != c[act[:, :, None], act[:, None, :]])
    # (r+s)m = rm + sm
    report("(r+s)m = rm+sm", act[r.add] != c[act[:, None, :], act[None, :, :]])
    # (rs)m = r(sm)
    rows = np.arange(r.order)
    report("(rs)m = r(sm)", act[r.mul] != act[rows[:, None, None], act[None, :, :]])
    report("1m = m", act[r.one] != ks)
    return out


# ----------------------------------------------------------- constructors


def build_zmod(n: int, cap: int | None = None) -> FiniteRing:
    if n < 2:
        raise InvalidSpec(f"Z{n}: modulus must be >= 2")
    check_cap(n, cap)
    a = np.arange(n)
    return FiniteRing(
        (a[:, None] + a[None, :]) % n,
        (a[:, None] * a[None, :]) % n,
        zero=0,
        one=1 % n,
        label=f"Z{n}",
    )


def _paren(r: FiniteRing) -> str:
    return f"({r.label})" if " " in r.label else r.label


def build_product(factors: Sequence[FiniteRing], cap: int | None = None) -> FiniteRing:
    """Direct product; element indices are mixed-radix with the first factor most significant."""
    factors = list(factors)
    if len(factors) < 2:
        raise InvalidSpec("a product needs at least two factors")
    shape = tuple(f.order for f in factors)
    order = math.prod(shape)
    check_cap(order, cap)
    digits = np.unravel_index(np.arange(order), shape)
    add_parts = [f.add[d[:, None], d[None, :]] for f, d in zip(factors, digits)]
    mul_parts = [f.mul[d[:, None], d[None, :]] for f, d in zip(factors, digits)]
    add = np.ravel_multi_index(add_parts, shape)
    mul = np.ravel_multi_index(mul_parts, shape)
    zero = int(np.ravel_multi_index([f.zero for f in factors], shape))
    one = int(np.ravel_multi_index([f.one for f in factors], shape))
    labels = [tuple(f.label_of(int(d[i])) for f, d in zip(factors, digits)) for i in range(order)]
    return FiniteRing(
        add,
        mul,
        zero,
        one,
        " x ".join(_paren(f) for f in factors),
        element_labels=labels,
        factors=factors,
    )


def factor_coordinates(r: FiniteRing) -> list[np.ndarray]:
    """Per-factor coordinate arrays of every element of a product ring."""
    if not r.factors:
        raise InvalidSpec(f"{r.label} is not a product")
    return list(np.unravel_index(r.elements, tuple(f.order for f in r.factors)))


def build_quotient(r: FiniteRing, gens: Sequence[int], cap: int | None = None) -> FiniteRing:
    """``r / (gens)``; each coset is represented by its smallest member."""
    ideal = ideal_generated(r, gens)
    if len(ideal) == r.order:
        raise InvalidSpec(f"generators {list(gens)} generate all of {r.label}")
    members = np.array(ideal.members)
    rep = r.add[:, members].min(axis=1)
    reps = np.unique(rep)
    check_cap(len(reps), cap)
    pos = np.full(r.order, -1, dtype=np.intp)
    pos[reps] = np.arange(len(reps))
    projection = pos[rep]
    add = projection[r.add[np.ix_(reps, reps)]]
    mul = projection[r.mul[np.ix_(reps, reps)]]
    gen_txt = ",".join(str(int(g)) for g in gens)
    return FiniteRing(
        add,
        mul,
        int(projection[r.zero]),
        int(projection[r.one]),
        f"{_paren(r)} / ({gen_txt})",
        element_labels=[r.label_of(int(x)) for x in reps],
        projection=projection,
        base=r,
    )


def build_idealization(
    r: FiniteRing, m: ModuleSpec, cap: int | None = None, label: str | None = None
) -> FiniteRing:
    """The idealization ``r (+) m`` with ``(a,x)(b,y) = (ab, a*y + b*x)``."""
    bad = module_violations(r, m)
    if bad:
        axiom, witness = bad[0]
        raise InvalidSpec(f"module axiom fails: {axiom} at {witness}")
    k = m.size
    order = r.order * k
    check_cap(order, cap)
    ra, mx = np.divmod(np.arange(order), k)
    c = m.carrier
    act = m.action
    add = r.add[ra[:, None], ra[None, :]] * k + c[mx[:, None], mx[None, :]]
    second = c[act[ra[:, None], mx[None, :]], act[ra[None, :], mx[:, None]]]
    mul = r.mul[ra[:, None], ra[None, :]] * k + second
    labels = m.labels or tuple(range(k))
    if label is None:
        inner = "{" + ",".join(str(x) for x in labels) + "}"
        label = f"{_paren(r)} (+) {inner}"
    return FiniteRing(
        add,
        mul,
        r.zero * k + m.zero,
        r.one * k + m.zero,
        label,
        element_labels=[(r.label_of(int(a)), labels[int(x)]) for a, x in zip(ra, mx)],
        base=r,
    )


# ------------------------------------------------------------ element queries


def is_unit(r: FiniteRing, a: int) -> bool:
    return bool(r.unit_mask[a])


def nilradical(r: FiniteRing) -> Ideal:
    if "nilradical" not in r.cache:
        x = r.elements
        cur = x.copy()
        nil = cur == r.zero
        # x^k for k <= order; powers of an element cycle within order steps
        for _ in range(r.order):
            cur = r.mul[cur, x]
            nil |= cur == r.zero
        r.cache["nilradical"] = ideal_from_mask(r, nil)
    return r.cache["nilradical"]


def is_reduced(r: FiniteRing) -> bool:
    return len(nilradical(r)) == 1


def is_field(r: FiniteRing) -> bool:
    return len(r.units) == r.order - 1


def is_local(r: FiniteRing) -> tuple[bool, Ideal | None]:
    """Whether the nonunits are closed under addition; if so, also that maximal ideal."""
    if "local" not in r.cache:
        nu = r.nonunits
        closed = not r.unit_mask[r.add[np.ix_(nu, nu)]].any()
        r.cache["local"] = (closed, ideal_from_mask(r, ~r.unit_mask) if closed else None)
    return r.cache["local"]


# ----------------------------------------------------------------- validation


@dataclass
class ValidationReport:
    ring: str
    failures: list[tuple[str, tuple]] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "ring": self.ring,
            "valid": self.valid,
            "failures": [{"axiom": a, "witness": list(w)} for a, w in self.failures],
        }


def validate_ring(r: FiniteRing, chunk: int = 1 << 22) -> ValidationReport:
    """Exhaustively check the commutative-ring axioms; each failure carries a witness."""
    report = ValidationReport(r.label)
    n = r.order
    A, M = r.add, r.mul
    x = r.elements

    def first(name, bad, offset=0):
        idx = np.argwhere(bad)
        if len(idx):
            w = tuple(int(v) for v in idx[0])
            if offset:
                w = (w[0] + offset,) + w[1:]
            report.failures.append((name, w))
            return True
        return False

    first("addition commutative", A != A.T)
    first("multiplication commutative", M != M.T)
    first("additive identity", A[r.zero] != x)
    first("multiplicative identity", M[r.one] != x)
    first("additive inverses", ~(A == r.zero).any(axis=1))

    step = max(1, chunk // (n * n))
    checks = [
        ("addition associative", lambda a: A[A[a][:, :, None], x[None, None, :]] != A[a[:, None, None], A[None, :, :]]),
        ("multiplication associative", lambda a: M[M[a][:, :, None], x[None, None, :]] != M[a[:, None, None], M[None, :, :]]),
        ("distributivity", lambda a: M[a[:, None, None], A[None, :, :]] != A[M[a][:, :, None], M[a][:, None, :]]),
    ]
    for name, fn in checks:
        for start in range(0, n, step):
            a = x[start : start + step]
            if first(name, fn(a), offset=start):
                break
    return report


def _fmt_set(r: FiniteRing, members) -> str:
    return "{" + ",".join(str(r.label_of(int(m))) for m in members) + "}"
