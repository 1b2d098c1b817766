"""Finitely supported integer maps over a linear order, ordered backwards
lexicographically, together with the difference relations ``E_(l, z)``.

Positions live in an :class:`IndexOrder`: a well-order ``WellOrder(alpha)``,
the non-positive integers ``OmegaStar``, or a concatenation ``Sum``.  A
position inside a ``Sum`` carries a path of ``"L"``/``"R"`` choices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Protocol, Sequence, Tuple, Union

from .ordinal import ONE, ZERO, Ordinal, Order, add, as_ordinal

Key = Union[Ordinal, int]


class ZLineError(ValueError):
    pass


@dataclass(frozen=True)
class Position:
    key: Key
    path: str = ""

    def __str__(self):
        return f"{self.path}:{self.key}" if self.path else str(self.key)


class IndexOrder:
    def component(self, path: str) -> "IndexOrder":
        node = self
        for step in path:
            if not isinstance(node, Sum) or step not in "LR":
                raise ZLineError(f"path {path!r} does not address a component")
            node = node.left if step == "L" else node.right
        if isinstance(node, Sum):
            raise ZLineError(f"path {path!r} stops at a sum node")
        return node

    def position(self, key, path: str = "") -> Position:
        leaf = self.component(path)
        return Position(leaf.check_key(key), path)

    def sort_key(self, pos: Position):
        return tuple(0 if s == "L" else 1 for s in pos.path) + (pos.key,)

    def is_well_order(self) -> bool:
        raise NotImplementedError


@dataclass(frozen=True)
class WellOrder(IndexOrder):
    bound: Ordinal

    def __post_init__(self):
        object.__setattr__(self, "bound", as_ordinal(self.bound))

    def check_key(self, key) -> Ordinal:
        key = as_ordinal(key)
        if not key < self.bound:
            raise ZLineError(f"position {key} is outside WellOrder({self.bound})")
        return key

    def below(self, key: Ordinal) -> Optional[Ordinal]:
        if key.is_zero():
            return None
        return key.predecessor() if key.is_successor() else ZERO

    def any_key(self):
        return ZERO if not self.bound.is_zero() else None

    def is_well_order(self):
        return True


@dataclass(frozen=True)
class OmegaStar(IndexOrder):
    def check_key(self, key) -> int:
        if isinstance(key, Ordinal):
            if not key.is_zero():
                raise ZLineError("OmegaStar positions are non-positive integers")
            key = 0
        if not isinstance(key, int) or isinstance(key, bool) or key > 0:
            raise ZLineError("OmegaStar positions are non-positive integers")
        return key

    def below(self, key: int) -> int:
        return key - 1

    def any_key(self):
        return 0

    def is_well_order(self):
        return False


@dataclass(frozen=True)
class Sum(IndexOrder):
    left: IndexOrder
    right: IndexOrder

    def is_well_order(self):
        return self.left.is_well_order() and self.right.is_well_order()


def _any_position(order: IndexOrder, path: str = "") -> Optional[Position]:
    if isinstance(order, Sum):
        return _any_position(order.left, path + "L") or _any_position(order.right, path + "R")
    key = order.any_key()
    return None if key is None else Position(key, path)


def position_below(order: IndexOrder, pos: Position) -> Optional[Position]:
    """Some position strictly below ``pos``, or None if ``pos`` is least."""
    if not pos.path:
        below = order.below(pos.key)
        return None if below is None else Position(below, "")
    assert isinstance(order, Sum)
    head, rest = pos.path[0], Position(pos.key, pos.path[1:])
    if head == "L":
        found = position_below(order.left, rest)
        return None if found is None else Position(found.key, "L" + found.path)
    found = position_below(order.right, rest)
    if found is not None:
        return Position(found.key, "R" + found.path)
    return _any_position(order.left, "L")


class ZElement:
    """An element of Z[L]: a finite support of (position, nonzero value)."""

    __slots__ = ("ambient", "support", "_values", "_hash")

    def __init__(self, ambient: IndexOrder, values: Union[Mapping, Iterable] = ()):
        items = values.items() if isinstance(values, Mapping) else values
        clean = {}
        for pos, v in items:
            if not isinstance(pos, Position):
                pos = Position(pos)
            pos = ambient.position(pos.key, pos.path)
            if v:
                clean[pos] = int(v)
        self.ambient = ambient
        self.support: Tuple[Tuple[Position, int], ...] = tuple(
            sorted(clean.items(), key=lambda t: ambient.sort_key(t[0])))
        self._values = clean
        self._hash = hash((ambient, self.support))

    def __call__(self, pos) -> int:
        if not isinstance(pos, Position):
            pos = Position(pos)
        return self._values.get(pos, 0)

    def positions(self):
        return [p for p, _ in self.support]

    def with_values(self, updates: Mapping) -> "ZElement":
        merged = dict(self._values)
        for pos, v in updates.items():
            if not isinstance(pos, Position):
                pos = Position(pos)
            merged[pos] = v
        return ZElement(self.ambient, merged)

    def shifted(self, deltas: Mapping) -> "ZElement":
        return self.with_values({p: self(p) + d for p, d in deltas.items()})

    def __eq__(self, other):
        if not isinstance(other, ZElement):
            return NotImplemented
        return self.ambient == other.ambient and self.support == other.support

    def __hash__(self):
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{p}↦{v}" for p, v in self.support)
        return f"ZElement({{{body}}})"


def zero(ambient: IndexOrder) -> ZElement:
    return ZElement(ambient)


def _check_same(a: ZElement, b: ZElement):
    if a.ambient != b.ambient:
        raise ZLineError("elements live in different ambient orders")


def greatest_difference(a: ZElement, b: ZElement) -> Optional[Position]:
    _check_same(a, b)
    key = a.ambient.sort_key
    i, j = len(a.support) - 1, len(b.support) - 1
    while i >= 0 or j >= 0:
        pa = a.support[i] if i >= 0 else None
        pb = b.support[j] if j >= 0 else None
        if pa is not None and pb is not None and pa[0] == pb[0]:
            if pa[1] != pb[1]:
                return pa[0]
            i, j = i - 1, j - 1
        elif pb is None or (pa is not None and key(pb[0]) < key(pa[0])):
            return pa[0]
        else:
            return pb[0]
    return None


def compare_backlex(a: ZElement, b: ZElement) -> Order:
    p = greatest_difference(a, b)
    if p is None:
        return Order.EQ
    return Order.LT if a(p) < b(p) else Order.GT


def e_rel(a: ZElement, b: ZElement) -> Tuple[Position, int]:
    """The unique (l, z) with b(l) = a(l) + z and agreement strictly above l."""
    p = greatest_difference(a, b)
    if p is None:
        raise ZLineError("relation undefined on equal elements")
    return p, b(p) - a(p)


def agrees_above(x: ZElement, anchor: ZElement, threshold: Position) -> bool:
    p = greatest_difference(x, anchor)
    return p is None or not x.ambient.sort_key(threshold) < x.ambient.sort_key(p)


@dataclass(frozen=True)
class TypeRecord:
    length: int
    entries: Tuple


def qf_type(elements: Sequence[ZElement]) -> TypeRecord:
    if not elements:
        raise ZLineError("quantifier-free type of an empty tuple")
    entries = []
    for i in range(len(elements)):
        for j in range(i + 1, len(elements)):
            a, b = elements[i], elements[j]
            if a == b:
                entries.append(("eq",))
            else:
                pos, z = e_rel(a, b)
                entries.append((int(compare_backlex(a, b)), pos, z))
    return TypeRecord(len(elements), tuple(entries))


def qf_equal(t1: TypeRecord, t2: TypeRecord) -> bool:
    return t1 == t2


class Scope(Protocol):
    height: Ordinal

    def covers(self, a: ZElement) -> bool: ...


@dataclass(frozen=True)
class ConditionalShift:
    """Add ``amount`` at each target iff the argument agrees with ``anchor``
    strictly above ``threshold`` and lies in ``scope``.  A missing anchor or
    scope means no condition of that kind."""

    anchor: Optional[ZElement]
    threshold: Optional[Position]
    targets: Tuple[Position, ...]
    amount: int
    scope: Optional[Scope] = None

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(
            t if isinstance(t, Position) else Position(t) for t in self.targets))
        if self.threshold is not None and not isinstance(self.threshold, Position):
            object.__setattr__(self, "threshold", Position(self.threshold))
        if len(set(self.targets)) != len(self.targets):
            raise ZLineError("duplicate shift targets")
        if self.anchor is not None:
            key = self.anchor.ambient.sort_key
            if any(key(self.threshold) < key(t) for t in self.targets):
                raise ZLineError("shift targets must not lie above the threshold")
        if self.scope is not None and any(not t.key < self.scope.height for t in self.targets):
            raise ZLineError("shift targets must lie below the scope height")

    def applies(self, x: ZElement) -> bool:
        if self.anchor is not None and not agrees_above(x, self.anchor, self.threshold):
            return False
        return self.scope is None or self.scope.covers(x)

    def __call__(self, x: ZElement) -> ZElement:
        if not self.amount or not self.applies(x):
            return x
        return x.shifted({t: self.amount for t in self.targets})

    def inverse(self) -> "ConditionalShift":
        return ConditionalShift(self.anchor, self.threshold, self.targets, -self.amount, self.scope)


@dataclass(frozen=True)
class SymAutomorphism:
    moves: Tuple[ConditionalShift, ...] = field(default_factory=tuple)

    def __call__(self, x: ZElement) -> ZElement:
        for move in self.moves:
            x = move(x)
        return x

    def inverse(self) -> "SymAutomorphism":
        return SymAutomorphism(tuple(m.inverse() for m in reversed(self.moves)))

    def then(self, other: "SymAutomorphism") -> "SymAutomorphism":
        return SymAutomorphism(self.moves + other.moves)


IDENTITY = SymAutomorphism()


def apply(phi: SymAutomorphism, x: ZElement) -> ZElement:
    return phi(x)


def synth_automorphism(context: Sequence[ZElement], a: ZElement, b: ZElement) -> SymAutomorphism:
    """Build an automorphism of M_L fixing ``context`` pointwise and sending
    ``a`` to ``b``, one conditional shift per differing position, lowest first."""
    context = tuple(context)
    if not qf_equal(qf_type(context + (a,)), qf_type(context + (b,))):
        raise ZLineError("tuples have different quantifier-free types")
    moves = []
    cur = a
    while cur != b:
        diff = [p for p in set(cur.positions()) | set(b.positions()) if cur(p) != b(p)]
        low = min(diff, key=a.ambient.sort_key)
        move = ConditionalShift(cur, low, (low,), b(low) - cur(low))
        cur = move(cur)
        moves.append(move)
    phi = SymAutomorphism(tuple(moves))
    if phi(a) != b or any(phi(c) != c for c in context):
        raise AssertionError("synthesized map failed its postcondition")
    return phi


# -- well-ordered ambients --------------------------------------------------

def _require_well_order(order: IndexOrder):
    if not isinstance(order, WellOrder):
        raise ZLineError("derivative characterization requires a well-order")


def h_rel(a: ZElement, b: ZElement, beta) -> bool:
    """Strong Hausdorff derivative H_beta on Z[alpha]: agreement at every
    position >= beta."""
    _require_well_order(a.ambient)
    beta = as_ordinal(beta)
    if a.ambient.bound < beta:
        raise ZLineError("beta exceeds the ambient bound")
    p = greatest_difference(a, b)
    return p is None or p.key < beta


def hausdorff_rank(ambient: IndexOrder) -> Ordinal:
    _require_well_order(ambient)
    return ambient.bound


def density_witness(a: ZElement, b: ZElement) -> ZElement:
    if compare_backlex(a, b) is not Order.LT:
        raise ZLineError("density witness requires a strictly below b")
    key = a.ambient.sort_key
    lowest = min(a.positions() + b.positions(), key=key)
    below = position_below(a.ambient, lowest)
    if below is None:
        raise ZLineError("ambient order has a minimum here")
    c = a.with_values({below: 1})
    assert compare_backlex(a, c) is Order.LT and compare_backlex(c, b) is Order.LT
    return c


def drk_upper(a: ZElement, b: ZElement) -> Ordinal:
    """Least beta with a H_(1+beta) b; an upper bound on the Deissler rank."""
    _require_well_order(a.ambient)
    p = greatest_difference(a, b)
    if p is None:
        return ZERO
    return p.key if p.key.is_finite() else add(p.key, ONE)
