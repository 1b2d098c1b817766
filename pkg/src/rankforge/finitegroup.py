"""Finite permutation groups as explicit multiplication tables.

Elements are indexed ``0..order-1`` in sorted order of their permutation
tuples, so the identity is always index 0.  Subsets are plain ``int``
bitmasks over element indices.
"""

from __future__ import annotations

from typing import Iterable, List, Sequence, Tuple

Perm = Tuple[int, ...]


class GroupError(ValueError):
    pass


def compose(p: Perm, q: Perm) -> Perm:
    """(p*q)(x) = p(q(x))."""
    return tuple(p[i] for i in q)


def invert(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


class FiniteGroup:
    def __init__(self, elements: Iterable[Sequence[int]]):
        elems = sorted({tuple(e) for e in elements})
        if not elems:
            raise GroupError("empty group")
        degree = len(elems[0])
        if any(len(e) != degree or sorted(e) != list(range(degree)) for e in elems):
            raise GroupError("elements must be permutations of one degree")
        ident = tuple(range(degree))
        if elems[0] != ident:
            raise GroupError("group must contain the identity")
        self.degree = degree
        self.elements: List[Perm] = elems
        self.index = {e: i for i, e in enumerate(elems)}
        n = len(elems)
        try:
            self.mul = [[self.index[compose(a, b)] for b in elems] for a in elems]
        except KeyError:
            raise GroupError("element list is not closed under composition") from None
        self.inv = [self.index[invert(a)] for a in elems]
        self.order = n
        self.full = (1 << n) - 1

    @classmethod
    def generated(cls, generators: Iterable[Sequence[int]], degree: int = None, bound: int = None):
        gens = [tuple(g) for g in generators]
        if degree is None:
            degree = len(gens[0]) if gens else 1
        for g in gens:
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise GroupError(f"generator {list(g)} is not a permutation of degree {degree}")
        seen = {tuple(range(degree))}
        frontier = list(seen)
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    c = compose(g, a)
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
                        if bound is not None and len(seen) > bound:
                            raise GroupError(f"group order exceeds the bound {bound}")
            frontier = nxt
        return cls(seen)

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]]):
        """Regular representation of a group given by its Cayley table."""
        return cls(tuple(row[x] for x in range(len(table))) for row in table)

    # -- subsets as bitmasks ---------------------------------------------
    def members(self, mask: int) -> List[int]:
        return [i for i in range(self.order) if mask >> i & 1]

    def mask(self, items: Iterable[int]) -> int:
        out = 0
        for i in items:
            out |= 1 << i
        return out

    def conj(self, g: int, mask: int) -> int:
        gi = self.inv[g]
        return self.mask(self.mul[self.mul[g][u]][gi] for u in self.members(mask))

    def product(self, a: int, b: int) -> int:
        mb = self.members(b)
        return self.mask(self.mul[x][y] for x in self.members(a) for y in mb)

    def inverse_set(self, mask: int) -> int:
        return self.mask(self.inv[x] for x in self.members(mask))

    def is_symmetric(self, mask: int) -> bool:
        return self.inverse_set(mask) == mask

    def symmetric_neighbourhoods(self) -> List[int]:
        """Every symmetric subset containing the identity, sorted by mask."""
        blocks, seen = [], {0}
        for x in range(1, self.order):
            if x not in seen:
                pair = {x, self.inv[x]}
                seen |= pair
                blocks.append(self.mask(pair))
        out = []
        for choice in range(1 << len(blocks)):
            m = 1
            for j, b in enumerate(blocks):
                if choice >> j & 1:
                    m |= b
            out.append(m)
        return sorted(out)

    def subgroups(self) -> List[int]:
        out = []
        for m in range(1, 1 << self.order, 2):
            els = self.members(m)
            if all(self.mul[a][b] in els for a in els for b in els):
                out.append(m)
        return out


# -- the groups of order at most 8 ------------------------------------------

def _cyclic(n):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def _direct(t1, t2):
    n1, n2 = len(t1), len(t2)
    return [[t1[a // n2][b // n2] * n2 + t2[a % n2][b % n2] for b in range(n1 * n2)]
            for a in range(n1 * n2)]


def _dihedral(n):
    # elements r^i s^f encoded as f*n + i
    def m(x, y):
        f1, i1 = divmod(x, n)
        f2, i2 = divmod(y, n)
        i = (i1 + (-i2 if f1 else i2)) % n
        return ((f1 ^ f2) * n) + i
    return [[m(x, y) for y in range(2 * n)] for x in range(2 * n)]


def _quaternion():
    # basis units 1,i,j,k with sign bit: element = 4*sign + unit
    units = {(0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
             (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
             (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
             (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0)}

    def m(x, y):
        sx, ux = divmod(x, 4)
        sy, uy = divmod(y, 4)
        s, u = units[(ux, uy)]
        return ((sx + sy + s) % 2) * 4 + u
    return [[m(x, y) for y in range(8)] for x in range(8)]


def small_groups() -> List[Tuple[str, FiniteGroup]]:
    """One representative of each isomorphism type of order at most 8."""
    tables = [
        ("C1", _cyclic(1)), ("C2", _cyclic(2)), ("C3", _cyclic(3)), ("C4", _cyclic(4)),
        ("C2xC2", _direct(_cyclic(2), _cyclic(2))), ("C5", _cyclic(5)), ("C6", _cyclic(6)),
        ("S3", _dihedral(3)), ("C7", _cyclic(7)), ("C8", _cyclic(8)),
        ("C4xC2", _direct(_cyclic(4), _cyclic(2))),
        ("C2xC2xC2", _direct(_direct(_cyclic(2), _cyclic(2)), _cyclic(2))),
        ("D4", _dihedral(4)), ("Q8", _quaternion()),
    ]
    return [(name, FiniteGroup.from_table(t)) for name, t in tables]
