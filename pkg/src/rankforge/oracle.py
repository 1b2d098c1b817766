"""Exhaustive brute force on finite data.

Everything here quantifies literally over the finite objects involved, so
it can serve as ground truth for the symbolic modules.  Topologies are
discrete: every subset containing the identity is an identity
neighbourhood and every subset of a space is open, so closures are plain
orbit images.
"""

from __future__ import annotations

import itertools
import random
import weakref
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Sequence, Tuple

import numpy as np

from .finitegroup import FiniteGroup, _direct

MAX_DOMAIN = 7
MAX_SPACE = 7
MAX_ALPHA = 3


class OracleError(ValueError):
    pass


# -- finite structures ----------------------------------------------------------

@dataclass(frozen=True)
class Relation:
    name: str
    arity: int
    tuples: FrozenSet[Tuple[int, ...]]


@dataclass(frozen=True)
class FiniteStructure:
    n: int
    relations: Tuple[Relation, ...] = ()

    def __post_init__(self):
        if not 1 <= self.n <= MAX_DOMAIN:
            raise OracleError(f"domain size must be between 1 and {MAX_DOMAIN}")
        rels = []
        for r in self.relations:
            if not 1 <= r.arity <= 3:
                raise OracleError(f"relation {r.name!r} has arity outside 1..3")
            tuples = frozenset(tuple(t) for t in r.tuples)
            for t in tuples:
                if len(t) != r.arity or any(not 0 <= v < self.n for v in t):
                    raise OracleError(f"relation {r.name!r} has a tuple outside the domain: {list(t)}")
            rels.append(Relation(r.name, r.arity, tuples))
        object.__setattr__(self, "relations", tuple(rels))


@dataclass(frozen=True)
class FiniteAction:
    group: FiniteGroup
    size: int
    table: Tuple[Tuple[int, ...], ...]  # table[g][x] = g.x

    def __post_init__(self):
        if not 1 <= self.size <= MAX_SPACE:
            raise OracleError(f"space size must be between 1 and {MAX_SPACE}")
        G = self.group
        if len(self.table) != G.order or any(len(row) != self.size for row in self.table):
            raise OracleError("action table has the wrong shape")
        if any(not 0 <= v < self.size for row in self.table for v in row):
            raise OracleError("action table leaves the space")
        if list(self.table[0]) != list(range(self.size)):
            raise OracleError("identity must act trivially")
        for g in range(G.order):
            for h in range(G.order):
                gh = G.mul[g][h]
                for x in range(self.size):
                    if self.table[gh][x] != self.table[g][self.table[h][x]]:
                        raise OracleError("action is not compatible with the group law")

    @classmethod
    def from_permutations(cls, perms: Sequence[Sequence[int]]):
        """Natural action of the group generated by ``perms``."""
        perms = [tuple(p) for p in perms]
        if not perms:
            raise OracleError("need at least one permutation")
        n = len(perms[0])
        if n > MAX_SPACE:
            raise OracleError(f"space size must be between 1 and {MAX_SPACE}")
        G = FiniteGroup.generated(perms, degree=n)
        return cls(G, n, tuple(tuple(e) for e in G.elements))

    def orbit(self, mask: int, x: int) -> int:
        """Bitmask of V.x for V given as an element mask."""
        out = 0
        for g in self.group.members(mask):
            out |= 1 << self.table[g][x]
        return out


def aut_group(m: FiniteStructure) -> FiniteAction:
    perms = []
    for p in itertools.permutations(range(m.n)):
        if all({tuple(p[v] for v in t) for t in r.tuples} == r.tuples for r in m.relations):
            perms.append(p)
    G = FiniteGroup(perms)
    return FiniteAction(G, m.n, tuple(tuple(e) for e in G.elements))


def stabilizer(group: FiniteGroup, tup: Sequence[int]) -> int:
    """Pointwise stabilizer of a tuple under the natural action, as a mask."""
    return group.mask(i for i, e in enumerate(group.elements) if all(e[v] == v for v in tup))


def _injective_tuples(n: int):
    for length in range(n + 1):
        yield from itertools.permutations(range(n), length)


def drk_bruteforce(m: FiniteStructure, a: Sequence[int], b: Sequence[int]) -> int:
    """Deissler rank by the orbit recursion.

    ``c`` ranges over injective tuples of length at most the domain size;
    repeated entries never change a stabilizer.  The value only depends on
    ``a`` and on Stab(b), which keys the memo.
    """
    for v in list(a) + list(b):
        if not 0 <= v < m.n:
            raise OracleError(f"tuple entry {v} outside the domain")
    G = aut_group(m).group
    stabs = sorted({stabilizer(G, c) for c in _injective_tuples(m.n)})
    # subgroup-lattice check: stabilizers of concatenations add nothing new
    stab_set = set(stabs)
    assert all(s & t in stab_set for s in stabs for t in stabs)
    a = tuple(a)

    @lru_cache(maxsize=None)
    def at_most(H: int, alpha: int) -> bool:
        if alpha == 0:
            return all(tuple(G.elements[h][v] for v in a) == a for h in G.members(H))
        members = G.members(H)
        return any(all(at_most(H & G.conj(h, S), alpha - 1) for h in members) for S in stabs)

    H = stabilizer(G, b)
    for alpha in range(m.n + 2):
        if at_most(H, alpha):
            return alpha
    raise AssertionError("Deissler recursion did not terminate")


# -- balanced rank on finite discrete groups -------------------------------------

def _identity_sets(G: FiniteGroup):
    """All subsets containing the identity, smallest first, generated lazily
    so searches that stop early also work on larger groups."""
    rest = range(1, G.order)
    for size in range(G.order):
        for extra in itertools.combinations(rest, size):
            yield G.mask((0,) + extra)


def _check_nbhd(G: FiniteGroup, *masks):
    for m in masks:
        if not m & 1:
            raise OracleError("identity missing from a neighbourhood")
        if m & ~G.full:
            raise OracleError("subset is not contained in the group")


def _rank_search(G: FiniteGroup, V: int, U: int, base) -> int:
    @lru_cache(maxsize=None)
    def at_most(U_: int, beta: int) -> bool:
        if base(U_):
            return True
        if beta == 0:
            return False
        members = G.members(U_)
        for W in _identity_sets(G):
            if all(at_most(G.conj(g, W), beta - 1) for g in members):
                return True
        return False

    beta = 0
    while not at_most(U, beta):
        beta += 1
        if beta > G.order + 1:
            raise AssertionError("rank recursion did not terminate")
    return beta


def rk_bruteforce(G: FiniteGroup, V: int, U: int) -> int:
    _check_nbhd(G, V, U)
    r = _rank_search(G, V, U, lambda U_: U_ & ~V == 0)
    assert r <= 1, "finite discrete groups have rank at most 1 here"
    return r


def rkstar_bruteforce(G: FiniteGroup, V: int, U: int) -> int:
    _check_nbhd(G, V, U)
    # U is covered by finitely many left translates of V; F = G always works
    FV = G.product(G.full, V)
    r = _rank_search(G, V, U, lambda U_: U_ & ~FV == 0)
    assert r == 0
    return r


def group_rank_bruteforce(G: FiniteGroup) -> int:
    return max(rk_bruteforce(G, V, G.full) + 1 for V in _identity_sets(G))


# -- dynamical relations -------------------------------------------------------

def _check_alpha(alpha: int):
    if not 0 <= alpha <= MAX_ALPHA:
        raise OracleError(f"alpha must be between 0 and {MAX_ALPHA}")


def _check_points(act: FiniteAction, *pts):
    for p in pts:
        if not 0 <= p < act.size:
            raise OracleError(f"point {p} outside the space")


_memos: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def _memo(act, kind) -> Dict:
    return _memos.setdefault(act, {}).setdefault(kind, {})


def squiggle_bruteforce(act: FiniteAction, V: int, alpha: int, x: int, y: int) -> bool:
    _check_alpha(alpha)
    _check_points(act, x, y)
    _check_nbhd(act.group, V)
    return _squiggle(act, V, alpha, x, y)


def _squiggle(act, V, alpha, x, y) -> bool:
    memo = _memo(act, "squiggle")
    key = (V, alpha, x, y)
    if key in memo:
        return memo[key]
    if alpha == 0:
        out = bool(act.orbit(V, y) >> x & 1 and act.orbit(V, x) >> y & 1)
    else:
        G = act.group
        xs = sorted({act.table[g][x] for g in G.members(V)})
        ys = sorted({act.table[g][y] for g in G.members(V)})
        point = (1 << x) | (1 << y)
        opens = [U for U in range(1, 1 << act.size) if U & point]
        out = True
        for W in _identity_sets(G):
            good = [(p, q) for p in xs for q in ys
                    if all(_squiggle(act, W, b, p, q) for b in range(alpha))]
            if not all(any(U >> p & 1 and U >> q & 1 for p, q in good) for U in opens):
                out = False
                break
    memo[key] = out
    return out


def sim_bruteforce(act: FiniteAction, V: int, alpha: int, x: int, y: int) -> bool:
    _check_alpha(alpha)
    _check_points(act, x, y)
    _check_nbhd(act.group, V)
    return _sim(act, V, alpha, x, y)


def _sim(act, V, alpha, x, y):
    return _below(act, V, alpha, x, y) and _below(act, V, alpha, y, x)


def _below(act, V, alpha, x, y) -> bool:
    """x is below y at level alpha for V."""
    memo = _memo(act, "below")
    key = (V, alpha, x, y)
    if key in memo:
        return memo[key]
    G = act.group
    if alpha == 0:
        out = bool(act.orbit(V, y) >> x & 1)
    else:
        out = all(
            any(all(_sim(act, W, b, act.table[v][y], x) for b in range(alpha)) for v in G.members(V))
            for W in _identity_sets(G))
    memo[key] = out
    return out


# -- random instances ----------------------------------------------------------

def coset_action(G: FiniteGroup, subgroups: Sequence[int]) -> FiniteAction:
    """Disjoint union of the left coset spaces G/H, one block per subgroup."""
    blocks = []
    for H in subgroups:
        hs = G.members(H)
        cosets = []
        for g in range(G.order):
            c = frozenset(G.mul[g][h] for h in hs)
            if c not in cosets:
                cosets.append(c)
        blocks.append(cosets)
    table = []
    for g in range(G.order):
        row, base = [], 0
        for cosets in blocks:
            for c in cosets:
                row.append(base + cosets.index(frozenset(G.mul[g][u] for u in c)))
            base += len(cosets)
        table.append(tuple(row))
    return FiniteAction(G, sum(len(c) for c in blocks), tuple(table))


def random_action(rng: random.Random, max_group: int = 6, max_space: int = 5) -> FiniteAction:
    from .finitegroup import small_groups
    groups = [G for _, G in small_groups() if G.order <= max_group]
    G = rng.choice(groups)
    subs = G.subgroups()
    while True:
        picks = [rng.choice(subs) for _ in range(rng.randint(1, 3))]
        size = sum(G.order // bin(H).count("1") for H in picks)
        if size <= max_space:
            return coset_action(G, picks)


def random_identity_set(rng: random.Random, G: FiniteGroup, symmetric: bool = False) -> int:
    if symmetric:
        return rng.choice(G.symmetric_neighbourhoods())
    return rng.randrange(0, 1 << G.order) | 1


def product_action(A: FiniteAction, B: FiniteAction) -> Tuple[FiniteAction, callable, callable]:
    """Coordinate-wise action of the product group; also returns the maps
    building product masks and product points."""
    G = FiniteGroup.from_table(_direct(A.group.mul, B.group.mul))
    nb = B.group.order
    table = []
    for g in range(G.order):
        a, b = divmod(g, nb)
        table.append(tuple(A.table[a][x] * B.size + B.table[b][y]
                           for x in range(A.size) for y in range(B.size)))
    act = FiniteAction(G, A.size * B.size, tuple(table))

    def mask(VA, VB):
        return G.mask(a * nb + b for a in A.group.members(VA) for b in B.group.members(VB))

    def point(x, y):
        return x * B.size + y

    return act, mask, point


def random_structure(rng: random.Random, max_n: int = 5, max_binary: int = 2) -> FiniteStructure:
    n = rng.randint(1, max_n)
    rels = []
    for k in range(rng.randint(0, max_binary)):
        pairs = [(i, j) for i in range(n) for j in range(n)]
        chosen = frozenset(p for p in pairs if rng.random() < rng.choice([0.2, 0.4, 0.6]))
        rels.append(Relation(f"R{k}", 2, chosen))
    if rng.random() < 0.3:
        rels.append(Relation("P", 1, frozenset((i,) for i in range(n) if rng.random() < 0.5)))
    return FiniteStructure(n, tuple(rels))


# -- open games, by direct recursion ---------------------------------------------

def grk_minimax(alphabet: int, horizon: int, wins, pos: Tuple[int, ...] = ()):
    """Game rank by plain recursion on positions; float('inf') if II wins."""
    wins = frozenset(tuple(w) for w in wins)

    @lru_cache(maxsize=None)
    def covered(p):
        if any(p[:len(w)] == w for w in wins if len(w) <= len(p)):
            return True
        return len(p) < horizon and all(covered(p + (a,)) for a in range(alphabet))

    @lru_cache(maxsize=None)
    def rank(p):
        if covered(p):
            return 0
        if len(p) >= horizon:
            return float("inf")
        best = min(max(rank(p + (a, b)) for b in range(alphabet)) for a in range(alphabet))
        return best + 1

    return rank(tuple(pos))


# -- strong Hausdorff derivatives on finite windows --------------------------------

def _window(m: int, N: int) -> np.ndarray:
    """Points of [-N, N]^m sorted by the backwards-lexicographic order."""
    if m == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grid = np.stack(np.meshgrid(*([np.arange(-N, N + 1)] * m), indexing="ij"), axis=-1).reshape(-1, m)
    order = np.lexsort([grid[:, i] for i in range(m)])
    return grid[order]


def _keys(points: np.ndarray, N: int) -> np.ndarray:
    base = 2 * N + 1
    out = np.zeros(points.shape[0], dtype=np.int64)
    for i in range(points.shape[1] - 1, -1, -1):
        out = out * base + (points[:, i] + N)
    return out


@lru_cache(maxsize=None)
def _derivative_labels(m: int, k: int, N: int) -> np.ndarray:
    """Class labels of the k-th derivative on the sorted window [-N, N]^m.

    Level k+1 joins neighbouring points when the number of level-k classes
    between them does not grow as the window grows by one; labels are dense
    class ranks along the order.
    """
    pts = _window(m, N)
    if k == 0:
        return np.arange(pts.shape[0], dtype=np.int64)
    counts = []
    for M in (N + 1, N + 2):
        big = _window(m, M)
        idx = np.searchsorted(_keys(big, M + 1), _keys(pts, M + 1))
        counts.append(np.diff(_derivative_labels(m, k - 1, M)[idx]))
    cut = counts[0] != counts[1]
    return np.concatenate([[0], np.cumsum(cut)]).astype(np.int64)


@dataclass(frozen=True)
class HausdorffReport:
    rank: int
    levels: Tuple[np.ndarray, ...]
    points: np.ndarray

    def same_class(self, k: int, i: int, j: int) -> bool:
        k = min(k, len(self.levels) - 1)
        return self.levels[k][i] == self.levels[k][j]


def hausdorff_bruteforce(m: int, window: int = 2) -> HausdorffReport:
    """Derivatives of Z[P] for |P| = m, read off the window [-window, window]^m.

    Coordinates are listed from the least position of P upwards.  The rank
    is the least k with level k equal to level k+1.
    """
    if m > 3:
        raise OracleError("window brute force supports at most 3 positions")
    levels = [_derivative_labels(m, 0, window)]
    k = 0
    while True:
        nxt = _derivative_labels(m, k + 1, window)
        if np.array_equal(nxt, levels[-1]):
            return HausdorffReport(k, tuple(levels), _window(m, window))
        levels.append(nxt)
        k += 1
        if k > m + 2:
            raise AssertionError("derivative sequence did not stabilize")
