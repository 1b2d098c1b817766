"""Open games with a finite alphabet and a bounded horizon.

Player I moves at even indices, Player II at odd ones.  The payoff set is the
union of the cylinders over ``wins``; nothing new is won after the horizon.
Game ranks are natural numbers or ``INFINITY`` (Player II wins).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, List, Sequence, Tuple, Union

import numpy as np

from . import _kernels
from .finitegroup import FiniteGroup, GroupError
from .ordinal import Ordinal

INFINITY = math.inf
GameRank = Union[int, float]
Position = Tuple[int, ...]

MAX_TABLE = 1 << 22


class GameError(ValueError):
    pass


class Player(str, enum.Enum):
    I = "I"
    II = "II"


@dataclass(frozen=True)
class OpenGame:
    alphabet: int
    horizon: int
    wins: FrozenSet[Position]

    def __post_init__(self):
        object.__setattr__(self, "wins", frozenset(tuple(int(m) for m in w) for w in self.wins))
        if self.alphabet < 1:
            raise GameError("alphabet must be positive")
        if self.horizon < 0 or self.horizon % 2:
            raise GameError("horizon must be even")
        for w in self.wins:
            if len(w) % 2 or len(w) > self.horizon:
                raise GameError(f"winning position {list(w)} must have even length <= horizon")
            if any(not 0 <= m < self.alphabet for m in w):
                raise GameError(f"winning position {list(w)} uses a move outside the alphabet")
        if self.alphabet ** self.horizon > MAX_TABLE:
            raise GameError("game too large for the dense solver")


def _index(pos: Sequence[int], k: int) -> int:
    i = 0
    for m in pos:
        i = i * k + m
    return i


@dataclass(frozen=True)
class Solution:
    game: OpenGame
    cover: Tuple[np.ndarray, ...]
    rank: Tuple[np.ndarray, ...]

    def rank_at(self, pos: Sequence[int]) -> GameRank:
        v = int(self.rank[len(pos)][_index(pos, self.game.alphabet)])
        return INFINITY if v >= _kernels.INF else v

    def covered(self, pos: Sequence[int]) -> bool:
        D = self.game.horizon
        pos = tuple(pos)[:D] if len(pos) > D else tuple(pos)
        return bool(self.cover[len(pos)][_index(pos, self.game.alphabet)])


def win_levels(g: OpenGame) -> List[np.ndarray]:
    k = g.alphabet
    levels = [np.zeros(k ** n, dtype=np.bool_) for n in range(g.horizon + 1)]
    for w in g.wins:
        levels[len(w)][_index(w, k)] = True
    return levels


@lru_cache(maxsize=512)
def solve(g: OpenGame, backend: str = None) -> Solution:
    cover, rank = _kernels.solve_levels(win_levels(g), g.alphabet, g.horizon, backend)
    return Solution(g, tuple(cover), tuple(rank))


def _check_position(g: OpenGame, pos) -> Position:
    pos = tuple(int(m) for m in pos)
    if len(pos) % 2:
        raise GameError("game rank is defined at even-length positions")
    if len(pos) > g.horizon:
        raise GameError("position lies beyond the horizon")
    if any(not 0 <= m < g.alphabet for m in pos):
        raise GameError("position uses a move outside the alphabet")
    return pos


def grk(g: OpenGame, pos: Sequence[int] = ()) -> GameRank:
    return solve(g).rank_at(_check_position(g, pos))


def winner(g: OpenGame) -> Player:
    return Player.I if grk(g) != INFINITY else Player.II


@dataclass(frozen=True)
class Strategy:
    moves: Tuple[Tuple[Position, int], ...]

    def as_dict(self) -> Dict[Position, int]:
        return dict(self.moves)


def extract_strategy(g: OpenGame) -> Strategy:
    """Player I's rank-decreasing strategy on every reachable unwon position."""
    sol = solve(g)
    if sol.rank_at(()) == INFINITY:
        raise GameError("Player II wins this game; there is no winning strategy for Player I")
    k, out = g.alphabet, {}
    stack = [()]
    while stack:
        pos = stack.pop()
        if sol.rank_at(pos) == 0:
            continue
        best, best_move = None, None
        for a in range(k):
            worst = max(sol.rank_at(pos + (a, b)) for b in range(k))
            if best is None or worst < best:
                best, best_move = worst, a
        out[pos] = best_move
        stack.extend(pos + (best_move, b) for b in range(k))
    return Strategy(tuple(sorted(out.items())))


def replay(g: OpenGame, strategy: Strategy) -> bool:
    """True iff every run consistent with the strategy reaches the payoff."""
    sol, table = solve(g), strategy.as_dict()

    def ok(pos):
        if sol.covered(pos):
            return True
        if len(pos) >= g.horizon or pos not in table:
            return False
        a = table[pos]
        return all(ok(pos + (a, b)) for b in range(g.alphabet))

    return ok(())


# -- comparison games ---------------------------------------------------------

def _decided_wins(won: np.ndarray, K: int, H: int) -> FrozenSet[Position]:
    """Minimal even-length prefixes all of whose full-length runs are won."""
    decided = [None] * (H + 1)
    decided[H] = won
    for n in range(H - 1, -1, -1):
        decided[n] = decided[n + 1].reshape(-1, K).all(axis=1)
    out = set()
    for n in range(0, H + 1, 2):
        fresh = decided[n].copy()
        if n >= 2:
            fresh &= ~np.repeat(decided[n - 2], K * K)
        for i in np.flatnonzero(fresh):
            out.add(tuple(int(d) for d in np.unravel_index(i, (K,) * n)) if n else ())
    return frozenset(out)


def _entry_times(cover, D, seqs, k, start, H):
    """Least n with seqs[start:start+n] covered; H+1 when never."""
    runs = seqs.shape[0]
    times = np.full(runs, H + 1, dtype=np.int64)
    idx = np.zeros(runs, dtype=np.int64)
    for n in range(0, H - start + 1):
        if n:
            if n <= D:
                idx = idx * k + seqs[:, start + n - 1]
        hit = cover[min(n, D)][idx]
        times = np.where((times > H) & hit, n, times)
    return times


def _comparison(A: OpenGame, B: OpenGame, strict: bool) -> OpenGame:
    k = max(A.alphabet, B.alphabet)
    H = max(A.horizon, B.horizon) + 2
    K = k * k
    if K ** H > MAX_TABLE:
        raise GameError("comparison game too large for the dense solver")
    runs = np.arange(K ** H, dtype=np.int64)
    digits = np.stack([(runs // K ** (H - 1 - i)) % K for i in range(H)], axis=1)
    # moves outside a smaller alphabet behave like its last letter
    a_seq = np.minimum(digits // k, A.alphabet - 1)
    b_seq = np.minimum(digits % k, B.alphabet - 1)
    n_a = _entry_times(solve(A).cover, A.horizon, a_seq, A.alphabet, 0, H)
    n_b = _entry_times(solve(B).cover, B.horizon, b_seq, B.alphabet, 1, H)
    won = n_a < n_b if strict else n_a <= n_b
    return OpenGame(K, H, _decided_wins(won, K, H))


def le_game(A: OpenGame, B: OpenGame) -> OpenGame:
    """Player I wins iff rank(A) <= rank(B)."""
    return _comparison(A, B, strict=False)


def lt_game(A: OpenGame, B: OpenGame) -> OpenGame:
    """Player I wins iff rank(A) < rank(B)."""
    return _comparison(A, B, strict=True)


# -- the CLI game for a finite group --------------------------------------------

@dataclass(frozen=True)
class CliGame:
    game: OpenGame
    basis: Tuple[int, ...]


def cli_game(group: FiniteGroup, V: int, horizon: int = 2, order_bound: int = 64) -> CliGame:
    """The CLI game for ``V`` on a finite discrete group.

    Moves are indices into the basis of symmetric identity neighbourhoods.
    Player II must answer ``U`` with a conjugate ``gUg^-1``, where ``g`` is
    arbitrary in the first round and lies in ``W_prev * U`` afterwards; an
    illegal answer loses for Player II.
    """
    if group.order > order_bound:
        raise GroupError(f"group order {group.order} exceeds the bound {order_bound}")
    if not V & 1:
        raise GameError("V must contain the identity")
    if not group.is_symmetric(V):
        raise GameError("V must be symmetric")
    if V & ~group.full:
        raise GameError("V must be a subset of the group")
    basis = tuple(group.symmetric_neighbourhoods())
    k = len(basis)
    if k ** horizon > MAX_TABLE:
        raise GameError("basis too large for this horizon")
    lookup = {m: i for i, m in enumerate(basis)}

    def legal_answers(U, W_prev):
        pool = range(group.order) if W_prev is None else group.members(group.product(W_prev, U))
        return {lookup[group.conj(g, U)] for g in pool}

    wins = set()
    if group.full & ~V == 0:
        wins.add(())
    else:
        def grow(pos, W_prev):
            for u in range(k):
                legal = legal_answers(basis[u], W_prev)
                for w in range(k):
                    here = pos + (u, w)
                    if w not in legal or basis[w] & ~V == 0:
                        wins.add(here)
                    elif len(here) < horizon:
                        grow(here, basis[w])
        grow((), None)
    return CliGame(OpenGame(k, horizon, frozenset(wins)), basis)


# -- Cantor-Bendixson rank of finite trees ---------------------------------------

def cb_rank(parents: Sequence[int]) -> Ordinal:
    """Rank of a finite rooted tree given as a parent list (root marked -1).

    Leaves have rank 0; any other node gets the least ordinal exceeding the
    ranks of all nodes strictly above it.  The tree rank is the sup of
    rank + 1 over its nodes.
    """
    n = len(parents)
    if n == 0:
        raise GameError("empty tree")
    roots = [i for i, p in enumerate(parents) if p < 0]
    if len(roots) != 1:
        raise GameError("a rooted tree has exactly one root")
    children: List[List[int]] = [[] for _ in range(n)]
    for i, p in enumerate(parents):
        if p >= 0:
            if p >= n:
                raise GameError(f"node {i} has an unknown parent {p}")
            children[p].append(i)
    order, seen = [], set()
    stack = [roots[0]]
    while stack:
        v = stack.pop()
        if v in seen:
            raise GameError("parent list contains a cycle")
        seen.add(v)
        order.append(v)
        stack.extend(children[v])
    if len(seen) != n:
        raise GameError("parent list is not connected")
    rank = [0] * n
    above: List[set] = [set() for _ in range(n)]
    for v in reversed(order):
        for c in children[v]:
            above[v] |= above[c] | {c}
        rank[v] = 1 + max((rank[u] for u in above[v]), default=-1)
    return Ordinal.of(max(r + 1 for r in rank))
