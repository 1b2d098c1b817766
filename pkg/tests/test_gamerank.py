import itertools
import math
import random

import numpy as np
import pytest

from rankforge import _kernels
from rankforge.finitegroup import FiniteGroup, GroupError
from rankforge.gamerank import (
    INFINITY, GameError, OpenGame, Player, cb_rank, cli_game, extract_strategy, grk, le_game,
    lt_game, replay, win_levels, winner,
)
from rankforge.oracle import grk_minimax

import oracles


def G(k, D, wins):
    return OpenGame(k, D, frozenset(map(tuple, wins)))


def random_game(rng, k, D, density=None):
    positions = [()] + [p for n in range(2, D + 1, 2) for p in itertools.product(range(k), repeat=n)]
    density = rng.choice([0.02, 0.1, 0.3]) if density is None else density
    return G(k, D, [p for p in positions if p and rng.random() < density])


def _norm(r):
    return math.inf if r is None else r


# -- examples -------------------------------------------------------------------

def test_grk_examples():
    assert grk(G(2, 2, itertools.product(range(2), repeat=2))) == 0
    # backward-induction values from oracles.game_rank
    assert grk(G(2, 2, [(0, 0), (0, 1)])) == 1
    assert grk(G(2, 2, [(0, 0)])) == INFINITY


def test_grk_position_errors():
    g = G(2, 4, [(0, 0)])
    with pytest.raises(GameError):
        grk(g, (0,))
    with pytest.raises(GameError):
        grk(g, (0, 0, 0, 0, 0, 0))
    with pytest.raises(GameError):
        grk(g, (0, 2))


def test_game_validation():
    with pytest.raises(GameError):
        G(2, 3, [])
    with pytest.raises(GameError):
        G(2, 2, [(0,)])
    with pytest.raises(GameError):
        G(2, 2, [(0, 2)])
    with pytest.raises(GameError):
        G(0, 2, [])


def test_winner_and_strategy_examples():
    assert winner(G(2, 2, [])) is Player.II
    assert winner(G(2, 2, itertools.product(range(2), repeat=2))) is Player.I
    g = G(2, 2, [(0, 0), (0, 1)])
    s = extract_strategy(g)
    assert s.as_dict()[()] == 0
    assert replay(g, s)
    with pytest.raises(GameError):
        extract_strategy(G(2, 2, [(0, 0)]))


def test_empty_wins_round_trip_and_root_win():
    assert grk(G(3, 2, [])) == INFINITY
    assert grk(G(3, 2, [()])) == 0


# -- against independent recursions ----------------------------------------------

def test_exhaustive_small_games_match_both_oracles():
    for wins in oracles.all_games(2, 2):
        g = G(2, 2, wins)
        expect = _norm(oracles.game_rank(2, 2, wins))
        assert grk(g) == expect == grk_minimax(2, 2, wins)
        assert (winner(g) is Player.II) == (expect == INFINITY)


def test_random_games_match_minimax():
    rng = random.Random(8)
    for _ in range(10_000):
        k = rng.randint(1, 3)
        D = rng.choice([2, 4, 6]) if k < 3 else rng.choice([2, 4])
        g = random_game(rng, k, D)
        assert grk(g) == grk_minimax(k, D, g.wins)


def test_random_deep_games_match_minimax():
    rng = random.Random(18)
    for _ in range(300):
        g = random_game(rng, 3, 6, density=rng.choice([0.005, 0.02]))
        assert grk(g) == grk_minimax(3, 6, g.wins)


def test_ranks_at_positions_match_minimax():
    rng = random.Random(12)
    for _ in range(200):
        g = random_game(rng, 2, 6)
        for n in (0, 2, 4):
            for pos in itertools.product(range(2), repeat=n):
                assert grk(g, pos) == grk_minimax(2, 6, g.wins, pos)


def test_strategies_replay():
    rng = random.Random(6)
    for _ in range(500):
        g = random_game(rng, rng.randint(2, 3), 4)
        if winner(g) is Player.I:
            assert replay(g, extract_strategy(g))


def test_grk_antitone_in_payoff():
    rng = random.Random(10)
    for _ in range(500):
        g = random_game(rng, 2, 6)
        extra = random_game(rng, 2, 6, density=0.05)
        bigger = G(2, 6, g.wins | extra.wins)
        assert not grk(g) < grk(bigger)


@pytest.mark.skipif(_kernels.NUMBA_KERNELS is None, reason="numba missing")
def test_backends_agree():
    rng = random.Random(1)
    for _ in range(300):
        k = rng.randint(1, 4)
        g = random_game(rng, k, rng.choice([2, 4]))
        a = _kernels.solve_levels(win_levels(g), k, g.horizon, "numba")
        b = _kernels.solve_levels(win_levels(g), k, g.horizon, "numpy")
        for x, y in zip(a[0], b[0]):
            assert np.array_equal(x, y)
        for x, y in zip(a[1], b[1]):
            assert (x is None and y is None) or np.array_equal(x, y)


def test_unknown_backend():
    with pytest.raises(ValueError):
        _kernels.kernels("fortran")


# -- comparison games ---------------------------------------------------------------

def _le(a, b):
    return a <= b


def _lt(a, b):
    return a < b


def test_comparison_examples():
    A = G(2, 2, [()])
    B = G(2, 2, [(0, 0), (0, 1)])
    assert winner(le_game(B, B)) is Player.I
    assert winner(le_game(A, B)) is Player.I
    assert winner(lt_game(A, B)) is Player.I
    assert winner(lt_game(B, A)) is Player.II


def test_comparison_shape():
    g = le_game(G(2, 2, []), G(2, 4, []))
    assert (g.alphabet, g.horizon) == (4, 6)


def test_comparison_lemma_exhaustive_small():
    games = [G(2, 2, w) for w in oracles.all_games(2, 2)]
    for A in games:
        for B in games:
            assert (winner(le_game(A, B)) is Player.I) == _le(grk(A), grk(B))
            assert (winner(lt_game(A, B)) is Player.I) == _lt(grk(A), grk(B))


def test_comparison_lemma_random_larger():
    rng = random.Random(21)
    for _ in range(1000):
        if rng.random() < .5:
            A, B = random_game(rng, 3, 2), random_game(rng, rng.choice([1, 2, 3]), 2)
        else:
            A, B = random_game(rng, 2, rng.choice([2, 4])), random_game(rng, rng.choice([1, 2]), 4)
        if rng.random() < .5:
            A, B = B, A
        assert (winner(le_game(A, B)) is Player.I) == _le(grk(A), grk(B))
        assert (winner(lt_game(A, B)) is Player.I) == _lt(grk(A), grk(B))


# -- the CLI game ---------------------------------------------------------------------

def test_cli_game_examples():
    trivial = FiniteGroup([(0,)])
    assert grk(cli_game(trivial, 1).game) == 0
    Z2 = FiniteGroup([(0, 1), (1, 0)])
    assert grk(cli_game(Z2, Z2.full).game) == 0
    assert grk(cli_game(Z2, 1).game) == 1


def test_cli_game_errors():
    S3 = FiniteGroup.generated([(1, 0, 2), (1, 2, 0)])
    with pytest.raises(GameError, match="identity"):
        cli_game(S3, 2)
    r = S3.index[(1, 2, 0)]
    with pytest.raises(GameError, match="symmetric"):
        cli_game(S3, 1 | 1 << r)
    with pytest.raises(GroupError):
        cli_game(S3, 1, order_bound=4)


# -- Cantor-Bendixson rank --------------------------------------------------------------

def test_cb_rank_examples():
    assert cb_rank([-1]) == 1
    assert cb_rank([-1, 0]) == 2
    assert cb_rank([-1, 0, 0, 0]) == 2
    assert cb_rank([-1, 0, 1, 2, 0]) == 4


def _cb_oracle(parents):
    children = {i: [j for j, p in enumerate(parents) if p == i] for i in range(len(parents))}

    def height(v):
        return 1 + max((height(c) for c in children[v]), default=-1)

    return max(height(v) for v in range(len(parents))) + 1


def test_cb_rank_random_trees():
    rng = random.Random(3)
    for _ in range(300):
        n = rng.randint(1, 12)
        parents = [-1] + [rng.randrange(i) for i in range(1, n)]
        assert cb_rank(parents) == _cb_oracle(parents)


@pytest.mark.parametrize("bad", [[], [0], [-1, -1], [-1, 5], [-1, 2, 1]])
def test_cb_rank_rejects_bad_trees(bad):
    with pytest.raises(GameError):
        cb_rank(bad)
