import random

import pytest

from rankforge.grouprank import (
    DiscreteNontrivial, Explicit, GroupRankError, LocalDirectProduct, Product, TowerFamily, Trivial,
    ZWreath, classify, eval_rank, tower, validate,
)
from rankforge.ordinal import ONE, add, parse


def O(t):
    return parse(t)


def test_tower_examples():
    assert tower(1) == Trivial()
    assert tower(2) == ZWreath(Trivial())
    assert tower(3) == ZWreath(ZWreath(Trivial()))
    assert tower(O("w+1")) == LocalDirectProduct(TowerFamily(O("w")))
    assert tower(O("w")) == Product(TowerFamily(O("w")))
    with pytest.raises(GroupRankError, match="no 0-balanced groups exist"):
        tower(0)


def test_eval_examples():
    assert eval_rank(ZWreath(DiscreteNontrivial())).rank == 3
    assert eval_rank(Trivial()).rank == 1
    assert eval_rank(tower(O("w^2+w+2"))).rank == O("w^2+w+2")


def test_leaf_profiles():
    assert (eval_rank(Trivial()).rank, eval_rank(Trivial()).marked_pair_rank) == (1, 0)
    p = eval_rank(DiscreteNontrivial())
    assert (p.rank, p.marked_pair_rank) == (2, 1)
    assert eval_rank(DiscreteNontrivial(marked=False)).marked_pair_rank is None


# every CNF shape up to w^3: zero/successor/limit exponents, single and multi-term
SHAPES = ["1", "2", "7", "w", "w+1", "w+5", "w*2", "w*3+2", "w^2", "w^2+1", "w^2+w", "w^2*2+w*3+4",
          "w^3", "w^3+w^2+w+1", "w^3*2", "w^w", "w^(w+1)+w^2*2+1", "w^(w*2)", "w^(w^2)+w"]


@pytest.mark.parametrize("text", SHAPES)
def test_tower_rank_is_exact(text):
    alpha = O(text)
    prof = eval_rank(tower(alpha))
    assert prof.rank == alpha
    if alpha.is_successor():
        assert prof.rank == add(prof.marked_pair_rank, ONE)
    assert validate(tower(alpha)) == []


def test_classify_examples():
    assert (classify(Trivial()).tsi, classify(Trivial()).cli) == (True, True)
    c = classify(ZWreath(DiscreteNontrivial()))
    assert (c.tsi, c.cli) == (False, True)
    c = classify(Product(Explicit((DiscreteNontrivial(), DiscreteNontrivial()))))
    assert (c.tsi, c.cli) == (True, True)


def test_validate_examples():
    assert validate(tower(O("w"))) == []
    assert validate(Product(Explicit(()))) == ["empty family"]
    unmarked = LocalDirectProduct(Explicit((DiscreteNontrivial(marked=False),)))
    assert validate(unmarked) == ["missing marked subgroup"]
    assert validate(ZWreath(Trivial(marked=False))) == ["missing marked subgroup"]
    assert "tower family bound must be a limit ordinal" in validate(Product(TowerFamily(O("w+1"))))


def test_invalid_expressions_raise_on_eval():
    with pytest.raises(GroupRankError, match="empty family"):
        eval_rank(Product(Explicit(())))
    with pytest.raises(GroupRankError, match="missing marked subgroup"):
        eval_rank(ZWreath(DiscreteNontrivial(marked=False)))


def _random_expr(rng, depth):
    if depth == 0 or rng.random() < .3:
        return rng.choice([Trivial(), DiscreteNontrivial()])
    kind = rng.randrange(4)
    if kind == 0:
        return ZWreath(_random_expr(rng, depth - 1))
    if kind == 1:
        return tower(rng.choice([O("3"), O("w"), O("w+2"), O("w*2+1")]))
    members = tuple(_random_expr(rng, depth - 1) for _ in range(rng.randint(1, 3)))
    return (Product if kind == 2 else LocalDirectProduct)(Explicit(members))


def test_product_rank_is_sup_of_factors():
    rng = random.Random(2)
    for _ in range(300):
        members = tuple(_random_expr(rng, 3) for _ in range(rng.randint(1, 4)))
        assert eval_rank(Product(Explicit(members))).rank == max(eval_rank(m).rank for m in members)


def test_wreath_jumps_only_at_successors():
    rng = random.Random(4)
    for _ in range(300):
        g = _random_expr(rng, 3)
        r = eval_rank(g).rank
        jumped = eval_rank(ZWreath(g)).rank
        assert jumped == (add(r, ONE) if r.is_successor() else r)
    assert eval_rank(ZWreath(tower(O("w")))).rank == O("w")
