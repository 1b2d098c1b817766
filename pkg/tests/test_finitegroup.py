import itertools

import pytest

from rankforge.finitegroup import FiniteGroup, GroupError, compose, invert, small_groups


def test_compose_is_right_to_left():
    p, q = (1, 2, 0), (1, 0, 2)
    assert compose(p, q) == tuple(p[q[i]] for i in range(3))
    assert compose(p, invert(p)) == (0, 1, 2)


def test_small_groups_cover_orders_up_to_eight():
    groups = small_groups()
    assert len(groups) == 14
    counts = {}
    for _, G in groups:
        counts[G.order] = counts.get(G.order, 0) + 1
    assert counts == {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5}


def _invariants(G):
    abelian = all(G.mul[a][b] == G.mul[b][a] for a in range(G.order) for b in range(G.order))
    orders = []
    for g in range(G.order):
        x, k = g, 1
        while x != 0:
            x, k = G.mul[x][g], k + 1
        orders.append(k)
    return G.order, abelian, tuple(sorted(orders))


def test_small_groups_pairwise_non_isomorphic():
    invs = [_invariants(G) for _, G in small_groups()]
    assert len(set(invs)) == len(invs)


@pytest.mark.parametrize("name,G", small_groups())
def test_group_axioms(name, G):
    n = G.order
    assert all(G.mul[0][g] == g == G.mul[g][0] for g in range(n))
    assert all(G.mul[g][G.inv[g]] == 0 for g in range(n))
    for a, b, c in itertools.product(range(n), repeat=3):
        assert G.mul[G.mul[a][b]][c] == G.mul[a][G.mul[b][c]]


def test_generated_and_bound():
    S3 = FiniteGroup.generated([(1, 0, 2), (1, 2, 0)])
    assert S3.order == 6
    with pytest.raises(GroupError):
        FiniteGroup.generated([(1, 2, 3, 4, 0), (1, 0, 2, 3, 4)], bound=64)


def test_rejects_non_groups():
    with pytest.raises(GroupError):
        FiniteGroup([(0, 1, 2), (1, 2, 0)])
    with pytest.raises(GroupError):
        FiniteGroup([(1, 0)])


def test_mask_helpers():
    S3 = FiniteGroup.generated([(1, 0, 2), (1, 2, 0)])
    V = S3.mask([0, S3.index[(1, 0, 2)]])
    assert S3.is_symmetric(V)
    assert S3.members(S3.product(V, V)) == sorted(S3.members(V))
    assert all(S3.is_symmetric(m) and m & 1 for m in S3.symmetric_neighbourhoods())
    subs = S3.subgroups()
    assert sorted(len(S3.members(h)) for h in subs) == [1, 2, 2, 2, 3, 6]
    g = S3.index[(1, 2, 0)]
    assert S3.members(S3.conj(g, V)) != S3.members(V)
