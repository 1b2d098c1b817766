import random

import pytest
from hypothesis import given, strategies as st

from rankforge.ordinal import ONE, ZERO, Order, add, parse
from rankforge.zline import (
    IDENTITY, ConditionalShift, OmegaStar, Position, Sum, SymAutomorphism, WellOrder, ZElement,
    ZLineError, apply, compare_backlex, density_witness, drk_upper, e_rel,
    h_rel, hausdorff_rank, qf_equal, qf_type, synth_automorphism, zero,
)

import oracles
from zhelpers import W2, matching_instance, random_element

W10 = WellOrder(10)
STAR = OmegaStar()


def Z(amb, **kw):
    return ZElement(amb, kw)


def fin(d, amb=W10):
    return ZElement(amb, d)


int_elements = st.dictionaries(st.integers(0, 9), st.integers(-3, 3).filter(bool), max_size=4)


# -- compare and e_rel ------------------------------------------------------------

def test_compare_examples():
    a = fin({1: 2})
    assert compare_backlex(a, a) is Order.EQ
    assert compare_backlex(zero(W10), fin({0: 1})) is Order.LT
    # derived with oracles.z_cmp
    assert compare_backlex(fin({5: -1, 2: 100}), zero(W10)) is Order.LT


def test_compare_rejects_mixed_ambients():
    with pytest.raises(ZLineError):
        compare_backlex(fin({1: 1}), ZElement(WellOrder(11), {1: 1}))


def test_e_rel_examples():
    assert e_rel(zero(W10), fin({3: 5})) == (Position(3), 5)
    assert e_rel(fin({3: 5}), zero(W10)) == (Position(3), -5)
    # derived with oracles.z_erel_scan
    assert e_rel(fin({1: 2, 4: 1}), fin({1: 9, 4: 1, 0: 7})) == (Position(1), 7)
    with pytest.raises(ZLineError, match="relation undefined on equal elements"):
        e_rel(fin({1: 1}), fin({1: 1}))


@given(int_elements, int_elements)
def test_compare_and_e_rel_match_definition(a, b):
    A, B = fin(a), fin(b)
    assert compare_backlex(A, B).value == oracles.z_cmp(a, b)
    if a != b:
        hits = oracles.z_erel_scan(a, b, sorted(set(a) | set(b)))
        assert len(hits) == 1
        pos, z = e_rel(A, B)
        assert (pos.key, z) == hits[0]


def test_backlex_is_strict_total_order_per_ambient():
    rng = random.Random(11)
    ambients = [
        (W2, lambda: random_element(rng)),
        (STAR, lambda: ZElement(STAR, {-rng.randrange(6): rng.choice([-2, -1, 1, 2]) for _ in range(rng.randint(0, 3))})),
        (Sum(STAR, W10), lambda: ZElement(Sum(STAR, W10), {
            Position(-rng.randrange(4), "L") if rng.random() < .5 else Position(rng.randrange(4), "R"):
            rng.choice([-1, 1, 2]) for _ in range(rng.randint(0, 3))})),
    ]
    for amb, draw in ambients:
        for _ in range(1000):
            a, b, c = draw(), draw(), draw()
            ab, ba = compare_backlex(a, b), compare_backlex(b, a)
            assert ab.value == -ba.value
            assert (ab is Order.EQ) == (a == b)
            if ab is Order.LT and compare_backlex(b, c) is Order.LT:
                assert compare_backlex(a, c) is Order.LT


def test_sum_orders_left_block_below_right():
    amb = Sum(STAR, W10)
    left = ZElement(amb, {Position(0, "L"): 5})
    right = ZElement(amb, {Position(0, "R"): 1})
    assert compare_backlex(left, right) is Order.LT


def test_positions_are_validated():
    with pytest.raises(ZLineError):
        fin({10: 1})
    with pytest.raises(ZLineError):
        ZElement(STAR, {1: 1})
    with pytest.raises(ZLineError):
        ZElement(Sum(STAR, W10), {Position(0, "X"): 1})


def test_zero_values_are_dropped():
    assert fin({1: 0, 2: 3}).support == ((Position(2), 3),)


# -- quantifier-free types --------------------------------------------------------

def test_qf_examples():
    a, b = zero(W10), fin({3: 1})
    assert qf_equal(qf_type((a, b)), qf_type((a, b)))
    # both pairs satisfy E_(3,1) and the strict order
    assert qf_equal(qf_type((a, b)), qf_type((fin({5: 2}), fin({5: 2, 3: 1}))))
    # witness positions 3 and 2 differ
    assert not qf_equal(qf_type((a, b)), qf_type((a, fin({2: 1}))))


def test_qf_type_of_empty_tuple_rejected():
    with pytest.raises(ZLineError):
        qf_type(())


# -- apply and synthesis ----------------------------------------------------------

def test_apply_examples():
    x = fin({2: 1})
    assert apply(IDENTITY, x) == x
    psi = ConditionalShift(zero(W10), 3, (3,), 5)
    phi = SymAutomorphism((psi,))
    assert apply(phi, zero(W10)) == fin({3: 5})
    assert apply(phi, fin({4: 1})) == fin({4: 1})


def test_shift_rejects_targets_above_threshold():
    with pytest.raises(ZLineError):
        ConditionalShift(zero(W10), 2, (3,), 1)


def test_synth_examples():
    a = fin({1: 1})
    assert synth_automorphism([], a, a).moves == ()
    phi = synth_automorphism([], zero(W10), fin({3: 5}))
    assert len(phi.moves) == 1
    m = phi.moves[0]
    assert (m.threshold, m.targets, m.amount) == (Position(3), (Position(3),), 5)
    assert phi(zero(W10)) == fin({3: 5})


def test_synth_with_context():
    c = fin({3: 1})
    # ({3->1}, 0) and ({3->1}, {2->1}) both split from c at position 3 with z = -1
    assert qf_equal(qf_type((c, zero(W10))), qf_type((c, fin({2: 1}))))
    phi = synth_automorphism([c], zero(W10), fin({2: 1}))
    assert phi(c) == c and phi(zero(W10)) == fin({2: 1})


def test_synth_rejects_type_mismatch():
    with pytest.raises(ZLineError, match="tuples have different quantifier-free types"):
        synth_automorphism([fin({2: 1})], zero(W10), fin({3: 1}))


def _preserves_structure(phi, xs):
    for x in xs:
        assert phi.inverse()(phi(x)) == x
    for i, x in enumerate(xs):
        for y in xs[i + 1:]:
            assert compare_backlex(phi(x), phi(y)) is compare_backlex(x, y)
            if x != y:
                assert e_rel(phi(x), phi(y)) == e_rel(x, y)


def test_synth_random_instances():
    rng = random.Random(5)
    for _ in range(150):
        ctx, a, b = matching_instance(rng)
        phi = synth_automorphism(ctx, a, b)
        assert phi(a) == b and all(phi(c) == c for c in ctx)
        differing = {p for p in set(a.positions()) | set(b.positions()) if a(p) != b(p)}
        assert len(phi.moves) <= len(differing)
        _preserves_structure(phi, [random_element(rng) for _ in range(25)] + ctx + [a, b])


# -- Hausdorff derivative -----------------------------------------------------------

def test_h_rel_examples():
    a = fin({2: 1})
    assert h_rel(a, a, 0)
    assert h_rel(a, zero(W10), 3)
    assert not h_rel(a, zero(W10), 2)


def test_h_rel_requires_well_order():
    with pytest.raises(ZLineError, match="requires a well-order"):
        h_rel(zero(STAR), zero(STAR), 0)
    with pytest.raises(ZLineError):
        hausdorff_rank(Sum(STAR, W10))


def test_hausdorff_rank_examples():
    assert hausdorff_rank(WellOrder(1)) == 1
    assert hausdorff_rank(WellOrder(parse("w"))) == parse("w")
    # cross-checked against the window brute force in test_oracle
    assert hausdorff_rank(WellOrder(parse("w^2+3"))) == parse("w^2+3")


def test_h_rel_equivalence_and_monotone():
    rng = random.Random(3)
    betas = [ZERO, ONE, parse("2"), parse("4"), parse("w"), parse("w+2"), parse("w*2"), parse("w*3+2")]
    for _ in range(300):
        a, b, c = (random_element(rng) for _ in range(3))
        for i, beta in enumerate(betas):
            assert h_rel(a, a, beta)
            assert h_rel(a, b, beta) == h_rel(b, a, beta)
            if h_rel(a, b, beta) and h_rel(b, c, beta):
                assert h_rel(a, c, beta)
            if h_rel(a, b, beta):
                assert all(h_rel(a, b, later) for later in betas[i:])
        assert h_rel(a, b, 0) == (a == b)


# -- density and Deissler bound ------------------------------------------------------

def test_density_examples():
    c = density_witness(zero(STAR), ZElement(STAR, {0: 1}))
    assert c == ZElement(STAR, {-1: 1})
    assert compare_backlex(zero(STAR), c) is Order.LT
    with pytest.raises(ZLineError):
        density_witness(ZElement(STAR, {0: 1}), ZElement(STAR, {0: 1}))
    with pytest.raises(ZLineError, match="ambient order has a minimum here"):
        density_witness(zero(WellOrder(parse("w"))), ZElement(WellOrder(parse("w")), {0: 1}))


def test_density_in_sum_crosses_blocks():
    amb = Sum(STAR, W10)
    a, b = zero(amb), ZElement(amb, {Position(0, "R"): 1})
    c = density_witness(a, b)
    assert compare_backlex(a, c) is Order.LT and compare_backlex(c, b) is Order.LT


def test_drk_upper_examples():
    a = random_element(random.Random(1))
    assert drk_upper(a, a) == ZERO
    amb = W2
    # least beta with 1 + beta = 4, from oracles.least_beta_one_plus
    assert drk_upper(zero(amb), ZElement(amb, {3: 1})) == 3
    # least beta with 1 + beta = w + 2
    assert drk_upper(zero(amb), ZElement(amb, {2: 1, parse("w"): 1})) == parse("w+1")


def test_drk_upper_matches_equation_oracle():
    for p in [0, 1, 2, 5]:
        beta = oracles.least_beta_one_plus({0: p + 1})
        assert drk_upper(zero(W2), ZElement(W2, {p: 1})) == parse(oracles.show(beta))
    for p in ["w", "w+1", "w*2"]:
        target = oracles.p_add(oracles.poly(p), {0: 1})
        beta = oracles.least_beta_one_plus(target)
        assert drk_upper(zero(W2), ZElement(W2, {parse(p): 1})) == parse(oracles.show(beta))


def test_drk_upper_symmetric_and_bounded():
    rng = random.Random(9)
    for _ in range(500):
        a, b = random_element(rng), random_element(rng)
        assert drk_upper(a, b) == drk_upper(b, a)
        assert not add(hausdorff_rank(W2), ONE) < drk_upper(a, b)
