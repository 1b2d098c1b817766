"""Group constructions and their balanced rank, evaluated symbolically.

Every expression carries a marked open subgroup (``{1}`` for the leaves) so
that the rank of the marked pair is available to the local direct product
and to the Z-wreath.  A leaf may be declared unmarked, in which case the
constructions that need a marked pair reject it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from .ordinal import ONE, ZERO, Ordinal, add, as_ordinal


class GroupRankError(ValueError):
    pass


@dataclass(frozen=True)
class Trivial:
    marked: bool = True


@dataclass(frozen=True)
class DiscreteNontrivial:
    marked: bool = True


@dataclass(frozen=True)
class Explicit:
    members: Tuple["GroupExpr", ...]


@dataclass(frozen=True)
class TowerFamily:
    """The family (G_beta) for beta < bound produced by :func:`tower`."""
    bound: Ordinal


FamilySpec = Union[Explicit, TowerFamily]


@dataclass(frozen=True)
class Product:
    family: FamilySpec


@dataclass(frozen=True)
class LocalDirectProduct:
    family: FamilySpec


@dataclass(frozen=True)
class ZWreath:
    inner: "GroupExpr"


GroupExpr = Union[Trivial, DiscreteNontrivial, Product, LocalDirectProduct, ZWreath]


@dataclass(frozen=True)
class RankProfile:
    rank: Ordinal
    marked_pair_rank: Optional[Ordinal]


def tower(alpha) -> GroupExpr:
    alpha = as_ordinal(alpha)
    if alpha.is_zero():
        raise GroupRankError("no 0-balanced groups exist")
    if alpha == ONE:
        return Trivial()
    if alpha.is_limit():
        return Product(TowerFamily(alpha))
    beta = alpha.predecessor()
    if beta.is_limit():
        return LocalDirectProduct(TowerFamily(beta))
    return ZWreath(tower(beta))


def _family_sup(family: FamilySpec) -> RankProfile:
    if isinstance(family, TowerFamily):
        # sup of beta < bound is bound; successor-stage pair ranks are
        # beta - 1 and limit-stage ones equal the stage, so their sup is bound too
        return RankProfile(family.bound, family.bound)
    if not family.members:
        raise GroupRankError("empty family")
    profiles = [eval_rank(m) for m in family.members]
    rank = max(p.rank for p in profiles)
    pairs = [p.marked_pair_rank for p in profiles]
    return RankProfile(rank, None if None in pairs else max(pairs))


def eval_rank(g: GroupExpr) -> RankProfile:
    if isinstance(g, Trivial):
        return RankProfile(ONE, ZERO if g.marked else None)
    if isinstance(g, DiscreteNontrivial):
        return RankProfile(Ordinal.of(2), ONE if g.marked else None)
    if isinstance(g, Product):
        return _family_sup(g.family)
    if isinstance(g, LocalDirectProduct):
        sup = _family_sup(g.family)
        if sup.marked_pair_rank is None:
            raise GroupRankError("missing marked subgroup")
        pair = sup.marked_pair_rank
        return RankProfile(max(sup.rank, add(pair, ONE)), pair)
    if isinstance(g, ZWreath):
        inner = eval_rank(g.inner)
        if inner.marked_pair_rank is None:
            raise GroupRankError("missing marked subgroup")
        rank = add(inner.rank, ONE) if inner.rank.is_successor() else inner.rank
        return RankProfile(rank, add(inner.marked_pair_rank, ONE))
    raise TypeError(f"not a group expression: {g!r}")


@dataclass(frozen=True)
class Classification:
    tsi: bool
    cli: bool


def classify(g: GroupExpr) -> Classification:
    rank = eval_rank(g).rank
    return Classification(tsi=rank <= 2, cli=True)


def validate(g: GroupExpr) -> List[str]:
    out: List[str] = []

    def has_pair(node) -> bool:
        try:
            return eval_rank(node).marked_pair_rank is not None
        except GroupRankError:
            return False

    def visit_family(family, need_pairs):
        if isinstance(family, TowerFamily):
            if not family.bound.is_limit():
                out.append("tower family bound must be a limit ordinal")
            return
        if not family.members:
            out.append("empty family")
        for m in family.members:
            visit(m)
            if need_pairs and not has_pair(m):
                out.append("missing marked subgroup")

    def visit(node):
        if isinstance(node, (Trivial, DiscreteNontrivial)):
            return
        if isinstance(node, Product):
            visit_family(node.family, False)
        elif isinstance(node, LocalDirectProduct):
            visit_family(node.family, True)
        elif isinstance(node, ZWreath):
            visit(node.inner)
            if not has_pair(node.inner):
                out.append("missing marked subgroup")
        else:
            out.append(f"unknown node {type(node).__name__}")

    visit(g)
    return list(dict.fromkeys(out))
