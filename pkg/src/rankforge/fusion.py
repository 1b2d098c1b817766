"""Antichain pairs in the piecewise tree over mu = w^lambda, the extension
step that keeps a finite pair extendable, and the fusion map.

A node of height ``beta`` is a finitely supported map on ``[beta, mu)``;
``s ⊑ t`` when ``t`` extends ``s`` downwards.  Elements of the ambient
``Z[mu]`` are the height-0 nodes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence, Tuple, Union

from .ordinal import ONE, ZERO, Ordinal, add, analyze, as_ordinal, nat_add
from .zline import (
    IDENTITY, ConditionalShift, Position, SymAutomorphism, WellOrder, ZElement,
    greatest_difference,
)


class FusionError(ValueError):
    pass


def tree_ambient(mu) -> WellOrder:
    mu = as_ordinal(mu)
    if not analyze(mu).indecomposable:
        raise FusionError(f"{mu} is not additively indecomposable")
    return WellOrder(mu)


class TNode:
    __slots__ = ("height", "values", "_hash")

    def __init__(self, height, values: ZElement):
        height = as_ordinal(height)
        if not isinstance(values.ambient, WellOrder):
            raise FusionError("tree nodes live over a well-ordered ambient")
        if not analyze(values.ambient.bound).indecomposable:
            raise FusionError(f"{values.ambient.bound} is not additively indecomposable")
        if not height < values.ambient.bound:
            raise FusionError("node height must lie below mu")
        if any(p.key < height for p in values.positions()):
            raise FusionError("node values must lie at or above its height")
        self.height = height
        self.values = values
        self._hash = hash((height, values))

    @classmethod
    def restrict(cls, a: ZElement, beta) -> "TNode":
        beta = as_ordinal(beta)
        return cls(beta, ZElement(a.ambient, {p: v for p, v in a.support if not p.key < beta}))

    @classmethod
    def of(cls, mu, height, values: Mapping) -> "TNode":
        return cls(height, ZElement(tree_ambient(mu), values))

    @property
    def mu(self) -> Ordinal:
        return self.values.ambient.bound

    def __call__(self, pos) -> int:
        return self.values(pos)

    def covers(self, a: ZElement) -> bool:
        if a.ambient != self.values.ambient:
            raise FusionError("element and node live over different ambients")
        p = greatest_difference(a, self.values)
        return p is None or p.key < self.height

    def element(self) -> ZElement:
        """The node read as an element, zero below its height."""
        return self.values

    def __eq__(self, other):
        if not isinstance(other, TNode):
            return NotImplemented
        return self.height == other.height and self.values == other.values

    def __hash__(self):
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{p}↦{v}" for p, v in self.values.support)
        return f"TNode(ht={self.height}, {{{body}}})"


def _same(s: TNode, t: TNode):
    if s.values.ambient != t.values.ambient:
        raise FusionError("nodes live over different ambients")


def initial_segment(s: TNode, t: TNode) -> bool:
    """s ⊑ t: t extends s downwards."""
    _same(s, t)
    return not s.height < t.height and TNode.restrict(t.values, s.height) == s


def meet(s: TNode, t: TNode) -> TNode:
    _same(s, t)
    h = max(s.height, t.height)
    p = greatest_difference(s.values, t.values)
    if p is not None and not p.key < h:
        # mu is a limit, so p + 1 stays below it
        h = add(p.key, ONE)
    return TNode.restrict(s.values, h)


def comparable(s: TNode, t: TNode) -> bool:
    m = meet(s, t)
    return m == s or m == t


def covers(s: TNode, a: ZElement) -> bool:
    return s.covers(a)


@dataclass(frozen=True)
class FPair:
    F0: frozenset
    F1: frozenset

    def __init__(self, F0: Iterable[TNode] = (), F1: Iterable[TNode] = ()):
        object.__setattr__(self, "F0", frozenset(F0))
        object.__setattr__(self, "F1", frozenset(F1))

    def side(self, i: int) -> frozenset:
        return self.F1 if i else self.F0


def in_F(p: FPair, sum_rule: Callable = nat_add) -> bool:
    """Finite antichain pair test; ``sum_rule`` exists for regression checks."""
    nodes = list(p.F0 | p.F1)
    if p.F0 & p.F1:
        return False
    for i, s in enumerate(nodes):
        for t in nodes[i + 1:]:
            if comparable(s, t):
                return False
    for s in p.F0:
        for t in p.F1:
            if not sum_rule(s.height, t.height) < meet(s, t).height:
                return False
    return True


def nhat(r: TNode, n: int, gamma, delta_combined) -> SymAutomorphism:
    """Shift coordinates gamma and delta_combined by -n inside L(r)."""
    gamma, delta_combined = as_ordinal(gamma), as_ordinal(delta_combined)
    if not (gamma < r.height and delta_combined < r.height):
        raise FusionError("shift positions must lie below the node height")
    if n == 0:
        return IDENTITY
    targets = (Position(gamma),) if gamma == delta_combined else (Position(gamma), Position(delta_combined))
    return SymAutomorphism((ConditionalShift(None, None, targets, -n, scope=r),))


@dataclass(frozen=True)
class Witness:
    n: int
    gamma: Ordinal
    delta_combined: Ordinal


def extend_requirement(p: FPair, s: TNode, r: TNode, i: int, beta, C: Sequence[ZElement]):
    """Grow side ``i`` so every element of ``C`` is, after one two-coordinate
    shift inside L(r), covered by a new node of height ``beta``; the grown
    pair is still a finite antichain pair."""
    beta = as_ordinal(beta)
    if i not in (0, 1):
        raise FusionError("side must be 0 or 1")
    Fi, Fo = p.side(i), p.side(1 - i)
    if not in_F(p):
        raise FusionError("input pair violates the antichain-pair conditions")
    if s not in Fi:
        raise FusionError("s must belong to F_i")
    if r in Fi:
        raise FusionError("r must not belong to F_i")
    if not beta < s.height:
        raise FusionError("ht(s) must exceed beta")
    rho = r.height
    if not beta < rho:
        raise FusionError("beta must lie below ht(r)")
    if meet(r, s).height != add(rho, ONE):
        raise FusionError("meet of r and s must sit exactly one level above r")
    C = list(dict.fromkeys(C))
    if not all(r.covers(c) for c in C):
        raise FusionError("C must lie in L(r)")

    def strictly_below_r(q):
        return q != r and initial_segment(r, q)

    above = [q for q in p.F0 | p.F1 if strictly_below_r(q)]
    gamma = max([beta] + [q.height for q in above])
    delta = max([q.height for q in Fo if strictly_below_r(q)], default=ZERO)
    delta_combined = nat_add(beta, delta)
    if not delta_combined < rho:
        raise AssertionError("internal consistency: beta ⊕ delta must lie below ht(r)")
    if not C or initial_segment(s, r):
        # when r extends s, C already lies under s, which is high enough
        return p, Witness(0, gamma, delta_combined)
    other_above = [q for q in Fo if strictly_below_r(q)]
    limit = 2 * len(above) * len(C) + 2
    for n in range(1, limit + 1):
        g = nhat(r, n, gamma, delta_combined)
        images = [g(c) for c in C]
        if any(img(gamma) == q(gamma) for img in images for q in above):
            continue
        if any(not delta_combined < meet(TNode(ZERO, img), q).height
               for img in images for q in other_above):
            continue
        new_nodes = {TNode.restrict(img, beta) for img in images}
        E = FPair(Fi | new_nodes, Fo) if i == 0 else FPair(Fo, Fi | new_nodes)
        if not in_F(E):
            raise AssertionError("internal consistency: extended pair left the antichain pairs")
        return E, Witness(n, gamma, delta_combined)
    raise AssertionError("internal consistency: no admissible shift found")


def fuse_value(p: FPair, default_rule, x0, x1, a: ZElement):
    """x0(a) on L(F0), x1(a) on L(F1), the default side elsewhere."""
    in0 = any(s.covers(a) for s in p.F0)
    in1 = any(t.covers(a) for t in p.F1)
    if in0 and in1:
        raise FusionError("element covered by both sides of the pair")
    if in0:
        side = 0
    elif in1:
        side = 1
    else:
        side = default_rule(a) if callable(default_rule) else int(default_rule)
    src = x1 if side else x0
    return src(a) if callable(src) else src[a]


def glue_system(system: Sequence[Tuple[TNode, SymAutomorphism]]) -> SymAutomorphism:
    nodes = [r for r, _ in system]
    for i, r in enumerate(nodes):
        for q in nodes[i + 1:]:
            if comparable(r, q):
                raise FusionError("glued nodes must form an antichain")
    moves = []
    for r, local in system:
        for m in local.moves:
            if m.scope is not None and m.scope != r:
                raise FusionError("local automorphism is scoped to a different node")
            moves.append(ConditionalShift(m.anchor, m.threshold, m.targets, m.amount, scope=r))
    return SymAutomorphism(tuple(moves))


class _NotFound:
    def __repr__(self):
        return "NOT_FOUND"

    def __bool__(self):
        return False


NOT_FOUND = _NotFound()


def star_check(J: Sequence[TNode], alpha, A: Sequence[ZElement], B: Sequence[ZElement], beta,
               search_bound: int = 32, candidates: Iterable = ()) -> Union[SymAutomorphism, _NotFound]:
    """Bounded search for g fixing A pointwise with every g(b) covered by a
    node of J of height >= beta.  NOT_FOUND is inconclusive."""
    alpha, beta = as_ordinal(alpha), as_ordinal(beta)
    J = list(dict.fromkeys(J))
    if not beta < alpha:
        raise FusionError("beta must lie below alpha")
    for k, s in enumerate(J):
        if any(comparable(s, t) for t in J[k + 1:]):
            raise FusionError("J must be an antichain")
    S = []
    for a in A:
        hits = [s for s in J if s.covers(a) and not s.height < alpha]
        if not hits:
            raise FusionError("every element of A must be covered by a node of height >= alpha")
        S.extend(hits)
    S = list(dict.fromkeys(S))

    def covered_ok(x):
        return any(t.covers(x) and not t.height < beta for t in J)

    pending = [b for b in dict.fromkeys(B) if not covered_ok(b)]
    if not pending:
        return IDENTITY
    groups = {}
    for b in pending:
        if S:
            low = min((meet(s, TNode(ZERO, b)) for s in S), key=lambda m: m.height)
            if not low.height.is_successor():
                return NOT_FOUND
            r = TNode.restrict(b, low.height.predecessor())
        else:
            tops = [p.key for x in pending for p in x.positions()]
            tops += [t.height for t in J] + [p.key for t in J for p in t.values.positions()] + [beta]
            h = add(max(tops), ONE)
            if not h < b.ambient.bound:
                return NOT_FOUND
            r = TNode.restrict(b, h)
        groups.setdefault(r, []).append(b)
    system = []
    for r, members in groups.items():
        # the move acts on all of L(r), so already covered b's must stay covered
        inside = [b for b in dict.fromkeys(B) if r.covers(b)]
        pinned = [a for a in A if r.covers(a)]
        pool = {beta} | {as_ordinal(c) for c in candidates}
        pool |= {t.height for t in J} | {p.key for t in J for p in t.values.positions()}
        pool |= {p.key for b in members for p in b.positions()}
        pool |= {nat_add(beta, t.height) for t in J}
        pool = sorted(x for x in pool if x < r.height)
        found = None
        shifts = sorted((n for n in range(-search_bound, search_bound + 1) if n), key=lambda n: (abs(n), -n))
        for gi, gamma in enumerate(pool):
            for delta in pool[gi:]:
                for n in shifts:
                    g = nhat(r, n, gamma, delta)
                    if all(covered_ok(g(b)) for b in inside) and all(g(a) == a for a in pinned):
                        found = g
                        break
                if found:
                    break
            if found:
                break
        if found is None:
            return NOT_FOUND
        system.append((r, found))
    try:
        g = glue_system(system)
    except FusionError:
        return NOT_FOUND
    if any(g(a) != a for a in A) or not all(covered_ok(g(b)) for b in B):
        return NOT_FOUND
    return g
