"""JSON encoding of every value the CLI exchanges.

Decoders raise :class:`CodecError` carrying a JSON pointer to the offending
field.  Ordinals encode as nested ``[[exponent, coefficient], ...]`` lists
(``0`` is ``[]``); decoders also accept an integer or a literal string, and
encoders can emit literal strings for human-facing output.
"""

from __future__ import annotations

import json
from typing import Any

from . import finitegroup, fusion, gamerank, grouprank, oracle, zline
from .ordinal import Ordinal, OrdinalSyntaxError, format_ordinal, parse


class CodecError(ValueError):
    def __init__(self, message: str, pointer: str = ""):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer or "/"
        self.reason = message


def _ptr(base: str, key) -> str:
    key = str(key).replace("~", "~0").replace("/", "~1")
    return f"{base}/{key}"


def _need(obj, kind, ptr, what):
    if not isinstance(obj, kind) or (kind is int and isinstance(obj, bool)):
        raise CodecError(f"expected {what}", ptr)
    return obj


def _field(obj: dict, key: str, ptr: str, default=...):
    _need(obj, dict, ptr, "an object")
    if key not in obj:
        if default is ...:
            raise CodecError(f"missing field {key!r}", ptr)
        return default
    return obj[key]


def _list(obj, ptr) -> list:
    return _need(obj, list, ptr, "an array")


def _int(obj, ptr) -> int:
    return _need(obj, int, ptr, "an integer")


# -- ordinals --------------------------------------------------------------------

def encode_ordinal(a: Ordinal, text: bool = False):
    if text:
        return format_ordinal(a)
    return [[encode_ordinal(e), c] for e, c in a.terms]


def decode_ordinal(obj, ptr: str = "") -> Ordinal:
    if isinstance(obj, bool):
        raise CodecError("expected an ordinal", ptr)
    if isinstance(obj, int):
        if obj < 0:
            raise CodecError("ordinals are non-negative", ptr)
        return Ordinal.of(obj)
    if isinstance(obj, str):
        try:
            return parse(obj)
        except OrdinalSyntaxError as e:
            raise CodecError(f"bad ordinal literal: {e}", ptr) from None
    if not isinstance(obj, list):
        raise CodecError("expected an ordinal", ptr)
    terms = []
    for i, term in enumerate(obj):
        p = _ptr(ptr, i)
        if not isinstance(term, list) or len(term) != 2:
            raise CodecError("expected an [exponent, coefficient] pair", p)
        exp = decode_ordinal(term[0], _ptr(p, 0))
        coef = term[1]
        if isinstance(coef, bool) or not isinstance(coef, int) or coef < 1:
            raise CodecError("coefficient must be a positive integer", _ptr(p, 1))
        if terms and not exp < terms[-1][0]:
            raise CodecError("exponents must strictly decrease", _ptr(p, 0))
        terms.append((exp, coef))
    return Ordinal(tuple(terms))


# -- index orders, positions, elements ------------------------------------------

def encode_ambient(order: zline.IndexOrder, text: bool = False):
    if isinstance(order, zline.WellOrder):
        return {"t": "wellorder", "bound": encode_ordinal(order.bound, text)}
    if isinstance(order, zline.OmegaStar):
        return {"t": "omegastar"}
    return {"t": "sum", "left": encode_ambient(order.left, text), "right": encode_ambient(order.right, text)}


def decode_ambient(obj, ptr: str = "") -> zline.IndexOrder:
    t = _field(obj, "t", ptr)
    if t == "wellorder":
        return zline.WellOrder(decode_ordinal(_field(obj, "bound", ptr), _ptr(ptr, "bound")))
    if t == "omegastar":
        return zline.OmegaStar()
    if t == "sum":
        return zline.Sum(decode_ambient(_field(obj, "left", ptr), _ptr(ptr, "left")),
                         decode_ambient(_field(obj, "right", ptr), _ptr(ptr, "right")))
    raise CodecError(f"unknown index order {t!r}", _ptr(ptr, "t"))


def encode_position(pos: zline.Position, text: bool = False):
    key = pos.key if isinstance(pos.key, int) else encode_ordinal(pos.key, text)
    return {"path": pos.path, "key": key}


def decode_position(obj, ambient: zline.IndexOrder, ptr: str = "") -> zline.Position:
    if isinstance(obj, dict):
        path = _field(obj, "path", ptr, "")
        if not isinstance(path, str) or set(path) - {"L", "R"}:
            raise CodecError("path must be a string over L and R", _ptr(ptr, "path"))
        raw, kptr = _field(obj, "key", ptr), _ptr(ptr, "key")
    else:
        path, raw, kptr = "", obj, ptr
    try:
        leaf = ambient.component(path)
    except zline.ZLineError as e:
        raise CodecError(str(e), ptr) from None
    key = raw if isinstance(leaf, zline.OmegaStar) else decode_ordinal(raw, kptr)
    try:
        return ambient.position(key, path)
    except zline.ZLineError as e:
        raise CodecError(str(e), kptr) from None


def _encode_support(support, text):
    return [[encode_position(p, text), v] for p, v in support]


def _decode_support(obj, ambient, ptr):
    out = {}
    for i, item in enumerate(_list(obj, ptr)):
        p = _ptr(ptr, i)
        if not isinstance(item, list) or len(item) != 2:
            raise CodecError("expected a [position, value] pair", p)
        pos = decode_position(item[0], ambient, _ptr(p, 0))
        val = _int(item[1], _ptr(p, 1))
        if pos in out:
            raise CodecError("position listed twice", _ptr(p, 0))
        out[pos] = val
    return out


def encode_zelement(a: zline.ZElement, text: bool = False):
    return {"support": _encode_support(a.support, text)}


def decode_zelement(obj, ambient: zline.IndexOrder, ptr: str = "") -> zline.ZElement:
    return zline.ZElement(ambient, _decode_support(_field(obj, "support", ptr), ambient, _ptr(ptr, "support")))


# -- tree nodes and pairs --------------------------------------------------------

def encode_tnode(s: fusion.TNode, text: bool = False):
    return {"height": encode_ordinal(s.height, text), "support": _encode_support(s.values.support, text)}


def decode_tnode(obj, ambient: zline.WellOrder, ptr: str = "") -> fusion.TNode:
    h = decode_ordinal(_field(obj, "height", ptr), _ptr(ptr, "height"))
    vals = _decode_support(_field(obj, "support", ptr), ambient, _ptr(ptr, "support"))
    try:
        return fusion.TNode(h, zline.ZElement(ambient, vals))
    except fusion.FusionError as e:
        raise CodecError(str(e), ptr) from None


def _node_key(s: fusion.TNode):
    return json.dumps(encode_tnode(s), sort_keys=True)


def encode_fpair(p: fusion.FPair, text: bool = False):
    return {side: [encode_tnode(s, text) for s in sorted(nodes, key=_node_key)]
            for side, nodes in (("F0", p.F0), ("F1", p.F1))}


def decode_fpair(obj, ambient, ptr: str = "") -> fusion.FPair:
    sides = []
    for side in ("F0", "F1"):
        items = _list(_field(obj, side, ptr, []), _ptr(ptr, side))
        sides.append([decode_tnode(x, ambient, _ptr(_ptr(ptr, side), i)) for i, x in enumerate(items)])
    return fusion.FPair(*sides)


# -- automorphisms ----------------------------------------------------------------

def encode_automorphism(phi: zline.SymAutomorphism, text: bool = False):
    moves = []
    for m in phi.moves:
        moves.append({
            "anchor": None if m.anchor is None else encode_zelement(m.anchor, text),
            "threshold": None if m.threshold is None else encode_position(m.threshold, text),
            "targets": [encode_position(t, text) for t in m.targets],
            "amount": m.amount,
            "scope": None if m.scope is None else encode_tnode(m.scope, text),
        })
    return {"moves": moves}


def decode_automorphism(obj, ambient, ptr: str = "") -> zline.SymAutomorphism:
    moves = []
    for i, m in enumerate(_list(_field(obj, "moves", ptr), _ptr(ptr, "moves"))):
        p = _ptr(_ptr(ptr, "moves"), i)
        anchor = _field(m, "anchor", p, None)
        threshold = _field(m, "threshold", p, None)
        scope = _field(m, "scope", p, None)
        if (anchor is None) != (threshold is None):
            raise CodecError("anchor and threshold come together", p)
        targets = [decode_position(t, ambient, _ptr(_ptr(p, "targets"), j))
                   for j, t in enumerate(_list(_field(m, "targets", p), _ptr(p, "targets")))]
        try:
            moves.append(zline.ConditionalShift(
                None if anchor is None else decode_zelement(anchor, ambient, _ptr(p, "anchor")),
                None if threshold is None else decode_position(threshold, ambient, _ptr(p, "threshold")),
                tuple(targets),
                _int(_field(m, "amount", p), _ptr(p, "amount")),
                None if scope is None else decode_tnode(scope, ambient, _ptr(p, "scope")),
            ))
        except zline.ZLineError as e:
            raise CodecError(str(e), p) from None
    return zline.SymAutomorphism(tuple(moves))


# -- group expressions ------------------------------------------------------------

def encode_group(g, text: bool = False):
    if isinstance(g, (grouprank.Trivial, grouprank.DiscreteNontrivial)):
        out = {"t": "trivial" if isinstance(g, grouprank.Trivial) else "discrete"}
        if not g.marked:
            out["marked"] = False
        return out
    if isinstance(g, grouprank.Product):
        return {"t": "product", "family": encode_family(g.family, text)}
    if isinstance(g, grouprank.LocalDirectProduct):
        return {"t": "ldp", "family": encode_family(g.family, text)}
    if isinstance(g, grouprank.ZWreath):
        return {"t": "zwr", "inner": encode_group(g.inner, text)}
    raise TypeError(f"not a group expression: {g!r}")


def encode_family(f, text: bool = False):
    if isinstance(f, grouprank.TowerFamily):
        return {"t": "tower", "bound": encode_ordinal(f.bound, text)}
    return {"t": "explicit", "members": [encode_group(m, text) for m in f.members]}


def decode_group(obj, ptr: str = ""):
    t = _field(obj, "t", ptr)
    if t in ("trivial", "discrete"):
        marked = _field(obj, "marked", ptr, True)
        _need(marked, bool, _ptr(ptr, "marked"), "a boolean")
        return grouprank.Trivial(marked) if t == "trivial" else grouprank.DiscreteNontrivial(marked)
    if t in ("product", "ldp"):
        fam = decode_family(_field(obj, "family", ptr), _ptr(ptr, "family"))
        return grouprank.Product(fam) if t == "product" else grouprank.LocalDirectProduct(fam)
    if t == "zwr":
        return grouprank.ZWreath(decode_group(_field(obj, "inner", ptr), _ptr(ptr, "inner")))
    raise CodecError(f"unknown group node {t!r}", _ptr(ptr, "t"))


def decode_family(obj, ptr: str = ""):
    t = _field(obj, "t", ptr)
    if t == "tower":
        return grouprank.TowerFamily(decode_ordinal(_field(obj, "bound", ptr), _ptr(ptr, "bound")))
    if t == "explicit":
        items = _list(_field(obj, "members", ptr), _ptr(ptr, "members"))
        return grouprank.Explicit(tuple(decode_group(m, _ptr(_ptr(ptr, "members"), i)) for i, m in enumerate(items)))
    raise CodecError(f"unknown family {t!r}", _ptr(ptr, "t"))


def encode_profile(p: grouprank.RankProfile, text: bool = False):
    return {"rank": encode_ordinal(p.rank, text),
            "marked_pair_rank": None if p.marked_pair_rank is None else encode_ordinal(p.marked_pair_rank, text)}


# -- games ---------------------------------------------------------------------------

def encode_game(g: gamerank.OpenGame):
    return {"alphabet": g.alphabet, "horizon": g.horizon, "wins": sorted(list(w) for w in g.wins)}


def decode_game(obj, ptr: str = "") -> gamerank.OpenGame:
    k = _int(_field(obj, "alphabet", ptr), _ptr(ptr, "alphabet"))
    D = _int(_field(obj, "horizon", ptr), _ptr(ptr, "horizon"))
    wins = []
    for i, w in enumerate(_list(_field(obj, "wins", ptr), _ptr(ptr, "wins"))):
        p = _ptr(_ptr(ptr, "wins"), i)
        wins.append(tuple(_int(m, _ptr(p, j)) for j, m in enumerate(_list(w, p))))
    try:
        return gamerank.OpenGame(k, D, frozenset(wins))
    except gamerank.GameError as e:
        raise CodecError(str(e), ptr) from None


def encode_grank(r):
    return "inf" if r == gamerank.INFINITY else int(r)


def decode_grank(obj, ptr: str = ""):
    if obj == "inf":
        return gamerank.INFINITY
    v = _int(obj, ptr)
    if v < 0:
        raise CodecError("game rank must be non-negative", ptr)
    return v


def encode_strategy(s: gamerank.Strategy):
    return [[list(pos), move] for pos, move in s.moves]


def decode_strategy(obj, ptr: str = "") -> gamerank.Strategy:
    moves = []
    for i, item in enumerate(_list(obj, ptr)):
        p = _ptr(ptr, i)
        if not isinstance(item, list) or len(item) != 2:
            raise CodecError("expected a [position, move] pair", p)
        pos = tuple(_int(m, _ptr(_ptr(p, 0), j)) for j, m in enumerate(_list(item[0], _ptr(p, 0))))
        moves.append((pos, _int(item[1], _ptr(p, 1))))
    return gamerank.Strategy(tuple(sorted(moves)))


# -- finite groups, structures, actions -------------------------------------------

def _perm(obj, degree, ptr):
    perm = [_int(v, _ptr(ptr, j)) for j, v in enumerate(_list(obj, ptr))]
    if sorted(perm) != list(range(degree)):
        raise CodecError(f"not a permutation of degree {degree}", ptr)
    return tuple(perm)


def decode_group_input(obj, ptr: str = "", bound: int = 64):
    """``{"degree", "generators", "V"}``: a permutation group and a subset.

    Entries of ``V`` are element indices (elements sorted as permutation
    tuples, identity first) or permutations.
    """
    n = _int(_field(obj, "degree", ptr), _ptr(ptr, "degree"))
    if n < 1:
        raise CodecError("degree must be positive", _ptr(ptr, "degree"))
    gens_p = _ptr(ptr, "generators")
    gens = [_perm(g, n, _ptr(gens_p, i)) for i, g in enumerate(_list(_field(obj, "generators", ptr), gens_p))]
    try:
        G = finitegroup.FiniteGroup.generated(gens, degree=n, bound=bound)
    except finitegroup.GroupError as e:
        raise CodecError(str(e), gens_p) from None
    subsets = {}
    for key in ("V", "U"):
        if key in obj:
            subsets[key] = decode_subset(obj[key], G, _ptr(ptr, key))
    return G, subsets


def decode_subset(obj, G: finitegroup.FiniteGroup, ptr: str) -> int:
    mask = 0
    for i, item in enumerate(_list(obj, ptr)):
        p = _ptr(ptr, i)
        if isinstance(item, list):
            perm = _perm(item, G.degree, p)
            if perm not in G.index:
                raise CodecError("permutation is not in the group", p)
            mask |= 1 << G.index[perm]
        else:
            idx = _int(item, p)
            if not 0 <= idx < G.order:
                raise CodecError(f"element index outside 0..{G.order - 1}", p)
            mask |= 1 << idx
    return mask


def encode_subset(mask: int, G: finitegroup.FiniteGroup):
    return G.members(mask)


def encode_structure(m: oracle.FiniteStructure):
    return {"n": m.n, "relations": [{"name": r.name, "arity": r.arity, "tuples": sorted(list(t) for t in r.tuples)}
                                    for r in m.relations]}


def decode_structure(obj, ptr: str = "") -> oracle.FiniteStructure:
    n = _int(_field(obj, "n", ptr), _ptr(ptr, "n"))
    rels = []
    rp = _ptr(ptr, "relations")
    for i, r in enumerate(_list(_field(obj, "relations", ptr, []), rp)):
        p = _ptr(rp, i)
        name = _need(_field(r, "name", p), str, _ptr(p, "name"), "a string")
        arity = _int(_field(r, "arity", p), _ptr(p, "arity"))
        tp = _ptr(p, "tuples")
        tuples = [tuple(_int(v, _ptr(_ptr(tp, j), q)) for q, v in enumerate(_list(t, _ptr(tp, j))))
                  for j, t in enumerate(_list(_field(r, "tuples", p), tp))]
        rels.append(oracle.Relation(name, arity, frozenset(tuples)))
    try:
        return oracle.FiniteStructure(n, tuple(rels))
    except oracle.OracleError as e:
        raise CodecError(str(e), ptr) from None


def encode_action(act: oracle.FiniteAction):
    return {"n": act.size, "group": [list(row) for row in act.table]}


def decode_action(obj, ptr: str = "") -> oracle.FiniteAction:
    """``{"n": size, "group": [perm, ...]}``; the listed permutations generate the group."""
    n = _int(_field(obj, "n", ptr), _ptr(ptr, "n"))
    gp = _ptr(ptr, "group")
    perms = [_perm(g, n, _ptr(gp, i)) for i, g in enumerate(_list(_field(obj, "group", ptr), gp))]
    try:
        return oracle.FiniteAction.from_permutations(perms or [tuple(range(n))])
    except (oracle.OracleError, finitegroup.GroupError) as e:
        raise CodecError(str(e), ptr) from None


# -- generic dumping ----------------------------------------------------------------

def dumps(value: Any) -> str:
    """Compact, key-sorted JSON; the only serializer used for output."""
    return json.dumps(value, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def loads(text: str, ptr: str = ""):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise CodecError(f"invalid JSON: {e.msg} at line {e.lineno} column {e.colno}", ptr) from None
