"""Command-line front end.

Structured commands read one JSON document given inline, as a path, or via
``--file``.  Output is deterministic: scalars print plainly, everything else
as compact key-sorted JSON.  ``--json`` switches ordinals to their nested
list encoding and prints scalars as JSON too.  Exit status is 0 on success,
1 on a domain error and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import difflib
import io
import os
import random
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from . import codec, finitegroup, fusion, gamerank, grouprank, oracle, zline
from .codec import CodecError
from .ordinal import add, analyze, compare, mul, nat_add, omega_pow, parse

# -- input helpers ------------------------------------------------------------------


def _load_doc(args):
    source = args.file if args.file is not None else args.doc
    if source is None:
        raise CodecError("no input document given")
    text = source.strip()
    if text[:1] in ("{", "["):
        return codec.loads(text)
    path = Path(source)
    if not path.is_file():
        raise CodecError(f"no such file: {source}")
    return codec.loads(path.read_text())


def _ord(text: str):
    text = text.strip()
    if text[:1] == "[":
        return codec.decode_ordinal(codec.loads(text))
    return parse(text)


def _ambient(doc):
    return codec.decode_ambient(codec._field(doc, "ambient", ""), "/ambient")


def _el(doc, key, amb):
    return codec.decode_zelement(codec._field(doc, key, ""), amb, f"/{key}")


def _els(doc, key, amb, default=...):
    items = codec._list(codec._field(doc, key, "", default), f"/{key}")
    return [codec.decode_zelement(x, amb, f"/{key}/{i}") for i, x in enumerate(items)]


def _mu_ambient(doc):
    mu = codec.decode_ordinal(codec._field(doc, "mu", ""), "/mu")
    try:
        return fusion.tree_ambient(mu)
    except fusion.FusionError as e:
        raise CodecError(str(e), "/mu") from None


def _node(doc, key, amb, ptr=None):
    return codec.decode_tnode(codec._field(doc, key, ""), amb, ptr or f"/{key}")


def _nodes(doc, key, amb, default=...):
    items = codec._list(codec._field(doc, key, "", default), f"/{key}")
    return [codec.decode_tnode(x, amb, f"/{key}/{i}") for i, x in enumerate(items)]


def _rng(args):
    return random.Random(args.seed)


def _random_spec(doc):
    return doc.get("random") if isinstance(doc, dict) and isinstance(doc.get("random"), dict) else None


# -- ord ------------------------------------------------------------------------------

def ord_cmp(args, text):
    return compare(_ord(args.a), _ord(args.b)).name


def _binary(op):
    def run(args, text):
        return codec.encode_ordinal(op(_ord(args.a), _ord(args.b)), text)
    return run


def ord_pow(args, text):
    return codec.encode_ordinal(omega_pow(_ord(args.a)), text)


def ord_analyze(args, text):
    a = analyze(_ord(args.a))
    return {"kind": a.kind, "cnf_length": a.cnf_length, "indecomposable": a.indecomposable}


# -- zorder ---------------------------------------------------------------------------

def z_cmp(args, text):
    doc = _load_doc(args)
    amb = _ambient(doc)
    return zline.compare_backlex(_el(doc, "a", amb), _el(doc, "b", amb)).name


def z_erel(args, text):
    doc = _load_doc(args)
    amb = _ambient(doc)
    pos, z = zline.e_rel(_el(doc, "a", amb), _el(doc, "b", amb))
    return {"position": codec.encode_position(pos, text), "z": z}


def z_qf(args, text):
    doc = _load_doc(args)
    amb = _ambient(doc)
    left, right = _els(doc, "left", amb), _els(doc, "right", amb)
    if len(left) != len(right):
        raise CodecError("tuples must have equal length", "/right")
    return {"equal": zline.qf_equal(zline.qf_type(left), zline.qf_type(right))}


def z_auto(args, text):
    doc = _load_doc(args)
    amb = _ambient(doc)
    ctx, a, b = _els(doc, "context", amb, []), _el(doc, "a", amb), _el(doc, "b", amb)
    phi = zline.synth_automorphism(ctx, a, b)
    return {"automorphism": codec.encode_automorphism(phi, text),
            "maps_a_to_b": phi(a) == b, "fixes_context": all(phi(c) == c for c in ctx)}


def z_hrel(args, text):
    doc = _load_doc(args)
    amb = _ambient(doc)
    beta = codec.decode_ordinal(codec._field(doc, "beta", ""), "/beta")
    return zline.h_rel(_el(doc, "a", amb), _el(doc, "b", amb), beta)


def z_hrank(args, text):
    return codec.encode_ordinal(zline.hausdorff_rank(_ambient(_load_doc(args))), text)


def z_density(args, text):
    doc = _load_doc(args)
    amb = _ambient(doc)
    return codec.encode_zelement(zline.density_witness(_el(doc, "a", amb), _el(doc, "b", amb)), text)


def z_drkbound(args, text):
    doc = _load_doc(args)
    amb = _ambient(doc)
    return codec.encode_ordinal(zline.drk_upper(_el(doc, "a", amb), _el(doc, "b", amb)), text)


# -- rank -----------------------------------------------------------------------------

def rank_eval(args, text):
    return codec.encode_profile(grouprank.eval_rank(codec.decode_group(_load_doc(args))), text)


def rank_tower(args, text):
    g = grouprank.tower(_ord(args.a))
    if args.eval:
        return codec.encode_ordinal(grouprank.eval_rank(g).rank, text)
    return codec.encode_group(g, text)


def rank_classify(args, text):
    c = grouprank.classify(codec.decode_group(_load_doc(args)))
    return {"tsi": c.tsi, "cli": c.cli}


def rank_validate(args, text):
    return grouprank.validate(codec.decode_group(_load_doc(args)))


# -- game -----------------------------------------------------------------------------

def _game_doc(doc):
    if isinstance(doc, dict) and "game" in doc:
        return codec.decode_game(doc["game"], "/game")
    return codec.decode_game(doc)


def game_solve(args, text):
    g = _game_doc(_load_doc(args))
    r = gamerank.grk(g)
    return {"winner": "I" if r != gamerank.INFINITY else "II", "grk": codec.encode_grank(r)}


def game_rank(args, text):
    doc = _load_doc(args)
    g = _game_doc(doc)
    pos = doc.get("position", []) if isinstance(doc, dict) and "game" in doc else []
    pos = [codec._int(m, f"/position/{i}") for i, m in enumerate(codec._list(pos, "/position"))]
    return codec.encode_grank(gamerank.grk(g, pos))


def game_strategy(args, text):
    return codec.encode_strategy(gamerank.extract_strategy(_game_doc(_load_doc(args))))


def _compare_games(build):
    def run(args, text):
        doc = _load_doc(args)
        A = codec.decode_game(codec._field(doc, "A", ""), "/A")
        B = codec.decode_game(codec._field(doc, "B", ""), "/B")
        g = build(A, B)
        return {"winner": gamerank.winner(g).value, "alphabet": g.alphabet, "horizon": g.horizon}
    return run


def game_cligame(args, text):
    doc = _load_doc(args)
    bound = args.bound if args.bound is not None else 64
    G, subsets = codec.decode_group_input(doc, bound=bound)
    if "V" not in subsets:
        raise CodecError("missing field 'V'")
    horizon = codec._int(doc.get("horizon", 2), "/horizon")
    cg = gamerank.cli_game(G, subsets["V"], horizon=horizon, order_bound=bound)
    r = gamerank.grk(cg.game)
    return {"grk": codec.encode_grank(r), "winner": "I" if r != gamerank.INFINITY else "II",
            "basis_size": len(cg.basis), "order": G.order}


def game_cbrank(args, text):
    doc = _load_doc(args)
    parents = [codec._int(p, f"/parents/{i}")
               for i, p in enumerate(codec._list(codec._field(doc, "parents", ""), "/parents"))]
    return codec.encode_ordinal(gamerank.cb_rank(parents), text)


# -- fusion ---------------------------------------------------------------------------

def fusion_meet(args, text):
    doc = _load_doc(args)
    amb = _mu_ambient(doc)
    return codec.encode_tnode(fusion.meet(_node(doc, "s", amb), _node(doc, "t", amb)), text)


def fusion_infcheck(args, text):
    doc = _load_doc(args)
    amb = _mu_ambient(doc)
    return fusion.in_F(codec.decode_fpair(codec._field(doc, "pair", ""), amb, "/pair"))


def fusion_extend(args, text):
    doc = _load_doc(args)
    amb = _mu_ambient(doc)
    p = codec.decode_fpair(codec._field(doc, "pair", ""), amb, "/pair")
    i = codec._int(codec._field(doc, "i", ""), "/i")
    beta = codec.decode_ordinal(codec._field(doc, "beta", ""), "/beta")
    E, w = fusion.extend_requirement(p, _node(doc, "s", amb), _node(doc, "r", amb), i, beta, _els(doc, "C", amb, []))
    return {"pair": codec.encode_fpair(E, text),
            "witness": {"n": w.n, "gamma": codec.encode_ordinal(w.gamma, text),
                        "delta_combined": codec.encode_ordinal(w.delta_combined, text)}}


def _value_map(obj, amb, ptr):
    """A constant, or a list of [element, value] pairs."""
    if not isinstance(obj, list):
        return lambda a: obj
    table = {}
    for i, item in enumerate(obj):
        if not isinstance(item, list) or len(item) != 2:
            raise CodecError("expected an [element, value] pair", f"{ptr}/{i}")
        table[codec.decode_zelement(item[0], amb, f"{ptr}/{i}/0")] = item[1]

    def look(a):
        if a not in table:
            raise CodecError("value map has no entry for this element", ptr)
        return table[a]
    return look


def fusion_fuse(args, text):
    doc = _load_doc(args)
    amb = _mu_ambient(doc)
    p = codec.decode_fpair(codec._field(doc, "pair", ""), amb, "/pair")
    default = codec._int(codec._field(doc, "default", "", 0), "/default")
    if default not in (0, 1):
        raise CodecError("default side must be 0 or 1", "/default")
    x0 = _value_map(codec._field(doc, "x0", ""), amb, "/x0")
    x1 = _value_map(codec._field(doc, "x1", ""), amb, "/x1")
    return fusion.fuse_value(p, default, x0, x1, _el(doc, "a", amb))


def fusion_glue(args, text):
    doc = _load_doc(args)
    amb = _mu_ambient(doc)
    system = []
    for i, item in enumerate(codec._list(codec._field(doc, "system", ""), "/system")):
        ptr = f"/system/{i}"
        r = codec.decode_tnode(codec._field(item, "node", ptr), amb, f"{ptr}/node")
        phi = codec.decode_automorphism(codec._field(item, "automorphism", ptr), amb, f"{ptr}/automorphism")
        system.append((r, phi))
    return codec.encode_automorphism(fusion.glue_system(system), text)


def fusion_star(args, text):
    doc = _load_doc(args)
    amb = _mu_ambient(doc)
    cands = [codec.decode_ordinal(c, f"/candidates/{i}")
             for i, c in enumerate(codec._list(codec._field(doc, "candidates", "", []), "/candidates"))]
    g = fusion.star_check(
        _nodes(doc, "J", amb), codec.decode_ordinal(codec._field(doc, "alpha", ""), "/alpha"),
        _els(doc, "A", amb, []), _els(doc, "B", amb, []),
        codec.decode_ordinal(codec._field(doc, "beta", ""), "/beta"),
        search_bound=args.bound if args.bound is not None else 32, candidates=cands)
    if g is fusion.NOT_FOUND:
        return {"found": False, "witness": None}
    return {"found": True, "witness": codec.encode_automorphism(g, text)}


# -- oracle ---------------------------------------------------------------------------

def _random_tuple(rng, n, max_len):
    return [rng.randrange(n) for _ in range(rng.randint(0, max_len))]


def oracle_aut(args, text):
    doc = _load_doc(args)
    spec = _random_spec(doc)
    m = oracle.random_structure(_rng(args), spec.get("n", 4)) if spec is not None else codec.decode_structure(doc)
    act = oracle.aut_group(m)
    out = {"order": act.group.order, "elements": [list(e) for e in act.group.elements]}
    if spec is not None:
        out["structure"] = codec.encode_structure(m)
    return out


def _tuple(doc, key):
    return [codec._int(v, f"/{key}/{i}") for i, v in enumerate(codec._list(codec._field(doc, key, "", []), f"/{key}"))]


def oracle_drk(args, text):
    doc = _load_doc(args)
    spec = _random_spec(doc)
    if spec is not None:
        rng = _rng(args)
        m = oracle.random_structure(rng, spec.get("n", 4))
        a, b = _random_tuple(rng, m.n, 2), _random_tuple(rng, m.n, 2)
        return {"structure": codec.encode_structure(m), "a": a, "b": b, "drk": oracle.drk_bruteforce(m, a, b)}
    m = codec.decode_structure(codec._field(doc, "structure", ""), "/structure")
    return oracle.drk_bruteforce(m, _tuple(doc, "a"), _tuple(doc, "b"))


def _oracle_rank(fn):
    def run(args, text):
        doc = _load_doc(args)
        spec = _random_spec(doc)
        if spec is not None:
            rng = _rng(args)
            order = spec.get("max_order", 8)
            name, G = rng.choice([(n, G) for n, G in finitegroup.small_groups() if G.order <= order])
            V, U = oracle.random_identity_set(rng, G), oracle.random_identity_set(rng, G)
            return {"group": name, "V": G.members(V), "U": G.members(U), "rank": fn(G, V, U)}
        G, subsets = codec.decode_group_input(doc, bound=args.bound if args.bound is not None else 64)
        if "V" not in subsets:
            raise CodecError("missing field 'V'")
        return fn(G, subsets["V"], subsets.get("U", G.full))
    return run


def _oracle_relation(fn):
    def run(args, text):
        doc = _load_doc(args)
        spec = _random_spec(doc)
        if spec is not None:
            rng = _rng(args)
            act = oracle.random_action(rng)
            while len(set(act.table)) != act.group.order:
                # printed instances must decode back to the same action
                act = oracle.random_action(rng)
            V = oracle.random_identity_set(rng, act.group)
            x, y = rng.randrange(act.size), rng.randrange(act.size)
            alpha = spec.get("alpha", 1)
            return {"action": codec.encode_action(act), "V": [list(act.table[g]) for g in act.group.members(V)],
                    "x": x, "y": y,
                    "alpha": alpha, "holds": fn(act, V, alpha, x, y)}
        act = codec.decode_action(codec._field(doc, "action", ""), "/action")
        V = codec.decode_subset(codec._field(doc, "V", ""), act.group, "/V")
        return fn(act, V, codec._int(codec._field(doc, "alpha", ""), "/alpha"),
                  codec._int(codec._field(doc, "x", ""), "/x"), codec._int(codec._field(doc, "y", ""), "/y"))
    return run


# -- corpus ---------------------------------------------------------------------------

def corpus_dir(override: Optional[str] = None) -> Path:
    if override:
        return Path(override)
    env = os.environ.get("RANKFORGE_CORPUS")
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "corpus"


def run_captured(argv: List[str]) -> Tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def corpus_verify(args, text):
    root = corpus_dir(args.dir)
    index = root / "cases.json"
    if not index.is_file():
        raise CodecError(f"missing corpus files: {index}")
    cases = codec.loads(index.read_text())
    failures = 0
    for case in cases:
        argv = [a.replace("{corpus}", str(root)) for a in case["argv"]]
        code, out, _ = run_captured(argv)
        if code == case.get("exit", 0) and out == case["stdout"]:
            print(f"ok   {case['name']}")
            continue
        failures += 1
        print(f"FAIL {case['name']}")
        if code != case.get("exit", 0):
            print(f"  exit {code}, expected {case.get('exit', 0)}")
        for line in difflib.unified_diff(case["stdout"].splitlines(), out.splitlines(),
                                         "expected", "actual", lineterm=""):
            print(f"  {line}")
    print(f"{len(cases) - failures}/{len(cases)} cases match")
    if failures:
        raise _Drift()
    return None


class _Drift(Exception):
    pass


# -- dispatch -------------------------------------------------------------------------

ORD_BINARY = "binary"
ORD_UNARY = "unary"
DOC = "doc"

COMMANDS: Dict[Tuple[str, str], Tuple[Callable, str, str]] = {
    ("ord", "cmp"): (ord_cmp, ORD_BINARY, "compare two ordinals"),
    ("ord", "add"): (_binary(add), ORD_BINARY, "ordinal sum"),
    ("ord", "mul"): (_binary(mul), ORD_BINARY, "ordinal product"),
    ("ord", "natadd"): (_binary(nat_add), ORD_BINARY, "natural (Hessenberg) sum"),
    ("ord", "pow"): (ord_pow, ORD_UNARY, "w raised to an ordinal"),
    ("ord", "analyze"): (ord_analyze, ORD_UNARY, "kind, normal-form length, indecomposability"),
    ("zorder", "cmp"): (z_cmp, DOC, "backwards-lexicographic comparison"),
    ("zorder", "erel"): (z_erel, DOC, "the difference relation holding between two elements"),
    ("zorder", "qf"): (z_qf, DOC, "compare quantifier-free types of two tuples"),
    ("zorder", "auto"): (z_auto, DOC, "automorphism fixing a context and sending a to b"),
    ("zorder", "hrel"): (z_hrel, DOC, "strong Hausdorff derivative test"),
    ("zorder", "hrank"): (z_hrank, DOC, "strong Hausdorff rank of a well-ordered ambient"),
    ("zorder", "density"): (z_density, DOC, "an element strictly between a and b"),
    ("zorder", "drkbound"): (z_drkbound, DOC, "upper bound on the Deissler rank"),
    ("rank", "eval"): (rank_eval, DOC, "rank and marked-pair rank of a group expression"),
    ("rank", "tower"): (rank_tower, ORD_UNARY, "group expression of a given rank"),
    ("rank", "classify"): (rank_classify, DOC, "TSI and CLI flags"),
    ("rank", "validate"): (rank_validate, DOC, "well-formedness violations"),
    ("game", "solve"): (game_solve, DOC, "winner and game rank"),
    ("game", "rank"): (game_rank, DOC, "game rank at a position"),
    ("game", "strategy"): (game_strategy, DOC, "winning strategy for Player I"),
    ("game", "le"): (_compare_games(gamerank.le_game), DOC, "game won by I iff rank(A) <= rank(B)"),
    ("game", "lt"): (_compare_games(gamerank.lt_game), DOC, "game won by I iff rank(A) < rank(B)"),
    ("game", "cligame"): (game_cligame, DOC, "CLI game of a finite permutation group"),
    ("game", "cbrank"): (game_cbrank, DOC, "Cantor-Bendixson rank of a finite tree"),
    ("fusion", "meet"): (fusion_meet, DOC, "meet of two tree nodes"),
    ("fusion", "infcheck"): (fusion_infcheck, DOC, "antichain-pair conditions"),
    ("fusion", "extend"): (fusion_extend, DOC, "extend a pair to meet a requirement"),
    ("fusion", "fuse"): (fusion_fuse, DOC, "value of the fusion map"),
    ("fusion", "glue"): (fusion_glue, DOC, "glue local automorphisms on an antichain"),
    ("fusion", "star"): (fusion_star, DOC, "bounded search for a covering automorphism"),
    ("oracle", "aut"): (oracle_aut, DOC, "automorphism group of a finite structure"),
    ("oracle", "drk"): (oracle_drk, DOC, "Deissler rank by brute force"),
    ("oracle", "rk"): (_oracle_rank(oracle.rk_bruteforce), DOC, "balanced rank by brute force"),
    ("oracle", "rkstar"): (_oracle_rank(oracle.rkstar_bruteforce), DOC, "weak rank by brute force"),
    ("oracle", "squiggle"): (_oracle_relation(oracle.squiggle_bruteforce), DOC, "back-and-forth relation"),
    ("oracle", "sim"): (_oracle_relation(oracle.sim_bruteforce), DOC, "the sim relation"),
    ("corpus", "verify"): (corpus_verify, "corpus", "re-run the shipped corpus and diff outputs"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    def flags(suppress):
        # flags work before or after the subcommand; only the top level sets defaults
        p = argparse.ArgumentParser(add_help=False)
        d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        p.add_argument("--json", action="store_true", default=d(False), help="machine encoding for all output")
        p.add_argument("--seed", type=int, default=d(0), help="seed for random instances")
        p.add_argument("--bound", type=int, default=d(None), help="search or order bound")
        p.add_argument("--file", default=d(None), help="read the input document from a file")
        return p

    common = flags(True)
    parser = _Parser(prog="rankforge", description="Ordinal ranks, games and their brute-force checks.",
                     parents=[flags(False)])
    groups = parser.add_subparsers(dest="group", metavar="group", parser_class=_Parser)
    groups.required = True
    subs = {}
    for (group, name), (fn, kind, help_) in COMMANDS.items():
        if group not in subs:
            sp = groups.add_parser(group, help=f"{group} commands")
            subs[group] = sp.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
            subs[group].required = True
        p = subs[group].add_parser(name, help=help_, parents=[common])
        if kind == ORD_BINARY:
            p.add_argument("a")
            p.add_argument("b")
        elif kind == ORD_UNARY:
            p.add_argument("a")
        elif kind == DOC:
            p.add_argument("doc", nargs="?", help="inline JSON or a path")
        elif kind == "corpus":
            p.add_argument("--dir", default=None, help="corpus directory")
        if (group, name) == ("rank", "tower"):
            p.add_argument("--eval", action="store_true", help="print the rank instead of the expression")
        p.set_defaults(handler=fn)
    return parser


def render(value, as_json: bool) -> Optional[str]:
    if value is None:
        return None
    if not as_json:
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, (str, int)):
            return str(value)
    return codec.dumps(value)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    try:
        value = args.handler(args, not args.json)
    except _Drift:
        return 1
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    out = render(value, args.json)
    if out is not None:
        print(out)
    return 0


def entry():  # console script
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    entry()
