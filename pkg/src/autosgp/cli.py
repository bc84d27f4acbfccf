"""Command-line front end.

Elements are quoted, space-separated state tokens; the leftmost factor acts
last, so ``"b a"`` applied to ``w`` is ``b(a(w))``.  Words are quoted,
space-separated letter tokens; ``-`` or ``""`` is the empty word.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import constructions as C
from .action import act, section, section_automaton, wreath
from .automaton import AutomatonError, Transducer, classify, parse, parse_partial, serialize, to_dot
from .deciders import (
    agreement_words,
    boundary_fixed_census,
    difference_witness,
    find_period,
    fixed_words,
    injective,
    is_idempotent,
    is_identity_element,
    is_identity_function,
    separate,
)
from .explorer import check_presentation, enumerate_ball
from .words import CommutationRelation


class Result:
    """Plain lines plus the structured object printed under ``--json``."""

    def __init__(self, lines, data):
        self.lines = [lines] if isinstance(lines, str) else list(lines)
        self.data = data


def _bool(b: bool) -> str:
    return "true" if b else "false"


def _load(path: str) -> Transducer:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def _word(t: Transducer, text: str):
    return t.alphabet.word(text)


def _restrict(text: Optional[str]):
    return None if text is None else text.split()


def _emit_automaton(t, args) -> Result:
    text = serialize(t)
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        return Result([], {"written": args.output, "states": list(t.states)})
    return Result(text.rstrip("\n").split("\n"), {"automaton": text})


# -- handlers -----------------------------------------------------------------


def cmd_validate(args):
    t = _load(args.file)
    return Result("ok", {"valid": True, "states": len(t.states), "letters": len(t.alphabet)})


def cmd_classify(args):
    names = classify(_load(args.file)).names()
    return Result(names, {"classes": names})


def cmd_act(args):
    t = _load(args.file)
    w = act(t.element(args.element), _word(t, args.word))
    return Result(str(w), {"word": list(w.tokens)})


def cmd_section(args):
    t = _load(args.file)
    s = section(t.element(args.element), _word(t, args.word))
    return Result(str(s), {"element": str(s).split()})


def cmd_wreath(args):
    t = _load(args.file)
    f = wreath(t.element(args.element))
    lines = [f"{x} | {w} | {s}" for x, w, s in zip(t.alphabet, f.tau, f.sections)]
    data = {
        "letters": list(t.alphabet),
        "images": [list(w.tokens) for w in f.tau],
        "sections": [str(s).split() for s in f.sections],
    }
    return Result(lines, data)


def cmd_secaut(args):
    t = _load(args.file)
    return _emit_automaton(section_automaton(t.element(args.element)).automaton, args)


def cmd_equal(args):
    t = _load(args.file)
    w = difference_witness(t.element(args.left), t.element(args.right))
    data = {"equal": w is None}
    if w is not None:
        data["witness"] = list(w.tokens)
    return Result(_bool(w is None), data)


def _predicate(fn):
    def run(args):
        t = _load(args.file)
        b = fn(t.element(args.element))
        return Result(_bool(b), {"result": b})

    return run


cmd_identityfn = _predicate(is_identity_function)
cmd_identityel = _predicate(is_identity_element)
cmd_idempotent = _predicate(is_idempotent)


def cmd_injective(args):
    b = injective(_load(args.file), args.state)
    return Result(_bool(b), {"injective": b})


def cmd_period(args):
    t = _load(args.file)
    p = find_period(t.element(args.element), args.bound)
    if p is None:
        return Result("none", {"period": None})
    return Result(f"{p[0]} {p[1]}", {"period": list(p)})


def cmd_separate(args):
    t = _load(args.file)
    sep = separate(t.element(args.left), t.element(args.right))
    lines = [f"level {sep.level}", f"depth {sep.depth}"]
    diffs = []
    for u in sep.differences():
        fa, fb = sep.table_a[u], sep.table_b[u]
        lines.append(f"{u} : {fa} / {fb}")
        diffs.append([str(u), str(fa), str(fb)])
    return Result(lines, {"level": sep.level, "depth": sep.depth, "differences": diffs})


def _word_list(ws) -> Result:
    return Result([str(w) if len(w) else "-" for w in ws], {"words": [list(w.tokens) for w in ws]})


def cmd_fixed(args):
    t = _load(args.file)
    return _word_list(fixed_words(t.element(args.element), args.max_len, _restrict(args.restrict)))


def cmd_agree(args):
    t = _load(args.file)
    ws = agreement_words(t.element(args.left), t.element(args.right), args.max_len, _restrict(args.restrict))
    return _word_list(ws)


def cmd_census(args):
    c = boundary_fixed_census(_load(args.file), args.state)
    lines = [c.kind] + [f"{p} ({q})" if len(p) else f"({q})" for p, q in c.points]
    pts = [[list(p.tokens), list(q.tokens)] for p, q in c.points]
    return Result(lines, {"kind": c.kind, "points": pts})


def cmd_inverse(args):
    return _emit_automaton(C.inverse_automaton(_load(args.file)), args)


def cmd_complete(args):
    with open(args.file, encoding="utf-8") as fh:
        p = parse_partial(fh.read())
    return _emit_automaton(C.complete_partial(p), args)


def cmd_extend(args):
    return _emit_automaton(C.normal_ideal_extension(_load(args.first), _load(args.second)), args)


def cmd_product(args):
    return _emit_automaton(C.direct_product(_load(args.first), _load(args.second)), args)


def _pair(text: str) -> tuple[int, int]:
    try:
        i, j = (int(v) for v in text.replace(" ", "").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected i,j but got {text!r}") from None
    return i, j


def cmd_fpcm(args):
    for i, j in args.commute:
        if not (1 <= i <= args.n and 1 <= j <= args.n):
            raise AutomatonError(f"pair {i},{j} is out of range for n={args.n}")
    rel = CommutationRelation((i - 1, j - 1) for i, j in args.commute)
    return _emit_automaton(C.fpcm_automaton(args.n, rel), args)


def cmd_pcp(args):
    x = args.x.split()
    return _emit_automaton(C.pcp_automaton(x, args.v, args.w), args)


def cmd_decoder(args):
    x = args.x.split()
    make = C.prefix_code_encoder if args.encoder else C.prefix_code_decoder
    return _emit_automaton(make(x, args.code), args)


def cmd_gallery(args):
    name = args.name.replace("-", "_")
    params = args.params
    if name == "smn":
        if len(params) != 2:
            raise AutomatonError("smn takes two parameters m n")
        try:
            params = [int(p) for p in params]
        except ValueError:
            raise AutomatonError("smn parameters must be integers") from None
    elif name == "identity":
        params = [params] if params else []
    elif params:
        raise AutomatonError(f"{name} takes no parameters")
    return _emit_automaton(C.gallery(name, *params), args)


def _gens(args):
    return None if args.generators is None else args.generators.split()


def cmd_ball(args):
    r = enumerate_ball(_load(args.file), args.max_len, _gens(args))
    lines = [str(s) for s in r.normal_forms]
    data = {
        "normal_forms": [str(s).split() for s in r.normal_forms],
        "count_per_length": list(r.count_per_length),
        "relations": [[str(a).split(), str(b).split()] for a, b in r.relations_found],
    }
    if args.relations:
        lines += [f"{a} = {b}" for a, b in r.relations_found]
    return Result(lines, data)


def cmd_growth(args):
    counts = list(enumerate_ball(_load(args.file), args.max_len, _gens(args)).count_per_length)
    return Result(" ".join(map(str, counts)), {"growth": counts})


def _relation(text: str) -> tuple[str, str]:
    if text.count("=") != 1:
        raise argparse.ArgumentTypeError(f"relation {text!r} must look like 'a a = a'")
    lhs, rhs = text.split("=")
    return lhs.strip(), rhs.strip()


def cmd_present(args):
    t = _load(args.file)
    rep = check_presentation(t, args.rel, args.max_len, _gens(args))
    complete = {True: "true", False: "false", None: "inconclusive"}[rep.complete]
    lines = [f"holds {_bool(rep.holds)}", f"complete {complete}"]
    lines += [f"missing {a} = {b}" for a, b in rep.missing]
    lines += [f"inconclusive {a} = {b}" for a, b in rep.inconclusive]
    data = {
        "relations_hold": rep.relations_hold,
        "holds": rep.holds,
        "complete": rep.complete,
        "length_preserving": rep.length_preserving,
        "missing": [[str(a).split(), str(b).split()] for a, b in rep.missing],
        "inconclusive": [[str(a).split(), str(b).split()] for a, b in rep.inconclusive],
    }
    return Result(lines, data)


def cmd_dot(args):
    text = to_dot(_load(args.file))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        return Result([], {"written": args.output})
    return Result(text.rstrip("\n").split("\n"), {"dot": text})


GENS = "generating states (default: all)"


# -- parser -------------------------------------------------------------------


def _add_constructions(sub, common):
    p = sub.add_parser("inverse", parents=[common], help="inverse of an invertible automaton")
    p.add_argument("file")
    p.set_defaults(func=cmd_inverse)
    p = sub.add_parser("complete", parents=[common], help="complete a partial invertible automaton")
    p.add_argument("file")
    p.set_defaults(func=cmd_complete)
    for name, func, what in (("extend", cmd_extend, "normal ideal extension"), ("product", cmd_product, "direct product")):
        p = sub.add_parser(name, parents=[common], help=what + " of two automata over disjoint alphabets")
        p.add_argument("first")
        p.add_argument("second")
        p.set_defaults(func=func)
    p = sub.add_parser("fpcm", parents=[common], help="automaton for a free partially commutative monoid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--commute", type=_pair, action="append", default=[], metavar="I,J", help="1-based commuting pair")
    p.set_defaults(func=cmd_fpcm)
    p = sub.add_parser("pcp", parents=[common], help="correspondence automaton with states a and b")
    p.add_argument("--x", required=True, help="base letters, e.g. 's t'")
    p.add_argument("--v", action="append", required=True, help="top word (repeat)")
    p.add_argument("--w", action="append", required=True, help="bottom word (repeat)")
    p.set_defaults(func=cmd_pcp)
    p = sub.add_parser("decoder", parents=[common], help="prefix-code decoder with root state c'")
    p.add_argument("--x", required=True, help="base letters, e.g. '0 1'")
    p.add_argument("--code", action="append", required=True, help="code word (repeat)")
    p.add_argument("--encoder", action="store_true", help="emit the matching encoder state c instead")
    p.set_defaults(func=cmd_decoder)
    p = sub.add_parser("gallery", parents=[common], help="named automaton: " + ", ".join(C.GALLERY))
    p.add_argument("name")
    p.add_argument("params", nargs="*", help="smn: m n; identity: letters")
    p.set_defaults(func=cmd_gallery)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON object")
    common.add_argument("-o", "--output", help="write the result to a file")

    parser = argparse.ArgumentParser(
        prog="autosgp",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def simple(name, func, help, *positional, **flags):
        p = sub.add_parser(name, parents=[common], help=help)
        for arg in positional:
            p.add_argument(arg)
        for flag, kw in flags.items():
            p.add_argument("--" + flag.replace("_", "-"), **kw)
        p.set_defaults(func=func)
        return p

    simple("validate", cmd_validate, "check an .aut file", "file")
    simple("classify", cmd_classify, "list the classes an automaton belongs to", "file")
    simple("act", cmd_act, "image of a word", "file", "element", "word")
    simple("section", cmd_section, "section at a word", "file", "element", "word")
    simple("wreath", cmd_wreath, "letter images and sections", "file", "element")
    simple("secaut", cmd_secaut, "automaton of sections of an element", "file", "element")
    simple("equal", cmd_equal, "word problem", "file", "left", "right")
    simple("identityfn", cmd_identityfn, "is the element the identity map", "file", "element")
    simple("identityel", cmd_identityel, "is the element an identity of the semigroup", "file", "element")
    simple("idempotent", cmd_idempotent, "is s s = s", "file", "element")
    simple("injective", cmd_injective, "is a state injective (expanding input)", "file", "state")
    simple("period", cmd_period, "least m < n <= bound with s^m = s^n", "file", "element",
           bound=dict(type=int, default=6))
    simple("separate", cmd_separate, "finite quotient separating two elements", "file", "left", "right")
    simple("fixed", cmd_fixed, "fixed words up to a length", "file", "element",
           max_len=dict(type=int, default=6), restrict=dict(help="allowed letters"))
    simple("agree", cmd_agree, "words where two elements agree", "file", "left", "right",
           max_len=dict(type=int, default=6), restrict=dict(help="allowed letters"))
    simple("census", cmd_census, "boundary fixed points of a state (synchronous input)", "file", "state")
    simple("ball", cmd_ball, "normal forms of generator words", "file",
           max_len=dict(type=int, default=3, help="radius"), generators=dict(help=GENS),
           relations=dict(action="store_true", help="also list relations"))
    simple("growth", cmd_growth, "new elements per length", "file",
           max_len=dict(type=int, default=3, help="radius"), generators=dict(help=GENS))
    simple("present", cmd_present, "check relations and completeness", "file",
           rel=dict(type=_relation, action="append", default=[], help="relation 'lhs = rhs' (repeat)"),
           max_len=dict(type=int, default=3, help="radius"), generators=dict(help=GENS))
    simple("dot", cmd_dot, "Graphviz export", "file")
    _add_constructions(sub, common)

    group = sub.add_parser("construct", help="build an automaton (same kinds as the top-level commands)")
    _add_constructions(group.add_subparsers(dest="kind", required=True, metavar="KIND"), common)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        res = args.func(args)
    except (AutomatonError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps(res.data, sort_keys=True, ensure_ascii=False))
    else:
        for line in res.lines:
            print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
