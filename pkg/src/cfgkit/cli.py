"""``cfg`` command line tool.

Exit status: 0 when the queried property holds (or the command succeeded),
1 when it does not, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import closure, decide, pumping, transform
from .grammar import (
    EPS_TOKEN, GrammarError, Symbol, format_word, load_grammar, parse_word, serialize_grammar,
    validate,
)
from .trees import render_tree

OK, NO, ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _out(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _cnf_text(cnf: transform.CnfGrammar) -> str:
    head = "# generates eps\n" if cnf.generates_epsilon else ""
    return head + serialize_grammar(cnf.grammar)


def _word_arg(text: str, g) -> tuple[Symbol, ...]:
    return parse_word(text, g.terminals)


def cmd_check(args) -> int:
    problems = validate(load_grammar(args.grammar))
    for p in problems:
        _out(p)
    if not problems:
        _out("ok")
    return NO if problems else OK


def cmd_reduce(args) -> int:
    g, report = transform.remove_useless(load_grammar(args.grammar))
    removed = sorted(s.name for s in report.removed_nongenerating | report.removed_unreachable)
    if removed:
        print("removed: " + " ".join(removed), file=sys.stderr)
    _out(serialize_grammar(g))
    return OK


def cmd_cnf(args) -> int:
    _out(_cnf_text(transform.to_cnf(load_grammar(args.grammar))))
    return OK


def cmd_member(args) -> int:
    g = load_grammar(args.grammar)
    w = _word_arg(args.word, g)
    if decide.is_empty(g):
        result = False
    else:
        result = decide.member(transform.to_cnf(g), w)
    _out("true" if result else "false")
    return OK if result else NO


def cmd_empty(args) -> int:
    result = decide.is_empty(load_grammar(args.grammar))
    _out("true" if result else "false")
    return OK if result else NO


def cmd_finite(args) -> int:
    result = decide.is_finite(load_grammar(args.grammar))
    _out("true" if result else "false")
    return OK if result else NO


def cmd_enumerate(args) -> int:
    g = load_grammar(args.grammar)
    words = decide.enumerate_words(g, args.max_len, cap=max(args.max_len, decide.DEFAULT_ENUM_CAP))
    for w in sorted(words, key=lambda w: (len(w), [s.name for s in w])):
        _out(format_word(w) if w else EPS_TOKEN)
    return OK


def _int_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")
    if any(v < 0 for v in values):
        raise argparse.ArgumentTypeError("exponents must be non-negative")
    return values


def cmd_pump(args) -> int:
    g = load_grammar(args.grammar)
    cnf = transform.to_cnf(g)
    d = pumping.decompose(cnf, _word_arg(args.word, g))
    _out(str(d))
    for i in args.i:
        w = pumping.pump(d, i)
        _out(f"i={i} {format_word(w) if w else EPS_TOKEN}")
    return OK


def cmd_refute(args) -> int:
    try:
        pred = pumping.PREDICATES[args.language]
    except KeyError:
        raise UsageError(
            f"unknown language {args.language!r}; choose from {', '.join(sorted(pumping.PREDICATES))}"
        ) from None
    result = pumping.refute_cfl(pred, args.n, max_i=args.max_i)
    _out(result.render())
    return OK if result.refuted else NO


def cmd_union(args) -> int:
    _out(serialize_grammar(closure.union(load_grammar(args.g1), load_grammar(args.g2))))
    return OK


def cmd_concat(args) -> int:
    _out(serialize_grammar(closure.concat(load_grammar(args.g1), load_grammar(args.g2))))
    return OK


def cmd_star(args) -> int:
    _out(serialize_grammar(closure.star(load_grammar(args.grammar))))
    return OK


def _split_maps(pairs: Sequence[str]) -> list[tuple[str, str]]:
    out = []
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise UsageError(f"--map expects terminal=value, got {pair!r}")
        out.append((key, value))
    return out


def cmd_subst(args) -> int:
    g = load_grammar(args.grammar)
    f = {Symbol.term(k): load_grammar(v) for k, v in _split_maps(args.map)}
    _out(serialize_grammar(closure.substitute(g, f)))
    return OK


def cmd_hom(args) -> int:
    g = load_grammar(args.grammar)
    h = {k: parse_word(v) for k, v in _split_maps(args.map)}
    _out(serialize_grammar(closure.homomorphism(g, h)))
    return OK


def cmd_tree(args) -> int:
    g = load_grammar(args.grammar)
    w = _word_arg(args.word, g)
    if decide.is_empty(g):
        _out("false")
        return NO
    t = decide.parse_tree(transform.to_cnf(g), w)
    if t is None:
        _out("false")
        return NO
    _out(render_tree(t))
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cfg", description="Context-free grammar toolkit.")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    def verb(name, fn, help, *grammars):
        p = sub.add_parser(name, help=help, description=help)
        for g in grammars:
            p.add_argument(g, metavar=g.upper() if g != "grammar" else "GRAMMAR")
        p.set_defaults(func=fn)
        return p

    verb("check", cmd_check, "report well-formedness violations", "grammar")
    verb("reduce", cmd_reduce, "remove useless symbols", "grammar")
    verb("cnf", cmd_cnf, "convert to Chomsky normal form", "grammar")
    verb("member", cmd_member, "test word membership", "grammar").add_argument("word")
    verb("empty", cmd_empty, "is the language empty?", "grammar")
    verb("finite", cmd_finite, "is the language finite?", "grammar")
    p = verb("enumerate", cmd_enumerate, "list all words up to a length", "grammar")
    p.add_argument("--max-len", type=int, required=True)
    p = verb("pump", cmd_pump, "pumping decomposition of a word", "grammar")
    p.add_argument("word")
    p.add_argument("--i", type=_int_list, default=[0, 1, 2], help="exponents, e.g. 0,1,2")
    p = sub.add_parser("refute", help="pumping refutation of a built-in language",
                       description="pumping refutation of a built-in language (anbncn, a2n, anbn)")
    p.add_argument("--language", required=True, help=", ".join(sorted(pumping.PREDICATES)))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-i", type=int, default=2)
    p.set_defaults(func=cmd_refute)
    verb("union", cmd_union, "union of two grammars", "g1", "g2")
    verb("concat", cmd_concat, "concatenation of two grammars", "g1", "g2")
    verb("star", cmd_star, "Kleene star", "grammar")
    p = verb("subst", cmd_subst, "substitute terminals by grammar languages", "grammar")
    p.add_argument("--map", action="append", required=True, metavar="T=FILE")
    p = verb("hom", cmd_hom, "apply a homomorphism", "grammar")
    p.add_argument("--map", action="append", required=True, metavar="T=WORD")
    p = verb("tree", cmd_tree, "derivation tree of a word (CNF grammar)", "grammar")
    p.add_argument("word")
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else ERROR
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"cfg {args.verb}: {exc}", file=sys.stderr)
        return ERROR
    except (GrammarError, ValueError, OSError) as exc:
        print(f"cfg {args.verb}: error: {exc}", file=sys.stderr)
        return ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
