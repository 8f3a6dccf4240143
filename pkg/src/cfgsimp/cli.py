"""Command-line interface: ``cfgsimp simplify|analyze|enumerate|equiv|random``.

Exit codes: 0 success or a true verdict, 1 a checked property is false (or the
grammars are inequivalent), 2 usage or input errors, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys

from .analysis import predicates
from .derivation import SearchCaps, enumerate_language
from .equivalence import AlphabetMismatch, Status, bounded_equiv
from .gram_io import (
    GrammarFileError,
    analysis_document,
    dump_document,
    pipeline_document,
    read_grammar,
    serialize_grammar,
)
from .randgen import GenConfig, RetryExhausted, random_grammar, random_nonempty_grammar
from .transform import SAFE_ORDER, EmptyLanguageError, Pass, is_safe_order, run_passes

OK, FALSE, USAGE, INCONCLUSIVE = 0, 1, 2, 3

EPS = "<eps>"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _word(word) -> str:
    return " ".join(s.name for s in word) or EPS


def _caps(args) -> SearchCaps:
    return SearchCaps(args.max_form_len, args.max_visited, args.max_depth)


def _load(path):
    try:
        if path == "-":
            from .gram_io import parse_grammar

            return parse_grammar(sys.stdin.read())
        return read_grammar(path)
    except (OSError, GrammarFileError) as exc:
        raise _InputError(f"{path}: {exc}") from None


class _InputError(Exception):
    pass


def _emit(text: str, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _parse_passes(value: str) -> list[Pass]:
    out = []
    for item in value.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            out.append(Pass(item))
        except ValueError:
            raise argparse.ArgumentTypeError(
                f"unknown pass {item!r} (choose from {', '.join(p.value for p in Pass)})"
            ) from None
    if not out:
        raise argparse.ArgumentTypeError("no passes given")
    return out


def cmd_simplify(args) -> int:
    g = _load(args.input)
    passes = args.passes or list(SAFE_ORDER)
    if not is_safe_order(passes):
        safe = ",".join(p.value for p in SAFE_ORDER)
        print(f"warning: pass order deviates from {safe}; the result may keep "
              "inaccessible or useless symbols", file=sys.stderr)
    try:
        out, reports = run_passes(g, passes)
    except EmptyLanguageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FALSE
    _emit(serialize_grammar(out), args.out)
    if args.report:
        _emit(dump_document(pipeline_document(reports, out)), args.report)
    return OK


def cmd_analyze(args) -> int:
    g = _load(args.input)
    doc = analysis_document(g)
    if args.json:
        sys.stdout.write(dump_document(doc))
        return OK
    for key in ("nullable", "useful", "accessible"):
        print(f"{key}: {' '.join(doc[key]['members'])}".rstrip())
    pairs = " ".join(f"({a},{b})" for a, b in doc["unit_pairs"]["pairs"])
    print(f"unit_pairs: {pairs}".rstrip())
    for name, value in doc["predicates"].items():
        print(f"{name}: {'true' if value else 'false'}")
    return OK


def cmd_enumerate(args) -> int:
    g = _load(args.input)
    result = enumerate_language(g, args.max_len, _caps(args))
    for w in result.words:
        print(_word(w))
    s = result.stats
    print(f"complete: {'true' if result.complete else 'false'} "
          f"(explored {s.explored}, pruned {s.pruned}, cap hits {dict(s.cap_hits) or 'none'})",
          file=sys.stderr)
    return OK if result.complete else INCONCLUSIVE


def cmd_equiv(args) -> int:
    g1, g2 = _load(args.input1), _load(args.input2)
    try:
        verdict = bounded_equiv(g1, g2, args.max_len, _caps(args))
    except AlphabetMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    print(verdict.status.value)
    if verdict.status is Status.INEQUIVALENT:
        print(f"counterexample: {_word(verdict.counterexample)}")
        print(f"produced by: {verdict.produced_by}")
        for step in verdict.trace.steps:
            print(f"  {step}")
        return FALSE
    if verdict.status is Status.INCONCLUSIVE:
        print(f"complete: {json.dumps(list(verdict.complete))}", file=sys.stderr)
        return INCONCLUSIVE
    return OK


def cmd_random(args) -> int:
    try:
        cfg = GenConfig(
            seed=args.seed,
            max_nonterminals=args.max_nonterminals,
            max_terminals=args.max_terminals,
            max_rules=args.max_rules,
            max_rhs_len=args.max_rhs_len,
            empty_rule_bias=args.empty_rule_bias,
            unit_rule_bias=args.unit_rule_bias,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    try:
        g = random_nonempty_grammar(cfg) if args.require_nonempty else random_grammar(cfg)
    except RetryExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FALSE
    _emit(serialize_grammar(g), args.out)
    return OK


def _add_caps(p):
    p.add_argument("--max-len", type=int, default=6, help="longest word considered (default 6)")
    p.add_argument("--max-form-len", type=int, help="longest sentential form (default 2n+4)")
    p.add_argument("--max-visited", type=int, help="visited-form budget (default 200000)")
    p.add_argument("--max-depth", type=int, help="derivation depth bound (default 10(n+1))")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cfgsimp", description="Context-free grammar simplification toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("simplify", help="run simplification passes")
    p.add_argument("input")
    p.add_argument("--passes", type=_parse_passes,
                   help="comma-separated subset of empty,unit,useless,inaccessible (default: all, in that order)")
    p.add_argument("--out", help="output grammar file (default stdout)")
    p.add_argument("--report", help="write a JSON pass report here")
    p.set_defaults(func=cmd_simplify)

    p = sub.add_parser("analyze", help="print symbol analyses and predicates")
    p.add_argument("input")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("enumerate", help="list produced words up to a length")
    p.add_argument("input")
    _add_caps(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("equiv", help="bounded language equivalence of two grammars")
    p.add_argument("input1")
    p.add_argument("input2")
    _add_caps(p)
    p.set_defaults(func=cmd_equiv)

    d = GenConfig()
    p = sub.add_parser("random", help="generate a random grammar")
    p.add_argument("--seed", type=int, default=d.seed)
    p.add_argument("--max-nonterminals", type=int, default=d.max_nonterminals)
    p.add_argument("--max-terminals", type=int, default=d.max_terminals)
    p.add_argument("--max-rules", type=int, default=d.max_rules)
    p.add_argument("--max-rhs-len", type=int, default=d.max_rhs_len)
    p.add_argument("--empty-rule-bias", type=float, default=d.empty_rule_bias)
    p.add_argument("--unit-rule-bias", type=float, default=d.unit_rule_bias)
    p.add_argument("--require-nonempty", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_random)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
