"""Command line front end.

    mmcg parse --lexicon PATH --goal FORMULA [options] SENTENCE
    mmcg batch --lexicon PATH --goal FORMULA FILE

Exit codes: 0 parse found, 1 no parse, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .chart import run
from .formula import FormulaError, parse_formula, print_formula
from .lexicon import LexiconError, UnknownWordError, lexical_items, load_lexicon
from .proof import render_trace
from .rules import scan_triggers
from .semantics import print_term


class _InputError(Exception):
    pass


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mmcg",
        description="Chart parser for multimodal categorial grammars.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse one sentence")
    _common_options(p)
    p.add_argument("--trace", action="store_true", help="print the full chart")
    p.add_argument("--json", action="store_true", help="emit the result as JSON")
    p.add_argument(
        "--semantics", action="store_true", help="print goal item semantics"
    )
    p.add_argument(
        "--keep-all-readings",
        action="store_true",
        help="keep equal-key items whose semantics differ",
    )
    p.add_argument("sentence", nargs="+", help="words of the sentence")

    b = sub.add_parser("batch", help="parse one sentence per line of a file")
    _common_options(b)
    b.add_argument("file", help="sentence file, one per line")
    return parser


def _common_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lexicon", required=True, help="TSV lexicon file")
    p.add_argument("--goal", default="s", help="goal formula (default: s)")
    p.add_argument(
        "--pop-at-vp",
        action="store_true",
        help="allow s\\1 s stack entries to pop at np\\s items",
    )
    p.add_argument("--item-budget", type=int, default=100_000)
    p.add_argument("--step-budget", type=int, default=10_000_000)


def _load_inputs(args):
    try:
        text = Path(args.lexicon).read_text(encoding="utf-8")
    except OSError as exc:
        raise _InputError(f"cannot read lexicon: {exc}") from exc
    try:
        lexicon = load_lexicon(text)
    except LexiconError as exc:
        raise _InputError(str(exc)) from exc
    try:
        goal = parse_formula(args.goal)
    except FormulaError as exc:
        raise _InputError(f"bad goal formula: {exc}") from exc
    return lexicon, goal


def _report_error(message: str) -> int:
    print(f"mmcg: error: {message}", file=sys.stderr)
    return 2


def cmd_parse(args) -> int:
    try:
        lexicon, goal = _load_inputs(args)
        words = [w for chunk in args.sentence for w in chunk.split()]
        items = lexical_items(lexicon, words)
    except (_InputError, UnknownWordError) as exc:
        return _report_error(str(exc))
    ruleset = scan_triggers(lexicon.formulas(), goal)
    ruleset.pop_at_vp = args.pop_at_vp
    result = run(
        items,
        ruleset,
        goal,
        item_budget=args.item_budget,
        step_budget=args.step_budget,
        keep_all_readings=args.keep_all_readings,
    )
    if args.trace:
        print("active rules:", ruleset.describe())
        print(render_trace(result.chart))
    if args.json:
        print(result.to_json())
    elif result.ok:
        for it in result.goal_items():
            line = (
                f"goal item {it.id}: {print_formula(it.formula)} "
                f"{it.left}-{it.right} weight={it.weight:g}"
            )
            if args.semantics:
                line += f" sem={print_term(it.semantics)}"
            print(line)
    else:
        print("no parse")
    if result.partial:
        print("budget exceeded: partial chart", file=sys.stderr)
    return 0 if result.ok else 1


def cmd_batch(args) -> int:
    try:
        lexicon, goal = _load_inputs(args)
        lines = Path(args.file).read_text(encoding="utf-8").splitlines()
    except _InputError as exc:
        return _report_error(str(exc))
    except OSError as exc:
        return _report_error(f"cannot read sentence file: {exc}")
    ruleset = scan_triggers(lexicon.formulas(), goal)
    ruleset.pop_at_vp = args.pop_at_vp
    parsed = 0
    total = 0
    for line in lines:
        sentence = line.strip()
        if not sentence:
            continue
        total += 1
        try:
            items = lexical_items(lexicon, sentence.split())
            ok = run(
                items,
                ruleset,
                goal,
                item_budget=args.item_budget,
                step_budget=args.step_budget,
            ).ok
        except UnknownWordError:
            ok = False
        if ok:
            parsed += 1
        print(f"{'OK' if ok else 'FAIL'}\t{sentence}")
    pct = 100.0 * parsed / total if total else 0.0
    print(f"parsed {parsed}/{total} = {pct:g}%")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_arg_parser().parse_args(argv)
    if args.command == "parse":
        return cmd_parse(args)
    return cmd_batch(args)


def main_entry() -> None:  # console-script entry point
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
