"""Lexicon loading and lexical lookup.

The lexicon file is UTF-8, tab-separated, one assignment per line::

    word <TAB> formula [<TAB> weight [<TAB> lambda]]

``#`` begins a comment line and blank lines are ignored.  The weight is
a log-probability and defaults to 0.0; the semantics defaults to the
word itself as a constant.  A word may have several lines; alternatives
accumulate in file order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chart import ChartItem, EMPTY_EXT, Leaf
from .formula import Formula, FormulaError, parse_formula
from .semantics import (
    BudgetExceededError,
    Const,
    LambdaTerm,
    TermError,
    beta_normalize,
    parse_term,
)


class LexiconError(ValueError):
    """Malformed lexicon line; message carries the 1-based line number."""


class UnknownWordError(KeyError):
    def __init__(self, words: list[str]) -> None:
        self.words = words
        super().__init__("unknown words: " + ", ".join(words))

    def __str__(self) -> str:
        return "unknown words: " + ", ".join(self.words)


@dataclass(frozen=True)
class LexEntry:
    word: str
    formula: Formula
    weight: float = 0.0
    semantics: LambdaTerm | None = None


@dataclass
class Lexicon:
    entries: dict[str, list[LexEntry]] = field(default_factory=dict)

    def add(self, entry: LexEntry) -> None:
        self.entries.setdefault(entry.word, []).append(entry)

    def lookup(self, word: str) -> list[LexEntry]:
        return self.entries.get(word, [])

    def formulas(self) -> list[Formula]:
        return [e.formula for group in self.entries.values() for e in group]

    def __len__(self) -> int:
        return sum(len(group) for group in self.entries.values())

    def __contains__(self, word: str) -> bool:
        return word in self.entries


def load_lexicon(source: str) -> Lexicon:
    """Parse lexicon text; errors report the offending line number."""
    lex = Lexicon()
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in raw.split("\t")]
        fields = [f for f in fields if f != ""]
        if len(fields) < 2 or len(fields) > 4:
            raise LexiconError(
                f"line {lineno}: expected 'word<TAB>formula[<TAB>weight[<TAB>lambda]]'"
            )
        word = fields[0]
        try:
            formula = parse_formula(fields[1])
        except FormulaError as exc:
            raise LexiconError(f"line {lineno}: bad formula: {exc}") from exc
        weight = 0.0
        if len(fields) >= 3:
            try:
                weight = float(fields[2])
            except ValueError as exc:
                raise LexiconError(
                    f"line {lineno}: non-numeric weight {fields[2]!r}"
                ) from exc
        if len(fields) == 4:
            try:
                semantics = beta_normalize(parse_term(fields[3]))
            except TermError as exc:
                raise LexiconError(f"line {lineno}: bad lambda term: {exc}") from exc
            except BudgetExceededError as exc:
                raise LexiconError(
                    f"line {lineno}: lambda term does not normalize"
                ) from exc
        else:
            semantics = Const(word)
        lex.add(LexEntry(word, formula, weight, semantics))
    return lex


def lexical_items(
    lex: Lexicon, sentence: list[str], offset: int = 0
) -> list[ChartItem]:
    """Initial agenda items: the i-th word's entries span
    (offset+i-1, offset+i) with empty hypothesis set and empty stack."""
    missing = [w for w in dict.fromkeys(sentence) if w not in lex]
    if missing:
        raise UnknownWordError(missing)
    items: list[ChartItem] = []
    for i, word in enumerate(sentence):
        for entry in lex.lookup(word):
            items.append(
                ChartItem(
                    Leaf(word),
                    entry.formula,
                    offset + i,
                    offset + i + 1,
                    EMPTY_EXT,
                    (),
                    weight=entry.weight,
                    semantics=entry.semantics,
                    rule="lex",
                    premises=(),
                )
            )
    return items
