"""Chart items and the agenda-driven deduction engine.

A chart item records a derived constituent: the tree of words it was
built from, its formula, its span, the set of pending extraction
hypotheses, a stack of head-wrapped modifiers, a weight (summed
log-probabilities), a semantic term, and provenance.

The engine is a plain agenda loop: lexical items seed a FIFO agenda;
when an item moves from the agenda to the chart it receives the next
id and all its consequences against chart residents are computed and
inserted, subject to subsumption.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Mapping

from .formula import Formula, Mode, print_formula
from .semantics import FreshVars, LambdaTerm, alpha_equal, print_term

ADDED = "added"
REPLACED = "replaced"
REJECTED = "rejected"


# --------------------------------------------------------------------------
# extraction bookkeeping

@dataclass(frozen=True, slots=True)
class ExtractionTag:
    """A pending hypothesis: licensor right edge, introduction site,
    hypothesized formula, and extraction mode."""

    lic_pos: int
    hyp_site: int
    formula: Formula
    mode: Mode

    @property
    def key(self) -> tuple:
        return (self.lic_pos, self.formula, self.mode)

    @property
    def leftward(self) -> bool:
        # Hypotheses awaiting a licensor to their right record the
        # introduction site as the licensor position; rightward tags
        # always have lic_pos strictly left of hyp_site.
        return self.lic_pos == self.hyp_site


def _tag_order(t: ExtractionTag) -> tuple:
    return (t.lic_pos, t.hyp_site, print_formula(t.formula), int(t.mode))


@dataclass(frozen=True, slots=True)
class ExtractionSet:
    """Set of pending hypotheses, at most one per (lic_pos, formula, mode)."""

    tags: tuple[ExtractionTag, ...] = ()

    @staticmethod
    def of(*tags: ExtractionTag) -> "ExtractionSet":
        return ExtractionSet(tuple(sorted(tags, key=_tag_order)))

    def keys(self) -> frozenset:
        return frozenset(t.key for t in self.tags)

    def get(self, lic_pos: int, formula: Formula, mode: Mode) -> ExtractionTag | None:
        for t in self.tags:
            if t.lic_pos == lic_pos and t.formula == formula and t.mode == mode:
                return t
        return None

    def with_tag(self, tag: ExtractionTag) -> "ExtractionSet | None":
        if tag.key in self.keys():
            return None
        return ExtractionSet.of(*self.tags, tag)

    def without(self, tag: ExtractionTag) -> "ExtractionSet":
        return ExtractionSet(tuple(t for t in self.tags if t != tag))

    def __iter__(self) -> Iterator[ExtractionTag]:
        return iter(self.tags)

    def __len__(self) -> int:
        return len(self.tags)


EMPTY_EXT = ExtractionSet()


def disjoint_union(e1: ExtractionSet, e2: ExtractionSet) -> ExtractionSet | None:
    """Union of the two sets, or None when they share a hypothesis key.

    A blocked union is a normal non-result: it means the rule trying to
    combine the items would use the same hypothesis twice.
    """
    if e1.keys() & e2.keys():
        return None
    return ExtractionSet.of(*e1.tags, *e2.tags)


# --------------------------------------------------------------------------
# wrap stacks

@dataclass(frozen=True, slots=True)
class WrapEntry:
    """A head-wrapped modifier: its original span, X\\1 X formula, term."""

    left: int
    right: int
    formula: Formula
    semantics: LambdaTerm


WrapStack = tuple  # of WrapEntry, index 0 is the top


# --------------------------------------------------------------------------
# antecedent terms

@dataclass(frozen=True, slots=True)
class Leaf:
    word: str


@dataclass(frozen=True, slots=True)
class Node:
    mode: Mode
    left: "Leaf | Node"
    right: "Leaf | Node"


Antecedent = Leaf | Node


# --------------------------------------------------------------------------
# chart items

class ChartItem:
    """One derived constituent.  Mutable: weight subsumption may replace
    the losing derivation in place, keeping the item id stable."""

    __slots__ = (
        "antecedent", "formula", "left", "right", "ext", "stack",
        "weight", "semantics", "rule", "premises", "id",
    )

    def __init__(
        self,
        antecedent: Antecedent,
        formula: Formula,
        left: int,
        right: int,
        ext: ExtractionSet = EMPTY_EXT,
        stack: WrapStack = (),
        weight: float = 0.0,
        semantics: LambdaTerm | None = None,
        rule: str = "lex",
        premises: tuple[int, ...] = (),
    ) -> None:
        self.antecedent = antecedent
        self.formula = formula
        self.left = left
        self.right = right
        self.ext = ext
        self.stack = stack
        self.weight = weight
        self.semantics = semantics
        self.rule = rule
        self.premises = premises
        self.id: int | None = None

    def __repr__(self) -> str:
        ident = self.id if self.id is not None else "?"
        return (
            f"<{ident}: {print_formula(self.formula)} {self.left}-{self.right}"
            f" ext={len(self.ext)} stack={len(self.stack)} by {self.rule}>"
        )


def subsumption_key(it: ChartItem) -> tuple:
    """The identity under which derivations compete.

    Antecedent, weight, semantics, and provenance are don't-cares; the
    hypothesis introduction site is bookkeeping for mode-0 discharge and
    does not distinguish items either.
    """
    return (
        it.formula,
        it.left,
        it.right,
        frozenset(t.key for t in it.ext),
        tuple((e.left, e.right, e.formula) for e in it.stack),
    )


def check_coherence(it: ChartItem) -> bool:
    """Every rightward hypothesis must have its licensor at or left of
    the item's left edge; otherwise the tag could never be discharged."""
    return all(t.leftward or t.lic_pos <= it.left for t in it.ext)


# --------------------------------------------------------------------------
# the chart

class Chart:
    """Append-only list of items plus adjacency and subsumption indexes."""

    def __init__(self) -> None:
        self.items: list[ChartItem] = []
        self._by_left: dict[int, list[ChartItem]] = {}
        self._by_right: dict[int, list[ChartItem]] = {}
        self._by_key: dict[tuple, list[ChartItem]] = {}
        self.rejections: list[tuple[str, tuple[int, ...]]] = []
        self.ruleset = None  # set by run(); used by trace rendering

    def __len__(self) -> int:
        return len(self.items)

    def get(self, item_id: int) -> ChartItem:
        if not 1 <= item_id <= len(self.items):
            raise KeyError(f"no chart item {item_id}")
        return self.items[item_id - 1]

    def by_left(self, pos: int) -> list[ChartItem]:
        return self._by_left.get(pos, [])

    def by_right(self, pos: int) -> list[ChartItem]:
        return self._by_right.get(pos, [])

    def enter(self, item: ChartItem) -> None:
        item.id = len(self.items) + 1
        self.items.append(item)
        self._by_left.setdefault(item.left, []).append(item)
        self._by_right.setdefault(item.right, []).append(item)


def insert(
    chart: Chart,
    agenda: deque,
    item: ChartItem,
    keep_all_readings: bool = False,
) -> str:
    """Offer a candidate item; returns "added", "replaced", or "rejected".

    A candidate whose key is already known is normally rejected unless
    it carries strictly more weight, in which case it takes over the
    incumbent's slot.  With keep_all_readings, candidates with the same
    key but a semantically distinct reading are kept as separate items.
    """
    key = subsumption_key(item)
    bucket = chart._by_key.get(key)
    if bucket is None:
        chart._by_key[key] = [item]
        agenda.append(item)
        return ADDED
    if keep_all_readings:
        rival = None
        for resident in bucket:
            if alpha_equal(resident.semantics, item.semantics):
                rival = resident
                break
        if rival is None:
            bucket.append(item)
            agenda.append(item)
            return ADDED
    else:
        rival = bucket[0]
    if item.weight > rival.weight:
        rival.antecedent = item.antecedent
        rival.weight = item.weight
        rival.semantics = item.semantics
        rival.rule = item.rule
        rival.premises = item.premises
        return REPLACED
    chart.rejections.append((item.rule, item.premises))
    return REJECTED


# --------------------------------------------------------------------------
# the engine

@dataclass
class ParseResult:
    goals: list[int]
    chart: Chart
    partial: bool
    span: tuple[int, int]
    goal: Formula

    @property
    def ok(self) -> bool:
        return bool(self.goals)

    def goal_items(self) -> list[ChartItem]:
        return [self.chart.get(i) for i in self.goals]

    def to_dict(self) -> dict:
        items = []
        for it in self.chart.items:
            items.append({
                "id": it.id,
                "formula": print_formula(it.formula),
                "left": it.left,
                "right": it.right,
                "ext": [
                    {
                        "licPos": t.lic_pos,
                        "hypSite": t.hyp_site,
                        "formula": print_formula(t.formula),
                        "mode": int(t.mode.digit),
                    }
                    for t in it.ext
                ],
                "stack": [
                    {
                        "left": e.left,
                        "right": e.right,
                        "formula": print_formula(e.formula),
                    }
                    for e in it.stack
                ],
                "weight": it.weight,
                "sem": print_term(it.semantics),
                "rule": it.rule,
                "premises": list(it.premises),
            })
        return {"items": items, "goals": list(self.goals), "partial": self.partial}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)


def run(
    lex_items: list[ChartItem],
    ruleset,
    goal: Formula,
    *,
    item_budget: int = 100_000,
    step_budget: int = 10_000_000,
    keep_all_readings: bool = False,
    rule_weights: Mapping[str, float] | None = None,
    beta_budget: int = 10_000,
) -> ParseResult:
    """Close the chart under the active rules and collect goal items.

    A goal item has the goal formula over the full input span with no
    pending hypotheses and an empty wrap stack.  Budgets are soft: when
    exceeded, the result is flagged partial and carries the chart built
    so far.
    """
    from . import rules  # deferred; rules imports this module's types

    if not lex_items:
        raise ValueError("no lexical items to parse")
    for it in lex_items:
        if it.right != it.left + 1:
            raise ValueError(f"lexical item must span one position: {it!r}")
    start = min(it.left for it in lex_items)
    end = max(it.right for it in lex_items)
    if {it.left for it in lex_items} != set(range(start, end)):
        raise ValueError("lexical items must cover a contiguous span")

    ctx = rules.ParseContext(
        ruleset=ruleset,
        fresh=FreshVars(),
        goal=goal,
        m0_demands=rules.collect_m0_demands(
            [it.formula for it in lex_items], goal
        ),
        lnr_demands=rules.collect_lnr_demands(
            [it.formula for it in lex_items]
        ),
        rule_weights=rule_weights or {},
        beta_budget=beta_budget,
    )
    chart = Chart()
    chart.ruleset = ruleset
    agenda: deque[ChartItem] = deque()
    for it in lex_items:
        insert(chart, agenda, it, keep_all_readings)

    partial = False
    while agenda:
        if len(chart.items) >= item_budget or ctx.steps > step_budget:
            partial = True
            break
        item = agenda.popleft()
        chart.enter(item)
        for cand in rules.consequences(item, chart, ctx):
            insert(chart, agenda, cand, keep_all_readings)

    goals = [
        it.id
        for it in chart.items
        if it.formula == goal
        and it.left == start
        and it.right == end
        and not len(it.ext)
        and not it.stack
    ]
    return ParseResult(goals, chart, partial, (start, end), goal)
