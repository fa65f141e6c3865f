"""Derivation extraction and trace rendering.

Every chart item records the rule and premise ids it was built from, so
a proof is recovered by walking back-pointers from a goal item down to
the lexical axioms.  The trace renders the whole chart, one row per
item in id order, in the same layout as the engine's worked examples.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .chart import Antecedent, Chart, ChartItem, ExtractionSet, Leaf, Node
from .formula import print_formula


@dataclass(frozen=True)
class Derivation:
    item_id: int
    rule: str
    children: tuple["Derivation", ...]

    def ids(self) -> set[int]:
        out = {self.item_id}
        for child in self.children:
            out |= child.ids()
        return out

    def to_dict(self) -> dict:
        return {
            "id": self.item_id,
            "rule": self.rule,
            "children": [c.to_dict() for c in self.children],
        }


def extract_derivation(chart: Chart, goal_id: int) -> Derivation:
    """Proof tree for an item, following provenance to the lexical leaves."""

    def build(item_id: int) -> Derivation:
        item = chart.get(item_id)
        return Derivation(
            item_id, item.rule, tuple(build(p) for p in item.premises)
        )

    return build(goal_id)


def derivation_to_json(d: Derivation) -> str:
    return json.dumps(d.to_dict(), ensure_ascii=False, indent=2)


# --------------------------------------------------------------------------
# rendering

def yield_of(ant: Antecedent) -> list[str]:
    """Left-to-right leaf words of an antecedent term."""
    if isinstance(ant, Leaf):
        return [ant.word]
    return yield_of(ant.left) + yield_of(ant.right)


def render_antecedent(ant: Antecedent) -> str:
    if isinstance(ant, Leaf):
        return ant.word

    def part(sub: Antecedent) -> str:
        text = render_antecedent(sub)
        return f"({text})" if isinstance(sub, Node) else text

    return f"{part(ant.left)}∘{ant.mode.digit}{part(ant.right)}"


def render_ext(ext: ExtractionSet, triples: bool = False) -> str:
    if not len(ext):
        return "{}"
    parts = []
    for t in ext:
        if triples:
            parts.append(f"{t.lic_pos}-{t.hyp_site}-{print_formula(t.formula)}")
        else:
            parts.append(f"{t.lic_pos}-{print_formula(t.formula)}")
    return "{" + ", ".join(parts) + "}"


def render_stack(stack: tuple) -> str:
    if not stack:
        return "[]"
    parts = [f"{e.left},{e.right}-{print_formula(e.formula)}" for e in stack]
    return "[" + ", ".join(parts) + "]"


def render_item(it: ChartItem, triples: bool = False) -> str:
    return (
        f"⟨{render_antecedent(it.antecedent)}, {print_formula(it.formula)}, "
        f"{it.left}, {it.right}, {render_ext(it.ext, triples)}, "
        f"{render_stack(it.stack)}⟩"
    )


def justification(it: ChartItem) -> str:
    if it.rule == "lex":
        return "Lexicon"
    premises = ",".join(str(p) for p in sorted(it.premises))
    return f"From {premises} by {it.rule}"


def render_trace(chart: Chart) -> str:
    """One row per chart item in id order, plus a header line."""
    triples = bool(chart.ruleset is not None and chart.ruleset.extract0)
    rows = [" id  chart item  justification"]
    for it in chart.items:
        rows.append(f"{it.id:>3}  {render_item(it, triples)}  {justification(it)}")
    return "\n".join(rows)
