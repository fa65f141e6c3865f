from collections import deque

import pytest

from mmcg.chart import (
    ADDED,
    Chart,
    ChartItem,
    EMPTY_EXT,
    ExtractionSet,
    ExtractionTag,
    Leaf,
    REJECTED,
    REPLACED,
    check_coherence,
    disjoint_union,
    insert,
    run,
    subsumption_key,
)
from mmcg.formula import Atom, Mode, parse_formula
from mmcg.rules import RuleSet
from mmcg.semantics import Const

NP = Atom("np")


def item(formula_text, left, right, ext=EMPTY_EXT, stack=(), weight=0.0,
         sem="w", word="w", rule="lex", premises=()):
    return ChartItem(
        Leaf(word), parse_formula(formula_text), left, right, ext, stack,
        weight=weight, semantics=Const(sem), rule=rule, premises=premises,
    )


def tag(lic, site, formula_text="np", mode=Mode.M1):
    return ExtractionTag(lic, site, parse_formula(formula_text), mode)


# ---------------------------------------------------------------------------
# subsumption keys

def test_key_ignores_hypothesis_site():
    # the same pending hypothesis reached via different introduction
    # sites collapses to one item
    a = item("np\\s", 2, 4, ExtractionSet.of(tag(1, 3)))
    b = item("np\\s", 2, 4, ExtractionSet.of(tag(1, 4)))
    assert subsumption_key(a) == subsumption_key(b)


def test_key_distinguishes_ext():
    a = item("np\\s", 4, 5, ExtractionSet.of(tag(3, 5)))
    b = item("np\\s", 4, 5)
    assert subsumption_key(a) != subsumption_key(b)


def test_key_ignores_semantics_antecedent_weight():
    a = item("np", 0, 1, sem="a", word="x", weight=0.0)
    b = item("np", 0, 1, sem="b", word="y", weight=-2.0)
    assert subsumption_key(a) == subsumption_key(b)


def test_key_distinguishes_stack():
    from mmcg.chart import WrapEntry

    entry = WrapEntry(2, 3, parse_formula("s\\1s"), Const("adv"))
    a = item("s", 0, 5, stack=(entry,))
    b = item("s", 0, 5)
    assert subsumption_key(a) != subsumption_key(b)


# ---------------------------------------------------------------------------
# insert

def test_insert_fresh_item():
    chart, agenda = Chart(), deque()
    assert insert(chart, agenda, item("np", 0, 1)) == ADDED
    assert len(agenda) == 1


def test_insert_duplicate_rejected():
    chart, agenda = Chart(), deque()
    insert(chart, agenda, item("np", 0, 1))
    assert insert(chart, agenda, item("np", 0, 1)) == REJECTED
    assert len(agenda) == 1
    assert chart.rejections == [("lex", ())]


def test_insert_higher_weight_replaces_in_slot():
    chart, agenda = Chart(), deque()
    first = item("np", 0, 1, weight=-1.0, sem="low")
    insert(chart, agenda, first)
    chart.enter(agenda.popleft())
    status = insert(chart, agenda, item("np", 0, 1, weight=-0.5, sem="high"))
    assert status == REPLACED
    resident = chart.get(1)
    assert resident.weight == -0.5
    assert resident.semantics == Const("high")
    assert len(agenda) == 0  # replacement reuses the slot, no new entry


def test_insert_equal_weight_keeps_incumbent():
    chart, agenda = Chart(), deque()
    insert(chart, agenda, item("np", 0, 1, weight=-1.0, sem="first"))
    assert insert(chart, agenda, item("np", 0, 1, weight=-1.0, sem="second")) == REJECTED
    assert agenda[0].semantics == Const("first")


def test_keep_all_readings_distinct_semantics_added():
    chart, agenda = Chart(), deque()
    insert(chart, agenda, item("np", 0, 1, sem="a"), keep_all_readings=True)
    assert insert(chart, agenda, item("np", 0, 1, sem="b"), keep_all_readings=True) == ADDED
    assert insert(chart, agenda, item("np", 0, 1, sem="a"), keep_all_readings=True) == REJECTED
    assert len(agenda) == 2


# ---------------------------------------------------------------------------
# disjoint union

def test_union_with_empty():
    e = ExtractionSet.of(tag(3, 5))
    assert disjoint_union(EMPTY_EXT, e) == e
    assert disjoint_union(EMPTY_EXT, EMPTY_EXT) == EMPTY_EXT


def test_union_blocked_on_shared_key():
    e = ExtractionSet.of(tag(3, 5))
    assert disjoint_union(e, e) is None
    # same key even when the hypothesis site differs
    assert disjoint_union(e, ExtractionSet.of(tag(3, 6))) is None


def test_union_of_distinct_keys():
    e1 = ExtractionSet.of(tag(3, 5))
    e2 = ExtractionSet.of(tag(1, 2, "n"))
    union = disjoint_union(e1, e2)
    assert union is not None and len(union) == 2


# ---------------------------------------------------------------------------
# coherence

def test_coherent_item():
    it = item("np\\s", 4, 5, ExtractionSet.of(tag(3, 5)))
    assert check_coherence(it)


def test_empty_ext_is_coherent():
    assert check_coherence(item("np", 0, 1))


def test_incoherent_when_licensor_right_of_left_edge():
    it = item("np\\s", 2, 5, ExtractionSet.of(tag(3, 5)))
    assert not check_coherence(it)


def test_leftward_tags_exempt_from_coherence():
    it = item("np\\s", 1, 2, ExtractionSet.of(tag(2, 2, mode=Mode.M0)))
    assert check_coherence(it)


# ---------------------------------------------------------------------------
# run() input validation and budgets

def test_run_requires_lexical_items():
    with pytest.raises(ValueError):
        run([], RuleSet(), NP)


def test_run_requires_contiguous_span():
    items = [item("np", 0, 1), item("np", 2, 3)]
    with pytest.raises(ValueError, match="contiguous"):
        run(items, RuleSet(), NP)


def test_run_single_word_trivial_goal():
    goal = parse_formula("np\\s")
    result = run([item("np\\s", 1, 2, word="dort", sem="dort")], RuleSet(), goal)
    assert result.ok and result.goals == [1]


def test_item_budget_gives_partial_result():
    lex = [item("np", 0, 1), item("np\\s", 1, 2)]
    lex[1].formula = parse_formula("np\\s")
    result = run(lex, RuleSet(), parse_formula("s"), item_budget=1)
    assert result.partial
    assert len(result.chart) == 1


def test_json_shape():
    goal = parse_formula("np")
    result = run([item("np", 0, 1)], RuleSet(), goal)
    doc = result.to_dict()
    assert set(doc) == {"items", "goals", "partial"}
    row = doc["items"][0]
    assert list(row) == [
        "id", "formula", "left", "right", "ext", "stack",
        "weight", "sem", "rule", "premises",
    ]
    assert doc["goals"] == [1]
