"""Shared fixtures: worked-example lexica and run helpers."""

from __future__ import annotations

from mmcg import (
    lexical_items,
    load_lexicon,
    parse_formula,
    run,
    scan_triggers,
)
from mmcg.rules import ParseContext, RuleSet

AB_LEXICON = """\
le\tnp/n
marché\tn
financier\tn\\n
de\t(n\\n)/np
paris\tnp
"""

RELATIVE_LEXICON = """\
qu'\t(n\\n)/(s/dia1(box1(np)))
on\tnp
emprunte\t(np\\s)/np
"""

ADVERB_LEXICON = """\
il\tnp
occupera\t(np\\s)/np
ensuite\ts\\1s
diverses\tnp/n
fonctions\tn
"""

ADVERB_EXTRACTION_LEXICON = """\
qu'\t(n\\n)/(s/dia1(box1(np)))
il\tnp
occupera\t(np\\s)/np
ensuite\ts\\1s
"""

WITHDRAW_LEXICON = """\
v1\t(np\\s)/(np\\s)
v2\t(np\\s)/np
"""

PRODUCT_LEXICON = """\
augmenter\t((np\\s)/pp)/np
ses_fonds\tnp
de_90_millions\tpp
et\t((np*pp)\\(np*dia0(box0(pp))))/(np*pp)
les_quasi_fonds\tnp
de_30_millions\tpp
"""

LNR_LEXICON = """\
francais\tn\\n
aerospatiale\tn\\n
et\t(((dia0(box0(n)))\\n)\\(n\\n))/((dia0(box0(n)))\\n)
italien\tn\\n
alenia\tn\\n
"""

QSPEECH_LEXICON = """\
les_conservateurs\tnp
a\t(s/np)/(np\\s_ppart)
ajoute\ts\\1(np\\s_ppart)
le_premier_ministre\tnp
ne_sont_pas_des_opportunistes\tnp\\s
"""

INFINITIVE_LEXICON = """\
dormir\tnp\\s
ensuite\ts\\1s
"""


def parse_sentence(
    lexicon_text: str,
    sentence: str,
    goal_text: str,
    offset: int = 0,
    pop_at_vp: bool = False,
    ruleset: RuleSet | None = None,
    **kwargs,
):
    lexicon = load_lexicon(lexicon_text)
    goal = parse_formula(goal_text)
    items = lexical_items(lexicon, sentence.split(), offset)
    if ruleset is None:
        ruleset = scan_triggers(lexicon.formulas(), goal)
        ruleset.pop_at_vp = pop_at_vp
    return run(items, ruleset, goal, **kwargs)


def make_ctx(**kwargs) -> ParseContext:
    kwargs.setdefault("ruleset", RuleSet())
    return ParseContext(**kwargs)


def item_shape(it) -> tuple:
    """(formula text, left, right, ext keys, stack spans) for comparisons."""
    from mmcg import print_formula

    return (
        print_formula(it.formula),
        it.left,
        it.right,
        frozenset(
            (t.lic_pos, t.hyp_site, print_formula(t.formula), int(t.mode))
            for t in it.ext
        ),
        tuple((e.left, e.right, print_formula(e.formula)) for e in it.stack),
    )
