"""Inference rules and the trigger scanner.

Each rule is a pure function from premise items to an optional new
item: non-matching premises yield None, never an error.  The engine
calls ``consequences`` when an item enters the chart; it pairs the new
item with chart residents under every active rule, in a fixed order,
so runs are deterministic.

Only the slash-elimination rules are always active.  Everything else is
switched on by ``scan_triggers``, which looks for the lexical patterns
each rule group needs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .chart import (
    Chart,
    ChartItem,
    EMPTY_EXT,
    ExtractionSet,
    ExtractionTag,
    Leaf,
    Node,
    WrapEntry,
    check_coherence,
    disjoint_union,
)
from .formula import (
    Atom,
    Box,
    Dia,
    Dir,
    Formula,
    LEFTWARD,
    Mode,
    RIGHTWARD,
    Slash,
    Product,
    argument_subformulas,
    match_extraction_licensor,
    print_formula,
    subformulas,
)
from .semantics import Abs, App, FreshVars, Pair, Proj, Var, beta_normalize

LEX = "lex"
FE = "fE"
BSE = "bsE"
E_START = "e_start"
E_END = "e_end"
E_END_LEFT = "e_end_left"
WITHDRAW = "withdraw"
WR = "wr"
WPOP = "wpop"
PROD_I = "prodI"
PROD_C = "prodC"
PROD_E = "prodE"
LNR = "lnr"
QSPEECH = "qspeech"

_S = Atom("s")
_NP = Atom("np")
_S1S = Slash(Dir.BACKWARD, Mode.M1, _S, _S)
_NP_S = Slash(Dir.BACKWARD, Mode.MAIN, _S, _NP)


# --------------------------------------------------------------------------
# rule set and trigger scanning

@dataclass
class RuleSet:
    """Active rule groups.  Slash elimination is always on."""

    extract1: bool = False
    extract0: bool = False
    wrap: bool = False
    product: bool = False
    lnr: bool = False
    qspeech: bool = False
    pop_at_vp: bool = False

    @property
    def ab(self) -> bool:
        return True

    def describe(self) -> str:
        names = ["ab"]
        for attr, label in (
            ("extract1", "extract1"),
            ("extract0", "extract0"),
            ("wrap", "wrap"),
            ("product", "product"),
            ("lnr", "lnr"),
            ("qspeech", "qspeech"),
            ("pop_at_vp", "popAtVP"),
        ):
            if getattr(self, attr):
                names.append(label)
        return " ".join(names)


def _is_wrap_adverb(f: Formula) -> bool:
    return (
        isinstance(f, Slash)
        and f.direction is Dir.BACKWARD
        and f.mode is Mode.M1
        and f.result == f.argument
    )


def _is_lnr_result(f: Formula) -> bool:
    """(dia0(box0(X)))\\X for some X."""
    match f:
        case Slash(Dir.BACKWARD, Mode.MAIN, x, Dia(Mode.M0, Box(Mode.M0, x2))):
            return x == x2
    return False


def _withdrawable(goal: Formula | None) -> Formula | None:
    """The extractable formula when the goal has shape Y/dia0(box0(B))."""
    match goal:
        case Slash(Dir.FORWARD, Mode.MAIN, _, Dia(Mode.M0, Box(Mode.M0, b))):
            return b
    return None


def _qspeech_aux_arg(f: Formula) -> Formula | None:
    """The verbal argument V when f looks like (X/np)/V."""
    match f:
        case Slash(Dir.FORWARD, Mode.MAIN, Slash(Dir.FORWARD, Mode.MAIN, _, arg), v) if arg == _NP:
            return v
    return None


def _qspeech_core_arg(f: Formula) -> Formula | None:
    """The verbal result V when f looks like s\\1 V (argument s left)."""
    match f:
        case Slash(Dir.BACKWARD, Mode.M1, v, arg) if arg == _S:
            return v
    return None


def scan_triggers(
    lex_formulas: Iterable[Formula], goal: Formula | None = None
) -> RuleSet:
    """Activate rule groups whose lexical trigger patterns occur.

    Quoted-speech attribution derives new X\\1 X items, so activating it
    also activates the wrapping rules even without a lexical adverb.
    """
    rs = RuleSet()
    aux_args: set[Formula] = set()
    core_args: set[Formula] = set()
    for f in lex_formulas:
        for sub in subformulas(f):
            m = match_extraction_licensor(sub)
            if m is not None:
                if m.mode is Mode.M1:
                    rs.extract1 = True
                else:
                    rs.extract0 = True
            if _is_wrap_adverb(sub):
                rs.wrap = True
        for arg in argument_subformulas(f):
            if isinstance(arg, Product):
                rs.product = True
            if _is_lnr_result(arg):
                rs.lnr = True
        v = _qspeech_aux_arg(f)
        if v is not None:
            aux_args.add(v)
        v = _qspeech_core_arg(f)
        if v is not None:
            core_args.add(v)
    if aux_args & core_args:
        rs.qspeech = True
        rs.wrap = True
    if _withdrawable(goal) is not None:
        rs.extract0 = True
    return rs


def collect_m0_demands(
    lex_formulas: Iterable[Formula], goal: Formula | None = None
) -> frozenset[Formula]:
    """Formulas hypothesizable at a functor's right edge in mode 0.

    Sources: leftward licensors in the lexicon, and a goal of the
    withdrawable shape Y/dia0(box0(B)).
    """
    demands: set[Formula] = set()
    for f in lex_formulas:
        for sub in subformulas(f):
            m = match_extraction_licensor(sub)
            if m is not None and m.orientation == LEFTWARD:
                demands.add(m.b)
    b = _withdrawable(goal)
    if b is not None:
        demands.add(b)
    return frozenset(demands)


def collect_lnr_demands(lex_formulas: Iterable[Formula]) -> frozenset[Formula]:
    """X values for which some argument position wants (dia0(box0(X)))\\X."""
    demands: set[Formula] = set()
    for f in lex_formulas:
        for arg in argument_subformulas(f):
            if _is_lnr_result(arg):
                demands.add(arg.result)
    return frozenset(demands)


# --------------------------------------------------------------------------
# parse context

@dataclass
class ParseContext:
    """Per-parse state shared by rule applications."""

    ruleset: RuleSet
    fresh: FreshVars = field(default_factory=FreshVars)
    goal: Formula | None = None
    m0_demands: frozenset[Formula] = frozenset()
    lnr_demands: frozenset[Formula] = frozenset()
    rule_weights: Mapping[str, float] = field(default_factory=dict)
    beta_budget: int = 10_000
    steps: int = 0

    def rule_weight(self, rule: str) -> float:
        return self.rule_weights.get(rule, 0.0)


def _make(
    rule: str,
    premises: tuple[ChartItem, ...],
    antecedent,
    formula: Formula,
    left: int,
    right: int,
    ext: ExtractionSet,
    stack: tuple,
    sem,
    ctx: ParseContext,
) -> ChartItem | None:
    item = ChartItem(
        antecedent,
        formula,
        left,
        right,
        ext,
        stack,
        weight=sum(p.weight for p in premises) + ctx.rule_weight(rule),
        semantics=beta_normalize(sem, ctx.beta_budget),
        rule=rule,
        premises=tuple(p.id for p in premises),
    )
    return item if check_coherence(item) else None


# --------------------------------------------------------------------------
# slash elimination

def rule_fE(f: ChartItem, a: ChartItem, ctx: ParseContext) -> ChartItem | None:
    """A/B @ (i,j) + B @ (j,k) => A @ (i,k)."""
    match f.formula:
        case Slash(Dir.FORWARD, Mode.MAIN, result, argument) if (
            argument == a.formula and f.right == a.left
        ):
            ext = disjoint_union(f.ext, a.ext)
            if ext is None:
                return None
            return _make(
                FE, (f, a),
                Node(Mode.MAIN, f.antecedent, a.antecedent),
                result, f.left, a.right, ext, f.stack + a.stack,
                App(f.semantics, a.semantics), ctx,
            )
    return None


def rule_bsE(a: ChartItem, f: ChartItem, ctx: ParseContext) -> ChartItem | None:
    """B @ (i,j) + B\\A @ (j,k) => A @ (i,k)."""
    match f.formula:
        case Slash(Dir.BACKWARD, Mode.MAIN, result, argument) if (
            argument == a.formula and a.right == f.left
        ):
            ext = disjoint_union(a.ext, f.ext)
            if ext is None:
                return None
            return _make(
                BSE, (a, f),
                Node(Mode.MAIN, a.antecedent, f.antecedent),
                result, a.left, f.right, ext, a.stack + f.stack,
                App(f.semantics, a.semantics), ctx,
            )
    return None


# --------------------------------------------------------------------------
# extraction

def rule_e_start(
    lic: ChartItem, f: ChartItem, mode: Mode, ctx: ParseContext
) -> ChartItem | None:
    """Consume a functor's argument slot with a hypothesis licensed to
    the left: X/(Y/dia(box(B))) @ (_,k) + A/B @ (i,j), k <= i
    => A @ (i,j) carrying the pending hypothesis (k, j, B)."""
    m = match_extraction_licensor(lic.formula)
    if m is None or m.orientation != RIGHTWARD or m.mode is not mode:
        return None
    match f.formula:
        case Slash(Dir.FORWARD, Mode.MAIN, result, argument) if (
            argument == m.b and lic.right <= f.left
        ):
            tag = ExtractionTag(lic.right, f.right, m.b, mode)
            ext = f.ext.with_tag(tag)
            if ext is None:
                return None
            hyp = ctx.fresh.hypothesis(tag.lic_pos, tag.formula, tag.mode)
            return _make(
                E_START, (lic, f),
                f.antecedent, result, f.left, f.right, ext, f.stack,
                App(f.semantics, Var(hyp)), ctx,
            )
    return None


def rule_e_start_self(
    f: ChartItem, b: Formula, ctx: ParseContext
) -> ChartItem | None:
    """Mode-0 hypothesis at a functor's right edge, before any licensor
    position is known: A/B @ (i,j) => A @ (i,j) with tag (j, j, B)."""
    match f.formula:
        case Slash(Dir.FORWARD, Mode.MAIN, result, argument) if argument == b:
            tag = ExtractionTag(f.right, f.right, b, Mode.M0)
            ext = f.ext.with_tag(tag)
            if ext is None:
                return None
            hyp = ctx.fresh.hypothesis(tag.lic_pos, tag.formula, tag.mode)
            return _make(
                E_START, (f,),
                f.antecedent, result, f.left, f.right, ext, f.stack,
                App(f.semantics, Var(hyp)), ctx,
            )
    return None


def rule_e_end(
    lic: ChartItem, y: ChartItem, mode: Mode, ctx: ParseContext
) -> ChartItem | None:
    """Discharge a hypothesis at its licensor: X/(Y/dia(box(B))) @ (i,j)
    + Y @ (j,k) carrying tag (j, j', B) with empty stack => X @ (i,k).
    In mode 0 the hypothesis must sit at Y's right edge."""
    m = match_extraction_licensor(lic.formula)
    if m is None or m.orientation != RIGHTWARD or m.mode is not mode:
        return None
    if y.formula != m.y or lic.right != y.left or y.stack:
        return None
    tag = y.ext.get(lic.right, m.b, mode)
    if tag is None:
        return None
    if mode is Mode.M0 and tag.hyp_site != y.right:
        return None
    ext = disjoint_union(lic.ext, y.ext.without(tag))
    if ext is None:
        return None
    hyp = ctx.fresh.hypothesis(tag.lic_pos, tag.formula, tag.mode)
    return _make(
        E_END, (lic, y),
        Node(Mode.MAIN, lic.antecedent, y.antecedent),
        m.x, lic.left, y.right, ext, lic.stack,
        App(lic.semantics, Abs(hyp, y.semantics)), ctx,
    )


def rule_e_end_left(
    y: ChartItem, lic: ChartItem, ctx: ParseContext
) -> ChartItem | None:
    """Discharge a right-edge mode-0 hypothesis at a licensor to its
    right: Y @ (i,j) with tag (j, j, B) + (Y/dia0(box0(B)))\\X @ (j,k)
    => X @ (i,k)."""
    m = match_extraction_licensor(lic.formula)
    if m is None or m.orientation != LEFTWARD:
        return None
    if y.formula != m.y or y.right != lic.left or y.stack:
        return None
    tag = y.ext.get(y.right, m.b, Mode.M0)
    if tag is None or tag.hyp_site != y.right:
        return None
    ext = disjoint_union(y.ext.without(tag), lic.ext)
    if ext is None:
        return None
    hyp = ctx.fresh.hypothesis(tag.lic_pos, tag.formula, tag.mode)
    return _make(
        E_END_LEFT, (y, lic),
        Node(Mode.MAIN, y.antecedent, lic.antecedent),
        m.x, y.left, lic.right, ext, lic.stack,
        App(lic.semantics, Abs(hyp, y.semantics)), ctx,
    )


def rule_withdraw_goal(
    y: ChartItem, goal: Formula, ctx: ParseContext
) -> ChartItem | None:
    """Goal-driven abstraction: when the parse goal is Y/dia0(box0(B))
    and Y holds exactly one right-edge mode-0 B hypothesis, withdraw it."""
    b = _withdrawable(goal)
    if b is None or y.formula != goal.result:
        return None
    if len(y.ext) != 1 or y.stack:
        return None
    tag = y.ext.tags[0]
    if tag.mode is not Mode.M0 or tag.formula != b or tag.hyp_site != y.right:
        return None
    hyp = ctx.fresh.hypothesis(tag.lic_pos, tag.formula, tag.mode)
    return _make(
        WITHDRAW, (y,),
        y.antecedent, goal, y.left, y.right, EMPTY_EXT, (),
        Abs(hyp, y.semantics), ctx,
    )


# --------------------------------------------------------------------------
# head wrap

def rule_wr(x: ChartItem, adv: ChartItem, ctx: ParseContext) -> ChartItem | None:
    """Wrap an adjacent Y\\1 Y modifier: its string attaches here but the
    formula goes on the stack to take scope later.  The host's formula
    and semantics pass through unchanged."""
    if not _is_wrap_adverb(adv.formula) or x.right != adv.left:
        return None
    ext = disjoint_union(x.ext, adv.ext)
    if ext is None:
        return None
    entry = WrapEntry(adv.left, adv.right, adv.formula, adv.semantics)
    return _make(
        WR, (x, adv),
        Node(Mode.M1, x.antecedent, adv.antecedent),
        x.formula, x.left, adv.right, ext,
        x.stack + (entry,) + adv.stack,
        x.semantics, ctx,
    )


def rule_wpop(
    it: ChartItem, ctx: ParseContext, pop_at_vp: bool = False
) -> ChartItem | None:
    """Pop the top stack entry X\\1 X when the item's formula is X; with
    pop_at_vp, an s\\1 s entry may also pop at an np\\s item, letting
    sentence adverbs scope over infinitival arguments."""
    if not it.stack:
        return None
    top = it.stack[0]
    if _is_wrap_adverb(top.formula) and top.formula.result == it.formula:
        sem = App(top.semantics, it.semantics)
    elif pop_at_vp and top.formula == _S1S and it.formula == _NP_S:
        v = ctx.fresh.binder()
        sem = Abs(v, App(top.semantics, App(it.semantics, Var(v))))
    else:
        return None
    return _make(
        WPOP, (it,),
        it.antecedent, it.formula, it.left, it.right, it.ext,
        it.stack[1:], sem, ctx,
    )


# --------------------------------------------------------------------------
# products

def rule_prodI(
    l: ChartItem, r: ChartItem, demand: Formula, ctx: ParseContext
) -> ChartItem | None:
    """Build a product only on demand from an adjacent item that takes a
    product argument.  A demanded A*dia0(box0(C)) is satisfied by plain
    (A, C) neighbours, the decoration being added on the right."""
    if l.right != r.left or not isinstance(demand, Product):
        return None
    ok = False
    if l.formula == demand.left:
        if r.formula == demand.right:
            ok = True
        else:
            match demand.right:
                case Dia(Mode.M0, Box(Mode.M0, c)) if r.formula == c:
                    ok = True
    if not ok:
        return None
    ext = disjoint_union(l.ext, r.ext)
    if ext is None:
        return None
    return _make(
        PROD_I, (l, r),
        Node(demand.mode, l.antecedent, r.antecedent),
        demand, l.left, r.right, ext, l.stack + r.stack,
        Pair(l.semantics, r.semantics), ctx,
    )


def rule_prodC(f: ChartItem, p: ChartItem, ctx: ParseContext) -> ChartItem | None:
    """A/B @ (i,j) + B*dia0(box0(C)) @ (j,k) => A*dia0(box0(C)) @ (i,k)."""
    match f.formula, p.formula:
        case (
            Slash(Dir.FORWARD, Mode.MAIN, result, argument),
            Product(Mode.MAIN, b, Dia(Mode.M0, Box(Mode.M0, _)) as deco),
        ) if argument == b and f.right == p.left:
            ext = disjoint_union(f.ext, p.ext)
            if ext is None:
                return None
            return _make(
                PROD_C, (f, p),
                Node(Mode.MAIN, f.antecedent, p.antecedent),
                Product(Mode.MAIN, result, deco),
                f.left, p.right, ext, f.stack + p.stack,
                Pair(
                    App(f.semantics, Proj(1, p.semantics)),
                    Proj(2, p.semantics),
                ),
                ctx,
            )
    return None


def rule_prodE(p: ChartItem, ctx: ParseContext) -> ChartItem | None:
    """(A/C)*dia0(box0(C)) => A over the same span."""
    match p.formula:
        case Product(
            Mode.MAIN,
            Slash(Dir.FORWARD, Mode.MAIN, result, c1),
            Dia(Mode.M0, Box(Mode.M0, c2)),
        ) if c1 == c2:
            return _make(
                PROD_E, (p,),
                p.antecedent, result, p.left, p.right, p.ext, p.stack,
                App(Proj(1, p.semantics), Proj(2, p.semantics)), ctx,
            )
    return None


# --------------------------------------------------------------------------
# left-node raising

def rule_lnr(
    m1it: ChartItem, m2it: ChartItem, ctx: ParseContext
) -> ChartItem | None:
    """Two adjacent X\\X modifiers => (dia0(box0(X)))\\X, so a shared X
    to the left can distribute over a coordination of modifier pairs."""
    match m1it.formula:
        case Slash(Dir.BACKWARD, Mode.MAIN, x, argument) if (
            argument == x
            and m2it.formula == m1it.formula
            and m1it.right == m2it.left
        ):
            ext = disjoint_union(m1it.ext, m2it.ext)
            if ext is None:
                return None
            v = ctx.fresh.binder()
            return _make(
                LNR, (m1it, m2it),
                Node(Mode.MAIN, m1it.antecedent, m2it.antecedent),
                Slash(Dir.BACKWARD, Mode.MAIN, x, Dia(Mode.M0, Box(Mode.M0, x))),
                m1it.left, m2it.right, ext, m1it.stack + m2it.stack,
                Abs(v, App(m2it.semantics, App(m1it.semantics, Var(v)))),
                ctx,
            )
    return None


# --------------------------------------------------------------------------
# quoted speech

def rule_qspeech(
    aux: ChartItem, vcore: ChartItem, subj: ChartItem, ctx: ParseContext
) -> ChartItem | None:
    """Attribution tag (s/np)/V + s\\1 V + np, adjacent in that order,
    becomes an s\\1 s modifier over the whole tag span."""
    v = _qspeech_aux_arg(aux.formula)
    if v is None or aux.formula.result.result != _S:
        return None
    if vcore.formula != Slash(Dir.BACKWARD, Mode.M1, v, _S):
        return None
    if subj.formula != _NP:
        return None
    if aux.right != vcore.left or vcore.right != subj.left:
        return None
    ext = disjoint_union(aux.ext, vcore.ext)
    if ext is None:
        return None
    ext = disjoint_union(ext, subj.ext)
    if ext is None:
        return None
    x = ctx.fresh.binder()
    return _make(
        QSPEECH, (aux, vcore, subj),
        Node(
            Mode.MAIN,
            Node(Mode.MAIN, aux.antecedent, vcore.antecedent),
            subj.antecedent,
        ),
        _S1S, aux.left, subj.right, ext,
        aux.stack + vcore.stack + subj.stack,
        Abs(
            x,
            App(
                App(aux.semantics, App(vcore.semantics, Var(x))),
                subj.semantics,
            ),
        ),
        ctx,
    )


# --------------------------------------------------------------------------
# consequence computation

def _licensor_mode(lic_formula: Formula, rs: RuleSet) -> Mode | None:
    """The extraction mode of a rightward licensor, if its group is on."""
    m = match_extraction_licensor(lic_formula)
    if m is None or m.orientation != RIGHTWARD:
        return None
    if m.mode is Mode.M1 and not rs.extract1:
        return None
    if m.mode is Mode.M0 and not rs.extract0:
        return None
    return m.mode


def _is_leftward_licensor(f: Formula) -> bool:
    m = match_extraction_licensor(f)
    return m is not None and m.orientation == LEFTWARD


def _product_demands(chart: Chart, left: int, right: int) -> list[Formula]:
    """Product formulas wanted in argument position by an item adjacent
    to the span (left, right)."""
    demands: list[Formula] = []
    seen: set[Formula] = set()
    for neighbour in chart.by_right(left) + chart.by_left(right):
        for arg in argument_subformulas(neighbour.formula):
            if isinstance(arg, Product) and arg not in seen:
                seen.add(arg)
                demands.append(arg)
    demands.sort(key=print_formula)
    return demands


def consequences(
    new: ChartItem, chart: Chart, ctx: ParseContext
) -> list[ChartItem]:
    """All consequences of the newly entered item against the chart, in
    a fixed rule and partner order."""
    rs = ctx.ruleset
    out: list[ChartItem] = []

    def attempt(candidate: ChartItem | None) -> None:
        ctx.steps += 1
        if candidate is not None:
            out.append(candidate)

    # fE
    for a in chart.by_left(new.right):
        attempt(rule_fE(new, a, ctx))
    for f in chart.by_right(new.left):
        attempt(rule_fE(f, new, ctx))

    # bsE
    for f in chart.by_left(new.right):
        attempt(rule_bsE(new, f, ctx))
    for a in chart.by_right(new.left):
        attempt(rule_bsE(a, new, ctx))

    # e_start
    if rs.extract1 or rs.extract0:
        mode = _licensor_mode(new.formula, rs)
        if mode is not None:
            for f in chart.items:
                if f.left >= new.right:
                    attempt(rule_e_start(new, f, mode, ctx))
        for lic in chart.items:
            if lic.right <= new.left:
                lic_mode = _licensor_mode(lic.formula, rs)
                if lic_mode is not None:
                    attempt(rule_e_start(lic, new, lic_mode, ctx))
        if rs.extract0:
            for b in sorted(ctx.m0_demands, key=print_formula):
                attempt(rule_e_start_self(new, b, ctx))

    # e_end
    if rs.extract1 or rs.extract0:
        mode = _licensor_mode(new.formula, rs)
        if mode is not None:
            for y in chart.by_left(new.right):
                attempt(rule_e_end(new, y, mode, ctx))
        for lic in chart.by_right(new.left):
            lic_mode = _licensor_mode(lic.formula, rs)
            if lic_mode is not None:
                attempt(rule_e_end(lic, new, lic_mode, ctx))

    # e_end_left
    if rs.extract0:
        for lic in chart.by_left(new.right):
            if _is_leftward_licensor(lic.formula):
                attempt(rule_e_end_left(new, lic, ctx))
        if _is_leftward_licensor(new.formula):
            for y in chart.by_right(new.left):
                attempt(rule_e_end_left(y, new, ctx))

    # withdraw
    if rs.extract0 and ctx.goal is not None:
        attempt(rule_withdraw_goal(new, ctx.goal, ctx))

    # wr
    if rs.wrap:
        for adv in chart.by_left(new.right):
            attempt(rule_wr(new, adv, ctx))
        if _is_wrap_adverb(new.formula):
            for x in chart.by_right(new.left):
                attempt(rule_wr(x, new, ctx))

    # wpop
    if rs.wrap:
        attempt(rule_wpop(new, ctx, rs.pop_at_vp))

    # prodI
    if rs.product:
        for r in chart.by_left(new.right):
            for demand in _product_demands(chart, new.left, r.right):
                attempt(rule_prodI(new, r, demand, ctx))
        for l in chart.by_right(new.left):
            for demand in _product_demands(chart, l.left, new.right):
                attempt(rule_prodI(l, new, demand, ctx))
        # the new item may itself be the demander for resident pairs
        own_demands = [
            arg
            for arg in dict.fromkeys(argument_subformulas(new.formula))
            if isinstance(arg, Product)
        ]
        if own_demands:
            own_demands.sort(key=print_formula)
            for l in chart.by_left(new.right):
                for r in chart.by_left(l.right):
                    for demand in own_demands:
                        attempt(rule_prodI(l, r, demand, ctx))
            for r in chart.by_right(new.left):
                for l in chart.by_right(r.left):
                    for demand in own_demands:
                        attempt(rule_prodI(l, r, demand, ctx))

    # prodC
    if rs.product:
        for p in chart.by_left(new.right):
            attempt(rule_prodC(new, p, ctx))
        for f in chart.by_right(new.left):
            attempt(rule_prodC(f, new, ctx))

    # prodE
    if rs.product:
        attempt(rule_prodE(new, ctx))

    # lnr
    if rs.lnr:
        def lnr_wanted(it: ChartItem) -> bool:
            return (
                isinstance(it.formula, Slash)
                and it.formula.result in ctx.lnr_demands
            )

        if lnr_wanted(new):
            for m2 in chart.by_left(new.right):
                attempt(rule_lnr(new, m2, ctx))
            for m1 in chart.by_right(new.left):
                attempt(rule_lnr(m1, new, ctx))

    # qspeech
    if rs.qspeech:
        for vcore in chart.by_left(new.right):
            for subj in chart.by_left(vcore.right):
                attempt(rule_qspeech(new, vcore, subj, ctx))
        for aux in chart.by_right(new.left):
            for subj in chart.by_left(new.right):
                attempt(rule_qspeech(aux, new, subj, ctx))
        for vcore in chart.by_right(new.left):
            for aux in chart.by_right(vcore.left):
                attempt(rule_qspeech(aux, vcore, new, ctx))

    return out
