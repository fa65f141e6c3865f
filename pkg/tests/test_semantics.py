import pytest
from hypothesis import given, strategies as st

from mmcg.formula import Atom, Mode
from mmcg.semantics import (
    Abs,
    App,
    BudgetExceededError,
    Const,
    FreshVars,
    Pair,
    Proj,
    Var,
    alpha_equal,
    beta_normalize,
    free_vars,
    parse_term,
    print_term,
)


def test_identity_redex():
    t = App(Abs("x", Var("x")), Const("c"))
    assert beta_normalize(t) == Const("c")


def test_projection():
    t = Proj(2, Pair(Const("a"), Const("b")))
    assert beta_normalize(t) == Const("b")


def test_two_step_reduction():
    # (\x. x x) (\y. y)  ->  (\y. y) (\y. y)  ->  \y. y
    t = App(Abs("x", App(Var("x"), Var("x"))), Abs("y", Var("y")))
    assert beta_normalize(t) == Abs("y", Var("y"))


def test_budget_exceeded_on_divergent_term():
    omega = Abs("x", App(Var("x"), Var("x")))
    with pytest.raises(BudgetExceededError):
        beta_normalize(App(omega, omega), budget=50)


def test_normalization_idempotent():
    t = App(Abs("x", Pair(Var("x"), Var("x"))), App(Abs("y", Var("y")), Const("c")))
    once = beta_normalize(t)
    assert alpha_equal(beta_normalize(once), once)


def test_capture_avoiding_substitution():
    # (\x.\y. x) y  must not capture the free y
    t = App(Abs("x", Abs("y", Var("x"))), Var("y"))
    normal = beta_normalize(t)
    assert isinstance(normal, Abs)
    assert normal.body == Var("y")
    assert normal.var != "y"


def test_alpha_equal_simple():
    assert alpha_equal(Abs("x", Var("x")), Abs("y", Var("y")))
    assert not alpha_equal(Const("a"), Const("b"))


def test_alpha_equal_two_binders():
    s = Abs("x", Abs("y", App(Var("x"), Var("y"))))
    t = Abs("y", Abs("x", App(Var("y"), Var("x"))))
    assert alpha_equal(s, t)


def test_alpha_distinguishes_binding_structure():
    s = Abs("x", Abs("y", App(Var("x"), Var("y"))))
    t = Abs("x", Abs("y", App(Var("y"), Var("x"))))
    assert not alpha_equal(s, t)


def test_free_vars_and_closedness():
    t = parse_term("\\x.f x")
    assert free_vars(t) == frozenset()
    assert free_vars(App(Var("y"), Const("c"))) == {"y"}


def test_parse_constants_vs_variables():
    t = parse_term("\\x.sleep x")
    assert t == Abs("x", App(Const("sleep"), Var("x")))


def test_parse_pair_and_projections():
    t = parse_term("pi1 <a,b>")
    assert t == Proj(1, Pair(Const("a"), Const("b")))
    assert beta_normalize(t) == Const("a")


def test_parse_application_left_assoc():
    assert parse_term("f a b") == App(App(Const("f"), Const("a")), Const("b"))


def test_print_parse_roundtrip_examples():
    for text in [
        "\\x.f x",
        "f a b",
        "<a,\\x.x>",
        "pi2 <a,b>",
        "\\x.\\y.x (y a)",
    ]:
        t = parse_term(text)
        assert alpha_equal(parse_term(print_term(t)), t)


def test_fresh_hypothesis_naming():
    fresh = FreshVars()
    np = Atom("np")
    name = fresh.hypothesis(3, np, Mode.M1)
    assert name == "h_3_np"
    # one hypothesis per (position, formula, mode)
    assert fresh.hypothesis(3, np, Mode.M1) == "h_3_np"
    # different formula or mode at the same position gets a distinct name
    assert fresh.hypothesis(3, Atom("n"), Mode.M1) != "h_3_np"
    assert fresh.hypothesis(3, np, Mode.M0) != "h_3_np"


def test_fresh_binders_distinct():
    fresh = FreshVars()
    assert fresh.binder() != fresh.binder()


# ---------------------------------------------------------------------------
# properties

_names = st.sampled_from(["x", "y", "z", "f"])


def _terms(depth: int):
    if depth == 0:
        return st.one_of(st.builds(Var, _names), st.builds(Const, _names))
    sub = _terms(depth - 1)
    return st.one_of(
        st.builds(Var, _names),
        st.builds(Const, _names),
        st.builds(App, sub, sub),
        st.builds(Abs, _names, sub),
        st.builds(Pair, sub, sub),
        st.builds(Proj, st.sampled_from([1, 2]), sub),
    )


@given(_terms(4))
def test_normalize_idempotent_property(t):
    try:
        once = beta_normalize(t, budget=2000)
    except BudgetExceededError:
        return
    assert alpha_equal(beta_normalize(once, budget=2000), once)


@given(_terms(4))
def test_normalization_preserves_closedness(t):
    body = t
    for name in sorted(free_vars(t)):
        body = Abs(name, body)
    try:
        normal = beta_normalize(body, budget=2000)
    except BudgetExceededError:
        return
    assert free_vars(normal) == frozenset()


@given(_terms(3), _terms(3))
def test_alpha_equal_symmetric(s, t):
    assert alpha_equal(s, t) == alpha_equal(t, s)
    assert alpha_equal(s, s)
