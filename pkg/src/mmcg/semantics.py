"""Untyped lambda terms with pairing, for the semantic side of parsing.

Terms are immutable trees.  Comparison is alpha-equivalence; rules
compose terms by application and the engine keeps them in beta-normal,
projection-reduced form.  Normalization is normal-order and guarded by
a reduction budget so a pathological lexicon entry fails loudly instead
of looping.

Text syntax::

    term := "\\" ident "." term | app
    app  := atom+                      (application, left-associative)
    atom := ident | "<" term "," term ">" | "pi1" atom | "pi2" atom
          | "(" term ")"

Identifiers not bound by an enclosing abstraction are constants.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class TermError(ValueError):
    """Malformed term text; ``offset`` is the character position."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class BudgetExceededError(RuntimeError):
    """Normalization ran out of reduction steps."""


class LambdaTerm:
    __slots__ = ()

    def __str__(self) -> str:
        return print_term(self)


@dataclass(frozen=True, slots=True)
class Var(LambdaTerm):
    name: str


@dataclass(frozen=True, slots=True)
class Const(LambdaTerm):
    name: str


@dataclass(frozen=True, slots=True)
class App(LambdaTerm):
    fun: LambdaTerm
    arg: LambdaTerm


@dataclass(frozen=True, slots=True)
class Abs(LambdaTerm):
    var: str
    body: LambdaTerm


@dataclass(frozen=True, slots=True)
class Pair(LambdaTerm):
    left: LambdaTerm
    right: LambdaTerm


@dataclass(frozen=True, slots=True)
class Proj(LambdaTerm):
    index: int  # 1 or 2
    body: LambdaTerm


# --------------------------------------------------------------------------
# free variables and substitution

def free_vars(t: LambdaTerm) -> frozenset[str]:
    match t:
        case Var(name):
            return frozenset((name,))
        case Const(_):
            return frozenset()
        case App(fun, arg):
            return free_vars(fun) | free_vars(arg)
        case Abs(var, body):
            return free_vars(body) - {var}
        case Pair(left, right):
            return free_vars(left) | free_vars(right)
        case Proj(_, body):
            return free_vars(body)
    raise TypeError(f"not a term: {t!r}")


def _subst(t: LambdaTerm, name: str, value: LambdaTerm) -> LambdaTerm:
    """Capture-avoiding substitution of ``value`` for free ``name``."""
    match t:
        case Var(n):
            return value if n == name else t
        case Const(_):
            return t
        case App(fun, arg):
            return App(_subst(fun, name, value), _subst(arg, name, value))
        case Pair(left, right):
            return Pair(_subst(left, name, value), _subst(right, name, value))
        case Proj(index, body):
            return Proj(index, _subst(body, name, value))
        case Abs(var, body):
            if var == name:
                return t
            if name not in free_vars(body):
                return t
            if var in free_vars(value):
                avoid = free_vars(value) | free_vars(body)
                fresh = var
                while fresh in avoid:
                    fresh += "'"
                body = _subst(body, var, Var(fresh))
                var = fresh
            return Abs(var, _subst(body, name, value))
    raise TypeError(f"not a term: {t!r}")


# --------------------------------------------------------------------------
# normalization

def beta_normalize(t: LambdaTerm, budget: int = 10_000) -> LambdaTerm:
    """Normal-order reduction to beta-normal, projection-reduced form."""
    counter = [budget]
    return _normalize(t, counter)


def _spend(counter: list[int]) -> None:
    counter[0] -= 1
    if counter[0] < 0:
        raise BudgetExceededError("reduction budget exceeded")


def _whnf(t: LambdaTerm, counter: list[int]) -> LambdaTerm:
    while True:
        match t:
            case App(fun, arg):
                fun = _whnf(fun, counter)
                if isinstance(fun, Abs):
                    _spend(counter)
                    t = _subst(fun.body, fun.var, arg)
                else:
                    return App(fun, arg)
            case Proj(index, body):
                body = _whnf(body, counter)
                if isinstance(body, Pair):
                    _spend(counter)
                    t = body.left if index == 1 else body.right
                else:
                    return Proj(index, body)
            case _:
                return t


def _normalize(t: LambdaTerm, counter: list[int]) -> LambdaTerm:
    t = _whnf(t, counter)
    match t:
        case App(fun, arg):
            return App(_normalize(fun, counter), _normalize(arg, counter))
        case Abs(var, body):
            return Abs(var, _normalize(body, counter))
        case Pair(left, right):
            return Pair(_normalize(left, counter), _normalize(right, counter))
        case Proj(index, body):
            return Proj(index, _normalize(body, counter))
        case _:
            return t


# --------------------------------------------------------------------------
# alpha-equivalence

def alpha_equal(s: LambdaTerm, t: LambdaTerm) -> bool:
    """True iff the terms are equal up to bound-variable renaming."""
    return _aeq(s, t, {}, {}, 0)


def _aeq(s, t, senv: dict, tenv: dict, depth: int) -> bool:
    match s, t:
        case Var(a), Var(b):
            da, db = senv.get(a), tenv.get(b)
            if da is None and db is None:
                return a == b  # both free
            return da == db
        case Const(a), Const(b):
            return a == b
        case App(f1, a1), App(f2, a2):
            return _aeq(f1, f2, senv, tenv, depth) and _aeq(a1, a2, senv, tenv, depth)
        case Pair(l1, r1), Pair(l2, r2):
            return _aeq(l1, l2, senv, tenv, depth) and _aeq(r1, r2, senv, tenv, depth)
        case Proj(i1, b1), Proj(i2, b2):
            return i1 == i2 and _aeq(b1, b2, senv, tenv, depth)
        case Abs(v1, b1), Abs(v2, b2):
            senv2 = dict(senv)
            tenv2 = dict(tenv)
            senv2[v1] = depth
            tenv2[v2] = depth
            return _aeq(b1, b2, senv2, tenv2, depth + 1)
    return False


# --------------------------------------------------------------------------
# deterministic fresh-variable supply, one per parse

_MANGLE_RE = re.compile(r"[^a-z0-9_]")


class FreshVars:
    """Names hypothesis variables and rule binders within one parse.

    Each (licensor position, formula, mode) triple gets exactly one
    hypothesis variable, so that the variable used when a hypothesis is
    introduced is the same one abstracted over at discharge.
    """

    def __init__(self) -> None:
        self._hypotheses: dict[tuple, str] = {}
        self._taken: set[str] = set()
        self._counter = 0

    def hypothesis(self, lic_pos: int, formula, mode) -> str:
        from .formula import print_formula

        key = (lic_pos, formula, mode)
        name = self._hypotheses.get(key)
        if name is not None:
            return name
        base = f"h_{lic_pos}_" + _MANGLE_RE.sub("", print_formula(formula))
        name, n = base, 2
        while name in self._taken:
            name = f"{base}_{n}"
            n += 1
        self._hypotheses[key] = name
        self._taken.add(name)
        return name

    def binder(self, prefix: str = "x") -> str:
        """A fresh binder for rule-level abstractions."""
        self._counter += 1
        return f"{prefix}{self._counter}"


# --------------------------------------------------------------------------
# parsing

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")


class _Scanner:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def ident(self) -> str | None:
        self.peek()
        m = _IDENT_RE.match(self.text, self.pos)
        if m is None:
            return None
        self.pos = m.end()
        return m.group()

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise TermError(f"expected {ch!r}", self.pos)
        self.take()


def parse_term(text: str) -> LambdaTerm:
    """Parse term text; unbound identifiers become constants."""
    sc = _Scanner(text)
    t = _parse_term(sc, frozenset())
    if sc.peek():
        raise TermError(f"unexpected {sc.peek()!r}", sc.pos)
    return t


def _parse_term(sc: _Scanner, bound: frozenset[str]) -> LambdaTerm:
    if sc.peek() == "\\":
        sc.take()
        var = sc.ident()
        if var is None:
            raise TermError("expected a variable name", sc.pos)
        sc.expect(".")
        body = _parse_term(sc, bound | {var})
        return Abs(var, body)
    return _parse_app(sc, bound)


def _parse_app(sc: _Scanner, bound: frozenset[str]) -> LambdaTerm:
    t = _parse_atom(sc, bound)
    while _at_atom(sc):
        t = App(t, _parse_atom(sc, bound))
    return t


def _at_atom(sc: _Scanner) -> bool:
    ch = sc.peek()
    return ch == "(" or ch == "<" or bool(_IDENT_RE.match(ch))


def _parse_atom(sc: _Scanner, bound: frozenset[str]) -> LambdaTerm:
    ch = sc.peek()
    if ch == "(":
        sc.take()
        t = _parse_term(sc, bound)
        sc.expect(")")
        return t
    if ch == "<":
        sc.take()
        left = _parse_term(sc, bound)
        sc.expect(",")
        right = _parse_term(sc, bound)
        sc.expect(">")
        return Pair(left, right)
    name = sc.ident()
    if name is None:
        raise TermError("expected a term", sc.pos)
    if name in ("pi1", "pi2"):
        return Proj(1 if name == "pi1" else 2, _parse_atom(sc, bound))
    return Var(name) if name in bound else Const(name)


# --------------------------------------------------------------------------
# printing

def print_term(t: LambdaTerm) -> str:
    match t:
        case Var(name) | Const(name):
            return name
        case Abs(var, body):
            return f"\\{var}.{print_term(body)}"
        case App(fun, arg):
            return f"{_fun_text(fun)} {_atom_text(arg)}"
        case Pair(left, right):
            return f"<{print_term(left)},{print_term(right)}>"
        case Proj(index, body):
            return f"pi{index} {_atom_text(body)}"
    raise TypeError(f"not a term: {t!r}")


def _fun_text(t: LambdaTerm) -> str:
    if isinstance(t, (App, Var, Const, Pair, Proj)):
        return print_term(t)
    return f"({print_term(t)})"


def _atom_text(t: LambdaTerm) -> str:
    if isinstance(t, (Var, Const, Pair)):
        return print_term(t)
    return f"({print_term(t)})"
