"""Formula algebra for multimodal categorial grammar.

A formula is an immutable tree of atoms, directional slashes, products,
and the unary diamond/box pair.  Connectives carry a mode index
(unannotated "main" mode, mode 0, or mode 1) that selects which
structural options apply when the parser combines constituents.

Text syntax (whitespace insignificant)::

    formula := slash
    slash   := prod (("/" | "\\") mode? prod)?
    prod    := unary ("*" mode? unary)?
    unary   := ("dia" | "box") mode? "(" formula ")" | atom | "(" formula ")"
    mode    := "0" | "1"
    atom    := lowercase ident ("_" ident)?

Binary operators are non-associative: chains such as ``a/b/c`` are
rejected and must be parenthesized explicitly.  The mode digit attaches
to the operator token (``\\1``, ``/0``, ``*0``); no digit means main
mode.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterator, NamedTuple


class FormulaError(ValueError):
    """Malformed formula text; ``offset`` is the character position."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class Mode(enum.IntEnum):
    """Connective mode; MAIN is the unannotated mode."""

    MAIN = 0
    M0 = 1
    M1 = 2

    @property
    def digit(self) -> str:
        return ("", "0", "1")[int(self)]


class Dir(enum.Enum):
    FORWARD = "/"
    BACKWARD = "\\"


class Formula:
    """Base class for formula nodes; all nodes are frozen and hashable."""

    __slots__ = ()

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    name: str
    feature: str | None = None


@dataclass(frozen=True, slots=True)
class Slash(Formula):
    direction: Dir
    mode: Mode
    result: Formula
    argument: Formula


@dataclass(frozen=True, slots=True)
class Product(Formula):
    mode: Mode
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Dia(Formula):
    mode: Mode
    body: Formula


@dataclass(frozen=True, slots=True)
class Box(Formula):
    mode: Mode
    body: Formula


def fwd(result: Formula, argument: Formula, mode: Mode = Mode.MAIN) -> Slash:
    """A/B: looks right for the argument."""
    return Slash(Dir.FORWARD, mode, result, argument)


def bwd(result: Formula, argument: Formula, mode: Mode = Mode.MAIN) -> Slash:
    """B\\A: looks left for the argument."""
    return Slash(Dir.BACKWARD, mode, result, argument)


def dia_box(mode: Mode, body: Formula) -> Dia:
    """The composite dia/box decoration the extraction rules match."""
    return Dia(mode, Box(mode, body))


# --------------------------------------------------------------------------
# parsing

_ATOM_RE = re.compile(r"[a-z][a-z0-9]*(?:_[a-z][a-z0-9]*)?")
_UNARY_RE = re.compile(r"(dia|box)([0-9]?)\Z")

_MODES = {"": Mode.MAIN, "0": Mode.M0, "1": Mode.M1}


class _Scanner:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def ident(self) -> str | None:
        self.skip_ws()
        m = _ATOM_RE.match(self.text, self.pos)
        if m is None:
            return None
        self.pos = m.end()
        return m.group()

    def mode_digit(self) -> Mode:
        """Optional digit right after an operator; absent means main mode."""
        if self.pos < len(self.text) and self.text[self.pos].isdigit():
            d = self.text[self.pos]
            if d not in ("0", "1"):
                raise FormulaError(f"unknown mode digit {d!r}", self.pos)
            self.pos += 1
            return _MODES[d]
        return Mode.MAIN

    def error(self, message: str) -> FormulaError:
        return FormulaError(message, self.pos)


def parse_formula(text: str) -> Formula:
    """Parse formula text; raises FormulaError with a character offset."""
    sc = _Scanner(text)
    f = _parse_slash(sc)
    sc.skip_ws()
    if sc.pos < len(sc.text):
        raise sc.error(
            f"unexpected {sc.text[sc.pos]!r}; binary operators are "
            "non-associative, parenthesize explicitly"
        )
    return f


def _parse_slash(sc: _Scanner) -> Formula:
    left = _parse_prod(sc)
    ch = sc.peek()
    if ch in ("/", "\\"):
        sc.take()
        mode = sc.mode_digit()
        right = _parse_prod(sc)
        if ch == "/":
            return Slash(Dir.FORWARD, mode, left, right)
        return Slash(Dir.BACKWARD, mode, right, left)
    return left


def _parse_prod(sc: _Scanner) -> Formula:
    left = _parse_unary(sc)
    if sc.peek() == "*":
        sc.take()
        mode = sc.mode_digit()
        right = _parse_unary(sc)
        return Product(mode, left, right)
    return left


def _parse_unary(sc: _Scanner) -> Formula:
    ch = sc.peek()
    if ch == "(":
        open_pos = sc.pos
        sc.take()
        f = _parse_slash(sc)
        if sc.peek() != ")":
            raise FormulaError("unbalanced parentheses", open_pos)
        sc.take()
        return f
    name = sc.ident()
    if name is None:
        raise sc.error("expected a formula")
    m = _UNARY_RE.match(name)
    if m is not None and sc.peek() == "(":
        kind, digit = m.groups()
        if digit not in ("", "0", "1"):
            raise FormulaError(f"unknown mode digit {digit!r}", sc.pos - 1)
        open_pos = sc.pos
        sc.take()
        body = _parse_slash(sc)
        if sc.peek() != ")":
            raise FormulaError("unbalanced parentheses", open_pos)
        sc.take()
        ctor = Dia if kind == "dia" else Box
        return ctor(_MODES[digit], body)
    if "_" in name:
        base, feature = name.split("_", 1)
        return Atom(base, feature)
    return Atom(name)


# --------------------------------------------------------------------------
# printing

_SLASH_LEVEL, _PROD_LEVEL, _UNARY_LEVEL = 0, 1, 2


def print_formula(f: Formula) -> str:
    """Canonical text with minimal parentheses; inverse of parse_formula."""
    return _fmt(f, _SLASH_LEVEL)


def _fmt(f: Formula, need: int) -> str:
    if isinstance(f, Atom):
        text = f.name if f.feature is None else f"{f.name}_{f.feature}"
        level = _UNARY_LEVEL
    elif isinstance(f, Dia):
        text = f"dia{f.mode.digit}({_fmt(f.body, _SLASH_LEVEL)})"
        level = _UNARY_LEVEL
    elif isinstance(f, Box):
        text = f"box{f.mode.digit}({_fmt(f.body, _SLASH_LEVEL)})"
        level = _UNARY_LEVEL
    elif isinstance(f, Product):
        text = (
            f"{_fmt(f.left, _UNARY_LEVEL)}*{f.mode.digit}"
            f"{_fmt(f.right, _UNARY_LEVEL)}"
        )
        level = _PROD_LEVEL
    elif isinstance(f, Slash):
        op = f.direction.value + f.mode.digit
        if f.direction is Dir.FORWARD:
            text = f"{_fmt(f.result, _PROD_LEVEL)}{op}{_fmt(f.argument, _PROD_LEVEL)}"
        else:
            text = f"{_fmt(f.argument, _PROD_LEVEL)}{op}{_fmt(f.result, _PROD_LEVEL)}"
        level = _SLASH_LEVEL
    else:  # pragma: no cover
        raise TypeError(f"not a formula: {f!r}")
    return f"({text})" if level < need else text


# --------------------------------------------------------------------------
# extraction licensors

RIGHTWARD = "rightward"
LEFTWARD = "leftward"


class LicensorMatch(NamedTuple):
    mode: Mode
    y: Formula
    b: Formula
    x: Formula
    orientation: str


def match_extraction_licensor(f: Formula) -> LicensorMatch | None:
    """Decompose an extraction licensor, if ``f`` has that shape.

    Rightward licensors look like X/(Y/dia(box(B))) at mode 0 or 1 and
    trigger hypothesis introduction to their right; the leftward variant
    (Y/dia0(box0(B)))\\X exists at mode 0 only.
    """
    match f:
        case Slash(
            Dir.FORWARD,
            Mode.MAIN,
            x,
            Slash(Dir.FORWARD, Mode.MAIN, y, Dia(dm, Box(bm, b))),
        ) if dm == bm and dm in (Mode.M0, Mode.M1):
            return LicensorMatch(dm, y, b, x, RIGHTWARD)
        case Slash(
            Dir.BACKWARD,
            Mode.MAIN,
            x,
            Slash(Dir.FORWARD, Mode.MAIN, y, Dia(Mode.M0, Box(Mode.M0, b))),
        ):
            return LicensorMatch(Mode.M0, y, b, x, LEFTWARD)
    return None


# --------------------------------------------------------------------------
# structural walks used by the trigger scanner

def subformulas(f: Formula) -> Iterator[Formula]:
    """All subformulas of ``f`` in preorder, including ``f`` itself."""
    yield f
    if isinstance(f, Slash):
        yield from subformulas(f.result)
        yield from subformulas(f.argument)
    elif isinstance(f, Product):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, (Dia, Box)):
        yield from subformulas(f.body)


def argument_subformulas(f: Formula) -> Iterator[Formula]:
    """Subformulas that occupy the argument position of some slash."""
    if isinstance(f, Slash):
        yield f.argument
        yield from argument_subformulas(f.result)
        yield from argument_subformulas(f.argument)
    elif isinstance(f, Product):
        yield from argument_subformulas(f.left)
        yield from argument_subformulas(f.right)
    elif isinstance(f, (Dia, Box)):
        yield from argument_subformulas(f.body)
