"""Propositional substrate: variables, literals, formulas, clauses and worlds.

All variables are binary. A variable ``A`` has the positive literal ``a`` and
the negative literal ``!a``; literals are always written with the lowercase
form of the variable name.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence, Union

#: Default cap on the number of variables for exhaustive world enumeration.
ENUMERATION_LIMIT = 20

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
RESERVED = frozenset({"else", "true", "false"})


class LogicError(ValueError):
    """Base class for errors raised by the propositional layer."""


class UnknownVariableError(LogicError):
    pass


class TautologyError(LogicError):
    """A clause containing both polarities of one variable."""


class EnumerationLimitError(LogicError):
    """Model too large for exhaustive semantics."""


@dataclass(frozen=True)
class Variable:
    name: str

    def __post_init__(self):
        if not _NAME_RE.match(self.name):
            raise LogicError(f"invalid variable name {self.name!r}")
        if self.name.lower() in RESERVED:
            raise LogicError(f"{self.name!r} is a reserved word")

    @property
    def positive_label(self) -> str:
        return self.name.lower()

    @property
    def negative_label(self) -> str:
        return "!" + self.name.lower()

    def __str__(self):
        return self.name


# -- formulas ---------------------------------------------------------------


class Formula:
    """Base class of the formula tree. Subclasses are frozen dataclasses."""

    def __invert__(self) -> Formula:
        return Not(self)

    def __and__(self, other: Formula) -> Formula:
        return And((self, other))

    def __or__(self, other: Formula) -> Formula:
        return Or((self, other))

    def variables(self) -> frozenset[str]:
        raise NotImplementedError


@dataclass(frozen=True)
class Top(Formula):
    def variables(self):
        return frozenset()

    def __str__(self):
        return "true"


@dataclass(frozen=True)
class Bottom(Formula):
    def variables(self):
        return frozenset()

    def __str__(self):
        return "false"


TOP = Top()
BOTTOM = Bottom()


@dataclass(frozen=True, order=True)
class Literal(Formula):
    variable: str
    positive: bool = True

    def negate(self) -> Literal:
        return Literal(self.variable, not self.positive)

    def variables(self):
        return frozenset((self.variable,))

    @property
    def label(self) -> str:
        base = self.variable.lower()
        return base if self.positive else "!" + base

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula

    def variables(self):
        return self.operand.variables()

    def __str__(self):
        if isinstance(self.operand, (Literal, Top, Bottom, Not)):
            return f"!{self.operand}"
        return f"!({self.operand})"


@dataclass(frozen=True)
class And(Formula):
    operands: tuple[Formula, ...]

    def variables(self):
        return frozenset().union(*(f.variables() for f in self.operands))

    def __str__(self):
        return " & ".join(_wrap(f, Or) for f in self.operands) or "true"


@dataclass(frozen=True)
class Or(Formula):
    operands: tuple[Formula, ...]

    def variables(self):
        return frozenset().union(*(f.variables() for f in self.operands))

    def __str__(self):
        return " | ".join(_wrap(f, And) for f in self.operands) or "false"


def _wrap(f: Formula, looser: type) -> str:
    return f"({f})" if isinstance(f, (looser, Clause)) else str(f)


def conjunction(formulas: Iterable[Formula]) -> Formula:
    parts = tuple(formulas)
    if not parts:
        return TOP
    return parts[0] if len(parts) == 1 else And(parts)


@dataclass(frozen=True, init=False)
class Clause(Formula):
    """A non-empty disjunction of literals over distinct variables.

    Duplicate literals collapse; a clause holding ``x`` and ``!x`` raises
    :class:`TautologyError`.
    """

    literals: frozenset[Literal]

    def __init__(self, literals: Iterable[Literal]):
        lits = frozenset(literals)
        if not lits:
            raise LogicError("a clause needs at least one literal")
        seen: dict[str, bool] = {}
        for lit in lits:
            if seen.get(lit.variable, lit.positive) != lit.positive:
                raise TautologyError(
                    f"clause contains both {lit.variable.lower()} and !{lit.variable.lower()}"
                )
            seen[lit.variable] = lit.positive
        object.__setattr__(self, "literals", lits)

    def variables(self):
        return frozenset(lit.variable for lit in self.literals)

    def sorted_literals(self) -> list[Literal]:
        return sorted(self.literals, key=lambda lit: (lit.variable, not lit.positive))

    def sort_key(self):
        """Longer clauses first, then lexicographic on literal labels."""
        return (-len(self.literals), [lit.label.lstrip("!") + ("1" if lit.positive else "0")
                                      for lit in self.sorted_literals()])

    def ordered(self, order: Sequence[str]) -> list[Literal]:
        rank = {name: i for i, name in enumerate(order)}
        return sorted(self.literals, key=lambda lit: rank.get(lit.variable, len(rank)))

    def __str__(self):
        return " | ".join(lit.label for lit in self.sorted_literals())


# -- worlds -----------------------------------------------------------------


@dataclass(frozen=True)
class World(Mapping[str, bool]):
    """A total truth assignment over an ordered tuple of variable names."""

    names: tuple[str, ...]
    values: tuple[bool, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(self.names) != len(self.values):
            raise LogicError("world needs exactly one value per variable")
        index = {name: i for i, name in enumerate(self.names)}
        if len(index) != len(self.names):
            raise LogicError("duplicate variable in world")
        object.__setattr__(self, "_index", index)

    @classmethod
    def of(cls, assignment: Mapping[str, bool]) -> World:
        return cls(tuple(assignment), tuple(bool(v) for v in assignment.values()))

    def __getitem__(self, name: str) -> bool:
        return self.values[self._index[name]]

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __len__(self):
        return len(self.names)

    def restrict(self, names: Sequence[str]) -> World:
        return World(tuple(names), tuple(self[n] for n in names))

    def literals(self) -> list[Literal]:
        return [Literal(n, v) for n, v in zip(self.names, self.values)]

    def __str__(self):
        return ",".join(lit.label for lit in self.literals())


def evaluate(formula: Formula, world: Mapping[str, bool]) -> bool:
    if isinstance(formula, Literal):
        try:
            value = world[formula.variable]
        except KeyError:
            raise UnknownVariableError(f"variable {formula.variable!r} is not assigned") from None
        return value == formula.positive
    if isinstance(formula, Clause):
        return any(evaluate(lit, world) for lit in formula.literals)
    if isinstance(formula, Top):
        return True
    if isinstance(formula, Bottom):
        return False
    if isinstance(formula, Not):
        return not evaluate(formula.operand, world)
    if isinstance(formula, And):
        # evaluate every operand so unknown variables always surface
        return all([evaluate(f, world) for f in formula.operands])
    if isinstance(formula, Or):
        return any([evaluate(f, world) for f in formula.operands])
    raise TypeError(f"not a formula: {formula!r}")


def _names(variables: Iterable[Union[str, Variable]]) -> tuple[str, ...]:
    return tuple(v.name if isinstance(v, Variable) else v for v in variables)


def enumerate_worlds(variables: Iterable[Union[str, Variable]],
                     limit: int = ENUMERATION_LIMIT) -> list[World]:
    """All ``2**n`` worlds, true before false, first variable varying slowest.

    For variables A, B, C, D this gives (a,b,c,d), (a,b,c,!d), ..., (!a,!b,!c,!d).
    """
    names = _names(variables)
    if not names:
        raise LogicError("at least one variable is required")
    if len(set(names)) != len(names):
        raise LogicError("duplicate variable")
    if len(names) > limit:
        raise EnumerationLimitError(
            f"{len(names)} variables exceed the enumeration limit of {limit}"
        )
    return [World(names, values) for values in itertools.product((True, False), repeat=len(names))]


def world_index(world: World, names: Sequence[str]) -> int:
    """Position of ``world`` in ``enumerate_worlds(names)``."""
    idx = 0
    for name in names:
        idx = (idx << 1) | (0 if world[name] else 1)
    return idx


def check_scope(formula: Formula, names: Iterable[str]) -> None:
    unknown = formula.variables() - set(names)
    if unknown:
        raise UnknownVariableError(f"unknown variable(s): {', '.join(sorted(unknown))}")


def models(formula: Formula, variables: Iterable[Union[str, Variable]]) -> list[World]:
    names = _names(variables)
    check_scope(formula, names)
    return [w for w in enumerate_worlds(names) if evaluate(formula, w)]


# -- formula parsing --------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[!&|()~]))")


def parse_formula(text: str, variables: Iterable[Union[str, Variable]] | None = None) -> Formula:
    """Parse an expression built from literals, ``!``, ``&``, ``|`` and parentheses.

    Literals are lowercase variable names. ``true``/``false`` are the constants.
    When ``variables`` is given, literals are resolved against it and unknown
    names raise :class:`UnknownVariableError`.
    """
    lookup = None
    if variables is not None:
        lookup = {n.lower(): n for n in _names(variables)}
    tokens: list[str] = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise LogicError(f"unexpected character {text[pos:].strip()[:1]!r} at offset {pos}")
        tokens.append(m.group("name") or m.group("op"))
        pos = m.end()
    parser = _FormulaParser(tokens, lookup)
    result = parser.disjunction()
    if parser.pos != len(tokens):
        raise LogicError(f"unexpected token {tokens[parser.pos]!r}")
    return result


class _FormulaParser:
    def __init__(self, tokens, lookup):
        self.tokens = tokens
        self.pos = 0
        self.lookup = lookup

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise LogicError("unexpected end of formula")
        self.pos += 1
        return tok

    def disjunction(self):
        parts = [self.conjunction()]
        while self.peek() == "|":
            self.take()
            parts.append(self.conjunction())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conjunction(self):
        parts = [self.unary()]
        while self.peek() == "&":
            self.take()
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def unary(self):
        tok = self.take()
        if tok in ("!", "~"):
            inner = self.unary()
            if isinstance(inner, Literal):
                return inner.negate()
            return Not(inner)
        if tok == "(":
            inner = self.disjunction()
            if self.take() != ")":
                raise LogicError("expected ')'")
            return inner
        if tok in ("&", "|", ")"):
            raise LogicError(f"unexpected token {tok!r}")
        if tok == "true":
            return TOP
        if tok == "false":
            return BOTTOM
        if self.lookup is None:
            return Literal(tok.upper())
        try:
            return Literal(self.lookup[tok.lower()])
        except KeyError:
            raise UnknownVariableError(f"unknown variable {tok!r}") from None
