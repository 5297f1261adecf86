"""Possibilistic-necessity networks over binary variables.

Every node carries, for each child value and parent instantiation, a
possibility degree ``pi`` and an independently elicited necessity degree
``n``. The joint degree of a world is the min of the local ``pi`` values,
the min of the local ``n`` values, and their product (the "average").
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Optional, Sequence, Union

from .logic import (
    ENUMERATION_LIMIT,
    Formula,
    LogicError,
    World,
    check_scope,
    enumerate_worlds,
)
from .measures import (
    AVERAGE,
    NECESSITY,
    POSSIBILITY,
    TOLERANCE,
    WorldDistribution,
    check_degree,
    guaranteed_degree,
    necessity_by_duality,
    possibility_of,
)

ELSE = "else"

Instantiation = Union[tuple, str]


def instantiation_label(parents: Sequence[str], inst: Instantiation) -> str:
    if inst == ELSE:
        return ELSE
    return " ".join(n.lower() if v else "!" + n.lower() for n, v in zip(parents, inst))


@dataclass(frozen=True)
class ConditionalCell:
    """Degrees of one child value under one parent instantiation.

    ``parents`` is a tuple of booleans aligned with the node's parent list,
    or :data:`ELSE` for the residual row.
    """

    value: bool
    parents: Instantiation
    pi: float
    n: float

    def __post_init__(self):
        if self.parents != ELSE:
            object.__setattr__(self, "parents", tuple(bool(v) for v in self.parents))
        object.__setattr__(self, "pi", check_degree(self.pi, "pi"))
        object.__setattr__(self, "n", check_degree(self.n, "n"))


@dataclass(frozen=True)
class NetworkNode:
    variable: str
    parents: tuple[str, ...]
    cells: tuple[ConditionalCell, ...]
    _lookup: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "parents", tuple(self.parents))
        object.__setattr__(self, "cells", tuple(self.cells))
        lookup = {}
        for cell in self.cells:
            lookup.setdefault((cell.value, cell.parents), cell)
        object.__setattr__(self, "_lookup", lookup)

    def instantiations(self) -> list[tuple[bool, ...]]:
        """Every concrete parent assignment, in world order (true first)."""
        return list(itertools.product((True, False), repeat=len(self.parents)))

    def cell(self, value: bool, parent_values: tuple[bool, ...]):
        """The cell for ``value`` under a concrete instantiation; explicit rows win over ``else``."""
        found = self._lookup.get((value, tuple(parent_values)))
        if found is None:
            found = self._lookup.get((value, ELSE))
        if found is None:
            raise LookupError(
                f"node {self.variable}: no cell for {'' if value else '!'}{self.variable.lower()}"
                f" | {instantiation_label(self.parents, parent_values) or '-'}")
        return found

    def cell_for(self, world):
        return self.cell(world[self.variable], tuple(world[p] for p in self.parents))

    def explicit_instantiations(self) -> set:
        return {c.parents for c in self.cells if c.parents != ELSE}


@dataclass(frozen=True)
class PossibilisticNetwork:
    nodes: tuple[NetworkNode, ...]
    name: str = "network"

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(node.variable for node in self.nodes)

    def node(self, name: str) -> NetworkNode:
        for node in self.nodes:
            if node.variable == name:
                return node
        raise KeyError(name)

    def worlds(self, limit: int = ENUMERATION_LIMIT) -> list[World]:
        return enumerate_worlds(self.variables, limit)


# -- validation -------------------------------------------------------------


class Violation(str, Enum):
    CYCLE = "cycle"
    DANGLING_PARENT = "dangling-parent"
    DUPLICATE_NODE = "duplicate-node"
    OVERLAP = "overlapping-instantiations"
    NON_TOTAL = "non-total-table"
    BAD_INSTANTIATION = "bad-instantiation"
    NORMALIZATION = "normalization"
    NECESSITY_EXCLUSIVITY = "necessity-exclusivity"


STRUCTURAL = frozenset({Violation.CYCLE, Violation.DANGLING_PARENT, Violation.DUPLICATE_NODE,
                        Violation.OVERLAP, Violation.NON_TOTAL, Violation.BAD_INSTANTIATION})


class Issue(NamedTuple):
    node: Optional[str]
    instantiation: Optional[str]
    kind: Violation
    message: str

    def __str__(self):
        where = self.node or "-"
        if self.instantiation is not None:
            where += f" | {self.instantiation or '-'}"
        return f"{where}: {self.kind.value}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[Issue, ...] = ()

    @property
    def is_valid(self) -> bool:
        return not self.issues

    def __bool__(self):
        return self.is_valid

    def of_kind(self, *kinds: Violation) -> list[Issue]:
        return [i for i in self.issues if i.kind in kinds]

    def excluding(self, *kinds: Violation) -> ValidationReport:
        return ValidationReport(tuple(i for i in self.issues if i.kind not in kinds))

    def __str__(self):
        return "\n".join(str(i) for i in self.issues) or "valid"


class InvalidNetworkError(LogicError):
    def __init__(self, report: ValidationReport, context: str = "invalid network"):
        self.report = report
        super().__init__(f"{context}:\n{report}")


def _find_cycle(adjacency: dict[str, tuple[str, ...]]) -> Optional[list[str]]:
    """Return one cycle in the parent graph as a list of names, or None."""
    WHITE, GREY, BLACK = 0, 1, 2
    colour = {n: WHITE for n in adjacency}
    stack: list[str] = []

    def visit(n):
        colour[n] = GREY
        stack.append(n)
        for p in adjacency[n]:
            if p not in colour:
                continue
            if colour[p] == GREY:
                return stack[stack.index(p):] + [p]
            if colour[p] == WHITE:
                found = visit(p)
                if found:
                    return found
        stack.pop()
        colour[n] = BLACK
        return None

    for n in adjacency:
        if colour[n] == WHITE:
            found = visit(n)
            if found:
                return found
    return None


def structural_issues(nodes) -> list[Issue]:
    """Graph and table-shape checks shared by crisp and fuzzy networks."""
    issues = []
    names = [node.variable for node in nodes]
    seen = set()
    for n in names:
        if n.lower() in seen:
            issues.append(Issue(n, None, Violation.DUPLICATE_NODE, "variable declared twice"))
        seen.add(n.lower())
    known = set(names)
    for node in nodes:
        for p in node.parents:
            if p not in known:
                issues.append(Issue(node.variable, None, Violation.DANGLING_PARENT,
                                    f"parent {p} is not a declared variable"))
        if len(set(node.parents)) != len(node.parents) or node.variable in node.parents:
            issues.append(Issue(node.variable, None, Violation.CYCLE,
                                "repeated parent or self-loop"))
    cycle = _find_cycle({node.variable: tuple(node.parents) for node in nodes})
    if cycle:
        issues.append(Issue(cycle[0], None, Violation.CYCLE, " -> ".join(reversed(cycle))))

    for node in nodes:
        k = len(node.parents)
        counts: dict = {}
        for cell in node.cells:
            if cell.parents != ELSE and len(cell.parents) != k:
                issues.append(Issue(node.variable, str(cell.parents), Violation.BAD_INSTANTIATION,
                                    f"instantiation has {len(cell.parents)} values for {k} parents"))
                continue
            key = (cell.value, cell.parents)
            counts[key] = counts.get(key, 0) + 1
        for (value, inst), count in counts.items():
            if count > 1:
                issues.append(Issue(node.variable, instantiation_label(node.parents, inst),
                                    Violation.OVERLAP,
                                    f"{count} rows for {'' if value else '!'}"
                                    f"{node.variable.lower()}"))
        for inst in node.instantiations():
            for value in (True, False):
                if (value, inst) not in counts and (value, ELSE) not in counts:
                    issues.append(Issue(node.variable, instantiation_label(node.parents, inst),
                                        Violation.NON_TOTAL,
                                        f"no degree for {'' if value else '!'}"
                                        f"{node.variable.lower()}"))
    return issues


def _degree_issues(node, pi_of, n_of) -> list[Issue]:
    issues = []
    for inst in node.instantiations():
        try:
            pos, neg = node.cell(True, inst), node.cell(False, inst)
        except LookupError:
            continue
        label = instantiation_label(node.parents, inst)
        hi = max(pi_of(pos), pi_of(neg))
        if hi < 1.0 - TOLERANCE:
            issues.append(Issue(node.variable, label, Violation.NORMALIZATION,
                                f"max possibility is {hi:g}, not 1"))
        if n_of is None:
            continue
        n_pos, n_neg = n_of(pos), n_of(neg)
        for fully, other, lit in ((n_pos, n_neg, node.variable.lower()),
                                  (n_neg, n_pos, "!" + node.variable.lower())):
            if fully >= 1.0 - TOLERANCE and other > TOLERANCE:
                issues.append(Issue(node.variable, label, Violation.NECESSITY_EXCLUSIVITY,
                                    f"N({lit}) = 1 but the complementary necessity is {other:g}"))
    return issues


def validate(net: PossibilisticNetwork) -> ValidationReport:
    issues = structural_issues(net.nodes)
    for node in net.nodes:
        issues.extend(_degree_issues(node, lambda c: c.pi, lambda c: c.n))
    return ValidationReport(tuple(issues))


def validate_degrees(nodes, necessity=None) -> list[Issue]:
    """Normalization (and optionally necessity-exclusivity) checks for duck-typed nodes."""
    issues = []
    for node in nodes:
        issues.extend(_degree_issues(node, lambda c: c.pi, necessity))
    return issues


def require_valid(net: PossibilisticNetwork, strict: bool = False) -> ValidationReport:
    """Raise on structural defects (or on any issue when ``strict``); return the report.

    Normalization and necessity-exclusivity issues do not stop computation;
    they stay visible in the returned report.
    """
    report = validate(net)
    blocking = report if strict else ValidationReport(tuple(report.of_kind(*STRUCTURAL)))
    if not blocking.is_valid:
        raise InvalidNetworkError(blocking, f"network {net.name} is invalid")
    return report


# -- chain rule ---------------------------------------------------------------


class JointDegrees(NamedTuple):
    min_pi: float
    min_n: float
    avg: float


def local_degrees(net: PossibilisticNetwork, world, node: Union[str, NetworkNode]
                  ) -> tuple[float, float]:
    if isinstance(node, str):
        node = net.node(node)
    cell = node.cell_for(world)
    return cell.pi, cell.n


def joint_average(net: PossibilisticNetwork, world) -> JointDegrees:
    cells = [node.cell_for(world) for node in net.nodes]
    min_pi = min(c.pi for c in cells)
    min_n = min(c.n for c in cells)
    return JointDegrees(min_pi, min_n, min_pi * min_n)


@dataclass(frozen=True)
class JointTable:
    possibility: WorldDistribution
    necessity: WorldDistribution
    average: WorldDistribution

    @property
    def names(self):
        return self.possibility.names

    def rows(self):
        for w, p, n, a in zip(self.possibility.worlds(), self.possibility.values,
                              self.necessity.values, self.average.values):
            yield w, JointDegrees(p, n, a)

    @property
    def max_possibility(self) -> float:
        return self.possibility.maximum()


def joint_table(net: PossibilisticNetwork, limit: int = ENUMERATION_LIMIT) -> JointTable:
    require_valid(net)
    worlds = net.worlds(limit)
    rows = [joint_average(net, w) for w in worlds]
    names = net.variables
    return JointTable(
        WorldDistribution(names, tuple(r.min_pi for r in rows), POSSIBILITY),
        WorldDistribution(names, tuple(r.min_n for r in rows), NECESSITY),
        WorldDistribution(names, tuple(r.avg for r in rows), AVERAGE),
    )


MEASURES = ("pi", "ndual", "avg")


def query(net: PossibilisticNetwork, p: Formula, measure: str = "pi",
          table: Optional[JointTable] = None) -> float:
    """Possibility (``pi``), dual necessity (``ndual``) or average (``avg``) of ``p``."""
    check_scope(p, net.variables)
    if measure not in MEASURES and measure != "n-dual":
        raise ValueError(f"unknown measure {measure!r}; expected one of {MEASURES}")
    table = table or joint_table(net)
    if measure == "pi":
        return possibility_of(table.possibility, p)
    if measure in ("ndual", "n-dual"):
        return necessity_by_duality(table.possibility, p)
    return guaranteed_degree(table.average, p)


# -- construction helpers -----------------------------------------------------


def root(variable: str, pi: tuple[float, float], n: tuple[float, float]) -> NetworkNode:
    """A parentless node from ``(pi(v), pi(!v))`` and ``(n(v), n(!v))``."""
    return NetworkNode(variable, (), (ConditionalCell(True, (), pi[0], n[0]),
                                      ConditionalCell(False, (), pi[1], n[1])))
