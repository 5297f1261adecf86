"""Triangular fuzzy necessity degrees and networks whose necessities are fuzzy."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .kb import AverageKB
from .logic import evaluate
from .measures import check_degree, complement
from .network import (
    ELSE,
    ConditionalCell,
    InvalidNetworkError,
    NetworkNode,
    PossibilisticNetwork,
    ValidationReport,
    Violation,
    structural_issues,
    validate,
    validate_degrees,
)


@dataclass(frozen=True, order=True)
class TriangularDegree:
    """Triangular fuzzy number ``lower <= peak <= upper`` inside [0, 1]."""

    lower: float
    peak: float
    upper: float

    def __post_init__(self):
        for name in ("lower", "peak", "upper"):
            object.__setattr__(self, name, check_degree(getattr(self, name), name))
        if not (self.lower <= self.peak <= self.upper):
            raise ValueError(f"triangle needs lower <= peak <= upper, got "
                             f"({self.lower:g}, {self.peak:g}, {self.upper:g})")

    @classmethod
    def crisp(cls, value: float) -> TriangularDegree:
        return cls(value, value, value)

    @property
    def is_crisp(self) -> bool:
        return self.lower == self.peak == self.upper

    @property
    def rising_slope(self) -> Optional[float]:
        return None if self.peak == self.lower else 1.0 / (self.peak - self.lower)

    @property
    def falling_slope(self) -> Optional[float]:
        return None if self.upper == self.peak else 1.0 / (self.upper - self.peak)

    def __str__(self):
        return f"{self.lower:g}/{self.peak:g}/{self.upper:g}"


def membership(t: TriangularDegree, x: float) -> float:
    if x == t.peak:
        return 1.0
    if x < t.peak:
        if x <= t.lower:
            return 0.0
        return (x - t.lower) / (t.peak - t.lower)
    if x >= t.upper:
        return 0.0
    return (t.upper - x) / (t.upper - t.peak)


def defuzzify(t: TriangularDegree) -> float:
    """The peak, i.e. the unique point of full membership."""
    return t.peak


def fuzzy_min(degrees: Iterable[TriangularDegree]) -> TriangularDegree:
    degrees = list(degrees)
    return TriangularDegree(min(d.lower for d in degrees), min(d.peak for d in degrees),
                            min(d.upper for d in degrees))


# -- fuzzy networks ---------------------------------------------------------


@dataclass(frozen=True)
class FuzzyCell:
    value: bool
    parents: object
    pi: float
    n: TriangularDegree
    label: Optional[str] = None

    def __post_init__(self):
        if self.parents != ELSE:
            object.__setattr__(self, "parents", tuple(bool(v) for v in self.parents))
        object.__setattr__(self, "pi", check_degree(self.pi, "pi"))
        if not isinstance(self.n, TriangularDegree):
            object.__setattr__(self, "n", TriangularDegree.crisp(self.n))


class FuzzyNode(NetworkNode):
    """A :class:`NetworkNode` whose cells are :class:`FuzzyCell`."""


@dataclass(frozen=True)
class FuzzyNetwork:
    nodes: tuple[FuzzyNode, ...]
    name: str = "network"

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(node.variable for node in self.nodes)

    def node(self, name: str) -> FuzzyNode:
        for node in self.nodes:
            if node.variable == name:
                return node
        raise KeyError(name)

    @classmethod
    def from_crisp(cls, net: PossibilisticNetwork) -> FuzzyNetwork:
        """Embed a crisp network with every necessity as a degenerate triangle."""
        return cls(tuple(
            FuzzyNode(node.variable, node.parents, tuple(
                FuzzyCell(c.value, c.parents, c.pi, TriangularDegree.crisp(c.n))
                for c in node.cells))
            for node in net.nodes), net.name)


def validate_fuzzy(net: FuzzyNetwork) -> ValidationReport:
    """Structure and possibility normalization; triangles are checked on construction."""
    return ValidationReport(tuple(structural_issues(net.nodes) + validate_degrees(net.nodes)))


def _require_structure(net: FuzzyNetwork) -> None:
    issues = structural_issues(net.nodes)
    if issues:
        raise InvalidNetworkError(ValidationReport(tuple(issues)),
                                  f"fuzzy network {net.name} is invalid")


def fuzzy_local(net: FuzzyNetwork, world, node) -> FuzzyCell:
    if isinstance(node, str):
        node = net.node(node)
    return node.cell_for(world)


def fuzzy_joint(net: FuzzyNetwork, world) -> TriangularDegree:
    """Componentwise min of the triangular necessities selected by ``world``."""
    _require_structure(net)
    return fuzzy_min(node.cell_for(world).n for node in net.nodes)


def defuzzified_network(net: FuzzyNetwork) -> PossibilisticNetwork:
    """Replace every triangular necessity by its peak.

    Possibilities pass through untouched, so their normalization issues are
    left to ``validate``. A structural defect, or a peak combination breaking
    necessity exclusivity, raises :class:`InvalidNetworkError`.
    """
    _require_structure(net)
    crisp = PossibilisticNetwork(tuple(
        NetworkNode(node.variable, node.parents, tuple(
            ConditionalCell(c.value, c.parents, c.pi, defuzzify(c.n)) for c in node.cells))
        for node in net.nodes), net.name)
    report = ValidationReport(tuple(validate(crisp).of_kind(Violation.NECESSITY_EXCLUSIVITY)))
    if not report.is_valid:
        raise InvalidNetworkError(report, f"defuzzified network {net.name} is invalid")
    return crisp


def fuzzy_kb_necessity(kb, world: Mapping[str, bool], weight: str = "beta") -> float:
    """``min_i max(m_i, 1 - w_i)`` with ``m_i = w_i`` on models of clause ``i``, else 0.

    ``kb`` is either an iterable of ``(clause, weight)`` pairs or an
    :class:`AverageKB`, in which case ``weight`` picks ``alpha`` or ``beta``.
    """
    if isinstance(kb, AverageKB):
        if weight not in ("alpha", "beta"):
            raise ValueError("weight must be 'alpha' or 'beta'")
        pairs = [(f.clause, getattr(f, weight)) for f in kb.formulas]
    else:
        pairs = list(kb)
    result = 1.0
    for clause, w in pairs:
        m = w if evaluate(clause, world) else 0.0
        result = min(result, max(m, complement(w)))
    return result
