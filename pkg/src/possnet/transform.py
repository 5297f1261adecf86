"""Compile a network into per-node weighted knowledge bases and back."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Optional

from .kb import AverageKB, ScopeError, WeightedFormula, kb_necessity_distribution, \
    kb_possibility_distribution
from .logic import Clause, Literal, conjunction
from .measures import TOLERANCE, complement, guaranteed_degree, possibility_of
from .network import (
    ConditionalCell,
    InvalidNetworkError,
    NetworkNode,
    PossibilisticNetwork,
    ValidationReport,
    Violation,
    instantiation_label,
    require_valid,
    structural_issues,
    validate,
)


@dataclass(frozen=True)
class LocalKB:
    variable: str
    parents: tuple[str, ...]
    kb: AverageKB
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "parents", tuple(self.parents))
        expected = (self.variable,) + self.parents
        if set(self.kb.scope) != set(expected):
            raise ScopeError(f"local base for {self.variable} must range over "
                             f"{', '.join(expected)}, got {', '.join(self.kb.scope)}")
        for f in self.kb.formulas:
            if self.variable not in f.clause.variables():
                raise ScopeError(f"clause {f.clause} in the base of {self.variable} "
                                 f"does not mention {self.variable.lower()}")


@dataclass(frozen=True)
class LocalKBSet:
    """One local base per node plus the shared DAG (node order, parent lists)."""

    bases: tuple[LocalKB, ...]
    name: str = "network"

    def __post_init__(self):
        object.__setattr__(self, "bases", tuple(self.bases))

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(b.variable for b in self.bases)

    def __getitem__(self, name: str) -> LocalKB:
        for b in self.bases:
            if b.variable == name:
                return b
        raise KeyError(name)

    def __iter__(self) -> Iterator[LocalKB]:
        return iter(self.bases)

    def formula_count(self) -> int:
        return sum(len(b.kb) for b in self.bases)


def _compile_node(node: NetworkNode) -> LocalKB:
    scope = (node.variable,) + node.parents
    formulas = []
    for inst in node.instantiations():
        for value in (True, False):
            cell = node.cell(value, inst)
            if cell.pi >= 1.0:
                continue
            # !v | !u : falsified exactly by the world v & u
            lits = [Literal(node.variable, not value)]
            lits += [Literal(p, not pv) for p, pv in zip(node.parents, inst)]
            formulas.append(WeightedFormula(Clause(lits), complement(cell.pi), complement(cell.n)))
    return LocalKB(node.variable, node.parents, AverageKB(scope, tuple(formulas)))


def network_to_kb(net: PossibilisticNetwork, strict: bool = False) -> LocalKBSet:
    """One clause ``!v | !u`` per cell with ``pi(v|u) < 1``, weighted ``(1-pi, 1-n)``.

    ``else`` rows expand into one clause per concrete instantiation they cover.
    Structural defects raise; degree-constraint violations only raise when
    ``strict`` is set.
    """
    require_valid(net, strict)
    return LocalKBSet(tuple(_compile_node(node) for node in net.nodes), net.name)


def _recover_node(local: LocalKB) -> NetworkNode:
    node_order = (local.variable,) + local.parents
    pi_dist = kb_possibility_distribution(local.kb, node_order)
    n_dist = kb_necessity_distribution(local.kb, node_order)
    cells = []
    shape = NetworkNode(local.variable, local.parents, ())
    for inst in shape.instantiations():
        for value in (True, False):
            lits = [Literal(local.variable, value)]
            lits += [Literal(p, pv) for p, pv in zip(local.parents, inst)]
            event = conjunction(lits)
            cells.append(ConditionalCell(value, inst, possibility_of(pi_dist, event),
                                         guaranteed_degree(n_dist, event)))
    return NetworkNode(local.variable, local.parents, tuple(cells))


def kb_to_network(kbs: LocalKBSet, strict: bool = False) -> PossibilisticNetwork:
    """Rebuild fully explicit conditional tables from the local bases.

    Each cell is read off the node's own base at the single local world
    ``v & u``. A DAG defect raises :class:`InvalidNetworkError`. Tables that
    break normalization or necessity exclusivity are returned as recovered,
    so ``validate`` reports them; ``strict=True`` raises instead.
    """
    issues = structural_issues([NetworkNode(b.variable, b.parents, ()) for b in kbs.bases])
    issues = [i for i in issues if i.kind != Violation.NON_TOTAL]
    if issues:
        raise InvalidNetworkError(ValidationReport(tuple(issues)), "local bases do not form a DAG")
    net = PossibilisticNetwork(tuple(_recover_node(b) for b in kbs.bases), kbs.name)
    require_valid(net, strict)
    return net


class CellComparison(NamedTuple):
    node: str
    value: bool
    instantiation: tuple
    label: str
    original: tuple[float, float]
    recovered: tuple[float, float]

    @property
    def pi_match(self) -> bool:
        return abs(self.original[0] - self.recovered[0]) <= TOLERANCE

    @property
    def n_match(self) -> bool:
        return abs(self.original[1] - self.recovered[1]) <= TOLERANCE


@dataclass(frozen=True)
class RoundtripReport:
    cells: tuple[CellComparison, ...]
    recovered: PossibilisticNetwork
    recovered_validation: ValidationReport

    @property
    def pi_all_match(self) -> bool:
        return all(c.pi_match for c in self.cells)

    @property
    def n_all_match(self) -> bool:
        return all(c.n_match for c in self.cells)

    def n_divergences(self) -> list[CellComparison]:
        return [c for c in self.cells if not c.n_match]

    def uninformative_cells(self) -> list[CellComparison]:
        """Cells with ``pi = 1``: compilation keeps no trace of their necessity."""
        return [c for c in self.cells if c.original[0] >= 1.0]

    def format(self) -> str:
        out = []
        for c in self.cells:
            status = "ok" if c.pi_match and c.n_match else (
                "n-diverges" if c.pi_match else "PI-MISMATCH")
            out.append(f"{c.label:<24} pi {_g(c.original[0])} -> {_g(c.recovered[0])}"
                       f"  n {_g(c.original[1])} -> {_g(c.recovered[1])}  {status}")
        out.append(f"cells: {len(self.cells)}  pi matches: "
                   f"{sum(c.pi_match for c in self.cells)}  n matches: "
                   f"{sum(c.n_match for c in self.cells)}  n divergences: "
                   f"{len(self.n_divergences())}")
        return "\n".join(out)


def _g(x: float) -> str:
    return f"{x:.6g}"


def roundtrip_report(net: PossibilisticNetwork,
                     recovered: Optional[PossibilisticNetwork] = None) -> RoundtripReport:
    if recovered is None:
        recovered = kb_to_network(network_to_kb(net))
    cells = []
    for node in net.nodes:
        back = recovered.node(node.variable)
        for inst in node.instantiations():
            for value in (True, False):
                old = node.cell(value, inst)
                new = back.cell(value, inst)
                lit = ("" if value else "!") + node.variable.lower()
                label = f"{lit} | {instantiation_label(node.parents, inst) or '-'}"
                cells.append(CellComparison(node.variable, value, inst, label,
                                            (old.pi, old.n), (new.pi, new.n)))
    return RoundtripReport(tuple(cells), recovered, validate(recovered))

