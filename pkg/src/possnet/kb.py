"""Weighted knowledge bases of clauses carrying a possibility and a necessity weight.

A formula ``(phi, alpha, beta)`` penalises every world falsifying ``phi``:
such a world gets possibility at most ``1 - alpha`` and necessity at most
``1 - beta``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .logic import Clause, LogicError, World, enumerate_worlds, evaluate
from .measures import NECESSITY, POSSIBILITY, WorldDistribution, check_degree, complement


class ScopeError(LogicError):
    pass


@dataclass(frozen=True)
class WeightedFormula:
    clause: Clause
    alpha: float
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", check_degree(self.alpha, "alpha"))
        object.__setattr__(self, "beta", check_degree(self.beta, "beta"))
        if self.alpha <= 0.0:
            raise ValueError("alpha must be positive; zero-weight formulas carry no information")

    @property
    def combined(self) -> float:
        """The single 'average' weight, ``alpha * beta``."""
        return self.alpha * self.beta

    def __str__(self):
        return f"({self.clause}, {self.alpha:g}, {self.beta:g})"


@dataclass(frozen=True)
class AverageKB:
    """A set of weighted clauses over an ordered scope of variables.

    Clauses appearing twice are merged by keeping the larger alpha and the
    larger beta. Formulas are kept in canonical order so equal bases compare
    equal.
    """

    scope: tuple[str, ...]
    formulas: tuple[WeightedFormula, ...] = ()

    def __post_init__(self):
        scope = tuple(self.scope)
        if len(set(scope)) != len(scope):
            raise ScopeError("duplicate variable in scope")
        merged: dict[Clause, WeightedFormula] = {}
        for f in self.formulas:
            outside = f.clause.variables() - set(scope)
            if outside:
                raise ScopeError(f"clause {f.clause} uses variables outside scope: "
                                 f"{', '.join(sorted(outside))}")
            old = merged.get(f.clause)
            if old is not None:
                f = WeightedFormula(f.clause, max(f.alpha, old.alpha), max(f.beta, old.beta))
            merged[f.clause] = f
        ordered = tuple(sorted(merged.values(), key=lambda f: f.clause.sort_key()))
        object.__setattr__(self, "scope", scope)
        object.__setattr__(self, "formulas", ordered)

    def __len__(self):
        return len(self.formulas)

    def __iter__(self):
        return iter(self.formulas)

    def __contains__(self, f: WeightedFormula):
        return f in self.formulas

    def without(self, f: WeightedFormula) -> AverageKB:
        return AverageKB(self.scope, tuple(g for g in self.formulas if g != f))

    def adding(self, f: WeightedFormula) -> AverageKB:
        return AverageKB(self.scope, self.formulas + (f,))


def _penalised(kb: AverageKB, world: World, weight: str) -> float:
    worst = max((getattr(f, weight) for f in kb.formulas if not evaluate(f.clause, world)),
                default=0.0)
    return complement(worst)


def kb_possibility_distribution(kb: AverageKB, names: Optional[Sequence[str]] = None
                                ) -> WorldDistribution:
    """1 on worlds satisfying every clause, else ``1 - max alpha`` of falsified clauses."""
    names = tuple(names) if names is not None else kb.scope
    return WorldDistribution.from_function(names, lambda w: _penalised(kb, w, "alpha"), POSSIBILITY)


def kb_necessity_distribution(kb: AverageKB, names: Optional[Sequence[str]] = None
                              ) -> WorldDistribution:
    # beta-analog of the possibility penalty; see the README on necessity recovery
    names = tuple(names) if names is not None else kb.scope
    return WorldDistribution.from_function(names, lambda w: _penalised(kb, w, "beta"), NECESSITY)


def kb_necessity_distribution_crisp(kb: AverageKB) -> WorldDistribution:
    """Degenerate 0/1 necessity map: 1 on models of every clause, 0 elsewhere."""
    return WorldDistribution.from_function(
        kb.scope, lambda w: 1.0 if all(evaluate(f.clause, w) for f in kb.formulas) else 0.0,
        NECESSITY)


def _distributions(kb: AverageKB, names):
    worlds = enumerate_worlds(names)
    return ([_penalised(kb, w, "alpha") for w in worlds],
            [_penalised(kb, w, "beta") for w in worlds])


def equivalent(kb1: AverageKB, kb2: AverageKB, tol: float = 1e-9) -> bool:
    """Both induced distributions agree on every world."""
    if set(kb1.scope) != set(kb2.scope):
        raise ScopeError(f"scopes differ: {kb1.scope} vs {kb2.scope}")
    pi1, n1 = _distributions(kb1, kb1.scope)
    pi2, n2 = _distributions(kb2, kb1.scope)
    return all(abs(x - y) <= tol for x, y in zip(pi1 + n1, pi2 + n2))


def is_subsumed(kb: AverageKB, f: WeightedFormula) -> bool:
    if f not in kb:
        raise KeyError(f"{f} is not in the knowledge base")
    return equivalent(kb, kb.without(f))


def normalize_kb(kb: AverageKB) -> AverageKB:
    """Drop subsumed formulas until none is left.

    Candidates are tried longest clause first, ties broken lexicographically,
    so the result does not depend on input order.
    """
    current = kb
    changed = True
    while changed:
        changed = False
        for f in sorted(current.formulas, key=lambda g: g.clause.sort_key()):
            if is_subsumed(current, f):
                current = current.without(f)
                changed = True
                break
    return current


def make_kb(scope: Iterable[str], formulas: Iterable[tuple]) -> AverageKB:
    """Shorthand: ``make_kb("AB", [(clause, alpha, beta), ...])``."""
    return AverageKB(tuple(scope), tuple(WeightedFormula(c, a, b) for c, a, b in formulas))
