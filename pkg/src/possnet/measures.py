"""World distributions and the possibility / necessity measures they induce."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator, Mapping, Sequence

from .logic import (
    Formula,
    LogicError,
    Not,
    World,
    check_scope,
    enumerate_worlds,
    evaluate,
    world_index,
)

#: Absolute tolerance for comparing degrees.
TOLERANCE = 1e-9

POSSIBILITY = "possibility"
NECESSITY = "necessity"
AVERAGE = "average"
KINDS = (POSSIBILITY, NECESSITY, AVERAGE)


class DegreeError(ValueError):
    pass


def check_degree(value: float, what: str = "degree") -> float:
    value = float(value)
    if math.isnan(value) or not (0.0 <= value <= 1.0):
        raise DegreeError(f"{what} {value!r} is outside [0, 1]")
    return value


def complement(x: float) -> float:
    """``1 - x`` rounded to 12 decimals, so decimal degrees complement exactly."""
    return round(1.0 - x, 12)


def degree_eq(x: float, y: float, tol: float = TOLERANCE) -> bool:
    return abs(x - y) <= tol


@dataclass(frozen=True)
class WorldDistribution:
    """A degree for every world over ``names``, stored in enumeration order."""

    names: tuple[str, ...]
    values: tuple[float, ...]
    kind: str = POSSIBILITY

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown distribution kind {self.kind!r}")
        if len(self.values) != 2 ** len(self.names):
            raise ValueError("distribution must cover all worlds")
        for v in self.values:
            check_degree(v)

    @classmethod
    def from_function(cls, names: Sequence[str], fn: Callable[[World], float],
                      kind: str = POSSIBILITY) -> WorldDistribution:
        names = tuple(names)
        return cls(names, tuple(fn(w) for w in enumerate_worlds(names)), kind)

    @classmethod
    def from_mapping(cls, names: Sequence[str], mapping: Mapping[World, float],
                     kind: str = POSSIBILITY) -> WorldDistribution:
        return cls.from_function(names, lambda w: mapping[w], kind)

    def worlds(self) -> list[World]:
        return enumerate_worlds(self.names)

    def items(self) -> Iterator[tuple[World, float]]:
        return zip(self.worlds(), self.values)

    def __getitem__(self, world: World) -> float:
        return self.values[world_index(world, self.names)]

    def maximum(self) -> float:
        return max(self.values)

    @property
    def is_normalized(self) -> bool:
        return degree_eq(self.maximum(), 1.0)

    def reindexed(self, names: Sequence[str]) -> WorldDistribution:
        """Same distribution with worlds enumerated over a permuted ``names``."""
        names = tuple(names)
        if set(names) != set(self.names):
            raise ValueError("reindexing needs the same variables")
        return WorldDistribution.from_function(names, lambda w: self[w], self.kind)

    def almost_equal(self, other: WorldDistribution, tol: float = TOLERANCE) -> bool:
        if set(other.names) != set(self.names):
            return False
        other = other.reindexed(self.names)
        return all(degree_eq(x, y, tol) for x, y in zip(self.values, other.values))


def _max_over_models(dist: WorldDistribution, p: Formula) -> float:
    check_scope(p, dist.names)
    return max((v for w, v in dist.items() if evaluate(p, w)), default=0.0)


def possibility_of(dist: WorldDistribution, p: Formula) -> float:
    """Max of the distribution over the models of ``p``; 0 when there are none."""
    if dist.kind != POSSIBILITY:
        raise LogicError(f"possibility_of needs a possibility distribution, got {dist.kind}")
    return _max_over_models(dist, p)


def necessity_by_duality(dist: WorldDistribution, p: Formula) -> float:
    return complement(possibility_of(dist, Not(p)))


def guaranteed_degree(dist: WorldDistribution, p: Formula) -> float:
    """Max-over-models read-out of a necessity or average world map."""
    if dist.kind == POSSIBILITY:
        raise LogicError("guaranteed_degree reads necessity or average distributions")
    return _max_over_models(dist, p)
