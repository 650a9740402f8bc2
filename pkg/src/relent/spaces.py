"""Finite probability spaces and the values that live on them.

Everything here is immutable after construction and validated eagerly:
weights are checked against the simplex invariants the moment a
distribution is built, never lazily. Numeric sequences are positionally
aligned to the owning space's fixed outcome order; no reordering ever
occurs, so elementwise comparisons are well defined everywhere else in
the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Literal, Mapping, Sequence

import numpy as np

from .errors import ConstructionError, SpaceMismatch, ZeroMassEvent

#: Probabilities at or below this threshold count as exactly zero mass.
#: Distinguishes true zeros from rounding dust and guards renormalization.
ZERO_MASS = 1e-12

#: Allowed deviation of a weight vector's total from one.
SUM_TOL = 1e-9


def _readonly(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class SampleSpace:
    """Ordered finite set of distinct outcome labels."""

    outcomes: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "outcomes", tuple(self.outcomes))
        if len(self.outcomes) < 1:
            raise ConstructionError("space.empty", "a sample space needs at least one outcome")
        if any(not isinstance(x, str) for x in self.outcomes):
            raise ConstructionError("space.bad_label", "outcome labels must be strings")
        if len(set(self.outcomes)) != len(self.outcomes):
            seen: set[str] = set()
            dup = next(x for x in self.outcomes if x in seen or seen.add(x))
            raise ConstructionError("space.duplicate_label", f"duplicate outcome label {dup!r}")

    @cached_property
    def index(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.outcomes)}

    def __len__(self) -> int:
        return len(self.outcomes)

    def __contains__(self, label: object) -> bool:
        return label in self.index

    def subset(self, *labels: str) -> "Event":
        """Convenience constructor for an event on this space."""
        return Event(self, frozenset(labels))

    def whole(self) -> "Event":
        return Event(self, frozenset(self.outcomes))


def _require_same_space(a: SampleSpace, b: SampleSpace, what: str) -> None:
    if a != b:
        raise SpaceMismatch(f"{what} lives on a different sample space")


@dataclass(frozen=True)
class Event:
    """A subset (possibly empty) of a space's outcomes."""

    space: SampleSpace
    members: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        unknown = self.members - set(self.space.outcomes)
        if unknown:
            raise ConstructionError(
                "event.unknown_label",
                f"event references labels not in the space: {sorted(unknown)}",
            )

    @cached_property
    def indicator(self) -> np.ndarray:
        """0/1 vector aligned to the space's outcome order."""
        return _readonly(
            np.array([1.0 if x in self.members else 0.0 for x in self.space.outcomes])
        )

    def complement(self) -> "Event":
        return Event(self.space, frozenset(self.space.outcomes) - self.members)

    def intersect(self, other: "Event") -> "Event":
        _require_same_space(self.space, other.space, "event")
        return Event(self.space, self.members & other.members)

    def difference(self, other: "Event") -> "Event":
        _require_same_space(self.space, other.space, "event")
        return Event(self.space, self.members - other.members)

    def issubset(self, other: "Event") -> bool:
        _require_same_space(self.space, other.space, "event")
        return self.members <= other.members

    def describe(self) -> str:
        return "{" + ", ".join(sorted(self.members)) + "}"


@dataclass(frozen=True)
class Distribution:
    """Nonnegative weights over a space's outcomes, summing to one."""

    space: SampleSpace
    weights: tuple[float, ...]

    def __post_init__(self):
        ws = tuple(float(w) for w in self.weights)
        object.__setattr__(self, "weights", ws)
        if len(ws) != len(self.space):
            raise ConstructionError(
                "dist.length_mismatch",
                f"got {len(ws)} weights for {len(self.space)} outcomes",
            )
        if any(not math.isfinite(w) for w in ws):
            raise ConstructionError("dist.not_finite", "weights must be finite numbers")
        if min(ws) < 0.0:
            raise ConstructionError("dist.negative_weight", f"negative weight {min(ws)}")
        total = math.fsum(ws)
        if abs(total - 1.0) > SUM_TOL:
            raise ConstructionError("dist.sum_not_one", f"weights sum to {total!r}, not 1")

    @classmethod
    def uniform(cls, space: SampleSpace) -> "Distribution":
        n = len(space)
        return cls(space, (1.0 / n,) * n)

    @classmethod
    def from_array(cls, space: SampleSpace, weights: Sequence[float] | np.ndarray) -> "Distribution":
        return cls(space, tuple(float(w) for w in weights))

    @cached_property
    def array(self) -> np.ndarray:
        return _readonly(np.array(self.weights))

    def prob(self, e: Event) -> float:
        _require_same_space(self.space, e.space, "event")
        return float(self.array @ e.indicator)

    @cached_property
    def support(self) -> np.ndarray:
        """Boolean mask of outcomes with strictly positive weight."""
        return _readonly(self.array > 0.0)


@dataclass(frozen=True)
class RandomVariable:
    """A total real-valued function on a space, stored in outcome order."""

    space: SampleSpace
    values: tuple[float, ...]

    def __post_init__(self):
        vs = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", vs)
        if len(vs) != len(self.space):
            raise ConstructionError(
                "variable.not_total",
                f"got {len(vs)} values for {len(self.space)} outcomes",
            )
        if any(not math.isfinite(v) for v in vs):
            raise ConstructionError("variable.not_finite", "values must be finite numbers")

    @classmethod
    def from_mapping(cls, space: SampleSpace, mapping: Mapping[str, float]) -> "RandomVariable":
        missing = [x for x in space.outcomes if x not in mapping]
        if missing:
            raise ConstructionError(
                "variable.not_total", f"no value for outcomes {missing}"
            )
        unknown = [x for x in mapping if x not in space]
        if unknown:
            raise ConstructionError(
                "variable.unknown_label",
                f"variable references labels not in the space: {sorted(unknown)}",
            )
        return cls(space, tuple(float(mapping[x]) for x in space.outcomes))

    @cached_property
    def array(self) -> np.ndarray:
        return _readonly(np.array(self.values))


@dataclass(frozen=True)
class Partition:
    """Pairwise-disjoint nonempty events covering the whole space."""

    cells: tuple[Event, ...]

    def __post_init__(self):
        cells = tuple(self.cells)
        object.__setattr__(self, "cells", cells)
        if not cells:
            raise ConstructionError("partition.empty", "a partition needs at least one cell")
        space = cells[0].space
        for c in cells:
            if c.space != space:
                raise ConstructionError(
                    "partition.space_mismatch", "partition cells live on different spaces"
                )
            if not c.members:
                raise ConstructionError("partition.empty_cell", "partition cells must be nonempty")
        counts: dict[str, int] = {}
        for c in cells:
            for x in c.members:
                counts[x] = counts.get(x, 0) + 1
        overlap = sorted(x for x, k in counts.items() if k > 1)
        if overlap:
            raise ConstructionError(
                "partition.overlapping_cells", f"outcomes in more than one cell: {overlap}"
            )
        missing = sorted(set(space.outcomes) - set(counts))
        if missing:
            raise ConstructionError(
                "partition.not_exhaustive", f"outcomes in no cell: {missing}"
            )

    @property
    def space(self) -> SampleSpace:
        return self.cells[0].space

    @classmethod
    def from_labels(cls, space: SampleSpace, cells: Sequence[Iterable[str]]) -> "Partition":
        return cls(tuple(Event(space, frozenset(c)) for c in cells))


@dataclass(frozen=True)
class JointDistribution:
    """Probabilities over pairs from a row space and a column space."""

    row_space: SampleSpace
    col_space: SampleSpace
    weights: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(float(w) for w in row) for row in self.weights)
        object.__setattr__(self, "weights", rows)
        if len(rows) != len(self.row_space) or any(
            len(r) != len(self.col_space) for r in rows
        ):
            raise ConstructionError(
                "joint.shape_mismatch",
                f"weights must be {len(self.row_space)}x{len(self.col_space)}",
            )
        flat = [w for row in rows for w in row]
        if any(not math.isfinite(w) for w in flat):
            raise ConstructionError("joint.not_finite", "entries must be finite numbers")
        if min(flat) < 0.0:
            raise ConstructionError("joint.negative_weight", f"negative entry {min(flat)}")
        total = math.fsum(flat)
        if abs(total - 1.0) > SUM_TOL:
            raise ConstructionError("joint.sum_not_one", f"entries sum to {total!r}, not 1")

    @classmethod
    def from_array(
        cls, row_space: SampleSpace, col_space: SampleSpace, weights: np.ndarray
    ) -> "JointDistribution":
        return cls(row_space, col_space, tuple(tuple(float(w) for w in row) for row in weights))

    @classmethod
    def independent(cls, p: "Distribution", q: "Distribution") -> "JointDistribution":
        """Product coupling: prob(w, b) = p(w) * q(b)."""
        return cls.from_array(p.space, q.space, np.outer(p.array, q.array))

    @classmethod
    def identity_coupling(cls, d: "Distribution") -> "JointDistribution":
        """Diagonal coupling of a distribution with itself."""
        return cls.from_array(d.space, d.space, np.diag(d.array))

    @cached_property
    def array(self) -> np.ndarray:
        return _readonly(np.array(self.weights))


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def condition(dist: Distribution, e: Event) -> Distribution:
    """Restrict ``dist`` to ``e`` and renormalize.

    Outcomes outside ``e`` get weight zero. Raises :class:`ZeroMassEvent`
    when P(e) is at or below the zero-mass threshold.
    """
    _require_same_space(dist.space, e.space, "event")
    mass = dist.prob(e)
    if mass <= ZERO_MASS:
        raise ZeroMassEvent(f"cannot condition on {e.describe()} with probability {mass!r}")
    return Distribution.from_array(dist.space, dist.array * e.indicator / mass)


def expectation(dist: Distribution, f: RandomVariable) -> float:
    """Weighted mean of ``f`` under ``dist``."""
    _require_same_space(dist.space, f.space, "random variable")
    return float(dist.array @ f.array)


def marginal(j: JointDistribution, axis: Literal["row", "col"]) -> Distribution:
    """Marginal distribution of the row or column variable."""
    if axis == "row":
        return Distribution.from_array(j.row_space, j.array.sum(axis=1))
    if axis == "col":
        return Distribution.from_array(j.col_space, j.array.sum(axis=0))
    raise ValueError(f"axis must be 'row' or 'col', got {axis!r}")


def conditional_prob(dist: Distribution, a: Event, b: Event) -> float:
    """P(a | b) = P(a and b) / P(b). Raises :class:`ZeroMassEvent` when P(b) is zero mass."""
    _require_same_space(dist.space, a.space, "event")
    _require_same_space(dist.space, b.space, "event")
    pb = dist.prob(b)
    if pb <= ZERO_MASS:
        raise ZeroMassEvent(f"conditioning event {b.describe()} has probability {pb!r}")
    return dist.prob(a.intersect(b)) / pb
