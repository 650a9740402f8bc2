"""Executable consistency checks for belief updates over a partition.

The property under test: when new information consists of (a) fresh
masses for the cells of a partition and (b) information purely about
what happens *inside* individual cells, then updating the whole prior
at once and then looking inside a cell must agree with updating that
cell's conditional prior with only its own information. In the special
case of no within-cell information at all, this reduces to the claim
that reweighting cells never disturbs conditional probabilities inside
them.

Neither check assumes the property holds; both compute the two sides
independently (through the update solver) and report the worst
disagreement found.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .constraints import CondProb, Constraint, EventProb, PartitionWeights
from .errors import ConstructionError, ZeroMassEvent
from .solver import SolverOptions, maxent_update
from .spaces import (
    ZERO_MASS,
    Distribution,
    Event,
    Partition,
    SampleSpace,
    condition,
    conditional_prob,
)

#: Cells whose posterior mass falls at or below this bound have no
#: conditional distribution to compare; they are skipped and flagged.
SKIP_MASS = 1e-12


@dataclass(frozen=True)
class CellInfo:
    """Information about the conditional distribution inside one cell.

    Constraints are read against the cell's conditional distribution,
    so ``EventProb(a, v)`` here means "given the cell, a has
    probability v". Only event-based constraint kinds make sense in
    that reading; expectation and partition constraints are rejected.
    """

    cell_index: int
    constraints: tuple[Constraint, ...]

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if self.cell_index < 0:
            raise ConstructionError(
                "cellinfo.bad_index", f"cell_index must be nonnegative, got {self.cell_index}"
            )
        for c in self.constraints:
            if not isinstance(c, (EventProb, CondProb)):
                raise ConstructionError(
                    "cellinfo.unsupported_kind",
                    "within-cell information must pin event or conditional "
                    f"probabilities, got {type(c).__name__}",
                )


@dataclass(frozen=True)
class AxiomReport:
    """Worst-case disagreement between the two sides of a consistency check.

    per_cell pairs each checked cell index with its deviation.
    skipped_cells lists cells that could not be checked because their
    posterior mass vanished. passed must equal max_deviation <= tol.
    """

    tol: float
    max_deviation: float
    per_cell: tuple[tuple[int, float], ...]
    passed: bool
    skipped_cells: tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "per_cell", tuple((int(i), float(d)) for i, d in self.per_cell))
        object.__setattr__(self, "skipped_cells", tuple(int(i) for i in self.skipped_cells))
        if self.passed != (self.max_deviation <= self.tol):
            raise ConstructionError(
                "axiom.report_inconsistent",
                "passed flag disagrees with max_deviation vs tol",
            )


def _report(tol: float, per_cell: list[tuple[int, float]], skipped: list[int]) -> AxiomReport:
    worst = max((d for _, d in per_cell), default=0.0)
    return AxiomReport(tol, worst, tuple(per_cell), worst <= tol, tuple(skipped))


def _relativize(c: Constraint, cell: Event) -> Constraint:
    """Restate a within-cell constraint on the full space."""
    if isinstance(c, EventProb):
        if not c.event.issubset(cell):
            raise ConstructionError(
                "cellinfo.event_outside_cell",
                f"event {c.event.describe()} is not inside cell {cell.describe()}",
            )
        return CondProb(c.event, cell, c.value)
    if isinstance(c, CondProb):
        # for events inside the cell, conditioning on the cell first
        # changes nothing: P(a | b) is already a within-cell statement
        if not (c.target.issubset(cell) and c.given.issubset(cell)):
            raise ConstructionError(
                "cellinfo.event_outside_cell",
                f"events of {c.describe()} are not inside cell {cell.describe()}",
            )
        return c
    raise ConstructionError(
        "cellinfo.unsupported_kind", f"cannot relativize {type(c).__name__}"
    )


def _check_partition(part: Partition, m: PartitionWeights) -> None:
    if m.partition != part:
        raise ConstructionError(
            "axiom.partition_mismatch",
            "cell weights were built for a different partition",
        )


def check_axiom4_full(
    prior: Distribution,
    part: Partition,
    m: PartitionWeights,
    infos: tuple[CellInfo, ...] | list[CellInfo],
    tol: float,
    options: SolverOptions = SolverOptions(),
) -> AxiomReport:
    """Compare whole-space updating against per-cell updating.

    Left side: update ``prior`` with the cell weights plus every
    within-cell constraint restated on the full space, then condition
    on each cell. Right side: condition ``prior`` on the cell first,
    then update with only that cell's own constraints. The deviation
    for a cell is the largest elementwise difference between the two
    resulting distributions.

    Every cell must carry prior mass. Cells whose left-side posterior
    mass vanishes (weight pinned to zero) are skipped and flagged.
    Solver failures (infeasible or non-convergent joint constraints)
    propagate.
    """
    _check_partition(part, m)
    by_cell: dict[int, list[Constraint]] = {}
    for info in infos:
        if info.cell_index >= len(part.cells):
            raise ConstructionError(
                "cellinfo.bad_index",
                f"cell_index {info.cell_index} out of range for {len(part.cells)} cells",
            )
        by_cell.setdefault(info.cell_index, []).extend(info.constraints)

    for cell in part.cells:
        if prior.prob(cell) <= SKIP_MASS:
            raise ZeroMassEvent(
                f"cell {cell.describe()} has no prior mass; its conditional prior is undefined"
            )

    full_constraints: list[Constraint] = [m]
    for i, cs in sorted(by_cell.items()):
        full_constraints.extend(_relativize(c, part.cells[i]) for c in cs)
    joint_posterior = maxent_update(prior, full_constraints, options).posterior

    per_cell: list[tuple[int, float]] = []
    skipped: list[int] = []
    for i, cell in enumerate(part.cells):
        if joint_posterior.prob(cell) <= SKIP_MASS:
            skipped.append(i)
            continue
        left = condition(joint_posterior, cell)
        right = maxent_update(condition(prior, cell), by_cell.get(i, []), options).posterior
        per_cell.append((i, float(np.max(np.abs(left.array - right.array)))))
    return _report(tol, per_cell, skipped)


def check_axiom4b(
    prior: Distribution,
    part: Partition,
    m: PartitionWeights,
    tol: float,
    seed: int = 0,
    n_random: int = 20,
    options: SolverOptions = SolverOptions(),
) -> AxiomReport:
    """Verify that reweighting partition cells preserves within-cell conditionals.

    Updates ``prior`` with the cell weights alone, then compares
    P(a | cell) before and after for a family of events inside each
    cell: every singleton (which already determines the conditional
    completely on a finite space) plus ``n_random`` seeded random
    subsets per cell as redundancy. Reports the largest difference.

    Cells with vanishing posterior mass are skipped and flagged.
    """
    _check_partition(part, m)
    posterior = maxent_update(prior, [m], options).posterior

    per_cell: list[tuple[int, float]] = []
    skipped: list[int] = []
    for i, cell in enumerate(part.cells):
        if posterior.prob(cell) <= SKIP_MASS:
            skipped.append(i)
            continue
        members = sorted(cell.members, key=prior.space.index.__getitem__)
        events = [Event(prior.space, frozenset({x})) for x in members]
        rng = np.random.default_rng([seed, i])
        for _ in range(n_random):
            picks = rng.integers(0, 2, size=len(members)).astype(bool)
            chosen = frozenset(x for x, keep in zip(members, picks) if keep)
            events.append(Event(prior.space, chosen))
        worst = 0.0
        for a in events:
            if not a.members:
                continue
            before = conditional_prob(prior, a, cell)
            after = conditional_prob(posterior, a, cell)
            worst = max(worst, abs(after - before))
        per_cell.append((i, worst))
    return _report(tol, per_cell, skipped)


def random_reweighting_case(
    rng: np.random.Generator, n_max: int = 10
) -> tuple[Distribution, Partition, PartitionWeights]:
    """Draw one feasible (prior, partition, weights) triple for property trials.

    Priors and weights are kept away from the simplex boundary so every
    cell has comparable conditionals before and after the update.
    """
    n = int(rng.integers(2, n_max + 1))
    space = SampleSpace(tuple(f"w{i}" for i in range(n)))
    prior = Distribution.from_array(space, rng.dirichlet(np.ones(n) * 2.0) * 0.98 + 0.02 / n)
    k = int(rng.integers(2, min(4, n) + 1))
    owner = rng.integers(0, k, size=n)
    owner[rng.permutation(n)[:k]] = np.arange(k)  # every cell nonempty
    cells = [tuple(space.outcomes[i] for i in np.flatnonzero(owner == j)) for j in range(k)]
    part = Partition.from_labels(space, cells)
    weights = rng.dirichlet(np.ones(k)) * 0.9 + 0.1 / k
    weights = weights / weights.sum()
    return prior, part, PartitionWeights(part, tuple(float(w) for w in weights))
