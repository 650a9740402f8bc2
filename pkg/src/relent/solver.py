"""Belief updates that stay as close to the prior as possible.

Given a prior and linear constraints on the posterior, the update picks
the unique posterior maximizing entropy relative to the prior subject
to the constraints. Two classical updates fall out as special cases and
get closed forms here: conditioning on an event (probability pinned to
one) and partition reweighting (every cell's mass pinned at once). The
general case is solved in the dual: the optimum has the form

    posterior_i  proportional to  prior_i * exp(sum_j lam_j * coeffs[j][i])

on the prior's support, and the multipliers ``lam`` maximize the
concave dual ``lam . targets - log Z(lam)``. A damped Newton iteration
on that dual converges quadratically near the optimum.

Constraints that pin probabilities to exactly zero or one have no
finite multiplier. They are instead enforced up front by shrinking the
support (mass can never re-enter a zeroed outcome), which leaves a
strictly interior problem for the dual iteration.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .constraints import (
    CondProb,
    Constraint,
    EventProb,
    LinearForm,
    PartitionWeights,
    compile_all,
    compile_constraint,
    residual,
    triage_feasibility,
)
from .errors import (
    ConstructionError,
    DegenerateConditional,
    InfeasibleConstraint,
    NonConvergence,
    ZeroMassEvent,
)
from .information import relative_entropy
from .spaces import ZERO_MASS, Distribution, Event, Partition, condition

#: Diagonal regularization added to the dual Hessian so redundant
#: constraint rows (for example the cells of a partition, whose targets
#: already sum to one) cannot make the Newton solve singular.
HESS_EPS = 1e-12

#: Window length and minimum progress used to distinguish "still
#: converging slowly" from "multipliers running away on an
#: unsatisfiable system".
STALL_WINDOW = 10
STALL_IMPROVEMENT = 1e-12

Method = Literal["dual_newton", "jeffrey", "conditionalization", "no_op"]


@dataclass(frozen=True)
class SolverOptions:
    """Tunables for :func:`maxent_update`.

    tol is the convergence threshold on the largest absolute constraint
    violation. multiplier_bound is the magnitude past which a
    non-improving dual is declared infeasible. init_multipliers seeds
    the dual iteration (one value per active compiled row) for warm
    starts; None means start from zero.
    """

    tol: float = 1e-10
    max_iter: int = 200
    multiplier_bound: float = 1e6
    use_fast_paths: bool = True
    init_multipliers: tuple[float, ...] | None = None

    def __post_init__(self):
        if not (math.isfinite(self.tol) and self.tol > 0.0):
            raise ConstructionError("options.bad_tol", f"tol must be positive, got {self.tol!r}")
        if self.max_iter < 1:
            raise ConstructionError(
                "options.bad_max_iter", f"max_iter must be at least 1, got {self.max_iter!r}"
            )
        if not (math.isfinite(self.multiplier_bound) and self.multiplier_bound > 0.0):
            raise ConstructionError(
                "options.bad_multiplier_bound",
                f"multiplier_bound must be positive, got {self.multiplier_bound!r}",
            )
        if self.init_multipliers is not None:
            object.__setattr__(
                self, "init_multipliers", tuple(float(x) for x in self.init_multipliers)
            )


@dataclass(frozen=True)
class UpdateReport:
    """Posterior plus the evidence that it actually solves the problem.

    multipliers are the dual coordinates of the active compiled rows,
    in compilation order; fast paths solve no dual and report an empty
    tuple, and a no-op update reports an explicit zero per row (the
    prior itself is dual-optimal there). final_residual is the worst
    violation over every compiled row of the original constraints, and
    objective is the posterior's entropy relative to the prior
    (nonpositive; zero only for a no-op).
    """

    posterior: Distribution
    multipliers: tuple[float, ...]
    iterations: int
    final_residual: float
    objective: float
    method: Method


def conditionalize(prior: Distribution, event: Event) -> Distribution:
    """Classical conditioning: zero outside ``event``, renormalize inside.

    This is the maximum-relative-entropy posterior for the constraint
    P(event) = 1. Raises :class:`ZeroMassEvent` when the event has no
    prior mass.
    """
    return condition(prior, event)


def jeffrey_update(
    prior: Distribution, partition: Partition, weights: Sequence[float]
) -> Distribution:
    """Reweight partition cells to ``weights``, preserving odds within each cell.

    This is the maximum-relative-entropy posterior for the constraints
    P(cell_i) = weights[i]. Raises :class:`InfeasibleConstraint` when a
    cell with zero prior mass is assigned positive weight.
    """
    spec = PartitionWeights(partition, tuple(weights))
    out = np.zeros(len(prior.space))
    for cell, w in zip(partition.cells, spec.weights):
        if w == 0.0:
            continue
        m = prior.prob(cell)
        if m <= ZERO_MASS:
            raise InfeasibleConstraint(
                f"cell {cell.describe()} has zero prior mass but target weight {w:g}"
            )
        out += prior.array * cell.indicator * (w / m)
    return Distribution.from_array(prior.space, out)


def _check_conditionals(posterior: Distribution, constraints: Sequence[Constraint]) -> None:
    # the linearized form of P(a|b) = v is vacuous when P(b) ends up zero
    for c in constraints:
        if isinstance(c, CondProb) and posterior.prob(c.given) <= ZERO_MASS:
            raise DegenerateConditional(
                f"conditioning event of {c.describe()} has zero posterior "
                "probability; the conditional constraint holds only vacuously"
            )


def _certainty_mask(prior: Distribution, constraints: Sequence[Constraint]) -> np.ndarray:
    """Support left available once exact-zero / exact-one pins are honored."""
    mask = prior.support.copy()
    for c in constraints:
        if isinstance(c, EventProb):
            if c.value == 1.0:
                mask &= c.event.indicator.astype(bool)
            elif c.value == 0.0:
                mask &= ~c.event.indicator.astype(bool)
        elif isinstance(c, CondProb):
            if c.value == 1.0:
                mask &= ~c.given.difference(c.target).indicator.astype(bool)
            elif c.value == 0.0:
                mask &= ~c.target.intersect(c.given).indicator.astype(bool)
        elif isinstance(c, PartitionWeights):
            for cell, w in zip(c.partition.cells, c.weights):
                if w == 0.0:
                    mask &= ~cell.indicator.astype(bool)
    return mask


def _active_rows(constraints: Sequence[Constraint], prior: Distribution) -> list[LinearForm]:
    """Compiled rows that still need a dual multiplier after masking."""
    rows: list[LinearForm] = []
    for c in constraints:
        compiled = compile_constraint(c, prior.space)
        if isinstance(c, (EventProb, CondProb)) and c.value in (0.0, 1.0):
            continue
        if isinstance(c, PartitionWeights):
            rows.extend(r for r, w in zip(compiled, c.weights) if w != 0.0)
            continue
        rows.extend(compiled)
    return rows


def _dual_newton(
    q: np.ndarray, A: np.ndarray, b: np.ndarray, options: SolverOptions
) -> tuple[np.ndarray, np.ndarray, int, float]:
    """Maximize lam . b - log Z(lam) for the reduced, strictly positive prior ``q``.

    Returns (posterior on the reduced index, multipliers, accepted
    steps, final gradient residual). Raises on divergence or budget
    exhaustion.
    """
    m = A.shape[0]
    logq = np.log(q)
    if options.init_multipliers is not None:
        lam = np.array(options.init_multipliers, dtype=float)
        if lam.shape != (m,):
            raise ConstructionError(
                "options.bad_init_multipliers",
                f"expected {m} initial multipliers, got {lam.size}",
            )
    else:
        lam = np.zeros(m)

    def posterior_and_logz(lam_: np.ndarray) -> tuple[np.ndarray, float]:
        logits = logq + A.T @ lam_
        shift = float(logits.max())
        z = np.exp(logits - shift)
        total = float(z.sum())
        return z / total, shift + math.log(total)

    history: deque[float] = deque(maxlen=STALL_WINDOW)
    iterations = 0
    while True:
        p, logz = posterior_and_logz(lam)
        grad = b - A @ p
        res = float(np.max(np.abs(grad)))
        history.append(res)
        if res <= options.tol:
            return p, lam, iterations, res
        stalled = len(history) == STALL_WINDOW and history[0] - history[-1] < STALL_IMPROVEMENT
        if float(np.max(np.abs(lam))) > options.multiplier_bound and stalled:
            raise InfeasibleConstraint(
                f"dual multipliers exceeded {options.multiplier_bound:g} with the "
                f"residual stalled at {res:g}; the constraints admit no solution "
                "on the prior's support"
            )
        if iterations >= options.max_iter:
            break
        Ap = A @ p
        hess = (A * p) @ A.T - np.outer(Ap, Ap)
        hess[np.diag_indices_from(hess)] += HESS_EPS
        try:
            step = np.linalg.solve(hess, grad)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(hess, grad, rcond=None)[0]
        gval = float(lam @ b) - logz
        t = 1.0
        accepted = False
        while t > 1e-14:
            cand = lam + t * step
            _, logz_c = posterior_and_logz(cand)
            if float(cand @ b) - logz_c >= gval - 1e-15 * (1.0 + abs(gval)):
                accepted = True
                break
            t *= 0.5
        if not accepted:
            break
        lam = cand
        iterations += 1

    if float(np.max(np.abs(lam))) > options.multiplier_bound:
        raise InfeasibleConstraint(
            f"dual multipliers exceeded {options.multiplier_bound:g} before the "
            f"residual {res:g} could meet tol {options.tol:g}; the constraints "
            "admit no solution on the prior's support"
        )
    raise NonConvergence(
        f"update stopped after {iterations} Newton steps with residual {res:g} "
        f"above tol {options.tol:g}"
    )


def maxent_update(
    prior: Distribution,
    constraints: Sequence[Constraint],
    options: SolverOptions = SolverOptions(),
) -> UpdateReport:
    """Update ``prior`` to satisfy ``constraints``, moving as little as possible.

    Dispatch order: certify obvious infeasibility, return the prior
    unchanged when it already satisfies everything, use the closed
    forms for a lone event pin or partition reweighting, and otherwise
    run the dual Newton iteration with certainty pins folded into the
    support.

    Raises :class:`InfeasibleConstraint`, :class:`NonConvergence`, or
    :class:`DegenerateConditional` (conditioning event driven to zero
    posterior mass).
    """
    constraints = tuple(constraints)
    all_rows = compile_all(constraints, prior.space)
    verdict = triage_feasibility(constraints, prior)
    if verdict.infeasible:
        raise InfeasibleConstraint("; ".join(verdict.reasons))

    r0 = residual(prior, constraints)
    if r0 <= options.tol:
        _check_conditionals(prior, constraints)
        return UpdateReport(prior, (0.0,) * len(all_rows), 0, r0, 0.0, "no_op")

    if options.use_fast_paths and len(constraints) == 1:
        fast = _fast_path(prior, constraints[0])
        if fast is not None:
            post, method = fast
            _check_conditionals(post, constraints)
            return UpdateReport(
                post, (), 0, residual(post, constraints), relative_entropy(post, prior), method
            )

    mask = _certainty_mask(prior, constraints)
    if not mask.any() or float(prior.array[mask].sum()) <= ZERO_MASS:
        raise InfeasibleConstraint(
            "certainty constraints eliminate every outcome the prior allows"
        )
    live = np.flatnonzero(mask)
    q = prior.array[live]
    q = q / q.sum()

    rows = _active_rows(constraints, prior)
    if rows:
        A = np.array([row.array[live] for row in rows])
        b = np.array([row.target for row in rows])
        p_live, lam, iterations, _ = _dual_newton(q, A, b, options)
        multipliers = tuple(float(x) for x in lam)
    else:
        p_live, multipliers, iterations = q, (), 0

    full = np.zeros(len(prior.space))
    full[live] = p_live
    posterior = Distribution.from_array(prior.space, full)
    _check_conditionals(posterior, constraints)
    return UpdateReport(
        posterior,
        multipliers,
        iterations,
        residual(posterior, constraints),
        relative_entropy(posterior, prior),
        "dual_newton",
    )


def _fast_path(prior: Distribution, c: Constraint) -> tuple[Distribution, Method] | None:
    """Closed form for a single event pin or partition reweighting, if one applies."""
    if isinstance(c, PartitionWeights):
        return jeffrey_update(prior, c.partition, c.weights), "jeffrey"
    if not isinstance(c, EventProb):
        return None
    if c.value == 1.0:
        # triage guarantees the event has prior mass
        return conditionalize(prior, c.event), "conditionalization"
    comp = c.event.complement()
    if c.value == 0.0:
        try:
            return conditionalize(prior, comp), "conditionalization"
        except ZeroMassEvent:
            raise InfeasibleConstraint(
                f"the prior is certain of {c.event.describe()}; its probability "
                "cannot be driven to 0 without leaving the prior's support"
            ) from None
    if prior.prob(comp) <= ZERO_MASS:
        raise InfeasibleConstraint(
            f"target {c.value:g} < 1 for {c.event.describe()}, but the prior "
            "gives that event probability 1"
        )
    two_cell = Partition((c.event, comp))
    return jeffrey_update(prior, two_cell, (c.value, 1.0 - c.value)), "jeffrey"
