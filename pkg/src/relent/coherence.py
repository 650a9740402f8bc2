"""Decision-theoretic audit of probability forecasts under quadratic loss.

A forecast system assigns a number to each of a list of events. Score
it in a world by summing the squared gaps between each forecast and the
event's 0/1 truth value there. A system is admissible when no rival
forecast does strictly better in every world.

Geometry does all the work: each outcome induces a 0/1 valuation
vector, and a forecast vector is admissible exactly when it lies in the
convex hull of those vertices (any exterior point is strictly beaten,
in every world, by its Euclidean projection onto the hull). The audit
therefore computes that projection; for exterior points the projection
is returned as an explicit dominating forecast, so the verdict can be
checked by direct enumeration rather than taken on faith.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ConstructionError
from .spaces import Distribution, Event, SampleSpace

#: Forecasts whose distance to the hull is at or below this are
#: admissible; beyond it the projection strictly dominates.
ADMISSIBLE_DIST = 1e-9

#: Projection iteration limits. The active-set method terminates
#: finitely on its own; these are safety rails.
MAX_MAJOR_STEPS = 10_000
GAP_TOL = 1e-14


@dataclass(frozen=True)
class ForecastSystem:
    """Numbers x_i announced for events E_i over one sample space.

    Forecasts may fall outside [0, 1]: incoherent inputs are exactly
    the interesting case for the audit.
    """

    space: SampleSpace
    events: tuple[Event, ...]
    forecasts: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))
        object.__setattr__(self, "forecasts", tuple(float(x) for x in self.forecasts))
        if len(self.events) != len(self.forecasts):
            raise ConstructionError(
                "forecast.length_mismatch",
                f"{len(self.events)} events but {len(self.forecasts)} forecasts",
            )
        if any(e.space != self.space for e in self.events):
            raise ConstructionError(
                "forecast.space_mismatch", "every event must live on the system's space"
            )
        if any(not math.isfinite(x) for x in self.forecasts):
            raise ConstructionError("forecast.not_finite", "forecasts must be finite numbers")

    @classmethod
    def from_distribution(cls, dist: Distribution, events: tuple[Event, ...]) -> "ForecastSystem":
        """The forecast system a probability distribution would announce."""
        return cls(dist.space, tuple(events), tuple(dist.prob(e) for e in events))

    @cached_property
    def forecast_array(self) -> np.ndarray:
        a = np.array(self.forecasts)
        a.flags.writeable = False
        return a

    @cached_property
    def valuation_matrix(self) -> np.ndarray:
        """Row per outcome: the 0/1 truth values of every event there."""
        a = np.array(
            [[1.0 if x in e.members else 0.0 for e in self.events] for x in self.space.outcomes]
        )
        a.flags.writeable = False
        return a


@dataclass(frozen=True)
class WorldValuation:
    """Truth values v(E_1)..v(E_n) of the events in one concrete world."""

    outcome: str
    values: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if any(v not in (0.0, 1.0) for v in self.values):
            raise ConstructionError("valuation.not_binary", "valuations must be exactly 0 or 1")

    @classmethod
    def for_outcome(cls, fs: ForecastSystem, outcome: str) -> "WorldValuation":
        if outcome not in fs.space:
            raise ConstructionError(
                "valuation.unknown_outcome", f"outcome {outcome!r} not in the space"
            )
        row = fs.valuation_matrix[fs.space.index[outcome]]
        return cls(outcome, tuple(row))


def world_valuations(fs: ForecastSystem) -> tuple[WorldValuation, ...]:
    """One valuation per outcome, in space order."""
    return tuple(WorldValuation.for_outcome(fs, x) for x in fs.space.outcomes)


def quadratic_loss(fs: ForecastSystem, w: WorldValuation) -> float:
    """Sum of squared forecast errors in world ``w``."""
    if len(w.values) != len(fs.forecasts):
        raise ConstructionError(
            "valuation.length_mismatch",
            f"valuation covers {len(w.values)} events, system has {len(fs.forecasts)}",
        )
    diff = np.array(w.values) - fs.forecast_array
    return float(diff @ diff)


@dataclass(frozen=True)
class AdmissibilityVerdict:
    """Either a clean bill or an explicit witness of domination.

    When inadmissible, ``dominating`` is the hull projection of the
    forecasts and ``margin`` is the smallest per-world loss improvement
    it achieves (equal to the squared projection distance, which the
    hull geometry guarantees as a floor).
    """

    admissible: bool
    dominating: tuple[float, ...] | None
    margin: float

    def __post_init__(self):
        ok = (self.dominating is None) == self.admissible and (
            (self.margin == 0.0) if self.admissible else (self.margin > 0.0)
        )
        if not ok:
            raise ConstructionError(
                "verdict.inconsistent",
                "admissible verdicts carry no dominator and zero margin; "
                "inadmissible ones carry both",
            )


def _project_to_hull(vertices: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Euclidean projection of ``x`` onto the convex hull of ``vertices`` (rows).

    Active-set minimum-norm method: repeatedly add the vertex that the
    current gradient favors most, then jump to the best affine
    combination of the active vertices, stepping back to the boundary
    and pruning whenever a coefficient would go negative. Terminates
    once no vertex improves on the current point (zero duality gap up
    to rounding); unlike plain segment line search this reaches the
    exact face, so projection distances are machine precision and the
    admissibility threshold is meaningful.
    """
    W = vertices - x  # project the origin onto the shifted hull
    norms = (W * W).sum(axis=1)
    scale = 1.0 + float(norms.max(initial=0.0))
    active = [int(np.argmin(norms))]
    beta = np.array([1.0])
    z = W[active[0]].copy()
    for _ in range(MAX_MAJOR_STEPS):
        j = int(np.argmin(W @ z))
        gap = float(z @ z) - float(W[j] @ z)
        if gap <= GAP_TOL * scale:
            break
        if j not in active:
            active.append(j)
            beta = np.append(beta, 0.0)
        for _minor in range(3 * len(vertices) + 10):
            S = W[active]
            s = len(active)
            kkt = np.zeros((s + 1, s + 1))
            kkt[:s, :s] = S @ S.T
            kkt[:s, s] = 1.0
            kkt[s, :s] = 1.0
            rhs = np.zeros(s + 1)
            rhs[s] = 1.0
            alpha = np.linalg.lstsq(kkt, rhs, rcond=None)[0][:s]
            if alpha.min() >= -1e-12:
                beta = np.clip(alpha, 0.0, None)
                beta /= beta.sum()
                break
            # walk toward alpha until the first coefficient hits zero
            with np.errstate(divide="ignore", invalid="ignore"):
                ratio = np.where(alpha < beta, beta / (beta - alpha), np.inf)
            theta = float(min(1.0, ratio[alpha < 0.0].min()))
            beta = (1.0 - theta) * beta + theta * alpha
            keep = beta > 1e-14
            if not keep.any():
                keep[int(np.argmax(beta))] = True
            active = [idx for idx, k in zip(active, keep) if k]
            beta = beta[keep]
            beta /= beta.sum()
        z = W[active].T @ beta
    return z + x


def audit_admissibility(fs: ForecastSystem) -> AdmissibilityVerdict:
    """Decide whether any forecast beats ``fs`` in every world, and produce it.

    Admissible exactly when the forecast vector lies within
    ``ADMISSIBLE_DIST`` of the convex hull of the world valuations.
    Otherwise the returned dominating forecast is the hull projection,
    and the margin is its worst-case (smallest) loss improvement over
    the original, which is still strictly positive.
    """
    if not fs.events:
        return AdmissibilityVerdict(True, None, 0.0)
    x = fs.forecast_array
    projection = _project_to_hull(fs.valuation_matrix, x)
    dist = float(np.linalg.norm(projection - x))
    if dist <= ADMISSIBLE_DIST:
        return AdmissibilityVerdict(True, None, 0.0)
    dominated = ForecastSystem(fs.space, fs.events, tuple(float(v) for v in projection))
    margin = min(
        quadratic_loss(fs, w) - quadratic_loss(dominated, w) for w in world_valuations(fs)
    )
    return AdmissibilityVerdict(False, dominated.forecasts, margin)
