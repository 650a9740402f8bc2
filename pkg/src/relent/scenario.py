"""Declarative scenario files and deterministic report text.

A scenario is a UTF-8 JSON document describing a sample space, a prior,
posterior constraints, optional queries, and an optional forecast
system:

    {
      "version": 1,
      "space": ["rain", "dry"],
      "prior": "uniform",                    // or an aligned number array
      "constraints": [
        {"type": "event_prob", "event": ["rain"], "value": 0.8},
        {"type": "expectation", "variable": {"rain": 1, "dry": 0}, "value": 0.8},
        {"type": "cond_prob", "event": ["rain"], "given": ["rain", "dry"], "value": 0.8},
        {"type": "partition", "cells": [["rain"], ["dry"]], "weights": [0.8, 0.2]}
      ],
      "queries": [
        {"type": "prob", "event": ["rain"]},
        {"type": "cond_prob", "event": ["rain"], "given": ["rain", "dry"]},
        {"type": "entropy"},
        {"type": "mutual_information", "row_cells": [["rain"], ["dry"]],
         "col_cells": [["rain"], ["dry"]]},
        {"type": "posterior"}
      ],
      "forecasts": [{"event": ["rain"], "value": 0.7}]
    }

Malformed JSON raises ParseError with position; schema and invariant
violations raise ValidationError with a distinct code naming the
offense. Reports are line-oriented text with every float printed to ten
significant digits, so identical inputs yield byte-identical output.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any, Iterable, Sequence, Union

from .axioms import AxiomReport
from .coherence import AdmissibilityVerdict, ForecastSystem, quadratic_loss, world_valuations
from .constraints import CondProb, Constraint, EventProb, Expectation, PartitionWeights
from .errors import ConstructionError, ParseError, ValidationError
from .information import entropy, mutual_information
from .solver import UpdateReport
from .spaces import (
    Distribution,
    Event,
    JointDistribution,
    Partition,
    RandomVariable,
    SampleSpace,
    conditional_prob,
)

LN2 = math.log(2.0)

TOP_LEVEL_KEYS = {"version", "space", "prior", "constraints", "queries", "forecasts"}


def fmt10(x: float) -> str:
    """Fixed report formatting: up to ten significant digits, round-trip stable."""
    return f"{float(x):.10g}"


# ---------------------------------------------------------------------------
# Queries
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProbQuery:
    event: Event


@dataclass(frozen=True)
class CondProbQuery:
    target: Event
    given: Event


@dataclass(frozen=True)
class EntropyQuery:
    pass


@dataclass(frozen=True)
class MutualInfoQuery:
    row: Partition
    col: Partition


@dataclass(frozen=True)
class PosteriorQuery:
    pass


Query = Union[ProbQuery, CondProbQuery, EntropyQuery, MutualInfoQuery, PosteriorQuery]


@dataclass(frozen=True)
class Scenario:
    space: SampleSpace
    prior: Distribution
    constraints: tuple[Constraint, ...]
    queries: tuple[Query, ...] = ()
    forecasts: ForecastSystem | None = None


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def _fail(code: str, message: str) -> ValidationError:
    return ValidationError(code, message)


def _number(x: Any, code: str, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise _fail(code, f"{where} must be a number, got {x!r}")
    return float(x)


def _labels(x: Any, code: str, where: str) -> list[str]:
    if not isinstance(x, list) or any(not isinstance(s, str) for s in x):
        raise _fail(code, f"{where} must be an array of outcome labels, got {x!r}")
    return x


def _object_keys(obj: dict, allowed: set[str], code: str, where: str) -> None:
    extra = set(obj) - allowed
    if extra:
        raise _fail(code, f"{where} has unknown keys: {sorted(extra)}")


def _required(obj: dict, key: str, code: str, where: str) -> Any:
    if key not in obj:
        raise _fail(code, f"{where} is missing required key {key!r}")
    return obj[key]


def _wrap_construction(fn, *args, **kwargs):
    # domain constructors already carry precise codes; surface them as
    # validation failures without losing the code
    try:
        return fn(*args, **kwargs)
    except ConstructionError as e:
        raise ValidationError(e.code, str(e)) from e


def _event(space: SampleSpace, labels: Any, code: str, where: str) -> Event:
    return _wrap_construction(Event, space, frozenset(_labels(labels, code, where)))


def _parse_constraint(space: SampleSpace, obj: Any, where: str) -> Constraint:
    if not isinstance(obj, dict):
        raise _fail("constraint.not_object", f"{where} must be an object")
    kind = _required(obj, "type", "constraint.missing_type", where)
    if kind == "event_prob":
        _object_keys(obj, {"type", "event", "value"}, "constraint.unknown_key", where)
        event = _event(space, _required(obj, "event", "constraint.missing_key", where),
                       "constraint.bad_event", f"{where}.event")
        value = _number(_required(obj, "value", "constraint.missing_key", where),
                        "constraint.bad_value", f"{where}.value")
        return _wrap_construction(EventProb, event, value)
    if kind == "expectation":
        _object_keys(obj, {"type", "variable", "value"}, "constraint.unknown_key", where)
        mapping = _required(obj, "variable", "constraint.missing_key", where)
        if not isinstance(mapping, dict):
            raise _fail("constraint.bad_variable", f"{where}.variable must map labels to numbers")
        values = {
            k: _number(v, "constraint.bad_variable", f"{where}.variable[{k!r}]")
            for k, v in mapping.items()
        }
        variable = _wrap_construction(RandomVariable.from_mapping, space, values)
        value = _number(_required(obj, "value", "constraint.missing_key", where),
                        "constraint.bad_value", f"{where}.value")
        return _wrap_construction(Expectation, variable, value)
    if kind == "cond_prob":
        _object_keys(obj, {"type", "event", "given", "value"}, "constraint.unknown_key", where)
        target = _event(space, _required(obj, "event", "constraint.missing_key", where),
                        "constraint.bad_event", f"{where}.event")
        given = _event(space, _required(obj, "given", "constraint.missing_key", where),
                       "constraint.bad_event", f"{where}.given")
        value = _number(_required(obj, "value", "constraint.missing_key", where),
                        "constraint.bad_value", f"{where}.value")
        return _wrap_construction(CondProb, target, given, value)
    if kind == "partition":
        _object_keys(obj, {"type", "cells", "weights"}, "constraint.unknown_key", where)
        cells = _required(obj, "cells", "constraint.missing_key", where)
        if not isinstance(cells, list):
            raise _fail("constraint.bad_cells", f"{where}.cells must be an array of label arrays")
        events = tuple(
            _event(space, cell, "constraint.bad_cells", f"{where}.cells[{i}]")
            for i, cell in enumerate(cells)
        )
        partition = _wrap_construction(Partition, events)
        raw = _required(obj, "weights", "constraint.missing_key", where)
        if not isinstance(raw, list):
            raise _fail("constraint.bad_weights", f"{where}.weights must be an array of numbers")
        weights = tuple(
            _number(w, "constraint.bad_weights", f"{where}.weights[{i}]")
            for i, w in enumerate(raw)
        )
        return _wrap_construction(PartitionWeights, partition, weights)
    raise _fail("constraint.unknown_type", f"{where} has unknown type {kind!r}")


def _parse_partition(space: SampleSpace, cells: Any, code: str, where: str) -> Partition:
    if not isinstance(cells, list):
        raise _fail(code, f"{where} must be an array of label arrays")
    events = tuple(
        _event(space, cell, code, f"{where}[{i}]") for i, cell in enumerate(cells)
    )
    return _wrap_construction(Partition, events)


def _parse_query(space: SampleSpace, obj: Any, where: str) -> Query:
    if not isinstance(obj, dict):
        raise _fail("query.not_object", f"{where} must be an object")
    kind = _required(obj, "type", "query.missing_type", where)
    if kind == "prob":
        _object_keys(obj, {"type", "event"}, "query.unknown_key", where)
        return ProbQuery(_event(space, _required(obj, "event", "query.missing_key", where),
                                "query.bad_event", f"{where}.event"))
    if kind == "cond_prob":
        _object_keys(obj, {"type", "event", "given"}, "query.unknown_key", where)
        return CondProbQuery(
            _event(space, _required(obj, "event", "query.missing_key", where),
                   "query.bad_event", f"{where}.event"),
            _event(space, _required(obj, "given", "query.missing_key", where),
                   "query.bad_event", f"{where}.given"),
        )
    if kind == "entropy":
        _object_keys(obj, {"type"}, "query.unknown_key", where)
        return EntropyQuery()
    if kind == "mutual_information":
        _object_keys(obj, {"type", "row_cells", "col_cells"}, "query.unknown_key", where)
        row = _parse_partition(space, _required(obj, "row_cells", "query.missing_key", where),
                               "query.bad_event", f"{where}.row_cells")
        col = _parse_partition(space, _required(obj, "col_cells", "query.missing_key", where),
                               "query.bad_event", f"{where}.col_cells")
        return MutualInfoQuery(row, col)
    if kind == "posterior":
        _object_keys(obj, {"type"}, "query.unknown_key", where)
        return PosteriorQuery()
    raise _fail("query.unknown_type", f"{where} has unknown type {kind!r}")


def parse(document: str) -> Scenario:
    """Parse and fully validate one scenario document."""
    try:
        data = json.loads(document)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno, column=e.colno) from e
    if not isinstance(data, dict):
        raise _fail("file.not_object", "the top level of a scenario must be a JSON object")
    _object_keys(data, TOP_LEVEL_KEYS, "file.unknown_key", "the scenario")
    if "version" in data and data["version"] != 1:
        raise _fail("file.bad_version", f"unsupported version {data['version']!r}")

    raw_space = _required(data, "space", "space.missing", "the scenario")
    space = _wrap_construction(
        SampleSpace, tuple(_labels(raw_space, "space.not_label_array", '"space"'))
    )

    raw_prior = _required(data, "prior", "prior.missing", "the scenario")
    if raw_prior == "uniform":
        prior = Distribution.uniform(space)
    elif isinstance(raw_prior, list):
        weights = tuple(
            _number(w, "prior.bad_number", f'"prior"[{i}]') for i, w in enumerate(raw_prior)
        )
        prior = _wrap_construction(Distribution, space, weights)
    else:
        raise _fail("prior.bad", '"prior" must be "uniform" or an array of numbers')

    raw_constraints = _required(data, "constraints", "constraints.missing", "the scenario")
    if not isinstance(raw_constraints, list):
        raise _fail("constraints.not_array", '"constraints" must be an array')
    constraints = tuple(
        _parse_constraint(space, obj, f'"constraints"[{i}]')
        for i, obj in enumerate(raw_constraints)
    )

    queries: tuple[Query, ...] = ()
    if "queries" in data:
        if not isinstance(data["queries"], list):
            raise _fail("queries.not_array", '"queries" must be an array')
        queries = tuple(
            _parse_query(space, obj, f'"queries"[{i}]') for i, obj in enumerate(data["queries"])
        )

    forecasts: ForecastSystem | None = None
    if "forecasts" in data:
        raw = data["forecasts"]
        if not isinstance(raw, list):
            raise _fail("forecasts.not_array", '"forecasts" must be an array')
        events: list[Event] = []
        values: list[float] = []
        for i, entry in enumerate(raw):
            where = f'"forecasts"[{i}]'
            if not isinstance(entry, dict):
                raise _fail("forecast.bad_entry", f"{where} must be an object")
            _object_keys(entry, {"event", "value"}, "forecast.bad_entry", where)
            events.append(_event(space, _required(entry, "event", "forecast.bad_entry", where),
                                 "forecast.bad_entry", f"{where}.event"))
            values.append(_number(_required(entry, "value", "forecast.bad_entry", where),
                                  "forecast.bad_entry", f"{where}.value"))
        forecasts = _wrap_construction(ForecastSystem, space, tuple(events), tuple(values))

    return Scenario(space, prior, constraints, queries, forecasts)


def parse_file(path: str) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


# ---------------------------------------------------------------------------
# Serialization (round-trip support)
# ---------------------------------------------------------------------------


def _event_labels(e: Event) -> list[str]:
    return sorted(e.members, key=e.space.index.__getitem__)


def _constraint_to_json(c: Constraint) -> dict:
    if isinstance(c, EventProb):
        return {"type": "event_prob", "event": _event_labels(c.event), "value": c.value}
    if isinstance(c, Expectation):
        mapping = dict(zip(c.variable.space.outcomes, c.variable.values))
        return {"type": "expectation", "variable": mapping, "value": c.value}
    if isinstance(c, CondProb):
        return {
            "type": "cond_prob",
            "event": _event_labels(c.target),
            "given": _event_labels(c.given),
            "value": c.value,
        }
    if isinstance(c, PartitionWeights):
        return {
            "type": "partition",
            "cells": [_event_labels(cell) for cell in c.partition.cells],
            "weights": list(c.weights),
        }
    raise TypeError(f"not a constraint: {c!r}")


def _query_to_json(q: Query) -> dict:
    if isinstance(q, ProbQuery):
        return {"type": "prob", "event": _event_labels(q.event)}
    if isinstance(q, CondProbQuery):
        return {"type": "cond_prob", "event": _event_labels(q.target),
                "given": _event_labels(q.given)}
    if isinstance(q, EntropyQuery):
        return {"type": "entropy"}
    if isinstance(q, MutualInfoQuery):
        return {"type": "mutual_information",
                "row_cells": [_event_labels(c) for c in q.row.cells],
                "col_cells": [_event_labels(c) for c in q.col.cells]}
    if isinstance(q, PosteriorQuery):
        return {"type": "posterior"}
    raise TypeError(f"not a query: {q!r}")


def serialize(sc: Scenario) -> str:
    """Emit a scenario as canonical JSON; parse(serialize(sc)) == sc."""
    doc: dict[str, Any] = {
        "version": 1,
        "space": list(sc.space.outcomes),
        "prior": list(sc.prior.weights),
        "constraints": [_constraint_to_json(c) for c in sc.constraints],
    }
    if sc.queries:
        doc["queries"] = [_query_to_json(q) for q in sc.queries]
    if sc.forecasts is not None:
        doc["forecasts"] = [
            {"event": _event_labels(e), "value": v}
            for e, v in zip(sc.forecasts.events, sc.forecasts.forecasts)
        ]
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


def _info_value(nats: float, units: str) -> str:
    if units == "bits":
        return f"{fmt10(nats / LN2)} bits"
    return f"{fmt10(nats)} nats"


def _distribution_lines(dist: Distribution, indent: str = "  ") -> list[str]:
    return [f"{indent}{label} {fmt10(w)}" for label, w in zip(dist.space.outcomes, dist.weights)]


def _emit_update(report: UpdateReport, units: str) -> list[str]:
    lines = [
        f"method: {report.method}",
        f"iterations: {report.iterations}",
        f"final_residual: {fmt10(report.final_residual)}",
        f"objective: {_info_value(report.objective, units)}",
    ]
    if report.multipliers:
        lines.append("multipliers: " + " ".join(fmt10(m) for m in report.multipliers))
    else:
        lines.append("multipliers: (none)")
    lines.append("posterior:")
    lines.extend(_distribution_lines(report.posterior))
    return lines


def _emit_axioms(report: AxiomReport) -> list[str]:
    lines = [
        f"result: {'passed' if report.passed else 'failed'}",
        f"tol: {fmt10(report.tol)}",
        f"max_deviation: {fmt10(report.max_deviation)}",
    ]
    lines.extend(f"cell {i} deviation {fmt10(d)}" for i, d in report.per_cell)
    if report.skipped_cells:
        lines.append("skipped cells: " + ", ".join(str(i) for i in report.skipped_cells))
    return lines


def _emit_verdict(verdict: AdmissibilityVerdict, system: ForecastSystem | None) -> list[str]:
    lines = [f"admissible: {'yes' if verdict.admissible else 'no'}"]
    if system is None:
        if not verdict.admissible:
            lines.append(
                "dominating: " + " ".join(fmt10(v) for v in (verdict.dominating or ()))
            )
            lines.append(f"margin: {fmt10(verdict.margin)}")
        return lines
    if verdict.admissible:
        for w in world_valuations(system):
            lines.append(f"world {w.outcome}: loss {fmt10(quadratic_loss(system, w))}")
        return lines
    dominating = ForecastSystem(system.space, system.events, verdict.dominating)
    lines.append("dominating: " + " ".join(fmt10(v) for v in dominating.forecasts))
    for w in world_valuations(system):
        lines.append(
            f"world {w.outcome}: loss {fmt10(quadratic_loss(system, w))} "
            f"-> {fmt10(quadratic_loss(dominating, w))}"
        )
    lines.append(f"margin: {fmt10(verdict.margin)}")
    return lines


def _emit_divergence(table: Iterable[tuple[float, float]]) -> list[str]:
    lines = ["q divergence"]
    lines.extend(f"{fmt10(q)} {fmt10(d)}" for q, d in table)
    return lines


def emit_report(
    report: UpdateReport | AxiomReport | AdmissibilityVerdict | Sequence[tuple[float, float]],
    *,
    units: str = "nats",
    system: ForecastSystem | None = None,
) -> str:
    """Render any result object as deterministic line-oriented text.

    ``units`` converts information values (and only those) to bits when
    set. For admissibility verdicts, pass the audited system to get
    per-world loss tables.
    """
    if isinstance(report, UpdateReport):
        lines = _emit_update(report, units)
    elif isinstance(report, AxiomReport):
        lines = _emit_axioms(report)
    elif isinstance(report, AdmissibilityVerdict):
        lines = _emit_verdict(report, system)
    else:
        lines = _emit_divergence(report)
    return "\n".join(lines) + "\n"


def run_queries(dist: Distribution, queries: Sequence[Query], units: str = "nats") -> list[str]:
    """Answer each query against ``dist``, one report line per answer."""
    lines: list[str] = []
    for q in queries:
        if isinstance(q, ProbQuery):
            lines.append(f"P({q.event.describe()}) = {fmt10(dist.prob(q.event))}")
        elif isinstance(q, CondProbQuery):
            value = conditional_prob(dist, q.target, q.given)
            lines.append(
                f"P({q.target.describe()} | {q.given.describe()}) = {fmt10(value)}"
            )
        elif isinstance(q, EntropyQuery):
            lines.append(f"entropy = {_info_value(entropy(dist), units)}")
        elif isinstance(q, MutualInfoQuery):
            lines.append(
                f"mutual_information = {_info_value(_partition_mi(dist, q), units)}"
            )
        elif isinstance(q, PosteriorQuery):
            lines.append("distribution:")
            lines.extend(_distribution_lines(dist))
        else:
            raise TypeError(f"not a query: {q!r}")
    return lines


def _partition_mi(dist: Distribution, q: MutualInfoQuery) -> float:
    """Mutual information between two partition-valued views of one space."""
    row_space = SampleSpace(tuple(c.describe() for c in q.row.cells))
    col_space = SampleSpace(tuple(c.describe() for c in q.col.cells))
    weights = [
        [dist.prob(r.intersect(c)) for c in q.col.cells] for r in q.row.cells
    ]
    joint = JointDistribution(row_space, col_space, tuple(tuple(row) for row in weights))
    return mutual_information(joint)


__all__ = [
    "Scenario",
    "ProbQuery",
    "CondProbQuery",
    "EntropyQuery",
    "MutualInfoQuery",
    "PosteriorQuery",
    "Query",
    "parse",
    "parse_file",
    "serialize",
    "emit_report",
    "run_queries",
    "fmt10",
]
