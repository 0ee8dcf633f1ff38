"""Problem specifications: loading, validation and evaluation."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any, Literal, Sequence

import jsonschema
import numpy as np

from prefcalc.axioms import AxiomCheck, AxiomReport
from prefcalc.cli.formula import FormulaError, format_formula, is_name, parse_formula
from prefcalc.desirability import (
    DesirabilityInterval,
    DesirabilityMeasure,
    and_measures,
    crisp_measure,
    implies_measures,
    interval_and,
    interval_implies,
    interval_not,
    interval_or,
    not_measure,
    or_measures,
    prop_lower,
    prop_upper,
)
from prefcalc.errors import EmptyPropositionError, PrefcalcError, UniverseError
from prefcalc.norm_algebra import TOL, NormProfile
from prefcalc.preference import (
    PreferenceInterval,
    PreferenceRelation,
    from_desirability,
    interval_pref_from_desirability,
    prop_pref_bounds,
    transitive_envelope,
    transitivity_violations,
    verify_axioms,
)
from prefcalc.similarity import (
    SimilarityRelation,
    from_preference,
    resemblance_bounds,
    verify_similarity,
)
from prefcalc.worlds import Formula, Universe, atoms_of, build_universe, eval_formula, fold


class SpecParseError(PrefcalcError):
    """The spec file could not be read or is not JSON."""


class SpecValidationError(PrefcalcError, ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
        self.message = message


@lru_cache(maxsize=1)
def schema() -> dict[str, Any]:
    text = resources.files("prefcalc.cli").joinpath("schema.json").read_text(encoding="utf-8")
    return json.loads(text)


@lru_cache(maxsize=1)
def _validator() -> jsonschema.protocols.Validator:
    cls = jsonschema.validators.validator_for(schema())
    cls.check_schema(schema())
    return cls(schema())


@dataclass(frozen=True)
class Constraint:
    name: str
    kind: Literal["crisp", "table", "interval"]
    formula: Formula | None = None
    values: tuple[float, ...] | None = None
    lower: tuple[float, ...] | None = None
    upper: tuple[float, ...] | None = None


@dataclass(frozen=True)
class Query:
    kind: Literal["rank", "prefer", "similarity", "bounds"]
    of: str | None = None
    given: str | None = None


@dataclass(frozen=True)
class ProblemSpec:
    universe: Universe
    profile: NormProfile
    constraints: tuple[Constraint, ...]
    aggregate: Formula
    queries: tuple[Query, ...] = ()
    description: str = ""

    def constraint(self, name: str) -> Constraint:
        for c in self.constraints:
            if c.name == name:
                return c
        raise KeyError(name)

    def with_profile(self, profile: NormProfile) -> ProblemSpec:
        return ProblemSpec(self.universe, profile, self.constraints, self.aggregate, self.queries, self.description)


def _path(parts: Sequence[Any]) -> str:
    out = ""
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out


def _formula(text: str, names: set[str], path: str, what: str) -> Formula:
    try:
        f = parse_formula(text)
    except FormulaError as e:
        raise SpecValidationError(path, str(e)) from None
    unknown = atoms_of(f) - names
    if unknown:
        raise SpecValidationError(path, f"unknown {what} {sorted(unknown)}")
    return f


def load_spec(path: str | Path) -> ProblemSpec:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise SpecParseError(f"cannot read {path}: {e.strerror or e}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecParseError(f"{path}: invalid JSON: {e}") from None
    return parse_spec(doc)


def parse_spec(doc: Any) -> ProblemSpec:
    """Validate a decoded JSON document and build a :class:`ProblemSpec`."""
    e = jsonschema.exceptions.best_match(_validator().iter_errors(doc))
    if e is not None:
        raise SpecValidationError(_path(e.absolute_path) or "spec", e.message)

    atoms: list[str] = doc["atoms"]
    for i, a in enumerate(atoms):
        if not is_name(a):
            raise SpecValidationError(f"atoms[{i}]", f"{a!r} is not a valid atom name")
    try:
        universe = build_universe(atoms, doc.get("worlds"))
    except UniverseError as e:
        raise SpecValidationError("worlds" if "worlds" in doc else "atoms", str(e)) from None
    n = universe.size

    try:
        profile = NormProfile.from_config(doc["profile"])
    except (ValueError, KeyError) as e:
        raise SpecValidationError("profile", str(e).strip("'\"")) from None

    atom_set = set(atoms)
    constraints: list[Constraint] = []
    seen: set[str] = set()
    for i, raw in enumerate(doc["constraints"]):
        where = f"constraints[{i}]"
        name = raw.get("name", f"c{i}")
        if not is_name(name):
            raise SpecValidationError(f"{where}.name", f"{name!r} is not a valid constraint name")
        if name in seen:
            raise SpecValidationError(f"{where}.name", f"duplicate constraint name {name!r}")
        seen.add(name)
        kind = raw["kind"]
        if kind == "crisp":
            f = _formula(raw["formula"], atom_set, f"{where}.formula", "atoms")
            constraints.append(Constraint(name, kind, formula=f))
            continue
        tables = {"values": raw.get("values")} if kind == "table" else {"lower": raw["lower"], "upper": raw["upper"]}
        for key, table in tables.items():
            if table is None or len(table) != n:
                got = "no" if table is None else len(table)
                raise SpecValidationError(
                    f"{where}.{key}",
                    f"constraint {name!r} has {got} values but the universe has {n} worlds",
                )
        if kind == "table":
            constraints.append(Constraint(name, kind, values=tuple(map(float, raw["values"]))))
        else:
            lo, hi = tuple(map(float, raw["lower"])), tuple(map(float, raw["upper"]))
            for w, (a, b) in enumerate(zip(lo, hi)):
                if a > b:
                    raise SpecValidationError(
                        f"{where}.lower[{w}]",
                        f"constraint {name!r}: lower bound {a} exceeds upper bound {b} at world {w}",
                    )
            constraints.append(Constraint(name, kind, lower=lo, upper=hi))

    aggregate = _formula(doc["aggregate"], seen, "aggregate", "constraint names")

    queries: list[Query] = []
    for i, q in enumerate(doc.get("queries", [])):
        kind = q["kind"]
        if kind == "bounds":
            query = Query(kind, q["of"], q.get("given"))
        elif kind == "prefer":
            query = Query(kind, q["p"], q["q"])
        else:
            query = Query(kind)
        keys = ("p", "q") if kind == "prefer" else ("of", "given")
        for key, text in zip(keys, (query.of, query.given)):
            if text is not None:
                where = f"queries[{i}].{key}"
                f = _formula(text, atom_set, where, "atoms")
                if eval_formula(universe, f).is_empty():
                    raise SpecValidationError(where, f"proposition {text!r} holds in no world")
        queries.append(query)

    return ProblemSpec(universe, profile, tuple(constraints), aggregate, tuple(queries), doc.get("description", ""))


# -- evaluation -----------------------------------------------------------------------


@dataclass(frozen=True)
class RankEntry:
    world: int
    valuation: dict[str, bool]
    value: float
    upper: float | None = None


@dataclass(frozen=True)
class BoundsResult:
    of: str
    given: str | None
    necessary: float
    possible: float
    resemblance: tuple[float, float] | None = None


@dataclass
class EvaluationReport:
    spec: ProblemSpec
    aggregate: DesirabilityMeasure | DesirabilityInterval
    preference: PreferenceRelation | PreferenceInterval
    ranking: list[RankEntry]
    similarity: SimilarityRelation | tuple[np.ndarray, np.ndarray]
    bounds: list[BoundsResult] = field(default_factory=list)
    reports: list[AxiomReport] = field(default_factory=list)
    include_similarity: bool = False

    @property
    def is_interval(self) -> bool:
        return isinstance(self.aggregate, DesirabilityInterval)

    @property
    def universe(self) -> Universe:
        return self.spec.universe


def constraint_measures(spec: ProblemSpec) -> dict[str, DesirabilityMeasure | DesirabilityInterval]:
    u = spec.universe
    out: dict[str, DesirabilityMeasure | DesirabilityInterval] = {}
    for c in spec.constraints:
        if c.kind == "crisp":
            out[c.name] = crisp_measure(eval_formula(u, c.formula))  # type: ignore[arg-type]
        elif c.kind == "table":
            out[c.name] = DesirabilityMeasure(u, c.values)  # type: ignore[arg-type]
        else:
            out[c.name] = DesirabilityInterval.from_values(u, c.lower, c.upper)  # type: ignore[arg-type]
    return out


def aggregate(spec: ProblemSpec) -> DesirabilityMeasure | DesirabilityInterval:
    """Evaluate the aggregate expression; interval-valued if any operand it uses is."""
    p = spec.profile
    measures = constraint_measures(spec)
    used = atoms_of(spec.aggregate)
    if any(isinstance(measures[n], DesirabilityInterval) for n in used):
        lifted = {
            n: m if isinstance(m, DesirabilityInterval) else DesirabilityInterval.exact(m)
            for n, m in measures.items()
        }
        return fold(
            spec.aggregate,
            lifted.__getitem__,
            lambda a: interval_not(p, a),
            lambda a, b: interval_and(p, a, b),
            lambda a, b: interval_or(p, a, b),
            lambda a, b: interval_implies(p, a, b),
        )
    return fold(
        spec.aggregate,
        measures.__getitem__,  # type: ignore[arg-type]
        lambda a: not_measure(p, a),
        lambda a, b: and_measures(p, a, b),
        lambda a, b: or_measures(p, a, b),
        lambda a, b: implies_measures(p, a, b),
    )


def rank(agg: DesirabilityMeasure | DesirabilityInterval) -> list[RankEntry]:
    """Worlds by descending desirability, ties by ascending world id.

    Interval aggregates rank by the lower bound, then the upper bound.
    """
    if isinstance(agg, DesirabilityInterval):
        u = agg.universe
        lo, hi = agg.lower.values, agg.upper.values
        order = sorted(range(u.size), key=lambda w: (-lo[w], -hi[w], w))
        return [RankEntry(w, u.valuation(w), float(lo[w]), float(hi[w])) for w in order]
    u = agg.universe
    v = agg.values
    order = sorted(range(u.size), key=lambda w: (-v[w], w))
    return [RankEntry(w, u.valuation(w), float(v[w])) for w in order]


def _interval_reports(pi: PreferenceInterval, sim: tuple[np.ndarray, np.ndarray]) -> list[AxiomReport]:
    t = pi.tightened()
    env = transitive_envelope(t.upper, pi.conorm)
    lower_rel = verify_axioms(pi.lower_relation())
    checks = (
        AxiomCheck("lower<=upper", bool(np.all(pi.lower <= pi.upper + TOL))),
        AxiomCheck("lower.P1", lower_rel["P1"].passed, lower_rel["P1"].witness),
        AxiomCheck("lower.P2", lower_rel["P2"].passed, lower_rel["P2"].witness),
        AxiomCheck("tightened_upper.P1", bool(np.all(np.diag(t.upper) == 0.0))),
        AxiomCheck(
            "upper_envelope.P3",
            not transitivity_violations(env, pi.conorm).any(),
        ),
    )
    s_lo, s_hi = sim
    s_checks = (
        AxiomCheck("lower<=upper", bool(np.all(s_lo <= s_hi + TOL))),
        AxiomCheck("S1", bool(np.all(np.abs(np.diag(s_lo) - 1.0) <= TOL))),
        AxiomCheck("S2", bool(np.allclose(s_lo, s_lo.T, atol=TOL, rtol=0) and np.allclose(s_hi, s_hi.T, atol=TOL, rtol=0))),
    )
    return [
        AxiomReport(
            "preference_interval",
            checks,
            ("raw possible preference diagonal is nonzero where a world's bounds are loose; tightened to 0",),
        ),
        AxiomReport("similarity_interval", s_checks),
    ]


def evaluate(spec: ProblemSpec) -> EvaluationReport:
    agg = aggregate(spec)
    conorm = spec.profile.conorm_family
    u = spec.universe
    reports: list[AxiomReport] = []

    if isinstance(agg, DesirabilityInterval):
        pref: PreferenceRelation | PreferenceInterval = interval_pref_from_desirability(agg, conorm)
        t = pref.tightened()
        neg = spec.profile.negate
        sim: Any = (np.minimum(neg(t.upper), neg(t.upper.T)), np.minimum(neg(t.lower), neg(t.lower.T)))
        reports += _interval_reports(pref, sim)
        bound_source: Any = t
    else:
        pref = from_desirability(agg, conorm)
        reports.append(verify_axioms(pref))
        sim = from_preference(pref)
        reports.append(verify_similarity(sim))
        bound_source = pref

    results: list[BoundsResult] = []
    for i, q in enumerate(spec.queries):
        if q.kind not in ("bounds", "prefer"):
            continue
        try:
            results.append(query_bounds(agg, bound_source, u, q.of, q.given))  # type: ignore[arg-type]
        except EmptyPropositionError as e:
            raise SpecValidationError(f"queries[{i}]", str(e)) from None

    return EvaluationReport(
        spec,
        agg,
        pref,
        rank(agg),
        sim,
        results,
        reports,
        include_similarity=any(q.kind == "similarity" for q in spec.queries),
    )


def query_bounds(
    agg: DesirabilityMeasure | DesirabilityInterval,
    pref: PreferenceRelation | PreferenceInterval,
    u: Universe,
    of: str,
    given: str | None = None,
) -> BoundsResult:
    """Desirability bounds over ``of``-worlds, or preference bounds of ``of`` over ``given``."""
    p = eval_formula(u, parse_formula(of))
    if given is None:
        lo_m, hi_m = (agg.lower, agg.upper) if isinstance(agg, DesirabilityInterval) else (agg, agg)
        return BoundsResult(of, None, prop_lower(lo_m, p), prop_upper(hi_m, p))
    q = eval_formula(u, parse_formula(given))
    b = prop_pref_bounds(pref, p, q)
    r = resemblance_bounds(b)
    return BoundsResult(of, given, b.n_pq, b.pi_pq, (r.lower, r.upper))


def describe_aggregate(spec: ProblemSpec) -> str:
    return format_formula(spec.aggregate)
