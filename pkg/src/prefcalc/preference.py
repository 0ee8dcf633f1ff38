"""Graded preference relations between worlds.

A relation is stored as an ``n x n`` matrix ``R`` with ``R[i, j]`` the
degree to which world ``i`` is preferred to world ``j`` (the resources one
would spend to be in ``i`` rather than ``j``). Transitivity is bounded by a
t-conorm, recorded on the relation as ``conorm``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Literal, Sequence

import numpy as np

from prefcalc.axioms import AxiomCheck, AxiomReport
from prefcalc.desirability import (
    DesirabilityInterval,
    DesirabilityMeasure,
    and_measures,
    implies_measures,
    not_measure,
    or_measures,
)
from prefcalc.errors import AxiomViolationError, EmptyPropositionError, UniverseError, UniverseMismatchError
from prefcalc.norm_algebra import TOL, ConormFamily, NormProfile, check_unit
from prefcalc.worlds import Proposition, Universe, same_universe

# Generators closer than this are treated as identical when deduplicating.
DEDUP_DECIMALS = 12
# Largest universe the grid search in single_generator will attempt.
BRUTE_FORCE_MAX_WORLDS = 4
BRUTE_FORCE_STEP = 1 / 32


def _pseudoinverse(conorm: ConormFamily, a, b):
    return NormProfile.for_conorm(conorm).conorm_pseudoinverse(a, b)


def _matrix(values, n: int) -> np.ndarray:
    m = np.array(values, dtype=float)
    if m.shape != (n, n):
        raise UniverseError(f"expected a {n}x{n} matrix, got shape {m.shape}")
    check_unit(m)
    m.setflags(write=False)
    return m


@dataclass(frozen=True, eq=False)
class PreferenceRelation:
    universe: Universe
    conorm: ConormFamily
    values: np.ndarray
    # Set by combine(); axiom status of a derived relation.
    report: AxiomReport | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "conorm", ConormFamily(self.conorm))
        object.__setattr__(self, "values", _matrix(self.values, self.universe.size))

    @classmethod
    def zero(cls, u: Universe, conorm: ConormFamily) -> PreferenceRelation:
        return cls(u, conorm, np.zeros((u.size, u.size)))

    @property
    def profile(self) -> NormProfile:
        return NormProfile.for_conorm(self.conorm)

    def __call__(self, w: int, w2: int) -> float:
        """Degree to which ``w`` is preferred to ``w2``."""
        return float(self.values[w, w2])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PreferenceRelation):
            return NotImplemented
        return (
            self.universe == other.universe
            and self.conorm is other.conorm
            and np.array_equal(self.values, other.values)
        )

    __hash__ = None  # type: ignore[assignment]

    def allclose(self, other: PreferenceRelation, tol: float = TOL) -> bool:
        return (
            self.universe == other.universe
            and self.conorm is other.conorm
            and bool(np.all(np.abs(self.values - other.values) <= tol))
        )


@dataclass(frozen=True, eq=False)
class GeneratingFamily:
    """Desirability measures whose sup-of-differences generates a relation.

    ``index`` labels each generator; for a Valverde family it is the world
    the generator was read off (the first such world after deduplication).
    """

    universe: Universe
    generators: tuple[DesirabilityMeasure, ...]
    index: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        gens = tuple(self.generators)
        for g in gens:
            same_universe(self.universe, g.universe)
        object.__setattr__(self, "generators", gens)
        idx = tuple(range(len(gens))) if self.index is None else tuple(self.index)
        if len(idx) != len(gens):
            raise ValueError("index length must match the number of generators")
        object.__setattr__(self, "index", idx)

    def __len__(self) -> int:
        return len(self.generators)

    def matrix(self) -> np.ndarray:
        """Generators stacked row-wise, shape ``(len(self), n_worlds)``."""
        if not self.generators:
            return np.zeros((0, self.universe.size))
        return np.stack([g.values for g in self.generators])


# -- axioms ---------------------------------------------------------------------


def _first(mask: np.ndarray) -> tuple[int, ...] | None:
    idx = np.argwhere(mask)
    return None if idx.size == 0 else tuple(int(i) for i in idx[0])


def transitivity_violations(values: np.ndarray, conorm: ConormFamily, tol: float = TOL) -> np.ndarray:
    """Mask ``V[i, j, k]``: ``R[i, k] > R[i, j] (+) R[j, k]``."""
    s = NormProfile.for_conorm(conorm).conorm(values[:, :, None], values[None, :, :])
    return values[:, None, :] > s + tol


def verify_axioms(rho: PreferenceRelation, tol: float = TOL) -> AxiomReport:
    """Exhaustive check of P1 (zero diagonal), P2 (antisymmetric support), P3 (transitivity).

    Witnesses: ``(w,)`` for P1, ``(w, w2)`` for P2, ``(w, w2, w3)`` for P3
    meaning ``R[w, w3] > R[w, w2] (+) R[w2, w3]``.
    """
    r = rho.values
    diag = np.abs(np.diag(r)) > tol
    both = (r > tol) & (r.T > tol)
    np.fill_diagonal(both, False)
    checks = (
        AxiomCheck("P1", not diag.any(), _first(diag)),
        AxiomCheck("P2", not both.any(), _first(both)),
        AxiomCheck("P3", *_p3(r, rho.conorm, tol)),
    )
    return AxiomReport("preference", checks)


def _p3(r: np.ndarray, conorm: ConormFamily, tol: float) -> tuple[bool, tuple[int, ...] | None]:
    w = _first(transitivity_violations(r, conorm, tol))
    return w is None, w


def _require_axioms(rho: PreferenceRelation, which: Sequence[str] = ("P1", "P2", "P3")) -> None:
    report = verify_axioms(rho)
    for name in which:
        c = report[name]
        if not c.passed:
            raise AxiomViolationError(f"relation violates {name} at {c.witness}")


# -- derivation and representation ------------------------------------------------


def from_desirability(d: DesirabilityMeasure, conorm: ConormFamily) -> PreferenceRelation:
    """``R[i, j] = D(i) (-) D(j)``, the conorm pseudoinverse of the two values."""
    v = d.values
    return PreferenceRelation(d.universe, conorm, _pseudoinverse(conorm, v[:, None], v[None, :]))


def valverde_family(rho: PreferenceRelation, deduplicate: bool = True) -> GeneratingFamily:
    """Canonical family: generator ``w`` is column ``w`` of the relation.

    With ``deduplicate`` equal columns collapse into one generator, labelled
    by the first world that produced it.
    """
    _require_axioms(rho)
    cols = rho.values.T
    index: list[int] = []
    seen: set[bytes] = set()
    for w in range(cols.shape[0]):
        if deduplicate:
            key = (np.round(cols[w], DEDUP_DECIMALS) + 0.0).tobytes()
            if key in seen:
                continue
            seen.add(key)
        index.append(w)
    gens = tuple(DesirabilityMeasure(rho.universe, cols[w]) for w in index)
    return GeneratingFamily(rho.universe, gens, tuple(index))


def regenerate(family: GeneratingFamily, conorm: ConormFamily) -> PreferenceRelation:
    """``R[i, j] = max over generators g of g(i) (-) g(j)``.

    The zero diagonal and transitivity always hold for the result;
    antisymmetry does not in general and is left to :func:`verify_axioms`.
    """
    if len(family) == 0:
        raise ValueError("cannot regenerate from an empty family")
    g = family.matrix()
    diffs = _pseudoinverse(conorm, g[:, :, None], g[:, None, :])
    return PreferenceRelation(family.universe, conorm, diffs.max(axis=0))


@dataclass(frozen=True)
class SingleGeneratorResult:
    """Outcome of searching for one measure that generates a relation.

    ``status`` is ``"found"``, ``"none"`` (proved absent) or ``"unknown"``
    (the search could not decide). For the bounded sum, ``shift_range`` is the
    closed interval of additive constants ``c`` for which ``c + delta`` stays
    in [0, 1]; ``measure`` uses its left end.
    """

    status: Literal["found", "none", "unknown"]
    measure: DesirabilityMeasure | None = None
    shift_range: tuple[float, float] | None = None
    method: str = ""

    @property
    def found(self) -> bool:
        return self.status == "found"


def single_generator(rho: PreferenceRelation, tol: float = TOL) -> SingleGeneratorResult:
    """Find a single desirability measure ``D`` with ``from_desirability(D) == rho``.

    Closed form for the bounded sum, where any generator is unique up to an
    additive shift. Other conorms get a grid search on small universes.
    """
    if not verify_axioms(rho, tol).passed:
        # every relation induced by a single measure satisfies the axioms
        return SingleGeneratorResult("none", method="axiom_violation")
    if rho.conorm is ConormFamily.BOUNDED_SUM:
        return _single_bounded_sum(rho, tol)
    return _single_brute_force(rho, tol)


def _single_bounded_sum(rho: PreferenceRelation, tol: float) -> SingleGeneratorResult:
    r = rho.values
    # offsets against world 0
    delta = r[:, 0] - r[0, :]
    lo, hi = float(-delta.min()), float(1.0 - delta.max())
    if lo > hi + tol:
        return SingleGeneratorResult("none", method="closed_form")
    induced = np.maximum(0.0, delta[:, None] - delta[None, :])
    if np.any(np.abs(induced - r) > tol):
        return SingleGeneratorResult("none", method="closed_form")
    hi = max(hi, lo)
    d = np.clip(lo + delta, 0.0, 1.0)
    return SingleGeneratorResult(
        "found", DesirabilityMeasure(rho.universe, d), (lo, hi), method="closed_form"
    )


def _single_brute_force(rho: PreferenceRelation, tol: float) -> SingleGeneratorResult:
    n = rho.universe.size
    if n > BRUTE_FORCE_MAX_WORLDS:
        return SingleGeneratorResult("unknown", method="universe too large for grid search")
    r = rho.values
    steps = int(round(1 / BRUTE_FORCE_STEP))
    candidates = np.unique(np.concatenate([np.arange(steps + 1) / steps, r.ravel()]))
    ps = rho.profile.conorm_pseudoinverse
    pair = ps(candidates[:, None], candidates[None, :])

    assigned: list[int] = []

    def extend(k: int) -> bool:
        if k == n:
            return True
        for ci in range(candidates.size):
            ok = all(
                abs(pair[ci, cj] - r[k, j]) <= tol and abs(pair[cj, ci] - r[j, k]) <= tol
                for j, cj in enumerate(assigned)
            )
            if ok:
                assigned.append(ci)
                if extend(k + 1):
                    return True
                assigned.pop()
        return False

    if extend(0):
        d = candidates[assigned]
        return SingleGeneratorResult("found", DesirabilityMeasure(rho.universe, d), method="grid_search")
    return SingleGeneratorResult("unknown", method="grid_search")


# -- combination ----------------------------------------------------------------------


class CombineOp(str, Enum):
    AND = "and"
    OR = "or"
    NOT = "not"
    IMPLIES = "implies"


def combine_families(
    op: CombineOp | str,
    family: GeneratingFamily,
    family2: GeneratingFamily | None,
    profile: NormProfile,
) -> GeneratingFamily:
    """Combine two families generator-by-generator (matching position)."""
    op = CombineOp(op)
    if op is CombineOp.NOT:
        if family2 is not None:
            raise ValueError("'not' takes a single operand")
        gens = tuple(not_measure(profile, g) for g in family.generators)
        return GeneratingFamily(family.universe, gens, family.index)
    if family2 is None:
        raise ValueError(f"{op.value!r} takes two operands")
    same_universe(family.universe, family2.universe)
    if len(family) != len(family2):
        raise ValueError("families must have the same number of generators")
    fn = {CombineOp.AND: and_measures, CombineOp.OR: or_measures, CombineOp.IMPLIES: implies_measures}[op]
    gens = tuple(fn(profile, a, b) for a, b in zip(family.generators, family2.generators))
    return GeneratingFamily(family.universe, gens, family.index)


def combine(
    op: CombineOp | str,
    rho: PreferenceRelation,
    rho2: PreferenceRelation | None = None,
    profile: NormProfile | None = None,
) -> PreferenceRelation:
    """Combine relations through their per-world (undeduplicated) Valverde families.

    ``profile`` supplies the measure-level connectives; it defaults to the
    matched profile of ``rho``'s conorm. The result carries an axiom report:
    antisymmetry can fail for combined relations and is reported, not raised.
    """
    if rho2 is not None:
        same_universe(rho.universe, rho2.universe)
        if rho.conorm is not rho2.conorm:
            raise UniverseMismatchError(
                f"conorm mismatch: {rho.conorm.value} vs {rho2.conorm.value}"
            )
    profile = profile or rho.profile
    f1 = valverde_family(rho, deduplicate=False)
    f2 = None if rho2 is None else valverde_family(rho2, deduplicate=False)
    out = regenerate(combine_families(op, f1, f2, profile), rho.conorm)
    return replace(out, report=verify_axioms(out))


# -- propositional and interval bounds -------------------------------------------------


def _block(values: np.ndarray, p: Proposition, q: Proposition) -> np.ndarray:
    if p.is_empty() or q.is_empty():
        raise EmptyPropositionError("preference bounds need non-empty propositions")
    return values[np.ix_(p.ids, q.ids)]


def prop_pref_lower(rho: PreferenceRelation, p: Proposition, q: Proposition) -> float:
    """Infimum over p-worlds and q-worlds of the preference of the first over the second."""
    same_universe(rho.universe, p.universe)
    same_universe(rho.universe, q.universe)
    return float(_block(rho.values, p, q).min())


def prop_pref_upper(
    rho: PreferenceRelation,
    p: Proposition,
    q: Proposition,
    mode: Literal["sup_inf", "sup_sup"] = "sup_inf",
) -> float:
    """Sup over p-worlds of the inf over q-worlds.

    ``mode="sup_sup"`` gives the looser sup over both, for comparison only.
    """
    same_universe(rho.universe, p.universe)
    same_universe(rho.universe, q.universe)
    b = _block(rho.values, p, q)
    if mode == "sup_inf":
        return float(b.min(axis=1).max())
    if mode == "sup_sup":
        return float(b.max())
    raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True, eq=False)
class PreferenceInterval:
    """Pairwise bounds on an unknown preference relation.

    Built from desirability bounds the upper diagonal is kept exactly as the
    formula gives it; :meth:`tightened` zeroes it.
    """

    universe: Universe
    conorm: ConormFamily
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self) -> None:
        n = self.universe.size
        object.__setattr__(self, "conorm", ConormFamily(self.conorm))
        object.__setattr__(self, "lower", _matrix(self.lower, n))
        object.__setattr__(self, "upper", _matrix(self.upper, n))
        if np.any(self.lower > self.upper + TOL):
            i, j = _first(self.lower > self.upper + TOL)  # type: ignore[misc]
            raise ValueError(f"lower bound exceeds upper bound at ({i}, {j})")

    @classmethod
    def exact(cls, rho: PreferenceRelation) -> PreferenceInterval:
        return cls(rho.universe, rho.conorm, rho.values, rho.values)

    def tightened(self) -> PreferenceInterval:
        up = self.upper.copy()
        np.fill_diagonal(up, 0.0)
        lo = self.lower.copy()
        np.fill_diagonal(lo, 0.0)
        return PreferenceInterval(self.universe, self.conorm, lo, up)

    def contains(self, rho: PreferenceRelation, tol: float = TOL) -> bool:
        same_universe(self.universe, rho.universe)
        v = rho.values
        return bool(np.all(self.lower <= v + tol) and np.all(v <= self.upper + tol))

    def lower_relation(self) -> PreferenceRelation:
        return PreferenceRelation(self.universe, self.conorm, self.lower)

    def upper_relation(self) -> PreferenceRelation:
        return PreferenceRelation(self.universe, self.conorm, self.upper)


def interval_pref_from_desirability(i: DesirabilityInterval, conorm: ConormFamily) -> PreferenceInterval:
    """Preference bounds implied by desirability bounds.

    Necessary preference of ``w`` over ``w2`` pairs the lower bound at ``w``
    with the upper bound at ``w2``; the possible preference does the reverse.
    """
    lo, hi = i.lower.values, i.upper.values
    return PreferenceInterval(
        i.universe,
        conorm,
        _pseudoinverse(conorm, lo[:, None], hi[None, :]),
        _pseudoinverse(conorm, hi[:, None], lo[None, :]),
    )


def transitive_envelope(upper: np.ndarray, conorm: ConormFamily, tol: float = TOL) -> np.ndarray:
    """Greatest conorm-transitive matrix pointwise below ``upper``.

    Min-conorm path closure: each entry becomes the cheapest chain of steps,
    a chain costing the conorm of its steps. Floyd-Warshall sweeps repeat
    until nothing changes.
    """
    m = np.array(upper, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("envelope input must be a square matrix")
    check_unit(m)
    if np.any(np.abs(np.diag(m)) > tol):
        raise ValueError("envelope input must have a zero diagonal")
    s = NormProfile.for_conorm(conorm).conorm
    n = m.shape[0]
    while True:
        before = m.copy()
        for k in range(n):
            m = np.minimum(m, s(m[:, k : k + 1], m[k : k + 1, :]))
        if np.array_equal(m, before):
            return m


@dataclass(frozen=True)
class PropPreferenceBounds:
    """Necessary/possible preference of p-worlds over q-worlds, both directions."""

    n_pq: float
    pi_pq: float
    n_qp: float
    pi_qp: float


def prop_pref_bounds(
    source: PreferenceRelation | PreferenceInterval, p: Proposition, q: Proposition
) -> PropPreferenceBounds:
    """Propositional bounds in both directions.

    For an interval the necessary values come from its lower matrix and the
    possible values from its upper matrix.
    """
    if isinstance(source, PreferenceInterval):
        lo, hi = source.lower_relation(), source.upper_relation()
    else:
        lo = hi = source
    return PropPreferenceBounds(
        prop_pref_lower(lo, p, q),
        prop_pref_upper(hi, p, q),
        prop_pref_lower(lo, q, p),
        prop_pref_upper(hi, q, p),
    )
