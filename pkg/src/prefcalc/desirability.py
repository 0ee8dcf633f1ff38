"""Desirability measures over a universe and necessity/possibility bounds on them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from prefcalc.errors import DomainError, EmptyPropositionError, UniverseError
from prefcalc.norm_algebra import TOL, NormProfile, check_unit
from prefcalc.worlds import Proposition, Universe, is_partition, same_universe


def _frozen(values: Iterable[float] | np.ndarray) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class DesirabilityMeasure:
    """A fuzzy set over the worlds: one value in [0, 1] per world id."""

    universe: Universe
    values: np.ndarray

    def __post_init__(self) -> None:
        v = _frozen(self.values)
        if v.shape != (self.universe.size,):
            raise UniverseError(
                f"measure has {v.size} values but the universe has {self.universe.size} worlds"
            )
        check_unit(v)
        object.__setattr__(self, "values", v)

    @classmethod
    def constant(cls, u: Universe, c: float) -> DesirabilityMeasure:
        return cls(u, np.full(u.size, float(c)))

    def __len__(self) -> int:
        return self.values.size

    def __getitem__(self, world_id: int) -> float:
        return float(self.values[world_id])

    def __iter__(self):
        return iter(self.values.tolist())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DesirabilityMeasure):
            return NotImplemented
        return self.universe == other.universe and np.array_equal(self.values, other.values)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"DesirabilityMeasure({self.values.tolist()})"

    def allclose(self, other: DesirabilityMeasure, tol: float = TOL) -> bool:
        return self.universe == other.universe and bool(
            np.all(np.abs(self.values - other.values) <= tol)
        )


def crisp_measure(p: Proposition) -> DesirabilityMeasure:
    """Characteristic function of ``p``: 1 on its worlds, 0 elsewhere."""
    return DesirabilityMeasure(p.universe, p.mask.astype(float))


def _pair(d: DesirabilityMeasure, d2: DesirabilityMeasure) -> Universe:
    same_universe(d.universe, d2.universe)
    return d.universe


def and_measures(p: NormProfile, d: DesirabilityMeasure, d2: DesirabilityMeasure) -> DesirabilityMeasure:
    return DesirabilityMeasure(_pair(d, d2), p.tnorm(d.values, d2.values))


def or_measures(p: NormProfile, d: DesirabilityMeasure, d2: DesirabilityMeasure) -> DesirabilityMeasure:
    return DesirabilityMeasure(_pair(d, d2), p.conorm(d.values, d2.values))


def not_measure(p: NormProfile, d: DesirabilityMeasure) -> DesirabilityMeasure:
    return DesirabilityMeasure(d.universe, p.negate(d.values))


def implies_measures(
    p: NormProfile, antecedent: DesirabilityMeasure, consequent: DesirabilityMeasure
) -> DesirabilityMeasure:
    u = _pair(antecedent, consequent)
    return DesirabilityMeasure(u, p.residuum(antecedent.values, consequent.values))


def _restricted(d: DesirabilityMeasure, p: Proposition) -> np.ndarray:
    same_universe(d.universe, p.universe)
    if p.is_empty():
        raise EmptyPropositionError("bound requested over a proposition with no worlds")
    return d.values[p.mask]


def prop_lower(d: DesirabilityMeasure, p: Proposition) -> float:
    """Infimum of ``d`` over the worlds of ``p``."""
    return float(_restricted(d, p).min())


def prop_upper(d: DesirabilityMeasure, p: Proposition) -> float:
    """Supremum of ``d`` over the worlds of ``p``."""
    return float(_restricted(d, p).max())


# -- intervals --------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DesirabilityInterval:
    """Pointwise bounds ``lower <= D <= upper`` on an unknown measure."""

    lower: DesirabilityMeasure
    upper: DesirabilityMeasure

    def __post_init__(self) -> None:
        same_universe(self.lower.universe, self.upper.universe)
        bad = np.flatnonzero(self.lower.values > self.upper.values + TOL)
        if bad.size:
            w = int(bad[0])
            raise DomainError(
                f"lower bound {self.lower[w]} exceeds upper bound {self.upper[w]} at world {w}"
            )

    @classmethod
    def exact(cls, d: DesirabilityMeasure) -> DesirabilityInterval:
        return cls(d, d)

    @classmethod
    def vacuous(cls, u: Universe) -> DesirabilityInterval:
        return cls(DesirabilityMeasure.constant(u, 0.0), DesirabilityMeasure.constant(u, 1.0))

    @classmethod
    def from_values(cls, u: Universe, lower: Sequence[float], upper: Sequence[float]) -> DesirabilityInterval:
        return cls(DesirabilityMeasure(u, lower), DesirabilityMeasure(u, upper))

    @property
    def universe(self) -> Universe:
        return self.lower.universe

    @property
    def is_exact(self) -> bool:
        return bool(np.all(np.abs(self.upper.values - self.lower.values) <= TOL))

    def contains(self, d: DesirabilityMeasure, tol: float = TOL) -> bool:
        same_universe(self.universe, d.universe)
        return bool(
            np.all(self.lower.values <= d.values + tol) and np.all(d.values <= self.upper.values + tol)
        )

    def __repr__(self) -> str:
        return f"DesirabilityInterval(lower={self.lower.values.tolist()}, upper={self.upper.values.tolist()})"


def interval_not(p: NormProfile, i: DesirabilityInterval) -> DesirabilityInterval:
    """Bounds for ``D`` from bounds on its complement (and vice versa).

    The negation is antitone, so the negated upper bound becomes the lower one.
    """
    return DesirabilityInterval(not_measure(p, i.upper), not_measure(p, i.lower))


def interval_and(p: NormProfile, i: DesirabilityInterval, i2: DesirabilityInterval) -> DesirabilityInterval:
    return DesirabilityInterval(and_measures(p, i.lower, i2.lower), and_measures(p, i.upper, i2.upper))


def interval_or(p: NormProfile, i: DesirabilityInterval, i2: DesirabilityInterval) -> DesirabilityInterval:
    return DesirabilityInterval(or_measures(p, i.lower, i2.lower), or_measures(p, i.upper, i2.upper))


def interval_implies(
    p: NormProfile, antecedent: DesirabilityInterval, consequent: DesirabilityInterval
) -> DesirabilityInterval:
    """Bounds for ``antecedent -> consequent``.

    The residuum is antitone in its first argument, so the lower bound pairs
    the antecedent's upper bound with the consequent's lower bound.
    """
    return DesirabilityInterval(
        implies_measures(p, antecedent.upper, consequent.lower),
        implies_measures(p, antecedent.lower, consequent.upper),
    )


def interval_from_partition(
    u: Universe,
    partition: Sequence[Proposition],
    lowers: Sequence[float],
    uppers: Sequence[float],
) -> DesirabilityInterval:
    """Piecewise-constant bounds: every world of block ``i`` gets ``(lowers[i], uppers[i])``."""
    if not (len(partition) == len(lowers) == len(uppers)):
        raise ValueError("partition, lowers and uppers must have the same length")
    if not is_partition(u, partition):
        raise ValueError("blocks do not form a partition of the universe")
    check_unit(lowers, uppers)
    lo = np.empty(u.size)
    hi = np.empty(u.size)
    for block, a, b in zip(partition, lowers, uppers):
        if a > b:
            raise DomainError(f"block lower bound {a} exceeds upper bound {b}")
        m = block.mask
        lo[m] = a
        hi[m] = b
    return DesirabilityInterval.from_values(u, lo, hi)
