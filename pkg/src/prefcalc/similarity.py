"""Similarity relations obtained from preference relations.

Two worlds resemble each other to the degree that neither is preferred to
the other: ``S(w, w2) = min(~R[w, w2], ~R[w2, w])``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, NamedTuple

import numpy as np

from prefcalc.axioms import AxiomCheck, AxiomReport
from prefcalc.errors import AxiomViolationError
from prefcalc.norm_algebra import TOL, NegationFamily, NormProfile, TNormFamily, check_unit, dual_tnorm
from prefcalc.preference import (
    PreferenceInterval,
    PreferenceRelation,
    PropPreferenceBounds,
    prop_pref_bounds,
    verify_axioms,
)
from prefcalc.worlds import Proposition, Universe

# "standard": S(w, w2) >= T(S(w, w3), S(w3, w2)).
# "reversed": S(w, w2) <= T(S(w, w3), S(w3, w2)), available for comparison;
# degenerate relations such as the all-zero one satisfy it.
TRANSITIVITY_DIRECTION: Literal["standard", "reversed"] = "standard"


@dataclass(frozen=True, eq=False)
class SimilarityRelation:
    universe: Universe
    tnorm_family: TNormFamily
    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "tnorm_family", TNormFamily(self.tnorm_family))
        m = np.array(self.values, dtype=float)
        n = self.universe.size
        if m.shape != (n, n):
            raise ValueError(f"expected a {n}x{n} matrix, got shape {m.shape}")
        check_unit(m)
        m.setflags(write=False)
        object.__setattr__(self, "values", m)

    def __call__(self, w: int, w2: int) -> float:
        return float(self.values[w, w2])


def from_preference(
    rho: PreferenceRelation, negation: NegationFamily = NegationFamily.STANDARD
) -> SimilarityRelation:
    """Similarity induced by ``rho``; its t-norm is the De Morgan dual of ``rho``'s conorm."""
    report = verify_axioms(rho)
    if not report.passed:
        bad = report.failures[0]
        raise AxiomViolationError(f"relation violates {bad.axiom} at {bad.witness}")
    neg = NormProfile(dual_tnorm(rho.conorm), rho.conorm, negation).negate
    r = rho.values
    return SimilarityRelation(rho.universe, dual_tnorm(rho.conorm), np.minimum(neg(r), neg(r.T)))


def _first(mask: np.ndarray) -> tuple[int, ...] | None:
    idx = np.argwhere(mask)
    return None if idx.size == 0 else tuple(int(i) for i in idx[0])


def verify_similarity(
    s: SimilarityRelation,
    direction: Literal["standard", "reversed"] | None = None,
    tol: float = TOL,
) -> AxiomReport:
    """Exhaustive S1 (reflexive), S2 (symmetric), S3 (T-transitive) check.

    The S3 witness ``(w, w2, w3)`` names the pair ``(w, w3)`` and the
    intermediate world ``w2``.
    """
    direction = direction or TRANSITIVITY_DIRECTION
    v = s.values
    t = NormProfile(s.tnorm_family, "maximum").tnorm(v[:, :, None], v[None, :, :])
    direct = v[:, None, :]
    if direction == "standard":
        bad3 = direct < t - tol
    elif direction == "reversed":
        bad3 = direct > t + tol
    else:
        raise ValueError(f"unknown transitivity direction {direction!r}")
    s1 = np.abs(np.diag(v) - 1.0) > tol
    s2 = np.abs(v - v.T) > tol
    checks = (
        AxiomCheck("S1", not s1.any(), _first(s1)),
        AxiomCheck("S2", not s2.any(), _first(s2)),
        AxiomCheck("S3", not bad3.any(), _first(bad3)),
    )
    notes = ()
    if direction == "standard":
        notes = ("S3 checked as S(w,w') >= T(S(w,w''), S(w'',w'))",)
    return AxiomReport("similarity", checks, notes)


class ResemblanceBounds(NamedTuple):
    lower: float
    upper: float


def resemblance_bounds(
    source: PreferenceRelation | PreferenceInterval | PropPreferenceBounds,
    p: Proposition | None = None,
    q: Proposition | None = None,
    negation: NegationFamily = NegationFamily.STANDARD,
) -> ResemblanceBounds:
    """Bounds on the resemblance between p-worlds and q-worlds.

    ``lower`` negates the possible preferences in both directions and takes
    the smaller; ``upper`` does the same with the necessary preferences.
    """
    if isinstance(source, PropPreferenceBounds):
        b = source
    else:
        if p is None or q is None:
            raise ValueError("propositions p and q are required for a relation source")
        b = prop_pref_bounds(source, p, q)
    neg = NormProfile(negation=negation).negate
    return ResemblanceBounds(
        min(neg(b.pi_pq), neg(b.pi_qp)),
        min(neg(b.n_pq), neg(b.n_qp)),
    )
