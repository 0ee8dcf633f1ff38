"""Triangular norms, conorms, strong negation and their adjoints.

Every operation accepts Python floats or numpy arrays (broadcast together)
and returns a float for scalar input, an ndarray otherwise. Adjoints are
closed forms per family; nothing here searches numerically.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Mapping, Union

import numpy as np

from prefcalc.axioms import AxiomCheck, AxiomReport
from prefcalc.errors import DomainError

TOL = 1e-9

Value = Union[float, np.ndarray]


class TNormFamily(str, Enum):
    MINIMUM = "minimum"
    PRODUCT = "product"
    BOUNDED_DIFFERENCE = "bounded_difference"


class ConormFamily(str, Enum):
    MAXIMUM = "maximum"
    PROBABILISTIC_SUM = "probabilistic_sum"
    BOUNDED_SUM = "bounded_sum"


class NegationFamily(str, Enum):
    STANDARD = "standard"


# De Morgan duals under the standard negation.
_DUAL_CONORM = {
    TNormFamily.MINIMUM: ConormFamily.MAXIMUM,
    TNormFamily.PRODUCT: ConormFamily.PROBABILISTIC_SUM,
    TNormFamily.BOUNDED_DIFFERENCE: ConormFamily.BOUNDED_SUM,
}
_DUAL_TNORM = {v: k for k, v in _DUAL_CONORM.items()}

PROFILE_NAMES = ("min", "product", "lukasiewicz")
_NAMED = {
    "min": TNormFamily.MINIMUM,
    "product": TNormFamily.PRODUCT,
    "lukasiewicz": TNormFamily.BOUNDED_DIFFERENCE,
}


def dual_conorm(family: TNormFamily) -> ConormFamily:
    return _DUAL_CONORM[TNormFamily(family)]


def dual_tnorm(family: ConormFamily) -> TNormFamily:
    return _DUAL_TNORM[ConormFamily(family)]


def check_unit(*values: Any) -> None:
    """Raise DomainError unless every value lies in [0, 1]."""
    for v in values:
        arr = np.asarray(v, dtype=float)
        if arr.size and not np.all((arr >= 0.0) & (arr <= 1.0)):
            # NaN fails both comparisons and lands here too
            bad = arr[~((arr >= 0.0) & (arr <= 1.0))].flat[0]
            raise DomainError(f"value {bad!r} outside the unit interval")


def _out(r: np.ndarray) -> Value:
    r = np.clip(r, 0.0, 1.0)
    return float(r) if np.ndim(r) == 0 else r


@dataclass(frozen=True)
class NormProfile:
    """A t-norm, t-conorm and strong negation chosen together.

    The profile may mix families; :attr:`is_matched` tells whether the
    t-norm and conorm are De Morgan duals under the negation.
    """

    tnorm_family: TNormFamily = TNormFamily.MINIMUM
    conorm_family: ConormFamily = ConormFamily.MAXIMUM
    negation: NegationFamily = NegationFamily.STANDARD

    def __post_init__(self) -> None:
        object.__setattr__(self, "tnorm_family", TNormFamily(self.tnorm_family))
        object.__setattr__(self, "conorm_family", ConormFamily(self.conorm_family))
        object.__setattr__(self, "negation", NegationFamily(self.negation))

    # -- construction -------------------------------------------------------

    @classmethod
    def named(cls, name: str) -> NormProfile:
        try:
            t = _NAMED[name]
        except KeyError:
            raise ValueError(
                f"unknown profile {name!r}; valid names: {', '.join(PROFILE_NAMES)}"
            ) from None
        return cls(t, _DUAL_CONORM[t])

    @classmethod
    def from_config(cls, cfg: str | Mapping[str, str]) -> NormProfile:
        """Build from a profile name or a ``{tnorm, conorm, negation}`` mapping."""
        if isinstance(cfg, str):
            return cls.named(cfg)
        unknown = set(cfg) - {"tnorm", "conorm", "negation"}
        if unknown:
            raise ValueError(f"unknown profile keys: {sorted(unknown)}")
        return cls(
            TNormFamily(cfg["tnorm"]),
            ConormFamily(cfg["conorm"]),
            NegationFamily(cfg.get("negation", "standard")),
        )

    @classmethod
    def for_conorm(cls, family: ConormFamily) -> NormProfile:
        """The matched De Morgan profile whose conorm is ``family``."""
        family = ConormFamily(family)
        return cls(_DUAL_TNORM[family], family)

    @property
    def is_matched(self) -> bool:
        return _DUAL_CONORM[self.tnorm_family] is self.conorm_family

    @property
    def name(self) -> str | None:
        if not self.is_matched:
            return None
        return {v: k for k, v in _NAMED.items()}[self.tnorm_family]

    def to_config(self) -> str | dict[str, str]:
        if self.name is not None:
            return self.name
        return {
            "tnorm": self.tnorm_family.value,
            "conorm": self.conorm_family.value,
            "negation": self.negation.value,
        }

    # -- connectives --------------------------------------------------------

    def tnorm(self, a: Value, b: Value) -> Value:
        check_unit(a, b)
        a, b = np.asarray(a, float), np.asarray(b, float)
        f = self.tnorm_family
        if f is TNormFamily.MINIMUM:
            r = np.minimum(a, b)
        elif f is TNormFamily.PRODUCT:
            r = a * b
        else:
            r = np.maximum(0.0, a + b - 1.0)
        return _out(r)

    def conorm(self, a: Value, b: Value) -> Value:
        check_unit(a, b)
        a, b = np.asarray(a, float), np.asarray(b, float)
        f = self.conorm_family
        if f is ConormFamily.MAXIMUM:
            r = np.maximum(a, b)
        elif f is ConormFamily.PROBABILISTIC_SUM:
            r = a + b - a * b
        else:
            r = np.minimum(1.0, a + b)
        return _out(r)

    def negate(self, a: Value) -> Value:
        check_unit(a)
        return _out(1.0 - np.asarray(a, float))

    def residuum(self, a: Value, b: Value) -> Value:
        """Largest ``c`` with ``tnorm(a, c) <= b``."""
        check_unit(a, b)
        a, b = np.asarray(a, float), np.asarray(b, float)
        f = self.tnorm_family
        if f is TNormFamily.BOUNDED_DIFFERENCE:
            return _out(np.minimum(1.0, 1.0 - a + b))
        le = a <= b
        if f is TNormFamily.MINIMUM:
            r = np.where(le, 1.0, b)
        else:
            with np.errstate(divide="ignore", invalid="ignore"):
                r = np.where(le, 1.0, b / np.where(le, 1.0, a))
        return _out(r)

    def conorm_pseudoinverse(self, a: Value, b: Value) -> Value:
        """Smallest ``c`` with ``conorm(b, c) >= a``."""
        check_unit(a, b)
        a, b = np.asarray(a, float), np.asarray(b, float)
        f = self.conorm_family
        if f is ConormFamily.BOUNDED_SUM:
            return _out(np.maximum(0.0, a - b))
        ge = b >= a
        if f is ConormFamily.MAXIMUM:
            r = np.where(ge, 0.0, a)
        else:
            # b == 1 implies b >= a, so the guarded denominator is never 0
            r = np.where(ge, 0.0, (a - b) / np.where(ge, 1.0, 1.0 - b))
        return _out(r)


MIN = NormProfile.named("min")
PRODUCT = NormProfile.named("product")
LUKASIEWICZ = NormProfile.named("lukasiewicz")
SHIPPED_PROFILES = (MIN, PRODUCT, LUKASIEWICZ)


def tnorm(p: NormProfile, a: Value, b: Value) -> Value:
    return p.tnorm(a, b)


def conorm(p: NormProfile, a: Value, b: Value) -> Value:
    return p.conorm(a, b)


def negate(p: NormProfile, a: Value) -> Value:
    return p.negate(a)


def residuum(p: NormProfile, a: Value, b: Value) -> Value:
    return p.residuum(a, b)


def conorm_pseudoinverse(p: NormProfile, a: Value, b: Value) -> Value:
    return p.conorm_pseudoinverse(a, b)


# -- exhaustive grid verification ------------------------------------------------


def grid_points(grid_step: Fraction | float | str) -> np.ndarray:
    """The grid ``{0, step, ..., 1}``; ``step`` must divide 1 evenly."""
    step = Fraction(grid_step).limit_denominator(1 << 20)
    if step <= 0 or step > 1 or (1 / step).denominator != 1:
        raise ValueError(f"grid step {grid_step} does not divide 1 evenly")
    n = int(1 / step)
    return np.arange(n + 1, dtype=float) / n


def _witness(mask: np.ndarray, *axes: np.ndarray) -> tuple[float, ...] | None:
    """First grid tuple where ``mask`` (a violation mask) is set."""
    idx = np.argwhere(mask)
    if idx.size == 0:
        return None
    first = idx[0]
    return tuple(float(ax.ravel()[i]) for ax, i in zip(axes, first))


def _check(name: str, violated: np.ndarray, *axes: np.ndarray) -> AxiomCheck:
    w = _witness(violated, *axes)
    return AxiomCheck(name, w is None, w)


def _binary_laws(prefix: str, op, identity: float, g: np.ndarray) -> list[AxiomCheck]:
    a2, b2 = g[:, None], g[None, :]
    a3, b3, c3 = g[:, None, None], g[None, :, None], g[None, None, :]
    ab = op(a2, b2)
    checks = [
        _check(f"{prefix}.commutativity", np.abs(ab - op(b2, a2)) > TOL, g, g),
        _check(
            f"{prefix}.associativity",
            np.abs(op(op(a3, b3), c3) - op(a3, op(b3, c3))) > TOL,
            g, g, g,
        ),
    ]
    # b <= b' must give op(a, b) <= op(a, b'), in either argument position
    inc = b3 <= c3
    left = op(a3, b3) > op(a3, c3) + TOL
    right = op(b3, a3) > op(c3, a3) + TOL
    checks.append(_check(f"{prefix}.monotonicity", inc & (left | right), g, g, g))
    e = np.full_like(g, identity)
    checks.append(
        _check(
            f"{prefix}.identity",
            (np.abs(op(g, e) - g) > TOL) | (np.abs(op(e, g) - g) > TOL),
            g,
        )
    )
    return checks


def verify_profile(p: NormProfile, grid_step: Fraction | float | str = Fraction(1, 16)) -> AxiomReport:
    """Check every connective axiom of ``p`` exhaustively over a grid.

    Works on any object exposing the five connective methods, so a
    deliberately broken profile can be fed in to exercise the harness.
    """
    g = grid_points(grid_step)
    a2, b2 = g[:, None], g[None, :]
    a3, b3, c3 = g[:, None, None], g[None, :, None], g[None, None, :]

    checks = _binary_laws("tnorm", p.tnorm, 1.0, g)
    checks += _binary_laws("conorm", p.conorm, 0.0, g)

    n = p.negate(g)
    checks.append(
        _check(
            "negation.boundary",
            np.array([abs(p.negate(0.0) - 1.0) > TOL or abs(p.negate(1.0)) > TOL]),
            np.array([0.0]),
        )
    )
    checks.append(_check("negation.involution", np.abs(p.negate(n) - g) > TOL, g))
    checks.append(
        _check(
            "negation.strictly_decreasing",
            (a2 < b2) & ~(p.negate(a2) > p.negate(b2)),
            g, g,
        )
    )

    # T(a, c) <= b  iff  c <= R(a, b)
    lhs = p.tnorm(a3, c3) <= b3 + TOL
    rhs = c3 <= p.residuum(a3, b3) + TOL
    checks.append(_check("residuation_adjunction", lhs != rhs, g, g, g))
    # P(a, b) <= c  iff  a <= S(b, c)
    lhs = p.conorm_pseudoinverse(a3, b3) <= c3 + TOL
    rhs = a3 <= p.conorm(b3, c3) + TOL
    checks.append(_check("pseudoinverse_adjunction", lhs != rhs, g, g, g))

    bits = np.array([0.0, 1.0])
    x, y = bits[:, None], bits[None, :]
    xb, yb = x.astype(bool), y.astype(bool)
    boolean_bad = (
        (p.tnorm(x, y) != (xb & yb))
        | (p.conorm(x, y) != (xb | yb))
        | (p.residuum(x, y) != (~xb | yb))
        | (p.negate(x) != ~xb)
    )
    checks.append(_check("boolean_degeneration", boolean_bad, bits, bits))

    notes: list[str] = []
    matched = getattr(p, "is_matched", True)
    if matched:
        dm = np.abs(p.negate(p.tnorm(a2, b2)) - p.conorm(p.negate(a2), p.negate(b2))) > TOL
        checks.append(_check("de_morgan", dm, g, g))
    else:
        notes.append(
            "mixed profile: t-norm and conorm are not De Morgan duals; "
            "de_morgan not asserted"
        )
    return AxiomReport("profile", tuple(checks), tuple(notes))
