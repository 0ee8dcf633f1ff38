from __future__ import annotations

import sys
import time
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from prefcalc.desirability import (  # noqa: E402
    DesirabilityInterval,
    DesirabilityMeasure,
    and_measures,
    implies_measures,
    interval_and,
    interval_implies,
    interval_not,
    interval_or,
    not_measure,
    or_measures,
)
from prefcalc.norm_algebra import SHIPPED_PROFILES  # noqa: E402
from prefcalc.norm_algebra import ConormFamily  # noqa: E402
from prefcalc.preference import GeneratingFamily, from_desirability, regenerate, verify_axioms  # noqa: E402
from prefcalc.worlds import build_universe  # noqa: E402

ROOT = Path(__file__).resolve().parent.parent
SPECS = sorted((ROOT / "specs").glob("*.json"))
CONORMS = list(ConormFamily)

unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False, allow_infinity=False)


def universe_of(n: int):
    """A universe with exactly ``n`` explicit worlds over one atom."""
    return build_universe(["x"], [{"x": bool(i % 2)} for i in range(n)])


def random_measure(rng: np.random.Generator, u) -> DesirabilityMeasure:
    v = rng.random(u.size)
    # sprinkle exact ties and endpoints
    mask = rng.random(u.size) < 0.2
    v[mask] = rng.choice([0.0, 0.5, 1.0], size=mask.sum())
    return DesirabilityMeasure(u, v)


def random_relation(rng: np.random.Generator, u, conorm: ConormFamily):
    """An axiom-satisfying relation: one measure's relation, or a sup over a few, filtered."""
    while True:
        k = int(rng.integers(1, 4))
        if k == 1:
            return from_desirability(random_measure(rng, u), conorm)
        fam = GeneratingFamily(u, tuple(random_measure(rng, u) for _ in range(k)))
        rho = regenerate(fam, conorm)
        if verify_axioms(rho).passed:
            return rho


def random_interval(rng: np.random.Generator, u) -> DesirabilityInterval:
    a, b = rng.random(u.size), rng.random(u.size)
    # some exact and some vacuous points
    a[rng.random(u.size) < 0.15] = 0.0
    b[rng.random(u.size) < 0.15] = 1.0
    return DesirabilityInterval.from_values(u, np.minimum(a, b), np.maximum(a, b))


def measure_inside(rng: np.random.Generator, i: DesirabilityInterval) -> DesirabilityMeasure:
    t = rng.random(i.universe.size)
    t[rng.random(t.size) < 0.2] = rng.choice([0.0, 1.0])
    lo, hi = i.lower.values, i.upper.values
    return DesirabilityMeasure(i.universe, np.clip(lo + t * (hi - lo), 0, 1))


def enclosure_violations(rng: np.random.Generator, trials: int) -> list[str]:
    """Monte-Carlo check of the interval connectives on universes of 1-6 worlds.

    Each trial samples two intervals and an exact measure inside each, then
    checks that every connective, under every shipped profile, maps the exact
    measures into the combined interval. Returns a description per failure.
    """
    bad = []
    for trial in range(trials):
        u = universe_of(int(rng.integers(1, 7)))
        i, i2 = random_interval(rng, u), random_interval(rng, u)
        d, d2 = measure_inside(rng, i), measure_inside(rng, i2)
        for p in SHIPPED_PROFILES:
            cases = {
                "not": (interval_not(p, i), not_measure(p, d)),
                "and": (interval_and(p, i, i2), and_measures(p, d, d2)),
                "or": (interval_or(p, i, i2), or_measures(p, d, d2)),
                "implies": (interval_implies(p, i, i2), implies_measures(p, d, d2)),
            }
            for name, (box, exact) in cases.items():
                if not box.contains(exact, 1e-9):
                    bad.append(f"trial {trial} {p.name} {name}")
    return bad


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260101)


# -- acceptance summary -------------------------------------------------------------

_CRITERIA: list[tuple[int, str, bool, float]] = []


@pytest.fixture
def criterion():
    """``criterion(number, title, passed, limit)`` records one acceptance line and asserts it.

    A criterion passes only if ``passed`` holds and the test body finished
    within ``limit`` seconds.
    """
    start = time.perf_counter()

    def record(number: int, title: str, passed: bool, limit: float) -> None:
        elapsed = time.perf_counter() - start
        ok = bool(passed) and elapsed < limit
        _CRITERIA.append((number, f"{title} (limit {limit:g}s)", ok, elapsed))
        assert passed, title
        assert elapsed < limit, f"{title}: {elapsed:.2f}s exceeds {limit:g}s"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, elapsed in sorted(_CRITERIA):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number}: {title} ({elapsed:.2f}s)")
