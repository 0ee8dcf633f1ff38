from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import enclosure_violations, measure_inside, random_interval, universe_of, unit
from prefcalc.desirability import (
    DesirabilityInterval,
    DesirabilityMeasure,
    and_measures,
    crisp_measure,
    implies_measures,
    interval_and,
    interval_from_partition,
    interval_implies,
    interval_not,
    interval_or,
    not_measure,
    or_measures,
    prop_lower,
    prop_upper,
)
from prefcalc.errors import DomainError, EmptyPropositionError, UniverseError, UniverseMismatchError
from prefcalc.norm_algebra import LUKASIEWICZ, MIN, PRODUCT, SHIPPED_PROFILES
from prefcalc.worlds import build_universe

TOL = 1e-9
U2 = universe_of(2)
U3 = universe_of(3)


def m(u, *vals):
    return DesirabilityMeasure(u, list(vals))


def iv(u, lo, hi):
    return DesirabilityInterval.from_values(u, lo, hi)


class TestMeasure:
    def test_range_checked(self):
        with pytest.raises(DomainError):
            m(U2, 0.2, 1.2)

    def test_totality_checked(self):
        with pytest.raises(UniverseError):
            m(U3, 0.2, 0.3)

    def test_values_immutable(self):
        d = m(U2, 0.2, 0.3)
        with pytest.raises(ValueError):
            d.values[0] = 0.9


class TestCrisp:
    u = build_universe(["p", "q"])

    def test_characteristic_function(self):
        p = self.u.proposition([2, 3])
        assert list(crisp_measure(p)) == [0.0, 0.0, 1.0, 1.0]

    def test_empty(self):
        assert list(crisp_measure(self.u.nothing())) == [0.0] * 4

    @pytest.mark.parametrize("prof", SHIPPED_PROFILES, ids=lambda p: p.name)
    def test_connectives_degenerate_to_boolean(self, prof):
        # every pair of subsets of a 3-world universe
        u = U3
        subsets = [u.proposition(s) for r in range(4) for s in itertools.combinations(range(3), r)]
        for p, q in itertools.product(subsets, repeat=2):
            dp, dq = crisp_measure(p), crisp_measure(q)
            assert and_measures(prof, dp, dq) == crisp_measure(p & q)
            assert or_measures(prof, dp, dq) == crisp_measure(p | q)
            assert not_measure(prof, dp) == crisp_measure(~p)
            assert implies_measures(prof, dp, dq) == crisp_measure(~p | q)


class TestConnectives:
    def test_and_min(self):
        np.testing.assert_allclose(and_measures(MIN, m(U2, 0.4, 0.9), m(U2, 0.6, 0.2)).values, [0.4, 0.2])

    def test_and_identity(self):
        d = m(U2, 0.4, 0.9)
        for p in SHIPPED_PROFILES:
            assert and_measures(p, d, DesirabilityMeasure.constant(U2, 1.0)).allclose(d)
            assert or_measures(p, d, DesirabilityMeasure.constant(U2, 0.0)).allclose(d)

    def test_or_bounded_sum(self):
        out = or_measures(LUKASIEWICZ, m(U2, 0.7, 0.5), m(U2, 0.5, 0.3))
        np.testing.assert_allclose(out.values, [1.0, 0.8], atol=TOL)

    def test_not(self):
        np.testing.assert_allclose(not_measure(MIN, m(U2, 0.3, 1.0)).values, [0.7, 0.0], atol=TOL)
        d = m(U2, 0.3, 0.77)
        assert not_measure(MIN, not_measure(MIN, d)).allclose(d)

    def test_implies(self):
        np.testing.assert_allclose(implies_measures(PRODUCT, m(U2, 0.8, 0.8), m(U2, 0.4, 0.4)).values, [0.5, 0.5])
        for p in SHIPPED_PROFILES:
            out = implies_measures(p, DesirabilityMeasure.constant(U2, 0.0), m(U2, 0.1, 0.6))
            assert list(out) == [1.0, 1.0]

    def test_universe_mismatch(self):
        with pytest.raises(UniverseMismatchError):
            and_measures(MIN, m(U2, 0.1, 0.2), m(U3, 0.1, 0.2, 0.3))


@pytest.mark.parametrize("prof", SHIPPED_PROFILES, ids=lambda p: p.name)
@given(vals=st.lists(st.tuples(unit, unit, unit), min_size=1, max_size=6))
def test_commutative_associative(prof, vals):
    u = universe_of(len(vals))
    a, b, c = (DesirabilityMeasure(u, [v[k] for v in vals]) for k in range(3))
    for op in (and_measures, or_measures):
        assert op(prof, a, b).allclose(op(prof, b, a))
        assert op(prof, op(prof, a, b), c).allclose(op(prof, a, op(prof, b, c)))


class TestPropBounds:
    def test_singleton(self):
        d = m(U3, 0.2, 0.7, 0.9)
        p = U3.proposition([1])
        assert prop_lower(d, p) == prop_upper(d, p) == 0.7

    def test_inf_sup(self):
        d = m(U3, 0.2, 0.7, 0.9)
        p = U3.proposition([0, 1])
        assert prop_lower(d, p) == 0.2
        assert prop_upper(d, p) == 0.7

    def test_crisp_on_itself(self):
        p = U3.proposition([0, 2])
        assert prop_lower(crisp_measure(p), p) == prop_upper(crisp_measure(p), p) == 1.0

    def test_empty_is_error(self):
        with pytest.raises(EmptyPropositionError):
            prop_lower(m(U3, 0.2, 0.7, 0.9), U3.nothing())
        with pytest.raises(EmptyPropositionError):
            prop_upper(m(U3, 0.2, 0.7, 0.9), U3.nothing())

    @given(vals=st.lists(unit, min_size=1, max_size=6), data=st.data())
    def test_bounds_enclose_members(self, vals, data):
        u = universe_of(len(vals))
        d = DesirabilityMeasure(u, vals)
        ids = data.draw(st.sets(st.integers(0, len(vals) - 1), min_size=1))
        p = u.proposition(ids)
        for w in ids:
            assert prop_lower(d, p) <= d[w] <= prop_upper(d, p)


class TestIntervals:
    def test_invalid_order(self):
        with pytest.raises(DomainError):
            iv(U2, [0.5, 0.2], [0.4, 0.9])

    def test_not_rule(self):
        # N of ~D = 0.3 gives possible D = 0.7
        out = interval_not(MIN, iv(U2, [0.3, 0.3], [0.6, 0.3]))
        np.testing.assert_allclose(out.upper.values, [0.7, 0.7], atol=TOL)
        np.testing.assert_allclose(out.lower.values, [0.4, 0.7], atol=TOL)

    def test_not_exact_and_vacuous(self):
        d = m(U2, 0.25, 0.5)
        out = interval_not(MIN, DesirabilityInterval.exact(not_measure(MIN, d)))
        assert out.is_exact and out.lower.allclose(d)
        vac = interval_not(MIN, DesirabilityInterval.vacuous(U2))
        assert list(vac.lower) == [0.0, 0.0] and list(vac.upper) == [1.0, 1.0]

    def test_and_min(self):
        out = interval_and(MIN, iv(U2, [0.2, 0.2], [0.8, 0.8]), iv(U2, [0.5, 0.5], [0.5, 0.5]))
        assert out.lower[0] == 0.2 and out.upper[0] == 0.5

    def test_exact_degenerates(self):
        d, d2 = m(U2, 0.3, 0.9), m(U2, 0.6, 0.1)
        e, e2 = DesirabilityInterval.exact(d), DesirabilityInterval.exact(d2)
        for p in SHIPPED_PROFILES:
            assert interval_and(p, e, e2).lower.allclose(and_measures(p, d, d2))
            assert interval_or(p, e, e2).upper.allclose(or_measures(p, d, d2))
            out = interval_implies(p, e, e2)
            assert out.is_exact and out.lower.allclose(implies_measures(p, d, d2))

    def test_and_with_ones_is_identity(self):
        i = iv(U2, [0.1, 0.4], [0.5, 0.9])
        one = DesirabilityInterval.exact(DesirabilityMeasure.constant(U2, 1.0))
        out = interval_and(PRODUCT, i, one)
        assert out.lower.allclose(i.lower) and out.upper.allclose(i.upper)

    def test_implies_vacuous_antecedent(self):
        c = 0.35
        out = interval_implies(MIN, DesirabilityInterval.vacuous(U2), DesirabilityInterval.exact(m(U2, c, c)))
        assert out.lower[0] == pytest.approx(c, abs=TOL)
        assert out.upper[0] == 1.0

    def test_implies_lukasiewicz(self):
        out = interval_implies(LUKASIEWICZ, iv(U2, [0.6, 0.6], [0.9, 0.9]), iv(U2, [0.5, 0.5], [0.7, 0.7]))
        assert out.lower[0] == pytest.approx(0.6, abs=TOL)
        assert out.upper[0] == pytest.approx(1.0, abs=TOL)


def test_enclosure_soundness(rng):
    assert enclosure_violations(rng, 300) == []


def test_wrong_implication_orientation_is_unsound(rng):
    # pairing antecedent-lower with consequent-lower is not a valid lower bound
    found = False
    for _ in range(200):
        u = universe_of(4)
        i, i2 = random_interval(rng, u), random_interval(rng, u)
        d, d2 = measure_inside(rng, i), measure_inside(rng, i2)
        wrong = implies_measures(MIN, i.lower, i2.lower).values
        if np.any(wrong > implies_measures(MIN, d, d2).values + TOL):
            found = True
            break
    assert found


class TestPartitionReconstruction:
    u = build_universe(["a", "b"])

    def test_single_block(self):
        out = interval_from_partition(self.u, [self.u.everything()], [0.3], [0.8])
        assert list(out.lower) == [0.3] * 4 and list(out.upper) == [0.8] * 4

    def test_crisp_reconstruction(self):
        p = self.u.proposition([1, 3])
        out = interval_from_partition(self.u, [p.complement(), p], [0.0, 1.0], [0.0, 1.0])
        assert out.is_exact and out.lower == crisp_measure(p)

    def test_errors(self):
        p = self.u.proposition([1, 3])
        with pytest.raises(ValueError, match="partition"):
            interval_from_partition(self.u, [p, p], [0.0, 0.0], [1.0, 1.0])
        with pytest.raises(DomainError):
            interval_from_partition(self.u, [p.complement(), p], [0.5, 0.0], [0.4, 1.0])

    def test_round_trip_encloses(self, rng):
        for _ in range(100):
            n = int(rng.integers(1, 7))
            u = universe_of(n)
            labels = rng.integers(0, int(rng.integers(1, n + 1)), size=n)
            blocks = [u.proposition(np.flatnonzero(labels == k)) for k in np.unique(labels)]
            d = DesirabilityMeasure(u, rng.random(n))
            lows = [prop_lower(d, b) for b in blocks]
            highs = [prop_upper(d, b) for b in blocks]
            assert interval_from_partition(u, blocks, lows, highs).contains(d)
