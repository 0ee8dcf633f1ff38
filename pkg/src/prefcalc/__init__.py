"""Graded desirability, preference and similarity over finite possible-world universes."""

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
from prefcalc.norm_algebra import (
    LUKASIEWICZ,
    MIN,
    PRODUCT,
    ConormFamily,
    NegationFamily,
    NormProfile,
    TNormFamily,
    verify_profile,
)
from prefcalc.preference import (
    GeneratingFamily,
    PreferenceInterval,
    PreferenceRelation,
    combine,
    from_desirability,
    interval_pref_from_desirability,
    prop_pref_lower,
    prop_pref_upper,
    regenerate,
    single_generator,
    transitive_envelope,
    valverde_family,
    verify_axioms,
)
from prefcalc.similarity import SimilarityRelation, from_preference, resemblance_bounds, verify_similarity
from prefcalc.worlds import Proposition, Universe, World, build_universe, eval_formula, is_partition

__version__ = "0.1.0"

__all__ = [
    "and_measures",
    "build_universe",
    "combine",
    "ConormFamily",
    "crisp_measure",
    "DesirabilityInterval",
    "DesirabilityMeasure",
    "eval_formula",
    "from_desirability",
    "from_preference",
    "GeneratingFamily",
    "implies_measures",
    "interval_and",
    "interval_from_partition",
    "interval_implies",
    "interval_not",
    "interval_or",
    "interval_pref_from_desirability",
    "is_partition",
    "LUKASIEWICZ",
    "MIN",
    "NegationFamily",
    "NormProfile",
    "not_measure",
    "or_measures",
    "PreferenceInterval",
    "PreferenceRelation",
    "PRODUCT",
    "prop_lower",
    "prop_pref_lower",
    "prop_pref_upper",
    "prop_upper",
    "Proposition",
    "regenerate",
    "resemblance_bounds",
    "SimilarityRelation",
    "single_generator",
    "TNormFamily",
    "transitive_envelope",
    "Universe",
    "valverde_family",
    "verify_axioms",
    "verify_profile",
    "verify_similarity",
    "World",
]
