"""Only-knowing and abduction over finite Kripke and plausibility models."""

from .abduction import (
    AbductionProblem, ExplanationFamily, enumerate_explanations, select, star_consequence,
    subset_pref_equivalence, validate_candidate,
)
from .formula import Formula, ParseError, parse, to_text
from .kripke import (
    EvaluationContext, KripkeModel, WitnessMode, abduction_witness, canonical_alpha,
    global_validity, local_consequence, restrict_nonvacuous, satisfies, truth_set,
)
from .preferential import (
    PlausibilityModel, minimal_model, minimal_states, preferential_consequence, satisfies_pref,
)

__all__ = [
    "AbductionProblem", "ExplanationFamily", "enumerate_explanations", "select",
    "star_consequence", "subset_pref_equivalence", "validate_candidate",
    "Formula", "ParseError", "parse", "to_text",
    "EvaluationContext", "KripkeModel", "WitnessMode", "abduction_witness", "canonical_alpha",
    "global_validity", "local_consequence", "restrict_nonvacuous", "satisfies", "truth_set",
    "PlausibilityModel", "minimal_model", "minimal_states", "preferential_consequence",
    "satisfies_pref",
]
