"""Hypothetical expected utility: interpretations, implication, Choquet valuation
and recovery of beliefs from betting behavior, all in exact rational arithmetic."""

from .analysis import (
    ComparisonResult,
    better_reasoner,
    conditional_expectation,
    conditional_heu,
    hedging_check,
    heu_value,
    is_concave,
    is_convex,
    prop4_equivalence,
)
from .core import (
    Act,
    Capacity,
    Measure,
    StateSpace,
    act_algebra,
    choquet_integral,
    mask_to_string,
    mix,
    string_to_mask,
    validate_capacity,
)
from .elicitation import (
    IEReport,
    Representation,
    check_heucond,
    check_inclusion_exclusion,
    check_modularity,
    check_relevance,
    implication_from_capacity,
    normalize_interpretation,
    recover_representation,
    verify_representation,
)
from .errors import HEUError, InputError
from .implication import (
    ImplicationRelation,
    check_axioms,
    down_set,
    interpretation_from_relation,
    meet_hypothesis,
)
from .interpretation import (
    GeneratorForm,
    Interpretation,
    check_properties,
    classify,
    complete_to_coherent,
    compose_capacity,
    derive_implication,
    dualize,
    enumerate_coherent,
    enumerate_weakly_coherent,
    extract_generators,
    from_generators,
    image_lattice,
)
from .scenarios import Scenario, disclosure, monty_hall, pivotal_voting, winners_curse

__all__ = [name for name in dir() if not name.startswith("_")]
