from .base import (
    DYNAMIC_PARAMETERS,
    PARAMETERS,
    STATIC_PARAMETERS,
    AvailabilityMask,
    ParameterVector,
    PriorityGrouping,
    ScalingFactors,
    scale_weight_ratios,
)
from .scorers import (
    SCORERS,
    ProposedScorer,
    SAWScorer,
    ScoreFunctionScorer,
    Scorer,
    ScorerFactory,
    WeightedProductScorer,
    grouped_weight,
    load,
    proposed_weight,
    saw_score,
    score_function,
    weighted_sum,
    wp_score,
)
