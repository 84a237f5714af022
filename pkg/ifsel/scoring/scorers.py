import abc
import math
from typing import Any, Dict, Mapping, Optional, Sequence, Type

import numpy as np

from ifsel.errors import DomainError, StructuralError, ValidationError
from ifsel.scoring.base import ParameterVector, PriorityGrouping, ScalingFactors
from ifsel.utils import configs


def _check_mask(mask: int) -> None:
    if mask not in (0, 1):
        raise ValidationError(f"Availability mask must be 0 or 1, got {mask}")


def _as_pair(weights: Sequence[float], scaled: Sequence[float]):
    weights_arr = np.asarray(weights, dtype=float)
    scaled_arr = np.asarray(scaled, dtype=float)
    if weights_arr.ndim != 1 or weights_arr.shape != scaled_arr.shape:
        raise StructuralError(
            f"weights {weights_arr.shape} and scaled values {scaled_arr.shape} differ"
        )
    if weights_arr.size == 0:
        raise StructuralError("At least one parameter is required")
    return weights_arr, scaled_arr


def saw_score(mask: int, weights: Sequence[float], scaled: Sequence[float]) -> float:
    """Simple additive weighting: R * sum(W_j r_j) / sum(W_j)."""
    _check_mask(mask)
    w, r = _as_pair(weights, scaled)
    total = w.sum()
    if total == 0:
        raise DomainError("SAW weights sum to zero")
    return float(mask * np.dot(w, r) / total)


def wp_score(mask: int, weights: Sequence[float], scaled: Sequence[float]) -> float:
    """Weighted product: R * prod(r_j ** w_j).

    A zero scaled value with a positive exponent yields 0.
    """
    _check_mask(mask)
    w, r = _as_pair(weights, scaled)
    if np.any(r < 0):
        raise DomainError(f"Scaled values must be >= 0, got {r}")
    return float(mask * np.prod(np.power(r, w)))


def score_function(
    w_s: float, w_p: float, w_c: float, f_s: float, f_p: float, f_c: float
) -> float:
    """Cost-function score over signal, power and cost factors."""
    weights = np.array([w_s, w_p, w_c], dtype=float)
    factors = np.array([f_s, f_p, f_c], dtype=float)
    if not (np.all(np.isfinite(weights)) and np.all(weights >= 0)):
        raise ValidationError(f"Score-function weights must be >= 0, got {weights}")
    if not np.all(np.isfinite(factors)):
        raise ValidationError(f"Score-function factors must be finite, got {factors}")
    return float(np.dot(weights, factors))


def weighted_sum(params: ParameterVector, scaling: ScalingFactors) -> float:
    """sum_m w_m * S_m over the scaled parameters."""
    values = params.select(scaling.names)
    return math.fsum(values[name] * scaling[name] for name in scaling.names)


def proposed_weight(
    params: ParameterVector, scaling: ScalingFactors, lp: float
) -> float:
    """Battery-aware weight: sum_m w_m * S_m / log10(1 + L_p).

    Args:
        params: Merit values of the interface.
        scaling: Scaling factors S_m.
        lp: Battery-level factor, >= 1.

    Returns:
        Total weight of the interface.
    """
    if not lp >= 1:
        raise DomainError(f"L_p must be >= 1, got {lp}")
    return weighted_sum(params, scaling) / math.log10(1.0 + lp)


def grouped_weight(
    params: ParameterVector, scaling: ScalingFactors, grouping: PriorityGrouping
) -> float:
    """Two-group weight: f_high * sum_high(w S) + f_low * sum_low(w S)."""
    grouping.check_partition(scaling.names)
    values = params.select(scaling.names)
    high = math.fsum(values[m] * scaling[m] for m in scaling.names if m in grouping.high)
    low = math.fsum(values[m] * scaling[m] for m in scaling.names if m in grouping.low)
    return grouping.combine_high * high + grouping.combine_low * low


class Scorer(abc.ABC):
    """Scores one interface from its merit values."""

    # Whether the battery-level factor L_p enters the score.
    uses_battery_level = False
    sufficient_level = 1.0

    @abc.abstractmethod
    def score(
        self,
        params: ParameterVector,
        scaling: ScalingFactors,
        lp: float = 1.0,
        available: int = 1,
    ) -> float:
        """Computes the total weight of an interface.

        Args:
            params: Merit values w_m of the interface.
            scaling: Scaling factors S_m.
            lp: Battery-level factor L_p.
            available: Availability indicator R.

        Returns:
            Total weight; larger is better.
        """

    def breakdown(
        self, params: ParameterVector, scaling: ScalingFactors
    ) -> Dict[str, float]:
        """Per-parameter contribution w_m * S_m."""
        values = params.select(scaling.names)
        return {name: values[name] * scaling[name] for name in scaling.names}

    def __str__(self) -> str:
        return f"{type(self).__name__}()"


class SAWScorer(Scorer):
    def score(self, params, scaling, lp=1.0, available=1):
        names = list(scaling.names)
        values = params.select(names)
        return saw_score(
            available, [scaling[m] for m in names], [values[m] for m in names]
        )


class WeightedProductScorer(Scorer):
    def score(self, params, scaling, lp=1.0, available=1):
        names = list(scaling.names)
        values = params.select(names)
        return wp_score(
            available, [scaling[m] for m in names], [values[m] for m in names]
        )


class ScoreFunctionScorer(Scorer):
    """Signal/power/cost score function.

    Args:
        weights: Optional {"signal_strength", "power_consumption", "cost"}
            weights. Defaults to the scaling factors of those parameters.
    """

    FACTORS = ("signal_strength", "power_consumption", "cost")

    def __init__(self, weights: Optional[Mapping[str, float]] = None):
        if weights is not None and set(weights) != set(self.FACTORS):
            raise StructuralError(f"Score-function weights must name {self.FACTORS}")
        self._weights = None if weights is None else dict(weights)

    def score(self, params, scaling, lp=1.0, available=1):
        _check_mask(available)
        weights = (
            self._weights
            if self._weights is not None
            else {m: scaling[m] for m in self.FACTORS}
        )
        factors = params.select(self.FACTORS)
        return available * score_function(
            weights["signal_strength"],
            weights["power_consumption"],
            weights["cost"],
            factors["signal_strength"],
            factors["power_consumption"],
            factors["cost"],
        )


class ProposedScorer(Scorer):
    """Battery-aware weight.

    Args:
        sufficient_level: Constant I used as L_p while the battery is above
            threshold.
        grouping: Optional priority grouping config (`high`, optional `low`,
            `combine_high`, `combine_low`). Replaces the plain weighted sum
            with the two-group form.
    """

    uses_battery_level = True

    def __init__(
        self,
        sufficient_level: float = 1.0,
        grouping: Optional[Mapping[str, Any]] = None,
    ):
        if not sufficient_level >= 1:
            raise DomainError(f"sufficient_level must be >= 1, got {sufficient_level}")
        self.sufficient_level = float(sufficient_level)
        self._grouping_config = None if grouping is None else dict(grouping)

    def grouping(self, scaling: ScalingFactors) -> Optional[PriorityGrouping]:
        if self._grouping_config is None:
            return None
        return PriorityGrouping.from_dict(self._grouping_config, scaling.names)

    def score(self, params, scaling, lp=1.0, available=1):
        _check_mask(available)
        grouping = self.grouping(scaling)
        if grouping is None:
            return available * proposed_weight(params, scaling, lp)
        if not lp >= 1:
            raise DomainError(f"L_p must be >= 1, got {lp}")
        numerator = grouped_weight(params, scaling, grouping)
        return available * numerator / math.log10(1.0 + lp)


SCORERS: Dict[str, Type[Scorer]] = {
    "saw": SAWScorer,
    "wp": WeightedProductScorer,
    "sf": ScoreFunctionScorer,
    "proposed": ProposedScorer,
}


class ScorerFactory(configs.Factory[Scorer]):
    """Creates the scorer named by `scorer` with `scorer_kwargs`."""

    def __init__(self, config: Mapping[str, Any]):
        super().__init__(config, "scorer", SCORERS)


def load(name: str = "proposed", **kwargs) -> Scorer:
    """Creates a scorer by name."""
    return ScorerFactory({"scorer": name, "scorer_kwargs": kwargs})()
