import dataclasses
import math
from typing import Any, Dict, Mapping, Optional

from ifsel.errors import DomainError, ValidationError
from ifsel.power import BatteryProfile
from ifsel.scoring import ScalingFactors, Scorer, ScorerFactory


DEFAULT_DISTANCE_TO_AP = 10.0


@dataclasses.dataclass(frozen=True)
class PolicyConfig:
    """Pre-defined selection policy.

    Args:
        scaling: Scaling factors S_m.
        scorer: Scorer name (saw, wp, sf, proposed).
        scorer_kwargs: Scorer constructor kwargs.
        battery_threshold: Low-battery threshold fraction, shared by L_p and
            the admission state machine.
        distance_threshold: UMTS distance beyond which WLAN is preferred [m].
    """

    scaling: ScalingFactors
    scorer: str = "proposed"
    scorer_kwargs: Dict[str, Any] = dataclasses.field(default_factory=dict)
    battery_threshold: float = 0.2
    distance_threshold: float = 920.0

    def __post_init__(self) -> None:
        if not 0.0 < self.battery_threshold < 1.0:
            raise ValidationError(
                f"battery threshold must be in (0, 1), got {self.battery_threshold}"
            )
        if not (math.isfinite(self.distance_threshold) and self.distance_threshold > 0):
            raise ValidationError(
                f"distance threshold must be > 0 m, got {self.distance_threshold}"
            )

    def create_scorer(self, **kwargs) -> Scorer:
        """Instantiates the configured scorer."""
        factory = ScorerFactory(
            {"scorer": self.scorer, "scorer_kwargs": self.scorer_kwargs}
        )
        return factory(**kwargs)

    def scorer_named(self, name: Optional[str] = None) -> Scorer:
        """Scorer override; the configured scorer keeps its `scorer_kwargs`."""
        if name is None or name.lower() == self.scorer.lower():
            return self.create_scorer()
        return ScorerFactory({"scorer": name})()

    def battery(self, level: float) -> BatteryProfile:
        """Battery profile at the given charge level."""
        return BatteryProfile(level=level, threshold=self.battery_threshold)


@dataclasses.dataclass(frozen=True)
class DecisionContext:
    """Everything the decision engine collects before ranking.

    Args:
        battery: Battery state.
        distance_to_bs: Distance to the UMTS base station [m].
        policy: Selection policy.
        distance_to_ap: Distance to the WLAN access point [m].
        admission: Whether each interface has resources for the call. Missing
            ids are admitted.
    """

    battery: BatteryProfile
    distance_to_bs: float
    policy: PolicyConfig
    distance_to_ap: float = DEFAULT_DISTANCE_TO_AP
    admission: Optional[Mapping[str, bool]] = None

    def __post_init__(self) -> None:
        for name in ("distance_to_bs", "distance_to_ap"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be > 0 m, got {value}")
