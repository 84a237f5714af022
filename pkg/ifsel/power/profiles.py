import dataclasses
import enum
import math
from typing import Any, Dict, FrozenSet, Sequence, Tuple

import numpy as np

from ifsel.errors import StructuralError, ValidationError


PROB_TOLERANCE = 1e-9


class Technology(enum.Enum):
    UMTS = "UMTS"
    WLAN = "WLAN"


# Communication states each technology's power profile must describe.
STATE_NAMES: Dict[Technology, FrozenSet[str]] = {
    Technology.WLAN: frozenset({"transmit", "receive", "idle", "sleep"}),
    Technology.UMTS: frozenset({"transmit", "receive", "signaling", "power_saving"}),
}

TRANSMIT_STATE = "transmit"


@dataclasses.dataclass(frozen=True)
class PowerStateProfile:
    """Per-state power draw and occupancy probability of one interface.

    Args:
        state_powers: (state name, power [mW]) pairs.
        state_probs: Probability of being in each state, same order.
        duration: Observation interval T [s].
    """

    state_powers: Tuple[Tuple[str, float], ...]
    state_probs: Tuple[float, ...]
    duration: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "state_powers",
            tuple((str(name), float(power)) for name, power in self.state_powers),
        )
        object.__setattr__(self, "state_probs", tuple(map(float, self.state_probs)))

        if len(self.state_powers) != len(self.state_probs):
            raise StructuralError(
                f"{len(self.state_powers)} state powers but "
                f"{len(self.state_probs)} state probabilities"
            )
        if len(set(self.state_names)) != len(self.state_names):
            raise StructuralError(f"Duplicate state names in {self.state_names}")
        if not self.duration > 0:
            raise ValidationError(f"duration must be > 0 s, got {self.duration}")
        for name, power in self.state_powers:
            if not (math.isfinite(power) and power >= 0):
                raise ValidationError(f"Power of state {name} must be >= 0, got {power}")
        for prob in self.state_probs:
            if not 0.0 <= prob <= 1.0:
                raise ValidationError(f"State probability {prob} not in [0, 1]")
        total = math.fsum(self.state_probs)
        if abs(total - 1.0) > PROB_TOLERANCE:
            raise ValidationError(f"State probabilities sum to {total}, expected 1")

    @property
    def state_names(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.state_powers)

    @property
    def powers(self) -> np.ndarray:
        return np.array([power for _, power in self.state_powers], dtype=float)

    @property
    def probs(self) -> np.ndarray:
        return np.array(self.state_probs, dtype=float)

    def with_state_power(self, name: str, power: float) -> "PowerStateProfile":
        """Returns a copy with the power of one state replaced."""
        if name not in self.state_names:
            raise StructuralError(f"Unknown state {name}, expected one of {self.state_names}")
        state_powers = tuple(
            (state, power if state == name else p) for state, p in self.state_powers
        )
        return dataclasses.replace(self, state_powers=state_powers)

    @classmethod
    def from_dict(cls, config: Dict[str, Any]) -> "PowerStateProfile":
        states: Sequence[Dict[str, Any]] = config["states"]
        return cls(
            state_powers=tuple((s["name"], float(s["power"])) for s in states),
            state_probs=tuple(float(s["prob"]) for s in states),
            duration=float(config.get("duration", 1.0)),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "duration": self.duration,
            "states": [
                {"name": name, "power": power, "prob": prob}
                for (name, power), prob in zip(self.state_powers, self.state_probs)
            ],
        }


@dataclasses.dataclass(frozen=True)
class BatteryProfile:
    """Battery charge of the mobile node.

    Args:
        level: Remaining charge fraction in [0, 1].
        threshold: Low-power threshold fraction in (0, 1).
    """

    level: float
    threshold: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.level <= 1.0:
            raise ValidationError(f"Battery level must be in [0, 1], got {self.level}")
        if not 0.0 < self.threshold < 1.0:
            raise ValidationError(
                f"Battery threshold must be in (0, 1), got {self.threshold}"
            )

    @property
    def is_sufficient(self) -> bool:
        """Whether the charge is strictly above the threshold."""
        return self.level > self.threshold


def mean_consumption(profile: PowerStateProfile) -> float:
    """Expected energy over the profile interval: T * sum_i P_i * C_i [mW*s]."""
    powers = profile.powers
    probs = profile.probs
    if powers.shape != probs.shape:
        raise StructuralError("State powers and probabilities differ in length")
    if abs(probs.sum() - 1.0) > PROB_TOLERANCE:
        raise ValidationError(f"State probabilities sum to {probs.sum()}, expected 1")
    return float(profile.duration * np.dot(probs, powers))
