import dataclasses
import math
from typing import Any, Dict

from ifsel.errors import DomainError, ValidationError


@dataclasses.dataclass(frozen=True)
class LinkBudget:
    """Transmitter power and receiver sensitivity.

    Args:
        tx_power: Transmit power [dBm].
        rx_sensitivity: Minimum usable received power [dBm].
    """

    tx_power: float
    rx_sensitivity: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.tx_power) and math.isfinite(self.rx_sensitivity)):
            raise ValidationError("LinkBudget powers must be finite")
        if self.tx_power <= self.rx_sensitivity:
            raise ValidationError(
                f"LinkBudget.tx_power ({self.tx_power} dBm) must exceed "
                f"rx_sensitivity ({self.rx_sensitivity} dBm)"
            )

    @classmethod
    def from_dict(cls, config: Dict[str, Any]) -> "LinkBudget":
        return cls(
            tx_power=float(config["tx_power"]),
            rx_sensitivity=float(config["rx_sensitivity"]),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {"tx_power": self.tx_power, "rx_sensitivity": self.rx_sensitivity}


def received_power(budget: LinkBudget, loss: float) -> float:
    """Received power [dBm] after `loss` dB of attenuation."""
    if loss < 0:
        raise DomainError(f"loss must be >= 0 dB, got {loss}")
    return budget.tx_power - loss


def is_reachable(rx: float, sensitivity: float) -> bool:
    """Whether the received power meets the sensitivity (inclusive)."""
    return rx >= sensitivity


def signal_merit(budget: LinkBudget, rx: float) -> float:
    """Maps received power affinely from [sensitivity, tx_power] onto [0, 1].

    Args:
        budget: Link budget of the interface.
        rx: Received power [dBm].

    Returns:
        Signal strength merit, clipped to [0, 1].
    """
    span = budget.tx_power - budget.rx_sensitivity
    merit = (rx - budget.rx_sensitivity) / span
    return min(1.0, max(0.0, merit))
