"""Okumura-Hata path loss for the macrocell and microcell parameterizations.

All lengths inside the formulas are in the classical Hata units: carrier
frequency in MHz, antenna heights in metres and distance in kilometres.
"""

import dataclasses
import enum
import logging
import math
from typing import Any, Dict

from ifsel.errors import DomainError, ValidationError


log = logging.getLogger(__name__)

# Classical Hata validity range for the macrocell formula.
MACROCELL_FREQ_RANGE = (150.0, 2000.0)


class PathLossKind(enum.Enum):
    MACROCELL = "macrocell"
    MICROCELL = "microcell"


@dataclasses.dataclass(frozen=True)
class PathLossModel:
    """Okumura-Hata model parameters.

    Args:
        kind: Macrocell (UMTS base station) or microcell (WLAN access point).
        carrier_freq: Carrier frequency [MHz].
        base_height: Base station or access point antenna height [m]. Also
            used as the effective height in the distance-slope term.
        mobile_height: Mobile antenna height [m]. Only the macrocell formula
            uses it.
    """

    kind: PathLossKind
    carrier_freq: float
    base_height: float
    mobile_height: float = 2.0

    def __post_init__(self) -> None:
        if not isinstance(self.kind, PathLossKind):
            object.__setattr__(self, "kind", PathLossKind(str(self.kind).lower()))
        for name in ("carrier_freq", "base_height", "mobile_height"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0:
                raise ValidationError(f"PathLossModel.{name} must be > 0, got {value}")

        lo, hi = MACROCELL_FREQ_RANGE
        if self.kind is PathLossKind.MACROCELL and not lo <= self.carrier_freq <= hi:
            log.warning(
                "Macrocell carrier frequency %.1f MHz is outside the Hata range "
                "[%.0f, %.0f] MHz",
                self.carrier_freq,
                lo,
                hi,
            )

    @classmethod
    def from_dict(cls, config: Dict[str, Any]) -> "PathLossModel":
        return cls(
            kind=PathLossKind(str(config["kind"]).lower()),
            carrier_freq=float(config["carrier_freq"]),
            base_height=float(config["base_height"]),
            mobile_height=float(config.get("mobile_height", 2.0)),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "carrier_freq": self.carrier_freq,
            "base_height": self.base_height,
            "mobile_height": self.mobile_height,
        }


def mobile_antenna_correction(freq: float, mobile_height: float) -> float:
    """Hata small/medium-city mobile antenna correction a(h_m).

    Args:
        freq: Carrier frequency [MHz].
        mobile_height: Mobile antenna height [m].

    Returns:
        Correction [dB], subtracted inside the macrocell formula.
    """
    if freq <= 0 or mobile_height <= 0:
        raise DomainError(
            f"freq and mobile_height must be > 0, got {freq}, {mobile_height}"
        )
    log_f = math.log10(freq)
    return (1.1 * log_f - 0.7) * mobile_height - (1.56 * log_f - 0.8)


def distance_slope(model: PathLossModel) -> float:
    """Path loss increase per decade of distance [dB/decade]."""
    log_h = math.log10(model.base_height)
    if model.kind is PathLossKind.MACROCELL:
        return 44.9 - 6.55 * log_h
    return 46.84 - 2.34 * log_h


def _intercept(model: PathLossModel) -> float:
    """Path loss at 1 km [dB]."""
    log_f = math.log10(model.carrier_freq)
    log_h = math.log10(model.base_height)
    if model.kind is PathLossKind.MACROCELL:
        return (
            69.55
            + 26.16 * log_f
            - 13.82 * log_h
            - mobile_antenna_correction(model.carrier_freq, model.mobile_height)
        )
    return 135.41 + 12.49 * log_f - 4.99 * log_h


def path_loss(model: PathLossModel, distance: float) -> float:
    """Computes the Okumura-Hata path loss.

    Args:
        model: Path loss model.
        distance: Transmitter-receiver distance [km].

    Returns:
        Path loss [dB].
    """
    if not distance > 0:
        raise DomainError(f"distance must be > 0 km, got {distance}")
    return _intercept(model) + distance_slope(model) * math.log10(distance)
