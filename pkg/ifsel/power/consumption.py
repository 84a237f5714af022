"""Distance-dependent power consumption and the battery-level factor."""

import dataclasses
import math
from typing import TYPE_CHECKING, Any, Dict, Sequence

from ifsel.errors import DomainError, ValidationError
from ifsel.power.profiles import (
    TRANSMIT_STATE,
    BatteryProfile,
    Technology,
    mean_consumption,
)
from ifsel.radio import PathLossModel, path_loss

if TYPE_CHECKING:
    from ifsel.decision.interfaces import InterfaceProfile


@dataclasses.dataclass(frozen=True)
class CalibrationConstants:
    """Fitted constants of the consumption model.

    Args:
        tx_power_ref: UMTS transmit-state power at `ref_distance` [mW].
        ref_distance: Normalization distance [m].
        consumption_ref: Consumption against which the power-consumption
            merit of every interface is scored [mW*s].
    """

    tx_power_ref: float
    ref_distance: float = 100.0
    consumption_ref: float = 1000.0

    def __post_init__(self) -> None:
        for field in dataclasses.fields(self):
            value = getattr(self, field.name)
            if not (math.isfinite(value) and value > 0):
                raise ValidationError(
                    f"CalibrationConstants.{field.name} must be > 0, got {value}"
                )

    @classmethod
    def from_dict(cls, config: Dict[str, Any]) -> "CalibrationConstants":
        return cls(**{k: float(v) for k, v in config.items()})

    def to_dict(self) -> Dict[str, Any]:
        return dataclasses.asdict(self)


@dataclasses.dataclass(frozen=True)
class PowerRankAssignment:
    """Power rank K per interface id: 1 consumes least, N most."""

    ranks: Dict[str, int]

    def __post_init__(self) -> None:
        if sorted(self.ranks.values()) != list(range(1, len(self.ranks) + 1)):
            raise ValidationError(f"Ranks {self.ranks} are not a permutation of 1..N")

    def __getitem__(self, iface_id: str) -> int:
        return self.ranks[iface_id]


def umts_tx_power_at_distance(
    distance: float, calibration: CalibrationConstants, model: PathLossModel
) -> float:
    """Mobile transmit power under path-loss compensating power control.

    The transmit power scales with the linear path loss and equals
    `calibration.tx_power_ref` at `calibration.ref_distance`.

    Args:
        distance: Distance to the base station [m].
        calibration: Calibration constants.
        model: Path loss model of the UMTS cell.

    Returns:
        Transmit-state power [mW].
    """
    if not distance > 0:
        raise DomainError(f"distance must be > 0 m, got {distance}")
    delta_db = path_loss(model, distance / 1000.0) - path_loss(
        model, calibration.ref_distance / 1000.0
    )
    return calibration.tx_power_ref * 10.0 ** (delta_db / 10.0)


def interface_consumption(
    iface: "InterfaceProfile", distance: float, calibration: CalibrationConstants
) -> float:
    """Expected consumption of an interface [mW*s].

    Args:
        iface: Interface profile.
        distance: Distance from the mobile node to the UMTS base station [m].
            WLAN consumption does not depend on it.
        calibration: Calibration constants.

    Returns:
        Mean consumption over the profile interval.
    """
    if not distance > 0:
        raise DomainError(f"distance must be > 0 m, got {distance}")
    profile = iface.power_profile
    if iface.technology is Technology.UMTS:
        tx_power = umts_tx_power_at_distance(distance, calibration, iface.path_model)
        profile = profile.with_state_power(TRANSMIT_STATE, tx_power)
    return mean_consumption(profile)


def power_rank(
    interfaces: Sequence["InterfaceProfile"],
    distance: float,
    calibration: CalibrationConstants,
) -> PowerRankAssignment:
    """Ranks interfaces by ascending consumption; ties break on interface id."""
    if not interfaces:
        raise DomainError("power_rank requires at least one interface")
    consumptions = {
        iface.id: interface_consumption(iface, distance, calibration)
        for iface in interfaces
    }
    order = sorted(consumptions, key=lambda iface_id: (consumptions[iface_id], iface_id))
    return PowerRankAssignment({iface_id: k for k, iface_id in enumerate(order, 1)})


def battery_level_factor(
    battery: BatteryProfile, k: float, sufficient_level: float = 1.0
) -> float:
    """Battery-level divisor L_p.

    Args:
        battery: Battery state.
        k: Power rank of the interface.
        sufficient_level: Constant I used while the battery is above threshold.

    Returns:
        I when the level is strictly above the threshold, else k.
    """
    if k < 1:
        raise DomainError(f"power rank must be >= 1, got {k}")
    return sufficient_level if battery.is_sufficient else k
