"""Root-finding of the consumption model constants."""

import dataclasses
import logging
import math
from typing import Callable, Optional, Sequence, Tuple

from scipy import optimize

from ifsel.decision import (
    DEFAULT_DISTANCE_TO_AP,
    DecisionContext,
    InterfaceProfile,
    PolicyConfig,
    evaluate_interfaces,
)
from ifsel.errors import CalibrationError, DomainError, StructuralError
from ifsel.power import CalibrationConstants, Technology, interface_consumption
from ifsel.sim.sweep import BatteryMode


log = logging.getLogger(__name__)

# Search brackets over log10 of the fitted constant.
TX_POWER_BRACKET = (-9.0, 9.0)
CONSUMPTION_REF_BRACKET = (-3.0, 7.0)


def technology_pair(
    profiles: Sequence[InterfaceProfile],
) -> Optional[Tuple[InterfaceProfile, InterfaceProfile]]:
    """First UMTS and first WLAN interface, or None if either is missing."""
    umts = [i for i in profiles if i.technology is Technology.UMTS]
    wlan = [i for i in profiles if i.technology is Technology.WLAN]
    if not umts or not wlan:
        return None
    return umts[0], wlan[0]


def _require_pair(
    profiles: Sequence[InterfaceProfile],
) -> Tuple[InterfaceProfile, InterfaceProfile]:
    pair = technology_pair(profiles)
    if pair is None:
        raise StructuralError("Calibration needs one UMTS and one WLAN interface")
    return pair


def _find_root(
    fn: Callable[[float], float], bracket: Tuple[float, float], name: str
) -> float:
    lo, hi = bracket
    f_lo, f_hi = fn(lo), fn(hi)
    log.debug("%s bracket [%g, %g] -> [%g, %g]", name, lo, hi, f_lo, f_hi)
    if f_lo == 0:
        return lo
    if f_hi == 0:
        return hi
    if math.copysign(1.0, f_lo) == math.copysign(1.0, f_hi):
        raise CalibrationError(
            f"No root for log10({name}) in [{lo:g}, {hi:g}]: "
            f"residual {f_lo:.6g} at {lo:g}, {f_hi:.6g} at {hi:g}"
        )
    return optimize.brentq(fn, lo, hi, xtol=1e-12, rtol=1e-14)


def fit_tx_power_ref(
    profiles: Sequence[InterfaceProfile],
    calibration: CalibrationConstants,
    target: float,
    bracket: Tuple[float, float] = TX_POWER_BRACKET,
) -> CalibrationConstants:
    """Fits `tx_power_ref` so UMTS and WLAN consumption cross at `target`.

    Args:
        profiles: Configured interfaces.
        calibration: Current constants; `ref_distance` and `consumption_ref`
            are kept.
        target: Desired consumption crossover distance [m].
        bracket: Search bracket over log10(tx_power_ref).

    Returns:
        Calibration constants with the fitted `tx_power_ref`.
    """
    if not (math.isfinite(target) and target > 0):
        raise DomainError(f"target must be > 0 m, got {target}")
    umts, wlan = _require_pair(profiles)
    wlan_consumption = interface_consumption(wlan, target, calibration)

    def residual(log_p0: float) -> float:
        trial = dataclasses.replace(calibration, tx_power_ref=10.0**log_p0)
        return interface_consumption(umts, target, trial) - wlan_consumption

    log_p0 = _find_root(residual, bracket, "tx_power_ref")
    fitted = dataclasses.replace(calibration, tx_power_ref=10.0**log_p0)
    log.info("tx_power_ref = %.6g mW for crossover at %g m", fitted.tx_power_ref, target)
    return fitted


def fit_consumption_ref(
    profiles: Sequence[InterfaceProfile],
    calibration: CalibrationConstants,
    policy: PolicyConfig,
    target: float,
    distance_to_ap: float = DEFAULT_DISTANCE_TO_AP,
    bracket: Tuple[float, float] = CONSUMPTION_REF_BRACKET,
) -> CalibrationConstants:
    """Fits `consumption_ref` so the low-battery weights cross at `target`.

    Args:
        profiles: Configured interfaces.
        calibration: Current constants; `tx_power_ref` and `ref_distance`
            are kept.
        policy: Selection policy.
        target: Desired weight crossover distance [m] with the battery below
            threshold.
        distance_to_ap: Distance to the WLAN access point [m].
        bracket: Search bracket over log10(consumption_ref).

    Returns:
        Calibration constants with the fitted `consumption_ref`.
    """
    if not (math.isfinite(target) and target > 0):
        raise DomainError(f"target must be > 0 m, got {target}")
    umts, wlan = _require_pair(profiles)
    scorer = policy.create_scorer()
    ctx = DecisionContext(
        battery=policy.battery(BatteryMode.INSUFFICIENT.level(policy.battery_threshold)),
        distance_to_bs=target,
        policy=policy,
        distance_to_ap=distance_to_ap,
    )

    def residual(log_ref: float) -> float:
        trial = dataclasses.replace(calibration, consumption_ref=10.0**log_ref)
        weights = {
            e.id: e.weight for e in evaluate_interfaces(profiles, ctx, trial, scorer)
        }
        if umts.id not in weights or wlan.id not in weights:
            raise CalibrationError(f"Interfaces unreachable at {target} m")
        return weights[umts.id] - weights[wlan.id]

    log_ref = _find_root(residual, bracket, "consumption_ref")
    fitted = dataclasses.replace(calibration, consumption_ref=10.0**log_ref)
    log.info(
        "consumption_ref = %.6g mW*s for weight crossover at %g m",
        fitted.consumption_ref,
        target,
    )
    return fitted
