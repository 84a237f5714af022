"""Distance sweeps over the UMTS base-station distance."""

import dataclasses
import enum
import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import tqdm

from ifsel.decision import (
    DEFAULT_DISTANCE_TO_AP,
    DecisionContext,
    InterfaceProfile,
    PolicyConfig,
    Ranking,
    evaluate_interfaces,
)
from ifsel.errors import StructuralError, ValidationError
from ifsel.power import CalibrationConstants, interface_consumption
from ifsel.utils.logging import TableLogger


log = logging.getLogger(__name__)


class BatteryMode(enum.Enum):
    SUFFICIENT = "sufficient"
    INSUFFICIENT = "insufficient"

    def level(self, threshold: float) -> float:
        """Representative battery level on this side of the threshold."""
        if self is BatteryMode.SUFFICIENT:
            return threshold + 0.5 * (1.0 - threshold)
        return 0.5 * threshold


@dataclasses.dataclass(frozen=True)
class SweepSpec:
    """Distance grid and battery condition of a sweep.

    Args:
        d_min: First grid distance [m].
        d_max: Last grid distance [m], included when it lies on the grid.
        step: Grid spacing [m].
        battery_mode: Battery held above or below the threshold.
        scorer: Scorer name. Defaults to the policy's scorer.
    """

    d_min: float
    d_max: float
    step: float
    battery_mode: BatteryMode = BatteryMode.SUFFICIENT
    scorer: Optional[str] = None

    def __post_init__(self) -> None:
        if not isinstance(self.battery_mode, BatteryMode):
            object.__setattr__(
                self, "battery_mode", BatteryMode(str(self.battery_mode).lower())
            )
        if not (math.isfinite(self.d_min) and self.d_min > 0):
            raise ValidationError(f"d_min must be > 0 m, got {self.d_min}")
        if not (math.isfinite(self.d_max) and self.d_max > self.d_min):
            raise ValidationError(
                f"d_max must be > d_min, got d_min={self.d_min}, d_max={self.d_max}"
            )
        if not (math.isfinite(self.step) and self.step > 0):
            raise ValidationError(f"step must be > 0 m, got {self.step}")

    @property
    def distances(self) -> np.ndarray:
        num_points = int(math.floor((self.d_max - self.d_min) / self.step + 1e-9)) + 1
        return self.d_min + self.step * np.arange(num_points, dtype=float)


@dataclasses.dataclass(frozen=True)
class SweepRow:
    distance: float
    weights: Dict[str, float]
    consumptions: Dict[str, float]
    chosen: str


@dataclasses.dataclass(frozen=True)
class SweepResult:
    """One row per grid distance."""

    rows: Tuple[SweepRow, ...]
    interface_ids: Tuple[str, ...]
    battery_mode: BatteryMode

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(self.rows))
        object.__setattr__(self, "interface_ids", tuple(self.interface_ids))
        distances = self.distances
        if distances.size > 1 and not np.all(np.diff(distances) > 0):
            raise StructuralError("Sweep distances must be strictly increasing")

    @property
    def distances(self) -> np.ndarray:
        return np.array([row.distance for row in self.rows], dtype=float)

    @property
    def series_names(self) -> List[str]:
        return [f"weight_{i}" for i in self.interface_ids] + [
            f"consumption_{i}" for i in self.interface_ids
        ]

    def series(self, name: str) -> np.ndarray:
        """Column `weight_<id>` or `consumption_<id>` as an array."""
        kind, _, iface_id = name.partition("_")
        if name not in self.series_names:
            raise StructuralError(
                f"Unknown series {name}, expected one of {self.series_names}"
            )
        attr = "weights" if kind == "weight" else "consumptions"
        return np.array([getattr(row, attr)[iface_id] for row in self.rows], dtype=float)

    @property
    def chosen(self) -> List[str]:
        return [row.chosen for row in self.rows]

    def write(self, table: TableLogger) -> None:
        """Writes one table row per grid distance."""
        for row in self.rows:
            table.log("distance", row.distance)
            table.log("weight", row.weights)
            table.log("consumption", row.consumptions)
            table.log("chosen", row.chosen)
            table.flush()
        table.close()


def sweep(
    spec: SweepSpec,
    profiles: Sequence[InterfaceProfile],
    calibration: CalibrationConstants,
    policy: PolicyConfig,
    distance_to_ap: float = DEFAULT_DISTANCE_TO_AP,
    progress: bool = False,
) -> SweepResult:
    """Ranks the interfaces at every grid distance.

    WLAN is available at every distance, with the access point held at
    `distance_to_ap`. An interface that is out of range at some distance
    scores 0 there.

    Args:
        spec: Sweep grid and battery condition.
        profiles: Configured interfaces.
        calibration: Calibration constants.
        policy: Selection policy.
        distance_to_ap: Distance to the WLAN access point [m].
        progress: Show a progress bar.

    Returns:
        Sweep result.
    """
    scorer = policy.scorer_named(spec.scorer)
    battery = policy.battery(spec.battery_mode.level(policy.battery_threshold))
    log.info(
        "Sweeping %s with %s battery (level %.3f)",
        scorer,
        spec.battery_mode.value,
        battery.level,
    )

    rows = []
    for distance in tqdm.tqdm(
        spec.distances, desc="Sweep", dynamic_ncols=True, disable=not progress
    ):
        distance = float(distance)
        ctx = DecisionContext(
            battery=battery,
            distance_to_bs=distance,
            policy=policy,
            distance_to_ap=distance_to_ap,
        )
        evaluations = evaluate_interfaces(profiles, ctx, calibration, scorer)
        weights = {iface.id: 0.0 for iface in profiles}
        weights.update({e.id: e.weight for e in evaluations})
        ranking = Ranking.from_weights({e.id: e.weight for e in evaluations})
        rows.append(
            SweepRow(
                distance=distance,
                weights=weights,
                consumptions={
                    iface.id: interface_consumption(iface, distance, calibration)
                    for iface in profiles
                },
                chosen=ranking.best,
            )
        )

    return SweepResult(
        rows=tuple(rows),
        interface_ids=tuple(iface.id for iface in profiles),
        battery_mode=spec.battery_mode,
    )


def find_crossover(result: SweepResult, series_a: str, series_b: str) -> Optional[float]:
    """Locates the first distance where two series intersect.

    Args:
        result: Sweep result.
        series_a: Name of the first series.
        series_b: Name of the second series.

    Returns:
        Linearly interpolated distance of the first sign change of
        `series_a - series_b`, or None if the sign never changes.
    """
    diff = result.series(series_a) - result.series(series_b)
    distances = result.distances

    idx_nonzero = np.flatnonzero(diff != 0)
    for i, j in zip(idx_nonzero[:-1], idx_nonzero[1:]):
        if np.sign(diff[i]) == np.sign(diff[j]):
            continue
        if j > i + 1:
            # Exact zero on the grid.
            return float(distances[i + 1])
        t = diff[i] / (diff[i] - diff[j])
        return float(distances[i] + t * (distances[j] - distances[i]))
    return None


def chosen_flips(result: SweepResult) -> int:
    """Number of grid steps where the chosen interface changes."""
    chosen = result.chosen
    return sum(a != b for a, b in zip(chosen[:-1], chosen[1:]))
