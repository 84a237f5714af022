"""Mobility traces driving the admission-control state machine."""

import csv
import dataclasses
import logging
import math
import pathlib
from typing import List, Mapping, Optional, Sequence, Tuple, Union

from ifsel.decision import (
    DEFAULT_DISTANCE_TO_AP,
    Attachment,
    CacState,
    DecisionContext,
    InterfaceProfile,
    PolicyConfig,
    Ranking,
    cac_step,
    interface_is_reachable,
    rank_interfaces,
    select_with_admission,
)
from ifsel.errors import NoCandidateError, ValidationError
from ifsel.power import CalibrationConstants, Technology
from ifsel.utils.logging import TableLogger


log = logging.getLogger(__name__)

TRACE_COLUMNS = ("time", "distance", "battery", "wlan_available")
OPTIONAL_TRACE_COLUMNS = ("distance_to_ap",)

_TRUE = ("1", "true", "yes")
_FALSE = ("0", "false", "no")


@dataclasses.dataclass(frozen=True)
class TraceSample:
    time: float
    distance_to_bs: float
    battery_level: float
    wlan_available: bool
    distance_to_ap: Optional[float] = None


@dataclasses.dataclass(frozen=True)
class MobilityTrace:
    """Time-ordered samples of the node's position and battery."""

    samples: Tuple[TraceSample, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "samples", tuple(self.samples))
        for prev, sample in zip(self.samples[:-1], self.samples[1:]):
            if not sample.time > prev.time:
                raise ValidationError(
                    f"Trace times must be strictly increasing, got {prev.time} "
                    f"then {sample.time}"
                )
        for sample in self.samples:
            if not sample.distance_to_bs > 0:
                raise ValidationError(
                    f"Trace distance must be > 0 m, got {sample.distance_to_bs} "
                    f"at t={sample.time}"
                )
            if sample.distance_to_ap is not None and not sample.distance_to_ap > 0:
                raise ValidationError(
                    f"Trace distance_to_ap must be > 0 m, got {sample.distance_to_ap} "
                    f"at t={sample.time}"
                )

    def __len__(self) -> int:
        return len(self.samples)


def _parse_bool(value: str) -> bool:
    value = value.strip().lower()
    if value in _TRUE:
        return True
    if value in _FALSE:
        return False
    raise ValueError(f"expected a boolean, got {value!r}")


def _parse_float(value: str) -> float:
    result = float(value)
    if not math.isfinite(result):
        raise ValueError(f"expected a finite number, got {value!r}")
    return result


def load_trace(path: Union[str, pathlib.Path]) -> MobilityTrace:
    """Loads a trace CSV.

    The header must name `time,distance,battery,wlan_available` and may add
    `distance_to_ap`. Distances are in metres and battery levels in [0, 1].

    Args:
        path: Trace CSV path.

    Returns:
        Mobility trace.
    """
    path = pathlib.Path(path)
    with open(path, "r", newline="") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames is None:
            raise ValidationError(f"{path}: empty trace file")
        header = [name.strip() for name in reader.fieldnames]
        missing = [name for name in TRACE_COLUMNS if name not in header]
        if missing:
            raise ValidationError(f"{path}:1: trace header lacks columns {missing}")
        reader.fieldnames = header

        samples = []
        for row in reader:
            line = reader.line_num
            try:
                if None in row.values() or None in row:
                    raise ValueError("wrong number of fields")
                battery = _parse_float(row["battery"])
                if not 0.0 <= battery <= 1.0:
                    raise ValueError(f"battery level must be in [0, 1], got {battery}")
                distance_to_ap = row.get("distance_to_ap", "").strip()
                sample = TraceSample(
                    time=_parse_float(row["time"]),
                    distance_to_bs=_parse_float(row["distance"]),
                    battery_level=battery,
                    wlan_available=_parse_bool(row["wlan_available"]),
                    distance_to_ap=(
                        _parse_float(distance_to_ap) if distance_to_ap else None
                    ),
                )
            except ValueError as e:
                raise ValidationError(f"{path}:{line}: malformed trace row: {e}")
            samples.append(sample)

    if not samples:
        raise ValidationError(f"{path}: trace has no samples")
    try:
        return MobilityTrace(tuple(samples))
    except ValidationError as e:
        raise ValidationError(f"{path}: {e}")


@dataclasses.dataclass(frozen=True)
class TraceStep:
    """State after processing one trace sample."""

    sample: TraceSample
    state: CacState
    ranking: Ranking
    selected: Optional[str]
    handover: bool


def wlan_in_range(
    iface: InterfaceProfile, ctx: DecisionContext, explicit_ap_distance: bool
) -> bool:
    """Whether a WLAN interface can serve the node."""
    if explicit_ap_distance and iface.coverage is not None:
        if ctx.distance_to_ap > iface.coverage:
            return False
    return interface_is_reachable(iface, ctx)


def run_trace(
    trace: MobilityTrace,
    profiles: Sequence[InterfaceProfile],
    calibration: CalibrationConstants,
    policy: PolicyConfig,
    admission: Optional[Mapping[str, bool]] = None,
) -> List[TraceStep]:
    """Folds the admission-control transition over a trace.

    The node starts unattached. At each sample the state machine picks the
    technology, the interfaces of that technology are ranked, and the first
    admitted one is selected. A step where no interface of that technology is
    reachable has an empty ranking and no selection. A change between two
    attached technologies is a handover; the first attach is not.

    Args:
        trace: Mobility trace.
        profiles: Configured interfaces.
        calibration: Calibration constants.
        policy: Selection policy.
        admission: Whether each interface has resources. Missing ids are
            admitted.

    Returns:
        One step per sample.
    """
    scorer = policy.create_scorer()
    state = CacState.initial(policy)
    steps = []
    for sample in trace.samples:
        explicit_ap_distance = sample.distance_to_ap is not None
        ctx = DecisionContext(
            battery=policy.battery(sample.battery_level),
            distance_to_bs=sample.distance_to_bs,
            policy=policy,
            distance_to_ap=(
                sample.distance_to_ap if explicit_ap_distance else DEFAULT_DISTANCE_TO_AP
            ),
            admission=admission,
        )
        wlans = [
            iface
            for iface in profiles
            if iface.technology is Technology.WLAN
            and wlan_in_range(iface, ctx, explicit_ap_distance)
        ]
        wlan_available = sample.wlan_available and bool(wlans)

        prev = state.attached
        state = cac_step(state, ctx, wlan_available)
        handover = prev is not Attachment.NONE and state.attached is not prev
        if handover:
            log.info(
                "Handover %s -> %s at t=%g s (%.1f m, battery %.3f)",
                prev.value,
                state.attached.value,
                sample.time,
                sample.distance_to_bs,
                sample.battery_level,
            )

        if state.attached is Attachment.WLAN:
            candidates = wlans
        else:
            candidates = [
                i for i in profiles if i.technology is state.attached.technology
            ]
        try:
            ranking = rank_interfaces(candidates, ctx, calibration, scorer, peers=profiles)
        except NoCandidateError:
            log.warning(
                "No reachable %s interface at t=%g s (%.1f m)",
                state.attached.value,
                sample.time,
                sample.distance_to_bs,
            )
            ranking = Ranking(())
        selected = select_with_admission(ranking, ctx.admission) if len(ranking) else None

        steps.append(TraceStep(sample, state, ranking, selected, handover))

    return steps


def count_handovers(steps: Sequence[TraceStep]) -> int:
    return sum(step.handover for step in steps)


def write_trace(steps: Sequence[TraceStep], table: TableLogger) -> None:
    """Writes one table row per trace step."""
    for step in steps:
        table.log("time", step.sample.time)
        table.log("distance", step.sample.distance_to_bs)
        table.log("battery", step.sample.battery_level)
        table.log("wlan_available", step.sample.wlan_available)
        table.log("attached", step.state.attached.value)
        table.log("selected", "" if step.selected is None else step.selected)
        table.log(
            "weight", None if step.selected is None else step.ranking.weight(step.selected)
        )
        table.log("handover", step.handover)
        table.flush()
    table.close()
