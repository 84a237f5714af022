"""Decision engine: per-interface inputs, ranking and admission walk."""

import dataclasses
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ifsel.decision.context import DecisionContext
from ifsel.decision.interfaces import InterfaceProfile
from ifsel.errors import DomainError, NoCandidateError, StructuralError
from ifsel.power import (
    CalibrationConstants,
    Technology,
    battery_level_factor,
    interface_consumption,
    power_rank,
)
from ifsel.radio import is_reachable, path_loss, received_power, signal_merit
from ifsel.scoring import (
    STATIC_PARAMETERS,
    AvailabilityMask,
    ParameterVector,
    Scorer,
    scale_weight_ratios,
)


@dataclasses.dataclass(frozen=True)
class Ranking:
    """Interfaces sorted by descending weight; rank 1 is the best."""

    ordered: Tuple[Tuple[str, float], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "ordered", tuple(self.ordered))
        keys = [(-weight, iface_id) for iface_id, weight in self.ordered]
        if keys != sorted(keys):
            raise StructuralError(f"Ranking {self.ordered} is not sorted")

    @classmethod
    def from_weights(cls, weights: Mapping[str, float]) -> "Ranking":
        ordered = sorted(weights.items(), key=lambda item: (-item[1], item[0]))
        return cls(tuple(ordered))

    @property
    def ids(self) -> List[str]:
        return [iface_id for iface_id, _ in self.ordered]

    @property
    def best(self) -> str:
        return self.ordered[0][0]

    def weight(self, iface_id: str) -> float:
        return dict(self.ordered)[iface_id]

    def rank(self, iface_id: str) -> int:
        return self.ids.index(iface_id) + 1

    def __len__(self) -> int:
        return len(self.ordered)


@dataclasses.dataclass(frozen=True)
class InterfaceEvaluation:
    """Intermediate values behind one interface's weight."""

    id: str
    rx_power: float
    consumption: float
    power_rank: int
    lp: float
    params: ParameterVector
    weight: float


def link_distance(iface: InterfaceProfile, ctx: DecisionContext) -> float:
    """Distance from the mobile node to the interface's serving cell [m]."""
    if iface.technology is Technology.WLAN:
        return ctx.distance_to_ap
    return ctx.distance_to_bs


def interface_rx_power(iface: InterfaceProfile, ctx: DecisionContext) -> float:
    """Received power from the serving cell [dBm]."""
    loss = path_loss(iface.path_model, link_distance(iface, ctx) / 1000.0)
    return received_power(iface.link, loss)


def interface_is_reachable(iface: InterfaceProfile, ctx: DecisionContext) -> bool:
    return is_reachable(interface_rx_power(iface, ctx), iface.link.rx_sensitivity)


def availability_mask(
    profiles: Sequence[InterfaceProfile], ctx: DecisionContext
) -> AvailabilityMask:
    """R = 1 for every interface whose received power clears its sensitivity."""
    return AvailabilityMask(
        {iface.id: int(interface_is_reachable(iface, ctx)) for iface in profiles}
    )


def static_inputs(peers: Sequence[InterfaceProfile]) -> Dict[str, ParameterVector]:
    """Static merit values normalized across the configured interfaces."""
    ratios = {
        param: {iface.id: iface.static_ratios[param] for iface in peers}
        for param in STATIC_PARAMETERS
    }
    return scale_weight_ratios(ratios)


def rank_inputs_at_distance(
    iface: InterfaceProfile,
    ctx: DecisionContext,
    calibration: CalibrationConstants,
    peers: Optional[Sequence[InterfaceProfile]] = None,
) -> ParameterVector:
    """Assembles the seven merit values of one interface.

    Static parameters are the weight ratios normalized across `peers`.
    Signal strength is the received power mapped from [sensitivity, tx_power]
    onto [0, 1]. Power consumption is `calibration.consumption_ref` divided by
    the interface's consumption, so less consumption scores higher.

    Args:
        iface: Interface to evaluate. Must be reachable.
        ctx: Decision context.
        calibration: Calibration constants.
        peers: Configured interfaces used to normalize the static ratios.
            Defaults to `[iface]`.

    Returns:
        Merit values of the interface.
    """
    peers = [iface] if peers is None else list(peers)
    if iface.id not in {peer.id for peer in peers}:
        raise StructuralError(f"Interface {iface.id} missing from peers")

    rx = interface_rx_power(iface, ctx)
    if not is_reachable(rx, iface.link.rx_sensitivity):
        raise DomainError(
            f"Interface {iface.id} is unreachable: {rx:.2f} dBm below "
            f"{iface.link.rx_sensitivity:.2f} dBm"
        )

    consumption = interface_consumption(iface, ctx.distance_to_bs, calibration)
    values = dict(static_inputs(peers)[iface.id].values)
    values["signal_strength"] = signal_merit(iface.link, rx)
    values["power_consumption"] = calibration.consumption_ref / consumption
    return ParameterVector(values)


def evaluate_interfaces(
    profiles: Sequence[InterfaceProfile],
    ctx: DecisionContext,
    calibration: CalibrationConstants,
    scorer: Optional[Scorer] = None,
    peers: Optional[Sequence[InterfaceProfile]] = None,
) -> List[InterfaceEvaluation]:
    """Scores every reachable interface.

    Unreachable interfaces are masked out. L_p is computed only for scorers
    that use the battery level and is 1 otherwise.

    Args:
        profiles: Configured interfaces.
        ctx: Decision context.
        calibration: Calibration constants.
        scorer: Scorer to use. Defaults to the policy's scorer.
        peers: Interfaces used to normalize the static ratios. Defaults to
            `profiles`.

    Returns:
        Evaluations of the reachable interfaces, in config order.
    """
    if scorer is None:
        scorer = ctx.policy.create_scorer()
    if peers is None:
        peers = profiles

    available = availability_mask(profiles, ctx)
    candidates = [iface for iface in profiles if available[iface.id]]
    if not candidates:
        raise NoCandidateError(
            f"No reachable interface at {ctx.distance_to_bs:.1f} m from the base station"
        )

    ranks = power_rank(candidates, ctx.distance_to_bs, calibration)
    evaluations = []
    for iface in candidates:
        params = rank_inputs_at_distance(iface, ctx, calibration, peers)
        k = ranks[iface.id]
        lp = (
            battery_level_factor(ctx.battery, k, scorer.sufficient_level)
            if scorer.uses_battery_level
            else 1.0
        )
        weight = scorer.score(
            params, ctx.policy.scaling, lp=lp, available=available[iface.id]
        )
        evaluations.append(
            InterfaceEvaluation(
                id=iface.id,
                rx_power=interface_rx_power(iface, ctx),
                consumption=interface_consumption(iface, ctx.distance_to_bs, calibration),
                power_rank=k,
                lp=lp,
                params=params,
                weight=weight,
            )
        )
    return evaluations


def rank_interfaces(
    profiles: Sequence[InterfaceProfile],
    ctx: DecisionContext,
    calibration: CalibrationConstants,
    scorer: Optional[Scorer] = None,
    peers: Optional[Sequence[InterfaceProfile]] = None,
) -> Ranking:
    """Ranks the reachable interfaces by total weight."""
    evaluations = evaluate_interfaces(profiles, ctx, calibration, scorer, peers)
    return Ranking.from_weights({e.id: e.weight for e in evaluations})


def select_with_admission(
    ranking: Ranking, admission: Optional[Mapping[str, bool]] = None
) -> Optional[str]:
    """Walks the ranking and returns the first interface with resources.

    Ranks 1 to N - 1 are tried (rank 1 when N = 1); the worst-ranked interface
    of a longer ranking is never tried.

    Args:
        ranking: Ranked interfaces.
        admission: Whether each interface has resources. Missing ids are
            admitted.

    Returns:
        Selected interface id, or None if no tried interface admits the call.
    """
    if len(ranking) == 0:
        raise DomainError("Cannot select from an empty ranking")
    admission = {} if admission is None else admission
    num_tries = max(1, len(ranking) - 1)
    for iface_id in ranking.ids[:num_tries]:
        if admission.get(iface_id, True):
            return iface_id
    return None
