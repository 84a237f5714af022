from .cac import Attachment, CacState, cac_step
from .context import DEFAULT_DISTANCE_TO_AP, DecisionContext, PolicyConfig
from .interfaces import InterfaceProfile
from .ranking import (
    InterfaceEvaluation,
    Ranking,
    availability_mask,
    evaluate_interfaces,
    interface_is_reachable,
    interface_rx_power,
    link_distance,
    rank_inputs_at_distance,
    rank_interfaces,
    select_with_admission,
    static_inputs,
)
