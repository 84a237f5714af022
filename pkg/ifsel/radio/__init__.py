from .link import LinkBudget, is_reachable, received_power, signal_merit
from .pathloss import (
    PathLossKind,
    PathLossModel,
    distance_slope,
    mobile_antenna_correction,
    path_loss,
)
