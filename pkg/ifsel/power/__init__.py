from .consumption import (
    CalibrationConstants,
    PowerRankAssignment,
    battery_level_factor,
    interface_consumption,
    power_rank,
    umts_tx_power_at_distance,
)
from .profiles import (
    STATE_NAMES,
    TRANSMIT_STATE,
    BatteryProfile,
    PowerStateProfile,
    Technology,
    mean_consumption,
)
