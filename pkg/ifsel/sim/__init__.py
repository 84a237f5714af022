from .sweep import (
    BatteryMode,
    SweepResult,
    SweepRow,
    SweepSpec,
    chosen_flips,
    find_crossover,
    sweep,
)
from .trace import (
    MobilityTrace,
    TraceSample,
    TraceStep,
    count_handovers,
    load_trace,
    run_trace,
    write_trace,
)
from .calibrate import (
    CONSUMPTION_REF_BRACKET,
    TX_POWER_BRACKET,
    fit_consumption_ref,
    fit_tx_power_ref,
    technology_pair,
)
