import dataclasses
import math
from typing import Any, Dict, FrozenSet, Iterable, Mapping, Optional

from ifsel.errors import StructuralError, ValidationError


SUM_TOLERANCE = 1e-9

# Selection parameters, in the order reports list them.
PARAMETERS = (
    "signal_strength",
    "throughput",
    "power_consumption",
    "cost",
    "cell_coverage",
    "qos_qoe",
    "security",
)
# Parameters computed from the link and the consumption model at each distance.
DYNAMIC_PARAMETERS = ("signal_strength", "power_consumption")
# Parameters given as configured weight ratios between interfaces.
STATIC_PARAMETERS = tuple(p for p in PARAMETERS if p not in DYNAMIC_PARAMETERS)


def _check_nonnegative(name: str, values: Mapping[str, float]) -> Dict[str, float]:
    checked = {}
    for key, value in values.items():
        value = float(value)
        if not (math.isfinite(value) and value >= 0):
            raise ValidationError(f"{name}[{key}] must be finite and >= 0, got {value}")
        checked[key] = value
    return checked


@dataclasses.dataclass(frozen=True)
class ScalingFactors:
    """Per-parameter importance S_m, summing to 1."""

    values: Dict[str, float]

    def __post_init__(self) -> None:
        if not self.values:
            raise ValidationError("ScalingFactors must name at least one parameter")
        values = _check_nonnegative("ScalingFactors", self.values)
        total = math.fsum(values.values())
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise ValidationError(f"Scaling factors sum to {total!r}, expected 1")
        object.__setattr__(self, "values", values)

    @property
    def names(self) -> Iterable[str]:
        return self.values.keys()

    def __getitem__(self, name: str) -> float:
        return self.values[name]


@dataclasses.dataclass(frozen=True)
class ParameterVector:
    """Scaled, benefit-oriented merit w_m of one interface per parameter."""

    values: Dict[str, float]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "values", _check_nonnegative("ParameterVector", self.values)
        )

    def __getitem__(self, name: str) -> float:
        return self.values[name]

    def select(self, names: Iterable[str]) -> Dict[str, float]:
        """Values of the given parameters, in the given order."""
        try:
            return {name: self.values[name] for name in names}
        except KeyError as e:
            raise StructuralError(f"Parameter {e} missing from ParameterVector")


@dataclasses.dataclass(frozen=True)
class AvailabilityMask:
    """Availability indicator R_i in {0, 1} per interface id."""

    available: Dict[str, int]

    def __post_init__(self) -> None:
        for iface_id, value in self.available.items():
            if value not in (0, 1):
                raise ValidationError(
                    f"Availability of {iface_id} must be 0 or 1, got {value}"
                )

    def __getitem__(self, iface_id: str) -> int:
        return int(self.available.get(iface_id, 0))


@dataclasses.dataclass(frozen=True)
class PriorityGrouping:
    """Split of the parameters into a high- and a low-priority group.

    Args:
        high: The q high-priority parameters.
        low: The remaining M - q parameters.
        combine_high: Coefficient applied to the high-priority sum.
        combine_low: Coefficient applied to the low-priority sum.
    """

    high: FrozenSet[str]
    low: FrozenSet[str]
    combine_high: float = 1.0
    combine_low: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "high", frozenset(self.high))
        object.__setattr__(self, "low", frozenset(self.low))
        overlap = self.high & self.low
        if overlap:
            raise StructuralError(f"Parameters {sorted(overlap)} are in both groups")
        for name in ("combine_high", "combine_low"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ValidationError(f"PriorityGrouping.{name} must be >= 0, got {value}")

    def check_partition(self, names: Iterable[str]) -> None:
        """Raises if the groups do not partition `names`."""
        names = frozenset(names)
        ungrouped = names - self.high - self.low
        if ungrouped:
            raise StructuralError(f"Parameters {sorted(ungrouped)} are in neither group")
        unknown = (self.high | self.low) - names
        if unknown:
            raise StructuralError(f"Grouped parameters {sorted(unknown)} are not configured")

    @classmethod
    def from_dict(
        cls, config: Mapping[str, Any], names: Optional[Iterable[str]] = None
    ) -> "PriorityGrouping":
        """Builds a grouping; `low` defaults to every name not in `high`."""
        high = frozenset(config["high"])
        if "low" in config:
            low = frozenset(config["low"])
        elif names is not None:
            low = frozenset(names) - high
        else:
            raise StructuralError("PriorityGrouping needs `low` or the parameter names")
        return cls(
            high=high,
            low=low,
            combine_high=float(config.get("combine_high", 1.0)),
            combine_low=float(config.get("combine_low", 1.0)),
        )


def scale_weight_ratios(
    ratios: Mapping[str, Mapping[str, float]]
) -> Dict[str, ParameterVector]:
    """Normalizes per-parameter weight ratios across interfaces.

    Args:
        ratios: Parameter name -> interface id -> positive ratio number.

    Returns:
        Interface id -> ParameterVector whose entries sum to 1 across
        interfaces for every parameter.
    """
    scaled: Dict[str, Dict[str, float]] = {}
    iface_ids: Optional[FrozenSet[str]] = None
    for param, per_iface in ratios.items():
        if iface_ids is None:
            iface_ids = frozenset(per_iface)
        elif frozenset(per_iface) != iface_ids:
            raise StructuralError(
                f"Ratios for {param} cover {sorted(per_iface)}, expected {sorted(iface_ids)}"
            )
        for iface_id, ratio in per_iface.items():
            if not (math.isfinite(ratio) and ratio > 0):
                raise ValidationError(
                    f"Ratio of {iface_id} for {param} must be > 0, got {ratio}"
                )
        total = math.fsum(per_iface.values())
        for iface_id, ratio in per_iface.items():
            scaled.setdefault(iface_id, {})[param] = ratio / total

    return {iface_id: ParameterVector(values) for iface_id, values in scaled.items()}
