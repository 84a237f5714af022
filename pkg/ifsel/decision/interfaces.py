import dataclasses
import math
from typing import Any, Dict, Optional

from ifsel.errors import StructuralError, ValidationError
from ifsel.power import (
    STATE_NAMES,
    TRANSMIT_STATE,
    PowerStateProfile,
    Technology,
    mean_consumption,
)
from ifsel.radio import LinkBudget, PathLossModel
from ifsel.scoring import STATIC_PARAMETERS


@dataclasses.dataclass(frozen=True)
class InterfaceProfile:
    """One candidate access network.

    Args:
        id: Interface id, unique within a config.
        technology: UMTS macrocell or WLAN access point.
        static_ratios: Weight ratio number for each static parameter
            (throughput, cost, cell_coverage, qos_qoe, security).
        link: Transmit power and receiver sensitivity.
        path_model: Okumura-Hata parameters of the serving cell.
        power_profile: Communication-state power profile.
        coverage: Optional cell radius [m]; only enforced when the distance to
            the serving cell is given explicitly.
    """

    id: str
    technology: Technology
    static_ratios: Dict[str, float]
    link: LinkBudget
    path_model: PathLossModel
    power_profile: PowerStateProfile
    coverage: Optional[float] = None

    def __post_init__(self) -> None:
        if not isinstance(self.technology, Technology):
            object.__setattr__(self, "technology", Technology(str(self.technology).upper()))

        ratios = {k: float(v) for k, v in self.static_ratios.items()}
        if set(ratios) != set(STATIC_PARAMETERS):
            raise StructuralError(
                f"Interface {self.id} ratios name {sorted(ratios)}, "
                f"expected {sorted(STATIC_PARAMETERS)}"
            )
        object.__setattr__(self, "static_ratios", ratios)

        expected = STATE_NAMES[self.technology]
        if frozenset(self.power_profile.state_names) != expected:
            raise StructuralError(
                f"{self.technology.value} interface {self.id} power states "
                f"{sorted(self.power_profile.state_names)}, expected {sorted(expected)}"
            )

        # UMTS transmit power comes from power control and is always positive.
        profile = self.power_profile
        if self.technology is Technology.UMTS:
            profile = profile.with_state_power(TRANSMIT_STATE, 1.0)
        if not mean_consumption(profile) > 0:
            raise ValidationError(f"Interface {self.id} consumes no power in any state")
        if self.coverage is not None and not (
            math.isfinite(self.coverage) and self.coverage > 0
        ):
            raise ValidationError(f"Interface {self.id} coverage must be > 0 m")

    @classmethod
    def from_dict(cls, config: Dict[str, Any]) -> "InterfaceProfile":
        coverage = config.get("coverage")
        return cls(
            id=str(config["id"]),
            technology=Technology(str(config["technology"]).upper()),
            static_ratios=dict(config["ratios"]),
            link=LinkBudget.from_dict(config["link"]),
            path_model=PathLossModel.from_dict(config["path_loss"]),
            power_profile=PowerStateProfile.from_dict(config["power"]),
            coverage=None if coverage is None else float(coverage),
        )

    def to_dict(self) -> Dict[str, Any]:
        config: Dict[str, Any] = {
            "id": self.id,
            "technology": self.technology.value,
            "ratios": dict(self.static_ratios),
            "link": self.link.to_dict(),
            "path_loss": self.path_model.to_dict(),
            "power": self.power_profile.to_dict(),
        }
        if self.coverage is not None:
            config["coverage"] = self.coverage
        return config
