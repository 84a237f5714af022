"""Config file schema: interfaces, policy, calibration and sweep defaults."""

import dataclasses
import math
import pathlib
from typing import Any, Dict, Mapping, Tuple, Union

import yaml

from ifsel.decision import DEFAULT_DISTANCE_TO_AP, InterfaceProfile, PolicyConfig
from ifsel.errors import ConfigError
from ifsel.power import CalibrationConstants
from ifsel.scoring import PARAMETERS, SCORERS, ScalingFactors
from ifsel.utils import configs


@dataclasses.dataclass(frozen=True)
class SweepDefaults:
    d_min: float = 100.0
    d_max: float = 2000.0
    step: float = 10.0
    distance_to_ap: float = DEFAULT_DISTANCE_TO_AP

    def __post_init__(self) -> None:
        for field in dataclasses.fields(self):
            value = getattr(self, field.name)
            if not (math.isfinite(value) and value > 0):
                raise ConfigError(f"sweep.{field.name} must be > 0, got {value}")
        if not self.d_max > self.d_min:
            raise ConfigError("sweep.d_max must be > sweep.d_min")

    @classmethod
    def from_dict(cls, config: Mapping[str, Any]) -> "SweepDefaults":
        return cls(**{k: float(v) for k, v in config.items()})

    def to_dict(self) -> Dict[str, Any]:
        return dataclasses.asdict(self)


@dataclasses.dataclass(frozen=True)
class ConfigFile:
    """Everything a command needs besides its flags.

    Args:
        interfaces: Candidate interfaces, one block per id.
        scaling: Scaling factors of the seven parameters.
        calibration: Consumption model constants.
        scorer: Scorer name.
        scorer_kwargs: Scorer constructor kwargs.
        battery_threshold: Low-battery threshold fraction.
        distance_threshold: Admission-control distance threshold [m].
        sweep: Default sweep grid.
    """

    interfaces: Tuple[InterfaceProfile, ...]
    scaling: ScalingFactors
    calibration: CalibrationConstants
    scorer: str = "proposed"
    scorer_kwargs: Dict[str, Any] = dataclasses.field(default_factory=dict)
    battery_threshold: float = 0.2
    distance_threshold: float = 920.0
    sweep: SweepDefaults = dataclasses.field(default_factory=SweepDefaults)

    def __post_init__(self) -> None:
        object.__setattr__(self, "interfaces", tuple(self.interfaces))
        if not self.interfaces:
            raise ConfigError("interfaces: at least one interface is required")
        ids = [iface.id for iface in self.interfaces]
        duplicates = sorted({i for i in ids if ids.count(i) > 1})
        if duplicates:
            raise ConfigError(f"interfaces: duplicate interface ids {duplicates}")

        names = set(self.scaling.names)
        if names != set(PARAMETERS):
            raise ConfigError(
                f"scaling_factors: must name exactly {list(PARAMETERS)}, "
                f"got {sorted(names)}"
            )
        if self.scorer.lower() not in SCORERS:
            raise ConfigError(
                f"scorer: unknown scorer {self.scorer}, expected one of {sorted(SCORERS)}"
            )

    @property
    def interface_ids(self) -> Tuple[str, ...]:
        return tuple(iface.id for iface in self.interfaces)

    def policy(self) -> PolicyConfig:
        return PolicyConfig(
            scaling=self.scaling,
            scorer=self.scorer,
            scorer_kwargs=dict(self.scorer_kwargs),
            battery_threshold=self.battery_threshold,
            distance_threshold=self.distance_threshold,
        )

    @classmethod
    def from_dict(cls, config: Mapping[str, Any]) -> "ConfigFile":
        """Parses and validates a config dict.

        Raises:
            ConfigError: naming the section whose invariant failed.
        """
        config = dict(config)

        def section(name: str, parse, *args):
            try:
                return parse(*args)
            except ConfigError:
                raise
            except (AttributeError, KeyError, TypeError, ValueError) as e:
                raise ConfigError(f"{name}: {e}") from e

        if "interfaces" not in config:
            raise ConfigError("interfaces: section missing")
        if "scaling_factors" not in config:
            raise ConfigError("scaling_factors: section missing")
        if "calibration" not in config:
            raise ConfigError("calibration: section missing")

        interfaces = tuple(
            section(f"interfaces[{i}]", InterfaceProfile.from_dict, block)
            for i, block in enumerate(config["interfaces"] or [])
        )
        scaling = section(
            "scaling_factors",
            lambda values: ScalingFactors({k: float(v) for k, v in values.items()}),
            config["scaling_factors"],
        )
        calibration = section(
            "calibration", CalibrationConstants.from_dict, config["calibration"]
        )
        thresholds = dict(config.get("thresholds") or {})
        sweep = section("sweep", SweepDefaults.from_dict, config.get("sweep") or {})

        config_file = section(
            "config",
            lambda: cls(
                interfaces=interfaces,
                scaling=scaling,
                calibration=calibration,
                scorer=str(config.get("scorer", "proposed")),
                scorer_kwargs=configs.parse_kwargs(config, "scorer_kwargs"),
                battery_threshold=float(thresholds.get("battery", 0.2)),
                distance_threshold=float(thresholds.get("distance", 920.0)),
                sweep=sweep,
            ),
        )
        section("thresholds", config_file.policy)
        return config_file

    def to_dict(self) -> Dict[str, Any]:
        return {
            "scorer": self.scorer,
            "scorer_kwargs": dict(self.scorer_kwargs),
            "thresholds": {
                "battery": self.battery_threshold,
                "distance": self.distance_threshold,
            },
            "scaling_factors": {name: self.scaling[name] for name in PARAMETERS},
            "calibration": self.calibration.to_dict(),
            "sweep": self.sweep.to_dict(),
            "interfaces": [iface.to_dict() for iface in self.interfaces],
        }


def load(path: Union[str, pathlib.Path]) -> ConfigFile:
    """Loads and validates a yaml config file."""
    try:
        config = configs.load_config(path)
    except (OSError, ValueError, yaml.YAMLError) as e:
        raise ConfigError(f"Cannot read config {path}: {e}") from e
    return ConfigFile.from_dict(config)


def dump(config: ConfigFile) -> str:
    return configs.dump_config(config.to_dict())
