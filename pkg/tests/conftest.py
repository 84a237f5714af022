import pathlib
from typing import Callable, Dict, Optional

import numpy as np
import pytest

from ifsel import config as config_lib
from ifsel.decision import DecisionContext, InterfaceProfile, PolicyConfig
from ifsel.power import CalibrationConstants, Technology


REPO_ROOT = pathlib.Path(__file__).resolve().parents[1]
DEFAULT_CONFIG = REPO_ROOT / "configs" / "default.yaml"


@pytest.fixture
def config_file() -> config_lib.ConfigFile:
    return config_lib.load(DEFAULT_CONFIG)


@pytest.fixture
def interfaces(config_file):
    return config_file.interfaces


@pytest.fixture
def policy(config_file) -> PolicyConfig:
    return config_file.policy()


@pytest.fixture
def calibration(config_file) -> CalibrationConstants:
    return config_file.calibration


@pytest.fixture
def umts(interfaces) -> InterfaceProfile:
    return next(i for i in interfaces if i.technology is Technology.UMTS)


@pytest.fixture
def wlan(interfaces) -> InterfaceProfile:
    return next(i for i in interfaces if i.technology is Technology.WLAN)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(0)


@pytest.fixture
def make_ctx(policy) -> Callable[..., DecisionContext]:
    def make_ctx(
        distance: float,
        battery: float,
        distance_to_ap: float = 10.0,
        admission: Optional[Dict[str, bool]] = None,
    ) -> DecisionContext:
        return DecisionContext(
            battery=policy.battery(battery),
            distance_to_bs=distance,
            policy=policy,
            distance_to_ap=distance_to_ap,
            admission=admission,
        )

    return make_ctx
