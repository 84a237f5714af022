import pathlib

import pytest
import yaml

from ifsel import config as config_lib
from ifsel.errors import ConfigError
from ifsel.scoring import PARAMETERS


DEFAULT_CONFIG = pathlib.Path(__file__).resolve().parents[1] / "configs" / "default.yaml"


def load_raw():
    with open(DEFAULT_CONFIG) as f:
        return yaml.safe_load(f)


def test_shipped_scaling_factors(config_file):
    expected = (0.4, 0.2, 0.09, 0.05, 0.08, 0.08, 0.1)
    names = (
        "cost",
        "throughput",
        "qos_qoe",
        "cell_coverage",
        "security",
        "signal_strength",
        "power_consumption",
    )
    assert tuple(config_file.scaling[name] for name in names) == expected
    assert set(config_file.scaling.names) == set(PARAMETERS)


def test_shipped_defaults(config_file):
    assert config_file.interface_ids == ("UMTS", "WLAN")
    assert config_file.scorer == "proposed"
    assert config_file.battery_threshold == 0.2
    assert config_file.distance_threshold == 920.0
    assert config_file.calibration.tx_power_ref == pytest.approx(1.8044)
    assert config_file.sweep.d_min == 100.0 and config_file.sweep.d_max == 2000.0


def test_round_trip(config_file):
    assert config_lib.ConfigFile.from_dict(config_file.to_dict()) == config_file
    dumped = config_lib.dump(config_file)
    assert config_lib.ConfigFile.from_dict(yaml.safe_load(dumped)) == config_file


@pytest.mark.parametrize(
    "name, value",
    [
        ("cost", 0.41),
        ("throughput", 0.19),
        ("security", 0.0800001),
    ],
)
def test_perturbed_scaling_rejected(name, value):
    raw = load_raw()
    raw["scaling_factors"][name] = value
    with pytest.raises(ConfigError, match="scaling_factors"):
        config_lib.ConfigFile.from_dict(raw)


def test_scaling_must_name_every_parameter():
    raw = load_raw()
    del raw["scaling_factors"]["security"]
    raw["scaling_factors"]["cost"] = 0.48
    with pytest.raises(ConfigError, match="scaling_factors"):
        config_lib.ConfigFile.from_dict(raw)


def test_duplicate_interface_ids():
    raw = load_raw()
    raw["interfaces"][1]["id"] = "UMTS"
    with pytest.raises(ConfigError, match="duplicate"):
        config_lib.ConfigFile.from_dict(raw)


def test_unknown_scorer():
    raw = load_raw()
    raw["scorer"] = "topsis"
    with pytest.raises(ConfigError, match="scorer"):
        config_lib.ConfigFile.from_dict(raw)


@pytest.mark.parametrize("section", ["interfaces", "scaling_factors", "calibration"])
def test_missing_section(section):
    raw = load_raw()
    del raw[section]
    with pytest.raises(ConfigError, match=section):
        config_lib.ConfigFile.from_dict(raw)


def test_bad_interface_block_is_named():
    raw = load_raw()
    raw["interfaces"][1]["power"]["states"][0]["prob"] = 0.5
    with pytest.raises(ConfigError, match=r"interfaces\[1\]"):
        config_lib.ConfigFile.from_dict(raw)


def test_bad_threshold():
    raw = load_raw()
    raw["thresholds"]["battery"] = 1.5
    with pytest.raises(ConfigError, match="thresholds"):
        config_lib.ConfigFile.from_dict(raw)


def test_scorer_kwargs_reach_scorer(config_file):
    raw = load_raw()
    raw["scorer_kwargs"] = {"sufficient_level": 4}
    scorer = config_lib.ConfigFile.from_dict(raw).policy().create_scorer()
    assert scorer.sufficient_level == 4.0


def test_load_errors(tmp_path):
    with pytest.raises(ConfigError):
        config_lib.load(tmp_path / "missing.yaml")
    path = tmp_path / "list.yaml"
    path.write_text("- 1\n- 2\n")
    with pytest.raises(ConfigError):
        config_lib.load(path)
    path = tmp_path / "broken.yaml"
    path.write_text("scorer: [proposed\n")
    with pytest.raises(ConfigError):
        config_lib.load(path)
