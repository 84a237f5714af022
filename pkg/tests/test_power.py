import dataclasses

import pytest

from ifsel.errors import DomainError, StructuralError, ValidationError
from ifsel.power import (
    BatteryProfile,
    CalibrationConstants,
    PowerRankAssignment,
    PowerStateProfile,
    battery_level_factor,
    interface_consumption,
    mean_consumption,
    power_rank,
    umts_tx_power_at_distance,
)


def test_mean_consumption_wlan(wlan):
    assert mean_consumption(wlan.power_profile) == pytest.approx(815.0)


def test_mean_consumption_scales_with_duration(wlan):
    profile = dataclasses.replace(wlan.power_profile, duration=2.0)
    assert mean_consumption(profile) == pytest.approx(1630.0)


def test_profile_validation():
    with pytest.raises(ValidationError):
        PowerStateProfile((("a", 1.0), ("b", 2.0)), (0.5, 0.6))
    with pytest.raises(StructuralError):
        PowerStateProfile((("a", 1.0), ("b", 2.0)), (1.0,))
    with pytest.raises(StructuralError):
        PowerStateProfile((("a", 1.0), ("a", 2.0)), (0.5, 0.5))
    with pytest.raises(ValidationError):
        PowerStateProfile((("a", -1.0),), (1.0,))


def test_with_state_power(umts):
    profile = umts.power_profile.with_state_power("transmit", 0.0)
    assert mean_consumption(profile) == pytest.approx(396.0)
    with pytest.raises(StructuralError):
        umts.power_profile.with_state_power("idle", 1.0)


def test_tx_power_at_reference_distance(umts, calibration):
    power = umts_tx_power_at_distance(calibration.ref_distance, calibration, umts.path_model)
    assert power == pytest.approx(calibration.tx_power_ref)


def test_tx_power_follows_path_loss_slope(umts, calibration):
    # 31.8 dB per decade of distance.
    p_100 = umts_tx_power_at_distance(100.0, calibration, umts.path_model)
    p_1000 = umts_tx_power_at_distance(1000.0, calibration, umts.path_model)
    assert p_1000 / p_100 == pytest.approx(10.0**3.18)


def test_umts_consumption_increases_with_distance(umts, calibration):
    distances = [100.0, 300.0, 600.0, 920.0, 1500.0, 2000.0]
    consumption = [interface_consumption(umts, d, calibration) for d in distances]
    assert all(a < b for a, b in zip(consumption[:-1], consumption[1:]))


def test_wlan_consumption_ignores_distance(wlan, calibration):
    assert interface_consumption(wlan, 100.0, calibration) == pytest.approx(815.0)
    assert interface_consumption(wlan, 2000.0, calibration) == pytest.approx(815.0)


def test_shipped_calibration_crossover(umts, wlan, calibration):
    assert interface_consumption(umts, 870.0, calibration) < 815.0
    assert interface_consumption(umts, 970.0, calibration) > 815.0


def test_power_rank(umts, wlan, calibration):
    near = power_rank([umts, wlan], 300.0, calibration)
    assert near[umts.id] == 1 and near[wlan.id] == 2
    far = power_rank([umts, wlan], 1500.0, calibration)
    assert far[umts.id] == 2 and far[wlan.id] == 1
    assert power_rank([wlan], 300.0, calibration)[wlan.id] == 1
    with pytest.raises(DomainError):
        power_rank([], 300.0, calibration)


def test_power_rank_ties_break_on_id(wlan, calibration):
    twin = dataclasses.replace(wlan, id="AP0")
    ranks = power_rank([wlan, twin], 300.0, calibration)
    assert ranks["AP0"] == 1 and ranks[wlan.id] == 2


def test_rank_assignment_must_be_permutation():
    with pytest.raises(ValidationError):
        PowerRankAssignment({"a": 1, "b": 1})


@pytest.mark.parametrize(
    "level, k, expected",
    [
        (0.9, 2, 1.0),
        (0.21, 3, 1.0),
        (0.2, 2, 2),
        (0.1, 1, 1),
        (0.0, 3, 3),
    ],
)
def test_battery_level_factor(level, k, expected):
    battery = BatteryProfile(level=level, threshold=0.2)
    assert battery_level_factor(battery, k) == expected


def test_battery_level_factor_sufficient_level():
    battery = BatteryProfile(level=0.9, threshold=0.2)
    assert battery_level_factor(battery, 2, sufficient_level=5.0) == 5.0
    with pytest.raises(DomainError):
        battery_level_factor(battery, 0)


def test_battery_validation():
    with pytest.raises(ValidationError):
        BatteryProfile(level=1.5, threshold=0.2)
    with pytest.raises(ValidationError):
        BatteryProfile(level=0.5, threshold=0.0)


def test_calibration_validation():
    with pytest.raises(ValidationError):
        CalibrationConstants(tx_power_ref=0.0)
    constants = CalibrationConstants(tx_power_ref=1.0, ref_distance=50.0)
    assert CalibrationConstants.from_dict(constants.to_dict()) == constants
