import dataclasses
import itertools

import pytest

from ifsel.decision import (
    Attachment,
    CacState,
    InterfaceProfile,
    PolicyConfig,
    Ranking,
    availability_mask,
    cac_step,
    evaluate_interfaces,
    rank_inputs_at_distance,
    rank_interfaces,
    select_with_admission,
)
from ifsel.errors import DomainError, NoCandidateError, StructuralError, ValidationError
from ifsel.power import Technology
from ifsel.scoring import STATIC_PARAMETERS, ProposedScorer, SAWScorer


def test_static_inputs_match_weight_ratios(umts, wlan, make_ctx, calibration, interfaces):
    params = rank_inputs_at_distance(umts, make_ctx(500.0, 0.9), calibration, interfaces)
    assert params["cost"] == pytest.approx(1 / 11)
    assert params["throughput"] == pytest.approx(1 / 11)
    assert params["qos_qoe"] == pytest.approx(1 / 5)
    assert params["cell_coverage"] == pytest.approx(100 / 101)
    assert params["security"] == pytest.approx(4 / 5)

    params = rank_inputs_at_distance(wlan, make_ctx(500.0, 0.9), calibration, interfaces)
    assert params["cost"] == pytest.approx(10 / 11)
    assert params["signal_strength"] == pytest.approx(0.301204, abs=1e-6)
    assert params["power_consumption"] == pytest.approx(calibration.consumption_ref / 815.0)


def test_wlan_inputs_constant_in_bs_distance(wlan, make_ctx, calibration, interfaces):
    near = rank_inputs_at_distance(wlan, make_ctx(100.0, 0.9), calibration, interfaces)
    far = rank_inputs_at_distance(wlan, make_ctx(2000.0, 0.9), calibration, interfaces)
    assert near == far


def test_umts_signal_decreases_with_distance(umts, make_ctx, calibration, interfaces):
    near = rank_inputs_at_distance(umts, make_ctx(100.0, 0.9), calibration, interfaces)
    far = rank_inputs_at_distance(umts, make_ctx(1000.0, 0.9), calibration, interfaces)
    assert near["signal_strength"] > far["signal_strength"]
    assert near["power_consumption"] > far["power_consumption"]


def test_identical_interfaces_get_identical_inputs(wlan, make_ctx, calibration):
    twin = dataclasses.replace(wlan, id="AP2")
    ctx = make_ctx(500.0, 0.9)
    a = rank_inputs_at_distance(wlan, ctx, calibration, [wlan, twin])
    b = rank_inputs_at_distance(twin, ctx, calibration, [wlan, twin])
    assert a == b
    for name in STATIC_PARAMETERS:
        assert a[name] == pytest.approx(0.5)


def test_unreachable_interface_rejected(wlan, make_ctx, calibration):
    ctx = make_ctx(500.0, 0.9, distance_to_ap=10000.0)
    with pytest.raises(DomainError):
        rank_inputs_at_distance(wlan, ctx, calibration)


def test_peers_must_include_interface(umts, wlan, make_ctx, calibration):
    with pytest.raises(StructuralError):
        rank_inputs_at_distance(umts, make_ctx(500.0, 0.9), calibration, [wlan])


@pytest.mark.parametrize(
    "distance, battery, best",
    [
        (500.0, 0.9, "WLAN"),
        (300.0, 0.1, "UMTS"),
        (1500.0, 0.1, "WLAN"),
    ],
)
def test_rank_interfaces(interfaces, make_ctx, calibration, distance, battery, best):
    ranking = rank_interfaces(interfaces, make_ctx(distance, battery), calibration)
    assert ranking.best == best
    assert len(ranking) == 2


def test_rank_interfaces_excludes_unreachable(interfaces, make_ctx, calibration):
    ranking = rank_interfaces(
        interfaces, make_ctx(300.0, 0.9, distance_to_ap=10000.0), calibration
    )
    assert ranking.ids == ["UMTS"]


def test_rank_interfaces_without_candidates(wlan, make_ctx, calibration):
    with pytest.raises(NoCandidateError):
        rank_interfaces([wlan], make_ctx(300.0, 0.9, distance_to_ap=10000.0), calibration)


def test_sufficient_battery_ignores_power_rank(interfaces, make_ctx, calibration):
    # Ranks swap at the consumption crossover; the L_p values must not.
    for distance in (300.0, 1500.0):
        evaluations = evaluate_interfaces(interfaces, make_ctx(distance, 0.9), calibration)
        assert {e.lp for e in evaluations} == {1.0}

    low = evaluate_interfaces(interfaces, make_ctx(300.0, 0.1), calibration)
    assert {e.id: e.lp for e in low} == {"UMTS": 1, "WLAN": 2}


class RecordingSAW(SAWScorer):
    def __init__(self):
        self.calls = []

    def score(self, params, scaling, lp=1.0, available=1):
        self.calls.append((lp, available))
        return super().score(params, scaling, lp=lp, available=available)


def test_availability_mask_follows_reachability(interfaces, make_ctx, calibration):
    ctx = make_ctx(20000.0, 0.1)
    mask = availability_mask(interfaces, ctx)
    assert (mask["UMTS"], mask["WLAN"]) == (0, 1)

    scorer = RecordingSAW()
    evaluations = evaluate_interfaces(interfaces, ctx, calibration, scorer)
    assert [e.id for e in evaluations] == ["WLAN"]
    # SAW ignores the battery, so L_p stays 1 on a low battery.
    assert scorer.calls == [(1.0, 1)]
    assert evaluations[0].lp == 1.0


def test_scorer_override_keeps_configured_kwargs(policy):
    tuned = dataclasses.replace(
        policy, scorer="proposed", scorer_kwargs={"sufficient_level": 3.0}
    )
    assert tuned.scorer_named("proposed").sufficient_level == 3.0
    assert tuned.scorer_named(None).sufficient_level == 3.0
    assert isinstance(tuned.scorer_named("saw"), SAWScorer)
    assert isinstance(PolicyConfig(policy.scaling).scorer_named(), ProposedScorer)


def test_ranking_sorted_with_id_tie_break():
    ranking = Ranking.from_weights({"b": 1.0, "a": 1.0, "c": 2.0})
    assert ranking.ids == ["c", "a", "b"]
    assert ranking.rank("b") == 3
    assert ranking.weight("c") == 2.0
    with pytest.raises(StructuralError):
        Ranking((("a", 1.0), ("b", 2.0)))


def test_select_with_admission():
    two = Ranking.from_weights({"WLAN": 2.0, "UMTS": 1.0})
    assert select_with_admission(two, {"WLAN": True, "UMTS": True}) == "WLAN"
    # Only rank 1 is tried when N - 1 = 1.
    assert select_with_admission(two, {"WLAN": False, "UMTS": True}) is None

    three = Ranking.from_weights({"A": 3.0, "B": 2.0, "C": 1.0})
    assert select_with_admission(three, {"A": False, "B": True, "C": True}) == "B"
    assert select_with_admission(three, {"A": False, "B": False, "C": True}) is None

    one = Ranking.from_weights({"UMTS": 1.0})
    assert select_with_admission(one) == "UMTS"
    assert select_with_admission(one, {"UMTS": False}) is None

    with pytest.raises(DomainError):
        select_with_admission(Ranking(()))


def test_select_never_returns_rejected(rng):
    for _ in range(1000):
        ids = [f"i{k}" for k in range(int(rng.integers(1, 6)))]
        ranking = Ranking.from_weights({i: float(rng.random()) for i in ids})
        admission = {i: bool(rng.random() < 0.5) for i in ids}
        selected = select_with_admission(ranking, admission)
        if selected is not None:
            assert admission[selected]
            assert ranking.rank(selected) <= max(1, len(ids) - 1)


def test_interface_profile_validation(umts):
    config = umts.to_dict()
    assert InterfaceProfile.from_dict(config) == umts

    config["ratios"] = {"cost": 1}
    with pytest.raises(StructuralError):
        InterfaceProfile.from_dict(config)

    config = umts.to_dict()
    config["technology"] = "WLAN"
    with pytest.raises(StructuralError):
        InterfaceProfile.from_dict(config)


def test_interface_rejects_zero_consumption(umts, wlan):
    config = wlan.to_dict()
    for state in config["power"]["states"]:
        state["power"] = 0.0
    with pytest.raises(ValidationError):
        InterfaceProfile.from_dict(config)

    # Power control keeps UMTS consumption positive while it transmits.
    config = umts.to_dict()
    for state in config["power"]["states"]:
        state["power"] = 0.0
    assert InterfaceProfile.from_dict(config).id == umts.id


def expected_attachment(attached, level, distance, wlan_available, bth, dth):
    if attached is Attachment.WLAN:
        if not wlan_available or (level < bth and distance < dth):
            return Attachment.UMTS
        return Attachment.WLAN
    if wlan_available and (distance > dth or level > bth):
        return Attachment.WLAN
    return Attachment.UMTS


def test_cac_truth_table(policy, make_ctx):
    bth, dth = policy.battery_threshold, policy.distance_threshold
    levels = [0.5 * bth, bth, 0.5 * (1 + bth), 1.0]
    distances = [0.5 * dth, dth, 1.5 * dth]
    cases = 0
    for attached in Attachment:
        state = CacState(attached, dth, bth)
        for level, distance, wlan_available in itertools.product(
            levels, distances, (True, False)
        ):
            ctx = make_ctx(distance, level)
            expected = expected_attachment(attached, level, distance, wlan_available, bth, dth)
            next_state = cac_step(state, ctx, wlan_available)
            assert next_state.attached is expected
            # One step reaches a fixed point.
            assert cac_step(next_state, ctx, wlan_available) == next_state
            cases += 1
    assert cases == 3 * 4 * 3 * 2


@pytest.mark.parametrize(
    "attached, distance, battery, wlan_available, expected",
    [
        (Attachment.UMTS, 1200.0, 0.1, True, Attachment.WLAN),
        (Attachment.WLAN, 300.0, 0.1, True, Attachment.UMTS),
        (Attachment.WLAN, 300.0, 0.9, True, Attachment.WLAN),
        (Attachment.UMTS, 300.0, 0.1, True, Attachment.UMTS),
        (Attachment.WLAN, 1200.0, 0.9, False, Attachment.UMTS),
        (Attachment.NONE, 300.0, 0.9, True, Attachment.WLAN),
        (Attachment.NONE, 300.0, 0.9, False, Attachment.UMTS),
        # Exactly at both thresholds: attachment is kept.
        (Attachment.WLAN, 920.0, 0.2, True, Attachment.WLAN),
        (Attachment.UMTS, 920.0, 0.2, True, Attachment.UMTS),
    ],
)
def test_cac_examples(policy, make_ctx, attached, distance, battery, wlan_available, expected):
    state = CacState(attached, policy.distance_threshold, policy.battery_threshold)
    assert cac_step(state, make_ctx(distance, battery), wlan_available).attached is expected


def test_cac_hysteresis(policy, make_ctx):
    # Battery high, node close: the outcome depends on the prior attachment.
    ctx = make_ctx(300.0, 0.9)
    on_wlan = CacState(Attachment.WLAN, policy.distance_threshold, policy.battery_threshold)
    on_umts = CacState(Attachment.UMTS, policy.distance_threshold, policy.battery_threshold)
    assert cac_step(on_wlan, ctx, True).attached is Attachment.WLAN
    assert cac_step(on_umts, ctx, False).attached is Attachment.UMTS


def test_attachment_technology():
    assert Attachment.NONE.technology is None
    assert Attachment.UMTS.technology is Technology.UMTS
    assert Attachment.WLAN.technology is Technology.WLAN
