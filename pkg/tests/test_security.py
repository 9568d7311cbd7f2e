# -*- coding:utf-8 -*-

import numpy as np
import pytest

from walkport import const
from walkport.protocol import ProtocolConfig
from walkport.security import SecurityScenario, participant_slots, residual_after_partial_measurement, \
    conditional_states, ensemble_state, phase_blindness_check, sector_weights, cross_sector_coherence, \
    sweep_all_subsets
from walkport.utils import exceptions

from conftest import assert_allclose_complex, random_secrets


LABELS = [(0, 0), (0, 1), (1, 0), (1, 1)]

# receivers of the (2, 2) homogeneous run, sender 2 measured
RECEIVER_MIXTURE = (np.eye(4) + np.outer([0, 1, 0, 0], [0, 0, 1, 0]) + np.outer([0, 0, 1, 0], [0, 1, 0, 0])) / 4


def homogeneous(n=2, m=2):
    return ProtocolConfig(n, m, const.VARIANT_HOMOGENEOUS)


def position_dependent(n=2, m=2):
    return ProtocolConfig(n, m, const.VARIANT_POSITION_DEPENDENT)


def test_participant_slots():
    assert participant_slots("s2") == ("p2", "c2")
    assert participant_slots("r10") == ("r10", )
    for bad in ("x1", "s", "rr", 3):
        with pytest.raises(exceptions.ValidationError):
            participant_slots(bad)


def test_scenario_probe_rules(secret):
    config = homogeneous()
    scenario = SecurityScenario(config, secret, [2], ["r2", "s1"])
    assert scenario.probe == ("s1", "r2")
    assert scenario.probe_slots == ("p1", "c1", "r2")
    assert scenario.measured_slots == ("p2", "c2")
    with pytest.raises(exceptions.ValidationError):
        SecurityScenario(config, secret, [2], [])
    with pytest.raises(exceptions.ValidationError):
        SecurityScenario(config, secret, [2], ["s2"])
    with pytest.raises(exceptions.ValidationError):
        SecurityScenario(config, secret, [2], ["r5"])
    with pytest.raises(exceptions.ValidationError):
        SecurityScenario(config, secret, [3], ["r1"])
    with pytest.raises(exceptions.BoundaryError):
        SecurityScenario(config, secret, [2], ["s1", "r1", "r2"])


def test_partial_measurement_branches(secret):
    config = homogeneous()
    branches = residual_after_partial_measurement(SecurityScenario(config, secret, [1, 2], ["r1"]))
    assert sum(p for _, p, _ in branches) == pytest.approx(1)
    assert all(state.slots == ("r1", "r2") for _, _, state in branches)
    unmeasured = residual_after_partial_measurement(SecurityScenario(config, secret, [], ["r1"]))
    assert len(unmeasured) == 1
    assert unmeasured[0][2].slots == config.shape.slots


def test_receivers_hold_a_phase_free_mixture(secret, complex_secret):
    for s in (secret, complex_secret):
        scenario = SecurityScenario(homogeneous(), s, [2], ["r1", "r2"])
        rho = ensemble_state(scenario)
        assert_allclose_complex(rho.aligned(LABELS), RECEIVER_MIXTURE)
        for prob, conditional in conditional_states(scenario).values():
            assert prob > 0
            assert_allclose_complex(conditional.aligned(LABELS), RECEIVER_MIXTURE)


def test_first_sender_measured_receivers_are_phase_blind(complex_secret):
    scenario = SecurityScenario(homogeneous(), complex_secret, [1], ["r1", "r2"])
    for view in const.VIEWS:
        report = phase_blindness_check(scenario, view=view)
        assert report.passed
        assert report.worst_deviation <= 1e-10
    assert report.errors == []


def test_single_receiver_sees_only_weights(secret):
    h = ensemble_state(SecurityScenario(homogeneous(2, 3), secret, [1], ["r2"]))
    assert_allclose_complex(h.aligned([(0, ), (1, )]), np.eye(2) / 2)

    scenario = SecurityScenario(position_dependent(2, 3), secret, [1], ["r2"])
    p = ensemble_state(scenario)
    assert_allclose_complex(p.aligned([(0, ), (1, )]), np.diag([0.36, 0.64]))
    report = phase_blindness_check(scenario)
    assert report.weights == pytest.approx((0.36, 0.64))
    assert report.coherence == pytest.approx(0, abs=1e-12)


def test_sector_weights_need_distinct_sectors(secret):
    scenario = SecurityScenario(homogeneous(), secret, [1], ["r1"])
    rho = ensemble_state(scenario)
    assert sector_weights(rho, rho, rho) is None
    assert cross_sector_coherence(rho, rho, rho, secret) == pytest.approx(0, abs=1e-12)


def test_conditional_view_reports_leaks_the_ensemble_hides(secret):
    # the second sender and one receiver, knowing the first sender's results, keep alpha beta* coherence
    scenario = SecurityScenario(homogeneous(), secret, [1], ["s2", "r1"])
    ensemble = phase_blindness_check(scenario)
    conditional = phase_blindness_check(scenario, view=const.VIEW_CONDITIONAL)
    assert ensemble.passed
    assert not conditional.passed
    assert conditional.conditional_deviation > 1e-3
    assert [e.check for e in ensemble.errors] == [const.VIEW_CONDITIONAL]


def test_unknown_view_is_rejected(secret):
    scenario = SecurityScenario(homogeneous(), secret, [1], ["r1"])
    with pytest.raises(exceptions.ValidationError):
        phase_blindness_check(scenario, view="oracle")


@pytest.mark.parametrize("config", [homogeneous(), position_dependent()])
def test_sweep_of_two_by_two(config, complex_secret):
    report = sweep_all_subsets(config, complex_secret)
    assert report["pass"]
    assert report["worst_deviation"] <= 1e-10
    # measured {1}, {2} leave three participants, {1, 2} leaves two
    assert len(report["scenarios"]) == 6 + 6 + 2


def test_sweep_limits_probe_size(secret):
    report = sweep_all_subsets(position_dependent(), secret, max_subset_size=1, view=const.VIEW_CONDITIONAL)
    assert len(report["scenarios"]) == 3 + 3 + 2
    assert report["pass"]


@pytest.mark.slow
@pytest.mark.parametrize("variant", const.VARIANTS)
@pytest.mark.parametrize("n, m", [(3, 2), (2, 3)])
def test_sweep_at_desk_scale(n, m, variant, complex_secret):
    report = sweep_all_subsets(ProtocolConfig(n, m, variant), complex_secret)
    assert report["pass"]
    assert report["worst_deviation"] <= 1e-10


def test_first_sender_results_leave_a_block_mixture(secret):
    # receivers of the (2, 2) homogeneous run once sender 1 announced p1 and c1
    a2, b2 = abs(secret.alpha) ** 2, abs(secret.beta) ** 2
    odd = np.outer([0, 1, 1, 0], [0, 1, 1, 0]) / 2
    scenario = SecurityScenario(homogeneous(), secret, [1], ["r1", "r2"])
    states = conditional_states(scenario)
    assert sum(p for p, _ in states.values()) == pytest.approx(1)
    for key, (prob, rho) in states.items():
        branch, index = dict(key)["p1"]
        sign = (-1) ** index
        even = np.outer([1, 0, 0, sign], [1, 0, 0, sign]) / 2
        expected = a2 * even + b2 * odd if branch == const.BRANCH_DOTTED else a2 * odd + b2 * even
        assert_allclose_complex(rho.aligned(LABELS), expected)


def test_sweep_of_one_measured_set(secret):
    report = sweep_all_subsets(position_dependent(3, 2), secret, measured=[1])
    assert report["pass"]
    # s2, s3, r1, r2 remain
    assert len(report["scenarios"]) == 2 ** 4 - 2
    assert all(s["scenario"]["measured"] == [1] for s in report["scenarios"])


def test_sweep_of_one_probe(secret):
    report = sweep_all_subsets(homogeneous(), secret, probe=["r1"])
    assert [s["scenario"]["measured"] for s in report["scenarios"]] == [[1], [2], [1, 2]]
    report = sweep_all_subsets(homogeneous(), secret, probe=["s2"])
    assert [s["scenario"]["measured"] for s in report["scenarios"]] == [[1]]
    with pytest.raises(exceptions.ValidationError):
        sweep_all_subsets(homogeneous(), secret, probe=["s1", "s2", "r1"])


def test_sweep_counts_conditional_failures(secret):
    report = sweep_all_subsets(homogeneous(), secret)
    assert report["pass"]
    failing = [s for s in report["scenarios"] if s["conditional_deviation"] > 1e-10]
    assert report["conditional_failures"] == len(failing)
    assert report["conditional_failures"] > 0


def test_weight_check_is_reported_for_every_scenario(secret):
    report = sweep_all_subsets(homogeneous(), secret)
    checks = [s["sector_weight_check"] for s in report["scenarios"]]
    assert const.WEIGHTS_NOT_APPLICABLE in checks
    assert const.WEIGHTS_FAIL not in checks
    for s in report["scenarios"]:
        assert (s["sector_weights"] is None) == (s["sector_weight_check"] == const.WEIGHTS_NOT_APPLICABLE)

    blind = phase_blindness_check(SecurityScenario(homogeneous(), secret, [1], ["r1"]))
    assert blind.weight_check == const.WEIGHTS_NOT_APPLICABLE
    weighted = phase_blindness_check(SecurityScenario(position_dependent(2, 3), secret, [1], ["r2"]))
    assert weighted.weight_check == const.WEIGHTS_PASS


@pytest.mark.parametrize("variant", const.VARIANTS)
def test_random_secrets_keep_the_receivers_blind(variant):
    for s in random_secrets(5, seed=7):
        report = sweep_all_subsets(ProtocolConfig(2, 2, variant), s, max_subset_size=2)
        assert report["pass"]
