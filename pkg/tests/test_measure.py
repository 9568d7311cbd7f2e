# -*- coding:utf-8 -*-

import numpy as np
import pytest

from walkport import const
from walkport.hilbert import SystemShape, StateVector
from walkport.measure import MeasurementBasis, OutcomeRecord, fourier_counts, build_lambda_h, build_lambda_p, \
    build_theta, build_delta, build_x_basis, protocol_bases, project, measure_slots, measure_all
from walkport.protocol import ProtocolConfig, evolve
from walkport.utils import exceptions


@pytest.mark.parametrize("m, counts", [(2, (1, 0, 1)), (3, (1, 1, 2)), (4, (2, 1, 2)), (5, (2, 2, 3))])
def test_fourier_counts(m, counts):
    assert fourier_counts(m) == counts


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_lambda_h_is_orthonormal_over_reachable_positions(m):
    basis = build_lambda_h(m)
    m1, _, m3 = fourier_counts(m)
    assert len(basis.vectors) == m1 + m3 + 2
    np.testing.assert_allclose(basis.gram(), np.eye(len(basis.vectors)), atol=1e-12)
    reachable = set(range(-(m + 1), m + 2, 2))
    assert set(basis.support) == reachable


def test_lambda_h_labels_for_two_receivers():
    basis = build_lambda_h(2)
    assert basis.labels == ((0, 0), (0, 1), (1, 0), (1, 1))
    # dotted s = 1 over positions 3 and -1
    assert basis.vectors[1][3] == pytest.approx(1 / np.sqrt(2))
    assert basis.vectors[1][-1] == pytest.approx(-1 / np.sqrt(2))


def test_fixed_bases():
    assert build_lambda_p(3).support == (-4, 4)
    assert build_theta().support == (-1, 1)
    delta = build_delta()
    assert delta.vectors[1][0] == pytest.approx(-1 / np.sqrt(2))
    assert build_x_basis("r2").for_slot("r1").slot == "r1"
    with pytest.raises(exceptions.ValidationError):
        build_lambda_p(1)


def test_non_orthonormal_basis_is_rejected():
    with pytest.raises(exceptions.ValidationError):
        MeasurementBasis("r1", [{0: 1}, {0: 1}], [0, 1])


def test_project_detects_missing_weight():
    shape = SystemShape(1, 2)
    psi = StateVector(shape, {(3, 0): 1}, ("p1", "c1"))
    with pytest.raises(exceptions.IncompleteBasisError):
        project(psi, build_theta("p1"))


def test_project_splits_a_bell_pair():
    shape = SystemShape(1, 2)
    s = 1 / np.sqrt(2)
    psi = StateVector(shape, {(0, 0): s, (1, 1): s}, ("r1", "r2"))
    branches = project(psi, build_x_basis("r1"))
    assert [label for label, _ in branches] == [0, 1]
    for label, sub in branches:
        assert sub.norm() ** 2 == pytest.approx(0.5)
        assert sub.amplitude((1, )) == pytest.approx((-1) ** label * 0.5)


def test_outcome_parity():
    record = OutcomeRecord(None, 1, [1], [0, 1], 0.25)
    assert record.parity() == 0
    assert record.parity(include_p1=True) == 1
    fourier = OutcomeRecord(const.BRANCH_DOTTED, 1, [], [1], 0.5)
    with pytest.raises(exceptions.ValidationError):
        fourier.parity(include_p1=True)
    assert fourier.data == {"p1": {"branch": 0, "index": 1}, "p": [], "c": [1], "prob": 0.5}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_position_dependent_outcomes_are_equiprobable(n, secret):
    config = ProtocolConfig(n, 2, const.VARIANT_POSITION_DEPENDENT)
    results = measure_all(evolve(config, secret), protocol_bases(config.shape, config.variant))
    assert len(results) == 2 * 2 ** (n - 1) * 2 ** n
    for record, residual in results:
        assert record.probability == pytest.approx(1 / 4 ** n)
        assert residual.slots == ("r1", "r2")
        assert residual.norm() == pytest.approx(1)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_homogeneous_outcomes_sum_to_one(m, complex_secret):
    config = ProtocolConfig(2, m, const.VARIANT_HOMOGENEOUS)
    results = measure_all(evolve(config, complex_secret), protocol_bases(config.shape, config.variant))
    assert sum(r.probability for r, _ in results) == pytest.approx(1, abs=1e-12)
    assert all(r.p1_branch in (const.BRANCH_DOTTED, const.BRANCH_DOUBLE_DOTTED) for r, _ in results)


def test_measurement_order_does_not_change_outcomes(secret):
    config = ProtocolConfig(2, 2, const.VARIANT_HOMOGENEOUS)
    psi = evolve(config, secret)
    bases = protocol_bases(config.shape, config.variant)
    forward = measure_slots(psi, bases)
    backward = measure_slots(psi, bases, order=["c2", "c1", "p2", "p1"])
    assert [labels for labels, _ in forward] == [labels for labels, _ in backward]
    for (_, a), (_, b) in zip(forward, backward):
        assert a.is_close(b)


def test_sampling_is_reproducible(secret):
    config = ProtocolConfig(2, 3, const.VARIANT_HOMOGENEOUS)
    psi = evolve(config, secret)
    bases = protocol_bases(config.shape, config.variant)
    first = measure_all(psi, bases, const.MODE_SAMPLE, seed=11)
    second = measure_all(psi, bases, const.MODE_SAMPLE, seed=11)
    assert len(first) == 1
    assert first[0][0].key == second[0][0].key
    assert first[0][1].is_close(second[0][1])


def test_measure_all_needs_every_sender_slot(secret):
    config = ProtocolConfig(2, 2, const.VARIANT_HOMOGENEOUS)
    bases = protocol_bases(config.shape, config.variant)[:-1]
    with pytest.raises(exceptions.ValidationError):
        measure_all(evolve(config, secret), bases)
    with pytest.raises(exceptions.ValidationError):
        measure_all(evolve(config, secret), protocol_bases(config.shape, config.variant), mode="weak")
