# -*- coding:utf-8 -*-

import numpy as np
import pytest

from walkport import const
from walkport.measure import OutcomeRecord
from walkport.protocol import SecretSpec, ProtocolConfig, CorrectionPlan, prepare_shared_secret, compute_omega, \
    correction_plan, apply_correction, run_protocol, reconstruct_secret
from walkport.config import config
from walkport.hilbert import SystemShape, StateVector, fidelity
from walkport.utils import exceptions

from conftest import random_secrets


S = 1 / np.sqrt(2)


def test_secret_must_be_normalized(rng):
    with pytest.raises(exceptions.ValidationError):
        SecretSpec(1, 1)
    with pytest.raises(exceptions.ValidationError):
        SecretSpec.normalized(0, 0)
    secret = SecretSpec.random(rng)
    assert abs(secret.alpha) ** 2 + abs(secret.beta) ** 2 == pytest.approx(1)
    rotated = SecretSpec(0.6, 0.8).with_phase(np.pi)
    assert rotated.beta == pytest.approx(-0.8)
    assert SecretSpec(0.6, 0.8).data == {"alpha": [0.6, 0.0], "beta": [0.8, 0.0]}


def test_protocol_config_checks():
    assert ProtocolConfig(2, 3, const.VARIANT_HOMOGENEOUS).corrected_receiver == 3
    with pytest.raises(exceptions.ValidationError):
        ProtocolConfig(2, 3, "mixed")
    with pytest.raises(exceptions.ValidationError):
        ProtocolConfig(2, 3, const.VARIANT_HOMOGENEOUS, corrected_receiver=4)
    with pytest.raises(exceptions.ValidationError):
        ProtocolConfig(2, 3, const.VARIANT_POSITION_DEPENDENT, rz_correction=True)
    with pytest.raises(exceptions.ValidationError):
        ProtocolConfig(2, 1, const.VARIANT_HOMOGENEOUS)


def test_prepared_state(secret):
    psi = prepare_shared_secret(secret, 2, 2)
    assert psi.amplitude((0, 0, 0, 0, 0, 0)) == pytest.approx(0.6)
    assert psi.amplitude((0, 0, 1, 1, 0, 0)) == pytest.approx(0.8)
    assert len(psi) == 2


def test_omega_depends_on_the_variant():
    outcome = OutcomeRecord(None, 1, [0], [1, 0], 0.1)
    assert compute_omega(const.VARIANT_HOMOGENEOUS, outcome) == 1
    assert compute_omega(const.VARIANT_POSITION_DEPENDENT, outcome) == 0


def test_correction_plans():
    outcome = OutcomeRecord(const.BRANCH_DOTTED, 0, [1], [0, 0], 0.1)
    plan = correction_plan(const.VARIANT_HOMOGENEOUS, outcome, 2, 3)
    assert plan.operators == ("Z", "ZX", "Z")
    np.testing.assert_allclose(plan.matrix(2), const.MATRIX_Z @ const.MATRIX_X)

    even = OutcomeRecord(const.BRANCH_DOTTED, 0, [0], [0, 0], 0.1)
    assert correction_plan(const.VARIANT_HOMOGENEOUS, even, 3, 3).operators == ("I", "I", "X")

    rz = correction_plan(const.VARIANT_HOMOGENEOUS, OutcomeRecord(const.BRANCH_DOTTED, 1, [], [1], 0.1), 1, 2, True)
    assert rz.operators == ("RZ", "Z")
    np.testing.assert_allclose(rz.matrix(1), const.rz_matrix(-np.pi) @ const.MATRIX_Z, atol=1e-12)

    pd = correction_plan(const.VARIANT_POSITION_DEPENDENT, OutcomeRecord(None, 1, [], [0], 0.1), 1, 2)
    assert pd.operators == ("Z", "I")
    with pytest.raises(exceptions.ValidationError):
        correction_plan(const.VARIANT_POSITION_DEPENDENT, even, 0, 2)
    with pytest.raises(exceptions.ValidationError):
        CorrectionPlan(["Y"], 0).matrix(1)


def test_apply_correction_flips_the_sign_of_beta():
    shape = SystemShape(1, 2)
    state = StateVector(shape, {(0, 0): 0.6, (1, 1): -0.8}, shape.receiver_slots)
    out = apply_correction(state, CorrectionPlan(["I", "Z"], 1))
    assert out.amplitude((1, 1)) == pytest.approx(0.8)


@pytest.mark.parametrize("variant", const.VARIANTS)
@pytest.mark.parametrize("n, m", [(1, 2), (2, 2), (2, 3), (3, 2), (1, 4)])
def test_every_outcome_is_corrected(n, m, variant, complex_secret):
    run = run_protocol(ProtocolConfig(n, m, variant), complex_secret)
    assert run.passed, run.data["errors"]
    assert run.probability_sum == pytest.approx(1, abs=1e-10)
    assert run.min_fidelity == pytest.approx(1, abs=1e-10)


@pytest.mark.parametrize("j", [1, 2, 3])
def test_any_receiver_may_hold_the_flip(j, secret):
    run = run_protocol(ProtocolConfig(2, 3, const.VARIANT_HOMOGENEOUS, corrected_receiver=j), secret)
    assert run.passed


@pytest.mark.parametrize("m", [2, 3, 4])
def test_rotation_correction(m, complex_secret):
    run = run_protocol(ProtocolConfig(2, m, const.VARIANT_HOMOGENEOUS, rz_correction=True), complex_secret)
    assert run.passed


def test_corrected_state_of_one_outcome(secret):
    run = run_protocol(ProtocolConfig(1, 2, const.VARIANT_HOMOGENEOUS), secret)
    assert len(run.results) == 8
    result = next(r for r in run.results if r.outcome.key == (const.BRANCH_DOTTED, 1, (), (0, )))
    assert result.outcome.probability == pytest.approx(0.125)
    assert result.plan.operators == ("I", "X")
    np.testing.assert_allclose([result.corrected.amplitude(k) for k in ((0, 0), (0, 1), (1, 0), (1, 1))],
                               [-0.8 * S, 0.6 * S, -0.6 * S, -0.8 * S], atol=1e-12)


def test_position_dependent_residuals():
    run = run_protocol(ProtocolConfig(2, 2, const.VARIANT_POSITION_DEPENDENT), SecretSpec(S, S))
    assert len(run.results) == 16
    for r in run.results:
        # global phases differ between outcomes, the relative sign is (-1)^omega
        a, b = r.residual.amplitude((0, 0)), r.residual.amplitude((1, 1))
        assert abs(a) == pytest.approx(S)
        assert b / a == pytest.approx((-1) ** r.omega)
        assert r.corrected.amplitude((1, 1)) / r.corrected.amplitude((0, 0)) == pytest.approx(1)


def test_sample_mode_returns_one_outcome(secret):
    run = run_protocol(ProtocolConfig(2, 3, const.VARIANT_HOMOGENEOUS), secret, const.MODE_SAMPLE, seed=3)
    assert len(run.results) == 1
    assert run.passed
    assert run.data["aggregate"]["outcome_count"] == 1


def test_parallel_branches_keep_their_order(secret):
    serial = run_protocol(ProtocolConfig(2, 3, const.VARIANT_HOMOGENEOUS), secret)
    config.threads = 4
    threaded = run_protocol(ProtocolConfig(2, 3, const.VARIANT_HOMOGENEOUS), secret)
    assert [r.outcome.key for r in serial.results] == [r.outcome.key for r in threaded.results]


@pytest.mark.parametrize("variant", const.VARIANTS)
def test_reconstruct_secret_on_every_receiver(variant, complex_secret):
    phi = complex_secret.vector
    for j in (1, 2, 3):
        protocol_config = ProtocolConfig(2, 3, variant, corrected_receiver=j)
        for r in run_protocol(protocol_config, complex_secret).results:
            branches = reconstruct_secret(r.corrected, variant, j, r.outcome)
            assert sum(p for _, p, _ in branches) == pytest.approx(1)
            for _, _, qubit in branches:
                got = [qubit.amplitude((0, )), qubit.amplitude((1, ))]
                assert abs(np.vdot(phi, got)) == pytest.approx(1, abs=1e-10)


def test_reconstruct_secret_single_branch(secret):
    pd = ProtocolConfig(1, 3, const.VARIANT_POSITION_DEPENDENT)
    result = run_protocol(pd, secret).results[0]
    branches = reconstruct_secret(result.corrected, pd.variant, 3, helper_outcomes={"r1": 1, "r2": 0})
    assert len(branches) == 1
    assert branches[0][0] == {"r1": 1, "r2": 0}
    with pytest.raises(exceptions.ValidationError):
        reconstruct_secret(result.corrected, const.VARIANT_HOMOGENEOUS, 3)


def _beta_sector(variant, outcome, bits):
    w = sum(bits)
    if variant == const.VARIANT_POSITION_DEPENDENT:
        return w == len(bits)
    if outcome.p1_branch == const.BRANCH_DOTTED:
        return w % 2 == 1
    return w % 2 == 0


def _helper_flips(outcome):
    for k in range(len(outcome.p_bits)):
        p_bits = list(outcome.p_bits)
        p_bits[k] ^= 1
        yield (outcome.p1_branch, outcome.p1_index, tuple(p_bits), outcome.c_bits)
    for k in range(len(outcome.c_bits)):
        c_bits = list(outcome.c_bits)
        c_bits[k] ^= 1
        yield (outcome.p1_branch, outcome.p1_index, outcome.p_bits, tuple(c_bits))


@pytest.mark.parametrize("variant", const.VARIANTS)
@pytest.mark.parametrize("n, m", [(2, 2), (2, 3), (3, 2)])
def test_one_helper_bit_flips_omega_and_the_beta_sign(n, m, variant, complex_secret):
    run = run_protocol(ProtocolConfig(n, m, variant), complex_secret)
    by_key = {r.outcome.key: r for r in run.results}
    for r in run.results:
        residual = r.residual
        flipped = StateVector(residual.shape, {
            k: -a if _beta_sector(variant, r.outcome, k) else a for k, a in residual.items()
        }, residual.slots)
        for key in _helper_flips(r.outcome):
            partner = by_key[key]
            assert partner.omega == 1 - r.omega
            assert fidelity(partner.residual, flipped) == pytest.approx(1, abs=1e-10)
            assert fidelity(partner.residual, residual) < 1 - 1e-3


@pytest.mark.parametrize("n, m", [(1, 2), (2, 3), (3, 2)])
def test_basis_secret_leaves_receivers_in_zero(n, m):
    run = run_protocol(ProtocolConfig(n, m, const.VARIANT_POSITION_DEPENDENT), SecretSpec(1, 0))
    assert run.passed
    for r in run.results:
        assert abs(r.residual.amplitude((0, ) * m)) == pytest.approx(1)
        assert len(r.residual) == 1


def _check_random_secret(n, m, variant, secret):
    receivers = range(1, m + 1) if variant == const.VARIANT_HOMOGENEOUS else (m, )
    for j in receivers:
        run = run_protocol(ProtocolConfig(n, m, variant, corrected_receiver=j), secret)
        assert run.passed, run.data["errors"]
        assert run.probability_sum == pytest.approx(1, abs=1e-10)
        for r in run.results:
            for _, _, qubit in reconstruct_secret(r.corrected, variant, j, r.outcome):
                got = [qubit.amplitude((0, )), qubit.amplitude((1, ))]
                assert abs(np.vdot(secret.vector, got)) == pytest.approx(1, abs=1e-10)


@pytest.mark.parametrize("variant", const.VARIANTS)
def test_random_secrets_are_teleported(variant):
    for secret in random_secrets(5):
        _check_random_secret(2, 2, variant, secret)


@pytest.mark.slow
@pytest.mark.parametrize("variant", const.VARIANTS)
@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("m", [2, 3])
def test_random_secrets_are_teleported_at_desk_scale(n, m, variant):
    for secret in random_secrets(100, seed=1000 * n + m):
        _check_random_secret(n, m, variant, secret)
