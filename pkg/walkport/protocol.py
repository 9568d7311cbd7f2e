# -*- coding:utf-8 -*-

"""
Protocol module.
End-to-end runs of the (n, m) shared secret teleportation:
    1. prepare alpha|0..0> + beta|1..1> on the first coins;
    2. stage one and stage two of the walk;
    3. senders measure p1..pn and c1..cn;
    4. receivers apply Pauli corrections selected by the parity omega;
    5. the corrected state is checked against its closed form.
The homogeneous and the position dependent variants share the pipeline.

Date:   2026/10/17
"""

import json

import numpy as np

from walkport import const
from walkport import oracle
from walkport.error import Error
from walkport.config import config as settings
from walkport.tasks import ParallelTask
from walkport.hilbert import SystemShape, StateVector, apply_single_qubit, fidelity
from walkport.walk import stage_one, stage_two, stage_one_rules, protocol_coin_rules
from walkport.measure import measure_all, measure_slots, protocol_bases, build_x_basis, build_z_basis
from walkport.utils import tools
from walkport.utils import logger
from walkport.utils import exceptions

__all__ = ("SecretSpec", "ProtocolConfig", "CorrectionPlan", "OutcomeResult", "ProtocolRun",
           "prepare_shared_secret", "evolve", "compute_omega", "correction_plan", "apply_correction",
           "run_protocol", "reconstruct_secret")


class SecretSpec:
    """ The logical qubit alpha|0> + beta|1>.

    Args:
        alpha: complex amplitude of |0>.
        beta: complex amplitude of |1>.

    Raise:
        ValidationError: |alpha|^2 + |beta|^2 differs from 1.
    """

    def __init__(self, alpha, beta):
        self._alpha = complex(alpha)
        self._beta = complex(beta)
        norm = abs(self._alpha) ** 2 + abs(self._beta) ** 2
        if abs(norm - 1) > const.NORM_TOLERANCE:
            raise exceptions.ValidationError("secret is not normalized: |alpha|^2 + |beta|^2 = {}".format(norm))

    @classmethod
    def normalized(cls, alpha, beta):
        norm = np.sqrt(abs(alpha) ** 2 + abs(beta) ** 2)
        if norm == 0:
            raise exceptions.ValidationError("alpha and beta are both zero")
        return cls(alpha / norm, beta / norm)

    @classmethod
    def random(cls, rng):
        """ Haar-random secret from a numpy Generator.
        """
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        return cls.normalized(v[0], v[1])

    @property
    def alpha(self):
        return self._alpha

    @property
    def beta(self):
        return self._beta

    @property
    def vector(self):
        return np.array([self._alpha, self._beta], dtype=complex)

    def with_phase(self, phi):
        """ The secret with beta rotated by e^{i phi}.
        """
        return SecretSpec(self._alpha, self._beta * np.exp(1j * phi))

    def qubit(self, shape, slot):
        """ |phi> as a StateVector on one coin slot.
        """
        return StateVector(shape, {(0, ): self._alpha, (1, ): self._beta}, (slot, ))

    @property
    def data(self):
        return {"alpha": tools.complex_to_pair(self._alpha), "beta": tools.complex_to_pair(self._beta)}

    def __str__(self):
        return json.dumps(self.data)

    def __repr__(self):
        return "SecretSpec(alpha={}, beta={})".format(self._alpha, self._beta)


class ProtocolConfig:
    """ Protocol parameters.

    Args:
        n: Number of senders, n >= 1.
        m: Number of receivers, m >= 2.
        variant: `const.VARIANT_HOMOGENEOUS` or `const.VARIANT_POSITION_DEPENDENT`.
        corrected_receiver: 1-based index of the receiver applying the sigma_x bearing correction, default is m.
        rz_correction: Homogeneous only, use R_z(-theta) sigma_z^omega on the corrected receiver instead.
    """

    def __init__(self, n, m, variant, corrected_receiver=None, rz_correction=False):
        self.shape = SystemShape(n, m)
        if variant not in const.VARIANTS:
            raise exceptions.ValidationError("unknown variant: {}".format(variant))
        corrected_receiver = m if corrected_receiver is None else corrected_receiver
        if not isinstance(corrected_receiver, int) or not 1 <= corrected_receiver <= m:
            raise exceptions.ValidationError("corrected receiver must lie in [1, {}], got {}".format(
                m, corrected_receiver))
        if rz_correction and variant != const.VARIANT_HOMOGENEOUS:
            raise exceptions.ValidationError("the R_z correction applies to the homogeneous variant only")
        self.n = n
        self.m = m
        self.variant = variant
        self.corrected_receiver = corrected_receiver
        self.rz_correction = bool(rz_correction)

    @property
    def data(self):
        return {
            "n": self.n,
            "m": self.m,
            "variant": self.variant,
            "corrected_receiver": self.corrected_receiver,
            "rz_correction": self.rz_correction
        }

    def __str__(self):
        return json.dumps(self.data)

    def __repr__(self):
        return "ProtocolConfig({})".format(str(self))


class CorrectionPlan:
    """ One single-qubit operator label per receiver.

    Args:
        operators: Labels drawn from `const.OP_*`, receiver r1 first.
        omega: The parity bit the plan was built from.
        theta: Rotation angle, only for `const.OP_RZ`.
    """

    def __init__(self, operators, omega, theta=None):
        self.operators = tuple(operators)
        self.omega = omega
        self.theta = theta

    def matrix(self, receiver):
        """ 2x2 matrix of receiver `receiver` (1-based).
        """
        op = self.operators[receiver - 1]
        if op == const.OP_I:
            return const.MATRIX_I
        if op == const.OP_Z:
            return const.MATRIX_Z
        if op == const.OP_X:
            return const.MATRIX_X
        if op == const.OP_ZX:
            return const.MATRIX_Z @ const.MATRIX_X
        if op == const.OP_RZ:
            return const.rz_matrix(-self.theta) @ np.linalg.matrix_power(const.MATRIX_Z, self.omega)
        raise exceptions.ValidationError("unknown operator label: {}".format(op))

    @property
    def data(self):
        d = {"operators": list(self.operators), "omega": self.omega}
        if self.theta is not None:
            d["theta"] = tools.clean_float(self.theta)
        return d

    def __str__(self):
        return json.dumps(self.data)

    def __repr__(self):
        return "CorrectionPlan({})".format(str(self))


class OutcomeResult:
    """ Per-outcome result of a protocol run.
    """

    def __init__(self, outcome, omega, plan, residual, corrected, residual_fidelity, fidelity):
        self.outcome = outcome
        self.omega = omega
        self.plan = plan
        self.residual = residual
        self.corrected = corrected
        self.residual_fidelity = residual_fidelity
        self.fidelity = fidelity

    @property
    def data(self):
        return {
            "outcome": self.outcome.data,
            "omega": self.omega,
            "correction": self.plan.data,
            "residual_fidelity": tools.clean_float(self.residual_fidelity),
            "fidelity": tools.clean_float(self.fidelity),
            "state": self.corrected.data
        }


class ProtocolRun:
    """ All outcomes of one run plus the findings of its verification.
    """

    def __init__(self, config, secret, mode, results, errors):
        self.config = config
        self.secret = secret
        self.mode = mode
        self.results = results
        self.errors = errors

    @property
    def passed(self):
        return not self.errors

    @property
    def min_fidelity(self):
        return min(min(r.fidelity, r.residual_fidelity) for r in self.results)

    @property
    def probability_sum(self):
        return sum(r.outcome.probability for r in self.results)

    @property
    def data(self):
        return {
            "outcomes": [r.data for r in self.results],
            "aggregate": {
                "min_fidelity": tools.clean_float(self.min_fidelity),
                "outcome_count": len(self.results),
                "probability_sum": tools.clean_float(self.probability_sum)
            },
            "errors": [e.data for e in self.errors]
        }


def prepare_shared_secret(secret, n, m):
    """ Every walker at 0, first coins alpha|0..0> + beta|1..1>, receiver coins |0..0>.
    """
    return oracle.initial_state(n, m, secret).normalize()


def evolve(config, secret):
    """ Prepared state after both walk stages.
    """
    psi = prepare_shared_secret(secret, config.n, config.m)
    psi = stage_one(psi, stage_one_rules(config.n))
    return stage_two(psi, protocol_coin_rules(config.variant, config.m))


def compute_omega(variant, outcome):
    """ Parity of the sender results; p1 counts only for the position dependent variant.
    """
    if variant == const.VARIANT_HOMOGENEOUS:
        return outcome.parity(include_p1=False)
    if variant == const.VARIANT_POSITION_DEPENDENT:
        return outcome.parity(include_p1=True)
    raise exceptions.ValidationError("unknown variant: {}".format(variant))


def correction_plan(variant, outcome, corrected_receiver, m, rz_correction=False):
    """ Receiver corrections for one outcome.

    Homogeneous: Z^omega X on the corrected receiver (X acts first), Z^omega on every other one; with
        `rz_correction` the corrected receiver applies R_z(-theta) Z^omega instead.
    Position dependent: Z^omega on the corrected receiver, identity elsewhere.

    Args:
        variant: Protocol variant.
        outcome: OutcomeRecord.
        corrected_receiver: 1-based receiver index.
        m: Receiver count.
        rz_correction: Use the rotation instead of the bit flip.

    Returns:
        plan: CorrectionPlan.
    """
    if not 1 <= corrected_receiver <= m:
        raise exceptions.ValidationError("corrected receiver must lie in [1, {}]".format(m))
    omega = compute_omega(variant, outcome)
    z = const.OP_Z if omega else const.OP_I
    if variant == const.VARIANT_POSITION_DEPENDENT:
        ops = [const.OP_I] * m
        ops[corrected_receiver - 1] = z
        return CorrectionPlan(ops, omega)
    ops = [z] * m
    if rz_correction:
        ops[corrected_receiver - 1] = const.OP_RZ
        return CorrectionPlan(ops, omega, oracle.rotation_angle(m, outcome.p1_branch, outcome.p1_index))
    ops[corrected_receiver - 1] = const.OP_ZX if omega else const.OP_X
    return CorrectionPlan(ops, omega)


def apply_correction(state, plan):
    """ Apply a correction plan to a receiver state over r1..rm.
    """
    shape = state.shape
    for j in range(1, len(plan.operators) + 1):
        if plan.operators[j - 1] == const.OP_I:
            continue
        state = apply_single_qubit(state, shape.receiver_slots[j - 1], plan.matrix(j))
    return state


def _outcome_result(config, secret, outcome, residual):
    omega = compute_omega(config.variant, outcome)
    plan = correction_plan(config.variant, outcome, config.corrected_receiver, config.m, config.rz_correction)
    corrected = apply_correction(residual, plan)
    expected = oracle.expected_receiver_state(config.variant, config.m, outcome, secret)
    target = oracle.expected_corrected_state(config, outcome, secret)
    return OutcomeResult(outcome, omega, plan, residual, corrected, fidelity(expected, residual),
                         fidelity(target, corrected))


def run_protocol(config, secret, mode=const.MODE_ENUMERATE, seed=None):
    """ Run the protocol and verify every outcome against its closed form.

    Args:
        config: ProtocolConfig.
        secret: SecretSpec.
        mode: `const.MODE_ENUMERATE` or `const.MODE_SAMPLE`.
        seed: Sampling seed, default is `config.seed` from the settings.

    Returns:
        run: ProtocolRun; fidelity shortfalls are listed in `run.errors`.
    """
    seed = settings.seed if seed is None else seed
    psi = evolve(config, secret)
    outcomes = measure_all(psi, protocol_bases(config.shape, config.variant), mode, seed)
    results = ParallelTask.map(lambda item: _outcome_result(config, secret, *item), outcomes)

    errors = []
    tolerance = settings.fidelity_tolerance
    for r in results:
        if r.residual_fidelity < 1 - tolerance:
            errors.append(Error("receiver state differs from its closed form for outcome {}".format(r.outcome),
                                "residual", r.residual_fidelity))
        if r.fidelity < 1 - tolerance:
            errors.append(Error("corrected state differs from its target for outcome {}".format(r.outcome),
                                "corrected", r.fidelity))
    if mode == const.MODE_ENUMERATE:
        total = sum(r.outcome.probability for r in results)
        if abs(total - 1) > settings.compare_tolerance:
            errors.append(Error("outcome probabilities sum to {}".format(total), "completeness", total))

    run = ProtocolRun(config, secret, mode, results, errors)
    for e in errors:
        logger.error(e, caller=run)
    logger.info("variant:", config.variant, "n:", config.n, "m:", config.m, "outcomes:", len(results),
                "min fidelity:", run.min_fidelity, caller=run)
    return run


def reconstruct_secret(receiver_state, variant, designated, outcome=None, rz_correction=False,
                       helper_outcomes=None):
    """ Gather the secret on one receiver with the help of the others.

    Position dependent outputs: helpers measure in the X basis and the designated receiver applies Z^parity.
    Homogeneous outputs: helpers measure in the Z basis; the helper weight u selects whether the designated qubit
    already holds |phi> or needs the inverse of the layout operator.

    Args:
        receiver_state: Corrected StateVector over r1..rm.
        variant: Protocol variant of the run that produced the state.
        designated: 1-based index of the receiver that keeps the secret.
        outcome: OutcomeRecord of the senders, required for homogeneous outputs.
        rz_correction: The run used the R_z correction.
        helper_outcomes: {slot: label} to decode a single helper branch, default is every branch.

    Returns:
        branches: [({slot: label}, probability, StateVector on the designated slot), ...].
    """
    shape = receiver_state.shape
    m = shape.m
    keep = shape.receiver_slots[designated - 1]
    helpers = [s for s in shape.receiver_slots if s != keep]
    if variant == const.VARIANT_POSITION_DEPENDENT:
        bases = [build_x_basis(s) for s in helpers]
    elif variant == const.VARIANT_HOMOGENEOUS:
        if outcome is None:
            raise exceptions.ValidationError("homogeneous outputs need the senders' outcome to decode")
        bases = [build_z_basis(s) for s in helpers]
        plain_parity, other_op, _ = oracle.corrected_layout(m, outcome, rz_correction)
        undo = np.linalg.inv(other_op)
    else:
        raise exceptions.ValidationError("unknown variant: {}".format(variant))

    total = receiver_state.norm() ** 2
    branches = []
    for labels, qubit in measure_slots(receiver_state, bases):
        if helper_outcomes is not None and any(labels.get(s) != v for s, v in helper_outcomes.items()):
            continue
        weight = sum(labels.values())
        if variant == const.VARIANT_POSITION_DEPENDENT:
            if weight % 2:
                qubit = apply_single_qubit(qubit, keep, const.MATRIX_Z)
        elif weight % 2 != plain_parity:
            qubit = apply_single_qubit(qubit, keep, undo)
        branches.append((labels, qubit.norm() ** 2 / total, qubit.normalize()))
    if not branches:
        raise exceptions.ValidationError("no helper branch matches {}".format(helper_outcomes))
    return branches
