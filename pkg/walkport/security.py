# -*- coding:utf-8 -*-

"""
Security module.
Reduced states of sub-parties after some senders measured, and the amplitude-only criterion: a sub-party's
reduced state must not change when beta is replaced by e^{i phi} beta.

Participants are "s{i}" (sender i holds p_i and c_i) and "r{j}" (receiver j holds r_j). Two views:
    conditional: the probe knows the measured senders' results, one reduced state per outcome;
    ensemble:    the results stay with the senders, so the probe holds the outcome-weighted mixture, i.e. the
                 stage-two state traced down to the probe.

Date:   2026/10/17
"""

import json
import itertools

import numpy as np

from walkport import const
from walkport.error import Error
from walkport.config import config as settings
from walkport.tasks import ParallelTask
from walkport.hilbert import partial_trace
from walkport.measure import measure_slots, protocol_bases
from walkport.protocol import SecretSpec, evolve
from walkport.utils import tools
from walkport.utils import logger
from walkport.utils import exceptions

__all__ = ("SecurityScenario", "PhaseReport", "participant_slots", "residual_after_partial_measurement",
           "conditional_states", "ensemble_state", "phase_blindness_check", "sector_weights",
           "cross_sector_coherence", "sweep_all_subsets")


def participant_slots(participant):
    """ Slots held by a participant: "s2" -> ("p2", "c2"), "r1" -> ("r1", ).
    """
    if not isinstance(participant, str) or len(participant) < 2 or not participant[1:].isdigit():
        raise exceptions.ValidationError("participant must look like s1 or r2, got {!r}".format(participant))
    role, index = participant[0], int(participant[1:])
    if role == "s":
        return ("p{}".format(index), "c{}".format(index))
    if role == "r":
        return ("r{}".format(index), )
    raise exceptions.ValidationError("participant must look like s1 or r2, got {!r}".format(participant))


class SecurityScenario:
    """ Which senders measured and which remaining participants pool their systems.

    Args:
        config: ProtocolConfig.
        secret: SecretSpec.
        measured_senders: Sender indices (1-based) that measured with the protocol's bases.
        probe: Remaining participants forming the probe, e.g. ("r1", "s3").

    Raise:
        ValidationError: Unknown or measured participants in the probe, or an empty probe.
        BoundaryError: The probe holds every remaining participant; the joint pure state keeps the secret.
    """

    def __init__(self, config, secret, measured_senders, probe):
        n, m = config.n, config.m
        measured = tuple(sorted(set(int(i) for i in measured_senders)))
        if any(not 1 <= i <= n for i in measured):
            raise exceptions.ValidationError("measured senders must lie in [1, {}], got {}".format(n, measured))
        remaining = tuple("s{}".format(i) for i in range(1, n + 1) if i not in measured) + \
            tuple("r{}".format(j) for j in range(1, m + 1))
        probe = set(probe)
        if not probe:
            raise exceptions.ValidationError("probe is empty")
        unknown = sorted(p for p in probe if p not in remaining)
        if unknown:
            raise exceptions.ValidationError("probe participants {} are not among the remaining {}".format(
                unknown, list(remaining)))
        probe = tuple(sorted(probe, key=remaining.index))
        if len(probe) == len(remaining):
            raise exceptions.BoundaryError("probe holds every remaining participant {}; the joint state is pure "
                                           "and carries the whole secret".format(list(remaining)))
        self.config = config
        self.secret = secret
        self.measured_senders = measured
        self.remaining = remaining
        self.probe = probe

    @property
    def measured_slots(self):
        return tuple(s for i in self.measured_senders for s in participant_slots("s{}".format(i)))

    @property
    def probe_slots(self):
        return self.config.shape.canonical(s for p in self.probe for s in participant_slots(p))

    def with_secret(self, secret):
        return SecurityScenario(self.config, secret, self.measured_senders, self.probe)

    @property
    def data(self):
        return {
            "variant": self.config.variant,
            "n": self.config.n,
            "m": self.config.m,
            "measured": list(self.measured_senders),
            "probe": list(self.probe)
        }

    def __str__(self):
        return json.dumps(self.data)

    def __repr__(self):
        return "SecurityScenario({})".format(str(self))


def residual_after_partial_measurement(scenario):
    """ States of the remaining participants for every result of the measured senders.

    Returns:
        branches: [({slot: label}, probability, normalized StateVector over the unmeasured slots), ...]; with no
            measured sender the single branch is the stage-two state itself.
    """
    psi = evolve(scenario.config, scenario.secret)
    if not scenario.measured_senders:
        return [({}, 1.0, psi)]
    wanted = set(scenario.measured_slots)
    bases = [b for b in protocol_bases(scenario.config.shape, scenario.config.variant) if b.slot in wanted]
    total = psi.norm() ** 2
    return [(labels, sub.norm() ** 2 / total, sub.normalize()) for labels, sub in measure_slots(psi, bases)]


def _label_key(labels):
    return tuple(sorted(labels.items()))


def conditional_states(scenario):
    """ {outcome key: (probability, DensityMatrix of the probe)}.
    """
    keep = scenario.probe_slots
    return {
        _label_key(labels): (prob, partial_trace(state, keep))
        for labels, prob, state in residual_after_partial_measurement(scenario)
    }


def ensemble_state(scenario):
    """ The probe's state when it does not know the measured senders' results.
    """
    return partial_trace(evolve(scenario.config, scenario.secret), scenario.probe_slots)


class PhaseReport:
    """ Outcome of a phase blindness check.
    """

    def __init__(self, scenario, view, ensemble_deviation, conditional_deviation, weights, weight_check, coherence,
                 errors):
        self.scenario = scenario
        self.view = view
        self.ensemble_deviation = ensemble_deviation
        self.conditional_deviation = conditional_deviation
        self.weights = weights
        self.weight_check = weight_check
        self.coherence = coherence
        self.errors = errors

    @property
    def worst_deviation(self):
        if self.view == const.VIEW_CONDITIONAL:
            return self.conditional_deviation
        return self.ensemble_deviation

    @property
    def passed(self):
        return self.worst_deviation <= settings.compare_tolerance

    @property
    def conditional_passed(self):
        return self.conditional_deviation <= settings.compare_tolerance

    @property
    def data(self):
        return {
            "scenario": self.scenario.data,
            "view": self.view,
            "worst_deviation": tools.clean_float(self.worst_deviation),
            "ensemble_deviation": tools.clean_float(self.ensemble_deviation),
            "conditional_deviation": tools.clean_float(self.conditional_deviation),
            "sector_weights": None if self.weights is None else [tools.clean_float(w) for w in self.weights],
            "sector_weight_check": self.weight_check,
            "coherence": tools.clean_float(self.coherence),
            "pass": self.passed,
            "findings": [e.data for e in self.errors]
        }


def _conditional_deviation(base, other):
    worst = 0.0
    for key in set(base) | set(other):
        if key not in base or key not in other:
            return 1.0
        worst = max(worst, base[key][1].deviation(other[key][1]))
    return worst


def sector_weights(rho, rho0, rho1):
    """ Least squares weights (w0, w1) of rho ~ w0 rho0 + w1 rho1.

    rho0 and rho1 are the probe's states for the secrets |0> and |1>. Returns None when they are linearly
    dependent, i.e. the probe cannot tell the two sectors apart at all.
    """
    labels = sorted(set(rho.labels) | set(rho0.labels) | set(rho1.labels))
    cols = [rho0.aligned(labels).ravel(), rho1.aligned(labels).ravel()]
    a = np.concatenate([np.column_stack(cols).real, np.column_stack(cols).imag])
    b = np.concatenate([rho.aligned(labels).ravel().real, rho.aligned(labels).ravel().imag])
    singular = np.linalg.svd(a, compute_uv=False)
    if singular[-1] <= const.PSD_TOLERANCE * max(singular[0], 1.0):
        return None
    w, _, _, _ = np.linalg.lstsq(a, b, rcond=None)
    return float(w[0]), float(w[1])


def cross_sector_coherence(rho, rho0, rho1, secret):
    """ Largest entry of rho - |alpha|^2 rho0 - |beta|^2 rho1.
    """
    labels = sorted(set(rho.labels) | set(rho0.labels) | set(rho1.labels))
    rest = rho.aligned(labels) - abs(secret.alpha) ** 2 * rho0.aligned(labels) - \
        abs(secret.beta) ** 2 * rho1.aligned(labels)
    return float(np.max(np.abs(rest))) if labels else 0.0


def _sector_states(scenario):
    zero = ensemble_state(scenario.with_secret(SecretSpec(1, 0)))
    one = ensemble_state(scenario.with_secret(SecretSpec(0, 1)))
    return zero, one


def phase_blindness_check(scenario, phases=None, view=None):
    """ Compare the probe's state for beta and e^{i phi} beta.

    Args:
        scenario: SecurityScenario.
        phases: Angles in radians, default is `config.security_phases`.
        view: Which view decides pass or fail, default is `config.security_view`; the other view is reported
            as findings.

    Returns:
        report: PhaseReport; deviations above tolerance are findings, never exceptions.
    """
    phases = settings.security_phases if phases is None else tuple(phases)
    view = settings.security_view if view is None else view
    if view not in const.VIEWS:
        raise exceptions.ValidationError("unknown view: {}".format(view))

    base_ensemble = ensemble_state(scenario)
    base_conditional = conditional_states(scenario)
    ensemble_dev = 0.0
    conditional_dev = 0.0
    for phi in phases:
        rotated = scenario.with_secret(scenario.secret.with_phase(phi))
        ensemble_dev = max(ensemble_dev, base_ensemble.deviation(ensemble_state(rotated)))
        conditional_dev = max(conditional_dev, _conditional_deviation(base_conditional, conditional_states(rotated)))

    zero, one = _sector_states(scenario)
    weights = sector_weights(base_ensemble, zero, one)
    coherence = cross_sector_coherence(base_ensemble, zero, one, scenario.secret)

    errors = []
    tolerance = settings.compare_tolerance
    if ensemble_dev > tolerance:
        errors.append(Error("ensemble state of {} depends on the secret's phase".format(scenario.probe),
                            const.VIEW_ENSEMBLE, ensemble_dev))
    if conditional_dev > tolerance:
        errors.append(Error("conditional state of {} depends on the secret's phase".format(scenario.probe),
                            const.VIEW_CONDITIONAL, conditional_dev))
    weight_check = const.WEIGHTS_NOT_APPLICABLE
    if weights is not None:
        expected = (abs(scenario.secret.alpha) ** 2, abs(scenario.secret.beta) ** 2)
        weight_check = const.WEIGHTS_PASS
        if max(abs(w - e) for w, e in zip(weights, expected)) > tolerance:
            weight_check = const.WEIGHTS_FAIL
            errors.append(Error("sector weights {} differ from {}".format(weights, expected), "weights",
                                list(weights)))
    report = PhaseReport(scenario, view, ensemble_dev, conditional_dev, weights, weight_check, coherence, errors)
    logger.debug(scenario, "worst deviation:", report.worst_deviation, caller=report)
    return report


def _probe_subsets(remaining, max_subset_size):
    limit = len(remaining) - 1
    if max_subset_size is not None:
        limit = min(limit, max_subset_size)
    for size in range(1, limit + 1):
        for probe in itertools.combinations(remaining, size):
            yield probe


def _measured_sets(n, measured):
    if measured is not None:
        return [tuple(sorted(set(int(i) for i in measured)))]
    return [c for p in range(1, n + 1) for c in itertools.combinations(range(1, n + 1), p)]


def sweep_all_subsets(config, secret, max_subset_size=None, phases=None, view=None, measured=None, probe=None):
    """ Phase blindness over sets of measured senders and strict probe subsets.

    Args:
        config: ProtocolConfig, desk scale.
        secret: SecretSpec.
        max_subset_size: Largest probe size, default is every strict subset.
        phases: Angles in radians.
        view: View that decides pass or fail.
        measured: Only this set of measured senders, default is every nonempty set.
        probe: Only this probe, paired with every measured set that leaves it a strict sub-party.

    Returns:
        report: {"scenarios": [...], "worst_deviation": float, "pass": bool, "conditional_failures": int,
            "findings": [...]}.

    Raise:
        ValidationError: `probe` is a strict sub-party of no measured set.
    """
    scenarios = []
    for measured_set in _measured_sets(config.n, measured):
        remaining = ["s{}".format(i) for i in range(1, config.n + 1) if i not in measured_set]
        remaining += ["r{}".format(j) for j in range(1, config.m + 1)]
        if probe is None:
            probes = _probe_subsets(remaining, max_subset_size)
        elif set(probe) < set(remaining):
            probes = [probe]
        else:
            continue
        for p in probes:
            scenarios.append(SecurityScenario(config, secret, measured_set, p))
    if not scenarios:
        raise exceptions.ValidationError("probe {} is a strict sub-party of no measured sender set".format(
            list(probe or [])))

    reports = ParallelTask.map(lambda s: phase_blindness_check(s, phases, view), scenarios)
    worst = max(r.worst_deviation for r in reports)
    passed = all(r.passed for r in reports)
    conditional_failures = sum(1 for r in reports if not r.conditional_passed)
    findings = [e for r in reports for e in r.errors]
    logger.info("variant:", config.variant, "scenarios:", len(reports), "worst deviation:", worst,
                "pass:", passed)
    if conditional_failures:
        logger.warn(conditional_failures, "of", len(reports), "scenarios depend on the phase once the measured "
                    "senders announce their results")
    return {
        "scenarios": [r.data for r in reports],
        "worst_deviation": tools.clean_float(worst),
        "pass": passed,
        "conditional_failures": conditional_failures,
        "findings": [e.data for e in findings]
    }
