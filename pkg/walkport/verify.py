# -*- coding:utf-8 -*-

"""
Identity suite behind `walkport verify`: simulator against closed forms, simulator against the dense
rendition, the permutation-sum identities, receiver exchangeability and end-to-end runs.

Date:   2026/10/17
"""

import itertools
from collections import Counter

import numpy as np

from walkport import const
from walkport import oracle
from walkport.config import config as settings
from walkport.hilbert import StateVector, fidelity, swap_slots
from walkport.protocol import ProtocolConfig, evolve, run_protocol, reconstruct_secret
from walkport.measure import OutcomeRecord, fourier_counts
from walkport.utils import tools
from walkport.utils import logger

__all__ = ("Check", "IdentitySuite")


class Check:
    """ Result of one named identity.
    """

    def __init__(self, name, n, m, passed, value):
        self.name = name
        self.n = n
        self.m = m
        self.passed = bool(passed)
        self.value = value

    @property
    def data(self):
        return {"name": self.name, "n": self.n, "m": self.m, "pass": self.passed,
                "value": tools.clean_float(self.value)}


def _max_amplitude_gap(a, b):
    keys = set(a.support) | set(b.support)
    return max([abs(a.amplitude(k) - b.amplitude(k)) for k in keys] or [0.0])


class IdentitySuite:
    """ Every check for one (n, m) and one secret.
    """

    @classmethod
    def run(cls, n, m, secret):
        """ Run all checks.

        Returns:
            checks: List of Check, in a fixed order.
        """
        checks = []
        for method in (cls.check_closed_forms, cls.check_dense, cls.check_regrouping, cls.check_splitting,
                       cls.check_expansion, cls.check_exchangeability, cls.check_protocols,
                       cls.check_reconstruction):
            checks.extend(method(n, m, secret))
        for c in checks:
            if not c.passed:
                logger.error("check", c.name, "failed for n =", n, "m =", m, "value:", c.value, caller=cls)
        return checks

    @classmethod
    def check_closed_forms(cls, n, m, secret):
        tol = settings.fidelity_tolerance
        h = fidelity(evolve(ProtocolConfig(n, m, const.VARIANT_HOMOGENEOUS), secret),
                     oracle.closed_form_h(n, m, secret))
        p = fidelity(evolve(ProtocolConfig(n, m, const.VARIANT_POSITION_DEPENDENT), secret),
                     oracle.closed_form_p(n, m, secret))
        return [Check("closed-form-homogeneous", n, m, h >= 1 - tol, h),
                Check("closed-form-position-dependent", n, m, p >= 1 - tol, p)]

    @classmethod
    def check_dense(cls, n, m, secret):
        checks = []
        for variant in const.VARIANTS:
            sparse = evolve(ProtocolConfig(n, m, variant), secret)
            dense = oracle.dense_pipeline(n, m, variant, secret)
            gap = _max_amplitude_gap(sparse, dense)
            checks.append(Check("dense-{}".format(variant), n, m, gap <= settings.compare_tolerance, gap))
        return checks

    @classmethod
    def check_regrouping(cls, n, m, secret):
        direct = oracle.closed_form_h(n, m, secret, normalize=False)
        groups = oracle.reordered_groups(n, m, secret)
        regrouped = oracle.closed_form_h_reordered(n, m, secret, normalize=False)
        same_terms = dict(direct.items()) == dict(regrouped.items())
        disjoint = sum(len(g) for g in groups) == len(direct)
        gap = _max_amplitude_gap(direct, regrouped)
        return [Check("regrouped-final-state", n, m, same_terms and disjoint, gap)]

    @classmethod
    def check_splitting(cls, n, m, secret):
        ok = True
        for k in range(m + 1):
            lhs, rhs = oracle.split_identity(k, m)
            ok = ok and lhs == rhs
        parts = oracle.weight_parity_sum(m, 0) + oracle.weight_parity_sum(m, 1)
        ok = ok and parts == Counter(itertools.product((0, 1), repeat=m))
        return [Check("permutation-sum-splitting", n, m, ok, 0.0 if ok else 1.0)]

    @classmethod
    def check_expansion(cls, n, m, secret):
        expansion = oracle.shared_secret_expansion(m, secret).normalize()
        shape = expansion.shape
        ghz = StateVector(shape, {(0, ) * m: secret.alpha, (1, ) * m: secret.beta}, expansion.slots)
        gap = _max_amplitude_gap(expansion, ghz.normalize())
        return [Check("shared-secret-expansion", n, m, gap <= const.NORM_TOLERANCE, gap)]

    @classmethod
    def check_exchangeability(cls, n, m, secret):
        _, _, m3 = fourier_counts(m)
        worst = 0.0
        for s in range(m3 + 1):
            outcome = OutcomeRecord(const.BRANCH_DOTTED, s, [0] * (n - 1), [0] * n, 0)
            state = oracle.expected_receiver_state(const.VARIANT_HOMOGENEOUS, m, outcome, secret)
            for a, b in itertools.combinations(state.slots, 2):
                worst = max(worst, _max_amplitude_gap(state, swap_slots(state, a, b)))
        return [Check("receiver-exchangeability", n, m, worst <= const.NORM_TOLERANCE, worst)]

    @classmethod
    def check_protocols(cls, n, m, secret):
        checks = []
        for variant in const.VARIANTS:
            receivers = range(1, m + 1) if variant == const.VARIANT_HOMOGENEOUS else [m]
            worst = 1.0
            ok = True
            for j in receivers:
                run = run_protocol(ProtocolConfig(n, m, variant, corrected_receiver=j), secret)
                worst = min(worst, run.min_fidelity)
                ok = ok and run.passed
            checks.append(Check("end-to-end-{}".format(variant), n, m, ok, worst))
        return checks

    @classmethod
    def check_reconstruction(cls, n, m, secret):
        phi = np.array([secret.alpha, secret.beta])
        checks = []
        for variant in const.VARIANTS:
            config = ProtocolConfig(n, m, variant)
            run = run_protocol(config, secret)
            worst = 1.0
            for r in run.results:
                for _, _, qubit in reconstruct_secret(r.corrected, variant, config.corrected_receiver, r.outcome):
                    worst = min(worst, abs(np.vdot(phi, [qubit.amplitude((0, )), qubit.amplitude((1, ))])))
            checks.append(Check("reconstruction-{}".format(variant), n, m,
                                worst >= 1 - settings.fidelity_tolerance, worst))
        return checks
