# -*- coding:utf-8 -*-

"""
Measure module.
Sender measurement bases and projective measurement of sender slots.
    Lambda_h(m): Fourier families over walker 1's positions m+1-4l (dotted) and m-1-4l (double dotted);
    Lambda_p(m): (|m+1> +- |-(m+1)>)/sqrt(2);
    Theta:       (|1> +- |-1>)/sqrt(2) on walkers 2..n;
    Delta:       (|1> +- |0>)/sqrt(2) on the first coins;
    X and Z bases for helper receivers.

Date:   2026/10/17
"""

import json

import numpy as np

from walkport import const
from walkport.hilbert import StateVector
from walkport.utils import tools
from walkport.utils import logger
from walkport.utils import exceptions

__all__ = ("MeasurementBasis", "OutcomeRecord", "build_lambda_h", "build_lambda_p", "build_theta",
           "build_delta", "build_x_basis", "build_z_basis", "protocol_bases", "project", "measure_slots",
           "measure_all")


def fourier_counts(m):
    """ (m', m'', m''') = (floor(m/2), floor((m-1)/2), floor((m-1)/2) + 1).
    """
    m1 = m // 2
    m2 = (m - 1) // 2
    return m1, m2, m2 + 1


class MeasurementBasis:
    """ Orthonormal vectors over the local space of one slot.

    Args:
        slot: Slot name, e.g. "p1", "c2" or "r3".
        vectors: List of {label value: amplitude} maps over the slot's local values.
        labels: Outcome label per vector.
        name: Family name, for reports.

    Raise:
        ValidationError: The vectors are not orthonormal.
    """

    def __init__(self, slot, vectors, labels, name=None):
        if len(vectors) != len(labels) or not vectors:
            raise exceptions.ValidationError("basis needs one label per vector")
        self._slot = slot
        self._vectors = tuple({int(k): complex(v) for k, v in vec.items()} for vec in vectors)
        self._labels = tuple(labels)
        self._name = name or slot
        gram = self.gram()
        if not np.allclose(gram, np.eye(len(vectors)), rtol=0, atol=const.UNITARY_TOLERANCE):
            raise exceptions.ValidationError("basis {} is not orthonormal".format(self._name))

    @property
    def slot(self):
        return self._slot

    @property
    def vectors(self):
        return self._vectors

    @property
    def labels(self):
        return self._labels

    @property
    def name(self):
        return self._name

    @property
    def support(self):
        """ Local values the basis spans.
        """
        return tuple(sorted(set(k for vec in self._vectors for k in vec)))

    def gram(self):
        values = self.support
        mat = np.array([[vec.get(x, 0j) for x in values] for vec in self._vectors], dtype=complex)
        return mat.conj() @ mat.T

    def for_slot(self, slot):
        """ The same vectors attached to another slot.
        """
        return MeasurementBasis(slot, self._vectors, self._labels, self._name)

    @property
    def data(self):
        return {
            "slot": self._slot,
            "name": self._name,
            "labels": [list(l) if isinstance(l, tuple) else l for l in self._labels],
            "vectors": [{str(x): tools.complex_to_pair(v) for x, v in sorted(vec.items())} for vec in self._vectors]
        }

    def __str__(self):
        return json.dumps(self.data)

    def __repr__(self):
        return "MeasurementBasis({}, {}, size={})".format(self._name, self._slot, len(self._vectors))


class OutcomeRecord:
    """ Classical results of the 2n sender measurements.

    Args:
        p1_branch: 0 for the dotted family, 1 for the double dotted family, None for Lambda_p.
        p1_index: Fourier index s or t, or the Lambda_p bit.
        p_bits: Theta results of walkers 2..n.
        c_bits: Delta results of the first coins c1..cn.
        probability: Probability of this outcome.
    """

    def __init__(self, p1_branch, p1_index, p_bits, c_bits, probability):
        self.p1_branch = p1_branch
        self.p1_index = int(p1_index)
        self.p_bits = tuple(int(b) for b in p_bits)
        self.c_bits = tuple(int(b) for b in c_bits)
        self.probability = float(probability)

    @classmethod
    def from_labels(cls, n, labels, probability):
        """ Build a record from {slot: label} of a full sender measurement.
        """
        p1 = labels["p1"]
        if isinstance(p1, tuple):
            branch, index = p1
        else:
            branch, index = None, p1
        p_bits = [labels["p{}".format(i)] for i in range(2, n + 1)]
        c_bits = [labels["c{}".format(i)] for i in range(1, n + 1)]
        return cls(branch, index, p_bits, c_bits, probability)

    @property
    def n(self):
        return len(self.c_bits)

    def parity(self, include_p1=False):
        """ Mod-2 sum of p2..pn and c1..cn, plus the p1 bit when `include_p1` (Lambda_p outcomes only).
        """
        total = sum(self.p_bits) + sum(self.c_bits)
        if include_p1:
            if self.p1_branch is not None:
                raise exceptions.ValidationError("p1 carries a Fourier label, not a bit")
            total += self.p1_index
        return total % 2

    @property
    def key(self):
        """ Probability-free identity of the outcome.
        """
        return (self.p1_branch, self.p1_index, self.p_bits, self.c_bits)

    @property
    def data(self):
        return {
            "p1": {"branch": self.p1_branch, "index": self.p1_index},
            "p": list(self.p_bits),
            "c": list(self.c_bits),
            "prob": tools.clean_float(self.probability)
        }

    def __str__(self):
        return json.dumps(self.data)

    def __repr__(self):
        return "OutcomeRecord({})".format(str(self))


def _fourier_family(positions, size):
    vectors = []
    for s in range(size):
        vectors.append({x: np.exp(-2j * np.pi * l * s / size) / np.sqrt(size) for l, x in enumerate(positions)})
    return vectors


def build_lambda_h(m, slot="p1"):
    """ Fourier basis of walker 1 for the homogeneous protocol.

    Labels are (0, s) for the dotted vectors over positions m+1-4l, l = 0..m''', and (1, t) for the double dotted
    vectors over positions m-1-4l, l = 0..m'.
    """
    if m < 2:
        raise exceptions.ValidationError("m must be >= 2, got {}".format(m))
    m1, _, m3 = fourier_counts(m)
    dotted = [m + 1 - 4 * l for l in range(m3 + 1)]
    double_dotted = [m - 1 - 4 * l for l in range(m1 + 1)]
    vectors = _fourier_family(dotted, m3 + 1) + _fourier_family(double_dotted, m1 + 1)
    labels = [(const.BRANCH_DOTTED, s) for s in range(m3 + 1)] + \
             [(const.BRANCH_DOUBLE_DOTTED, t) for t in range(m1 + 1)]
    return MeasurementBasis(slot, vectors, labels, "lambda_h")


def build_lambda_p(m, slot="p1"):
    """ (|m+1> + |-(m+1)>)/sqrt(2) with label 0 and (|m+1> - |-(m+1)>)/sqrt(2) with label 1.
    """
    if m < 2:
        raise exceptions.ValidationError("m must be >= 2, got {}".format(m))
    x = m + 1
    vectors = [{x: const.SQRT2_INV, -x: const.SQRT2_INV}, {x: const.SQRT2_INV, -x: -const.SQRT2_INV}]
    return MeasurementBasis(slot, vectors, [0, 1], "lambda_p")


def build_theta(slot="p2"):
    vectors = [{1: const.SQRT2_INV, -1: const.SQRT2_INV}, {1: const.SQRT2_INV, -1: -const.SQRT2_INV}]
    return MeasurementBasis(slot, vectors, [0, 1], "theta")


def build_delta(slot="c1"):
    """ (|1> + |0>)/sqrt(2) with label 0 and (|1> - |0>)/sqrt(2) with label 1.
    """
    vectors = [{1: const.SQRT2_INV, 0: const.SQRT2_INV}, {1: const.SQRT2_INV, 0: -const.SQRT2_INV}]
    return MeasurementBasis(slot, vectors, [0, 1], "delta")


def build_x_basis(slot="r1"):
    vectors = [{0: const.SQRT2_INV, 1: const.SQRT2_INV}, {0: const.SQRT2_INV, 1: -const.SQRT2_INV}]
    return MeasurementBasis(slot, vectors, [0, 1], "x")


def build_z_basis(slot="r1"):
    return MeasurementBasis(slot, [{0: 1}, {1: 1}], [0, 1], "z")


def protocol_bases(shape, variant):
    """ Sender bases of a protocol variant: Lambda on p1, Theta on p2..pn, Delta on c1..cn.
    """
    if variant == const.VARIANT_HOMOGENEOUS:
        bases = [build_lambda_h(shape.m)]
    elif variant == const.VARIANT_POSITION_DEPENDENT:
        bases = [build_lambda_p(shape.m)]
    else:
        raise exceptions.ValidationError("unknown variant: {}".format(variant))
    bases += [build_theta("p{}".format(i)) for i in range(2, shape.n + 1)]
    bases += [build_delta("c{}".format(i)) for i in range(1, shape.n + 1)]
    return bases


def project(psi, basis):
    """ Project one slot onto every basis vector.

    Returns:
        branches: [(label, unnormalized StateVector over the other slots), ...] for the labels with nonzero weight.

    Raise:
        IncompleteBasisError: Part of `psi` lies outside the span of the basis.
    """
    slot = basis.slot
    if slot not in psi.slots:
        raise exceptions.SubsystemError("slot {} is not part of the state".format(slot))
    if len(psi.slots) == 1:
        raise exceptions.SubsystemError("cannot measure the last slot of a state")
    axis = psi.slots.index(slot)
    rest = psi.slots[:axis] + psi.slots[axis + 1:]
    branches = []
    weight = 0.0
    for label, vec in zip(basis.labels, basis.vectors):
        amps = {}
        for key, amp in psi.items():
            coeff = vec.get(key[axis])
            if coeff is None:
                continue
            sub = key[:axis] + key[axis + 1:]
            amps[sub] = amps.get(sub, 0j) + np.conj(coeff) * amp
        branch = StateVector(psi.shape, amps, rest)
        if len(branch):
            weight += branch.norm() ** 2
            branches.append((label, branch))
    total = psi.norm() ** 2
    if abs(total - weight) > const.COMPARE_TOLERANCE * max(total, 1.0):
        raise exceptions.IncompleteBasisError("basis {} on {} misses weight {:.3e} of the state".format(
            basis.name, slot, total - weight))
    return branches


def _bases_map(bases):
    if isinstance(bases, dict):
        return dict(bases)
    out = {}
    for b in bases:
        if b.slot in out:
            raise exceptions.ValidationError("two bases for slot {}".format(b.slot))
        out[b.slot] = b
    return out


def measure_slots(psi, bases, order=None):
    """ Sequential projective measurement of several slots, enumerating every branch.

    Args:
        psi: StateVector.
        bases: List of MeasurementBasis (or {slot: basis}).
        order: Measurement order of the slots, default is canonical order.

    Returns:
        branches: [({slot: label}, unnormalized StateVector over the unmeasured slots), ...] sorted by the labels in
            canonical slot order. The probability of a branch is its squared norm over the squared norm of `psi`.
    """
    bases = _bases_map(bases)
    slots = psi.shape.canonical(bases.keys())
    if order is None:
        order = slots
    elif sorted(order) != sorted(slots):
        raise exceptions.ValidationError("order {} does not match measured slots {}".format(order, slots))
    branches = [({}, psi)]
    for slot in order:
        nxt = []
        for labels, state in branches:
            for label, sub in project(state, bases[slot]):
                new_labels = dict(labels)
                new_labels[slot] = label
                nxt.append((new_labels, sub))
        branches = nxt
    branches.sort(key=lambda b: [_sort_label(b[0][s]) for s in slots])
    return branches


def _sort_label(label):
    if isinstance(label, tuple):
        return label
    return (label, )


def _sample_slots(psi, bases, order, rng):
    labels = {}
    state = psi
    for slot in order:
        branches = project(state, bases[slot])
        weights = np.array([sub.norm() ** 2 for _, sub in branches])
        k = rng.choice(len(branches), p=weights / weights.sum())
        labels[slot], state = branches[k]
    return labels, state


def measure_all(psi, bases, mode=const.MODE_ENUMERATE, seed=None, order=None):
    """ Measure every sender slot.

    Args:
        psi: Normalized StateVector over the full system.
        bases: One MeasurementBasis per sender slot (p1..pn, c1..cn).
        mode: `const.MODE_ENUMERATE` returns every outcome, `const.MODE_SAMPLE` draws one.
        seed: Seed of the sampling generator.
        order: Measurement order, default is canonical order.

    Returns:
        results: [(OutcomeRecord, normalized StateVector over r1..rm), ...].

    Raise:
        IncompleteBasisError: A basis does not span the part of the state it measures.
    """
    shape = psi.shape
    bases = _bases_map(bases)
    if set(bases) != set(shape.sender_slots):
        raise exceptions.ValidationError("bases must cover exactly the sender slots {}".format(
            list(shape.sender_slots)))
    total = psi.norm() ** 2
    if mode == const.MODE_ENUMERATE:
        branches = measure_slots(psi, bases, order)
    elif mode == const.MODE_SAMPLE:
        order = shape.canonical(bases.keys()) if order is None else order
        branches = [_sample_slots(psi, bases, order, np.random.default_rng(seed))]
    else:
        raise exceptions.ValidationError("unknown mode: {}".format(mode))
    results = []
    for labels, sub in branches:
        record = OutcomeRecord.from_labels(shape.n, labels, sub.norm() ** 2 / total)
        results.append((record, sub.normalize()))
    logger.debug("mode:", mode, "outcomes:", len(results))
    return results
