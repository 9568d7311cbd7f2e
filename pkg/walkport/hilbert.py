# -*- coding:utf-8 -*-

"""
Hilbert space module.

The composite space is  (x)_i (H_{p_i} (x) H_{c_i}) (x)_j H_{r_j}  with slots named
    p1..pn   walker positions (walker 1 ranges over [-(m+1), m+1], the others over [-1, 1]),
    c1..cn   the first coin of every walker, held by the senders,
    r1..rm   the extra coins of walker 1, held by the receivers.
The slot order above is canonical: every key of every StateVector lists its labels in this order.

Date:   2026/10/17
"""

import json
import itertools

import numpy as np

from walkport import const
from walkport.config import config
from walkport.utils import tools
from walkport.utils import exceptions

__all__ = ("SystemShape", "BasisState", "StateVector", "DensityMatrix", "basis_state", "tensor_product",
           "inner_product", "fidelity", "partial_trace", "swap_slots", "apply_single_qubit", "apply_keyed_single_qubit",
           "state_from_json")


KIND_POSITION = "position"
KIND_COIN = "coin"


class SystemShape:
    """ Sizes and canonical slot order of an (n, m) system.

    Args:
        n: Number of walkers / senders, n >= 1.
        m: Number of receivers, m >= 2.
    """

    def __init__(self, n, m):
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise exceptions.ValidationError("n must be an integer >= 1, got {!r}".format(n))
        if not isinstance(m, int) or isinstance(m, bool) or m < 2:
            raise exceptions.ValidationError("m must be an integer >= 2, got {!r}".format(m))
        self._n = n
        self._m = m
        self._pos_bounds = (m + 1, ) + (1, ) * (n - 1)
        self._slots = tuple(["p{}".format(i) for i in range(1, n + 1)] +
                            ["c{}".format(i) for i in range(1, n + 1)] +
                            ["r{}".format(j) for j in range(1, m + 1)])
        self._index = {slot: k for k, slot in enumerate(self._slots)}

    @property
    def n(self):
        return self._n

    @property
    def m(self):
        return self._m

    @property
    def pos_bounds(self):
        return self._pos_bounds

    @property
    def coin_count(self):
        return self._n + self._m

    @property
    def slots(self):
        return self._slots

    @property
    def sender_slots(self):
        return self._slots[:2 * self._n]

    @property
    def receiver_slots(self):
        return self._slots[2 * self._n:]

    def pos_bound(self, walker):
        return self._pos_bounds[walker - 1]

    def coin_slot(self, index):
        """ Coin slot by coin index: 0..n-1 are c1..cn, n..n+m-1 are r1..rm.
        """
        if not 0 <= index < self.coin_count:
            raise exceptions.ValidationError("coin index out of range: {}".format(index))
        return self._slots[self._n + index]

    def has_slot(self, slot):
        return slot in self._index

    def slot_index(self, slot):
        try:
            return self._index[slot]
        except KeyError:
            raise exceptions.SubsystemError("unknown slot `{}` for shape {}".format(slot, self))

    def slot_kind(self, slot):
        return KIND_POSITION if self.slot_index(slot) < self._n else KIND_COIN

    def walker_of(self, slot):
        """ Walker owning a slot; receiver coins belong to walker 1.
        """
        k = self.slot_index(slot)
        if k < 2 * self._n:
            return k % self._n + 1
        return 1

    def local_values(self, slot):
        """ Computational basis labels of one slot, in ascending order.
        """
        if self.slot_kind(slot) == KIND_POSITION:
            b = self.pos_bound(self.walker_of(slot))
            return tuple(range(-b, b + 1))
        return (0, 1)

    def canonical(self, slots):
        """ Sort slot names into canonical order, rejecting unknown and repeated names.
        """
        slots = list(slots)
        if len(set(slots)) != len(slots):
            raise exceptions.SubsystemError("repeated slot in {}".format(slots))
        return tuple(sorted(slots, key=self.slot_index))

    def dense_dims(self, slots=None):
        slots = self._slots if slots is None else slots
        return tuple(len(self.local_values(s)) for s in slots)

    @property
    def data(self):
        return {"n": self._n, "m": self._m, "pos_bounds": list(self._pos_bounds), "slots": list(self._slots)}

    def __eq__(self, other):
        return isinstance(other, SystemShape) and (self._n, self._m) == (other._n, other._m)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self._n, self._m))

    def __str__(self):
        return "SystemShape(n={}, m={})".format(self._n, self._m)

    def __repr__(self):
        return str(self)


class BasisState:
    """ One computational basis configuration of the full system.

    Args:
        shape: SystemShape.
        positions: n walker positions.
        coins: n + m coin bits, first coins c1..cn followed by receiver coins r1..rm.
    """

    def __init__(self, shape, positions, coins):
        positions = tuple(int(x) for x in positions)
        coins = tuple(int(b) for b in coins)
        if len(positions) != shape.n or len(coins) != shape.coin_count:
            raise exceptions.ValidationError("basis state needs {} positions and {} coins".format(
                shape.n, shape.coin_count))
        for i, x in enumerate(positions):
            if abs(x) > shape.pos_bound(i + 1):
                raise exceptions.PositionBoundError("walker {} at {} outside [-{b}, {b}]".format(
                    i + 1, x, b=shape.pos_bound(i + 1)))
        if any(b not in (0, 1) for b in coins):
            raise exceptions.ValidationError("coin bits must be 0 or 1: {}".format(coins))
        self._shape = shape
        self._positions = positions
        self._coins = coins

    @classmethod
    def from_key(cls, shape, key):
        return cls(shape, key[:shape.n], key[shape.n:])

    @property
    def positions(self):
        return self._positions

    @property
    def coins(self):
        return self._coins

    @property
    def key(self):
        return self._positions + self._coins

    def __eq__(self, other):
        return isinstance(other, BasisState) and self._shape == other._shape and self.key == other.key

    def __hash__(self):
        return hash((self._shape, self.key))

    def __repr__(self):
        return "BasisState(positions={}, coins={})".format(list(self._positions), list(self._coins))


class StateVector:
    """ Finite-support superposition over the computational basis of some slots of a SystemShape.

    Values are immutable: every operation returns a new StateVector. Amplitudes whose magnitude is below
    the prune tolerance are dropped from the support.

    Args:
        shape: SystemShape.
        amplitudes: Mapping from key (tuple of labels, one per slot in canonical order) to complex amplitude.
        slots: Slots the keys refer to, default is every slot of `shape`.
    """

    __slots__ = ("_shape", "_slots", "_amplitudes")

    def __init__(self, shape, amplitudes, slots=None):
        slots = shape.slots if slots is None else tuple(slots)
        if shape.canonical(slots) != slots:
            raise exceptions.SubsystemError("slots must be given in canonical order: {}".format(slots))
        if not slots:
            raise exceptions.SubsystemError("a state needs at least one slot")
        ranges = [set(shape.local_values(s)) for s in slots]
        amps = {}
        for key, amp in dict(amplitudes).items():
            key = tuple(int(v) for v in key)
            if len(key) != len(slots):
                raise exceptions.ValidationError("key {} does not match slots {}".format(key, slots))
            for slot, value, allowed in zip(slots, key, ranges):
                if value not in allowed:
                    raise exceptions.PositionBoundError("value {} outside the range of slot {}".format(value, slot))
            amps[key] = amps.get(key, 0j) + complex(amp)
        self._shape = shape
        self._slots = slots
        self._amplitudes = {k: a for k, a in amps.items() if abs(a) >= config.prune_tolerance}

    @property
    def shape(self):
        return self._shape

    @property
    def slots(self):
        return self._slots

    @property
    def support(self):
        return tuple(sorted(self._amplitudes))

    def amplitude(self, key):
        return self._amplitudes.get(tuple(key), 0j)

    def items(self):
        """ (key, amplitude) pairs in sorted key order.
        """
        return [(k, self._amplitudes[k]) for k in sorted(self._amplitudes)]

    def labels(self, key):
        """ Map slot name -> label for one key.
        """
        return dict(zip(self._slots, key))

    def __len__(self):
        return len(self._amplitudes)

    def norm(self):
        return float(np.sqrt(sum(abs(a) ** 2 for a in self._amplitudes.values())))

    def normalize(self):
        """ Return the unit-norm state; normalizing twice is a no-op.
        """
        nrm = self.norm()
        if nrm == 0:
            raise exceptions.ValidationError("cannot normalize the zero vector")
        if abs(nrm - 1) <= const.NORM_TOLERANCE * 1e-3:
            return self
        return self.scaled(1 / nrm)

    def scaled(self, factor):
        return StateVector(self._shape, {k: a * factor for k, a in self._amplitudes.items()}, self._slots)

    def _check_compatible(self, other):
        if not isinstance(other, StateVector) or other._shape != self._shape:
            raise exceptions.ShapeMismatchError("states over {} and {}".format(
                self._shape, getattr(other, "shape", other)))
        if other._slots != self._slots:
            raise exceptions.ShapeMismatchError("states over slots {} and {}".format(self._slots, other._slots))

    def __add__(self, other):
        self._check_compatible(other)
        amps = dict(self._amplitudes)
        for k, a in other._amplitudes.items():
            amps[k] = amps.get(k, 0j) + a
        return StateVector(self._shape, amps, self._slots)

    def __sub__(self, other):
        return self + other.scaled(-1)

    def __mul__(self, factor):
        return self.scaled(factor)

    __rmul__ = __mul__

    def is_close(self, other, tol=const.COMPARE_TOLERANCE):
        """ Entrywise comparison, global phase included.
        """
        self._check_compatible(other)
        keys = set(self._amplitudes) | set(other._amplitudes)
        return all(abs(self.amplitude(k) - other.amplitude(k)) <= tol for k in keys)

    def to_dense(self):
        """ Dense array with one axis per slot, each axis over the slot's full local range.
        """
        dims = self._shape.dense_dims(self._slots)
        offsets = [self._shape.local_values(s)[0] for s in self._slots]
        array = np.zeros(dims, dtype=complex)
        for key, amp in self._amplitudes.items():
            array[tuple(v - o for v, o in zip(key, offsets))] = amp
        return array

    @classmethod
    def from_dense(cls, shape, array, slots=None):
        slots = shape.slots if slots is None else tuple(slots)
        array = np.asarray(array, dtype=complex).reshape(shape.dense_dims(slots))
        values = [shape.local_values(s) for s in slots]
        amps = {}
        for index in zip(*np.nonzero(np.abs(array) >= const.PRUNE_TOLERANCE)):
            amps[tuple(values[axis][i] for axis, i in enumerate(index))] = array[index]
        return cls(shape, amps, slots)

    @property
    def data(self):
        """ JSON form: [{positions, coins, re, im}, ...] in sorted key order.
        """
        position_axes = [k for k, s in enumerate(self._slots) if self._shape.slot_kind(s) == KIND_POSITION]
        coin_axes = [k for k, s in enumerate(self._slots) if self._shape.slot_kind(s) == KIND_COIN]
        terms = []
        for key, amp in self.items():
            re, im = tools.complex_to_pair(amp)
            terms.append({
                "positions": [key[k] for k in position_axes],
                "coins": [key[k] for k in coin_axes],
                "re": re,
                "im": im
            })
        return terms

    @classmethod
    def from_data(cls, shape, terms, slots=None):
        """ Rebuild a state from its JSON form.
        """
        slots = shape.slots if slots is None else tuple(slots)
        position_axes = [k for k, s in enumerate(slots) if shape.slot_kind(s) == KIND_POSITION]
        coin_axes = [k for k, s in enumerate(slots) if shape.slot_kind(s) == KIND_COIN]
        amps = {}
        for term in terms:
            key = [0] * len(slots)
            for k, v in zip(position_axes, term["positions"]):
                key[k] = v
            for k, v in zip(coin_axes, term["coins"]):
                key[k] = v
            amps[tuple(key)] = complex(term["re"], term["im"])
        return cls(shape, amps, slots)

    def __str__(self):
        return json.dumps(self.data)

    def __repr__(self):
        return "StateVector({}, slots={}, terms={})".format(self._shape, list(self._slots), len(self))


class DensityMatrix:
    """ Reduced state of a set of slots.

    Args:
        subsystem: Slots the matrix is defined over, canonical order.
        labels: Row/column labels, each a key over `subsystem`.
        matrix: Complex square matrix indexed by `labels`.
    """

    def __init__(self, subsystem, labels, matrix):
        matrix = np.array(matrix, dtype=complex)
        if matrix.shape != (len(labels), len(labels)):
            raise exceptions.ValidationError("matrix shape {} does not match {} labels".format(
                matrix.shape, len(labels)))
        matrix.setflags(write=False)
        self._subsystem = tuple(subsystem)
        self._labels = tuple(tuple(l) for l in labels)
        self._matrix = matrix
        self._index = {l: k for k, l in enumerate(self._labels)}

    @property
    def subsystem(self):
        return self._subsystem

    @property
    def labels(self):
        return self._labels

    @property
    def matrix(self):
        return self._matrix

    def trace(self):
        return complex(np.trace(self._matrix))

    def entry(self, row, col):
        i = self._index.get(tuple(row))
        j = self._index.get(tuple(col))
        if i is None or j is None:
            return 0j
        return complex(self._matrix[i, j])

    def eigenvalues(self):
        return np.linalg.eigvalsh((self._matrix + self._matrix.conj().T) / 2)

    def nonzero_eigenvalues(self, tol=const.PSD_TOLERANCE):
        values = self.eigenvalues()
        return np.sort(values[np.abs(values) > tol])

    def is_hermitian(self, tol=const.HERMITIAN_TOLERANCE):
        return bool(np.allclose(self._matrix, self._matrix.conj().T, rtol=0, atol=tol))

    def is_valid(self):
        """ Hermitian, positive semidefinite and unit trace.
        """
        if not self.is_hermitian():
            return False
        if self._labels and self.eigenvalues().min() < -const.PSD_TOLERANCE:
            return False
        return abs(self.trace() - 1) <= const.NORM_TOLERANCE

    def purity(self):
        return float(np.real(np.trace(self._matrix @ self._matrix)))

    def normalize(self):
        tr = self.trace()
        if abs(tr) == 0:
            raise exceptions.ValidationError("cannot normalize a zero-trace matrix")
        return DensityMatrix(self._subsystem, self._labels, self._matrix / tr)

    def aligned(self, labels):
        """ Matrix re-indexed by `labels`; labels not present contribute zero rows and columns.
        """
        out = np.zeros((len(labels), len(labels)), dtype=complex)
        rows = [self._index.get(tuple(l)) for l in labels]
        for a, i in enumerate(rows):
            if i is None:
                continue
            for b, j in enumerate(rows):
                if j is not None:
                    out[a, b] = self._matrix[i, j]
        return out

    def deviation(self, other):
        """ Largest entrywise deviation from another matrix over the same subsystem.
        """
        if self._subsystem != other.subsystem:
            raise exceptions.ShapeMismatchError("density matrices over {} and {}".format(
                self._subsystem, other.subsystem))
        labels = sorted(set(self._labels) | set(other.labels))
        if not labels:
            return 0.0
        return float(np.max(np.abs(self.aligned(labels) - other.aligned(labels))))

    @classmethod
    def mix(cls, weighted):
        """ Convex mixture of [(weight, DensityMatrix), ...] over one subsystem.
        """
        weighted = list(weighted)
        if not weighted:
            raise exceptions.ValidationError("empty mixture")
        subsystem = weighted[0][1].subsystem
        labels = sorted(set(l for _, rho in weighted for l in rho.labels))
        matrix = np.zeros((len(labels), len(labels)), dtype=complex)
        for w, rho in weighted:
            if rho.subsystem != subsystem:
                raise exceptions.ShapeMismatchError("mixture over different subsystems")
            matrix += w * rho.aligned(labels)
        return cls(subsystem, labels, matrix)

    @property
    def data(self):
        return {
            "subsystem": list(self._subsystem),
            "labels": [list(l) for l in self._labels],
            "re": [[tools.clean_float(v) for v in row] for row in self._matrix.real],
            "im": [[tools.clean_float(v) for v in row] for row in self._matrix.imag]
        }

    def __str__(self):
        return json.dumps(self.data)

    def __repr__(self):
        return "DensityMatrix(subsystem={}, dim={})".format(list(self._subsystem), len(self._labels))


def basis_state(shape, labels, amplitude=1.0):
    """ A single basis term over the slots named in `labels`.

    Args:
        shape: SystemShape.
        labels: Mapping slot -> label, e.g. {"p1": 0, "c1": 1}.
        amplitude: Complex amplitude of the term.
    """
    slots = shape.canonical(labels.keys())
    return StateVector(shape, {tuple(labels[s] for s in slots): amplitude}, slots)


def tensor_product(a, b):
    """ Tensor product of states over disjoint slots of one shape.

    Raise:
        ShapeMismatchError: The states belong to different shapes.
        OverlappingSlotError: Both states claim a slot.
    """
    if a.shape != b.shape:
        raise exceptions.ShapeMismatchError("tensor product of {} and {}".format(a.shape, b.shape))
    overlap = set(a.slots) & set(b.slots)
    if overlap:
        raise exceptions.OverlappingSlotError("slots {} appear in both factors".format(sorted(overlap)))
    slots = a.shape.canonical(a.slots + b.slots)
    origin = [(0, a.slots.index(s)) if s in a.slots else (1, b.slots.index(s)) for s in slots]
    amps = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            pair = (ka, kb)
            amps[tuple(pair[f][i] for f, i in origin)] = va * vb
    return StateVector(a.shape, amps, slots)


def inner_product(a, b):
    """ <a|b>, conjugate-linear in `a`.

    Raise:
        ShapeMismatchError: The states are over different shapes or slots.
    """
    a._check_compatible(b)
    if len(a) > len(b):
        return sum(np.conj(a.amplitude(k)) * v for k, v in b.items())
    return complex(sum(np.conj(v) * b.amplitude(k) for k, v in a.items()))


def fidelity(a, b):
    """ |<a|b>| of the normalized states, insensitive to global phase.
    """
    na, nb = a.norm(), b.norm()
    if na == 0 or nb == 0:
        return 0.0
    return float(abs(inner_product(a, b)) / (na * nb))


def partial_trace(psi, keep, full_basis=False):
    """ Reduced density matrix of `psi` over the slots in `keep`.

    Args:
        psi: StateVector.
        keep: Slots to keep, a nonempty strict subset of `psi.slots`.
        full_basis: If True the matrix is indexed by the full local basis of the kept slots, otherwise by the
            kept labels that occur in the support.

    Returns:
        DensityMatrix with unit trace.

    Raise:
        SubsystemError: `keep` is empty, covers every slot or names slots `psi` is not defined over.
    """
    keep = psi.shape.canonical(keep)
    if not keep:
        raise exceptions.SubsystemError("keep set is empty")
    missing = [s for s in keep if s not in psi.slots]
    if missing:
        raise exceptions.SubsystemError("slots {} are not part of the state".format(missing))
    if len(keep) == len(psi.slots):
        raise exceptions.SubsystemError("keep set covers the whole state, nothing to trace out")
    kept_axes = [psi.slots.index(s) for s in keep]
    traced_axes = [k for k in range(len(psi.slots)) if k not in kept_axes]

    groups = {}
    for key, amp in psi.items():
        traced = tuple(key[k] for k in traced_axes)
        groups.setdefault(traced, []).append((tuple(key[k] for k in kept_axes), amp))

    if full_basis:
        labels = list(itertools.product(*[psi.shape.local_values(s) for s in keep]))
    else:
        labels = sorted(set(kk for terms in groups.values() for kk, _ in terms))
    index = {l: i for i, l in enumerate(labels)}
    matrix = np.zeros((len(labels), len(labels)), dtype=complex)
    for terms in groups.values():
        rows = np.array([index[kk] for kk, _ in terms])
        vec = np.array([amp for _, amp in terms], dtype=complex)
        matrix[np.ix_(rows, rows)] += np.outer(vec, vec.conj())
    trace = np.trace(matrix).real
    if trace <= 0:
        raise exceptions.ValidationError("cannot reduce the zero vector")
    return DensityMatrix(keep, labels, matrix / trace)


def swap_slots(psi, a, b):
    """ Exchange the contents of two slots with the same local space, e.g. two receiver coins.
    """
    if psi.shape.local_values(a) != psi.shape.local_values(b):
        raise exceptions.SubsystemError("slots {} and {} have different local spaces".format(a, b))
    ia, ib = psi.slots.index(a), psi.slots.index(b)
    amps = {}
    for key, amp in psi.items():
        key = list(key)
        key[ia], key[ib] = key[ib], key[ia]
        amps[tuple(key)] = amp
    return StateVector(psi.shape, amps, psi.slots)


def apply_single_qubit(psi, slot, matrix):
    """ Apply a 2x2 matrix to one coin slot.
    """
    matrix = np.asarray(matrix, dtype=complex)
    return apply_keyed_single_qubit(psi, slot, lambda key: matrix)


def apply_keyed_single_qubit(psi, slot, matrix_of):
    """ Apply a 2x2 matrix to one coin slot, the matrix chosen per basis term by `matrix_of(key)`.
    """
    if psi.shape.slot_kind(slot) != KIND_COIN:
        raise exceptions.SubsystemError("slot {} is not a coin".format(slot))
    axis = psi.slots.index(slot)
    amps = {}
    for key, amp in psi.items():
        matrix = matrix_of(key)
        bit = key[axis]
        for out in (0, 1):
            coeff = matrix[out, bit]
            if coeff == 0:
                continue
            new_key = key[:axis] + (out, ) + key[axis + 1:]
            amps[new_key] = amps.get(new_key, 0j) + coeff * amp
    return StateVector(psi.shape, amps, psi.slots)


def state_from_json(shape, text, slots=None):
    """ Parse the JSON form produced by `str(StateVector)`.

    Args:
        shape: SystemShape.
        text: JSON string or already decoded list of terms.
        slots: Slots the terms refer to, default is every slot of `shape`.
    """
    terms = json.loads(text) if isinstance(text, str) else text
    if not isinstance(terms, list):
        raise exceptions.ValidationError("state json must be a list of terms")
    try:
        return StateVector.from_data(shape, terms, slots)
    except (KeyError, TypeError) as e:
        raise exceptions.ValidationError("malformed state term: {}".format(e))
