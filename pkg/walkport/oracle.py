# -*- coding:utf-8 -*-

"""
Oracle module.
Closed-form constructors for the evolved and received states, the permutation-sum machinery behind them,
and a dense-array rendition of the walk used as an independent cross-check of the sparse simulator.

Positions after stage two are m_k = m + 1 - 2k. The homogeneous final state is
    sum_k  alpha |m_k>|1>^(n-1)|0>^n P_k  +  beta |m_{k+1}>|-1>^(n-1)|1>^n P_k
where P_k is the sum of all m-qubit strings with k ones.

Date:   2026/10/17
"""

import math
import itertools
from collections import Counter

import numpy as np

from walkport import const
from walkport.hilbert import SystemShape, StateVector, tensor_product
from walkport.measure import fourier_counts
from walkport.walk import stage_one_steps, stage_two_steps, stage_one_rules, protocol_coin_rules
from walkport.utils import exceptions

__all__ = ("PermutationSum", "perm_sum", "split_identity", "weight_parity_sum", "closed_form_h",
           "reordered_groups", "closed_form_h_reordered", "closed_form_p", "initial_state",
           "expected_receiver_state", "expected_corrected_state", "corrected_layout", "shared_secret_expansion",
           "rotation_angle", "dense_step_operator", "dense_apply_step", "dense_stage_one", "dense_stage_two",
           "dense_step_matrix", "dense_pipeline")


class PermutationSum:
    """ Unnormalized symmetric sum of all m-qubit strings with k ones, every amplitude 1.

    Args:
        ones: k.
        total: m.
    """

    def __init__(self, ones, total):
        if total < 0 or not 0 <= ones <= total:
            raise exceptions.ValidationError("perm_sum needs 0 <= k <= m, got k={} m={}".format(ones, total))
        self._ones = ones
        self._total = total
        terms = []
        for where in itertools.combinations(range(total), ones):
            bits = [0] * total
            for i in where:
                bits[i] = 1
            terms.append(tuple(bits))
        self._terms = tuple(sorted(terms))

    @property
    def ones(self):
        return self._ones

    @property
    def total(self):
        return self._total

    @property
    def terms(self):
        return self._terms

    def __len__(self):
        return len(self._terms)

    def counter(self, suffix=()):
        """ Term multiset, every term extended by `suffix`.
        """
        return Counter(t + tuple(suffix) for t in self._terms)

    def state(self, shape, slots):
        """ The sum as a StateVector over `slots` (len(slots) == m).
        """
        if len(slots) != self._total:
            raise exceptions.ValidationError("{} slots for a {}-qubit sum".format(len(slots), self._total))
        return StateVector(shape, {t: 1 for t in self._terms}, shape.canonical(slots))

    def __repr__(self):
        return "PermutationSum(k={}, m={})".format(self._ones, self._total)


def perm_sum(k, m):
    return PermutationSum(k, m)


def _perm_counter(k, m, suffix=()):
    """ Term multiset of P[k, m]; empty when k is out of range.
    """
    if m < 0 or not 0 <= k <= m:
        return Counter()
    return PermutationSum(k, m).counter(suffix)


def split_identity(k, m):
    """ Both sides of P[k, m] = P[k, m-1] (x) |0> + P[k-1, m-1] (x) |1>.

    Returns:
        (lhs, rhs): Term multisets (collections.Counter of bit tuples).
    """
    lhs = _perm_counter(k, m)
    rhs = _perm_counter(k, m - 1, (0, )) + _perm_counter(k - 1, m - 1, (1, ))
    return lhs, rhs


def weight_parity_sum(m, parity):
    """ Term multiset of sum_{k = parity mod 2} P[k, m].
    """
    out = Counter()
    for k in range(parity, m + 1, 2):
        out += _perm_counter(k, m)
    return out


def _position(m, k):
    return m + 1 - 2 * k


def _branch_key(shape, p1, sign, coin, receivers):
    """ Full key: walker 1 at p1, walkers 2..n at `sign`, every first coin `coin`, receiver bits.
    """
    return (p1, ) + (sign, ) * (shape.n - 1) + (coin, ) * shape.n + tuple(receivers)


def _finish(state, normalize):
    return state.normalize() if normalize else state


def initial_state(n, m, secret):
    """ Every walker at 0, first coins alpha|0..0> + beta|1..1>, receiver coins |0>.
    """
    shape = SystemShape(n, m)
    amps = {
        (0, ) * n + (0, ) * n + (0, ) * m: secret.alpha,
        (0, ) * n + (1, ) * n + (0, ) * m: secret.beta
    }
    return StateVector(shape, amps)


def closed_form_h(n, m, secret, normalize=True):
    """ Homogeneous final state as a sum over the receivers' Hamming weight.

    The unnormalized norm squared is 2^m.
    """
    shape = SystemShape(n, m)
    amps = {}
    for k in range(m + 1):
        for bits in perm_sum(k, m).terms:
            amps[_branch_key(shape, _position(m, k), 1, 0, bits)] = secret.alpha
            amps[_branch_key(shape, _position(m, k + 1), -1, 1, bits)] = secret.beta
    return _finish(StateVector(shape, amps), normalize)


def reordered_groups(n, m, secret):
    """ The homogeneous final state regrouped by the last receiver coin and the parity of the position index.

    Returns:
        groups: Four unnormalized StateVectors whose sum is `closed_form_h(n, m, secret, normalize=False)`.
    """
    shape = SystemShape(n, m)
    m1, m2, _ = fourier_counts(m)

    def group(terms):
        amps = {}
        for amp, k_pos, sign, coin, ones, last in terms:
            for bits in _perm_counter(ones, m - 1, (last, )):
                amps[_branch_key(shape, _position(m, k_pos), sign, coin, bits)] = amp
        return StateVector(shape, amps)

    a, b = secret.alpha, secret.beta
    g1 = [(a, 2 * k, 1, 0, 2 * k, 0) for k in range(m2 + 1)] + \
         [(b, 2 * k + 2, -1, 1, 2 * k, 1) for k in range(m2 + 1)]
    g2 = [(a, 2 * k, 1, 0, 2 * k - 1, 1) for k in range(1, m1 + 1)] + \
         [(b, 2 * k + 2, -1, 1, 2 * k + 1, 0) for k in range(m1)]
    g3 = [(a, 2 * k + 1, 1, 0, 2 * k + 1, 0) for k in range(m1)] + \
         [(b, 2 * k + 1, -1, 1, 2 * k - 1, 1) for k in range(1, m1 + 1)]
    g4 = [(a, 2 * k + 1, 1, 0, 2 * k, 1) for k in range(m2 + 1)] + \
         [(b, 2 * k + 1, -1, 1, 2 * k, 0) for k in range(m2 + 1)]
    return [group(g) for g in (g1, g2, g3, g4)]


def closed_form_h_reordered(n, m, secret, normalize=True):
    groups = reordered_groups(n, m, secret)
    total = groups[0]
    for g in groups[1:]:
        total = total + g
    return _finish(total, normalize)


def closed_form_p(n, m, secret, normalize=True):
    """ alpha |m+1>|1>^(n-1)|0>^n|0>^m + beta |-(m+1)>|-1>^(n-1)|1>^n|1>^m.
    """
    shape = SystemShape(n, m)
    amps = {
        _branch_key(shape, m + 1, 1, 0, (0, ) * m): secret.alpha,
        _branch_key(shape, -(m + 1), -1, 1, (1, ) * m): secret.beta
    }
    return _finish(StateVector(shape, amps), normalize)


def rotation_angle(m, branch, index):
    """ 2 pi s / (m'''+1) for the dotted family, 2 pi t / (m'+1) for the double dotted family.
    """
    m1, _, m3 = fourier_counts(m)
    if branch == const.BRANCH_DOTTED:
        return 2 * math.pi * index / (m3 + 1)
    return 2 * math.pi * index / (m1 + 1)


def _receiver_shape(outcome, m):
    return SystemShape(outcome.n, m)


def expected_receiver_state(variant, m, outcome, secret):
    """ Normalized receiver state right after the sender measurements, up to a global phase.

    Homogeneous, dotted s (theta = 2 pi s/(m'''+1)), Hamming weight w of the receiver string:
        w even: alpha e^{i theta w/2},  w odd: (-1)^omega beta e^{i theta (w+1)/2}.
    Homogeneous, double dotted t (theta = 2 pi t/(m'+1)):
        w odd: alpha e^{i theta (w-1)/2},  w even: (-1)^omega beta e^{i theta w/2}.
    Position dependent: alpha|0..0> + (-1)^omega beta|1..1>.
    """
    shape = _receiver_shape(outcome, m)
    slots = shape.receiver_slots
    if variant == const.VARIANT_POSITION_DEPENDENT:
        sign = (-1) ** outcome.parity(include_p1=True)
        amps = {(0, ) * m: secret.alpha, (1, ) * m: sign * secret.beta}
        return StateVector(shape, amps, slots).normalize()
    if variant != const.VARIANT_HOMOGENEOUS:
        raise exceptions.ValidationError("unknown variant: {}".format(variant))

    sign = (-1) ** outcome.parity(include_p1=False)
    theta = rotation_angle(m, outcome.p1_branch, outcome.p1_index)
    dotted = outcome.p1_branch == const.BRANCH_DOTTED
    amps = {}
    for w in range(m + 1):
        if dotted:
            amp = secret.alpha * np.exp(1j * theta * w / 2) if w % 2 == 0 else \
                sign * secret.beta * np.exp(1j * theta * (w + 1) / 2)
        else:
            amp = secret.alpha * np.exp(1j * theta * (w - 1) / 2) if w % 2 == 1 else \
                sign * secret.beta * np.exp(1j * theta * w / 2)
        for bits in perm_sum(w, m).terms:
            amps[bits] = amp
    return StateVector(shape, amps, slots).normalize()


def _split_form(shape, designated, phase_of, vector_of):
    """ sum_y e^{i phase(|y|)} |y> (x) vector(|y|) with y over the receivers other than r_designated.
    """
    m = shape.m
    amps = {}
    for y in itertools.product((0, 1), repeat=m - 1):
        u = sum(y)
        phase = np.exp(1j * phase_of(u))
        vec = vector_of(u)
        for b in (0, 1):
            key = y[:designated - 1] + (b, ) + y[designated - 1:]
            amps[key] = phase * vec[b]
    return StateVector(shape, amps, shape.receiver_slots).normalize()


def corrected_layout(m, outcome, rz_correction=False):
    """ Layout of a corrected homogeneous receiver state over the helper weight u.

    Returns:
        plain_parity: The designated qubit holds |phi> when u % 2 == plain_parity.
        other_op: 2x2 matrix, the designated qubit holds other_op |phi> on the other parity.
        phase_of: u -> phase angle of the helper string.
    """
    theta = rotation_angle(m, outcome.p1_branch, outcome.p1_index)
    dotted = outcome.p1_branch == const.BRANCH_DOTTED
    if dotted:
        phase_of = lambda u: theta * ((u + 1) // 2)
    else:
        phase_of = lambda u: theta * (u // 2)
    plain_parity = 1 if dotted else 0
    if rz_correction:
        return 1 - plain_parity, const.rz_matrix(-theta) @ const.MATRIX_X, phase_of
    return plain_parity, const.MATRIX_X @ const.rz_matrix(theta), phase_of


def expected_corrected_state(config, outcome, secret):
    """ Normalized receiver state after the correction plan, up to a global phase.

    Position dependent: alpha|0..0> + beta|1..1>.
    Homogeneous, y over the receivers other than the designated one, u = |y|:
        dotted s:          phase ceil(u/2) theta,   u odd -> |phi>,  u even -> X R(theta)|phi>;
        double dotted t:   phase floor(u/2) theta,  u even -> |phi>, u odd -> X R(theta)|phi>.
    With the R_z correction the designated qubit carries |phi> on the other parity and R(-theta) X |phi> instead.
    """
    shape = SystemShape(config.n, config.m)
    phi = np.array([secret.alpha, secret.beta], dtype=complex)
    if config.variant == const.VARIANT_POSITION_DEPENDENT:
        amps = {(0, ) * config.m: secret.alpha, (1, ) * config.m: secret.beta}
        return StateVector(shape, amps, shape.receiver_slots).normalize()

    plain_parity, other_op, phase_of = corrected_layout(config.m, outcome, getattr(config, "rz_correction", False))
    other = other_op @ phi
    vector_of = lambda u: phi if u % 2 == plain_parity else other
    return _split_form(shape, config.corrected_receiver, phase_of, vector_of)


def shared_secret_expansion(m, secret, shape=None):
    """ sum over (m-1)-fold products of |+>,|-> with an even count of |-> times |phi>, plus the odd ones times
    Z|phi>, with |+-> = (|0> +- |1>)/sqrt(2). Proportional to alpha|0..0> + beta|1..1>.
    """
    shape = shape or SystemShape(1, m)
    slots = shape.receiver_slots[:m]
    plus = np.array([1, 1]) * const.SQRT2_INV
    minus = np.array([1, -1]) * const.SQRT2_INV
    phi = np.array([secret.alpha, secret.beta], dtype=complex)
    last = StateVector(shape, {(0, ): phi[0], (1, ): phi[1]}, slots[-1:])
    flipped = StateVector(shape, {(0, ): phi[0], (1, ): -phi[1]}, slots[-1:])
    total = None
    for signs in itertools.product((0, 1), repeat=m - 1):
        state = flipped if sum(signs) % 2 else last
        for slot, s in zip(slots[:-1], signs):
            vec = minus if s else plus
            state = tensor_product(StateVector(shape, {(0, ): vec[0], (1, ): vec[1]}, (slot, )), state)
        total = state if total is None else total + state
    return total


def dense_step_operator(shape, step):
    """ Local matrix of one sub-step on the (position of the shifted walker, active coin) pair.

    Rows and columns run over position-major pairs (x, b). A position dependent coin reads the shifted walker's
    position; positions it does not list get the identity, the sparse path rejects them instead. Shifts out of
    range are dropped, so a too small shape shows up as lost norm.
    """
    pos_slot = "p{}".format(step.shifted_walker)
    positions = shape.local_values(pos_slot)
    size = len(positions)
    coin = np.zeros((2 * size, 2 * size), dtype=complex)
    for i, x in enumerate(positions):
        try:
            u = step.coin_rule.matrix_at(x)
        except exceptions.CoinTableError:
            u = const.MATRIX_I
        coin[2 * i:2 * i + 2, 2 * i:2 * i + 2] = u
    shift = np.zeros((2 * size, 2 * size), dtype=complex)
    for i in range(size):
        for b, d in ((0, 1), (1, -1)):
            if 0 <= i + d < size:
                shift[2 * (i + d) + b, 2 * i + b] = 1
    return shift @ coin


def dense_apply_step(shape, array, step):
    """ Apply one sub-step to a dense array over every slot of `shape`.
    """
    pos_axis = shape.slot_index("p{}".format(step.shifted_walker))
    coin_axis = shape.slot_index(step.coin_slot(shape))
    size = len(shape.local_values("p{}".format(step.shifted_walker)))
    op = dense_step_operator(shape, step).reshape(size, 2, size, 2)
    out = np.tensordot(op, array, axes=([2, 3], [pos_axis, coin_axis]))
    return np.moveaxis(out, [0, 1], [pos_axis, coin_axis])


def _dense_apply(shape, psi, steps):
    array = psi.to_dense() if isinstance(psi, StateVector) else np.asarray(psi, dtype=complex)
    for step in steps:
        array = dense_apply_step(shape, array, step)
    return array


def dense_stage_one(psi, coin_rules=None):
    shape = psi.shape
    rules = coin_rules or stage_one_rules(shape.n)
    return StateVector.from_dense(shape, _dense_apply(shape, psi, stage_one_steps(shape.n, rules)))


def dense_stage_two(psi, coin_rules):
    shape = psi.shape
    return StateVector.from_dense(shape, _dense_apply(shape, psi, stage_two_steps(shape.n, shape.m, coin_rules)))


def dense_step_matrix(shape, step, max_dim=4096):
    """ Full matrix of one sub-step on the whole space, for small shapes only.
    """
    dims = shape.dense_dims()
    dim = int(np.prod(dims))
    if dim > max_dim:
        raise exceptions.ValidationError("dense matrix of dimension {} exceeds {}".format(dim, max_dim))
    eye = np.eye(dim, dtype=complex).reshape(dims + (dim, ))
    return dense_apply_step(shape, eye, step).reshape(dim, dim)


def dense_pipeline(n, m, variant, secret):
    """ Dense rendition of both stages on the initial state.
    """
    psi = initial_state(n, m, secret)
    psi = dense_stage_one(psi)
    return dense_stage_two(psi, protocol_coin_rules(variant, m))
