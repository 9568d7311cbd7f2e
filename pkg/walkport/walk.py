# -*- coding:utf-8 -*-

"""
Walk module.
Coin operators, conditional shifts and their composition into the two evolution stages:
    stage one: for every walker i, coin c_i then the shift of walker i controlled by c_i;
    stage two: for j = 1..m in ascending order, coin r_j then the shift of walker 1 controlled by r_j.

Date:   2026/10/17
"""

import json

import numpy as np

from walkport import const
from walkport.hilbert import KIND_COIN, StateVector, apply_keyed_single_qubit
from walkport.utils import tools
from walkport.utils import logger
from walkport.utils import exceptions

__all__ = ("CoinRule", "StepSpec", "apply_coin", "apply_conditional_shift", "apply_step", "apply_steps",
           "stage_one", "stage_two", "stage_one_steps", "stage_two_steps", "stage_one_rules",
           "protocol_coin_rules", "circuit")


def _check_unitary(matrix, name):
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.shape != (2, 2):
        raise exceptions.ValidationError("coin {} must be a 2x2 matrix".format(name))
    if not np.allclose(matrix.conj().T @ matrix, const.MATRIX_I, rtol=0, atol=const.UNITARY_TOLERANCE):
        raise exceptions.ValidationError("coin {} is not unitary".format(name))
    return matrix


class CoinRule:
    """ A 2x2 unitary coin, either constant or selected by walker 1's current position.

    Args:
        kind: One of the `const.COIN_*` kinds.
        matrix: The constant 2x2 unitary, for every kind except PositionDependent.
        table: PositionDependent only, {position: 2x2 unitary}.
        default: PositionDependent only, unitary for unlisted positions. None means unlisted positions are rejected.
    """

    def __init__(self, kind, matrix=None, table=None, default=None):
        self._kind = kind
        if kind == const.COIN_POSITION_DEPENDENT:
            if not table:
                raise exceptions.ValidationError("position dependent coin needs a table")
            self._matrix = None
            self._table = {int(x): _check_unitary(u, "at position {}".format(x)) for x, u in table.items()}
            self._default = None if default is None else _check_unitary(default, "default")
        else:
            self._matrix = _check_unitary(matrix, kind)
            self._table = None
            self._default = None

    @classmethod
    def identity(cls):
        return cls(const.COIN_IDENTITY, const.MATRIX_I)

    @classmethod
    def hadamard(cls):
        return cls(const.COIN_HADAMARD, const.MATRIX_H)

    @classmethod
    def pauli_x(cls):
        return cls(const.COIN_PAULI_X, const.MATRIX_X)

    @classmethod
    def pauli_z(cls):
        return cls(const.COIN_PAULI_Z, const.MATRIX_Z)

    @classmethod
    def position_dependent(cls, table, default=None):
        return cls(const.COIN_POSITION_DEPENDENT, table=table, default=default)

    @property
    def kind(self):
        return self._kind

    @property
    def is_position_dependent(self):
        return self._kind == const.COIN_POSITION_DEPENDENT

    @property
    def table(self):
        return dict(self._table) if self._table else None

    def matrix_at(self, position=None):
        """ Unitary acting on the coin when walker 1 sits at `position`.

        Raise:
            CoinTableError: `position` is not listed and the rule has no default.
        """
        if not self.is_position_dependent:
            return self._matrix
        if position in self._table:
            return self._table[position]
        if self._default is not None:
            return self._default
        raise exceptions.CoinTableError("no coin for position {}, table covers {}".format(
            position, sorted(self._table)))

    @property
    def data(self):
        d = {"kind": self._kind}
        if self.is_position_dependent:
            d["table"] = {str(x): _matrix_data(u) for x, u in sorted(self._table.items())}
            d["default"] = None if self._default is None else _matrix_data(self._default)
        return d

    def __str__(self):
        return json.dumps(self.data)

    def __repr__(self):
        return "CoinRule({})".format(self._kind)


def _matrix_data(matrix):
    return [[tools.complex_to_pair(v) for v in row] for row in matrix]


class StepSpec:
    """ One sub-step: coin on `active_coin`, then the shift of `shifted_walker` controlled by it.

    Args:
        active_coin: Coin index, 0..n-1 for c1..cn and n..n+m-1 for r1..rm.
        shifted_walker: Walker whose position register moves, 1-based.
        coin_rule: CoinRule applied to the active coin.
    """

    def __init__(self, active_coin, shifted_walker, coin_rule):
        self.active_coin = active_coin
        self.shifted_walker = shifted_walker
        self.coin_rule = coin_rule

    def coin_slot(self, shape):
        return shape.coin_slot(self.active_coin)

    @property
    def data(self):
        return {
            "active_coin": self.active_coin,
            "shifted_walker": self.shifted_walker,
            "coin_rule": self.coin_rule.data
        }

    def __str__(self):
        return json.dumps(self.data)

    def __repr__(self):
        return "StepSpec(coin={}, walker={}, rule={})".format(self.active_coin, self.shifted_walker,
                                                            self.coin_rule.kind)


def _resolve_coin_slot(shape, slot):
    if isinstance(slot, str):
        if shape.slot_kind(slot) != KIND_COIN:
            raise exceptions.SubsystemError("slot {} is not a coin".format(slot))
        return slot
    return shape.coin_slot(slot)


def apply_coin(psi, slot, rule):
    """ Apply a coin rule to one coin slot.

    Args:
        psi: StateVector.
        slot: Coin index or coin slot name.
        rule: CoinRule; a position dependent rule reads walker 1's position, so `slot` must be c1 or a receiver coin.

    Returns:
        StateVector with the same norm.

    Raise:
        CoinTableError: A term sits at a position the rule does not cover.
    """
    shape = psi.shape
    slot = _resolve_coin_slot(shape, slot)
    pos_axis = None
    if rule.is_position_dependent:
        if shape.walker_of(slot) != 1:
            raise exceptions.SubsystemError("position dependent coins act on walker 1 only, got {}".format(slot))
        if "p1" not in psi.slots:
            raise exceptions.SubsystemError("position dependent coin needs the p1 register")
        pos_axis = psi.slots.index("p1")

    if pos_axis is None:
        return apply_keyed_single_qubit(psi, slot, lambda key: rule.matrix_at(None))
    return apply_keyed_single_qubit(psi, slot, lambda key: rule.matrix_at(key[pos_axis]))


def apply_conditional_shift(psi, walker, coin_slot):
    """ Move walker `walker` by +1 where the coin reads 0 and by -1 where it reads 1.

    Raise:
        PositionBoundError: A term leaves the walker's range, i.e. the SystemShape is too small.
    """
    shape = psi.shape
    coin_slot = _resolve_coin_slot(shape, coin_slot)
    pos_slot = "p{}".format(walker)
    pos_axis = psi.slots.index(pos_slot)
    coin_axis = psi.slots.index(coin_slot)
    bound = shape.pos_bound(walker)
    amps = {}
    for key, amp in psi.items():
        x = key[pos_axis] + (1 if key[coin_axis] == 0 else -1)
        if abs(x) > bound:
            raise exceptions.PositionBoundError("walker {} would move to {} outside [-{b}, {b}]".format(
                walker, x, b=bound))
        new_key = key[:pos_axis] + (x, ) + key[pos_axis + 1:]
        amps[new_key] = amp
    return StateVector(shape, amps, psi.slots)


def apply_step(psi, step):
    psi = apply_coin(psi, step.active_coin, step.coin_rule)
    return apply_conditional_shift(psi, step.shifted_walker, step.active_coin)


def apply_steps(psi, steps):
    for step in steps:
        psi = apply_step(psi, step)
    return psi


def stage_one_rules(n):
    """ Stage one uses identity coins on c1..cn.
    """
    return [CoinRule.identity() for _ in range(n)]


def protocol_coin_rules(variant, m):
    """ Stage two coin rules of a protocol variant.

    Args:
        variant: `const.VARIANT_HOMOGENEOUS` gives a Hadamard on every receiver coin;
            `const.VARIANT_POSITION_DEPENDENT` gives {+j: I, -j: X} on receiver coin r_j.
        m: Receiver count.
    """
    if variant == const.VARIANT_HOMOGENEOUS:
        return [CoinRule.hadamard() for _ in range(m)]
    if variant == const.VARIANT_POSITION_DEPENDENT:
        return [CoinRule.position_dependent({j: const.MATRIX_I, -j: const.MATRIX_X}) for j in range(1, m + 1)]
    raise exceptions.ValidationError("unknown variant: {}".format(variant))


def stage_one_steps(n, coin_rules):
    if len(coin_rules) != n:
        raise exceptions.ValidationError("stage one needs {} coin rules, got {}".format(n, len(coin_rules)))
    return [StepSpec(i, i + 1, rule) for i, rule in enumerate(coin_rules)]


def stage_two_steps(n, m, coin_rules):
    if len(coin_rules) != m:
        raise exceptions.ValidationError("stage two needs {} coin rules, got {}".format(m, len(coin_rules)))
    return [StepSpec(n + j, 1, rule) for j, rule in enumerate(coin_rules)]


def stage_one(psi, coin_rules):
    """ Coin then conditional shift on (walker i, c_i) for every walker.
    """
    if psi.slots != psi.shape.slots:
        raise exceptions.SubsystemError("stage one needs the full system state")
    psi = apply_steps(psi, stage_one_steps(psi.shape.n, coin_rules))
    logger.debug("stage one support:", len(psi))
    return psi


def stage_two(psi, coin_rules):
    """ Coin on r_j then the shift of walker 1 controlled by r_j, for j = 1..m.
    """
    if psi.slots != psi.shape.slots:
        raise exceptions.SubsystemError("stage two needs the full system state")
    psi = apply_steps(psi, stage_two_steps(psi.shape.n, psi.shape.m, coin_rules))
    logger.debug("stage two support:", len(psi))
    return psi


def circuit(shape, variant):
    """ Both stages of a protocol variant as JSON-ready data.
    """
    one = stage_one_steps(shape.n, stage_one_rules(shape.n))
    two = stage_two_steps(shape.n, shape.m, protocol_coin_rules(variant, shape.m))
    return {
        "shape": shape.data,
        "variant": variant,
        "stage_one": [s.data for s in one],
        "stage_two": [s.data for s in two]
    }
