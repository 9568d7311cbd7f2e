# -*- coding:utf-8 -*-

"""
Some constants.

Date:   2026/10/17
"""

import math

import numpy as np


# Protocol variants.
VARIANT_HOMOGENEOUS = "homogeneous"  # Hadamard coins on every receiver coin.
VARIANT_POSITION_DEPENDENT = "position-dependent"  # {+j: I, -j: X} coin tables.
VARIANTS = (VARIANT_HOMOGENEOUS, VARIANT_POSITION_DEPENDENT)

# Coin rule kinds.
COIN_IDENTITY = "Identity"
COIN_HADAMARD = "Hadamard"
COIN_PAULI_X = "PauliX"
COIN_PAULI_Z = "PauliZ"
COIN_POSITION_DEPENDENT = "PositionDependent"

# Measurement modes.
MODE_ENUMERATE = "enumerate"
MODE_SAMPLE = "sample"
MODES = (MODE_ENUMERATE, MODE_SAMPLE)

# Security views.
VIEW_CONDITIONAL = "conditional"
VIEW_ENSEMBLE = "ensemble"
VIEWS = (VIEW_CONDITIONAL, VIEW_ENSEMBLE)

# Sector weight check of a security scenario.
WEIGHTS_PASS = "pass"
WEIGHTS_FAIL = "fail"
WEIGHTS_NOT_APPLICABLE = "not-applicable"  # sectors indistinguishable to the probe
WEIGHT_CHECKS = (WEIGHTS_PASS, WEIGHTS_FAIL, WEIGHTS_NOT_APPLICABLE)

# Correction operator labels, applied right-to-left on kets ("ZX" = sigma_z * sigma_x).
OP_I = "I"
OP_Z = "Z"
OP_X = "X"
OP_ZX = "ZX"
OP_RZ = "RZ"  # R_z(-theta) * sigma_z^omega, opt-in only.

# p1 outcome families of the Fourier basis.
BRANCH_DOTTED = 0
BRANCH_DOUBLE_DOTTED = 1

# Tolerances.
PRUNE_TOLERANCE = 1e-14  # amplitudes below this magnitude leave the support
NORM_TOLERANCE = 1e-12
UNITARY_TOLERANCE = 1e-12
HERMITIAN_TOLERANCE = 1e-12
PSD_TOLERANCE = 1e-10
COMPARE_TOLERANCE = 1e-10
FIDELITY_TOLERANCE = 1e-10

# Phases used by the phase-blindness checks (radians).
DEFAULT_PHASES = (0.0, math.pi / 4, math.pi / 2, math.pi, 2.1)

SQRT2_INV = 1 / math.sqrt(2)

MATRIX_I = np.eye(2, dtype=complex)
MATRIX_X = np.array([[0, 1], [1, 0]], dtype=complex)
MATRIX_Z = np.array([[1, 0], [0, -1]], dtype=complex)
MATRIX_H = np.array([[1, 1], [1, -1]], dtype=complex) * SQRT2_INV


def rz_matrix(theta):
    """ Phase rotation diag(1, e^{i theta}), i.e. R_z(theta) up to a global phase.
    """
    return np.array([[1, 0], [0, np.exp(1j * theta)]], dtype=complex)
