# -*- coding:utf-8 -*-

"""
Shared fixtures.
"""

import numpy as np
import pytest

from walkport.config import config
from walkport.hilbert import StateVector
from walkport.protocol import SecretSpec


@pytest.fixture(autouse=True)
def default_settings():
    """ Every test starts and ends with the built-in settings. """
    config.loads()
    yield
    config.loads()


@pytest.fixture
def rng():
    return np.random.default_rng(20261017)


@pytest.fixture
def secret():
    """ Real amplitudes, |alpha|^2 = 0.36. """
    return SecretSpec(0.6, 0.8)


@pytest.fixture
def complex_secret():
    return SecretSpec.normalized(0.3 + 0.4j, -0.5 + 0.2j)


def assert_allclose_complex(a, b, atol=1e-10):
    """ Assert two complex arrays are close, real and imaginary parts separately. """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    np.testing.assert_allclose(a.real, b.real, rtol=0, atol=atol, err_msg="Real parts differ")
    np.testing.assert_allclose(a.imag, b.imag, rtol=0, atol=atol, err_msg="Imaginary parts differ")


def random_secrets(count, seed=20261017):
    """ `count` Haar-random secrets, reproducible. """
    generator = np.random.default_rng(seed)
    return [SecretSpec.random(generator) for _ in range(count)]


def random_state(shape, rng, positions, terms=12):
    """ Normalized random state over every slot of `shape`; `positions` maps each position slot to its values. """
    amps = {}
    for _ in range(terms):
        key = tuple(int(rng.choice(positions[s])) if s in positions else int(rng.integers(2)) for s in shape.slots)
        amps[key] = complex(rng.normal(), rng.normal())
    return StateVector(shape, amps).normalize()
