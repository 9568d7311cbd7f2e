# -*- coding:utf-8 -*-

import pytest

from walkport.verify import Check, IdentitySuite


@pytest.mark.parametrize("n, m", [(1, 2), (2, 2), (2, 3)])
def test_identity_suite_passes(n, m, complex_secret):
    checks = IdentitySuite.run(n, m, complex_secret)
    failed = [c.data for c in checks if not c.passed]
    assert failed == []
    names = [c.name for c in checks]
    assert names[:2] == ["closed-form-homogeneous", "closed-form-position-dependent"]
    assert "regrouped-final-state" in names
    assert "reconstruction-position-dependent" in names


@pytest.mark.slow
@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("m", [2, 3, 4])
def test_identity_suite_grid(n, m, secret):
    assert all(c.passed for c in IdentitySuite.run(n, m, secret))


def test_check_data():
    c = Check("dense-homogeneous", 2, 3, True, 1e-17)
    assert c.data == {"name": "dense-homogeneous", "n": 2, "m": 3, "pass": True, "value": 0.0}
