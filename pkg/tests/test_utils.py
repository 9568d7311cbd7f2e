# -*- coding:utf-8 -*-

import json

import pytest

from walkport import const
from walkport import version_string
from walkport.error import Error
from walkport.config import config, THREADS_ENV
from walkport.tasks import ParallelTask
from walkport.utils import tools
from walkport.utils import validators
from walkport.utils import exceptions


def test_int_field():
    assert validators.int_field(" 3 ") == 3
    assert validators.int_field({"n": 2}, "n", minimum=1) == 2
    assert validators.int_field({}, "seed", required=False) is None
    for bad in ("2.5", "x", True, None):
        with pytest.raises(exceptions.ValidationError):
            validators.int_field(bad)
    with pytest.raises(exceptions.ValidationError):
        validators.int_field("1", minimum=2)
    with pytest.raises(exceptions.ValidationError):
        validators.int_field({}, "n")


def test_complex_field():
    assert validators.complex_field("0.6,0") == 0.6
    assert validators.complex_field("0,-0.8") == -0.8j
    assert validators.complex_field([0.1, 0.2]) == complex(0.1, 0.2)
    assert validators.complex_field(0.5) == 0.5
    for bad in ("a,b", "1,2,3", "", {}):
        with pytest.raises(exceptions.ValidationError):
            validators.complex_field(bad)


def test_list_and_choice_fields():
    assert validators.list_field("r1, s2") == ["r1", "s2"]
    assert validators.list_field('["r1"]') == ["r1"]
    assert validators.int_list_field("1,3", minimum=1, maximum=3) == [1, 3]
    with pytest.raises(exceptions.ValidationError):
        validators.int_list_field("1,4", maximum=3)
    with pytest.raises(exceptions.ValidationError):
        validators.list_field(5)
    assert validators.choice_field("sample", const.MODES) == "sample"
    with pytest.raises(exceptions.ValidationError):
        validators.choice_field("weak", const.MODES, name="mode")


def test_tools():
    assert tools.complex_to_pair(1 - 2j) == [1.0, -2.0]
    assert tools.complex_to_pair(-1e-17) == [0.0, 0.0]
    assert tools.clean_float(0.1 + 0.2) == 0.3
    assert len(tools.get_uuid1()) == 36
    assert tools.get_utc_datetime_str().endswith("Z")


def test_error_findings():
    e = Error("fidelity below tolerance", "corrected", 0.5)
    assert e.data == {"check": "corrected", "msg": "fidelity below tolerance", "value": 0.5}
    assert str(e) == "corrected: fidelity below tolerance"


def test_exception_codes():
    assert str(exceptions.BoundaryError()) == "[422] Probe covers every remaining participant"
    assert exceptions.SubsystemError("x").code == 400
    assert isinstance(exceptions.ShapeMismatchError(), exceptions.ValidationError)


def test_config_defaults_and_file(tmp_path, monkeypatch):
    monkeypatch.delenv(THREADS_ENV, raising=False)
    config.loads()
    assert config.threads == 1
    assert config.seed == 0
    assert config.fidelity_tolerance == const.FIDELITY_TOLERANCE
    assert config.security_phases == const.DEFAULT_PHASES
    assert config.security_view == const.VIEW_ENSEMBLE

    path = tmp_path / "config.json"
    path.write_text(json.dumps({"THREADS": 3, "TOLERANCE": {"compare": 1e-8}, "name": "desk run"}))
    config.loads(str(path))
    assert config.threads == 3
    assert config.compare_tolerance == 1e-8
    assert config.prune_tolerance == const.PRUNE_TOLERANCE
    assert config.name == "desk run"


def test_config_rejects_bad_values(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"SECURITY": {"view": "oracle"}}))
    with pytest.raises(exceptions.ValidationError):
        config.loads(str(path))
    with pytest.raises(exceptions.ValidationError):
        config.loads(str(tmp_path / "missing.json"))


def test_environment_caps_threads(tmp_path, monkeypatch):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"THREADS": 8}))
    monkeypatch.setenv(THREADS_ENV, "3")
    config.loads(str(path))
    assert config.threads == 3
    monkeypatch.setenv(THREADS_ENV, "5")
    config.loads()
    assert config.threads == 1
    monkeypatch.setenv(THREADS_ENV, "0")
    with pytest.raises(exceptions.ValidationError):
        config.loads()
    monkeypatch.delenv(THREADS_ENV)


@pytest.mark.parametrize("workers", [1, 4])
def test_parallel_map_keeps_input_order(workers):
    assert ParallelTask.map(lambda x: x * x, range(20), workers=workers) == [x * x for x in range(20)]
    assert ParallelTask.map(str, [], workers=workers) == []


def test_version_string():
    assert version_string() == "0.3.0"


def test_raw_values_are_labelled_by_name():
    assert validators.choice_field("homogeneous", const.VARIANTS, name="variant") == "homogeneous"
    assert validators.complex_field("0,1", name="beta") == 1j
    assert validators.int_field("4", minimum=2, name="m") == 4
    with pytest.raises(exceptions.ValidationError, match="`variant` must be one of"):
        validators.choice_field("mixed", const.VARIANTS, name="variant")
    with pytest.raises(exceptions.ValidationError, match="`alpha` must be `RE,IM`"):
        validators.complex_field("a,b", name="alpha")
    with pytest.raises(exceptions.ValidationError, match="`m` must be >= 2"):
        validators.int_field("1", minimum=2, name="m")


def test_config_accepts_a_security_view(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"SECURITY": {"view": "conditional", "phases": [0.0, 1.0]}}))
    config.loads(str(path))
    assert config.security_view == const.VIEW_CONDITIONAL
    assert config.security_phases == (0.0, 1.0)
