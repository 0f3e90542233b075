import json
import math

import numpy as np
import pytest

from switchsynth.jsonio import dumps, format_float


def test_format_float_round_trips_17_digits():
    rng = np.random.default_rng(1)
    for _ in range(1000):
        value = float(rng.standard_normal() * 10.0 ** rng.integers(-12, 12))
        assert float(format_float(value)) == value


def test_format_float_fixed_cases():
    assert format_float(0.5) == "0.5"
    assert format_float(1.0) == "1"
    assert format_float(-2.25) == "-2.25"
    assert format_float(1e-300) == "1e-300"


def test_format_float_canonicalizes_negative_zero():
    assert format_float(0.0) == "0"
    assert format_float(-0.0) == "0"


def test_format_float_rejects_non_finite():
    for bad in (math.inf, -math.inf, math.nan):
        with pytest.raises(ValueError):
            format_float(bad)


def test_dumps_layout():
    doc = {
        "name": "demo",
        "count": 3,
        "ok": True,
        "values": [1.0, -0.0, 2.5],
        "nested": {"empty_list": [], "none": None},
        "records": [{"a": 1}, {"a": 2}],
    }
    text = dumps(doc)
    assert text.endswith("\n")
    assert '"values": [1, 0, 2.5]' in text          # scalar lists stay inline
    assert '"ok": true' in text                     # bools are not ints
    assert '"a": 1' in text                         # dict lists go multiline
    assert text.index('"name"') < text.index('"count"')  # insertion order kept
    assert json.loads(text) == {
        "name": "demo", "count": 3, "ok": True, "values": [1.0, 0.0, 2.5],
        "nested": {"empty_list": [], "none": None},
        "records": [{"a": 1}, {"a": 2}],
    }


def test_dumps_escapes_strings():
    text = dumps({"key with \"quotes\"": "line\nbreak"})
    assert json.loads(text) == {'key with "quotes"': "line\nbreak"}


def test_dumps_is_deterministic():
    doc = {"floats": [math.pi, math.e, 1 / 3], "flag": False}
    assert dumps(doc) == dumps(doc)
    assert dumps(json.loads(dumps(doc))) == dumps(doc)
