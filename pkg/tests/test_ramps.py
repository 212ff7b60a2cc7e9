import json

import numpy as np
import pytest

from kzchain import RampSpec, ramp_value


def test_linear_crosses_critical_point():
    ramp = RampSpec(kind="linear", tau_q=16.0)
    assert ramp.value(-16.0) == pytest.approx(1.0)
    assert ramp.value(0.0) == 0.0
    assert ramp.value(ramp.t_start) == pytest.approx(10.0)


def test_waiting_plateau_duration():
    ramp = RampSpec(kind="waiting", tau_q=4.0, g_w=0.5, w=2.0)
    assert ramp.t_wait == pytest.approx(8.0)
    t_hit = -0.5 * 4.0
    assert ramp.value(t_hit) == pytest.approx(0.5)
    assert ramp.value(t_hit + 8.0) == pytest.approx(0.5)
    assert ramp.value(ramp.t_end) == pytest.approx(0.0)


def test_ramp_continuous_and_non_increasing():
    ramp = RampSpec(kind="waiting", tau_q=3.0, g_w=0.25, w=1.5)
    ts = np.linspace(ramp.t_start, ramp.t_end, 4001)
    gs = ramp_value(ramp, ts)
    assert np.all(np.diff(gs) <= 1e-12)
    assert np.max(np.abs(np.diff(gs))) < 2 * (ts[1] - ts[0]) / ramp.tau_q + 1e-12


def test_segments_cover_domain():
    ramp = RampSpec(kind="waiting", tau_q=2.0, g_w=0.5, w=4.0)
    segs = ramp.segments()
    assert segs[0][0] == ramp.t_start
    assert segs[-1][1] == ramp.t_end
    for (_, a, _), (b, _, _) in zip(segs[:-1], segs[1:]):
        assert a == b
    assert segs[1][2] is None  # plateau piece


def test_domain_errors():
    ramp = RampSpec(kind="linear", tau_q=16.0)
    with pytest.raises(ValueError):
        ramp.value(1.0)
    with pytest.raises(ValueError):
        ramp.value(ramp.t_start - 1.0)


@pytest.mark.parametrize("kwargs", [
    dict(kind="linear", tau_q=0.0),
    dict(kind="linear", tau_q=-1.0),
    dict(kind="waiting", tau_q=1.0, g_w=1.5),
    dict(kind="waiting", tau_q=1.0, g_w=0.0),
    dict(kind="waiting", tau_q=1.0, g_w=0.5, w=-1.0),
    dict(kind="linear", tau_q=1.0, g_start=0.5),
    dict(kind="sigmoid", tau_q=1.0),
])
def test_invalid_specs_rejected(kwargs):
    with pytest.raises(ValueError):
        RampSpec(**kwargs)


def test_json_roundtrip():
    ramp = RampSpec(kind="waiting", tau_q=7.5, g_w=0.3, w=2.5, g_start=12.0)
    assert RampSpec.from_json(ramp.to_json()) == ramp
    assert json.loads(ramp.to_json())["tau_q"] == 7.5


def test_config_roundtrip(tmp_path):
    ramp = RampSpec(kind="waiting", tau_q=16.0, g_w=0.5, w=2.0)
    path = tmp_path / "ramp.cfg"
    ramp.save(path)
    assert RampSpec.load(path) == ramp
    jpath = tmp_path / "ramp.json"
    ramp.save(jpath)
    assert RampSpec.load(jpath) == ramp
