"""Smoke tests for the python extension."""

import math

import numpy as np
import pytest

import semcom


def test_cosine_and_relrep():
    assert semcom.cosine_sim(np.array([1.0, 0.0]), np.array([1.0, 0.0])) == pytest.approx(1.0)
    assert semcom.cosine_sim(np.array([1.0, 0.0]), np.array([0.0, 1.0])) == pytest.approx(0.0)
    # degenerate vectors score zero
    assert semcom.cosine_sim(np.array([1.0, 0.0]), np.array([0.0, 0.0])) == 0.0

    anchors = semcom.AnchorSet()
    anchors.id = "s"
    anchors.anchor_ids = ["a", "b"]
    anchors.anchors = np.array([[1.0, 0.0], [0.0, 1.0]])
    rep = semcom.encode_relative(np.array([1.0, 1.0]), anchors)
    assert rep.scores == pytest.approx([1 / math.sqrt(2)] * 2)


def test_lambert_identity():
    for x in [0.0, 1e-6, 0.5, 1.0, 10.0, 1e6]:
        w = semcom.lambert_w0(x)
        assert w * math.exp(w) == pytest.approx(x, abs=1e-12 * max(1.0, x))
    with pytest.raises(ValueError):
        semcom.lambert_w0(-1.0)


def test_closed_forms_clamp():
    phys = semcom.PhysParams()
    ctrl = semcom.ControlParams()
    assert semcom.optimal_rate(0.0, 0.0, 50, 1e-11, phys, ctrl) == phys.rate_min_bps
    assert semcom.optimal_frequency(0.0, 0.0, 1e7, 2e9, phys, ctrl) == phys.freq_min_hz


def _tiny_space():
    space = semcom.ActionSpace()
    space.encoders = [
        semcom.EncoderProfile("small", 1e7, 64),
        semcom.EncoderProfile("large", 5e7, 64),
    ]
    a10 = semcom.AnchorOption()
    a10.id, a10.size = "10", 10
    a50 = semcom.AnchorOption()
    a50.id, a50.size = "50", 50
    space.anchor_options = [a10, a50]
    space.accuracy = np.array([[0.7, 0.8], [0.88, 0.96]])
    return space


def test_run_is_deterministic():
    cfg = semcom.parse_config("")
    cfg.horizon = 200
    cfg.seed = 9
    space = _tiny_space()
    a = semcom.run(cfg, space)
    b = semcom.run(cfg, space)
    assert np.array_equal(a["L"], b["L"])
    assert np.array_equal(a["R"], b["R"])
    assert len(a["L"]) == 200
    assert a["averages"]["avg_latency"] == pytest.approx(float(np.mean(a["L"])))


def test_decide_prefers_accuracy_under_pressure():
    space = _tiny_space()
    phys = semcom.PhysParams()
    ctrl = semcom.ControlParams()
    env = semcom.SlotEnv()
    env.h2, env.f_max_hz = 1e-11, 2.5e9
    decision = semcom.decide(semcom.QueueState(0.0, 1e15, 0.0), env, space, phys, ctrl)
    assert decision.encoder_id == "large"
    assert decision.anchor_id == "50"


def test_stitching_pipeline_runs():
    dataset = semcom.generate_dataset(4, 20, 16, 0.05, 3)
    enc = semcom.make_synthetic_encoder("e", 16, 1.0, 0.0, 5)
    table = semcom.build_accuracy_profile([enc], [1e7], [8], dataset, [1], 1e-3)
    assert table.accuracy.shape == (1, 1)
    assert 0.0 <= table.accuracy[0, 0] <= 1.0
    space = semcom.to_action_space(table)
    space.validate()
