"""Smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import ttvsr


def test_unfold_fold_identity():
    rng = np.random.default_rng(1)
    x = rng.random((2, 8, 8), dtype=np.float32)
    tokens = ttvsr.unfold(x, kernel=4, stride=4)
    assert tokens.shape == (2, 2, 2 * 16)
    back = ttvsr.fold(tokens, 8, 8, kernel=4, stride=4)
    np.testing.assert_array_equal(back, x)


def test_unfold_matches_numpy_reshape():
    x = np.arange(16, dtype=np.float32).reshape(1, 4, 4)
    tokens = ttvsr.unfold(x, kernel=2, stride=2)
    np.testing.assert_allclose(tokens[0, 0], [0, 1, 4, 5])


def test_pixel_shuffle_and_pool():
    x = np.arange(4, dtype=np.float32).reshape(4, 1, 1)
    s = ttvsr.pixel_shuffle(x, 2)
    np.testing.assert_allclose(s[0], [[0, 1], [2, 3]])
    p = ttvsr.avg_pool(np.ones((1, 4, 4), dtype=np.float32) * 3.0, 2)
    np.testing.assert_allclose(p, np.full((1, 2, 2), 3.0))


def test_bicubic_keeps_constants():
    x = np.full((3, 8, 8), 0.25, dtype=np.float32)
    up = ttvsr.bicubic_resize(x, 4, "up")
    assert up.shape == (3, 32, 32)
    np.testing.assert_allclose(up, 0.25, atol=1e-6)


def test_attention_select_and_tie_break():
    q = np.array([1.0, 0.0], dtype=np.float32)
    h, s = ttvsr.select(q, [np.array([0.0, 1.0], np.float32),
                            np.array([2.0, 0.0], np.float32),
                            np.array([1.0, 0.0], np.float32)])
    assert h == 1  # earliest max wins
    assert s == pytest.approx(1.0)
    out = ttvsr.attend(q, h, s, [np.ones(2, np.float32)] * 3)
    assert out == pytest.approx([1.0, 0.0, 1.0, 1.0])


def test_trajectories_static():
    stack = ttvsr.LocationMapStack.initial(8, 8)
    zero = np.zeros((2, 8, 8), dtype=np.float32)
    stack.update(zero)
    stack.update(zero)
    start, pts = stack.trajectory_of(3, 4)
    assert start == 0
    assert pts.shape == (3, 2)
    np.testing.assert_allclose(pts, [[3, 4]] * 3)
    _, oracle_pts = ttvsr.oracle_track([zero, zero], 3, 4)
    np.testing.assert_allclose(oracle_pts, pts)


def test_flow_roundtrip(tmp_path):
    flow = np.random.default_rng(2).random((2, 4, 6)).astype(np.float32)
    path = tmp_path / "f.flo"
    ttvsr.write_flo(flow, path)
    np.testing.assert_array_equal(ttvsr.read_flo(path), flow)


def test_metrics():
    a = np.random.default_rng(3).random((3, 16, 16)).astype(np.float32)
    assert math.isinf(ttvsr.psnr(a, a))
    assert ttvsr.ssim(a, a) == pytest.approx(1.0)
    b = (a + 0.1).astype(np.float32)
    assert ttvsr.psnr(a, b) == pytest.approx(20.0, abs=1e-5)
    assert ttvsr.charbonnier([a], [a]) == pytest.approx(1e-8)


def test_bench_costs():
    shape = ttvsr.AttnShape(T=10, C=4, H=16, W=16, Dh=4, Dw=4)
    assert ttvsr.cost_vanilla(shape) == 10240
    assert ttvsr.cost_trajectory(shape) == 640
    assert ttvsr.measure_similarity_macs(shape, "trajectory") == 640
    assert ttvsr.measure_similarity_macs(shape, "vanilla") == 10240


def test_zero_weight_pipeline_is_bicubic():
    cfg = ttvsr.test_config()
    frames = ttvsr.synth_sequence("pan", 3, 16, 16, seed=42)
    weights = ttvsr.zero_weights(cfg)
    out = ttvsr.run_sequence(frames, weights, cfg)
    assert len(out) == 3
    for frame, sr in zip(frames, out):
        assert sr.shape == (3, 64, 64)
        up = ttvsr.bicubic_resize(frame, 4, "up")
        np.testing.assert_allclose(sr, up, atol=1e-6)


def test_seeded_pipeline_shapes_and_weights_io(tmp_path):
    cfg = ttvsr.test_config()
    weights = ttvsr.seeded_weights(cfg, 42)
    names = weights.tensor_names()
    assert names[0] == "phi.conv_in.weight"
    assert weights.tensor("phi.conv_in.weight").shape == (16, 3, 3, 3)

    path = tmp_path / "w.ttwb"
    ttvsr.save_weights(weights, path)
    loaded = ttvsr.load_weights(path, cfg)
    np.testing.assert_array_equal(loaded.tensor("mix.weight"),
                                  weights.tensor("mix.weight"))

    frames = ttvsr.synth_sequence("static", 2, 16, 16, seed=1)
    out = ttvsr.run_sequence(frames, loaded, cfg)
    assert out[0].shape == (3, 64, 64)


def test_error_mapping():
    with pytest.raises(ValueError):
        ttvsr.avg_pool(np.ones((1, 5, 5), dtype=np.float32), 2)
    with pytest.raises(ValueError):
        ttvsr.AttnShape(T=1, C=1, H=5, W=5, Dh=2, Dw=2)
