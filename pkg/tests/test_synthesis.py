"""Beat-signal synthesis, noise statistics and chirp averaging."""

import numpy as np
import pytest

from radarvitals.config import RadarConfig, build_range_grid
from radarvitals.errors import SceneError
from radarvitals.scene import Static, Tones, snap_scene
from radarvitals.synthesis import (noise_variance, preprocess_average,
                                   signal_matrix, synth_measurement_series,
                                   synth_raw_cube, window_measurement)

CFG = RadarConfig()
GRID = build_range_grid(CFG)


def small_scene():
    return snap_scene([
        ("human", 0.5, 2.0, Tones(((0.001, 0.25), (0.0002, 1.2)))),
        ("static_clutter", 1.0, 2.3, Static()),
    ], GRID, f_s=CFG.f_s)


def brute_force_signal(scene, cfg, frames):
    """Element-wise loop oracle for the beat-signal model."""
    out = np.zeros((cfg.N, len(frames)), dtype=complex)
    for li, l in enumerate(frames):
        for obj in scene.objects:
            v = obj.vibration.sample(np.array([l]), cfg.f_s)[0]
            psi = (4 * np.pi / cfg.lambda_max) * (obj.d_effective + v)
            for n in range(1, cfg.N + 1):
                out[n - 1, li] += obj.x_m * np.exp(
                    1j * (2 * np.pi * obj.bin * n / cfg.N + psi))
    return out


def test_signal_matrix_matches_brute_force_oracle():
    scene = small_scene()
    frames = np.array([1, 2, 7, 100])
    got = signal_matrix(scene, CFG, frames)
    np.testing.assert_allclose(got, brute_force_signal(scene, CFG, frames),
                               rtol=1e-10, atol=1e-12)


def test_noise_variance_definition():
    assert noise_variance(0.0) == 1.0
    assert noise_variance(10.0) == pytest.approx(0.1)
    assert noise_variance(-10.0) == pytest.approx(10.0)


@pytest.mark.parametrize("G", [2, 50, 150])
def test_chirp_averaging_reduces_variance_by_G(G):
    # empirical single-chirp vs averaged variance ratio should equal G
    cfg = RadarConfig(G=G, T_win=1.0)
    scene = snap_scene([], build_range_grid(cfg))
    cube = synth_raw_cube(scene, cfg, cfg.L, snr_db=0.0, seed=7)
    single = cube[:, 0, :]
    averaged = cube.mean(axis=1)
    ratio = np.var(single) / np.var(averaged)
    assert abs(ratio - G) / G < 0.10


def test_measurement_series_noise_matches_averaged_cube_statistics():
    cfg = RadarConfig(T_win=1.0)
    scene = snap_scene([], build_range_grid(cfg))
    series = synth_measurement_series(scene, cfg, cfg.L, snr_db=0.0, seed=3)
    # per-element variance should be sigma^2/G = 1/150
    assert np.var(series) == pytest.approx(1.0 / 150.0, rel=0.1)


def test_same_seed_reproduces_same_noise():
    scene = small_scene()
    a = synth_measurement_series(scene, CFG, CFG.L, 0.0, seed=11)
    b = synth_measurement_series(scene, CFG, CFG.L, 0.0, seed=11)
    c = synth_measurement_series(scene, CFG, CFG.L, 0.0, seed=12)
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, c)


def test_noiseless_series_equals_signal_matrix():
    scene = small_scene()
    series = synth_measurement_series(scene, CFG, CFG.L, snr_db=np.inf, seed=0)
    np.testing.assert_allclose(
        series, signal_matrix(scene, CFG, np.arange(1, CFG.L + 1)), rtol=1e-12)


def test_window_slicing_bounds_and_alignment():
    scene = small_scene()
    cfg = RadarConfig(T_win=1.0)
    series = synth_measurement_series(scene, cfg, 3 * cfg.L, np.inf, 0)
    w = window_measurement(series, 101, cfg)
    assert w.window_start_frame == 101
    np.testing.assert_array_equal(w.data, series[:, 100:100 + cfg.L])
    assert np.all(w.in_phase == w.data.real)
    with pytest.raises(SceneError):
        window_measurement(series, 0, cfg)
    with pytest.raises(SceneError):
        window_measurement(series, 3 * cfg.L - cfg.L + 2, cfg)


def test_preprocess_average_equals_mean_over_chirps():
    cfg = RadarConfig(G=4, T_win=0.5)
    scene = snap_scene([], build_range_grid(cfg))
    cube = synth_raw_cube(scene, cfg, cfg.L + 10, 0.0, seed=1)
    m = preprocess_average(cube, 3, cfg)
    np.testing.assert_allclose(m.data, cube[:, :, 2:2 + cfg.L].mean(axis=1))
