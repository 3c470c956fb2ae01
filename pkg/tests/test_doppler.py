"""Doppler row recovery, phase unwrapping and vibration extraction."""

import numpy as np
import pytest

from radarvitals.config import RadarConfig, build_range_grid
from radarvitals.doppler import (build_range_slow_time_map, extract_phase,
                                 fast_time_dictionary, partial_dft,
                                 recover_doppler_rows, unwrap_phase)
from radarvitals.scene import Tones, snap_scene
from radarvitals.synthesis import signal_matrix

CFG = RadarConfig()
GRID = build_range_grid(CFG)


def test_dictionary_columns_are_orthogonal():
    A = fast_time_dictionary(200, 100)
    gram = A.conj().T @ A
    np.testing.assert_allclose(gram, 200 * np.eye(100), atol=1e-9)


def test_random_partial_dictionaries_orthogonal():
    # A_S^H A_S = N*I_K for random supports
    rng = np.random.default_rng(0)
    for _ in range(100):
        N = 2 * int(rng.integers(4, 128))
        K = int(rng.integers(1, N // 2))
        bins = rng.choice(N // 2, size=K, replace=False)
        A_S = fast_time_dictionary(N, N // 2)[:, bins]
        gram = A_S.conj().T @ A_S
        assert np.abs(gram - N * np.eye(K)).max() < 1e-12 * N


def test_recovery_matches_dense_least_squares():
    # closed-form (1/N) F_S Y vs numpy lstsq on the explicit dictionary
    rng = np.random.default_rng(1)
    for _ in range(100):
        N = 2 * int(rng.integers(4, 64))
        K = int(rng.integers(1, min(8, N // 2)))
        L = int(rng.integers(2, 12))
        bins = rng.choice(N // 2, size=K, replace=False)
        Y = rng.standard_normal((N, L)) + 1j * rng.standard_normal((N, L))
        fast = recover_doppler_rows(Y, bins, N)
        A_S = fast_time_dictionary(N, N // 2)[:, bins]
        dense = np.linalg.lstsq(A_S, Y, rcond=None)[0]
        assert np.abs(fast - dense).max() / max(np.abs(dense).max(), 1e-30) <= 1e-9


def test_partial_dft_row_convention():
    bins = np.array([3, 10])
    F = partial_dft(bins, 200)
    n = np.arange(1, 201)
    np.testing.assert_allclose(F[0], np.exp(-2j * np.pi * 3 * n / 200), rtol=1e-12)


def test_recovery_exact_on_noiseless_scene():
    scene = snap_scene([("human", 0.5, 2.0, Tones(((0.001, 0.25),)))],
                       GRID, f_s=CFG.f_s)
    frames = np.arange(1, 51)
    Y = signal_matrix(scene, CFG, frames)
    x_hat = recover_doppler_rows(Y, scene.bins, CFG.N)
    obj = scene.objects[0]
    k = 4 * np.pi / CFG.lambda_max
    v = obj.vibration.sample(frames, CFG.f_s)
    expected = obj.x_m * np.exp(1j * k * (obj.d_effective + v))
    np.testing.assert_allclose(x_hat[0], expected, rtol=1e-10)


def test_in_phase_recovery_is_half_of_complex():
    # with M = N/2 the real part of the data halves the estimate exactly
    scene = snap_scene([("human", 0.5, 2.0, Tones(((0.001, 0.25),)))],
                       GRID, f_s=CFG.f_s)
    frames = np.arange(1, 51)
    Y = signal_matrix(scene, CFG, frames)
    full = recover_doppler_rows(Y, scene.bins, CFG.N)
    half = recover_doppler_rows(Y.real, scene.bins, CFG.N)
    np.testing.assert_allclose(half, 0.5 * full, rtol=1e-9, atol=1e-12)


def test_unwrap_matches_numpy_on_smooth_signals():
    rng = np.random.default_rng(2)
    for _ in range(20):
        truth = np.cumsum(rng.uniform(-3.0, 3.0, size=200))
        wrapped = np.angle(np.exp(1j * truth))
        ours = unwrap_phase(wrapped)
        ref = np.unwrap(wrapped)
        # both reconstructions agree up to boundary convention at diff = pi
        np.testing.assert_allclose(ours, ref, atol=1e-9)


def test_unwrap_recovers_linear_ramp():
    truth = 0.4 + 2.9 * np.arange(300)
    wrapped = np.angle(np.exp(1j * truth))
    got = unwrap_phase(wrapped)
    np.testing.assert_allclose(np.diff(got), 2.9, atol=1e-9)
    assert got[0] == pytest.approx(np.angle(np.exp(0.4j)))


def test_unwrap_first_sample_passthrough_and_shape():
    w = np.array([[0.1, 0.2], [3.0, -3.0]])
    out = unwrap_phase(w)
    assert out.shape == w.shape
    np.testing.assert_allclose(out[:, 0], w[:, 0])
    # diff 3.0 -> -3.0 is -6.0, mapped into (-pi, pi] as 2*pi - 6.0
    assert out[1, 1] == pytest.approx(3.0 + (2 * np.pi - 6.0))


def test_extract_phase_transposes_and_flags_zero_columns():
    l = np.arange(1, 101)
    clean = np.exp(1j * 0.05 * l)
    holed = clean.copy()
    holed[10] = 0.0
    vm = extract_phase(np.vstack([clean, holed]))
    assert vm.data.shape == (100, 2)
    assert vm.flagged_columns == (1,)
    np.testing.assert_allclose(vm.data[:, 0], 0.05 * l, atol=1e-9)
    # the zero sample carries the previous wrapped angle forward
    assert vm.data[10, 1] == pytest.approx(vm.data[9, 1])


def test_range_slow_time_map_covers_all_bins():
    scene = snap_scene([("human", 0.5, 2.0, Tones(((0.001, 0.25),)))],
                       GRID, f_s=CFG.f_s)
    Y = signal_matrix(scene, CFG, np.arange(1, 21))
    rst = build_range_slow_time_map(Y, GRID)
    assert rst.data.shape == (100, 20)
    peak = np.abs(rst.data).mean(axis=1).argmax()
    assert peak == 47
    np.testing.assert_allclose(rst.distances, GRID.d_m)
