"""Synthetic multi-object beat-signal generation and chirp averaging.

Conventions used throughout the toolkit: the fast-time index n runs 1..N,
the synthesis atom for bin m is exp(+j*2*pi*m*n/N), and every analysis DFT
uses the matching conjugate exp(-j*2*pi*m*n/N). Slow-time frame indices are
global and 1-based.
"""

from dataclasses import dataclass

import numpy as np

from .config import RadarConfig
from .scene import Scene
from .errors import SceneError


@dataclass
class Measurement:
    """One monitoring window: complex N x L matrix, fast-time by slow-time."""

    data: np.ndarray
    window_start_frame: int  # 1-based global index of the first frame
    config: RadarConfig

    @property
    def in_phase(self) -> np.ndarray:
        """Single-channel (I) view of the window."""
        return self.data.real


def noise_variance(snr_db: float) -> float:
    """Per-element complex noise variance; SNR is defined as 1/sigma^2."""
    return 10.0 ** (-snr_db / 10.0)


def _rng(seed: int) -> np.random.Generator:
    # Philox: counter-based, portable, cheap to key per (scene, seed) job.
    return np.random.Generator(np.random.Philox(key=np.uint64(seed)))


def _complex_noise(rng: np.random.Generator, shape, sigma2: float) -> np.ndarray:
    scale = np.sqrt(sigma2 / 2.0)
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def _fast_time_atoms(bins: np.ndarray, N: int) -> np.ndarray:
    """N x K matrix of synthesis atoms exp(j*2*pi*m*n/N), n = 1..N."""
    n = np.arange(1, N + 1)
    return np.exp(2j * np.pi * np.outer(n, bins) / N)


def _phasors(scene: Scene, config: RadarConfig, frames: np.ndarray) -> np.ndarray:
    """K x F matrix x_m * exp(j*psi_m[l]) with psi_m[l] = (4pi/lambda)(d_m + v_m[l])."""
    k = 4.0 * np.pi / config.lambda_max
    rows = []
    for obj in scene.objects:
        v = obj.vibration.sample(frames, config.f_s)
        rows.append(obj.x_m * np.exp(1j * k * (obj.d_effective + v)))
    return np.array(rows)


def signal_matrix(scene: Scene, config: RadarConfig, frames: np.ndarray) -> np.ndarray:
    """Noiseless N x F beat-signal matrix for the given global frame indices."""
    if not scene.objects:
        return np.zeros((config.N, len(frames)), dtype=complex)
    atoms = _fast_time_atoms(scene.bins, config.N)
    return atoms @ _phasors(scene, config, frames)


def synth_raw_cube(scene: Scene, config: RadarConfig, total_frames: int,
                   snr_db: float, seed: int) -> np.ndarray:
    """Synthesize the raw N x G x total_frames chirp cube.

    All G chirps of a frame carry the same beat signal (thoracic motion is
    constant over a chirp); noise is i.i.d. per chirp so that subsequent
    averaging gives a physically meaningful variance reduction.
    """
    if total_frames < config.L:
        raise SceneError(f"total_frames = {total_frames} is shorter than one window (L = {config.L})")
    frames = np.arange(1, total_frames + 1)
    sig = signal_matrix(scene, config, frames)  # N x F
    cube = np.broadcast_to(sig[:, None, :], (config.N, config.G, total_frames)).copy()
    sigma2 = noise_variance(snr_db)
    if sigma2 > 0.0:
        cube += _complex_noise(_rng(seed), cube.shape, sigma2)
    return cube


def preprocess_average(cube: np.ndarray, window_start: int, config: RadarConfig) -> Measurement:
    """Average the G chirps of each frame over one window: Y(:,l) = mean_g cube(:,g,l).

    ``window_start`` is the 1-based global index of the first frame in the window.
    """
    total_frames = cube.shape[2]
    if window_start < 1 or window_start + config.L - 1 > total_frames:
        raise SceneError(
            f"window [{window_start}, {window_start + config.L - 1}] out of bounds "
            f"for {total_frames} frames"
        )
    sl = cube[:, :, window_start - 1: window_start - 1 + config.L]
    return Measurement(data=sl.mean(axis=1), window_start_frame=window_start, config=config)


def synth_measurement_series(scene: Scene, config: RadarConfig, total_frames: int,
                             snr_db: float, seed: int) -> np.ndarray:
    """Chirp-averaged N x total_frames measurement for a whole session.

    Statistically identical to averaging a G-chirp cube (noise variance
    sigma^2/G per element) without materializing the cube; windows are slices
    of this matrix, so overlapping windows share their noise samples exactly
    as overlapping windows of real recordings would.
    """
    if total_frames < config.L:
        raise SceneError(f"total_frames = {total_frames} is shorter than one window (L = {config.L})")
    frames = np.arange(1, total_frames + 1)
    y = signal_matrix(scene, config, frames)
    sigma2 = noise_variance(snr_db) / config.G
    if sigma2 > 0.0:
        y = y + _complex_noise(_rng(seed), y.shape, sigma2)
    return y


def window_measurement(series: np.ndarray, window_start: int, config: RadarConfig) -> Measurement:
    """Slice one L-frame window out of a session measurement series."""
    total_frames = series.shape[1]
    if window_start < 1 or window_start + config.L - 1 > total_frames:
        raise SceneError(
            f"window [{window_start}, {window_start + config.L - 1}] out of bounds "
            f"for {total_frames} frames"
        )
    data = series[:, window_start - 1: window_start - 1 + config.L]
    return Measurement(data=data, window_start_frame=window_start, config=config)
