"""Doppler row recovery, range/slow-time map and phase extraction."""

from dataclasses import dataclass, field

import numpy as np

from .config import RadarConfig, RangeGrid


def fast_time_dictionary(N: int, M: int) -> np.ndarray:
    """N x M Vandermonde dictionary A(n, m) = exp(j*2*pi*m*n/N), n = 1..N.

    Columns are the conjugate-transposed rows of the partial DFT, so
    A^H A = N * I_M holds exactly on the Nyquist grid.
    """
    n = np.arange(1, N + 1)
    m = np.arange(M)
    return np.exp(2j * np.pi * np.outer(n, m) / N)


def partial_dft(bins: np.ndarray, N: int) -> np.ndarray:
    """K x N partial DFT F_S with rows exp(-j*2*pi*m*n/N) for m in the support."""
    n = np.arange(1, N + 1)
    return np.exp(-2j * np.pi * np.outer(np.asarray(bins), n) / N)


def recover_doppler_rows(data: np.ndarray, bins: np.ndarray, N: int) -> np.ndarray:
    """Least-squares Doppler row estimate X_hat_S = (1/N) F_S Y.

    Equivalent to solving min ||Y - A_S X||_F^2 because A_S^H A_S = N I_K.
    ``data`` may be the complex window or its in-phase (real) part; the real
    part yields the same estimate up to a factor of 1/2 on noiseless scenes.
    """
    return partial_dft(bins, N) @ data / N


@dataclass
class RangeSlowTimeMap:
    """Complete M x L Doppler map; rows indexed by range-bin distance."""

    data: np.ndarray
    distances: np.ndarray


def build_range_slow_time_map(data: np.ndarray, grid: RangeGrid) -> RangeSlowTimeMap:
    """Recover all M Doppler rows (baselines and plotting only)."""
    M = len(grid)
    N = data.shape[0]
    return RangeSlowTimeMap(
        data=recover_doppler_rows(data, np.arange(M), N),
        distances=grid.d_m.copy(),
    )


def unwrap_phase(wrapped: np.ndarray) -> np.ndarray:
    """Cumulative phase unwrapping along the last axis.

    output[0] = input[0]; each step adds the 2*pi multiple that brings the
    consecutive difference into (-pi, pi].
    """
    wrapped = np.asarray(wrapped, dtype=float)
    d = np.diff(wrapped, axis=-1)
    # map each difference into (-pi, pi]
    adj = np.mod(d - np.pi, -2.0 * np.pi) + np.pi
    out = np.concatenate([wrapped[..., :1], wrapped[..., :1] + np.cumsum(adj, axis=-1)], axis=-1)
    return out


@dataclass
class VibrationMatrix:
    """L x K unwrapped thoracic phase signals, columns ordered by support bin."""

    data: np.ndarray
    flagged_columns: tuple = field(default_factory=tuple)


def extract_phase(x_hat: np.ndarray) -> VibrationMatrix:
    """Unwrapped four-quadrant phase of each Doppler row, transposed to L x K.

    Zero-magnitude samples have undefined phase; their wrapped angle is
    carried forward from the previous sample and the column is flagged.
    """
    x_hat = np.atleast_2d(x_hat)
    ang = np.angle(x_hat)
    zero = x_hat == 0
    flagged = []
    if zero.any():
        for k in range(ang.shape[0]):
            if zero[k].any():
                flagged.append(k)
                row = ang[k]
                idx = np.where(zero[k], 0, np.arange(row.size))
                np.maximum.accumulate(idx, out=idx)
                ang[k] = row[idx]
                if zero[k][0]:
                    ang[k, 0] = 0.0
    return VibrationMatrix(data=unwrap_phase(ang).T, flagged_columns=tuple(flagged))
