"""Respiration/heart-rate estimators: dictionary recovery with a 1 bpm grid,
FFT peak picking with and without zero padding, phase-slope regression, and
temporal smoothing of the raw estimate stream."""

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .doppler import unwrap_phase
from .errors import ConfigurationError


@dataclass(frozen=True)
class VitalDictionaries:
    """Band-limited cosine dictionaries on the 1 bpm frequency grid."""

    f_s: float
    L: int
    band_r: tuple
    band_h: tuple
    grid_r: np.ndarray   # respiration grid frequencies [Hz]
    grid_h: np.ndarray   # heartbeat grid frequencies [Hz]
    D_r: np.ndarray      # L x Q_R
    D_h: np.ndarray      # L x Q_H

    @property
    def Q(self) -> int:
        return int(round(60 * self.f_s))


def _band_grid(f_s: float, band) -> np.ndarray:
    # global grid g_q = h_q * f_s / Q with Q = 60 f_s, i.e. 1/60 Hz = 1 bpm steps
    Q = int(round(60 * f_s))
    h = np.arange(Q // 2)
    g = h / 60.0
    lo, hi = band
    keep = (g >= lo - 1e-12) & (g <= hi + 1e-12)
    return g[keep]


def _cosine_dictionary(grid: np.ndarray, L: int, T_s: float) -> np.ndarray:
    l = np.arange(1, L + 1)
    return np.cos(2.0 * np.pi * np.outer(l * T_s, grid))


def build_dictionaries(f_s: float, L: int, band_r, band_h) -> VitalDictionaries:
    """Build the respiration/heartbeat cosine dictionaries for an L-frame window."""
    if L < 2:
        raise ConfigurationError(f"window length L must be >= 2, got {L}")
    for name, (lo, hi) in (("respiration", band_r), ("heartbeat", band_h)):
        if not (0.0 <= lo < hi < f_s / 2.0):
            raise ConfigurationError(f"{name} band {(lo, hi)} must lie within [0, f_s/2)")
    grid_r = _band_grid(f_s, band_r)
    grid_h = _band_grid(f_s, band_h)
    if grid_r.size == 0 or grid_h.size == 0:
        raise ConfigurationError("a vital band contains no 1 bpm grid frequency")
    T_s = 1.0 / f_s
    return VitalDictionaries(
        f_s=f_s, L=L, band_r=tuple(band_r), band_h=tuple(band_h),
        grid_r=grid_r, grid_h=grid_h,
        D_r=_cosine_dictionary(grid_r, L, T_s),
        D_h=_cosine_dictionary(grid_h, L, T_s),
    )


def _detrend(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    return v - v.mean(axis=-1, keepdims=True)


def vsdr_estimate(v: np.ndarray, dicts: VitalDictionaries):
    """Dictionary-correlation rate estimate.

    Correlates the mean-detrended vibration against both cosine dictionaries
    and returns 60*frequency of the strongest |score| per band; ties break
    toward the lower frequency. ``v`` may be a single window (L,) or a stack
    of windows (..., L). Returns (rr_bpm, hr_bpm, (scores_r, scores_h)).
    """
    vd = _detrend(v)
    scores_r = vd @ dicts.D_r
    scores_h = vd @ dicts.D_h
    rr = 60.0 * dicts.grid_r[np.argmax(np.abs(scores_r), axis=-1)]
    hr = 60.0 * dicts.grid_h[np.argmax(np.abs(scores_h), axis=-1)]
    if vd.ndim == 1:
        rr, hr = float(rr), float(hr)
    return rr, hr, (scores_r, scores_h)


def fft_peak_estimate(v: np.ndarray, band, f_s: float, pad_to: int | None = None):
    """Rate from the magnitude-spectrum peak of the mean-detrended vibration.

    Without padding the grid spacing is f_s/L; with ``pad_to`` (typically
    60*f_s) the spectrum is zero padded to a 1 bpm grid. Returns bpm.
    """
    vd = _detrend(v)
    L = vd.shape[-1]
    nfft = int(pad_to) if pad_to is not None else L
    freqs = np.fft.rfftfreq(nfft, d=1.0 / f_s)
    lo, hi = band
    keep = np.flatnonzero((freqs >= lo - 1e-12) & (freqs <= hi + 1e-12))
    if keep.size == 0:
        raise ConfigurationError(f"band {band} contains no DFT bin at resolution {f_s / nfft:.4g} Hz")
    mag = np.abs(np.fft.rfft(vd, n=nfft, axis=-1))[..., keep]
    rate = 60.0 * freqs[keep][np.argmax(mag, axis=-1)]
    return float(rate) if vd.ndim == 1 else rate


class PhaseRegResult(NamedTuple):
    rate_bpm: float | np.ndarray
    residual_rms: float | np.ndarray
    degenerate: bool | np.ndarray


def phase_reg_estimate(v: np.ndarray, band, f_s: float) -> PhaseRegResult:
    """Phase-slope regression on the band-limited analytic signal.

    Zeroes all DFT bins except the positive frequencies inside the band,
    inverts to an analytic signal, unwraps its phase and fits a line by least
    squares; rate = 60*slope/(2*pi), clamped to the band. A (numerically)
    zero band-limited signal is flagged degenerate and reported at the band
    lower edge.
    """
    vd = _detrend(v)
    L = vd.shape[-1]
    freqs = np.fft.fftfreq(L, d=1.0 / f_s)
    lo, hi = band
    mask = (freqs > 0) & (freqs >= lo - 1e-12) & (freqs <= hi + 1e-12)
    spec = np.fft.fft(vd, axis=-1)
    spec[..., ~mask] = 0.0
    analytic = np.fft.ifft(spec, axis=-1)

    amp = np.abs(analytic).max(axis=-1)
    degenerate = amp <= 1e-12 * max(1.0, float(np.abs(vd).max(initial=0.0)))

    phase = unwrap_phase(np.angle(analytic))
    t = np.arange(1, L + 1) / f_s
    tc = t - t.mean()
    slope = (phase * tc).sum(axis=-1) / (tc * tc).sum()
    fit = phase.mean(axis=-1, keepdims=True) + np.expand_dims(slope, -1) * tc
    residual_rms = np.sqrt(np.mean((phase - fit) ** 2, axis=-1))

    rate = np.clip(60.0 * slope / (2.0 * np.pi), 60.0 * lo, 60.0 * hi)
    rate = np.where(degenerate, 60.0 * lo, rate)
    if vd.ndim == 1:
        return PhaseRegResult(float(rate), float(residual_rms), bool(degenerate))
    return PhaseRegResult(rate, residual_rms, degenerate)


def trailing_mean(values: np.ndarray, n: int) -> np.ndarray:
    """Mean of the last n samples (fewer at the start) along axis 0."""
    values = np.asarray(values, dtype=float)
    if n <= 1:
        return values.copy()
    cs = np.cumsum(values, axis=0)
    out = np.empty_like(values, dtype=float)
    W = values.shape[0]
    counts = np.minimum(np.arange(1, W + 1), n).astype(float)
    out[:n] = cs[:n] / counts[:n].reshape((-1,) + (1,) * (values.ndim - 1))
    out[n:] = (cs[n:] - cs[:-n]) / n
    return out


@dataclass
class RateEstimate:
    """One time-stamped estimate for one human, raw and smoothed."""

    timestamp: float
    human: int
    method: str
    rr_bpm: float
    hr_bpm: float
    rr_raw: float = np.nan
    hr_raw: float = np.nan

    def __post_init__(self):
        if np.isnan(self.rr_raw):
            self.rr_raw = self.rr_bpm
        if np.isnan(self.hr_raw):
            self.hr_raw = self.hr_bpm


def smooth_estimates(history, t_now: float, rr_window: float = 3.0,
                     hr_window: float = 1.5) -> RateEstimate:
    """Average the raw estimates of the trailing windows ending at t_now.

    RR averages raw values with timestamps in (t_now - rr_window, t_now],
    HR likewise with hr_window. An empty window passes the current raw
    estimate through. ``history`` must contain the estimate at t_now.
    """
    current = None
    rr_vals, hr_vals = [], []
    for est in history:
        if est.timestamp > t_now:
            continue
        if est.timestamp == t_now:
            current = est
        if est.timestamp > t_now - rr_window:
            rr_vals.append(est.rr_raw)
        if est.timestamp > t_now - hr_window:
            hr_vals.append(est.hr_raw)
    if current is None:
        raise ValueError(f"history holds no estimate at t = {t_now}")
    rr = float(np.mean(rr_vals)) if rr_vals else current.rr_raw
    hr = float(np.mean(hr_vals)) if hr_vals else current.hr_raw
    return RateEstimate(
        timestamp=t_now, human=current.human, method=current.method,
        rr_bpm=rr, hr_bpm=hr, rr_raw=current.rr_raw, hr_raw=current.hr_raw,
    )
