"""Radar timing/geometry configuration and the fast-time range grid."""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError

# Fixed once so every derived grid constant is reproducible bit-for-bit.
C_LIGHT = 2.9979e8  # [m/s]

_REL_TOL = 1e-9


def _near_integer(x: float) -> bool:
    return abs(x - round(x)) <= _REL_TOL * max(1.0, abs(x))


@dataclass(frozen=True)
class RadarConfig:
    """Physical and timing parameters of the FMCW radar and monitoring loop.

    Defaults correspond to a 77 GHz mmWave sensor with a 10 ms frame,
    150 chirps per frame and a 30 s sliding window hopped every 50 ms.
    """

    lambda_max: float = 3.9e-3   # maximal chirp wavelength [m]
    T_c: float = 57e-6           # chirp duration [s]
    f_adc: float = 4e6           # fast-time (ADC) sampling rate [Hz]
    S: float = 70e12             # frequency sweep rate [Hz/s]
    T_s: float = 0.01            # frame duration [s]
    N: int = 200                 # fast-time samples per chirp
    G: int = 150                 # chirps per frame
    T_win: float = 30.0          # sliding-window length [s]
    T_int: float = 0.05          # estimate interval [s]

    def __post_init__(self):
        if self.N <= 0 or self.N % 2 != 0:
            raise ConfigurationError(f"N must be a positive even count, got {self.N}")
        if self.G < 1:
            raise ConfigurationError(f"G must be >= 1, got {self.G}")
        if self.G * self.T_c > self.T_s * (1.0 + _REL_TOL):
            raise ConfigurationError(
                f"G*T_c = {self.G * self.T_c:.6g} s exceeds the frame duration T_s = {self.T_s:.6g} s"
            )
        for name in ("lambda_max", "T_c", "f_adc", "S", "T_s", "T_win", "T_int"):
            if getattr(self, name) <= 0:
                raise ConfigurationError(f"{name} must be positive")
        if not _near_integer(self.T_win * self.f_s):
            raise ConfigurationError(
                f"window length T_win*f_s = {self.T_win * self.f_s:.6g} is not an integer frame count"
            )
        if not _near_integer(self.T_int / self.T_s):
            raise ConfigurationError(
                f"hop T_int/T_s = {self.T_int / self.T_s:.6g} is not an integer frame count"
            )

    @property
    def f_s(self) -> float:
        """Slow-time frame rate [Hz]."""
        return 1.0 / self.T_s

    @property
    def T_f(self) -> float:
        """Fast-time sampling period [s]."""
        return 1.0 / self.f_adc

    @property
    def M(self) -> int:
        """Number of range bins; N/2 is the single-channel operating point."""
        return self.N // 2

    @property
    def L(self) -> int:
        """Slow-time samples per window."""
        return int(round(self.T_win * self.f_s))

    @property
    def hop_frames(self) -> int:
        """Window hop between consecutive estimates, in frames."""
        return int(round(self.T_int / self.T_s))


@dataclass(frozen=True)
class RangeGrid:
    """Nyquist fast-time frequency grid and its distance mapping."""

    f_m: np.ndarray      # per-bin fast-time frequency [Hz]
    d_m: np.ndarray      # per-bin radial distance [m]
    delta_d: float       # bin spacing [m]
    d_max: float         # maximal detectable distance [m]

    def __len__(self) -> int:
        return self.f_m.shape[0]


def build_range_grid(config: RadarConfig) -> RangeGrid:
    """Build the M-bin Nyquist range grid: f_m = (f_adc/N)*m, d_m = c*f_m/(2S)."""
    m = np.arange(config.M)
    f_m = (config.f_adc / config.N) * m
    d_m = C_LIGHT * f_m / (2.0 * config.S)
    delta_d = C_LIGHT * config.f_adc / (2.0 * config.S * config.N)
    return RangeGrid(f_m=f_m, d_m=d_m, delta_d=delta_d, d_max=float(d_m[-1]))
