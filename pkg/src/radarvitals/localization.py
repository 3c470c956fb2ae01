"""Human localization: vital-band filtering, l2,1-regularized joint sparse
recovery solved with FISTA, and the two intensity/variability baselines."""

import warnings
from dataclasses import dataclass, field

import numpy as np

from .config import RangeGrid
from .doppler import RangeSlowTimeMap, unwrap_phase
from .errors import DivergenceError, EmptySupportError, FilterError


def band_mask(freqs: np.ndarray, bands) -> np.ndarray:
    """True where |f| falls inside any of the (lo, hi) bands, edges inclusive."""
    f = np.abs(freqs)
    mask = np.zeros(f.shape, dtype=bool)
    for lo, hi in bands:
        mask |= (f >= lo - 1e-12) & (f <= hi + 1e-12)
    return mask


def vital_band_filter(Y: np.ndarray, bands, f_s: float) -> np.ndarray:
    """Ideal slow-time band-pass keeping only DFT bins inside the vital bands.

    Implements (1/L) (F_L^H (Pi .* F_L Y^T))^T via the FFT along slow time;
    the mask is symmetric in |f| so real input stays (numerically) real.
    """
    L = Y.shape[1]
    freqs = np.fft.fftfreq(L, d=1.0 / f_s)
    mask = band_mask(freqs, bands)
    if not mask.any():
        raise FilterError(f"no slow-time DFT bin falls inside bands {bands} at f_s={f_s} Hz")
    spec = np.fft.fft(Y, axis=1)
    spec[:, ~mask] = 0.0
    return np.fft.ifft(spec, axis=1)


def prox_l21(X: np.ndarray, t: float) -> np.ndarray:
    """Proximal map of t*||.||_{2,1}: scale each row by max(0, 1 - t/||row||_2)."""
    if t < 0:
        raise ValueError(f"threshold must be >= 0, got {t}")
    norms = np.linalg.norm(X, axis=1)
    scale = np.zeros_like(norms)
    nz = norms > 0
    scale[nz] = np.maximum(0.0, 1.0 - t / norms[nz])
    return X * scale[:, None]


def l21_norm(X: np.ndarray) -> float:
    return float(np.linalg.norm(X, axis=1).sum())


@dataclass
class SparseCodingProblem:
    """Row-sparse recovery problem min ||Y_bar - A X||_F^2 + lambda ||X||_{2,1}."""

    Y_bar: np.ndarray
    A: np.ndarray
    lam: float = 30.0
    L_lip: float = 4.5e6
    I_max: int = 1000
    tol: float = 1e-8          # early exit on relative objective change
    X0: np.ndarray | None = None

    def __post_init__(self):
        gram_norm = np.linalg.norm(self.A, ord=2) ** 2
        if self.L_lip < 2.0 * gram_norm:
            warnings.warn(
                f"L_lip = {self.L_lip:.3g} is below the safe bound "
                f"2*lmax(A^H A) = {2.0 * gram_norm:.3g}; FISTA may diverge",
                RuntimeWarning,
                stacklevel=2,
            )


def _objective_terms(alpha, beta2, n_eff, y_energy, lam):
    # rows of every iterate are alpha_m * b_m; beta2 = ||b_m||^2
    fit = y_energy - 2.0 * np.dot(alpha, beta2) + n_eff * np.dot(alpha**2, beta2)
    return fit + lam * np.dot(np.abs(alpha), np.sqrt(beta2))


def _fista_orthogonal(b, n_eff, y_energy, lam, L_lip, I_max, tol):
    """FISTA specialised to A^H A = n_eff*I and X0 = 0.

    Every iterate's rows stay scalar multiples of the rows of b = A^H Y, so
    the exact FISTA recursion reduces to per-row real scalars.
    """
    beta = np.linalg.norm(b, axis=1)
    beta2 = beta**2
    alpha = np.zeros(b.shape[0])
    zeta = alpha.copy()
    t = 1.0
    tau = lam / L_lip
    trace = [_objective_terms(alpha, beta2, n_eff, y_energy, lam)]
    best_obj, best_alpha = trace[0], alpha.copy()
    for _ in range(I_max):
        c = zeta * (1.0 - 2.0 * n_eff / L_lip) + 2.0 / L_lip
        row_norm = np.abs(c) * beta
        scale = np.zeros_like(row_norm)
        nz = row_norm > 0
        scale[nz] = np.maximum(0.0, 1.0 - tau / row_norm[nz])
        alpha_new = c * scale
        t_new = 0.5 * (1.0 + np.sqrt(1.0 + 4.0 * t * t))
        zeta = alpha_new + ((t - 1.0) / t_new) * (alpha_new - alpha)
        alpha, t = alpha_new, t_new
        obj = _objective_terms(alpha, beta2, n_eff, y_energy, lam)
        if not np.isfinite(obj):
            raise DivergenceError("objective became non-finite; L_lip is too small for this problem")
        trace.append(obj)
        if obj < best_obj:
            best_obj, best_alpha = obj, alpha.copy()
        if abs(trace[-1] - trace[-2]) < tol * max(abs(trace[-2]), 1e-30):
            break
    return best_alpha[:, None] * b, trace


def fista_l21(problem: SparseCodingProblem):
    """Solve the joint sparse recovery problem with FISTA.

    Gradient 2 A^H (A X - Y_bar), step 1/L_lip, momentum
    t_{k+1} = (1 + sqrt(1 + 4 t_k^2))/2, X0 = 0 unless warm-started. Returns
    the best-objective iterate and the per-iteration objective trace.
    """
    A, Y = problem.A, problem.Y_bar
    lam, L_lip = problem.lam, problem.L_lip
    gram = A.conj().T @ A
    b = A.conj().T @ Y
    y_energy = float(np.linalg.norm(Y) ** 2)

    n_eff = float(gram[0, 0].real)
    off = gram - n_eff * np.eye(gram.shape[0])
    orthogonal = np.abs(off).max() <= 1e-8 * n_eff
    if orthogonal and problem.X0 is None:
        return _fista_orthogonal(b, n_eff, y_energy, lam, L_lip, problem.I_max, problem.tol)

    def objective(X, GX=None):
        if GX is None:
            GX = gram @ X
        fit = y_energy - 2.0 * np.vdot(b, X).real + np.vdot(X, GX).real
        return fit + lam * l21_norm(X)

    X = np.zeros_like(b) if problem.X0 is None else problem.X0.astype(complex, copy=True)
    Z = X.copy()
    t = 1.0
    trace = [objective(X)]
    best_obj, best_X = trace[0], X.copy()
    for _ in range(problem.I_max):
        grad = 2.0 * (gram @ Z - b)
        X_new = prox_l21(Z - grad / L_lip, lam / L_lip)
        t_new = 0.5 * (1.0 + np.sqrt(1.0 + 4.0 * t * t))
        Z = X_new + ((t - 1.0) / t_new) * (X_new - X)
        X, t = X_new, t_new
        obj = objective(X)
        if not np.isfinite(obj):
            raise DivergenceError("objective became non-finite; L_lip is too small for this problem")
        trace.append(obj)
        if obj < best_obj:
            best_obj, best_X = obj, X.copy()
        if abs(trace[-1] - trace[-2]) < problem.tol * max(abs(trace[-2]), 1e-30):
            break
    return best_X, trace


@dataclass
class Support:
    """Recovered occupied range bins with distances and row energies."""

    bins: np.ndarray
    distances: np.ndarray
    row_energies: np.ndarray
    method: str = "jsr"
    metadata: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return self.bins.shape[0]


def extract_support(X: np.ndarray, tau: float, grid: RangeGrid, method: str = "jsr") -> Support:
    """Select bins whose row energy is >= tau * (max row energy), DC excluded."""
    if not (0.0 < tau < 1.0):
        raise ValueError(f"tau must be in (0, 1), got {tau}")
    energies = np.linalg.norm(X, axis=1)
    candidates = energies[1:]  # bin 0 (DC) excluded by constraint
    peak = candidates.max() if candidates.size else 0.0
    if peak <= 0.0:
        raise EmptySupportError("all rows of the sparse solution are zero")
    bins = 1 + np.flatnonzero(candidates >= tau * peak)
    return Support(
        bins=bins,
        distances=grid.d_m[bins],
        row_energies=energies[bins],
        method=method,
        metadata={"tau": tau},
    )


def _top_k_support(stat: np.ndarray, top_k: int, grid: RangeGrid, method: str,
                   metadata: dict) -> Support:
    candidates = stat[1:]
    order = np.argsort(candidates, kind="stable")[::-1][:top_k]
    bins = np.sort(order + 1)
    return Support(
        bins=bins,
        distances=grid.d_m[bins],
        row_energies=stat[bins],
        method=method,
        metadata=metadata,
    )


def localize_max_avg_power(rst_map: RangeSlowTimeMap, top_k: int, grid: RangeGrid) -> Support:
    """Baseline: pick the top_k bins by mean |.|^2 across slow time (DC excluded)."""
    stat = np.mean(np.abs(rst_map.data) ** 2, axis=1)
    return _top_k_support(stat, top_k, grid, "max_avg_power", {"statistic": "mean_power"})


def localize_std(rst_map: RangeSlowTimeMap, top_k: int, grid: RangeGrid,
                 statistic: str = "weighted_phase_std") -> Support:
    """Baseline: pick the top_k bins by slow-time variability (DC excluded).

    ``statistic`` selects the variability measure:

    * ``"phase_std"``      - std of the unwrapped per-bin phase. On bins that
      hold only noise the phase is a 2*pi random walk, which drowns real
      vibrations, so this raw reading is kept only for reference.
    * ``"weighted_phase_std"`` (default) - phase std scaled by the mean row
      magnitude, which suppresses empty bins while preserving the ranking
      vibrating > breathing > static.
    * ``"magnitude_std"``  - std of |.| across slow time.
    """
    phase_std = np.std(unwrap_phase(np.angle(rst_map.data)), axis=1)
    mean_mag = np.mean(np.abs(rst_map.data), axis=1)
    if statistic == "phase_std":
        stat = phase_std
    elif statistic == "weighted_phase_std":
        stat = phase_std * mean_mag
    elif statistic == "magnitude_std":
        stat = np.std(np.abs(rst_map.data), axis=1)
    else:
        raise ValueError(f"unknown std statistic {statistic!r}")
    # a flat statistic means the ranking is noise-driven
    candidates = stat[1:]
    low_confidence = bool(candidates.max() < 2.0 * np.median(candidates))
    return _top_k_support(
        stat, top_k, grid, "std",
        {"statistic": statistic, "low_confidence": low_confidence},
    )
