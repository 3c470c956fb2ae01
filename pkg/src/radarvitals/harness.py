"""End-to-end monitoring sessions, reference rates, scoring, and SNR sweeps.

A session follows the two-phase loop: the first window localizes the humans
(joint sparse recovery by default) and saves the support; every window, the
saved support is reused to recover the Doppler rows, extract phase and run
the requested rate estimators, producing one estimate per hop interval.
"""

import dataclasses
from dataclasses import dataclass, field

import numpy as np

from .config import RadarConfig, build_range_grid
from .doppler import recover_doppler_rows, unwrap_phase
from .errors import EmptySupportError, RadarVitalsError, SessionError
from .estimation import (build_dictionaries, fft_peak_estimate,
                         phase_reg_estimate, trailing_mean, vsdr_estimate)
from .localization import (SparseCodingProblem, Support, extract_support,
                           fista_l21, vital_band_filter)
from .doppler import fast_time_dictionary
from .scene import KIND_HUMAN, Scene, Static, Tones, Trace
from .synthesis import synth_measurement_series

METHODS = ("vsdr", "fft_zp", "fft_nozp", "phase_reg")

DEFAULT_BAND_R = (0.1, 0.4)
DEFAULT_BAND_H = (0.78, 1.67)

RR_SMOOTH_S = 3.0
HR_SMOOTH_S = 1.5


@dataclass(frozen=True)
class SolverSettings:
    """Joint-sparse-recovery solver knobs used by the first-window localizer."""

    lam: float = 30.0
    L_lip: float = 4.5e6
    I_max: int = 1000
    tau: float = 0.5


@dataclass
class MonitoringSession:
    """All per-timestamp estimates and references of one monitoring run."""

    config: RadarConfig
    scene: Scene
    snr_db: float
    seed: int
    methods: tuple
    support: Support
    timestamps: np.ndarray              # (W,) seconds
    bins: np.ndarray                    # (K,) monitored range bins
    rr: dict = field(default_factory=dict)      # method -> (W, K) smoothed bpm
    hr: dict = field(default_factory=dict)
    rr_raw: dict = field(default_factory=dict)
    hr_raw: dict = field(default_factory=dict)
    rr_ref: np.ndarray | None = None    # (W, K) bpm, NaN where no reference
    hr_ref: np.ndarray | None = None
    metadata: dict = field(default_factory=dict)


def _smoothing_count(horizon_s: float, T_int: float) -> int:
    # number of hop-spaced timestamps in the half-open window (t - horizon, t]
    return max(1, int(np.ceil(horizon_s / T_int - 1e-9)))


def reference_rates(vib, config: RadarConfig, bands, window_starts: np.ndarray):
    """Per-window reference (rr_bpm, hr_bpm, degenerate) for one vibration spec.

    Tones specs return their designated rates directly; Trace specs are scored
    per window by the zero-padded DFT peak inside each band (the same padding
    the FFT w/ ZP estimator uses).
    """
    window_starts = np.asarray(window_starts, dtype=int)
    W = window_starts.shape[0]
    band_r, band_h = bands
    if isinstance(vib, Tones):
        rr_hz, hr_hz = vib.designated_rates()
        rr = np.full(W, np.nan) if rr_hz is None else np.full(W, 60.0 * rr_hz)
        hr = np.full(W, np.nan) if hr_hz is None else np.full(W, 60.0 * hr_hz)
        return rr, hr, False
    if isinstance(vib, Static):
        return np.full(W, np.nan), np.full(W, np.nan), True
    if isinstance(vib, Trace):
        samples = np.asarray(vib.samples, dtype=float)
        last_frame = int(window_starts.max()) + config.L - 1
        if samples.size < last_frame:
            raise SessionError(
                f"reference trace has {samples.size} samples, session needs {last_frame}"
            )
        windows = np.lib.stride_tricks.sliding_window_view(samples, config.L)
        windows = windows[window_starts - 1]
        degenerate = bool(np.abs(windows - windows.mean(axis=1, keepdims=True)).max() == 0.0)
        pad = int(round(60 * config.f_s))
        rr = fft_peak_estimate(windows, band_r, config.f_s, pad_to=pad)
        hr = fft_peak_estimate(windows, band_h, config.f_s, pad_to=pad)
        return rr, hr, degenerate
    raise SessionError(f"no reference rule for vibration spec {type(vib).__name__}")


def _raw_estimates(V: np.ndarray, method: str, config: RadarConfig, bands, dicts):
    """Raw (rr, hr) arrays of shape (W,) for a (W, L) stack of phase windows."""
    band_r, band_h = bands
    if method == "vsdr":
        rr, hr, _ = vsdr_estimate(V, dicts)
        return rr, hr
    if method == "fft_zp":
        pad = int(round(60 * config.f_s))
        return (fft_peak_estimate(V, band_r, config.f_s, pad_to=pad),
                fft_peak_estimate(V, band_h, config.f_s, pad_to=pad))
    if method == "fft_nozp":
        return (fft_peak_estimate(V, band_r, config.f_s),
                fft_peak_estimate(V, band_h, config.f_s))
    if method == "phase_reg":
        return (phase_reg_estimate(V, band_r, config.f_s).rate_bpm,
                phase_reg_estimate(V, band_h, config.f_s).rate_bpm)
    raise SessionError(f"unknown estimation method {method!r}")


def localize_jsr(window_real: np.ndarray, config: RadarConfig, bands,
                 solver: SolverSettings) -> Support:
    """First-window localization: vital-band filter, FISTA, support threshold."""
    grid = build_range_grid(config)
    Y_bar = vital_band_filter(window_real, bands, config.f_s)
    A = fast_time_dictionary(config.N, config.M)
    problem = SparseCodingProblem(Y_bar=Y_bar, A=A, lam=solver.lam,
                                  L_lip=solver.L_lip, I_max=solver.I_max)
    X, trace = fista_l21(problem)
    support = extract_support(X, solver.tau, grid)
    support.metadata["iterations"] = len(trace) - 1
    return support


def run_monitoring(scene: Scene, config: RadarConfig, snr_db: float, seed: int,
                   methods=METHODS, bands=(DEFAULT_BAND_R, DEFAULT_BAND_H),
                   solver: SolverSettings = SolverSettings(),
                   duration_s: float = 120.0,
                   localizer: str = "jsr") -> MonitoringSession:
    """Run one monitoring session and collect per-interval estimates.

    ``localizer`` is "jsr" (recover the support from the first window) or
    "oracle" (use the scene's human bins directly, for estimator studies).
    """
    total_frames = int(round(duration_s * config.f_s))
    if total_frames < config.L:
        raise SessionError(
            f"duration {duration_s} s is shorter than one window T_win = {config.T_win} s"
        )
    series = synth_measurement_series(scene, config, total_frames, snr_db, seed)
    data = series.real  # single-channel (In-phase) main path
    L, hop = config.L, config.hop_frames

    if localizer == "jsr":
        try:
            support = localize_jsr(data[:, :L], config, bands, solver)
        except EmptySupportError as exc:
            raise SessionError(f"first-iteration localization found no support: {exc}") from exc
    elif localizer == "oracle":
        grid = build_range_grid(config)
        bins = np.sort(scene.human_bins)
        if bins.size == 0:
            raise SessionError("oracle localizer needs at least one human in the scene")
        support = Support(bins=bins, distances=grid.d_m[bins],
                          row_energies=np.full(bins.shape, np.nan),
                          method="oracle")
    else:
        raise SessionError(f"unknown localizer {localizer!r}")

    bins = support.bins
    x_full = recover_doppler_rows(data, bins, config.N)        # (K, F)
    phase_full = unwrap_phase(np.angle(x_full))

    starts0 = np.arange(0, total_frames - L + 1, hop)          # 0-based window starts
    timestamps = (starts0 + L) * config.T_s
    windows = np.lib.stride_tricks.sliding_window_view(phase_full, L, axis=1)
    windows = windows[:, starts0, :]                           # (K, W, L)

    dicts = build_dictionaries(config.f_s, L, *bands) if "vsdr" in methods else None
    n_rr = _smoothing_count(RR_SMOOTH_S, config.T_int)
    n_hr = _smoothing_count(HR_SMOOTH_S, config.T_int)

    session = MonitoringSession(
        config=config, scene=scene, snr_db=snr_db, seed=seed,
        methods=tuple(methods), support=support,
        timestamps=timestamps, bins=bins,
        metadata={"localizer": localizer, "duration_s": duration_s},
    )
    K, W = bins.shape[0], timestamps.shape[0]
    for method in methods:
        rr_raw = np.empty((W, K))
        hr_raw = np.empty((W, K))
        for k in range(K):
            rr_raw[:, k], hr_raw[:, k] = _raw_estimates(
                windows[k], method, config, bands, dicts)
        session.rr_raw[method] = rr_raw
        session.hr_raw[method] = hr_raw
        session.rr[method] = trailing_mean(rr_raw, n_rr)
        session.hr[method] = trailing_mean(hr_raw, n_hr)

    rr_ref = np.full((W, K), np.nan)
    hr_ref = np.full((W, K), np.nan)
    by_bin = {obj.bin: obj for obj in scene.objects if obj.kind == KIND_HUMAN}
    window_starts = starts0 + 1
    for k, b in enumerate(bins):
        obj = by_bin.get(int(b))
        if obj is None:
            continue
        rr_ref[:, k], hr_ref[:, k], _ = reference_rates(
            obj.vibration, config, bands, window_starts)
    session.rr_ref, session.hr_ref = rr_ref, hr_ref
    return session


@dataclass
class ScoreRow:
    snr_db: float
    method: str
    vital: str                 # "rr" | "hr"
    success_rate: float        # percent of |est - ref| < 2 bpm
    pcc: float | None          # None when undefined (constant series)
    mae: float
    rmse: float


@dataclass
class ScoreCard:
    rows: list = field(default_factory=list)
    aggregation: str = "median"


def series_metrics(est: np.ndarray, ref: np.ndarray):
    """(success_rate %, pcc | None, mae, rmse) for one estimate/reference pair."""
    est = np.asarray(est, dtype=float)
    ref = np.asarray(ref, dtype=float)
    if est.shape != ref.shape:
        raise SessionError(f"series length mismatch: {est.shape} vs {ref.shape}")
    err = est - ref
    success = 100.0 * np.mean(np.abs(err) < 2.0)
    mae = float(np.mean(np.abs(err)))
    rmse = float(np.sqrt(np.mean(err**2)))
    if np.std(est) == 0.0 or np.std(ref) == 0.0:
        pcc = None  # undefined for a constant series; reported as flagged null
    else:
        pcc = float(np.corrcoef(est, ref)[0, 1])
    return float(success), pcc, mae, rmse


def _median_or_none(values):
    defined = [v for v in values if v is not None]
    return float(np.median(defined)) if defined else None


def score(session: MonitoringSession, aggregate: str = "median") -> ScoreCard:
    """Score every method against the references, median across humans."""
    card = ScoreCard(aggregation=aggregate)
    refd = {"rr": session.rr_ref, "hr": session.hr_ref}
    estd = {"rr": session.rr, "hr": session.hr}
    for method in session.methods:
        for vital in ("rr", "hr"):
            per_human = []
            for k in range(session.bins.shape[0]):
                ref = refd[vital][:, k]
                if np.isnan(ref).all():
                    continue
                per_human.append(series_metrics(estd[vital][method][:, k], ref))
            if not per_human:
                continue
            sr = float(np.median([m[0] for m in per_human]))
            pcc = _median_or_none([m[1] for m in per_human])
            mae = float(np.median([m[2] for m in per_human]))
            rmse = float(np.median([m[3] for m in per_human]))
            card.rows.append(ScoreRow(session.snr_db, method, vital, sr, pcc, mae, rmse))
    return card


def _with_subject(scene: Scene, vib, target: int) -> Scene:
    """Replace the vibration of the target-th human (cohort emulation)."""
    humans = [i for i, o in enumerate(scene.objects) if o.kind == KIND_HUMAN]
    if not humans:
        raise SessionError("cohort substitution needs a human in the scene")
    if target >= len(humans):
        raise SessionError(f"cohort target {target} but scene has {len(humans)} humans")
    objs = list(scene.objects)
    i = humans[target]
    objs[i] = dataclasses.replace(objs[i], vibration=vib)
    return Scene(objects=tuple(objs), grid=scene.grid)


def sweep_snr(scene: Scene, config: RadarConfig, snr_list, seeds,
              methods=METHODS, bands=(DEFAULT_BAND_R, DEFAULT_BAND_H),
              solver: SolverSettings = SolverSettings(),
              duration_s: float = 120.0, localizer: str = "jsr",
              cohort=None, cohort_target: int = 0) -> ScoreCard:
    """Cross-product sweep: one ScoreCard row per (snr, method, vital).

    Each metric is the median over all (subject, seed) runs; ``cohort`` is an
    optional list of vibration specs substituted one at a time into the
    target human, emulating a multi-subject study.
    """
    card = ScoreCard(aggregation="median")
    subjects = list(cohort) if cohort else [None]
    for snr_db in snr_list:
        per_run = []
        for vib in subjects:
            subj_scene = scene if vib is None else _with_subject(scene, vib, cohort_target)
            for seed in seeds:
                session = run_monitoring(
                    subj_scene, config, snr_db, int(seed), methods=methods,
                    bands=bands, solver=solver, duration_s=duration_s,
                    localizer=localizer)
                per_run.append(score(session))
        for method in methods:
            for vital in ("rr", "hr"):
                rows = [r for c in per_run for r in c.rows
                        if r.method == method and r.vital == vital]
                if not rows:
                    continue
                card.rows.append(ScoreRow(
                    snr_db=float(snr_db), method=method, vital=vital,
                    success_rate=float(np.median([r.success_rate for r in rows])),
                    pcc=_median_or_none([r.pcc for r in rows]),
                    mae=float(np.median([r.mae for r in rows])),
                    rmse=float(np.median([r.rmse for r in rows])),
                ))
    return card
