"""Simulation and estimation toolkit for multi-person vital-signs monitoring
with an FMCW radar: beat-signal synthesis, sparsity-based localization,
phase-based vibration recovery, rate estimation and a scoring harness."""

from .config import C_LIGHT, RadarConfig, RangeGrid, build_range_grid
from .errors import (ConfigurationError, DivergenceError, EmptySupportError,
                     FilterError, RadarVitalsError, ScenarioError, SceneError,
                     SessionError)
from .scene import ObjectSpec, Scene, Static, Tones, Trace, snap_scene
from .synthesis import (Measurement, noise_variance, preprocess_average,
                        signal_matrix, synth_measurement_series,
                        synth_raw_cube, window_measurement)
from .doppler import (RangeSlowTimeMap, VibrationMatrix,
                      build_range_slow_time_map, extract_phase,
                      fast_time_dictionary, recover_doppler_rows, unwrap_phase)
from .localization import (SparseCodingProblem, Support, extract_support,
                           fista_l21, l21_norm, localize_max_avg_power,
                           localize_std, prox_l21, vital_band_filter)
from .estimation import (PhaseRegResult, RateEstimate, VitalDictionaries,
                         build_dictionaries, fft_peak_estimate,
                         phase_reg_estimate, smooth_estimates, trailing_mean,
                         vsdr_estimate)
from .harness import (METHODS, MonitoringSession, ScoreCard, ScoreRow,
                      SolverSettings, localize_jsr, reference_rates,
                      run_monitoring, score, series_metrics, sweep_snr)
from .scenario import (Scenario, load_trace_csv, parse_scenario,
                       serialize_scenario)

__version__ = "0.1.0"
