"""Monitoring sessions, references, scoring and SNR sweeps."""

import numpy as np
import pytest

from radarvitals.config import RadarConfig, build_range_grid
from radarvitals.errors import SessionError
from radarvitals.harness import (reference_rates, run_monitoring, score,
                                 series_metrics, sweep_snr)
from radarvitals.scene import Static, Tones, Trace, snap_scene

CFG = RadarConfig()
GRID = build_range_grid(CFG)


def one_human_scene(cfg=CFG, vib=None):
    vib = vib or Tones(((0.001, 0.3), (0.0002, 1.25)))
    grid = build_range_grid(cfg)
    return snap_scene([("human", 0.5, 2.0, vib)], grid, f_s=cfg.f_s)


def test_two_minute_session_yields_1801_estimates():
    sess = run_monitoring(one_human_scene(), CFG, snr_db=20.0, seed=0,
                          methods=("fft_zp",), duration_s=120.0)
    assert sess.timestamps.shape == (1801,)
    assert sess.timestamps[0] == pytest.approx(30.0)
    assert sess.timestamps[1] == pytest.approx(30.05)
    assert sess.timestamps[-1] == pytest.approx(120.0)
    assert sess.bins.tolist() == [47]
    assert sess.rr["fft_zp"].shape == (1801, 1)
    # the on-grid designated rates are recovered throughout
    np.testing.assert_allclose(sess.rr["fft_zp"][:, 0], 18.0)
    np.testing.assert_allclose(sess.hr["fft_zp"][:, 0], 75.0)
    np.testing.assert_allclose(sess.rr_ref[:, 0], 18.0)
    np.testing.assert_allclose(sess.hr_ref[:, 0], 75.0)


def test_session_rejects_too_short_duration_and_bad_localizer():
    with pytest.raises(SessionError):
        run_monitoring(one_human_scene(), CFG, 0.0, 0, duration_s=10.0)
    with pytest.raises(SessionError):
        run_monitoring(one_human_scene(), CFG, 0.0, 0, localizer="psychic")


def test_oracle_localizer_uses_human_bins():
    sess = run_monitoring(one_human_scene(), CFG, 0.0, 0, methods=("vsdr",),
                          duration_s=30.0, localizer="oracle")
    assert sess.support.method == "oracle"
    assert sess.bins.tolist() == [47]
    humanless = snap_scene([("static_clutter", 1.0, 2.3, Static())],
                           GRID, f_s=CFG.f_s)
    with pytest.raises(SessionError):
        run_monitoring(humanless, CFG, 0.0, 0, duration_s=30.0, localizer="oracle")


def test_reference_rates_tones_static_trace():
    starts = np.array([1, 6, 11])
    rr, hr, deg = reference_rates(Tones(((1.0, 0.3), (0.1, 1.2))), CFG,
                                  ((0.1, 0.4), (0.78, 1.67)), starts)
    np.testing.assert_allclose(rr, 18.0)
    np.testing.assert_allclose(hr, 72.0)
    assert not deg

    rr, hr, deg = reference_rates(Static(), CFG, ((0.1, 0.4), (0.78, 1.67)), starts)
    assert np.isnan(rr).all() and np.isnan(hr).all() and deg

    l = np.arange(1, CFG.L + 11)
    samples = tuple(np.cos(2 * np.pi * 0.3 * l / 100.0)
                    + 0.1 * np.cos(2 * np.pi * 1.25 * l / 100.0))
    tr = Trace(samples=samples, sample_rate_hz=100.0)
    rr, hr, deg = reference_rates(tr, CFG, ((0.1, 0.4), (0.78, 1.67)), starts)
    np.testing.assert_allclose(rr, 18.0)
    np.testing.assert_allclose(hr, 75.0)
    assert not deg
    with pytest.raises(SessionError):
        reference_rates(Trace(samples=(1.0, 2.0), sample_rate_hz=100.0),
                        CFG, ((0.1, 0.4), (0.78, 1.67)), starts)


def test_series_metrics_strict_two_bpm_boundary():
    ref = np.full(10, 60.0)
    exactly_two = np.full(10, 62.0)
    sr, pcc, mae, rmse = series_metrics(exactly_two, ref)
    assert sr == 0.0                       # |err| = 2 is a failure, not success
    assert mae == pytest.approx(2.0)
    assert rmse == pytest.approx(2.0)
    assert pcc is None                     # both series constant
    just_under = np.full(10, 61.999)
    assert series_metrics(just_under, ref)[0] == 100.0
    with pytest.raises(SessionError):
        series_metrics(np.zeros(3), np.zeros(4))


def test_series_metrics_pcc_tracks_correlation():
    ref = np.array([10.0, 12.0, 14.0, 16.0])
    sr, pcc, mae, rmse = series_metrics(ref + 0.5, ref)
    assert sr == 100.0
    assert pcc == pytest.approx(1.0)
    assert mae == pytest.approx(0.5)


def test_score_skips_bins_without_reference():
    sess = run_monitoring(one_human_scene(), CFG, 20.0, 0, methods=("fft_zp",),
                          duration_s=60.0, localizer="oracle")
    card = score(sess)
    assert {(r.method, r.vital) for r in card.rows} == {("fft_zp", "rr"), ("fft_zp", "hr")}
    for r in card.rows:
        assert r.success_rate == 100.0
        assert r.mae == pytest.approx(0.0, abs=1e-9)


def test_sweep_is_deterministic_and_covers_grid():
    scene = one_human_scene()
    kwargs = dict(methods=("fft_zp", "vsdr"), duration_s=30.0, localizer="oracle")
    card1 = sweep_snr(scene, CFG, [10.0, 0.0], [0, 1], **kwargs)
    card2 = sweep_snr(scene, CFG, [10.0, 0.0], [0, 1], **kwargs)
    assert len(card1.rows) == 2 * 2 * 2   # snr x method x vital
    for a, b in zip(card1.rows, card2.rows):
        assert (a.snr_db, a.method, a.vital, a.success_rate, a.pcc, a.mae, a.rmse) \
            == (b.snr_db, b.method, b.vital, b.success_rate, b.pcc, b.mae, b.rmse)


def test_sweep_cohort_substitutes_target_human():
    scene = one_human_scene()
    cohort = [Tones(((0.001, 0.2), (0.0002, 1.0))),
              Tones(((0.001, 0.35), (0.0002, 1.5)))]
    card = sweep_snr(scene, CFG, [20.0], [0], methods=("fft_zp",),
                     duration_s=30.0, localizer="oracle", cohort=cohort)
    rr_row = next(r for r in card.rows if r.vital == "rr")
    # both substituted subjects are exact, so the pooled median error is zero
    assert rr_row.mae == pytest.approx(0.0, abs=1e-9)
    with pytest.raises(SessionError):
        sweep_snr(scene, CFG, [20.0], [0], cohort=cohort, cohort_target=5,
                  duration_s=30.0, localizer="oracle")
