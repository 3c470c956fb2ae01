"""CSV emission for monitoring sessions, score cards and localization runs.

Floats are written with ``repr`` so files are byte-identical across runs with
the same seed and round-trip exactly through ``float()``.
"""

import csv

import numpy as np

from .doppler import RangeSlowTimeMap
from .harness import MonitoringSession, ScoreCard
from .localization import Support

ESTIMATES_HEADER = ("t_s", "human", "method", "rr_bpm", "hr_bpm", "rr_ref", "hr_ref")
SCORES_HEADER = ("snr_db", "method", "vital", "success_rate", "pcc", "mae", "rmse")
LOCALIZATION_HEADER = ("bin", "distance_m", "row_energy", "method")


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    f = float(value)
    return "nan" if np.isnan(f) else repr(f)


def write_estimates_csv(session: MonitoringSession, path: str) -> None:
    """One row per (timestamp, human, method) with smoothed and reference bpm."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(ESTIMATES_HEADER)
        for k in range(session.bins.shape[0]):
            for method in session.methods:
                rr = session.rr[method][:, k]
                hr = session.hr[method][:, k]
                rr_ref = session.rr_ref[:, k]
                hr_ref = session.hr_ref[:, k]
                for i, t in enumerate(session.timestamps):
                    w.writerow([
                        _cell(t), k + 1, method,
                        _cell(rr[i]), _cell(hr[i]),
                        _cell(rr_ref[i]), _cell(hr_ref[i]),
                    ])


def write_scores_csv(card: ScoreCard, path: str) -> None:
    """One row per (snr_db, method, vital); an undefined PCC is an empty cell."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(SCORES_HEADER)
        for r in card.rows:
            w.writerow([
                _cell(r.snr_db), r.method, r.vital,
                _cell(r.success_rate), _cell(r.pcc), _cell(r.mae), _cell(r.rmse),
            ])


def write_localization_csv(supports, path: str) -> None:
    """One row per recovered bin; ``supports`` is an iterable of Support."""
    if isinstance(supports, Support):
        supports = [supports]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(LOCALIZATION_HEADER)
        for sup in supports:
            for b, d, e in zip(sup.bins, sup.distances, sup.row_energies):
                w.writerow([int(b), _cell(d), _cell(e), sup.method])


def write_map_csv(rst_map: RangeSlowTimeMap, path: str) -> None:
    """Magnitude of the range/slow-time map, one row per range bin."""
    L = rst_map.data.shape[1]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["distance_m"] + [f"mag_l{l}" for l in range(1, L + 1)])
        mag = np.abs(rst_map.data)
        for i in range(mag.shape[0]):
            w.writerow([_cell(rst_map.distances[i])] + [_cell(v) for v in mag[i]])
