"""SVG diagnostic plots: localization statistics, range/slow-time map,
estimate-vs-reference time series and metric-vs-SNR curves."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .doppler import RangeSlowTimeMap
from .harness import MonitoringSession, ScoreCard


def plot_localization(supports, grid, path: str, human_bins=None) -> None:
    """Bar chart of the per-method localization statistic over range bins."""
    if not isinstance(supports, (list, tuple)):
        supports = [supports]
    fig, axes = plt.subplots(len(supports), 1, figsize=(8, 2.4 * len(supports)),
                             squeeze=False, sharex=True)
    for ax, sup in zip(axes[:, 0], supports):
        ax.bar(sup.bins, sup.row_energies, width=0.8, color="tab:blue")
        if human_bins is not None:
            for b in human_bins:
                ax.axvline(b, color="tab:red", ls="--", lw=0.8)
        ax.set_ylabel(sup.method)
        ax.set_xlim(0, len(grid))
    axes[-1, 0].set_xlabel("range bin")
    fig.suptitle("recovered support per localizer")
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def plot_range_map(rst_map: RangeSlowTimeMap, f_s: float, path: str) -> None:
    """Heatmap of |map| over distance (y) and slow time (x)."""
    mag = np.abs(rst_map.data)
    L = mag.shape[1]
    fig, ax = plt.subplots(figsize=(8, 4))
    im = ax.imshow(
        mag, aspect="auto", origin="lower", cmap="viridis",
        extent=[1.0 / f_s, L / f_s, rst_map.distances[0], rst_map.distances[-1]],
    )
    ax.set_xlabel("slow time [s]")
    ax.set_ylabel("distance [m]")
    fig.colorbar(im, ax=ax, label="|amplitude|")
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def plot_estimates(session: MonitoringSession, path: str) -> None:
    """Smoothed estimates vs. reference, one row per monitored bin."""
    K = session.bins.shape[0]
    fig, axes = plt.subplots(K, 2, figsize=(10, 2.6 * K), squeeze=False, sharex=True)
    for k in range(K):
        for col, (vital, est, ref) in enumerate(
            (("RR", session.rr, session.rr_ref), ("HR", session.hr, session.hr_ref))
        ):
            ax = axes[k, col]
            for method in session.methods:
                ax.plot(session.timestamps, est[method][:, k], lw=0.9, label=method)
            ax.plot(session.timestamps, ref[:, k], "k--", lw=1.2, label="reference")
            ax.set_ylabel(f"bin {session.bins[k]} {vital} [bpm]")
            if k == 0 and col == 0:
                ax.legend(fontsize=7, ncol=2)
    for ax in axes[-1]:
        ax.set_xlabel("time [s]")
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def plot_sweep(card: ScoreCard, metric: str, path: str) -> None:
    """One metric vs. SNR, one panel per vital, one curve per method."""
    fig, axes = plt.subplots(1, 2, figsize=(10, 4), sharex=True)
    for ax, vital in zip(axes, ("rr", "hr")):
        methods = sorted({r.method for r in card.rows if r.vital == vital})
        for method in methods:
            pts = sorted(
                (r.snr_db, getattr(r, metric))
                for r in card.rows if r.method == method and r.vital == vital
            )
            x = [p[0] for p in pts]
            y = [np.nan if p[1] is None else p[1] for p in pts]
            ax.plot(x, y, marker="o", ms=3, label=method)
        ax.set_xlabel("SNR [dB]")
        ax.set_title(vital.upper())
        ax.grid(alpha=0.3)
    axes[0].set_ylabel(metric)
    axes[0].legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
