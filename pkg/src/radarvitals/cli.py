"""Command line entry point.

Subcommands: ``validate`` (parse and echo a scenario), ``localize`` (run the
three localizers on the first window), ``map`` (range/slow-time magnitude
map), ``monitor`` (one full monitoring session) and ``sweep`` (metrics over an
SNR grid). Flags given on the command line override the scenario file.
"""

import argparse
import os
import sys

import numpy as np

from .config import build_range_grid
from .doppler import build_range_slow_time_map
from .errors import RadarVitalsError
from .harness import METHODS, run_monitoring, score, sweep_snr
from .localization import localize_max_avg_power, localize_std
from .reporting import (write_estimates_csv, write_localization_csv,
                        write_map_csv, write_scores_csv)
from .scenario import parse_scenario
from .synthesis import synth_measurement_series


def _add_common(p: argparse.ArgumentParser, methods: bool = False) -> None:
    p.add_argument("--scenario", required=True, help="scenario YAML file")
    p.add_argument("--snr-db", type=float, default=None, help="override scenario SNR")
    p.add_argument("--seed", type=int, default=None, help="override scenario seed")
    p.add_argument("--out", default=".", help="output directory (created if missing)")
    p.add_argument("--plots", action="store_true", help="also write SVG plots")
    if methods:
        p.add_argument("--methods", default=None,
                       help=f"comma-separated subset of {','.join(METHODS)}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="radarvitals",
        description="FMCW radar vital-signs simulation and estimation toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse a scenario and report the snapped scene")
    p.add_argument("--scenario", required=True)

    p = sub.add_parser("localize", help="run the localizers on the first window")
    _add_common(p)

    p = sub.add_parser("map", help="emit the first-window range/slow-time magnitude map")
    _add_common(p)

    p = sub.add_parser("monitor", help="run one monitoring session")
    _add_common(p, methods=True)
    p.add_argument("--duration", type=float, default=None, help="override session length [s]")

    p = sub.add_parser("sweep", help="sweep metrics over an SNR grid")
    _add_common(p, methods=True)
    p.add_argument("--snr-list", default=None, help="comma-separated SNR values [dB]")
    p.add_argument("--seeds", default=None, help="comma-separated RNG seeds")
    p.add_argument("--duration", type=float, default=None, help="override session length [s]")
    return parser


def _resolve(scn, args):
    snr_db = scn.snr_db if args.snr_db is None else args.snr_db
    seed = scn.seed if args.seed is None else args.seed
    methods = scn.methods
    if getattr(args, "methods", None):
        methods = tuple(m.strip() for m in args.methods.split(",") if m.strip())
        for m in methods:
            if m not in METHODS:
                raise RadarVitalsError(f"unknown method {m!r}; choose from {METHODS}")
    return snr_db, seed, methods


def _first_window(scn, snr_db, seed):
    config = scn.config
    series = synth_measurement_series(scn.scene(), config, config.L, snr_db, seed)
    return series.real


def cmd_validate(args) -> None:
    scn = parse_scenario(args.scenario)
    grid = build_range_grid(scn.config)
    scene = scn.scene()
    print(f"scenario OK: {len(scene.objects)} objects, "
          f"{len(scene.human_bins)} humans, {len(grid)} range bins")
    print(f"bin spacing {grid.delta_d:.6f} m, max range {grid.d_max:.4f} m, "
          f"window L = {scn.config.L} frames, hop {scn.config.hop_frames} frames")
    for kind, d_req, d_eff, delta in scene.snap_report():
        print(f"  {kind:17s} requested {d_req:.4f} m -> bin distance {d_eff:.4f} m "
              f"(shift {delta:+.4f} m)")


def cmd_localize(args) -> None:
    scn = parse_scenario(args.scenario)
    snr_db, seed, _ = _resolve(scn, args)
    scene = scn.scene()
    grid = build_range_grid(scn.config)
    window = _first_window(scn, snr_db, seed)

    from .harness import localize_jsr
    top_k = max(1, len(scene.objects))
    supports = [
        localize_jsr(window, scn.config, scn.bands, scn.solver),
        localize_max_avg_power(build_range_slow_time_map(window, grid), top_k, grid),
        localize_std(build_range_slow_time_map(window, grid), top_k, grid),
    ]
    os.makedirs(args.out, exist_ok=True)
    out_csv = os.path.join(args.out, "localization.csv")
    write_localization_csv(supports, out_csv)
    for sup in supports:
        print(f"{sup.method}: bins {sup.bins.tolist()}")
    print(f"wrote {out_csv}")
    if args.plots:
        from .plots import plot_localization
        out_svg = os.path.join(args.out, "localization.svg")
        plot_localization(supports, grid, out_svg, human_bins=scene.human_bins)
        print(f"wrote {out_svg}")


def cmd_map(args) -> None:
    scn = parse_scenario(args.scenario)
    snr_db, seed, _ = _resolve(scn, args)
    grid = build_range_grid(scn.config)
    rst_map = build_range_slow_time_map(_first_window(scn, snr_db, seed), grid)
    os.makedirs(args.out, exist_ok=True)
    out_csv = os.path.join(args.out, "range_map.csv")
    write_map_csv(rst_map, out_csv)
    print(f"wrote {out_csv}")
    if args.plots:
        from .plots import plot_range_map
        out_svg = os.path.join(args.out, "range_map.svg")
        plot_range_map(rst_map, scn.config.f_s, out_svg)
        print(f"wrote {out_svg}")


def cmd_monitor(args) -> None:
    scn = parse_scenario(args.scenario)
    snr_db, seed, methods = _resolve(scn, args)
    duration = scn.duration_s if args.duration is None else args.duration
    session = run_monitoring(
        scn.scene(), scn.config, snr_db, seed, methods=methods, bands=scn.bands,
        solver=scn.solver, duration_s=duration, localizer=scn.localizer)
    card = score(session)
    os.makedirs(args.out, exist_ok=True)
    est_csv = os.path.join(args.out, "estimates.csv")
    scores_csv = os.path.join(args.out, "scores.csv")
    write_estimates_csv(session, est_csv)
    write_scores_csv(card, scores_csv)
    print(f"monitored bins {session.bins.tolist()} "
          f"({session.timestamps.shape[0]} estimates per method)")
    for r in card.rows:
        pcc = "null" if r.pcc is None else f"{r.pcc:.3f}"
        print(f"  {r.method:9s} {r.vital}: SR {r.success_rate:6.2f}%  "
              f"PCC {pcc}  MAE {r.mae:.3f}  RMSE {r.rmse:.3f}")
    print(f"wrote {est_csv}")
    print(f"wrote {scores_csv}")
    if args.plots:
        from .plots import plot_estimates
        out_svg = os.path.join(args.out, "estimates.svg")
        plot_estimates(session, out_svg)
        print(f"wrote {out_svg}")


def _float_list(text, where):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise RadarVitalsError(f"{where}: expected comma-separated numbers, got {text!r}") from exc


def cmd_sweep(args) -> None:
    scn = parse_scenario(args.scenario)
    snr_db, seed, methods = _resolve(scn, args)
    snr_list = _float_list(args.snr_list, "--snr-list") if args.snr_list else [snr_db]
    seeds = [int(s) for s in _float_list(args.seeds, "--seeds")] if args.seeds else [seed]
    duration = scn.duration_s if args.duration is None else args.duration
    card = sweep_snr(
        scn.scene(), scn.config, snr_list, seeds, methods=methods, bands=scn.bands,
        solver=scn.solver, duration_s=duration, localizer=scn.localizer,
        cohort=scn.cohort or None, cohort_target=scn.cohort_target)
    os.makedirs(args.out, exist_ok=True)
    out_csv = os.path.join(args.out, "scores.csv")
    write_scores_csv(card, out_csv)
    print(f"swept {len(snr_list)} SNR points x {len(seeds)} seeds "
          f"x {max(1, len(scn.cohort))} subjects")
    print(f"wrote {out_csv}")
    if args.plots:
        from .plots import plot_sweep
        for metric in ("mae", "success_rate"):
            out_svg = os.path.join(args.out, f"sweep_{metric}.svg")
            plot_sweep(card, metric, out_svg)
            print(f"wrote {out_svg}")


COMMANDS = {
    "validate": cmd_validate,
    "localize": cmd_localize,
    "map": cmd_map,
    "monitor": cmd_monitor,
    "sweep": cmd_sweep,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except RadarVitalsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
