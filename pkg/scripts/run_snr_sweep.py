#!/usr/bin/env python3
"""SNR sweep of all four rate estimators on the bundled scenarios.

Thin wrapper around the ``radarvitals sweep`` subcommand that runs the
seven-object room across a default SNR grid and drops scores.csv plus SVG
plots under --out.

Usage: python scripts/run_snr_sweep.py [--out results/sweep]
       [--snr-list -10,-5,0,5,10] [--seeds 0,1,2,3,4] [--scenario path.scn]
"""

import argparse
import sys
from importlib import resources

from radarvitals.cli import main as cli_main


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results/sweep")
    ap.add_argument("--snr-list", default="-10,-5,0,5,10")
    ap.add_argument("--seeds", default="0,1,2,3,4")
    ap.add_argument("--scenario", default=None)
    args = ap.parse_args()

    scenario = args.scenario or str(
        resources.files("radarvitals") / "scenarios" / "table1.scn")
    return cli_main(["sweep", "--scenario", scenario,
                     "--snr-list", args.snr_list, "--seeds", args.seeds,
                     "--out", args.out, "--plots"])


if __name__ == "__main__":
    sys.exit(main())
