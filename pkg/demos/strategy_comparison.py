"""
Run every control strategy on the bundled scenario and compare how fast each
drives the barycenter to the target.  Uses the same compare() the CLI exposes,
then re-reads the per-strategy CSVs for plotting.
"""
import csv
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from influencekit.cli import THRESHOLD, compare, load_config, seed_scenario_path

STRATEGIES = ["zero", "linf_um", "l1_um", "linf_free", "l1_free", "thm1", "thm2"]
OUT_DIR = os.path.join(os.path.dirname(__file__), "output", "strategy_comparison")


def read_column(path, name):
    with open(path) as fh:
        rows = list(csv.DictReader(fh))
    return [float(r[name]) for r in rows]


def main():
    config = load_config(seed_scenario_path())
    rows, failures = compare(config, STRATEGIES, OUT_DIR)
    for strat, msg in failures:
        print(f"{strat} failed: {msg}")

    print(f"{'strategy':>10} {'t_to_0.05':>10} {'final_dist':>11} "
          f"{'mass_drift':>11} {'mean_active':>11}")
    for row in rows:
        drift = row["max_total_mass"] - row["min_total_mass"]
        print(f"{row['strategy']:>10} {row['time_to_threshold']:>10.4g} "
              f"{row['final_dist']:>11.4g} {drift:>11.4g} {row['mean_active']:>11.3g}")

    fig, ax = plt.subplots(figsize=(7, 4.5))
    for row in rows:
        strat = row["strategy"]
        sub = os.path.join(OUT_DIR, strat, "trajectory.csv")
        if not os.path.exists(sub):
            continue
        t = read_column(sub, "t")
        dist = read_column(sub, "dist_target")
        ax.plot(t, dist, label=strat)
    ax.axhline(THRESHOLD, color="gray", ls=":", lw=1, label=f"threshold {THRESHOLD}")
    ax.set_xlabel("t")
    ax.set_ylabel("|barycenter - target|")
    ax.legend(fontsize=8)
    fig.tight_layout()
    out = os.path.join(OUT_DIR, "distance_curves.png")
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
