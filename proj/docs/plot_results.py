#!/usr/bin/env python3
"""Plot sweep CSVs produced by `tascap run`.

Example:
    tascap run configs/mean_vs_q.conf --out mean_vs_q.csv
    python3 docs/plot_results.py mean_vs_q.csv -o mean_vs_q.png
"""
import argparse
import csv
import sys
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def load(path):
    rows = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            if row["status"] != "ok":
                continue
            rows.append(row)
    if not rows:
        sys.exit(f"{path}: no usable rows (all out-of-regime or errored?)")
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("csv_path")
    parser.add_argument("-o", "--out", default="results.png")
    parser.add_argument("--bits", action="store_true",
                        help="plot bits/s/Hz instead of nats/s/Hz")
    args = parser.parse_args()

    rows = load(args.csv_path)
    sweep_var = rows[0]["sweep_var"]
    scale = 1.4426950408889634 if args.bits else 1.0
    unit = "bits/s/Hz" if args.bits else "nats/s/Hz"

    # One curve per (method, antenna count).
    curves = defaultdict(list)
    for row in rows:
        key = (row["method"], int(row["n_antennas"]))
        curves[key].append((float(row["sweep_value"]),
                            scale * float(row["value_nats"]),
                            row["ci_low"], row["ci_high"]))

    fig, ax = plt.subplots(figsize=(7, 5))
    for (method, n), points in sorted(curves.items()):
        points.sort()
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        label = f"{method}, N={n}" if len({k[1] for k in curves}) > 1 else method
        if method == "mc" and points[0][2]:
            lo = [scale * float(p[2]) for p in points]
            hi = [scale * float(p[3]) for p in points]
            ax.errorbar(xs, ys, yerr=[[y - l for y, l in zip(ys, lo)],
                                      [h - y for y, h in zip(ys, hi)]],
                        fmt="o", ms=4, capsize=3, label=label)
        else:
            ax.plot(xs, ys, marker=".", label=label)

    if sweep_var == "N":
        ax.set_xscale("log")
        ax.set_xlabel("number of transmit antennas N")
    else:
        ax.set_xlabel(f"{sweep_var} (dB)")
    ax.set_ylabel(f"capacity ({unit})")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
