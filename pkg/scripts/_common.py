"""Shared output helpers for the figure scripts."""
import argparse
import csv
import os

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "multimeixner"
import matplotlib.pyplot as plt  # noqa: E402


def parse(description, **extra):
    ap = argparse.ArgumentParser(description=description)
    ap.add_argument("--out", default="figures", help="output directory")
    for name, kw in extra.items():
        ap.add_argument(f"--{name}", **kw)
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    return args


def write_csv(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows([f"{v:.15g}" if isinstance(v, float) else v for v in r] for r in rows)
    print("wrote", path)


def save(fig, path):
    fig.savefig(path, metadata={"Date": None, "Creator": None})
    plt.close(fig)
    print("wrote", path)
