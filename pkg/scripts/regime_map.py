"""Regime labels of the first-kind family on a grid of (c1, c2), with both boundary curves."""
import math
import os

import numpy as np

from _common import parse, plt, save, write_csv
from multimeixner.regimes import LABELS, classify, gn_boundary_points, nikishin_bounds

args = parse(__doc__, size=dict(type=int, default=60, help="grid points per axis"))
g = np.linspace(0.01, 0.99, args.size)
rows, codes = [], np.full((g.size, g.size), np.nan)
for i, c2 in enumerate(g):
    for j, c1 in enumerate(g):
        if abs(c1 - c2) < 1e-6:
            continue
        lab = classify(float(c1), float(c2)).label
        rows.append((float(c1), float(c2), lab))
        codes[i, j] = LABELS.index(lab)
write_csv(os.path.join(args.out, "regimes.csv"), ("c1", "c2", "label"), rows)

fig, ax = plt.subplots(figsize=(5, 5))
ax.pcolormesh(g, g, codes, cmap="Pastel1", shading="nearest", vmin=0, vmax=len(LABELS) - 1)
gn = np.array(gn_boundary_points(samples=400))
ax.plot(gn[:, 0], gn[:, 1], "k-", lw=1, label="GN boundary")
ax.plot(gn[:, 1], gn[:, 0], "k-", lw=1)
c2s = np.linspace(0.005, 0.995, 400)
ax.plot([nikishin_bounds(c)[0] for c in c2s], c2s, "b--", lw=1, label="N boundary")
ax.plot([nikishin_bounds(c)[1] for c in c2s], c2s, "b--", lw=1)
ax.plot([0.5], [1 / (4 + 2 * math.sqrt(2))], "ro", ms=3)
ax.set(xlim=(0, 1), ylim=(0, 1), xlabel="c1", ylabel="c2")
ax.legend(loc="upper left", fontsize=7)
save(fig, os.path.join(args.out, "regimes.svg"))
