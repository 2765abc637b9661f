"""Normalized log |M_{n,n}(nt)| against the closed-form main term for both multiple kinds."""
import os

import numpy as np

from _common import parse, plt, save, write_csv
from multimeixner.curves import branch_points
from multimeixner.params import ParamsFirst, ParamsSecond
from multimeixner.transition import F_at, asymptotic_discrepancy

CASES = (("first", ParamsFirst(1.0, 0.5, 0.25)), ("second", ParamsSecond(1.2, 1.9, 0.5)))
args = parse(__doc__, n=dict(default="25,50,100,200,400", help="comma list of n"))
ns = [int(v) for v in args.n.split(",")]
rows = []
fig, ax = plt.subplots(figsize=(5, 4))
for kind, p in CASES:
    e2 = branch_points(p).e2
    for t in (-1.0, e2 + 1):
        ds = [asymptotic_discrepancy(t, n, p) for n in ns]
        rows.extend((kind, t, n, float(F_at(t, p).real), d) for n, d in zip(ns, ds))
        ax.loglog(ns, ds, "o-", ms=3, label=f"{kind}, t={t:.3g}")
ax.loglog(ns, 3.0 / np.array(ns), "k:", lw=0.8, label="3/n")
write_csv(os.path.join(args.out, "asymptotics.csv"), ("kind", "t", "n", "main_term", "error"), rows)
ax.set(xlabel="n", ylabel="discrepancy")
ax.legend(fontsize=7)
save(fig, os.path.join(args.out, "asymptotics.svg"))
