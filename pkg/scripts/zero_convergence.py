"""Kolmogorov distance between scaled zero counts and the limiting density as n grows."""
import os

from _common import parse, plt, save, write_csv
from multimeixner.curves import density_lambda
from multimeixner.params import ParamsClassical, ParamsFirst, ParamsSecond
from multimeixner.polyeval import build_stepline
from multimeixner.zerofind import empirical_cdf, kolmogorov, zeros_of

CASES = (("classical", ParamsClassical(1.0, 0.25)),
         ("first", ParamsFirst(1.0, 0.5, 0.25)),
         ("second", ParamsSecond(1.2, 1.9, 0.5)))
args = parse(__doc__, n=dict(default="25,50,100,150", help="comma list of n"))
ns = [int(v) for v in args.n.split(",")]
rows = []
fig, ax = plt.subplots(figsize=(5, 4))
for kind, p in CASES:
    lam = density_lambda(p)
    mass = 1.0 if kind == "classical" else 2.0
    ds = []
    for n in ns:
        k = n if kind == "classical" else 2 * n
        z = zeros_of(build_stepline(kind, p, k), k)
        ds.append(kolmogorov(empirical_cdf(z, mass), lam))
        rows.append((kind, n, ds[-1]))
    ax.loglog(ns, ds, "o-", ms=3, label=kind)
write_csv(os.path.join(args.out, "zero_convergence.csv"), ("kind", "n", "kolmogorov"), rows)
ax.set(xlabel="n", ylabel="Kolmogorov distance")
ax.legend()
save(fig, os.path.join(args.out, "zero_convergence.svg"))
