"""S-curves of the first-kind family for a few (c1, c2) pairs, with the density of mu along them."""
import os

from _common import parse, plt, save, write_csv
from multimeixner.curves import branch_points, trace_gamma
from multimeixner.params import ParamsFirst

PAIRS = ((0.5, 0.25), (0.5, 0.2), (0.5, 0.146446), (0.6, 0.3))
args = parse(__doc__, step=dict(type=float, default=0.01))
fig, ax = plt.subplots(figsize=(6, 4))
for c1, c2 in PAIRS:
    g = trace_gamma(c1, c2, args.step)
    write_csv(os.path.join(args.out, f"gamma_{c1}_{c2}.csv"), ("re", "im", "arclength", "density"),
              [(float(z.real), float(z.imag), float(s), float(f))
               for z, s, f in zip(g.points, g.arclength, g.density)])
    line, = ax.plot(g.points.real, g.points.imag, lw=1, label=f"({c1}, {c2}), mass {g.mass:.4f}")
    bs = branch_points(ParamsFirst(1.0, c1, c2))
    ax.plot(bs.real_points, [0] * len(bs.real_points), "|", color=line.get_color())
ax.axhline(0, color="gray", lw=0.5)
ax.set(xlabel="Re z", ylabel="Im z", aspect="equal")
ax.legend(fontsize=7)
save(fig, os.path.join(args.out, "gamma.svg"))
