"""Named check suites shared by the ``verify`` command and the acceptance tests.

Each check records the measured value, its threshold and whether it passed.
Checks marked ``known_deviation`` test a closed form exactly as published that
the computation contradicts; they are reported but do not decide the verdict.
"""
from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass
from typing import Callable, Dict, List

import numpy as np

from . import curves, equilibrium, polyeval, regimes, transition, zerofind
from .params import ParamsClassical, ParamsFirst, ParamsSecond


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    threshold: float
    passed: bool
    known_deviation: bool = False

    def as_dict(self):
        return asdict(self)


def _le(name, value, threshold, known=False) -> Check:
    value = float(value)
    return Check(name, value, float(threshold), bool(value <= threshold), known)


def verdict(checks: List[Check]) -> bool:
    return all(c.passed for c in checks if not c.known_deviation)


SERIES_FIRST = (ParamsFirst(1.0, 0.5, 1 / 3), ParamsFirst(1.5, 0.4, 0.7), ParamsFirst(2.5, 0.2, 0.6))
SERIES_SECOND = (ParamsSecond(1.2, 1.9, 0.5), ParamsSecond(1.0, 1.5, 0.3), ParamsSecond(2.3, 0.6, 0.7))


def _coeff_rel(a, b) -> float:
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300)))


def suite_series(max_total: int = 8) -> List[Check]:
    out = []
    for kind, sets, oracle in (("first", SERIES_FIRST, polyeval.series_first_coeffs),
                               ("second", SERIES_SECOND, polyeval.series_second_coeffs)):
        worst = 0.0
        for p in sets:
            seq = polyeval.build_stepline(kind, p, max_total)
            for k in range(max_total + 1):
                worst = max(worst, _coeff_rel(seq.polys[k].coeffs, oracle(seq.index(k), p)))
        out.append(_le(f"{kind} kind stepline coefficients vs double sum (relative)", worst, 1e-9))
    return out


def suite_orthogonality(max_total: int = 6, K: int = 400) -> List[Check]:
    out = []
    for kind, sets in (("first", (ParamsFirst(1.0, 0.5, 1 / 3), ParamsFirst(1.5, 0.4, 0.7),
                                  ParamsFirst(2.5, 0.2, 0.6))),
                       ("second", (ParamsSecond(1.2, 1.9, 0.5), ParamsSecond(1.0, 1.5, 0.3),
                                   ParamsSecond(2.3, 0.6, 0.7)))):
        worst = 0.0
        for p in sets:
            seq = polyeval.build_stepline(kind, p, max_total)
            for k in range(1, max_total + 1):
                idx = seq.index(k)
                for which, j in polyeval.defining_conditions(kind, idx):
                    w = polyeval.WeightSpec(kind, which, p)
                    r = abs(polyeval.orthogonality_residual(seq.polys[k], w, j, K))
                    worst = max(worst, r)
        out.append(_le(f"{kind} kind orthogonality residual, K={K}", worst, 1e-8))
    return out


def suite_classical() -> List[Check]:
    c = 0.25
    p = ParamsClassical(1.0, c)
    bs = curves.branch_points(p)
    err = max(abs(bs.real_points[0] - 1 / 3), abs(bs.real_points[-1] - 3))
    d = curves.density_lambda(p)
    xs = np.linspace(0.01, bs.e1 - 0.01, 200)
    sat = float(np.max(np.abs(d.density(xs) - 1)))
    out = [_le("branch points equal (1/3, 3)", err, 1e-12),
           _le("density equals 1 on the saturated interval", sat, 1e-8),
           _le("total mass minus 1", abs(d.mass - 1), 1e-6)]
    for cc in (0.25, 0.5):
        rep = equilibrium.classical_equilibrium(cc)
        out.append(_le(f"c={cc}: sup deviation of 2P + V from its mean on [e1, e2]",
                       rep.max_residual, 1e-3))
        kappa = rep.kappa_estimate
        out.append(_le(f"c={cc}: mean of 2P + V vs 2 + 2 ln((1-c)/sqrt(c))",
                       abs(kappa - (2 + 2 * math.log((1 - cc) / math.sqrt(cc)))), 1e-3))
        out.append(_le(f"c={cc}: mean vs published constant 1 + ln((1-c)/c)",
                       rep.extra["kappa_error"], 1e-3, known=True))
    return out


def suite_spectral() -> List[Check]:
    rng = np.random.default_rng(7)
    z = (rng.uniform(-20, 20, 100) + 1j * rng.uniform(-20, 20, 100))
    out = []
    for c1, c2 in ((0.5, 0.25), (0.9, 0.05), (0.3, 0.7)):
        r = curves.cubic_first(z, c1, c2).roots
        dev = np.max(np.abs(np.prod(r, axis=-1) - 1 / (c1 * c2))) * c1 * c2
        out.append(_le(f"first kind ({c1}, {c2}) root product 1/(c1 c2)", dev, 1e-10))
    for c in (0.25, 0.5, 0.75):
        r = curves.cubic_second(z, c).roots
        dev = np.max(np.abs(np.prod(r, axis=-1) - 1 / c ** 2)) * c * c
        out.append(_le(f"second kind c={c} root product 1/c^2", dev, 1e-10))
    far = 1e6 * np.exp(1j * np.linspace(0.05, 2 * math.pi - 0.05, 24))
    r = np.sort_complex(curves.cubic_first(far, 0.5, 0.25).roots)
    dev = np.max(np.abs(np.sort(np.abs(r), axis=-1) - np.array([1, 2, 4])))
    out.append(_le("first kind roots at |z|=1e6 near {1, 1/c1, 1/c2}", dev, 1e-4))
    for c in (0.25, 0.5, 0.75):
        r = curves.cubic_second(far, c).roots
        dev = np.max(np.abs(np.sort(np.abs(r), axis=-1) - np.array([1, 1 / c, 1 / c])))
        out.append(_le(f"second kind c={c} roots at |z|=1e6 near {{1, s, s}}", dev, 1e-4))
        bs = curves.branch_points(ParamsSecond(1.2, 1.9, c))
        rp = bs.real_points
        ok = len(rp) == 3 and rp[0] < 0 < rp[1] < rp[2]
        out.append(Check(f"second kind c={c} ordering e- < 0 < e1 < e2", float(ok), 1.0, ok))
    return out


def suite_masses() -> List[Check]:
    out = []
    for label, p in (("first (0.5, 0.25)", ParamsFirst(1.0, 0.5, 0.25)),
                     ("second c=0.5", ParamsSecond(1.2, 1.9, 0.5))):
        d = curves.density_lambda(p)
        out.append(_le(f"{label}: lambda mass minus 2", abs(d.mass - 2), 1e-6))
        lo, hi = float(np.min(d.values)), float(np.max(d.values))
        out.append(_le(f"{label}: constraint violation of 0 <= lambda' <= 1",
                       max(0.0, -lo, hi - 1), 0.0))
    mu = curves.density_mu_second(0.5)
    em = curves.branch_points(ParamsSecond(1.2, 1.9, 0.5)).e_minus
    out.append(_le("second kind: total mu mass minus 1", abs(mu.mass - 1), 1e-5))
    out.append(_le("second kind: constraint violation of 0 <= mu' <= 1",
                   max(0.0, -float(np.min(mu.values)), float(np.max(mu.values)) - 1), 0.0))
    restricted = float(mu.cdf(0.0) - mu.cdf(em))
    out.append(_le("second kind: mu mass carried by [e-, 0] minus 1", abs(restricted - 1), 1e-5,
                   known=True))
    return out


def _cubic_rel_residual(coeffs, phi) -> float:
    coeffs = np.asarray(coeffs, dtype=complex)
    val = np.polyval(coeffs, phi)
    return float(abs(val) / np.max(np.abs(coeffs)))


def suite_chain() -> List[Check]:
    out = []
    cases = (("classical c=0.5", ParamsClassical(1.0, 0.5)),
             ("second c=0.5", ParamsSecond(1.2, 1.9, 0.5)),
             ("first (0.5, 0.25)", ParamsFirst(1.0, 0.5, 0.25)))
    for label, p in cases:
        rep = equilibrium.verify_h_equals_ln_phi(p)
        out.append(_le(f"{label}: Cauchy transform vs ln phi0 on |z|=5", rep.max_residual, 5e-4))
    pts = equilibrium.circle_points(5.0, 20)
    for kind, p in (("second", cases[1][1]), ("first", cases[2][1])):
        dev = res = 0.0
        for t in pts:
            u = transition.uniformization_at(t, p, kind)
            h = transition.dF_dt(kind, u.parameter, p)
            dev = max(dev, abs(h - np.log(curves.branch_phi0(t, p, kind))))
            co = curves.curve_coeffs(kind, p, t)
            res = max(res, _cubic_rel_residual(co, np.exp(h)))
        out.append(_le(f"{kind} kind: dF/dt vs ln phi0 at 20 points", dev, 1e-6))
        out.append(_le(f"{kind} kind: cubic residual of exp(dF/dt)", res, 1e-8))
    return out


def suite_transition() -> List[Check]:
    ts = np.linspace(-5.0, 15.0, 10)
    as_ = np.linspace(0.0, 3.0, 10)
    printed = corrected = 0.0
    for t in ts:
        for a in as_:
            m = transition.charpoly_matrix(transition.A1_second(t, a))
            pr = transition.charpoly_second(t, a)
            printed = max(printed, float(np.max(np.abs(m - pr))))
            corrected = max(corrected, float(np.max(np.abs(m - (pr + np.array([0, 1, 0, 0]))))))
    out = [_le("A1 characteristic polynomial vs published P(L,t)", printed, 1e-14, known=True),
           _le("A1 characteristic polynomial vs published P(L,t) + L^2", corrected, 1e-14)]
    rng = np.random.default_rng(11)
    worst2 = 0.0
    for _ in range(50):
        c = float(rng.uniform(0.05, 0.95))
        L = complex(rng.normal(0, 3), rng.normal(0, 3))
        u = transition.uniformize_second(L, c)
        a = c / (1 - c)
        cp = transition.charpoly_matrix(transition.A1_second(u.t_value, a))
        worst2 = max(worst2, abs(np.polyval(cp, L)) / max(1.0, abs(L)) ** 3)
    out.append(_le("second kind uniformization residual", worst2, 1e-8))
    worst1 = 0.0
    for _ in range(50):
        c1, c2 = rng.uniform(0.05, 0.95, 2)
        if abs(c1 - c2) < 0.05:
            continue
        s = complex(rng.normal(0, 3), rng.normal(0, 3))
        u = transition.uniformize_first(s, c1, c2)
        m = transition.A_first(u.t_value, c1 / (1 - c1), c2 / (1 - c2))
        cp = transition.charpoly_matrix(m)
        scale = max(1.0, abs(u.L_value)) ** 3 * max(1.0, float(np.max(np.abs(m)))) ** 3
        worst1 = max(worst1, abs(np.polyval(cp, u.L_value)) / scale)
    out.append(_le("first kind uniformization residual", worst1, 1e-8))
    gap = max(transition.second_kind_limits_gap(t, ParamsSecond(1.2, 1.9, c))
              for t in (-1.0, 2.0 + 1.0j, 12.0) for c in (0.25, 0.5))
    out.append(_le("second kind: both half-step limits coincide (n = 1e6)", gap, 1e-4))
    return out


def suite_zeros() -> List[Check]:
    t0 = time.perf_counter()
    out = []

    def dist(kind, p, n):
        k = n if kind == "classical" else 2 * n
        seq = polyeval.build_stepline(kind, p, k)
        z = zerofind.zeros_of(seq, k)
        mass = 1.0 if kind == "classical" else 2.0
        return zerofind.kolmogorov(zerofind.empirical_cdf(z, mass), curves.density_lambda(p))

    pc = ParamsClassical(1.0, 0.25)
    out.append(_le("classical c=0.25: Kolmogorov distance at n=150", dist("classical", pc, 150), 0.05))
    for label, kind, p in (("first (0.5, 0.25)", "first", ParamsFirst(1.0, 0.5, 0.25)),
                           ("second (1.2, 1.9, 0.5)", "second", ParamsSecond(1.2, 1.9, 0.5))):
        d50, d100 = dist(kind, p, 50), dist(kind, p, 100)
        out.append(_le(f"{label}: Kolmogorov distance at n=100", d100, 0.08))
        out.append(_le(f"{label}: d(100) / d(50)", d100 / d50, 1.25))
    out.append(_le("zero suite runtime in seconds", time.perf_counter() - t0, 120.0))
    return out


def suite_regimes() -> List[Check]:
    out = []
    lab = regimes.classify(0.5, 0.25).label
    out.append(Check("(0.5, 0.25) is N", float(lab == "N"), 1.0, lab == "N"))
    lab = regimes.classify(0.5, 0.146446, tol=1e-3).label
    out.append(Check("(0.5, 0.146446) is boundary_N", float(lab == "boundary_N"), 1.0,
                     lab == "boundary_N"))
    g = np.linspace(0.03, 0.97, 15)
    asym = sum(regimes.classify(x, y).label != regimes.classify(y, x).label
               for x in g for y in g if x != y)
    out.append(_le("classification asymmetries on a 15x15 grid", asym, 0))
    gaps = [curves.branch_points(ParamsFirst(1.0, a, b)).min_gap()
            for a, b in regimes.gn_boundary_points(samples=60)]
    out.append(_le("largest branch gap on GN boundary points", max(gaps), 1e-4))
    return out


def suite_gamma() -> List[Check]:
    out = []
    g = curves.trace_gamma(0.5, 0.25)
    out.append(Check("(0.5, 0.25): trace avoids the positive axis",
                     g.min_distance_to_positive_axis(), 0.0, g.min_distance_to_positive_axis() > 0))
    e, eb = curves.branch_points(ParamsFirst(1.0, 0.5, 0.25)).complex_pair
    end = max(abs(g.points[0] - e), abs(g.points[-1] - eb))
    out.append(_le("(0.5, 0.25): endpoints vs complex branch pair", end, 1e-6))
    gc = curves.trace_gamma(0.5, 0.146446)
    out.append(_le("critical pair: distance from trace to origin", gc.min_distance_to(0j), 1e-2))
    e, eb = curves.branch_points(ParamsFirst(1.0, 0.5, 0.146446)).complex_pair
    end = max(abs(gc.points[0] - e), abs(gc.points[-1] - eb))
    out.append(_le("critical pair: endpoints vs complex branch pair", end, 1e-6))
    return out


def suite_asymptotics() -> List[Check]:
    t0 = time.perf_counter()
    out = []
    for label, p in (("second c=0.5", ParamsSecond(1.2, 1.9, 0.5)),
                     ("first (0.5, 0.25)", ParamsFirst(1.0, 0.5, 0.25))):
        e2 = curves.branch_points(p).e2
        for t in (-1.0, e2 + 1):
            d50 = transition.asymptotic_discrepancy(t, 50, p)
            d200 = transition.asymptotic_discrepancy(t, 200, p)
            out.append(_le(f"{label}, t={t:.6g}: discrepancy at n=200", d200, 0.05))
            out.append(_le(f"{label}, t={t:.6g}: discrepancy n=200 minus n=50", d200 - d50, 0.0))
    out.append(_le("asymptotics suite runtime in seconds", time.perf_counter() - t0, 60.0))
    return out


def suite_equilibrium() -> List[Check]:
    out = []
    fr = equilibrium.first_kind_equilibrium_residuals(0.5, 0.25)
    out.append(_le("first kind: W1 flatness on [e1, e2]", fr.extra["w1_deviation"], 5e-3))
    out.append(_le("first kind: W2 flatness on the S-curve", fr.extra["w2_deviation"], 5e-3))
    out.append(_le("first kind: mu mass on the S-curve minus 1", abs(fr.extra["mass_mu"] - 1), 1e-3))
    sr = equilibrium.second_kind_equilibrium_residuals(0.5)
    out.append(_le("second kind: W1 flatness on [e1, e2]", sr.extra["w1_deviation"], 5e-3))
    out.append(_le("second kind: W2 flatness left of e-", sr.extra["w2_deviation"], 5e-3))
    out.append(_le("second kind: W1 - kappa1 on the saturated interval", sr.extra["saturation_margin"],
                   -1e-4))
    out.append(Check("second kind: W1 - kappa1 beyond e2 is positive", sr.extra["free_margin"], 0.0,
                     sr.extra["free_margin"] > 0))
    return out


SUITES: Dict[str, Callable[[], List[Check]]] = {
    "series": suite_series,
    "orthogonality": suite_orthogonality,
    "classical": suite_classical,
    "spectral": suite_spectral,
    "masses": suite_masses,
    "chain": suite_chain,
    "transition": suite_transition,
    "zeros": suite_zeros,
    "regimes": suite_regimes,
    "gamma": suite_gamma,
    "asymptotics": suite_asymptotics,
    "equilibrium": suite_equilibrium,
}


def run_suite(name: str) -> dict:
    if name not in SUITES:
        raise KeyError(name)
    checks = SUITES[name]()
    return {"suite": name, "passed": verdict(checks), "checks": [c.as_dict() for c in checks]}
