"""Acceptance criteria 1-11, one test per criterion.

Each test runs the matching suite from ``multimeixner.verify`` and asserts the
checks at their stated tolerances.  Three criteria also contain a closed form
that the computation contradicts (see ``known_deviation`` in the suites); each
of those is asserted verbatim in a strict xfail test, and its criterion line
reports FAIL.

A summary line per criterion is printed at the end of the pytest run, or by
running this file directly.
"""
import functools
import sys
import time

import pytest

from multimeixner import verify

CRITERIA = {
    1: ("series", "recurrence vs double-sum coefficients", 10.0),
    2: ("orthogonality", "orthogonality residuals", 30.0),
    3: ("classical", "classical anchors", None),
    4: ("spectral", "spectral-curve invariants", None),
    5: ("masses", "masses and constraint", None),
    6: ("chain", "Cauchy transform, ln phi0 and dF/dt chain", None),
    7: ("transition", "transition anchors", None),
    8: ("zeros", "zero-distribution convergence", 120.0),
    9: ("regimes", "regime classification", None),
    10: ("gamma", "S-curve", None),
    11: ("asymptotics", "main-term asymptotics", 60.0),
}


@functools.lru_cache(maxsize=None)
def run(number):
    suite, _, _ = CRITERIA[number]
    t0 = time.perf_counter()
    checks = verify.SUITES[suite]()
    return checks, time.perf_counter() - t0


def summarize(number):
    checks, elapsed = run(number)
    _, title, budget = CRITERIA[number]
    bad = [c for c in checks if not c.passed]
    slow = budget is not None and elapsed > budget
    status = "PASS" if not bad and not slow else "FAIL"
    detail = f"{len(checks) - len(bad)}/{len(checks)} checks, {elapsed:.1f} s"
    if budget is not None:
        detail += f" (budget {budget:.0f} s)"
    for c in bad:
        tag = "published form" if c.known_deviation else "failed"
        detail += f"; {tag}: {c.name} = {c.value:.3g} > {c.threshold:.3g}"
    line = f"criterion {number:2d} [{title}]: {status} - {detail}"
    return line


def check_internal(number):
    checks, elapsed = run(number)
    budget = CRITERIA[number][2]
    failed = [c for c in checks if not c.passed and not c.known_deviation]
    assert not failed, "; ".join(f"{c.name}: {c.value} > {c.threshold}" for c in failed)
    if budget is not None:
        assert elapsed < budget


def check_published(number):
    checks, _ = run(number)
    dev = [c for c in checks if c.known_deviation]
    assert dev
    for c in dev:
        assert c.passed, f"{c.name}: {c.value} > {c.threshold}"


@pytest.fixture(autouse=True)
def _record(request, acceptance_log):
    yield
    number = getattr(request.node.function, "criterion", None)
    if number is not None:
        acceptance_log[number] = summarize(number)


def criterion(number):
    def wrap(fn):
        fn.criterion = number
        return fn
    return wrap


@criterion(1)
def test_criterion_1():
    check_internal(1)


@criterion(2)
def test_criterion_2():
    check_internal(2)


@criterion(3)
def test_criterion_3():
    check_internal(3)


@pytest.mark.xfail(strict=True, reason="2P + V is flat on the band but its level is not 1 + ln((1-c)/c)")
def test_criterion_3_published_constant():
    check_published(3)


@criterion(4)
def test_criterion_4():
    check_internal(4)


@criterion(5)
def test_criterion_5():
    check_internal(5)


@pytest.mark.xfail(strict=True, reason="mu lives on (-inf, 0]; [e-, 0] carries only |e-| of its mass")
def test_criterion_5_mass_on_e_minus_zero():
    check_published(5)


@criterion(6)
def test_criterion_6():
    check_internal(6)


@criterion(7)
def test_criterion_7():
    check_internal(7)


@pytest.mark.xfail(strict=True, reason="the published cubic lacks the +L^2 term of det(L - A)")
def test_criterion_7_published_charpoly():
    check_published(7)


@criterion(8)
def test_criterion_8():
    check_internal(8)


@criterion(9)
def test_criterion_9():
    check_internal(9)


@criterion(10)
def test_criterion_10():
    check_internal(10)


@criterion(11)
def test_criterion_11():
    check_internal(11)


if __name__ == "__main__":
    ok = True
    for n in CRITERIA:
        line = summarize(n)
        ok &= " PASS " in line
        print(line, flush=True)
    sys.exit(0 if ok else 1)
