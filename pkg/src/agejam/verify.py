"""Self-check suites behind the ``verify`` CLI command.

Each check cross-validates one closed-form result against an independent
computation: the stationary pmf against the balance equations, the breakpoint
formulas against the reward-intersection ratio, and the value-iteration
solver against the breakpoint search.  ``fast`` runs a thinned grid in a few
seconds; ``full`` widens the grids and uses the production solver settings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import closedform, mdp, search
from .model import Metric, SystemParams, to_chain, validate_params


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _grid(level: str):
    if level == "fast":
        ps = qs = (0.2, 0.5, 0.8)
        rs = (0.25, 0.45)
        ns = range(0, 7)
    else:
        ps = qs = (0.1, 0.3, 0.5, 0.7, 0.9)
        rs = (0.1, 0.25, 0.4, 0.5)
        ns = range(0, 13)
    for p in ps:
        for q in qs:
            for r in rs:
                for metric in Metric:
                    yield SystemParams(p, q, r, 1.0), metric, ns


def _chain_probs(chain, n):
    """Increment probability out of each state under threshold n."""
    def h(i):
        if i == 0:
            return chain.a if n >= 1 else chain.a * chain.c / chain.b
        return chain.b if i < n else chain.c
    return h


def check_balance(level: str) -> CheckResult:
    """Closed-form pmf solves the full balance equations and sums to 1."""
    worst = 0.0
    worst_at = None
    for params, metric, ns in _grid(level):
        chain = to_chain(params, metric)
        for n in ns:
            cap = n + 60
            u = [closedform.stationary_pmf(chain, n, i) for i in range(cap + 2)]
            h = _chain_probs(chain, n)
            # One inbound edge to each positive state.
            for j in range(1, cap + 1):
                err = abs(u[j] - h(j - 1) * u[j - 1])
                if err > worst:
                    worst, worst_at = err, (params, metric, n, j)
            # All reset mass flows into 0; the geometric tail contributes
            # (1-c) * u(cap+1) / (1-c) = u(cap+1).
            into_zero = sum((1.0 - h(i)) * u[i] for i in range(cap + 1))
            into_zero += u[cap + 1]
            err = abs(u[0] - into_zero)
            if err > worst:
                worst, worst_at = err, (params, metric, n, 0)
            total = sum(u[:cap + 1]) + u[cap + 1] / (1.0 - chain.c)
            err = abs(total - 1.0)
            if err > worst:
                worst, worst_at = err, (params, metric, n, "norm")
    ok = worst < 1e-9
    return CheckResult("stationary-balance", ok,
                       f"max residual {worst:.3e} at {worst_at}")


def pmf_mean_and_tail(chain, n: int, from_state: int, cap: int | None = None):
    """(sum i*u(i), sum_{i>=from_state} u(i)) by direct pmf summation with
    analytic geometric tails; independent of the closed-form moment formulas."""
    if cap is None:
        cap = n + 80
    c = chain.c
    mean = 0.0
    tail = 0.0
    for i in range(cap + 1):
        ui = closedform.stationary_pmf(chain, n, i)
        mean += i * ui
        if i >= from_state:
            tail += ui
    m = cap + 1
    um = closedform.stationary_pmf(chain, n, m)
    mean += um * (m / (1.0 - c) + c / (1.0 - c) ** 2)
    tail += um / (1.0 - c)
    return mean, tail


def check_moments(level: str) -> CheckResult:
    """Closed-form average age / active time match pmf summation."""
    worst = 0.0
    worst_at = None
    for params, metric, ns in _grid(level):
        chain = to_chain(params, metric)
        for n in ns:
            mean, tail = pmf_mean_and_tail(chain, n, from_state=n)
            age = closedform.average_age(chain, n)
            active = closedform.average_active(chain, n)
            for got, want, label in ((age, mean, "age"), (active, tail, "active")):
                err = abs(got - want) / max(abs(want), 1e-12)
                if err > worst:
                    worst, worst_at = err, (params, metric, n, label)
    ok = worst < 1e-9
    return CheckResult("moment-consistency", ok,
                       f"max relative error {worst:.3e} at {worst_at}")


def exact_average_age(chain, n: int) -> Fraction:
    """Mean age as an exact rational (floats are exact binary rationals)."""
    a, b, c = Fraction(chain.a), Fraction(chain.b), Fraction(chain.c)
    bn1 = 1 / b if n == 0 else b ** (n - 1)
    d = (1 - b + a) * (1 - c) + a * (c - b) * bn1
    t1 = a * (1 - c) * (1 - (n + 1) * b * bn1 + n * b * b * bn1) / ((1 - b) * d)
    t2 = a * (1 - b) * bn1 * c * (n * (1 - c) + 1) / ((1 - c) * d)
    return t1 + t2


def exact_average_active(chain, n: int) -> Fraction:
    a, b, c = Fraction(chain.a), Fraction(chain.b), Fraction(chain.c)
    if n == 0:
        return Fraction(1)
    d = (1 - b + a) * (1 - c) + a * (c - b) * b ** (n - 1)
    return a * (1 - b) * b ** (n - 1) / d


def exact_breakpoint_ratio(chain, n: int) -> Fraction:
    """Definition of the breakpoint: intersection of consecutive rewards.

    Exact rational arithmetic, because the age/active differences shrink
    like b^n and cancel catastrophically in doubles for small b.
    """
    num = exact_average_age(chain, n + 1) - exact_average_age(chain, n)
    den = exact_average_active(chain, n + 1) - exact_average_active(chain, n)
    return num / den


def check_breakpoints(level: str) -> CheckResult:
    """Breakpoint closed form equals the reward-intersection ratio and is
    strictly increasing."""
    n_max = 20 if level == "fast" else 60
    worst = 0.0
    worst_at = None
    for params, metric, _ in _grid(level):
        chain = to_chain(params, metric)
        prev = -math.inf
        for n in range(n_max + 1):
            lam = closedform.lambda_breakpoint(chain, n)
            if lam <= prev:
                return CheckResult(
                    "breakpoints", False,
                    f"lambda({n}) = {lam} not above lambda({n - 1}) = {prev} "
                    f"at {(params, metric)}")
            prev = lam
            ratio = float(exact_breakpoint_ratio(chain, n))
            err = abs(lam - ratio) / max(abs(ratio), 1e-12)
            if err > worst:
                worst, worst_at = err, (params, metric, n)
    ok = worst < 1e-9
    return CheckResult("breakpoints", ok,
                       f"max relative error vs intersection ratio {worst:.3e} "
                       f"at {worst_at}")


def check_threshold_agreement(level: str) -> CheckResult:
    """Scan, breakpoint search, and the fixed-point iteration agree."""
    lams = [0.5, 1.0, 1.5, 2.0, 3.0, 5.0] if level == "fast" else \
        [0.2 + 0.2 * k for k in range(50)]
    for params, metric, _ in _grid(level):
        chain = to_chain(params, metric)
        for lam in lams:
            n_bp = search.find_threshold_breakpoints(chain, lam)
            n_scan = search.find_threshold_scan(chain, lam, n_cap=300)
            n_alg1 = search.find_threshold_alg1(chain, lam)
            # The scan may land on the twin of a reward tie (exact tie at a
            # breakpoint, or a floating-point tie when b^n has decayed
            # below double resolution).
            r_scan = closedform.average_reward(chain, n_scan, lam).reward
            r_bp = closedform.average_reward(chain, n_bp, lam).reward
            scale = max(abs(r_bp), 1.0)
            ok_scan = n_scan == n_bp or abs(r_scan - r_bp) <= 1e-12 * scale
            if not (ok_scan and n_alg1 == n_bp):
                return CheckResult(
                    "threshold-agreement", False,
                    f"scan={n_scan} breakpoints={n_bp} alg1={n_alg1} at "
                    f"{(params, metric, lam)}")
    return CheckResult("threshold-agreement", True, "all grid points agree")


def check_rvi(level: str) -> CheckResult:
    """Value-iteration gain and threshold match the closed-form optimum."""
    if level == "fast":
        scenarios = [(0.5, 0.5, 0.25)]
        lams = [1.0, 2.0, 5.0]
        cap, tol = 800, 1e-9
    else:
        scenarios = [(0.5, 0.5, 0.25), (0.1, 0.5, 0.5)]
        lams = [float(k) for k in range(1, 11)]
        cap, tol = 2000, 1e-10
    import warnings
    for p, q, r in scenarios:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            base = validate_params(p, q, r, 1.0)
        for metric in Metric:
            chain = to_chain(base, metric)
            for lam in lams:
                params = SystemParams(p, q, r, lam)
                sol = mdp.rvi_solve(params, metric, state_cap=cap, tol=tol)
                n_bp = search.find_threshold_breakpoints(chain, lam)
                best = closedform.average_reward(chain, n_bp, lam).reward
                if isinstance(sol.threshold, mdp.StructureViolation):
                    return CheckResult("rvi-vs-closedform", False,
                                       f"structure violation {sol.threshold} at "
                                       f"{(p, q, r, metric, lam)}")
                tied = math.isclose(
                    lam, closedform.lambda_breakpoint(chain, sol.threshold),
                    rel_tol=1e-9) or (sol.threshold > 0 and math.isclose(
                        lam,
                        closedform.lambda_breakpoint(chain, sol.threshold - 1),
                        rel_tol=1e-9))
                if sol.threshold != n_bp and not tied:
                    return CheckResult("rvi-vs-closedform", False,
                                       f"rvi threshold {sol.threshold} != "
                                       f"{n_bp} at {(p, q, r, metric, lam)}")
                if abs(sol.gain - best) > 1e-3:
                    return CheckResult("rvi-vs-closedform", False,
                                       f"gain {sol.gain} vs closed form {best} "
                                       f"at {(p, q, r, metric, lam)}")
    return CheckResult("rvi-vs-closedform", True, "gain and threshold agree")


def run_checks(level: str = "fast") -> list[CheckResult]:
    if level not in ("fast", "full"):
        raise ValueError("level must be 'fast' or 'full'")
    return [
        check_balance(level),
        check_moments(level),
        check_breakpoints(level),
        check_threshold_agreement(level),
        check_rvi(level),
    ]
