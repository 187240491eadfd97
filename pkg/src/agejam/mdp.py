"""Average-reward MDP solver (relative value iteration) plus a numerical
certificate that the optimal policy is a single passive-to-active step.

The state space is truncated at ``state_cap`` with a saturating boundary:
increment mass out of the cap stays at the cap.  Each sweep subtracts the
updated value of state 0, so the differential values converge while the
subtracted constant converges to the gain.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .errors import CapSuspicious, NoConvergence
from .model import Metric, SystemParams, increment_prob


@dataclass(frozen=True)
class StructureViolation:
    """First threshold-structure property that failed, and where."""

    prop: str
    state: int
    detail: str = ""


@dataclass
class RviSolution:
    """Converged differential values and the policy they induce.

    values[0] == 0 by normalization.  ``action_gap`` is the active-minus-
    passive action-value difference per state; the policy attacks exactly
    where it is positive.
    """

    values: np.ndarray
    gain: float
    actions: np.ndarray
    threshold: int | StructureViolation
    iterations: int
    residual: float
    lam: float = 0.0
    action_gap: np.ndarray = field(default=None, repr=False)


def rvi_solve(params: SystemParams, metric: Metric, state_cap: int = 2000,
              tol: float = 1e-10, max_iters: int = 1_000_000) -> RviSolution:
    """Solve the jamming MDP on [0, state_cap] by relative value iteration.

    Raises NoConvergence if neither the sup-norm nor the span criterion is
    met within max_iters, and CapSuspicious if the stationary distribution
    of the extracted policy puts more than 1e-8 mass above 0.9*state_cap.
    """
    if state_cap < 100:
        raise ValueError("state_cap must be >= 100")
    if tol <= 0:
        raise ValueError("tol must be positive")
    h0p = increment_prob(params, metric, at_zero=True, active=False)
    hsp = increment_prob(params, metric, at_zero=False, active=False)
    h0a = increment_prob(params, metric, at_zero=True, active=True)
    hsa = increment_prob(params, metric, at_zero=False, active=True)
    lam = params.lam

    v, gain, iterations, residual, converged = kernels.rvi_iterate(
        h0p, hsp, h0a, hsa, lam, state_cap, tol, max_iters)
    if not converged:
        raise NoConvergence(
            f"relative value iteration residual {residual:.3e} after "
            f"{iterations} sweeps (tol {tol:.1e})",
            iterations=iterations, residual=residual)

    # Active-minus-passive action-value gap; v[0] = 0 so the reset terms cancel.
    vnext = np.append(v[1:], v[-1])
    ha = np.full(state_cap + 1, hsa)
    ha[0] = h0a
    hp = np.full(state_cap + 1, hsp)
    hp[0] = h0p
    gap = -lam + (ha - hp) * vnext
    actions = (gap > 0).astype(np.uint8)

    solution = RviSolution(values=v, gain=gain, actions=actions,
                           threshold=0, iterations=iterations,
                           residual=residual, lam=lam, action_gap=gap)
    solution.threshold = certify_structure(solution)
    _check_cap_mass(solution, h0p, hsp, h0a, hsa)
    return solution


def certify_structure(solution: RviSolution) -> int | StructureViolation:
    """Check the three structural properties of the converged solution.

    (i) values nondecreasing in s, (ii) the action gap nondecreasing over
    s >= 1 with gap(0) <= gap(1), (iii) actions form a single
    passive-to-active step.  Returns the step index on success, otherwise a
    report naming the first violated property and state.  A solution that
    never attacks has threshold len(values) (step beyond the cap).
    """
    v = solution.values
    gap = solution.action_gap
    actions = solution.actions
    # Slack for accumulated floating-point error; the properties hold
    # exactly for the true solution.
    atol = max(1e-9, 100.0 * solution.residual)
    dv = np.diff(v)
    bad = np.nonzero(dv < -atol)[0]
    if bad.size:
        s = int(bad[0])
        return StructureViolation("values-nondecreasing", s,
                                  f"V({s + 1}) - V({s}) = {dv[s]:.3e}")
    dgap = np.diff(gap[1:])
    bad = np.nonzero(dgap < -atol)[0]
    if bad.size:
        s = int(bad[0]) + 1
        return StructureViolation("gap-nondecreasing", s,
                                  f"gap({s + 1}) - gap({s}) = {dgap[s - 1]:.3e}")
    if gap.size > 1 and gap[0] > gap[1] + atol:
        return StructureViolation("gap-nondecreasing", 0,
                                  f"gap(0) = {gap[0]:.3e} > gap(1) = {gap[1]:.3e}")
    active = np.nonzero(actions == 1)[0]
    if active.size == 0:
        return len(actions)
    step = int(active[0])
    later_passive = np.nonzero(actions[step:] == 0)[0]
    if later_passive.size:
        s = step + int(later_passive[0])
        return StructureViolation("single-step", s,
                                  f"passive action at state {s} above first "
                                  f"active state {step}")
    return step


def _check_cap_mass(solution: RviSolution, h0p, hsp, h0a, hsa) -> None:
    """Stationary mass of the extracted policy near the truncation boundary.

    The chain resets to 0 with probability 1-h each slot, so the stationary
    pmf obeys u(s+1) = h(s) u(s); a forward recursion is exact.
    """
    if isinstance(solution.threshold, StructureViolation):
        return  # no meaningful single policy to evaluate
    actions = solution.actions
    cap = len(actions) - 1
    u = np.empty(cap + 1)
    u[0] = 1.0
    for s in range(cap):
        if actions[s]:
            h = h0a if s == 0 else hsa
        else:
            h = h0p if s == 0 else hsp
        u[s + 1] = u[s] * h
    u /= u.sum()
    tail = float(u[int(0.9 * cap):].sum())
    if tail > 1e-8:
        raise CapSuspicious(
            f"stationary mass {tail:.3e} above 0.9*cap; increase state_cap")
