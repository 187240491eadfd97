"""Three routes to the optimal attack threshold for a given energy cost.

``find_threshold_breakpoints`` is the guaranteed path: the breakpoint
sequence is strictly increasing, so the optimal threshold is located by
exponential expansion plus integer bisection.  ``find_threshold_alg1`` is
the fixed-point iteration on the interpolated breakpoint curve; it carries
no convergence proof, so it gets an iteration guard.
``find_threshold_scan`` is the brute-force argmax oracle the other two are
checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .closedform import average_reward, lambda_breakpoint, lambda_interp
from .errors import CapTooSmall, NoConvergence, Unbounded
from .model import ChainParams


@dataclass(frozen=True)
class SearchConfig:
    """Tuning knobs for the fixed-point iteration.

    alpha: step size; None means 1/(lambda(1)-lambda(0)) clamped to [1e-3, 10].
    """

    alpha: float | None = None
    max_iters: int = 1_000_000
    n_cap: int = 300

    def __post_init__(self):
        if self.alpha is not None and self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if self.n_cap < 1:
            raise ValueError("n_cap must be >= 1")


def find_threshold_scan(chain: ChainParams, lam: float, n_cap: int = 300) -> int:
    """Brute-force argmax of the closed-form reward over n in [0, n_cap].

    Ties break toward the smaller threshold.  Raises CapTooSmall when the
    reward is still improving at the cap, i.e. the argmax may lie beyond it.
    """
    best_n = 0
    best_reward = average_reward(chain, 0, lam).reward
    for n in range(1, n_cap + 1):
        reward = average_reward(chain, n, lam).reward
        if reward > best_reward:
            best_n, best_reward = n, reward
    if best_n == n_cap:
        raise CapTooSmall(f"reward still increasing at n_cap={n_cap}")
    return best_n


def find_threshold_breakpoints(chain: ChainParams, lam: float) -> int:
    """Optimal threshold via the strictly increasing breakpoint sequence.

    Returns 0 when lam <= lambda(0); otherwise the unique n+1 with
    lambda(n) < lam <= lambda(n+1).
    """
    if lam <= lambda_breakpoint(chain, 0):
        return 0
    # Expand until lambda(hi) >= lam; the sequence grows linearly in n,
    # so this terminates unless lam is beyond anything representable.
    hi = 1
    while lambda_breakpoint(chain, hi) < lam:
        if hi > 2 ** 60:
            raise Unbounded(f"lambda={lam} exceeds every representable breakpoint")
        hi *= 2
    lo = hi // 2  # lambda(lo) < lam known (or lo == 0 with lambda(0) < lam)
    # Smallest m with lambda(m) >= lam.
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if lambda_breakpoint(chain, mid) < lam:
            lo = mid
        else:
            hi = mid
    return hi


def find_threshold_alg1(chain: ChainParams, lam: float,
                        config: SearchConfig | None = None) -> int:
    """Fixed-point iteration x <- x + alpha*(lam - lambda(x)) on the
    interpolated breakpoint curve, started from 0.

    Terminates once the integer part of the iterate brackets lam, returning
    floor(x)+1.  Raises NoConvergence (with the iterate tail) if the guard
    trips; callers can fall back to find_threshold_breakpoints.
    """
    config = config or SearchConfig()
    if lam <= lambda_breakpoint(chain, 0):
        return 0
    alpha = config.alpha
    if alpha is None:
        slope = lambda_breakpoint(chain, 1) - lambda_breakpoint(chain, 0)
        alpha = min(max(1.0 / slope, 1e-3), 10.0)
    x = 0.0
    trace = []
    for _ in range(config.max_iters):
        x = x + alpha * (lam - lambda_interp(chain, x))
        x = max(x, 0.0)
        trace.append(x)
        if len(trace) > 20:
            trace.pop(0)
        k = math.floor(x)
        if lambda_breakpoint(chain, k) < lam <= lambda_breakpoint(chain, k + 1):
            return k + 1
    raise NoConvergence(
        f"threshold iteration did not bracket lambda={lam} "
        f"within {config.max_iters} steps",
        iterations=config.max_iters, trace=list(trace))
