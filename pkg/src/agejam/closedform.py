"""Closed-form steady-state quantities for threshold policies.

All formulas are exact expressions over the chain parameters (a, b, c) and
the threshold n.  The common normalizer is

    D = (1 - b + a)(1 - c) + a(c - b) b^(n-1)

(the factor a in the second term is forced by normalization of the pmf; the
balance-equation oracle in the test suite pins this down).

Threshold 0 (attack in every state) is handled by evaluating b^(n-1) as 1/b.
This is exact because the active increment probability out of state 0 equals
a*c/b under both metric mappings.  For large n, b^(n-1) underflows to 0.0,
which is exactly the all-passive limit of every formula, so no special
clamping is required.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import ChainParams


@dataclass(frozen=True)
class PolicyEval:
    """Steady-state performance of one threshold policy."""

    n: int
    avg_age: float
    avg_active: float
    reward: float


def _bn1(chain: ChainParams, n: int) -> float:
    """b^(n-1), with the 1/b extension at n = 0."""
    if n == 0:
        return 1.0 / chain.b
    return chain.b ** (n - 1)


def _normalizer(chain: ChainParams, n: int) -> float:
    a, b, c = chain.a, chain.b, chain.c
    return (1.0 - b + a) * (1.0 - c) + a * (c - b) * _bn1(chain, n)


def stationary_pmf(chain: ChainParams, n: int, i: int) -> float:
    """Long-run probability of age i under the threshold-n policy."""
    if n < 0 or i < 0:
        raise ValueError("n and i must be nonnegative")
    a, b, c = chain.a, chain.b, chain.c
    head = (1.0 - b) * (1.0 - c) / _normalizer(chain, n)
    if i == 0:
        return head
    if i <= n:
        return a * b ** (i - 1) * head
    return a * _bn1(chain, n) * c ** (i - n) * head


def average_age(chain: ChainParams, n: int) -> float:
    """Mean age under the threshold-n policy (sum of i * pmf(i) in closed form)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    a, b, c = chain.a, chain.b, chain.c
    bn1 = _bn1(chain, n)
    bn = b * bn1
    bn_plus1 = b * bn
    d = _normalizer(chain, n)
    t1 = a * (1.0 - c) * (1.0 - (n + 1) * bn + n * bn_plus1) / ((1.0 - b) * d)
    t2 = a * (1.0 - b) * bn1 * c * (n * (1.0 - c) + 1.0) / ((1.0 - c) * d)
    return t1 + t2


def average_active(chain: ChainParams, n: int) -> float:
    """Long-run fraction of attacked slots under the threshold-n policy."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 1.0
    a, b = chain.a, chain.b
    return a * (1.0 - b) * chain.b ** (n - 1) / _normalizer(chain, n)


def average_reward(chain: ChainParams, n: int, lam: float) -> PolicyEval:
    """Average attacker reward avg_age - lam * avg_active for threshold n."""
    age = average_age(chain, n)
    active = average_active(chain, n)
    return PolicyEval(n=n, avg_age=age, avg_active=active,
                      reward=age - lam * active)


def lambda_breakpoint(chain: ChainParams, n: int) -> float:
    """Energy cost at which thresholds n and n+1 give equal average reward.

    Strictly increasing in n, which is what makes the breakpoint search for
    the optimal threshold well posed.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    a, b, c = chain.a, chain.b, chain.c
    if n == 0:
        return a * (c - b) / ((1.0 - c) * (b * (1.0 - c) + a * c))
    pref = (c - b) / ((1.0 - b) ** 2 * (1.0 - b + a) * (1.0 - c))
    bracket = (n * (1.0 - c) * (1.0 - b + a) * (1.0 - b)
               - a * b ** n * (c - b)
               + a * (c - b)
               + (1.0 - b) ** 2)
    return pref * bracket


def lambda_interp(chain: ChainParams, x: float) -> float:
    """Piecewise-linear extension of the breakpoint sequence to real x >= 0."""
    if x < 0:
        raise ValueError("x must be nonnegative")
    i = int(x)
    lo = lambda_breakpoint(chain, i)
    hi = lambda_breakpoint(chain, i + 1)
    return hi * (x - i) - lo * (x - i - 1)
