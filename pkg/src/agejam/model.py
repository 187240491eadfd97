"""System parameters and their mapping onto the generic birth-reset chain.

The physical system is a binary Markov source sending updates over a lossy
channel while an attacker may jam each slot.  Under any stationary policy the
age process is a 1-D chain that either increments by one or resets to zero;
the per-slot increment probability depends only on whether the age is zero,
and on whether the slot is attacked.  ``to_chain`` collapses this into three
numbers (a, b, c): increment probability from state 0 (passive), from
positive states (passive), and from positive states (active).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError


class Metric(Enum):
    """Which age metric drives the state process."""

    AOI = "aoi"
    AOII = "aoii"


@dataclass(frozen=True)
class SystemParams:
    """Validated physical parameters.

    p: per-slot channel success probability, 0 < p < 1
    q: jam success probability given an attack, 0 < q < 1
    r: per-slot source flip probability, 0 < r <= 1/2
    lam: energy cost per attacked slot, lam > 0
    """

    p: float
    q: float
    r: float
    lam: float


@dataclass(frozen=True)
class ChainParams:
    """Increment probabilities of the generic birth-reset chain.

    a: from state 0 under the passive action
    b: from positive states under the passive action
    c: from positive states under the active action

    Open intervals on p and q guarantee b < 1 and c < 1, so the chain is
    positive recurrent and the closed forms (which divide by 1-b and 1-c)
    are well defined.
    """

    a: float
    b: float
    c: float


def validate_params(p: float, q: float, r: float, lam: float) -> SystemParams:
    """Validate raw inputs and return an immutable parameter record.

    Boundary p or q are rejected because they make the active-action
    increment probability reach 1 and break positive recurrence.  r = 1/2 is
    admitted (one experiment scenario uses it) but a warning is emitted
    since the threshold-structure argument needs r <= 1/2 tightly.
    """
    if not (0.0 < p < 1.0):
        raise DomainError("p", p, "(0, 1)")
    if not (0.0 < q < 1.0):
        raise DomainError("q", q, "(0, 1)")
    if not (0.0 < r <= 0.5):
        raise DomainError("r", r, "(0, 1/2]")
    if not lam > 0.0:
        raise DomainError("lambda", lam, "(0, inf)")
    if r == 0.5:
        warnings.warn("r = 1/2 is the boundary of the validity region for "
                      "the threshold-structure results", stacklevel=2)
    return SystemParams(p=p, q=q, r=r, lam=lam)


def to_chain(params: SystemParams, metric: Metric) -> ChainParams:
    """Map the physical parameters onto the (a, b, c) chain for a metric."""
    p, q, r = params.p, params.q, params.r
    if metric is Metric.AOI:
        a = b = 1.0 - p
        c = q + (1.0 - p) * (1.0 - q)
    else:
        a = (1.0 - p) * r
        b = (1.0 - p) * (1.0 - r)
        c = p * q * (1.0 - r) + (1.0 - p) * (1.0 - r)
    return ChainParams(a=a, b=b, c=c)


def increment_prob(params: SystemParams, metric: Metric,
                   at_zero: bool, active: bool) -> float:
    """Per-slot probability that the age increments by one.

    The complement is the probability of a reset to zero.  For AoI the
    probability does not depend on the current state; for AoII it does,
    because an accurate estimate (age 0) can only become stale if the
    source flips, while a stale estimate stays stale only if it does not.
    """
    p, q, r = params.p, params.q, params.r
    if metric is Metric.AOI:
        if active:
            return q + (1.0 - q) * (1.0 - p)
        return 1.0 - p
    if at_zero:
        if active:
            return p * q * r + (1.0 - p) * r
        return (1.0 - p) * r
    if active:
        return p * q * (1.0 - r) + (1.0 - p) * (1.0 - r)
    return (1.0 - p) * (1.0 - r)
