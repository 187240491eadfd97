"""Monte Carlo engine for the age process under the implemented attack
policies.

Two simulators are provided: ``simulate_aggregate`` drives the 1-D age chain
directly from the per-slot increment probabilities, while ``simulate_full``
simulates the physical binary source, channel, jammer, and monitor estimate.
Agreement between the two validates the aggregate transition kernels against
the physical model; ``empirical_kernel`` tabulates the per-(state class,
action) increment frequencies for the same purpose.

All randomness comes from numpy SeedSequence-spawned streams drawn up front
and fed to the backend kernels, so results are bit-identical for a given
seed regardless of backend.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import InsufficientSamples
from .model import Metric, SystemParams, increment_prob


@dataclass(frozen=True)
class Threshold:
    """Attack exactly when the age is at or above n."""

    n: int


@dataclass(frozen=True)
class UniformRandom:
    """Attack each slot independently with probability rho."""

    rho: float

    def __post_init__(self):
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError("rho must lie in [0, 1]")


@dataclass(frozen=True)
class OppositeThreshold:
    """Attack exactly when the age is below n (anti-structured baseline)."""

    n: int


AttackPolicy = Threshold | UniformRandom | OppositeThreshold


@dataclass(frozen=True)
class TrajectoryStats:
    """Time averages over the post-burn-in portion of one trajectory.

    Standard errors use batch means (100 batches) because the age process
    is autocorrelated.
    """

    slots: int
    burn_in: int
    mean_state: float
    mean_active: float
    mean_reward: float
    se_state: float
    se_active: float
    se_reward: float
    seed: int


_N_BATCHES = 100


def _policy_code(policy: AttackPolicy) -> tuple[int, float]:
    if isinstance(policy, Threshold):
        return kernels.POLICY_THRESHOLD, float(policy.n)
    if isinstance(policy, UniformRandom):
        return kernels.POLICY_RANDOM, policy.rho
    if isinstance(policy, OppositeThreshold):
        return kernels.POLICY_OPPOSITE, float(policy.n)
    raise TypeError(f"unknown policy {policy!r}")


def _batch_se(samples: np.ndarray) -> float:
    """Batch-means standard error of the sample mean."""
    m = samples.size // _N_BATCHES
    if m == 0:
        return float("nan")
    means = samples[:m * _N_BATCHES].reshape(_N_BATCHES, m).mean(axis=1)
    return float(means.std(ddof=1) / np.sqrt(_N_BATCHES))


def _stats(states: np.ndarray, actions: np.ndarray, lam: float,
           slots: int, burn_in: int, seed: int) -> TrajectoryStats:
    s = states[1:][burn_in:].astype(np.float64)
    a = actions[burn_in:].astype(np.float64)
    reward = s - lam * a
    mean_state = float(s.mean())
    mean_active = float(a.mean())
    return TrajectoryStats(
        slots=slots, burn_in=burn_in,
        mean_state=mean_state, mean_active=mean_active,
        mean_reward=mean_state - lam * mean_active,
        se_state=_batch_se(s), se_active=_batch_se(a),
        se_reward=_batch_se(reward), seed=seed)


def simulate_aggregate(params: SystemParams, metric: Metric,
                       policy: AttackPolicy, slots: int,
                       burn_in: int = 0, seed: int = 0) -> TrajectoryStats:
    """Simulate the aggregate 1-D age chain for ``slots`` steps from age 0.

    The action for the transition into slot t+1 is the policy applied to the
    age at the end of slot t.
    """
    if not slots > burn_in >= 0:
        raise ValueError("need slots > burn_in >= 0")
    pkind, pparam = _policy_code(policy)
    streams = np.random.SeedSequence(seed).spawn(2)
    trans_u = np.random.default_rng(streams[0]).random(slots)
    pol_u = np.random.default_rng(streams[1]).random(slots)
    states, actions = kernels.run_aggregate(
        increment_prob(params, metric, True, False),
        increment_prob(params, metric, False, False),
        increment_prob(params, metric, True, True),
        increment_prob(params, metric, False, True),
        pkind, pparam, trans_u, pol_u)
    return _stats(states, actions, params.lam, slots, burn_in, seed)


def _run_full(params: SystemParams, metric: Metric, policy: AttackPolicy,
              slots: int, seed: int):
    pkind, pparam = _policy_code(policy)
    streams = np.random.SeedSequence(seed).spawn(4)
    flip_u = np.random.default_rng(streams[0]).random(slots)
    chan_u = np.random.default_rng(streams[1]).random(slots)
    jam_u = np.random.default_rng(streams[2]).random(slots)
    pol_u = np.random.default_rng(streams[3]).random(slots)
    return kernels.run_full(metric is Metric.AOII, params.p, params.q,
                            params.r, pkind, pparam,
                            flip_u, chan_u, jam_u, pol_u)


def simulate_full(params: SystemParams, metric: Metric, policy: AttackPolicy,
                  slots: int, burn_in: int = 0, seed: int = 0) -> TrajectoryStats:
    """Simulate the physical system and report the same statistics.

    Per slot: the source flips with probability r (AoII only), the policy
    picks an action from the current age, the channel succeeds with
    probability p, an attacked success is destroyed with probability q, the
    estimate is refreshed on delivery, and the age is recomputed.
    """
    if not slots > burn_in >= 0:
        raise ValueError("need slots > burn_in >= 0")
    ages, actions = _run_full(params, metric, policy, slots, seed)
    return _stats(ages, actions, params.lam, slots, burn_in, seed)


@dataclass(frozen=True)
class KernelCell:
    """Empirical increment frequency for one (state class, action) cell."""

    visits: int
    increments: int
    freq: float
    se: float


def empirical_kernel(params: SystemParams, metric: Metric, slots: int,
                     seed: int = 0) -> dict[tuple[str, str], KernelCell]:
    """Tabulate increment frequencies under a fair-coin attack policy.

    Keys are ('zero'|'positive', 'passive'|'active').  Frequencies carry
    binomial standard errors; the conditional increment probabilities are
    exact per slot, so no burn-in is needed.
    """
    if slots < 100_000:
        raise ValueError("need slots >= 1e5 for stable cell frequencies")
    ages, actions = _run_full(params, metric, UniformRandom(0.5), slots, seed)
    pre = ages[:-1]
    inc = ages[1:] == pre + 1
    table = {}
    for cls_name, cls_mask in (("zero", pre == 0), ("positive", pre > 0)):
        for act_name, act in (("passive", 0), ("active", 1)):
            mask = cls_mask & (actions == act)
            visits = int(mask.sum())
            if visits < 1000:
                raise InsufficientSamples(
                    f"cell ({cls_name}, {act_name}) visited {visits} times")
            k = int(inc[mask].sum())
            f = k / visits
            table[(cls_name, act_name)] = KernelCell(
                visits=visits, increments=k, freq=f,
                se=float(np.sqrt(f * (1.0 - f) / visits)))
    return table
