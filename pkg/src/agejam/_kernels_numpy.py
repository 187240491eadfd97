"""Pure-numpy/Python reference kernels.

Same signatures and bit-identical outputs as the numba backend (both consume
pre-drawn uniforms), just slower on the sequential trajectory loops.  Selected
with AGEJAM_BACKEND=numpy; used automatically when numba is unavailable.
"""

from __future__ import annotations

import numpy as np

# Policy kind codes shared with the numba kernels.
POLICY_THRESHOLD = 0
POLICY_RANDOM = 1
POLICY_OPPOSITE = 2


def run_aggregate(h0p, hsp, h0a, hsa, pkind, pparam, trans_u, pol_u):
    """Simulate the 1-D age chain; returns (states[slots+1], actions[slots])."""
    slots = trans_u.shape[0]
    states = np.empty(slots + 1, np.int64)
    actions = np.empty(slots, np.uint8)
    s = 0
    states[0] = 0
    for t in range(slots):
        if pkind == POLICY_THRESHOLD:
            act = 1 if s >= pparam else 0
        elif pkind == POLICY_RANDOM:
            act = 1 if pol_u[t] < pparam else 0
        else:
            act = 1 if s < pparam else 0
        if act:
            h = h0a if s == 0 else hsa
        else:
            h = h0p if s == 0 else hsp
        s = s + 1 if trans_u[t] < h else 0
        states[t + 1] = s
        actions[t] = act
    return states, actions


def run_full(aoii, p, q, r, pkind, pparam, flip_u, chan_u, jam_u, pol_u):
    """Simulate the physical source/channel/attacker system.

    Slot order: source flip (AoII only) -> action from the pre-slot age ->
    channel and jam draws -> estimate update on delivery -> age update.
    Returns (ages[slots+1], actions[slots]).
    """
    slots = chan_u.shape[0]
    ages = np.empty(slots + 1, np.int64)
    actions = np.empty(slots, np.uint8)
    source = 0
    estimate = 0
    age = 0
    ages[0] = 0
    for t in range(slots):
        if aoii and flip_u[t] < r:
            source = 1 - source
        if pkind == POLICY_THRESHOLD:
            act = 1 if age >= pparam else 0
        elif pkind == POLICY_RANDOM:
            act = 1 if pol_u[t] < pparam else 0
        else:
            act = 1 if age < pparam else 0
        delivered = chan_u[t] < p
        if act and delivered and jam_u[t] < q:
            delivered = False
        if aoii:
            if delivered:
                estimate = source
            age = 0 if source == estimate else age + 1
        else:
            age = 0 if delivered else age + 1
        ages[t + 1] = age
        actions[t] = act
    return ages, actions


def rvi_iterate(h0p, hsp, h0a, hsa, lam, cap, tol, max_iters):
    """Relative value iteration on the truncated state space [0, cap].

    Saturating boundary: the increment out of state cap stays at cap.
    Returns (values, gain, iterations, residual, converged); values are
    normalized so values[0] == 0.
    """
    nstates = cap + 1
    s_arr = np.arange(nstates, dtype=np.float64)
    hp = np.full(nstates, hsp)
    hp[0] = h0p
    ha = np.full(nstates, hsa)
    ha[0] = h0a
    v = np.zeros(nstates)
    vnext = np.empty(nstates)
    gain = 0.0
    it = 0
    resid = np.inf
    converged = False
    for it in range(1, max_iters + 1):
        vnext[:-1] = v[1:]
        vnext[-1] = v[-1]
        v0 = s_arr + hp * vnext + (1.0 - hp) * v[0]
        v1 = s_arr - lam + ha * vnext + (1.0 - ha) * v[0]
        vn = np.maximum(v0, v1)
        gain = vn[0]
        diff = vn - v
        vn -= gain
        resid = float(np.max(np.abs(vn - v)))
        span = float(np.max(diff) - np.min(diff))
        v = vn
        if resid < tol and span < tol:
            converged = True
            break
    return v, gain, it, resid, converged
