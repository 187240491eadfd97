"""Numba-compiled hot kernels; mirrors _kernels_numpy exactly."""

from __future__ import annotations

import numpy as np
from numba import njit

POLICY_THRESHOLD = 0
POLICY_RANDOM = 1
POLICY_OPPOSITE = 2


@njit(cache=True)
def run_aggregate(h0p, hsp, h0a, hsa, pkind, pparam, trans_u, pol_u):
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
        if act == 1:
            h = h0a if s == 0 else hsa
        else:
            h = h0p if s == 0 else hsp
        if trans_u[t] < h:
            s = s + 1
        else:
            s = 0
        states[t + 1] = s
        actions[t] = act
    return states, actions


@njit(cache=True)
def run_full(aoii, p, q, r, pkind, pparam, flip_u, chan_u, jam_u, pol_u):
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
        if act == 1 and delivered and jam_u[t] < q:
            delivered = False
        if aoii:
            if delivered:
                estimate = source
            if source == estimate:
                age = 0
            else:
                age = age + 1
        else:
            if delivered:
                age = 0
            else:
                age = age + 1
        ages[t + 1] = age
        actions[t] = act
    return ages, actions


@njit(cache=True)
def rvi_iterate(h0p, hsp, h0a, hsa, lam, cap, tol, max_iters):
    nstates = cap + 1
    v = np.zeros(nstates)
    vn = np.empty(nstates)
    gain = 0.0
    it = 0
    resid = np.inf
    converged = False
    for it in range(1, max_iters + 1):
        for s in range(nstates):
            vnext = v[s + 1] if s < cap else v[cap]
            hp = h0p if s == 0 else hsp
            ha = h0a if s == 0 else hsa
            v0 = s + hp * vnext + (1.0 - hp) * v[0]
            v1 = s - lam + ha * vnext + (1.0 - ha) * v[0]
            vn[s] = v0 if v0 >= v1 else v1
        gain = vn[0]
        dmax = -np.inf
        dmin = np.inf
        sup = 0.0
        for s in range(nstates):
            d = vn[s] - v[s]
            if d > dmax:
                dmax = d
            if d < dmin:
                dmin = d
            nd = vn[s] - gain
            ad = abs(nd - v[s])
            if ad > sup:
                sup = ad
            v[s] = nd
        resid = sup
        if sup < tol and (dmax - dmin) < tol:
            converged = True
            break
    return v, gain, it, resid, converged
