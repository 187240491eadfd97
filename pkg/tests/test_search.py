import itertools

import pytest

from agejam import (CapTooSmall, ChainParams, Metric, NoConvergence,
                    SearchConfig, average_reward, find_threshold_alg1,
                    find_threshold_breakpoints, find_threshold_scan,
                    lambda_breakpoint, to_chain, validate_params)

AOI1 = ChainParams(a=0.5, b=0.5, c=0.75)
AOII1 = ChainParams(a=0.125, b=0.375, c=0.5625)

GRID = [to_chain(validate_params(p, q, r, 1.0), metric)
        for p, q, r, metric in itertools.product(
            (0.2, 0.5, 0.8), (0.3, 0.7), (0.15, 0.4), Metric)]


def test_scan_frozen_values():
    assert find_threshold_scan(AOI1, 0.5, 300) == 0
    assert find_threshold_scan(AOI1, 1.5, 300) == 1
    assert find_threshold_scan(AOI1, 2.0, 300) == 2


def test_scan_cap_too_small():
    with pytest.raises(CapTooSmall):
        find_threshold_scan(AOI1, 50.0, n_cap=5)


def test_breakpoints_frozen_values():
    assert find_threshold_breakpoints(AOI1, 1.0) == 0  # boundary lam = lam(0)
    assert find_threshold_breakpoints(AOI1, 1.75) == 1
    assert find_threshold_breakpoints(AOI1, 10.0) == find_threshold_scan(
        AOI1, 10.0, 300)


def test_half_open_interval_semantics():
    # lam exactly at a breakpoint maps to the smaller threshold.
    for chain in (AOI1, AOII1):
        for n in range(5):
            lam = lambda_breakpoint(chain, n)
            assert find_threshold_breakpoints(chain, lam) == n


def test_alg1_frozen_values():
    assert find_threshold_alg1(AOI1, 0.5, SearchConfig(alpha=0.5)) == 0
    assert find_threshold_alg1(AOI1, 1.5, SearchConfig(alpha=0.5)) == 1
    got = find_threshold_alg1(AOII1, 3.0, SearchConfig(alpha=0.5))
    assert got == find_threshold_scan(AOII1, 3.0, 300)


def test_alg1_no_convergence_reports_trace():
    # A huge step makes the iterate overshoot back and forth without ever
    # landing inside the bracketing interval quickly.
    with pytest.raises(NoConvergence) as exc:
        find_threshold_alg1(AOI1, 5.0, SearchConfig(alpha=1e6, max_iters=50))
    assert exc.value.trace


@pytest.mark.parametrize("chain", GRID)
def test_three_way_agreement(chain):
    for k in range(10, 101, 3):
        lam = k / 10.0
        n_bp = find_threshold_breakpoints(chain, lam)
        n_scan = find_threshold_scan(chain, lam, 300)
        n_alg1 = find_threshold_alg1(chain, lam)
        assert n_alg1 == n_bp
        if n_scan != n_bp:
            # Only a numerically exact reward tie excuses a mismatch.
            r_scan = average_reward(chain, n_scan, lam).reward
            r_bp = average_reward(chain, n_bp, lam).reward
            assert abs(r_scan - r_bp) <= 1e-12 * max(1.0, abs(r_bp))


@pytest.mark.parametrize("chain", GRID)
def test_threshold_nondecreasing_in_lambda(chain):
    thresholds = [find_threshold_breakpoints(chain, k / 10.0)
                  for k in range(10, 101)]
    assert all(b >= a for a, b in zip(thresholds, thresholds[1:]))


def test_scan_is_argmax():
    for chain in (AOI1, AOII1):
        for lam in (0.7, 1.3, 2.9, 6.0):
            n_star = find_threshold_scan(chain, lam, 300)
            best = average_reward(chain, n_star, lam).reward
            for n in range(0, 50):
                assert average_reward(chain, n, lam).reward <= best + 1e-12


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(alpha=-1.0)
    with pytest.raises(ValueError):
        SearchConfig(n_cap=0)
