"""Optimal jamming policies against AoI/AoII status updating.

Closed-form steady-state analysis of threshold attack policies, an
average-reward MDP solver with a numerical threshold-structure certificate,
and a Monte Carlo engine validating the analytical transition kernels
against the physical source/channel/attacker model.
"""

from ._backend import backend_name
from .closedform import (PolicyEval, average_active, average_age,
                         average_reward, lambda_breakpoint, lambda_interp,
                         stationary_pmf)
from .errors import (AgejamError, CapSuspicious, CapTooSmall, DomainError,
                     InsufficientSamples, NoConvergence, Unbounded)
from .mdp import RviSolution, StructureViolation, certify_structure, rvi_solve
from .model import (ChainParams, Metric, SystemParams, increment_prob,
                    to_chain, validate_params)
from .search import (SearchConfig, find_threshold_alg1,
                     find_threshold_breakpoints, find_threshold_scan)
from .sim import (KernelCell, OppositeThreshold, Threshold, TrajectoryStats,
                  UniformRandom, empirical_kernel, simulate_aggregate,
                  simulate_full)

__all__ = [
    "AgejamError", "CapSuspicious", "CapTooSmall", "ChainParams",
    "DomainError", "InsufficientSamples", "KernelCell", "Metric",
    "NoConvergence", "OppositeThreshold", "PolicyEval", "RviSolution",
    "SearchConfig", "StructureViolation", "SystemParams", "Threshold",
    "TrajectoryStats", "Unbounded", "UniformRandom", "average_active",
    "average_age", "average_reward", "backend_name", "certify_structure",
    "empirical_kernel", "find_threshold_alg1", "find_threshold_breakpoints",
    "find_threshold_scan", "increment_prob", "lambda_breakpoint",
    "lambda_interp", "rvi_solve", "simulate_aggregate", "simulate_full",
    "stationary_pmf", "to_chain", "validate_params",
]
