"""Coded multi-party matrix multiplication: share constructions over a prime
field, a three-phase protocol simulator, closed-form worker counts with a
brute-force support oracle, and cost/privacy audits."""

from .codes import AGE, ENTANGLED, POLYDOT, SchemeParams, build_share, evaluate_share
from .counts import (
    baseline_counts,
    gamma_age,
    lemma_region_check,
    n_age,
    n_polydot,
    recovery_threshold,
)
from .field import DEFAULT_PRIME, PrimeField
from .powerset import PowerSet, check_decodability, h_support, important_powers, minkowski_sum
from .protocol import ProtocolConfig, run_protocol

__all__ = [
    "AGE",
    "ENTANGLED",
    "POLYDOT",
    "DEFAULT_PRIME",
    "PrimeField",
    "PowerSet",
    "ProtocolConfig",
    "SchemeParams",
    "baseline_counts",
    "build_share",
    "check_decodability",
    "evaluate_share",
    "gamma_age",
    "h_support",
    "important_powers",
    "lemma_region_check",
    "minkowski_sum",
    "n_age",
    "n_polydot",
    "recovery_threshold",
    "run_protocol",
]

__version__ = "0.1.0"
