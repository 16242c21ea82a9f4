"""
bushyforce - bigness calculus, bad-set forcings and their density engine.
"""

__version__ = "0.1.0"
__author__ = "bushyforce Team"

from bushyforce.bigness import RankResult, big_dichotomy, extract_witness, is_big, omega_rank
from bushyforce.conditions import HBCond, ICond, LBCond, extends, validate_condition
from bushyforce.engine import fuse, meet, run_generic, verify_run
from bushyforce.laws import run_law_suite
from bushyforce.pairs import pair_is_big, pair_rank
from bushyforce.serialization import load_certificate, load_scenario

__all__ = [
    "RankResult",
    "omega_rank",
    "is_big",
    "extract_witness",
    "big_dichotomy",
    "pair_rank",
    "pair_is_big",
    "LBCond",
    "HBCond",
    "ICond",
    "extends",
    "validate_condition",
    "meet",
    "fuse",
    "run_generic",
    "verify_run",
    "run_law_suite",
    "load_scenario",
    "load_certificate",
]
