"""Exact solvers for Subset Feedback Vertex Set and its edge variant."""

from .by_s import solve_by_s
from .driver import extract_witness, solve
from .graph import Edge, MultiGraph, Partition
from .instance import (
    EsfvsInstance, ParseError, SfvsInstance, esfvs_to_sfvs, gen_planted, gen_random,
    multiway_to_esfvs, parse, serialize, sfvs_to_esfvs,
)
from .multiway import MwcInstance, solve_mwc
from .oracle import brute_force, is_solution
from .reduction import IGNORE, DisjointInstance, Reduced, reduce

__all__ = [
    "Edge", "MultiGraph", "Partition", "EsfvsInstance", "SfvsInstance", "MwcInstance",
    "DisjointInstance", "Reduced", "IGNORE", "ParseError",
    "parse", "serialize", "sfvs_to_esfvs", "esfvs_to_sfvs", "multiway_to_esfvs",
    "gen_random", "gen_planted", "is_solution", "brute_force", "solve_by_s",
    "solve_mwc", "reduce", "solve", "extract_witness",
]
