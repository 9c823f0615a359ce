"""Iterative compression around the reduction engine and the |S|-parameterized solver."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .by_s import SolverStats, solve_by_s
from .instance import EsfvsInstance
from .oracle import is_solution, s_edges_are_bridges
from .reduction import IGNORE, DisjointInstance, reduce


@dataclass
class DriverStats:
    steps: int = 0
    compressions: int = 0
    branches: int = 0
    ignored: int = 0
    by_s: SolverStats = field(default_factory=SolverStats)


def compression_order(inst: EsfvsInstance, seed: int | None = None) -> list[int]:
    """Input (identifier) order, or a seeded permutation of it."""
    order = sorted(inst.graph.vertices)
    if seed is not None:
        random.Random(seed).shuffle(order)
    return order


def compress(g, k: int, z: frozenset[int], stats: DriverStats | None = None) -> frozenset[int] | None:
    """Given a solution ``z`` of size k+1, find one of size at most k or report none."""
    stats = stats or DriverStats()
    stats.compressions += 1
    inst = EsfvsInstance(g, k)
    zs = sorted(z)
    for size in range(min(k, len(zs)), -1, -1):
        for tz in combinations(zs, size):
            stats.branches += 1
            tz = frozenset(tz)
            d = DisjointInstance(EsfvsInstance(g.delete_vertices(tz), k - size), z - tz)
            res = reduce(d)
            if res is IGNORE:
                stats.ignored += 1
                continue
            sol = solve_by_s(res.instance.inst, stats.by_s)
            if sol is None:
                continue
            out = sol | res.removed | tz
            assert is_solution(inst, out), "compression produced an invalid witness"
            return out
    return None


def solve(inst: EsfvsInstance, stats: DriverStats | None = None,
          order: Sequence[int] | None = None) -> frozenset[int] | None:
    """Exact Edge-SFVS by iterative compression over the vertices in ``order``."""
    stats = stats or DriverStats()
    g, k = inst.graph, inst.k
    if not g.s_edges:
        return frozenset()
    order = list(order) if order is not None else compression_order(inst)
    if sorted(order) != sorted(g.vertices):
        raise ValueError("order must list every vertex exactly once")
    t: frozenset[int] = frozenset()
    prefix: list[int] = []
    for v in order:
        prefix.append(v)
        stats.steps += 1
        gi = g.induced(prefix)
        if s_edges_are_bridges(gi.delete_vertices(t)):
            continue
        z = t | {v}
        if len(z) <= k:
            t = z
            continue
        found = compress(gi, k, z, stats)
        if found is None:
            return None
        t = found
    assert is_solution(inst, t), "driver produced an invalid witness"
    return t


def extract_witness(inst: EsfvsInstance) -> frozenset[int]:
    """Greedy self-reduction: take the first vertex whose deletion keeps the instance solvable."""
    if solve(inst) is None:
        raise ValueError("instance has no solution")
    g, k = inst.graph, inst.k
    chosen: set[int] = set()
    while not s_edges_are_bridges(g):
        for v in sorted(g.vertices):
            h = g.delete_vertices([v])
            if solve(EsfvsInstance(h, k - 1)) is not None:
                chosen.add(v)
                g, k = h, k - 1
                break
        else:
            raise AssertionError("self-reduction found no vertex")
    return frozenset(chosen)
