"""Solution checker and brute-force reference solver."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .graph import MultiGraph, bridges


def s_edges_are_bridges(g: MultiGraph) -> bool:
    """True iff every S-edge of ``g`` is a bridge (no S-cycle survives)."""
    s = g.s_edges
    if not s:
        return True
    return s <= bridges(g)


def is_solution(inst, t: Iterable[int]) -> bool:
    t = set(t)
    if len(t) > inst.k or not t <= inst.graph.vertices:
        return False
    return s_edges_are_bridges(inst.graph.delete_vertices(t))


def brute_force(inst) -> frozenset[int] | None:
    """Smallest feasible set, lexicographically first at its size; ``None`` if none fits in k."""
    g = inst.graph
    order = sorted(g.vertices)
    for size in range(min(inst.k, len(order)) + 1):
        for t in combinations(order, size):
            if s_edges_are_bridges(g.delete_vertices(t)):
                return frozenset(t)
    return None
