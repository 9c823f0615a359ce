"""Exact node multiway cut by branching on furthest minimum separators."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import MultiGraph, connected_components
from .separation import SplitNetwork


@dataclass(frozen=True)
class MwcInstance:
    """Delete at most ``k`` non-terminals so no two terminals stay connected."""

    graph: MultiGraph
    terminals: frozenset[int]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        if not self.terminals <= self.graph.vertices:
            raise ValueError("terminals must be vertices of the graph")
        if self.k < 0:
            raise ValueError("budget must be non-negative")


def is_multiway_cut(g: MultiGraph, terminals, x) -> bool:
    x = set(x)
    terminals = set(terminals)
    if x & terminals:
        return False
    comp = connected_components(g.delete_vertices(x)).index()
    seen = set()
    for t in terminals:
        if comp[t] in seen:
            return False
        seen.add(comp[t])
    return True


def _component_of(g: MultiGraph, v: int) -> set[int]:
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for y in g.neighbors(x):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def _branch(g: MultiGraph, terms: tuple[int, ...], x: frozenset[int], k: int) -> frozenset[int] | None:
    # terms[0] is the terminal being isolated; x is an undeletable set around it.
    while len(terms) > 1:
        sn = SplitNetwork(g, x, terms[1:], undeletable=terms)
        lam = sn.max_flow(limit=k + 1)
        if lam > k:
            return None
        if lam > 0:
            break
        g = g.delete_vertices(_component_of(g, terms[0]))
        terms = terms[1:]
        x = frozenset(terms[:1])
    else:
        return frozenset()
    # Growing x to the furthest minimum separator's source side loses nothing;
    # a separator vertex is then either deleted or absorbed, which raises the cut.
    sep, side = sn.furthest_cut()
    v = min(sep)
    sub = _branch(g.delete_vertices([v]), terms, side, k - 1) if k > 0 else None
    if sub is not None:
        return sub | {v}
    return _branch(g, terms, side | {v}, k)


def solve_mwc(inst: MwcInstance) -> frozenset[int] | None:
    """A minimum multiway cut of size at most ``inst.k``, or ``None``."""
    terms = tuple(sorted(inst.terminals))
    if len(terms) <= 1:
        return frozenset()
    for budget in range(inst.k + 1):
        x = _branch(inst.graph, terms, frozenset(terms[:1]), budget)
        if x is not None:
            return x
    return None
