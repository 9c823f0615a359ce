"""Problem instances, the vertex/edge conversions, file format and generators.

File format (line oriented, ``c`` lines are comments)::

    p esfvs <n> <m> <k>      |  p sfvs <n> <m> <k>     |  p mwc <n> <m> <k>
    e <u> <v> <flag>              e <u> <v> 0                e <u> <v> [0]
                                  s <v>                      t <v>

Vertices are 1-based in files and 0-based internally.  Solutions are written
as ``YES`` followed by one vertex per line, or ``NO``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

from .graph import Edge, MultiGraph
from .multiway import MwcInstance


@dataclass(frozen=True)
class EsfvsInstance:
    """Edge-subset FVS: delete <= k vertices so that no simple cycle uses an S-edge."""

    graph: MultiGraph
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("budget must be non-negative")

    @property
    def s_edges(self) -> frozenset[int]:
        return self.graph.s_edges

    def with_k(self, k: int) -> EsfvsInstance:
        return EsfvsInstance(self.graph, k)


@dataclass(frozen=True)
class SfvsInstance:
    """Vertex-subset FVS.  ``origin`` maps subdivision vertices to the edge they replace."""

    graph: MultiGraph
    s_vertices: frozenset[int]
    k: int
    origin: Mapping[int, int] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "s_vertices", frozenset(self.s_vertices))
        if not self.s_vertices <= self.graph.vertices:
            raise ValueError("S must be a subset of the vertices")
        if self.k < 0:
            raise ValueError("budget must be non-negative")


def relabel_s(g: MultiGraph, s: Iterable[int]) -> MultiGraph:
    s = set(s)
    edges = [e._replace(in_s=e.id in s) for e in g.edges()]
    return MultiGraph(g.vertices, edges, next_vertex=g.next_vertex, next_edge=g.next_edge)


# -- conversions --------------------------------------------------------------


def sfvs_to_esfvs(inst: SfvsInstance) -> EsfvsInstance:
    s = inst.s_vertices
    flagged = [e.id for e in inst.graph.edges() if e.u in s or e.v in s]
    return EsfvsInstance(relabel_s(inst.graph, flagged), inst.k)


def esfvs_to_sfvs(inst: EsfvsInstance) -> SfvsInstance:
    """Subdivide every S-edge by a fresh vertex; the new vertices form S."""
    g = inst.graph
    s_ids = sorted(g.s_edges)
    plain = relabel_s(g.delete_edges(s_ids), ())
    plain, mids = plain.add_vertices(len(s_ids))
    pairs = []
    for eid, x in zip(s_ids, mids):
        e = g.edge(eid)
        pairs += [(e.u, x, False), (x, e.v, False)]
    plain, _ = plain.add_edges(pairs)
    return SfvsInstance(plain, frozenset(mids), inst.k, dict(zip(mids, s_ids)))


def multiway_to_esfvs(g: MultiGraph, terminals: Iterable[int], k: int) -> EsfvsInstance:
    """Attach a pendant copy to every terminal by an S-edge and make the copies a clique.

    The result is equivalent to multiway cut on ``(g, terminals, k)`` in the
    variant that may also delete terminals; see the tests for why the
    terminal-preserving variant is not captured.
    """
    terminals = list(terminals)
    if len(set(terminals)) != len(terminals):
        raise ValueError("terminals must be distinct")
    h = relabel_s(g, ())
    h, copies = h.add_vertices(len(terminals))
    pairs = [(t, c, True) for t, c in zip(terminals, copies)]
    pairs += [(a, b, False) for a, b in combinations(copies, 2)]
    h, _ = h.add_edges(pairs)
    return EsfvsInstance(h, k)


# -- parsing and serialisation ------------------------------------------------


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _ints(tokens, line):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(line, "expected integers") from None


def parse(text: str) -> EsfvsInstance | SfvsInstance | MwcInstance:
    kind = None
    n = m = k = 0
    raw_edges: list[tuple[int, int, bool]] = []
    marked: list[int] = []
    lineno = 0
    for lineno, line in enumerate(text.splitlines(), 1):
        tokens = line.split()
        if not tokens or tokens[0] == "c":
            continue
        tag = tokens[0]
        if tag == "p":
            if kind is not None:
                raise ParseError(lineno, "duplicate problem line")
            if len(tokens) != 5 or tokens[1] not in ("esfvs", "sfvs", "mwc"):
                raise ParseError(lineno, "malformed problem line")
            kind = tokens[1]
            n, m, k = _ints(tokens[2:], lineno)
            if n < 0 or m < 0 or k < 0:
                raise ParseError(lineno, "negative value in problem line")
            continue
        if kind is None:
            raise ParseError(lineno, "data before problem line")
        if tag == "e":
            width = (3, 4) if kind == "mwc" else (4,)
            if len(tokens) not in width:
                raise ParseError(lineno, "malformed edge line")
            vals = _ints(tokens[1:], lineno)
            u, v = vals[0], vals[1]
            flag = vals[2] if len(vals) > 2 else 0
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(lineno, "edge endpoint out of range")
            if flag not in (0, 1) or (flag == 1 and kind != "esfvs"):
                raise ParseError(lineno, "invalid edge flag")
            if len(raw_edges) >= m:
                raise ParseError(lineno, "more edges than declared")
            raw_edges.append((u - 1, v - 1, flag == 1))
        elif (tag == "s" and kind == "sfvs") or (tag == "t" and kind == "mwc"):
            if len(tokens) != 2:
                raise ParseError(lineno, f"malformed {tag} line")
            (v,) = _ints(tokens[1:], lineno)
            if not 1 <= v <= n:
                raise ParseError(lineno, "vertex out of range")
            marked.append(v - 1)
        else:
            raise ParseError(lineno, f"unexpected line type {tag!r}")
    if kind is None:
        raise ParseError(lineno, "missing problem line")
    if len(raw_edges) != m:
        raise ParseError(lineno, f"declared {m} edges, found {len(raw_edges)}")
    g = MultiGraph(range(n), [Edge(i, u, v, f) for i, (u, v, f) in enumerate(raw_edges)])
    if kind == "esfvs":
        return EsfvsInstance(g, k)
    if kind == "sfvs":
        return SfvsInstance(g, frozenset(marked), k)
    if len(set(marked)) != len(marked):
        raise ParseError(lineno, "duplicate terminal")
    return MwcInstance(g, frozenset(marked), k)


def labels(g: MultiGraph) -> dict[int, int]:
    """Internal vertex id -> 1-based file label (dense, by increasing id)."""
    return {v: i + 1 for i, v in enumerate(sorted(g.vertices))}


def serialize(inst: EsfvsInstance | SfvsInstance | MwcInstance, comments: Iterable[str] = ()) -> str:
    g = inst.graph
    lab = labels(g)
    out = [f"c {c}" for c in comments]
    if any(v != lab[v] - 1 for v in g.vertices):
        out += [f"c label {lab[v]} {v + 1}" for v in sorted(g.vertices)]
    kind = {EsfvsInstance: "esfvs", SfvsInstance: "sfvs", MwcInstance: "mwc"}[type(inst)]
    out.append(f"p {kind} {g.n} {g.m} {inst.k}")
    for e in g.edges():
        flag = 1 if (kind == "esfvs" and e.in_s) else 0
        out.append(f"e {lab[e.u]} {lab[e.v]} {flag}")
    if kind == "sfvs":
        out += [f"s {lab[v]}" for v in sorted(inst.s_vertices)]
    if kind == "mwc":
        out += [f"t {lab[v]}" for v in sorted(inst.terminals)]
    return "\n".join(out) + "\n"


def format_solution(witness: Iterable[int] | None, label: Mapping[int, int] | None = None) -> str:
    if witness is None:
        return "NO\n"
    lab = label or {}
    rows = sorted(lab.get(v, v + 1) for v in witness)
    return "YES\n" + "".join(f"{r}\n" for r in rows)


def parse_vertex_list(text: str) -> frozenset[int]:
    """1-based vertex list (one or more per line); ``YES``/``c`` lines are skipped."""
    out = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        tokens = line.split()
        if not tokens or tokens[0] in ("c", "YES"):
            continue
        for v in _ints(tokens, lineno):
            if v < 1:
                raise ParseError(lineno, "vertex out of range")
            out.add(v - 1)
    return frozenset(out)


# -- generators ---------------------------------------------------------------


def gen_random(n: int, m: int, s_count: int, k: int, seed: int) -> EsfvsInstance:
    """Simple random graph with ``m`` edges, ``s_count`` of them in S."""
    if n < 0 or m < 0 or s_count < 0 or k < 0:
        raise ValueError("parameters must be non-negative")
    if m > n * (n - 1) // 2:
        raise ValueError("too many edges for a simple graph")
    if s_count > m:
        raise ValueError("more S-edges than edges")
    rng = random.Random(seed)
    pairs = rng.sample(list(combinations(range(n), 2)), m)
    s = set(rng.sample(range(m), s_count))
    return EsfvsInstance(MultiGraph.from_edges(n, [(u, v, i in s) for i, (u, v) in enumerate(pairs)]), k)


def gen_planted(n: int, k: int, seed: int) -> tuple[EsfvsInstance, frozenset[int]]:
    """Random instance in which a planted set of ``k`` hubs meets every S-cycle.

    Outside the hubs the graph is a tree of blobs: every blob is connected
    and may contain cycles, but its edges are not in S, and blobs are joined
    by single S-edges.  Removing the hubs therefore leaves every S-edge a
    bridge.  Hub vertices get random S- and non-S edges into the blobs.
    Vertex labels are shuffled so the hubs sit at random positions.
    """
    if k < 1 or n < k + 3:
        raise ValueError("need k >= 1 and n >= k + 3")
    rng = random.Random(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    hubs, rest = perm[:k], perm[k:]

    blobs = []
    i = 0
    while i < len(rest):
        size = rng.randint(3, 6)
        blobs.append(rest[i:i + size])
        i += size
    if len(blobs) > 1 and len(blobs[-1]) < 3:
        blobs[-2].extend(blobs.pop())

    edges: set[tuple[int, int, bool]] = set()
    seen: set[tuple[int, int]] = set()

    def add(u, v, in_s):
        key = (min(u, v), max(u, v))
        if u != v and key not in seen:
            seen.add(key)
            edges.add((key[0], key[1], in_s))

    for blob in blobs:
        for j in range(1, len(blob)):
            add(blob[j], blob[rng.randrange(j)], False)
        for _ in range(rng.randint(0, len(blob) // 2)):
            a, b = rng.sample(blob, 2)
            add(a, b, False)
    for j in range(1, len(blobs)):
        other = blobs[rng.randrange(j)]
        add(rng.choice(blobs[j]), rng.choice(other), True)
    for h in hubs:
        for _ in range(rng.randint(2, 4)):
            add(h, rng.choice(rest), True)
        for _ in range(rng.randint(1, 3)):
            add(h, rng.choice(rest), False)
    for a, b in combinations(hubs, 2):
        if rng.random() < 0.5:
            add(a, b, rng.random() < 0.5)

    ordered = sorted(edges)
    rng.shuffle(ordered)
    g = MultiGraph.from_edges(n, ordered)
    return EsfvsInstance(g, k), frozenset(hubs)
