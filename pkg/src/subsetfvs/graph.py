"""Undirected multigraphs with S-flagged edges and the elementary procedures on them.

Graphs are immutable values: every mutating operation returns a new graph and
leaves its input untouched.  Vertex and edge identifiers are integers that are
never reused within one lineage of derived graphs, so a vertex deleted from a
graph can still be reported by its original identifier.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple


class Edge(NamedTuple):
    id: int
    u: int
    v: int
    in_s: bool = False

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u


class GraphError(ValueError):
    """Raised on inconsistent graph input (caller bug)."""


class MultiGraph:
    """Undirected multigraph; loops and parallel edges are allowed.

    ``next_vertex``/``next_edge`` are the first identifiers handed out by
    :meth:`add_vertices` and :meth:`add_edge`; derived graphs inherit them so
    identifiers stay unique across a whole derivation chain.
    """

    __slots__ = ("_vertices", "_edges", "_next_vertex", "_next_edge", "_adj", "_s")

    def __init__(
        self,
        vertices: Iterable[int] = (),
        edges: Iterable[Edge | tuple] = (),
        *,
        next_vertex: int | None = None,
        next_edge: int | None = None,
        _trusted: bool = False,
    ):
        self._vertices = frozenset(vertices)
        if _trusted:
            self._edges = edges  # type: ignore[assignment]
        else:
            es: dict[int, Edge] = {}
            for e in edges:
                e = Edge(*e)
                if e.id in es:
                    raise GraphError(f"duplicate edge id {e.id}")
                if e.u not in self._vertices or e.v not in self._vertices:
                    raise GraphError(f"edge {e.id} has an endpoint outside the vertex set")
                es[e.id] = Edge(e.id, e.u, e.v, bool(e.in_s))
            self._edges = es
        top_v = max(self._vertices, default=-1) + 1
        top_e = max(self._edges, default=-1) + 1
        self._next_vertex = top_v if next_vertex is None else max(next_vertex, top_v)
        self._next_edge = top_e if next_edge is None else max(next_edge, top_e)
        self._adj: dict[int, list[Edge]] | None = None
        self._s: frozenset[int] | None = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple]) -> MultiGraph:
        """Graph on vertices ``0..n-1``; edges ``(u, v[, in_s])`` get ids in order."""
        es = []
        for i, e in enumerate(edges):
            u, v = e[0], e[1]
            in_s = bool(e[2]) if len(e) > 2 else False
            es.append(Edge(i, u, v, in_s))
        return cls(range(n), es)

    # -- queries -------------------------------------------------------------

    @property
    def vertices(self) -> frozenset[int]:
        return self._vertices

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def next_vertex(self) -> int:
        return self._next_vertex

    @property
    def next_edge(self) -> int:
        return self._next_edge

    def edges(self) -> Iterator[Edge]:
        return iter(self._edges.values())

    def edge(self, eid: int) -> Edge:
        return self._edges[eid]

    def has_edge_id(self, eid: int) -> bool:
        return eid in self._edges

    def __contains__(self, v: object) -> bool:
        return v in self._vertices

    @property
    def s_edges(self) -> frozenset[int]:
        if self._s is None:
            self._s = frozenset(e.id for e in self._edges.values() if e.in_s)
        return self._s

    def _adjacency(self) -> dict[int, list[Edge]]:
        if self._adj is None:
            adj: dict[int, list[Edge]] = {v: [] for v in self._vertices}
            for e in self._edges.values():
                adj[e.u].append(e)
                if not e.is_loop:
                    adj[e.v].append(e)
            self._adj = adj
        return self._adj

    def incident(self, v: int) -> list[Edge]:
        """Edges at ``v`` in id order; a loop is listed once."""
        return self._adjacency()[v]

    def neighbors(self, v: int) -> set[int]:
        return {e.other(v) for e in self._adjacency()[v] if not e.is_loop}

    def degree(self, v: int) -> int:
        return sum(2 if e.is_loop else 1 for e in self._adjacency()[v])

    def edges_between(self, u: int, v: int) -> list[Edge]:
        return [e for e in self._adjacency()[u] if e.other(u) == v]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self):
        return hash((self._vertices, frozenset(self._edges.values())))

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.n}, m={self.m}, |S|={len(self.s_edges)})"

    # -- derived graphs ------------------------------------------------------

    def _derive(self, vertices, edges: dict[int, Edge], next_vertex=None, next_edge=None) -> MultiGraph:
        return MultiGraph(
            vertices,
            edges,
            next_vertex=self._next_vertex if next_vertex is None else next_vertex,
            next_edge=self._next_edge if next_edge is None else next_edge,
            _trusted=True,
        )

    def delete_vertices(self, x: Iterable[int]) -> MultiGraph:
        x = set(x)
        if not x:
            return self
        unknown = x - self._vertices
        if unknown:
            raise GraphError(f"unknown vertices {sorted(unknown)}")
        es = {i: e for i, e in self._edges.items() if e.u not in x and e.v not in x}
        return self._derive(self._vertices - x, es)

    def induced(self, keep: Iterable[int]) -> MultiGraph:
        keep = frozenset(keep)
        return self.delete_vertices(self._vertices - keep)

    def delete_edges(self, ids: Iterable[int]) -> MultiGraph:
        ids = set(ids)
        if not ids:
            return self
        es = {i: e for i, e in self._edges.items() if i not in ids}
        return self._derive(self._vertices, es)

    def without_s(self) -> MultiGraph:
        """The graph with every S-edge removed (G_S)."""
        return self.delete_edges(self.s_edges)

    def add_vertices(self, count: int) -> tuple[MultiGraph, list[int]]:
        new = list(range(self._next_vertex, self._next_vertex + count))
        g = self._derive(self._vertices | set(new), self._edges, next_vertex=self._next_vertex + count)
        return g, new

    def add_edges(self, pairs: Iterable[tuple]) -> tuple[MultiGraph, list[int]]:
        es = dict(self._edges)
        nxt = self._next_edge
        ids = []
        for p in pairs:
            u, v = p[0], p[1]
            if u not in self._vertices or v not in self._vertices:
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside the vertex set")
            es[nxt] = Edge(nxt, u, v, bool(p[2]) if len(p) > 2 else False)
            ids.append(nxt)
            nxt += 1
        return self._derive(self._vertices, es, next_edge=nxt), ids

    def add_edge(self, u: int, v: int, in_s: bool = False) -> tuple[MultiGraph, int]:
        g, ids = self.add_edges([(u, v, in_s)])
        return g, ids[0]


@dataclass(frozen=True)
class Partition:
    """Partition of a finite vertex set into nonempty disjoint blocks.

    Blocks are stored sorted by their least element, so two partitions of the
    same set compare equal iff they have the same blocks.
    """

    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        blocks = tuple(sorted((frozenset(b) for b in self.blocks), key=min)) if self.blocks else ()
        seen: set[int] = set()
        for b in blocks:
            if not b:
                raise ValueError("empty block")
            if seen & b:
                raise ValueError("blocks overlap")
            seen |= b
        object.__setattr__(self, "blocks", blocks)

    @property
    def ground(self) -> frozenset[int]:
        return frozenset().union(*self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def index(self) -> dict[int, int]:
        return {v: i for i, b in enumerate(self.blocks) for v in b}

    def refines(self, other: Partition) -> bool:
        """True iff every block of ``self`` lies inside a block of ``other``."""
        where = other.index()
        for b in self.blocks:
            owners = {where.get(v) for v in b}
            if len(owners) != 1 or None in owners:
                return False
        return True


# -- elementary procedures ----------------------------------------------------


def connected_components(g: MultiGraph) -> Partition:
    seen: set[int] = set()
    blocks = []
    for start in sorted(g.vertices):
        if start in seen:
            continue
        comp = {start}
        seen.add(start)
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for e in g.incident(x):
                y = e.other(x)
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    queue.append(y)
        blocks.append(frozenset(comp))
    return Partition(tuple(blocks))


def bridges(g: MultiGraph) -> set[int]:
    """Ids of all bridges, by one iterative low-link pass.

    The tree edge to the parent is skipped by edge id, not by vertex, so a
    second edge of a parallel bundle acts as a back edge and no bundle member
    is reported.  Loops are never bridges.
    """
    order: dict[int, int] = {}
    low: dict[int, int] = {}
    found: set[int] = set()
    counter = 0
    for root in sorted(g.vertices):
        if root in order:
            continue
        order[root] = low[root] = counter
        counter += 1
        # frames: (vertex, id of the edge used to enter it, iterator over incident edges)
        stack = [(root, -1, iter(g.incident(root)))]
        while stack:
            x, via, it = stack[-1]
            advanced = False
            for e in it:
                if e.id == via or e.is_loop:
                    continue
                y = e.other(x)
                if y in order:
                    if order[y] < low[x]:
                        low[x] = order[y]
                else:
                    order[y] = low[y] = counter
                    counter += 1
                    stack.append((y, e.id, iter(g.incident(y))))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    if low[x] < low[parent]:
                        low[parent] = low[x]
                    if low[x] > order[parent]:
                        found.add(via)
    return found


def spanning_forest(g: MultiGraph) -> set[int]:
    """Edge ids of a BFS spanning forest; roots and edges visited in id order."""
    seen: set[int] = set()
    forest: set[int] = set()
    for root in sorted(g.vertices):
        if root in seen:
            continue
        seen.add(root)
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for e in g.incident(x):
                y = e.other(x)
                if y not in seen:
                    seen.add(y)
                    forest.add(e.id)
                    queue.append(y)
    return forest


def delete_vertices(g: MultiGraph, x: Iterable[int]) -> MultiGraph:
    return g.delete_vertices(x)


def neighborhood(g: MultiGraph, x: Iterable[int]) -> set[int]:
    """N(X): vertices outside X adjacent to some vertex of X."""
    x = set(x)
    out: set[int] = set()
    for v in x:
        for e in g.incident(v):
            w = e.other(v)
            if w not in x:
                out.add(w)
    return out


def edge_cut(g: MultiGraph, x: Iterable[int], y: Iterable[int]) -> list[Edge]:
    """E(X, Y): edges with one endpoint in X and the other in Y, in id order."""
    x, y = set(x), set(y)
    return [e for e in g.edges() if (e.u in x and e.v in y) or (e.v in x and e.u in y)]


def endpoints(g: MultiGraph, ids: Iterable[int]) -> set[int]:
    """V(E'): all endpoints of the given edges."""
    out: set[int] = set()
    for i in ids:
        e = g.edge(i)
        out.add(e.u)
        out.add(e.v)
    return out


def is_forest(g: MultiGraph) -> bool:
    parent = {v: v for v in g.vertices}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in g.edges():
        a, b = find(e.u), find(e.v)
        if a == b:
            return False
        parent[a] = b
    return True


def suppress_degree2_vertex(g: MultiGraph, v: int) -> MultiGraph:
    """Delete a vertex with exactly two distinct neighbours and join them by an edge.

    The new edge is in S iff one of the two removed edges was.
    """
    inc = g.incident(v)
    if len(inc) != 2 or any(e.is_loop for e in inc) or inc[0].other(v) == inc[1].other(v):
        raise GraphError(f"vertex {v} is not a degree-2 vertex with two distinct neighbours")
    a, b = inc[0].other(v), inc[1].other(v)
    h = g.delete_vertices([v])
    h, _ = h.add_edge(a, b, inc[0].in_s or inc[1].in_s)
    return h


def compress_forest(g: MultiGraph, forest_ids: Iterable[int], keep: Iterable[int]) -> MultiGraph:
    """Shrink a forest down to the structure that matters for the vertices in ``keep``.

    Repeatedly drops isolated vertices and leaves outside ``keep``, then
    suppresses degree-2 vertices outside ``keep``.  Afterwards every vertex of
    degree at most two belongs to ``keep``.  The result is a fresh forest
    whose edges carry new ids.
    """
    keep = set(keep)
    adj: dict[int, set[int]] = {v: set() for v in g.vertices}
    for i in forest_ids:
        e = g.edge(i)
        if e.is_loop or e.v in adj[e.u]:
            raise GraphError("edge set is not a forest")
        adj[e.u].add(e.v)
        adj[e.v].add(e.u)

    queue = deque(v for v in sorted(adj) if v not in keep and len(adj[v]) <= 1)
    while queue:
        v = queue.popleft()
        if v not in adj or len(adj[v]) > 1:
            continue
        for w in adj.pop(v):
            adj[w].discard(v)
            if w not in keep and len(adj[w]) <= 1:
                queue.append(w)

    for v in sorted(adj):
        if v in adj and v not in keep and len(adj[v]) == 2:
            a, b = adj.pop(v)
            adj[a].discard(v)
            adj[b].discard(v)
            adj[a].add(b)
            adj[b].add(a)

    pairs = sorted({(min(a, b), max(a, b)) for a in adj for b in adj[a]})
    es = [Edge(i, a, b, False) for i, (a, b) in enumerate(pairs)]
    return MultiGraph(adj.keys(), es, next_vertex=g.next_vertex)


def strip_acyclic(g: MultiGraph) -> MultiGraph:
    """Remove every bridge, then every connected component without an S-edge.

    Neither step touches an edge lying on a cycle, so every vertex set meets
    the same S-cycles before and after.  A single pass reaches the fixpoint.
    """
    h = g.delete_edges(bridges(g))
    dead: set[int] = set()
    for block in connected_components(h):
        if not any(e.in_s for v in block for e in h.incident(v)):
            dead |= block
    return h.delete_vertices(dead)
