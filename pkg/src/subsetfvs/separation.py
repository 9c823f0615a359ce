"""Separation primitives: matchings, vertex-disjoint paths and blockers.

* :func:`max_bipartite_matching` -- Hopcroft-Karp.
* :func:`max_matching` / :func:`gallai_edmonds` -- Edmonds' blossom algorithm
  for general graphs and the D/A/C decomposition read off its final search.
* :func:`menger_vertex` -- k+1 internally disjoint s-t paths or a small cut.
* :func:`gallai_packing_or_blocker` -- k+1 disjoint A-paths or a <=2k blocker.
* :func:`two_expansion` -- the 2-expansion structure in a bipartite graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

from .graph import MultiGraph

INF = float("inf")


@dataclass(frozen=True)
class Paths:
    """A packing of vertex-disjoint paths, each a tuple of vertices."""

    paths: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.paths)


@dataclass(frozen=True)
class Cut:
    vertices: frozenset[int]


@dataclass(frozen=True)
class Blocker:
    vertices: frozenset[int]


@dataclass(frozen=True)
class ExpansionResult:
    x_prime: frozenset
    y_prime: frozenset
    assignment: dict = field(hash=False)


class UncuttablePairError(ValueError):
    """s and t are adjacent and fewer than k+1 disjoint paths exist."""


# -- bipartite matching -------------------------------------------------------


def max_bipartite_matching(
    left: Iterable[Hashable],
    right: Iterable[Hashable],
    adjacency: Mapping[Hashable, Iterable[Hashable]],
) -> set[tuple]:
    """Maximum-cardinality matching as a set of ``(left, right)`` pairs."""
    left = sorted(set(left), key=repr)
    right = set(right)
    adj = {x: [y for y in adjacency.get(x, ()) if y in right] for x in left}
    mate_l: dict = {x: None for x in left}
    mate_r: dict = {}
    dist: dict = {}

    def bfs() -> bool:
        queue = deque()
        for x in left:
            if mate_l[x] is None:
                dist[x] = 0
                queue.append(x)
            else:
                dist[x] = INF
        found = False
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                z = mate_r.get(y)
                if z is None:
                    found = True
                elif dist[z] == INF:
                    dist[z] = dist[x] + 1
                    queue.append(z)
        return found

    def dfs(x) -> bool:
        # explicit stack: (left vertex, iterator over its neighbours)
        stack = [(x, iter(adj[x]))]
        path = []
        while stack:
            cur, it = stack[-1]
            for y in it:
                z = mate_r.get(y)
                if z is None:
                    path.append((cur, y))
                    for a, b in path:
                        mate_l[a] = b
                        mate_r[b] = a
                    return True
                if dist[z] == dist[cur] + 1:
                    path.append((cur, y))
                    stack.append((z, iter(adj[z])))
                    break
            else:
                dist[cur] = INF
                stack.pop()
                if path:
                    path.pop()
        return False

    while bfs():
        for x in left:
            if mate_l[x] is None:
                dfs(x)
    return {(x, y) for x, y in mate_l.items() if y is not None}


# -- general matching ---------------------------------------------------------


class _Blossom:
    """Edmonds' algorithm on vertices 0..n-1 (single-root searches)."""

    def __init__(self, n: int, adj: list[list[int]]):
        self.n = n
        self.adj = adj
        self.match = [-1] * n
        self.last_even: list[bool] = []

    def _lca(self, a, b, base, parent):
        seen = [False] * self.n
        match = self.match
        while True:
            a = base[a]
            seen[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[match[b]]

    def _mark(self, v, b, child, base, parent, blossom):
        match = self.match
        while base[v] != b:
            blossom[base[v]] = blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    def search(self, root: int) -> int:
        """Grow an alternating tree from ``root``; return an exposed endpoint or -1.

        On failure ``last_even`` marks the even (outer) vertices of the tree.
        """
        n, match, adj = self.n, self.match, self.adj
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = self._lca(v, to, base, parent)
                    blossom = [False] * n
                    self._mark(v, cur, to, base, parent, blossom)
                    self._mark(to, cur, v, base, parent, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        self._parent = parent
                        return to
                    used[match[to]] = True
                    queue.append(match[to])
        self.last_even = used
        return -1

    def augment(self, end: int):
        parent, match = self._parent, self.match
        v = end
        while v != -1:
            pv = parent[v]
            ppv = match[pv]
            match[v] = pv
            match[pv] = v
            v = ppv

    def solve(self):
        match = self.match
        for v in range(self.n):
            if match[v] == -1:
                for w in self.adj[v]:
                    if match[w] == -1:
                        match[v], match[w] = w, v
                        break
        for v in range(self.n):
            if match[v] == -1:
                end = self.search(v)
                if end != -1:
                    self.augment(end)
        return match


def _index_graph(vertices, edges):
    vs = sorted(set(vertices), key=repr)
    idx = {v: i for i, v in enumerate(vs)}
    adj: list[set[int]] = [set() for _ in vs]
    for a, b in edges:
        if a == b:
            continue
        i, j = idx[a], idx[b]
        adj[i].add(j)
        adj[j].add(i)
    return vs, idx, [sorted(s) for s in adj]


def max_matching(vertices: Iterable[Hashable], edges: Iterable[tuple]) -> dict:
    """Maximum-cardinality matching of a general graph as a mate map (both directions)."""
    vs, _, adj = _index_graph(vertices, edges)
    match = _Blossom(len(vs), adj).solve()
    return {vs[i]: vs[j] for i, j in enumerate(match) if j != -1}


def gallai_edmonds(vertices: Iterable[Hashable], edges: Iterable[tuple]):
    """Return ``(mate, D, A, C)``.

    D holds the vertices missed by some maximum matching, A = N(D) minus D, and
    C the rest.  D is collected as the even vertices of a failed search from
    every exposed vertex of a maximum matching.
    """
    vs, _, adj = _index_graph(vertices, edges)
    bl = _Blossom(len(vs), adj)
    match = bl.solve()
    even = [False] * len(vs)
    for r in range(len(vs)):
        if match[r] == -1 and not even[r]:
            if bl.search(r) != -1:
                raise AssertionError("matching is not maximum")
            for i, flag in enumerate(bl.last_even):
                if flag:
                    even[i] = True
    d = {i for i in range(len(vs)) if even[i]}
    a = {j for i in d for j in adj[i]} - d
    c = set(range(len(vs))) - d - a
    mate = {vs[i]: vs[j] for i, j in enumerate(match) if j != -1}
    return mate, {vs[i] for i in d}, {vs[i] for i in a}, {vs[i] for i in c}


# -- unit-capacity vertex flow ------------------------------------------------


class FlowNetwork:
    """Residual network with integer (or infinite) capacities."""

    def __init__(self, size: int):
        self.head: list[list[int]] = [[] for _ in range(size)]
        self.to: list[int] = []
        self.cap: list[float] = []

    def add_node(self) -> int:
        self.head.append([])
        return len(self.head) - 1

    def add_edge(self, u: int, v: int, cap: float) -> int:
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(cap)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)
        return len(self.to) - 2

    def max_flow(self, s: int, t: int, limit: float = INF) -> int:
        """Augment along shortest paths until ``limit`` units or none remain."""
        flow = 0
        head, to, cap = self.head, self.to, self.cap
        while flow < limit:
            prev = {s: -1}
            queue = deque([s])
            while queue and t not in prev:
                x = queue.popleft()
                for eid in head[x]:
                    y = to[eid]
                    if cap[eid] > 0 and y not in prev:
                        prev[y] = eid
                        queue.append(y)
            if t not in prev:
                break
            y = t
            while y != s:
                eid = prev[y]
                cap[eid] -= 1
                cap[eid ^ 1] += 1
                y = to[eid ^ 1]
            flow += 1
        return flow

    def reach_from(self, s: int) -> set[int]:
        seen = {s}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for eid in self.head[x]:
                y = self.to[eid]
                if self.cap[eid] > 0 and y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def reaching(self, t: int) -> set[int]:
        """Nodes that can still reach ``t`` in the residual network."""
        seen = {t}
        queue = deque([t])
        while queue:
            y = queue.popleft()
            for eid in self.head[y]:
                x = self.to[eid]
                if self.cap[eid ^ 1] > 0 and x not in seen:
                    seen.add(x)
                    queue.append(x)
        return seen


class SplitNetwork:
    """Vertex-capacitated flow network of a graph (vertex v -> nodes 2i, 2i+1).

    Vertices in ``undeletable`` get infinite capacity.  ``sources`` and
    ``sinks`` are attached to a super source/sink.
    """

    def __init__(self, g: MultiGraph, sources: Iterable[int], sinks: Iterable[int],
                 undeletable: Iterable[int] = ()):
        self.order = sorted(g.vertices)
        self.index = {v: i for i, v in enumerate(self.order)}
        keep = set(undeletable) | set(sources) | set(sinks)
        n = len(self.order)
        net = FlowNetwork(2 * n + 2)
        self.source, self.sink = 2 * n, 2 * n + 1
        self.split_edge = {}
        for v, i in self.index.items():
            self.split_edge[v] = net.add_edge(2 * i, 2 * i + 1, INF if v in keep else 1)
        seen = set()
        for e in g.edges():
            if e.is_loop:
                continue
            key = (min(e.u, e.v), max(e.u, e.v))
            if key in seen:
                continue
            seen.add(key)
            i, j = self.index[e.u], self.index[e.v]
            net.add_edge(2 * i + 1, 2 * j, INF)
            net.add_edge(2 * j + 1, 2 * i, INF)
        for v in set(sources):
            net.add_edge(self.source, 2 * self.index[v], INF)
        for v in set(sinks):
            net.add_edge(2 * self.index[v] + 1, self.sink, INF)
        self.net = net

    def max_flow(self, limit: float = INF) -> int:
        return self.net.max_flow(self.source, self.sink, limit)

    def closest_cut(self) -> frozenset[int]:
        """Minimum separator nearest the sources (after :meth:`max_flow`)."""
        reach = self.net.reach_from(self.source)
        return frozenset(v for v, i in self.index.items() if 2 * i in reach and 2 * i + 1 not in reach)

    def furthest_cut(self) -> tuple[frozenset[int], frozenset[int]]:
        """Minimum separator nearest the sinks and the vertex set on the source side."""
        back = self.net.reaching(self.sink)
        sep = frozenset(v for v, i in self.index.items() if 2 * i not in back and 2 * i + 1 in back)
        side = frozenset(v for v, i in self.index.items() if 2 * i + 1 not in back)
        return sep, side

    def decompose(self) -> list[tuple[int, ...]]:
        """Source-to-sink paths (original vertices) carried by the current flow."""
        net = self.net
        used = {}
        for eid in range(0, len(net.to), 2):
            f = net.cap[eid ^ 1]
            if f > 0:
                used[eid] = f
        paths = []
        while True:
            x = self.source
            walk = []
            while x != self.sink:
                nxt = None
                for eid in net.head[x]:
                    if eid % 2 == 0 and used.get(eid, 0) > 0:
                        nxt = eid
                        break
                if nxt is None:
                    return paths
                used[nxt] -= 1
                x = net.to[nxt]
                if x < 2 * len(self.order) and x % 2 == 0:
                    v = self.order[x // 2]
                    if v in walk:
                        del walk[walk.index(v) + 1:]
                    else:
                        walk.append(v)
            paths.append(tuple(walk))


def menger_vertex(g: MultiGraph, s: int, t: int, k: int) -> Paths | Cut:
    """``k+1`` internally vertex-disjoint s-t paths, or an s-t separator of size <= k.

    The separator never contains ``s`` or ``t``.  If s and t are adjacent the
    direct edge counts as one path; when the remaining paths are too few no
    separator exists and :class:`UncuttablePairError` is raised.
    """
    if s == t:
        raise ValueError("s and t must differ")
    if s not in g or t not in g:
        raise ValueError("s and t must be vertices of the graph")
    direct = bool(g.edges_between(s, t))
    h = g.delete_edges(e.id for e in g.edges_between(s, t)) if direct else g
    need = k if direct else k + 1
    sn = SplitNetwork(h, [s], [t])
    flow = sn.max_flow(limit=need)
    if flow >= need:
        paths = sn.decompose()[:need]
        if direct:
            paths = [(s, t)] + paths
        return Paths(tuple(paths))
    if direct:
        raise UncuttablePairError(f"{s} and {t} are adjacent with only {flow + 1} disjoint paths")
    return Cut(sn.closest_cut())


# -- Gallai A-paths -----------------------------------------------------------


def _a_path_aux(g: MultiGraph, a: frozenset[int]):
    """Auxiliary graph whose matching number is |V \\ A| + max #disjoint A-paths.

    Every vertex outside A is split into two adjacent copies ``(v, 0)``,
    ``(v, 1)``; every edge joins all copies of its endpoints.
    """
    def copies(v):
        return [(v, -1)] if v in a else [(v, 0), (v, 1)]

    nodes = [c for v in sorted(g.vertices) for c in copies(v)]
    edges = set()
    for v in g.vertices:
        if v not in a:
            edges.add(((v, 0), (v, 1)))
    for e in g.edges():
        if e.is_loop:
            continue
        for x in copies(e.u):
            for y in copies(e.v):
                edges.add((min(x, y), max(x, y)))
    return nodes, edges


def _paths_from_matching(mate: dict, a: frozenset[int]) -> list[tuple[int, ...]]:
    """A-paths read off the symmetric difference of the matching and the copy pairs."""
    paths = []
    for start in sorted(a):
        node = (start, -1)
        if node not in mate:
            continue
        walk = [start]
        cur = mate[node]
        while True:
            v, side = cur
            if side == -1:
                if v != start and v > start:
                    walk.append(v)
                    paths.append(tuple(walk))
                break
            walk.append(v)
            twin = (v, 1 - side)
            nxt = mate.get(twin)
            if nxt is None or nxt == cur:
                break
            cur = nxt
    return paths


def a_path_packing(g: MultiGraph, a: Iterable[int]) -> list[tuple[int, ...]]:
    """A maximum family of vertex-disjoint A-paths (internal vertices avoid A)."""
    a = frozenset(a)
    nodes, edges = _a_path_aux(g, a)
    mate = max_matching(nodes, edges)
    return _paths_from_matching(mate, a)


def gallai_packing_or_blocker(g: MultiGraph, a: Iterable[int], k: int) -> Paths | Blocker:
    """``k+1`` disjoint A-paths, or at most ``2k`` vertices meeting every A-path.

    The blocker is read off the Gallai-Edmonds decomposition of the auxiliary
    graph: the non-A vertices whose copies lie in the Tutte set, the A-vertices
    outside D, and all but one A-vertex of every odd component of D.
    """
    a = frozenset(a) & g.vertices
    nodes, edges = _a_path_aux(g, a)
    mate, d, tutte, _ = gallai_edmonds(nodes, edges)
    paths = _paths_from_matching(mate, a)
    if len(paths) >= k + 1:
        return Paths(tuple(paths[: k + 1]))

    blocker = {v for v, side in tutte}
    blocker |= {v for v in a if (v, -1) not in d}
    # components of G'[D]; each holds an odd number of A-vertices
    d_adj: dict = {x: [] for x in d}
    for x, y in edges:
        if x in d and y in d:
            d_adj[x].append(y)
            d_adj[y].append(x)
    seen = set()
    for x in sorted(d):
        if x in seen:
            continue
        comp = [x]
        seen.add(x)
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for z in d_adj[y]:
                if z not in seen:
                    seen.add(z)
                    comp.append(z)
                    queue.append(z)
        in_a = sorted(v for v, side in comp if side == -1)
        blocker.update(in_a[1:])
    if len(blocker) > 2 * len(paths):
        raise AssertionError("blocker exceeds twice the packing number")
    return Blocker(frozenset(blocker))


# -- 2-expansion --------------------------------------------------------------


def two_expansion(
    x: Iterable[Hashable],
    y: Iterable[Hashable],
    adjacency: Mapping[Hashable, Iterable[Hashable]],
) -> ExpansionResult:
    """Find X' and Y' such that N(Y') within X is X' and each x in X' owns two private neighbours.

    ``adjacency`` maps members of ``x`` to their neighbours in ``y``.  Every
    member of X is duplicated; a maximum matching of the copies into Y is
    computed, and the part reachable from unmatched Y-vertices by alternating
    paths gives the expansion.
    """
    xs = set(x)
    ys = set(y)
    adj = {v: [w for w in adjacency.get(v, ()) if w in ys] for v in xs}
    if not xs:
        raise ValueError("X must be nonempty")
    if len(ys) < 2 * len(xs):
        raise ValueError("|Y| must be at least 2|X|")
    radj: dict = {w: [] for w in ys}
    for v in xs:
        for w in adj[v]:
            radj[w].append(v)
    if any(not radj[w] for w in ys):
        raise ValueError("every member of Y needs a neighbour in X")

    copies = {(v, c): adj[v] for v in xs for c in (0, 1)}
    matching = max_bipartite_matching(copies.keys(), ys, copies)
    mate_copy = dict(matching)
    mate_y = {w: c for c, w in matching}

    free = [w for w in ys if w not in mate_y]
    if not free:
        x_prime, y_prime = frozenset(xs), frozenset(ys)
    else:
        reached_y = set(free)
        reached_x = set()
        queue = deque(free)
        while queue:
            w = queue.popleft()
            for v in radj[w]:
                if v in reached_x:
                    continue
                reached_x.add(v)
                for c in (0, 1):
                    partner = mate_copy.get((v, c))
                    if partner is None:
                        raise AssertionError("augmenting path left in a maximum matching")
                    if partner not in reached_y:
                        reached_y.add(partner)
                        queue.append(partner)
        x_prime, y_prime = frozenset(reached_x), frozenset(reached_y)
    assignment = {v: (mate_copy[(v, 0)], mate_copy[(v, 1)]) for v in x_prime}
    return ExpansionResult(x_prime, y_prime, assignment)
