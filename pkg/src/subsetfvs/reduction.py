"""Reduction engine for Disjoint Edge-SFVS.

Given ``(G, S, k, Z)`` where ``Z`` is a solution of size ``|Z|``, the engine
either returns an equivalent-enough instance whose S has at most
``size_bound`` edges, or ``IGNORE``, which certifies that the instance is
not a maximal YES-instance (some solution meets Z, or there is none).

Rules run lowest first and the loop restarts after every change:

  0. multi-edge normalisation (loops and parallel bundles)
  1. remove bridges and S-free components
  2. high S-degree vertex of Z (outer-abundant step with F = {v})
  3. bubble with exactly two outgoing edges
  4. too many edge bubbles
  5. leaf bubbles: saturate Z-pairs, thresholds, clique-bubble fans
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

from .graph import Edge, MultiGraph, connected_components, strip_acyclic
from .instance import EsfvsInstance
from .oracle import s_edges_are_bridges
from .separation import Paths, gallai_packing_or_blocker, menger_vertex, two_expansion


class ReductionError(AssertionError):
    """An internal invariant of the reduction engine failed."""


class _Ignore:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "IGNORE"

    def __bool__(self):
        return False


IGNORE = _Ignore()


@dataclass(frozen=True)
class DisjointInstance:
    inst: EsfvsInstance
    z: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "z", frozenset(self.z))
        g = self.inst.graph
        if not self.z <= g.vertices:
            raise ValueError("Z must be a subset of the vertices")
        if not s_edges_are_bridges(g.delete_vertices(self.z)):
            raise ValueError("Z is not a solution of the instance")

    @property
    def graph(self) -> MultiGraph:
        return self.inst.graph

    @property
    def k(self) -> int:
        return self.inst.k

    def replace(self, graph: MultiGraph | None = None, k: int | None = None) -> DisjointInstance:
        graph = self.graph if graph is None else graph
        k = self.k if k is None else k
        return DisjointInstance(EsfvsInstance(graph, k), self.z & graph.vertices)


class Reduced(NamedTuple):
    instance: DisjointInstance
    removed: frozenset[int]


def _take(d: DisjointInstance, x) -> Reduced | _Ignore:
    """Put ``x`` (disjoint from Z) into the solution; IGNORE if the budget cannot pay."""
    x = frozenset(x)
    if x & d.z or len(x) > d.k:
        return IGNORE
    return Reduced(d.replace(d.graph.delete_vertices(x), d.k - len(x)), x)


# -- rule 0 and rule 1 --------------------------------------------------------


def normalize_multiedges(d: DisjointInstance) -> Reduced | _Ignore | None:
    """Resolve one loop or parallel bundle, or return None if the graph is simple.

    An S-loop or an S-edge in a parallel bundle is an S-cycle, so Z meets it.
    """
    g = d.graph
    for e in g.edges():
        if e.is_loop:
            if e.in_s:
                return IGNORE
            return Reduced(d.replace(g.delete_edges([e.id])), frozenset())
    seen: dict[tuple[int, int], list[Edge]] = {}
    for e in g.edges():
        seen.setdefault((min(e.u, e.v), max(e.u, e.v)), []).append(e)
    for (u, v), bundle in sorted(seen.items()):
        if len(bundle) < 2:
            continue
        if not any(e.in_s for e in bundle):
            return Reduced(d.replace(g.delete_edges(e.id for e in bundle[1:])), frozenset())
        outside = {u, v} - d.z
        if not outside:
            return IGNORE
        if len(outside) == 2:
            raise ReductionError("an S-cycle of length two avoids Z")
        return _take(d, outside)
    return None


def red1_bridges(d: DisjointInstance) -> DisjointInstance:
    return d.replace(strip_acyclic(d.graph))


# -- outer-abundant step ------------------------------------------------------


def _edges_to(g: MultiGraph, f: frozenset[int]) -> dict[int, list[Edge]]:
    out: dict[int, list[Edge]] = {}
    for v in f:
        for e in g.incident(v):
            w = e.other(v)
            if w not in f:
                out.setdefault(w, []).append(e)
    return out


def check_outer_abundant(g: MultiGraph, f: frozenset[int], k: int) -> None:
    sub = g.induced(f)
    if len(connected_components(sub)) != 1:
        raise ReductionError("F is not connected")
    if sub.s_edges:
        raise ReductionError("G[F] contains an S-edge")
    count = sum(e.in_s for es in _edges_to(g, f).values() for e in es)
    if count < 10 * k:
        raise ReductionError("fewer than 10k S-edges leave F")


def outer_abundant_step(d: DisjointInstance, f) -> frozenset[int] | None:
    """A nonempty X outside F that some F-avoiding solution contains, or None.

    None means no solution avoids F.  Requires rule 1 to be inapplicable and
    F to be outer-abundant.
    """
    g, k = d.graph, d.k
    f = frozenset(f)
    check_outer_abundant(g, f, k)
    to_f = _edges_to(g, f)
    for w in sorted(to_f):
        es = to_f[w]
        if len(es) >= 2 and any(e.in_s for e in es):
            return frozenset([w])

    rest = g.delete_vertices(f)
    # cycles leaving F once by an S-edge and once by a plain edge: s-t paths
    h, (s, t) = rest.add_vertices(2)
    h, _ = h.add_edges((s, w, False) if e.in_s else (w, t, False) for w in sorted(to_f) for e in to_f[w])
    flow = menger_vertex(h, s, t, k)
    if isinstance(flow, Paths):
        return None
    # cycles leaving F twice by S-edges: J-paths
    j = {w for w, es in to_f.items() if any(e.in_s for e in es)}
    packing = gallai_packing_or_blocker(rest, j, k)
    if isinstance(packing, Paths):
        return None
    b = flow.vertices | packing.vertices
    if len(b) > 3 * k:
        raise ReductionError("blocker larger than 3k")

    easy = 0
    tough: list[frozenset[int]] = []
    for comp in connected_components(rest.delete_vertices(b)):
        if not s_edges_are_bridges(rest.induced(comp)):
            easy += 1
            continue
        out = [e for w in comp for e in to_f.get(w, ())]
        if len(out) == 1 and out[0].in_s:
            tough.append(comp)
    if easy > k:
        return None
    if len(tough) < 6 * k or not b:
        raise ReductionError("too few tough components")
    adjacency = {v: [] for v in b}
    for i, comp in enumerate(tough):
        for v in b:
            if any(e.other(v) in comp for e in g.incident(v)):
                adjacency[v].append(i)
    return two_expansion(b, range(len(tough)), adjacency).x_prime


# -- rule 2 -------------------------------------------------------------------


def red2_high_degree(d: DisjointInstance) -> Reduced | _Ignore | None:
    g, k = d.graph, d.k
    for v in sorted(d.z):
        if sum(e.in_s for e in g.incident(v)) >= 10 * k:
            x = outer_abundant_step(d, [v])
            # None means every solution contains v, which lies in Z
            return IGNORE if x is None else _take(d, x)
    return None


# -- bubbles ------------------------------------------------------------------


@dataclass(frozen=True)
class BubbleDecomposition:
    """Components of G - Z after removing S-edges, with their S-edge forest H.

    ``forest_h`` has one vertex per bubble index and one edge per S-edge of
    G - Z (same edge id).  ``z_edges[i]`` lists the edges from bubble ``i``
    to Z in id order and ``boundary[i]`` counts all edges leaving it.
    """

    bubbles: tuple[frozenset[int], ...]
    forest_h: MultiGraph
    classes: tuple[str, ...]
    z_edges: tuple[tuple[Edge, ...], ...]
    boundary: tuple[int, ...]

    def of_class(self, name: str) -> list[int]:
        return [i for i, c in enumerate(self.classes) if c == name]

    def h_neighbors(self, i: int) -> list[int]:
        return [e.other(i) for e in self.forest_h.incident(i)]

    def anchors(self, i: int) -> tuple[Edge, Edge]:
        """(e_I, e_I'): lowest S-edge to Z if any, else lowest edge; then the next lowest."""
        es = self.z_edges[i]
        if len(es) < 2:
            raise ReductionError("leaf bubble with fewer than two edges to Z")
        first = next((e for e in es if e.in_s), es[0])
        second = next(e for e in es if e.id != first.id)
        return first, second

    def z_neighbors(self, i: int) -> set[int]:
        return {e.u if e.u not in self.bubbles[i] else e.v for e in self.z_edges[i]}


_CLASS = {0: "solitary", 1: "leaf", 2: "edge"}


def bubble_decompose(d: DisjointInstance) -> BubbleDecomposition:
    g, z = d.graph, d.z
    outside = g.delete_vertices(z)
    bubbles = tuple(connected_components(outside.without_s()))
    where = {v: i for i, b in enumerate(bubbles) for v in b}
    h_edges = []
    parent = list(range(len(bubbles)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in sorted(outside.s_edges):
        e = outside.edge(i)
        a, b = where[e.u], where[e.v]
        if find(a) == find(b):
            raise ReductionError("an S-edge outside Z is not a bridge of G - Z")
        parent[find(a)] = find(b)
        h_edges.append(Edge(i, a, b, True))
    forest = MultiGraph(range(len(bubbles)), h_edges)
    z_edges: list[list[Edge]] = [[] for _ in bubbles]
    boundary = [0] * len(bubbles)
    for e in g.edges():
        iu, iv = where.get(e.u), where.get(e.v)
        if iu == iv:
            continue
        for i in (iu, iv):
            if i is not None:
                boundary[i] += 1
        if iu is None or iv is None:
            z_edges[iu if iv is None else iv].append(e)
    classes = tuple(_CLASS.get(forest.degree(i), "inner") for i in range(len(bubbles)))
    return BubbleDecomposition(bubbles, forest, classes, tuple(map(tuple, z_edges)), tuple(boundary))


# -- rules 3 and 4 ------------------------------------------------------------


def red3_two_edge_bubble(d: DisjointInstance, dec: BubbleDecomposition, i: int) -> Reduced | _Ignore:
    """Replace bubble ``i`` (exactly two outgoing edges) by one edge between its neighbours."""
    g = d.graph
    vi = dec.bubbles[i]
    out = [e for e in g.edges() if (e.u in vi) != (e.v in vi)]
    if len(out) != 2:
        raise ReductionError("bubble does not have exactly two outgoing edges")
    u, v = sorted(e.u if e.v in vi else e.v for e in out)
    in_s = out[0].in_s or out[1].in_s
    h = g.delete_vertices(vi)
    if u == v:
        if in_s:
            return IGNORE
        return Reduced(d.replace(h), frozenset())
    existing = h.edges_between(u, v)
    if not existing:
        h, _ = h.add_edge(u, v, in_s)
        return Reduced(d.replace(h), frozenset())
    if not in_s and not any(e.in_s for e in existing):
        return Reduced(d.replace(h), frozenset())
    outside = {u, v} - d.z
    if not outside:
        return IGNORE
    if len(outside) == 2:
        raise ReductionError("an S-cycle through a two-edge bubble avoids Z")
    return _take(d.replace(h), outside)


def red4_edge_bubble_count(d: DisjointInstance, dec: BubbleDecomposition) -> _Ignore | None:
    de, di, dl = (len(dec.of_class(c)) for c in ("edge", "inner", "leaf"))
    if de >= 3 * (len(d.z) + d.k) + di + dl:
        return IGNORE
    return None


# -- leaf-bubble rule ---------------------------------------------------------


def _plain_z_neighbors(dec: BubbleDecomposition, i: int) -> set[int]:
    return {e.u if e.u not in dec.bubbles[i] else e.v for e in dec.z_edges[i] if not e.in_s}


def leaf_step1_saturate_z_cliques(d: DisjointInstance, dec: BubbleDecomposition) -> DisjointInstance:
    """Join v, v' in Z by a plain edge when k+1 bubbles reach both by plain edges."""
    g = d.graph
    shared: Counter = Counter()
    for i in range(len(dec.bubbles)):
        for pair in combinations(sorted(_plain_z_neighbors(dec, i)), 2):
            shared[pair] += 1
    new = [(a, b, False) for (a, b), c in sorted(shared.items()) if c >= d.k + 1 and not g.edges_between(a, b)]
    if not new:
        return d
    h, _ = g.add_edges(new)
    return d.replace(h)


def _has_s_pair(g: MultiGraph, nz) -> bool:
    return any(e.in_s for a, b in combinations(sorted(nz), 2) for e in g.edges_between(a, b))


def leaf_counts(d: DisjointInstance, dec: BubbleDecomposition) -> dict[str, int]:
    """The three step-2 counts.

    ``z_s_pair`` counts leaf bubbles with an S-edge between any two of their
    Z-neighbours, which contains every bubble whose anchor pair is such an edge.
    """
    g = d.graph
    leaves = dec.of_class("leaf")
    leafset = set(leaves)
    return {
        "anchor_in_s": sum(dec.anchors(i)[0].in_s for i in leaves),
        "z_s_pair": sum(_has_s_pair(g, dec.z_neighbors(i)) for i in leaves),
        "bars": sum(1 for e in dec.forest_h.edges() if e.u in leafset and e.v in leafset),
    }


def leaf_step2_thresholds(d: DisjointInstance, dec: BubbleDecomposition) -> _Ignore | None:
    z2, k = len(d.z) ** 2, d.k
    c = leaf_counts(d, dec)
    if c["anchor_in_s"] >= z2 * (k + 2) or c["z_s_pair"] >= z2 * (k + 1) or c["bars"] >= z2 * (k + 2):
        return IGNORE
    return None


def clique_bubbles(d: DisjointInstance, dec: BubbleDecomposition) -> list[int]:
    """Leaf bubbles with plain edges to Z, a plain clique as Z-neighbourhood and a non-leaf H-neighbour."""
    g = d.graph
    out = []
    for i in dec.of_class("leaf"):
        if any(e.in_s for e in dec.z_edges[i]):
            continue
        (j,) = dec.h_neighbors(i)
        if dec.classes[j] == "leaf":
            continue
        nz = sorted(dec.z_neighbors(i))
        if all(g.edges_between(a, b) and not any(e.in_s for e in g.edges_between(a, b))
               for a, b in combinations(nz, 2)):
            out.append(i)
    return out


def leaf_step3_clique_bubbles(d: DisjointInstance, dec: BubbleDecomposition) -> Reduced | _Ignore | None:
    cliques = clique_bubbles(d, dec)
    need = 10 * d.k
    for v in sorted(d.z):
        fan = [i for i in cliques if v in dec.z_neighbors(i)]
        if len(fan) >= need:
            f = frozenset([v]).union(*(dec.bubbles[i] for i in fan[:need]))
            x = outer_abundant_step(d, f)
            # a solution may be moved off clique bubbles, so it avoids F or contains v
            return IGNORE if x is None else _take(d, x)
    return None


# -- size bound and driver loop -----------------------------------------------


def leaf_bound(z: int, k: int) -> int:
    z2 = z * z
    return (max(z2 * (k + 2) - 1, 0) + max(z2 * (k + 1) - 1, 0) + 2 * z2 * (k + 2)
            + k * z2 + max(10 * k - 1, 0) * z)


def size_bound(d: DisjointInstance, dec: BubbleDecomposition | None = None) -> dict:
    """Bubble counts of a fully reduced instance and whether each closed-form bound holds."""
    dec = dec or bubble_decompose(d)
    z, k = len(d.z), d.k
    dl, di, de = (len(dec.of_class(c)) for c in ("leaf", "inner", "edge"))
    s = len(d.graph.s_edges)
    lim = leaf_bound(z, k)
    return {
        "s": s, "leaf": dl, "inner": di, "edge": de, "leaf_limit": lim,
        "leaf_ok": dl <= lim,
        "inner_ok": di < dl or di == dl == 0,
        "edge_ok": de == 0 or de < 3 * (z + k) + di + dl,
        "s_ok": s <= 10 * k * z + dl + di + de,
        "total_ok": s <= 10 * k * z + lim + lim + 3 * (z + k) + 2 * lim,
    }


def reduce(d: DisjointInstance, trace: list | None = None) -> Reduced | _Ignore:
    """Apply the rules to a fixpoint; returns Reduced(instance, removed) or IGNORE."""
    removed: frozenset[int] = frozenset()
    measure = (d.graph.n, d.graph.m)

    def log(name):
        if trace is not None:
            trace.append(name)

    while True:
        r = normalize_multiedges(d)
        if r is None:
            nxt = red1_bridges(d)
            if nxt.graph != d.graph:
                log("red1")
                r = Reduced(nxt, frozenset())
        else:
            log("normalize")
        if r is None:
            if not d.graph.s_edges:
                break
            if d.k == 0:
                # after rule 1 every S-edge lies on a cycle
                log("budget")
                return IGNORE
            r = red2_high_degree(d)
            if r is not None:
                log("red2")
        if r is None:
            dec = bubble_decompose(d)
            two = [i for i, b in enumerate(dec.boundary) if b == 2]
            if two:
                log("red3")
                r = red3_two_edge_bubble(d, dec, two[0])
            elif min(dec.boundary, default=3) < 2:
                raise ReductionError("bubble with fewer than two outgoing edges after rule 1")
        if r is None and red4_edge_bubble_count(d, dec) is IGNORE:
            log("red4")
            return IGNORE
        if r is None:
            d2 = leaf_step1_saturate_z_cliques(d, dec)
            if d2.graph != d.graph:
                log("step1")
                d = d2
                dec = bubble_decompose(d)
            if leaf_step2_thresholds(d, dec) is IGNORE:
                log("step2")
                return IGNORE
            r = leaf_step3_clique_bubbles(d, dec)
            if r is None:
                break
            log("step3")
        if r is IGNORE:
            return IGNORE
        d = r.instance
        removed |= r.removed
        now = (d.graph.n, d.graph.m)
        if now >= measure:
            raise ReductionError("reduction step did not shrink the instance")
        measure = now

    bound = size_bound(d)
    if not all(bound[key] for key in ("leaf_ok", "inner_ok", "edge_ok", "s_ok", "total_ok")):
        raise ReductionError(f"size bound violated: {bound}")
    return Reduced(d, removed)
