"""Seeded end-to-end checks shared by module tests and the acceptance suite.

Each ``check_*`` function builds one random case from ``seed``, compares the
library against an independent oracle and raises AssertionError on mismatch.
"""

import random
from itertools import combinations

import oracles
from strategies import random_multigraph, random_simple
from subsetfvs.driver import solve
from subsetfvs.graph import MultiGraph
from subsetfvs.instance import (
    EsfvsInstance, SfvsInstance, esfvs_to_sfvs, gen_random, multiway_to_esfvs, sfvs_to_esfvs,
)
from subsetfvs.multiway import MwcInstance, is_multiway_cut, solve_mwc
from subsetfvs.oracle import brute_force, is_solution
from subsetfvs.separation import (
    Blocker, Cut, Paths, a_path_packing, gallai_packing_or_blocker,
    menger_vertex, two_expansion,
)


# -- instance families --------------------------------------------------------

def random_instance(seed: int) -> EsfvsInstance:
    """Criterion-1 family: n <= 8, m <= 16, |S| <= 6, k <= 3, loops and parallels allowed."""
    rng = random.Random(seed)
    n = rng.randint(1, 8)
    m = rng.randint(0, 16)
    s = rng.randint(0, min(6, m))
    k = rng.randint(0, 3)
    if rng.random() < 0.5:
        m = min(m, n * (n - 1) // 2)
        return gen_random(n, m, min(s, m), k, seed)
    return EsfvsInstance(random_multigraph(rng, n, m, s), k)


def _path_ok(g: MultiGraph, p) -> bool:
    return len(set(p)) == len(p) and all(p[i + 1] in g.neighbors(p[i]) for i in range(len(p) - 1))


# -- separation -----------------------------------------------------------------

def check_menger(seed: int) -> None:
    rng = random.Random(seed)
    n = rng.randint(2, 12)
    g = random_simple(rng, n, rng.uniform(0.15, 0.6))
    s, t = rng.sample(range(n), 2)
    if t in g.neighbors(s):
        g = g.delete_edges(e.id for e in g.edges_between(s, t))
    want = oracles.min_vertex_cut(g, s, t)
    for k in range(0, want + 2):
        res = menger_vertex(g, s, t, k)
        if k < want:
            assert isinstance(res, Paths) and len(res) == k + 1
            inner = [set(p[1:-1]) for p in res.paths]
            for p in res.paths:
                assert p[0] == s and p[-1] == t and _path_ok(g, p)
            for a, b in combinations(inner, 2):
                assert not a & b
        else:
            assert isinstance(res, Cut)
            assert len(res.vertices) == want
            assert s not in res.vertices and t not in res.vertices
            assert t not in oracles.reachable(g.delete_vertices(res.vertices), s)


def check_gallai(seed: int) -> None:
    rng = random.Random(seed)
    n = rng.randint(2, 14)
    g = random_simple(rng, n, rng.uniform(0.1, 0.4)) if rng.random() < 0.7 else random_multigraph(rng, n, rng.randint(0, 20), 0)
    a = set(rng.sample(range(n), rng.randint(2, min(6, n))))
    want = oracles.max_disjoint(oracles.a_paths(g, a))
    assert len(a_path_packing(g, a)) == want
    for k in range(0, want + 2):
        res = gallai_packing_or_blocker(g, a, k)
        if want >= k + 1:
            assert isinstance(res, Paths) and len(res) == k + 1
            used = set()
            for p in res.paths:
                assert _path_ok(g, p) and p[0] in a and p[-1] in a and p[0] != p[-1]
                assert not set(p[1:-1]) & a
                assert not used & set(p)
                used |= set(p)
        else:
            assert isinstance(res, Blocker)
            assert len(res.vertices) <= 2 * k
            rest = g.delete_vertices(res.vertices)
            assert len(a_path_packing(rest, a - res.vertices)) == 0
            assert oracles.a_paths(rest, a - res.vertices) == []


def check_expansion(seed: int) -> None:
    rng = random.Random(seed)
    nx = rng.randint(1, 6)
    ny = 2 * nx + rng.randint(0, 4)
    xs = [("x", i) for i in range(nx)]
    ys = [("y", j) for j in range(ny)]
    adj = {x: set() for x in xs}
    for y in ys:
        for x in rng.sample(xs, rng.randint(1, min(nx, 3))):
            adj[x].add(y)
    r = two_expansion(xs, ys, adj)
    assert r.x_prime and r.y_prime
    assert r.x_prime <= set(xs) and r.y_prime <= set(ys)
    nbrs = {x for x in xs if adj[x] & r.y_prime}
    assert nbrs == r.x_prime
    targets = []
    for x in r.x_prime:
        y1, y2 = r.assignment[x]
        assert y1 != y2 and {y1, y2} <= adj[x] and {y1, y2} <= r.y_prime
        targets += [y1, y2]
    assert len(targets) == len(set(targets))


# -- multiway cut -----------------------------------------------------------------

def check_mwc(seed: int) -> None:
    rng = random.Random(seed)
    n = rng.randint(2, 10)
    g = random_simple(rng, n, rng.uniform(0.15, 0.5)) if rng.random() < 0.7 else random_multigraph(rng, n, rng.randint(0, 18), 0)
    terms = frozenset(rng.sample(range(n), rng.randint(2, min(4, n))))
    k = rng.randint(0, 4)
    want = oracles.min_multiway_cut(g, terms, k)
    got = solve_mwc(MwcInstance(g, terms, k))
    if want is None:
        assert got is None
    else:
        assert got is not None and len(got) == want
        assert not got & terms and is_multiway_cut(g, terms, got)
        assert oracles.is_separated(g, terms, got)


# -- conversions -------------------------------------------------------------------

def check_vertex_to_edge(seed: int) -> None:
    rng = random.Random(seed)
    n = rng.randint(1, 8)
    g = random_multigraph(rng, n, rng.randint(0, 12), 0)
    s = frozenset(v for v in range(n) if rng.random() < 0.4)
    inst = SfvsInstance(g, s, rng.randint(0, 3))
    conv = sfvs_to_esfvs(inst)
    want = oracles.min_sfvs(g, s, inst.k)
    got = brute_force(conv)
    assert (want is None) == (got is None)
    if got is not None:
        assert len(got) == len(want)


def check_edge_to_vertex(seed: int) -> None:
    inst = random_instance(seed)
    conv = esfvs_to_sfvs(inst)
    want = brute_force(inst)
    got = oracles.min_sfvs(conv.graph, conv.s_vertices, conv.k)
    assert (want is None) == (got is None)
    if got is not None:
        assert len(got) == len(want)


def check_multiway_reduction(seed: int) -> None:
    rng = random.Random(seed)
    n = rng.randint(2, 7)
    g = random_simple(rng, n, rng.uniform(0.2, 0.6))
    terms = sorted(rng.sample(range(n), rng.randint(2, min(3, n))))
    k = rng.randint(0, 2)
    conv = multiway_to_esfvs(g, terms, k)
    assert conv.graph.n == n + len(terms) and len(conv.s_edges) == len(terms) and conv.k == k
    want = oracles.min_multiway_cut(g, terms, k, allow_terminals=True)
    got = brute_force(conv)
    assert (want is None) == (got is None)


# -- end to end -------------------------------------------------------------------

def check_solve(seed: int):
    inst = random_instance(seed)
    want = brute_force(inst)
    got = solve(inst)
    assert (want is None) == (got is None), f"seed {seed}: answer mismatch"
    if got is not None:
        assert is_solution(inst, got)
    return inst, got


# -- reduction engine ----------------------------------------------------------------

def disjoint_case(seed: int):
    """Criterion-1 instance with a known solution Z (a minimum one, sometimes padded)."""
    from subsetfvs.reduction import DisjointInstance

    rng = random.Random(seed ^ 0x5EED)
    inst = random_instance(seed)
    g = inst.graph
    z = set(brute_force(inst.with_k(g.n)))
    spare = sorted(g.vertices - z)
    if spare and rng.random() < 0.4:
        z.add(rng.choice(spare))
    return DisjointInstance(inst, frozenset(z))


def check_reduction(d, trace=None):
    """Proper-reduction checks (NO kept NO, maximal YES kept, bound holds); returns facts."""
    from subsetfvs.reduction import IGNORE, reduce, size_bound

    g, k, z = d.graph, d.k, d.z
    feasible = oracles.all_feasible(g, k)
    yes = bool(feasible)
    maximal = yes and all(not t & z for t in feasible)
    res = reduce(d, trace)
    facts = {"yes": yes, "maximal": maximal, "ignored": res is IGNORE, "bound": None}
    if res is IGNORE:
        assert not maximal, "IGNORE on a maximal YES instance"
        return facts
    red, removed = res.instance, res.removed
    h, k2, z2 = red.graph, red.k, red.z
    assert h.n <= g.n and k2 <= k and len(z2) <= len(z)
    assert not removed & z and len(removed) + k2 <= k
    red_feasible = oracles.all_feasible(h, k2)
    if not yes:
        assert not red_feasible, "NO instance reduced to a YES instance"
    if maximal:
        assert any(not t & z2 for t in red_feasible), "maximal YES lost its Z-disjoint solution"
    for t in red_feasible[:5]:
        assert is_solution(EsfvsInstance(g, k), t | removed), "reduced solution does not lift"
    bound = size_bound(red)
    assert all(bound[key] for key in ("leaf_ok", "inner_ok", "edge_ok", "s_ok", "total_ok")), bound
    facts["bound"] = bound
    return facts
