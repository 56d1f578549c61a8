"""Slow, definition-level reference implementations used to cross-check the library.

Nothing here imports the algorithms under test; complexes are plain lists of
vertex sets and graphs are plain edge sets.
"""

from __future__ import annotations

from itertools import combinations, permutations

import networkx as nx


def faces_of(facets):
    out = set()
    for facet in facets:
        facet = tuple(sorted(facet))
        for r in range(len(facet) + 1):
            out.update(frozenset(s) for s in combinations(facet, r))
    return out


def f_vector_of(facets, d):
    faces = faces_of(facets)
    return tuple(sum(1 for f in faces if len(f) == size) for size in range(d + 1))


def dual_edges(facets, d):
    facets = [frozenset(f) for f in facets]
    return {(i, j) for i, j in combinations(range(len(facets)), 2) if len(facets[i] & facets[j]) == d - 1}


def neighbours(n, edges):
    nb = {v: set() for v in range(n)}
    for u, v in edges:
        nb[u].add(v)
        nb[v].add(u)
    return nb


def stars_of(facets):
    """Face -> frozenset of facet indices containing it."""
    facets = [frozenset(f) for f in facets]
    return {face: frozenset(i for i, f in enumerate(facets) if face <= f) for face in faces_of(facets)}


def is_shelling_by_definition(facets, order, d):
    """The faces of T_i already present form a pure complex of dimension d-2 (for i >= 2)."""
    facets = [frozenset(f) for f in facets]
    seen = set()
    for pos, t in enumerate(order):
        own = faces_of([facets[t]])
        if pos:
            old = own & seen
            maximal = [f for f in old if not any(f < g for g in old)]
            if not maximal or any(len(f) != d - 1 for f in maximal):
                return False
        seen |= own
    return True


def restriction_by_definition(facets, order):
    """Unique minimal face of T_i not present in earlier facets."""
    facets = [frozenset(f) for f in facets]
    seen = set()
    out = {}
    for t in order:
        own = faces_of([facets[t]])
        new = own - seen
        minimal = [f for f in new if not any(g < f for g in new)]
        assert len(minimal) == 1, "shelling restriction face must be unique"
        out[t] = minimal[0]
        seen |= own
    return out


def sinks(arcs, within):
    """Vertices of ``within`` with no outgoing arc inside ``within``; arcs are (tail, head)."""
    return [v for v in within if not any(u == v and w in within for u, w in arcs)]


def is_good_by_definition(facets, arcs):
    return all(len(sinks(arcs, set(st))) == 1 for st in stars_of(facets).values())


def orientation_from_order(edges, order):
    pos = {t: i for i, t in enumerate(order)}
    return frozenset((u, v) if pos[u] > pos[v] else (v, u) for u, v in edges)


def all_acyclic_orientations(n, edges):
    """Every acyclic orientation as a frozenset of arcs, via all vertex orders (n <= 8)."""
    return {orientation_from_order(edges, order) for order in permutations(range(n))}


def score(n, arcs):
    indeg = [0] * n
    for _, head in arcs:
        indeg[head] += 1
    return sum(2**k for k in indeg)


def min_score_orientations(n, edges):
    orients = all_acyclic_orientations(n, edges)
    best = min(score(n, o) for o in orients)
    return best, {o for o in orients if score(n, o) == best}


def gale_evenness_facets(n, d):
    """d-subsets of 1..n satisfying the evenness condition on every pair of non-members."""
    out = []
    for s in combinations(range(1, n + 1), d):
        members = set(s)
        outside = [v for v in range(1, n + 1) if v not in members]
        if all(sum(1 for x in s if a < x < b) % 2 == 0 for a, b in combinations(outside, 2)):
            out.append(frozenset(s))
    return out


def incidence_graph(facets):
    g = nx.Graph()
    for i, facet in enumerate(facets):
        g.add_node(("F", i), side=0)
        for v in facet:
            g.add_node(("v", v), side=1)
            g.add_edge(("F", i), ("v", v))
    return g


def isomorphic_complexes(a, b):
    return nx.is_isomorphic(
        incidence_graph(a), incidence_graph(b), node_match=lambda x, y: x["side"] == y["side"]
    )


def isomorphic_fixing_facets(a, b):
    """Isomorphic by a vertex bijection that sends facet i to facet i."""
    def star_sets(facets):
        st = {}
        for i, facet in enumerate(facets):
            for v in facet:
                st.setdefault(v, set()).add(i)
        return sorted(sorted(s) for s in st.values())

    return len(a) == len(b) and star_sets(a) == star_sets(b)


def k_systems_bruteforce(n, edges, k):
    """All k-systems whose members induce connected k-regular subgraphs, by subset enumeration (n <= 10)."""
    nb = neighbours(n, edges)
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    members = []
    for size in range(k + 1, n + 1):
        for s in combinations(range(n), size):
            S = set(s)
            if all(len(nb[v] & S) == k for v in S) and nx.is_connected(g.subgraph(S)):
                members.append(frozenset(S))
    frames = {frozenset((r, *leaves)) for r in range(n) for leaves in combinations(sorted(nb[r]), k)}
    systems = []

    def extend(chosen, covered, start):
        if covered == frames:
            systems.append(frozenset(chosen))
            return
        for i in range(start, len(members)):
            m = members[i]
            mine = {f for f in frames if f <= m}
            if mine & covered:
                continue
            extend(chosen + [m], covered | mine, i + 1)

    extend([], set(), 0)
    return systems
