"""Acyclic orientations of a facet-ridge graph and the search for good ones.

An acyclic orientation with indegree profile ``h_0, ..., h_d`` scores
``sum_k 2**k * h_k``.  On the graph of a shellable sphere the minimum over
all acyclic orientations equals the number of faces, and the minimisers are
exactly the good orientations (one sink on every face star).  Graph-only
callers identify good orientations through this minimum;
:func:`is_good_orientation` is the complex-aware certificate.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .complex import FacetRidgeGraph, SimplicialComplex, facet_ridge_graph, from_mask, iter_bits, popcount
from .errors import CyclicOrientation, EmptyGraph, GraphMismatch, NotGood, SearchBudgetExceeded

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True, eq=False)
class AcyclicOrientation:
    """An orientation of every edge of ``graph``, stored as ``(tail, head)`` arcs."""

    graph: FacetRidgeGraph
    arcs: frozenset[tuple[int, int]]

    def __post_init__(self):
        undirected = frozenset((min(u, v), max(u, v)) for u, v in self.arcs)
        if len(undirected) != len(self.arcs) or undirected != self.graph.edges:
            raise GraphMismatch("arcs must orient every graph edge exactly once")
        if _has_cycle(self.graph.n, self.out_masks):
            raise CyclicOrientation("orientation contains a directed cycle")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AcyclicOrientation):
            return NotImplemented
        return self.graph == other.graph and self.arcs == other.arcs

    def __hash__(self) -> int:
        return hash(self.arcs)

    @classmethod
    def from_order(cls, graph: FacetRidgeGraph, order: Sequence[int]) -> AcyclicOrientation:
        """Every edge points from the vertex appearing later in ``order`` to the earlier one."""
        pos = {t: i for i, t in enumerate(order)}
        arcs = frozenset((u, v) if pos[u] > pos[v] else (v, u) for u, v in graph.edges)
        return cls(graph, arcs)

    @property
    def in_masks(self) -> tuple[int, ...]:
        try:
            return self._in_masks
        except AttributeError:
            masks = [0] * self.graph.n
            for tail, head in self.arcs:
                masks[head] |= 1 << tail
            object.__setattr__(self, "_in_masks", tuple(masks))
            return self._in_masks

    @property
    def out_masks(self) -> tuple[int, ...]:
        try:
            return self._out_masks
        except AttributeError:
            masks = [0] * self.graph.n
            for tail, head in self.arcs:
                masks[tail] |= 1 << head
            object.__setattr__(self, "_out_masks", tuple(masks))
            return self._out_masks

    def in_neighbors(self, v: int) -> frozenset[int]:
        return from_mask(self.in_masks[v])

    @property
    def indegree(self) -> tuple[int, ...]:
        return tuple(popcount(m) for m in self.in_masks)

    def sinks(self, within: int | None = None) -> list[int]:
        """Vertices of ``within`` (default: all) with no arc to another vertex of ``within``."""
        within = self.graph.all_mask if within is None else within
        outs = self.out_masks
        return [v for v in iter_bits(within) if outs[v] & within == 0]

    def restricted_to(self, within: int) -> list[tuple[int, int]]:
        return sorted((u, v) for u, v in self.arcs if (within >> u) & 1 and (within >> v) & 1)

    def key(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.arcs))

    def flipped(self, u: int, v: int) -> AcyclicOrientation:
        """Copy with the edge ``{u, v}`` reversed (raises if that creates a cycle)."""
        arc = (u, v) if (u, v) in self.arcs else (v, u)
        if arc not in self.arcs:
            raise GraphMismatch(f"{{{u}, {v}}} is not an edge")
        return AcyclicOrientation(self.graph, (self.arcs - {arc}) | {(arc[1], arc[0])})


def _has_cycle(n: int, outs: Sequence[int]) -> bool:
    remaining = (1 << n) - 1
    while remaining:
        sinks = [v for v in iter_bits(remaining) if outs[v] & remaining == 0]
        if not sinks:
            return True
        for v in sinks:
            remaining &= ~(1 << v)
    return False


@dataclass(frozen=True)
class FScore:
    value: int
    profile: tuple[int, ...]


def f_score(o: AcyclicOrientation) -> FScore:
    """``sum_k 2**k * h_k`` where ``h_k`` counts vertices of indegree ``k``."""
    degrees = o.indegree
    top = max((o.graph.degree(v) for v in range(o.graph.n)), default=0)
    profile = [0] * (top + 1)
    for k in degrees:
        profile[k] += 1
    return FScore(sum(2**k * h for k, h in enumerate(profile)), tuple(profile))


def enumerate_acyclic_orientations(g: FacetRidgeGraph) -> Iterator[AcyclicOrientation]:
    """Every acyclic orientation exactly once, by assigning edges in sorted order.

    A direction ``u -> v`` is rejected as soon as ``v`` already reaches ``u``.
    Exponential in the number of edges; meant as a brute-force oracle.
    """
    edges = g.sorted_edges()
    outs = [0] * g.n

    def reaches(src: int, dst: int) -> bool:
        seen = frontier = 1 << src
        while frontier:
            if (frontier >> dst) & 1:
                return True
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= outs[v]
            frontier = nxt & ~seen
            seen |= frontier
        return False

    def assign(i: int, arcs: list[tuple[int, int]]):
        if i == len(edges):
            yield AcyclicOrientation(g, frozenset(arcs))
            return
        u, v = edges[i]
        for tail, head in ((u, v), (v, u)):
            if reaches(head, tail):
                continue
            outs[tail] |= 1 << head
            arcs.append((tail, head))
            yield from assign(i + 1, arcs)
            arcs.pop()
            outs[tail] &= ~(1 << head)

    yield from assign(0, [])


@dataclass(frozen=True)
class OrientationSearchResult:
    """Minimum score ``M`` and the minimisers found (one, or all of them)."""

    M: int
    orientations: tuple[AcyclicOrientation, ...]
    complete: bool
    nodes: int = 0


def _water_bound(caps: list[int], total: int) -> int:
    """Least ``sum 2**x_i`` over integers ``0 <= x_i <= caps[i]`` with ``sum x_i = total``."""
    caps = sorted(caps)
    bound = 0
    left = len(caps)
    for i, cap in enumerate(caps):
        q = total // left
        if cap <= q:
            bound += 2**cap
            total -= cap
            left -= 1
            continue
        q, r = divmod(total, left)
        return bound + r * 2 ** (q + 1) + (left - r) * 2**q
    return bound


def _remaining_bound(adj: Sequence[int], remaining: int) -> int:
    # Each unplaced vertex ends with indegree <= its degree among unplaced
    # vertices, and those indegrees sum to the number of unplaced edges.
    caps = [popcount(adj[u] & remaining) for u in iter_bits(remaining)]
    if not caps:
        return 0
    return _water_bound(caps, sum(caps) // 2)


def _search_orders(
    adj: Sequence[int],
    n: int,
    mode: str,
    budget: int,
    first: Iterable[int] | None = None,
    incumbent: float = math.inf,
) -> tuple[float, list[tuple[int, ...]], int]:
    """Branch and bound over vertex orders ``t_1, t_2, ...`` (sinks first).

    Placing ``v`` fixes its indegree at the number of its still-unplaced
    neighbours, so partial scores are exact.  Only the order produced by
    peeling the smallest-id sink each time is explored, which visits each
    acyclic orientation once: ``v`` may follow a block of vertices containing
    none of its neighbours only if it exceeds all of them.
    """
    full = (1 << n) - 1
    best = incumbent
    found: list[tuple[int, ...]] = []
    order: list[int] = []
    nodes = 0
    strict = mode == "one"

    def canonical(v: int) -> bool:
        nbrs = adj[v]
        for u in reversed(order):
            if (nbrs >> u) & 1:
                return True
            if u > v:
                return False
        return True

    def dfs(placed: int, cost: int) -> None:
        nonlocal best, found, nodes
        if placed == full:
            if cost < best:
                best = cost
                found = [tuple(order)]
            elif cost == best and not strict:
                found.append(tuple(order))
            return
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceeded(f"orientation search exceeded {budget} nodes")
        remaining = full & ~placed
        pool = first if not order and first is not None else iter_bits(remaining)
        options = []
        for v in pool:
            if not canonical(v):
                continue
            rest = remaining & ~(1 << v)
            step = cost + 2 ** popcount(adj[v] & rest)
            options.append((step + _remaining_bound(adj, rest), step, v))
        options.sort()
        for total, step, v in options:
            if total > best or (strict and total >= best):
                break
            order.append(v)
            dfs(placed | (1 << v), step)
            order.pop()

    dfs(0, 0)
    return best, found, nodes


def _search_subtree(args):
    adj, n, mode, budget, root = args
    return _search_orders(adj, n, mode, budget, first=[root])


# Largest vertex count for the exact subset table (2**n int64 entries).
MAX_TABLE_VERTICES = 22
# minimisers kept on the error when "all" mode runs out of budget
PARTIAL_LIMIT = 10_000


def cost_to_go_table(adj: Sequence[int], n: int) -> np.ndarray:
    """``table[P]`` = least score contributed by the vertices outside ``P`` once ``P`` is placed.

    Only the *set* of placed vertices matters for what remains, so a subset
    DP over ``2**n`` states is exact.  Filled by popcount layer, top down.
    """
    size = 1 << n
    full = size - 1
    popcnt = np.zeros(size, dtype=np.int64)
    for i in range(n):
        popcnt[1 << i : 1 << (i + 1)] = popcnt[: 1 << i] + 1
    masks = np.arange(size, dtype=np.int64)
    table = np.zeros(size, dtype=np.int64)
    layers = [masks[popcnt == p] for p in range(n + 1)]
    for p in range(n - 1, -1, -1):
        layer = layers[p]
        best = np.full(layer.shape, np.iinfo(np.int64).max, dtype=np.int64)
        for v in range(n):
            bit = 1 << v
            free = (layer & bit) == 0
            placed = layer[free]
            indeg = popcnt[(~placed) & adj[v] & full]
            best[free] = np.minimum(best[free], np.left_shift(1, indeg) + table[placed | bit])
        table[layer] = best
    return table


def _table_search(adj: Sequence[int], n: int, mode: str, budget: int) -> tuple[int, list[tuple[int, ...]], int]:
    if 1 << n > budget:
        raise SearchBudgetExceeded(f"subset table for n={n} exceeds budget {budget}")
    table = cost_to_go_table(adj, n)
    best = int(table[0])
    full = (1 << n) - 1
    nodes = 1 << n

    def step_cost(v: int, placed: int) -> int:
        return 2 ** popcount(adj[v] & ~placed & ~(1 << v))

    if mode == "one":
        placed, order = 0, []
        while placed != full:
            togo = int(table[placed])
            v = next(
                v for v in iter_bits(full & ~placed)
                if step_cost(v, placed) + int(table[placed | (1 << v)]) == togo
            )
            order.append(v)
            placed |= 1 << v
        return best, [tuple(order)], nodes + n

    found: list[tuple[int, ...]] = []
    order: list[int] = []

    def canonical(v: int) -> bool:
        for u in reversed(order):
            if (adj[v] >> u) & 1:
                return True
            if u > v:
                return False
        return True

    def dfs(placed: int, cost: int) -> None:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            err = SearchBudgetExceeded(f"enumeration exceeded {budget} nodes after {len(found)} minimisers")
            err.partial = (best, found[:PARTIAL_LIMIT], nodes)
            raise err
        if placed == full:
            found.append(tuple(order))
            return
        for v in iter_bits(full & ~placed):
            nxt = placed | (1 << v)
            step = cost + step_cost(v, placed)
            if step + int(table[nxt]) == best and canonical(v):
                order.append(v)
                dfs(nxt, step)
                order.pop()

    dfs(0, 0)
    return best, found, nodes


def find_good_orientations(
    g: FacetRidgeGraph,
    mode: str = "one",
    budget: int = DEFAULT_BUDGET,
    n_jobs: int = 1,
) -> OrientationSearchResult:
    """Minimise the indegree score over all acyclic orientations of ``g``.

    ``mode="one"`` returns a single minimiser, ``mode="all"`` every minimiser
    (each orientation once).  Up to :data:`MAX_TABLE_VERTICES` vertices the
    exact cost-to-go table drives the search; beyond that a branch and bound
    with a relaxation bound is used, and ``n_jobs > 1`` splits it by the
    choice of global sink across processes (each with the full ``budget``),
    merging results in canonical order.

    When "all" mode runs out of budget the raised error carries ``partial``,
    an incomplete result holding at most :data:`PARTIAL_LIMIT` minimisers.
    """
    if mode not in ("one", "all"):
        raise ValueError(f"mode must be 'one' or 'all', got {mode!r}")
    if g.n == 0:
        raise EmptyGraph("graph has no vertices")
    adj = g.adjacency
    if g.n <= MAX_TABLE_VERTICES:
        try:
            best, orders, nodes = _table_search(adj, g.n, mode, budget)
        except SearchBudgetExceeded as err:
            if hasattr(err, "partial"):
                best, orders, nodes = err.partial
                found = tuple(AcyclicOrientation.from_order(g, o) for o in orders)
                err.partial = OrientationSearchResult(best, found, complete=False, nodes=nodes)
            raise
    elif n_jobs > 1:
        jobs = [(adj, g.n, mode, budget, r) for r in range(g.n)]
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            parts = list(pool.map(_search_subtree, jobs))
        best = min(p[0] for p in parts)
        orders = [o for p in parts if p[0] == best for o in p[1]]
        nodes = sum(p[2] for p in parts)
    else:
        best, orders, nodes = _search_orders(adj, g.n, mode, budget)
    orientations = sorted((AcyclicOrientation.from_order(g, o) for o in orders), key=AcyclicOrientation.key)
    if mode == "one":
        orientations = orientations[:1]
    logger.debug("orientation search: M=%s, %d minimisers, %d nodes", best, len(orientations), nodes)
    return OrientationSearchResult(int(best), tuple(orientations), complete=(mode == "all"), nodes=nodes)


def _check_same_graph(c: SimplicialComplex, o: AcyclicOrientation) -> None:
    if facet_ridge_graph(c) != o.graph:
        raise GraphMismatch("orientation is not on the facet-ridge graph of this complex")


def is_good_orientation(c: SimplicialComplex, o: AcyclicOrientation) -> bool:
    """One sink on the subgraph induced by the star of every face, the empty face included."""
    _check_same_graph(c, o)
    outs = o.out_masks
    for star in c.star_masks.values():
        sinks = 0
        for v in iter_bits(star):
            if outs[v] & star == 0:
                sinks += 1
                if sinks > 1:
                    return False
        if sinks != 1:
            return False
    return True


@dataclass(frozen=True)
class PeelOrder:
    """Sink-peeling order with, for each step, all sinks that were available."""

    order: tuple[int, ...]
    available: tuple[tuple[int, ...], ...]


def sink_peel_order(
    g: FacetRidgeGraph,
    o: AcyclicOrientation,
    within: int | None = None,
    choose: Callable[[list[int]], int] | None = None,
) -> PeelOrder:
    """Repeatedly remove a sink of what is left (smallest id unless ``choose`` picks)."""
    if o.graph != g:
        raise GraphMismatch("orientation belongs to a different graph")
    remaining = g.all_mask if within is None else within
    outs = o.out_masks
    order, available = [], []
    while remaining:
        sinks = [v for v in iter_bits(remaining) if outs[v] & remaining == 0]
        if not sinks:
            raise CyclicOrientation("no sink left to peel")
        v = choose(sinks) if choose is not None else sinks[0]
        order.append(v)
        available.append(tuple(sinks))
        remaining &= ~(1 << v)
    return PeelOrder(tuple(order), tuple(available))


def all_sink_peel_orders(o: AcyclicOrientation, within: int | None = None) -> Iterator[tuple[int, ...]]:
    """Every order obtainable by sink-peeling, i.e. every reversed topological order."""
    outs = o.out_masks
    start = o.graph.all_mask if within is None else within

    def rec(remaining: int, prefix: list[int]):
        if not remaining:
            yield tuple(prefix)
            return
        for v in iter_bits(remaining):
            if outs[v] & remaining == 0:
                prefix.append(v)
                yield from rec(remaining & ~(1 << v), prefix)
                prefix.pop()

    yield from rec(start, [])


def restriction_frame(o: AcyclicOrientation, t: int):
    """The frame rooted at ``t`` whose leaves are all in-neighbours of ``t``."""
    from .frames import KFrame

    return KFrame(t, o.in_neighbors(t))


def restriction_face_mask(c: SimplicialComplex, o: AcyclicOrientation, t: int) -> int:
    masks = c.facet_masks
    r = masks[t]
    for j in iter_bits(o.in_masks[t]):
        r &= masks[j]
    return r


@dataclass(frozen=True)
class Interval:
    facet: int
    bottom: frozenset
    top: frozenset

    def __len__(self) -> int:
        return 2 ** (len(self.top) - len(self.bottom))

    def __contains__(self, face) -> bool:
        face = frozenset(face)
        return self.bottom <= face <= self.top


def partitioning_from_orientation(c: SimplicialComplex, o: AcyclicOrientation) -> list[Interval]:
    """Intervals ``[R(T), T]`` with ``R(T)`` the intersection of ``T`` with its in-neighbours.

    Raises :class:`NotGood` unless the intervals partition the face set.
    """
    _check_same_graph(c, o)
    bottoms = [restriction_face_mask(c, o, t) for t in range(len(c.facets))]
    tops = c.facet_masks
    for face in c.face_masks:
        owners = sum(1 for b, t in zip(bottoms, tops) if face & b == b and face & t == face)
        if owners != 1:
            raise NotGood(f"face {sorted(from_mask(face))} lies in {owners} intervals")
    return [Interval(t, from_mask(b), c.facets[t]) for t, b in enumerate(bottoms)]
