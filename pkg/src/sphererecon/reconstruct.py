"""Graph-only reconstruction of a shellable sphere from its facet-ridge graph.

The pipeline, for a ``d``-regular connected graph with ``d >= 3``:

1. find one good acyclic orientation (a minimiser of the indegree score);
2. sink-peel it to get the facet order ``t_1, ..., t_n``;
3. for ``i = n, ..., 2``: recover the star of the restriction face of
   ``t_i`` by deleting free vertices from the graph induced by
   ``t_i, ..., t_n``, then reconstruct that star (a smaller sphere) with the
   same algorithm to learn the stars of every face containing it;
4. recover the stars of the faces inside ``T_1``: codimension-3 faces by
   stitching paths of the uncovered 2-frames, higher codimension by frame
   propagation one level at a time;
5. read off one vertex per codimension-1-face star.

Every face is identified by the frame rooted at the unique sink of its star
together with that sink's neighbours inside the star; the star table maps
these keys ``(root, leaves_mask)`` to star vertex masks.  Any contradiction
met along the way raises a subclass of :class:`InconsistentInput`.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Sequence

from .complex import FacetRidgeGraph, SimplicialComplex, build_complex, from_mask, iter_bits, popcount, to_mask
from .errors import (
    AssemblyMismatch,
    BadParameter,
    Disconnected,
    EmptyGraph,
    FrameLookupMiss,
    InconsistentInput,
    NonRegularClosure,
    NotRegular,
    PeelStuck,
    StitchAmbiguity,
)
from .frames import KFrame, KSystem
from .orientation import DEFAULT_BUDGET, AcyclicOrientation, find_good_orientations

logger = logging.getLogger(__name__)

PeelChoice = Callable[[list[int]], int]


@dataclass(frozen=True)
class StageTrace:
    """What happened while recovering one restriction-face star."""

    depth: int
    position: int
    vertex: int
    k: int
    peeled: tuple[int, ...]
    star: tuple[int, ...]


@dataclass(frozen=True)
class ReconstructedComplex:
    """Reconstructed sphere on fresh vertex ids ``0..m-1``.

    Facet ``i`` is the facet of graph vertex ``i``; ``vertex_stars[v]`` is the
    set of graph vertices whose facets contain ``v``.  Equality ignores the
    provenance fields.
    """

    complex: SimplicialComplex
    vertex_stars: dict[int, frozenset[int]]
    orientation: AcyclicOrientation | None = field(default=None, compare=False)
    peel_order: tuple[int, ...] = field(default=(), compare=False)
    traces: tuple[StageTrace, ...] = field(default=(), compare=False)
    star_table: dict[tuple[int, int], int] = field(default_factory=dict, compare=False, repr=False)


class ReconstructionState:
    """Evolving star table for the sphere spanned by ``within`` (a vertex mask of ``graph``).

    The orientation must be good; its restriction to a face star is good for
    that star, which is what the recursive calls rely on.
    """

    def __init__(
        self,
        graph: FacetRidgeGraph,
        orientation: AcyclicOrientation,
        within: int | None = None,
        depth: int = 0,
        check_invariants: bool = True,
        peel_choice: PeelChoice | None = None,
        order: Sequence[int] | None = None,
    ):
        self.graph = graph
        self.orientation = orientation
        self.within = graph.all_mask if within is None else within
        self.depth = depth
        self.check_invariants = check_invariants
        self.peel_choice = peel_choice
        W = self.within
        self.adj = [a & W for a in graph.adjacency]
        self.inn = [m & W for m in orientation.in_masks]
        self.out = [m & W for m in orientation.out_masks]
        degrees = {popcount(self.adj[v]) for v in iter_bits(W)}
        if len(degrees) != 1:
            raise InconsistentInput(f"star {sorted(from_mask(W))} does not induce a regular graph")
        self.d = degrees.pop()
        self.order = self._sink_peel() if order is None else self._check_peel(order)
        self.pos = {v: i for i, v in enumerate(self.order)}
        self.table: dict[tuple[int, int], int] = {}
        self.traces: list[StageTrace] = []
        self._restriction_cover = {v: 0 for v in iter_bits(W)}
        self._init_trivial_levels()

    # -- bookkeeping -------------------------------------------------------

    def _sink_peel(self) -> list[int]:
        remaining, order = self.within, []
        while remaining:
            sinks = [v for v in iter_bits(remaining) if self.out[v] & remaining == 0]
            if not sinks:
                raise InconsistentInput("orientation has a directed cycle")
            order.append(sinks[0])
            remaining &= ~(1 << sinks[0])
        return order

    def _check_peel(self, order: Sequence[int]) -> list[int]:
        remaining = self.within
        for v in order:
            if not (remaining >> v) & 1 or self.out[v] & remaining:
                raise BadParameter(f"{list(order)} is not a sink-peeling order of the orientation")
            remaining &= ~(1 << v)
        if remaining:
            raise BadParameter(f"{list(order)} does not cover every vertex")
        return list(order)

    def key_of(self, S: int) -> tuple[int, int]:
        """``(sink, sink's neighbours in S)`` for a star mask ``S``."""
        sinks = [v for v in iter_bits(S) if self.out[v] & S == 0]
        if len(sinks) != 1:
            raise InconsistentInput(f"{sorted(from_mask(S))} has {len(sinks)} sinks")
        return sinks[0], self.adj[sinks[0]] & S

    def record(self, S: int, expected_key: tuple[int, int] | None = None) -> tuple[int, int]:
        key = self.key_of(S)
        if expected_key is not None and key != expected_key:
            raise InconsistentInput(f"star {sorted(from_mask(S))} is not rooted at the expected frame")
        k = popcount(key[1])
        if any(popcount(self.adj[v] & S) != k for v in iter_bits(S)):
            raise InconsistentInput(f"{sorted(from_mask(S))} does not induce a {k}-regular graph")
        known = self.table.get(key)
        if known is None:
            self.table[key] = S
        elif known != S:
            raise InconsistentInput(f"two different stars for frame {self.frame(key)!r}")
        return key

    def frame(self, key: tuple[int, int]) -> KFrame:
        return KFrame(key[0], iter_bits(key[1]))

    def level(self, k: int) -> list[int]:
        return [S for (_, leaves), S in self.table.items() if popcount(leaves) == k]

    def level_system(self, k: int) -> KSystem:
        return KSystem(k, frozenset(from_mask(S) for S in self.level(k)))

    def _init_trivial_levels(self) -> None:
        # facets, ridges and the empty face are visible in the graph directly
        for v in iter_bits(self.within):
            self.record(1 << v)
        for v in iter_bits(self.within):
            for u in iter_bits(self.inn[v]):
                self.record((1 << u) | (1 << v))
        self.record(self.within)

    def restriction_key(self, position: int) -> tuple[int, int]:
        v = self.order[position]
        return v, self.inn[v]

    # -- restriction faces -------------------------------------------------

    def peel_free_vertices(self, position: int, choose: PeelChoice | None = None) -> int:
        """Star of the restriction face of ``order[position]`` (position >= 1).

        Starting from the graph induced by ``order[position:]``, repeatedly
        delete a vertex whose closed neighbourhood lies inside a known star
        that is itself inside the current graph; the known stars eligible are
        those of faces belonging to later facets.
        """
        choose = choose or self.peel_choice
        v = self.order[position]
        k = popcount(self.inn[v])
        cur = 0
        for t in self.order[position:]:
            cur |= 1 << t
        witnesses = [S for (root, _), S in reversed(self.table.items()) if self.pos[root] > position]
        peeled = []
        while True:
            free = self._free_vertices(cur, witnesses, first_only=choose is None)
            if not free:
                break
            t = free[0] if choose is None else choose(free)
            cur &= ~(1 << t)
            peeled.append(t)
        if not (cur >> v) & 1 or any(popcount(self.adj[u] & cur) != k for u in iter_bits(cur)):
            raise PeelStuck(f"peeling for facet {v} left a graph that is not {k}-regular around it")
        if self.key_of(cur) != (v, self.inn[v]):
            raise PeelStuck(f"peeling for facet {v} left a graph whose unique sink is not {v}")
        self.traces.append(StageTrace(self.depth, position, v, k, tuple(peeled), tuple(iter_bits(cur))))
        return cur

    def _free_vertices(self, cur: int, witnesses: Sequence[int], first_only: bool) -> list[int]:
        free: set[int] = set()
        for S in witnesses:
            if S & ~cur:
                continue
            for t in iter_bits(S):
                if ((self.adj[t] & cur) | (1 << t)) & ~S == 0:
                    if first_only:
                        return [t]
                    free.add(t)
        return sorted(free)

    def lift_link_stars(self, position: int, star: int) -> None:
        """Reconstruct the star of a restriction face as a smaller sphere and merge its face stars."""
        if popcount(self.inn[self.order[position]]) < 2:
            return
        sub = ReconstructionState(
            self.graph,
            self.orientation,
            within=star,
            depth=self.depth + 1,
            check_invariants=self.check_invariants,
            peel_choice=self.peel_choice,
        )
        sub.run()
        for key, S in sub.table.items():
            known = self.table.get(key)
            if known is None:
                self.table[key] = S
            elif known != S:
                raise InconsistentInput(f"link reconstruction disagrees on frame {self.frame(key)!r}")
        self.traces.extend(sub.traces)

    def _check_initial_union(self, position: int, star: int) -> None:
        # union of the recovered restriction stars from here on must be the
        # graph induced by the unpeeled facets
        for u in iter_bits(star):
            self._restriction_cover[u] |= self.adj[u] & star | (1 << u)
        rest = 0
        for t in self.order[position:]:
            rest |= 1 << t
        for u in iter_bits(rest):
            if self._restriction_cover[u] != (self.adj[u] & rest) | (1 << u):
                raise InconsistentInput(f"restriction stars do not cover the graph at position {position}")

    # -- the first facet ---------------------------------------------------

    def first_facet_base_k2(self) -> None:
        """Stars of the codimension-3 faces inside the first facet ``T_1``.

        Outside ``T_1`` every such star is already known.  The 2-frames not
        covered by them span a graph in which only ``t_1`` and its neighbours
        branch; each maximal path of degree-2 vertices between neighbours
        ``a`` and ``b`` of ``t_1`` closes up into the star of
        ``T_1 & T_a & T_b``.
        """
        sink = self.order[0]
        first = self.adj[sink]
        covered = set()
        for S in self.level(2):
            for r in iter_bits(S):
                covered.add((1 << r) | (self.adj[r] & S))
        gu = {v: 0 for v in iter_bits(self.within)}
        for t in iter_bits(self.within):
            for a, b in combinations(iter_bits(self.adj[t]), 2):
                if (1 << t) | (1 << a) | (1 << b) not in covered:
                    gu[t] |= (1 << a) | (1 << b)
                    gu[a] |= 1 << t
                    gu[b] |= 1 << t
        branch = first | (1 << sink)
        for v, nb in gu.items():
            if not (branch >> v) & 1 and popcount(nb) not in (0, 2):
                raise InconsistentInput(f"vertex {v} has degree {popcount(nb)} among uncovered 2-frames")
        if gu[sink] != first:
            raise InconsistentInput("uncovered 2-frames do not surround the first facet")

        paths: dict[tuple[int, int], set[int]] = {}
        for a in iter_bits(first):
            for x in iter_bits(gu[a] & ~(1 << sink)):
                prev, cur, inner = a, x, 0
                while not (first >> cur) & 1:
                    if cur == sink or (inner >> cur) & 1:
                        raise InconsistentInput("path of uncovered 2-frames does not end at a neighbour of t_1")
                    inner |= 1 << cur
                    nxt = gu[cur] & ~(1 << prev)
                    prev, cur = cur, (nxt & -nxt).bit_length() - 1
                if cur == a:
                    raise InconsistentInput(f"path of uncovered 2-frames returns to {a}")
                paths.setdefault((min(a, cur), max(a, cur)), set()).add(inner)

        for (a, b), inners in sorted(paths.items()):
            if len(inners) > 1:
                raise StitchAmbiguity(f"{len(inners)} distinct paths join {a} and {b}")
        if set(paths) != set(combinations(iter_bits(first), 2)):
            raise InconsistentInput("uncovered 2-frames do not yield one path per pair of neighbours of t_1")
        for (a, b), inners in sorted(paths.items()):
            S = (1 << sink) | (1 << a) | (1 << b) | inners.pop()
            self.record(S, expected_key=(sink, (1 << a) | (1 << b)))

    def propagate_frames_k(self, k: int) -> None:
        """Stars of the faces inside ``T_1`` with ``d - k`` vertices, from level ``k - 1``.

        Starting at the frame ``<t_1; L>``, the ``k`` neighbours of a leaf
        ``t^j`` inside the star are the union, over the other leaves ``l``, of
        its neighbours inside the level-``(k-1)`` star containing the frame
        ``<t; L - l>``; breadth-first closure yields the whole star.
        """
        index: dict[int, int] = {}
        for S in self.level(k - 1):
            for r in iter_bits(S):
                fm = (1 << r) | (self.adj[r] & S)
                if index.setdefault(fm, S) != S:
                    raise InconsistentInput(f"level {k - 1} stars overlap on a frame")
        sink = self.order[0]
        for leaves in combinations(iter_bits(self.adj[sink]), k):
            lm = to_mask(leaves)
            frames = {sink: lm}
            members = (1 << sink) | lm
            queue = deque([sink])
            while queue:
                t = queue.popleft()
                lt = frames[t]
                for j in iter_bits(lt):
                    nbrs = 0
                    for drop in iter_bits(lt):
                        if drop == j:
                            continue
                        S = index.get((1 << t) | (lt & ~(1 << drop)))
                        if S is None:
                            raise FrameLookupMiss(f"no level-{k - 1} star contains the frame at {t}")
                        nbrs |= self.adj[j] & S
                    if popcount(nbrs) != k:
                        raise NonRegularClosure(f"vertex {j} gets {popcount(nbrs)} neighbours, expected {k}")
                    if j in frames:
                        if frames[j] != nbrs:
                            raise NonRegularClosure(f"vertex {j} reached with two different frames")
                        continue
                    frames[j] = nbrs
                    members |= nbrs
                    queue.append(j)
            self.record(members, expected_key=(sink, lm))

    # -- assembly ----------------------------------------------------------

    def assemble_complex(self) -> ReconstructedComplex:
        """One new vertex per star of a codimension-1 face (a vertex of the sphere)."""
        stars = sorted(set(self.level(self.d - 1)), key=lambda S: sorted(iter_bits(S)))
        facet_ids = list(iter_bits(self.within))
        facets = []
        for t in facet_ids:
            facet = [vid for vid, S in enumerate(stars) if (S >> t) & 1]
            if len(facet) != self.d:
                raise AssemblyMismatch(f"facet of vertex {t} gets {len(facet)} vertices, expected {self.d}")
            facets.append(facet)
        try:
            cx = build_complex(self.d, facets)
        except Exception as exc:  # duplicate facets
            raise AssemblyMismatch(str(exc)) from exc
        masks = cx.facet_masks
        for i, t in enumerate(facet_ids):
            for j, u in enumerate(facet_ids):
                if i < j and (popcount(masks[i] & masks[j]) == self.d - 1) != bool((self.adj[t] >> u) & 1):
                    raise AssemblyMismatch(f"facets {t} and {u} disagree with the input graph")
        return ReconstructedComplex(
            complex=cx,
            vertex_stars={vid: from_mask(S) for vid, S in enumerate(stars)},
            orientation=self.orientation,
            peel_order=tuple(self.order),
            traces=tuple(self.traces),
            star_table=dict(self.table),
        )

    def restriction_stage(self, position: int) -> int:
        """Recover the restriction-face star at ``position`` and every face star in its interval."""
        star = self.peel_free_vertices(position)
        self.record(star, expected_key=self.restriction_key(position))
        if self.check_invariants:
            self._check_initial_union(position, star)
        self.lift_link_stars(position, star)
        return star

    def run(self) -> ReconstructedComplex:
        if self.d >= 3:
            for position in range(len(self.order) - 1, 0, -1):
                self.restriction_stage(position)
            self.first_facet_base_k2()
            for k in range(3, self.d):
                self.propagate_frames_k(k)
        return self.assemble_complex()


def check_input_graph(g: FacetRidgeGraph) -> int:
    """Return the regular degree of ``g`` or raise."""
    if g.n == 0:
        raise EmptyGraph("graph has no vertices")
    d = g.regular_degree()
    if d is None:
        raise NotRegular("graph is not regular")
    if not g.is_connected():
        raise Disconnected("graph is not connected")
    return d


def _low_dimensional(g: FacetRidgeGraph, d: int) -> ReconstructedComplex:
    # d = 2: a cycle is its own facet-ridge graph, one sphere vertex per
    # graph edge. d = 1: two points. d = 0: the sphere {empty face}.
    if d == 2:
        stars = sorted(frozenset(e) for e in g.edges)
        stars.sort(key=sorted)
    elif d == 1:
        stars = [frozenset({v}) for v in range(g.n)]
    else:
        stars = []
    facets = [[vid for vid, s in enumerate(stars) if t in s] for t in range(g.n)]
    return ReconstructedComplex(build_complex(d, facets), dict(enumerate(stars)))


def reconstruct(
    g: FacetRidgeGraph,
    budget: int = DEFAULT_BUDGET,
    orientation: AcyclicOrientation | None = None,
    check_invariants: bool = True,
    peel_choice: PeelChoice | None = None,
) -> ReconstructedComplex:
    """Rebuild the sphere whose facet-ridge graph is ``g``.

    ``orientation`` may be any good acyclic orientation of ``g``; by default
    the first minimiser of the indegree score is used.  ``peel_choice``
    selects among simultaneously free vertices (default: the first found).
    """
    d = check_input_graph(g)
    if d <= 2:
        if orientation is None:
            return _low_dimensional(g, d)
    if orientation is None:
        orientation = find_good_orientations(g, mode="one", budget=budget).orientations[0]
    elif orientation.graph != g:
        raise InconsistentInput("orientation belongs to a different graph")
    state = ReconstructionState(g, orientation, check_invariants=check_invariants, peel_choice=peel_choice)
    return state.run()


def ground_truth_vertex_stars(c: SimplicialComplex) -> set[frozenset[int]]:
    return {from_mask(st) for face, st in c.star_masks.items() if popcount(face) == 1}


def verify_roundtrip(c: SimplicialComplex, budget: int = DEFAULT_BUDGET) -> bool:
    """Reconstruct from the facet-ridge graph alone and compare vertex stars with ``c``.

    Facet indices are shared, so the two complexes are isomorphic exactly
    when their vertex stars coincide as sets of facet-index sets.
    """
    from .complex import facet_ridge_graph

    try:
        result = reconstruct(facet_ridge_graph(c), budget=budget)
    except (InconsistentInput, NotRegular, Disconnected, EmptyGraph):
        return False
    truth = ground_truth_vertex_stars(c)
    return len(truth) == c.vertex_count and truth == set(result.vertex_stars.values())
