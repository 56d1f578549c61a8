"""k-frames, k-systems and the predicates used to single out the system of face stars.

A k-frame is a root vertex together with k of its neighbours.  A k-system is
a family of vertex sets, each inducing a k-regular subgraph, such that the
vertex set of every k-frame lies in exactly one member.  The stars of the
codimension-(k+1) faces of a sphere form such a system; this module supplies
the graph-only machinery to enumerate systems and test them, plus the
brute-force oracle that checks the family of face stars is the only
compatible family of star-like systems.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Iterator, Mapping

from .complex import FacetRidgeGraph, SimplicialComplex, from_mask, iter_bits, popcount, to_mask
from .errors import (
    FaceEmptyMismatch,
    IncompleteOrientationSet,
    MissingLevel,
    NotRegular,
    NoUniqueSink,
    NotUnique,
    SearchBudgetExceeded,
)
from .orientation import AcyclicOrientation, OrientationSearchResult, find_good_orientations

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True, order=True)
class KFrame:
    root: int
    leaves: tuple[int, ...]

    def __init__(self, root: int, leaves: Iterable[int] = ()):
        object.__setattr__(self, "root", int(root))
        object.__setattr__(self, "leaves", tuple(sorted(int(v) for v in leaves)))

    @property
    def k(self) -> int:
        return len(self.leaves)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset((self.root, *self.leaves))

    @property
    def mask(self) -> int:
        return to_mask(self.vertices)

    def __repr__(self) -> str:
        return f"<{self.root}; {', '.join(map(str, self.leaves))}>"


@dataclass(frozen=True)
class KSystem:
    k: int
    sets: frozenset[frozenset[int]]

    @classmethod
    def of(cls, k: int, sets: Iterable[Iterable[int]]) -> KSystem:
        return cls(k, frozenset(frozenset(s) for s in sets))

    @property
    def masks(self) -> list[int]:
        return sorted(to_mask(s) for s in self.sets)

    def as_lists(self) -> list[list[int]]:
        return sorted(sorted(s) for s in self.sets)

    def __len__(self) -> int:
        return len(self.sets)


@dataclass(frozen=True)
class CompatibleFamily:
    systems: Mapping[int, KSystem] = field(default_factory=dict)

    def __getitem__(self, k: int) -> KSystem:
        return self.systems[k]

    def levels(self) -> list[int]:
        return sorted(self.systems)


def enumerate_k_frames(g: FacetRidgeGraph, k: int) -> Iterator[KFrame]:
    for root in range(g.n):
        for leaves in combinations(sorted(g.neighbors(root)), k):
            yield KFrame(root, leaves)


def frame_masks(g: FacetRidgeGraph, k: int) -> set[int]:
    """Distinct vertex sets (as masks) of the k-frames of ``g``."""
    return {f.mask for f in enumerate_k_frames(g, k)}


def frame_face(c: SimplicialComplex, frame: KFrame) -> frozenset:
    """Intersection of the facets of the frame; must have ``d - k`` vertices."""
    face = c.facet_masks[frame.root]
    for leaf in frame.leaves:
        face &= c.facet_masks[leaf]
    if popcount(face) != c.d - frame.k:
        raise FaceEmptyMismatch(f"frame {frame!r} meets in {popcount(face)} vertices, expected {c.d - frame.k}")
    return from_mask(face)


def principal_frame(o: AcyclicOrientation, S: Iterable[int]) -> KFrame:
    """The frame rooted at the unique sink of ``G[S]``, with all its neighbours in ``S`` as leaves."""
    mask = to_mask(S)
    sinks = o.sinks(mask)
    if len(sinks) != 1:
        raise NoUniqueSink(f"{sorted(from_mask(mask))} induces {len(sinks)} sinks")
    root = sinks[0]
    return KFrame(root, iter_bits(o.graph.adjacency[root] & mask))


def v_delta_k(c: SimplicialComplex, k: int) -> KSystem:
    """Stars (as facet index sets) of all faces with ``d - k`` vertices."""
    size = c.d - k
    return KSystem(k, frozenset(from_mask(st) for face, st in c.star_masks.items() if popcount(face) == size))


def _member_frames(g: FacetRidgeGraph, S: int) -> set[int]:
    adj = g.adjacency
    return {(1 << r) | (adj[r] & S) for r in iter_bits(S)}


def is_k_system(g: FacetRidgeGraph, family: Iterable[Iterable[int]], k: int) -> bool:
    members = [to_mask(s) for s in family]
    if not all(g.is_regular_on(S, k) for S in members):
        return False
    for fm in frame_masks(g, k):
        if sum(1 for S in members if fm & S == fm) != 1:
            return False
    return True


def regular_closures(g: FacetRidgeGraph, frame: KFrame) -> set[int]:
    """Connected ``k``-regular induced subgraphs of ``g`` containing ``frame`` (vertex masks).

    Connected k-regular induced subgraphs are exactly the inclusion-minimal
    k-regular ones, so this is the candidate set for k-system members.
    """
    adj = g.adjacency
    k = frame.k
    results: set[int] = set()
    seen: set[tuple[int, int]] = set()

    def grow(S: int, X: int) -> None:
        if (S, X) in seen:
            return
        seen.add((S, X))
        pick, pick_avail, pick_need = None, 0, 0
        for v in iter_bits(S):
            deg = popcount(adj[v] & S)
            if deg > k:
                return
            if deg < k:
                avail = adj[v] & ~S & ~X
                need = k - deg
                if popcount(avail) < need:
                    return
                if pick is None or popcount(avail) < popcount(pick_avail):
                    pick, pick_avail, pick_need = v, avail, need
        if pick is None:
            results.add(S)
            return
        options = list(iter_bits(pick_avail))
        for chosen in combinations(options, pick_need):
            add = to_mask(chosen)
            grow(S | add, X | (pick_avail & ~add))

    root_bit = 1 << frame.root
    grow(frame.mask, adj[frame.root] & ~frame.mask & ~root_bit)
    return results


def candidate_members(g: FacetRidgeGraph, k: int) -> list[int]:
    cands: set[int] = set()
    for frame in enumerate_k_frames(g, k):
        cands |= regular_closures(g, frame)
    return sorted(cands)


def _exact_covers(universe: set[int], rows: dict[int, list[int]], budget: int) -> Iterator[list[int]]:
    """Algorithm X over dict-of-sets columns; ``rows`` maps row id -> sorted elements."""
    cols: dict[int, set[int]] = {e: set() for e in universe}
    for r, elems in rows.items():
        for e in elems:
            cols[e].add(r)
    nodes = 0

    def select(r: int) -> list[set[int]]:
        removed = []
        for e in rows[r]:
            for other in cols[e]:
                for e2 in rows[other]:
                    if e2 != e:
                        cols[e2].discard(other)
            removed.append(cols.pop(e))
        return removed

    def deselect(r: int, removed: list[set[int]]) -> None:
        for e in reversed(rows[r]):
            cols[e] = removed.pop()
            for other in cols[e]:
                for e2 in rows[other]:
                    if e2 != e:
                        cols[e2].add(other)

    def solve(partial: list[int]) -> Iterator[list[int]]:
        nonlocal nodes
        if not cols:
            yield list(partial)
            return
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceeded(f"exact cover search exceeded {budget} nodes")
        e = min(cols, key=lambda c: (len(cols[c]), c))
        for r in sorted(cols[e]):
            partial.append(r)
            removed = select(r)
            yield from solve(partial)
            deselect(r, removed)
            partial.pop()

    yield from solve([])


def enumerate_k_systems(g: FacetRidgeGraph, k: int, budget: int = DEFAULT_BUDGET) -> list[KSystem]:
    """All k-systems of ``g`` whose members induce connected subgraphs.

    Members with a disconnected induced subgraph are not generated; such a
    member has a sink in every component, so it can never be star-like.
    """
    universe = frame_masks(g, k)
    rows = {}
    for S in candidate_members(g, k):
        covered = _member_frames(g, S) & universe
        if covered:
            rows[S] = sorted(covered)
    systems = [KSystem(k, frozenset(from_mask(S) for S in cover)) for cover in _exact_covers(universe, rows, budget)]
    return sorted(systems, key=KSystem.as_lists)


def _orientation_list(good_orientations, trusted: bool) -> tuple[AcyclicOrientation, ...]:
    if isinstance(good_orientations, OrientationSearchResult):
        if not good_orientations.complete and not trusted:
            raise IncompleteOrientationSet("orientation search result is not the complete minimiser set")
        return good_orientations.orientations
    if not trusted:
        raise IncompleteOrientationSet("pass a complete OrientationSearchResult or set trusted=True")
    return tuple(good_orientations)


def is_star_like(
    g: FacetRidgeGraph,
    s: KSystem,
    good_orientations: OrientationSearchResult | Iterable[AcyclicOrientation],
    trusted: bool = False,
) -> bool:
    """Every good orientation has exactly one sink on every member."""
    orientations = _orientation_list(good_orientations, trusted)
    members = s.masks
    return all(len(o.sinks(S)) == 1 for o in orientations for S in members)


class _LevelIndex:
    """Frame vertex set -> owning member, for one level of a family."""

    def __init__(self, g: FacetRidgeGraph, system: KSystem):
        self.owner: dict[int, int] = {}
        self.ambiguous: set[int] = set()
        for S in system.masks:
            for fm in _member_frames(g, S):
                if self.owner.setdefault(fm, S) != S:
                    self.ambiguous.add(fm)

    def get(self, fm: int) -> int | None:
        if fm in self.ambiguous:
            return None
        return self.owner.get(fm)


def is_compatible(family: CompatibleFamily, g: FacetRidgeGraph) -> bool:
    """For every k-frame and each of its (k-1)-subframes, the covering sets are nested."""
    d = g.regular_degree()
    if d is None:
        raise NotRegular("graph is not regular")
    missing = [k for k in range(2, d) if k not in family.systems]
    if missing:
        raise MissingLevel(f"family lacks levels {missing}")
    index = {k: _LevelIndex(g, family[k]) for k in range(2, d)}
    for k in range(3, d):
        for frame in enumerate_k_frames(g, k):
            big = index[k].get(frame.mask)
            if big is None:
                return False
            for drop in frame.leaves:
                small = index[k - 1].get(frame.mask & ~(1 << drop))
                if small is None or small & ~big:
                    return False
    return True


def unique_compatible_family_oracle(g: FacetRidgeGraph, budget: int = DEFAULT_BUDGET) -> CompatibleFamily:
    """Enumerate every k-system per level, keep star-like ones, return the unique compatible family.

    Raises :class:`NotUnique` if zero or several compatible families survive.
    """
    d = g.regular_degree()
    if d is None:
        raise NotRegular("graph is not regular")
    if d < 3:
        return CompatibleFamily({})
    good = find_good_orientations(g, mode="all", budget=budget)
    per_level = {}
    for k in range(2, d):
        systems = enumerate_k_systems(g, k, budget)
        star_like = [s for s in systems if is_star_like(g, s, good)]
        logger.debug("level %d: %d systems, %d star-like", k, len(systems), len(star_like))
        per_level[k] = star_like
    levels = sorted(per_level)
    families = [
        CompatibleFamily(dict(zip(levels, combo)))
        for combo in product(*(per_level[k] for k in levels))
    ]
    compatible = [f for f in families if is_compatible(f, g)]
    if len(compatible) != 1:
        raise NotUnique(f"found {len(compatible)} compatible families of star-like systems")
    return compatible[0]
