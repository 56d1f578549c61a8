"""Pure simplicial complexes, faces, stars/links and the facet-ridge graph.

Faces are handed out as ``frozenset`` objects.  Internally every face is also
kept as an integer bitmask over vertex ids, so inclusion and intersection are
single word operations; Python integers are unbounded, so there is no vertex
id cap.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import DuplicateFacet, FaceNotInComplex, NonUniformFacet

Face = frozenset


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def from_mask(mask: int) -> frozenset:
    return frozenset(iter_bits(mask))


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class FVector:
    """Face numbers indexed by dimension, starting at -1 (the empty face)."""

    counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __getitem__(self, dim: int) -> int:
        return self.counts[dim + 1]


@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    """A pure complex given by its facets, each of size ``d``.

    Facet ``i`` of the complex is vertex ``i`` of its facet-ridge graph, so
    facet order is meaningful and preserved.
    """

    d: int
    facets: tuple[frozenset, ...]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.d == other.d and self.facets == other.facets

    def __hash__(self) -> int:
        return hash((self.d, self.facets))

    def __len__(self) -> int:
        return len(self.facets)

    @cached_property
    def facet_masks(self) -> tuple[int, ...]:
        return tuple(to_mask(f) for f in self.facets)

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(set().union(*self.facets)))

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @cached_property
    def face_masks(self) -> frozenset[int]:
        faces: set[int] = set()
        for fm in self.facet_masks:
            faces.update(submasks(fm))
        return frozenset(faces)

    @cached_property
    def star_masks(self) -> dict[int, int]:
        """Face bitmask -> bitmask of the facet indices containing it."""
        stars: dict[int, int] = {}
        for i, fm in enumerate(self.facet_masks):
            bit = 1 << i
            for sub in submasks(fm):
                stars[sub] = stars.get(sub, 0) | bit
        return stars

    def __contains__(self, face: Iterable[int]) -> bool:
        return to_mask(face) in self.face_masks

    def faces(self, dim: int | None = None) -> list[frozenset]:
        """Faces of the given dimension (all faces if ``dim`` is None), sorted."""
        masks = self.face_masks
        if dim is not None:
            masks = [m for m in masks if popcount(m) == dim + 1]
        return sorted((from_mask(m) for m in masks), key=lambda f: (len(f), sorted(f)))

    def canonical(self) -> SimplicialComplex:
        """The same complex with facets in lexicographic order."""
        return SimplicialComplex(self.d, tuple(sorted(self.facets, key=sorted)))

    def as_lists(self) -> list[list[int]]:
        return [sorted(f) for f in self.facets]


def build_complex(d: int, facets: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Validate and build a pure complex whose facets all have ``d`` vertices.

    >>> build_complex(2, [(1, 2), (2, 3), (3, 1)]).facets[0]
    frozenset({1, 2})
    """
    normalized = []
    seen = set()
    for raw in facets:
        facet = frozenset(int(v) for v in raw)
        if len(facet) != d or any(v < 0 for v in facet):
            raise NonUniformFacet(f"facet {sorted(raw)} does not have {d} distinct non-negative vertices")
        if facet in seen:
            raise DuplicateFacet(f"facet {sorted(facet)} appears twice")
        seen.add(facet)
        normalized.append(facet)
    return SimplicialComplex(d, tuple(normalized))


def enumerate_faces(c: SimplicialComplex) -> tuple[FVector, dict[int, list[frozenset]]]:
    by_dim: dict[int, list[frozenset]] = {k: [] for k in range(-1, c.d)}
    for face in c.faces():
        by_dim[len(face) - 1].append(face)
    return FVector(tuple(len(by_dim[k]) for k in range(-1, c.d))), by_dim


def f_vector(c: SimplicialComplex) -> FVector:
    return enumerate_faces(c)[0]


def _check_face(c: SimplicialComplex, sigma: Iterable[int]) -> int:
    mask = to_mask(sigma)
    if mask not in c.face_masks:
        raise FaceNotInComplex(f"{sorted(from_mask(mask))} is not a face")
    return mask


def star(c: SimplicialComplex, sigma: Iterable[int]) -> frozenset[int]:
    """Indices of the facets containing ``sigma``."""
    mask = _check_face(c, sigma)
    return frozenset(i for i, fm in enumerate(c.facet_masks) if fm & mask == mask)


def star_mask(c: SimplicialComplex, face_mask: int) -> int:
    """Bitmask over facet indices of the facets containing ``face_mask`` (0 if not a face)."""
    return c.star_masks.get(face_mask, 0)


def link(c: SimplicialComplex, sigma: Iterable[int]) -> SimplicialComplex:
    """The link of ``sigma``; its facets follow the order of ``star(c, sigma)``."""
    sigma = frozenset(sigma)
    st = star(c, sigma)
    return SimplicialComplex(c.d - len(sigma), tuple(c.facets[i] - sigma for i in sorted(st)))


@dataclass(frozen=True, eq=False)
class FacetRidgeGraph:
    """Simple undirected graph on ``0..n-1``; edges stored as ``(u, v)`` with ``u < v``."""

    n: int
    edges: frozenset[tuple[int, int]]
    facet_labels: tuple[frozenset, ...] | None = field(default=None, compare=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FacetRidgeGraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], facet_labels=None) -> FacetRidgeGraph:
        normalized = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            normalized.add((min(u, v), max(u, v)))
        return cls(n, frozenset(normalized), facet_labels)

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Neighbour bitmask of each vertex."""
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    def neighbors(self, v: int) -> frozenset[int]:
        return from_mask(self.adjacency[v])

    def degree(self, v: int) -> int:
        return popcount(self.adjacency[v])

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def regular_degree(self) -> int | None:
        """The common degree if the graph is regular, else None."""
        degrees = {self.degree(v) for v in range(self.n)}
        return degrees.pop() if len(degrees) == 1 else None

    def is_connected(self, within: int | None = None) -> bool:
        within = self.all_mask if within is None else within
        if within == 0:
            return True
        start = within & -within
        seen = frontier = start
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= self.adjacency[v]
            frontier = nxt & within & ~seen
            seen |= frontier
        return seen == within

    def induced_degree(self, v: int, within: int) -> int:
        return popcount(self.adjacency[v] & within)

    def is_regular_on(self, within: int, k: int) -> bool:
        return all(popcount(self.adjacency[v] & within) == k for v in iter_bits(within))


def facet_ridge_graph(c: SimplicialComplex) -> FacetRidgeGraph:
    """Edge ``(i, j)`` iff facets ``i`` and ``j`` share ``d - 1`` vertices."""
    ridge = c.d - 1
    masks = c.facet_masks
    edges = [(i, j) for i, j in combinations(range(len(masks)), 2) if popcount(masks[i] & masks[j]) == ridge]
    return FacetRidgeGraph(len(masks), frozenset(edges), c.facets)


@dataclass(frozen=True)
class BoundaryReport:
    is_pseudomanifold: bool
    boundary_ridges: tuple[frozenset, ...]
    classification: str  # "sphere-candidate" | "ball-candidate" | "neither"


def boundary_and_classify(c: SimplicialComplex) -> BoundaryReport:
    """Ridge counting: ridges in one facet form the boundary; any ridge in three or more disqualifies.

    The labels are combinatorial only and make no claim about homeomorphism type.
    """
    ridge_count: Counter[int] = Counter()
    for fm in c.facet_masks:
        for v in iter_bits(fm):
            ridge_count[fm & ~(1 << v)] += 1
    boundary = tuple(sorted((from_mask(r) for r, cnt in ridge_count.items() if cnt == 1), key=sorted))
    pseudo = all(cnt <= 2 for cnt in ridge_count.values()) and facet_ridge_graph(c).is_connected()
    if not pseudo:
        label = "neither"
    elif boundary:
        label = "ball-candidate"
    else:
        label = "sphere-candidate"
    return BoundaryReport(pseudo, boundary, label)
