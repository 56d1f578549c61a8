"""Deterministic families of shellable spheres used as fixtures.

Facets are always returned in lexicographic order, so facet indices (and
hence facet-ridge graph vertex ids) are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .complex import SimplicialComplex, build_complex
from .errors import BadParameter


class LCG:
    """32-bit linear congruential generator (Numerical Recipes constants).

    ``state <- (1664525 * state + 1013904223) mod 2**32``; the seed is the
    initial state. Chosen over :mod:`random` so stacked-sphere fixtures are
    reproducible byte for byte in any language.
    """

    A = 1664525
    C = 1013904223
    M = 2**32

    def __init__(self, seed: int = 0):
        self.state = seed % self.M

    def next(self) -> int:
        self.state = (self.A * self.state + self.C) % self.M
        return self.state

    def below(self, bound: int) -> int:
        return self.next() % bound


def _sorted_complex(d: int, facets) -> SimplicialComplex:
    return build_complex(d, sorted((tuple(sorted(f)) for f in facets)))


def simplex_boundary(d: int) -> SimplicialComplex:
    """All ``d``-subsets of ``{1, ..., d+1}``."""
    if d < 2:
        raise BadParameter(f"simplex_boundary needs d >= 2, got {d}")
    return _sorted_complex(d, combinations(range(1, d + 2), d))


def cross_polytope_boundary(d: int) -> SimplicialComplex:
    """Boundary of the ``d``-dimensional cross-polytope.

    Antipodal pairs are ``(i, i + d)`` for ``i = 1..d``; facets pick one vertex
    from each pair.
    """
    if d < 2:
        raise BadParameter(f"cross_polytope_boundary needs d >= 2, got {d}")
    pairs = [(i, i + d) for i in range(1, d + 1)]
    return _sorted_complex(d, product(*pairs))


def cycle_sphere(n: int) -> SimplicialComplex:
    if n < 3:
        raise BadParameter(f"cycle_sphere needs n >= 3, got {n}")
    return _sorted_complex(2, ((i, i % n + 1) for i in range(1, n + 1)))


def gale_evenness(subset: tuple[int, ...], n: int) -> bool:
    """True when every pair of non-members of ``{1..n}`` is separated by an even number of members."""
    members = set(subset)
    outside = [v for v in range(1, n + 1) if v not in members]
    for a, b in zip(outside, outside[1:]):
        if sum(1 for v in range(a + 1, b) if v in members) % 2:
            return False
    return True


def cyclic_polytope_boundary(n: int, d: int) -> SimplicialComplex:
    """Boundary of the cyclic polytope C(n, d) via Gale's evenness condition."""
    if not (n > d >= 2):
        raise BadParameter(f"cyclic_polytope_boundary needs n > d >= 2, got n={n}, d={d}")
    if n > 20:
        raise BadParameter("cyclic_polytope_boundary scans all subsets; n must be <= 20")
    return _sorted_complex(d, (s for s in combinations(range(1, n + 1), d) if gale_evenness(s, n)))


def stacked_sphere(d: int, steps: int, seed: int = 0) -> SimplicialComplex:
    """Repeatedly stack a new vertex onto a facet of the simplex boundary.

    At each step the facet at index ``LCG.below(#facets)`` of the current
    (lexicographically sorted) facet list is replaced by the ``d`` facets of
    the cone over its boundary with apex ``max vertex + 1``.
    """
    if d < 2:
        raise BadParameter(f"stacked_sphere needs d >= 2, got {d}")
    if steps < 0:
        raise BadParameter(f"steps must be >= 0, got {steps}")
    rng = LCG(seed)
    facets = sorted(tuple(f) for f in combinations(range(1, d + 2), d))
    apex = d + 1
    for _ in range(steps):
        apex += 1
        chosen = facets.pop(rng.below(len(facets)))
        facets.extend(tuple(sorted(set(ridge) | {apex})) for ridge in combinations(chosen, d - 1))
        facets.sort()
    return build_complex(d, facets)


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    d: int = 3
    n: int = 0
    steps: int = 0
    seed: int = 0

    KINDS = ("simplex_boundary", "cross_polytope", "cycle", "cyclic_polytope", "stacked")

    def build(self) -> SimplicialComplex:
        if self.kind == "simplex_boundary":
            return simplex_boundary(self.d)
        if self.kind == "cross_polytope":
            return cross_polytope_boundary(self.d)
        if self.kind == "cycle":
            return cycle_sphere(self.n)
        if self.kind == "cyclic_polytope":
            return cyclic_polytope_boundary(self.n, self.d)
        if self.kind == "stacked":
            return stacked_sphere(self.d, self.steps, self.seed)
        raise BadParameter(f"unknown generator kind {self.kind!r}")


def labelled_octahedron() -> SimplicialComplex:
    """Octahedron boundary whose facet ``i`` carries the label ``i + 1`` in a fixed labelling.

    The labelling is the one forced by the vertex stars
    ``{1,2,3,4}, {1,2,5,6}, {1,4,5,8}, {2,3,6,7}, {3,4,7,8}, {5,6,7,8}``
    (vertices 1..6 in that order; antipodal pairs 1-6, 2-5, 3-4).
    """
    stars = [{1, 2, 3, 4}, {1, 2, 5, 6}, {1, 4, 5, 8}, {2, 3, 6, 7}, {3, 4, 7, 8}, {5, 6, 7, 8}]
    facets = [[v + 1 for v, s in enumerate(stars) if label in s] for label in range(1, 9)]
    return build_complex(3, facets)
