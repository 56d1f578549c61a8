"""Fixtures and reusable checks shared by the property suite and the acceptance gate."""

from __future__ import annotations

import random
from functools import lru_cache
from math import comb

import numpy as np

from sphererecon import (
    cross_polytope_boundary,
    cycle_sphere,
    cyclic_polytope_boundary,
    enumerate_faces,
    facet_ridge_graph,
    find_good_orientations,
    is_compatible,
    is_good_orientation,
    is_k_system,
    is_star_like,
    reconstruct,
    simplex_boundary,
    stacked_sphere,
    v_delta_k,
)
from sphererecon.complex import from_mask, popcount
from sphererecon.errors import SearchBudgetExceeded
from sphererecon.frames import CompatibleFamily, KSystem, enumerate_k_frames, frame_face
from sphererecon.generators import labelled_octahedron
from sphererecon.orientation import AcyclicOrientation, cost_to_go_table

ROUNDTRIP_FIXTURES = (
    [(f"simplex_d{d}", lambda d=d: simplex_boundary(d)) for d in (3, 4, 5)]
    + [(f"cross_d{d}", lambda d=d: cross_polytope_boundary(d)) for d in (3, 4)]
    + [("cyclic_6_3", lambda: cyclic_polytope_boundary(6, 3)), ("cyclic_7_4", lambda: cyclic_polytope_boundary(7, 4))]
    + [
        (f"stacked_d3_s{s}_seed{e}", lambda s=s, e=e: stacked_sphere(3, s, e))
        for s in range(1, 6)
        for e in range(3)
    ]
    + [
        (f"stacked_d4_s{s}_seed{e}", lambda s=s, e=e: stacked_sphere(4, s, e))
        for s in range(1, 4)
        for e in range(3)
    ]
)

SMALL_FIXTURES = [
    ("tetrahedron", lambda: simplex_boundary(3)),
    ("cycle_5", lambda: cycle_sphere(5)),
    ("cycle_7", lambda: cycle_sphere(7)),
    ("octahedron", lambda: cross_polytope_boundary(3)),
    ("labelled_octahedron", labelled_octahedron),
    ("simplex_d4", lambda: simplex_boundary(4)),
    ("cyclic_5_3", lambda: cyclic_polytope_boundary(5, 3)),
    ("cyclic_6_3", lambda: cyclic_polytope_boundary(6, 3)),
    ("stacked_d3_s2_seed1", lambda: stacked_sphere(3, 2, 1)),
    ("stacked_d4_s1_seed0", lambda: stacked_sphere(4, 1, 0)),
]

ALL_FIXTURES = SMALL_FIXTURES + [f for f in ROUNDTRIP_FIXTURES if f[0] not in dict(SMALL_FIXTURES)]

# beyond this many search nodes a fixture's good orientations are sampled
ENUMERATION_BUDGET = 5 * 10**5


@lru_cache(maxsize=16)
def good_orientations_or_none(name: str):
    """Complete minimiser set when enumerable within the budget, else None."""
    c = dict(ALL_FIXTURES)[name]()
    try:
        return find_good_orientations(facet_ridge_graph(c), mode="all", budget=ENUMERATION_BUDGET)
    except SearchBudgetExceeded:
        return None


class OptimalOrderSampler:
    """Random minimisers of the indegree score, by walking tight transitions of the cost-to-go table."""

    def __init__(self, g):
        self.g = g
        self.adj = g.adjacency
        self.n = g.n
        self.table = cost_to_go_table(self.adj, self.n)
        self.full = (1 << self.n) - 1

    def step_cost(self, v: int, placed: int) -> int:
        return 2 ** popcount(self.adj[v] & ~placed & ~(1 << v))

    def tight_moves(self, placed: int) -> list[int]:
        togo = int(self.table[placed])
        return [
            v
            for v in range(self.n)
            if not (placed >> v) & 1 and self.step_cost(v, placed) + int(self.table[placed | (1 << v)]) == togo
        ]

    def sample(self, rng: random.Random) -> AcyclicOrientation:
        placed, order = 0, []
        while placed != self.full:
            v = rng.choice(self.tight_moves(placed))
            order.append(v)
            placed |= 1 << v
        return AcyclicOrientation.from_order(self.g, order)

    def extremes_over_all_minimisers(self, weight) -> tuple[int, int]:
        """Min and max of ``sum_v weight(indeg(v))`` over every minimiser.

        Each minimiser arises from at least one tight path, and the indegree
        of ``v`` is the number of its neighbours placed after it, so the sum
        is additive along paths and two table sweeps give the exact range.
        """
        lo = np.zeros(1 << self.n, dtype=np.int64)
        hi = np.zeros(1 << self.n, dtype=np.int64)
        for placed in range(self.full - 1, -1, -1):
            moves = self.tight_moves(placed)
            if not moves:
                lo[placed], hi[placed] = np.iinfo(np.int64).max, np.iinfo(np.int64).min
                continue
            vals = [weight(popcount(self.adj[v] & ~placed & ~(1 << v))) for v in moves]
            lo[placed] = min(w + lo[placed | (1 << v)] for w, v in zip(vals, moves))
            hi[placed] = max(w + hi[placed | (1 << v)] for w, v in zip(vals, moves))
        return int(lo[0]), int(hi[0])


def good_orientation_pool(name: str, sample_size: int = 200, seed: int = 0):
    """(orientations, complete): every good orientation, or a seeded sample when too many."""
    res = good_orientations_or_none(name)
    if res is not None:
        return list(res.orientations), True
    c = dict(ALL_FIXTURES)[name]()
    sampler = OptimalOrderSampler(facet_ridge_graph(c))
    rng = random.Random(seed)
    return list({sampler.sample(rng) for _ in range(sample_size)}), False


# -- checks ------------------------------------------------------------------


def level_systems(result, d: int) -> dict[int, KSystem]:
    levels: dict[int, set] = {k: set() for k in range(d + 1)}
    for (_, leaves), S in result.star_table.items():
        levels[popcount(leaves)].add(from_mask(S))
    return {k: KSystem(k, frozenset(sets)) for k, sets in levels.items()}


def check_peel_order_independence(c, strategies: int = 20, seed: int = 0) -> None:
    g = facet_ridge_graph(c)
    base = reconstruct(g)
    stages = [t.star for t in base.traces]
    for s in range(strategies):
        rng = random.Random(seed * 1000 + s)
        other = reconstruct(g, orientation=base.orientation, peel_choice=lambda free: rng.choice(free))
        assert other == base
        assert [t.star for t in other.traces] == stages


def check_system_predicates(name: str, c) -> bool:
    """Ground-truth systems are k-systems, star-like and compatible; reconstruction finds exactly them.

    Returns whether star-likeness was checked against the complete set of
    good orientations (False means a seeded sample was used).
    """
    g = facet_ridge_graph(c)
    d = c.d
    orientations, complete = good_orientation_pool(name)
    truth = {k: v_delta_k(c, k) for k in range(2, d)}
    for k, system in truth.items():
        assert is_k_system(g, system.sets, k)
        assert is_star_like(g, system, orientations, trusted=True)
    if d >= 3:
        assert is_compatible(CompatibleFamily(truth), g)
    result = reconstruct(g)
    found = level_systems(result, d)
    for k in range(2, d):
        assert found[k] == truth[k]
        assert v_delta_k(result.complex, k) == truth[k]
    return complete


def check_frame_accounting(c) -> None:
    """Every k-frame lies in one face star; members hold n * C(d, k) rooted frames in total."""
    g = facet_ridge_graph(c)
    d = c.d
    for k in range(d + 1):
        system = v_delta_k(c, k)
        assert is_k_system(g, system.sets, k)
        assert sum(len(S) for S in system.sets) == g.n * comb(d, k)
        for frame in enumerate_k_frames(g, k):
            face = frame_face(c, frame)
            holders = [S for S in system.sets if frame.vertices <= S]
            assert len(holders) == 1
            assert holders[0] == frozenset(i for i, f in enumerate(c.facets) if face <= f)


def check_partitioning(c, o) -> None:
    from sphererecon import partitioning_from_orientation

    d = c.d
    total = enumerate_faces(c)[0].total
    assert is_good_orientation(c, o)
    assert sum(2 ** (d - k) for k in o.indegree) == total
    intervals = partitioning_from_orientation(c, o)
    seen = set()
    for iv in intervals:
        top, bottom = iv.top, iv.bottom
        free = sorted(top - bottom)
        members = {bottom | frozenset(v for i, v in enumerate(free) if (m >> i) & 1) for m in range(1 << len(free))}
        assert len(members) == len(iv)
        assert not members & seen
        seen |= members
    assert seen == set(c.faces())
