"""Shelling verification, restriction maps, shelling search, and shelling -> orientation."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .complex import SimplicialComplex, facet_ridge_graph, from_mask, iter_bits, popcount
from .errors import NotAPermutation, NotAShelling, SearchBudgetExceeded

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class ShellingOrder:
    """A facet order together with the restriction face of each facet.

    ``restriction[i]`` is the restriction face of facet index ``i`` (not of
    position ``i``).
    """

    order: tuple[int, ...]
    restriction: dict[int, frozenset]

    def restriction_sizes(self) -> list[int]:
        return [len(self.restriction[t]) for t in self.order]


@dataclass(frozen=True)
class ShellingCheck:
    ok: bool
    failure_index: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def _check_permutation(c: SimplicialComplex, order: Sequence[int]) -> tuple[int, ...]:
    order = tuple(int(t) for t in order)
    if sorted(order) != list(range(len(c.facets))):
        raise NotAPermutation(f"{list(order)} is not a permutation of 0..{len(c.facets) - 1}")
    return order


def _extends(masks: Sequence[int], prefix: Sequence[int], t: int, ridge_size: int) -> bool:
    """Whether adding facet ``t`` after ``prefix`` keeps the intersection pure of codimension one.

    Every ``T_t & T_j`` must lie inside a ridge shared with some earlier facet.
    """
    ft = masks[t]
    ridges = []
    others = []
    for j in prefix:
        common = ft & masks[j]
        if popcount(common) == ridge_size:
            ridges.append(common)
        else:
            others.append(common)
    if not ridges:
        return False
    return all(any(common & r == common for r in ridges) for common in others)


def is_shelling(c: SimplicialComplex, order: Sequence[int]) -> ShellingCheck:
    """Check the shelling condition; on failure report the first offending position (0-based)."""
    order = _check_permutation(c, order)
    masks = c.facet_masks
    for i in range(1, len(order)):
        if not _extends(masks, order[:i], order[i], c.d - 1):
            return ShellingCheck(False, i)
    return ShellingCheck(True)


def _restriction_masks(c: SimplicialComplex, order: Sequence[int]) -> dict[int, int]:
    masks = c.facet_masks
    out = {}
    for i, t in enumerate(order):
        ft = masks[t]
        r = 0
        for v in iter_bits(ft):
            ridge = ft & ~(1 << v)
            if any(masks[order[j]] & ridge == ridge for j in range(i)):
                r |= 1 << v
        out[t] = r
    return out


def restriction_map(c: SimplicialComplex, order: Sequence[int]) -> ShellingOrder:
    """Restriction face of each facet: the vertices whose opposite ridge is already present."""
    order = _check_permutation(c, order)
    if not is_shelling(c, order):
        raise NotAShelling(f"{list(order)} is not a shelling")
    masks = _restriction_masks(c, order)
    return ShellingOrder(order, {t: from_mask(m) for t, m in masks.items()})


def find_shelling(
    c: SimplicialComplex,
    budget: int = DEFAULT_BUDGET,
    seed: int | None = None,
) -> ShellingOrder | None:
    """Backtracking search for a shelling; ``None`` if none exists.

    Candidates are facets sharing a ridge with the current prefix, tried in
    increasing index order (shuffled when ``seed`` is given).  Whether a
    facet can extend a prefix depends only on the prefix as a set, so dead
    sets are memoised.
    """
    n = len(c.facets)
    if n == 0:
        return None
    masks = c.facet_masks
    adj = facet_ridge_graph(c).adjacency
    rng = random.Random(seed) if seed is not None else None
    dead: set[int] = set()
    nodes = 0
    full = (1 << n) - 1

    def candidates(placed: int) -> list[int]:
        frontier = 0
        for t in iter_bits(placed):
            frontier |= adj[t]
        cands = list(iter_bits(frontier & ~placed))
        if rng is not None:
            rng.shuffle(cands)
        return cands

    def search(prefix: list[int], placed: int) -> bool:
        nonlocal nodes
        if placed == full:
            return True
        if placed in dead:
            return False
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceeded(f"shelling search exceeded {budget} nodes")
        for t in candidates(placed):
            if _extends(masks, prefix, t, c.d - 1):
                prefix.append(t)
                if search(prefix, placed | (1 << t)):
                    return True
                prefix.pop()
        dead.add(placed)
        return False

    starts = list(range(n))
    if rng is not None:
        rng.shuffle(starts)
    for first in starts:
        prefix = [first]
        if search(prefix, 1 << first):
            return restriction_map(c, prefix)
    return None


def reverse_order_check(c: SimplicialComplex, s: ShellingOrder) -> bool:
    return bool(is_shelling(c, tuple(reversed(s.order))))


def shelling_to_orientation(c: SimplicialComplex, s: ShellingOrder | Sequence[int]):
    """Orient every ridge edge from the later facet to the earlier one."""
    from .orientation import AcyclicOrientation

    order = s.order if isinstance(s, ShellingOrder) else _check_permutation(c, s)
    if not is_shelling(c, order):
        raise NotAShelling(f"{list(order)} is not a shelling")
    return AcyclicOrientation.from_order(facet_ridge_graph(c), order)
