"""scikit-learn style wrappers around orientation search and reconstruction.

One graph is one "sample": ``fit`` takes a single graph in any form
:func:`check_graph` accepts and stores the results as trailing-underscore
attributes.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .orientation import DEFAULT_BUDGET, find_good_orientations
from .reconstruct import reconstruct
from .validation import check_graph


class GoodOrientationSearch(BaseEstimator):
    """Minimise the indegree score over acyclic orientations.

    After ``fit``: ``M_`` (the minimum), ``orientations_`` and ``complete_``.
    ``transform`` encodes the minimisers as rows of +1/-1 over the sorted
    edges, +1 meaning the edge ``(u, v)``, ``u < v``, points ``u -> v``.
    """

    def __init__(self, mode: str = "one", budget: int = DEFAULT_BUDGET, n_jobs: int = 1):
        self.mode = mode
        self.budget = budget
        self.n_jobs = n_jobs

    def fit(self, X, y=None):
        g = check_graph(X)
        result = find_good_orientations(g, mode=self.mode, budget=self.budget, n_jobs=self.n_jobs)
        self.graph_ = g
        self.M_ = result.M
        self.orientations_ = result.orientations
        self.complete_ = result.complete
        return self

    def transform(self, X=None) -> np.ndarray:
        check_is_fitted(self, "orientations_")
        edges = self.graph_.sorted_edges()
        return np.array(
            [[1 if (u, v) in o.arcs else -1 for u, v in edges] for o in self.orientations_],
            dtype=np.int8,
        ).reshape(len(self.orientations_), len(edges))

    def fit_transform(self, X, y=None) -> np.ndarray:
        return self.fit(X).transform()


class SphereReconstructor(TransformerMixin, BaseEstimator):
    """Rebuild a sphere from its facet-ridge graph.

    After ``fit``: ``complex_``, ``vertex_stars_`` and ``result_`` (the full
    :class:`ReconstructedComplex` with provenance).  ``transform`` maps a
    graph to its facet list, one sorted vertex list per graph vertex.
    """

    def __init__(self, budget: int = DEFAULT_BUDGET, check_invariants: bool = True):
        self.budget = budget
        self.check_invariants = check_invariants

    def fit(self, X, y=None):
        g = check_graph(X)
        self.result_ = reconstruct(g, budget=self.budget, check_invariants=self.check_invariants)
        self.graph_ = g
        self.complex_ = self.result_.complex
        self.vertex_stars_ = self.result_.vertex_stars
        return self

    def transform(self, X) -> list[list[int]]:
        check_is_fitted(self, "complex_")
        g = check_graph(X)
        if g != self.graph_:
            result = reconstruct(g, budget=self.budget, check_invariants=self.check_invariants)
            return result.complex.as_lists()
        return self.complex_.as_lists()
