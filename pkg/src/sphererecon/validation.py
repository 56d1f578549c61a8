"""Coerce the input shapes accepted by the estimators into library objects."""

from __future__ import annotations

from typing import Any, Mapping

import numpy as np

from .complex import FacetRidgeGraph, SimplicialComplex, build_complex
from .errors import InvalidInput


def check_graph(X: Any) -> FacetRidgeGraph:
    """Accept a FacetRidgeGraph, its JSON dict, a square 0/1 adjacency matrix, or an edge list.

    An edge list infers ``n`` as one more than the largest vertex id.
    """
    from .io import graph_from_dict

    if isinstance(X, FacetRidgeGraph):
        return X
    if isinstance(X, Mapping):
        return graph_from_dict(X)
    if isinstance(X, np.ndarray) and X.ndim == 2:
        if X.shape[0] != X.shape[1]:
            raise InvalidInput(f"adjacency matrix must be square, got shape {X.shape}")
        A = np.asarray(X != 0)
        if not np.array_equal(A, A.T) or A.diagonal().any():
            raise InvalidInput("adjacency matrix must be symmetric with an empty diagonal")
        rows, cols = np.nonzero(np.triu(A, 1))
        return FacetRidgeGraph.from_edges(A.shape[0], zip(rows.tolist(), cols.tolist()))
    try:
        edges = [(int(u), int(v)) for u, v in X]
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"cannot interpret {type(X).__name__} as a graph") from exc
    n = 1 + max((max(e) for e in edges), default=-1)
    try:
        return FacetRidgeGraph.from_edges(n, edges)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from exc


def check_complex(X: Any) -> SimplicialComplex:
    """Accept a SimplicialComplex, its JSON dict, or a non-empty list of equal-size facets."""
    from .io import complex_from_dict

    if isinstance(X, SimplicialComplex):
        return X
    if isinstance(X, Mapping):
        return complex_from_dict(X)
    try:
        facets = [list(f) for f in X]
    except TypeError as exc:
        raise InvalidInput(f"cannot interpret {type(X).__name__} as a complex") from exc
    if not facets:
        raise InvalidInput("a complex needs at least one facet")
    return build_complex(len(facets[0]), facets)
