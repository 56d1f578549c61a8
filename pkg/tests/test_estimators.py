import networkx as nx
import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from oracles import isomorphic_complexes
from sphererecon import (
    GoodOrientationSearch,
    SphereReconstructor,
    cross_polytope_boundary,
    facet_ridge_graph,
    simplex_boundary,
    stacked_sphere,
)
from sphererecon.errors import InconsistentInput, InvalidInput
from sphererecon.io import graph_to_dict
from sphererecon.validation import check_complex, check_graph


def cube_forms():
    g = facet_ridge_graph(cross_polytope_boundary(3))
    matrix = np.zeros((8, 8), dtype=int)
    for u, v in g.edges:
        matrix[u, v] = matrix[v, u] = 1
    return g, [g, graph_to_dict(g), matrix, sorted(g.edges), [list(e) for e in g.edges]]


def test_check_graph_accepts_every_form():
    g, forms = cube_forms()
    for form in forms:
        assert check_graph(form).edges == g.edges


@pytest.mark.parametrize(
    "bad",
    [np.ones((2, 3)), np.array([[0, 1], [0, 0]]), np.eye(3), 42, [(0, 1, 2)], [("a", "b")], [(0, 0)]],
    ids=["non-square", "asymmetric", "loops", "scalar", "triples", "strings", "self-loop"],
)
def test_check_graph_rejects(bad):
    with pytest.raises(InvalidInput):
        check_graph(bad)


def test_check_complex_forms():
    c = simplex_boundary(3)
    assert check_complex(c) is c
    assert check_complex({"d": 3, "facets": c.as_lists()}) == c
    assert check_complex(c.as_lists()) == c
    with pytest.raises(InvalidInput):
        check_complex([])
    with pytest.raises(InvalidInput):
        check_complex(7)


def test_search_params_and_clone():
    est = GoodOrientationSearch(mode="all", budget=1000, n_jobs=2)
    assert est.get_params() == {"mode": "all", "budget": 1000, "n_jobs": 2}
    twin = clone(est)
    assert twin is not est and twin.get_params() == est.get_params()
    est.set_params(mode="one")
    assert est.mode == "one" and twin.mode == "all"


def test_search_fit_transform_on_cube():
    g, _ = cube_forms()
    est = GoodOrientationSearch(mode="all")
    signs = est.fit_transform(g)
    assert est.M_ == 27 and est.complete_
    assert signs.shape == (728, 12) and signs.dtype == np.int8
    assert set(np.unique(signs)) == {-1, 1}
    assert len({row.tobytes() for row in signs}) == 728
    first = est.orientations_[0]
    for (u, v), s in zip(g.sorted_edges(), signs[0]):
        assert ((u, v) in first.arcs) == (s == 1)


def test_search_one_mode():
    est = GoodOrientationSearch().fit(facet_ridge_graph(simplex_boundary(3)))
    assert est.M_ == 15 and not est.complete_ and est.transform().shape == (1, 6)


def test_unfitted_estimators_raise():
    with pytest.raises(NotFittedError):
        GoodOrientationSearch().transform()
    with pytest.raises(NotFittedError):
        SphereReconstructor().transform(facet_ridge_graph(simplex_boundary(3)))


def test_reconstructor_fit_and_transform():
    c = stacked_sphere(3, 3, 1)
    g = facet_ridge_graph(c)
    est = SphereReconstructor()
    facets = est.fit_transform(g)
    assert isomorphic_complexes(est.complex_.facets, c.facets)
    assert facets == est.complex_.as_lists()
    assert len(est.vertex_stars_) == c.vertex_count
    assert est.result_.complex == est.complex_
    other = facet_ridge_graph(simplex_boundary(4))
    assert len(est.transform(other)) == 5
    assert est.complex_ is est.result_.complex


def test_reconstructor_params_and_clone():
    est = SphereReconstructor(budget=5000, check_invariants=False)
    assert clone(est).get_params() == {"budget": 5000, "check_invariants": False}
    assert "check_invariants=False" in repr(est)


def test_reconstructor_accepts_matrix_and_rejects_k33():
    _, forms = cube_forms()
    est = SphereReconstructor().fit(forms[2])
    assert len(est.complex_) == 8 and est.complex_.vertex_count == 6
    k33 = nx.to_numpy_array(nx.complete_bipartite_graph(3, 3), dtype=int)
    with pytest.raises(InconsistentInput):
        SphereReconstructor().fit(k33)
