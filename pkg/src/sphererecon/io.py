"""JSON formats for complexes, graphs, orientations and systems, plus DOT export.

Every emitter produces canonical JSON (sorted keys, sorted facets / edges /
sets) so that identical objects serialise to identical bytes.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any, Mapping

from .complex import FacetRidgeGraph, SimplicialComplex, build_complex
from .errors import InvalidInput, SphereReconError
from .frames import KSystem
from .orientation import AcyclicOrientation


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"malformed JSON: {exc}") from exc


def _require(obj: Any, *keys: str) -> Mapping[str, Any]:
    if not isinstance(obj, Mapping):
        raise InvalidInput(f"expected a JSON object, got {type(obj).__name__}")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise InvalidInput(f"missing keys {missing}")
    return obj


def digest(obj: Any) -> str:
    return "sha256:" + hashlib.sha256(dumps(obj).encode()).hexdigest()


# -- complexes ---------------------------------------------------------------


def complex_to_dict(c: SimplicialComplex, canonical: bool = True) -> dict:
    """``canonical=False`` keeps facet order (facet ``i`` = graph vertex ``i``)."""
    facets = c.as_lists()
    if canonical:
        facets.sort()
    return {"d": c.d, "facets": facets}


def complex_from_dict(obj: Any) -> SimplicialComplex:
    obj = _require(obj, "d", "facets")
    try:
        return build_complex(int(obj["d"]), obj["facets"])
    except SphereReconError:
        raise
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"bad complex: {exc}") from exc


# -- graphs ------------------------------------------------------------------


def graph_to_dict(g: FacetRidgeGraph, with_labels: bool = True) -> dict:
    out: dict[str, Any] = {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}
    if with_labels and g.facet_labels is not None:
        out["facet_labels"] = [sorted(f) for f in g.facet_labels]
    return out


def graph_from_dict(obj: Any) -> FacetRidgeGraph:
    obj = _require(obj, "n", "edges")
    labels = obj.get("facet_labels")
    try:
        n = int(obj["n"])
        if labels is not None:
            labels = tuple(frozenset(int(v) for v in f) for f in labels)
            if len(labels) != n:
                raise ValueError(f"{len(labels)} facet labels for {n} vertices")
        return FacetRidgeGraph.from_edges(n, obj["edges"], labels)
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"bad graph: {exc}") from exc


# -- orientations ------------------------------------------------------------


def orientation_to_dict(o: AcyclicOrientation) -> dict:
    """Arcs listed ``[tail, head]``, sorted."""
    return {"edges": [list(a) for a in sorted(o.arcs)]}


def orientation_from_dict(g: FacetRidgeGraph, obj: Any) -> AcyclicOrientation:
    obj = _require(obj, "edges")
    try:
        arcs = frozenset((int(u), int(v)) for u, v in obj["edges"])
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"bad orientation: {exc}") from exc
    return AcyclicOrientation(g, arcs)


# -- systems -----------------------------------------------------------------


def system_to_dict(s: KSystem) -> dict:
    return {"k": s.k, "sets": s.as_lists()}


def system_from_dict(obj: Any) -> KSystem:
    obj = _require(obj, "k", "sets")
    try:
        return KSystem.of(int(obj["k"]), ([int(v) for v in s] for s in obj["sets"]))
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"bad system: {exc}") from exc


# -- DOT ---------------------------------------------------------------------


def export_dot(g: FacetRidgeGraph, orientation: AcyclicOrientation | None = None) -> str:
    """Graphviz text; directed (tail -> head) when an orientation is given."""
    directed = orientation is not None
    lines = ["digraph G {" if directed else "graph G {"]
    for v in range(g.n):
        lines.append(f"  {v};")
    if directed:
        lines.extend(f"  {u} -> {v};" for u, v in sorted(orientation.arcs))
    else:
        lines.extend(f"  {u} -- {v};" for u, v in g.sorted_edges())
    lines.append("}")
    return "\n".join(lines) + "\n"
