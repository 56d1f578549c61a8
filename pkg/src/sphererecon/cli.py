"""Command-line interface: ``sphererecon <subcommand>``.

Every subcommand reads JSON from a file argument or stdin and writes JSON
(or DOT) to stdout.  Exit status is 0 on success, 1 on a domain error (the
error object goes to stderr as JSON) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any, Sequence, TextIO

from .complex import FacetRidgeGraph, build_complex, facet_ridge_graph
from .errors import InvalidInput, SearchBudgetExceeded, SphereReconError, VerificationFailed
from .frames import enumerate_k_systems, is_star_like, unique_compatible_family_oracle
from .generators import GeneratorSpec
from .io import (
    complex_from_dict,
    complex_to_dict,
    digest,
    dumps,
    export_dot,
    graph_from_dict,
    graph_to_dict,
    loads,
    orientation_to_dict,
    system_to_dict,
)
from .orientation import DEFAULT_BUDGET, OrientationSearchResult, find_good_orientations
from .reconstruct import ReconstructedComplex, ReconstructionState, check_input_graph, reconstruct, verify_roundtrip
from .shelling import find_shelling

KIND_ALIASES = {
    "simplex": "simplex_boundary",
    "cross": "cross_polytope",
    "cyclic": "cyclic_polytope",
}


def _read_json(path: str) -> Any:
    if path == "-":
        return loads(sys.stdin.read())
    try:
        with open(path) as fh:
            return loads(fh.read())
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc


def _orientation_payload(result: OrientationSearchResult) -> dict:
    return {
        "M": result.M,
        "complete": result.complete,
        "orientations": [orientation_to_dict(o) for o in result.orientations],
    }


def cmd_gen(args, out: TextIO) -> int:
    kind = KIND_ALIASES.get(args.kind, args.kind)
    c = GeneratorSpec(kind, d=args.d, n=args.n, steps=args.steps, seed=args.seed).build()
    out.write(dumps(complex_to_dict(c)))
    return 0


def cmd_graph(args, out: TextIO) -> int:
    c = complex_from_dict(_read_json(args.input))
    g = facet_ridge_graph(c)
    out.write(export_dot(g) if args.dot else dumps(graph_to_dict(g)))
    return 0


def cmd_orient(args, out: TextIO) -> int:
    g = graph_from_dict(_read_json(args.input))
    mode = "all" if args.all else "one"
    try:
        result = find_good_orientations(g, mode=mode, budget=args.budget, n_jobs=args.jobs)
    except SearchBudgetExceeded as exc:
        partial = getattr(exc, "partial", None)
        if isinstance(partial, OrientationSearchResult):
            out.write(dumps(_orientation_payload(partial)))
        raise
    if args.dot:
        out.write(export_dot(g, result.orientations[0]))
    else:
        out.write(dumps(_orientation_payload(result)))
    return 0


def cmd_shell(args, out: TextIO) -> int:
    c = complex_from_dict(_read_json(args.input))
    s = find_shelling(c, budget=args.budget, seed=args.seed)
    if s is None:
        raise VerificationFailed("complex admits no shelling")
    out.write(dumps({"order": list(s.order), "restriction": [sorted(s.restriction[t]) for t in s.order]}))
    return 0


def cmd_systems(args, out: TextIO) -> int:
    g = graph_from_dict(_read_json(args.input))
    if args.oracle:
        family = unique_compatible_family_oracle(g, budget=args.budget)
        systems = [family[k] for k in family.levels()]
    else:
        if args.k is None:
            raise InvalidInput("--k is required unless --oracle is given")
        systems = enumerate_k_systems(g, args.k, budget=args.budget)
        if not args.all:
            good = find_good_orientations(g, mode="all", budget=args.budget, n_jobs=args.jobs)
            systems = [s for s in systems if is_star_like(g, s, good)]
    out.write(dumps({"systems": [system_to_dict(s) for s in systems]}))
    return 0


def run_report(g: FacetRidgeGraph, result: ReconstructedComplex, search: OrientationSearchResult | None) -> dict:
    report: dict[str, Any] = {
        "input": graph_to_dict(g),
        "input_digest": digest(graph_to_dict(g, with_labels=False)),
        "orientation": orientation_to_dict(result.orientation) if result.orientation else None,
        "peel_order": list(result.peel_order),
        "stages": [
            {
                "depth": st.depth,
                "position": st.position,
                "vertex": st.vertex,
                "k": st.k,
                "peeled": list(st.peeled),
                "star": list(st.star),
            }
            for st in result.traces
        ],
    }
    if search is not None:
        report["M"] = search.M
        if search.complete:
            report["good_orientation_count"] = len(search.orientations)
    return report


def cmd_recon(args, out: TextIO) -> int:
    started = time.perf_counter()
    g = graph_from_dict(_read_json(args.input))
    d = check_input_graph(g)
    search = None
    if d >= 3 or args.all:
        search = find_good_orientations(g, mode="all" if args.all else "one", budget=args.budget, n_jobs=args.jobs)
        result = ReconstructionState(g, search.orientations[0]).run()
    else:
        result = reconstruct(g, budget=args.budget)
    payload = complex_to_dict(result.complex, canonical=False)
    payload["report"] = run_report(g, result, search)
    if args.timing:
        payload["report"]["wall_time"] = round(time.perf_counter() - started, 6)
    out.write(dumps(payload))
    return 0


def _vertex_stars(facets: Sequence[frozenset]) -> set[frozenset[int]]:
    stars: dict[int, set[int]] = {}
    for i, facet in enumerate(facets):
        for v in facet:
            stars.setdefault(v, set()).add(i)
    return {frozenset(s) for s in stars.values()}


def cmd_verify(args, out: TextIO) -> int:
    """Check a reconstruction against ground truth, or round-trip a plain complex."""
    obj = _read_json(args.input)
    if isinstance(obj, dict) and "report" in obj:
        recon = complex_from_dict(obj)
        if args.against in (None, "-"):
            labels = obj["report"]["input"].get("facet_labels")
            if labels is None:
                raise InvalidInput("reconstruction input carries no facet labels; pass --against FILE")
            truth = build_complex(recon.d, labels)
        else:
            truth = complex_from_dict(_read_json(args.against))
        if len(truth.facets) != len(recon.facets):
            ok = False
        else:
            ok = _vertex_stars(truth.facets) == _vertex_stars(recon.facets)
    else:
        ok = verify_roundtrip(complex_from_dict(obj), budget=args.budget)
    out.write(dumps({"ok": ok}))
    if not ok:
        raise VerificationFailed("reconstruction does not match the ground truth")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sphererecon", description="Reconstruct shellable spheres from facet-ridge graphs.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1, help="worker processes for orientation search")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate a sphere fixture")
    p.add_argument("--kind", required=True, choices=sorted(set(GeneratorSpec.KINDS) | set(KIND_ALIASES)))
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--steps", type=int, default=0)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("graph", parents=[common], help="facet-ridge graph of a complex")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("orient", parents=[common], help="good orientations of a graph")
    p.add_argument("input", nargs="?", default="-")
    which = p.add_mutually_exclusive_group()
    which.add_argument("--all", action="store_true")
    which.add_argument("--one", action="store_true")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_orient)

    p = sub.add_parser("shell", parents=[common], help="find a shelling of a complex")
    p.add_argument("input", nargs="?", default="-")
    p.set_defaults(func=cmd_shell)

    p = sub.add_parser("systems", parents=[common], help="k-systems of a graph")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--k", type=int)
    p.add_argument("--all", action="store_true", help="all k-systems, not only star-like ones")
    p.add_argument("--oracle", action="store_true", help="the unique compatible family of star-like systems")
    p.set_defaults(func=cmd_systems)

    p = sub.add_parser("recon", parents=[common], help="reconstruct a complex from its graph")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--all", action="store_true", help="also count all good orientations")
    p.add_argument("--timing", action="store_true", help="record wall time in the report")
    p.set_defaults(func=cmd_recon)

    p = sub.add_parser("verify", parents=[common], help="check a reconstruction or round-trip a complex")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--against", help="ground-truth complex JSON; '-' uses the labels embedded in the report")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except SphereReconError as exc:
        err.write(json.dumps(exc.to_dict(), sort_keys=True) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
