"""Command-line entry point: ``modlat enumerate|graph|invariants|verify|explore``.

Exit status is 0 on success, 1 when a verification check fails and 2 for
usage errors, unreadable or malformed spec files and inputs beyond the
size bounds.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import classify, counting, graph, harness
from .enumeration import enumerate_submodules
from .errors import SizeBoundExceeded, UnsupportedCase
from .kernels import BACKENDS
from .modules import SemisimpleSpec
from .specio import SpecParseError, load_spec, spec_to_data

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
GRAPH_FORMATS = ("dot", "json")


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=harness._jsonable) + "\n"


def _emit(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load(path: str):
    try:
        return load_spec(path)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    except SpecParseError as e:
        where = f"{path}:{e.line}:{e.column}" if e.line is not None else path
        raise UsageError(f"{where}: {e.msg}") from None


def lattice_summary(L, listing: bool = False) -> dict:
    out = {
        "schema_version": harness.SCHEMA_VERSION,
        "spec": spec_to_data(L.ambient),
        "total": len(L),
        "length": L.length,
        "strata": [len(s) for s in L.strata],
    }
    if listing:
        out["submodules"] = [
            {"index": i, "label": L.label(i), "length": int(L.lengths[i]), "order": int(L.sizes[i])}
            for i in range(len(L))
        ]
    return out


def _agree(predicted, computed):
    if predicted is None or computed == graph.SKIPPED:
        return None
    return predicted == computed


def invariants_document(spec, backend: str | None = None) -> dict:
    L = enumerate_submodules(spec)
    rep = graph.compute_invariants(L, backend)
    v = classify.verdicts(L)
    doc = graph.report_dict(L, rep)
    lab = L.label
    omega = rep.omega
    doc["verdicts"] = {
        "connected": v["connected"],
        "edgeless": v["edgeless"],
        "cut_vertices": [lab(x) for x in v["cut_vertices"]],
        "cut_edges": [[lab(a), lab(b)] for a, b in v["cut_edges"]],
        "acyclic": v["acyclic"],
        "bipartite": v["bipartite"],
        "gamma": v["gamma"],
        "chi": v["chi"],
        "k3_free": v["k3_free"],
        "k4_free": v["k4_free"],
        "k5_free": v["k5_free"],
        "planar": v["planar"],
        "planarity_conditions": v["k5_conditions"],
    }
    kfree = lambda k: graph.SKIPPED if omega == graph.SKIPPED else omega < k  # noqa: E731
    doc["agreement"] = {
        "connected": _agree(v["connected"], rep.connected),
        "edgeless": _agree(v["edgeless"], rep.edges == 0),
        "cut_vertices": _agree(list(v["cut_vertices"]), list(rep.cut_vertices)),
        "cut_edges": _agree([list(e) for e in v["cut_edges"]], [list(e) for e in rep.cut_edges]),
        "acyclic": _agree(v["acyclic"], rep.girth is None),
        "bipartite": _agree(v["bipartite"], rep.bipartite),
        "gamma": _agree(v["gamma"], rep.gamma),
        "chi": _agree(v["chi"], rep.chi),
        "k3_free": _agree(v["k3_free"], kfree(3)),
        "k4_free": _agree(v["k4_free"], kfree(4)),
        "k5_free": _agree(v["k5_free"], kfree(5)),
        "planar": _agree(v["planar"], rep.planar),
    }
    if isinstance(spec, SemisimpleSpec) and L.length > 2:
        try:
            doc["formulas"] = {"chi": counting.chromatic_formula(spec)}
        except UnsupportedCase:
            doc["formulas"] = {"chi": None}
    doc["schema_version"] = harness.SCHEMA_VERSION
    doc["spec"] = spec_to_data(spec)
    return doc


# ---------------------------------------------------------------------------
# subcommands


def cmd_enumerate(args) -> int:
    L = enumerate_submodules(_load(args.spec))
    _emit(_dump(lattice_summary(L, args.list)), args.output)
    return EXIT_OK


def cmd_graph(args) -> int:
    if args.format not in GRAPH_FORMATS:
        raise UsageError(f"unsupported format {args.format!r}; choose from {', '.join(GRAPH_FORMATS)}")
    spec = _load(args.spec)
    G = graph.build_graph(enumerate_submodules(spec), args.backend)
    if args.format == "dot":
        text = graph.to_dot(G, str(spec))
    else:
        text = _dump(graph.to_json(G))
    _emit(text, args.output)
    return EXIT_OK


def cmd_invariants(args) -> int:
    _emit(_dump(invariants_document(_load(args.spec), args.backend)), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    only = [i for group in (args.only or []) for i in group]
    unknown = [i for i in only if i not in harness.REGISTRY]
    if unknown:
        raise UsageError(f"unknown check id(s): {', '.join(unknown)}")
    report = harness.run_all(args.suite, only=only or None, jobs=args.jobs)
    _emit(_dump(report), args.output)
    return EXIT_OK if report["status"] == "pass" else EXIT_FAIL


def cmd_explore(args) -> int:
    spec = _load(args.spec)
    if not isinstance(spec, SemisimpleSpec):
        raise UsageError("explore needs a semisimple spec")
    try:
        out = harness.explore_open_case(spec)
    except ValueError as e:
        raise UsageError(str(e)) from None
    _emit(_dump(out), args.output)
    return EXIT_OK


def cmd_checks(args) -> int:
    for cid in sorted(harness.REGISTRY):
        c = harness.REGISTRY[cid]
        sys.stdout.write(f"{cid:<16} {c.title}  [{', '.join(c.families)}]\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="modlat", description="Submodule lattices and their intersection graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_spec(name, help, fn):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("spec", help="YAML module spec file")
        sp.add_argument("-o", "--output", help="write here instead of stdout")
        sp.set_defaults(fn=fn)
        return sp

    sp = with_spec("enumerate", "count submodules by composition length", cmd_enumerate)
    sp.add_argument("--list", action="store_true", help="also list every submodule with its canonical label")

    sp = with_spec("graph", "export the intersection graph", cmd_graph)
    sp.add_argument("--format", default="dot", help="dot (default) or json")
    sp.add_argument("--backend", choices=BACKENDS)

    sp = with_spec("invariants", "graph invariants, structural predictions and their agreement", cmd_invariants)
    sp.add_argument("--backend", choices=BACKENDS)

    with_spec("explore", "exact chromatic number when every multiplicity is even", cmd_explore)

    sp = sub.add_parser("verify", help="run the verification suite")
    sp.add_argument("--suite", choices=harness.SCALES, default="small")
    sp.add_argument("--only", nargs="+", action="append", metavar="ID", help="run only these check ids")
    sp.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker processes (default: all cores)")
    sp.add_argument("-o", "--output")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("checks", help="list registered check ids")
    sp.set_defaults(fn=cmd_checks)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if getattr(args, "jobs", 1) is not None and getattr(args, "jobs", 1) < 1:
        parser.print_usage(sys.stderr)
        sys.stderr.write("modlat: error: --jobs must be at least 1\n")
        return EXIT_USAGE
    try:
        return args.fn(args)
    except UsageError as e:
        sys.stderr.write(f"modlat: error: {e}\n")
        return EXIT_USAGE
    except SizeBoundExceeded as e:
        sys.stderr.write(f"modlat: error: size bound exceeded: {e}\n")
        return EXIT_USAGE
    except ValueError as e:
        # enumeration bounds and bad backend flags surface as ValueError
        sys.stderr.write(f"modlat: error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
