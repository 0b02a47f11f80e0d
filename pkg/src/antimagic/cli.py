"""Command line front end: construct, verify, search, scan.

Machine-readable results go to stdout as JSON (or DOT text for
constructed graphs); diagnostics go to stderr.  Exit codes are a stable
contract:

    0   success; for decisions: antimagic
    1   verified not antimagic (verify)
    2   proven nonexistent: refused by a theorem or exhausted search
    3   search aborted on its node budget
    64  usage error (unknown flags, malformed parameters)
    65  data error (unreadable or malformed input, unsupported distance set)
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .constructions import (
    FALLBACK_SEARCH_BUDGET,
    ConstructionStatus,
    UnsupportedDistanceSetError,
    characterize_star,
    closed_form_forest_labeling,
    construct_homogeneous_forest_labeling,
    construct_pi_forest_labeling,
    star_forest_necessary_condition,
)
from .graph import (
    DistanceSet,
    GraphError,
    Labeling,
    LabelingError,
    OrientedGraph,
    is_admissible,
    verify_labeling,
)
from .io import GraphDocument
from .scan import (
    ABORTED,
    ANTIMAGIC,
    DEFAULT_CELL_BUDGET,
    NOT_ANTIMAGIC,
    format_scan_table,
    scan_orientations,
)
from .search import (
    UNFIT_DISTANCE_SET,
    SearchStatus,
    search_joint_labeling,
    search_labeling,
    vertex_cap,
)
from .stars import (
    ForestSpec,
    StarShape,
    build_forest,
    build_forest_pi,
    build_homogeneous_forest,
    build_star,
)

EXIT_OK = 0
EXIT_NOT_ANTIMAGIC = 1
EXIT_NONE_EXISTS = 2
EXIT_BUDGET = 3
EXIT_USAGE = 64
EXIT_DATA = 65


class _UsageError(Exception):
    """Well-formed command line, unusable parameter combination."""


class _DataError(Exception):
    """Input data that does not parse or is out of the supported domain."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _distance_set(text: str) -> DistanceSet:
    try:
        return DistanceSet.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_distance_flag(parser) -> None:
    parser.add_argument(
        "--d",
        action="append",
        required=True,
        type=_distance_set,
        metavar="DIGITS",
        help="distance set as comma-separated integers, e.g. 0,2; repeatable",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="antimagic",
        description="Construct, verify and search distance-antimagic "
        "labelings of oriented stars and star forests.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    construct = sub.add_parser(
        "construct", help="emit a labeled graph for a parametric family"
    )
    construct.add_argument(
        "--family",
        required=True,
        choices=("star", "mstar", "forest-pi", "forest"),
        help="star K_{1,n}; mstar = m copies of one star; forest-pi = "
        "single-sink-leaf orientation; forest = explicit @t orientations",
    )
    construct.add_argument("--n", type=int, help="leaves per star")
    construct.add_argument("--t", type=int, help="source leaves per star")
    construct.add_argument("--m", type=int, help="number of star copies (mstar)")
    construct.add_argument("--spec", help="forest spec, e.g. 3x3,2x4 or 2x3@1")
    _add_distance_flag(construct)
    construct.add_argument("--format", choices=("json", "dot"), default="json")
    construct.add_argument(
        "--budget", type=int, help="node budget for any search fallback"
    )
    construct.set_defaults(handler=_cmd_construct)

    verify = sub.add_parser("verify", help="check a labeling against distance sets")
    verify.add_argument("graph", help="graph document path, or - for stdin")
    verify.add_argument(
        "--labeling",
        help="labeling as a JSON file path or an inline JSON object; "
        "defaults to the labeling embedded in the document",
    )
    _add_distance_flag(verify)
    verify.set_defaults(handler=_cmd_verify)

    search = sub.add_parser(
        "search", help="backtracking search for antimagic labelings"
    )
    search.add_argument("graph", help="graph document path, or - for stdin")
    _add_distance_flag(search)
    search.add_argument("--mode", choices=("first", "all", "count"), default="first")
    search.add_argument("--budget", type=int, help="node budget; unlimited if absent")
    search.add_argument("--workers", type=int, default=1)
    search.add_argument("--no-prune", dest="prune", action="store_false")
    search.add_argument("--no-symmetry", dest="symmetry", action="store_false")
    search.set_defaults(handler=_cmd_search)

    scan = sub.add_parser(
        "scan", help="decide every orientation class of a forest per distance set"
    )
    scan.add_argument("--spec", required=True, help="forest spec without @t")
    _add_distance_flag(scan)
    scan.add_argument("--budget", type=int, help="node budget per table cell")
    scan.add_argument(
        "--out", help="directory for the JSON table and witness files"
    )
    scan.set_defaults(handler=_cmd_scan)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.handler(args)
    except _UsageError as exc:
        print(f"antimagic {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _DataError as exc:
        print(f"antimagic {args.command}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except UnsupportedDistanceSetError as exc:
        print(f"antimagic {args.command}: {exc}", file=sys.stderr)
        return EXIT_DATA


def run() -> None:
    raise SystemExit(main())


# -- shared plumbing --------------------------------------------------

def _read_document(path_arg: str) -> GraphDocument:
    try:
        if path_arg == "-":
            text = sys.stdin.read()
        else:
            text = Path(path_arg).read_text(encoding="utf-8")
    except OSError as exc:
        raise _DataError(f"cannot read {path_arg!r}: {exc}") from None
    try:
        return GraphDocument.from_json(text)
    except ValueError as exc:
        raise _DataError(f"{path_arg}: {exc}") from None


def _graph_of(doc: GraphDocument, path_arg: str) -> OrientedGraph:
    try:
        return doc.graph()
    except GraphError as exc:
        raise _DataError(f"{path_arg}: {exc}") from None


def _ordered_labels(g: OrientedGraph, labeling) -> dict:
    return {v: labeling[v] for v in g.vertices}


def _print_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _requested_sets(args) -> list[DistanceSet]:
    # Repeated flags may repeat a set; keep the first occurrence only.
    return list(dict.fromkeys(args.d))


# -- construct --------------------------------------------------------

def _cmd_construct(args) -> int:
    sets = _requested_sets(args)
    family = args.family
    if family == "star":
        return _construct_star(args, sets)
    if family == "mstar":
        return _construct_mstar(args, sets)
    if family == "forest-pi":
        return _construct_forest_pi(args, sets)
    return _construct_forest(args, sets)


def _need(args, names: tuple[str, ...]) -> None:
    missing = [f"--{name}" for name in names if getattr(args, name) is None]
    if missing:
        raise _UsageError(
            f"family {args.family} needs {', '.join(missing)}"
        )


def _refuse(payload: dict, code: int) -> int:
    _print_json(payload)
    return code


def _emit_graph(args, g, labeling, sets, method: str, params: dict) -> int:
    metadata = {
        "family": args.family,
        **params,
        "distance_sets": [str(D) for D in sets],
        "method": method,
    }
    doc = GraphDocument.from_graph(g, labeling, metadata)
    if args.format == "dot":
        sys.stdout.write(doc.to_dot(sets))
    else:
        sys.stdout.write(doc.to_json())
    return EXIT_OK


def _fit_or_search(args, g, sets, candidates, budget, params: dict) -> int:
    """Emit one labeling antimagic under every requested set.

    Candidates are per-set labelings from the family machinery; the
    first one passing all sets wins.  Otherwise the joint oracle decides
    the multi-set instance.
    """
    for candidate in candidates:
        if candidate is None:
            continue
        if all(verify_labeling(g, candidate, D).antimagic for D in sets):
            return _emit_graph(args, g, candidate, sets, "construction", params)
    result = search_joint_labeling(g, sets, mode="first", budget=budget)
    if result.status is SearchStatus.FOUND:
        for D in sets:
            if not verify_labeling(g, result.witness, D).antimagic:
                raise RuntimeError("search returned an invalid witness")
        return _emit_graph(args, g, result.witness, sets, "search", params)
    if result.status is SearchStatus.EXHAUSTED:
        return _refuse(
            {
                "status": "search-exhausted",
                "distance_sets": [str(D) for D in sets],
                "nodes_explored": result.nodes_explored,
            },
            EXIT_NONE_EXISTS,
        )
    return _refuse(
        {
            "status": "search-aborted",
            "distance_sets": [str(D) for D in sets],
            "nodes_explored": result.nodes_explored,
        },
        EXIT_BUDGET,
    )


def _construct_star(args, sets) -> int:
    _need(args, ("n", "t"))
    try:
        shape = StarShape(n=args.n, t=args.t)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    g = build_star(shape)
    params = {"n": args.n, "t": args.t}
    candidates = []
    for D in sets:
        decision = characterize_star(args.n, args.t, D)
        if not decision.antimagic:
            return _refuse(
                {
                    "status": "not-antimagic",
                    "distance_set": str(D),
                    "reason": decision.reason.value,
                },
                EXIT_NONE_EXISTS,
            )
        candidates.append(decision.witness)
    return _fit_or_search(args, g, sets, candidates, args.budget, params)


def _construct_mstar(args, sets) -> int:
    _need(args, ("m", "n", "t"))
    try:
        shape = StarShape(n=args.n, t=args.t)
        g = build_homogeneous_forest(args.m, shape)
    except (ValueError, GraphError) as exc:
        raise _UsageError(str(exc)) from None
    budget = args.budget if args.budget is not None else FALLBACK_SEARCH_BUDGET
    params = {"m": args.m, "n": args.n, "t": args.t}
    candidates = []
    for D in sets:
        outcome = construct_homogeneous_forest_labeling(
            args.m, args.n, args.t, D, search_budget=budget
        )
        if outcome.status is ConstructionStatus.NOT_ANTIMAGIC:
            return _refuse(
                {
                    "status": "not-antimagic",
                    "distance_set": str(D),
                    "reason": outcome.reason.value,
                },
                EXIT_NONE_EXISTS,
            )
        if outcome.status is ConstructionStatus.SEARCH_EXHAUSTED:
            return _refuse(
                {
                    "status": "search-exhausted",
                    "distance_set": str(D),
                    "nodes_explored": outcome.search.nodes_explored,
                },
                EXIT_NONE_EXISTS,
            )
        if outcome.status is ConstructionStatus.SEARCH_ABORTED:
            return _refuse(
                {
                    "status": "search-aborted",
                    "distance_set": str(D),
                    "nodes_explored": outcome.search.nodes_explored,
                },
                EXIT_BUDGET,
            )
        candidates.append(outcome.labeling)
    return _fit_or_search(args, g, sets, candidates, budget, params)


def _construct_forest_pi(args, sets) -> int:
    _need(args, ("spec",))
    try:
        spec = ForestSpec.parse(args.spec, pi=True)
        g = build_forest_pi(spec)
    except (ValueError, GraphError) as exc:
        raise _UsageError(str(exc)) from None
    params = {"spec": args.spec, "pi": True}
    for D in sets:
        if not is_admissible(g, D):
            return _refuse(
                {
                    "status": "not-antimagic",
                    "distance_set": str(D),
                    "reason": UNFIT_DISTANCE_SET,
                },
                EXIT_NONE_EXISTS,
            )
    # One labeling serves every supported set; the fit check re-verifies.
    candidates = [construct_pi_forest_labeling(spec, sets[0])]
    return _fit_or_search(args, g, sets, candidates, args.budget, params)


def _construct_forest(args, sets) -> int:
    _need(args, ("spec",))
    try:
        spec = ForestSpec.parse(args.spec)
        orientation = tuple(group.source_tuple() for group in spec.groups)
    except ValueError as exc:
        raise _UsageError(
            f"{exc} (family forest needs @t on every term, e.g. 2x3@1)"
            if "unspecified" in str(exc)
            else str(exc)
        ) from None
    try:
        g = build_forest(spec, orientation)
    except GraphError as exc:
        raise _UsageError(str(exc)) from None
    budget = args.budget
    if budget is None and len(g) > vertex_cap():
        budget = DEFAULT_CELL_BUDGET
    params = {
        "spec": args.spec,
        "orientation": [list(part) for part in orientation],
    }
    candidates = []
    for D in sets:
        if not star_forest_necessary_condition(D):
            return _refuse(
                {
                    "status": "not-antimagic",
                    "distance_set": str(D),
                    "reason": "MIN_D_POSITIVE",
                },
                EXIT_NONE_EXISTS,
            )
        if not is_admissible(g, D):
            return _refuse(
                {
                    "status": "not-antimagic",
                    "distance_set": str(D),
                    "reason": UNFIT_DISTANCE_SET,
                },
                EXIT_NONE_EXISTS,
            )
        candidates.append(closed_form_forest_labeling(spec, orientation, D))
    return _fit_or_search(args, g, sets, candidates, budget, params)


# -- verify -----------------------------------------------------------

def _resolve_labeling(args, doc: GraphDocument) -> Labeling:
    raw = args.labeling
    if raw is None:
        if doc.labeling is None:
            raise _DataError(
                "the document carries no labeling and --labeling was not given"
            )
        return doc.labeling
    if raw.lstrip().startswith("{"):
        text = raw
    else:
        try:
            text = Path(raw).read_text(encoding="utf-8")
        except OSError as exc:
            raise _DataError(f"cannot read labeling {raw!r}: {exc}") from None
    try:
        mapping = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _DataError(f"labeling is not valid JSON: {exc}") from None
    if not isinstance(mapping, dict) or not all(
        isinstance(v, str) and isinstance(label, int)
        for v, label in mapping.items()
    ):
        raise _DataError("labeling must be a JSON object mapping vertices to integers")
    return Labeling(mapping)


def _cmd_verify(args) -> int:
    sets = _requested_sets(args)
    doc = _read_document(args.graph)
    g = _graph_of(doc, args.graph)
    labeling = _resolve_labeling(args, doc)
    try:
        labeling.validate_for(g)
    except LabelingError as exc:
        raise _DataError(str(exc)) from None
    reports = []
    overall = True
    for D in sets:
        report = verify_labeling(g, labeling, D)
        overall = overall and report.antimagic
        reports.append(
            {
                "distance_set": str(D),
                "antimagic": report.antimagic,
                "weights": {v: report.weights[v] for v in g.vertices},
                "collisions": [list(pair) for pair in report.collisions],
            }
        )
    _print_json({"antimagic": overall, "reports": reports})
    return EXIT_OK if overall else EXIT_NOT_ANTIMAGIC


# -- search -----------------------------------------------------------

def _cmd_search(args) -> int:
    sets = _requested_sets(args)
    if args.workers < 1:
        raise _UsageError("--workers must be at least 1")
    doc = _read_document(args.graph)
    g = _graph_of(doc, args.graph)
    try:
        if len(sets) == 1:
            result = search_labeling(
                g,
                sets[0],
                mode=args.mode,
                budget=args.budget,
                prune=args.prune,
                symmetry=args.symmetry,
                workers=args.workers,
            )
        else:
            result = search_joint_labeling(
                g,
                sets,
                mode=args.mode,
                budget=args.budget,
                prune=args.prune,
                symmetry=args.symmetry,
                workers=args.workers,
            )
    except ValueError as exc:
        # Exhaustive modes refuse graphs above the vertex cap.
        raise _UsageError(str(exc)) from None
    payload = {
        "status": result.status.value,
        "distance_sets": [str(D) for D in sets],
        "mode": args.mode,
        "witness": (
            _ordered_labels(g, result.witness) if result.witness is not None else None
        ),
        "count": result.count,
        "nodes_explored": result.nodes_explored,
        "symmetry_order": result.symmetry_order,
        "shortcut": result.shortcut,
    }
    if args.mode == "all" and result.labelings is not None:
        payload["labelings"] = [
            _ordered_labels(g, labeling) for labeling in result.labelings
        ]
    _print_json(payload)
    if result.status is SearchStatus.FOUND:
        return EXIT_OK
    if result.status is SearchStatus.EXHAUSTED:
        return EXIT_NONE_EXISTS
    return EXIT_BUDGET


# -- scan -------------------------------------------------------------

def _cmd_scan(args) -> int:
    sets = _requested_sets(args)
    try:
        spec = ForestSpec.parse(args.spec)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    if any(group.sources is not None for group in spec.groups):
        raise _UsageError("scan enumerates every orientation; drop @t from the spec")
    if spec.star_count < 2:
        raise _UsageError("a star forest needs at least two stars")
    rows = scan_orientations(spec, sets, budget=args.budget)
    table = format_scan_table(rows)
    print(table)
    if args.out is not None:
        _write_scan_report(args.out, args.spec, spec, sets, rows, table)
    aborted = any(
        verdict.status == ABORTED
        for row in rows
        for verdict in row.verdicts.values()
    )
    return EXIT_BUDGET if aborted else EXIT_OK


def _write_scan_report(out_arg, spec_text, spec, sets, rows, table) -> None:
    out = Path(out_arg)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise _DataError(f"cannot create {out_arg!r}: {exc}") from None
    (out / "scan.txt").write_text(table + "\n", encoding="utf-8")
    json_rows = []
    for r, row in enumerate(rows):
        cells = {}
        for c, D in enumerate(sets):
            verdict = row.verdicts[D]
            cell = {
                "antimagic": {ANTIMAGIC: True, NOT_ANTIMAGIC: False}.get(
                    verdict.status
                ),
                "status": verdict.status,
                "method": verdict.method,
                "nodes_explored": verdict.nodes_explored,
                "witness": None,
            }
            if verdict.witness is not None:
                name = f"witness-{r:03d}-{c}.json"
                g = build_forest(spec, row.orientation)
                doc = GraphDocument.from_graph(
                    g,
                    verdict.witness,
                    {
                        "spec": spec_text,
                        "orientation": [list(part) for part in row.orientation],
                        "distance_set": str(D),
                        "method": verdict.method,
                    },
                )
                (out / name).write_text(doc.to_json(), encoding="utf-8")
                cell["witness"] = name
            cells[str(D)] = cell
        json_rows.append(
            {
                "orientation": [list(part) for part in row.orientation],
                "cells": cells,
            }
        )
    payload = {
        "spec": spec_text,
        "distance_sets": [str(D) for D in sets],
        "rows": json_rows,
    }
    (out / "scan.json").write_text(
        json.dumps(payload, indent=2) + "\n", encoding="utf-8"
    )
