"""Command-line front end: file formats, solver dispatch, result emission.

Graphs are read in DIMACS edge format (`p edge <n> <m>` then `e <u> <v>`
lines, 1-indexed, `c` comments ignored).  Decompositions are line-based:
`n <id> internal <left> <right>` or `n <id> leaf <vertex>`, first listed
node is the root.  Colorings are `<vertex> <color>` lines, 1-indexed.

Results go to standard output as a JSON document with sorted keys.  Exit
codes: 0 = ran (the answer is inside the document), 2 = input error,
3 = capacity refusal.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from . import bcol_dp, fall_dp, oracle, vc_solver
from .decomposition import (
    RootedBranchDecomposition,
    best_decomposition,
    module_width,
    validate,
)
from .errors import CapacityError, InputError, StructuralError
from .graph import Coloring, Graph

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_CAPACITY = 3


# --- file formats -----------------------------------------------------------


def parse_graph_text(text: str) -> Graph:
    """DIMACS edge format to Graph (vertex ids shifted to 0-based)."""
    n = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise InputError(f"line {lineno}: duplicate problem line")
            if len(parts) != 4 or parts[1] != "edge":
                raise InputError(f"line {lineno}: malformed problem line {line!r}")
            try:
                n = int(parts[2])
                int(parts[3])
            except ValueError:
                raise InputError(f"line {lineno}: malformed problem line {line!r}")
            if n < 0:
                raise InputError(f"line {lineno}: negative vertex count")
        elif parts[0] == "e":
            if n is None:
                raise InputError(f"line {lineno}: edge line before problem line")
            if len(parts) != 3:
                raise InputError(f"line {lineno}: malformed edge line {line!r}")
            try:
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
            except ValueError:
                raise InputError(f"line {lineno}: malformed edge line {line!r}")
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"line {lineno}: vertex out of range 1..{n}")
            if u == v:
                raise InputError(f"line {lineno}: self-loop at vertex {u + 1}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InputError(f"line {lineno}: duplicate edge")
            seen.add(key)
            edges.append((u, v))
        else:
            raise InputError(f"line {lineno}: unrecognized line {line!r}")
    if n is None:
        raise InputError("missing problem line")
    return Graph(n, edges)


def format_graph(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.edge_count}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_graph(path: str) -> Graph:
    return parse_graph_text(_read(path))


def parse_decomposition_text(text: str, g: Graph) -> RootedBranchDecomposition:
    """Decomposition file to a validated RootedBranchDecomposition."""
    entries: dict[int, tuple] = {}
    order: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] != "n":
            raise InputError(f"line {lineno}: unrecognized line {line!r}")
        try:
            node_id = int(parts[1])
        except (IndexError, ValueError):
            raise InputError(f"line {lineno}: malformed node line {line!r}")
        if node_id in entries:
            raise InputError(f"line {lineno}: duplicate node id {node_id}")
        if len(parts) >= 3 and parts[2] == "internal":
            if len(parts) != 5:
                raise InputError(
                    f"line {lineno}: not binary: internal nodes take exactly two children"
                )
            try:
                entries[node_id] = ("internal", int(parts[3]), int(parts[4]))
            except ValueError:
                raise InputError(f"line {lineno}: malformed node line {line!r}")
        elif len(parts) >= 3 and parts[2] == "leaf":
            if len(parts) != 4:
                raise InputError(f"line {lineno}: malformed leaf line {line!r}")
            try:
                vertex = int(parts[3]) - 1
            except ValueError:
                raise InputError(f"line {lineno}: malformed leaf line {line!r}")
            entries[node_id] = ("leaf", vertex)
        else:
            raise InputError(f"line {lineno}: malformed node line {line!r}")
        order.append(node_id)
    if not order:
        raise InputError("decomposition file lists no nodes")
    dense = {node_id: i for i, node_id in enumerate(order)}
    children: list[tuple[int, int] | None] = [None] * len(order)
    leaf_vertex: dict[int, int] = {}
    for node_id, entry in entries.items():
        if entry[0] == "internal":
            for child in entry[1:]:
                if child not in dense:
                    raise InputError(f"node {node_id}: unknown child {child}")
            children[dense[node_id]] = (dense[entry[1]], dense[entry[2]])
        else:
            leaf_vertex[dense[node_id]] = entry[1]
    try:
        d = RootedBranchDecomposition(children, leaf_vertex, root=0)
    except StructuralError as exc:
        raise InputError(f"invalid decomposition: {exc}") from exc
    report = validate(g, d)
    if not report.ok:
        raise InputError("invalid decomposition: " + "; ".join(report.problems))
    return d


def format_decomposition(d: RootedBranchDecomposition) -> str:
    """Serialize with the root first, children before use is not required."""
    lines = []
    stack = [d.root]
    while stack:
        t = stack.pop()
        if d.is_leaf(t):
            lines.append(f"n {t} leaf {d.leaf_vertex(t) + 1}")
        else:
            left, right = d.children(t)
            lines.append(f"n {t} internal {left} {right}")
            stack.append(right)
            stack.append(left)
    return "\n".join(lines) + "\n"


def parse_decomposition(path: str, g: Graph) -> RootedBranchDecomposition:
    return parse_decomposition_text(_read(path), g)


def parse_coloring_text(text: str, g: Graph) -> Coloring:
    assignment: dict[int, int] = {}
    max_color = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InputError(f"line {lineno}: malformed coloring line {line!r}")
        try:
            v, color = int(parts[0]) - 1, int(parts[1])
        except ValueError:
            raise InputError(f"line {lineno}: malformed coloring line {line!r}")
        if not (0 <= v < g.n):
            raise InputError(f"line {lineno}: vertex out of range 1..{g.n}")
        if color < 1:
            raise InputError(f"line {lineno}: colors must be positive")
        if v in assignment:
            raise InputError(f"line {lineno}: vertex {v + 1} colored twice")
        assignment[v] = color
        max_color = max(max_color, color)
    missing = [v + 1 for v in g.vertices() if v not in assignment]
    if missing:
        raise InputError(f"coloring misses vertices {missing}")
    return Coloring(tuple(assignment[v] for v in g.vertices()), max(max_color, 1))


def parse_coloring(path: str, g: Graph) -> Coloring:
    return parse_coloring_text(_read(path), g)


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


# --- result emission ---------------------------------------------------------


def _witness_json(coloring: Coloring, b_vertices) -> dict:
    return {
        "coloring": [[v + 1, coloring.colors[v]] for v in range(coloring.n)],
        "b_vertices": sorted(v + 1 for v in b_vertices),
    }


def _emit(result: dict) -> None:
    print(json.dumps(result, sort_keys=True, indent=2))


def _stats(start: float, nodes=None, max_table=None, width=None) -> dict:
    return {
        "decomposition_nodes": nodes,
        "max_table_size": max_table,
        "module_width": width,
        "wall_time_s": round(time.perf_counter() - start, 6),
    }


# --- solver plumbing ---------------------------------------------------------


def _bounded_cover(g: Graph, limit: int):
    """Some vertex cover of size <= limit, or None if none exists."""
    edges = list(g.edges())

    def search(remaining, budget, chosen):
        if not remaining:
            return chosen
        if budget == 0:
            return None
        u, v = remaining[0]
        for w in (u, v):
            found = search(
                [e for e in remaining if w not in e], budget - 1, chosen | {w}
            )
            if found is not None:
                return found
        return None

    return search(edges, limit, frozenset())


def _load_decomposition(args, g: Graph) -> RootedBranchDecomposition:
    if getattr(args, "dec", None):
        return parse_decomposition(args.dec, g)
    return best_decomposition(g, getattr(args, "dec_effort", "heuristic"))


def _resolve_solver(args, g: Graph, d: RootedBranchDecomposition | None) -> str:
    if args.solver:
        return args.solver
    # Prefer the tractable exponent: fall back to the vertex-cover solver
    # when the decomposition is wide but the cover is small.
    if d is not None and module_width(g, d) > 8:
        if _bounded_cover(g, 12) is not None:
            return "vc"
    return "cw"


SOLVER_NAMES = {"cw": "cw-dp", "vc": "vc", "oracle": "oracle"}


# --- command handlers ---------------------------------------------------------


def _cmd_bcol(args) -> dict:
    g = parse_graph(args.graph)
    k = args.k
    if k < 1:
        raise InputError(f"k must be positive, got {k}")
    start = time.perf_counter()
    d = None
    solver = args.solver
    if solver != "oracle":
        if solver in (None, "cw"):
            d = _load_decomposition(args, g) if g.n else None
        solver = _resolve_solver(args, g, d)
    witness = None
    if k > g.n or g.n == 0:
        answer = False
        stats = _stats(start)
    elif solver == "cw":
        table = bcol_dp.compute_tables(g, d, k, witness=args.witness)
        answer = bcol_dp.accepting_signature(k) in table.tables[d.root]
        if answer and args.witness:
            partial = bcol_dp.reconstruct_witness(table, g, d, k)
            witness = _checked_b_witness(g, partial)
        stats = _stats(start, d.node_count, table.max_table_size(), module_width(g, d))
    elif solver == "vc":
        if args.witness:
            partial = vc_solver.solve_bcoloring_vc_witness(g, k)
            answer = partial is not None
            if partial is not None:
                witness = _checked_b_witness(g, partial)
        else:
            answer = vc_solver.solve_bcoloring_vc(g, k)
        stats = _stats(start)
    else:
        coloring = oracle.brute_force_bcoloring(g, k)
        answer = coloring is not None
        if coloring is not None and args.witness:
            if not oracle.is_b_coloring(g, coloring):
                raise StructuralError("oracle witness failed verification")
            witness = _witness_json(coloring, _b_vertices_of(g, coloring))
        stats = _stats(start)
    return {
        "problem": "bcol",
        "k": k,
        "answer": answer,
        "solver": SOLVER_NAMES[solver],
        "witness": witness,
        "stats": stats,
    }


def _checked_b_witness(g: Graph, partial: bcol_dp.PartialBColoring) -> dict:
    coloring = partial.to_coloring(g.n)
    if not oracle.is_b_coloring(g, coloring):
        raise StructuralError("witness failed verification before emission")
    return _witness_json(coloring, partial.b_vertices)


def _b_vertices_of(g: Graph, coloring: Coloring) -> list[int]:
    """One b-vertex per class of a verified b-coloring."""
    picks = []
    all_colors = set(range(1, coloring.k + 1))
    for i, cls in enumerate(coloring.classes(), start=1):
        others = all_colors - {i}
        picks.append(
            min(
                v
                for v in cls
                if others <= {coloring.colors[u] for u in g.neighbors(v)}
            )
        )
    return picks


def _cmd_bchrom(args) -> dict:
    g = parse_graph(args.graph)
    if g.n < 1:
        raise InputError("b-chromatic number needs at least one vertex")
    start = time.perf_counter()
    d = None
    solver = args.solver
    if solver != "oracle":
        if solver in (None, "cw"):
            d = _load_decomposition(args, g)
        solver = _resolve_solver(args, g, d)
    if solver == "cw":
        best = bcol_dp.b_chromatic_number(g, d)
        stats = _stats(start, d.node_count, None, module_width(g, d))
    elif solver == "vc":
        best = 0
        for k in range(1, g.max_degree() + 2):
            if vc_solver.solve_bcoloring_vc(g, k):
                best = k
        stats = _stats(start)
    else:
        best = oracle.brute_force_chi_b(g)
        stats = _stats(start)
    witness = None
    if args.witness and best >= 1:
        if solver == "cw":
            partial = bcol_dp.solve_bcoloring_witness(g, d, best)
            witness = _checked_b_witness(g, partial)
        elif solver == "vc":
            partial = vc_solver.solve_bcoloring_vc_witness(g, best)
            witness = _checked_b_witness(g, partial)
        else:
            coloring = oracle.brute_force_bcoloring(g, best)
            witness = _witness_json(coloring, _b_vertices_of(g, coloring))
    return {
        "problem": "bchrom",
        "k": None,
        "answer": best,
        "solver": SOLVER_NAMES[solver],
        "witness": witness,
        "stats": stats,
    }


def _cmd_fallcol(args) -> dict:
    g = parse_graph(args.graph)
    k = args.k
    if k < 1:
        raise InputError(f"k must be positive, got {k}")
    if args.solver == "vc":
        raise InputError("fall coloring has no vertex-cover solver")
    solver = args.solver or "cw"
    start = time.perf_counter()
    witness = None
    if k > g.n or g.n == 0:
        answer = False
        stats = _stats(start)
    elif solver == "cw":
        d = _load_decomposition(args, g)
        if args.witness:
            coloring = fall_dp.solve_fallcoloring_witness(g, d, k)
            answer = coloring is not None
            if coloring is not None:
                witness = _checked_fall_witness(g, coloring)
        else:
            answer = fall_dp.solve_fallcoloring(g, d, k)
        stats = _stats(start, d.node_count, None, module_width(g, d))
    else:
        coloring = oracle.brute_force_fallcoloring(g, k)
        answer = coloring is not None
        if coloring is not None and args.witness:
            witness = _checked_fall_witness(g, coloring)
        stats = _stats(start)
    return {
        "problem": "fallcol",
        "k": k,
        "answer": answer,
        "solver": SOLVER_NAMES[solver],
        "witness": witness,
        "stats": stats,
    }


def _checked_fall_witness(g: Graph, coloring: Coloring) -> dict:
    if not oracle.is_fall_coloring(g, coloring):
        raise StructuralError("witness failed verification before emission")
    return _witness_json(coloring, range(g.n))


def _cmd_decompose(args) -> dict:
    g = parse_graph(args.graph)
    start = time.perf_counter()
    d = best_decomposition(g, args.effort)
    width = module_width(g, d)
    with open(args.out, "w", encoding="utf-8") as handle:
        handle.write(format_decomposition(d))
    return {
        "problem": "decompose",
        "k": None,
        "answer": width,
        "solver": args.effort,
        "witness": None,
        "stats": _stats(start, d.node_count, None, width),
    }


def _cmd_verify(args) -> dict:
    g = parse_graph(args.graph)
    coloring = parse_coloring(args.coloring, g)
    start = time.perf_counter()
    if args.mode == "b":
        answer = oracle.is_b_coloring(g, coloring)
    else:
        answer = oracle.is_fall_coloring(g, coloring)
    return {
        "problem": "verify",
        "k": coloring.k,
        "answer": answer,
        "solver": "oracle",
        "witness": None,
        "stats": _stats(start),
    }


def _cmd_selftest(args) -> dict:
    if args.n_max < 1:
        raise InputError("--n-max must be at least 1")
    if args.n_max > oracle.DEFAULT_CAPACITY:
        raise CapacityError(
            f"selftest limited to n <= {oracle.DEFAULT_CAPACITY} by the oracle"
        )
    if args.trials < 1:
        raise InputError("--trials must be at least 1")
    rng = random.Random(args.seed)
    start = time.perf_counter()
    checks = 0
    witnesses = 0
    mismatches: list[dict] = []
    for trial in range(args.trials):
        n = rng.randint(1, args.n_max)
        p = rng.uniform(0.15, 0.85)
        edges = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if rng.random() < p
        ]
        g = Graph(n, edges)
        d = best_decomposition(g, "heuristic")
        for k in range(1, n + 1):
            expected = oracle.brute_force_bcoloring(g, k) is not None
            got_cw = bcol_dp.solve_bcoloring(g, d, k)
            got_vc = vc_solver.solve_bcoloring_vc(g, k)
            checks += 2
            if got_cw != expected or got_vc != expected:
                mismatches.append(
                    {
                        "trial": trial,
                        "problem": "bcol",
                        "edges": edges,
                        "k": k,
                        "oracle": expected,
                        "cw": got_cw,
                        "vc": got_vc,
                    }
                )
            if expected:
                partial = bcol_dp.solve_bcoloring_witness(g, d, k)
                if partial is None or not oracle.is_b_coloring(
                    g, partial.to_coloring(g.n)
                ):
                    mismatches.append(
                        {"trial": trial, "problem": "bcol-witness", "k": k}
                    )
                witnesses += 1
            expected_fall = oracle.brute_force_fallcoloring(g, k) is not None
            got_fall = fall_dp.solve_fallcoloring(g, d, k)
            checks += 1
            if got_fall != expected_fall:
                mismatches.append(
                    {
                        "trial": trial,
                        "problem": "fallcol",
                        "edges": edges,
                        "k": k,
                        "oracle": expected_fall,
                        "cw": got_fall,
                    }
                )
    return {
        "problem": "selftest",
        "k": None,
        "answer": not mismatches,
        "solver": "all",
        "witness": None,
        "mismatches": mismatches,
        "stats": {
            "checks": checks,
            "trials": args.trials,
            "seed": args.seed,
            "witnesses_verified": witnesses,
            "wall_time_s": round(time.perf_counter() - start, 6),
        },
    }


# --- argument parsing ----------------------------------------------------------


def _add_dec_arguments(sub) -> None:
    group = sub.add_mutually_exclusive_group()
    group.add_argument("--dec", help="decomposition file to use")
    group.add_argument(
        "--dec-effort",
        choices=["exact-tiny", "heuristic"],
        default="heuristic",
        help="how hard to search for a decomposition (default: heuristic)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bcoloring",
        description="Exact b-coloring, b-chromatic number, and fall coloring solvers.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    bcol = subs.add_parser("bcol", help="decide b-coloring with k colors")
    bcol.add_argument("--graph", required=True)
    bcol.add_argument("--k", type=int, required=True)
    _add_dec_arguments(bcol)
    bcol.add_argument("--witness", action="store_true")
    bcol.add_argument("--solver", choices=["cw", "vc", "oracle"])
    bcol.set_defaults(handler=_cmd_bcol)

    bchrom = subs.add_parser("bchrom", help="compute the b-chromatic number")
    bchrom.add_argument("--graph", required=True)
    _add_dec_arguments(bchrom)
    bchrom.add_argument("--witness", action="store_true")
    bchrom.add_argument("--solver", choices=["cw", "vc", "oracle"])
    bchrom.set_defaults(handler=_cmd_bchrom)

    fallcol = subs.add_parser("fallcol", help="decide fall coloring with k colors")
    fallcol.add_argument("--graph", required=True)
    fallcol.add_argument("--k", type=int, required=True)
    _add_dec_arguments(fallcol)
    fallcol.add_argument("--witness", action="store_true")
    fallcol.add_argument("--solver", choices=["cw", "vc", "oracle"])
    fallcol.set_defaults(handler=_cmd_fallcol)

    decompose = subs.add_parser("decompose", help="build and save a decomposition")
    decompose.add_argument("--graph", required=True)
    decompose.add_argument(
        "--effort", choices=["exact-tiny", "heuristic"], default="heuristic"
    )
    decompose.add_argument("--out", required=True)
    decompose.set_defaults(handler=_cmd_decompose)

    verify = subs.add_parser("verify", help="check a coloring file")
    verify.add_argument("--graph", required=True)
    verify.add_argument("--coloring", required=True)
    verify.add_argument("--mode", choices=["b", "fall"], required=True)
    verify.set_defaults(handler=_cmd_verify)

    selftest = subs.add_parser(
        "selftest", help="random sweep comparing all solvers against the oracle"
    )
    selftest.add_argument("--n-max", type=int, default=7)
    selftest.add_argument("--trials", type=int, default=25)
    selftest.add_argument("--seed", type=int, default=0)
    selftest.set_defaults(handler=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.handler(args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (InputError, StructuralError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    _emit(result)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
