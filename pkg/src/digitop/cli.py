"""Command-line interface.

Exit codes: 0 accepted, 1 usage error, 2 malformed input, 3 refuted
check, 4 budget or cap exceeded, 5 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import homotopy, invariants, lattice, partition, recognition
from .errors import BudgetExceeded, CapExceeded, DigitopError, GraphError, InconsistencyError, PreconditionError
from .io import FormatError, dumps, emit_graph, export_dot, parse_graph

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_REFUTED, EXIT_BUDGET, EXIT_INTERNAL = range(6)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read(path: str | None) -> bytes:
    if path in (None, "-"):
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str | None):
    return parse_graph(_read(path))


def _load_json_arg(text: str):
    """A JSON literal, or the name of a file holding one."""
    if not text.lstrip().startswith(("{", "[")) and Path(text).is_file():
        text = Path(text).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON argument at column {exc.colno}: {exc.msg}") from None


def _load_vertex_set(path: str) -> frozenset[int]:
    """A JSON array of ids, or any graph input whose vertex ids are taken."""
    raw = _read(path).decode()
    head = raw.lstrip()[:1]
    if head == "[":
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON in {path}: {exc.msg}") from None
        if all(isinstance(x, int) and not isinstance(x, bool) for x in data):
            return frozenset(data)
    return frozenset(parse_graph(raw).vertices)


def _window_spec(text: str, rule: str) -> lattice.WindowSpec:
    data = _load_json_arg(text)
    if isinstance(data, list):
        data = {"bounds": data}
    try:
        return lattice.WindowSpec.from_json(data, rule)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad window spec: {exc}") from None


def _emit(obj) -> None:
    sys.stdout.write((obj if isinstance(obj, str) else dumps(obj)) + "\n")


# -- verbs ---------------------------------------------------------------


def cmd_gen(args) -> int:
    kind, param = args.kind, args.param
    if kind == "minimal-sphere":
        try:
            n = int(param)
        except ValueError:
            raise UsageError("minimal-sphere needs an integer dimension") from None
        if n < 0:
            raise UsageError("dimension must be non-negative")
        g = recognition.minimal_sphere(n)
    elif kind in ("zn-window", "yn-window"):
        rule = lattice.NORMAL if kind == "zn-window" else lattice.COMPLETE
        g = lattice.generate_window(_window_spec(param, rule), args.max_window_points)
    elif kind == "box-boundary":
        spec = _window_spec(param, lattice.NORMAL)
        ids = lattice.box_boundary_sphere(spec.bounds, spec)
        g = lattice.generate_window(spec, args.max_window_points).induced(ids)
    elif kind == "torus-quotient":
        try:
            period = int(param)
        except ValueError:
            raise UsageError("torus-quotient needs an integer period") from None
        g = lattice.torus_quotient(period)
    else:
        raise UsageError(f"unknown generator {kind!r}")
    _emit(emit_graph(g))
    return EXIT_OK


def cmd_check(args) -> int:
    g = _load_graph(args.input)
    if args.property == "contractible":
        v = homotopy.is_contractible(g)
        _emit(v.to_json())
        return EXIT_OK if v else EXIT_REFUTED
    if args.property == "sphere":
        v = recognition.classify_sphere(g)
    elif args.property == "manifold":
        v = recognition.is_normal_manifold(g)
    else:
        if args.boundary:
            v = recognition.is_normal_disk(g, _load_vertex_set(args.boundary))
        else:
            v = recognition.disk_boundary_heuristic(g)
    _emit(v.to_json())
    return EXIT_OK if v.accepted else EXIT_REFUTED


def cmd_reduce(args) -> int:
    g = _load_graph(args.input)
    if args.to:
        trace = homotopy.reduce_to_subgraph(g, _load_vertex_set(args.to))
    else:
        v = homotopy.is_contractible(g)
        if not v:
            _emit(v.to_json())
            return EXIT_REFUTED
        trace = v.trace
    _emit(trace.to_json())
    return EXIT_OK


def cmd_partition(args) -> int:
    g = _load_graph(args.input)
    sep = partition.partition_by_surface(g, _load_vertex_set(args.surface))
    _emit(sep.to_json())
    return EXIT_OK if sep else EXIT_REFUTED


def cmd_jordan(args) -> int:
    surface = _load_graph(args.surface if args.surface else args.input)
    coords = lattice.coordinates(surface)
    if args.window:
        spec = _window_spec(args.window, lattice.NORMAL)
    else:
        spec = lattice.box_around(coords.values(), args.margin)
    window = lattice.generate_window(spec, args.max_window_points)
    s = [spec.index(coords[v]) for v in surface.vertices]
    res = partition.jordan_partition(window, s, args.margin)
    out = {"window": spec.to_json()}
    out.update(res.to_json())
    _emit(out)
    return EXIT_OK if res.ok else EXIT_REFUTED


def cmd_invariants(args) -> int:
    g = _load_graph(args.input)
    _emit(invariants.betti_numbers(g, args.coefficients, args.max_cliques).to_json())
    return EXIT_OK


def cmd_export(args) -> int:
    g = _load_graph(args.input)
    deco = None
    if args.partition:
        try:
            data = json.loads(_read(args.partition))
            deco = partition.PartitionResult.from_json(data)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON in {args.partition}: {exc.msg}") from None
        except (KeyError, TypeError) as exc:
            raise FormatError(f"bad partition file: missing {exc}") from None
    elif args.boundary:
        b = _load_vertex_set(args.boundary)
        deco = recognition.DiskDecomposition(b, frozenset(g.vertices) - b)
    sys.stdout.write(export_dot(g, deco))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for all randomness (default 0)")
    common.add_argument("--max-steps", type=int, default=homotopy.DEFAULT_MAX_STEPS,
                        help="engine work budget in reduction steps")
    common.add_argument("--max-cliques", type=int, default=invariants.DEFAULT_MAX_CLIQUES,
                        help="cap on enumerated cliques")
    common.add_argument("--max-window-points", type=int, default=lattice.DEFAULT_MAX_POINTS,
                        help="cap on generated lattice points")
    common.add_argument("--jobs", type=int, default=1, help="worker threads for rim checks")

    p = _Parser(prog="digitop", description="Digital topology on graphs.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("gen", parents=[common], help="generate a graph")
    s.add_argument("kind", choices=["minimal-sphere", "zn-window", "yn-window", "box-boundary", "torus-quotient"])
    s.add_argument("param")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("check", parents=[common], help="recognize a space")
    s.add_argument("property", choices=["contractible", "sphere", "manifold", "disk"])
    s.add_argument("input", nargs="?")
    s.add_argument("--boundary", help="disk boundary vertex set (default: inferred)")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("reduce", parents=[common], help="emit a reduction trace")
    s.add_argument("input", nargs="?")
    s.add_argument("--to", help="reduce onto this contractible vertex set instead of a point")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("partition", parents=[common], help="cut a space along a surface")
    s.add_argument("input", nargs="?")
    s.add_argument("--surface", required=True)
    s.set_defaults(func=cmd_partition)

    s = sub.add_parser("jordan", parents=[common], help="Jordan-Brouwer check in a Z^n window")
    s.add_argument("input", nargs="?", help="surface graph with coordinate labels")
    s.add_argument("--surface")
    s.add_argument("--margin", type=int, default=partition.MIN_JORDAN_MARGIN)
    s.add_argument("--window", help="explicit window spec (default: box around the surface)")
    s.set_defaults(func=cmd_jordan)

    s = sub.add_parser("invariants", parents=[common], help="Euler characteristic and Betti numbers")
    s.add_argument("input", nargs="?")
    s.add_argument("--coefficients", choices=[invariants.INTEGERS, invariants.MOD2], default=invariants.INTEGERS)
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("export", parents=[common], help="export DOT")
    s.add_argument("input", nargs="?")
    s.add_argument("--dot", action="store_true", required=True)
    s.add_argument("--partition", help="PartitionResult JSON to colour by")
    s.add_argument("--boundary", help="disk boundary vertex set to colour by")
    s.set_defaults(func=cmd_export)
    return p


def _fail(code: int, msg: str) -> int:
    sys.stderr.write(dumps({"error": msg}) + "\n")
    return code


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return _fail(EXIT_USAGE, str(exc))
    random.seed(args.seed)
    recognition.set_jobs(args.jobs)
    try:
        with homotopy.work_budget(args.max_steps):
            return args.func(args)
    except UsageError as exc:
        return _fail(EXIT_USAGE, str(exc))
    except (BudgetExceeded, CapExceeded) as exc:
        return _fail(EXIT_BUDGET, str(exc))
    except InconsistencyError as exc:
        return _fail(EXIT_INTERNAL, str(exc))
    except (FormatError, GraphError, PreconditionError, UnicodeDecodeError) as exc:
        return _fail(EXIT_INPUT, str(exc))
    except DigitopError as exc:
        return _fail(EXIT_INPUT, str(exc))


if __name__ == "__main__":
    sys.exit(main())
