"""Graph JSON, edge-list text and DOT export."""

from __future__ import annotations

import json

from .errors import GraphError
from .graph import Graph


class FormatError(GraphError):
    """Input that is not valid Graph JSON or edge-list text."""


def dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def graph_to_json(g: Graph) -> dict:
    out: dict = {"vertices": list(g.vertices), "edges": [list(e) for e in g.edges]}
    labels = g.labels
    if labels:
        out["labels"] = {str(v): labels[v] for v in sorted(labels)}
    return out


def graph_from_json(d) -> Graph:
    if isinstance(d, list):
        return _from_edge_pairs(d)
    if not isinstance(d, dict):
        raise FormatError("graph JSON must be an object or an array of edges")
    if "edges" not in d and "vertices" not in d:
        raise FormatError('graph JSON needs "vertices" and/or "edges"')
    verts = d.get("vertices", [])
    edges = d.get("edges", [])
    if not isinstance(verts, list) or not isinstance(edges, list):
        raise FormatError('"vertices" and "edges" must be arrays')
    for i, e in enumerate(edges):
        if not isinstance(e, list) or len(e) != 2:
            raise FormatError(f"edge #{i} must be a pair, got {e!r}")
    labels = d.get("labels") or {}
    if not isinstance(labels, dict):
        raise FormatError('"labels" must be an object')
    try:
        labels = {int(k): str(v) for k, v in labels.items()}
    except ValueError:
        raise FormatError("label keys must be vertex ids") from None
    g = Graph.from_edges(edges, verts, labels)
    unknown = set(labels) - set(g.vertices)
    if unknown:
        raise FormatError(f"label for unknown vertex {min(unknown)}")
    return g


def _from_edge_pairs(pairs: list) -> Graph:
    for i, e in enumerate(pairs):
        if not isinstance(e, list) or len(e) != 2:
            raise FormatError(f"edge #{i} must be a pair, got {e!r}")
    return Graph.from_edges(pairs)


def parse_edge_list(text: str) -> Graph:
    """``u v`` per line; a lone id declares an isolated vertex; ``#`` starts a comment."""
    verts: list[int] = []
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            ids = [int(p) for p in parts]
        except ValueError:
            raise FormatError(f"line {lineno}: expected integer vertex ids, got {raw.strip()!r}") from None
        if len(ids) == 1:
            verts.append(ids[0])
        elif len(ids) == 2:
            if ids[0] == ids[1]:
                raise FormatError(
                    f"line {lineno}: self-loop at vertex {ids[0]}: simple graphs have no loops"
                )
            edges.append((ids[0], ids[1]))
        else:
            raise FormatError(f"line {lineno}: expected 'u v', got {raw.strip()!r}")
    try:
        return Graph.from_edges(edges, verts)
    except GraphError as exc:
        raise FormatError(str(exc)) from None


def parse_graph(data: bytes | str) -> Graph:
    """Graph JSON or edge-list text, chosen by the first non-space character."""
    text = data.decode() if isinstance(data, bytes) else data
    head = text.lstrip()[:1]
    if head in ("{", "["):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
        try:
            return graph_from_json(obj)
        except FormatError:
            raise
        except GraphError as exc:
            raise FormatError(str(exc)) from None
    return parse_edge_list(text)


def emit_graph(g: Graph) -> str:
    return dumps(graph_to_json(g))


_PART_COLORS = {"A": "lightblue", "S": "salmon", "B": "palegreen"}
_DISK_COLORS = {"boundary": "salmon", "interior": "palegreen"}


def export_dot(g: Graph, decorations=None, name: str = "G") -> str:
    """DOT text; ``decorations`` may be a PartitionResult or a DiskDecomposition."""
    color: dict[int, str] = {}
    group: dict[int, str] = {}
    if decorations is not None:
        if hasattr(decorations, "a"):
            parts = {"A": decorations.a, "S": decorations.s, "B": decorations.b}
            palette = _PART_COLORS
        else:
            parts = {"boundary": decorations.boundary, "interior": decorations.interior}
            palette = _DISK_COLORS
        for tag, members in parts.items():
            for v in members:
                color[v] = palette[tag]
                group[v] = tag
    labels = g.labels
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for v in g.vertices:
        attrs = [f'label="{labels.get(v, str(v))}"']
        if v in color:
            attrs += ["style=filled", f'fillcolor="{color[v]}"', f'group="{group[v]}"']
        lines.append(f"  {v} [{', '.join(attrs)}];")
    for u, v in g.edges:
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
