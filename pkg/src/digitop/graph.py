"""Immutable simple graphs and the structural operations built on them.

Vertex ids are non-negative integers.  Subgraph operations keep the
original ids so that traces and partitions stay readable; only ``join``,
``disjoint_union`` and ``quotient_identify`` relabel, and they do it
deterministically.
"""

from __future__ import annotations

import hashlib
import json
from collections import deque
from collections.abc import Iterable, Mapping

from .errors import GraphError

Edge = tuple[int, int]


class Graph:
    """A finite simple undirected graph.

    Instances are never mutated after construction; every operation
    returns a new graph.  ``labels`` optionally maps vertex ids to display
    strings (lattice coordinates, mostly) and takes no part in equality.
    """

    __slots__ = ("_adj", "_labels", "_vertices", "_edges", "_key")

    def __init__(
        self,
        adjacency: Mapping[int, Iterable[int]] | None = None,
        labels: Mapping[int, str] | None = None,
        *,
        _trusted: bool = False,
    ):
        if _trusted:
            self._adj = adjacency
        else:
            adj: dict[int, set[int]] = {}
            for v, nbrs in (adjacency or {}).items():
                _check_id(v)
                adj.setdefault(v, set())
                for u in nbrs:
                    _check_id(u)
                    if u == v:
                        raise GraphError(f"self-loop at vertex {v}: simple graphs have no loops")
                    adj[v].add(u)
                    adj.setdefault(u, set()).add(v)
            self._adj = {v: frozenset(n) for v, n in adj.items()}
        if labels:
            self._labels = {int(v): str(s) for v, s in labels.items() if int(v) in self._adj}
        else:
            self._labels = {}
        self._vertices = None
        self._edges = None
        self._key = None

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[Iterable[int]],
        vertices: Iterable[int] = (),
        labels: Mapping[int, str] | None = None,
    ) -> Graph:
        adj: dict[int, set[int]] = {}
        for v in vertices:
            _check_id(v)
            adj.setdefault(v, set())
        for e in edges:
            pair = tuple(e)
            if len(pair) != 2:
                raise GraphError(f"edge {list(pair)} does not have two endpoints")
            u, v = pair
            _check_id(u)
            _check_id(v)
            if u == v:
                raise GraphError(f"self-loop at vertex {u}: simple graphs have no loops")
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        return cls({v: frozenset(n) for v, n in adj.items()}, labels, _trusted=True)

    # -- basic queries ---------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        if self._vertices is None:
            self._vertices = tuple(sorted(self._adj))
        return self._vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        if self._edges is None:
            self._edges = tuple(
                (u, v) for u in self.vertices for v in sorted(self._adj[u]) if u < v
            )
        return self._edges

    @property
    def labels(self) -> dict[int, str]:
        return dict(self._labels)

    def label(self, v: int) -> str:
        return self._labels.get(v, str(v))

    def neighbors(self, v: int) -> frozenset[int]:
        try:
            return self._adj[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v}") from None

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, ())

    def number_of_edges(self) -> int:
        return sum(len(n) for n in self._adj.values()) // 2

    def __len__(self) -> int:
        return len(self._adj)

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __iter__(self):
        return iter(self.vertices)

    def key(self) -> tuple:
        """Structural identity: sorted vertices and edges, ids included."""
        if self._key is None:
            self._key = (self.vertices, self.edges)
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Graph(|V|={len(self)}, |E|={self.number_of_edges()})"

    def digest(self) -> str:
        """SHA-256 hex digest of the compact JSON form ``{"vertices":..,"edges":..}``.

        Labels are excluded, so equal graphs always share a digest.
        """
        payload = json.dumps(
            {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]},
            separators=(",", ":"),
        )
        return hashlib.sha256(payload.encode()).hexdigest()

    # -- derived graphs --------------------------------------------------

    def _check_members(self, s: Iterable[int]) -> frozenset[int]:
        s = frozenset(s)
        missing = s.difference(self._adj)
        if missing:
            raise GraphError(f"unknown vertex {min(missing)}")
        return s

    def induced(self, s: Iterable[int]) -> Graph:
        s = self._check_members(s)
        adj = {v: self._adj[v] & s for v in s}
        return Graph(adj, self._labels, _trusted=True)

    def without(self, s: Iterable[int]) -> Graph:
        """Induced subgraph on everything except ``s``."""
        s = self._check_members(s)
        return self.induced(self._adj.keys() - s)

    def with_vertex(self, v: int, nbrs: Iterable[int], label: str | None = None) -> Graph:
        if v in self._adj:
            raise GraphError(f"vertex {v} already exists")
        _check_id(v)
        nbrs = self._check_members(nbrs)
        adj = dict(self._adj)
        adj[v] = nbrs
        for u in nbrs:
            adj[u] = adj[u] | {v}
        labels = dict(self._labels)
        if label is not None:
            labels[v] = label
        return Graph(adj, labels, _trusted=True)

    def with_edge(self, u: int, v: int) -> Graph:
        self._check_members((u, v))
        if u == v:
            raise GraphError(f"self-loop at vertex {u}: simple graphs have no loops")
        if self.has_edge(u, v):
            raise GraphError(f"edge ({u},{v}) already exists")
        adj = dict(self._adj)
        adj[u] = adj[u] | {v}
        adj[v] = adj[v] | {u}
        return Graph(adj, self._labels, _trusted=True)

    def without_edge(self, u: int, v: int) -> Graph:
        if not self.has_edge(u, v):
            raise GraphError(f"({u},{v}) is not an edge")
        adj = dict(self._adj)
        adj[u] = adj[u] - {v}
        adj[v] = adj[v] - {u}
        return Graph(adj, self._labels, _trusted=True)

    def relabel(self, mapping: Mapping[int, int]) -> Graph:
        """Rename vertices through an injective ``mapping`` covering all vertices."""
        if set(mapping) != set(self._adj) or len(set(mapping.values())) != len(mapping):
            raise GraphError("relabeling must be a bijection on the vertex set")
        adj = {mapping[v]: frozenset(mapping[u] for u in n) for v, n in self._adj.items()}
        labels = {mapping[v]: s for v, s in self._labels.items()}
        return Graph(adj, labels, _trusted=True)

    def compact(self) -> Graph:
        """Relabel to ids 0..n-1 preserving order."""
        return self.relabel({v: i for i, v in enumerate(self.vertices)})


def _check_id(v) -> None:
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise GraphError(f"vertex ids must be non-negative integers, got {v!r}")


# -- module-level operations ---------------------------------------------


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    return g.induced(s)


def rim(g: Graph, v: int) -> Graph:
    """The neighbourhood of ``v``: induced subgraph on its neighbours."""
    return g.induced(g.neighbors(v))


def ball(g: Graph, v: int) -> Graph:
    return g.induced(g.neighbors(v) | {v})


def mutual_rim(g: Graph, h: Iterable[int]) -> Graph:
    """Induced subgraph on the vertices adjacent to every member of ``h``."""
    h = sorted(set(h))
    if not h:
        raise GraphError("mutual rim of an empty vertex set is undefined")
    common = g.neighbors(h[0])
    for v in h[1:]:
        common = common & g.neighbors(v)
    return g.induced(common)


def _shift(h: Graph, offset: int) -> dict[int, int]:
    if not len(h):
        return {}
    base = h.vertices[0]
    return {v: v - base + offset for v in h.vertices}


def disjoint_union(g: Graph, h: Graph) -> tuple[Graph, dict[int, int]]:
    """Union with ``h`` shifted past ``g``'s largest id; returns the shift map too."""
    offset = g.vertices[-1] + 1 if len(g) else 0
    shift = _shift(h, offset)
    moved = h.relabel(shift) if shift else h
    adj = dict(g._adj)
    adj.update(moved._adj)
    labels = g.labels
    labels.update(moved.labels)
    return Graph(adj, labels, _trusted=True), shift


def join(g: Graph, h: Graph) -> Graph:
    """g ⊕ h: disjoint union plus every edge between the two sides."""
    union, shift = disjoint_union(g, h)
    left = frozenset(g.vertices)
    right = frozenset(shift.values())
    adj = {v: (n | right) if v in left else (n | left) for v, n in union._adj.items()}
    return Graph(adj, union.labels, _trusted=True)


def join_all(graphs: Iterable[Graph]) -> Graph:
    out = Graph()
    for h in graphs:
        out = join(out, h)
    return out


def connected_components(g: Graph) -> list[frozenset[int]]:
    """Components ordered by their least vertex id."""
    seen: set[int] = set()
    out = []
    for start in g.vertices:
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for u in g.neighbors(v):
                if u not in comp:
                    comp.add(u)
                    queue.append(u)
        seen |= comp
        out.append(frozenset(comp))
    return out


def is_connected(g: Graph) -> bool:
    if not len(g):
        return False
    return len(connected_components(g)) == 1


def quotient_map(g: Graph, classes: Iterable[Iterable[int]]) -> dict[int, int]:
    """Map old ids to quotient ids.

    Every vertex not in a class forms its own class.  Classes are numbered
    0, 1, ... in order of their least member.
    """
    owner: dict[int, frozenset[int]] = {}
    for cls in classes:
        cls = g._check_members(cls)
        if not cls:
            continue
        for v in cls:
            if v in owner:
                raise GraphError(f"vertex {v} appears in two identification classes")
            owner[v] = cls
    groups = {}
    for v in g.vertices:
        groups.setdefault(min(owner.get(v, (v,))), None)
    index = {rep: i for i, rep in enumerate(sorted(groups))}
    return {v: index[min(owner.get(v, (v,)))] for v in g.vertices}


def quotient_identify(g: Graph, classes: Iterable[Iterable[int]]) -> Graph:
    """Collapse each class to one vertex; loops are dropped and parallel edges merged."""
    qmap = quotient_map(g, classes)
    adj: dict[int, set[int]] = {i: set() for i in set(qmap.values())}
    for u, v in g.edges:
        a, b = qmap[u], qmap[v]
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    labels = {}
    for v in reversed(g.vertices):
        if v in g._labels:
            labels[qmap[v]] = g._labels[v]
    return Graph({v: frozenset(n) for v, n in adj.items()}, labels, _trusted=True)


# -- a few named graphs used throughout ----------------------------------


def empty_graph(n: int = 0) -> Graph:
    return Graph({v: () for v in range(n)})


def path_graph(n: int) -> Graph:
    return Graph.from_edges(((i, i + 1) for i in range(n - 1)), range(n))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least three vertices")
    return Graph.from_edges(((i, (i + 1) % n) for i in range(n)), range(n))


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(((i, j) for i in range(n) for j in range(i + 1, n)), range(n))


def zero_sphere() -> Graph:
    return empty_graph(2)
