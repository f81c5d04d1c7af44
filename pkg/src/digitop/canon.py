"""Canonical labeling and isomorphism testing for desk-scale graphs.

``canonical_code`` uses individualization-refinement: an equitable
colour refinement, backtracking over the first smallest non-singleton
cell, and pruning with automorphisms discovered between equivalent
leaves.  ``isomorphism_check`` is a separate backtracking matcher so the
two routes can be checked against each other.
"""

from __future__ import annotations

from collections.abc import Mapping

from .errors import CapExceeded
from .graph import Graph

CANON_CAP = 40


def _masks(g: Graph) -> tuple[list[int], list[int]]:
    verts = list(g.vertices)
    index = {v: i for i, v in enumerate(verts)}
    masks = []
    for v in verts:
        m = 0
        for u in g.neighbors(v):
            m |= 1 << index[u]
        masks.append(m)
    return verts, masks


def _refine(cells: list[list[int]], splitters: list[int], adj: list[int]) -> list[list[int]]:
    """Split cells by neighbour counts until equitable.

    Cells are kept in an order that depends only on the structure, which
    is what makes the resulting leaf codes labeling-invariant.
    """
    cells = [list(c) for c in cells]
    queue = list(splitters)
    while queue:
        w = queue.pop(0)
        out = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            counts = {}
            for v in cell:
                counts.setdefault((adj[v] & w).bit_count(), []).append(v)
            if len(counts) == 1:
                out.append(cell)
                continue
            for c in sorted(counts):
                part = counts[c]
                out.append(part)
                m = 0
                for v in part:
                    m |= 1 << v
                queue.append(m)
        cells = out
    return cells


def _leaf_code(order: list[int], adj: list[int]) -> tuple[int, ...]:
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    rows = []
    for v in order:
        m = adj[v]
        row = 0
        while m:
            low = m & -m
            row |= 1 << pos[low.bit_length() - 1]
            m ^= low
        rows.append(row)
    return tuple(rows)


class _Search:
    def __init__(self, adj: list[int]):
        self.adj = adj
        self.n = len(adj)
        self.gens: list[list[int]] = []
        self.first = None  # (code, order, path)
        self.best = None

    def _orbit_roots(self, path: list[int]) -> list[int]:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        fixed = set(path)
        for g in self.gens:
            if any(g[p] != p for p in fixed):
                continue
            for i, j in enumerate(g):
                a, b = find(i), find(j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        return [find(i) for i in range(self.n)]

    def _leaf(self, cells, path):
        order = [c[0] for c in cells]
        code = _leaf_code(order, self.adj)
        if self.first is None:
            self.first = self.best = (code, order, list(path))
            return None
        for ref in (self.first, self.best):
            if code == ref[0]:
                gamma = [0] * self.n
                for a, b in zip(ref[1], order):
                    gamma[a] = b
                self.gens.append(gamma)
                d = 0
                while d < len(path) and d < len(ref[2]) and path[d] == ref[2][d]:
                    d += 1
                return d
        if code < self.best[0]:
            self.best = (code, order, list(path))
        return None

    def run(self, cells, path):
        if all(len(c) == 1 for c in cells):
            return self._leaf(cells, path)
        k = min(len(c) for c in cells if len(c) > 1)
        t = next(i for i, c in enumerate(cells) if len(c) == k)
        explored: list[int] = []
        depth = len(path)
        for v in sorted(cells[t]):
            if explored:
                roots = self._orbit_roots(path)
                if roots[v] in {roots[u] for u in explored}:
                    continue
            rest = [u for u in cells[t] if u != v]
            child = cells[:t] + [[v], rest] + cells[t + 1:]
            child = _refine(child, [1 << v], self.adj)
            r = self.run(child, path + [v])
            explored.append(v)
            if r is not None and r < depth:
                return r
        return None


def canonical_order(g: Graph, cap: int = CANON_CAP) -> tuple[list[int], bytes]:
    """Return (vertex ids in canonical order, canonical code)."""
    n = len(g)
    if n > cap:
        raise CapExceeded(f"graph has {n} vertices; canonicalization cap is {cap}")
    verts, adj = _masks(g)
    if n == 0:
        return [], b"\x00"
    search = _Search(adj)
    cells = _refine([list(range(n))], [(1 << n) - 1], adj)
    search.run(cells, [])
    code, order, _ = search.best
    width = (n + 7) // 8
    body = b"".join(row.to_bytes(width, "little") for row in code)
    return [verts[i] for i in order], bytes([n]) + body


def canonical_code(g: Graph, cap: int = CANON_CAP) -> bytes:
    """Byte string equal for two graphs exactly when they are isomorphic."""
    return canonical_order(g, cap)[1]


# -- isomorphism ---------------------------------------------------------


def _joint_colors(g: Graph, h: Graph) -> tuple[dict[int, int], dict[int, int]]:
    """Colour refinement run on both graphs with a shared palette."""
    cg = {v: g.degree(v) for v in g.vertices}
    ch = {v: h.degree(v) for v in h.vertices}
    for _ in range(max(len(g), 1)):
        sig_g = {v: (cg[v], tuple(sorted(cg[u] for u in g.neighbors(v)))) for v in g.vertices}
        sig_h = {v: (ch[v], tuple(sorted(ch[u] for u in h.neighbors(v)))) for v in h.vertices}
        palette = {s: i for i, s in enumerate(sorted(set(sig_g.values()) | set(sig_h.values())))}
        ng = {v: palette[s] for v, s in sig_g.items()}
        nh = {v: palette[s] for v, s in sig_h.items()}
        if len(set(ng.values()) | set(nh.values())) == len(set(cg.values()) | set(ch.values())):
            return ng, nh
        cg, ch = ng, nh
    return cg, ch


def _verify_map(g: Graph, h: Graph, m: Mapping[int, int]) -> str | None:
    if set(m) != set(g.vertices):
        return "map does not cover the source vertices"
    if set(m.values()) != set(h.vertices) or len(set(m.values())) != len(m):
        return "map is not a bijection onto the target vertices"
    for u, v in g.edges:
        if not h.has_edge(m[u], m[v]):
            return f"edge ({u},{v}) is not preserved"
    if g.number_of_edges() != h.number_of_edges():
        return "target has edges with no preimage"
    return None


class IsoVerdict:
    """Outcome of an isomorphism test: a mapping, or a reason it failed."""

    __slots__ = ("mapping", "reason")

    def __init__(self, mapping: dict[int, int] | None, reason: str | None = None):
        self.mapping = mapping
        self.reason = reason

    def __bool__(self) -> bool:
        return self.mapping is not None

    def __repr__(self) -> str:
        return f"IsoVerdict({'iso' if self else self.reason})"


def isomorphism_check(g: Graph, h: Graph, m: Mapping[int, int] | None = None) -> IsoVerdict:
    if m is not None:
        reason = _verify_map(g, h, m)
        return IsoVerdict(None, reason) if reason else IsoVerdict(dict(m))
    if len(g) != len(h):
        return IsoVerdict(None, "vertex counts differ")
    if g.number_of_edges() != h.number_of_edges():
        return IsoVerdict(None, "edge counts differ")
    if sorted(g.degree(v) for v in g) != sorted(h.degree(v) for v in h):
        return IsoVerdict(None, "degree multisets differ")
    cg, ch = _joint_colors(g, h)
    if sorted(cg.values()) != sorted(ch.values()):
        return IsoVerdict(None, "colour refinement distinguishes the graphs")

    # match in BFS order from the rarest colour so every step is constrained
    freq: dict[int, int] = {}
    for c in cg.values():
        freq[c] = freq.get(c, 0) + 1
    order: list[int] = []
    seen: set[int] = set()
    for start in sorted(g.vertices, key=lambda v: (freq[cg[v]], v)):
        if start in seen:
            continue
        frontier = [start]
        seen.add(start)
        while frontier:
            v = frontier.pop(0)
            order.append(v)
            for u in sorted(g.neighbors(v), key=lambda x: (freq[cg[x]], x)):
                if u not in seen:
                    seen.add(u)
                    frontier.append(u)
    by_color: dict[int, list[int]] = {}
    for v in h.vertices:
        by_color.setdefault(ch[v], []).append(v)

    mapping: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        mapped_nbrs = [(mapping[u]) for u in g.neighbors(v) if u in mapping]
        mapped_non = [mapping[u] for u in order[:i] if u not in g.neighbors(v)]
        if mapped_nbrs:
            candidates = sorted(h.neighbors(mapped_nbrs[0]))
        else:
            candidates = by_color[cg[v]]
        for w in candidates:
            if w in used or ch[w] != cg[v]:
                continue
            nw = h.neighbors(w)
            if any(x not in nw for x in mapped_nbrs) or any(x in nw for x in mapped_non):
                continue
            mapping[v] = w
            used.add(w)
            if extend(i + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    if extend(0):
        return IsoVerdict(dict(mapping))
    return IsoVerdict(None, "exhaustive search found no isomorphism")
