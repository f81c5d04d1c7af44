"""Independent reference computations used to freeze expected values.

Nothing here imports the engine's algorithms; graphs are handled as plain
dicts or bitmasks so a bug in the engine cannot leak into its oracle.
"""

from __future__ import annotations

import itertools
from collections import deque


def bitmask_adjacency(g) -> tuple[list[int], list[int]]:
    verts = list(g.vertices)
    index = {v: i for i, v in enumerate(verts)}
    return verts, [sum(1 << index[u] for u in g.neighbors(v)) for v in verts]


def exhaustive_contractible(adj: list[int], mask: int, memo: dict | None = None) -> bool:
    """Contractibility by trying every simple-point deletion order."""
    memo = {} if memo is None else memo
    if mask in memo:
        return memo[mask]
    c = mask.bit_count()
    if c <= 1:
        result = c == 1
    else:
        result = False
        m = mask
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            if exhaustive_contractible(adj, adj[v] & mask, memo) and exhaustive_contractible(
                adj, mask & ~low, memo
            ):
                result = True
                break
    memo[mask] = result
    return result


def oracle_contractible(g) -> bool:
    _, adj = bitmask_adjacency(g)
    return exhaustive_contractible(adj, (1 << len(adj)) - 1)


def bfs_components(vertices, edges) -> list[set]:
    nbrs = {v: set() for v in vertices}
    for u, v in edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    seen, out = set(), []
    for s in sorted(vertices):
        if s in seen:
            continue
        comp, q = {s}, deque([s])
        while q:
            x = q.popleft()
            for y in nbrs[x] - comp:
                comp.add(y)
                q.append(y)
        seen |= comp
        out.append(comp)
    return out


def brute_force_cliques(vertices, edges) -> list[int]:
    """Clique counts by size, checking every vertex subset."""
    es = {frozenset(e) for e in edges}
    vs = sorted(vertices)
    counts = []
    for k in range(1, len(vs) + 1):
        c = sum(
            1
            for sub in itertools.combinations(vs, k)
            if all(frozenset(p) in es for p in itertools.combinations(sub, 2))
        )
        if not c:
            break
        counts.append(c)
    return counts


def khalimsky_adjacent(x, y) -> bool:
    """Z^n adjacency written out independently of the engine."""
    if x == y or any(abs(a - b) > 1 for a, b in zip(x, y)):
        return False
    up = all(a % 2 <= b % 2 for a, b in zip(x, y))
    down = all(a % 2 >= b % 2 for a, b in zip(x, y))
    return up or down


def flood_fill_components(points, blocked) -> list[set]:
    """Components of ``points - blocked`` under Khalimsky adjacency."""
    free = set(points) - set(blocked)
    dim = len(next(iter(free)))
    offsets = [d for d in itertools.product((-1, 0, 1), repeat=dim) if any(d)]
    comps, seen = [], set()
    for s in sorted(free):
        if s in seen:
            continue
        comp, q = {s}, deque([s])
        while q:
            x = q.popleft()
            for d in offsets:
                y = tuple(a + b for a, b in zip(x, d))
                if y in free and y not in comp and khalimsky_adjacent(x, y):
                    comp.add(y)
                    q.append(y)
        seen |= comp
        comps.append(comp)
    return comps


def box_points(bounds):
    return list(itertools.product(*(range(a, b + 1) for a, b in bounds)))


def box_face_points(bounds):
    return [x for x in box_points(bounds) if any(c in (a, b) for c, (a, b) in zip(x, bounds))]
