"""Finite windows of the normal space Z^n and the complete space Y^n.

Points of Z^n are adjacent when they are within max-norm distance 1 and
their parity vectors are comparable componentwise (in either direction).
That is the adjacency of the product of Khalimsky lines.  Y^n drops the
parity condition.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .errors import CapExceeded, GraphError, PreconditionError
from .graph import Graph, quotient_identify

NORMAL = "normal"
COMPLETE = "complete"
RULES = (NORMAL, COMPLETE)

DEFAULT_MAX_POINTS = 10_000

Point = tuple[int, ...]


def parity(x: Sequence[int]) -> Point:
    return tuple(c % 2 for c in x)


def point_kind(x: Sequence[int]) -> str:
    """'pure' if all coordinates share a parity, else 'mixed'."""
    return "pure" if len(set(parity(x))) <= 1 else "mixed"


def lattice_adjacent(rule: str, x: Sequence[int], y: Sequence[int]) -> bool:
    if len(x) != len(y):
        raise GraphError(f"arity mismatch: {len(x)} vs {len(y)}")
    if rule not in RULES:
        raise GraphError(f"unknown adjacency rule {rule!r}")
    if tuple(x) == tuple(y):
        return False
    if any(abs(a - b) > 1 for a, b in zip(x, y)):
        return False
    if rule == COMPLETE:
        return True
    tx, ty = parity(x), parity(y)
    return all(a <= b for a, b in zip(tx, ty)) or all(b <= a for a, b in zip(tx, ty))


@dataclass(frozen=True)
class WindowSpec:
    rule: str
    bounds: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.rule not in RULES:
            raise GraphError(f"unknown adjacency rule {self.rule!r}")
        bounds = tuple((int(a), int(b)) for a, b in self.bounds)
        if not bounds:
            raise GraphError("a window needs at least one axis")
        for a, b in bounds:
            if a > b:
                raise GraphError(f"empty axis interval [{a},{b}]")
        object.__setattr__(self, "bounds", bounds)

    @property
    def dim(self) -> int:
        return len(self.bounds)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(b - a + 1 for a, b in self.bounds)

    def size(self) -> int:
        n = 1
        for s in self.shape:
            n *= s
        return n

    def points(self) -> list[Point]:
        return list(itertools.product(*(range(a, b + 1) for a, b in self.bounds)))

    def contains(self, x: Sequence[int]) -> bool:
        return len(x) == self.dim and all(a <= c <= b for c, (a, b) in zip(x, self.bounds))

    def index(self, x: Sequence[int]) -> int:
        """Vertex id of ``x`` in the generated window (row-major order)."""
        if not self.contains(x):
            raise GraphError(f"point {tuple(x)} lies outside the window")
        i = 0
        for c, (a, b) in zip(x, self.bounds):
            i = i * (b - a + 1) + (c - a)
        return i

    def corner(self) -> Point:
        return tuple(a for a, _ in self.bounds)

    def to_json(self) -> dict:
        return {"rule": self.rule, "bounds": [list(p) for p in self.bounds]}

    @classmethod
    def from_json(cls, d: dict, rule: str | None = None) -> WindowSpec:
        return cls(rule or d.get("rule", NORMAL), tuple(tuple(p) for p in d["bounds"]))


def format_point(x: Sequence[int]) -> str:
    return "(" + ",".join(str(c) for c in x) + ")"


def parse_point(s: str) -> Point:
    s = s.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise GraphError(f"label {s!r} is not a lattice coordinate")
    try:
        return tuple(int(c) for c in s[1:-1].split(","))
    except ValueError:
        raise GraphError(f"label {s!r} is not a lattice coordinate") from None


def coordinates(g: Graph) -> dict[int, Point]:
    """Lattice coordinates of every vertex, read from the graph's labels."""
    labels = g.labels
    missing = [v for v in g.vertices if v not in labels]
    if missing:
        raise GraphError(f"vertex {missing[0]} has no coordinate label")
    return {v: parse_point(labels[v]) for v in g.vertices}


def generate_window(spec: WindowSpec, max_points: int = DEFAULT_MAX_POINTS) -> Graph:
    """All lattice points inside ``spec`` with the rule's adjacency."""
    total = spec.size()
    if total > max_points:
        raise CapExceeded(f"window has {total} points; cap is {max_points}")
    pts = spec.points()
    offsets = [d for d in itertools.product((-1, 0, 1), repeat=spec.dim) if any(d)]
    adj = {}
    for i, x in enumerate(pts):
        nbrs = []
        for d in offsets:
            y = tuple(a + b for a, b in zip(x, d))
            if spec.contains(y) and lattice_adjacent(spec.rule, x, y):
                nbrs.append(spec.index(y))
        adj[i] = frozenset(nbrs)
    labels = {i: format_point(x) for i, x in enumerate(pts)}
    return Graph(adj, labels, _trusted=True)


def box_boundary_points(bounds: Sequence[Sequence[int]]) -> list[Point]:
    """Points of an even-cornered box having at least one coordinate on a face."""
    bounds = [tuple(b) for b in bounds]
    for a, b in bounds:
        if a % 2 or b % 2:
            raise PreconditionError(f"box corners must be even, got [{a},{b}]")
        if b - a < 2:
            raise PreconditionError(f"box axis [{a},{b}] is degenerate")
    return [
        x
        for x in itertools.product(*(range(a, b + 1) for a, b in bounds))
        if any(c in (a, b) for c, (a, b) in zip(x, bounds))
    ]


def box_boundary_sphere(bounds: Sequence[Sequence[int]], window: WindowSpec | None = None) -> frozenset[int]:
    """Vertex ids (in ``window``) of the boundary of the box ``bounds``."""
    pts = box_boundary_points(bounds)
    if window is None:
        window = WindowSpec(NORMAL, tuple(tuple(b) for b in bounds))
    return frozenset(window.index(x) for x in pts)


def box_around(points: Iterable[Sequence[int]], margin: int = 0, rule: str = NORMAL) -> WindowSpec:
    """Bounding box of ``points`` inflated by ``margin`` on every axis."""
    pts = [tuple(p) for p in points]
    if not pts:
        raise GraphError("cannot bound an empty point set")
    dim = len(pts[0])
    if any(len(p) != dim for p in pts):
        raise GraphError("points have mixed arity")
    bounds = tuple(
        (min(p[i] for p in pts) - margin, max(p[i] for p in pts) + margin) for i in range(dim)
    )
    return WindowSpec(rule, bounds)


def window_margin(window: WindowSpec, points: Iterable[Sequence[int]]) -> int:
    """Smallest distance from the points' bounding box to a window face."""
    inner = box_around(points)
    if inner.dim != window.dim:
        raise GraphError("points and window have different dimensions")
    return min(
        min(ia - wa, wb - ib) for (ia, ib), (wa, wb) in zip(inner.bounds, window.bounds)
    )


def window_spec_of(g: Graph, rule: str = NORMAL) -> WindowSpec:
    """Recover the window a labelled graph was generated from, checking it is a full box."""
    coords = coordinates(g)
    spec = box_around(coords.values(), 0, rule)
    if spec.size() != len(g):
        raise PreconditionError("graph does not cover a full lattice box")
    for v, x in coords.items():
        if spec.index(x) != v:
            raise PreconditionError("graph ids do not follow the window's row-major order")
    return spec


def minimal_torus_bounds(period: int, dim: int = 2) -> WindowSpec:
    return WindowSpec(NORMAL, tuple((0, period) for _ in range(dim)))


def torus_quotient(period: int = 4, dim: int = 2) -> Graph:
    """Z^dim modulo an even period, built by identifying opposite window faces."""
    if period < 4 or period % 2:
        raise PreconditionError("torus period must be even and at least 4")
    spec = minimal_torus_bounds(period, dim)
    g = generate_window(spec)
    classes: dict[Point, set[int]] = {}
    for x in spec.points():
        classes.setdefault(tuple(c % period for c in x), set()).add(spec.index(x))
    return quotient_identify(g, [c for c in classes.values() if len(c) > 1])
