"""Recognition of normal spheres, manifolds and disks.

A normal 0-sphere is two non-adjacent points.  For n > 0 a connected
graph is a normal n-manifold when every rim is a normal (n-1)-sphere,
and a normal n-sphere when additionally every single-vertex deletion is
contractible.  A normal n-disk is a sphere minus one point; its boundary
is that point's rim.  The dimension is inferred from the rims, never
passed in.
"""

from __future__ import annotations

from collections.abc import Iterable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import graph as gc
from .canon import CANON_CAP, canonical_code
from .graph import Graph
from .homotopy import CANON_MIN_SIZE, MemoCache, contractible

SPHERE = "sphere"
MANIFOLD = "manifold"
DISK = "disk"
CONTRACTIBLE = "contractible"
OTHER = "other"

_jobs = 1


def set_jobs(n: int) -> None:
    """Evaluate per-vertex rim classifications on ``n`` worker threads."""
    global _jobs
    _jobs = max(1, int(n))


@dataclass(frozen=True)
class DiskDecomposition:
    boundary: frozenset[int]
    interior: frozenset[int]


@dataclass(frozen=True)
class SpaceClass:
    """A recognition verdict.

    ``witness`` is set only for OTHER and names the first failing vertex
    (when there is one) and the failed clause.
    """

    kind: str
    dim: int | None = None
    decomposition: DiskDecomposition | None = None
    witness: dict | None = None

    @property
    def accepted(self) -> bool:
        return self.kind != OTHER

    def __bool__(self) -> bool:
        return self.accepted

    def is_sphere(self, n: int | None = None) -> bool:
        return self.kind == SPHERE and (n is None or self.dim == n)

    def to_json(self) -> dict:
        if self.kind == OTHER:
            return {"class": OTHER, "witness": dict(self.witness or {})}
        out: dict = {"class": self.kind}
        if self.dim is not None:
            out["dim"] = self.dim
        if self.decomposition is not None:
            out["boundary"] = sorted(self.decomposition.boundary)
            out["interior"] = sorted(self.decomposition.interior)
        return out


def _other(failed: str, vertex: int | None = None, **extra) -> SpaceClass:
    w: dict = {}
    if vertex is not None:
        w["vertex"] = vertex
    w["failed"] = failed
    w.update(extra)
    return SpaceClass(OTHER, witness=w)


_sphere_cache = MemoCache()


def clear_caches() -> None:
    _sphere_cache.clear()


def _map_vertices(fn, items: list):
    if _jobs > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=_jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _rim_profile(g: Graph) -> tuple[int | None, SpaceClass | None]:
    """Common rim sphere dimension, or a refutation naming the first bad vertex."""
    verts = list(g.vertices)
    dim = None
    if _jobs > 1:
        verdicts = _map_vertices(lambda v: classify_sphere(gc.rim(g, v)), verts)
    else:
        verdicts = None
    for i, v in enumerate(verts):
        r = verdicts[i] if verdicts is not None else classify_sphere(gc.rim(g, v))
        if not r.is_sphere():
            return None, _other("rim-not-sphere", v)
        if dim is None:
            dim = r.dim
        elif r.dim != dim:
            return None, _other("rim-dimension-mismatch", v, expected=dim, found=r.dim)
    return dim, None


def classify_sphere(g: Graph) -> SpaceClass:
    """SPHERE with the inferred dimension, or OTHER with a witness."""
    n = len(g)
    if n == 0:
        return _other("empty")
    if n == 1:
        return _other("single-point")
    if n == 2 and not g.number_of_edges():
        return SpaceClass(SPHERE, 0)
    skey = ("s", g.key())
    hit = _sphere_cache.get(skey)
    if hit is not None:
        return hit
    ckey = None
    if CANON_MIN_SIZE <= n <= CANON_CAP:
        ckey = ("c", canonical_code(g))
        hit = _sphere_cache.get(ckey)
        if hit is not None and hit.kind == SPHERE:
            _sphere_cache.setdefault(skey, hit)
            return hit
        # refutation witnesses name vertices, so they only transfer by identity
    result = _classify_sphere(g)
    _sphere_cache.setdefault(skey, result)
    if ckey is not None and result.kind == SPHERE:
        _sphere_cache.setdefault(ckey, result)
    return result


def _classify_sphere(g: Graph) -> SpaceClass:
    comps = gc.connected_components(g)
    if len(comps) > 1:
        return _other("disconnected", min(comps[1]))
    dim, bad = _rim_profile(g)
    if bad is not None:
        return bad
    for v in g.vertices:
        if not contractible(g.without((v,))):
            return _other("complement-not-contractible", v)
    return SpaceClass(SPHERE, dim + 1)


def is_normal_manifold(g: Graph) -> SpaceClass:
    """MANIFOLD of common dimension n when connected and every rim is an (n-1)-sphere."""
    if not len(g):
        return _other("empty")
    comps = gc.connected_components(g)
    if len(comps) > 1:
        return _other("disconnected", min(comps[1]))
    if len(g) == 1:
        return _other("single-point")
    dim, bad = _rim_profile(g)
    if bad is not None:
        return bad
    return SpaceClass(MANIFOLD, dim + 1)


def cone(d: Graph, boundary: Iterable[int]) -> tuple[Graph, int]:
    """Attach a fresh vertex (max id + 1) whose rim is ``boundary``."""
    w = d.vertices[-1] + 1 if len(d) else 0
    return d.with_vertex(w, boundary), w


def is_normal_disk(d: Graph, boundary: Iterable[int]) -> SpaceClass:
    """DISK(n) iff coning ``boundary`` off with a new vertex yields a normal n-sphere."""
    boundary = frozenset(boundary)
    missing = boundary.difference(d.vertices)
    if missing:
        return _other("boundary-not-in-disk", min(missing))
    if not len(d):
        return _other("empty")
    closed, _ = cone(d, boundary)
    verdict = classify_sphere(closed)
    if not verdict.is_sphere():
        return SpaceClass(OTHER, witness={"failed": "cone-not-sphere", "cone": verdict.to_json()})
    interior = frozenset(d.vertices) - boundary
    return SpaceClass(DISK, verdict.dim, DiskDecomposition(boundary, interior))


def disk_boundary_heuristic(d: Graph) -> SpaceClass:
    """Guess the boundary (vertices whose rim is not a sphere) and verify it."""
    if not len(d):
        return _other("empty")
    interior = frozenset(v for v in d.vertices if classify_sphere(gc.rim(d, v)).is_sphere())
    boundary = frozenset(d.vertices) - interior
    verdict = is_normal_disk(d, boundary)
    if not verdict.accepted:
        return SpaceClass(
            OTHER, witness={"failed": "heuristic-boundary-rejected", "boundary": sorted(boundary)}
        )
    return verdict


def classify(g: Graph) -> SpaceClass:
    """Coarse verdict: sphere, else manifold, else disk, else contractible, else other."""
    s = classify_sphere(g)
    if s.accepted:
        return s
    m = is_normal_manifold(g)
    if m.accepted:
        return m
    d = disk_boundary_heuristic(g)
    if d.accepted:
        return d
    if contractible(g):
        return SpaceClass(CONTRACTIBLE)
    return s


def minimal_sphere(n: int) -> Graph:
    """Join of n + 1 copies of the 0-sphere: 2(n+1) vertices."""
    if n < 0:
        raise ValueError("sphere dimension must be non-negative")
    return gc.join_all(gc.zero_sphere() for _ in range(n + 1))
