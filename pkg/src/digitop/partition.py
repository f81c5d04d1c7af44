"""Partitions M = A ∪ S ∪ B with no edge from A to B, gluing of disks, and
the Jordan-Brouwer check inside finite windows of Z^n.

The infinite lattice is modelled by a window with margin at least 2 around
the surface.  With that margin the outside of the surface stays connected
inside the window, so the exterior component is the one holding the
window's corner.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from . import graph as gc
from . import lattice
from .canon import isomorphism_check
from .errors import GraphError, InconsistencyError, PreconditionError
from .graph import Graph
from .homotopy import contractible
from .recognition import SpaceClass, classify_sphere, is_normal_disk

MIN_JORDAN_MARGIN = 2


@dataclass(frozen=True)
class PartitionResult:
    a: frozenset[int]
    s: frozenset[int]
    b: frozenset[int]
    exterior: str | None = None

    def to_json(self) -> dict:
        out = {"A": sorted(self.a), "S": sorted(self.s), "B": sorted(self.b)}
        if self.exterior is not None:
            out["exterior"] = self.exterior
        return out

    @classmethod
    def from_json(cls, d: dict) -> PartitionResult:
        return cls(frozenset(d["A"]), frozenset(d["S"]), frozenset(d["B"]), d.get("exterior"))


@dataclass(frozen=True)
class Separation:
    """Result of cutting a space along ``s``: a partition when exactly two pieces remain."""

    partition: PartitionResult | None
    components: int

    @property
    def separated(self) -> bool:
        return self.partition is not None

    def __bool__(self) -> bool:
        return self.separated

    def to_json(self) -> dict:
        if self.partition is not None:
            return self.partition.to_json()
        return {"separated": False, "components": self.components}


def partition_by_surface(m: Graph, s: Iterable[int]) -> Separation:
    s = frozenset(s)
    missing = s.difference(m.vertices)
    if missing:
        raise GraphError(f"unknown vertex {min(missing)}")
    if len(s) == len(m):
        raise PreconditionError("surface covers the whole space; nothing to separate")
    comps = gc.connected_components(m.without(s))
    if len(comps) != 2:
        return Separation(None, len(comps))
    return Separation(PartitionResult(comps[0], s, comps[1]), 2)


@dataclass(frozen=True)
class PartitionCheck:
    ok: bool
    reason: str | None = None
    edge: tuple[int, int] | None = None
    degenerate: bool = False

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        out: dict = {"valid": self.ok}
        if self.reason:
            out["reason"] = self.reason
        if self.edge:
            out["edge"] = list(self.edge)
        if self.degenerate:
            out["degenerate"] = True
        return out


def verify_partition(m: Graph, p: PartitionResult) -> PartitionCheck:
    """Cover, pairwise disjointness, and no edge between A and B."""
    verts = frozenset(m.vertices)
    if p.a & p.s or p.a & p.b or p.s & p.b:
        return PartitionCheck(False, "parts overlap")
    if p.a | p.s | p.b != verts:
        return PartitionCheck(False, "parts do not cover the space")
    for u in sorted(p.a):
        for v in sorted(m.neighbors(u)):
            if v in p.b:
                return PartitionCheck(False, "edge joins A and B", (u, v))
    return PartitionCheck(True, degenerate=not p.a or not p.b)


@dataclass(frozen=True)
class ContractiblePartitionCheck:
    whole: bool
    a_side: bool
    b_side: bool

    @property
    def agrees(self) -> bool:
        return self.whole == (self.a_side and self.b_side)

    def to_json(self) -> dict:
        return {"M": self.whole, "A+S": self.a_side, "S+B": self.b_side, "agrees": self.agrees}


def check_contractible_partition(m: Graph, p: PartitionResult) -> ContractiblePartitionCheck:
    """Evaluate both sides of: M contractible iff A∪S and S∪B are contractible."""
    chk = verify_partition(m, p)
    if not chk:
        raise PreconditionError(f"not a partition: {chk.reason}")
    if not p.a or not p.b:
        raise PreconditionError("A and B must both be non-empty")
    if not gc.is_connected(m):
        raise PreconditionError("the space must be connected")
    if not contractible(m.induced(p.s)):
        raise PreconditionError("the separating space is not contractible")
    res = ContractiblePartitionCheck(
        contractible(m), contractible(m.induced(p.a | p.s)), contractible(m.induced(p.s | p.b))
    )
    if not res.agrees:
        raise InconsistencyError(
            f"contractibility of M ({res.whole}) disagrees with its sides "
            f"({res.a_side}, {res.b_side}) across a contractible separator"
        )
    return res


@dataclass(frozen=True)
class GlueResult:
    graph: Graph
    surface: frozenset[int]
    sphere: SpaceClass
    separation: Separation

    @property
    def ok(self) -> bool:
        return self.sphere.is_sphere() and self.separation.separated

    def to_json(self) -> dict:
        return {
            "sphere": self.sphere.to_json(),
            "surface": sorted(self.surface),
            "separation": self.separation.to_json(),
        }


def glue_disks(
    g: Graph,
    boundary_g: Iterable[int],
    h: Graph,
    boundary_h: Iterable[int],
    m: Mapping[int, int],
) -> GlueResult:
    """Identify the boundary of ``g`` with that of ``h`` through ``m``."""
    boundary_g, boundary_h = frozenset(boundary_g), frozenset(boundary_h)
    dg = is_normal_disk(g, boundary_g)
    dh = is_normal_disk(h, boundary_h)
    if not dg or not dh:
        raise PreconditionError("both pieces must be normal disks with the given boundaries")
    if dg.dim != dh.dim:
        raise PreconditionError(f"disk dimensions differ ({dg.dim} vs {dh.dim})")
    iso = isomorphism_check(g.induced(boundary_g), h.induced(boundary_h), m)
    if not iso:
        raise PreconditionError(f"boundary map is not an isomorphism: {iso.reason}")
    union, shift = gc.disjoint_union(g, h)
    classes = [{u, shift[m[u]]} for u in sorted(boundary_g)]
    qmap = gc.quotient_map(union, classes)
    glued = gc.quotient_identify(union, classes)
    surface = frozenset(qmap[u] for u in boundary_g)
    return GlueResult(glued, surface, classify_sphere(glued), partition_by_surface(glued, surface))


@dataclass(frozen=True)
class JordanResult:
    separation: Separation
    disk: SpaceClass | None
    container_contractible: bool
    surface: SpaceClass

    @property
    def ok(self) -> bool:
        return self.separation.separated and bool(self.disk) and self.container_contractible

    def to_json(self) -> dict:
        out = self.separation.to_json()
        out["surface"] = self.surface.to_json()
        out["disk"] = self.disk.to_json() if self.disk is not None else None
        out["container_contractible"] = self.container_contractible
        return out


def jordan_partition(window: Graph, s: Iterable[int], margin: int = MIN_JORDAN_MARGIN) -> JordanResult:
    """Separate a Z^n window by the (n-1)-sphere ``s`` and check the inside is a disk.

    ``window`` must be a full box generated by ``lattice.generate_window``
    (coordinates travel in the labels) with at least ``margin`` layers of
    points around the surface's bounding box.
    """
    s = frozenset(s)
    if not s:
        raise PreconditionError("the surface is empty")
    spec = lattice.window_spec_of(window)
    coords = lattice.coordinates(window)
    missing = s.difference(window.vertices)
    if missing:
        raise GraphError(f"unknown vertex {min(missing)}")
    spoints = [coords[v] for v in sorted(s)]
    have = lattice.window_margin(spec, spoints)
    if have < max(margin, MIN_JORDAN_MARGIN):
        raise PreconditionError(
            f"window margin around the surface is {have}; at least {max(margin, MIN_JORDAN_MARGIN)} is required"
        )
    surface = classify_sphere(window.induced(s))
    if surface.dim != spec.dim - 1 or not surface.is_sphere():
        raise PreconditionError(
            f"surface is not a normal {spec.dim - 1}-sphere: {surface.to_json()}"
        )
    # the surface sits in a contractible box, which is what makes it separate
    box = lattice.box_around(spoints, 0)
    box_ids = [spec.index(x) for x in box.points()]
    container = contractible(window.induced(box_ids))

    sep = partition_by_surface(window, s)
    if not sep.separated:
        return JordanResult(sep, None, container, surface)
    p = sep.partition
    corner = spec.index(spec.corner())
    a, b = (p.a, p.b) if corner in p.a else (p.b, p.a)
    if corner in s:
        raise InconsistencyError("window corner lies on the surface despite the margin check")
    part = PartitionResult(a, s, b, exterior="A")
    disk = is_normal_disk(window.induced(s | b), s)
    return JordanResult(Separation(part, 2), disk, container, surface)
