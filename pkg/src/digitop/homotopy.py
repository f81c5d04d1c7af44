"""Contractible transformations: simple points and edges, reductions, certificates.

A graph is contractible when simple-point deletions take it down to a
single vertex.  Deleting a simple point never changes the homotopy type,
and a contractible graph with more than one vertex always has a simple
point, so any maximal greedy deletion sequence decides contractibility.
The greedy rule is fixed: delete the least-id simple point.

The empty graph is not contractible, hence vertices with empty rims and
edges with empty joint rims are never simple.
"""

from __future__ import annotations

import contextlib
import contextvars
import random
import threading
from dataclasses import dataclass, field

from . import graph as gc
from .canon import CANON_CAP, canonical_code
from .errors import BudgetExceeded, GraphError, InconsistencyError, PreconditionError, StepError
from .graph import Graph

DEFAULT_MAX_STEPS = 10_000_000

# graphs smaller than this are cheaper to decide than to canonicalize
CANON_MIN_SIZE = 7


class Budget:
    def __init__(self, max_steps: int = DEFAULT_MAX_STEPS):
        self.max_steps = max_steps
        self.used = 0
        self._lock = threading.Lock()

    def spend(self, n: int = 1) -> None:
        with self._lock:
            self.used += n
            if self.used > self.max_steps:
                raise BudgetExceeded(f"work budget of {self.max_steps} steps exhausted")


_budget: contextvars.ContextVar[Budget | None] = contextvars.ContextVar("digitop_budget", default=None)


@contextlib.contextmanager
def work_budget(max_steps: int = DEFAULT_MAX_STEPS):
    """Bound the number of engine steps spent inside the block."""
    b = Budget(max_steps)
    token = _budget.set(b)
    try:
        yield b
    finally:
        _budget.reset(token)


def _spend(n: int = 1) -> None:
    b = _budget.get()
    if b is not None:
        b.spend(n)


class MemoCache:
    """Thread-safe map from graph keys to immutable results."""

    def __init__(self):
        self._data: dict = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, key, default=None):
        with self._lock:
            if key in self._data:
                self.hits += 1
                return self._data[key]
            self.misses += 1
            return default

    def setdefault(self, key, value):
        with self._lock:
            return self._data.setdefault(key, value)

    def clear(self) -> None:
        with self._lock:
            self._data.clear()
            self.hits = self.misses = 0

    def __len__(self) -> int:
        return len(self._data)


_contractible_cache = MemoCache()


def clear_caches() -> None:
    _contractible_cache.clear()


def contractible(g: Graph) -> bool:
    """Memoized contractibility decision without a certificate."""
    n = len(g)
    if n == 0:
        return False
    if n == 1:
        return True
    if any(len(g.neighbors(v)) == n - 1 for v in g.vertices):
        # a cone over anything reduces to its apex
        return True
    if not gc.is_connected(g):
        return False
    skey = ("s", g.key())
    hit = _contractible_cache.get(skey)
    if hit is not None:
        return hit
    ckey = None
    if CANON_MIN_SIZE <= n <= CANON_CAP:
        ckey = ("c", canonical_code(g))
        hit = _contractible_cache.get(ckey)
        if hit is not None:
            _contractible_cache.setdefault(skey, hit)
            return hit
    result = _greedy_decide(g)
    _contractible_cache.setdefault(skey, result)
    if ckey is not None:
        _contractible_cache.setdefault(ckey, result)
    return result


def _greedy_decide(g: Graph) -> bool:
    current = g
    status: dict[int, bool] = {}
    while len(current) > 1:
        _spend()
        n = len(current)
        if any(len(current.neighbors(v)) == n - 1 for v in current.vertices):
            return True
        victim = None
        for v in current.vertices:
            s = status.get(v)
            if s is None:
                s = status[v] = contractible(gc.rim(current, v))
            if s:
                victim = v
                break
        if victim is None:
            return False
        for u in current.neighbors(victim):
            status.pop(u, None)
        status.pop(victim, None)
        current = current.without((victim,))
    return True


# -- simple points and edges ---------------------------------------------


def is_simple_point(g: Graph, v: int) -> bool:
    return contractible(gc.rim(g, v))


def is_simple_edge(g: Graph, u: int, v: int) -> bool:
    if not g.has_edge(u, v):
        raise GraphError(f"({u},{v}) is not an edge")
    return contractible(gc.mutual_rim(g, (u, v)))


def simple_points(g: Graph) -> list[int]:
    return [v for v in g.vertices if is_simple_point(g, v)]


# -- steps and traces ----------------------------------------------------

DELETE_POINT = "delete-point"
ATTACH_POINT = "attach-point"
DELETE_EDGE = "delete-edge"
ATTACH_EDGE = "attach-edge"
KINDS = (DELETE_POINT, ATTACH_POINT, DELETE_EDGE, ATTACH_EDGE)


@dataclass(frozen=True)
class TransformationStep:
    """One contractible transformation.

    ``subject`` is a vertex id for point steps and a sorted pair for edge
    steps.  ``rim`` holds the deleted vertex's rim (delete-point) or the
    attachment set (attach-point), which makes every step invertible.
    """

    kind: str
    subject: int | tuple[int, int]
    rim: frozenset[int] = frozenset()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise StepError(f"unknown step kind {self.kind!r}")
        if self.kind in (DELETE_EDGE, ATTACH_EDGE):
            if not (isinstance(self.subject, tuple) and len(self.subject) == 2):
                raise StepError(f"{self.kind} needs a vertex pair")
            u, v = self.subject
            if u == v:
                raise StepError(f"{self.kind} needs two distinct vertices")
            object.__setattr__(self, "subject", (min(u, v), max(u, v)))
        elif not isinstance(self.subject, int):
            raise StepError(f"{self.kind} needs a single vertex id")
        object.__setattr__(self, "rim", frozenset(self.rim))

    def inverse(self) -> TransformationStep:
        flip = {DELETE_POINT: ATTACH_POINT, ATTACH_POINT: DELETE_POINT,
                DELETE_EDGE: ATTACH_EDGE, ATTACH_EDGE: DELETE_EDGE}
        return TransformationStep(flip[self.kind], self.subject, self.rim)

    def to_json(self) -> dict:
        if self.kind in (DELETE_EDGE, ATTACH_EDGE):
            return {"op": self.kind, "u": self.subject[0], "v": self.subject[1]}
        return {"op": self.kind, "v": self.subject, "rim": sorted(self.rim)}

    @classmethod
    def from_json(cls, d: dict) -> TransformationStep:
        try:
            op = d["op"]
            if op in (DELETE_EDGE, ATTACH_EDGE):
                return cls(op, (int(d["u"]), int(d["v"])))
            return cls(op, int(d["v"]), frozenset(int(x) for x in d.get("rim", ())))
        except (KeyError, TypeError, ValueError) as exc:
            raise StepError(f"malformed step {d!r}: {exc}") from None


@dataclass(frozen=True)
class ReductionTrace:
    start: str
    steps: tuple[TransformationStep, ...]
    end: str

    def to_json(self) -> dict:
        return {"start": self.start, "steps": [s.to_json() for s in self.steps], "end": self.end}

    @classmethod
    def from_json(cls, d: dict) -> ReductionTrace:
        return cls(d["start"], tuple(TransformationStep.from_json(s) for s in d["steps"]), d["end"])

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class ContractibilityVerdict:
    """Contractible with a reduction trace, or stuck at a witness graph."""

    trace: ReductionTrace | None = None
    stuck: Graph | None = field(default=None)

    @property
    def contractible(self) -> bool:
        return self.trace is not None

    def __bool__(self) -> bool:
        return self.contractible

    def to_json(self) -> dict:
        if self.trace is not None:
            return {"class": "contractible", "steps": len(self.trace)}
        return {
            "class": "not-contractible",
            "witness": {
                "vertices": list(self.stuck.vertices),
                "edges": [list(e) for e in self.stuck.edges],
            },
        }


def apply_step(g: Graph, step: TransformationStep, validate: bool = True) -> Graph:
    """Apply ``step``; with ``validate`` the step must be a contractible transformation."""
    kind, subject = step.kind, step.subject
    if kind == DELETE_POINT:
        if subject not in g:
            raise StepError(f"cannot delete unknown vertex {subject}")
        if step.rim and step.rim != g.neighbors(subject):
            raise StepError(f"recorded rim of {subject} does not match the graph")
        if validate and not is_simple_point(g, subject):
            raise StepError(f"vertex {subject} is not simple")
        return g.without((subject,))
    if kind == ATTACH_POINT:
        if subject in g:
            raise StepError(f"vertex {subject} already exists")
        missing = step.rim.difference(g.vertices)
        if missing:
            raise StepError(f"attachment rim names unknown vertex {min(missing)}")
        if validate and not contractible(g.induced(step.rim)):
            raise StepError(f"attachment rim of {subject} is not contractible")
        return g.with_vertex(subject, step.rim)
    u, v = subject
    if u not in g or v not in g:
        raise StepError(f"edge step on unknown vertices ({u},{v})")
    if kind == DELETE_EDGE:
        if not g.has_edge(u, v):
            raise StepError(f"({u},{v}) is not an edge")
        if validate and not is_simple_edge(g, u, v):
            raise StepError(f"edge ({u},{v}) is not simple")
        return g.without_edge(u, v)
    if g.has_edge(u, v):
        raise StepError(f"({u},{v}) is already an edge")
    if validate and not contractible(g.induced(g.neighbors(u) & g.neighbors(v))):
        raise StepError(f"attaching ({u},{v}) would not be a simple edge")
    return g.with_edge(u, v)


def replay(g: Graph, trace: ReductionTrace, validate: bool = True) -> Graph:
    """Re-run a trace from ``g``, checking both end digests."""
    if g.digest() != trace.start:
        raise StepError("trace start digest does not match the graph")
    for step in trace.steps:
        g = apply_step(g, step, validate)
    if g.digest() != trace.end:
        raise StepError("trace end digest does not match the replayed graph")
    return g


def is_contractible(g: Graph) -> ContractibilityVerdict:
    """Decide contractibility by greedy least-id deletion, with a certificate."""
    start = g.digest()
    current = g
    steps = []
    status: dict[int, bool] = {}
    if not len(g):
        return ContractibilityVerdict(stuck=g)
    while len(current) > 1:
        _spend()
        victim = None
        for v in current.vertices:
            s = status.get(v)
            if s is None:
                s = status[v] = is_simple_point(current, v)
            if s:
                victim = v
                break
        if victim is None:
            return ContractibilityVerdict(stuck=current)
        nbrs = current.neighbors(victim)
        steps.append(TransformationStep(DELETE_POINT, victim, nbrs))
        for u in nbrs:
            status.pop(u, None)
        status.pop(victim, None)
        current = current.without((victim,))
    return ContractibilityVerdict(trace=ReductionTrace(start, tuple(steps), current.digest()))


def reduce_to_subgraph(g: Graph, h) -> ReductionTrace:
    """Delete simple points outside ``h`` until exactly ``h`` remains."""
    h = frozenset(h)
    missing = h.difference(g.vertices)
    if missing:
        raise PreconditionError(f"target set names unknown vertex {min(missing)}")
    if not contractible(g.induced(h)):
        raise PreconditionError("target subgraph is not contractible")
    if not contractible(g):
        raise PreconditionError("graph is not contractible")
    start = g.digest()
    current = g
    steps = []
    status: dict[int, bool] = {}
    while len(current) > len(h):
        _spend()
        victim = None
        for v in current.vertices:
            if v in h:
                continue
            s = status.get(v)
            if s is None:
                s = status[v] = is_simple_point(current, v)
            if s:
                victim = v
                break
        if victim is None:
            raise InconsistencyError(
                "greedy reduction got stuck although both graphs are contractible"
            )
        nbrs = current.neighbors(victim)
        steps.append(TransformationStep(DELETE_POINT, victim, nbrs))
        for u in nbrs:
            status.pop(u, None)
        status.pop(victim, None)
        current = current.without((victim,))
    return ReductionTrace(start, tuple(steps), current.digest())


def random_contractible_subspace(g: Graph, target_size: int, seed: int) -> frozenset[int]:
    """Grow a contractible vertex set from a seeded random start vertex."""
    if not len(g):
        raise GraphError("graph is empty")
    rng = random.Random(seed)
    chosen = {rng.choice(g.vertices)}
    rejected: set[int] = set()
    while len(chosen) < target_size:
        frontier = sorted({u for v in chosen for u in g.neighbors(v)} - chosen - rejected)
        if not frontier:
            break
        c = rng.choice(frontier)
        if contractible(g.induced(chosen | {c})):
            chosen.add(c)
            rejected.clear()
        else:
            rejected.add(c)
    return frozenset(chosen)


def random_step(g: Graph, rng: random.Random) -> TransformationStep | None:
    """Pick a random valid contractible transformation of ``g``, or None."""
    kinds = list(KINDS)
    rng.shuffle(kinds)
    for kind in kinds:
        if kind == DELETE_POINT:
            cands = [v for v in g.vertices if len(g) > 1 and is_simple_point(g, v)]
            if cands:
                v = rng.choice(cands)
                return TransformationStep(kind, v, g.neighbors(v))
        elif kind == ATTACH_POINT and len(g):
            size = rng.randint(1, max(1, min(4, len(g))))
            rim_set = random_contractible_subspace(g, size, rng.randrange(2**32))
            return TransformationStep(kind, g.vertices[-1] + 1, rim_set)
        elif kind == DELETE_EDGE:
            cands = [e for e in g.edges if is_simple_edge(g, *e)]
            if cands:
                return TransformationStep(kind, rng.choice(cands))
        elif kind == ATTACH_EDGE:
            verts = g.vertices
            cands = [
                (u, v)
                for i, u in enumerate(verts)
                for v in verts[i + 1:]
                if not g.has_edge(u, v) and contractible(g.induced(g.neighbors(u) & g.neighbors(v)))
            ]
            if cands:
                return TransformationStep(kind, rng.choice(cands))
    return None
