"""Euler characteristic and homology of the clique (flag) complex of a graph."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceeded
from .graph import Graph

DEFAULT_MAX_CLIQUES = 1_000_000

INTEGERS = "int"
MOD2 = "mod2"


def cliques(g: Graph, max_size: int | None = None, max_cliques: int = DEFAULT_MAX_CLIQUES) -> list[list[tuple[int, ...]]]:
    """All cliques grouped by size; ``out[k]`` holds the (k+1)-vertex cliques, sorted."""
    out: list[list[tuple[int, ...]]] = []
    count = 0

    def grow(clique: tuple[int, ...], cands: list[int]):
        nonlocal count
        k = len(clique)
        while len(out) < k:
            out.append([])
        out[k - 1].append(clique)
        count += 1
        if count > max_cliques:
            raise BudgetExceeded(f"more than {max_cliques} cliques")
        if max_size is not None and k >= max_size:
            return
        for i, v in enumerate(cands):
            nv = g.neighbors(v)
            grow(clique + (v,), [u for u in cands[i + 1:] if u in nv])

    for v in g.vertices:
        grow((v,), sorted(u for u in g.neighbors(v) if u > v))
    for level in out:
        level.sort()
    return out


@dataclass(frozen=True)
class CliqueTally:
    counts: tuple[int, ...]

    def __getitem__(self, k: int) -> int:
        """Number of k-vertex cliques (k >= 1)."""
        return self.counts[k - 1] if 1 <= k <= len(self.counts) else 0


def enumerate_cliques(g: Graph, max_size: int | None = None, max_cliques: int = DEFAULT_MAX_CLIQUES) -> CliqueTally:
    return CliqueTally(tuple(len(c) for c in cliques(g, max_size, max_cliques)))


def euler_characteristic(g: Graph, max_cliques: int = DEFAULT_MAX_CLIQUES) -> int:
    tally = enumerate_cliques(g, max_cliques=max_cliques)
    return sum((-1) ** k * c for k, c in enumerate(tally.counts))


def _boundary(faces: list[tuple[int, ...]], cells: list[tuple[int, ...]]) -> list[dict[int, int]]:
    """Columns of the boundary map as sparse {row: coefficient} dicts."""
    index = {f: i for i, f in enumerate(faces)}
    cols = []
    for c in cells:
        col = {}
        for j in range(len(c)):
            col[index[c[:j] + c[j + 1:]]] = -1 if j % 2 else 1
        cols.append(col)
    return cols


def smith_diagonal(cols: list[dict[int, int]], nrows: int) -> list[int]:
    """Non-zero invariant factors of an integer matrix given by sparse columns."""
    a = [[0] * len(cols) for _ in range(nrows)]
    for j, col in enumerate(cols):
        for i, x in col.items():
            a[i][j] = x
    m, n = nrows, len(cols)
    diag = []
    t = 0
    while t < min(m, n):
        # smallest non-zero entry of the remaining block as pivot
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        a[t], a[pi] = a[pi], a[t]
        if pj != t:
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                x = a[i][t]
                if x:
                    q = x // p
                    if q:
                        ri, rt = a[i], a[t]
                        for j in range(t, n):
                            if rt[j]:
                                ri[j] -= q * rt[j]
                    if a[i][t]:
                        dirty = True
            rt = a[t]
            for j in range(t + 1, n):
                x = rt[j]
                if x:
                    q = x // p
                    if q:
                        for i in range(t, m):
                            if a[i][t]:
                                a[i][j] -= q * a[i][t]
                    if rt[j]:
                        dirty = True
            if dirty:
                # move the smallest leftover in the pivot row/column into place
                cand = [(abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]]
                _, ci, cj = min(cand)
                if ci != t:
                    a[t], a[ci] = a[ci], a[t]
                else:
                    for row in a:
                        row[t], row[cj] = row[cj], row[t]
                continue
            # pivot must divide the rest of the block
            bad = next(
                (i for i in range(t + 1, m) if any(a[i][j] % p for j in range(t + 1, n))), None
            )
            if bad is None:
                break
            ri, rt = a[bad], a[t]
            for j in range(t, n):
                rt[j] += ri[j]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def rank_mod2(cols: list[dict[int, int]]) -> int:
    pivots: dict[int, int] = {}
    rank = 0
    for col in cols:
        v = 0
        for i, x in col.items():
            if x % 2:
                v |= 1 << i
        while v:
            top = v.bit_length() - 1
            if top in pivots:
                v ^= pivots[top]
            else:
                pivots[top] = v
                rank += 1
                break
    return rank


@dataclass(frozen=True)
class HomologySummary:
    euler: int
    betti: tuple[int, ...]
    torsion: tuple[bool, ...]
    coefficients: str = INTEGERS

    def to_json(self) -> dict:
        return {"euler": self.euler, "betti": list(self.betti), "torsion": list(self.torsion)}


def betti_numbers(g: Graph, coefficients: str = INTEGERS, max_cliques: int = DEFAULT_MAX_CLIQUES) -> HomologySummary:
    """Betti numbers of the clique complex, over the integers or mod 2.

    Over the integers ``torsion[k]`` flags invariant factors greater than one
    in the boundary map into dimension k.  Over mod 2 no torsion is reported.
    Vectors stop at the last dimension with non-trivial homology.
    """
    if coefficients not in (INTEGERS, MOD2):
        raise ValueError(f"unknown coefficients {coefficients!r}")
    simplices = cliques(g, max_cliques=max_cliques)
    top = len(simplices)
    ranks = [0] * (top + 1)
    torsion = [False] * top
    for k in range(1, top):
        cols = _boundary(simplices[k - 1], simplices[k])
        if coefficients == MOD2:
            ranks[k] = rank_mod2(cols)
        else:
            d = smith_diagonal(cols, len(simplices[k - 1]))
            ranks[k] = len(d)
            torsion[k - 1] = any(x > 1 for x in d)
    betti = [len(simplices[k]) - ranks[k] - ranks[k + 1] for k in range(top)]
    # trailing dimensions with trivial homology carry no information
    while betti and not betti[-1] and not torsion[len(betti) - 1]:
        betti.pop()
    torsion = torsion[: len(betti)]
    euler = sum((-1) ** k * len(s) for k, s in enumerate(simplices))
    return HomologySummary(euler, tuple(betti), tuple(torsion), coefficients)
