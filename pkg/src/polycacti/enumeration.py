"""Canonical codes, exhaustive enumeration and random sampling of polygonal cacti.

A polygonal cactus is a tree of polygons glued at cut vertices, so its
isomorphism class is captured by an AHU-style code of the block-cut tree,
rooted at its centre, where each polygon lists the codes hanging off its k
positions and is minimised over its dihedral symmetries.
"""

from __future__ import annotations

import hashlib
import os
import random
from concurrent.futures import ProcessPoolExecutor
from typing import Iterator

from .graph import PolygonalCactus, cactus_from_polygons

CactusCode = str

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    pass


def default_budget() -> int:
    raw = os.environ.get("SOMBOR_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


def _tree_center(c: PolygonalCactus) -> tuple[str, int]:
    """Centre node of the block-cut tree, as ('P', polygon) or ('V', vertex)."""
    nbrs: dict[tuple[str, int], list[tuple[str, int]]] = {("P", i): [] for i in range(c.n)}
    for v in c.cut_vertices:
        node = ("V", v)
        nbrs[node] = [("P", i) for i in c.vertex_polygons[v]]
        for p in nbrs[node]:
            nbrs[p].append(node)
    degree = {x: len(y) for x, y in nbrs.items()}
    layer = [x for x, d in degree.items() if d <= 1]
    remaining = len(nbrs)
    # Leaves are always polygons, so the diameter is even and the centre unique.
    while remaining > 1:
        remaining -= len(layer)
        nxt = []
        for x in layer:
            for y in nbrs[x]:
                degree[y] -= 1
                if degree[y] == 1:
                    nxt.append(y)
        layer = nxt
    return layer[0]


def canonical_code(c: PolygonalCactus) -> CactusCode:
    """Relabelling-invariant string identifying the isomorphism class of ``c``."""
    cuts = c.cut_vertices
    vp = c.vertex_polygons

    def vertex_code(v: int, parent: int | None) -> str:
        kids = sorted(polygon_code(p, v) for p in vp[v] if p != parent)
        return "V(" + "".join(kids) + ")"

    def polygon_code(i: int, parent: int | None) -> str:
        poly = c.polygons[i]
        desc = [
            "^" if v == parent else (vertex_code(v, i) if v in cuts else ".")
            for v in poly
        ]
        k = len(desc)
        if parent is None:
            starts = range(k)
        else:
            starts = [poly.index(parent)]
        best: list[str] | None = None
        for s in starts:
            fwd = desc[s:] + desc[:s]
            for cand in (fwd, [fwd[0], *reversed(fwd[1:])]):
                if best is None or cand < best:
                    best = cand
        assert best is not None
        return "P[" + ",".join(best) + "]"

    kind, x = _tree_center(c)
    body = polygon_code(x, None) if kind == "P" else vertex_code(x, None)
    return f"{c.k}:{body}"


def code_hash(code: CactusCode) -> str:
    return hashlib.sha1(code.encode()).hexdigest()[:16]


def glue(c: PolygonalCactus, v: int) -> PolygonalCactus:
    """Attach a new k-polygon to ``c`` at vertex ``v``."""
    base = c.graph.vertex_count
    new = (v, *range(base, base + c.k - 1))
    return cactus_from_polygons((*c.polygons, new), c.k)


def _cycle(k: int) -> PolygonalCactus:
    return cactus_from_polygons([range(k)], k)


def _extend(parents: list[PolygonalCactus]) -> list[tuple[CactusCode, PolygonalCactus]]:
    out = []
    for c in parents:
        seen: set[CactusCode] = set()
        for v in range(c.graph.vertex_count):
            child = glue(c, v)
            code = canonical_code(child)
            if code not in seen:
                seen.add(code)
                out.append((code, child))
    return out


def _next_level(
    level: list[PolygonalCactus], budget: int, workers: int
) -> list[PolygonalCactus]:
    found: dict[CactusCode, PolygonalCactus] = {}
    if workers > 1 and len(level) >= 4 * workers:
        size = -(-len(level) // (4 * workers))
        chunks = [level[i : i + size] for i in range(0, len(level), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = [pair for part in pool.map(_extend, chunks) for pair in part]
    else:
        results = _extend(level)
    # Merging in parent order keeps the representatives identical to a serial run.
    for code, child in results:
        if code not in found:
            found[code] = child
            if len(found) > budget:
                raise BudgetExceeded(f"more than {budget} isomorphism classes; raise SOMBOR_BUDGET")
    return [found[code] for code in sorted(found)]


def enumerate_cacti(
    n: int, k: int, budget: int | None = None, workers: int = 1
) -> Iterator[PolygonalCactus]:
    """Yield one cactus per isomorphism class of k-polygonal cacti with n polygons.

    Classes come out in ascending canonical-code order. Built level by level
    by gluing a polygon at every vertex of every smaller class.
    """
    if n < 1 or k < 3:
        raise ValueError("need n >= 1 and k >= 3")
    budget = default_budget() if budget is None else budget
    level = [_cycle(k)]
    for _ in range(n - 1):
        level = _next_level(level, budget, workers)
    yield from level


def count_cacti(n: int, k: int, budget: int | None = None, workers: int = 1) -> int:
    return sum(1 for _ in enumerate_cacti(n, k, budget, workers))


def random_cactus(n: int, k: int, seed: int) -> PolygonalCactus:
    """Cactus built from n-1 gluings at uniformly chosen vertices.

    Uniform over gluing sequences, not over isomorphism classes.
    """
    rng = random.Random(seed)
    c = _cycle(k)
    for _ in range(n - 1):
        c = glue(c, rng.randrange(c.graph.vertex_count))
    return c
