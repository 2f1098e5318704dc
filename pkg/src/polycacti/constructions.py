"""Extremal cactus families and closed-form bounds on the general Sombor index."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .graph import CactusError, PolygonalCactus, cactus_from_polygons, is_chemical
from .indices import IndexParams


class RangeError(ValueError):
    """Parameters outside the range where a bound is known to hold."""


def _check_nk(n: int, k: int, n_min: int = 1) -> None:
    if n < n_min:
        raise ValueError(f"n must be >= {n_min}, got {n}")
    if k < 3:
        raise ValueError(f"k must be >= 3, got {k}")


class _Builder:
    """Glues k-gons onto existing vertices, handing out fresh vertex ids."""

    def __init__(self, k: int):
        self.k = k
        self.next_id = 0
        self.polygons: list[list[int]] = []

    def add(self, at: int | None = None) -> list[int]:
        """New polygon through ``at`` (position 0), or a free-standing one."""
        if at is None:
            poly = list(range(self.next_id, self.next_id + self.k))
            self.next_id += self.k
        else:
            poly = [at, *range(self.next_id, self.next_id + self.k - 1)]
            self.next_id += self.k - 1
        self.polygons.append(poly)
        return poly

    def build(self) -> PolygonalCactus:
        return cactus_from_polygons(self.polygons, self.k)


def star_cactus(n: int, k: int) -> PolygonalCactus:
    """All n polygons share vertex 0."""
    _check_nk(n, k)
    b = _Builder(k)
    b.add()
    for _ in range(n - 1):
        b.add(at=0)
    return b.build()


def _chain(n: int, k: int, gap: int) -> PolygonalCactus:
    _check_nk(n, k)
    b = _Builder(k)
    poly = b.add()
    for _ in range(n - 1):
        # next polygon hangs `gap` steps round the cycle from the previous attachment
        poly = b.add(at=poly[gap])
    return b.build()


def chain_adjacent(n: int, k: int) -> PolygonalCactus:
    """Cactus chain whose in-polygon cut-vertex pairs are adjacent."""
    _check_nk(n, k, n_min=2)
    return _chain(n, k, 1)


def chain_nonadjacent(n: int, k: int) -> PolygonalCactus:
    """Cactus chain with in-polygon cut-vertex pairs at cyclic distance 2.

    One representative of the non-adjacent chain family; no such chain exists
    for triangles.
    """
    _check_nk(n, k, n_min=2)
    if k == 3:
        raise ValueError("no non-adjacent cactus chain exists for k = 3")
    return _chain(n, k, 2)


def saturation_target(n: int, k: int) -> int:
    """Largest possible number of saturated polygons in a chemical (n, k)-cactus."""
    return max(0, (n - 2) // (k - 1))


def nice_saturated(n: int, k: int) -> PolygonalCactus:
    """A chemical cactus with as many saturated polygons as possible and
    consecutively placed cut vertices on every polygon.

    The first host polygon takes a pendant at each of its vertices; every
    later host is the first pendant of the previous host and fills the
    positions following its existing cut vertex.
    """
    _check_nk(n, k)
    b = _Builder(k)
    host = b.add()
    placed = 1
    positions = range(k)
    while placed < n:
        children = []
        for pos in positions:
            if placed == n:
                break
            children.append(b.add(at=host[pos]))
            placed += 1
        host = children[0]
        positions = range(1, k)
    return b.build()


def saturated_count(c: PolygonalCactus) -> int:
    d = c.degrees
    return sum(all(d[v] >= 4 for v in poly) for poly in c.polygons)


def cut_positions_consecutive(c: PolygonalCactus, poly: tuple[int, ...]) -> bool:
    """Whether the cut vertices of ``poly`` occupy one contiguous cyclic arc."""
    flags = [v in c.cut_vertices for v in poly]
    if all(flags) or not any(flags):
        return True
    # contiguous iff the cyclic sequence switches from cut to non-cut exactly once
    return sum(flags[i] and not flags[(i + 1) % len(flags)] for i in range(len(flags))) == 1


def is_nice_saturated(c: PolygonalCactus) -> bool:
    return (
        is_chemical(c)
        and saturated_count(c) == saturation_target(c.n, c.k)
        and all(cut_positions_consecutive(c, poly) for poly in c.polygons)
    )


def n44_max(n: int, k: int) -> int:
    """Maximum number of edges joining two degree-4 vertices over chemical (n, k)-cacti."""
    if n < 3:
        raise ValueError("n must be >= 3")
    _check_nk(n, k)
    return n - 2 + (n - 2) // (k - 1)


def is_cactus_chain(c: PolygonalCactus) -> bool:
    return is_chemical(c) and all(
        sum(v in c.cut_vertices for v in poly) <= 2 for poly in c.polygons
    )


def _chain_pairs_adjacent(c: PolygonalCactus) -> list[bool]:
    out = []
    for poly in c.polygons:
        pos = [i for i, v in enumerate(poly) if v in c.cut_vertices]
        if len(pos) == 2:
            gap = (pos[1] - pos[0]) % c.k
            out.append(gap in (1, c.k - 1))
    return out


def in_family_a(c: PolygonalCactus) -> bool:
    """Cactus chain in which every in-polygon cut-vertex pair is adjacent."""
    return is_cactus_chain(c) and all(_chain_pairs_adjacent(c))


def in_family_b(c: PolygonalCactus) -> bool:
    """Cactus chain in which no in-polygon cut-vertex pair is adjacent."""
    return is_cactus_chain(c) and not any(_chain_pairs_adjacent(c))


class BoundKind(str, Enum):
    MIN_ALPHA_SOMBOR = "min_alpha_sombor"
    MAX_GENERAL = "max_general"
    MIN_GENERAL_K3 = "min_general_k3"
    MIN_GENERAL_K4PLUS = "min_general_k4plus"


@dataclass(frozen=True)
class BoundSpec:
    kind: BoundKind
    n: int
    k: int
    params: IndexParams


def check_range(spec: BoundSpec) -> None:
    """Raise :class:`RangeError` when the bound is not established for ``spec``."""
    a, b = spec.params.alpha, spec.params.beta
    if spec.n < 3 or spec.k < 3:
        raise RangeError("bounds need n >= 3 and k >= 3")
    kind = BoundKind(spec.kind)
    if kind is BoundKind.MIN_ALPHA_SOMBOR:
        if not a > 1:
            raise RangeError(f"parameter range not covered: min alpha-Sombor bound needs alpha > 1, got {a}")
        if not math.isclose(b, 1 / a, rel_tol=1e-12):
            raise RangeError("min alpha-Sombor bound needs beta = 1/alpha")
    elif kind is BoundKind.MAX_GENERAL:
        if not ((a >= 1 and b > 1) or (a == 2 and 0.5 <= b < 1)):
            raise RangeError(
                f"parameter range not covered: max bound needs alpha>=1, beta>1 or alpha=2, 1/2<=beta<1; got ({a}, {b})"
            )
    else:
        if not (a >= 1 and b > 1):
            raise RangeError(f"parameter range not covered: min bound needs alpha>=1, beta>1; got ({a}, {b})")
        if kind is BoundKind.MIN_GENERAL_K3 and spec.k != 3:
            raise RangeError("min_general_k3 applies to k = 3 only")
        if kind is BoundKind.MIN_GENERAL_K4PLUS and spec.k < 4:
            raise RangeError("min_general_k4plus applies to k >= 4 only")


def bound_value(spec: BoundSpec, check: bool = True) -> float:
    """Closed-form extremal value. ``check=False`` evaluates outside the proven range."""
    if check:
        check_range(spec)
    n, k = spec.n, spec.k
    a, b = spec.params.alpha, spec.params.beta
    kind = BoundKind(spec.kind)
    if kind is BoundKind.MIN_ALPHA_SOMBOR:
        inv = 1 / a
        two = 2**inv
        r24 = (2**a + 4**a) ** inv
        return math.fsum(
            [(4 * n - 4) * r24, 2 * (n * k - 4 * n + 4) * two, (6 * two - 2 * r24) * n44_max(n, k)]
        )
    if kind is BoundKind.MAX_GENERAL:
        return 2 * n * ((2 * n) ** a + 2**a) ** b + n * (k - 2) * (2 ** (a + 1)) ** b
    if kind is BoundKind.MIN_GENERAL_K3:
        return 2 * (2 ** (a + 1)) ** b + 2 * n * (4**a + 2**a) ** b + (n - 2) * (2 * 4**a) ** b
    return (k * n - 4 * n + 4) * (2 ** (a + 1)) ** b + (4 * n - 4) * (4**a + 2**a) ** b


def min_general_kind(k: int) -> BoundKind:
    return BoundKind.MIN_GENERAL_K3 if k == 3 else BoundKind.MIN_GENERAL_K4PLUS


__all__ = [
    "BoundKind",
    "BoundSpec",
    "CactusError",
    "RangeError",
    "bound_value",
    "chain_adjacent",
    "chain_nonadjacent",
    "check_range",
    "cut_positions_consecutive",
    "in_family_a",
    "in_family_b",
    "is_cactus_chain",
    "is_nice_saturated",
    "min_general_kind",
    "n44_max",
    "nice_saturated",
    "saturated_count",
    "saturation_target",
    "star_cactus",
]
