"""General Sombor family of degree-based indices and related inequality tools.

The edge kernel is ``r(s, t) = (s**alpha + t**alpha)**beta``; every index here
is a sum of that kernel over the edges, with ``(s, t)`` the end degrees.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Mapping, Sequence

from .graph import Graph, PolygonalCactus


@dataclass(frozen=True)
class IndexParams:
    alpha: float
    beta: float

    def __post_init__(self) -> None:
        if self.alpha == 0:
            raise ValueError("alpha must be nonzero")

    @classmethod
    def alpha_sombor(cls, alpha: float) -> IndexParams:
        if alpha == 0:
            raise ValueError("alpha must be nonzero")
        return cls(alpha, 1.0 / alpha)


NAMED_INDICES: dict[str, tuple[float, float]] = {
    "sombor": (2.0, 0.5),
    "first_zagreb": (1.0, 1.0),
    "modified_first_zagreb": (-3.0, 1.0),
    "forgotten": (2.0, 1.0),
    "inverse_degree": (-2.0, 1.0),
    "modified_sombor": (2.0, -0.5),
    "first_banhatti_sombor": (-2.0, 0.5),
    "general_sum_connectivity": (1.0, 1.0),
}
"""Name -> (alpha, beta). ``general_sum_connectivity`` takes any beta; 1 is its default."""


def r(s: float, t: float, p: IndexParams) -> float:
    if s <= 0 or t <= 0:
        raise ValueError(f"degrees must be positive, got ({s}, {t})")
    return (s**p.alpha + t**p.alpha) ** p.beta


def _graph_of(c: PolygonalCactus | Graph) -> Graph:
    return c.graph if isinstance(c, PolygonalCactus) else c


def general_sombor(c: PolygonalCactus | Graph, p: IndexParams) -> float:
    g = _graph_of(c)
    d = g.degrees
    return math.fsum(r(d[u], d[v], p) for u, v in sorted(g.edges))


def alpha_sombor(c: PolygonalCactus | Graph, alpha: float) -> float:
    return general_sombor(c, IndexParams.alpha_sombor(alpha))


def named_index(c: PolygonalCactus | Graph, name: str, beta: float | None = None) -> float:
    """Evaluate one of the classical indices in :data:`NAMED_INDICES`.

    ``beta`` is only accepted for ``general_sum_connectivity``.
    """
    if name not in NAMED_INDICES:
        raise ValueError(f"unknown index {name!r}; choose from {sorted(NAMED_INDICES)}")
    alpha, b = NAMED_INDICES[name]
    if beta is not None:
        if name != "general_sum_connectivity":
            raise ValueError(f"{name} has a fixed beta")
        b = beta
    return general_sombor(c, IndexParams(alpha, b))


def exact_general_sombor(c: PolygonalCactus | Graph, alpha: int, beta: int) -> Fraction:
    """Rational value of the index for integer alpha and positive integer beta."""
    if int(alpha) != alpha or int(beta) != beta or beta <= 0 or alpha == 0:
        raise ValueError("exact evaluation needs integer alpha != 0 and integer beta > 0")
    a, b = int(alpha), int(beta)
    g = _graph_of(c)
    d = g.degrees
    return sum(((Fraction(d[u]) ** a + Fraction(d[v]) ** a) ** b for u, v in g.edges), Fraction(0))


@dataclass(frozen=True)
class EdgeTypeCounts:
    """Multiplicities of edges by unordered end-degree pair ``(s, t)``, ``s <= t``."""

    counts: Mapping[tuple[int, int], int]
    n: int
    k: int

    def __getitem__(self, key: tuple[int, int]) -> int:
        s, t = key
        return self.counts.get((min(s, t), max(s, t)), 0)

    def check_identities(self) -> None:
        """Raise if the edge-count and vertex-count identities fail (exact arithmetic)."""
        total = sum(self.counts.values())
        if total != self.n * self.k:
            raise ValueError(f"edge types sum to {total}, expected nk = {self.n * self.k}")
        weighted = sum((Fraction(1, s) + Fraction(1, t)) * m for (s, t), m in self.counts.items())
        expected = self.n * self.k - self.n + 1
        if weighted != expected:
            raise ValueError(f"vertex identity gives {weighted}, expected nk-n+1 = {expected}")


def edge_type_counts(c: PolygonalCactus) -> EdgeTypeCounts:
    d = c.degrees
    counts: Counter[tuple[int, int]] = Counter()
    for u, v in c.graph.edges:
        a, b = d[u], d[v]
        counts[(min(a, b), max(a, b))] += 1
    return EdgeTypeCounts(dict(sorted(counts.items())), c.n, c.k)


def sombor_via_counts(counts: EdgeTypeCounts, alpha: float) -> float:
    """alpha-Sombor index rebuilt from edge-type counts.

    Uses the decomposition into a base term linear in n and k, a correction
    proportional to the number of (4,4) edges, and per-type corrections for
    every pair involving a degree above 4.

    The per-type correction comes from eliminating ``n22`` and ``n24`` with
    the two counting identities. With ``w = 1/s + 1/t`` each such edge shifts
    ``n24`` by ``4(w - 1)`` and ``n22`` by ``3 - 4w``, so its weight is
    ``r(s,t) + 4(w - 1) r(2,4) + (3 - 4w) r(2,2)``.
    """
    counts.check_identities()
    n, k = counts.n, counts.k
    inv = 1.0 / alpha
    two = 2.0**inv
    r24 = (2.0**alpha + 4.0**alpha) ** inv
    terms = [
        (4 * n - 4) * r24,
        2 * (n * k - 4 * n + 4) * two,
        (6 * two - 2 * r24) * counts[(4, 4)],
    ]
    for (s, t), m in counts.counts.items():
        if (s, t) in ((2, 2), (2, 4), (4, 4)):
            continue
        w = 1 / s + 1 / t
        eta = (s**alpha + t**alpha) ** inv + 4 * (w - 1) * r24 + (3 - 4 * w) * 2 * two
        terms.append(eta * m)
    return math.fsum(terms)


def delta(alpha: float, p: int, s: float, t: float) -> float:
    """Increase of the alpha-Sombor edge weight when ``s`` grows by ``p``."""
    if s <= 0 or t <= 0:
        raise ValueError("s and t must be positive")
    inv = 1.0 / alpha
    return ((s + p) ** alpha + t**alpha) ** inv - (s**alpha + t**alpha) ** inv


def majorizes(pi: Sequence[float], pi_prime: Sequence[float], tol: float = 1e-12) -> bool:
    """True iff ``pi`` is strictly majorized by ``pi_prime``.

    Both sequences are sorted non-increasingly first. Integer inputs are
    compared exactly; otherwise sums use absolute tolerance ``tol``.
    """
    if len(pi) != len(pi_prime):
        raise ValueError("sequences must have equal length")
    a = sorted(pi, reverse=True)
    b = sorted(pi_prime, reverse=True)
    if any(x < 0 for x in a + b):
        raise ValueError("sequences must be nonnegative")
    exact = all(isinstance(x, (int, Fraction)) for x in a + b)
    eps = 0 if exact else tol
    if a == b:
        return False
    pa = pb = 0
    for x, y in zip(a, b):
        pa += x
        pb += y
        if pa > pb + eps:
            return False
    return abs(pa - pb) <= eps


EdgeFunction = Callable[[float, float], float]


def _gap_tol(*vals: float) -> float:
    return 1e-12 * max(1.0, *(abs(v) for v in vals))


def escalating_violations(
    f: EdgeFunction, grid: Iterable[float], strict: bool = True
) -> list[tuple[float, float, float, float]]:
    """Quadruples ``(s1, s2, t1, t2)`` on ``grid`` breaking the exchange inequality.

    The inequality is ``f(s1,s2) + f(t1,t2) >= f(s2,t1) + f(s1,t2)`` for
    ``s1 >= t1`` and ``s2 >= t2``; with ``strict`` it must be strict when both
    comparisons are strict. An empty result only means no counterexample on
    this grid.
    """
    g = sorted(set(grid))
    out = []
    for s1, s2, t1, t2 in product(g, repeat=4):
        if s1 < t1 or s2 < t2:
            continue
        lhs = f(s1, s2) + f(t1, t2)
        rhs = f(s2, t1) + f(s1, t2)
        tol = _gap_tol(lhs, rhs)
        if strict and s1 > t1 and s2 > t2:
            bad = lhs - rhs <= tol
        else:
            bad = lhs - rhs < -tol
        if bad:
            out.append((s1, s2, t1, t2))
    return out


def special_escalating_violations(
    f: EdgeFunction, l_max: int, grid: Iterable[float], strict: bool = True
) -> list[tuple]:
    """All counterexamples to the special-escalating conditions found on a grid.

    Entries are tagged tuples: ``("exchange", s1, s2, t1, t2)``,
    ``("star", l)`` for ``4f(2l,2) - f(2l-2,4) - f(2l-2,2) - f(4,2) - f(4,4) >= 0``
    and ``("monotone", s1, s2, t1, t2)`` for ``f(s1,s2) >= f(t1,t2)``.
    """
    if l_max < 3:
        raise ValueError("l_max must be >= 3")
    g = sorted(set(grid))
    out: list[tuple] = [("exchange", *q) for q in escalating_violations(f, g, strict)]
    for l in range(3, l_max + 1):
        parts = [4 * f(2 * l, 2), -f(2 * l - 2, 4), -f(2 * l - 2, 2), -f(4, 2), -f(4, 4)]
        if math.fsum(parts) < -_gap_tol(*parts):
            out.append(("star", l))
    g2 = [x for x in g if x >= 2]
    for s1, s2, t1, t2 in product(g2, repeat=4):
        if s1 < t1 or s2 < t2:
            continue
        a, b = f(s1, s2), f(t1, t2)
        if a - b < -_gap_tol(a, b):
            out.append(("monotone", s1, s2, t1, t2))
    return out


def kernel(p: IndexParams) -> EdgeFunction:
    """The edge kernel as a two-argument function, for the escalating checks."""
    return lambda s, t: r(s, t, p)
