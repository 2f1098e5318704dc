"""Exit criteria for the package, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary under "acceptance criteria".
"""

import math
import random
import time
from itertools import product

import pytest

from polycacti.constructions import is_nice_saturated, n44_max
from polycacti.enumeration import canonical_code, count_cacti, enumerate_cacti, random_cactus
from polycacti.graph import is_chemical, validate_cactus
from polycacti.indices import (
    IndexParams,
    alpha_sombor,
    delta,
    edge_type_counts,
    kernel,
    majorizes,
    r,
    sombor_via_counts,
    special_escalating_violations,
)
from polycacti.verification import (
    MAX_REGIME_PARAMS,
    lemma_property_suite,
    verify_max_general,
    verify_min_alpha_sombor,
    verify_min_general,
)

from oracles import brute_classes, random_permutation

GRID_NK = list(product((3, 4, 5), (3, 4, 5)))
REL = 1e-9


def rel_close(a, b, rel=REL):
    return abs(a - b) <= rel * max(abs(a), abs(b))


def test_criterion_1_min_alpha_sombor(record_criterion):
    t0 = time.perf_counter()
    failures = []
    for (n, k), alpha in product(GRID_NK, (1.5, 2.0, 3.0)):
        rep = verify_min_alpha_sombor(n, k, alpha)
        if not (rel_close(rep.empirical_extremum, rep.bound) and rep.characterization_match):
            failures.append((n, k, alpha))
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < 120
    record_criterion(1, "min alpha-Sombor bound and nice-saturated minimisers", ok, f"{elapsed:.1f}s, failures={failures}")
    assert not failures
    assert elapsed < 120


def test_criterion_2_max_general(record_criterion):
    t0 = time.perf_counter()
    failures = []
    for (n, k), (a, b) in product(GRID_NK, MAX_REGIME_PARAMS):
        rep = verify_max_general(n, k, a, b)
        if not (rel_close(rep.empirical_extremum, rep.bound) and len(rep.extremal_codes) == 1
                and rep.characterization_match):
            failures.append((n, k, a, b))
    elapsed = time.perf_counter() - t0
    record_criterion(2, "max general Sombor bound, unique star maximiser", not failures and elapsed < 120,
                     f"{elapsed:.1f}s, failures={failures}")
    assert MAX_REGIME_PARAMS == ((1.0, 2.0), (2.0, 1.5), (3.0, 2.0), (2.0, 0.5), (2.0, 0.75))
    assert not failures
    assert elapsed < 120


def test_criterion_3_min_general(record_criterion):
    t0 = time.perf_counter()
    failures = []
    for (n, k), (a, b) in product(GRID_NK, ((1.0, 2.0), (2.0, 1.5))):
        rep = verify_min_general(n, k, a, b)
        if not (rel_close(rep.empirical_extremum, rep.bound) and rep.characterization_match):
            failures.append((n, k, a, b))
    elapsed = time.perf_counter() - t0
    record_criterion(3, "min general Sombor bound, chain-family minimisers", not failures and elapsed < 120,
                     f"{elapsed:.1f}s, failures={failures}")
    assert not failures
    assert elapsed < 120


def test_criterion_4_reformulation(record_criterion):
    t0 = time.perf_counter()
    rng = random.Random(2024)
    failures = []
    for i in range(500):
        n, k = rng.randint(1, 10), rng.randint(3, 8)
        c = random_cactus(n, k, rng.randrange(10**9))
        counts = edge_type_counts(c)
        counts.check_identities()  # exact Fraction arithmetic; raises on failure
        for alpha in (-2, 1, 2, 3):
            if not rel_close(sombor_via_counts(counts, alpha), alpha_sombor(c, alpha)):
                failures.append((i, n, k, alpha))
    elapsed = time.perf_counter() - t0
    record_criterion(4, "edge-type reformulation identity on 500 random cacti", not failures and elapsed < 30,
                     f"{elapsed:.1f}s")
    assert not failures
    assert elapsed < 30


def _inequality_violations():
    bad = []
    rng = random.Random(5)

    # strict majorisation + strict convexity of x**alpha
    for _ in range(2000):
        m = rng.randint(2, 6)
        hi = sorted((rng.randint(0, 20) for _ in range(m)), reverse=True)
        lo = list(hi)
        i, j = rng.sample(range(m), 2)
        i, j = min(i, j), max(i, j)
        step = rng.randint(1, 3)
        if lo[i] - lo[j] < 2 * step:
            continue
        lo[i] -= step  # Robin Hood transfer from a larger to a smaller entry
        lo[j] += step
        lo.sort(reverse=True)
        if not majorizes(lo, hi):
            bad.append(("majorization", lo, hi))
            continue
        for alpha in (1.5, 2, 3):
            if not sum(x**alpha for x in lo) < sum(x**alpha for x in hi):
                bad.append(("convexity", lo, hi, alpha))

    # star-vs-neighbour and convexity steps behind the degree-6 argument
    for alpha in (1.5, 2, 3):
        ra = lambda s, t: r(s, t, IndexParams.alpha_sombor(alpha))
        for n in range(3, 11):
            if not ra(2 * n, 2) - ra(2 * n - 2, 4) > 0:
                bad.append(("star-neighbour", alpha, n))
        if not ra(6, 2) + ra(2, 2) - 2 * ra(4, 2) > 0:
            bad.append(("g-convex", alpha))

    # sign of the (4,4)-edge coefficient
    for alpha in (1.5, 2, 3, 5):
        if not 6 * 2 ** (1 / alpha) - 2 * (2**alpha + 4**alpha) ** (1 / alpha) < 0:
            bad.append(("n44-coefficient", alpha))

    # monotonicity of the kernel
    for a, b in product((0.5, 1, 2, 3), repeat=2):
        p = IndexParams(a, b)
        for s, s2, t in product(range(1, 13), range(1, 13), range(1, 13)):
            if s < s2 and not r(s, t, p) < r(s2, t, p):
                bad.append(("kernel-monotone", a, b, s, s2, t))

    # delta positivity and monotonicity
    for alpha, p in product((1.5, 2, 3), (1, 2, 3)):
        for s, t in product(range(1, 13), range(1, 12)):
            d = delta(alpha, p, s, t)
            if not d > 0:
                bad.append(("delta-positive", alpha, p, s, t))
            if not delta(alpha, p, s, t + 1) < d:
                bad.append(("delta-decreasing-t", alpha, p, s, t))
            if s < 12 and not delta(alpha, p, s + 1, t) > d:
                bad.append(("delta-increasing-s", alpha, p, s, t))

    # triangle median inequality on 10^4 random triangles
    for _ in range(10_000):
        pts = [(rng.uniform(-10, 10), rng.uniform(-10, 10)) for _ in range(3)]
        (mx, my), (ax, ay), (bx, by) = pts
        area2 = abs((ax - mx) * (by - my) - (bx - mx) * (ay - my))
        if area2 < 1e-6:
            continue
        a = math.hypot(ax - mx, ay - my)
        b = math.hypot(bx - mx, by - my)
        c = math.hypot(ax - bx, ay - by)
        med = 0.5 * math.sqrt(2 * a * a + 2 * b * b - c * c)
        for beta in (0.5, 0.75, 1, 2):
            if not a ** (2 * beta) + b ** (2 * beta) > 2 * med ** (2 * beta):
                bad.append(("median", a, b, c, beta))

    # shift inequalities for s, t > 2
    for a, b in product((1, 2, 3), (1.5, 2)):
        p = IndexParams(a, b)
        for s, t in product(range(3, 13), range(3, 13)):
            lhs2 = r(s + 2, t, p) + r(s - 2, t, p)
            lhs3 = r(s + 2, t - 2, p) + r(s - 2, t + 2, p)
            base = 2 * r(s, t, p)
            tol = 1e-12 * base
            if lhs2 < base - tol:
                bad.append(("shift-ii", a, b, s, t))
            if lhs3 < base - tol:
                bad.append(("shift-iii", a, b, s, t))

    # power kernel is special escalating for alpha >= 1, beta > 1
    for a, b in ((1, 2), (2, 2), (2, 1.5), (3, 2), (1, 1.5)):
        out = special_escalating_violations(kernel(IndexParams(a, b)), 10, range(1, 9))
        if out:
            bad.append(("special-escalating", a, b, out[:3]))
    return bad


def test_criterion_5_inequalities(record_criterion):
    t0 = time.perf_counter()
    bad = _inequality_violations()
    elapsed = time.perf_counter() - t0
    record_criterion(5, "inequality suites (majorization, convexity, kernel, delta, median, shifts, escalating)",
                     not bad and elapsed < 30, f"{elapsed:.1f}s, violations={len(bad)}")
    assert not bad, bad[:5]
    assert elapsed < 30


def test_criterion_6_n44_maximisers(record_criterion):
    t0 = time.perf_counter()
    failures = []
    for n, k in GRID_NK:
        chem = [c for c in enumerate_cacti(n, k) if is_chemical(c)]
        vals = {canonical_code(c): edge_type_counts(c)[(4, 4)] for c in chem}
        best = max(vals.values())
        argmax = {code for code, v in vals.items() if v == best}
        nice = {canonical_code(c) for c in chem if is_nice_saturated(c)}
        if best != n44_max(n, k) or argmax != nice:
            failures.append((n, k, best, len(argmax), len(nice)))
    elapsed = time.perf_counter() - t0
    record_criterion(6, "max (4,4)-edge count attained exactly by nice-saturated cacti",
                     not failures and elapsed < 60, f"{elapsed:.1f}s, failures={failures}")
    assert not failures
    assert elapsed < 60


def test_criterion_7_enumeration(record_criterion):
    t0 = time.perf_counter()
    problems = []
    for k in range(3, 9):
        if count_cacti(1, k) != 1 or count_cacti(2, k) != 1:
            problems.append(("small", k))
    for (n, k), expected in {(3, 3): 2, (3, 4): 3}.items():
        brute = len(brute_classes(n, k))
        if not (count_cacti(n, k) == expected == brute):
            problems.append(("count", n, k, brute))
    rng = random.Random(77)
    for i in range(1000):
        c = random_cactus(rng.randint(1, 8), rng.randint(3, 7), rng.randrange(10**9))
        perm = random_permutation(rng, c.graph.vertex_count)
        if canonical_code(validate_cactus(c.graph.relabel(perm), c.k)) != canonical_code(c):
            problems.append(("relabel", i))
    elapsed = time.perf_counter() - t0
    record_criterion(7, "enumeration counts and code invariance under 10^3 relabelings",
                     not problems and elapsed < 30, f"{elapsed:.1f}s")
    assert not problems
    assert elapsed < 30


def test_criterion_8_rewire_properties(record_criterion):
    t0 = time.perf_counter()
    results = lemma_property_suite(samples=100)
    failed = {r.scenario: r.failures for r in results if not r.passed}
    elapsed = time.perf_counter() - t0
    record_criterion(8, "polygon-move decrease/increase properties, 100 cacti per scenario",
                     not failed and elapsed < 60, f"{elapsed:.1f}s, scenarios={len(results)}")
    assert all(r.checked == 100 for r in results)
    assert not failed
    assert elapsed < 60
