"""Acceptance suite: ten numbered criteria, one printed pass/fail line each.

Run with ``pytest -s tests/test_acceptance.py`` to see every line.  Each
criterion is a single test so the pytest verdict doubles as the gate; the
printed line adds counts, tolerances, and timings.
"""

import math
import time

import numpy as np
import pytest
from scipy.integrate import quad

from ectkit import (
    Direction,
    DirectionScheme,
    Embedding,
    GeometricComplex,
    InstanceParams,
    QUADRATURE_ABS_TOL,
    VertexFunction,
    brute_force_wasserstein,
    build_complex,
    directional_filtration,
    ecc_from_diagram,
    ecc_from_filtration,
    ect_distance,
    ect_stability_bound,
    max_vertex_cofaces,
    persistence_diagram,
    perturb,
    random_complex,
    random_embedding,
    run_verification,
    select_distance,
    sphere_area,
    sphere_cosine_integral,
    wasserstein_distance,
)

from conftest import make_instance, random_finite_diagram


def _verdict(number: int, ok: bool, detail: str) -> None:
    print(f"criterion {number:2d} [{'PASS' if ok else 'FAIL'}] {detail}", flush=True)
    assert ok, f"criterion {number}: {detail}"


def test_criterion_01_ect_stability_suite():
    start = time.perf_counter()
    reports = run_verification("ect", trials=200, seed=0)
    elapsed = time.perf_counter() - start
    held = sum(r.holds for r in reports)
    sizes = {r.instance["ambient_dim"] for r in reports}
    eps = {r.instance["perturbation"] for r in reports}
    ok = held == 200 and sizes == {2, 3} and eps == {0.01, 0.1, 0.5} and elapsed < 60.0
    _verdict(1, ok, f"ect stability: {held}/200 hold (dims {sorted(sizes)}, "
                    f"eps {sorted(eps)}, rel 1e-6 + abs 1e-3) in {elapsed:.1f}s < 60s")


def test_criterion_02_select_stability_suite():
    start = time.perf_counter()
    reports = run_verification("select", trials=200, seed=1)
    elapsed = time.perf_counter() - start
    held = sum(r.holds for r in reports)
    ok = held == 200 and elapsed < 120.0
    _verdict(2, ok, f"select stability: {held}/200 hold "
                    f"(field in (0.1, 5], rel 1e-6 + abs 1e-3) in {elapsed:.1f}s < 120s")


def test_criterion_03_single_vertex_anchor():
    delta = (0.3, -0.4)
    norm = 0.5
    point = build_complex([(0,)])
    first = Embedding(2, {0: (0.0, 0.0)})
    second = Embedding(2, {0: delta})
    estimate = ect_distance(
        GeometricComplex(point, first),
        GeometricComplex(point, second),
        DirectionScheme(2, 2048, "uniform-circle"),
    )
    truth = 4.0 * norm
    rel_err = abs(estimate.value - truth) / truth
    bound = ect_stability_bound(point, first, second)
    ok = rel_err <= 1e-3 and bound == 8.0 * norm and bound / truth == 2.0
    _verdict(3, ok, f"single-vertex anchor: estimate {estimate.value:.6f} vs 4|delta| = {truth}, "
                    f"rel err {rel_err:.2e} <= 1e-3 at N=2048; bound {bound} = 8|delta|, slack factor 2")


def test_criterion_04_per_direction_inequality():
    reports = run_verification("prop2", trials=1000, seed=2)
    held = sum(r.holds for r in reports)
    ok = held == 1000
    _verdict(4, ok, f"per-direction curve-vs-matching inequality: {held}/1000 "
                    f"(instance, direction) pairs within 1e-9")


def test_criterion_05_turner_sandwich():
    reports = run_verification("turner", trials=1000, seed=3)
    held = sum(r.holds for r in reports)
    ok = held == 1000
    _verdict(5, ok, f"sandwich between ground metrics: {held}/1000 diagram pairs "
                    f"satisfy W(1,inf) <= W(1,1) <= 2 W(1,inf) within 1e-9")


def test_criterion_06_wasserstein_oracle():
    rng = np.random.default_rng(6)
    orders = [(1.0, 1.0), (1.0, 2.0), (1.0, math.inf), (2.0, 1.0), (2.0, 2.0), (2.0, math.inf)]
    agreed = 0
    worst = ""
    for trial in range(1000):
        # up to 3 finite + 1 infinite points per side keeps the total at <= 8
        n_inf = int(rng.integers(0, 2))
        second_inf = 0 if (n_inf and trial % 7 == 0) else n_inf
        first = random_finite_diagram(rng, max_points=3, n_infinite=n_inf)
        second = random_finite_diagram(rng, max_points=3, n_infinite=second_inf)
        p, q = orders[trial % len(orders)]
        fast = wasserstein_distance(first, second, p=p, q=q)
        slow = brute_force_wasserstein(first, second, p=p, q=q)
        if (math.isinf(fast) and math.isinf(slow)) or abs(fast - slow) <= 1e-9:
            agreed += 1
        elif not worst:
            worst = f" (first failure: trial {trial}, {fast} vs {slow}, p={p}, q={q})"
    _verdict(6, agreed == 1000, f"assignment equals exhaustive oracle: {agreed}/1000 pairs "
                                f"(<= 8 points, p in {{1,2}}, q in {{1,2,inf}}) within 1e-9{worst}")


def test_criterion_07_euler_poincare_cross_check():
    rng = np.random.default_rng(7)
    matched = 0
    for trial in range(500):
        ambient = 2 + trial % 2
        complex_, emb, _ = make_instance(trial, ambient_dim=ambient, max_vertices=9)
        direction = Direction.normalized(rng.standard_normal(ambient))
        filt = directional_filtration(GeometricComplex(complex_, emb), direction)
        via_counts = ecc_from_filtration(filt)
        via_pairs = ecc_from_diagram(persistence_diagram(filt))
        if via_counts == via_pairs:
            matched += 1
    _verdict(7, matched == 500, f"curve from counts equals curve from matched pairs: "
                                f"{matched}/500 (complex, direction) pairs, exact object equality")


def test_criterion_08_constants():
    closed = {2: 4.0, 3: 2.0 * math.pi, 4: 8.0 * math.pi / 3.0}
    worst = 0.0
    for d, expected in closed.items():
        mine = sphere_cosine_integral(d)
        numeric, _ = quad(lambda t, d=d: math.cos(t) * math.sin(t) ** (d - 2), 0.0, math.pi / 2.0)
        numeric *= 2.0 * sphere_area(d - 2)
        worst = max(worst, abs(mine - expected), abs(mine - numeric))
    solid = build_complex([(0, 1, 2)])
    cofaces = max_vertex_cofaces(solid)
    ok = worst <= 1e-9 and cofaces == 4
    _verdict(8, ok, f"constants: cosine integrals (4, 2pi, 8pi/3) match quadrature "
                    f"within {worst:.1e} <= 1e-9; solid-triangle coface count {cofaces} == 4")


def test_criterion_09_constant_field_reduction():
    scheme = DirectionScheme(2, 256, "uniform-circle")
    exact = 0
    for trial in range(50):
        complex_, first, second = make_instance(trial, epsilon=0.2)
        c = 0.3 + 0.09 * trial
        phi = VertexFunction({v: c for v in complex_.vertices})
        lifted = select_distance(complex_, phi, first, second, scheme)
        base = ect_distance(
            GeometricComplex(complex_, first), GeometricComplex(complex_, second), scheme
        )
        if lifted.value == c * base.value:
            exact += 1
    _verdict(9, exact == 50, f"constant-field reduction: lifted distance == c * base distance "
                             f"bit-exactly on {exact}/50 instances (shared direction set)")


def test_criterion_10_metric_axioms():
    scheme = DirectionScheme(2, 256, "uniform-circle")
    complex_ = random_complex(InstanceParams(
        n_vertices=8, top_dim=2, density=0.55, ambient_dim=2, perturbation=0.0, seed=10,
    ))
    symmetric = 0
    triangle = 0
    slack = 2.0 * QUADRATURE_ABS_TOL
    for trial in range(100):
        a = random_embedding(complex_, 2, [10, trial, 1])
        b = perturb(a, 0.4, [10, trial, 2])
        c = perturb(a, 0.4, [10, trial, 3])
        gcs = [GeometricComplex(complex_, e) for e in (a, b, c)]
        d_ab = ect_distance(gcs[0], gcs[1], scheme).value
        d_ba = ect_distance(gcs[1], gcs[0], scheme).value
        d_ac = ect_distance(gcs[0], gcs[2], scheme).value
        d_cb = ect_distance(gcs[2], gcs[1], scheme).value
        symmetric += d_ab == d_ba
        triangle += d_ab <= d_ac + d_cb + slack
    ok = symmetric == 100 and triangle == 100
    _verdict(10, ok, f"metric axioms on a fixed complex: symmetry exact {symmetric}/100, "
                     f"triangle inequality within 2e-3 {triangle}/100")
