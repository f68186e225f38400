"""Randomized instances and empirical verification of the distance inequalities.

Each verifier computes one left-hand side / right-hand side pair and wraps it
in a BoundReport.  Quadrature-backed comparisons use a relative tolerance of
1e-6 plus an absolute 1e-3 slack; exact comparisons (no quadrature on either
side) use 1e-9.  All randomness in a trial flows from a single integer seed
recorded in the report, so reruns are bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .complexes import (
    AbstractComplex,
    Embedding,
    GeometricComplex,
    displacement,
    euler_characteristic,
    max_vertex_cofaces,
)
from .ecc import ecc_from_filtration, l1_distance
from .ect import (
    DirectionScheme,
    default_scheme,
    direction_matrix,
    ect_distance,
    ect_stability_bound,
    sphere_cosine_integral,
)
from .filtration import Direction, VertexFunction, directional_filtration
from .persistence import PersistenceDiagram, PersistencePoint, persistence_diagram
from .select import select_distance, select_stability_bound
from .wasserstein import total_wasserstein_distance

__all__ = [
    "QUADRATURE_REL_TOL",
    "QUADRATURE_ABS_TOL",
    "EXACT_TOL",
    "InstanceParams",
    "BoundReport",
    "random_complex",
    "random_embedding",
    "random_vertex_function",
    "random_diagram_pair",
    "perturb",
    "verify_ect_stability",
    "verify_select_stability",
    "verify_ecc_vs_wasserstein",
    "verify_integrated_wasserstein",
    "verify_turner_sandwich",
    "run_verification",
    "VERIFICATION_CHECKS",
]

QUADRATURE_REL_TOL = 1e-6
QUADRATURE_ABS_TOL = 1e-3
EXACT_TOL = 1e-9

VERIFICATION_CHECKS = ("ect", "select", "prop2", "skraba", "turner")


@dataclass(frozen=True)
class InstanceParams:
    """Knobs for one random instance.

    ``density`` is the acceptance probability applied independently at every
    level: each edge, then each triangle whose edges all made it, then each
    tetrahedron whose triangles all made it.
    """

    n_vertices: int
    top_dim: int
    density: float
    ambient_dim: int
    perturbation: float
    field_range: tuple[float, float] = (0.1, 5.0)
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_vertices < 1:
            raise ValueError(f"need at least one vertex, got {self.n_vertices}")
        if self.top_dim < 0:
            raise ValueError(f"top dimension must be non-negative, got {self.top_dim}")
        if not 0.0 <= self.density <= 1.0:
            raise ValueError(f"density must lie in [0, 1], got {self.density}")
        if self.ambient_dim < 2:
            raise ValueError(f"ambient dimension must be at least 2, got {self.ambient_dim}")
        if self.perturbation < 0.0:
            raise ValueError(f"perturbation magnitude must be non-negative, got {self.perturbation}")
        lo, hi = self.field_range
        if not 0.0 < lo <= hi:
            raise ValueError(f"field range must satisfy 0 < lo <= hi, got {self.field_range}")


@dataclass(frozen=True)
class BoundReport:
    """One checked inequality: holds iff lhs <= rhs * (1 + rel_tol) + abs_tol.

    When both sides are +inf the inequality holds vacuously and the slack is
    NaN.  ``instance`` carries whatever identifies the trial (sizes, seed).
    """

    inequality: str
    lhs: float
    rhs: float
    slack: float
    holds: bool
    rel_tol: float
    abs_tol: float
    instance: dict = field(default_factory=dict)

    def to_jsonable(self) -> dict:
        def scrub(x):
            if isinstance(x, float) and not math.isfinite(x):
                return str(x)
            if isinstance(x, dict):
                return {k: scrub(v) for k, v in x.items()}
            if isinstance(x, (list, tuple)):
                return [scrub(v) for v in x]
            return x

        return {
            "inequality": self.inequality,
            "lhs": scrub(self.lhs),
            "rhs": scrub(self.rhs),
            "slack": scrub(self.slack),
            "holds": self.holds,
            "rel_tol": self.rel_tol,
            "abs_tol": self.abs_tol,
            "instance": scrub(self.instance),
        }


def _report(inequality, lhs, rhs, rel_tol, abs_tol, instance, extra_holds=True) -> BoundReport:
    lhs, rhs = float(lhs), float(rhs)
    if math.isinf(lhs) and math.isinf(rhs):
        holds = True
        slack = math.nan
    else:
        holds = lhs <= rhs * (1.0 + rel_tol) + abs_tol
        slack = rhs - lhs
    return BoundReport(inequality, lhs, rhs, slack, holds and extra_holds, rel_tol, abs_tol, dict(instance))


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_complex(params: InstanceParams) -> AbstractComplex:
    """Sample a face-closed complex: level-wise independent acceptance.

    Vertices 0..n-1 are always present.  An edge appears with probability
    ``density``; a triangle is considered only when its three edges appeared
    and then accepted with probability ``density``; tetrahedra likewise over
    their four triangles.
    """
    rng = _rng(params.seed)
    n = params.n_vertices
    simplices: set[tuple[int, ...]] = {(v,) for v in range(n)}
    if params.top_dim >= 1:
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < params.density:
                    simplices.add((i, j))
    if params.top_dim >= 2:
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    if (
                        (i, j) in simplices
                        and (i, k) in simplices
                        and (j, k) in simplices
                        and rng.random() < params.density
                    ):
                        simplices.add((i, j, k))
    if params.top_dim >= 3:
        triangles = {s for s in simplices if len(s) == 3}
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    for l in range(k + 1, n):
                        faces = ((i, j, k), (i, j, l), (i, k, l), (j, k, l))
                        if all(f in triangles for f in faces) and rng.random() < params.density:
                            simplices.add((i, j, k, l))
    return AbstractComplex(frozenset(simplices))


def random_embedding(complex_: AbstractComplex, dim: int, seed) -> Embedding:
    """Vertex coordinates drawn uniformly from [-1, 1]^dim."""
    rng = _rng(seed)
    coords = {}
    for v in sorted(complex_.vertices):
        coords[v] = tuple(rng.uniform(-1.0, 1.0, size=dim))
    return Embedding(dim, coords)


def perturb(embedding: Embedding, magnitude: float, seed) -> Embedding:
    """Displace every vertex by an independent uniform vector of norm <= magnitude."""
    if magnitude < 0.0:
        raise ValueError(f"perturbation magnitude must be non-negative, got {magnitude}")
    rng = _rng(seed)
    dim = embedding.dim
    moved = {}
    for v in sorted(embedding.coords):
        direction = rng.standard_normal(dim)
        norm = float(np.linalg.norm(direction))
        while norm == 0.0:
            direction = rng.standard_normal(dim)
            norm = float(np.linalg.norm(direction))
        radius = magnitude * float(rng.random()) ** (1.0 / dim)
        step = direction * (radius / norm)
        moved[v] = tuple(x + s for x, s in zip(embedding.coords[v], step))
    return Embedding(dim, moved)


def random_vertex_function(
    complex_: AbstractComplex, field_range: tuple[float, float], seed
) -> VertexFunction:
    """Independent uniform field values over the range, one per vertex."""
    lo, hi = field_range
    rng = _rng(seed)
    return VertexFunction({v: float(rng.uniform(lo, hi)) for v in sorted(complex_.vertices)})


def random_diagram_pair(seed, max_points: int = 6, allow_infinite: bool = True):
    """Two random diagrams with matched infinite-point counts per dimension.

    Matching the infinite counts keeps every Wasserstein distance finite, so
    inequality checks on the pair are informative rather than vacuous.
    """
    rng = _rng(seed)
    diagrams = []
    n_inf = {k: int(rng.integers(0, 3)) if allow_infinite else 0 for k in range(3)}
    for _ in range(2):
        points = []
        for _ in range(int(rng.integers(0, max_points + 1))):
            dim = int(rng.integers(0, 3))
            birth = float(rng.uniform(-1.0, 1.0))
            points.append(PersistencePoint(birth, birth + float(rng.uniform(0.0, 2.0)), dim))
        for k, count in n_inf.items():
            for _ in range(count):
                points.append(PersistencePoint(float(rng.uniform(-1.0, 1.0)), math.inf, k))
        diagrams.append(PersistenceDiagram(tuple(points)))
    return diagrams[0], diagrams[1]


def verify_ect_stability(
    complex_: AbstractComplex,
    first: Embedding,
    second: Embedding,
    scheme: DirectionScheme | None = None,
    threads: int | None = None,
    instance: dict | None = None,
) -> BoundReport:
    """Transform distance against twice the coface/cosine/displacement product."""
    lhs = ect_distance(
        GeometricComplex(complex_, first), GeometricComplex(complex_, second),
        scheme=scheme, threads=threads,
    ).value
    rhs = ect_stability_bound(complex_, first, second)
    return _report(
        "ect-stability", lhs, rhs, QUADRATURE_REL_TOL, QUADRATURE_ABS_TOL, instance or {}
    )


def verify_select_stability(
    complex_: AbstractComplex,
    values: VertexFunction,
    first: Embedding,
    second: Embedding,
    scheme: DirectionScheme | None = None,
    threads: int | None = None,
    instance: dict | None = None,
) -> BoundReport:
    """Lifted distance against the bound scaled by the largest field value."""
    lhs = select_distance(complex_, values, first, second, scheme=scheme, threads=threads).value
    rhs = select_stability_bound(complex_, values, first, second)
    return _report(
        "select-stability", lhs, rhs, QUADRATURE_REL_TOL, QUADRATURE_ABS_TOL, instance or {}
    )


def verify_ecc_vs_wasserstein(
    first: GeometricComplex,
    second: GeometricComplex,
    direction: Direction,
    instance: dict | None = None,
) -> BoundReport:
    """Single-direction curve distance against twice the sup-ground Wasserstein.

    Both sides are exact (no quadrature).  When the Euler characteristics
    disagree both sides are +inf and the report holds vacuously.
    """
    filt_f = directional_filtration(first, direction)
    filt_g = directional_filtration(second, direction)
    lhs = l1_distance(ecc_from_filtration(filt_f), ecc_from_filtration(filt_g))
    rhs = 2.0 * total_wasserstein_distance(
        persistence_diagram(filt_f), persistence_diagram(filt_g), p=1.0, q=math.inf
    )
    return _report("ecc-vs-wasserstein", lhs, rhs, 0.0, EXACT_TOL, instance or {})


def verify_integrated_wasserstein(
    complex_: AbstractComplex,
    first: Embedding,
    second: Embedding,
    scheme: DirectionScheme | None = None,
    instance: dict | None = None,
) -> BoundReport:
    """Direction-integrated Wasserstein distance against cofaces * cosine integral * displacement."""
    if scheme is None:
        scheme = default_scheme(first.dim, count=64)
    gc_f = GeometricComplex(complex_, first)
    gc_g = GeometricComplex(complex_, second)
    dirs = direction_matrix(scheme)
    total = 0.0
    for row in dirs:
        direction = Direction(tuple(row))
        dgm_f = persistence_diagram(directional_filtration(gc_f, direction))
        dgm_g = persistence_diagram(directional_filtration(gc_g, direction))
        total += total_wasserstein_distance(dgm_f, dgm_g, p=1.0, q=1.0)
    lhs = scheme.weight * total
    verts = complex_.vertices
    rhs = (
        max_vertex_cofaces(complex_)
        * sphere_cosine_integral(first.dim)
        * displacement(first.restrict(verts), second.restrict(verts))
    )
    return _report(
        "integrated-wasserstein", lhs, rhs, QUADRATURE_REL_TOL, QUADRATURE_ABS_TOL, instance or {}
    )


def verify_turner_sandwich(
    first: PersistenceDiagram,
    second: PersistenceDiagram,
    p: float = 1.0,
    instance: dict | None = None,
) -> BoundReport:
    """Sup-ground distance <= p-ground distance <= twice the sup-ground distance.

    The report's lhs/rhs show the upper comparison; the lower comparison is
    folded into ``holds`` and both distances are recorded in the instance.
    """
    w_sup = total_wasserstein_distance(first, second, p=p, q=math.inf)
    w_pp = total_wasserstein_distance(first, second, p=p, q=p)
    lower_ok = w_sup <= w_pp + EXACT_TOL or (math.isinf(w_sup) and math.isinf(w_pp))
    info = dict(instance or {})
    info.update({"w_p_sup": w_sup if math.isfinite(w_sup) else str(w_sup), "w_p_p": w_pp if math.isfinite(w_pp) else str(w_pp), "p": p})
    return _report("turner-sandwich", w_pp, 2.0 * w_sup, 0.0, EXACT_TOL, info, extra_holds=lower_ok)


_EPSILONS = (0.01, 0.1, 0.5)


def _trial_seed(seed: int, index: int) -> int:
    # splittable and readable; recorded per trial so any instance can be rebuilt
    return seed * 1_000_003 + index


def _random_instance(rng: np.random.Generator, trial_seed: int, ambient_dim: int,
                     epsilon: float, max_vertices: int, max_density: float,
                     field_range: tuple[float, float] = (0.1, 5.0)) -> InstanceParams:
    return InstanceParams(
        n_vertices=int(rng.integers(1, max_vertices + 1)),
        top_dim=int(rng.integers(0, 4)),
        density=float(rng.uniform(0.1, max_density)),
        ambient_dim=ambient_dim,
        perturbation=epsilon,
        field_range=field_range,
        seed=trial_seed,
    )


def _instance_dict(params: InstanceParams, complex_: AbstractComplex, trial: int, check: str) -> dict:
    return {
        "check": check,
        "trial": trial,
        "seed": params.seed,
        "n_vertices": params.n_vertices,
        "top_dim": params.top_dim,
        "density": params.density,
        "ambient_dim": params.ambient_dim,
        "perturbation": params.perturbation,
        "n_simplices": complex_.n_simplices,
        "euler_characteristic": euler_characteristic(complex_),
    }


def run_verification(
    which: str,
    trials: int,
    seed: int,
    directions: int | None = None,
    ambient_dims: Sequence[int] = (2, 3),
    threads: int | None = None,
) -> list[BoundReport]:
    """Run one named check (or all of them) over seeded random trials.

    Trial i draws everything from seed * 1000003 + i, so identical calls
    produce identical reports.  ``directions`` overrides each scheme's
    direction count (the integrated-Wasserstein check defaults to 64
    directions because it runs two matrix reductions per direction).
    """
    checks = VERIFICATION_CHECKS if which == "all" else (which,)
    for check in checks:
        if check not in VERIFICATION_CHECKS:
            raise ValueError(f"unknown check {check!r}, expected one of {VERIFICATION_CHECKS + ('all',)}")
    reports: list[BoundReport] = []
    for check in checks:
        for trial in range(trials):
            t_seed = _trial_seed(seed, trial)
            rng = _rng(t_seed)
            ambient = ambient_dims[trial % len(ambient_dims)]
            epsilon = _EPSILONS[trial % len(_EPSILONS)]
            if check == "ect":
                params = _random_instance(rng, t_seed, ambient, epsilon, 12, 0.85)
                complex_ = random_complex(params)
                f = random_embedding(complex_, ambient, [t_seed, 1])
                g = perturb(f, epsilon, [t_seed, 2])
                scheme = default_scheme(ambient, count=directions)
                reports.append(
                    verify_ect_stability(
                        complex_, f, g, scheme, threads,
                        _instance_dict(params, complex_, trial, check),
                    )
                )
            elif check == "select":
                params = _random_instance(rng, t_seed, ambient, epsilon, 10, 0.7)
                complex_ = random_complex(params)
                f = random_embedding(complex_, ambient, [t_seed, 1])
                g = perturb(f, epsilon, [t_seed, 2])
                phi = random_vertex_function(complex_, params.field_range, [t_seed, 3])
                scheme = default_scheme(ambient, count=directions)
                reports.append(
                    verify_select_stability(
                        complex_, phi, f, g, scheme, threads,
                        _instance_dict(params, complex_, trial, check),
                    )
                )
            elif check == "prop2":
                params = _random_instance(rng, t_seed, ambient, epsilon, 10, 0.6)
                complex_ = random_complex(params)
                f = random_embedding(complex_, ambient, [t_seed, 1])
                g = perturb(f, epsilon, [t_seed, 2])
                raw = rng.standard_normal(ambient)
                direction = Direction.normalized(raw)
                reports.append(
                    verify_ecc_vs_wasserstein(
                        GeometricComplex(complex_, f),
                        GeometricComplex(complex_, g),
                        direction,
                        _instance_dict(params, complex_, trial, check),
                    )
                )
            elif check == "skraba":
                params = _random_instance(rng, t_seed, ambient, epsilon, 8, 0.5)
                complex_ = random_complex(params)
                f = random_embedding(complex_, ambient, [t_seed, 1])
                g = perturb(f, epsilon, [t_seed, 2])
                scheme = default_scheme(ambient, count=directions or 64)
                reports.append(
                    verify_integrated_wasserstein(
                        complex_, f, g, scheme,
                        _instance_dict(params, complex_, trial, check),
                    )
                )
            elif check == "turner":
                dgm_f, dgm_g = random_diagram_pair([t_seed, 4])
                reports.append(
                    verify_turner_sandwich(
                        dgm_f, dgm_g, p=1.0,
                        instance={"check": check, "trial": trial, "seed": t_seed,
                                  "n_points": [len(dgm_f), len(dgm_g)]},
                    )
                )
    return reports
