"""Shared generators for randomized tests.

Everything is seeded; helpers return plain library objects so tests read like
the deterministic cases around them.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from ectkit import (
    AbstractComplex,
    Embedding,
    GeometricComplex,
    InstanceParams,
    PersistenceDiagram,
    PersistencePoint,
    StepFunction,
    VertexFunction,
    random_complex,
    random_embedding,
    random_vertex_function,
    perturb,
)


def make_instance(seed: int, ambient_dim: int = 2, max_vertices: int = 10,
                  max_density: float = 0.7, epsilon: float = 0.1,
                  top_dim: int | None = None):
    """A random complex plus an embedding and its perturbation."""
    rng = np.random.default_rng(seed)
    params = InstanceParams(
        n_vertices=int(rng.integers(1, max_vertices + 1)),
        top_dim=int(rng.integers(0, 4)) if top_dim is None else top_dim,
        density=float(rng.uniform(0.1, max_density)),
        ambient_dim=ambient_dim,
        perturbation=epsilon,
        seed=seed,
    )
    complex_ = random_complex(params)
    first = random_embedding(complex_, ambient_dim, [seed, 1])
    second = perturb(first, epsilon, [seed, 2])
    return complex_, first, second


def make_field(complex_: AbstractComplex, seed: int, lo: float = 0.1, hi: float = 5.0) -> VertexFunction:
    return random_vertex_function(complex_, (lo, hi), [seed, 3])


def random_step_function(rng: np.random.Generator, terminal: int | None = None) -> StepFunction:
    """Random canonical step function, optionally with a forced terminal value."""
    n = int(rng.integers(0, 6))
    breaks = sorted(set(float(b) for b in rng.uniform(-3.0, 3.0, size=n)))
    jumps = [int(j) for j in rng.integers(-3, 4, size=len(breaks))]
    pairs = list(zip(breaks, jumps))
    if terminal is not None:
        fix = terminal - sum(jumps)
        if fix != 0:
            pairs.append((float(rng.uniform(3.5, 4.5)), fix))
    return StepFunction.from_jumps(pairs)


def random_finite_diagram(rng: np.random.Generator, max_points: int = 4,
                          n_infinite: int = 0, dim: int = 0) -> list[PersistencePoint]:
    """Points in a single dimension, as a list suitable for the matchers."""
    points = []
    for _ in range(int(rng.integers(0, max_points + 1))):
        birth = float(rng.uniform(-1.0, 1.0))
        points.append(PersistencePoint(birth, birth + float(rng.uniform(0.0, 2.0)), dim))
    for _ in range(n_infinite):
        points.append(PersistencePoint(float(rng.uniform(-1.0, 1.0)), math.inf, dim))
    return points
