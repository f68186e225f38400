"""Directions, height filtrations, and positive vertex fields with their extensions.

The sublevel machinery is exact: heights are plain float maxima of vertex dot
products, and all comparisons downstream rely on those exact values rather
than on snapped or rounded ones.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .complexes import AbstractComplex, Embedding, GeometricComplex, Simplex

__all__ = [
    "Direction",
    "SimplexFiltration",
    "VertexFunction",
    "height",
    "directional_filtration",
    "min_extension",
    "superlevel_complex",
]

_UNIT_TOL = 1e-12


@dataclass(frozen=True)
class Direction:
    """A unit vector on the sphere, validated to 1e-12."""

    vector: tuple[float, ...]

    def __post_init__(self) -> None:
        vec = tuple(float(x) for x in self.vector)
        object.__setattr__(self, "vector", vec)
        if len(vec) == 0:
            raise ValueError("direction must have at least one component")
        norm = math.sqrt(sum(x * x for x in vec))
        if abs(norm - 1.0) > _UNIT_TOL:
            raise ValueError(f"direction must have unit norm, got |v| = {norm!r}")

    @classmethod
    def normalized(cls, vector: Sequence[float]) -> "Direction":
        vec = [float(x) for x in vector]
        norm = math.sqrt(sum(x * x for x in vec))
        if norm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(tuple(x / norm for x in vec))

    @classmethod
    def from_angle(cls, theta: float) -> "Direction":
        return cls((math.cos(theta), math.sin(theta)))

    @property
    def dim(self) -> int:
        return len(self.vector)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.vector, dtype=np.float64)


def height(embedding: Embedding, direction: Direction, simplex: Simplex) -> float:
    """Largest dot product of the simplex's vertices with the direction."""
    if direction.dim != embedding.dim:
        raise ValueError(
            f"direction dimension {direction.dim} does not match embedding dimension {embedding.dim}"
        )
    nu = direction.vector
    return max(sum(x * c for x, c in zip(embedding.vector(v), nu)) for v in simplex)


def _facet_values_ok(complex_: AbstractComplex, values: Mapping[Simplex, float]) -> bool:
    for simplex in complex_.simplices:
        if len(simplex) == 1:
            continue
        v = values[simplex]
        for facet in itertools.combinations(simplex, len(simplex) - 1):
            if values[facet] > v:
                return False
    return True


@dataclass(frozen=True)
class SimplexFiltration:
    """A total assignment of real values to simplices, non-decreasing along faces."""

    complex: AbstractComplex
    values: Mapping[Simplex, float]

    def __post_init__(self) -> None:
        vals = {s: float(v) for s, v in self.values.items()}
        object.__setattr__(self, "values", vals)
        missing = self.complex.simplices - set(vals)
        if missing:
            raise ValueError(f"filtration missing values for {len(missing)} simplices")
        extra = set(vals) - self.complex.simplices
        if extra:
            raise ValueError(f"filtration assigns values to {len(extra)} unknown simplices")
        if not _facet_values_ok(self.complex, vals):
            raise ValueError("filtration not simplex-wise monotone")

    def value(self, simplex: Simplex) -> float:
        return self.values[simplex]


def directional_filtration(gc: GeometricComplex, direction: Direction) -> SimplexFiltration:
    """Sublevel height filtration of an embedded complex in one direction."""
    if direction.dim != gc.ambient_dim:
        raise ValueError(
            f"direction dimension {direction.dim} does not match ambient dimension {gc.ambient_dim}"
        )
    nu = direction.vector
    dots = {
        v: sum(x * c for x, c in zip(gc.embedding.coords[v], nu)) for v in gc.complex.vertices
    }
    values = {s: max(dots[v] for v in s) for s in gc.complex.simplices}
    return SimplexFiltration(gc.complex, values)


@dataclass(frozen=True)
class VertexFunction:
    """Strictly positive real values on vertex ids."""

    values: Mapping[int, float]

    def __post_init__(self) -> None:
        clean: dict[int, float] = {}
        for v, x in self.values.items():
            x = float(x)
            if not x > 0.0 or math.isinf(x):
                raise ValueError(f"vertex function values must be strictly positive and finite, got {x!r} at vertex {v}")
            clean[int(v)] = x
        if not clean:
            raise ValueError("vertex function must cover at least one vertex")
        object.__setattr__(self, "values", clean)

    def __getitem__(self, v: int) -> float:
        return self.values[v]

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.values)

    def breakpoints(self) -> tuple[float, ...]:
        """Distinct values in strictly increasing order."""
        return tuple(sorted(set(self.values.values())))

    def max_value(self) -> float:
        return max(self.values.values())

    def restrict(self, vertices: Iterable[int]) -> "VertexFunction":
        wanted = set(vertices)
        missing = wanted - set(self.values)
        if missing:
            raise ValueError(f"vertex function has no value for vertices {sorted(missing)}")
        return VertexFunction({v: self.values[v] for v in sorted(wanted)})


def min_extension(
    complex_: AbstractComplex, values: VertexFunction
) -> dict[Simplex, float]:
    """Extend vertex values to simplices by the minimum over their vertices.

    The result is anti-monotone: faces carry values at least as large as
    their cofaces, which makes every superlevel set a subcomplex.
    """
    missing = complex_.vertices - values.vertices
    if missing:
        raise ValueError(f"vertex function has no value for vertices {sorted(missing)}")
    return {s: min(values[v] for v in s) for s in complex_.simplices}


def superlevel_complex(
    complex_: AbstractComplex, extended: Mapping[Simplex, float], t: float
) -> AbstractComplex:
    """Subcomplex of simplices whose extended value is at least t.

    ``extended`` must cover every simplex (normally the output of
    :func:`min_extension`, whose anti-monotonicity guarantees the result is
    face-closed; the constructor re-validates closure regardless).
    """
    missing = complex_.simplices - set(extended)
    if missing:
        raise ValueError(f"extension missing values for {len(missing)} simplices")
    return AbstractComplex(frozenset(s for s in complex_.simplices if extended[s] >= t))
