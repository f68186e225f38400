"""Superlevel-lifted transform distances for positive vertex fields.

A positive vertex field, extended to simplices by the minimum, filters the
complex into a nested family of superlevel subcomplexes.  The lifted distance
integrates the transform distance of the restricted embeddings over the field
parameter; because the family only changes at the field's distinct values,
that integral is a finite sum of segment lengths times per-segment transform
distances, each evaluated at the segment's right endpoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .complexes import AbstractComplex, Embedding, GeometricComplex, displacement, max_vertex_cofaces
from .ect import DirectionScheme, DistanceEstimate, default_scheme, ect_value, ect_distance, sphere_cosine_integral
from .filtration import Direction, VertexFunction, min_extension, superlevel_complex

__all__ = [
    "SelectField",
    "select_value",
    "select_distance",
    "select_stability_bound",
]


@dataclass(frozen=True)
class SelectField:
    """An embedded complex together with a positive field on its vertices."""

    geometry: GeometricComplex
    values: VertexFunction
    _extension: dict = field(init=False, repr=False, compare=False)
    _breakpoints: tuple[float, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        extension = min_extension(self.geometry.complex, self.values)
        object.__setattr__(self, "_extension", extension)
        verts = self.geometry.complex.vertices
        object.__setattr__(
            self, "_breakpoints", tuple(sorted({self.values[v] for v in verts}))
        )

    @property
    def breakpoints(self) -> tuple[float, ...]:
        """Distinct field values on the complex's vertices, increasing."""
        return self._breakpoints

    @property
    def max_value(self) -> float:
        """Largest field value; the lifted integrand vanishes above it."""
        if not self._breakpoints:
            raise ValueError("empty complex not permitted")
        return self._breakpoints[-1]

    def superlevel(self, t: float) -> AbstractComplex:
        return superlevel_complex(self.geometry.complex, self._extension, t)


def select_value(field_: SelectField, direction: Direction, a: float, t: float) -> int:
    """Euler characteristic at height a of the superlevel-t restriction."""
    part = field_.superlevel(t)
    if not part.simplices:
        return 0
    return ect_value(GeometricComplex(part, field_.geometry.embedding), direction, a)


def select_distance(
    complex_: AbstractComplex,
    values: VertexFunction,
    first: Embedding,
    second: Embedding,
    scheme: DirectionScheme | None = None,
    window: float | None = None,
    threads: int | None = None,
) -> DistanceEstimate:
    """Exact superlevel decomposition of the lifted transform distance.

    Both embeddings share the complex and the field.  The field parameter
    axis is split at the distinct field values t_1 < ... < t_m; on each
    segment (t_{i-1}, t_i] (with t_0 = 0) the superlevel complex is constant
    and equals the one at the right endpoint, so the segment contributes
    (t_i - t_{i-1}) times the transform distance of the restrictions.  Every
    segment reuses the same direction scheme.
    """
    extension = min_extension(complex_, values)
    breakpoints = sorted({values[v] for v in complex_.vertices})
    if scheme is None:
        if first.dim != second.dim:
            raise ValueError(f"ambient dimensions differ: {first.dim} vs {second.dim}")
        scheme = default_scheme(first.dim)
    total = 0.0
    t_prev = 0.0
    segments: list[tuple[float, float, float]] = []
    for t in breakpoints:
        part = superlevel_complex(complex_, extension, t)
        estimate = ect_distance(
            GeometricComplex(part, first),
            GeometricComplex(part, second),
            scheme=scheme,
            window=window,
            threads=threads,
        )
        total += (t - t_prev) * estimate.value
        segments.append((t_prev, t, estimate.value))
        t_prev = t
    return DistanceEstimate(
        total,
        scheme.describe(),
        scheme.count,
        scheme.weight,
        per_segment=tuple(segments),
    )


def select_stability_bound(
    complex_: AbstractComplex,
    values: VertexFunction,
    first: Embedding,
    second: Embedding,
) -> float:
    """Upper bound 2 * (max field value) * cosine integral * cofaces * displacement."""
    if first.dim != second.dim:
        raise ValueError(f"ambient dimensions differ: {first.dim} vs {second.dim}")
    verts = complex_.vertices
    if not verts:
        raise ValueError("empty complex not permitted")
    r_max = max(values[v] for v in verts)
    return (
        2.0
        * r_max
        * sphere_cosine_integral(first.dim)
        * max_vertex_cofaces(complex_)
        * displacement(first.restrict(verts), second.restrict(verts))
    )
