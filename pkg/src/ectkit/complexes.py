"""Abstract simplicial complexes, geometric embeddings, and their combinatorial constants.

A simplex is a sorted tuple of non-negative integer vertex ids; a complex is a
finite, face-closed set of simplices.  Everything here is immutable after
construction and validated eagerly, so downstream code can assume closure and
well-formedness without re-checking.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Simplex",
    "AbstractComplex",
    "Embedding",
    "GeometricComplex",
    "build_complex",
    "euler_characteristic",
    "max_vertex_cofaces",
    "displacement",
]

Simplex = tuple[int, ...]


def _check_simplex(simplex: Simplex) -> None:
    if not isinstance(simplex, tuple) or len(simplex) == 0:
        raise ValueError(f"simplices must be non-empty tuples, got {simplex!r}")
    for v in simplex:
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise ValueError(f"vertex ids must be non-negative integers, got {simplex!r}")
    if any(a >= b for a, b in zip(simplex, simplex[1:])):
        raise ValueError(f"simplex vertices must be strictly increasing, got {simplex!r}")


@dataclass(frozen=True)
class AbstractComplex:
    """A finite set of simplices closed under taking faces.

    The empty complex is representable (it arises when a superlevel
    restriction removes everything) but :func:`build_complex` refuses to
    create one directly.
    """

    simplices: frozenset[Simplex]

    def __post_init__(self) -> None:
        simplices = frozenset(self.simplices)
        object.__setattr__(self, "simplices", simplices)
        for simplex in simplices:
            _check_simplex(simplex)
            if len(simplex) > 1:
                # checking facets suffices: closure then follows by induction
                for facet in itertools.combinations(simplex, len(simplex) - 1):
                    if facet not in simplices:
                        raise ValueError(
                            f"complex not closed under faces: {simplex} present but {facet} missing"
                        )

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(s[0] for s in self.simplices if len(s) == 1)

    @property
    def dimension(self) -> int:
        """Largest simplex dimension, or -1 for the empty complex."""
        return max((len(s) for s in self.simplices), default=0) - 1

    @property
    def n_simplices(self) -> int:
        return len(self.simplices)

    def simplices_of_dim(self, k: int) -> tuple[Simplex, ...]:
        return tuple(sorted(s for s in self.simplices if len(s) == k + 1))

    def counts_by_dim(self) -> tuple[int, ...]:
        if not self.simplices:
            return ()
        counts = Counter(len(s) - 1 for s in self.simplices)
        return tuple(counts.get(k, 0) for k in range(self.dimension + 1))


def build_complex(simplices: Iterable[Sequence[int]]) -> AbstractComplex:
    """Build the face closure of the given simplices.

    Input tuples are treated as generating simplices (typically the maximal
    ones); every non-empty subset of each is added.  An empty generating set
    is rejected.
    """
    generators = list(simplices)
    if not generators:
        raise ValueError("empty complex not permitted")
    closed: set[Simplex] = set()
    for raw in generators:
        vs = tuple(sorted(int(v) for v in raw))
        if len(vs) == 0:
            raise ValueError("simplices must be non-empty")
        if len(set(vs)) != len(vs):
            raise ValueError(f"simplex has a repeated vertex: {tuple(raw)!r}")
        for k in range(1, len(vs) + 1):
            closed.update(itertools.combinations(vs, k))
    return AbstractComplex(frozenset(closed))


def euler_characteristic(complex_: AbstractComplex) -> int:
    """Alternating sum of simplex counts; 0 for the empty complex."""
    return sum(-1 if len(s) % 2 == 0 else 1 for s in complex_.simplices)


def max_vertex_cofaces(complex_: AbstractComplex) -> int:
    """Largest number of simplices sharing a single vertex (the vertex itself counts)."""
    counts: Counter[int] = Counter()
    for simplex in complex_.simplices:
        counts.update(simplex)
    return max(counts.values(), default=0)


@dataclass(frozen=True)
class Embedding:
    """Assignment of a point in R^dim to each vertex id it covers."""

    dim: int
    coords: Mapping[int, tuple[float, ...]]

    def __post_init__(self) -> None:
        if not isinstance(self.dim, int) or self.dim < 1:
            raise ValueError(f"embedding dimension must be a positive integer, got {self.dim!r}")
        clean: dict[int, tuple[float, ...]] = {}
        for v, xs in self.coords.items():
            point = tuple(float(x) for x in xs)
            if len(point) != self.dim:
                raise ValueError(
                    f"vertex {v}: coordinate vector has length {len(point)}, expected {self.dim}"
                )
            clean[int(v)] = point
        object.__setattr__(self, "coords", clean)

    @classmethod
    def from_coords(cls, coords: Mapping[int, Sequence[float]]) -> "Embedding":
        """Infer the dimension from the first coordinate vector."""
        items = dict(coords)
        if not items:
            raise ValueError("embedding must cover at least one vertex")
        dim = len(next(iter(items.values())))
        return cls(dim, items)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.coords)

    def vector(self, v: int) -> tuple[float, ...]:
        try:
            return self.coords[v]
        except KeyError:
            raise ValueError(f"embedding has no coordinates for vertex {v}") from None

    def restrict(self, vertices: Iterable[int]) -> "Embedding":
        wanted = set(vertices)
        missing = wanted - set(self.coords)
        if missing:
            raise ValueError(f"embedding has no coordinates for vertices {sorted(missing)}")
        return Embedding(self.dim, {v: self.coords[v] for v in sorted(wanted)})

    def max_norm(self) -> float:
        """Largest Euclidean vertex norm; 0.0 when the embedding is empty."""
        return max((math.hypot(*xs) for xs in self.coords.values()), default=0.0)


@dataclass(frozen=True)
class GeometricComplex:
    """An abstract complex paired with an embedding covering all its vertices."""

    complex: AbstractComplex
    embedding: Embedding

    def __post_init__(self) -> None:
        missing = self.complex.vertices - self.embedding.vertices
        if missing:
            raise ValueError(f"embedding does not cover vertices {sorted(missing)}")

    @property
    def ambient_dim(self) -> int:
        return self.embedding.dim


def displacement(first: Embedding, second: Embedding) -> float:
    """Sum of per-vertex Euclidean displacements between two embeddings.

    Both embeddings must cover exactly the same vertex set and share one
    ambient dimension.
    """
    if first.dim != second.dim:
        raise ValueError(f"ambient dimensions differ: {first.dim} vs {second.dim}")
    if set(first.coords) != set(second.coords):
        raise ValueError("embeddings cover different vertex sets")
    total = 0.0
    for v, xs in first.coords.items():
        ys = second.coords[v]
        total += math.sqrt(sum((x - y) ** 2 for x, y in zip(xs, ys)))
    return total
