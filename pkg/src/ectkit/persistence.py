"""Persistence diagrams of simplex-wise filtrations over the two-element field.

Simplices are totally ordered by (value, dimension, lexicographic vertex ids)
and the boundary matrix is reduced by standard left-to-right column addition.
Pairs with zero persistence are dropped from the diagram (their count is kept
for bookkeeping); unpaired creators become points with infinite death.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .complexes import AbstractComplex, Simplex
from .filtration import SimplexFiltration, _facet_values_ok

__all__ = [
    "PersistencePoint",
    "PersistenceDiagram",
    "persistence_diagram",
    "betti_numbers",
]


@dataclass(frozen=True, order=True)
class PersistencePoint:
    """A (birth, death, dimension) triple; death may be +inf, birth may not."""

    birth: float
    death: float
    dim: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "birth", float(self.birth))
        object.__setattr__(self, "death", float(self.death))
        if math.isinf(self.birth) or math.isnan(self.birth) or math.isnan(self.death):
            raise ValueError(f"births must be finite, got ({self.birth}, {self.death})")
        if self.death < self.birth:
            raise ValueError(f"death {self.death} precedes birth {self.birth}")
        if self.dim < 0:
            raise ValueError(f"homological dimension must be non-negative, got {self.dim}")

    @property
    def persistence(self) -> float:
        return self.death - self.birth

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.death)


@dataclass(frozen=True)
class PersistenceDiagram:
    """A multiset of persistence points, stored sorted for canonical equality."""

    points: tuple[PersistencePoint, ...]
    dropped_pairs: int = 0  # zero-persistence pairs removed during reduction

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(sorted(self.points)))

    def in_dim(self, k: int) -> tuple[PersistencePoint, ...]:
        return tuple(p for p in self.points if p.dim == k)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(sorted({p.dim for p in self.points}))

    def infinite_count(self, k: int) -> int:
        return sum(1 for p in self.points if p.dim == k and p.is_infinite)

    def __len__(self) -> int:
        return len(self.points)


def _boundary(simplex: Simplex) -> tuple[Simplex, ...]:
    if len(simplex) == 1:
        return ()
    return tuple(itertools.combinations(simplex, len(simplex) - 1))


def persistence_diagram(filtration: SimplexFiltration) -> PersistenceDiagram:
    """Reduce the filtration's boundary matrix and read off the diagram."""
    values = filtration.values
    if not _facet_values_ok(filtration.complex, values):
        raise ValueError("filtration not simplex-wise monotone")
    order = sorted(filtration.complex.simplices, key=lambda s: (values[s], len(s), s))
    index = {s: i for i, s in enumerate(order)}

    reduced: list[set[int]] = []
    pivot_owner: dict[int, int] = {}  # low index -> column that owns it
    pairs: list[tuple[int, int]] = []
    for j, simplex in enumerate(order):
        column = {index[f] for f in _boundary(simplex)}
        while column:
            low = max(column)
            owner = pivot_owner.get(low)
            if owner is None:
                break
            column ^= reduced[owner]
        reduced.append(column)
        if column:
            low = max(column)
            pivot_owner[low] = j
            pairs.append((low, j))

    points: list[PersistencePoint] = []
    dropped = 0
    for i, j in pairs:
        birth, death = values[order[i]], values[order[j]]
        if birth == death:
            dropped += 1
            continue
        points.append(PersistencePoint(birth, death, len(order[i]) - 1))
    killed = set(pivot_owner)
    for j, simplex in enumerate(order):
        if not reduced[j] and j not in killed:
            points.append(PersistencePoint(values[simplex], math.inf, len(simplex) - 1))
    return PersistenceDiagram(tuple(points), dropped)


def betti_numbers(complex_: AbstractComplex) -> tuple[int, ...]:
    """Ranks of the homology groups over the two-element field.

    Computed as the infinite-point counts of the diagram of the constant-zero
    filtration; the tuple runs from dimension 0 to the complex's dimension.
    """
    if not complex_.simplices:
        raise ValueError("empty complex not permitted")
    trivial = SimplexFiltration(complex_, {s: 0.0 for s in complex_.simplices})
    diagram = persistence_diagram(trivial)
    return tuple(diagram.infinite_count(k) for k in range(complex_.dimension + 1))
