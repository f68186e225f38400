"""Wasserstein distances between persistence diagrams with l_q ground metrics.

Finite points may be matched to each other or to the diagonal; the optimal
matching is found exactly with an assignment solver on the diagonally
augmented cost matrix.  Infinite points are matched within each homological
dimension by sorted birth; diagrams whose infinite-point counts differ are at
distance +inf.  A brute-force enumerator over all matchings is kept as an
independent cross-check for small inputs.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .persistence import PersistenceDiagram, PersistencePoint

__all__ = [
    "diagonal_cost",
    "point_cost",
    "wasserstein_distance",
    "total_wasserstein_distance",
    "brute_force_wasserstein",
]

# persistence beyond this would overflow cost ** p for large p
_PERSISTENCE_CAP = 1e150
_BRUTE_FORCE_CAP = 8


def _birth_death(point) -> tuple[float, float]:
    if isinstance(point, PersistencePoint):
        return point.birth, point.death
    birth, death = point
    return float(birth), float(death)


def _check_orders(p: float, q: float) -> None:
    if not p >= 1.0:
        raise ValueError(f"matching order p must be at least 1, got {p!r}")
    if not q >= 1.0:
        raise ValueError(f"ground-metric order q must be at least 1, got {q!r}")


def diagonal_cost(point, q: float = math.inf) -> float:
    """l_q distance from a point to the diagonal.

    For finite q the nearest diagonal point is the midpoint, giving
    2^((1-q)/q) * persistence; for q = inf it is persistence / 2.  Points with
    infinite death are infinitely far from the diagonal.
    """
    birth, death = _birth_death(point)
    if math.isinf(death):
        return math.inf
    gap = death - birth
    if math.isinf(q):
        return gap / 2.0
    return 2.0 ** ((1.0 - q) / q) * gap

def point_cost(first, second, q: float = math.inf) -> float:
    """l_q distance between two diagram points.

    Two infinite-death points are compared by birth alone; an infinite-death
    point is infinitely far from any finite one.
    """
    b1, d1 = _birth_death(first)
    b2, d2 = _birth_death(second)
    inf1, inf2 = math.isinf(d1), math.isinf(d2)
    if inf1 and inf2:
        return abs(b1 - b2)
    if inf1 or inf2:
        return math.inf
    db, dd = abs(b1 - b2), abs(d1 - d2)
    if math.isinf(q):
        return max(db, dd)
    return (db ** q + dd ** q) ** (1.0 / q)


def _split(points) -> tuple[list[tuple[float, float]], list[float]]:
    finite: list[tuple[float, float]] = []
    infinite_births: list[float] = []
    for pt in points:
        birth, death = _birth_death(pt)
        if math.isinf(death):
            infinite_births.append(birth)
            continue
        if death - birth > _PERSISTENCE_CAP:
            raise ValueError(f"point ({birth}, {death}) exceeds the persistence cap {_PERSISTENCE_CAP:g}")
        finite.append((birth, death))
    return finite, sorted(infinite_births)


def _infinite_part(births1: list[float], births2: list[float], p: float) -> float | None:
    """Sum of |birth - birth|^p over the sorted-birth matching, or None if counts differ."""
    if len(births1) != len(births2):
        return None
    return sum(abs(a - b) ** p for a, b in zip(births1, births2))


def wasserstein_distance(
    first: Iterable,
    second: Iterable,
    p: float = 1.0,
    q: float = math.inf,
    return_matching: bool = False,
):
    """Order-p Wasserstein distance between two single-dimension diagrams.

    ``first`` and ``second`` are iterables of points (PersistencePoint or
    (birth, death) pairs) all belonging to one homological dimension.  Finite
    points are matched optimally against each other and the diagonal; the cost
    matrix holds l_q ground costs raised to the p-th power.

    With ``return_matching`` the finite-point matching is also returned as a
    list of (index into first | None, index into second | None) pairs, None
    meaning the diagonal.
    """
    _check_orders(p, q)
    fin1, inf1 = _split(first)
    fin2, inf2 = _split(second)
    inf_part = _infinite_part(inf1, inf2, p)
    if inf_part is None:
        return (math.inf, None) if return_matching else math.inf

    m, n = len(fin1), len(fin2)
    matching: list[tuple[int | None, int | None]] = []
    finite_part = 0.0
    if m + n > 0:
        size = m + n
        cost = np.zeros((size, size), dtype=np.float64)
        for i, x in enumerate(fin1):
            for j, y in enumerate(fin2):
                cost[i, j] = point_cost(x, y, q) ** p
            cost[i, n:] = diagonal_cost(x, q) ** p
        for j, y in enumerate(fin2):
            cost[m:, j] = diagonal_cost(y, q) ** p
        rows, cols = linear_sum_assignment(cost)
        finite_part = float(cost[rows, cols].sum())
        if return_matching:
            for r, c in zip(rows, cols):
                if r < m and c < n:
                    matching.append((int(r), int(c)))
                elif r < m:
                    matching.append((int(r), None))
                elif c < n:
                    matching.append((None, int(c)))

    total = (finite_part + inf_part) ** (1.0 / p)
    return (total, matching) if return_matching else total


def total_wasserstein_distance(
    first: PersistenceDiagram,
    second: PersistenceDiagram,
    p: float = 1.0,
    q: float = math.inf,
) -> float:
    """Combine per-dimension distances into ( sum_k W_k^p )^(1/p)."""
    _check_orders(p, q)
    dims = sorted(set(first.dims) | set(second.dims))
    total = 0.0
    for k in dims:
        w = wasserstein_distance(first.in_dim(k), second.in_dim(k), p, q)
        if math.isinf(w):
            return math.inf
        total += w ** p
    return total ** (1.0 / p)


def brute_force_wasserstein(first: Iterable, second: Iterable, p: float = 1.0, q: float = math.inf) -> float:
    """Exact distance by enumerating every matching; limited to 8 points total.

    Independent of the assignment solver: finite points are matched by
    exhaustive recursion, infinite points by trying all permutations.
    """
    _check_orders(p, q)
    fin1, inf1 = _split(first)
    fin2, inf2 = _split(second)
    if len(fin1) + len(fin2) + len(inf1) + len(inf2) > _BRUTE_FORCE_CAP:
        raise ValueError(f"brute force is limited to {_BRUTE_FORCE_CAP} points total")
    if len(inf1) != len(inf2):
        return math.inf
    inf_best = math.inf if inf1 else 0.0
    for perm in itertools.permutations(range(len(inf2))):
        cost = sum(abs(a - inf2[j]) ** p for a, j in zip(inf1, perm))
        inf_best = min(inf_best, cost)

    best = math.inf

    def recurse(i: int, used: set[int], acc: float) -> None:
        nonlocal best
        if acc >= best:
            return
        if i == len(fin1):
            rest = acc + sum(
                diagonal_cost(fin2[j], q) ** p for j in range(len(fin2)) if j not in used
            )
            best = min(best, rest)
            return
        recurse(i + 1, used, acc + diagonal_cost(fin1[i], q) ** p)
        for j in range(len(fin2)):
            if j not in used:
                recurse(i + 1, used | {j}, acc + point_cost(fin1[i], fin2[j], q) ** p)

    recurse(0, set(), 0.0)
    return (best + inf_best) ** (1.0 / p)
