"""Euler characteristic curves as exact integer-valued step functions.

A curve is stored canonically: strictly increasing float breakpoints with
nonzero integer jumps, value 0 to the left of everything, right-continuous.
Two curves that agree pointwise therefore compare equal as objects, and the
L1 distance between curves is computed exactly from merged breakpoints with
no tolerance snapping.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable

from .filtration import SimplexFiltration

if TYPE_CHECKING:  # pragma: no cover
    from .persistence import PersistenceDiagram

__all__ = [
    "StepFunction",
    "ecc_from_filtration",
    "ecc_from_diagram",
    "l1_distance",
]


@dataclass(frozen=True)
class StepFunction:
    """Right-continuous integer step function that is 0 near -infinity."""

    breakpoints: tuple[float, ...]
    jumps: tuple[int, ...]
    _cumulative: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        bps = tuple(float(b) for b in self.breakpoints)
        jumps = tuple(self.jumps)
        if len(bps) != len(jumps):
            raise ValueError("breakpoints and jumps must have equal length")
        if any(a >= b for a, b in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if any(math.isnan(b) or math.isinf(b) for b in bps):
            raise ValueError("breakpoints must be finite")
        for j in jumps:
            if not isinstance(j, int) or isinstance(j, bool) or j == 0:
                raise ValueError(f"jumps must be nonzero integers, got {j!r}")
        cumulative = []
        total = 0
        for j in jumps:
            total += j
            cumulative.append(total)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "jumps", jumps)
        object.__setattr__(self, "_cumulative", tuple(cumulative))

    @classmethod
    def from_jumps(cls, jump_pairs: Iterable[tuple[float, int]]) -> "StepFunction":
        """Canonicalize arbitrary (position, jump) pairs.

        Jumps at exactly equal positions are summed; zero net jumps are
        dropped.  Positions are compared as exact floats.
        """
        merged: dict[float, int] = {}
        for b, j in jump_pairs:
            b = float(b)
            merged[b] = merged.get(b, 0) + int(j)
        items = sorted((b, j) for b, j in merged.items() if j != 0)
        return cls(tuple(b for b, _ in items), tuple(j for _, j in items))

    def evaluate(self, a: float) -> int:
        """Value at ``a``: the sum of jumps at positions <= a."""
        idx = bisect_right(self.breakpoints, a)
        return self._cumulative[idx - 1] if idx else 0

    @property
    def terminal_value(self) -> int:
        """Value to the right of the last breakpoint (0 for the empty function)."""
        return self._cumulative[-1] if self._cumulative else 0

    def steps(self) -> tuple[tuple[float, int], ...]:
        """(breakpoint, value immediately after) pairs in order."""
        return tuple(zip(self.breakpoints, self._cumulative))


def ecc_from_filtration(filtration: SimplexFiltration) -> StepFunction:
    """Curve of sublevel Euler characteristics of a simplex-wise filtration.

    At each distinct filtration value the curve jumps by the alternating-sign
    count of the simplices entering there.
    """
    jumps: dict[float, int] = {}
    for simplex, value in filtration.values.items():
        sign = -1 if len(simplex) % 2 == 0 else 1
        jumps[value] = jumps.get(value, 0) + sign
    return StepFunction.from_jumps(jumps.items())


def ecc_from_diagram(diagram: "PersistenceDiagram") -> StepFunction:
    """Curve of alternating-sign counts of diagram points alive at each value.

    A point of homological dimension k contributes (-1)^k on [birth, death);
    infinite deaths never switch off.  For diagrams of sublevel filtrations
    this reproduces :func:`ecc_from_filtration` exactly.
    """
    pairs: list[tuple[float, int]] = []
    for point in diagram.points:
        sign = -1 if point.dim % 2 else 1
        pairs.append((point.birth, sign))
        if not math.isinf(point.death):
            pairs.append((point.death, -sign))
    return StepFunction.from_jumps(pairs)


def _merged_difference(first: StepFunction, second: StepFunction) -> tuple[list[float], list[int]]:
    """Breakpoints and running values of first - second, exactly merged."""
    merged: dict[float, int] = {}
    for b, j in zip(first.breakpoints, first.jumps):
        merged[b] = merged.get(b, 0) + j
    for b, j in zip(second.breakpoints, second.jumps):
        merged[b] = merged.get(b, 0) - j
    breaks = sorted(merged)
    values = []
    total = 0
    for b in breaks:
        total += merged[b]
        values.append(total)
    return breaks, values


def l1_distance(first: StepFunction, second: StepFunction, window: float | None = None) -> float:
    """Exact L1 distance between two step functions.

    Without a window the integral runs over the whole line and is finite only
    when the terminal values agree; otherwise the distance is +inf.  With a
    window radius B > 0 the integral runs over [-B, B] and is always finite.
    """
    if window is not None and not window > 0.0:
        raise ValueError(f"window radius must be positive, got {window!r}")
    breaks, values = _merged_difference(first, second)
    terminal = first.terminal_value - second.terminal_value
    if window is None:
        if terminal != 0:
            return math.inf
        total = 0.0
        for i in range(len(breaks) - 1):
            total += abs(values[i]) * (breaks[i + 1] - breaks[i])
        return total
    lo, hi = -window, window
    total = 0.0
    for i in range(len(breaks) - 1):
        left = max(breaks[i], lo)
        right = min(breaks[i + 1], hi)
        if right > left:
            total += abs(values[i]) * (right - left)
    if breaks and breaks[-1] < hi:
        total += abs(terminal) * (hi - max(breaks[-1], lo))
    return total
