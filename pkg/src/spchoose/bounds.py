"""Exact value of the strong fractional choice number of SP graphs with girth >= k."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class BoundRow:
    k: int
    q: int
    girth_class: tuple  # (4q-1, 4q, 4q+1, 4q+2)
    bound: Fraction

    def __str__(self) -> str:
        cls = ",".join(str(c) for c in self.girth_class)
        return f"k={self.k}  q={self.q}  class={{{cls}}}  bound={self.bound}"


def bound_row(k: int) -> BoundRow:
    if k < 3:
        raise ValueError(f"k must be >= 3, got {k}")
    q = (k + 1) // 4
    return BoundRow(k, q, (4 * q - 1, 4 * q, 4 * q + 1, 4 * q + 2), 2 + Fraction(1, q))
