"""Positive/negative parts g+(d), g-(d) and the annihilation cones Z(r)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..lie import Gen


@dataclass(frozen=True)
class PositivePartSpec:
    """``g+(d)``: ``L_{pi}`` (i >= 0), ``L_{j+p(i-d_j)}`` (i >= 0) and all centrals."""

    p: int
    d: tuple[int, ...]

    def __post_init__(self):
        if self.p < 2:
            raise ValueError(f"p must be at least 2, got {self.p}")
        object.__setattr__(self, "d", tuple(int(x) for x in self.d))
        if len(self.d) != self.p - 1:
            raise ValueError(f"d must have {self.p - 1} entries for p={self.p}, got {len(self.d)}")

    def dj(self, j: int) -> int:
        return self.d[j - 1]

    def contains_mode(self, m: int) -> bool:
        j = m % self.p
        if j == 0:
            return m >= 0
        return m >= j - self.p * self.dj(j)

    def contains(self, g: Gen) -> bool:
        return g.is_central or self.contains_mode(g.m)

    def is_negative(self, g: Gen) -> bool:
        return not g.is_central and not self.contains_mode(g.m)

    def level_of(self, m: int) -> int:
        """``i`` with ``m = pi`` or ``m = j + p(i - d_j)``."""
        j = m % self.p
        if j == 0:
            return m // self.p
        return (m - j) // self.p + self.dj(j)

    def mode(self, j: int, level: int) -> int:
        """Index of ``L_{pi}`` (j = 0) or ``L_{j+p(i-d_j)}``."""
        if j == 0:
            return self.p * level
        return j + self.p * (level - self.dj(j))

    def min_positive_mode(self) -> int:
        return min([0] + [self.mode(j, 0) for j in range(1, self.p)])

    def max_negative_mode(self) -> int:
        return max([-self.p] + [self.mode(j, -1) for j in range(1, self.p)])

    def negative_modes(self, bound: int) -> list[int]:
        """Modes of ``g-(d)`` with ``|m| <= bound``."""
        return [m for m in range(-bound, bound + 1) if not self.contains_mode(m)]


@dataclass(frozen=True)
class CategoryNSpec:
    """Data ``(k, d, l0)`` of the category with boundary operators ``L_{j+p(k-d_j)}``."""

    k: int
    part: PositivePartSpec
    l0: Fraction = Fraction(0)

    @property
    def p(self) -> int:
        return self.part.p

    @property
    def d(self) -> tuple[int, ...]:
        return self.part.d

    def cone(self) -> tuple[int, ...]:
        """``r = (k, k - d_1, ..., k - d_{p-1})``."""
        return (self.k,) + tuple(self.k - x for x in self.d)

    def boundary_modes(self) -> list[int]:
        return [self.part.mode(j, self.k) for j in range(1, self.p)]

    def annihilated(self, m: int) -> bool:
        return in_cone(self.p, self.cone(), m)

    def central_value(self, g: Gen) -> Fraction:
        if g.i == 0:
            return self.p * self.p * self.l0
        return Fraction(0)


def in_cone(p: int, r: Sequence[int], m: int) -> bool:
    """``m`` in ``Z(r) = union_j {j + p i : i > r_j}``."""
    j = m % p
    return (m - j) // p > r[j]


def cone_modes(p: int, r: Sequence[int], bound: int) -> list[int]:
    """Elements of ``Z(r)`` that are ``<= bound``."""
    out = []
    for j in range(p):
        i = r[j] + 1
        while j + p * i <= bound:
            out.append(j + p * i)
            i += 1
    return sorted(out)
