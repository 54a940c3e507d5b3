"""Sparse vectors in realized modules."""
from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterator, Mapping

from ..cyclo import Scalar


class ModuleVector:
    """Immutable finite map ``basis key -> scalar``.

    For induced modules a key is ``(word, base_key)`` with ``word`` the
    normal-ordered tuple of free generators; the owning module interprets it.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Hashable, Scalar] | None = None):
        self._terms = {k: (Fraction(c) if isinstance(c, int) else c)
                       for k, c in (terms or {}).items() if c}

    @classmethod
    def basis(cls, key: Hashable, coeff: Scalar = Fraction(1)) -> "ModuleVector":
        return cls({key: coeff})

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def __iter__(self) -> Iterator[Hashable]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, key: Hashable) -> Scalar:
        return self._terms.get(key, Fraction(0))

    def as_dict(self) -> dict:
        return dict(self._terms)

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        t = dict(self._terms)
        for k, c in other._terms.items():
            t[k] = t.get(k, 0) + c
        return ModuleVector(t)

    def __neg__(self) -> "ModuleVector":
        return ModuleVector({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        return self + (-other)

    def __mul__(self, scalar) -> "ModuleVector":
        if isinstance(scalar, ModuleVector):
            return NotImplemented
        if isinstance(scalar, int):
            scalar = Fraction(scalar)
        return ModuleVector({k: c * scalar for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, ModuleVector):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "ModuleVector(0)"
        body = ", ".join(f"{k!r}: {c!r}" for k, c in self._terms.items())
        return f"ModuleVector({{{body}}})"


def combine(pairs) -> ModuleVector:
    """Sum of ``coeff * vector`` over ``(coeff, vector)`` pairs."""
    acc: dict = {}
    for c, v in pairs:
        if not c:
            continue
        for k, x in v.items():
            acc[k] = acc.get(k, 0) + c * x
    return ModuleVector(acc)
