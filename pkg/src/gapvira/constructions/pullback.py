"""Modules over the Virasoro subalgebra spanned by L_{pm} and C_0, extended by zero."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Hashable, Mapping

from ..cyclo import Scalar
from ..lie import Gen, GapVirasoro, LieElement, bracket_gens, gen_key
from ..modules.engine import CharacterModule, InducedModule, Module, ModuleError
from ..modules.vector import ModuleVector


class VirasoroTable(Module):
    """Finite action tables ``{m: {key: {key: coeff}}}`` for modes ``m`` in pZ.

    Modes absent from the table act by zero when ``default_zero`` is set and
    are unavailable otherwise.
    """

    def __init__(self, p: int, keys, tables: Mapping[int, Mapping], c0: Scalar = Fraction(0),
                 default_zero: bool = True, check: bool = True):
        self.p = p
        self.algebra = GapVirasoro(p)
        self.keys = list(keys)
        self.tables = {int(m): {k: dict(img) for k, img in t.items()} for m, t in tables.items()}
        self.c0 = Fraction(c0) if isinstance(c0, (int, str)) else c0
        self.default_zero = default_zero
        self.name = "virasoro-table"
        for m in self.tables:
            if m % p:
                raise ModuleError(f"table mode {m} is not a multiple of p={p}")
        if check:
            bad = self.bracket_violations()
            if bad:
                a, b, key = bad[0]
                raise ModuleError(f"tables violate [L[{a}],L[{b}]] on key {key!r}")

    def act_key(self, g: Gen, key: Hashable) -> dict:
        if g.is_central:
            return {key: self.c0} if g.i == 0 and self.c0 else {}
        table = self.tables.get(g.m)
        if table is None:
            if self.default_zero:
                return {}
            raise ModuleError(f"L[{g.m}] is not available in the action tables")
        return dict(table.get(key, {}))

    def bracket_violations(self) -> list[tuple]:
        modes = sorted(set(self.tables) | {0})
        bad = []
        alg = self.algebra
        for a, b in combinations_with_replacement(modes, 2):
            if not self.default_zero and a + b not in self.tables and a != b:
                continue
            br = LieElement(alg, dict(bracket_gens(alg, Gen("L", a), Gen("L", b))))
            for key in self.keys:
                v = ModuleVector.basis(key)
                lhs = self.act(br, v)
                x, y = Gen("L", a), Gen("L", b)
                rhs = self.act_gen(x, self.act_gen(y, v)) - self.act_gen(y, self.act_gen(x, v))
                if lhs != rhs:
                    bad.append((a, b, key))
        return bad

    def basis_upto(self, degree: int) -> list:
        return list(self.keys)

    def key_degree(self, key) -> int:
        return 0

    def threshold(self, key) -> int:
        modes = [m for m, t in self.tables.items() if t.get(key)]
        return max([0] + modes) + 1

    def cyclic(self) -> ModuleVector:
        return ModuleVector.basis(self.keys[0])


def trivial_table(p: int) -> VirasoroTable:
    return VirasoroTable(p, [()], {}, c0=0)


class VirasoroVerma(InducedModule):
    """Verma module over the subalgebra ``L_{pm}, C_0``: ``L_0`` acts by ``weight``, ``C_0`` by ``c0``."""

    def __init__(self, p: int, c0, weight):
        alg = GapVirasoro(p)
        self.p = p
        self.c0 = Fraction(c0)
        self.weight = Fraction(weight)

        def value(g: Gen):
            return self.weight if g.m == 0 else 0

        def central(g: Gen):
            return self.c0 if g.i == 0 else Fraction(0)

        base = CharacterModule(alg, lambda g: g.m % p == 0 and g.m >= 0, value, central,
                               threshold=1, name="C_weight")
        super().__init__(alg, base, is_free=lambda g: g.kind == "L" and g.m % p == 0 and g.m < 0,
                         free_key=gen_key,
                         free_generators=lambda deg: [Gen("L", m) for m in range(-deg, 0) if m % p == 0],
                         free_max_mode=-p, name=f"VirVerma(p={p}, c0={self.c0}, weight={self.weight})")


class VirasoroPullback(Module):
    """A module over ``L_{pm}, C_0`` made into a g-module: ``L_i`` (i not in pZ) and ``C_i`` act by 0."""

    def __init__(self, inner: Module):
        self.inner = inner
        self.algebra = inner.algebra
        self.p = self.algebra.p
        self.name = f"pullback({inner.name})"

    def act_key(self, g: Gen, key) -> dict:
        if g.is_central:
            return self.inner.act_key(g, key) if g.i == 0 else {}
        if g.m % self.p:
            return {}
        return self.inner.act_key(g, key)

    def basis_upto(self, degree: int) -> list:
        return self.inner.basis_upto(degree)

    def key_degree(self, key) -> int:
        return self.inner.key_degree(key)

    def threshold(self, key) -> int:
        return self.inner.threshold(key)

    def cyclic(self) -> ModuleVector:
        return self.inner.cyclic()


def build_virasoro_pullback(inner: Module) -> VirasoroPullback:
    return VirasoroPullback(inner)
