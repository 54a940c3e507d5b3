"""The k = 0 modules R(theta, eta) = U(g+(d))/J, realized on C[L_0]."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Mapping

from ..cyclo import Scalar
from ..lie import Gen, GapVirasoro
from ..modules.engine import BaseModule, ModuleError
from ..modules.ind import IndModule
from ..modules.parts import CategoryNSpec, PositivePartSpec
from ..modules.vector import ModuleVector


def _scalar(x) -> Scalar:
    return Fraction(x) if isinstance(x, (int, str, Fraction)) else x


@dataclass(frozen=True)
class RSpec:
    p: int
    d: tuple[int, ...]
    theta: Mapping[int, Scalar]
    eta: Mapping[int, Scalar]
    l0: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(int(x) for x in self.d))
        object.__setattr__(self, "theta", {int(i): _scalar(c) for i, c in dict(self.theta).items()})
        object.__setattr__(self, "eta", {int(i): _scalar(c) for i, c in dict(self.eta).items()})
        object.__setattr__(self, "l0", Fraction(self.l0))
        self.validate()

    @property
    def part(self) -> PositivePartSpec:
        return PositivePartSpec(self.p, self.d)

    @property
    def S(self) -> frozenset[int]:
        return frozenset(i for i in range(1, self.p) if self.d[i - 1] <= 0)

    @property
    def Sbar(self) -> frozenset[int]:
        return frozenset(range(1, self.p)) - self.S

    def validate(self) -> None:
        PositivePartSpec(self.p, self.d)  # checks the length of d
        if not self.S:
            raise ModuleError("R needs some d_i <= 0 (S is empty)")
        if set(self.theta) != set(self.S):
            raise ModuleError(f"theta must be given exactly on S={sorted(self.S)}")
        if set(self.eta) != set(self.Sbar):
            raise ModuleError(f"eta must be given exactly on S-bar={sorted(self.Sbar)}")
        for name, table in (("theta", self.theta), ("eta", self.eta)):
            for i, c in table.items():
                if not c:
                    raise ModuleError(f"{name}_{i} must be nonzero")

    def category(self) -> CategoryNSpec:
        return CategoryNSpec(0, self.part, self.l0)

    def value_on_one(self, m: int) -> Scalar:
        """Scalar by which ``L_m`` (m in g+(d), m != 0) acts on ``1``."""
        part = self.part
        r = m % self.p
        if r == 0 or part.level_of(m) > 0:
            return Fraction(0)
        return self.theta[r] if r in self.S else self.eta[r]


def r_act(spec: RSpec, g: Gen, n: int) -> dict[int, Scalar]:
    """``g * L_0^n`` in the basis ``{L_0^j}`` as ``{j: coeff}``."""
    if g.is_central:
        if g.i == 0:
            c = spec.p * spec.p * spec.l0
            return {n: c} if c else {}
        return {}
    if g.kind != "L" or not spec.part.contains_mode(g.m):
        raise ModuleError(f"{g} is not in g+(d) for d={spec.d}")
    m = g.m
    if m == 0:
        return {n + 1: Fraction(1)}
    value = spec.value_on_one(m)
    if not value:
        return {}
    # L_m L_0^n = (L_0 - m)^n L_m
    return {j: comb(n, j) * Fraction(-m) ** (n - j) * value for j in range(n + 1)}


def r_step_formula(spec: RSpec, i: int, n: int) -> dict[int, Scalar]:
    """Right-hand side ``theta_i sum_{j<n} C(n,j)(-i+p d_i)^(n-j) L_0^j``."""
    a = Fraction(-i + spec.p * spec.d[i - 1])
    return {j: spec.theta[i] * comb(n, j) * a ** (n - j) for j in range(n) if a ** (n - j)}


class RModule(BaseModule):
    """``R(theta, eta)`` with basis keys ``n`` standing for ``L_0^n``."""

    def __init__(self, spec: RSpec):
        self.spec = spec
        self.algebra = GapVirasoro(spec.p)
        self.name = f"R(p={spec.p}, d={spec.d})"

    def contains(self, g: Gen) -> bool:
        return g.is_central or self.spec.part.contains_mode(g.m)

    def act_base(self, g: Gen, key: int) -> dict:
        return r_act(self.spec, g, key)

    def central_value(self, g: Gen) -> Scalar:
        return self.spec.category().central_value(g)

    def basis_upto(self, degree: int) -> list:
        return list(range(degree + 1))

    def key_degree(self, key: int) -> int:
        return key

    def threshold(self, key: int) -> int:
        part = self.spec.part
        return max(1, max(part.mode(j, 0) for j in range(1, self.spec.p)) + 1)

    def cyclic(self) -> ModuleVector:
        return ModuleVector.basis(0)


def induced_r(spec: RSpec) -> IndModule:
    return IndModule(RModule(spec), spec.category(), name=f"Ind(R, p={spec.p}, d={spec.d})")


def r_internal_step(spec: RSpec, f: ModuleVector) -> ModuleVector:
    """One application of ``L_{i-pd_i} - theta_i`` (smallest i in S); lowers the L_0-degree."""
    i = min(spec.S)
    m = spec.part.mode(i, 0)
    mod = RModule(spec)
    return mod.act_gen(Gen("L", m), f) - f * spec.theta[i]


def r_internal_reduce(spec: RSpec, f: ModuleVector) -> tuple[ModuleVector, int]:
    """Lower the degree to 0; returns the multiple of ``1`` and the step count."""
    if not f:
        raise ModuleError("cannot reduce the zero vector")
    steps = 0
    while max(f.keys()) > 0:
        top = max(f.keys())
        f = r_internal_step(spec, f)
        steps += 1
        if not f or max(f.keys()) != top - 1:
            raise AssertionError("R-internal step failed to lower the degree by one")
    return f, steps
