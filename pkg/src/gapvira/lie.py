"""The gap-p Virasoro algebra, its companion algebra N_p, and their brackets.

Generators are small hashable tuples (:class:`Gen`); elements are immutable
sparse linear combinations (:class:`LieElement`) with exact scalars from
:mod:`gapvira.cyclo`.

Gap-p Virasoro (family ``"gap"``), m, n in pZ and r, s not in pZ::

    [L_m, L_n] = (n - m) L_{m+n} + delta_{m+n,0} (1/12)((m/p)^3 - m/p) C_0
    [L_m, L_r] = r L_{m+r}
    [L_r, L_s] = r delta_{r+s,0} C_{rt},   rt = min(r mod p, p - r mod p)

N_p (family ``"np"``)::

    [T_m, T_n]     = (m - n) T_{m+n} + (1/12)(m^3 - m) delta_{m+n,0} K_0
    [T_m, N^i_n]   = -n N^i_{m+n}
    [N^i_m, N^j_n] = m delta_{i+j,p} delta_{m+n,0} K_i
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, NamedTuple, Optional

from .cyclo import Scalar, field, format_scalar, is_rational

GAP = "gap"
NP = "np"

_KIND_RANK = {"L": 0, "T": 0, "N": 1, "C": 2, "K": 2}


class Gen(NamedTuple):
    """A basis generator.

    ``kind`` is one of ``L C T N K``; ``m`` is the mode index (0 for central
    generators); ``i`` is the superscript of ``N`` or the central index.
    """

    kind: str
    m: int = 0
    i: int = 0

    @property
    def is_central(self) -> bool:
        return self.kind in ("C", "K")

    def __str__(self) -> str:
        if self.kind in ("L", "T"):
            return f"{self.kind}[{self.m}]"
        if self.kind == "N":
            return f"N[{self.i},{self.m}]"
        return f"{self.kind}[{self.i}]"

    __repr__ = __str__


def gen_key(g: Gen) -> tuple:
    """Normal-order key: ascending mode, T before N at equal mode, centrals last."""
    if g.is_central:
        return (1, 0, 0, g.i)
    return (0, g.m, _KIND_RANK[g.kind], g.i)


class AlgebraError(ValueError):
    """Input referring to the wrong algebra or to a nonexistent generator."""


@dataclass(frozen=True)
class Algebra:
    p: int
    family: str = GAP

    def __post_init__(self):
        if self.p < 2:
            raise AlgebraError(f"p must be at least 2, got {self.p}")
        if self.family not in (GAP, NP):
            raise AlgebraError(f"unknown algebra family {self.family!r}")

    def __str__(self) -> str:
        name = "gap-Virasoro" if self.family == GAP else "N"
        return f"{name}_{self.p}"

    @property
    def half(self) -> int:
        return self.p // 2

    @property
    def field(self):
        return field(self.p)

    def central_index(self, i: int) -> int:
        """Canonical central index: ``C_i = C_{p-i}`` for ``i > p//2``."""
        if not 0 <= i < self.p:
            raise AlgebraError(f"central index {i} outside 0..{self.p - 1} for p={self.p}")
        return self.p - i if i > self.half else i

    def L(self, m: int) -> Gen:
        self._need(GAP)
        return Gen("L", m, 0)

    def C(self, i: int) -> Gen:
        self._need(GAP)
        return Gen("C", 0, self.central_index(i))

    def T(self, m: int) -> Gen:
        self._need(NP)
        return Gen("T", m, 0)

    def N(self, i: int, m: int) -> Gen:
        self._need(NP)
        if not 1 <= i < self.p:
            raise AlgebraError(f"N superscript {i} outside 1..{self.p - 1}")
        return Gen("N", m, i)

    def K(self, i: int) -> Gen:
        self._need(NP)
        return Gen("K", 0, self.central_index(i))

    def centrals(self) -> list[Gen]:
        kind = "C" if self.family == GAP else "K"
        return [Gen(kind, 0, i) for i in range(self.half + 1)]

    def basis(self, window: int) -> list[Gen]:
        """All generators with mode index in ``[-window, window]`` plus centrals."""
        out: list[Gen] = []
        for m in range(-window, window + 1):
            if self.family == GAP:
                out.append(Gen("L", m))
            else:
                out.append(Gen("T", m))
                out.extend(Gen("N", m, i) for i in range(1, self.p))
        return out + self.centrals()

    def check(self, g: Gen) -> Gen:
        """Validate a generator built outside the constructors."""
        allowed = "LC" if self.family == GAP else "TNK"
        if g.kind not in allowed:
            raise AlgebraError(f"generator {g} does not belong to {self}")
        if g.is_central and g.i != self.central_index(g.i):
            raise AlgebraError(f"central generator {g} is not in canonical form")
        if g.kind == "N" and not 1 <= g.i < self.p:
            raise AlgebraError(f"N superscript {g.i} outside 1..{self.p - 1}")
        return g

    def _need(self, family: str) -> None:
        if self.family != family:
            raise AlgebraError(f"generator not available in {self}")


def GapVirasoro(p: int) -> Algebra:
    return Algebra(p, GAP)


def Np(p: int) -> Algebra:
    return Algebra(p, NP)


# structure constants ------------------------------------------------------

@lru_cache(maxsize=1 << 16)
def bracket_gens(alg: Algebra, a: Gen, b: Gen) -> tuple[tuple[Gen, Fraction], ...]:
    """``[a, b]`` for two basis generators as a tuple of ``(generator, coeff)``."""
    if a.is_central or b.is_central:
        return ()
    p = alg.p
    out: list[tuple[Gen, Fraction]] = []
    if alg.family == GAP:
        m, n = a.m, b.m
        if m % p == 0 and n % p == 0:
            if n != m:
                out.append((Gen("L", m + n), Fraction(n - m)))
            if m + n == 0:
                q = Fraction(m, p)
                c = (q ** 3 - q) / 12
                if c:
                    out.append((Gen("C", 0, 0), c))
        elif m % p == 0:
            out.append((Gen("L", m + n), Fraction(n)))
        elif n % p == 0:
            out.append((Gen("L", m + n), Fraction(-m)))
        elif m + n == 0:
            out.append((Gen("C", 0, alg.central_index(m % p)), Fraction(m)))
        return tuple(out)
    if a.kind == "T" and b.kind == "T":
        m, n = a.m, b.m
        if m != n:
            out.append((Gen("T", m + n), Fraction(m - n)))
        if m + n == 0 and m ** 3 != m:
            out.append((Gen("K", 0, 0), Fraction(m ** 3 - m, 12)))
    elif a.kind == "T":
        if b.m:
            out.append((Gen("N", a.m + b.m, b.i), Fraction(-b.m)))
    elif b.kind == "T":
        if a.m:
            out.append((Gen("N", a.m + b.m, a.i), Fraction(a.m)))
    elif a.i + b.i == p and a.m + b.m == 0 and a.m:
        out.append((Gen("K", 0, alg.central_index(a.i)), Fraction(a.m)))
    return tuple(out)


# elements -------------------------------------------------------------------

def _clean(terms: Mapping) -> dict:
    return {g: c for g, c in terms.items() if c}


class LieElement:
    """Immutable finite linear combination of generators of one algebra."""

    __slots__ = ("algebra", "_terms", "_hash")

    def __init__(self, algebra: Algebra, terms: Mapping[Gen, Scalar] | None = None):
        self.algebra = algebra
        self._terms = _clean(terms or {})
        self._hash = None

    @classmethod
    def gen(cls, algebra: Algebra, g: Gen, coeff: Scalar = Fraction(1)) -> "LieElement":
        return cls(algebra, {algebra.check(g): Fraction(coeff) if is_rational(coeff) else coeff})

    @property
    def terms(self) -> Mapping[Gen, Scalar]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self) -> Iterator[Gen]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, g: Gen) -> Scalar:
        return self._terms.get(g, Fraction(0))

    def _same(self, other: "LieElement") -> None:
        if not isinstance(other, LieElement):
            raise TypeError(f"expected LieElement, got {type(other).__name__}")
        if other.algebra != self.algebra:
            raise AlgebraError(f"algebra mismatch: {self.algebra} vs {other.algebra}")

    def __add__(self, other: "LieElement") -> "LieElement":
        self._same(other)
        t = dict(self._terms)
        for g, c in other._terms.items():
            t[g] = t.get(g, 0) + c
        return LieElement(self.algebra, t)

    def __neg__(self) -> "LieElement":
        return LieElement(self.algebra, {g: -c for g, c in self._terms.items()})

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def __mul__(self, scalar) -> "LieElement":
        if isinstance(scalar, LieElement):
            return NotImplemented
        if isinstance(scalar, int):
            scalar = Fraction(scalar)
        return LieElement(self.algebra, {g: c * scalar for g, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, LieElement):
            return self.algebra == other.algebra and self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.algebra, frozenset(self._terms.items())))
        return self._hash

    def sorted_items(self) -> list[tuple[Gen, Scalar]]:
        return sorted(self._terms.items(), key=lambda kv: gen_key(kv[0]))

    def __str__(self) -> str:
        return format_terms(self.sorted_items())

    def __repr__(self) -> str:
        return f"LieElement({self.algebra}, {self})"


def format_terms(items: Iterable[tuple[object, Scalar]]) -> str:
    """Render ``coeff*label`` pairs in the shared text grammar."""
    out = ""
    for label, c in items:
        if is_rational(c):
            neg = c < 0
            a = -c if neg else c
            body = str(label) if a == 1 else f"{format_scalar(a)}*{label}"
        else:
            neg = False
            body = f"({format_scalar(c)})*{label}"
        if not out:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out or "0"


def element(algebra: Algebra, *pairs) -> LieElement:
    """``element(alg, (coeff, gen), ...)`` convenience constructor."""
    t: dict = {}
    for c, g in pairs:
        algebra.check(g)
        t[g] = t.get(g, 0) + (Fraction(c) if is_rational(c) else c)
    return LieElement(algebra, t)


def bracket(x: LieElement, y: LieElement) -> LieElement:
    """Bilinear extension of the structure constants."""
    x._same(y)
    alg = x.algebra
    acc: dict = {}
    for a, ca in x._terms.items():
        if a.is_central:
            continue
        for b, cb in y._terms.items():
            if b.is_central:
                continue
            s = ca * cb
            for g, c in bracket_gens(alg, a, b):
                acc[g] = acc.get(g, 0) + s * c
    return LieElement(alg, acc)


def jacobi_residual(x: LieElement, y: LieElement, z: LieElement) -> LieElement:
    return bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))


def jacobi_residual_gens(alg: Algebra, a: Gen, b: Gen, c: Gen) -> dict:
    """Fast Jacobi residual on three basis generators (sparse dict, empty if zero)."""
    acc: dict = {}
    for u, v, w in ((a, b, c), (b, c, a), (c, a, b)):
        for g, k in bracket_gens(alg, v, w):
            for h, k2 in bracket_gens(alg, u, g):
                acc[h] = acc.get(h, 0) + k * k2
    return _clean(acc)


# grading --------------------------------------------------------------------

def grade(x: LieElement) -> Optional[Fraction]:
    """Degree ``m/p`` of ``L_m`` (central generators: 0); ``None`` if mixed or zero.

    For N_p the grading is the integer mode index.
    """
    grades = set()
    den = x.algebra.p if x.algebra.family == GAP else 1
    for g in x:
        grades.add(Fraction(0) if g.is_central else Fraction(g.m, den))
    if len(grades) != 1:
        return None
    return grades.pop()


# sigma_p --------------------------------------------------------------------

def sigma(x: LieElement, power: int = 1) -> LieElement:
    """The order-p automorphism: N^i_m -> xi N^i_m, K_i -> xi^2 K_i (i >= 1)."""
    alg = x.algebra
    alg._need(NP)
    fld = alg.field
    xi1, xi2 = fld.xi_power(power), fld.xi_power(2 * power)
    out = {}
    for g, c in x.items():
        if g.kind == "N":
            out[g] = c * xi1
        elif g.kind == "K" and g.i:
            out[g] = c * xi2
        else:
            out[g] = c
    return LieElement(alg, out)


def sigma_mode_twisted(x: LieElement) -> LieElement:
    """The variant N^i_m -> xi^m N^i_m, K_i -> xi^2 K_i.

    Kept only to demonstrate that it is *not* an automorphism for p >= 3.
    """
    alg = x.algebra
    alg._need(NP)
    fld = alg.field
    out = {}
    for g, c in x.items():
        if g.kind == "N":
            out[g] = c * fld.xi_power(g.m)
        elif g.kind == "K" and g.i:
            out[g] = c * fld.xi_power(2)
        else:
            out[g] = c
    return LieElement(alg, out)


# rescaled basis L(m), I^i(m), Cbar_i ------------------------------------------

class RGen(NamedTuple):
    """Rescaled generator: ``Lhat(m)``, ``Ihat^i(m)`` or ``Cbar_i``."""

    kind: str  # "Lhat" | "Ihat" | "Cbar"
    m: int = 0
    i: int = 0

    @property
    def is_central(self) -> bool:
        return self.kind == "Cbar"

    def __str__(self) -> str:
        if self.kind == "Lhat":
            return f"Lhat[{self.m}]"
        if self.kind == "Ihat":
            return f"Ihat[{self.i},{self.m}]"
        return f"Cbar[{self.i}]"

    __repr__ = __str__


def rgen_key(g: RGen) -> tuple:
    return (g.kind == "Cbar", g.m, g.kind == "Ihat", g.i)


class RescaledElement:
    """Element of the gap-p Virasoro algebra written in the rescaled basis."""

    __slots__ = ("p", "_terms")

    def __init__(self, p: int, terms: Mapping[RGen, Scalar] | None = None):
        self.p = p
        self._terms = _clean(terms or {})

    def items(self):
        return self._terms.items()

    def coeff(self, g: RGen) -> Scalar:
        return self._terms.get(g, Fraction(0))

    def __add__(self, other: "RescaledElement") -> "RescaledElement":
        t = dict(self._terms)
        for g, c in other._terms.items():
            t[g] = t.get(g, 0) + c
        return RescaledElement(self.p, t)

    def __mul__(self, scalar) -> "RescaledElement":
        if isinstance(scalar, int):
            scalar = Fraction(scalar)
        return RescaledElement(self.p, {g: c * scalar for g, c in self._terms.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other) -> bool:
        return isinstance(other, RescaledElement) and self.p == other.p and self._terms == other._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __str__(self) -> str:
        return format_terms(sorted(self._terms.items(), key=lambda kv: rgen_key(kv[0])))

    __repr__ = __str__


def rescaled(p: int, *pairs) -> RescaledElement:
    t: dict = {}
    for c, g in pairs:
        t[g] = t.get(g, 0) + (Fraction(c) if is_rational(c) else c)
    return RescaledElement(p, t)


def Lhat(m: int) -> RGen:
    return RGen("Lhat", m)


def Ihat(i: int, m: int) -> RGen:
    return RGen("Ihat", m, i)


def Cbar(i: int) -> RGen:
    return RGen("Cbar", 0, i)


def _rgen_of(p: int, g: Gen) -> tuple[RGen, Fraction]:
    """``g = factor * rgen``."""
    if g.kind == "C":
        return Cbar(g.i), Fraction(p * p if g.i == 0 else p)
    q, r = divmod(g.m, p)
    if r == 0:
        return Lhat(q), Fraction(-p)
    return Ihat(r, q), Fraction(-p)


def _gen_of(p: int, g: RGen) -> tuple[Gen, Fraction]:
    """``rgen = factor * g``."""
    if g.kind == "Cbar":
        return Gen("C", 0, g.i), Fraction(1, p * p if g.i == 0 else p)
    if g.kind == "Lhat":
        return Gen("L", p * g.m), Fraction(-1, p)
    return Gen("L", p * g.m + g.i), Fraction(-1, p)


def to_rescaled(x: LieElement) -> RescaledElement:
    x.algebra._need(GAP)
    p = x.algebra.p
    out: dict = {}
    for g, c in x.items():
        rg, f = _rgen_of(p, g)
        out[rg] = out.get(rg, 0) + c * f
    return RescaledElement(p, out)


def from_rescaled(y: RescaledElement) -> LieElement:
    alg = GapVirasoro(y.p)
    out: dict = {}
    for rg, c in y.items():
        if rg.kind == "Ihat" and not 1 <= rg.i < y.p:
            raise AlgebraError(f"Ihat superscript {rg.i} outside 1..{y.p - 1}")
        if rg.kind == "Cbar" and rg.i != alg.central_index(rg.i):
            raise AlgebraError(f"Cbar index {rg.i} not canonical for p={y.p}")
        g, f = _gen_of(y.p, rg)
        out[g] = out.get(g, 0) + c * f
    return LieElement(alg, out)


def rescaled_bracket_gens(p: int, a: RGen, b: RGen) -> tuple[tuple[RGen, Fraction], ...]:
    """Brackets written directly in the rescaled basis::

        [L(m), L(n)]     = (m - n) L(m+n) + (1/12)(m^3 - m) delta_{m+n,0} Cbar_0
        [L(m), I^i(n)]   = -(n + i/p) I^i(m+n)
        [I^i(m), I^j(n)] = (m + i/p) delta_{i+j,p} delta_{m+n+1,0} Cbar_i
    """
    if a.is_central or b.is_central:
        return ()
    out = []
    if a.kind == "Lhat" and b.kind == "Lhat":
        m, n = a.m, b.m
        if m != n:
            out.append((Lhat(m + n), Fraction(m - n)))
        if m + n == 0 and m ** 3 != m:
            out.append((Cbar(0), Fraction(m ** 3 - m, 12)))
    elif a.kind == "Lhat":
        c = -(b.m + Fraction(b.i, p))
        if c:
            out.append((Ihat(b.i, a.m + b.m), c))
    elif b.kind == "Lhat":
        c = a.m + Fraction(a.i, p)
        if c:
            out.append((Ihat(a.i, a.m + b.m), c))
    elif a.i + b.i == p and a.m + b.m + 1 == 0:
        c = a.m + Fraction(a.i, p)
        ci = a.i if a.i <= p // 2 else p - a.i
        out.append((Cbar(ci), c))
    return tuple(out)


def rescaled_bracket(x: RescaledElement, y: RescaledElement) -> RescaledElement:
    if x.p != y.p:
        raise AlgebraError("rescaled elements over different p")
    acc: dict = {}
    for a, ca in x.items():
        for b, cb in y.items():
            for g, c in rescaled_bracket_gens(x.p, a, b):
                acc[g] = acc.get(g, 0) + ca * cb * c
    return RescaledElement(x.p, acc)
