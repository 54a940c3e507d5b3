"""Verma modules over the gap-p Virasoro algebra, the vacuum module over N_p,
graded dimensions and singular vectors."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from ..lie import Gen, GapVirasoro, Np, gen_key
from ..linalg import nullspace
from .engine import CharacterModule, InducedModule
from .vector import ModuleVector


def _negative_gap_modes(p: int):
    return lambda degree: [Gen("L", m) for m in range(-degree, 0)]


class VermaModule(InducedModule):
    """``M(l, h)`` with ``l = (l0, 0, ..., 0)``: ``L(0) = -(1/p) L_0`` acts as ``h``."""

    def __init__(self, p: int, l0, h):
        alg = GapVirasoro(p)
        self.p = p
        self.l0 = Fraction(l0)
        self.h = Fraction(h)

        def value(g: Gen):
            return -p * self.h if g.m == 0 else 0

        def central(g: Gen):
            return p * p * self.l0 if g.i == 0 else Fraction(0)

        base = CharacterModule(alg, lambda g: g.m >= 0, value, central, threshold=1,
                               name=f"C_h(p={p})")
        super().__init__(alg, base, is_free=lambda g: g.kind == "L" and g.m < 0,
                         free_key=gen_key, free_generators=_negative_gap_modes(p),
                         free_max_mode=-1, name=f"Verma(p={p}, l0={self.l0}, h={self.h})")

    def grade_words(self, n: int) -> list[tuple]:
        """Normal-ordered words of total index ``-n`` (grade ``n/p``)."""
        return [tuple(Gen("L", -a) for a in reversed(part)) for part in partitions(n)]

    def graded_basis(self, n: int) -> list:
        return [(w, ()) for w in self.grade_words(n)]


def partitions(n: int, largest: int | None = None) -> list[tuple[int, ...]]:
    """Partitions of ``n`` as non-increasing tuples."""
    if largest is None:
        largest = n
    if n == 0:
        return [()]
    out = []
    for a in range(min(n, largest), 0, -1):
        out.extend((a,) + rest for rest in partitions(n - a, a))
    return out


# graded dimensions --------------------------------------------------------

def graded_dim_enumeration(p: int, upto) -> dict[Fraction, int]:
    """Count words in the rescaled generators ``I^i(-k)`` (grade k - i/p), ``L(-m)`` (grade m).

    Grades are measured in units of 1/p; enumeration is over multisets of
    generators whose grades add up to the target.
    """
    top = int(Fraction(upto) * p)
    # each rescaled generator carries a grade in units of 1/p
    gens = []
    for m in range(1, top // p + 1):
        gens.append(p * m)  # L(-m)
    for i in range(1, p):
        for k in range(1, top // p + 2):
            g = p * k - i  # I^i(-k)
            if 0 < g <= top:
                gens.append(g)
    gens.sort()

    @lru_cache(maxsize=None)
    def count(n: int, start: int) -> int:
        if n == 0:
            return 1
        total = 0
        for t in range(start, len(gens)):
            if gens[t] > n:
                break
            total += count(n - gens[t], t)
        return total

    return {Fraction(n, p): count(n, 0) for n in range(top + 1)}


def graded_dim_generating(p: int, upto) -> dict[Fraction, int]:
    """Coefficients of the product formula, expanded in ``t = q^(1/p)``.

    The factors are ``(1 - q^m)^-1`` (m >= 1) and ``(1 - q^(k - i/p))^-1``.
    """
    top = int(Fraction(upto) * p)
    series = [0] * (top + 1)
    series[0] = 1
    exps = [p * m for m in range(1, top // p + 1)]
    exps += [p * k - i for i in range(1, p) for k in range(1, top // p + 2) if 0 < p * k - i <= top]
    for e in exps:
        # multiply by 1/(1 - t^e)
        for n in range(e, top + 1):
            series[n] += series[n - e]
    return {Fraction(n, p): series[n] for n in range(top + 1)}


# singular vectors ---------------------------------------------------------

def raising_operators(p: int, grade) -> list[Gen]:
    """``Lhat(m)`` (1 <= m <= p*grade) and ``Ihat^i(n)`` (0 <= n <= p*grade) as ``L`` generators."""
    top = int(Fraction(grade) * p)
    gens = {Gen("L", p * m) for m in range(1, top + 1)}
    gens |= {Gen("L", p * n + i) for n in range(0, top + 1) for i in range(1, p)}
    return sorted(gens, key=gen_key)


def singular_vectors(module: VermaModule, grade) -> list[ModuleVector]:
    """Basis of the vectors of the given grade killed by every raising operator."""
    grade = Fraction(grade)
    p = module.p
    if grade <= 0:
        raise ValueError("singular vector search needs a positive grade")
    n = grade * p
    if n.denominator != 1:
        raise ValueError(f"grade {grade} is not in (1/{p})Z")
    keys = module.graded_basis(int(n))
    ops = raising_operators(p, grade)
    columns = []
    for key in keys:
        col = {}
        v = ModuleVector.basis(key)
        for op in ops:
            for k2, c in module.act_gen(op, v).items():
                col[(op, k2)] = c
        columns.append(col)
    return [ModuleVector({keys[j]: c for j, c in vec.items()}) for vec in nullspace(columns)]


# V_{N_p}(l, 0) ----------------------------------------------------------------

def _np_free_key(g: Gen) -> tuple:
    # N-generators stand to the left of T-generators
    return (0 if g.kind == "N" else 1, g.m, g.i)


class VacuumNpModule(InducedModule):
    """``V_{N_p}(l, 0)``: ``T_m`` (m >= -1) and ``N^i_n`` (n >= 0) kill the vacuum."""

    def __init__(self, p: int, l0):
        alg = Np(p)
        self.p = p
        self.l0 = Fraction(l0)

        def positive(g: Gen) -> bool:
            return g.m >= -1 if g.kind == "T" else g.m >= 0

        def central(g: Gen):
            return self.l0 if g.i == 0 else Fraction(0)

        def free_gens(degree: int) -> list[Gen]:
            out = [Gen("T", m) for m in range(-degree, -1)]
            out += [Gen("N", m, i) for m in range(-degree, 0) for i in range(1, p)]
            return out

        base = CharacterModule(alg, positive, lambda g: 0, central, threshold=0, name="vacuum")
        super().__init__(alg, base, is_free=lambda g: not g.is_central and not positive(g),
                         free_key=_np_free_key, free_generators=free_gens, free_max_mode=-1,
                         name=f"V_N(p={p}, l0={self.l0})")

    def grade_keys(self, n: int) -> list:
        """Basis keys of ``T_0``-grade ``n``."""
        return [k for k in self.basis_upto(n) if -sum(g.m for g in k[0]) == n]


def vacuum_graded_dims(module: VacuumNpModule, upto: int) -> dict[int, int]:
    counts = {n: 0 for n in range(upto + 1)}
    for word, _ in module.basis_upto(upto):
        n = -sum(g.m for g in word)
        if n <= upto:
            counts[n] += 1
    return counts
