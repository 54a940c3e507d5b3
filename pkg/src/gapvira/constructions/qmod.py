"""The k > 0 modules Q(l0, S_0, ..., S_{p-1}, Theta) = U(g+(d))/I, realized on words in T."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from ..cyclo import Scalar
from ..lie import Gen, GapVirasoro, bracket_gens
from ..modules.engine import BaseModule, CharacterModule, InducedModule, ModuleError, letter_size, word_weight
from ..modules.ind import IndModule
from ..modules.parts import CategoryNSpec, PositivePartSpec
from ..modules.vector import ModuleVector


def _scalar(x) -> Scalar:
    return Fraction(x) if isinstance(x, (int, str, Fraction)) else x


@dataclass(frozen=True)
class QSpec:
    p: int
    k: int
    d: tuple[int, ...]
    S: tuple[frozenset, ...]
    theta: Mapping[tuple[int, int], Scalar]
    l0: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(int(x) for x in self.d))
        object.__setattr__(self, "S", tuple(frozenset(int(x) for x in s) for s in self.S))
        object.__setattr__(self, "theta", {(int(i), int(j)): _scalar(c) for (i, j), c in dict(self.theta).items()})
        object.__setattr__(self, "l0", Fraction(self.l0))
        if len(self.S) != self.p:
            raise ModuleError(f"need S_0..S_{self.p - 1}, got {len(self.S)} sets")
        if self.k < 1:
            raise ModuleError("k must be a positive integer")
        PositivePartSpec(self.p, self.d)

    @property
    def part(self) -> PositivePartSpec:
        return PositivePartSpec(self.p, self.d)

    def Sbar(self, i: int) -> frozenset:
        return frozenset(range(self.k + 1)) - self.S[i]

    def category(self) -> CategoryNSpec:
        return CategoryNSpec(self.k, self.part, self.l0)

    def mode(self, t: int, level: int) -> int:
        return self.part.mode(t, level)

    def t1(self) -> list[Gen]:
        return [Gen("L", self.mode(t, lv)) for t in range(1, self.p) for lv in sorted(self.Sbar(t))]

    def t2(self) -> list[Gen]:
        return [Gen("L", self.p * i) for i in sorted(self.Sbar(0))]

    def in_t(self, g: Gen) -> bool:
        if g.is_central or not self.part.contains_mode(g.m):
            return False
        t = g.m % self.p
        return self.part.level_of(g.m) in self.Sbar(t)

    def in_h(self, g: Gen) -> bool:
        return g.is_central or (self.part.contains_mode(g.m) and not self.in_t(g))

    def theta_of(self, g: Gen) -> Scalar:
        """Value of the ideal generators on ``1`` (0 for levels above k)."""
        t = g.m % self.p
        level = self.part.level_of(g.m)
        if level in self.S[t]:
            return self.theta.get((t, level), Fraction(0))
        return Fraction(0)

    def max_cone_mode(self) -> int:
        """Largest mode of level at most k."""
        return max([self.p * self.k] + [self.mode(t, self.k) for t in range(1, self.p)])


def validate_qspec(spec: QSpec) -> list[str]:
    """Violated conditions on (k, S, theta); empty when valid."""
    bad = []
    for i in range(spec.p):
        if spec.k not in spec.S[i]:
            bad.append(f"top: k={spec.k} not in S_{i}")
        elif not spec.theta.get((i, spec.k)):
            bad.append(f"top: theta_{{{i},{spec.k}}} is zero or missing")
        if not spec.S[i] <= set(range(1, spec.k + 1)):
            bad.append(f"S_{i} not contained in 1..{spec.k}")
    for (i, j) in spec.theta:
        if not 0 <= i < spec.p or j not in spec.S[i]:
            bad.append(f"theta_{{{i},{j}}} given but {j} not in S_{i}")
    for i in sorted(spec.Sbar(0)):
        if not any(spec.k - i in spec.S[t] for t in range(1, spec.p)):
            bad.append(f"S0-complement: i={i} in S0-bar but k-i={spec.k - i} in no S_t")
    for j in range(1, spec.p):
        for i in sorted(spec.Sbar(j)):
            if spec.k - i not in spec.S[0]:
                bad.append(f"Si-complement: i={i} in S_{j}-bar but k-i={spec.k - i} not in S_0")
    return bad


def consistency_violations(spec: QSpec) -> list[tuple]:
    """Brackets showing ``U(g+(d))/I`` is not spanned freely by the words in T.

    The ideal is the annihilator-type left ideal of the character ``theta`` on
    the span H of its generators, so the quotient has the expected basis
    exactly when H is a subalgebra and ``theta`` kills ``[H, H]``.  A bracket
    of H-generators landing on a mode of level at most k has both modes in
    ``[mu, M - mu]`` (``mu`` the least mode of g+(d), ``M`` the largest mode
    of level at most k), so that finite range decides the question.
    """
    lo = spec.part.min_positive_mode()
    hi = spec.max_cone_mode() - lo
    hs = [Gen("L", m) for m in range(lo, hi + 1) if spec.part.contains_mode(m) and spec.in_h(Gen("L", m))]
    bad = []
    for a_idx, a in enumerate(hs):
        for b in hs[a_idx + 1:]:
            for g, c in bracket_gens(GapVirasoro(spec.p), a, b):
                if g.is_central:
                    val = spec.category().central_value(g)
                    if val:
                        bad.append((a, b, g, "central"))
                elif spec.in_t(g):
                    bad.append((a, b, g, "in T"))
                elif spec.theta_of(g):
                    bad.append((a, b, g, "theta nonzero"))
    return bad


def convention_key(spec: QSpec, g: Gen) -> tuple:
    """Order of T-letters in a word: T1 first; T1 by (level desc, residue desc); T2 by mode desc."""
    t = g.m % spec.p
    if t == 0:
        return (1, -g.m, 0)
    return (0, -spec.part.level_of(g.m), -t)


class QModule(BaseModule):
    """``Q`` with basis keys the convention-ordered words in T."""

    def __init__(self, spec: QSpec, check: bool = True):
        if check:
            bad = validate_qspec(spec)
            if bad:
                raise ModuleError("invalid Q data: " + "; ".join(bad))
            incon = consistency_violations(spec)
            if incon:
                a, b, g, why = incon[0]
                raise ModuleError(f"Q data inconsistent: [{a},{b}] hits {g} ({why})")
        self.spec = spec
        self.algebra = GapVirasoro(spec.p)
        self.name = f"Q(p={spec.p}, k={spec.k}, d={spec.d})"
        cat = spec.category()
        self._tgens = sorted(spec.t1() + spec.t2(), key=lambda g: convention_key(spec, g))
        char = CharacterModule(self.algebra, spec.in_h, spec.theta_of, cat.central_value,
                               threshold=spec.max_cone_mode() + 1, name="C_theta")
        self.inner = InducedModule(self.algebra, char, is_free=spec.in_t,
                                   free_key=lambda g: convention_key(spec, g),
                                   free_generators=lambda deg: list(self._tgens),
                                   free_max_mode=max([g.m for g in self._tgens], default=0),
                                   name="Q-inner")

    @property
    def t_generators(self) -> list[Gen]:
        return list(self._tgens)

    def contains(self, g: Gen) -> bool:
        return g.is_central or self.spec.part.contains_mode(g.m)

    def act_base(self, g: Gen, key: tuple) -> dict:
        return {w: c for (w, _), c in self.inner.act_key(g, (key, ())).items()}

    def central_value(self, g: Gen) -> Scalar:
        return self.spec.category().central_value(g)

    def basis_upto(self, degree: int) -> list:
        return [w for w, _ in self.inner.basis_upto(degree)]

    def key_degree(self, key: tuple) -> int:
        return sum(letter_size(g) for g in key)

    def threshold(self, key: tuple) -> int:
        return word_weight(key) + self.spec.max_cone_mode() + 1

    def cyclic(self) -> ModuleVector:
        return ModuleVector.basis(())

    def word(self, gens: Sequence[Gen]) -> ModuleVector:
        """Product of T-generators (any order) applied to ``1``."""
        v = self.cyclic()
        for g in reversed(list(gens)):
            v = self.act_gen(g, v)
        return v

    def is_convention_ordered(self, word: Sequence[Gen]) -> bool:
        keys = [convention_key(self.spec, g) for g in word]
        return all(self.spec.in_t(g) for g in word) and keys == sorted(keys)


def q_act(spec: QSpec, g: Gen, f: Sequence[Gen], module: QModule | None = None) -> ModuleVector:
    """``g * f`` for a convention-ordered monomial ``f``."""
    module = module or QModule(spec)
    f = tuple(f)
    if not module.is_convention_ordered(f):
        raise ModuleError(f"monomial {f} is not in convention order over T")
    if not g.is_central and not spec.part.contains_mode(g.m):
        raise ModuleError(f"{g} is not in g+(d) for d={spec.d}")
    return module.act_gen(g, ModuleVector.basis(f))


def q_degree(v: ModuleVector) -> int:
    """Largest monomial length in ``supp v``."""
    if not v:
        raise ModuleError("the zero vector has no degree")
    return max(len(w) for w in v.keys())


def induced_q(spec: QSpec) -> IndModule:
    return IndModule(QModule(spec), spec.category(), name=f"Ind(Q, p={spec.p}, k={spec.k}, d={spec.d})")


# internal reduction ----------------------------------------------------------

def _t2_levels(spec: QSpec, v: ModuleVector) -> set[int]:
    return {g.m // spec.p for w in v.keys() for g in w if g.m % spec.p == 0}


def q_internal_operator(spec: QSpec, v: ModuleVector) -> tuple[str, Gen, Scalar]:
    """The operator ``L - theta`` of the next internal step: ``("A"|"B", L, theta)``."""
    levels = _t2_levels(spec, v)
    if levels:
        i = min(levels)
        t = min(t for t in range(1, spec.p) if spec.k - i in spec.S[t])
        return "A", Gen("L", spec.mode(t, spec.k - i)), spec.theta[(t, spec.k - i)]
    t1 = [g for w in v.keys() for g in w]
    if not t1:
        raise ModuleError("vector is already a multiple of 1")
    right = max(t1, key=lambda g: convention_key(spec, g))
    i = spec.part.level_of(right.m)
    return "B", Gen("L", spec.p * (spec.k - i)), spec.theta[(0, spec.k - i)]


def q_internal_step(module: QModule, v: ModuleVector) -> tuple[str, ModuleVector]:
    kind, op, th = q_internal_operator(module.spec, v)
    w = module.act_gen(op, v) - v * th
    if not w:
        raise AssertionError(f"internal step {kind} with {op} killed the vector")
    if q_degree(w) >= q_degree(v):
        raise AssertionError(f"internal step {kind} with {op} did not lower the degree")
    return kind, w


def q_internal_reduce(module: QModule, v: ModuleVector) -> tuple[ModuleVector, list[str]]:
    """Reach a nonzero multiple of ``1``; returns it and the step kinds."""
    if not v:
        raise ModuleError("cannot reduce the zero vector")
    kinds = []
    while any(v.keys()):
        kind, v = q_internal_step(module, v)
        kinds.append(kind)
    return v, kinds


def _derivative(word: tuple, g: Gen) -> dict:
    """``d word / d g`` for commuting variables, keeping the remaining order."""
    n = word.count(g)
    if not n:
        return {}
    t = word.index(g)
    return {word[:t] + word[t + 1:]: Fraction(n)}


def q_step_a_formula(spec: QSpec, v: ModuleVector) -> ModuleVector:
    """``-sum a_g theta_{t,k} (t + p(k-i-d_t)) dg/dL_{pi}`` for the step-A operator."""
    kind, op, _ = q_internal_operator(spec, v)
    if kind != "A":
        raise ModuleError("step A does not apply")
    i = min(_t2_levels(spec, v))
    t = op.m % spec.p
    factor = -spec.theta[(t, spec.k)] * op.m
    acc: dict = {}
    for w, c in v.items():
        for w2, n in _derivative(w, Gen("L", spec.p * i)).items():
            acc[w2] = acc.get(w2, 0) + c * n * factor
    return ModuleVector(acc)


def q_step_b_formula(spec: QSpec, v: ModuleVector) -> ModuleVector:
    """``sum a_g sum_{l>=j} theta_{l,k} (l + p(i-d_l)) dg/dL_{l+p(i-d_l)}`` for step B."""
    kind, _, _ = q_internal_operator(spec, v)
    if kind != "B":
        raise ModuleError("step B does not apply")
    t1 = [g for w in v.keys() for g in w]
    right = max(t1, key=lambda g: convention_key(spec, g))
    i, j = spec.part.level_of(right.m), right.m % spec.p
    acc: dict = {}
    for l in range(j, spec.p):
        if i not in spec.Sbar(l):
            continue
        gen = Gen("L", spec.mode(l, i))
        factor = spec.theta[(l, spec.k)] * gen.m
        for w, c in v.items():
            for w2, n in _derivative(w, gen).items():
                acc[w2] = acc.get(w2, 0) + c * n * factor
    return ModuleVector(acc)
