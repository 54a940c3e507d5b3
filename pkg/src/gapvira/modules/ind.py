"""``Ind_l(N)`` over ``g+(d)``, the degree function and the degree-reduction steps."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..lie import Gen, GapVirasoro
from ..pbw import ExponentVector, principal_key
from .engine import BaseModule, InducedModule, ModuleError
from .parts import CategoryNSpec
from .vector import ModuleVector


class IndModule(InducedModule):
    """``U(g) (x)_{U(g+(d))} N``; words are ``L^i L^j`` with ``i`` off pZ and ``j`` on pZ."""

    def __init__(self, base: BaseModule, spec: CategoryNSpec, name: str | None = None):
        p = spec.p
        part = spec.part
        self.spec = spec
        self.p = p

        def free_key(g: Gen) -> tuple:
            return (0 if g.m % p else 1, g.m)

        def free_gens(degree: int) -> list[Gen]:
            return [Gen("L", m) for m in part.negative_modes(degree)]

        super().__init__(GapVirasoro(p), base, is_free=part.is_negative, free_key=free_key,
                         free_generators=free_gens, free_max_mode=part.max_negative_mode(),
                         name=name or f"Ind({base.name})")

    def split(self, word: tuple) -> tuple[ExponentVector, ExponentVector]:
        p = self.p
        i = ExponentVector.from_word(g.m for g in word if g.m % p)
        j = ExponentVector.from_word(g.m for g in word if g.m % p == 0)
        return i, j

    def components(self, v: ModuleVector) -> dict:
        """``{(i, j): v_ij}`` with ``v_ij`` a base-module vector."""
        out: dict = {}
        for (word, bkey), c in v.items():
            out.setdefault(self.split(word), {})[bkey] = c
        return {ij: ModuleVector(t) for ij, t in out.items()}


def degree(module: IndModule, v: ModuleVector) -> tuple[ExponentVector, ExponentVector]:
    """Maximum of ``supp v`` under the principal order."""
    if not v:
        raise ModuleError("the zero vector has no degree")
    return max((module.split(word) for word, _ in v.keys()), key=principal_key)


class ReductionError(AssertionError):
    """A degree postcondition failed (internal inconsistency)."""


@dataclass
class ReductionStep:
    case: int
    operator: Gen
    degree_before: tuple
    degree_after: tuple | None


def reduction_operator(module: IndModule, deg: tuple[ExponentVector, ExponentVector],
                     j_choice: int = 1) -> tuple[int, Gen, tuple]:
    """Case number, operator and predicted degree for one reduction step."""
    spec = module.spec
    p, k = spec.p, spec.k
    i, j = deg
    if j:
        s = min(-t // p for t in j.support())
        op = Gen("L", spec.part.mode(j_choice, s + k))
        return 1, op, (i, j - ExponentVector.unit(-p * s))
    if i:
        top = max(i.support())
        s = top % p
        r = (s - top) // p
        if not r > spec.part.dj(s):
            raise ReductionError(f"r={r} not above d_{s}={spec.part.dj(s)}")
        op = Gen("L", p * (r + k - spec.part.dj(s)))
        return 2, op, (i - ExponentVector.unit(top), ExponentVector())
    raise ModuleError("vector lies in the base module; no reduction applies")


def reduce_once(module: IndModule, v: ModuleVector, j_choice: int = 1) -> tuple[Gen, ModuleVector, ReductionStep]:
    """Apply one degree-lowering operator and check the predicted degree exactly."""
    if not v:
        raise ModuleError("cannot reduce the zero vector")
    if module.base_part(v) is not None:
        raise ModuleError("vector lies in the base module; no reduction applies")
    deg = degree(module, v)
    case, op, predicted = reduction_operator(module, deg, j_choice)
    w = module.act_gen(op, v)
    if not w:
        raise ReductionError(f"{op} annihilated a vector of degree {deg}")
    got = degree(module, w)
    if got != predicted:
        raise ReductionError(f"{op}: degree {got}, expected {predicted}")
    return op, w, ReductionStep(case, op, deg, got)


@dataclass
class ReductionTrace:
    result: ModuleVector
    steps: list = field(default_factory=list)
    # steps whose degree differed from the predicted one (still strictly lower)
    off_prediction: int = 0
    # steps where the predicted operator failed and another one was used
    fallbacks: int = 0

    @property
    def step_count(self) -> int:
        return len(self.steps)


def _candidates(module: IndModule, deg: tuple) -> list[Gen]:
    spec = module.spec
    p, k = spec.p, spec.k
    i, j = deg
    ops = []
    if j:
        s = min(-t // p for t in j.support())
        ops += [Gen("L", spec.part.mode(jj, s + k)) for jj in range(1, p)]
    for top in sorted(i.support(), reverse=True):
        s = top % p
        r = (s - top) // p
        ops.append(Gen("L", p * (r + k - spec.part.dj(s))))
    return list(dict.fromkeys(ops))


def reduce_step(module: IndModule, v: ModuleVector, search: int = 0) -> tuple[Gen, ModuleVector, ReductionStep, bool]:
    """One step that keeps the result nonzero and strictly lowers the degree.

    The standard operator is tried first; if it annihilates ``v`` or fails to
    lower the degree, the other operators of the same shape are tried, then
    ``L_m`` for ``1 <= m <= search``.  The flag reports whether the degree
    matched the predicted degree.
    """
    deg = degree(module, v)
    key0 = principal_key(deg)
    case, first, predicted = reduction_operator(module, deg)
    extra = [Gen("L", m) for m in range(1, search + 1)]
    for op in [first] + _candidates(module, deg) + extra:
        w = module.act_gen(op, v)
        if not w:
            continue
        got = degree(module, w)
        if principal_key(got) < key0:
            return op, w, ReductionStep(case, op, deg, got), op == first and got == predicted
    raise ReductionError(f"no tried operator lowers the degree {deg}")


def reduce_to_base(module: IndModule, v: ModuleVector, max_steps: int = 10_000,
                   strict: bool = False, search: int = 0) -> ReductionTrace:
    """Lower the degree until the vector lies in ``1 (x) N``; returns the base vector.

    With ``strict`` every step must land exactly on the predicted degree.
    Otherwise a step only has to give a nonzero vector of strictly smaller
    degree; the trace counts how often the prediction was missed.
    """
    if not v:
        raise ModuleError("cannot reduce the zero vector")
    steps = []
    off = fb = 0
    while True:
        b = module.base_part(v)
        if b is not None:
            return ReductionTrace(b, steps, off, fb)
        if len(steps) >= max_steps:
            raise ReductionError("reduction did not terminate within the step budget")
        if strict:
            _, v, step = reduce_once(module, v)
        else:
            first = reduction_operator(module, degree(module, v))[1]
            op, v, step, exact = reduce_step(module, v, search)
            off += not exact and op == first
            fb += op != first
        steps.append(step)
