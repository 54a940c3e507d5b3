"""Finite-window certificates: restrictedness, module axioms, category conditions,
and the extraction of the annihilated subspace ``N_r`` from a truncation."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..lie import Gen, LieElement, bracket_gens
from ..linalg import nullspace
from .engine import Module, ModuleError
from .parts import CategoryNSpec, cone_modes
from .vector import ModuleVector


def mode_generators(module: Module, m: int) -> list[Gen]:
    """Non-central generators of mode ``m`` in the module's algebra."""
    alg = module.algebra
    if alg.family == "gap":
        return [Gen("L", m)]
    return [Gen("T", m)] + [Gen("N", m, i) for i in range(1, alg.p)]


@dataclass
class RestrictedWitness:
    bound: int
    minimal: int
    window: int
    ok: bool


def restricted_witness(module: Module, v: ModuleVector, window: int = 8) -> RestrictedWitness:
    """Check that all modes ``>= bound`` kill ``v`` on ``[bound, bound + window]``.

    ``bound`` is the module's proven threshold; ``minimal`` is the least
    ``n <= bound`` for which the same window still shows annihilation.
    """
    if not v:
        raise ModuleError("restrictedness witness needs a nonzero vector")
    bound = max(module.threshold(k) for k in v.keys())
    top = bound + window

    def kills(m: int) -> bool:
        return all(not module.act_gen(g, v) for g in mode_generators(module, m))

    ok = all(kills(m) for m in range(bound, top + 1))
    n = bound
    while ok and n > -window and kills(n - 1):
        n -= 1
    return RestrictedWitness(bound, n, window, ok)


def module_axiom_residual(module: Module, x: Gen, y: Gen, v: ModuleVector) -> ModuleVector:
    """``[x, y] v - (x (y v) - y (x v))``; zero in a module."""
    alg = module.algebra
    br = LieElement(alg, dict(bracket_gens(alg, x, y)))
    return module.act(br, v) - (module.act_gen(x, module.act_gen(y, v)) - module.act_gen(y, module.act_gen(x, v)))


def random_vector(module: Module, rng: random.Random, degree: int, terms: int = 3,
                  coeff_range: int = 5) -> ModuleVector:
    """Nonzero vector with a few random basis keys of truncation degree ``<= degree``."""
    keys = module.basis_upto(degree)
    if not keys:
        raise ModuleError("empty truncation")
    acc: dict = {}
    for _ in range(terms):
        k = rng.choice(keys)
        c = Fraction(rng.choice([x for x in range(-coeff_range, coeff_range + 1) if x]))
        acc[k] = acc.get(k, 0) + c
    v = ModuleVector(acc)
    if not v:
        return ModuleVector.basis(rng.choice(keys))
    return v


def random_generator(module: Module, rng: random.Random, lo: int = -4, hi: int = 4) -> Gen:
    m = rng.randint(lo, hi)
    gens = mode_generators(module, m)
    alg = module.algebra
    if rng.random() < 0.1:
        return rng.choice(alg.centrals())
    return rng.choice(gens)


# category conditions --------------------------------------------------------

def annihilation_failures(base: Module, spec: CategoryNSpec, degree: int, bound: int) -> list[tuple]:
    """Pairs ``(m, key)`` with ``m`` in the cone, ``m <= bound``, and ``L_m key != 0``."""
    bad = []
    for m in cone_modes(spec.p, spec.cone(), bound):
        for key in base.basis_upto(degree):
            if base.act_key(Gen("L", m), key):
                bad.append((m, key))
    return bad


def injectivity_defects(base: Module, spec: CategoryNSpec, degree: int) -> dict[int, int]:
    """Kernel dimension of each boundary operator on the degree truncation (0 = injective)."""
    keys = base.basis_upto(degree)
    out = {}
    for m in spec.boundary_modes():
        cols = [base.act_key(Gen("L", m), k) for k in keys]
        out[m] = len(nullspace(cols))
    return out


@dataclass
class Extraction:
    found: bool
    r: tuple | None
    basis: list
    injective: dict
    evaluations: int
    minimal_checked: bool


def annihilated_subspace(module: Module, keys: Sequence, r: Sequence[int], bound: int) -> list[ModuleVector]:
    """Basis of ``{w in span(keys) : L_i w = 0 for i in Z(r), i <= bound}``."""
    p = module.algebra.p
    modes = cone_modes(p, r, bound)
    columns = []
    for key in keys:
        col: dict = {}
        for m in modes:
            for k2, c in module.act_key(Gen("L", m), key).items():
                col[(m, k2)] = c
        columns.append(col)
    return [ModuleVector({keys[j]: c for j, c in vec.items()}) for vec in nullspace(columns)]


def extract_category_N(module: Module, degree: int, bound: int, start: int | None = None,
                       floor: int | None = None) -> Extraction:
    """Greedy search for a componentwise-minimal ``r`` with ``N_r`` nonzero on a truncation.

    Actions are exact; the truncation only limits the candidate space.  Each
    coordinate of ``r`` is lowered while the space stays nonzero, starting
    from ``start`` (default: large enough that the cone is empty below
    ``bound``) down to ``floor``.
    """
    p = module.algebra.p
    keys = module.basis_upto(degree)
    if start is None:
        start = bound // p + 1
    if floor is None:
        floor = -(bound // p) - 2
    evals = 0

    def space(r):
        nonlocal evals
        evals += 1
        return annihilated_subspace(module, keys, r, bound) if keys else []

    r = [start] * p
    if not space(r):
        return Extraction(False, None, [], {}, evals, False)
    changed = True
    while changed:
        changed = False
        for j in range(p):
            while r[j] > floor:
                trial = r[:]
                trial[j] -= 1
                if space(trial):
                    r = trial
                    changed = True
                else:
                    break
    basis = space(r)
    minimal = all(r[j] == floor or not space(r[:j] + [r[j] - 1] + r[j + 1:]) for j in range(p))
    injective = {}
    for j in range(1, p):
        m = j + p * r[j]
        cols = [dict(module.act_gen(Gen("L", m), v).items()) for v in basis]
        injective[m] = not nullspace(cols)
    return Extraction(True, tuple(r), basis, injective, evals, minimal)
