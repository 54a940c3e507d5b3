"""Verification suites: each returns a :class:`SuiteReport` of named checks.

Randomized suites draw from ``random.Random(seed)``; the default seed comes
from the ``GAPVIRA_SEED`` environment variable (0 when unset).
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Callable

from .lie import (Cbar, GapVirasoro, Gen, Ihat, LieElement, Lhat, Np, RescaledElement, bracket,
                  bracket_gens, from_rescaled, jacobi_residual_gens, rescaled_bracket_gens, sigma,
                  sigma_mode_twisted, to_rescaled)
from .pbw import UeaElement, leftmost, normal_form, random_schedule, rightmost
from . import formal
from .modules.ind import ReductionError, degree as deg_of, reduce_once, reduce_to_base, reduction_operator
from .modules.engine import ModuleError
from .modules.truncation import (annihilation_failures, extract_category_N, injectivity_defects,
                                 module_axiom_residual, random_generator, random_vector, restricted_witness)
from .modules.verma import (VacuumNpModule, VermaModule, graded_dim_enumeration, graded_dim_generating,
                            singular_vectors)
from .constructions.pullback import VirasoroPullback, VirasoroVerma
from .constructions.qmod import QModule, QSpec, induced_q, q_internal_reduce
from .constructions.rmod import RModule, RSpec, induced_r, r_internal_reduce
from .constructions.whittaker import (WhittakerModule, WhittakerType, check_whittaker_iso,
                                      reducibility_witness, validate_whittaker, whittaker_vector_check)


def default_seed() -> int:
    return int(os.environ.get("GAPVIRA_SEED", "0"))


@dataclass
class Check:
    id: str
    ok: bool
    detail: str = ""
    data: dict = field(default_factory=dict)


@dataclass
class SuiteReport:
    name: str
    title: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, cid: str, ok: bool, detail: str = "", **data) -> None:
        self.checks.append(Check(cid, bool(ok), detail, data))

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def as_dict(self) -> dict:
        return {"suite": self.name, "title": self.title, "passed": self.passed,
                "checks": [{"id": c.id, "status": "pass" if c.ok else "fail", "detail": c.detail, **c.data}
                           for c in sorted(self.checks, key=lambda c: c.id)]}


# sample modules ------------------------------------------------------------

def sample_r_specs(p: int) -> list[RSpec]:
    if p == 2:
        return [RSpec(2, (0,), {1: 2}, {}), RSpec(2, (-1,), {1: 3}, {}, l0=Fraction(1, 2))]
    if p == 3:
        return [RSpec(3, (0, 0), {1: 2, 2: 3}, {}), RSpec(3, (0, -1), {1: 2, 2: 3}, {}, l0=1),
                RSpec(3, (0, 1), {1: 2}, {2: 5})]
    return [RSpec(p, (0,) * (p - 1), {i: i + 1 for i in range(1, p)}, {})]


def sample_q_specs(p: int) -> list[QSpec]:
    if p == 2:
        return [QSpec(2, 2, (0,), ({1, 2}, {2}), {(0, 1): 3, (0, 2): 5, (1, 2): 7})]
    if p == 3:
        return [QSpec(3, 1, (0, 0), ({1}, {1}, {1}), {(0, 1): 3, (1, 1): 5, (2, 1): 7}),
                QSpec(3, 2, (1, -1), ({1, 2}, {2}, {2}), {(0, 1): 3, (0, 2): 2, (1, 2): 5, (2, 2): 7})]
    raise ValueError(f"no sample Q data for p={p}")


def sample_whittaker(p: int) -> WhittakerType:
    vals = {i: i for i in range(1, p)}
    vals[2 * p] = 3
    return WhittakerType(p, vals, c0=2)


# 1. structure constants -------------------------------------------------------

def suite_lie(ps=(2, 3, 4, 5), window: int = 5) -> SuiteReport:
    rep = SuiteReport("lie", "antisymmetry and Jacobi on basis triples")
    for p in ps:
        for alg in (GapVirasoro(p), Np(p)):
            basis = alg.basis(window)
            anti = 0
            for a, b in combinations_with_replacement(basis, 2):
                ab = dict(bracket_gens(alg, a, b))
                ba = {g: -c for g, c in bracket_gens(alg, b, a)}
                anti += ab != ba
            jac = 0
            for a, b, c in combinations(basis, 3):
                jac += bool(jacobi_residual_gens(alg, a, b, c))
            rep.add(f"{alg.family}:p={p}:antisymmetry", anti == 0, f"{anti} bad pairs")
            rep.add(f"{alg.family}:p={p}:jacobi", jac == 0, f"{jac} bad triples")
    return rep


# 2. rescaled basis -----------------------------------------------------------

def _rescaled_gens(p: int, window: int) -> list:
    out = [Lhat(m) for m in range(-window, window + 1)]
    out += [Ihat(i, m) for m in range(-window, window + 1) for i in range(1, p)]
    return out + [Cbar(i) for i in range(p // 2 + 1)]


def suite_rescaled(ps=(2, 3, 4, 5), window: int = 6) -> SuiteReport:
    rep = SuiteReport("rescaled", "rescaled brackets against pulled-back brackets")
    for p in ps:
        gens = _rescaled_gens(p, window)
        bad = []
        for a in gens:
            for b in gens:
                direct = RescaledElement(p, dict(rescaled_bracket_gens(p, a, b)))
                x = from_rescaled(RescaledElement(p, {a: 1}))
                y = from_rescaled(RescaledElement(p, {b: 1}))
                if direct != to_rescaled(bracket(x, y)):
                    bad.append((a, b))
        rep.add(f"p={p}", not bad, f"{len(bad)} mismatches of {len(gens) ** 2}")
        # central normalisation: Cbar_0 = C_0 / p^2, Cbar_i = C_i / p
        scal = [from_rescaled(RescaledElement(p, {Cbar(i): 1})).coeff(Gen("C", 0, i)) for i in range(p // 2 + 1)]
        want = [Fraction(1, p * p)] + [Fraction(1, p)] * (p // 2)
        rep.add(f"p={p}:central-scaling", scal == want, f"{scal}")
    return rep


# 3. sigma ----------------------------------------------------------------------

def suite_sigma(ps=(2, 3, 4, 5), window: int = 6) -> SuiteReport:
    rep = SuiteReport("sigma", "order-p automorphism of N_p")
    for p in ps:
        alg = Np(p)
        gens = alg.basis(window)
        elems = [LieElement.gen(alg, g) for g in gens]
        bad = sum(sigma(bracket(x, y)) != bracket(sigma(x), sigma(y)) for x, y in combinations(elems, 2))
        rep.add(f"p={p}:automorphism", bad == 0, f"{bad} bad pairs")
        order = sum(sigma(x, p) != x for x in elems)
        lower = [k for k in range(1, p) if all(sigma(x, k) == x for x in elems)]
        rep.add(f"p={p}:order", order == 0 and not lower, f"sigma^p != id on {order}; smaller period {lower}")
    # the mode-dependent variant must fail somewhere for p = 3
    alg = Np(3)
    elems = [LieElement.gen(alg, g) for g in alg.basis(window) if not g.is_central]
    witness = None
    for x, y in combinations(elems, 2):
        if sigma_mode_twisted(bracket(x, y)) != bracket(sigma_mode_twisted(x), sigma_mode_twisted(y)):
            witness = (str(x), str(y))
            break
    rep.add("p=3:mode-twisted-variant-fails", witness is not None, f"witness {witness}")
    return rep


# 4. PBW ------------------------------------------------------------------------

def _random_word(alg, rng: random.Random, length: int, lo: int, hi: int) -> list[Gen]:
    gens = [g for g in alg.basis(max(-lo, hi)) if g.is_central or lo <= g.m <= hi]
    return [rng.choice(gens) for _ in range(length)]


def suite_pbw(ps=(2, 3), samples: int = 500, seed: int | None = None) -> SuiteReport:
    rep = SuiteReport("pbw", "confluence of straightening; commutators of degree-1 elements")
    rng = random.Random(default_seed() if seed is None else seed)
    for p in ps:
        for alg in (GapVirasoro(p), Np(p)):
            bad = 0
            for _ in range(samples):
                w = _random_word(alg, rng, rng.randint(0, 4), -4, 4)
                ref = normal_form(w, alg)
                for sched in (leftmost, rightmost, random_schedule(rng)):
                    bad += normal_form(w, alg, sched) != ref
            rep.add(f"{alg.family}:p={p}:confluence", bad == 0, f"{bad} disagreements over {samples} words")
            gens = [g for g in alg.basis(4) if not g.is_central]
            bad = 0
            for a, b in combinations(gens, 2):
                x, y = UeaElement.from_lie(LieElement.gen(alg, a)), UeaElement.from_lie(LieElement.gen(alg, b))
                br = UeaElement.from_lie(bracket(LieElement.gen(alg, a), LieElement.gen(alg, b)))
                bad += x * y - y * x != br
            rep.add(f"{alg.family}:p={p}:commutator", bad == 0, f"{bad} bad pairs")
    return rep


# 5. formal identities ------------------------------------------------------------

def suite_formal(ps=(2, 3), window: int = 6, levels=(0, 1, Fraction(7, 2))) -> SuiteReport:
    rep = SuiteReport("formal", "coefficientwise commutator identities and the mode dictionary")
    for p in ps:
        for l0 in levels:
            lv = formal.level_vector(p, l0)
            for side in (formal.GAP_SIDE, formal.NP_SIDE):
                for rel in formal.relations(p, side):
                    bad = formal.verify_exponent_window(p, rel, window, lv)
                    rep.add(f"p={p}:l0={l0}:{side}:{rel.name}:{rel.i},{rel.j}", not bad,
                            f"{len(bad)} mismatching mode pairs")
            d = formal.verify_mode_dictionary(p, l0, window)
            rep.add(f"p={p}:l0={l0}:dictionary", d.holds, f"{d.checked} pairs, {len(d.mismatches)} mismatches")
    return rep


# 6. characters ----------------------------------------------------------------

PREFIXES = {2: (1, 1, 2, 3, 5), 3: (1, 1, 2, 3)}


def suite_characters(ps=(2, 3, 4), upto: int = 4) -> SuiteReport:
    rep = SuiteReport("characters", "graded dimensions: enumeration against the product series")
    for p in ps:
        a = graded_dim_enumeration(p, upto)
        b = graded_dim_generating(p, upto)
        rep.add(f"p={p}:backends", a == b and len(a) == upto * p + 1, f"{len(a)} grades")
        if p in PREFIXES:
            got = tuple(a[Fraction(n, p)] for n in range(len(PREFIXES[p])))
            rep.add(f"p={p}:prefix", got == PREFIXES[p], f"{got}")
    return rep


# 7. singular vectors --------------------------------------------------------------

SINGULAR_SAMPLES = ((Fraction(0), Fraction(0)), (Fraction(1, 2), Fraction(3)), (Fraction(7, 2), Fraction(5, 7)))


def suite_singular(ps=(2, 3, 4), samples=SINGULAR_SAMPLES) -> SuiteReport:
    """``L_{-1} 1``, a multiple of ``Ihat^{p-1}(-1) 1``, spans the singular vectors of grade 1/p."""
    rep = SuiteReport("singular", "singular vector at the lowest grade")
    for p in ps:
        for l0, h in samples:
            M = VermaModule(p, l0, h)
            sols = singular_vectors(M, Fraction(1, p))
            ok = len(sols) == 1 and set(sols[0].keys()) == {((Gen("L", -1),), ())}
            rep.add(f"p={p}:l0={l0}:h={h}", ok, f"dimension {len(sols)}")
    return rep


# 8. degree reduction ----------------------------------------------------------

def reduction_modules(ps=(2, 3)) -> list:
    out = []
    for p in ps:
        out += [("R", s, induced_r(s)) for s in sample_r_specs(p)]
        out += [("Q", s, induced_q(s)) for s in sample_q_specs(p)]
    return out


def suite_reduction(ps=(2, 3), samples: int = 200, degree: int = 4, seed: int | None = None) -> SuiteReport:
    rep = SuiteReport("reduction", "degree reduction steps and reduction to the base module")
    for kind, spec, M in reduction_modules(ps):
        rng = random.Random((default_seed() if seed is None else seed) + 7919 * spec.p)
        exact = {1: [0, 0], 2: [0, 0]}
        first_bad = None
        zero = bad_base = 0
        simple_bad = 0
        for t in range(samples):
            v = random_vector(M, rng, degree, terms=rng.randint(1, 4))
            if M.base_part(v) is None:
                try:
                    _, _, step = reduce_once(M, v)
                    exact[step.case][0] += 1
                except ReductionError as e:
                    case = reduction_operator(M, deg_of(M, v))[0]
                    exact[case][1] += 1
                    first_bad = first_bad or (str(e), v)
            try:
                tr = reduce_to_base(M, v)
            except ReductionError:
                bad_base += 1
                continue
            if not tr.result:
                zero += 1
                continue
            if t < 100:
                simple_bad += not _internal_reduces(kind, spec, tr.result)
        name = M.name
        for case in (1, 2):
            good, bad = exact[case]
            detail = f"{good} exact, {bad} off"
            if bad and first_bad:
                detail += f"; first: {first_bad[0]}"
            rep.add(f"{name}:case{case}-exact", bad == 0, detail)
        rep.add(f"{name}:reaches-base", bad_base == 0 and zero == 0, f"{bad_base} stuck, {zero} zero")
        rep.add(f"{name}:internal-to-cyclic", simple_bad == 0, f"{simple_bad} failures")
    return rep


def _internal_reduces(kind: str, spec, base_vec) -> bool:
    try:
        if kind == "R":
            final, _ = r_internal_reduce(spec, base_vec)
        else:
            final, _ = q_internal_reduce(QModule(spec), base_vec)
    except (AssertionError, ModuleError):
        return False
    return bool(final) and set(final.keys()) <= {0, ()}


# 9. module axioms -------------------------------------------------------------

def axiom_modules() -> list:
    out = [VermaModule(2, Fraction(1, 2), 3), VermaModule(3, 1, Fraction(5, 7))]
    out += [induced_r(sample_r_specs(2)[0]), induced_r(sample_r_specs(3)[1])]
    out += [induced_q(sample_q_specs(2)[0]), induced_q(sample_q_specs(3)[0])]
    out += [WhittakerModule(sample_whittaker(2)), WhittakerModule(sample_whittaker(3))]
    out += [VacuumNpModule(2, 1), VacuumNpModule(3, Fraction(1, 2))]
    out += [VirasoroPullback(VirasoroVerma(2, 1, Fraction(1, 3))), VirasoroPullback(VirasoroVerma(3, 2, 1))]
    return out


def suite_axioms(samples: int = 300, degree: int = 3, seed: int | None = None, modules=None) -> SuiteReport:
    rep = SuiteReport("axioms", "[x, y] v = x(y v) - y(x v) on random triples")
    rng = random.Random(default_seed() if seed is None else seed)
    for M in modules or axiom_modules():
        bad = []
        for _ in range(samples):
            x, y = random_generator(M, rng), random_generator(M, rng)
            v = random_vector(M, rng, degree, terms=rng.randint(1, 3))
            if module_axiom_residual(M, x, y, v):
                bad.append((str(x), str(y)))
        rep.add(M.name, not bad, f"{len(bad)} failures" + (f"; first {bad[0]}" if bad else ""))
    return rep


# 10. category conditions --------------------------------------------------------

def suite_category(degree: int = 4, seed: int | None = None) -> SuiteReport:
    rep = SuiteReport("category", "annihilation cone, injective boundary operators, recovery of (k, d)")
    bases = [(RModule(s), s.category()) for p in (2, 3) for s in sample_r_specs(p)]
    bases += [(QModule(s), s.category()) for p in (2, 3) for s in sample_q_specs(p)]
    for base, cat in bases:
        bound = max(cat.boundary_modes()) + 4 * cat.p
        ann = annihilation_failures(base, cat, degree, bound)
        inj = injectivity_defects(base, cat, degree)
        rep.add(f"{base.name}:annihilation", not ann, f"{len(ann)} failures up to mode {bound}")
        rep.add(f"{base.name}:injective", not any(inj.values()), f"kernel dimensions {inj}")
    for s in sample_r_specs(2) + sample_r_specs(3):
        M = induced_r(s)
        bound = 4 * s.p
        ex = extract_category_N(M, 3, bound)
        want = s.category().cone()
        ok = ex.found and ex.r == tuple(want) and ex.minimal_checked and all(ex.injective.values())
        rep.add(f"{M.name}:extraction", ok, f"recovered {ex.r}, expected {tuple(want)}")
    return rep


# 11. Whittaker ---------------------------------------------------------------------

def suite_whittaker(window: int = 3) -> SuiteReport:
    rep = SuiteReport("whittaker", "Whittaker types, vectors and the comparison report")
    rep.add("valid p=2", not validate_whittaker(WhittakerType(2, {1: 1, 2: 5, 4: 2})))
    bad = validate_whittaker(WhittakerType(2, {3: 1}))
    rep.add("invalid p=2 L[3]", any("[L[2],L[1]]" in b for b in bad), "; ".join(bad))
    bad = validate_whittaker(WhittakerType(3, {7: 1}))
    rep.add("invalid p=3 L[7]", any("must vanish" in b for b in bad), "; ".join(bad))
    phi = WhittakerType(2, {1: 1, 2: 5, 4: 2}, c0=3)
    W = WhittakerModule(phi)
    rep.add("cyclic vector", whittaker_vector_check(W.cyclic(), phi, W).ok)
    chk = whittaker_vector_check(W.act_gen(Gen("L", -1), W.cyclic()), phi, W)
    rep.add("L[-1]1 witness", not chk.ok and chk.witness == 2, f"witness {chk.witness}")
    from .textio import dumps
    phi = WhittakerType(2, {1: 1, 4: 3})
    a, b = dumps(check_whittaker_iso(phi, window)), dumps(check_whittaker_iso(phi, window))
    rep.add("iso report deterministic", a == b, a)
    r0 = check_whittaker_iso(phi, 0)
    rep.add("iso window 0", r0["search_dimension"] == 1 and r0["found"] == r0["cyclic_is_whittaker"])
    for p, vals in ((2, {4: 1}), (3, {1: 1, 6: 2})):
        w = reducibility_witness(WhittakerType(p, vals))
        rep.add(f"reducible p={p} {sorted(vals)}", bool(w["extra"]), f"{len(w['extra'])} extra Whittaker vectors")
    return rep


# 12. restrictedness -------------------------------------------------------------

def restricted_modules() -> list:
    return axiom_modules()


def suite_restricted(samples: int = 20, degree: int = 3, window: int = 8, seed: int | None = None) -> SuiteReport:
    rep = SuiteReport("restricted", "sufficiently positive modes annihilate sampled vectors")
    rng = random.Random(default_seed() if seed is None else seed)
    for M in restricted_modules():
        bad = 0
        for _ in range(samples):
            v = random_vector(M, rng, degree, terms=rng.randint(1, 3))
            bad += not restricted_witness(M, v, window).ok
        rep.add(M.name, bad == 0, f"{bad} of {samples} vectors not annihilated above the bound")
    return rep


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "lie": suite_lie,
    "rescaled": suite_rescaled,
    "sigma": suite_sigma,
    "pbw": suite_pbw,
    "formal": suite_formal,
    "characters": suite_characters,
    "singular": suite_singular,
    "reduction": suite_reduction,
    "axioms": suite_axioms,
    "category": suite_category,
    "whittaker": suite_whittaker,
    "restricted": suite_restricted,
}
