"""Whittaker types, universal Whittaker modules W(phi) and the comparison with Ind(Q)."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from ..cyclo import Scalar
from ..lie import Gen, GapVirasoro, bracket_gens, gen_key
from ..linalg import nullspace
from ..modules.engine import CharacterModule, InducedModule, ModuleError
from ..modules.vector import ModuleVector
from .qmod import QSpec, induced_q


def _scalar(x) -> Scalar:
    return Fraction(x) if isinstance(x, (int, str, Fraction)) else x


@dataclass(frozen=True)
class WhittakerType:
    """``phi`` on ``L_m`` (m > 0) and ``C_0``; ``phi(C_i) = 0`` for i >= 1."""

    p: int
    values: Mapping[int, Scalar] = field(default_factory=dict)
    c0: Scalar = Fraction(0)

    def __post_init__(self):
        vals = {int(m): _scalar(c) for m, c in dict(self.values).items()}
        for m in vals:
            if m <= 0:
                raise ModuleError(f"phi is defined on L_m with m > 0 only, got m={m}")
        object.__setattr__(self, "values", {m: c for m, c in vals.items() if c})
        object.__setattr__(self, "c0", _scalar(self.c0))

    def __call__(self, m: int) -> Scalar:
        return self.values.get(m, Fraction(0))

    @property
    def l0(self) -> Scalar:
        return self.c0 / (self.p * self.p)


def validate_whittaker(phi: WhittakerType, bound: int | None = None) -> list[str]:
    """Violations of the character condition; empty when ``phi`` is valid.

    Checks ``phi([x, y]) = 0`` for positive generators with index sum up to
    ``bound`` (default ``4p``) and the forced vanishing ``phi(L_i) = 0`` for
    ``i > p``, ``i != 2p``.
    """
    p = phi.p
    bound = 4 * p if bound is None else bound
    alg = GapVirasoro(p)
    bad = []
    for m in sorted(phi.values):
        if m > p and m != 2 * p:
            bad.append(f"phi(L[{m}]) must vanish ({m} > {p}, {m} != {2 * p})")
    for a in range(1, bound):
        for b in range(a + 1, bound - a + 1):
            for g, c in bracket_gens(alg, Gen("L", b), Gen("L", a)):
                val = phi.c0 if g.is_central and g.i == 0 else (0 if g.is_central else phi(g.m))
                if c * val:
                    bad.append(f"[L[{b}],L[{a}]] = {c}*{g} but phi({g}) != 0")
    return bad


class WhittakerModule(InducedModule):
    """``W(phi) = U(g) (x) C_phi``; PBW basis of words in ``L_m`` (m <= 0)."""

    def __init__(self, phi: WhittakerType, check: bool = True):
        if check:
            bad = validate_whittaker(phi)
            if bad:
                raise ModuleError("invalid Whittaker type: " + "; ".join(bad))
        p = phi.p
        self.phi = phi
        self.p = p
        alg = GapVirasoro(p)
        top = max([m for m in phi.values], default=0)

        def central(g: Gen):
            return phi.c0 if g.i == 0 else Fraction(0)

        base = CharacterModule(alg, lambda g: g.m > 0, lambda g: phi(g.m), central,
                               threshold=top + 1, name="C_phi")
        super().__init__(alg, base, is_free=lambda g: g.kind == "L" and g.m <= 0, free_key=gen_key,
                         free_generators=lambda deg: [Gen("L", m) for m in range(-deg, 1)],
                         free_max_mode=0, name=f"W(phi, p={p})")


def whittaker_universal(phi: WhittakerType) -> WhittakerModule:
    return WhittakerModule(phi)


@dataclass
class WhittakerCheck:
    ok: bool
    witness: int | None = None
    detail: str = ""


def whittaker_vector_check(v: ModuleVector, phi: WhittakerType, module, window: int | None = None) -> WhittakerCheck:
    """``L_m v = phi(L_m) v`` for ``0 < m <= window`` (default ``3p``); first failing ``m``."""
    if not v:
        raise ModuleError("the zero vector is not a Whittaker vector")
    window = 3 * phi.p if window is None else window
    for m in range(1, window + 1):
        lhs = module.act_gen(Gen("L", m), v)
        if lhs != v * phi(m):
            return WhittakerCheck(False, m, f"L[{m}] v differs from phi(L[{m}]) v")
    return WhittakerCheck(True)


def whittaker_vectors(module, phi: WhittakerType, degree: int, window: int | None = None) -> tuple[list, list[ModuleVector]]:
    """Basis of Whittaker vectors of type ``phi`` inside the degree-``degree`` truncation."""
    window = 3 * phi.p if window is None else window
    keys = module.basis_upto(degree)
    columns = []
    for key in keys:
        v = ModuleVector.basis(key)
        col: dict = {}
        for m in range(1, window + 1):
            w = module.act_gen(Gen("L", m), v) - v * phi(m)
            for k2, c in w.items():
                col[(m, k2)] = c
        columns.append(col)
    sols = [ModuleVector({keys[j]: c for j, c in vec.items()}) for vec in nullspace(columns)]
    return keys, sols


def iso_qspec(phi: WhittakerType) -> QSpec:
    """Q-data paired with ``phi``: k = 2, S_0 = {1, 2}, S_i = {2}, d = (2, ..., 2)."""
    p = phi.p
    theta = {(0, 1): Fraction(0), (0, 2): phi(2 * p)}
    theta.update({(i, 2): phi(i) for i in range(1, p)})
    S = (frozenset({1, 2}),) + tuple(frozenset({2}) for _ in range(1, p))
    return QSpec(p, 2, (2,) * (p - 1), S, theta, phi.l0)


def check_whittaker_iso(phi: WhittakerType, window: int) -> dict:
    """Search the truncation of ``Ind(Q)`` for Whittaker vectors of type ``phi``."""
    bad = validate_whittaker(phi)
    if bad:
        raise ModuleError("invalid Whittaker type: " + "; ".join(bad))
    p = phi.p
    if not phi(2 * p):
        raise ModuleError(f"the comparison needs phi(L[{2 * p}]) != 0")
    for i in range(1, p):
        if not phi(i):
            raise ModuleError(f"the comparison needs phi(L[{i}]) != 0")
    spec = iso_qspec(phi)
    module = induced_q(spec)
    cyc = module.cyclic()
    cyc_check = whittaker_vector_check(cyc, phi, module)
    keys, sols = whittaker_vectors(module, phi, window)
    report = {
        "p": p,
        "k": 2,
        "d": list(spec.d),
        "d_inferred": True,
        "S": [sorted(s) for s in spec.S],
        "theta": {f"{i},{j}": c for (i, j), c in sorted(spec.theta.items())},
        "l0": spec.l0,
        "window": window,
        "search_dimension": len(keys),
        "cyclic_is_whittaker": cyc_check.ok,
        "cyclic_witness": cyc_check.witness,
        "found": bool(sols),
        "solution_count": len(sols),
        "candidate": sols[0] if sols else None,
        "phi_Lp": phi(p),
    }
    return report


def reducibility_witness(phi: WhittakerType, degree: int = 3) -> dict:
    """Whittaker vectors of W(phi) in a truncation; more than one line signals a proper submodule."""
    module = WhittakerModule(phi)
    keys, sols = whittaker_vectors(module, phi, degree)
    extra = [v for v in sols if set(v.keys()) != {((), ())}]
    return {"dimension": len(sols), "extra": extra, "searched": len(keys), "module": module}
