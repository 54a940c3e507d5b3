"""Coefficientwise checks of the delta-function commutator formulas.

Generating functions::

    L(x)     = sum_n L(n) x^(-n-2)          T(x)   = sum_n T_n x^(-n-2)
    I^i(x)   = sum_n I^i(n) x^(-n-i/p-1)    N^i(x) = sum_n N^i_n x^(-n-1)

and the delta function is expanded as
``x1^-1 delta(x2/x1) (x2/x1)^s = sum_{r in s+Z} x2^r x1^(-r-1)``.
Each coefficient of a commutator is a finite exact computation, so a window
of mode pairs bounds coverage, never accuracy.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .lie import (
    Cbar,
    Gen,
    GapVirasoro,
    Ihat,
    Lhat,
    LieElement,
    Np,
    RescaledElement,
    bracket,
    from_rescaled,
    to_rescaled,
)

GAP_SIDE = "rescaled"
NP_SIDE = "np"


class Relation(NamedTuple):
    """One commutator family: ``LL``, ``LI``, ``II`` (rescaled) or ``TT``, ``TN``, ``NN``."""

    name: str
    i: int = 0
    j: int = 0

    @property
    def side(self) -> str:
        return GAP_SIDE if self.name in ("LL", "LI", "II") else NP_SIDE

    def __str__(self) -> str:
        if self.name in ("LL", "TT"):
            return self.name
        if self.name in ("LI", "TN"):
            return f"{self.name}({self.i})"
        return f"{self.name}({self.i},{self.j})"


def relations(p: int, side: str) -> list[Relation]:
    one, two, three = ("LL", "LI", "II") if side == GAP_SIDE else ("TT", "TN", "NN")
    out = [Relation(one)]
    out += [Relation(two, i) for i in range(1, p)]
    out += [Relation(three, i, j) for i in range(1, p) for j in range(1, p)]
    return out


class DeltaTerm(NamedTuple):
    """``coeff * F(x2) * d^k/dx2^k (x1^-1 delta(x2/x1) (x2/x1)^shift)``.

    ``series`` names the generating function multiplying the delta expression
    as ``(label, superscript, derivative_order)``; ``central`` is set instead
    when the multiplier is a central element.
    """

    k: int
    shift: Fraction
    coeff: Fraction
    series: Optional[tuple[str, int, int]] = None
    central: Optional[int] = None


def _ctilde(p: int, i: int) -> int:
    return min(i, p - i)


def rhs_terms(p: int, rel: Relation) -> list[DeltaTerm]:
    zero = Fraction(0)
    if rel.name in ("LL", "TT"):
        f = "L" if rel.name == "LL" else "T"
        return [DeltaTerm(0, zero, Fraction(1), (f, 0, 1)),
                DeltaTerm(1, zero, Fraction(2), (f, 0, 0)),
                DeltaTerm(3, zero, Fraction(1, 12), central=0)]
    if rel.name in ("LI", "TN"):
        f = "I" if rel.name == "LI" else "N"
        return [DeltaTerm(0, zero, Fraction(1), (f, rel.i, 1)),
                DeltaTerm(1, zero, Fraction(1), (f, rel.i, 0))]
    if rel.i + rel.j != p:
        return []
    shift = Fraction(rel.i, p) if rel.name == "II" else zero
    return [DeltaTerm(1, shift, Fraction(1), central=_ctilde(p, rel.i))]


def field_weight(p: int, label: str, i: int) -> Fraction:
    """Offset ``w`` in ``x^(-n-w)`` for the generating function ``label``."""
    if label in ("L", "T"):
        return Fraction(2)
    if label == "I":
        return 1 + Fraction(i, p)
    return Fraction(1)


def _is_int(q: Fraction) -> bool:
    return Fraction(q).denominator == 1


def delta_coefficient(k: int, s, a, b) -> Fraction:
    """Coefficient of ``x1^a x2^b`` in ``d^k/dx2^k (x1^-1 delta(x2/x1) (x2/x1)^s)``."""
    s, a, b = Fraction(s), Fraction(a), Fraction(b)
    if a + b != -k - 1:
        return Fraction(0)
    r = b + k
    if not _is_int(r - s):
        return Fraction(0)
    out = Fraction(1)
    for t in range(1, k + 1):
        out *= b + t
    return out


def _falling(x: Fraction, d: int) -> Fraction:
    out = Fraction(1)
    for t in range(d):
        out *= x - t
    return out


def _series_gen(p: int, label: str, i: int, n: int):
    if label == "L":
        return Lhat(n)
    if label == "I":
        return Ihat(i, n)
    if label == "T":
        return Gen("T", n)
    return Gen("N", n, i)


def _central_gen(side: str, i: int):
    return Cbar(i) if side == GAP_SIDE else Gen("K", 0, i)


def rhs_coefficient(p: int, rel: Relation, A, B) -> dict:
    """Coefficient of ``x1^A x2^B`` on the delta-function side, as a sparse dict."""
    A, B = Fraction(A), Fraction(B)
    acc: dict = {}
    for t in rhs_terms(p, rel):
        bp = -t.k - 1 - A
        val = delta_coefficient(t.k, t.shift, A, bp)
        if not val:
            continue
        u = B - bp
        if t.central is not None:
            if u == 0:
                g = _central_gen(rel.side, t.central)
                acc[g] = acc.get(g, 0) + t.coeff * val
            continue
        label, i, d = t.series
        w = field_weight(p, label, i)
        n = -u - w - d
        if not _is_int(n):
            continue
        n = int(n)
        c = t.coeff * val * _falling(-n - w, d)
        if c:
            g = _series_gen(p, label, i, n)
            acc[g] = acc.get(g, 0) + c
    return {g: c for g, c in acc.items() if c}


def _mode_labels(rel: Relation) -> tuple[tuple[str, int], tuple[str, int]]:
    return {
        "LL": (("L", 0), ("L", 0)),
        "LI": (("L", 0), ("I", rel.i)),
        "II": (("I", rel.i), ("I", rel.j)),
        "TT": (("T", 0), ("T", 0)),
        "TN": (("T", 0), ("N", rel.i)),
        "NN": (("N", rel.i), ("N", rel.j)),
    }[rel.name]


def lhs_coefficient(p: int, rel: Relation, m: int, n: int) -> dict:
    """``[X(m), Y(n)]`` computed by the lie-core structure constants."""
    (la, ia), (lb, ib) = _mode_labels(rel)
    if rel.side == GAP_SIDE:
        x = from_rescaled(RescaledElement(p, {_series_gen(p, la, ia, m): Fraction(1)}))
        y = from_rescaled(RescaledElement(p, {_series_gen(p, lb, ib, n): Fraction(1)}))
        return dict(to_rescaled(bracket(x, y)).items())
    alg = Np(p)
    x = LieElement(alg, {_series_gen(p, la, ia, m): Fraction(1)})
    y = LieElement(alg, {_series_gen(p, lb, ib, n): Fraction(1)})
    return dict(bracket(x, y).items())


def exponents_of_modes(p: int, rel: Relation, m: int, n: int) -> tuple[Fraction, Fraction]:
    (la, ia), (lb, ib) = _mode_labels(rel)
    return -m - field_weight(p, la, ia), -n - field_weight(p, lb, ib)


def substitute_level(coeffs: dict, level: Sequence | None) -> tuple[dict, Fraction]:
    """Replace central generators by their level values: (non-central part, scalar).

    ``level=None`` keeps the central generators symbolic.
    """
    if level is None:
        return dict(coeffs), Fraction(0)
    rest, scalar = {}, Fraction(0)
    for g, c in coeffs.items():
        if g.kind in ("Cbar", "K"):
            scalar += c * Fraction(level[g.i]) if g.i < len(level) else 0
        else:
            rest[g] = c
    return rest, scalar


def level_vector(p: int, l0) -> tuple[Fraction, ...]:
    return (Fraction(l0),) + (Fraction(0),) * (p // 2)


@dataclass
class IdentityCheck:
    relation: str
    mode_pair: tuple
    status: str
    lhs: dict
    rhs: dict

    @property
    def holds(self) -> bool:
        return self.status == "holds"


def verify_commutator_identity(p: int, rel: Relation, a, b, level: Sequence = None) -> IdentityCheck:
    """Compare both sides of one commutator formula at the mode pair ``(a, b)``.

    Modes are the integer indices n of L(n), I^i(n), T_n, N^i_n; the fractional
    part of each exponent comes from the conformal-weight offset.
    """
    a, b = Fraction(a), Fraction(b)
    if not (_is_int(a) and _is_int(b)):
        raise ValueError(f"mode pair ({a}, {b}) is off the integer mode lattice of {rel}")
    m, n = int(a), int(b)
    A, B = exponents_of_modes(p, rel, m, n)
    lhs, lc = substitute_level(lhs_coefficient(p, rel, m, n), level)
    rhs, rc = substitute_level(rhs_coefficient(p, rel, A, B), level)
    status = "holds" if (lhs == rhs and lc == rc) else "mismatch"
    return IdentityCheck(str(rel), (m, n), status,
                         {**{str(g): c for g, c in lhs.items()}, **({"central": lc} if lc else {})},
                         {**{str(g): c for g, c in rhs.items()}, **({"central": rc} if rc else {})})


def verify_exponent_window(p: int, rel: Relation, window: int, level: Sequence = None) -> list[tuple]:
    """Sweep every exponent pair on the (1/p)Z lattice in a window.

    Pairs that do not come from integer modes must have a vanishing right-hand
    side.  Returns the list of mismatching exponent pairs (empty if all hold).
    """
    (la, ia), (lb, ib) = _mode_labels(rel)
    wa, wb = field_weight(p, la, ia), field_weight(p, lb, ib)
    bad = []
    span = range(-window * p, window * p + 1)
    for ka in span:
        A = Fraction(ka, p)
        for kb in span:
            B = Fraction(kb, p)
            ma, mb = -A - wa, -B - wb
            rhs = substitute_level(rhs_coefficient(p, rel, A, B), level)
            if _is_int(ma) and _is_int(mb):
                lhs = substitute_level(lhs_coefficient(p, rel, int(ma), int(mb)), level)
            else:
                lhs = ({}, Fraction(0))
            if lhs != rhs:
                bad.append((A, B))
    return bad


# twisted mode dictionary ------------------------------------------------------

def np_twisted_bracket(p: int, x: tuple, y: tuple) -> dict:
    """N_p brackets with modes allowed in (1/p)Z (twisted modes).

    ``x``/``y`` are ``("T", m)`` or ``("N", i, r)``; central results use
    ``("K", i)``.
    """
    out: dict = {}
    if x[0] == "T" and y[0] == "T":
        m, n = Fraction(x[1]), Fraction(y[1])
        if m != n:
            out[("T", m + n)] = m - n
        if m + n == 0 and m ** 3 != m:
            out[("K", 0)] = (m ** 3 - m) / 12
    elif x[0] == "T":
        r = Fraction(y[2])
        if r:
            out[("N", y[1], Fraction(x[1]) + r)] = -r
    elif y[0] == "T":
        r = Fraction(x[2])
        if r:
            out[("N", x[1], Fraction(y[1]) + r)] = r
    else:
        r, t = Fraction(x[2]), Fraction(y[2])
        if x[1] + y[1] == p and r + t == 0 and r:
            out[("K", _ctilde(p, x[1]))] = r
    return out


def _dictionary(p: int, g) -> tuple:
    """Rescaled gap generator -> twisted N_p mode."""
    if g.kind == "Lhat":
        return ("T", Fraction(g.m))
    if g.kind == "Ihat":
        return ("N", g.i, g.m + Fraction(g.i, p))
    return ("K", g.i)


def _level_sub_twisted(d: dict, level: Sequence) -> tuple[dict, Fraction]:
    rest, sc = {}, Fraction(0)
    for k, c in d.items():
        if k[0] == "K":
            sc += c * level[k[1]]
        else:
            rest[k] = c
    return rest, sc


@dataclass
class DictionaryReport:
    p: int
    l0: Fraction
    window: int
    checked: dict
    mismatches: list

    @property
    def holds(self) -> bool:
        return not self.mismatches


def verify_mode_dictionary(p: int, l0, window: int) -> DictionaryReport:
    """Gap-side delta expansion vs N_p brackets at twisted modes, at level (l0, 0, ...).

    The identification is L(n) <-> T_n and I^i(n) <-> N^i_{n + i/p}; both sides
    are compared before and after the level substitution.
    """
    level = level_vector(p, l0)
    checked: dict = {}
    mismatches = []
    for rel in relations(p, GAP_SIDE):
        (la, ia), (lb, ib) = _mode_labels(rel)
        family = rel.name
        checked[family] = checked.get(family, 0)
        for m in range(-window, window + 1):
            for n in range(-window, window + 1):
                A, B = exponents_of_modes(p, rel, m, n)
                gap = {_dictionary(p, g): c for g, c in rhs_coefficient(p, rel, A, B).items()}
                x = _dictionary(p, _series_gen(p, la, ia, m))
                y = _dictionary(p, _series_gen(p, lb, ib, n))
                npside = np_twisted_bracket(p, x, y)
                ok = gap == npside and _level_sub_twisted(gap, level) == _level_sub_twisted(npside, level)
                checked[family] += 1
                if not ok:
                    mismatches.append((str(rel), m, n))
    return DictionaryReport(p, Fraction(l0), window, checked, mismatches)
