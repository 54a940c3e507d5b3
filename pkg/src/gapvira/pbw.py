"""Exponent vectors, their orders, and PBW straightening in U(g) and U(N_p)."""
from __future__ import annotations

import random
from enum import IntEnum
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple, Sequence

from .cyclo import Scalar, is_rational
from .lie import Algebra, AlgebraError, Gen, LieElement, bracket_gens, format_terms, gen_key


class Cmp(IntEnum):
    LT = -1
    EQ = 0
    GT = 1


LEX = "lex"
REVLEX = "revlex"


class ExponentVector:
    """Finitely supported map Z -> N, stored as sorted ``(index, mult)`` pairs."""

    __slots__ = ("_items", "_hash")

    def __init__(self, entries: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        if isinstance(entries, Mapping):
            entries = entries.items()
        acc: dict[int, int] = {}
        for s, a in entries:
            if a < 0:
                raise ValueError(f"negative exponent {a} at index {s}")
            if a:
                acc[s] = acc.get(s, 0) + a
        self._items = tuple(sorted(acc.items()))
        self._hash = hash(self._items)

    @classmethod
    def unit(cls, s: int, mult: int = 1) -> "ExponentVector":
        return cls({s: mult})

    @classmethod
    def from_word(cls, indices: Iterable[int]) -> "ExponentVector":
        acc: dict[int, int] = {}
        for s in indices:
            acc[s] = acc.get(s, 0) + 1
        return cls(acc)

    def items(self) -> tuple[tuple[int, int], ...]:
        return self._items

    def support(self) -> list[int]:
        return [s for s, _ in self._items]

    def __getitem__(self, s: int) -> int:
        for t, a in self._items:
            if t == s:
                return a
        return 0

    def __add__(self, other: "ExponentVector") -> "ExponentVector":
        return ExponentVector(list(self._items) + list(other._items))

    def __sub__(self, other: "ExponentVector") -> "ExponentVector":
        acc = dict(self._items)
        for s, a in other._items:
            acc[s] = acc.get(s, 0) - a
            if acc[s] < 0:
                raise ValueError("exponent vector subtraction went negative")
        return ExponentVector(acc)

    def __bool__(self) -> bool:
        return bool(self._items)

    def __eq__(self, other) -> bool:
        return isinstance(other, ExponentVector) and self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def total(self) -> int:
        return sum(a for _, a in self._items)

    def as_dict(self) -> dict[int, int]:
        return dict(self._items)

    def word(self) -> tuple[int, ...]:
        """Indices with multiplicity, ascending."""
        return tuple(s for s, a in self._items for _ in range(a))

    def __repr__(self) -> str:
        if not self._items:
            return "0"
        return " + ".join(f"e({s})" if a == 1 else f"{a}e({s})" for s, a in self._items)


ZERO = ExponentVector()


def weight(v: ExponentVector) -> int:
    """Sum over the support of ``|s| * v_s``."""
    return sum(abs(s) * a for s, a in v.items())


def lex_key(v: ExponentVector) -> tuple:
    # lex: the smallest differing index decides
    return tuple((-s, a) for s, a in v.items())


def revlex_key(v: ExponentVector) -> tuple:
    # revlex: the largest differing index decides
    return tuple((s, a) for s, a in reversed(v.items()))


def compare(a: ExponentVector, b: ExponentVector, kind: str = LEX) -> Cmp:
    if kind == LEX:
        ka, kb = lex_key(a), lex_key(b)
    elif kind == REVLEX:
        ka, kb = revlex_key(a), revlex_key(b)
    else:
        raise ValueError(f"unknown order kind {kind!r}")
    return Cmp((ka > kb) - (ka < kb))


def compare_bruteforce(a: ExponentVector, b: ExponentVector, kind: str = LEX) -> Cmp:
    """Direct transcription of the definitions, scanning the union of supports."""
    idx = sorted(set(a.support()) | set(b.support()))
    diff = [s for s in idx if a[s] != b[s]]
    if not diff:
        return Cmp.EQ
    s = diff[0] if kind == LEX else diff[-1]
    return Cmp.GT if a[s] > b[s] else Cmp.LT


def check_split(p: int, i: ExponentVector, j: ExponentVector) -> None:
    """``i`` on non-multiples of p, ``j`` on negative multiples of p."""
    if any(s % p == 0 for s in i.support()):
        raise ValueError(f"first component {i!r} touches a multiple of p={p}")
    if any(s % p != 0 or s >= 0 for s in j.support()):
        raise ValueError(f"second component {j!r} must live on negative multiples of p={p}")


def principal_key(pair: tuple[ExponentVector, ExponentVector]) -> tuple:
    i, j = pair
    return (weight(j), revlex_key(j), lex_key(i))


def principal_compare(x: tuple[ExponentVector, ExponentVector],
                      y: tuple[ExponentVector, ExponentVector], p: int | None = None) -> Cmp:
    """Three-clause principal order on pairs ``(i, j)``.

    GT iff w(j) > w(l); or w(j) = w(l) and j >_revlex l; or j = l and i >_lex k.
    When ``p`` is given the M'/M support split is enforced.
    """
    if p is not None:
        check_split(p, *x)
        check_split(p, *y)
    kx, ky = principal_key(x), principal_key(y)
    return Cmp((kx > ky) - (kx < ky))


# PBW monomials and U(g) ---------------------------------------------------

class PbwMonomial(NamedTuple):
    """Normal-ordered generator word times a central multidegree."""

    word: tuple[Gen, ...]
    central: tuple[int, ...]

    def exponents(self) -> ExponentVector:
        """Exponent vector of the word (gap-p Virasoro words only)."""
        if any(g.kind != "L" for g in self.word):
            raise AlgebraError("exponent vectors are defined for L-words only")
        return ExponentVector.from_word(g.m for g in self.word)

    def length(self) -> int:
        return len(self.word)

    def label(self, alg: Algebra) -> str:
        parts = [str(g) for g in self.word]
        kind = "C" if alg.family == "gap" else "K"
        for i, a in enumerate(self.central):
            parts += [f"{kind}[{i}]"] * a
        return "*".join(parts) if parts else "1"


def _unit_central(alg: Algebra, i: int | None = None) -> tuple[int, ...]:
    c = [0] * (alg.half + 1)
    if i is not None:
        c[i] += 1
    return tuple(c)


def _add_central(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def is_normal(word: Sequence[Gen]) -> bool:
    return all(gen_key(a) <= gen_key(b) for a, b in zip(word, word[1:]))


@lru_cache(maxsize=1 << 18)
def _insert(alg: Algebra, x: Gen, word: tuple[Gen, ...]) -> tuple[tuple[tuple, tuple, Fraction], ...]:
    """Normal form of ``x * word`` for a normal ``word``: ((word, central, coeff), ...)."""
    zero_c = _unit_central(alg)
    if not word or gen_key(x) <= gen_key(word[0]):
        return (((x,) + word, zero_c, Fraction(1)),)
    w0, rest = word[0], word[1:]
    acc: dict = {}
    for u, cu, k in _insert(alg, x, rest):
        for v, cv, k2 in _insert(alg, w0, u):
            key = (v, _add_central(cu, cv))
            acc[key] = acc.get(key, 0) + k * k2
    for g, kb in bracket_gens(alg, x, w0):
        if g.is_central:
            key = (rest, _unit_central(alg, g.i))
            acc[key] = acc.get(key, 0) + kb
        else:
            for u, cu, k in _insert(alg, g, rest):
                key = (u, cu)
                acc[key] = acc.get(key, 0) + kb * k
    return tuple((w, c, k) for (w, c), k in acc.items() if k)


@lru_cache(maxsize=1 << 16)
def _nf_word(alg: Algebra, word: tuple[Gen, ...]) -> tuple[tuple[tuple, tuple, Fraction], ...]:
    if not word:
        return (((), _unit_central(alg), Fraction(1)),)
    head, rest = word[0], word[1:]
    acc: dict = {}
    for u, cu, k in _nf_word(alg, rest):
        for v, cv, k2 in _insert(alg, head, u):
            key = (v, _add_central(cu, cv))
            acc[key] = acc.get(key, 0) + k * k2
    return tuple((w, c, k) for (w, c), k in acc.items() if k)


class UeaElement:
    """Finite combination of PBW monomials in normal order."""

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: Algebra, terms: Mapping[PbwMonomial, Scalar] | None = None):
        self.algebra = algebra
        self._terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def one(cls, alg: Algebra) -> "UeaElement":
        return cls(alg, {PbwMonomial((), _unit_central(alg)): Fraction(1)})

    @classmethod
    def from_lie(cls, x: LieElement) -> "UeaElement":
        alg = x.algebra
        t = {}
        for g, c in x.items():
            if g.is_central:
                t[PbwMonomial((), _unit_central(alg, g.i))] = c
            else:
                t[PbwMonomial((g,), _unit_central(alg))] = c
        return cls(alg, t)

    def items(self):
        return self._terms.items()

    def __iter__(self) -> Iterator[PbwMonomial]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coeff(self, m: PbwMonomial) -> Scalar:
        return self._terms.get(m, Fraction(0))

    def _same(self, other: "UeaElement") -> None:
        if other.algebra != self.algebra:
            raise AlgebraError(f"algebra mismatch: {self.algebra} vs {other.algebra}")

    def __add__(self, other: "UeaElement") -> "UeaElement":
        self._same(other)
        t = dict(self._terms)
        for m, c in other._terms.items():
            t[m] = t.get(m, 0) + c
        return UeaElement(self.algebra, t)

    def __neg__(self) -> "UeaElement":
        return UeaElement(self.algebra, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "UeaElement") -> "UeaElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, UeaElement):
            return multiply(self, other)
        if isinstance(other, int):
            other = Fraction(other)
        return UeaElement(self.algebra, {m: c * other for m, c in self._terms.items()})

    def __rmul__(self, scalar):
        if isinstance(scalar, int):
            scalar = Fraction(scalar)
        return UeaElement(self.algebra, {m: c * scalar for m, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, UeaElement):
            return self.algebra == other.algebra and self._terms == other._terms
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self._terms)

    def sorted_items(self) -> list[tuple[PbwMonomial, Scalar]]:
        return sorted(self._terms.items(),
                      key=lambda kv: (len(kv[0].word), [gen_key(g) for g in kv[0].word], kv[0].central))

    def __str__(self) -> str:
        return format_terms((m.label(self.algebra), c) for m, c in self.sorted_items())

    __repr__ = __str__


def _split_word(alg: Algebra, word: Sequence[Gen]) -> tuple[tuple[Gen, ...], tuple[int, ...]]:
    central = [0] * (alg.half + 1)
    plain = []
    for g in word:
        alg.check(g)
        if g.is_central:
            central[g.i] += 1
        else:
            plain.append(g)
    return tuple(plain), tuple(central)


def normal_form(word: Sequence[Gen], algebra: Algebra,
                schedule: Callable[[list[int]], int] | None = None) -> UeaElement:
    """Straighten a generator word into PBW normal form.

    With ``schedule=None`` a memoized insertion strategy is used.  Otherwise
    ``schedule`` receives the list of inversion positions of the current word
    and returns the one to swap; any schedule gives the same answer.
    """
    plain, central = _split_word(algebra, word)
    if schedule is None:
        terms: dict = {}
        for w, c, k in _nf_word(algebra, plain):
            m = PbwMonomial(w, _add_central(c, central))
            terms[m] = terms.get(m, 0) + k
        return UeaElement(algebra, terms)
    return _straighten(algebra, plain, central, schedule)


def _straighten(alg: Algebra, word: tuple[Gen, ...], central: tuple[int, ...],
                schedule: Callable[[list[int]], int]) -> UeaElement:
    done: dict = {}
    pending: dict = {(word, central): Fraction(1)}
    while pending:
        (w, c), k = pending.popitem()
        if not k:
            continue
        inversions = [t for t in range(len(w) - 1) if gen_key(w[t]) > gen_key(w[t + 1])]
        if not inversions:
            m = PbwMonomial(w, c)
            done[m] = done.get(m, 0) + k
            continue
        t = schedule(inversions)
        a, b = w[t], w[t + 1]
        swapped = (w[:t] + (b, a) + w[t + 2:], c)
        pending[swapped] = pending.get(swapped, 0) + k
        for g, kb in bracket_gens(alg, a, b):
            if g.is_central:
                key = (w[:t] + w[t + 2:], _add_central(c, _unit_central(alg, g.i)))
            else:
                key = (w[:t] + (g,) + w[t + 2:], c)
            pending[key] = pending.get(key, 0) + k * kb
    return UeaElement(alg, done)


def leftmost(inversions: list[int]) -> int:
    return inversions[0]


def rightmost(inversions: list[int]) -> int:
    return inversions[-1]


def random_schedule(rng: random.Random) -> Callable[[list[int]], int]:
    return lambda inversions: rng.choice(inversions)


def multiply(a: UeaElement, b: UeaElement) -> UeaElement:
    a._same(b)
    alg = a.algebra
    acc: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            c0 = _add_central(ma.central, mb.central)
            for w, c, k in _nf_word(alg, ma.word + mb.word):
                m = PbwMonomial(w, _add_central(c, c0))
                acc[m] = acc.get(m, 0) + ca * cb * k
    return UeaElement(alg, acc)


def word_grade(alg: Algebra, word: Iterable[Gen]) -> Fraction:
    den = alg.p if alg.family == "gap" else 1
    return sum((Fraction(g.m, den) for g in word if not g.is_central), Fraction(0))
