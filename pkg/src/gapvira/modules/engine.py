"""Modules realized by explicit bases and the generic induced-module engine.

An :class:`InducedModule` is ``U(A) (x)_{U(P)} N`` for a base module ``N`` over
a subalgebra ``P`` of the ambient algebra ``A``, where the non-central
generators of ``A`` split into *positive* ones (in ``P``, acting on ``N``) and
*free* ones (a PBW complement).  Basis keys are ``(word, base_key)`` with
``word`` sorted by the free-generator order.  Acting by a generator ``x`` on
``g1 * rest (x) b`` uses

    x g1 rest b = g1 (x rest b) + [x, g1] rest b

until ``x`` is free and belongs in front, or the word is empty and ``x`` acts
on the base.  Results are memoized per module.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Hashable, Iterable, Sequence

from ..cyclo import Scalar
from ..lie import Algebra, Gen, LieElement, bracket_gens
from .vector import ModuleVector


class ModuleError(ValueError):
    """Domain error raised by module constructions and actions."""


def letter_size(g: Gen) -> int:
    return max(1, abs(g.m))


def word_weight(word: Iterable[Gen]) -> int:
    return sum(abs(g.m) for g in word)


class Module:
    """A module with an explicit basis of hashable keys."""

    algebra: Algebra
    name: str = "module"

    def act_key(self, g: Gen, key: Hashable) -> dict:
        raise NotImplementedError

    def act_gen(self, g: Gen, v: ModuleVector) -> ModuleVector:
        acc: dict = {}
        for key, c in v.items():
            for k2, c2 in self.act_key(g, key).items():
                acc[k2] = acc.get(k2, 0) + c * c2
        return ModuleVector(acc)

    def act(self, x: LieElement, v: ModuleVector) -> ModuleVector:
        if x.algebra != self.algebra:
            raise ModuleError(f"element of {x.algebra} cannot act on a module over {self.algebra}")
        acc: dict = {}
        for g, cg in x.items():
            for key, c in self.act_gen(g, v).items():
                acc[key] = acc.get(key, 0) + cg * c
        return ModuleVector(acc)

    def act_word(self, word: Sequence[Gen], v: ModuleVector) -> ModuleVector:
        """``word[0] * word[1] * ... * v`` (rightmost generator acts first)."""
        for g in reversed(word):
            v = self.act_gen(g, v)
        return v

    def basis_upto(self, degree: int) -> list:
        raise NotImplementedError

    def key_degree(self, key: Hashable) -> int:
        raise NotImplementedError

    def threshold(self, key: Hashable) -> int:
        """An ``n`` with every generator of mode ``>= n`` killing ``key``."""
        raise NotImplementedError

    def cyclic(self) -> ModuleVector:
        raise NotImplementedError


class BaseModule(Module):
    """Module over a subalgebra: the data an induced module is built from."""

    def contains(self, g: Gen) -> bool:
        raise NotImplementedError

    def act_base(self, g: Gen, key: Hashable) -> dict:
        raise NotImplementedError

    def central_value(self, g: Gen) -> Scalar:
        raise NotImplementedError

    def act_key(self, g: Gen, key: Hashable) -> dict:
        if g.is_central:
            c = self.central_value(g)
            return {key: c} if c else {}
        if not self.contains(g):
            raise ModuleError(f"{g} does not act on {self.name}")
        return self.act_base(g, key)

    def keys_upto(self, degree: int) -> list:
        return self.basis_upto(degree)


class CharacterModule(BaseModule):
    """One-dimensional module ``x . 1 = value(x)`` on a subalgebra."""

    def __init__(self, algebra: Algebra, contains: Callable[[Gen], bool],
                 value: Callable[[Gen], Scalar], central: Callable[[Gen], Scalar],
                 threshold: int, name: str = "character"):
        self.algebra = algebra
        self._contains = contains
        self._value = value
        self._central = central
        self._threshold = threshold
        self.name = name

    def contains(self, g: Gen) -> bool:
        return g.is_central or self._contains(g)

    def act_base(self, g: Gen, key) -> dict:
        c = self._value(g)
        return {key: c} if c else {}

    def central_value(self, g: Gen) -> Scalar:
        return self._central(g)

    def basis_upto(self, degree: int) -> list:
        return [()]

    def key_degree(self, key) -> int:
        return 0

    def threshold(self, key) -> int:
        return self._threshold

    def cyclic(self) -> ModuleVector:
        return ModuleVector.basis(())


class InducedModule(Module):
    """``U(A) (x)_{U(P)} base`` with an explicit free-generator order."""

    def __init__(self, algebra: Algebra, base: BaseModule,
                 is_free: Callable[[Gen], bool], free_key: Callable[[Gen], tuple],
                 free_generators: Callable[[int], list[Gen]], free_max_mode: int,
                 name: str = "induced"):
        self.algebra = algebra
        self.base = base
        self.is_free = is_free
        self.free_key = free_key
        self._free_generators = free_generators
        self.free_max_mode = free_max_mode
        self.name = name
        self._memo: dict = {}
        self._lock = threading.Lock()

    # action ---------------------------------------------------------------
    def _act(self, g: Gen, word: tuple, bkey) -> tuple:
        memo_key = (g, word, bkey)
        hit = self._memo.get(memo_key)
        if hit is not None:
            return hit
        out = self._compute(g, word, bkey)
        with self._lock:
            self._memo[memo_key] = out
        return out

    def _compute(self, g: Gen, word: tuple, bkey) -> tuple:
        if g.is_central:
            c = self.base.central_value(g)
            return (((word, bkey), c),) if c else ()
        free = self.is_free(g)
        if not free and not self.base.contains(g):
            raise ModuleError(f"{g} is neither free nor in the positive part of {self.name}")
        if not word:
            if free:
                return ((((g,), bkey), Fraction(1)),)
            return tuple((((), k), c) for k, c in self.base.act_base(g, bkey).items() if c)
        g1, rest = word[0], word[1:]
        if free and self.free_key(g) <= self.free_key(g1):
            return ((((g,) + word, bkey), Fraction(1)),)
        acc: dict = {}
        for (w2, b2), c in self._act(g, rest, bkey):
            for key, c2 in self._act(g1, w2, b2):
                acc[key] = acc.get(key, 0) + c * c2
        for h, kb in bracket_gens(self.algebra, g, g1):
            for key, c2 in self._act(h, rest, bkey):
                acc[key] = acc.get(key, 0) + kb * c2
        return tuple((k, c) for k, c in acc.items() if c)

    def act_key(self, g: Gen, key) -> dict:
        self.algebra.check(g)
        word, bkey = key
        return dict(self._act(g, word, bkey))

    # basis ---------------------------------------------------------------
    def vector(self, word: Sequence[Gen] = (), bkey=None, coeff: Scalar = Fraction(1)) -> ModuleVector:
        """``word * bkey`` for an arbitrary (not necessarily ordered) word."""
        if bkey is None:
            bkey = self.base_cyclic_key()
        v = ModuleVector.basis(((), bkey), coeff)
        return self.act_word(list(word), v)

    def base_cyclic_key(self):
        (k,) = self.base.cyclic().keys()
        return k

    def cyclic(self) -> ModuleVector:
        return ModuleVector({((), k): c for k, c in self.base.cyclic().items()})

    def from_base(self, vec: ModuleVector) -> ModuleVector:
        return ModuleVector({((), k): c for k, c in vec.items()})

    def base_part(self, v: ModuleVector) -> ModuleVector | None:
        """The base-module vector if ``v`` lies in ``1 (x) N``, else ``None``."""
        if any(word for word, _ in v.keys()):
            return None
        return ModuleVector({b: c for (_, b), c in v.items()})

    def free_generators(self, degree: int) -> list[Gen]:
        gens = [g for g in self._free_generators(degree) if letter_size(g) <= degree]
        return sorted(set(gens), key=self.free_key)

    def free_words(self, degree: int) -> list[tuple]:
        gens = self.free_generators(degree)
        out: list[tuple] = [()]

        def grow(start: int, budget: int, prefix: tuple):
            for t in range(start, len(gens)):
                g = gens[t]
                s = letter_size(g)
                if s <= budget:
                    w = prefix + (g,)
                    out.append(w)
                    grow(t, budget - s, w)

        grow(0, degree, ())
        return out

    def basis_upto(self, degree: int) -> list:
        keys = []
        for bkey in self.base.keys_upto(degree):
            rest = degree - self.base.key_degree(bkey)
            if rest < 0:
                continue
            keys.extend((w, bkey) for w in self.free_words(rest))
        return keys

    def key_degree(self, key) -> int:
        word, bkey = key
        return sum(letter_size(g) for g in word) + self.base.key_degree(bkey)

    def threshold(self, key) -> int:
        word, bkey = key
        return word_weight(word) + max(self.base.threshold(bkey), self.free_max_mode + 1, 1)


def modes_upto(algebra: Algebra, degree: int) -> list[Gen]:
    return [g for g in algebra.basis(degree) if not g.is_central]


def check_bracket_compatibility(module: Module, gens: Sequence[Gen], keys: Sequence,
                                pairs: Iterable[tuple[Gen, Gen]] | None = None) -> list[tuple]:
    """Pairs ``(x, y, key)`` where ``x y - y x`` and ``[x, y]`` act differently on ``key``."""
    bad = []
    alg = module.algebra
    if pairs is None:
        pairs = combinations_with_replacement(gens, 2)
    for x, y in pairs:
        br = LieElement(alg, dict(bracket_gens(alg, x, y)))
        for key in keys:
            v = ModuleVector.basis(key)
            lhs = module.act(br, v)
            rhs = module.act_gen(x, module.act_gen(y, v)) - module.act_gen(y, module.act_gen(x, v))
            if lhs != rhs:
                bad.append((x, y, key))
    return bad

