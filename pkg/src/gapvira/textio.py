"""Text and JSON forms of scalars, generators, elements, words and module vectors.

Element grammar::

    element := ['-'] term (('+' | '-') term)*  |  '0'
    term    := (scalar '*')* gen
    gen     := 'L[' int ']' | 'C[' nat ']' | 'T[' int ']' | 'N[' nat ',' int ']' | 'K[' nat ']'
    scalar  := rational | 'xi^' nat | '(' csum ')'
    csum    := ['-'] cterm (('+' | '-') cterm)*
    cterm   := rational ['*' 'xi^' nat] | 'xi^' nat

Words (``word := gen ('*' gen)*``) are used for normal forms and module actions.
"""
from __future__ import annotations

import json
import re
from dataclasses import fields, is_dataclass
from fractions import Fraction
from typing import Any

from .cyclo import Cyclo, Scalar, field, format_rational
from .lie import Algebra, AlgebraError, Gen, LieElement
from .pbw import ExponentVector, UeaElement
from .modules.vector import ModuleVector


class TextError(ValueError):
    """Syntax error with a 1-based line and column."""

    def __init__(self, msg: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{msg} at line {line}, column {col}")
        self.line = line
        self.column = col



class _Parser:
    def __init__(self, text: str, algebra: Algebra | None):
        self.text = text
        self.alg = algebra
        self.pos = 0

    # low-level ---------------------------------------------------------
    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at_end(self) -> bool:
        return self.peek() == ""

    def fail(self, msg: str, pos: int | None = None):
        raise TextError(msg, self.text, self.pos if pos is None else pos)

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            self.fail(f"expected {ch!r}" + (f", found {self.peek()!r}" if self.peek() else ", found end of input"))
        self.pos += 1

    def integer(self, signed: bool) -> int:
        self.skip()
        m = re.compile(r"-?\d+" if signed else r"\d+").match(self.text, self.pos)
        if not m:
            self.fail("expected an integer" if signed else "expected a nonnegative integer")
        self.pos = m.end()
        return int(m.group())

    def rational(self) -> Fraction:
        self.skip()
        m = re.compile(r"\d+(?:/\d+)?").match(self.text, self.pos)
        if not m:
            self.fail("expected a rational number")
        start = self.pos
        self.pos = m.end()
        try:
            return Fraction(m.group())
        except ZeroDivisionError:
            self.fail("zero denominator", start)

    def starts(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    # grammar -----------------------------------------------------------
    def xi_power(self) -> Scalar:
        self.pos += 3  # 'xi^'
        k = self.integer(signed=False)
        return self.field().xi_power(k)

    def field(self):
        if self.alg is None:
            self.fail("xi needs a known p")
        return field(self.alg.p)

    def cterm(self) -> Scalar:
        if self.starts("xi^"):
            return self.xi_power()
        q = self.rational()
        if self.starts("*") and self.text.startswith("xi^", self._after_star()):
            self.expect("*")
            self.skip()
            return q * self.xi_power()
        return q

    def _after_star(self) -> int:
        j = self.pos + 1
        while j < len(self.text) and self.text[j].isspace():
            j += 1
        return j

    def csum(self) -> Scalar:
        sign = 1
        if self.peek() == "-":
            self.pos += 1
            sign = -1
        acc = self.cterm() * sign
        while self.peek() in ("+", "-"):
            op = self.peek()
            self.pos += 1
            t = self.cterm()
            acc = acc + t if op == "+" else acc - t
        return acc

    def scalar(self) -> Scalar:
        if self.peek() == "(":
            self.pos += 1
            v = self.csum()
            self.expect(")")
            return v
        if self.starts("xi^"):
            return self.xi_power()
        return self.rational()

    def gen(self) -> Gen:
        self.skip()
        start = self.pos
        kind = self.peek()
        if kind not in "LCTNK" or not kind:
            self.fail("expected a generator L[..], C[..], T[..], N[..,..] or K[..]")
        self.pos += 1
        self.expect("[")
        if kind == "N":
            i = self.integer(signed=False)
            self.expect(",")
            m = self.integer(signed=True)
            self.expect("]")
            return self._build(kind, m, i, start)
        idx = self.integer(signed=kind in "LT")
        self.expect("]")
        return self._build(kind, idx, idx, start)

    def _build(self, kind: str, m: int, i: int, start: int) -> Gen:
        alg = self.alg
        if alg is None:
            return Gen(kind, 0 if kind in "CK" else m, i if kind in "CKN" else 0)
        try:
            if kind == "L":
                return alg.L(m)
            if kind == "T":
                return alg.T(m)
            if kind == "N":
                return alg.N(i, m)
            return alg.C(i) if kind == "C" else alg.K(i)
        except AlgebraError as e:
            raise TextError(str(e), self.text, start) from None

    def term(self) -> tuple[Scalar, Gen]:
        c: Scalar = Fraction(1)
        if self.at_end():
            self.fail("expected a term, found end of input")
        while self.peek() not in "LCTNK" or not self.peek():
            if not (self.peek().isdigit() or self.peek() == "(" or self.starts("xi^")):
                self.fail(f"expected a term, found {self.peek()!r}" if self.peek() else "expected a term, found end of input")
            c = c * self.scalar()
            self.expect("*")
        return c, self.gen()

    def element(self) -> dict:
        acc: dict = {}
        sign = 1
        if self.peek() == "0" and self._lone_zero():
            self.pos += 1
            return acc
        if self.peek() == "-":
            self.pos += 1
            sign = -1
        while True:
            c, g = self.term()
            acc[g] = acc.get(g, 0) + c * sign
            op = self.peek()
            if op not in ("+", "-") or not op:
                break
            self.pos += 1
            sign = 1 if op == "+" else -1
        return acc

    def _lone_zero(self) -> bool:
        return self.text[self.pos + 1:].strip() == ""

    def word(self) -> list[Gen]:
        out = [self.gen()]
        while self.peek() == "*":
            self.pos += 1
            out.append(self.gen())
        return out


def parse_element(text: str, algebra: Algebra) -> LieElement:
    """Parse the element grammar into a canonical :class:`LieElement`."""
    ps = _Parser(text, algebra)
    if ps.at_end():
        ps.fail("empty input")
    terms = ps.element()
    if not ps.at_end():
        ps.fail(f"unexpected {ps.peek()!r}")
    return LieElement(algebra, terms)


def parse_gen(text: str, algebra: Algebra | None = None) -> Gen:
    ps = _Parser(text, algebra)
    g = ps.gen()
    if not ps.at_end():
        ps.fail(f"unexpected {ps.peek()!r}")
    return g


def parse_word(text: str, algebra: Algebra) -> list[Gen]:
    """``gen * gen * ...``; the empty string or ``1`` gives the empty word."""
    if text.strip() in ("", "1"):
        return []
    ps = _Parser(text, algebra)
    w = ps.word()
    if not ps.at_end():
        ps.fail(f"unexpected {ps.peek()!r}")
    return w


def parse_scalar(text: str, p: int | None = None) -> Scalar:
    ps = _Parser(text, Algebra(p) if p else None)
    sign = 1
    if ps.peek() == "-":
        ps.pos += 1
        sign = -1
    v = ps.scalar() * sign
    if not ps.at_end():
        ps.fail(f"unexpected {ps.peek()!r}")
    return v


def parse_assignments(text: str, algebra: Algebra) -> dict[Gen, Scalar]:
    """``'L[1]=1, L[4]=3/2'`` as ``{Gen: value}``."""
    out: dict[Gen, Scalar] = {}
    ps = _Parser(text, algebra)
    if ps.at_end():
        return out
    while True:
        g = ps.gen()
        ps.expect("=")
        sign = 1
        if ps.peek() == "-":
            ps.pos += 1
            sign = -1
        out[g] = ps.scalar() * sign
        if ps.at_end():
            return out
        ps.expect(",")


def format_element(x: LieElement) -> str:
    return str(x)


# JSON -------------------------------------------------------------------

def scalar_json(x: Scalar) -> str | list[str]:
    """Rationals as ``"a/b"``; cyclotomic values as their power-basis coordinates."""
    if isinstance(x, Cyclo):
        return [format_rational(c) for c in x.c]
    return format_rational(Fraction(x))


def coeff_json(x: Scalar, p: int) -> list[str]:
    """Always the coordinate list, as used inside element documents."""
    return [format_rational(c) for c in field(p).coeffs(x)]


def scalar_from_json(obj: Any, p: int | None = None) -> Scalar:
    if isinstance(obj, list):
        if p is None:
            raise ValueError("cyclotomic coordinates need p")
        return field(p).element([Fraction(c) for c in obj])
    if isinstance(obj, (int, str)):
        return Fraction(obj)
    raise ValueError(f"not a scalar: {obj!r}")


def gen_json(g: Gen) -> dict:
    if g.kind == "N":
        return {"gen": "N", "sup": g.i, "index": g.m}
    if g.is_central:
        return {"gen": g.kind, "index": g.i}
    return {"gen": g.kind, "index": g.m}


def gen_from_json(obj: dict, algebra: Algebra) -> Gen:
    kind, idx = obj["gen"], int(obj["index"])
    ctor = {"L": algebra.L, "T": algebra.T, "C": algebra.C, "K": algebra.K}
    try:
        if kind == "N":
            return algebra.N(int(obj["sup"]), idx)
        if kind not in ctor:
            raise AlgebraError(f"unknown generator kind {kind!r}")
        return ctor[kind](idx)
    except AlgebraError as e:
        raise ValueError(str(e)) from None


def element_json(x: LieElement) -> dict:
    p = x.algebra.p
    return {"p": p, "family": x.algebra.family,
            "terms": [dict(gen_json(g), coeff=coeff_json(c, p)) for g, c in x.sorted_items()]}


def element_from_json(obj: dict) -> LieElement:
    alg = Algebra(int(obj["p"]), obj.get("family", "gap"))
    terms: dict = {}
    for t in obj["terms"]:
        g = gen_from_json(t, alg)
        terms[g] = terms.get(g, 0) + scalar_from_json(t["coeff"], alg.p)
    return LieElement(alg, terms)


def uea_json(u: UeaElement) -> list[dict]:
    p = u.algebra.p
    return [{"word": [str(g) for g in m.word],
             "central": {str(i): a for i, a in enumerate(m.central) if a},
             "coeff": coeff_json(c, p)} for m, c in u.sorted_items()]


def key_json(key: Any) -> Any:
    """Base-module keys: generators as text, tuples as lists."""
    if isinstance(key, Gen):
        return str(key)
    if isinstance(key, (tuple, list)):
        return [key_json(k) for k in key]
    return key


def key_from_json(obj: Any, algebra: Algebra) -> Any:
    if isinstance(obj, list):
        return tuple(key_from_json(k, algebra) for k in obj)
    if isinstance(obj, str):
        return parse_gen(obj, algebra)
    return obj


def vector_json(module, v: ModuleVector) -> list[dict]:
    """Induced-module vectors; ``Ind`` modules use the ``iexp``/``jexp`` split."""
    out = []
    split = getattr(module, "split", None)
    for (word, bkey), c in sorted(v.items(), key=lambda kv: repr(kv[0])):
        entry: dict = {"key": key_json(bkey), "coeff": scalar_json(c)}
        if split is not None:
            i, j = split(word)
            entry["iexp"] = {str(s): n for s, n in i.items()}
            entry["jexp"] = {str(s): n for s, n in j.items()}
        else:
            entry["word"] = [str(g) for g in word]
        out.append(entry)
    return out


def vector_from_json(module, obj: list[dict]) -> ModuleVector:
    alg = module.algebra
    if not isinstance(obj, list) or not all(isinstance(e, dict) for e in obj):
        raise ValueError("a module vector is a JSON list of term objects")
    acc: dict = {}
    for entry in obj:
        if "word" in entry:
            gens = [parse_gen(s, alg) for s in entry["word"]]
        else:
            exps = ExponentVector({int(s): int(n) for s, n in entry.get("iexp", {}).items()})
            exps = exps + ExponentVector({int(s): int(n) for s, n in entry.get("jexp", {}).items()})
            # a PBW monomial: put the letters in the module's normal order
            gens = sorted((Gen("L", m) for m in exps.word()), key=module.free_key)
        bkey = key_from_json(entry.get("key", module.base_cyclic_key()), alg)
        v = module.vector(tuple(gens), bkey, scalar_from_json(entry.get("coeff", "1"), alg.p))
        for k, c in v.items():
            acc[k] = acc.get(k, 0) + c
    return ModuleVector(acc)


def _sort_key(k: Any):
    try:
        return (0, Fraction(k), "")
    except (TypeError, ValueError, ZeroDivisionError):
        return (1, Fraction(0), str(k))


def jsonable(obj: Any) -> Any:
    """Convert results to plain JSON values with a deterministic key order.

    Numeric-looking keys are ordered by value, all others as strings.
    """
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, (Fraction, Cyclo)):
        return scalar_json(obj)
    if isinstance(obj, Gen):
        return str(obj)
    if isinstance(obj, LieElement):
        return str(obj)
    if isinstance(obj, UeaElement):
        return str(obj)
    if isinstance(obj, ExponentVector):
        return {str(s): n for s, n in obj.items()}
    if isinstance(obj, ModuleVector):
        return [{"key": key_json(k), "coeff": scalar_json(c)}
                for k, c in sorted(obj.items(), key=lambda kv: repr(kv[0]))]
    if isinstance(obj, dict):
        pairs = [(_key_text(k), jsonable(v)) for k, v in obj.items()]
        pairs.sort(key=lambda kv: _sort_key(kv[0]))
        return dict(pairs)
    if isinstance(obj, (set, frozenset)):
        return [jsonable(x) for x in sorted(obj, key=_sort_key)]
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if is_dataclass(obj):
        return jsonable({f.name: getattr(obj, f.name) for f in fields(obj)})
    return str(obj)


def _key_text(k: Any) -> str:
    if isinstance(k, Fraction):
        return format_rational(k)
    if isinstance(k, tuple):
        return ",".join(_key_text(x) for x in k)
    return str(k)


def dumps(obj: Any, pretty: bool = False) -> str:
    return json.dumps(jsonable(obj), indent=2 if pretty else None,
                      separators=None if pretty else (",", ":"), ensure_ascii=False)
