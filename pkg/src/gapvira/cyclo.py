"""Exact arithmetic in the cyclotomic field Q(xi_p).

Scalars throughout the package are either :class:`fractions.Fraction` (the
rational subfield) or :class:`Cyclo` for elements with an irrational part.
Every operation on a :class:`Cyclo` demotes its result to ``Fraction`` when
the result is rational, so rational computations never pay for the field
structure and ``==``/``hash`` agree across the two representations.

Elements are stored in the power basis ``1, xi, ..., xi^(D-1)`` modulo the
p-th cyclotomic polynomial, where ``D = phi(p)``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Scalar = Union[Fraction, "Cyclo"]


@lru_cache(maxsize=None)
def cyclotomic_coeffs(p: int) -> tuple[int, ...]:
    """Integer coefficients of the p-th cyclotomic polynomial, low degree first."""
    from sympy import Poly, Symbol, cyclotomic_poly

    x = Symbol("x")
    return tuple(int(c) for c in reversed(Poly(cyclotomic_poly(p, x), x).all_coeffs()))


class CycloField:
    """The field Q(xi_p); one shared instance per ``p`` (see :func:`field`)."""

    def __init__(self, p: int):
        if p < 1:
            raise ValueError(f"p must be positive, got {p}")
        self.p = p
        mod = cyclotomic_coeffs(p)
        self.degree = len(mod) - 1
        # x^k mod Phi_p for D <= k <= 2D-2, used to fold products back
        d = self.degree
        tail = [Fraction(-c) for c in mod[:-1]]  # x^D = -sum c_i x^i
        self._fold: list[list[Fraction]] = []
        cur = tail[:]
        for _ in range(max(d - 1, 0)):
            self._fold.append(cur)
            nxt = [Fraction(0)] + cur[:-1]
            top = cur[-1]
            if top:
                nxt = [a + top * b for a, b in zip(nxt, tail)]
            cur = nxt
        self._fold.append(cur)

    def __repr__(self) -> str:
        return f"CycloField({self.p})"

    def __reduce__(self):
        return (field, (self.p,))

    # construction -----------------------------------------------------
    def element(self, coeffs: Sequence) -> Scalar:
        """Build an element from power-basis coefficients (any length; reduced)."""
        c = [Fraction(x) for x in coeffs]
        if len(c) > self.degree:
            c = self._reduce(c)
        c += [Fraction(0)] * (self.degree - len(c))
        return self._make(c)

    def xi_power(self, k: int) -> Scalar:
        k %= self.p
        c = [Fraction(0)] * (k + 1)
        c[k] = Fraction(1)
        return self.element(c)

    @property
    def xi(self) -> Scalar:
        return self.xi_power(1)

    def coeffs(self, x) -> tuple[Fraction, ...]:
        """Power-basis coefficient vector of length ``degree`` for any scalar."""
        if isinstance(x, Cyclo):
            if x.field is not self:
                raise ValueError(f"scalar lives in {x.field!r}, not {self!r}")
            return x.c
        return (Fraction(x),) + (Fraction(0),) * (self.degree - 1)

    # internals --------------------------------------------------------
    def _make(self, c: list[Fraction]) -> Scalar:
        if not any(c[1:]):
            return c[0]
        return Cyclo(self, tuple(c))

    def _reduce(self, c: list[Fraction]) -> list[Fraction]:
        d = self.degree
        while len(c) > 2 * d - 1:
            # fold highest coefficient using x^D relation repeatedly
            top = c.pop()
            shift = len(c) - d
            for i, t in enumerate(self._fold[0]):
                c[shift + i] += top * t
        out = c[:d]
        for k in range(d, len(c)):
            if c[k]:
                row = self._fold[k - d]
                for i in range(d):
                    out[i] += c[k] * row[i]
        return out

    def mul(self, a: tuple, b: tuple) -> Scalar:
        d = self.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return self._make(self._reduce(prod))

    def inv(self, a: tuple) -> Scalar:
        from .linalg import solve_square

        d = self.degree
        # column j of the multiplication matrix is a * xi^j
        cols = []
        for j in range(d):
            e = [Fraction(0)] * d
            e[j] = Fraction(1)
            cols.append(self.coeffs(self.mul(a, tuple(e))))
        rows = [[cols[j][i] for j in range(d)] for i in range(d)]
        rhs = [Fraction(1)] + [Fraction(0)] * (d - 1)
        return self._make(solve_square(rows, rhs))


@lru_cache(maxsize=None)
def field(p: int) -> CycloField:
    return CycloField(p)


class Cyclo:
    """An element of Q(xi_p) with nonzero irrational part."""

    __slots__ = ("field", "c")

    def __init__(self, fld: CycloField, c: tuple):
        self.field = fld
        self.c = c

    def __reduce__(self):
        return (_rebuild, (self.field.p, self.c))

    def _coerce(self, other):
        if isinstance(other, Cyclo):
            if other.field is not self.field:
                raise ValueError("cannot mix scalars from different cyclotomic fields")
            return other.c
        if isinstance(other, (int, Fraction)):
            return (Fraction(other),) + (Fraction(0),) * (self.field.degree - 1)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.field._make([a + b for a, b in zip(self.c, o)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.field, tuple(-a for a in self.c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.field._make([a - b for a, b in zip(self.c, o)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Fraction(0)
            return Cyclo(self.field, tuple(a * other for a in self.c))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.field.mul(self.c, o)

    __rmul__ = __mul__

    def inverse(self):
        return self.field.inv(self.c)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero in Q(xi_p)")
            return Cyclo(self.field, tuple(a / other for a in self.c))
        if isinstance(other, Cyclo):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result: Scalar = Fraction(1)
        base: Scalar = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Cyclo):
            return self.field is other.field and self.c == other.c
        return False  # a Cyclo is never rational

    def __hash__(self):
        return hash((self.field.p, self.c))

    def __bool__(self):
        return True

    def __repr__(self):
        return f"Cyclo(p={self.field.p}, {format_scalar(self)})"


def _rebuild(p, c):
    return Cyclo(field(p), c)


def is_rational(x) -> bool:
    return not isinstance(x, Cyclo)


def inverse(x) -> Scalar:
    if isinstance(x, Cyclo):
        return x.inverse()
    if not x:
        raise ZeroDivisionError("division by zero")
    return 1 / Fraction(x)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    """Render a scalar; irrational values as ``a + b*xi^1 + ...`` (no brackets)."""
    if not isinstance(x, Cyclo):
        return format_rational(x)
    parts: list[str] = []
    for k, a in enumerate(x.c):
        if not a:
            continue
        if k == 0:
            body = format_rational(abs(a))
        elif abs(a) == 1:
            body = f"xi^{k}"
        else:
            body = f"{format_rational(abs(a))}*xi^{k}"
        if not parts:
            parts.append(body if a > 0 else "-" + body)
        else:
            parts.append(("+ " if a > 0 else "- ") + body)
    return " ".join(parts)


def scalar_sum(values: Iterable) -> Scalar:
    total: Scalar = Fraction(0)
    for v in values:
        total = total + v
    return total
