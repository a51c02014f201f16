"""Exact arithmetic substrate.

Scalars are :class:`fractions.Fraction`.  On top of them this module provides
dense univariate polynomials, reduced rational functions with a canonical
(monic denominator) form, simple-pole partial fractions, Pochhammer symbols
and terminating hypergeometric sums.  Nothing here ever touches a float.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from .errors import (
    IrrationalPole,
    NotProper,
    RepeatedPole,
    ZeroBottomPochhammer,
    ZeroDenominator,
)

Scalar = Fraction


def as_scalar(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: an exact library must not silently round.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def pochhammer(a, n: int):
    """Rising factorial ``a (a+1) ... (a+n-1)``; 1 for ``n == 0``.

    ``a`` may be a scalar or anything supporting ``+ int`` and ``*`` (a
    :class:`Poly` for instance).
    """
    if n < 0:
        raise ValueError("pochhammer index must be nonnegative")
    result = Fraction(1) if not isinstance(a, Poly) else Poly.one()
    for i in range(n):
        result = result * (a + i)
    return result


def hyp_sum_terminating(top: Sequence, bottom: Sequence, upper_index: int) -> Fraction:
    r"""Sum ``sum_{k=0}^{upper_index} prod (top_i)_k / (prod (bottom_j)_k k!)``.

    The truncation index is explicit so callers decide where the series
    stops (a vanishing top parameter does not move it).

    Raises
    ------
    ZeroBottomPochhammer
        If some ``(bottom_j)_k`` vanishes for ``k <= upper_index``.
    """
    top = [as_scalar(t) for t in top]
    bottom = [as_scalar(b) for b in bottom]
    for b in bottom:
        # (b)_k == 0 iff b is one of 0, -1, ..., -(k-1)
        if b.denominator == 1 and -upper_index < b <= 0:
            raise ZeroBottomPochhammer(f"bottom parameter {b} vanishes before k={upper_index}")
    total = Fraction(0)
    term = Fraction(1)
    for k in range(upper_index + 1):
        total += term
        if k == upper_index:
            break
        num = Fraction(1)
        for t in top:
            num *= t + k
        den = Fraction(k + 1)
        for b in bottom:
            den *= b + k
        term = term * num / den
    return total


class Poly:
    """Dense polynomial in one variable over the rationals.

    ``coeffs`` are stored lowest degree first with no trailing zeros; the
    zero polynomial has an empty tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_scalar(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def one(cls) -> Poly:
        return cls((1,))

    @classmethod
    def x(cls) -> Poly:
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> Poly:
        return cls((c,))

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> Poly:
        p = cls.const(lead)
        for r in roots:
            p = p * cls((-as_scalar(r), 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x0):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x0 + c
        return acc

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(reversed(parts))

    @staticmethod
    def _coerce(other) -> Poly:
        if isinstance(other, Poly):
            return other
        return Poly.const(other)

    def __add__(self, other):
        if isinstance(other, RatFun):
            return NotImplemented
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([ai + (b[i] if i < len(b) else 0) for i, ai in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, RatFun):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, RatFun):
            return NotImplemented
        if not isinstance(other, Poly):
            c = as_scalar(other)
            return Poly([c * a for a in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Poly.one()
        for _ in range(k):
            result = result * self
        return result

    def __divmod__(self, other: Poly):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDenominator("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lead
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] / lead
            if c == 0:
                continue
            quot[i - dq] = c
            for j, b in enumerate(other.coeffs):
                rem[i - dq + j] -= c * b
        return Poly(quot), Poly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self * (1 / self.lead)

    def derivative(self) -> Poly:
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def compose_linear(self, a, b) -> Poly:
        """Return ``p(a*x + b)``."""
        lin = Poly((b, a))
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * lin + c
        return acc

    def shift(self, c) -> Poly:
        """Return ``p(x + c)``."""
        return self.compose_linear(1, c)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm; ``gcd(0, 0) = 0``."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


X = Poly.x()


class RatFun:
    """Reduced quotient ``num/den`` of polynomials with monic ``den``.

    Construction always reduces, so two RatFuns are equal iff their
    numerators and denominators are equal coefficient-wise.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _reduced: bool = False):
        num = Poly._coerce(num) if not isinstance(num, Poly) else num
        den = Poly.one() if den is None else (den if isinstance(den, Poly) else Poly.const(den))
        if den.is_zero():
            raise ZeroDenominator("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = Poly.one()
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num, den = num // g, den // g
                lead = den.lead
                if lead != 1:
                    num, den = num * (1 / lead), den * (1 / lead)
        self.num: Poly = num
        self.den: Poly = den

    @classmethod
    def const(cls, c) -> RatFun:
        return cls(Poly.const(c), _reduced=True)

    @classmethod
    def x(cls) -> RatFun:
        return cls(Poly.x(), _reduced=True)

    @classmethod
    def simple_pole(cls, pole) -> RatFun:
        """``1/(x - pole)``."""
        return cls(Poly.one(), Poly((-as_scalar(pole), 1)), _reduced=True)

    def __repr__(self):
        return f"RatFun(({self.num}) / ({self.den}))"

    def __str__(self):
        if self.den == Poly.one():
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __eq__(self, other):
        if isinstance(other, RatFun):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (Poly, int, Fraction)):
            return self == RatFun(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    @staticmethod
    def _coerce(other) -> RatFun:
        if isinstance(other, RatFun):
            return other
        if isinstance(other, Poly):
            return RatFun(other, _reduced=True)
        return RatFun.const(as_scalar(other))

    def __add__(self, other):
        other = self._coerce(other)
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDenominator("division by the zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __call__(self, x0) -> Fraction:
        x0 = as_scalar(x0)
        d = self.den(x0)
        if d == 0:
            raise ZeroDenominator(f"pole at x = {x0}")
        return self.num(x0) / d

    def compose_linear(self, a, b) -> RatFun:
        """Return ``f(a*x + b)``."""
        return RatFun(self.num.compose_linear(a, b), self.den.compose_linear(a, b))

    def shift(self, c) -> RatFun:
        """Return ``f(x + c)``."""
        return self.compose_linear(1, c)

    def reflect(self, n) -> RatFun:
        """Return ``f(n - x)``."""
        return self.compose_linear(-1, n)

    def vanishes_at(self, x0) -> bool:
        return self.num(as_scalar(x0)) == 0


def ratfun_reduce(num: Poly, den: Poly) -> RatFun:
    if den.is_zero():
        raise ZeroDenominator("zero denominator")
    return RatFun(num, den)


@dataclass(frozen=True)
class PartialFractions:
    """``constant + sum residue/(x - pole)`` with distinct simple poles."""

    constant: Fraction
    residues: tuple[tuple[Fraction, Fraction], ...]

    @property
    def poles(self) -> tuple[Fraction, ...]:
        return tuple(p for p, _ in self.residues)

    def residue_at(self, pole) -> Fraction:
        pole = as_scalar(pole)
        for p, r in self.residues:
            if p == pole:
                return r
        return Fraction(0)

    def to_ratfun(self) -> RatFun:
        out = RatFun.const(self.constant)
        for pole, res in self.residues:
            out = out + RatFun.simple_pole(pole) * res
        return out


def partial_fractions(f: RatFun, candidates: Iterable) -> PartialFractions:
    """Decompose a proper-or-balanced ``f`` over a supplied pole ladder.

    Every root of ``f.den`` must be a simple root found in ``candidates``;
    anything else is reported rather than factored.  Residues use
    ``num(a) / den'(a)``.
    """
    num, den = f.num, f.den
    if num.degree > den.degree:
        raise NotProper(f"numerator degree {num.degree} exceeds denominator degree {den.degree}")
    constant = num.lead / den.lead if num.degree == den.degree and not num.is_zero() else Fraction(0)
    dprime = den.derivative()
    rest = den
    residues = []
    for cand in dict.fromkeys(as_scalar(c) for c in candidates):
        if den(cand) != 0:
            continue
        if dprime(cand) == 0:
            raise RepeatedPole(f"repeated pole at {cand}")
        residues.append((cand, num(cand) / dprime(cand)))
        rest = rest // Poly((-cand, 1))
    if rest.degree > 0:
        raise IrrationalPole(f"denominator factor {rest} has no root among the candidates")
    residues.sort()
    return PartialFractions(constant, tuple(residues))

