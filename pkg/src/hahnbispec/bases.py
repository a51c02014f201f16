"""Bases of the grid space: delta, Pochhammer ratios phi_n, the rational
functions U_n and their partners V_n, plus the weight and scalar product."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

from .errors import (
    DimensionMismatch,
    InvalidIndex,
    InvalidParams,
    PoleOnGrid,
    ZeroDenominator,
)
from .kernel import PartialFractions, Poly, RatFun, partial_fractions, pochhammer
from .matrix import ExactMatrix, solve, solve_vector
from .params import Params
from .report import VerificationReport, timed

x = Poly.x()
BASES = ("delta", "phi", "U", "V")


def _check_index(n: int, N: int | None) -> None:
    if n < 0 or (N is not None and n > N):
        raise InvalidIndex(f"index {n} outside 0..{N}")


@dataclass(frozen=True)
class PhiBasisElement:
    n: int
    alpha: Fraction
    fun: RatFun


@dataclass(frozen=True)
class RationalU:
    n: int
    params: Params
    fun: RatFun
    pfrac: PartialFractions
    coefficients: tuple[Fraction, ...]  # C_{n,k}, k = 0..N, in the phi basis


@dataclass(frozen=True)
class RationalV:
    n: int
    params: Params
    fun: RatFun


@dataclass(frozen=True)
class Weight:
    values: tuple[Fraction, ...]
    params: Params


@lru_cache(maxsize=None)
def phi(n: int, alpha, N: int | None = None) -> PhiBasisElement:
    """``(-x)_n / (alpha - x)_n``."""
    _check_index(n, N)
    alpha = Fraction(alpha)
    fun = RatFun(pochhammer(-x, n), pochhammer(alpha - x, n))
    return PhiBasisElement(n, alpha, fun)


def leading_coefficient(n: int, p: Params) -> Fraction:
    """C_{n,0}, fixed so that U_n tends to 1 at infinity."""
    return (-1) ** n * pochhammer(Fraction(-p.N), n) / pochhammer(p.beta + 1, n)


def series_coefficients(n: int, p: Params) -> tuple[Fraction, ...]:
    """C_{n,k} for k = 0..N from the closed hypergeometric form."""
    N, b = p.N, p.beta
    c0 = leading_coefficient(n, p)
    return tuple(
        c0 * pochhammer(Fraction(-n), k) * pochhammer(b + n - N, k)
        / (factorial(k) * pochhammer(Fraction(-N), k))
        for k in range(N + 1)
    )


def recurrence_coefficients(n: int, p: Params) -> tuple[Fraction, ...]:
    """C_{n,k} by iterating the two-term recurrence from C_{n,0}."""
    N, b = p.N, p.beta
    lam = n * (N - b - n)
    coeffs = [leading_coefficient(n, p)]
    for k in range(N):
        coeffs.append((lam - k * (N - b - k)) * coeffs[k] / ((k + 1) * (k - N)))
    return tuple(coeffs)


def _pole_candidates(p: Params, n: int) -> list[Fraction]:
    return [p.alpha + k for k in range(n)]


def _check(n: int, p: Params) -> None:
    _check_index(n, p.N)
    if not p.force and not p.is_generic:
        raise InvalidParams("; ".join(p.genericity_violations()))


@lru_cache(maxsize=None)
def build_U_series(n: int, p: Params) -> RationalU:
    """U_n from the terminating 3F2 series, summed over a common denominator.

    The sum runs over k = 0..N (not just 0..n) so the n = N case keeps its
    full [N/N] shape before reduction.
    """
    _check(n, p)
    N, a = p.N, p.alpha
    coeffs = series_coefficients(n, p)
    num = Poly()
    for k, c in enumerate(coeffs):
        if c:
            num = num + pochhammer(-x, k) * pochhammer(a - x + k, N - k) * c
    fun = RatFun(num, pochhammer(a - x, N))
    return RationalU(n, p, fun, partial_fractions(fun, _pole_candidates(p, n)), coeffs)


@lru_cache(maxsize=None)
def build_U_recurrence(n: int, p: Params) -> RationalU:
    _check(n, p)
    coeffs = recurrence_coefficients(n, p)
    fun = RatFun.const(0)
    for k, c in enumerate(coeffs):
        if c:
            fun = fun + phi(k, p.alpha).fun * c
    return RationalU(n, p, fun, partial_fractions(fun, _pole_candidates(p, n)), coeffs)


def V_poles(n: int, p: Params) -> list[Fraction]:
    base = p.N + p.alpha - p.beta - 2
    return [base - k for k in range(n)]


@lru_cache(maxsize=None)
def build_V(n: int, p: Params) -> RationalV:
    """``V_n(x) = U_n(N - x; beta + 2 - alpha, beta, N)``."""
    _check(n, p)
    u = build_U_series(n, p.reflected())
    return RationalV(n, p, u.fun.reflect(p.N))


@lru_cache(maxsize=None)
def weight(p: Params) -> Weight:
    a, b, N = p.alpha, p.beta, p.N
    try:
        pref = pochhammer(b - a - N + 2, N) / pochhammer(b - N + 1, N)
        values = tuple(
            pref * pochhammer(Fraction(-N), k) * pochhammer(1 - a, k)
            / (factorial(k) * pochhammer(b - a - N + 2, k))
            for k in range(N + 1)
        )
    except ZeroDivisionError as exc:
        raise InvalidParams(f"weight undefined at {p}: {exc}") from None
    return Weight(values, p)


def on_grid(f: RatFun, N: int) -> tuple[Fraction, ...]:
    try:
        return tuple(f(k) for k in range(N + 1))
    except ZeroDenominator as exc:
        raise PoleOnGrid(str(exc)) from None


def inner_product(f: Sequence, g: Sequence, w: Weight) -> Fraction:
    if not (len(f) == len(g) == len(w.values)):
        raise DimensionMismatch(f"lengths {len(f)}, {len(g)}, {len(w.values)}")
    return sum((wx * fx * gx for wx, fx, gx in zip(w.values, f, g)), Fraction(0))


def basis_function(basis: str, k: int, p: Params) -> RatFun | None:
    """Rational function of the k-th basis element (None for delta)."""
    if basis == "delta":
        return None
    if basis == "phi":
        return phi(k, p.alpha, p.N).fun
    if basis == "U":
        return build_U_series(k, p).fun
    if basis == "V":
        return build_V(k, p).fun
    raise ValueError(f"unknown basis {basis!r}")


@lru_cache(maxsize=None)
def basis_matrix(basis: str, p: Params) -> ExactMatrix:
    """Columns are the basis functions sampled on the grid."""
    N = p.N
    if basis == "delta":
        return ExactMatrix.identity(N + 1)
    cols = [on_grid(basis_function(basis, k, p), N) for k in range(N + 1)]
    return ExactMatrix.from_columns(cols, basis)


def expand_in_basis(f: Sequence, basis: str, p: Params) -> tuple[Fraction, ...]:
    """Coefficients c with ``f = sum c_k b_k`` on the grid."""
    if len(f) != p.N + 1:
        raise DimensionMismatch(f"grid function has {len(f)} values, expected {p.N + 1}")
    return solve_vector(basis_matrix(basis, p), f)


def expand_columns(cols: Sequence[Sequence], basis: str, p: Params) -> ExactMatrix:
    """Expand several grid functions at once; result columns are coefficients."""
    rhs = ExactMatrix.from_columns(cols)
    return solve(basis_matrix(basis, p), rhs).with_basis(basis)


def gram_matrix(p: Params) -> ExactMatrix:
    """Entry (n, m) is the weighted pairing of U_n with V_m."""
    w = weight(p)
    N = p.N
    us = [on_grid(build_U_series(n, p).fun, N) for n in range(N + 1)]
    vs = [on_grid(build_V(m, p).fun, N) for m in range(N + 1)]
    return ExactMatrix([[inner_product(u, v, w) for v in vs] for u in us])


def verify_biorthogonality(p: Params) -> VerificationReport:
    """Off-diagonal pairings vanish; diagonal values are reported only."""
    report = VerificationReport("biorthogonality", p)
    with timed(report):
        g = gram_matrix(p)
        N = p.N
        for n in range(N + 1):
            for m in range(N + 1):
                if n != m and g[n, m] != 0:
                    report.fail(n=n, m=m, value=g[n, m])
        diag = [g[n, n] for n in range(N + 1)]
        report.details["diagonal"] = diag
        report.details["vanishing_diagonal"] = [n for n, d in enumerate(diag) if d == 0]
    return report


def verify_weight(p: Params) -> VerificationReport:
    """Normalization and invariance under the reflection symmetry."""
    report = VerificationReport("weight", p)
    with timed(report):
        w = weight(p).values
        total = sum(w, Fraction(0))
        if total != 1:
            report.fail(reason="sum", total=total)
        wr = weight(p.reflected()).values
        for k in range(p.N + 1):
            if wr[p.N - k] != w[k]:
                report.fail(reason="symmetry", x=k, value=w[k], reflected=wr[p.N - k])
        report.details["values"] = w
    return report


def verify_dual_route(p: Params) -> VerificationReport:
    """Series and recurrence constructions of every U_n agree exactly."""
    report = VerificationReport("dual_route_U", p)
    with timed(report):
        for n in range(p.N + 1):
            s, r = build_U_series(n, p), build_U_recurrence(n, p)
            if s.fun != r.fun:
                report.fail(n=n, series=s.fun, recurrence=r.fun)
            if s.coefficients != r.coefficients:
                report.fail(n=n, series_coefficients=s.coefficients,
                            recurrence_coefficients=r.coefficients)
            if s.pfrac.constant != 1:
                report.fail(n=n, constant=s.pfrac.constant)
    return report


def clear_caches() -> None:
    """Drop memoized basis data (used for cold timings)."""
    for fn in (phi, build_U_series, build_U_recurrence, build_V, weight, basis_matrix):
        fn.cache_clear()
