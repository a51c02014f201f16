"""Second-order difference operators on the uniform grid.

An operator acts as ``f -> a_plus f(x+1) + a_minus f(x-1) + a_zero f(x)``
with rational-function coefficients.  The three operators X, Y, Z and their
images under the reflection symmetry (x -> N - x, alpha -> beta + 2 - alpha,
with the two shifts exchanged) are built here, together with their delta-basis
matrices and the checks of the pole-raising property.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    CoefficientPoleOnGrid,
    DimensionMismatch,
    InvalidParams,
    IrrationalPole,
    NotProper,
    SpanViolation,
    ZeroDenominator,
)
from .kernel import Poly, RatFun, partial_fractions
from .matrix import ExactMatrix
from .params import Params
from .report import VerificationReport, timed

x = Poly.x()
GridFun = tuple  # tuple of N+1 Fractions indexed by x = 0..N

FAMILIES = ("X", "Y", "Z")


@dataclass(frozen=True)
class DiffOp:
    a_plus: RatFun
    a_minus: RatFun
    a_zero: RatFun
    family: str = "?"
    params: Params | None = None
    tilded: bool = False

    @property
    def name(self) -> str:
        return ("~" if self.tilded else "") + self.family

    def same_coefficients(self, other: DiffOp) -> bool:
        return (self.a_plus, self.a_minus, self.a_zero) == (other.a_plus, other.a_minus, other.a_zero)

    def check_boundary(self, N: int) -> None:
        """Raise unless the operator maps functions on 0..N into themselves."""
        for coeff, where, label in ((self.a_minus, 0, "a_minus"), (self.a_plus, N, "a_plus")):
            try:
                ok = coeff(where) == 0
            except ZeroDenominator:
                ok = False
            if not ok:
                raise InvalidParams(f"{self.name}: {label} does not vanish at x={where}")


def y_coefficients(p: Params) -> tuple[Poly, Poly, Poly]:
    """(A1, A2, A0) for Y: the T+, T- and identity coefficients."""
    a, b, N = p.alpha, p.beta, p.N
    xa = x - a
    A1 = xa * (x - N) * (x + 1 - a)
    A2 = x * xa * (x + b - a - N)
    A0 = xa * Poly((-N * (a - 1), 2 * a - 1 + 2 * N - b, -2))
    return A1, A2, A0


def _build(family: str, p: Params) -> DiffOp:
    a = p.alpha
    if family == "X":
        op = DiffOp(RatFun.const(0), RatFun(-x), RatFun(x - a), "X", p)
    elif family == "Z":
        op = DiffOp(RatFun.const(0), RatFun(x, x - a), RatFun.const(-1), "Z", p)
    elif family == "Y":
        A1, A2, A0 = y_coefficients(p)
        op = DiffOp(RatFun(A1), RatFun(A2), RatFun(A0), "Y", p)
    else:
        raise ValueError(f"unknown operator family {family!r}")
    return op


def _reflect_swap(op: DiffOp, N: int) -> tuple[RatFun, RatFun, RatFun]:
    return op.a_minus.reflect(N), op.a_plus.reflect(N), op.a_zero.reflect(N)


def make_operator(family: str, p: Params, tilded: bool = False) -> DiffOp:
    op = _build(family, p)
    if tilded:
        op = make_tilde(op, p)
    else:
        op.check_boundary(p.N)
    return op


def make_X(p: Params) -> DiffOp:
    return make_operator("X", p)


def make_Y(p: Params) -> DiffOp:
    return make_operator("Y", p)


def make_Z(p: Params) -> DiffOp:
    return make_operator("Z", p)


def make_tilde(op: DiffOp, p: Params | None = None) -> DiffOp:
    """Image of ``op`` under the reflection symmetry.

    The coefficients of ``op`` are regarded as functions of (x, alpha):
    the operator is rebuilt at alpha' = beta + 2 - alpha, then x -> N - x is
    substituted and the T+ / T- coefficients are exchanged.  Applying this
    twice returns the original coefficients.
    """
    p = p or op.params
    if p is None:
        raise InvalidParams("make_tilde needs the instance parameters")
    # the same kind of operator, rebuilt at the reflected alpha
    source = make_operator(op.family, p.reflected(), tilded=op.tilded)
    a_plus, a_minus, a_zero = _reflect_swap(source, p.N)
    out = DiffOp(a_plus, a_minus, a_zero, op.family, p, not op.tilded)
    out.check_boundary(p.N)
    return out


def coeff_at(coeff: RatFun, x0) -> Fraction:
    try:
        return coeff(x0)
    except ZeroDenominator:
        raise CoefficientPoleOnGrid(f"coefficient {coeff} has a pole at grid point {x0}") from None


def apply_grid(op: DiffOp, f: Sequence, p: Params) -> GridFun:
    """Apply ``op`` to a grid function on 0..N.

    Neighbours outside the grid are never read: the boundary invariant makes
    the corresponding coefficient vanish there.
    """
    N = p.N
    if len(f) != N + 1:
        raise DimensionMismatch(f"grid function has {len(f)} values, expected {N + 1}")
    out = []
    for xi in range(N + 1):
        v = coeff_at(op.a_zero, xi) * f[xi]
        if xi > 0:
            c = coeff_at(op.a_minus, xi)
            if c:
                v += c * f[xi - 1]
        if xi < N:
            c = coeff_at(op.a_plus, xi)
            if c:
                v += c * f[xi + 1]
        out.append(v)
    return tuple(out)


def apply_ratfun(op: DiffOp, f: RatFun) -> RatFun:
    """Symbolic action on a rational function, shifts done by composition."""
    out = op.a_zero * f
    if not op.a_plus.is_zero():
        out = out + op.a_plus * f.shift(1)
    if not op.a_minus.is_zero():
        out = out + op.a_minus * f.shift(-1)
    return out


def delta(k: int, N: int) -> GridFun:
    return tuple(Fraction(int(i == k)) for i in range(N + 1))


def matrix_in_e_basis(op: DiffOp, p: Params) -> ExactMatrix:
    cols = [apply_grid(op, delta(k, p.N), p) for k in range(p.N + 1)]
    return ExactMatrix.from_columns(cols, "delta")


def pole_ladder(alpha, top: int) -> list[Fraction]:
    """``[alpha, alpha+1, ..., alpha+top]``."""
    return [alpha + k for k in range(top + 1)]


def verify_heun_raising(op: DiffOp, alpha, n_max: int) -> VerificationReport:
    """Check that ``op`` sends ``1/(x - alpha - n)`` into the span of
    ``1, 1/(x - alpha), ..., 1/(x - alpha - n - 1)`` for every ``n <= n_max``.

    The report's details hold the expansion (constant and residues) per n.
    """
    report = VerificationReport(f"heun_raising[{op.name}]", op.params)
    alpha = Fraction(alpha)
    expansions = {}
    with timed(report):
        for n in range(n_max + 1):
            image = apply_ratfun(op, RatFun.simple_pole(alpha + n))
            try:
                pf = partial_fractions(image, pole_ladder(alpha, n + 1))
            except (IrrationalPole, NotProper) as exc:
                err = SpanViolation(n, str(image.den), str(exc))
                report.fail(n=n, stray=str(image.den), reason=str(err))
                break
            expansions[n] = {"constant": pf.constant, "residues": [list(r) for r in pf.residues]}
    report.details["expansions"] = expansions
    return report


def kappa_residues(p: Params, n: int) -> tuple[Fraction, Fraction, Fraction]:
    """Residues of ``Y (x - alpha - n)^{-1}`` at alpha+n-1, alpha+n, alpha+n+1.

    A pole that cancels (alpha - 1 at n = 0, alpha at n = 1) gets residue 0;
    the raw decomposition is used and no shape is forced.
    """
    a = p.alpha
    image = apply_ratfun(make_Y(p), RatFun.simple_pole(a + n))
    pf = partial_fractions(image, [a + n - 1, a + n, a + n + 1])
    return pf.residue_at(a + n - 1), pf.residue_at(a + n), pf.residue_at(a + n + 1)


def y_monomial_constant(p: Params, n: int) -> Fraction:
    a = p.alpha
    image = apply_ratfun(make_Y(p), RatFun.simple_pole(a + n))
    return partial_fractions(image, [a + n - 1, a + n, a + n + 1]).constant


def _fourth_differences(values: Sequence[Fraction]) -> list[Fraction]:
    d = list(values)
    for _ in range(4):
        d = [b - a for a, b in zip(d, d[1:])]
    return d


def verify_kappa_cubic(p: Params, n_top: int = 6) -> VerificationReport:
    """Each residue sequence n -> kappa_n^{(i)} is a cubic in n.

    Evaluated for n = 0..n_top; a sequence is cubic iff all its fourth
    differences vanish.
    """
    report = VerificationReport("kappa_cubic", p)
    with timed(report):
        table = [kappa_residues(p, n) for n in range(n_top + 1)]
        for i in range(3):
            seq = [row[i] for row in table]
            diffs = _fourth_differences(seq)
            if any(diffs):
                report.fail(residue=i + 1, values=seq, fourth_differences=diffs)
        report.details["kappa"] = table
    return report
