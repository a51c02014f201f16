"""The quadratic algebra generated by X, Y, Z.

Relations and the Casimir element are held as noncommutative polynomials
(:class:`NCPoly`) and evaluated on exact matrix realizations.  The potential
lives in the space of cyclic words (:class:`CyclicPoly`); its cyclic
derivatives are compared with the relations at the free-algebra level,
without consulting any matrices.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .bispectral import matrix_in_basis
from .kernel import as_scalar
from .matrix import ExactMatrix, anticommutator, commutator  # noqa: F401  (re-exported)
from .operators import FAMILIES, make_operator, make_tilde, matrix_in_e_basis
from .params import Params
from .report import VerificationReport, timed

Word = tuple[str, ...]
GENERATORS = ("X", "Y", "Z")


class NCPoly:
    """Finite combination of words in the generators; ``()`` is the identity."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, object] | None = None):
        clean = {}
        for word, c in (terms or {}).items():
            c = as_scalar(c)
            if c:
                clean[tuple(word)] = clean.get(tuple(word), Fraction(0)) + c
        self.terms: dict[Word, Fraction] = {w: c for w, c in clean.items() if c}

    @classmethod
    def gen(cls, name: str) -> NCPoly:
        return cls({(name,): 1})

    @classmethod
    def identity(cls) -> NCPoly:
        return cls({(): 1})

    @classmethod
    def word(cls, letters: str, coeff=1) -> NCPoly:
        return cls({tuple(letters): coeff})

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        other = _nc(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return NCPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_nc(other))

    def __rsub__(self, other):
        return _nc(other) - self

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            c = as_scalar(other)
            return NCPoly({w: c * v for w, v in self.terms.items()})
        out: dict[Word, Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, Fraction(0)) + c1 * c2
        return NCPoly(out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        out = NCPoly.identity()
        for _ in range(k):
            out = out * self
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])):
            mono = "".join(w) or "I"
            parts.append(f"{c}*{mono}" if c != 1 else mono)
        return " + ".join(parts)

    __repr__ = __str__

    def scalar_multiple_of(self, other: NCPoly) -> Fraction | None:
        """The c with ``self == c * other`` (other nonzero), else None."""
        if other.is_zero():
            return None
        w0, c0 = next(iter(other.terms.items()))
        c = self.terms.get(w0, Fraction(0)) / c0
        return c if self == other * c else None

    def evaluate(self, gens: Mapping[str, ExactMatrix]) -> ExactMatrix:
        """Substitute matrices for the generators."""
        n = next(iter(gens.values())).shape[0]
        ident = ExactMatrix.identity(n)
        cache: dict[Word, ExactMatrix] = {(): ident}

        def word_value(w: Word) -> ExactMatrix:
            if w not in cache:
                cache[w] = word_value(w[:-1]) @ gens[w[-1]]
            return cache[w]

        acc = ExactMatrix.zeros(n)
        for w, c in self.terms.items():
            acc = acc + word_value(w) * c
        return acc


def _nc(value) -> NCPoly:
    if isinstance(value, NCPoly):
        return value
    return NCPoly.identity() * value


def nc_commutator(a: NCPoly, b: NCPoly) -> NCPoly:
    return a * b - b * a


def nc_anticommutator(a: NCPoly, b: NCPoly) -> NCPoly:
    return a * b + b * a


def canonical_rotation(word: Iterable[str]) -> Word:
    w = tuple(word)
    if not w:
        return w
    return min(w[i:] + w[:i] for i in range(len(w)))


class CyclicPoly:
    """Combination of cyclic words, each keyed by its least rotation."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Iterable[str], object] | None = None):
        out: dict[Word, Fraction] = {}
        for w, c in (terms or {}).items():
            key = canonical_rotation(w)
            out[key] = out.get(key, Fraction(0)) + as_scalar(c)
        self.terms = {w: c for w, c in out.items() if c}

    def __add__(self, other: CyclicPoly) -> CyclicPoly:
        merged = dict(self.terms)
        for w, c in other.terms.items():
            merged[w] = merged.get(w, Fraction(0)) + c
        return CyclicPoly(merged)

    def __mul__(self, c) -> CyclicPoly:
        c = as_scalar(c)
        return CyclicPoly({w: c * v for w, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, CyclicPoly):
            return NotImplemented
        return self.terms == other.terms

    def __str__(self):
        return " + ".join(f"{c}*[{''.join(w)}]" for w, c in sorted(self.terms.items())) or "0"


def cyc(letters: str, coeff=1) -> CyclicPoly:
    return CyclicPoly({tuple(letters): coeff})


def cyclic_derivative(phi: CyclicPoly, generator: str) -> NCPoly:
    """For each occurrence of ``generator`` in a cyclic word, cut the word
    open there and read the remaining letters starting just after it."""
    out: dict[Word, Fraction] = {}
    for w, c in phi.terms.items():
        for s, letter in enumerate(w):
            if letter == generator:
                rest = w[s + 1:] + w[:s]
                out[rest] = out.get(rest, Fraction(0)) + c
    return NCPoly(out)


@dataclass(frozen=True)
class XiParams:
    xi0: Fraction
    xi1: Fraction
    xi2: Fraction
    xi3: Fraction
    xi4: Fraction

    def as_dict(self) -> dict:
        return {f"xi{i}": str(getattr(self, f"xi{i}")) for i in range(5)}


def xi_params(p: Params) -> XiParams:
    a, b, N = p.alpha, p.beta, p.N
    return XiParams(
        xi0=a * (a - b),
        xi1=N - b,
        xi2=1 + a * (1 + N - b),
        xi3=a + (a + 1) * (N - b),
        xi4=4 * a - 2 * b - 1,
    )


def relation_polys(xi: XiParams) -> dict[str, NCPoly]:
    """Each defining relation as ``lhs - rhs`` (zero in the algebra)."""
    X, Y, Z = (NCPoly.gen(g) for g in GENERATORS)
    I = NCPoly.identity()
    ac = nc_anticommutator
    return {
        "ZX": nc_commutator(Z, X) - (Z * Z + Z),
        "XY": nc_commutator(X, Y) - (
            (X * X + Z * Z) * xi.xi1 + ac(X, Z) + ac(Y, Z) + X * xi.xi2 + Z * xi.xi3 + Y + I * xi.xi0
        ),
        "YZ": nc_commutator(Y, Z) - (
            X * X * 3 + Z * Z + ac(X, Z) * xi.xi1 + X * xi.xi4 + Z * xi.xi2 + I * xi.xi0
        ),
    }


def casimir_poly(xi: XiParams) -> NCPoly:
    X, Y, Z = (NCPoly.gen(g) for g in GENERATORS)
    ac = nc_anticommutator
    half = Fraction(1, 2)
    return (
        X ** 3 + Z ** 3 * xi.xi1 + ac(X * X, Z) * (xi.xi1 / 2) + ac(X, Z * Z) * 2
        + ac(Y, Z * Z) * half + X * X * (xi.xi4 / 2) + Z * Z * ((xi.xi1 + xi.xi3 + xi.xi4) / 2)
        + ac(X, Z) * ((xi.xi2 + 3) / 2) + ac(Y, Z) * half
        + X * (xi.xi0 + half) + Z * (xi.xi0 + xi.xi4 / 2)
    )


def casimir_value(p: Params) -> Fraction:
    return p.alpha * (p.beta - p.alpha) / 2


def potential(xi: XiParams) -> CyclicPoly:
    terms = [
        cyc("XYZ"), cyc("YXZ", -1), cyc("XXX", -1), cyc("XXZ", -xi.xi1), cyc("XZZ", -1),
        cyc("YZZ", -1), cyc("ZZZ", -xi.xi1 / 3), cyc("XX", -xi.xi4 / 2), cyc("XZ", -xi.xi2),
        cyc("YZ", -1), cyc("ZZ", -xi.xi3 / 2), cyc("X", -xi.xi0), cyc("Z", -xi.xi0),
    ]
    out = CyclicPoly()
    for t in terms:
        out = out + t
    return out


def realization(p: Params, basis: str = "delta") -> dict[str, ExactMatrix]:
    return {f: matrix_in_basis(f, basis, p) for f in FAMILIES}


def tilde_realization(p: Params) -> dict[str, ExactMatrix]:
    return {f: matrix_in_e_basis(make_tilde(make_operator(f, p)), p) for f in FAMILIES}


def relation_residuals(gens: Mapping[str, ExactMatrix], xi: XiParams) -> dict[str, ExactMatrix]:
    return {name: poly.evaluate(gens) for name, poly in relation_polys(xi).items()}


def verify_RH_relations(p: Params, basis: str = "delta") -> VerificationReport:
    report = VerificationReport(f"RH_relations[{basis}]", p)
    with timed(report):
        gens = realization(p, basis)
        for name, res in relation_residuals(gens, xi_params(p)).items():
            if not res.is_zero():
                report.fail(relation=name, residual=res)
    return report


def casimir_matrix(p: Params, basis: str = "delta") -> ExactMatrix:
    return casimir_poly(xi_params(p)).evaluate(realization(p, basis))


def verify_casimir(p: Params) -> VerificationReport:
    report = VerificationReport("casimir", p)
    with timed(report):
        q = casimir_matrix(p)
        target = casimir_value(p)
        residual = q - ExactMatrix.identity(p.N + 1) * target
        if not residual.is_zero():
            report.fail(expected=target, residual=residual)
        gens = realization(p)
        for name, m in gens.items():
            if not commutator(q, m).is_zero():
                report.fail(reason=f"Q does not commute with {name}")
        report.details["value"] = q.scalar_value()
    return report


# which cyclic derivative produces which relation
POTENTIAL_PAIRING = {"Y": "ZX", "Z": "XY", "X": "YZ"}


def verify_potential(p: Params) -> VerificationReport:
    """Cyclic derivatives of the potential reproduce the relations up to an
    overall scalar each (recorded in ``details['scalars']``)."""
    report = VerificationReport("potential", p)
    with timed(report):
        xi = xi_params(p)
        phi = potential(xi)
        rels = relation_polys(xi)
        scalars = {}
        for gen, rel_name in POTENTIAL_PAIRING.items():
            d = cyclic_derivative(phi, gen)
            s = d.scalar_multiple_of(rels[rel_name])
            scalars[rel_name] = s
            if s is None or s == 0:
                report.fail(generator=gen, relation=rel_name, derivative=str(d),
                            relation_poly=str(rels[rel_name]))
        report.details["scalars"] = scalars
    return report


def tilde_candidates(p: Params) -> dict[str, Fraction]:
    return {
        "alpha-beta-2": p.alpha - p.beta - 2,
        "beta+2-alpha": p.beta + 2 - p.alpha,
    }


def verify_tilde_algebra(p: Params) -> VerificationReport:
    """Test the reflected operators against the relations under each
    candidate replacement of alpha in the xi parameters.

    The status only reflects the parameter-free relation ZX, which must
    hold whatever the substitution; which candidates satisfy the remaining
    relations is the content of ``details``.
    """
    report = VerificationReport("tilde_algebra", p)
    with timed(report):
        gens = tilde_realization(p)
        n = p.N + 1
        outcome = {}
        for label, a_sub in tilde_candidates(p).items():
            q = p.with_alpha(a_sub, force=True)
            res = relation_residuals(gens, xi_params(q))
            cas = casimir_poly(xi_params(q)).evaluate(gens)
            outcome[label] = {
                "alpha": a_sub,
                "relations": {k: v.is_zero() for k, v in res.items()},
                "all_pass": all(v.is_zero() for v in res.values()),
                "casimir_scalar": cas.scalar_value(),
                "casimir_expected": casimir_value(q),
                "casimir_matches": cas == ExactMatrix.identity(n) * casimir_value(q),
            }
        zx = relation_polys(xi_params(p))["ZX"].evaluate(gens)
        if not zx.is_zero():
            report.fail(relation="ZX", residual=zx)
        report.details["candidates"] = outcome
        report.details["satisfying"] = [k for k, v in outcome.items() if v["all_pass"]]
    return report
