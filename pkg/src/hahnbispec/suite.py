"""Full verification sweep and exact object emission."""
from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import algebra, bases, bispectral, operators
from .errors import DegenerateDenominator, HahnError, UnknownSelector
from .params import Params, draw_many
from .report import ERROR, VerificationReport, timed, to_jsonable

log = logging.getLogger(__name__)

HEUN_N_MAX = 6


class ConfigError(ValueError):
    pass


@dataclass
class SuiteConfig:
    N_list: list[int] = field(default_factory=lambda: [1, 2, 3])
    param_draws: int = 3
    explicit_params: list[tuple[Fraction, Fraction]] = field(default_factory=list)
    seed: int = 0
    force: bool = False
    output_path: str | None = None
    format: str = "json"
    checks: list[str] | None = None

    def validate(self) -> None:
        if not self.N_list or any(not isinstance(n, int) or n < 1 for n in self.N_list):
            raise ConfigError(f"N_list must hold positive integers, got {self.N_list!r}")
        if self.param_draws < 0 or (self.param_draws == 0 and not self.explicit_params):
            raise ConfigError("need param_draws >= 1 or explicit parameters")
        if self.format not in ("json", "csv"):
            raise ConfigError(f"unknown format {self.format!r}")
        unknown = set(self.checks or ()) - set(CHECKS)
        if unknown:
            raise ConfigError(f"unknown checks: {sorted(unknown)}")
        for N in self.N_list:
            for a, b in self.explicit_params:
                try:
                    Params(a, b, N, force=self.force)
                except HahnError as exc:
                    raise ConfigError(str(exc)) from None

    def parameter_sets(self) -> list[Params]:
        out = []
        for N in self.N_list:
            out.extend(Params(a, b, N, force=self.force) for a, b in self.explicit_params)
            if self.param_draws and not self.explicit_params:
                out.extend(draw_many(self.seed, N, self.param_draws))
        return out


def _heun(p: Params) -> list[VerificationReport]:
    return [
        operators.verify_heun_raising(operators.make_operator(f, p), p.alpha, HEUN_N_MAX)
        for f in operators.FAMILIES
    ]


CHECKS: dict[str, Callable[[Params], VerificationReport | list[VerificationReport]]] = {
    "heun_raising": _heun,
    "kappa_cubic": operators.verify_kappa_cubic,
    "factorization": bispectral.verify_factorization,
    "dual_route_U": bases.verify_dual_route,
    "shift_relations": bispectral.verify_shift_relations,
    "weight": bases.verify_weight,
    "biorthogonality": bases.verify_biorthogonality,
    "matrix_realizations": bispectral.verify_matrix_realizations,
    "difference_equation": bispectral.verify_difference_equation,
    "recurrence_relation": bispectral.verify_recurrence_relation,
    "adjoint_identity": bispectral.verify_adjoint_identity,
    "RH_relations": algebra.verify_RH_relations,
    "casimir": algebra.verify_casimir,
    "potential": algebra.verify_potential,
    "tilde_algebra": algebra.verify_tilde_algebra,
}


def run_check(name: str, p: Params) -> list[VerificationReport]:
    """Run one named check, turning library errors into error reports."""
    fn = CHECKS[name]
    report = VerificationReport(name, p)
    with timed(report):
        try:
            out = fn(p)
        except (HahnError, ZeroDivisionError) as exc:
            report.status = ERROR
            report.counterexample = {"error": type(exc).__name__, "message": str(exc)}
            return [report]
    return out if isinstance(out, list) else [out]


def run_suite(cfg: SuiteConfig) -> dict:
    cfg.validate()
    names = cfg.checks or list(CHECKS)
    reports: list[VerificationReport] = []
    for p in cfg.parameter_sets():
        for name in names:
            for r in run_check(name, p):
                log.info("%s %s %s", r.check_id, p, r.status)
                reports.append(r)
    reports.sort(key=lambda r: (r.check_id, r.params.sort_key() if r.params else ()))
    return {
        "seed": cfg.seed,
        "all_passed": all(r.passed for r in reports),
        "checks": reports,
    }


def report_document(result: dict, timing: bool = True) -> dict:
    return {
        "seed": result["seed"],
        "all_passed": result["all_passed"],
        "checks": [r.to_dict(timing=timing) for r in result["checks"]],
    }


# -- emission -------------------------------------------------------------

EMIT_KINDS = ("matrix", "function", "weight", "coefficients", "report")


def emit_object(kind: str, selector: dict, p: Params):
    """Build the exact object named by ``kind`` and ``selector``.

    matrix:       op in X/Y/Z/calY, basis in delta/phi/U, closed (bool)
    function:     fn in U/V/phi, n
    weight:       (no selector)
    coefficients: family in lambda/nu/mu/xi
    """
    if kind == "matrix":
        op = selector.get("op", "X")
        basis = selector.get("basis", "delta")
        if op == "calY":
            return bispectral.calY_matrix(p)
        if op not in operators.FAMILIES or basis not in ("delta", "phi", "U"):
            raise UnknownSelector(f"matrix {op} in basis {basis}")
        if selector.get("closed") and basis != "delta":
            closed = bispectral.closed_phi_matrix if basis == "phi" else bispectral.closed_U_matrix
            return closed(op, p)
        return bispectral.matrix_in_basis(op, basis, p)
    if kind == "function":
        fn, n = selector.get("fn", "U"), int(selector.get("n", 0))
        if fn == "U":
            return bases.build_U_series(n, p).fun
        if fn == "V":
            return bases.build_V(n, p).fun
        if fn == "phi":
            return bases.phi(n, p.alpha, p.N).fun
        raise UnknownSelector(f"function {fn}")
    if kind == "weight":
        return bases.weight(p).values
    if kind == "coefficients":
        return coefficient_table(selector.get("family", "lambda"), p)
    raise UnknownSelector(f"kind {kind}")


def coefficient_table(family: str, p: Params):
    """Closed-form coefficients for n = 0..N.

    Entries whose formula has a vanishing denominator at that n (possible
    only for forced parameters) come out as None.
    """
    if family == "xi":
        xi = algebra.xi_params(p)
        return {f"xi{i}": getattr(xi, f"xi{i}") for i in range(5)}
    fns = {
        "lambda": bispectral.lam,
        "nu": lambda n, q: list(bispectral.nu_coeffs(n, q)),
        "mu": lambda n, q: list(bispectral.mu_coeffs(n, q)),
    }
    if family not in fns:
        raise UnknownSelector(f"coefficient family {family}")
    out = []
    for n in range(p.N + 1):
        try:
            out.append(fns[family](n, p))
        except (DegenerateDenominator, ZeroDivisionError):
            out.append(None)
    return out


def render(obj, fmt: str = "json") -> str:
    """Serialize an exact object; rationals become ``"p/q"`` strings."""
    data = to_jsonable(obj)
    if fmt == "json":
        return json.dumps(data, sort_keys=False) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if isinstance(data, dict) and "checks" in data:
        writer.writerow(["check_id", "alpha", "beta", "N", "status", "elapsed_us", "counterexample"])
        for c in data["checks"]:
            prm = c["params"] or {}
            writer.writerow([c["check_id"], prm.get("alpha"), prm.get("beta"), prm.get("N"),
                             c["status"], c.get("elapsed_us", ""),
                             json.dumps(c["counterexample"]) if c["counterexample"] else ""])
    elif isinstance(data, dict) and set(data) == {"num", "den"}:
        writer.writerow(["num", *data["num"]])
        writer.writerow(["den", *data["den"]])
    elif isinstance(data, dict):
        for k, v in data.items():
            writer.writerow([k, v if isinstance(v, (str, type(None))) else json.dumps(v)])
    elif data and isinstance(data[0], list):
        writer.writerows(data)
    else:
        writer.writerow(data)
    return buf.getvalue()
