"""Verification reports and exact serialization helpers."""
from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .kernel import Poly, RatFun
from .matrix import ExactMatrix
from .params import Params

PASS = "pass"
FAIL = "fail"
ERROR = "error"


@dataclass
class VerificationReport:
    """Outcome of one check on one parameter instance.

    Truthiness is the pass/fail status, so ``assert verify_x(p)`` works.
    A failing report always carries a counterexample payload.
    """

    check_id: str
    params: Params | None
    status: str = PASS
    counterexample: dict | None = None
    elapsed: float = 0.0
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status != PASS and self.counterexample is None:
            raise ValueError("a non-passing report needs a counterexample")

    def __bool__(self):
        return self.status == PASS

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def fail(self, **payload) -> VerificationReport:
        """Mark failed with ``payload`` unless already failed (keeps the first)."""
        if self.status == PASS:
            self.status = FAIL
            self.counterexample = to_jsonable(payload)
        return self

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "check_id": self.check_id,
            "params": self.params.as_dict() if self.params is not None else None,
            "status": self.status,
            "counterexample": self.counterexample,
            "details": to_jsonable(self.details),
        }
        if timing:
            # integer microseconds keep the payload float-free
            out["elapsed_us"] = int(self.elapsed * 1e6)
        return out


@contextmanager
def timed(report: VerificationReport):
    start = time.perf_counter()
    try:
        yield report
    finally:
        report.elapsed = time.perf_counter() - start


def to_jsonable(obj: Any) -> Any:
    """Recursively convert exact objects to JSON-safe structures.

    Fractions become ``"p/q"`` (or ``"p"``) strings, matrices become nested
    lists, rational functions become ``{"num": [...], "den": [...]}``.
    """
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, int):
        return obj
    if isinstance(obj, ExactMatrix):
        return obj.tolist()
    if isinstance(obj, RatFun):
        return {"num": [str(c) for c in obj.num.coeffs], "den": [str(c) for c in obj.den.coeffs]}
    if isinstance(obj, Poly):
        return [str(c) for c in obj.coeffs]
    if isinstance(obj, Params):
        return obj.as_dict()
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, float):
        raise TypeError("floats are not allowed in exact payloads")
    return str(obj)


def parse_scalar(s: str) -> Fraction:
    return Fraction(s)


def parse_vector(data) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in data)


def parse_matrix(data, basis: str = "delta") -> ExactMatrix:
    return ExactMatrix([[Fraction(v) for v in row] for row in data], basis)


def parse_ratfun(data) -> RatFun:
    return RatFun(Poly(Fraction(c) for c in data["num"]), Poly(Fraction(c) for c in data["den"]))
