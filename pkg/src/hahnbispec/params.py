"""The parameter triple (alpha, beta, N) and reproducible generic draws."""
from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .errors import InvalidParams
from .kernel import as_scalar


def _is_integer(q: Fraction) -> bool:
    return q.denominator == 1


@dataclass(frozen=True)
class Params:
    """Parameters of one instance.

    Unless ``force`` is set, construction enforces genericity: alpha, beta
    and beta - alpha are all non-integers.  That keeps every denominator
    used by the library (pole ladders, weight, mu/nu coefficients,
    eigenvalue gaps) away from zero on the grid 0..N.
    """

    alpha: Fraction
    beta: Fraction
    N: int
    force: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_scalar(self.alpha))
        object.__setattr__(self, "beta", as_scalar(self.beta))
        if isinstance(self.N, bool) or not isinstance(self.N, int) or self.N < 1:
            raise InvalidParams(f"N must be a positive integer, got {self.N!r}")
        if not self.force:
            problems = self.genericity_violations()
            if problems:
                raise InvalidParams("; ".join(problems))

    def genericity_violations(self) -> list[str]:
        out = []
        if _is_integer(self.alpha):
            out.append(f"alpha={self.alpha} is an integer")
        if _is_integer(self.beta):
            out.append(f"beta={self.beta} is an integer")
        if _is_integer(self.beta - self.alpha):
            out.append(f"beta-alpha={self.beta - self.alpha} is an integer")
        return out

    @property
    def is_generic(self) -> bool:
        return not self.genericity_violations()

    def with_alpha(self, alpha, force: bool | None = None) -> Params:
        return replace(self, alpha=as_scalar(alpha), force=self.force if force is None else force)

    def reflected(self) -> Params:
        """Parameters seen through the symmetry alpha -> beta + 2 - alpha."""
        return self.with_alpha(self.beta + 2 - self.alpha)

    def as_dict(self) -> dict:
        return {"alpha": str(self.alpha), "beta": str(self.beta), "N": self.N}

    def sort_key(self):
        return (self.N, self.alpha, self.beta)

    def __str__(self):
        return f"(alpha={self.alpha}, beta={self.beta}, N={self.N})"


def draw_params(rng: random.Random, N: int, *, max_num: int = 9, max_den: int = 7) -> Params:
    """Rejection-sample a generic parameter pair with small numerators/denominators."""
    while True:
        alpha = Fraction(rng.randint(-max_num, max_num), rng.randint(2, max_den))
        beta = Fraction(rng.randint(-max_num, max_num), rng.randint(2, max_den))
        p = Params(alpha, beta, N, force=True)
        if p.is_generic:
            return Params(alpha, beta, N)


def draw_many(seed: int, N: int, count: int) -> list[Params]:
    rng = random.Random(f"{seed}:{N}")
    return [draw_params(rng, N) for _ in range(count)]
