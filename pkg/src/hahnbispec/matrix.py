"""Dense square matrices over the rationals."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, SingularBasisMatrix
from .kernel import as_scalar


class ExactMatrix:
    """Immutable matrix of Fractions, row-major.

    ``basis`` is a free-form tag (``"delta"``, ``"phi"``, ``"U"``...) naming
    the basis the matrix realizes an operator in.  It is carried along for
    reporting and ignored by equality.
    """

    __slots__ = ("rows", "basis")

    def __init__(self, rows: Iterable[Iterable], basis: str = "delta"):
        self.rows: tuple[tuple[Fraction, ...], ...] = tuple(
            tuple(as_scalar(v) for v in row) for row in rows
        )
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise DimensionMismatch("ragged rows")
        self.basis = basis

    @classmethod
    def zeros(cls, n: int, m: int | None = None, basis: str = "delta") -> ExactMatrix:
        m = n if m is None else m
        return cls([[0] * m for _ in range(n)], basis)

    @classmethod
    def identity(cls, n: int, basis: str = "delta") -> ExactMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], basis)

    @classmethod
    def diag(cls, values: Sequence, basis: str = "delta") -> ExactMatrix:
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], basis)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], basis: str = "delta") -> ExactMatrix:
        if not cols:
            return cls([], basis)
        return cls([[col[i] for col in cols] for i in range(len(cols[0]))], basis)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(zip(*self.rows), self.basis)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(v) for v in r) + "]" for r in self.rows)
        return f"ExactMatrix([{body}], basis={self.basis!r})"

    def _check_same(self, other: ExactMatrix):
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")

    def __add__(self, other):
        if isinstance(other, ExactMatrix):
            self._check_same(other)
            return ExactMatrix(
                [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.basis
            )
        return self + ExactMatrix.identity(self.shape[0], self.basis) * other

    __radd__ = __add__

    def __neg__(self):
        return ExactMatrix([[-a for a in r] for r in self.rows], self.basis)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ExactMatrix):
            return self @ other
        c = as_scalar(other)
        return ExactMatrix([[c * a for a in r] for r in self.rows], self.basis)

    def __rmul__(self, other):
        c = as_scalar(other)
        return ExactMatrix([[c * a for a in r] for r in self.rows], self.basis)

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            nz = [(i, a) for i, a in enumerate(r) if a]
            out.append([sum((a * c[i] for i, a in nz), Fraction(0)) for c in cols])
        return ExactMatrix(out, self.basis)

    def __pow__(self, k: int) -> ExactMatrix:
        result = ExactMatrix.identity(self.shape[0], self.basis)
        for _ in range(k):
            result = result @ self
        return result

    def apply(self, vec: Sequence) -> tuple[Fraction, ...]:
        if len(vec) != self.shape[1]:
            raise DimensionMismatch(f"vector of length {len(vec)} for {self.shape} matrix")
        return tuple(sum((a * v for a, v in zip(r, vec) if a), Fraction(0)) for r in self.rows)

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.rows for a in r)

    def scalar_value(self) -> Fraction | None:
        """The c with ``self == c*I``, or None if the matrix is not scalar."""
        n, m = self.shape
        if n != m or n == 0:
            return None
        c = self.rows[0][0]
        for i, r in enumerate(self.rows):
            for j, a in enumerate(r):
                if a != (c if i == j else 0):
                    return None
        return c

    def bandwidth(self) -> tuple[int, int]:
        """(lower, upper) number of nonzero off-diagonals."""
        lo = hi = 0
        for i, r in enumerate(self.rows):
            for j, a in enumerate(r):
                if a:
                    lo = max(lo, i - j)
                    hi = max(hi, j - i)
        return lo, hi

    def tolist(self) -> list[list[str]]:
        return [[str(a) for a in r] for r in self.rows]

    def with_basis(self, basis: str) -> ExactMatrix:
        return ExactMatrix(self.rows, basis)


def commutator(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return a @ b - b @ a


def anticommutator(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return a @ b + b @ a


def solve(a: ExactMatrix, rhs: ExactMatrix) -> ExactMatrix:
    """Solve ``a @ sol = rhs`` exactly by Gauss-Jordan elimination.

    Pivots are chosen by nonzero test only; over the rationals there is
    nothing to gain from magnitude pivoting.
    """
    n, m = a.shape
    if n != m:
        raise DimensionMismatch("solve needs a square matrix")
    if rhs.shape[0] != n:
        raise DimensionMismatch(f"rhs has {rhs.shape[0]} rows, expected {n}")
    k = rhs.shape[1]
    aug = [list(ra) + list(rb) for ra, rb in zip(a.rows, rhs.rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularBasisMatrix(f"no pivot in column {col}")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        prow = [v * inv for v in aug[col]]
        aug[col] = prow
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [v - f * pv for v, pv in zip(aug[r], prow)]
    return ExactMatrix([row[n:n + k] for row in aug], rhs.basis)


def solve_vector(a: ExactMatrix, b: Sequence) -> tuple[Fraction, ...]:
    sol = solve(a, ExactMatrix([[v] for v in b]))
    return sol.column(0)
