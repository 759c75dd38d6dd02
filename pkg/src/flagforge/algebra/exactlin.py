"""Exact rational linear algebra.

Everything here works on ``fractions.Fraction`` and plain Python integers;
no floating point is involved. Matrices are lists of rows.

Positive semidefiniteness is certified two ways: structurally, through the
``R diag(q') R^T`` form of a ``PSDBlock`` with positive ``q'``, and by an
exact LDL^T factorization with symmetric pivoting.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from flagforge.errors import DomainError

Rational = Fraction
Number = Fraction | int
RationalVector = list[Fraction]
RationalMatrix = list[list[Fraction]]
MatrixLike = Sequence[Sequence[Number]]


# ── Rationals ────────────────────────────────────────────────────────


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Read ``"p/q"`` or ``"p"``; decimal points and floats are rejected."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        msg = f"Not a rational: {text!r}"
        raise DomainError(msg)
    body = text.strip()
    numerator, sep, denominator = body.partition("/")
    valid = _is_integer(numerator) and (not sep or denominator.strip().isdigit())
    if not valid:
        msg = f"Not a rational 'p/q' string: {text!r}"
        raise DomainError(msg)
    try:
        return Fraction(int(numerator), int(denominator) if sep else 1)
    except ZeroDivisionError:
        msg = f"Zero denominator in {text!r}"
        raise DomainError(msg) from None


def _is_integer(text: str) -> bool:
    text = text.strip()
    return text.lstrip("+-").isdigit() and text.count("-") + text.count("+") <= 1


def format_rational(value: Number) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# ── Basic operations ────────────────────────────────────────────────


def zero_matrix(rows: int, cols: int | None = None) -> RationalMatrix:
    cols = rows if cols is None else cols
    return [[Fraction(0)] * cols for _ in range(rows)]


def _shape(matrix: MatrixLike) -> tuple[int, int]:
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    if any(len(row) != cols for row in matrix):
        msg = "Ragged matrix rows"
        raise DomainError(msg)
    return rows, cols


def _require_square(matrix: MatrixLike) -> int:
    rows, cols = _shape(matrix)
    if rows != cols:
        msg = f"Expected a square matrix, got {rows}x{cols}"
        raise DomainError(msg)
    return rows


def is_symmetric(matrix: MatrixLike) -> bool:
    n = _require_square(matrix)
    return all(matrix[i][j] == matrix[j][i] for i in range(n) for j in range(i))


def mat_vec(matrix: MatrixLike, vector: Sequence[Number]) -> RationalVector:
    _, cols = _shape(matrix)
    if cols != len(vector) and matrix:
        msg = f"Dimension mismatch: {cols} columns vs vector of length {len(vector)}"
        raise DomainError(msg)
    return [
        sum((Fraction(a) * b for a, b in zip(row, vector)), Fraction(0))
        for row in matrix
    ]


def dot(a: Sequence[Number], b: Sequence[Number]) -> Fraction:
    if len(a) != len(b):
        msg = f"Dimension mismatch: {len(a)} vs {len(b)}"
        raise DomainError(msg)
    return sum((Fraction(x) * y for x, y in zip(a, b)), Fraction(0))


def frobenius(a: MatrixLike, b: MatrixLike) -> Fraction:
    """Entrywise inner product <A, B>."""
    if _shape(a) != _shape(b):
        msg = f"Shape mismatch: {_shape(a)} vs {_shape(b)}"
        raise DomainError(msg)
    return sum(
        (Fraction(x) * y for row_a, row_b in zip(a, b) for x, y in zip(row_a, row_b)),
        Fraction(0),
    )


# ── PSD blocks ──────────────────────────────────────────────────────


@dataclass(frozen=True)
class PSDBlock:
    """Q = R diag(q') R^T with R a g x d rational matrix and q' > 0."""

    r_matrix: tuple[tuple[Fraction, ...], ...]
    qdash: tuple[Fraction, ...]
    dimension: int = field(default=-1)

    def __post_init__(self) -> None:
        if self.dimension < 0:
            object.__setattr__(self, "dimension", len(self.r_matrix))
        if len(self.r_matrix) != self.dimension:
            msg = (
                f"R has {len(self.r_matrix)} rows, "
                f"block dimension is {self.dimension}"
            )
            raise DomainError(msg)
        d = len(self.qdash)
        for i, row in enumerate(self.r_matrix):
            if len(row) != d:
                msg = f"R row {i} has {len(row)} columns, q' has {d} entries"
                raise DomainError(msg)
        for i, q in enumerate(self.qdash):
            if q <= 0:
                msg = f"q' entry {i} is {q}, must be strictly positive"
                raise DomainError(msg)

    @classmethod
    def build(
        cls,
        r_matrix: Sequence[Sequence[Number | str]],
        qdash: Sequence[Number | str],
        dimension: int | None = None,
    ) -> PSDBlock:
        rows = tuple(tuple(parse_rational(x) for x in row) for row in r_matrix)
        qs = tuple(parse_rational(q) for q in qdash)
        return cls(rows, qs, len(rows) if dimension is None else dimension)

    @classmethod
    def zero(cls, dimension: int) -> PSDBlock:
        return cls(((),) * dimension, (), dimension)

    @property
    def rank_bound(self) -> int:
        return len(self.qdash)

    def scaled(self, factor: Number) -> PSDBlock:
        qs = tuple(q * factor for q in self.qdash)
        return PSDBlock(self.r_matrix, qs, self.dimension)


def assemble(block: PSDBlock) -> RationalMatrix:
    """The exact product R diag(q') R^T."""
    g = block.dimension
    weighted = [[r * q for r, q in zip(row, block.qdash)] for row in block.r_matrix]
    result = zero_matrix(g)
    for i in range(g):
        for j in range(i, g):
            value = sum(
                (a * b for a, b in zip(weighted[i], block.r_matrix[j])), Fraction(0)
            )
            result[i][j] = result[j][i] = value
    return result


# ── Elimination ─────────────────────────────────────────────────────


def _integer_rows(matrix: MatrixLike) -> list[list[int]]:
    rows = []
    for row in matrix:
        fractions = [Fraction(x) for x in row]
        scale = lcm(1, *(x.denominator for x in fractions))
        rows.append([int(x * scale) for x in fractions])
    return rows


def rank(matrix: MatrixLike) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    rows, cols = _shape(matrix)
    a = _integer_rows(matrix)
    r = 0
    previous = 1
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        head = a[r]
        for i in range(r + 1, rows):
            row = a[i]
            factor = row[c]
            for j in range(c + 1, cols):
                row[j] = (row[j] * head[c] - factor * head[j]) // previous
            row[c] = 0
        previous = head[c]
        r += 1
        if r == rows:
            break
    return r


def row_echelon(matrix: MatrixLike) -> tuple[RationalMatrix, list[int]]:
    """Reduced row echelon form and pivot columns.

    Each pivot row is normalized as soon as it is chosen.
    """
    rows, cols = _shape(matrix)
    a = [[Fraction(x) for x in row] for row in matrix]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        lead = a[r][c]
        a[r] = [x / lead for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                factor = a[i][c]
                a[i] = [x - factor * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a[:r], pivots


def null_space(matrix: MatrixLike, cols: int | None = None) -> list[RationalVector]:
    """Basis of {x : M x = 0}; ``cols`` gives the width of an empty matrix."""
    if matrix:
        _, width = _shape(matrix)
    else:
        width = cols or 0
    reduced, pivots = row_echelon(matrix) if matrix else ([], [])
    pivot_set = set(pivots)
    basis = []
    for free in range(width):
        if free in pivot_set:
            continue
        vector = [Fraction(0)] * width
        vector[free] = Fraction(1)
        for row, p in zip(reduced, pivots):
            vector[p] = -row[free]
        basis.append(vector)
    return basis


def kernel_basis(matrix: MatrixLike) -> list[RationalVector]:
    """Null-space basis of a square matrix; empty iff the matrix is nonsingular."""
    n = _require_square(matrix)
    return null_space(matrix, n)


def in_kernel(matrix: MatrixLike, vector: Sequence[Number]) -> bool:
    return all(x == 0 for x in mat_vec(matrix, vector))


# ── LDL^T ───────────────────────────────────────────────────────────


@dataclass
class LdlFactor:
    """M ~ sum_j pivots[j] * columns[j] columns[j]^T with symmetric pivoting.

    ``remainder`` is the Schur complement left when no positive diagonal
    pivot remains; it is zero exactly when M is PSD.
    """

    columns: list[RationalVector]
    pivots: list[Fraction]
    order: list[int]
    remainder: dict[tuple[int, int], Fraction]

    @property
    def residual(self) -> Fraction:
        return max((abs(x) for x in self.remainder.values()), default=Fraction(0))

    @property
    def is_psd(self) -> bool:
        return not self.remainder


def ldl_factor(matrix: MatrixLike) -> LdlFactor:
    """Exact LDL^T taking the largest remaining diagonal entry as pivot."""
    n = _require_square(matrix)
    if not is_symmetric(matrix):
        msg = "LDL^T requires a symmetric matrix"
        raise DomainError(msg)
    s = [[Fraction(x) for x in row] for row in matrix]
    active = list(range(n))
    columns: list[RationalVector] = []
    pivots: list[Fraction] = []
    order: list[int] = []
    while active:
        k = max(active, key=lambda i: s[i][i])
        p = s[k][k]
        if p <= 0:
            break
        column = [Fraction(0)] * n
        for i in active:
            column[i] = s[i][k] / p
        active.remove(k)
        for i in active:
            if column[i] == 0:
                continue
            ci = column[i] * p
            for j in active:
                if column[j] != 0:
                    s[i][j] -= ci * column[j]
        columns.append(column)
        pivots.append(p)
        order.append(k)
    remainder = {(i, j): s[i][j] for i in active for j in active if s[i][j] != 0}
    return LdlFactor(columns, pivots, order, remainder)


def check_psd(matrix: MatrixLike) -> bool:
    """Whether a symmetric rational matrix is positive semidefinite.

    Raises:
        DomainError: for non-square or asymmetric input.
    """
    return ldl_factor(matrix).is_psd


def factor_to_block(factor: LdlFactor, dimension: int) -> PSDBlock:
    """Turn the positive part of an LDL^T factorization into a PSDBlock."""
    rows = tuple(
        tuple(column[i] for column in factor.columns) for i in range(dimension)
    )
    return PSDBlock(rows, tuple(factor.pivots), dimension)
