"""Exact rational linear algebra.

Matrices are immutable and hold :class:`fractions.Fraction` entries. Ring
arithmetic is done here; elimination-heavy work (rank, kernels, inverses,
determinants, characteristic polynomials) is delegated to sympy's
``DomainMatrix`` over ``QQ``.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from sympy import QQ, Poly, Rational, Symbol
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from .errors import (
    DimensionMismatchError,
    EigenvaluesNotRationalError,
    InvariantViolationError,
    NotNilpotentError,
    SingularMatrixError,
)

_LOGGER = logging.getLogger(__name__)

Rat = Fraction
Vector = tuple[Fraction, ...]

_T = Symbol("t")


def to_rat(value: int | str | Fraction) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


@dataclass(frozen=True)
class QMat:
    """Dense rows x cols matrix, entries stored row-major."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0 or len(self.entries) != self.rows * self.cols:
            raise DimensionMismatchError(f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries")

    # Construction

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int | str | Fraction]]) -> QMat:
        if not rows:
            raise DimensionMismatchError("matrix needs at least one row")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise DimensionMismatchError("ragged rows")
        return cls(len(rows), width, tuple(to_rat(v) for row in rows for v in row))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> QMat:
        cols = rows if cols is None else cols
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> QMat:
        return cls.scalar(n, Fraction(1))

    @classmethod
    def scalar(cls, n: int, value: Fraction) -> QMat:
        zero = Fraction(0)
        return cls(n, n, tuple(value if i == j else zero for i in range(n) for j in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Fraction]]) -> QMat:
        return cls.from_rows(columns).transpose()

    @classmethod
    def from_function(cls, rows: int, cols: int, entry) -> QMat:
        return cls(rows, cols, tuple(to_rat(entry(i, j)) for i in range(rows) for j in range(cols)))

    # Access

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def transpose(self) -> QMat:
        return QMat(self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def block(self, row0: int, col0: int, rows: int, cols: int) -> QMat:
        return QMat(rows, cols, tuple(self[row0 + i, col0 + j] for i in range(rows) for j in range(cols)))

    def trace(self) -> Fraction:
        self._require_square("trace")
        return sum((self[i, i] for i in range(self.rows)), Fraction(0))

    # Ring operations

    def _require_same_shape(self, other: QMat) -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError(f"{self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def _require_square(self, what: str) -> None:
        if not self.is_square:
            raise DimensionMismatchError(f"{what} needs a square matrix, got {self.rows}x{self.cols}")

    def __add__(self, other: QMat) -> QMat:
        self._require_same_shape(other)
        return QMat(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: QMat) -> QMat:
        self._require_same_shape(other)
        return QMat(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> QMat:
        return QMat(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, factor: int | Fraction) -> QMat:
        factor = to_rat(factor)
        return QMat(self.rows, self.cols, tuple(factor * a for a in self.entries))

    def __rmul__(self, factor: int | Fraction) -> QMat:
        return self.scale(factor)

    def __matmul__(self, other: QMat) -> QMat:
        if self.cols != other.rows:
            raise DimensionMismatchError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        zero = Fraction(0)
        out = [zero] * (self.rows * other.cols)
        other_rows = [other.row(k) for k in range(other.rows)]
        for i in range(self.rows):
            base = i * other.cols
            for k, a in enumerate(self.row(i)):
                if not a:
                    continue
                for j, b in enumerate(other_rows[k]):
                    if b:
                        out[base + j] += a * b
        return QMat(self.rows, other.cols, tuple(out))

    def __pow__(self, k: int) -> QMat:
        return power(self, k)

    def apply(self, vector: Sequence[Fraction]) -> Vector:
        if len(vector) != self.cols:
            raise DimensionMismatchError(f"vector of length {len(vector)} for {self.rows}x{self.cols} matrix")
        rows = (self.row(i) for i in range(self.rows))
        return tuple(sum((a * b for a, b in zip(row, vector) if a and b), Fraction(0)) for row in rows)


def power(m: QMat, k: int) -> QMat:
    """m^k by repeated squaring; m^0 is the identity."""
    m._require_square("power")
    if k < 0:
        raise ValueError("negative exponent")
    result = QMat.identity(m.rows)
    base = m
    while k:
        if k & 1:
            result = result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


def commutator(a: QMat, b: QMat) -> QMat:
    return a @ b - b @ a


def jordan_block(n: int) -> QMat:
    """Nilpotent Jordan block J_n with ones on the superdiagonal."""
    return QMat.from_function(n, n, lambda i, j: 1 if j == i + 1 else 0)


def block_diag(blocks: Sequence[QMat]) -> QMat:
    size = sum(b.rows for b in blocks)
    width = sum(b.cols for b in blocks)
    out = [[Fraction(0)] * width for _ in range(size)]
    r = c = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[r + i][c + j] = b[i, j]
        r += b.rows
        c += b.cols
    return QMat.from_rows(out)


def is_upper_triangular(m: QMat) -> bool:
    return all(not m[i, j] for i in range(m.rows) for j in range(min(i, m.cols)))


# ---------------------------------------------------------------------------
# sympy bridge
# ---------------------------------------------------------------------------


def _qq(value: Fraction):
    return QQ(value.numerator, value.denominator)


def _from_qq(element) -> Fraction:
    return Fraction(int(element.numerator), int(element.denominator))


def to_domain(m: QMat) -> DomainMatrix:
    return DomainMatrix([[_qq(v) for v in m.row(i)] for i in range(m.rows)], (m.rows, m.cols), QQ)


def from_domain(dm: DomainMatrix) -> QMat:
    rows, cols = dm.shape
    return QMat(rows, cols, tuple(_from_qq(v) for row in dm.to_list() for v in row))


def rank(m: QMat) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return to_domain(m).rank()


def rref(m: QMat) -> tuple[QMat, tuple[int, ...]]:
    reduced, pivots = to_domain(m).rref()
    return from_domain(reduced), tuple(pivots)


def nullspace_basis(m: QMat) -> list[Vector]:
    """Basis of {v : m v = 0}, one tuple per vector."""
    if m.cols == 0:
        return []
    basis = to_domain(m).nullspace()
    if basis.shape[0] == 0:
        return []
    return [tuple(_from_qq(v) for v in row) for row in basis.to_list() if any(row)]


def inverse(m: QMat) -> QMat:
    m._require_square("inverse")
    try:
        return from_domain(to_domain(m).inv())
    except (DMNonInvertibleMatrixError, ZeroDivisionError) as err:
        raise SingularMatrixError("matrix is not invertible") from err


def determinant(m: QMat) -> Fraction:
    m._require_square("determinant")
    return _from_qq(to_domain(m).det())


def conjugate(m: QMat, g: QMat) -> QMat:
    """g m g^-1."""
    return g @ m @ inverse(g)


def solve_left_coordinates(basis: QMat, target: QMat) -> QMat:
    """M with basis @ M == target for a full column rank ``basis``."""
    gram = basis.transpose() @ basis
    coords = inverse(gram) @ basis.transpose() @ target
    if basis @ coords != target:
        raise InvariantViolationError("target columns are not in the column span")
    return coords


# ---------------------------------------------------------------------------
# Nilpotency
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Partition:
    """Jordan type of a nilpotent matrix, parts weakly decreasing."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.parts or any(p <= 0 for p in self.parts):
            raise ValueError(f"invalid partition {self.parts}")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError(f"partition parts must be weakly decreasing: {self.parts}")

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> Partition:
        return cls(tuple(sorted(parts, reverse=True)))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def offsets(self) -> tuple[int, ...]:
        out, start = [], 0
        for p in self.parts:
            out.append(start)
            start += p
        return tuple(out)

    def has_distinct_parts(self) -> bool:
        return len(set(self.parts)) == len(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def is_nilpotent(m: QMat) -> bool:
    m._require_square("nilpotency check")
    if m.rows == 0:
        return True
    p, span = m, 1
    while span < m.rows:
        p = p @ p
        span *= 2
    return p.is_zero()


def nilpotency_index(m: QMat) -> int:
    """Smallest s >= 1 with m^s == 0."""
    if not is_nilpotent(m):
        raise NotNilpotentError("matrix is not nilpotent")
    s, p = 1, m
    while not p.is_zero():
        p = p @ m
        s += 1
    return s


def nilpotent_partition(m: QMat) -> Partition:
    """Jordan type from the rank sequence of powers."""
    if not is_nilpotent(m):
        raise NotNilpotentError("matrix is not nilpotent")
    n = m.rows
    ranks = [n]
    p = QMat.identity(n)
    while ranks[-1]:
        p = p @ m
        ranks.append(rank(p))
    # at_least[s] = number of blocks of size >= s
    at_least = [ranks[s - 1] - ranks[s] for s in range(1, len(ranks))] + [0]
    parts: list[int] = []
    for s in range(len(at_least) - 1, 0, -1):
        parts.extend([s] * (at_least[s - 1] - at_least[s]))
    return Partition(tuple(parts))


# ---------------------------------------------------------------------------
# Characteristic polynomial and eigenvalues
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CharPoly:
    """Monic polynomial; ``coefficients`` from the leading 1 down to the constant."""

    coefficients: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, value: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in self.coefficients:
            acc = acc * value + c
        return acc

    def to_sympy(self) -> Poly:
        return Poly([Rational(c.numerator, c.denominator) for c in self.coefficients], _T, domain=QQ)


@dataclass(frozen=True)
class EigenData:
    """Rational roots with algebraic multiplicity; ``split`` if they exhaust the degree."""

    roots: tuple[tuple[Fraction, int], ...]
    split: bool

    @property
    def eigenvalues(self) -> tuple[Fraction, ...]:
        return tuple(r for r, _ in self.roots)


def char_poly(m: QMat) -> CharPoly:
    m._require_square("characteristic polynomial")
    return CharPoly(tuple(_from_qq(c) for c in to_domain(m).charpoly()))


def rational_roots(poly: CharPoly) -> EigenData:
    _, factors = poly.to_sympy().factor_list()
    roots = []
    for factor, multiplicity in factors:
        if factor.degree() == 1:
            a, b = (Fraction(int(c.p), int(c.q)) for c in factor.all_coeffs())
            roots.append((-b / a, multiplicity))
    roots.sort()
    found = sum(mult for _, mult in roots)
    return EigenData(tuple(roots), found == poly.degree)


def rational_eigenvalues(m: QMat) -> EigenData:
    data = rational_roots(char_poly(m))
    _LOGGER.debug("Eigenvalues of %dx%d matrix: %s (split=%s)", m.rows, m.rows, data.roots, data.split)
    return data


def require_split(m: QMat) -> EigenData:
    data = rational_eigenvalues(m)
    if not data.split:
        raise EigenvaluesNotRationalError("characteristic polynomial does not split over Q")
    return data


# ---------------------------------------------------------------------------
# Incremental row echelon form
# ---------------------------------------------------------------------------


class RowSpace:
    """Subspace of Q^width kept in fully reduced echelon form.

    Rows are sparse dicts keyed by column; each stored row has a 1 at its
    pivot and zeros at every other pivot, so the stored basis is canonical
    for the subspace.
    """

    def __init__(self, width: int):
        self.width = width
        self._rows: dict[int, dict[int, Fraction]] = {}

    def __len__(self) -> int:
        return len(self._rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RowSpace):
            return NotImplemented
        return self.width == other.width and self._rows == other._rows

    def copy(self) -> RowSpace:
        out = RowSpace(self.width)
        out._rows = {p: dict(r) for p, r in self._rows.items()}
        return out

    @staticmethod
    def _sparse(vector: Sequence[Fraction]) -> dict[int, Fraction]:
        return {i: v for i, v in enumerate(vector) if v}

    def _reduce(self, vec: dict[int, Fraction]) -> dict[int, Fraction]:
        for pivot in [p for p in vec if p in self._rows]:
            c = vec.get(pivot)
            if not c:
                continue
            for j, v in self._rows[pivot].items():
                w = vec.get(j, 0) - c * v
                if w:
                    vec[j] = w
                else:
                    vec.pop(j, None)
        return vec

    def contains(self, vector: Sequence[Fraction]) -> bool:
        if len(vector) != self.width:
            raise DimensionMismatchError(f"vector of length {len(vector)} in space of width {self.width}")
        return not self._reduce(self._sparse(vector))

    def add(self, vector: Sequence[Fraction]) -> bool:
        """Insert a vector; returns True if the dimension grew."""
        if len(vector) != self.width:
            raise DimensionMismatchError(f"vector of length {len(vector)} in space of width {self.width}")
        vec = self._reduce(self._sparse(vector))
        if not vec:
            return False
        pivot = min(vec)
        lead = vec[pivot]
        vec = {j: v / lead for j, v in vec.items()}
        for row in self._rows.values():
            c = row.get(pivot)
            if c:
                for j, v in vec.items():
                    w = row.get(j, 0) - c * v
                    if w:
                        row[j] = w
                    else:
                        row.pop(j, None)
        self._rows[pivot] = vec
        return True

    def basis(self) -> list[Vector]:
        zero = Fraction(0)
        return [tuple(self._rows[p].get(j, zero) for j in range(self.width)) for p in sorted(self._rows)]
