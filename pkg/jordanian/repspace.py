"""Representations of R: pairs (X, Y) of n x n rational matrices with
XY - YX = Y^2 and Y nilpotent.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .const import SAMPLE_COEFFS, SAMPLE_EIGENVALUES
from .errors import (
    DimensionMismatchError,
    InvariantViolationError,
    ParamCountMismatchError,
    RelationFailsError,
    YNotNilpotentError,
    ZeroPolynomialError,
)
from .exact import (
    Partition,
    QMat,
    block_diag,
    commutator,
    conjugate,
    is_nilpotent,
    jordan_block,
    nilpotent_partition,
    power,
    require_split,
)
from .freealg import Automorphism, NCPoly, NormalPoly, normal_form

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class Rep:
    """A validated representation; build with :func:`validate_rep`."""

    n: int
    X: QMat
    Y: QMat
    partition: Partition

    def __str__(self) -> str:
        return f"Rep(n={self.n}, Y-type={self.partition})"


def validate_rep(X: QMat, Y: QMat) -> Rep:
    if not (X.is_square and Y.is_square) or X.rows != Y.rows:
        raise DimensionMismatchError(f"X is {X.rows}x{X.cols}, Y is {Y.rows}x{Y.cols}")
    defect = commutator(X, Y) - Y @ Y
    if not defect.is_zero():
        first = next(i for i, v in enumerate(defect.entries) if v)
        raise RelationFailsError(divmod(first, X.cols))
    if not is_nilpotent(Y):
        raise YNotNilpotentError("Y is not nilpotent")
    return Rep(X.rows, X, Y, nilpotent_partition(Y))


def conjugate_rep(r: Rep, g: QMat) -> Rep:
    """(g X g^-1, g Y g^-1)."""
    return Rep(r.n, conjugate(r.X, g), conjugate(r.Y, g), r.partition)


def direct_sum(*reps: Rep) -> Rep:
    return validate_rep(block_diag([r.X for r in reps]), block_diag([r.Y for r in reps]))


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------


def epsilon_x(n: int) -> QMat:
    """Image of x under epsilon_n: superdiagonal entries 0, -1, ..., -(n-2)."""
    return QMat.from_function(n, n, lambda i, j: -i if j == i + 1 else 0)


def build_epsilon(n: int) -> Rep:
    if n < 1:
        raise ValueError("n must be positive")
    return Rep(n, epsilon_x(n), jordan_block(n), Partition((n,)))


@dataclass(frozen=True, kw_only=True)
class FullBlockParams:
    """X = lam I + epsilon_n(x) + sum_k c[k-1] J^k, k = 1..n-1."""

    lam: Fraction = Fraction(0)
    c: tuple[Fraction, ...] = ()


def _toeplitz(n: int, coefficients: Sequence[Fraction]) -> QMat:
    """sum_k coefficients[k-1] J_n^k."""
    return QMat.from_function(n, n, lambda i, j: coefficients[j - i - 1] if 0 < j - i <= len(coefficients) else 0)


def build_full_block(n: int, params: FullBlockParams) -> Rep:
    if len(params.c) != n - 1:
        raise ParamCountMismatchError(f"full block of size {n} takes {n - 1} coefficients, got {len(params.c)}")
    X = QMat.scalar(n, Fraction(params.lam)) + epsilon_x(n) + _toeplitz(n, params.c)
    return Rep(n, X, jordan_block(n), Partition((n,)))


def off_diagonal_range(rows: int, cols: int) -> range:
    """Diagonals d = col - row of a rows x cols block intertwining J_cols and J_rows."""
    return range(max(0, cols - rows), cols)


def block_param_count(partition: Partition, i: int, j: int) -> int:
    if i == j:
        return partition.parts[i] - 1
    return min(partition.parts[i], partition.parts[j])


def param_count(partition: Partition) -> int:
    """Dimension of the standard-shape parameter space for a Y-type."""
    size = len(partition.parts)
    return sum(partition.parts) + sum(
        min(partition.parts[i], partition.parts[j]) for i in range(size) for j in range(size) if i != j
    )


@dataclass(frozen=True, kw_only=True)
class PartitionParams:
    """Eigenvalue per part plus Toeplitz coefficients per block (i, j).

    Diagonal blocks take parts[i] - 1 coefficients of J^1 .. J^(n_i - 1).
    Off-diagonal blocks take min(n_i, n_j) values, filled from the lowest
    admissible diagonal upward. Missing blocks are zero.
    """

    lambdas: tuple[Fraction, ...]
    toeplitz: Mapping[tuple[int, int], tuple[Fraction, ...]] = field(default_factory=dict)


def _block(partition: Partition, params: PartitionParams, i: int, j: int) -> QMat:
    rows, cols = partition.parts[i], partition.parts[j]
    expected = block_param_count(partition, i, j)
    values = tuple(params.toeplitz.get((i, j), (Fraction(0),) * expected))
    if len(values) != expected:
        raise ParamCountMismatchError(f"block ({i},{j}) takes {expected} values, got {len(values)}")
    if i == j:
        return QMat.scalar(rows, Fraction(params.lambdas[i])) + epsilon_x(rows) + _toeplitz(rows, values)
    diagonals = off_diagonal_range(rows, cols)
    lookup = dict(zip(diagonals, values))
    return QMat.from_function(rows, cols, lambda r, c: lookup.get(c - r, 0))


def build_from_partition(partition: Partition, params: PartitionParams) -> Rep:
    size = len(partition.parts)
    if len(params.lambdas) != size:
        raise ParamCountMismatchError(f"partition {partition} takes {size} eigenvalues, got {len(params.lambdas)}")
    for key in params.toeplitz:
        if not (0 <= key[0] < size and 0 <= key[1] < size):
            raise ParamCountMismatchError(f"no block {key} in partition {partition}")
    rows = []
    for i in range(size):
        blocks = [_block(partition, params, i, j) for j in range(size)]
        for r in range(partition.parts[i]):
            rows.append([v for b in blocks for v in b.row(r)])
    X = QMat.from_rows(rows)
    Y = block_diag([jordan_block(p) for p in partition.parts])
    _LOGGER.debug("Built representation of type %s", partition)
    return validate_rep(X, Y)


def random_partition(n: int, rng: random.Random) -> Partition:
    parts, remaining = [], n
    while remaining:
        part = rng.randint(1, remaining)
        parts.append(part)
        remaining -= part
    return Partition.from_parts(parts)


def random_params(
    partition: Partition, rng: random.Random, *, lambdas: Sequence[Fraction] | None = None
) -> PartitionParams:
    size = len(partition.parts)
    toeplitz = {
        (i, j): tuple(rng.choice(SAMPLE_COEFFS) for _ in range(block_param_count(partition, i, j)))
        for i in range(size)
        for j in range(size)
    }
    if lambdas is None:
        lambdas = tuple(rng.choice(SAMPLE_EIGENVALUES) for _ in range(size))
    return PartitionParams(lambdas=tuple(lambdas), toeplitz=toeplitz)


def random_unimodular(n: int, rng: random.Random) -> QMat:
    """L U with unit triangular factors and small integer entries; determinant 1."""
    lower = QMat.from_function(n, n, lambda i, j: 1 if i == j else (rng.randint(-2, 2) if i > j else 0))
    upper = QMat.from_function(n, n, lambda i, j: 1 if i == j else (rng.randint(-2, 2) if i < j else 0))
    return lower @ upper


def random_rep(
    n: int,
    rng: random.Random,
    *,
    partition: Partition | None = None,
    lambdas: Sequence[Fraction] | None = None,
    conjugated: bool = False,
) -> Rep:
    """Random standard-shape representation, optionally moved off the standard shape."""
    partition = partition or random_partition(n, rng)
    if partition.n != n:
        raise DimensionMismatchError(f"partition {partition} does not sum to {n}")
    rep = build_from_partition(partition, random_params(partition, rng, lambdas=lambdas))
    if conjugated:
        rep = conjugate_rep(rep, random_unimodular(n, rng))
    return rep


def random_full_block(n: int, rng: random.Random, *, conjugated: bool = False) -> Rep:
    params = FullBlockParams(
        lam=rng.choice(SAMPLE_EIGENVALUES), c=tuple(rng.choice(SAMPLE_COEFFS) for _ in range(n - 1))
    )
    rep = build_full_block(n, params)
    return conjugate_rep(rep, random_unimodular(n, rng)) if conjugated else rep


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def evaluate(p: NCPoly | NormalPoly, r: Rep) -> QMat:
    """Image of p under the representation, computed on the normal form."""
    normal = normal_form(p) if isinstance(p, NCPoly) else p
    x_powers: dict[int, QMat] = {}
    y_powers: dict[int, QMat] = {}
    out = QMat.zeros(r.n)
    for (k, l), coeff in normal.terms:
        if k not in y_powers:
            y_powers[k] = power(r.Y, k)
        if l not in x_powers:
            x_powers[l] = power(r.X, l)
        out = out + (y_powers[k] @ x_powers[l]).scale(coeff)
    return out


def epsilon_monomial(n: int, k: int, m: int) -> QMat:
    """epsilon_n(y^k x^m) in closed form.

    Only diagonal k + m is nonzero; its entry in row j is
    (-1)^m (j+k) (j+k+1) ... (j+k+m-1).
    """
    out = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n - k - m):
        value = 1
        for t in range(j + k, j + k + m):
            value *= t
        out[j][j + k + m] = Fraction((-1) ** m * value)
    return QMat.from_rows(out)


def faithfulness_size(f: NCPoly | NormalPoly) -> int:
    """2 deg f + 1: below that epsilon_n may kill f (epsilon_2(x) = 0)."""
    normal = normal_form(f) if isinstance(f, NCPoly) else f
    if normal.is_zero():
        raise ZeroPolynomialError("zero polynomial has no nonzero image")
    return 2 * normal.degree + 1


def faithfulness_witness(f: NCPoly | NormalPoly) -> tuple[int, bool]:
    """(n0, epsilon_n0(f) != 0) with n0 = 2 deg f + 1.

    The size is one more than twice the degree: at 2 deg f the module can
    still kill f (epsilon_2(x) = 0), so callers should not expect n0 = 2 deg f.
    """
    normal = normal_form(f) if isinstance(f, NCPoly) else f
    n0 = faithfulness_size(normal)
    nonzero = not evaluate(normal, build_epsilon(n0)).is_zero()
    _LOGGER.debug("epsilon_%d(%s) nonzero: %s", n0, normal, nonzero)
    return n0, nonzero


def smallest_separating_size(f: NCPoly | NormalPoly) -> int:
    """Least n with epsilon_n(f) != 0."""
    normal = normal_form(f) if isinstance(f, NCPoly) else f
    bound = faithfulness_size(normal)
    for n in range(1, bound + 1):
        if not evaluate(normal, build_epsilon(n)).is_zero():
            return n
    raise InvariantViolationError(f"epsilon_{bound} kills nonzero {normal}")


def twist(r: Rep, f: Automorphism) -> Rep:
    """Representation u -> r(f(u)): X' = c X + p(Y), Y' = c Y."""
    X = r.X.scale(f.c) + evaluate(NormalPoly.in_y(f.p), r)
    return validate_rep(X, r.Y.scale(f.c))


def is_standard_shape(r: Rep) -> bool:
    """Y is exactly the block sum of Jordan blocks of its partition."""
    return r.Y == block_diag([jordan_block(p) for p in r.partition.parts])


def eigenvalues_of_X(r: Rep) -> tuple[tuple[Fraction, int], ...]:
    """Rational eigenvalues of X with multiplicities.

    For the standard shape with pairwise distinct block sizes the eigenvalues
    sit on the diagonal blocks; anything else goes through the
    characteristic polynomial, which must split over Q.
    """
    if r.partition.has_distinct_parts() and is_standard_shape(r):
        counts: dict[Fraction, int] = {}
        for offset, part in zip(r.partition.offsets, r.partition.parts):
            lam = r.X[offset, offset]
            counts[lam] = counts.get(lam, 0) + part
        return tuple(sorted(counts.items()))
    _LOGGER.warning("Eigenvalue read-off not applicable for type %s, using char poly", r.partition)
    return require_split(r.X).roots


def irreducible(a: Fraction) -> Rep:
    """One-dimensional module S_a: X = (a), Y = 0."""
    return Rep(1, QMat.from_rows([[a]]), QMat.zeros(1), Partition((1,)))


def completely_reducible(values: Sequence[Fraction]) -> Rep:
    """Direct sum of the S_a: X diagonal, Y = 0."""
    n = len(values)
    X = QMat.from_function(n, n, lambda i, j: values[i] if i == j else 0)
    return Rep(n, X, QMat.zeros(n), Partition((1,) * n))
