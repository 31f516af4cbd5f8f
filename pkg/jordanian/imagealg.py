"""Image algebras A = rho(R) inside M_n and their structure."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .errors import (
    DimensionMismatchError,
    GensNotInAlgebraError,
    InvariantViolationError,
    NotAnAlgebraError,
)
from .exact import QMat, RowSpace, is_nilpotent, nilpotency_index, nullspace_basis
from .repspace import Rep, build_epsilon, eigenvalues_of_X

_LOGGER = logging.getLogger(__name__)


class MatSpan:
    """Linear span of n x n matrices, echelonized on the flattening."""

    def __init__(self, n: int):
        self.n = n
        self._space = RowSpace(n * n)

    @classmethod
    def of(cls, n: int, matrices: Iterable[QMat]) -> MatSpan:
        span = cls(n)
        for m in matrices:
            span.add(m)
        return span

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatSpan):
            return NotImplemented
        return self.n == other.n and self._space == other._space

    def __repr__(self) -> str:
        return f"MatSpan(n={self.n}, dim={self.dim})"

    @property
    def dim(self) -> int:
        return len(self._space)

    def _check(self, m: QMat) -> None:
        if (m.rows, m.cols) != (self.n, self.n):
            raise DimensionMismatchError(f"{m.rows}x{m.cols} matrix in span of {self.n}x{self.n} matrices")

    def add(self, m: QMat) -> bool:
        self._check(m)
        return self._space.add(m.entries)

    def contains(self, m: QMat) -> bool:
        self._check(m)
        return self._space.contains(m.entries)

    def basis(self) -> list[QMat]:
        return [QMat(self.n, self.n, vector) for vector in self._space.basis()]

    def copy(self) -> MatSpan:
        out = MatSpan(self.n)
        out._space = self._space.copy()
        return out

    def plus(self, matrices: Iterable[QMat]) -> MatSpan:
        out = self.copy()
        for m in matrices:
            out.add(m)
        return out


def span_product(left: MatSpan, right: MatSpan) -> MatSpan:
    """span{a b : a in left, b in right}."""
    right_basis = right.basis()
    return MatSpan.of(left.n, (a @ b for a in left.basis() for b in right_basis))


def sandwich(e: QMat, span: MatSpan, f: QMat) -> MatSpan:
    """e span f."""
    return MatSpan.of(span.n, (e @ b @ f for b in span.basis()))


def is_algebra(a: MatSpan) -> bool:
    basis = a.basis()
    return all(a.contains(u @ v) for u in basis for v in basis)


# ---------------------------------------------------------------------------
# Image algebra
# ---------------------------------------------------------------------------


def image_algebra_basis(r: Rep) -> MatSpan:
    """span{Y^k X^l : k < nilpotency index of Y, l < n}, identity included."""
    span = MatSpan(r.n)
    y_power = QMat.identity(r.n)
    for _ in range(nilpotency_index(r.Y)):
        m = y_power
        for _ in range(r.n):
            span.add(m)
            m = m @ r.X
        y_power = y_power @ r.Y
    _LOGGER.debug("Image algebra of n=%s: dim %s", r.n, span.dim)
    return span


def dimension_bound(n: int) -> int:
    return n * (n + 2) // 4 if n % 2 == 0 else (n + 1) ** 2 // 4


def full_block_image_canonical(n: int) -> MatSpan:
    return image_algebra_basis(build_epsilon(n))


def _trace_of_product(a: QMat, b: QMat) -> Fraction:
    n = a.rows
    return sum((a[i, j] * b[j, i] for i in range(n) for j in range(n) if a[i, j] and b[j, i]), Fraction(0))


def radical_basis(a: MatSpan) -> MatSpan:
    """Jacobson radical as the kernel of the trace form (a, b) -> tr(ab)."""
    if not is_algebra(a):
        raise NotAnAlgebraError(f"span of dimension {a.dim} is not closed under products")
    basis = a.basis()
    gram = QMat.from_function(len(basis), len(basis), lambda i, j: _trace_of_product(basis[i], basis[j]))
    radical = MatSpan(a.n)
    for coords in nullspace_basis(gram):
        element = QMat.zeros(a.n)
        for c, b in zip(coords, basis):
            if c:
                element = element + b.scale(c)
        if not is_nilpotent(element):
            raise InvariantViolationError("trace-form kernel contains a non-nilpotent element")
        radical.add(element)
    _LOGGER.debug("Radical of %s: dim %s", a, radical.dim)
    return radical


def radical_powers(radical: MatSpan) -> tuple[int, ...]:
    """(dim J, dim J^2, ...) down to and excluding 0."""
    dims = []
    power = radical
    while power.dim:
        dims.append(power.dim)
        power = span_product(power, radical)
        if dims and power.dim >= dims[-1]:
            raise InvariantViolationError("radical powers do not decrease")
    return tuple(dims)


# ---------------------------------------------------------------------------
# Idempotents and quivers
# ---------------------------------------------------------------------------


def idempotents(r: Rep) -> list[QMat]:
    """Complete system of orthogonal idempotents, one per distinct eigenvalue of X.

    Starts from p_i(X) / p_i(lambda_i) with p_i = prod_{j != i} (t - lambda_j),
    which is idempotent modulo the radical, and lifts it with e -> 3e^2 - 2e^3.
    """
    eigenvalues = [lam for lam, _ in eigenvalues_of_X(r)]
    identity = QMat.identity(r.n)
    out = []
    for i, lam in enumerate(eigenvalues):
        e = identity
        for j, other in enumerate(eigenvalues):
            if j != i:
                e = (e @ (r.X - QMat.scalar(r.n, other))).scale(1 / (lam - other))
        for _ in range(r.n + 2):
            square = e @ e
            if square == e:
                break
            e = square.scale(3) - (square @ e).scale(2)
        else:
            raise InvariantViolationError(f"idempotent lifting did not converge for eigenvalue {lam}")
        out.append(e)
    return out


@dataclass(frozen=True)
class QuiverDesc:
    """Vertices are the distinct eigenvalues of X; ``arrows[i][j]`` counts arrows i -> j."""

    vertices: tuple[Fraction, ...]
    arrows: tuple[tuple[int, ...], ...]

    @property
    def loops(self) -> tuple[int, ...]:
        return tuple(self.arrows[i][i] for i in range(len(self.vertices)))

    @property
    def arrow_count(self) -> int:
        return sum(sum(row) for row in self.arrows)


@dataclass(frozen=True)
class AlgebraDesc:
    dim: int
    radical_dims: tuple[int, ...]
    semisimple_rank: int
    quiver: QuiverDesc


def _quiver_from(r: Rep, radical: MatSpan) -> QuiverDesc:
    vertices = tuple(lam for lam, _ in eigenvalues_of_X(r))
    units = idempotents(r)
    radical_sq = span_product(radical, radical)
    arrows = tuple(
        tuple(sandwich(ei, radical, ej).dim - sandwich(ei, radical_sq, ej).dim for ej in units) for ei in units
    )
    return QuiverDesc(vertices, arrows)


def quiver(r: Rep) -> QuiverDesc:
    return _quiver_from(r, radical_basis(image_algebra_basis(r)))


def semisimple_rank(r: Rep) -> int:
    return len(eigenvalues_of_X(r))


def describe_algebra(r: Rep) -> AlgebraDesc:
    algebra = image_algebra_basis(r)
    radical = radical_basis(algebra)
    rank = semisimple_rank(r)
    if algebra.dim != rank + radical.dim:
        raise InvariantViolationError(f"dim A = {algebra.dim} but r + dim J = {rank} + {radical.dim}")
    return AlgebraDesc(algebra.dim, radical_powers(radical), rank, _quiver_from(r, radical))


def quiver_equivalent(r1: Rep, r2: Rep) -> bool:
    """Whether the quivers agree up to relabeling of vertices."""
    q1, q2 = quiver(r1), quiver(r2)
    size = len(q1.vertices)
    if size != len(q2.vertices) or q1.arrow_count != q2.arrow_count:
        return False
    for perm in permutations(range(size)):
        if all(q1.arrows[i][j] == q2.arrows[perm[i]][perm[j]] for i in range(size) for j in range(size)):
            return True
    return False


def loop_span_dim(r: Rep) -> int:
    """dim span{X - lam I, Y} in A / J^2 for a single-eigenvalue representation."""
    eigen = eigenvalues_of_X(r)
    if len(eigen) != 1:
        raise ValueError(f"expected a single eigenvalue, got {len(eigen)}")
    lam = eigen[0][0]
    radical = radical_basis(image_algebra_basis(r))
    radical_sq = span_product(radical, radical)
    return radical_sq.plus((r.X - QMat.scalar(r.n, lam), r.Y)).dim - radical_sq.dim


# ---------------------------------------------------------------------------
# Ideals
# ---------------------------------------------------------------------------


def _require_members(a: MatSpan, gens: Sequence[QMat]) -> None:
    for g in gens:
        if not a.contains(g):
            raise GensNotInAlgebraError("generator is not in the algebra")


def ideal_closure(a: MatSpan, gens: Sequence[QMat]) -> MatSpan:
    """Two-sided ideal of ``a`` generated by ``gens``."""
    _require_members(a, gens)
    basis = a.basis()
    ideal = MatSpan(a.n)
    pending = [g for g in gens if ideal.add(g)]
    while pending:
        b = pending.pop()
        for c in basis:
            for product in (c @ b, b @ c):
                if ideal.add(product):
                    pending.append(product)
        if ideal.dim > a.dim:
            raise InvariantViolationError("ideal outgrew the algebra")
    _LOGGER.debug("Ideal generated by %d elements: dim %s of %s", len(gens), ideal.dim, a.dim)
    return ideal


def right_ideal(a: MatSpan, gens: Sequence[QMat]) -> MatSpan:
    """span{g b : g in gens, b in a}."""
    _require_members(a, gens)
    basis = a.basis()
    return MatSpan.of(a.n, (g @ b for g in gens for b in basis))


def codimension(a: MatSpan, ideal: MatSpan) -> int:
    return a.dim - ideal.dim


def diagonal_profile(a: MatSpan) -> tuple[int, ...]:
    """Rank of the projection of ``a`` onto each superdiagonal d = 0..n-1."""
    n = a.n
    basis = a.basis()
    profile = []
    for d in range(n):
        projections = RowSpace(n - d)
        for b in basis:
            projections.add(tuple(b[i, i + d] for i in range(n - d)))
        profile.append(len(projections))
    return tuple(profile)


# ---------------------------------------------------------------------------
# Small algebras from the tame/wild comparison
# ---------------------------------------------------------------------------


def wild_relations(r: Rep) -> list[QMat]:
    """Y^2, X^2 Y and X^3."""
    return [r.Y @ r.Y, r.X @ r.X @ r.Y, r.X @ r.X @ r.X]


def wild_quotient_codimension(n: int) -> int:
    algebra = full_block_image_canonical(n)
    rep = build_epsilon(n)
    return codimension(algebra, ideal_closure(algebra, wild_relations(rep)))


def corner_ideal(n: int) -> MatSpan:
    """Ideal of A_n generated by the top-right matrix unit Y^(n-1)."""
    algebra = full_block_image_canonical(n)
    corner = QMat.from_function(n, n, lambda i, j: 1 if (i, j) == (0, n - 1) else 0)
    return ideal_closure(algebra, [corner])


def ringel_a4_relation_report() -> dict[str, bool]:
    """Whether X^2 + 2XY = 0 on epsilon_4 with either superdiagonal sign."""
    rep = build_epsilon(4)
    report = {}
    for name, X in (("negative_superdiagonal", rep.X), ("positive_superdiagonal", -rep.X)):
        report[name] = (X @ X + (X @ rep.Y).scale(2)).is_zero()
    return report
