"""Module structure of representations: decomposition, endomorphisms,
triangular forms and the canonical form on the full-block stratum.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .const import DEFAULT_SEED, EXTENSION_SCALARS, ISO_COEFF_RANGE, ISO_TRIALS
from .errors import (
    InconclusiveError,
    InvarianceFailureError,
    InvariantViolationError,
    NotFullBlockError,
    ZeroParameterError,
)
from .exact import (
    Partition,
    QMat,
    RowSpace,
    Vector,
    char_poly,
    commutator,
    determinant,
    inverse,
    is_upper_triangular,
    jordan_block,
    nullspace_basis,
    power,
    rank,
    rational_eigenvalues,
    require_split,
    solve_left_coordinates,
)
from .freealg import Automorphism
from .imagealg import MatSpan, radical_basis
from .repspace import (
    FullBlockParams,
    PartitionParams,
    Rep,
    build_from_partition,
    build_full_block,
    conjugate_rep,
    twist,
    validate_rep,
)

_LOGGER = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Decomposition by generalized eigenspaces of X
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Summand:
    eigenvalue: Fraction
    basis: tuple[Vector, ...]
    rep: Rep


@dataclass(frozen=True)
class Decomposition:
    """``conjugator`` g makes g X g^-1 and g Y g^-1 block diagonal, one block per summand."""

    eigenvalues: tuple[Fraction, ...]
    summands: tuple[Summand, ...]
    conjugator: QMat


def generalized_eigenspaces(X: QMat) -> list[tuple[Fraction, list[Vector]]]:
    """Bases of ker (X - lam I)^n, one per distinct rational eigenvalue."""
    n = X.rows
    spaces = []
    for lam, multiplicity in require_split(X).roots:
        basis = nullspace_basis(power(X - QMat.scalar(n, lam), n))
        if len(basis) != multiplicity:
            raise InvariantViolationError(f"eigenvalue {lam}: space of dim {len(basis)}, multiplicity {multiplicity}")
        spaces.append((lam, basis))
    return spaces


def _is_block_diagonal(m: QMat, sizes: Sequence[int]) -> bool:
    owner = [b for b, size in enumerate(sizes) for _ in range(size)]
    return all(not m[i, j] for i in range(m.rows) for j in range(m.cols) if owner[i] != owner[j])


def decompose(r: Rep) -> Decomposition:
    spaces = generalized_eigenspaces(r.X)
    columns = [v for _, basis in spaces for v in basis]
    P = QMat.from_columns(columns)
    g = inverse(P)
    X, Y = g @ r.X @ P, g @ r.Y @ P
    sizes = [len(basis) for _, basis in spaces]
    if not (_is_block_diagonal(X, sizes) and _is_block_diagonal(Y, sizes)):
        raise InvarianceFailureError("generalized eigenspaces of X are not Y-invariant")
    summands, offset = [], 0
    for (lam, basis), size in zip(spaces, sizes):
        rep = validate_rep(X.block(offset, offset, size, size), Y.block(offset, offset, size, size))
        summands.append(Summand(lam, tuple(basis), rep))
        offset += size
    _LOGGER.debug("Decomposed n=%s into %d summands", r.n, len(summands))
    return Decomposition(tuple(lam for lam, _ in spaces), tuple(summands), g)


# ---------------------------------------------------------------------------
# Homomorphisms and endomorphisms
# ---------------------------------------------------------------------------


def _intertwiner_constraints(pairs: Sequence[tuple[QMat, QMat]], rows: int, cols: int) -> QMat:
    """Linear system for g (rows x cols) with g M1 = M2 g for each (M1, M2)."""
    equations = []
    for M1, M2 in pairs:
        for i in range(rows):
            for j in range(cols):
                equation = [Fraction(0)] * (rows * cols)
                for q in range(cols):
                    equation[i * cols + q] += M1[q, j]
                for p in range(rows):
                    equation[p * cols + j] -= M2[i, p]
                equations.append(equation)
    return QMat.from_rows(equations)


def hom_space(r1: Rep, r2: Rep) -> list[QMat]:
    """Basis of {g : g X1 = X2 g, g Y1 = Y2 g}."""
    system = _intertwiner_constraints([(r1.X, r2.X), (r1.Y, r2.Y)], r2.n, r1.n)
    return [QMat(r2.n, r1.n, v) for v in nullspace_basis(system)]


def endomorphism_algebra(r: Rep) -> MatSpan:
    return MatSpan.of(r.n, hom_space(r, r))


def is_indecomposable(r: Rep) -> bool:
    """End(r) is local: its quotient by the radical is one-dimensional."""
    require_split(r.X)
    end = endomorphism_algebra(r)
    return end.dim - radical_basis(end).dim == 1


def is_irreducible(r: Rep) -> bool:
    require_split(r.X)
    return r.n == 1


def is_completely_reducible(r: Rep) -> bool:
    """Y = 0 and X diagonalizable over Q."""
    if not r.Y.is_zero():
        return False
    return sum(len(nullspace_basis(r.X - QMat.scalar(r.n, lam))) for lam, _ in require_split(r.X).roots) == r.n


def _normalized(v: Sequence[Fraction]) -> Vector:
    lead = next(c for c in v if c)
    return tuple(c / lead for c in v)


def common_eigenvector(r: Rep) -> Vector:
    """v != 0 with Y v = 0 and X v = lam v, taken inside ker Y."""
    require_split(r.X)
    K = QMat.from_columns(nullspace_basis(r.Y))
    M = solve_left_coordinates(K, r.X @ K)
    lam = rational_eigenvalues(M).roots[0][0]
    w = nullspace_basis(M - QMat.scalar(M.rows, lam))[0]
    return _normalized(K.apply(w))


def _complement(vectors: Sequence[Vector], n: int) -> list[Vector]:
    space = RowSpace(n)
    for v in vectors:
        space.add(v)
    out = []
    for j in range(n):
        unit = tuple(Fraction(int(i == j)) for i in range(n))
        if space.add(unit):
            out.append(unit)
    return out


def simultaneous_triangularize(r: Rep) -> QMat:
    """g with g X g^-1 and g Y g^-1 upper triangular."""
    require_split(r.X)
    chosen: list[Vector] = []
    while len(chosen) < r.n:
        if not chosen:
            chosen.append(common_eigenvector(r))
            continue
        rest = _complement(chosen, r.n)
        P = QMat.from_columns(chosen + rest)
        g = inverse(P)
        k = len(chosen)
        size = r.n - k
        quotient = validate_rep((g @ r.X @ P).block(k, k, size, size), (g @ r.Y @ P).block(k, k, size, size))
        w = common_eigenvector(quotient)
        chosen.append(QMat.from_columns(rest).apply(w))
    P = QMat.from_columns(chosen)
    g = inverse(P)
    if not (is_upper_triangular(g @ r.X @ P) and is_upper_triangular(g @ r.Y @ P)):
        raise InvariantViolationError("flag of common eigenvectors does not triangularize")
    return g


# ---------------------------------------------------------------------------
# Full-block stratum: rank Y = n - 1
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CanonicalPair:
    """conjugator g sends the input to the canonical pair P_{lam, mu}."""

    lam: Fraction
    mu: Fraction
    conjugator: QMat


def canonical_pair_rep(n: int, lam: Fraction, mu: Fraction = Fraction(0)) -> Rep:
    """P_{lam, mu}: X = lam I + epsilon_n(x) + mu J."""
    c = (Fraction(mu),) + (Fraction(0),) * (n - 2) if n > 1 else ()
    return build_full_block(n, FullBlockParams(lam=Fraction(lam), c=c))


def centralizer_element(n: int, alphas: Sequence[Fraction]) -> QMat:
    """I + sum_k alphas[k-1] J^k; invertible for every choice."""
    J = jordan_block(n)
    out = QMat.identity(n)
    term = QMat.identity(n)
    for alpha in alphas:
        term = term @ J
        out = out + term.scale(alpha)
    return out


def _jordan_basis_change(Y: QMat) -> QMat:
    """g with g Y g^-1 = J_n when rank Y = n - 1."""
    n = Y.rows
    top = power(Y, n - 1)
    j = next(j for j in range(n) if any(top.column(j)))
    v = tuple(Fraction(int(i == j)) for i in range(n))
    chain = [v]
    for _ in range(n - 1):
        chain.append(Y.apply(chain[-1]))
    return inverse(QMat.from_columns(list(reversed(chain))))


def canonical_full_block(r: Rep) -> CanonicalPair:
    """Conjugate r to P_{lam, mu}.

    Y goes to J_n through a cyclic basis; X then reads
    lam I + epsilon_n(x) + sum c_k J^k, and conjugating by I + alpha J^i with
    alpha = c_{i+1} / i removes c_{i+1} because [X, J^i] = i J^(i+1).
    """
    n = r.n
    if rank(r.Y) != n - 1:
        raise NotFullBlockError(f"rank Y = {rank(r.Y)}, expected {n - 1}")
    g = _jordan_basis_change(r.Y)
    X = g @ r.X @ inverse(g)
    J = jordan_block(n)
    for i in range(1, n - 1):
        alpha = X[0, i + 1] / i
        if not alpha:
            continue
        C = QMat.identity(n) + power(J, i).scale(alpha)
        X = C @ X @ inverse(C)
        g = C @ g
    lam = X[0, 0]
    mu = X[0, 1] if n > 1 else Fraction(0)
    expected = canonical_pair_rep(n, lam, mu)
    if X != expected.X or g @ r.Y @ inverse(g) != expected.Y:
        raise InvariantViolationError("normalization did not reach the canonical pair")
    _LOGGER.debug("Canonical pair for n=%s: lambda=%s mu=%s", n, lam, mu)
    return CanonicalPair(lam, mu, g)


def jacobian_rank(
    n: int,
    params: FullBlockParams,
    *,
    centralizer: Sequence[Fraction] | None = None,
    rng: random.Random | None = None,
) -> int:
    """Rank of delta -> [C^-1 X, delta] on span{J^k : k = 1..n-1}; equals n - 2."""
    if n < 2:
        raise ValueError("n must be at least 2")
    X = build_full_block(n, params).X
    if centralizer is None:
        rng = rng or random.Random(DEFAULT_SEED)
        centralizer = tuple(Fraction(rng.randint(-3, 3)) for _ in range(n - 1))
    X_tilde = inverse(centralizer_element(n, centralizer)) @ X
    J = jordan_block(n)
    columns = [commutator(X_tilde, power(J, k)).entries for k in range(1, n)]
    return rank(QMat.from_columns(columns))


@dataclass(frozen=True)
class IsomorphismResult:
    isomorphic: bool
    witness: QMat | None
    reason: str


def are_isomorphic(r1: Rep, r2: Rep, *, seed: int = DEFAULT_SEED, trials: int = ISO_TRIALS) -> IsomorphismResult:
    """Exact invariants first, then a seeded search for an invertible intertwiner."""
    if r1.n != r2.n:
        return IsomorphismResult(False, None, "dimension")
    if r1.partition != r2.partition:
        return IsomorphismResult(False, None, "Y-type")
    if char_poly(r1.X) != char_poly(r2.X):
        return IsomorphismResult(False, None, "characteristic polynomial of X")
    forward = hom_space(r1, r2)
    if not forward:
        return IsomorphismResult(False, None, "no homomorphisms")
    if len(forward) != len(hom_space(r1, r1)) or len(hom_space(r2, r1)) != len(hom_space(r2, r2)):
        return IsomorphismResult(False, None, "hom dimensions")
    rng = random.Random(seed)
    low, high = ISO_COEFF_RANGE
    for trial in range(trials):
        g = QMat.zeros(r1.n)
        for basis_element in forward:
            g = g + basis_element.scale(rng.randint(low, high))
        if determinant(g):
            _LOGGER.debug("Intertwiner found after %d trials", trial + 1)
            return IsomorphismResult(True, g, "intertwiner")
    _LOGGER.warning("No invertible intertwiner in %d trials", trials)
    raise InconclusiveError(f"no invertible intertwiner found in {trials} trials")


@dataclass(frozen=True)
class AutoEquivalence:
    """``conjugator`` g and ``automorphism`` f with g twist(r1, f) g^-1 = r2."""

    equivalent: bool
    automorphism: Automorphism | None
    conjugator: QMat | None


def auto_equivalent_full_block(r1: Rep, r2: Rep) -> AutoEquivalence:
    if r1.n != r2.n:
        return AutoEquivalence(False, None, None)
    first, second = canonical_full_block(r1), canonical_full_block(r2)
    f = Automorphism.shift(second.lam - first.lam, second.mu - first.mu)
    g = inverse(second.conjugator) @ first.conjugator
    moved = conjugate_rep(twist(r1, f), g)
    if (moved.X, moved.Y) != (r2.X, r2.Y):
        raise InvariantViolationError("auto-equivalence witness does not reproduce the target")
    return AutoEquivalence(True, f, g)


def hook_family(n: int, alpha: Fraction, *, balanced: bool = False) -> Rep:
    """Member of the (n-1, 1) stratum with eigenvalue 0.

    The coupling e_{n-1} -> e_n carries ``alpha`` and the wrap-around
    e_n -> e_1 carries 1; their product is an isomorphism invariant.
    With ``balanced`` the wrap-around carries 1 / alpha instead and every
    member is isomorphic to the one at alpha = 1.
    """
    if n < 3:
        raise ValueError("hook family needs n >= 3")
    if not alpha:
        raise ZeroParameterError("alpha must be nonzero")
    alpha = Fraction(alpha)
    params = PartitionParams(
        lambdas=(Fraction(0), Fraction(0)),
        toeplitz={(0, 1): (1 / alpha if balanced else Fraction(1),), (1, 0): (alpha,)},
    )
    return build_from_partition(Partition((n - 1, 1)), params)


def extension_candidates(a: Fraction, b: Fraction, scalars: Sequence[Fraction] = EXTENSION_SCALARS) -> list[Rep]:
    """Two-dimensional representations X = [[a, s], [0, b]], Y = [[0, t], [0, 0]].

    (s, t) ranges over multiples of a basis of the solutions of the relation,
    which reduces to (a - b) t = 0.
    """
    a, b = Fraction(a), Fraction(b)
    constraint = QMat.from_rows([[0, a - b]])
    out = []
    for s, t in nullspace_basis(constraint):
        for scalar in scalars:
            X = QMat.from_rows([[a, scalar * s], [0, b]])
            Y = QMat.from_rows([[0, scalar * t], [0, 0]])
            out.append(validate_rep(X, Y))
    return out
