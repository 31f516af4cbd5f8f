import random
from fractions import Fraction

import pytest

from jordanian.exact import QMat, block_diag
from jordanian.repspace import Rep, build_epsilon, completely_reducible, validate_rep
from jordanian.structure import canonical_pair_rep

TEST_SEED = 1234


@pytest.fixture
def rng() -> random.Random:
    return random.Random(TEST_SEED)


@pytest.fixture
def eps3() -> Rep:
    return build_epsilon(3)


@pytest.fixture
def eps4() -> Rep:
    return build_epsilon(4)


@pytest.fixture
def eps5() -> Rep:
    return build_epsilon(5)


@pytest.fixture
def diag12() -> Rep:
    return completely_reducible([Fraction(1), Fraction(2)])


@pytest.fixture
def irrational_rep() -> Rep:
    """X = companion matrix of t^2 - 2, Y = 0."""
    return validate_rep(QMat.from_rows([[0, 2], [1, 0]]), QMat.zeros(2))


@pytest.fixture
def two_block_rep() -> Rep:
    """P_{0,1} (size 2) plus P_{1,0} (size 3)."""
    left, right = canonical_pair_rep(2, Fraction(0), Fraction(1)), canonical_pair_rep(3, Fraction(1))
    return validate_rep(block_diag([left.X, right.X]), block_diag([left.Y, right.Y]))


@pytest.fixture
def unimodular4() -> QMat:
    return QMat.from_rows([[1, 2, 0, -1], [0, 1, 1, 0], [1, 2, 1, 0], [0, 0, 0, 1]])
