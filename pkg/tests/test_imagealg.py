import random
from fractions import Fraction

import pytest

from jordanian.errors import EigenvaluesNotRationalError, GensNotInAlgebraError, NotAnAlgebraError
from jordanian.exact import QMat, is_nilpotent
from jordanian.imagealg import (
    MatSpan,
    codimension,
    corner_ideal,
    describe_algebra,
    diagonal_profile,
    dimension_bound,
    full_block_image_canonical,
    idempotents,
    ideal_closure,
    image_algebra_basis,
    loop_span_dim,
    quiver,
    quiver_equivalent,
    radical_basis,
    radical_powers,
    right_ideal,
    ringel_a4_relation_report,
    semisimple_rank,
    span_product,
    wild_quotient_codimension,
)
from jordanian.repspace import (
    FullBlockParams,
    Rep,
    build_epsilon,
    build_full_block,
    completely_reducible,
    conjugate_rep,
    direct_sum,
    random_rep,
    random_unimodular,
)

# ---------------------------------------------------------------------------
# Image algebra dimensions
# ---------------------------------------------------------------------------


def test_small_image_dimensions(eps3: Rep, eps4: Rep, diag12: Rep):
    assert image_algebra_basis(eps3).dim == 4
    assert image_algebra_basis(eps4).dim == 6
    assert image_algebra_basis(diag12).dim == 2


def test_image_contains_identity(eps3: Rep):
    assert image_algebra_basis(eps3).contains(QMat.identity(3))


@pytest.mark.parametrize(("n", "expected"), [(1, 1), (2, 2), (4, 6), (5, 9), (6, 12)])
def test_dimension_bound(n: int, expected: int):
    assert dimension_bound(n) == expected


def test_epsilon_dimension_sequence():
    dims = [full_block_image_canonical(n).dim for n in range(1, 9)]

    assert dims == [1, 2, 4, 6, 9, 12, 16, 20]


def test_diagonal_profile_of_epsilon():
    assert diagonal_profile(full_block_image_canonical(5)) == (1, 2, 3, 2, 1)


def test_higher_powers_do_not_grow_the_span(eps4: Rep):
    algebra = image_algebra_basis(eps4)
    x_power = QMat.identity(4)
    for _ in range(8):
        x_power = x_power @ eps4.X
        assert algebra.contains(x_power)
        assert algebra.contains(eps4.Y @ x_power)


def test_full_block_images_coincide(rng: random.Random):
    for n in (4, 5, 6):
        canonical = full_block_image_canonical(n)
        for _ in range(5):
            params = FullBlockParams(
                lam=Fraction(rng.randint(-2, 2)), c=tuple(Fraction(rng.randint(-2, 2)) for _ in range(n - 1))
            )
            rep = build_full_block(n, params)
            assert image_algebra_basis(rep) == canonical
            moved = conjugate_rep(rep, random_unimodular(n, rng))
            assert image_algebra_basis(moved).dim == canonical.dim


def test_dimension_bound_holds_on_samples(rng: random.Random):
    for _ in range(30):
        n = rng.randint(2, 6)
        rep = random_rep(n, rng, conjugated=True)
        assert image_algebra_basis(rep).dim <= dimension_bound(n)


# ---------------------------------------------------------------------------
# Radical
# ---------------------------------------------------------------------------


def test_radical_of_epsilon(eps3: Rep):
    radical = radical_basis(image_algebra_basis(eps3))

    assert radical.dim == 3
    assert radical.contains(eps3.Y)
    assert radical.contains(eps3.X)
    assert all(is_nilpotent(m) for m in radical.basis())


def test_semisimple_algebra_has_zero_radical(diag12: Rep):
    assert radical_basis(image_algebra_basis(diag12)).dim == 0


def test_radical_powers(eps3: Rep):
    assert radical_powers(radical_basis(image_algebra_basis(eps3))) == (3, 1)


def test_radical_rejects_non_algebra():
    swap = MatSpan.of(2, [QMat.from_rows([[0, 1], [1, 0]])])

    with pytest.raises(NotAnAlgebraError):
        radical_basis(swap)


def test_radical_of_nilpotent_x_is_non_constant_part(eps4: Rep):
    algebra = image_algebra_basis(eps4)
    radical = radical_basis(algebra)

    assert radical.dim == algebra.dim - 1
    assert not radical.contains(QMat.identity(4))


# ---------------------------------------------------------------------------
# Idempotents, semisimple rank and quivers
# ---------------------------------------------------------------------------


def test_idempotents_of_diagonal():
    rep = completely_reducible([Fraction(1), Fraction(1), Fraction(2)])

    assert idempotents(rep) == [
        QMat.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 0]]),
        QMat.from_rows([[0, 0, 0], [0, 0, 0], [0, 0, 1]]),
    ]


def test_single_eigenvalue_idempotent_is_identity(eps4: Rep):
    assert idempotents(eps4) == [QMat.identity(4)]


def test_idempotents_are_orthogonal_and_complete(two_block_rep: Rep, rng: random.Random):
    rep = conjugate_rep(two_block_rep, random_unimodular(5, rng))
    units = idempotents(rep)

    assert len(units) == 2
    assert units[0] @ units[0] == units[0]
    assert units[1] @ units[1] == units[1]
    assert (units[0] @ units[1]).is_zero()
    assert units[0] + units[1] == QMat.identity(5)


def test_semisimple_rank(eps5: Rep):
    assert semisimple_rank(eps5) == 1
    assert semisimple_rank(completely_reducible([Fraction(1), Fraction(2), Fraction(3)])) == 3


def test_quiver_of_epsilon():
    for n in range(3, 7):
        q = quiver(build_epsilon(n))
        assert q.vertices == (Fraction(0),)
        assert q.arrows == ((2,),)
    assert quiver(build_epsilon(2)).loops == (1,)


def test_quiver_of_semisimple(diag12: Rep):
    q = quiver(diag12)

    assert q.vertices == (Fraction(1), Fraction(2))
    assert q.arrow_count == 0


def test_quiver_requires_rational_eigenvalues(irrational_rep: Rep):
    with pytest.raises(EigenvaluesNotRationalError):
        quiver(irrational_rep)


def test_loop_span_matches_quiver(eps4: Rep):
    assert loop_span_dim(eps4) == quiver(eps4).loops[0] == 2


def test_quiver_equivalence(eps4: Rep, eps5: Rep, eps3: Rep):
    assert quiver_equivalent(eps4, eps5)
    assert not quiver_equivalent(eps3, build_epsilon(2))


def test_describe_algebra(eps3: Rep):
    desc = describe_algebra(eps3)

    assert desc.dim == 4
    assert desc.radical_dims == (3, 1)
    assert desc.semisimple_rank == 1
    assert desc.quiver.arrows == ((2,),)


def test_describe_two_eigenvalues(two_block_rep: Rep):
    desc = describe_algebra(two_block_rep)

    assert desc.semisimple_rank == 2
    assert desc.dim == 2 + desc.radical_dims[0]


# ---------------------------------------------------------------------------
# Ideals
# ---------------------------------------------------------------------------


def test_ideal_of_identity_is_everything(eps4: Rep):
    algebra = image_algebra_basis(eps4)
    ideal = ideal_closure(algebra, [QMat.identity(4)])

    assert ideal == algebra
    assert codimension(algebra, ideal) == 0


def test_ideal_generators_must_lie_in_algebra(diag12: Rep):
    algebra = image_algebra_basis(diag12)

    with pytest.raises(GensNotInAlgebraError):
        ideal_closure(algebra, [QMat.from_rows([[0, 1], [0, 0]])])


def test_wild_quotient_has_codimension_five():
    for n in range(5, 8):
        assert wild_quotient_codimension(n) == 5


def test_corner_ideal_of_a4():
    ideal = corner_ideal(4)

    assert ideal.dim == 1
    assert full_block_image_canonical(4).dim - ideal.dim == 5


def test_y_squared_ideal_is_one_sided():
    for rep in (build_epsilon(5), direct_sum(build_epsilon(3), build_epsilon(2))):
        algebra = image_algebra_basis(rep)
        square = rep.Y @ rep.Y
        assert ideal_closure(algebra, [square]) == right_ideal(algebra, [square])


def test_span_product_of_radical(eps3: Rep):
    radical = radical_basis(image_algebra_basis(eps3))

    assert span_product(radical, radical).dim == 1


def test_ringel_relation_report():
    assert ringel_a4_relation_report() == {"negative_superdiagonal": True, "positive_superdiagonal": False}
