import random
from fractions import Fraction

import pytest

from jordanian.errors import InvariantViolationError, ParseError
from jordanian.freealg import (
    Automorphism,
    NCPoly,
    NormalPoly,
    alpha_coeffs,
    apply_automorphism,
    aut_compose,
    aut_inverse,
    commutator_normal,
    commute_xy,
    is_normal_word,
    multiply_normal,
    normal_form,
    parse_ncpoly,
    parse_normal,
    pull_y2_left,
    shift_x,
)

RELATION = NCPoly.x() * NCPoly.y() - NCPoly.y() * NCPoly.x() - NCPoly.y() * NCPoly.y()


# ---------------------------------------------------------------------------
# Parsing and printing
# ---------------------------------------------------------------------------


def test_parse_mixed_expression():
    poly = parse_ncpoly("x*y - 1/2*y^2 + 3")

    assert poly.as_dict() == {"": Fraction(3), "xy": Fraction(1), "yy": Fraction(-1, 2)}


def test_parse_leading_minus_and_constant():
    assert parse_ncpoly("-x").as_dict() == {"x": Fraction(-1)}
    assert parse_ncpoly("1").as_dict() == {"": Fraction(1)}
    assert parse_ncpoly("2 * x^2*y").as_dict() == {"xxy": Fraction(2)}


def test_like_terms_cancel():
    assert parse_ncpoly("x*y - x*y").is_zero()


@pytest.mark.parametrize(
    ("text", "position"),
    [
        ("x*", 2),
        ("z", 0),
        ("2x", 1),
        ("x + + y", 4),
        ("", 0),
        ("1/0*x", 2),
    ],
)
def test_parse_errors_carry_position(text: str, position: int):
    with pytest.raises(ParseError) as err:
        parse_ncpoly(text)

    assert err.value.position == position
    assert err.value.code == "PARSE_ERROR"


def test_free_poly_text():
    assert str(parse_ncpoly("x*y*y - 3*y")) == "-3*y + x*y^2"


# ---------------------------------------------------------------------------
# Normal forms
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    ("text", "expected"),
    [
        ("x*y", "y*x + y^2"),
        ("x^2*y", "y*x^2 + 2*y^2*x + 2*y^3"),
        ("y", "y"),
        ("y*x", "y*x"),
        ("x*y - y*x - y^2", "0"),
    ],
)
def test_normal_form_examples(text: str, expected: str):
    assert str(parse_normal(text)) == expected


def test_normal_words():
    assert is_normal_word("")
    assert is_normal_word("yyxx")
    assert not is_normal_word("xy")


def test_normal_form_of_x_power_times_y_matches_closed_form():
    for n in range(1, 9):
        reduced = normal_form(NCPoly.x() ** n * NCPoly.y())
        expected = NormalPoly.from_dict({(k, n - k + 1): c for k, c in enumerate(alpha_coeffs(n), start=1)})
        assert reduced == expected


def test_alpha_coefficients():
    assert alpha_coeffs(2) == (Fraction(1), Fraction(2), Fraction(2))


def test_long_power_of_x_reduces_to_closed_form():
    reduced = normal_form(parse_ncpoly("x^40*y"))

    assert len(reduced.terms) == 41
    assert reduced.as_dict() == {(k, 41 - k): c for k, c in enumerate(alpha_coeffs(40), start=1)}


def test_very_long_word_reduces_without_recursion():
    reduced = normal_form(NCPoly.from_dict({"x" * 1100 + "y": Fraction(1)}))

    assert len(reduced.terms) == 1101
    assert reduced.as_dict()[(1, 1100)] == 1


def test_alternating_word_matches_leftmost_rewriting():
    word = "xy" * 4
    poly = NCPoly.from_dict({word: Fraction(1)})

    assert normal_form(poly) == normal_form(poly, lambda current, sites: sites[0])


def test_commute_xy_matches_rewriting():
    for l in range(5):
        for k in range(5):
            word = NCPoly.from_dict({"x" * l + "y" * k: Fraction(1)})
            assert commute_xy(l, k) == normal_form(word)


def test_rewrite_order_does_not_matter():
    rng = random.Random(7)

    def strategy(word: str, sites: list[int]) -> int:
        return rng.choice(sites)

    for _ in range(50):
        word = "".join(rng.choice("xy") for _ in range(rng.randint(0, 7)))
        poly = NCPoly.from_dict({word: Fraction(1)})
        assert normal_form(poly, strategy) == normal_form(poly)


def test_bad_strategy_detected():
    with pytest.raises(InvariantViolationError):
        normal_form(NCPoly.from_dict({"xy": Fraction(1)}), lambda word, sites: 5)


# ---------------------------------------------------------------------------
# Multiplication in normal form
# ---------------------------------------------------------------------------


def test_multiply_normal_x_times_y():
    product = multiply_normal(NormalPoly.monomial(0, 1), NormalPoly.monomial(1, 0))

    assert product == NormalPoly.from_dict({(1, 1): Fraction(1), (2, 0): Fraction(1)})


def test_multiply_normal_is_homomorphic():
    a, b = parse_ncpoly("x^2 + 2*y*x"), parse_ncpoly("y^2*x - x")

    assert normal_form(a) * normal_form(b) == normal_form(a * b)


def test_commutator_is_y_squared():
    assert commutator_normal(NormalPoly.monomial(0, 1), NormalPoly.monomial(1, 0)) == NormalPoly.monomial(2, 0)


def test_pull_y2_left():
    u = pull_y2_left(NormalPoly.monomial(0, 1), NormalPoly.constant(1))

    assert u == NormalPoly.from_dict({(0, 1): Fraction(1), (1, 0): Fraction(2)})


def test_pull_y2_left_general():
    a, b = parse_normal("x^2 - y"), parse_normal("x*y + 3")
    u = pull_y2_left(a, b)

    assert multiply_normal(NormalPoly.monomial(2, 0), u) == a * NormalPoly.monomial(2, 0) * b


# ---------------------------------------------------------------------------
# Automorphisms
# ---------------------------------------------------------------------------


def test_compose_applies_right_factor_first():
    f = Automorphism((Fraction(0), Fraction(1)), Fraction(2))
    g = Automorphism((Fraction(0), Fraction(0), Fraction(1)), Fraction(3))

    assert f.compose(g) == Automorphism((Fraction(0), Fraction(3), Fraction(4)), Fraction(6))


def test_inverse_round_trip():
    f = Automorphism((Fraction(1), Fraction(0), Fraction(-2)), Fraction(1, 3))

    assert aut_compose(f, aut_inverse(f)) == Automorphism.identity()
    assert aut_compose(aut_inverse(f), f) == Automorphism.identity()


def test_composition_is_associative():
    rng = random.Random(11)
    scales = [Fraction(1), Fraction(-2), Fraction(1, 3), Fraction(5)]

    for _ in range(40):
        f, g, h = (
            Automorphism(tuple(Fraction(rng.randint(-3, 3)) for _ in range(rng.randint(0, 3))), rng.choice(scales))
            for _ in range(3)
        )
        assert aut_compose(aut_compose(f, g), h) == aut_compose(f, aut_compose(g, h))


def test_zero_scale_rejected():
    with pytest.raises(ValueError):
        Automorphism((), Fraction(0))


def test_automorphisms_preserve_relation():
    f = Automorphism((Fraction(2), Fraction(-1), Fraction(1, 2)), Fraction(-3))

    assert apply_automorphism(RELATION, f).is_zero()


def test_apply_composition():
    f = Automorphism((Fraction(1), Fraction(1)), Fraction(2))
    g = Automorphism((Fraction(0), Fraction(0), Fraction(3)), Fraction(-1))
    p = parse_ncpoly("x^2*y - y*x + 5")

    assert apply_automorphism(p, f.compose(g)) == apply_automorphism(apply_automorphism(p, g), f)


def test_shift_x():
    assert shift_x(NCPoly.x(), Fraction(2)) == parse_normal("x + 2")
    assert shift_x(parse_normal("x*y"), Fraction(-1)) == parse_normal("x*y - y")
