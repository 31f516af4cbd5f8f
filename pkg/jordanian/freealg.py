"""Free algebra k<x,y> and its quotient by xy - yx - y^2.

Every element of the quotient has a unique representative in the basis
y^k x^l. Free words are plain strings over ``"xy"``; the empty string is the
unit.
"""

from __future__ import annotations

import logging
import re
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import groupby
from math import comb, factorial, prod

from .errors import InvariantViolationError, ParseError

_LOGGER = logging.getLogger(__name__)

Word = str
NormalMonomial = tuple[int, int]
RewriteStrategy = Callable[[Word, list[int]], int]

_NORMAL_WORD = re.compile(r"^y*x*$")


def _clean(terms: Mapping) -> dict:
    return {key: value for key, value in terms.items() if value}


# ---------------------------------------------------------------------------
# Free polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NCPoly:
    """Element of k<x,y>; ``terms`` sorted by (length, word), no zero coefficients."""

    terms: tuple[tuple[Word, Fraction], ...] = ()

    @classmethod
    def from_dict(cls, terms: Mapping[Word, Fraction]) -> NCPoly:
        for word in terms:
            if set(word) - {"x", "y"}:
                raise ValueError(f"invalid word {word!r}")
        return cls(tuple(sorted(_clean(terms).items(), key=lambda kv: (len(kv[0]), kv[0]))))

    @classmethod
    def constant(cls, value: int | Fraction) -> NCPoly:
        return cls.from_dict({"": Fraction(value)})

    @classmethod
    def x(cls) -> NCPoly:
        return cls.from_dict({"x": Fraction(1)})

    @classmethod
    def y(cls) -> NCPoly:
        return cls.from_dict({"y": Fraction(1)})

    def as_dict(self) -> dict[Word, Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((len(w) for w, _ in self.terms), default=-1)

    def __add__(self, other: NCPoly) -> NCPoly:
        out = self.as_dict()
        for w, c in other.terms:
            out[w] = out.get(w, 0) + c
        return NCPoly.from_dict(out)

    def __neg__(self) -> NCPoly:
        return NCPoly(tuple((w, -c) for w, c in self.terms))

    def __sub__(self, other: NCPoly) -> NCPoly:
        return self + (-other)

    def __mul__(self, other: NCPoly | int | Fraction) -> NCPoly:
        if not isinstance(other, NCPoly):
            return NCPoly.from_dict({w: c * other for w, c in self.terms})
        out: dict[Word, Fraction] = {}
        for w1, c1 in self.terms:
            for w2, c2 in other.terms:
                out[w1 + w2] = out.get(w1 + w2, 0) + c1 * c2
        return NCPoly.from_dict(out)

    def __rmul__(self, other: int | Fraction) -> NCPoly:
        return self * other

    def __pow__(self, k: int) -> NCPoly:
        out = NCPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __str__(self) -> str:
        return _format_terms([(c, _word_text(w)) for w, c in self.terms])


# ---------------------------------------------------------------------------
# Normal forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NormalPoly:
    """Element of R in the basis y^k x^l; ``terms`` are ((k, l), coeff) sorted by (k + l, k)."""

    terms: tuple[tuple[NormalMonomial, Fraction], ...] = ()

    @classmethod
    def from_dict(cls, terms: Mapping[NormalMonomial, Fraction]) -> NormalPoly:
        return cls(tuple(sorted(_clean(terms).items(), key=lambda kv: (sum(kv[0]), kv[0][0]))))

    @classmethod
    def monomial(cls, k: int, l: int, coeff: int | Fraction = 1) -> NormalPoly:
        return cls.from_dict({(k, l): Fraction(coeff)})

    @classmethod
    def constant(cls, value: int | Fraction) -> NormalPoly:
        return cls.monomial(0, 0, value)

    @classmethod
    def in_y(cls, coefficients: Sequence[Fraction]) -> NormalPoly:
        """Polynomial in y alone from ascending coefficients."""
        return cls.from_dict({(i, 0): Fraction(c) for i, c in enumerate(coefficients)})

    def as_dict(self) -> dict[NormalMonomial, Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((k + l for (k, l), _ in self.terms), default=-1)

    def to_ncpoly(self) -> NCPoly:
        return NCPoly.from_dict({"y" * k + "x" * l: c for (k, l), c in self.terms})

    def __add__(self, other: NormalPoly) -> NormalPoly:
        out = self.as_dict()
        for m, c in other.terms:
            out[m] = out.get(m, 0) + c
        return NormalPoly.from_dict(out)

    def __neg__(self) -> NormalPoly:
        return NormalPoly(tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other: NormalPoly) -> NormalPoly:
        return self + (-other)

    def __mul__(self, other: NormalPoly | int | Fraction) -> NormalPoly:
        if not isinstance(other, NormalPoly):
            return NormalPoly.from_dict({m: c * other for m, c in self.terms})
        return multiply_normal(self, other)

    def __rmul__(self, other: int | Fraction) -> NormalPoly:
        return self * other

    def __pow__(self, k: int) -> NormalPoly:
        out = NormalPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __str__(self) -> str:
        return _format_terms([(c, _monomial_text(k, l)) for (k, l), c in self.terms])


def is_normal_word(word: Word) -> bool:
    return bool(_NORMAL_WORD.match(word))


def _rewrite_sites(word: Word) -> list[int]:
    return [i for i in range(len(word) - 1) if word[i : i + 2] == "xy"]


def _reduce_word(word: Word) -> dict[NormalMonomial, Fraction]:
    """Normal form of a single word, built right to left one run of letters at a time."""
    out: dict[NormalMonomial, Fraction] = {(0, 0): Fraction(1)}
    for letter, run in reversed([(letter, len(list(group))) for letter, group in groupby(word)]):
        step: dict[NormalMonomial, Fraction] = {}
        for (k, l), c in out.items():
            if letter == "y":
                step[(k + run, l)] = step.get((k + run, l), 0) + c
                continue
            for (k2, l2), c2 in commute_xy(run, k).terms:
                key = (k2, l2 + l)
                step[key] = step.get(key, 0) + c * c2
        out = _clean(step)
    return out


def _reduce_word_with(word: Word, strategy: RewriteStrategy) -> dict[NormalMonomial, Fraction]:
    out: dict[NormalMonomial, Fraction] = {}
    pending: list[tuple[Word, Fraction]] = [(word, Fraction(1))]
    while pending:
        current, coeff = pending.pop()
        sites = _rewrite_sites(current)
        if not sites:
            k = len(current) - len(current.lstrip("y"))
            key = (k, len(current) - k)
            out[key] = out.get(key, 0) + coeff
            continue
        i = strategy(current, sites)
        if i not in sites:
            raise InvariantViolationError(f"strategy chose {i}, not a rewrite site of {current!r}")
        pending.append((current[:i] + "yx" + current[i + 2 :], coeff))
        pending.append((current[:i] + "yy" + current[i + 2 :], coeff))
    return out


def normal_form(p: NCPoly, strategy: RewriteStrategy | None = None) -> NormalPoly:
    """Reduce p with the rule xy -> yx + yy until every word reads y^k x^l.

    ``strategy`` picks which occurrence of ``xy`` to rewrite; the result does
    not depend on it.
    """
    out: dict[NormalMonomial, Fraction] = {}
    for word, coeff in p.terms:
        reduced = _reduce_word(word) if strategy is None else _reduce_word_with(word, strategy)
        for mono, c in reduced.items():
            out[mono] = out.get(mono, 0) + coeff * c
    return NormalPoly.from_dict(out)


def rising(k: int, j: int) -> int:
    """k (k+1) ... (k+j-1); 1 when j == 0."""
    return prod(range(k, k + j))


def commute_xy(l: int, k: int) -> NormalPoly:
    """Normal form of x^l y^k.

    Commuting x past a polynomial in y acts as the derivation y^2 d/dy, so
    x^l y^k = sum_j C(l, j) k(k+1)...(k+j-1) y^(k+j) x^(l-j).
    """
    return NormalPoly.from_dict({(k + j, l - j): Fraction(comb(l, j) * rising(k, j)) for j in range(l + 1)})


def alpha_coeffs(n: int) -> tuple[Fraction, ...]:
    """Coefficients of x^n y = sum_k alpha_k y^k x^(n-k+1); entry i holds alpha_(i+1), k = 1..n+1."""
    return tuple(Fraction(factorial(n), factorial(n - k + 1)) for k in range(1, n + 2))


def multiply_normal(a: NormalPoly, b: NormalPoly) -> NormalPoly:
    out: dict[NormalMonomial, Fraction] = {}
    for (k1, l1), c1 in a.terms:
        for (k2, l2), c2 in b.terms:
            for (k, l), c in commute_xy(l1, k2).terms:
                key = (k1 + k, l + l2)
                out[key] = out.get(key, 0) + c1 * c2 * c
    return NormalPoly.from_dict(out)


def commutator_normal(a: NormalPoly, b: NormalPoly) -> NormalPoly:
    return multiply_normal(a, b) - multiply_normal(b, a)


def pull_y2_left(a: NormalPoly, b: NormalPoly) -> NormalPoly:
    """u with a y^2 b == y^2 u; witnesses that R y^2 R = y^2 R."""
    product = multiply_normal(multiply_normal(a, NormalPoly.monomial(2, 0)), b)
    if any(k < 2 for (k, _), _ in product.terms):
        raise InvariantViolationError(f"{product} is not in y^2 R")
    return NormalPoly.from_dict({(k - 2, l): c for (k, l), c in product.terms})


# ---------------------------------------------------------------------------
# Automorphisms x -> c x + p(y), y -> c y
# ---------------------------------------------------------------------------


def _trim(coefficients: Iterable[Fraction]) -> tuple[Fraction, ...]:
    out = [Fraction(c) for c in coefficients]
    while out and not out[-1]:
        out.pop()
    return tuple(out)


def _poly_add(p: Sequence[Fraction], q: Sequence[Fraction]) -> tuple[Fraction, ...]:
    size = max(len(p), len(q))
    return _trim((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(size))


@dataclass(frozen=True)
class Automorphism:
    """f(x) = c x + p(y), f(y) = c y; ``p`` holds ascending coefficients."""

    p: tuple[Fraction, ...]
    c: Fraction

    def __post_init__(self) -> None:
        if not self.c:
            raise ValueError("automorphism scale must be nonzero")
        object.__setattr__(self, "p", _trim(self.p))
        object.__setattr__(self, "c", Fraction(self.c))

    @classmethod
    def identity(cls) -> Automorphism:
        return cls((), Fraction(1))

    @classmethod
    def shift(cls, lam: Fraction, mu: Fraction = Fraction(0)) -> Automorphism:
        """x -> x + lam + mu y."""
        return cls((Fraction(lam), Fraction(mu)), Fraction(1))

    def compose(self, other: Automorphism) -> Automorphism:
        """self o other: apply ``other`` first."""
        scaled = tuple(a * self.c**i for i, a in enumerate(other.p))
        return Automorphism(_poly_add(tuple(other.c * a for a in self.p), scaled), self.c * other.c)

    def inverse(self) -> Automorphism:
        return Automorphism(tuple(-a / self.c ** (i + 1) for i, a in enumerate(self.p)), 1 / self.c)

    def image_x(self) -> NormalPoly:
        return NormalPoly.monomial(0, 1, self.c) + NormalPoly.in_y(self.p)

    def image_y(self) -> NormalPoly:
        return NormalPoly.monomial(1, 0, self.c)


def aut_compose(f: Automorphism, g: Automorphism) -> Automorphism:
    return f.compose(g)


def aut_inverse(f: Automorphism) -> Automorphism:
    return f.inverse()


def apply_automorphism(p: NCPoly | NormalPoly, f: Automorphism) -> NormalPoly:
    """Normal form of f(p)."""
    if isinstance(p, NormalPoly):
        p = p.to_ncpoly()
    images = {"x": f.image_x(), "y": f.image_y()}
    out = NormalPoly()
    for word, coeff in p.terms:
        term = NormalPoly.constant(coeff)
        for letter in word:
            term = multiply_normal(term, images[letter])
        out = out + term
    return out


def shift_x(p: NCPoly | NormalPoly, lam: Fraction) -> NormalPoly:
    return apply_automorphism(p, Automorphism((Fraction(lam),), Fraction(1)))


# ---------------------------------------------------------------------------
# Text form
# ---------------------------------------------------------------------------


def _power_text(letter: str, exponent: int) -> str:
    if exponent == 0:
        return ""
    return letter if exponent == 1 else f"{letter}^{exponent}"


def _monomial_text(k: int, l: int) -> str:
    return "*".join(part for part in (_power_text("y", k), _power_text("x", l)) if part)


def _word_text(word: Word) -> str:
    return "*".join(_power_text(m.group(0)[0], len(m.group(0))) for m in re.finditer(r"x+|y+", word))


def _format_terms(terms: list[tuple[Fraction, str]]) -> str:
    if not terms:
        return "0"
    pieces = []
    for index, (coeff, mono) in enumerate(terms):
        sign = "-" if coeff < 0 else "+"
        magnitude = abs(coeff)
        if not mono:
            body = str(magnitude)
        elif magnitude == 1:
            body = mono
        else:
            body = f"{magnitude}*{mono}"
        if index == 0:
            pieces.append(("-" if sign == "-" else "") + body)
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)


_TOKEN = re.compile(r"(?P<num>\d+)|(?P<op>[-+*/^])|(?P<var>[xy])")


class _Parser:
    """expr := ['-'] term (('+'|'-') term)*
    term := coef | [coef '*'] factor ('*' factor)*
    factor := ('x'|'y') ['^' uint]
    coef := uint ['/' uint]
    """

    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos].isspace():
                pos += 1
                continue
            match = _TOKEN.match(text, pos)
            if not match:
                raise ParseError(f"unexpected character {text[pos]!r}", pos)
            kind = match.lastgroup
            self.tokens.append((kind, match.group(kind), pos))
            pos = match.end()
        self.index = 0

    def _peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def _take(self) -> tuple[str, str, int]:
        token = self._peek()
        if token is None:
            raise ParseError("unexpected end of input", len(self.text))
        self.index += 1
        return token

    def _expect(self, kind: str, value: str | None = None) -> tuple[str, str, int]:
        token = self._take()
        if token[0] != kind or (value is not None and token[1] != value):
            raise ParseError(f"expected {value or kind}, found {token[1]!r}", token[2])
        return token

    def parse(self) -> NCPoly:
        if not self.tokens:
            raise ParseError("empty polynomial", 0)
        sign = 1
        token = self._peek()
        if token[0] == "op" and token[1] in "+-":
            self._take()
            sign = -1 if token[1] == "-" else 1
        result = self._term() * sign
        while (token := self._peek()) is not None:
            if token[0] != "op" or token[1] not in "+-":
                raise ParseError(f"expected '+' or '-', found {token[1]!r}", token[2])
            self._take()
            term = self._term()
            result = result + term if token[1] == "+" else result - term
        return result

    def _coef(self) -> Fraction:
        numerator = int(self._expect("num")[1])
        token = self._peek()
        if token is not None and token[0] == "op" and token[1] == "/":
            self._take()
            denominator_token = self._expect("num")
            denominator = int(denominator_token[1])
            if denominator == 0:
                raise ParseError("zero denominator", denominator_token[2])
            return Fraction(numerator, denominator)
        return Fraction(numerator)

    def _term(self) -> NCPoly:
        token = self._peek()
        if token is None:
            raise ParseError("expected a term", len(self.text))
        coeff = Fraction(1)
        if token[0] == "num":
            coeff = self._coef()
            after = self._peek()
            if after is None or after[0] != "op" or after[1] != "*":
                return NCPoly.constant(coeff)
            self._take()
        word = self._factor()
        while (token := self._peek()) is not None and token[0] == "op" and token[1] == "*":
            self._take()
            word += self._factor()
        return NCPoly.from_dict({word: coeff})

    def _factor(self) -> Word:
        letter = self._expect("var")[1]
        token = self._peek()
        if token is not None and token[0] == "op" and token[1] == "^":
            self._take()
            return letter * int(self._expect("num")[1])
        return letter


def parse_ncpoly(text: str) -> NCPoly:
    """Parse e.g. ``"x*y - 1/2*y^2 + 3"`` into a free polynomial."""
    poly = _Parser(text).parse()
    _LOGGER.debug("Parsed %r as %s", text, poly)
    return poly


def parse_normal(text: str) -> NormalPoly:
    return normal_form(parse_ncpoly(text))
