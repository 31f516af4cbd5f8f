"""Acceptance suites: every structural statement about R checked exactly on
seeded samples.
"""

from __future__ import annotations

import asyncio
import logging
import random
from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction

from .const import (
    ALL_SUITES,
    DEFAULT_MAX_N,
    DEFAULT_SEED,
    EPSILON_DIMENSIONS,
    RINGEL_WILD_CODIMENSION,
    SAMPLE_COEFFS,
    SAMPLE_EIGENVALUES,
    SUITE_AUTO_EQUIVALENCE,
    SUITE_AUTOMORPHISMS,
    SUITE_CANONICAL,
    SUITE_CONFLUENCE,
    SUITE_DECOMPOSITION,
    SUITE_DIMENSION_BOUND,
    SUITE_DIMENSION_SEQUENCE,
    SUITE_EPSILON,
    SUITE_FAITHFULNESS,
    SUITE_JACOBIAN,
    SUITE_NORMAL_FORM,
    SUITE_QUIVERS,
    SUITE_RINGEL,
    SUITE_STRATUM,
    SUITE_STRUCTURE,
)
from .errors import EigenvaluesNotRationalError, JordanianError
from .exact import QMat, commutator, is_nilpotent, is_upper_triangular, rank
from .freealg import (
    Automorphism,
    NCPoly,
    NormalPoly,
    alpha_coeffs,
    apply_automorphism,
    commute_xy,
    normal_form,
    parse_normal,
)
from .imagealg import (
    corner_ideal,
    describe_algebra,
    diagonal_profile,
    dimension_bound,
    full_block_image_canonical,
    idempotents,
    image_algebra_basis,
    loop_span_dim,
    quiver,
    radical_basis,
    ringel_a4_relation_report,
    wild_quotient_codimension,
)
from .repspace import (
    FullBlockParams,
    build_epsilon,
    build_full_block,
    completely_reducible,
    conjugate_rep,
    direct_sum,
    epsilon_monomial,
    evaluate,
    faithfulness_witness,
    random_full_block,
    random_rep,
    random_unimodular,
    twist,
)
from .structure import (
    are_isomorphic,
    auto_equivalent_full_block,
    canonical_full_block,
    canonical_pair_rep,
    decompose,
    extension_candidates,
    hook_family,
    is_indecomposable,
    jacobian_rank,
    simultaneous_triangularize,
)

_LOGGER = logging.getLogger(__name__)

DIMENSION_BOUND_SAMPLES = 100
FULL_BLOCK_EVERY = 5
CANONICAL_SAMPLES = 50
JACOBIAN_SAMPLES = 20
HOOK_PAIRS = 10
SEPARATION_PAIRS = 12
NILPOTENCY_SAMPLES = 200
STRUCTURE_SAMPLES = 40


@dataclass(frozen=True, kw_only=True)
class SuiteReport:
    name: str
    passed: bool
    checked: int
    failures: tuple[str, ...] = ()
    details: dict = field(default_factory=dict)


class _Tally:
    """Collects individual check outcomes for one suite."""

    def __init__(self, name: str):
        self.name = name
        self.checked = 0
        self.failures: list[str] = []
        self.details: dict = {}

    def expect(self, condition: bool, message: str) -> None:
        self.checked += 1
        if not condition:
            _LOGGER.error("%s: %s", self.name, message)
            self.failures.append(message)

    def report(self) -> SuiteReport:
        return SuiteReport(
            name=self.name,
            passed=not self.failures,
            checked=self.checked,
            failures=tuple(self.failures),
            details=self.details,
        )


def _rng(seed: int, name: str) -> random.Random:
    return random.Random(f"{seed}:{name}")


def _random_word(rng: random.Random, length: int) -> str:
    return "".join(rng.choice("xy") for _ in range(length))


def _random_normal(rng: random.Random, degree: int) -> NormalPoly:
    terms = {}
    for _ in range(rng.randint(1, 4)):
        k = rng.randint(0, degree)
        terms[(k, rng.randint(0, degree - k))] = rng.choice(SAMPLE_COEFFS)
    poly = NormalPoly.from_dict(terms)
    return poly if not poly.is_zero() else NormalPoly.monomial(0, degree)


def _random_automorphism(rng: random.Random) -> Automorphism:
    scale = Fraction(0)
    while not scale:
        scale = rng.choice(SAMPLE_COEFFS)
    return Automorphism(tuple(rng.choice(SAMPLE_COEFFS) for _ in range(rng.randint(0, 3))), scale)


def _same(r1, r2) -> bool:
    return (r1.X, r1.Y) == (r2.X, r2.Y)


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


def check_normal_form(seed: int, max_n: int) -> SuiteReport:
    tally = _Tally(SUITE_NORMAL_FORM)
    for text, expected in (("x*y", "y*x + y^2"), ("x^2*y", "y*x^2 + 2*y^2*x + 2*y^3"), ("y", "y")):
        got = str(parse_normal(text))
        tally.expect(got == expected, f"nf({text}) = {got}, expected {expected}")
    relation = NCPoly.x() * NCPoly.y() - NCPoly.y() * NCPoly.x() - NCPoly.y() * NCPoly.y()
    tally.expect(normal_form(relation).is_zero(), "defining relation does not reduce to zero")
    for n in range(1, max_n + 1):
        reduced = normal_form(NCPoly.x() ** n * NCPoly.y())
        expected = NormalPoly.from_dict({(k, n - k + 1): c for k, c in enumerate(alpha_coeffs(n), start=1)})
        tally.expect(reduced == expected, f"x^{n} y reduces to {reduced}")
    for l in range(6):
        for k in range(6):
            word = NCPoly.from_dict({"x" * l + "y" * k: Fraction(1)})
            tally.expect(normal_form(word) == commute_xy(l, k), f"x^{l} y^{k} closed form disagrees")
    return tally.report()


def check_confluence(seed: int, max_n: int) -> SuiteReport:
    tally = _Tally(SUITE_CONFLUENCE)
    rng = _rng(seed, SUITE_CONFLUENCE)

    def strategy(word: str, sites: list[int]) -> int:
        return rng.choice(sites)

    for _ in range(100):
        word = NCPoly.from_dict({_random_word(rng, rng.randint(0, 8)): Fraction(1)})
        tally.expect(normal_form(word, strategy) == normal_form(word), f"rewrite order changes {word}")
    return tally.report()


def check_automorphisms(seed: int, max_n: int) -> SuiteReport:
    tally = _Tally(SUITE_AUTOMORPHISMS)
    rng = _rng(seed, SUITE_AUTOMORPHISMS)
    relation = NCPoly.x() * NCPoly.y() - NCPoly.y() * NCPoly.x() - NCPoly.y() * NCPoly.y()
    for _ in range(30):
        f, g, h = _random_automorphism(rng), _random_automorphism(rng), _random_automorphism(rng)
        p = _random_normal(rng, 3)
        tally.expect(
            f.compose(g).compose(h) == f.compose(g.compose(h)), f"composition of {f}, {g}, {h} is not associative"
        )
        tally.expect(f.compose(f.inverse()) == Automorphism.identity(), f"{f} o f^-1 is not the identity")
        tally.expect(
            apply_automorphism(p, f.compose(g)) == apply_automorphism(apply_automorphism(p, g), f),
            f"composition order broken for {f}, {g}",
        )
        image = apply_automorphism(relation, f)
        tally.expect(image.is_zero(), f"{f} does not preserve the relation")
        r = build_epsilon(rng.randint(2, min(max_n, 6)))
        tally.expect(_same(twist(twist(r, f), g), twist(r, f.compose(g))), "twist is not an action")
    return tally.report()


def check_epsilon(seed: int, max_n: int) -> SuiteReport:
    tally = _Tally(SUITE_EPSILON)
    for n in range(1, min(max_n + 2, 10) + 1):
        rep = build_epsilon(n)
        for k in range(n):
            for m in range(n - k):
                tally.expect(
                    epsilon_monomial(n, k, m) == evaluate(NormalPoly.monomial(k, m), rep),
                    f"epsilon_{n}(y^{k} x^{m}) closed form disagrees",
                )
    return tally.report()


def check_dimension_sequence(seed: int, max_n: int) -> SuiteReport:
    tally = _Tally(SUITE_DIMENSION_SEQUENCE)
    dims = []
    for n, expected in enumerate(EPSILON_DIMENSIONS[: max(max_n + 2, 4)], start=1):
        algebra = full_block_image_canonical(n)
        dims.append(algebra.dim)
        tally.expect(algebra.dim == expected == dimension_bound(n), f"dim A_{n} = {algebra.dim}, expected {expected}")
        profile = diagonal_profile(algebra)
        tally.expect(
            profile == tuple(min(d + 1, n - d) for d in range(n)), f"diagonal profile of A_{n} is {profile}"
        )
    tally.details["dimensions"] = dims
    return tally.report()


def check_dimension_bound(seed: int, max_n: int) -> SuiteReport:
    tally = _Tally(SUITE_DIMENSION_BOUND)
    rng = _rng(seed, SUITE_DIMENSION_BOUND)
    for n in range(2, max_n + 1):
        bound = dimension_bound(n)
        for index in range(DIMENSION_BOUND_SAMPLES):
            full = index % FULL_BLOCK_EVERY == 0
            rep = random_full_block(n, rng, conjugated=True) if full else random_rep(n, rng, conjugated=True)
            dim = image_algebra_basis(rep).dim
            tally.expect(dim <= bound, f"n={n} type {rep.partition}: dim {dim} exceeds {bound}")
            if full:
                tally.expect(dim == bound, f"full block n={n}: dim {dim}, bound {bound}")
    return tally.report()


def check_faithfulness(seed: int, max_n: int) -> SuiteReport:
    tally = _Tally(SUITE_FAITHFULNESS)
    rng = _rng(seed, SUITE_FAITHFULNESS)
    for _ in range(50):
        poly = _random_normal(rng, rng.randint(0, 5))
        n0, nonzero = faithfulness_witness(poly)
        tally.expect(nonzero, f"epsilon_{n0} kills {poly}")
    return tally.report()


def check_structure(seed: int, max_n: int) -> SuiteReport:
    tally = _Tally(SUITE_STRUCTURE)
    rng = _rng(seed, SUITE_STRUCTURE)
    skipped = 0
    for index in range(NILPOTENCY_SAMPLES):
        rep = random_rep(rng.randint(1, min(max_n, 5)), rng, conjugated=rng.random() < 0.5)
        tally.expect(is_nilpotent(rep.Y), "Y is not nilpotent")
        tally.expect(is_nilpotent(commutator(rep.X, rep.Y)), "[X, Y] is not nilpotent")
        if index >= STRUCTURE_SAMPLES:
            continue
        try:
            desc = describe_algebra(rep)
            units = idempotents(rep)
            g = simultaneous_triangularize(rep)
        except EigenvaluesNotRationalError:
            skipped += 1
            continue
        radical = radical_basis(image_algebra_basis(rep))
        tally.expect(radical.contains(rep.Y), "Y is not in the radical")
        radical_dim = desc.radical_dims[0] if desc.radical_dims else 0
        tally.expect(desc.dim == desc.semisimple_rank + radical_dim, "dim A != r + dim J")
        total = QMat.zeros(rep.n)
        for i, e in enumerate(units):
            total = total + e
            for j, f in enumerate(units):
                tally.expect((e @ f) == (e if i == j else QMat.zeros(rep.n)), "idempotents not orthogonal")
        tally.expect(total == QMat.identity(rep.n), "idempotents do not sum to I")
        moved = conjugate_rep(rep, g)
        tally.expect(is_upper_triangular(moved.X) and is_upper_triangular(moved.Y), "triangularization failed")
    tally.details["skipped_non_split"] = skipped
    return tally.report()


def check_quivers(seed: int, max_n: int) -> SuiteReport:
    tally = _Tally(SUITE_QUIVERS)
    for n in range(3, max_n + 1):
        rep = build_epsilon(n)
        q = quiver(rep)
        tally.expect(len(q.vertices) == 1 and q.loops == (2,), f"quiver of epsilon_{n} is {q}")
        tally.expect(loop_span_dim(rep) == 2, f"loop span of epsilon_{n} is not 2")
    q2 = quiver(build_epsilon(2))
    tally.expect(q2.loops == (1,), f"quiver of epsilon_2 is {q2}")
    semisimple = quiver(completely_reducible([Fraction(1), Fraction(2), Fraction(3)]))
    tally.expect(semisimple.arrow_count == 0, "diagonal representation has arrows")
    return tally.report()


def check_decomposition(seed: int, max_n: int) -> SuiteReport:
    tally = _Tally(SUITE_DECOMPOSITION)
    rng = _rng(seed, SUITE_DECOMPOSITION)
    for _ in range(20):
        n1, n2 = rng.randint(1, 3), rng.randint(1, 3)
        lam1, lam2 = rng.sample(SAMPLE_EIGENVALUES, 2)
        left = canonical_pair_rep(n1, lam1, rng.choice(SAMPLE_COEFFS))
        right = canonical_pair_rep(n2, lam2, rng.choice(SAMPLE_COEFFS))
        rep = conjugate_rep(direct_sum(left, right), random_unimodular(n1 + n2, rng))
        d = decompose(rep)
        tally.expect(len(d.summands) == 2, f"{len(d.summands)} summands for two eigenvalues")
        tally.expect(sum(s.rep.n for s in d.summands) == rep.n, "summand sizes do not add up")
        tally.expect(not is_indecomposable(rep), "sum of two blocks reported indecomposable")
    for a, b in ((Fraction(0), Fraction(1)), (Fraction(1, 2), Fraction(-2)), (Fraction(3), Fraction(1))):
        for candidate in extension_candidates(a, b):
            tally.expect(len(decompose(candidate).summands) == 2, f"extension of S_{a} by S_{b} does not split")
    return tally.report()


def check_canonical(seed: int, max_n: int) -> SuiteReport:
    tally = _Tally(SUITE_CANONICAL)
    rng = _rng(seed, SUITE_CANONICAL)
    for n in range(3, max_n + 1):
        pairs = []
        for _ in range(CANONICAL_SAMPLES):
            lam, c = rng.choice(SAMPLE_EIGENVALUES), tuple(rng.choice(SAMPLE_COEFFS) for _ in range(n - 1))
            rep = conjugate_rep(build_full_block(n, FullBlockParams(lam=lam, c=c)), random_unimodular(n, rng))
            pair = canonical_full_block(rep)
            tally.expect((pair.lam, pair.mu) == (lam, c[0]), f"n={n}: recovered ({pair.lam}, {pair.mu})")
            pairs.append((lam, c[0]))
        distinct = sorted(set(pairs))
        candidates = [(a, b) for i, a in enumerate(distinct) for b in distinct[i + 1 :]]
        for a, b in rng.sample(candidates, min(SEPARATION_PAIRS, len(candidates))):
            first = canonical_pair_rep(n, *a)
            second = conjugate_rep(canonical_pair_rep(n, *b), random_unimodular(n, rng))
            result = are_isomorphic(first, second, seed=seed)
            tally.expect(not result.isomorphic, f"n={n}: pairs {a} and {b} are isomorphic")
    return tally.report()


def check_jacobian(seed: int, max_n: int) -> SuiteReport:
    tally = _Tally(SUITE_JACOBIAN)
    rng = _rng(seed, SUITE_JACOBIAN)
    for n in range(3, min(max_n + 2, 10) + 1):
        for _ in range(JACOBIAN_SAMPLES):
            params = FullBlockParams(
                lam=rng.choice(SAMPLE_EIGENVALUES), c=tuple(rng.choice(SAMPLE_COEFFS) for _ in range(n - 1))
            )
            got = jacobian_rank(n, params, rng=rng)
            tally.expect(got == n - 2, f"n={n}: Jacobian rank {got}")
    return tally.report()


def check_ringel(seed: int, max_n: int) -> SuiteReport:
    tally = _Tally(SUITE_RINGEL)
    for n in range(5, max_n + 1):
        codim = wild_quotient_codimension(n)
        tally.expect(codim == RINGEL_WILD_CODIMENSION, f"n={n}: codimension {codim}")
    ideal = corner_ideal(4)
    tally.expect(ideal.dim == 1, f"corner ideal of A_4 has dim {ideal.dim}")
    tally.expect(full_block_image_canonical(4).dim - ideal.dim == 5, "A_4 / corner is not 5-dimensional")
    tally.expect(full_block_image_canonical(3).dim == 4, "dim A_3 != 4")
    tally.details["a4_relation"] = ringel_a4_relation_report()
    return tally.report()


def check_auto_equivalence(seed: int, max_n: int) -> SuiteReport:
    tally = _Tally(SUITE_AUTO_EQUIVALENCE)
    rng = _rng(seed, SUITE_AUTO_EQUIVALENCE)
    for n in range(2, max_n + 1):
        rep = random_full_block(n, rng, conjugated=True)
        result = auto_equivalent_full_block(rep, build_epsilon(n))
        tally.expect(result.equivalent, f"n={n}: not auto-equivalent to epsilon_{n}")
    for n in (4, 5):
        for _ in range(HOOK_PAIRS):
            alpha, beta = rng.sample([v for v in SAMPLE_COEFFS if v], 2)
            result = are_isomorphic(hook_family(n, alpha), hook_family(n, beta), seed=seed)
            tally.expect(not result.isomorphic, f"n={n}: hook({alpha}) and hook({beta}) are isomorphic")
    return tally.report()


def check_stratum(seed: int, max_n: int) -> SuiteReport:
    tally = _Tally(SUITE_STRATUM)
    rng = _rng(seed, SUITE_STRATUM)
    for n in range(1, min(max_n, 6) + 1):
        rep = random_full_block(n, rng, conjugated=True)
        tally.expect(rank(rep.Y) == n - 1 and is_indecomposable(rep), f"n={n}: full block decomposes")
    for alpha in (Fraction(1), Fraction(2), Fraction(-1, 3)):
        hook = hook_family(3, alpha)
        tally.expect(len(decompose(hook).summands) == 1, f"hook({alpha}) splits by eigenvalue")
        tally.expect(
            are_isomorphic(hook_family(3, alpha, balanced=True), hook_family(3, Fraction(1)), seed=seed).isomorphic,
            f"balanced hook({alpha}) is not isomorphic to hook(1)",
        )
    tally.expect(
        not are_isomorphic(hook_family(3, Fraction(1)), hook_family(3, Fraction(2)), seed=seed).isomorphic,
        "hook(1) and hook(2) are isomorphic",
    )
    return tally.report()


SUITES: dict[str, Callable[[int, int], SuiteReport]] = {
    SUITE_NORMAL_FORM: check_normal_form,
    SUITE_CONFLUENCE: check_confluence,
    SUITE_AUTOMORPHISMS: check_automorphisms,
    SUITE_EPSILON: check_epsilon,
    SUITE_DIMENSION_SEQUENCE: check_dimension_sequence,
    SUITE_DIMENSION_BOUND: check_dimension_bound,
    SUITE_FAITHFULNESS: check_faithfulness,
    SUITE_STRUCTURE: check_structure,
    SUITE_QUIVERS: check_quivers,
    SUITE_DECOMPOSITION: check_decomposition,
    SUITE_CANONICAL: check_canonical,
    SUITE_JACOBIAN: check_jacobian,
    SUITE_RINGEL: check_ringel,
    SUITE_AUTO_EQUIVALENCE: check_auto_equivalence,
    SUITE_STRATUM: check_stratum,
}


def _run_one(name: str, seed: int, max_n: int) -> SuiteReport:
    _LOGGER.debug("Running suite %s (seed=%s, max_n=%s)", name, seed, max_n)
    try:
        return SUITES[name](seed, max_n)
    except JordanianError as err:
        _LOGGER.error("Suite %s aborted: %s", name, err)
        return SuiteReport(name=name, passed=False, checked=0, failures=(f"{err.code}: {err}",))
    except Exception as err:  # pylint: disable=broad-except
        _LOGGER.exception("Suite %s crashed", name)
        return SuiteReport(name=name, passed=False, checked=0, failures=(f"{type(err).__name__}: {err}",))


async def run_suites(
    names: list[str] | None = None, *, seed: int = DEFAULT_SEED, max_n: int = DEFAULT_MAX_N
) -> list[SuiteReport]:
    """Run suites in worker threads; reports come back sorted by name."""
    selected = list(names or ALL_SUITES)
    unknown = [name for name in selected if name not in SUITES]
    if unknown:
        raise ValueError(f"unknown suites: {', '.join(unknown)}")
    reports = await asyncio.gather(*(asyncio.to_thread(_run_one, name, seed, max_n) for name in selected))
    return sorted(reports, key=lambda report: report.name)
