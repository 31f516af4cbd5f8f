import pytest

from jordanian import checks
from jordanian.const import ALL_SUITES, SUITE_AUTOMORPHISMS, SUITE_EPSILON, SUITE_NORMAL_FORM, SUITE_RINGEL
from jordanian.errors import InconclusiveError


async def test_run_selected_suites():
    reports = await checks.run_suites([SUITE_RINGEL, SUITE_NORMAL_FORM], seed=9, max_n=5)

    assert [r.name for r in reports] == sorted([SUITE_RINGEL, SUITE_NORMAL_FORM])
    assert all(r.passed for r in reports)
    assert all(r.checked > 0 for r in reports)
    ringel = next(r for r in reports if r.name == SUITE_RINGEL)
    assert ringel.details["a4_relation"] == {"negative_superdiagonal": True, "positive_superdiagonal": False}


async def test_all_suites_pass_on_small_sizes():
    reports = await checks.run_suites(seed=2024, max_n=4)

    assert sorted(r.name for r in reports) == sorted(ALL_SUITES)
    failures = {r.name: r.failures for r in reports if not r.passed}
    assert failures == {}


async def test_unknown_suite_is_rejected():
    with pytest.raises(ValueError):
        await checks.run_suites(["no-such-suite"])


async def test_aborted_suite_is_reported(monkeypatch: pytest.MonkeyPatch):
    def boom(seed: int, max_n: int) -> checks.SuiteReport:
        raise InconclusiveError("gave up")

    monkeypatch.setitem(checks.SUITES, SUITE_EPSILON, boom)

    (report,) = await checks.run_suites([SUITE_EPSILON], seed=1, max_n=3)

    assert not report.passed
    assert report.checked == 0
    assert report.failures == ("INCONCLUSIVE: gave up",)


async def test_crashing_suite_becomes_a_failed_report(monkeypatch: pytest.MonkeyPatch):
    def boom(seed: int, max_n: int) -> checks.SuiteReport:
        raise ZeroDivisionError("division by zero")

    monkeypatch.setitem(checks.SUITES, SUITE_EPSILON, boom)

    reports = await checks.run_suites([SUITE_EPSILON, SUITE_RINGEL], seed=1, max_n=5)

    by_name = {r.name: r for r in reports}
    assert by_name[SUITE_EPSILON].failures == ("ZeroDivisionError: division by zero",)
    assert by_name[SUITE_RINGEL].passed


async def test_too_small_size_does_not_escape():
    (report,) = await checks.run_suites([SUITE_AUTOMORPHISMS], seed=1, max_n=1)

    assert not report.passed
    assert report.failures[0].startswith("ValueError")
