import pytest

from urntubes.checks import SUITES, run_suite


@pytest.mark.parametrize("suite", SUITES)
def test_suites_hold(suite):
    reports = run_suite(suite, seed=11, trials=5)
    assert reports and all(r.holds for r in reports)


def test_suites_are_reproducible():
    a = [r.to_json() for r in run_suite("firstfull", seed=3, trials=4)]
    b = [r.to_json() for r in run_suite("firstfull", seed=3, trials=4)]
    assert a == b


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope")
