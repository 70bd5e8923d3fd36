import pytest

from cp2q.qcoeff import ConfigurationError
from cp2q.suites import SUITES, RunConfig, run_suite


def test_config_validation():
    with pytest.raises(ConfigurationError):
        RunConfig(q=1.0).validate()
    with pytest.raises(ConfigurationError):
        RunConfig(prec=32).validate()
    with pytest.raises(ConfigurationError):
        RunConfig(nbound=6).validate()
    assert RunConfig(nbound=6, allow_large_n=True).validate().nbound == 6


@pytest.mark.parametrize("name", ["qcoeff", "reps", "khomology"])
def test_quick_suites_pass(name):
    rep = run_suite(name, RunConfig(quick=True, q=0.5))
    assert rep.passed, [c.name for c in rep.failures()]


def test_every_check_has_an_anchor():
    rep = run_suite("bundles", RunConfig(quick=True, q=0.5))
    assert rep.checks and all(c.anchor for c in rep.checks)
    d = rep.to_dict()
    assert set(d) >= {"suite", "checks", "config"}


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("bogus")
    assert set(SUITES) == {"qcoeff", "reps", "algebra", "bundles", "exterior", "calculus", "monopole",
                           "khomology", "equivariant"}
