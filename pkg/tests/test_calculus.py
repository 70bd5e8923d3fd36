import pytest

from cp2q import calculus as C
from cp2q.algebra import NormalForm, p
from cp2q.qcoeff import Surd


def test_generator_derivatives():
    assert C.verify_generator_derivatives().passed


def test_xy_invariance():
    assert C.check_xy_invariance().passed


def test_axioms_that_hold():
    r = C.verify_complex_axioms(C.default_samples(4, 0))
    by = {c.name: c.passed for c in r.checks}
    for name in ("partial^2 = 0", "dbar^2 = 0", "dbar a = -(partial a*)*", "derivatives are invariant forms",
                 "Leibniz rule on functions", "graded Leibniz on a dbar b"):
        assert by[name], name


@pytest.mark.xfail(strict=True, reason="partial dbar + dbar partial does not vanish with this wedge")
def test_anticommutator_vanishes():
    r = C.verify_complex_axioms(C.default_samples(0, 0))
    assert next(c for c in r.checks if c.name == "partial dbar + dbar partial = 0").passed


def test_dp_expansion():
    assert C.verify_dp_expansion(3, 1).passed


def test_integral_of_volume():
    assert C.integrate(C.volume_form()) == Surd(1)
    assert C.integrate(C.Form.function(p(1, 1))) == Surd(0)


def test_integral_needs_haar_for_nonconstant_top():
    w = C.Form.of((2, 2), [p(1, 1)])
    with pytest.raises(C.UnsupportedIntegrand):
        C.integrate(w)


def test_derivative_of_constant():
    one = C.Form.function(NormalForm.scalar(3))
    assert C.partial(one).is_zero() and C.dbar(one).is_zero()
