from fractions import Fraction

import pytest

from cp2q.qcoeff import (InexactDivision, QRatio, QScalar, Surd, q_binomial, q_factorial, q_number,
                         q_trinomial, qsqrt, verify_tetrahedron_recursion)


def test_q_number_values():
    assert q_number(1) == 1
    assert q_number(0) == 0
    assert q_number(2) == QScalar.qpow(1) + QScalar.qpow(-1)
    assert q_number(-3) == -q_number(3)
    assert abs(float(q_number(3).evaluate(0.5)) - (0.25 + 1 + 4)) < 1e-12


def test_fractional_q_number():
    x = q_number(Fraction(1, 3))
    assert isinstance(x, (QScalar, QRatio))
    assert abs(float(x.evaluate(0.5)) - (0.5 ** (1 / 3) - 0.5 ** (-1 / 3)) / (0.5 - 2)) < 1e-12


def test_factorials_and_binomials():
    assert q_factorial(3) == q_number(2) * q_number(3)
    qp = QScalar.qpow
    assert q_binomial(4, 2) == qp(-4) + qp(-2) + 2 + qp(2) + qp(4)
    assert q_binomial(5, 0) == 1
    assert q_trinomial(1, 0, 0) == 1


def test_tetrahedron_recursion():
    assert verify_tetrahedron_recursion(4)["passed"]


def test_exact_division():
    a = q_number(6)
    assert a.exact_div(q_number(2)) * q_number(2) == a
    with pytest.raises(InexactDivision):
        q_number(5).exact_div(q_number(2))


def test_radicals():
    r = Surd(qsqrt(q_number(2)))
    assert r * r == Surd(q_number(2))
    assert abs(float(r.evaluate(0.5)) - 2.5 ** 0.5) < 1e-12


def test_bar_involution():
    x = QScalar.qpow(2) + 3 * QScalar.qpow(-1)
    assert x.bar().bar() == x
    assert q_number(4).bar() == q_number(4)
