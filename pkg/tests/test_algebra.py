import random

import pytest

from cp2q.actions import left_action, right_action
from cp2q.algebra import (NormalForm, RewriteBudgetExceeded, normalize, p, quantum_determinant_word, u,
                          verify_random_normalization, verify_star_involution, z, zs)
from cp2q.hopf import UqWord
from cp2q.parser import ParseError, parse_expr
from cp2q.qcoeff import QScalar, Surd
from cp2q.spaces import (PROJ_PLANE, SubalgebraTag, membership_test, projective_relations, q_trace,
                         sphere_relations, unitarity_identities, verify_peter_weyl)

qp = QScalar.qpow


def test_sphere_relation():
    assert z(1) * zs(1) + z(2) * zs(2) + z(3) * zs(3) == NormalForm.scalar(1)


def test_sphere_and_plane_relations_vanish():
    assert all(v.is_zero() for v in sphere_relations().values())
    assert all(v.is_zero() for v in projective_relations().values())
    assert all(v.is_zero() for v in unitarity_identities().values())


def test_quantum_determinant_is_one():
    from cp2q.algebra import _lp_surd
    total = NormalForm()
    for c, w in quantum_determinant_word():
        total = total + normalize(w, Surd(_lp_surd(c)))
    assert total == NormalForm.scalar(1)


def test_star_of_u11():
    assert u(1, 1).star() == u(2, 2) * u(3, 3) - (u(2, 3) * u(3, 2)).scale(qp(1))


def test_commutation_z():
    # z2 z1 = q^-1 z1 z2 in the PBW order
    assert normalize([(3, 2), (3, 1)]) == (z(1) * z(2)).scale(qp(-1))
    assert (zs(3) * z(3) - z(3) * zs(3)) == (z(1) * zs(1) + z(2) * zs(2)).scale(1 - qp(2))


def test_q_trace():
    assert (q_trace() - 1).is_zero()


def test_projection_is_idempotent():
    P = [[p(i, j) for j in (1, 2, 3)] for i in (1, 2, 3)]
    for a in range(3):
        for b in range(3):
            s = sum((P[a][c] * P[c][b] for c in range(3)), NormalForm())
            assert s == P[a][b]
            assert P[b][a].star() == P[a][b]


def test_right_action_of_F2_kills_z():
    F2 = UqWord.gen("F2")
    assert all(right_action(z(i), F2).is_zero() for i in (1, 2, 3))


def test_membership():
    assert not membership_test(z(1), PROJ_PLANE)
    assert membership_test(z(1), SubalgebraTag.sigma(0, 1))
    assert membership_test(p(1, 2), PROJ_PLANE)


def test_left_action_is_module_action():
    E1, F1 = UqWord.gen("E1"), UqWord.gen("F1")
    a = p(1, 2) * z(3)
    assert left_action(E1 * F1, a) == left_action(E1, left_action(F1, a))


def test_random_normalization_agrees():
    assert verify_random_normalization(200, seed=3).passed


def test_star_involutive():
    assert verify_star_involution(40, seed=5).passed


def test_peter_weyl_fundamental():
    assert verify_peter_weyl(1, 0).passed
    assert verify_peter_weyl(0, 1).passed


def test_parser_round_trip():
    assert parse_expr("z[1]*zs[1] + z[2]*zs[2] + z[3]*zs[3]") == NormalForm.scalar(1)
    assert parse_expr("z[2]*z[1]").render() == "(q^-1) * u31*u32"
    assert parse_expr("p[1,2]") == p(1, 2)
    assert parse_expr("q^(1/2)*u[1,1]") == u(1, 1).scale(QScalar.qpow(__import__("fractions").Fraction(1, 2)))


@pytest.mark.parametrize("bad", ["u[1,4]", "z[1]+", "u[1 2]", "a"])
def test_parser_rejects(bad):
    with pytest.raises(ParseError):
        parse_expr(bad)
