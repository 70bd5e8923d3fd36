import mpmath
import pytest

from cp2q.hopf import UqWord
from cp2q.qcoeff import ConfigurationError
from cp2q.reps import (branch_to_u2, branching_formula, build_irrep, casimir_eigenvalue, dimension,
                       verify_casimir_spectrum, verify_relations, verify_x_action)


def test_dimensions():
    assert [dimension(*lab) for lab in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (3, 0)]] == [1, 3, 3, 8, 6, 10]


@pytest.mark.parametrize("lab", [(0, 1), (1, 1), (2, 1)])
@pytest.mark.parametrize("q", [0.3, 0.8])
def test_relations_and_casimir(lab, q):
    rep = build_irrep(*lab, q=q, prec=200)
    assert verify_relations(rep, 1e-25).passed
    assert verify_casimir_spectrum(rep, 1e-25).passed


def test_x_action_and_branching():
    rep = build_irrep(1, 2, 0.5)
    assert verify_x_action(rep, 1e-25).passed
    assert branch_to_u2(rep) == branching_formula(1, 2)


@pytest.mark.parametrize("lab", [(0, 0), (1, 0), (1, 1), (2, 0), (3, 1)])
def test_casimir_classical_limit(lab):
    # the sum of three squares tends to 2(n1^2+n2^2+n1n2)/3 + 2(n1+n2) + 2 at q = 1
    n1, n2 = lab
    want = 2 * (n1 * n1 + n2 * n2 + n1 * n2) / 3 + 2 * (n1 + n2) + 2
    with mpmath.workprec(200):
        got = casimir_eigenvalue(n1, n2).evaluate(mpmath.mpf(1) - mpmath.mpf(10) ** -12, 200)
    assert abs(float(got) - want) < 1e-9


def test_k1_diagonal():
    rep = build_irrep(1, 0, 0.5)
    K1 = rep(UqWord.gen("K1"))
    with mpmath.workprec(200):
        for i, (j1, j2, m) in enumerate(rep.basis):
            assert abs(K1[i, i] - mpmath.mpf(0.5) ** m) < mpmath.mpf(10) ** -40


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        build_irrep(-1, 0)
    with pytest.raises(ConfigurationError):
        build_irrep(1, 0, prec=32)
