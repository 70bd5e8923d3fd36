import time

from cp2q import exterior as X
from cp2q.qcoeff import QScalar, Surd, q_number, qsqrt


def test_c3_default():
    k = X.default_coeffs()
    assert k.c[3] == -Surd(qsqrt(q_number(2)))


def test_associativity_exhaustive_and_fast():
    t = time.perf_counter()
    assert X.check_associativity(X.default_coeffs()).passed
    assert time.perf_counter() - t < 60


def test_associativity_detects_perturbation():
    k = X.default_coeffs()
    assert not X.check_associativity(k.perturbed("d0", 2)).passed


def test_involution_and_graded_star():
    assert X.check_involution(X.default_coeffs()).passed


def test_graded_commutative_at_q1():
    assert X.check_graded_commutativity_at_one(X.default_coeffs()).passed


def test_hodge_square_and_isometry():
    h = X.check_hodge(X.default_coeffs())
    by = {c.name: c.passed for c in h.checks}
    assert by["*_H^2 = (-1)^deg"]
    assert by["<*u, *w> = <u, w>"]


def test_hodge_square_on_01_is_minus_id():
    for i in range(2):
        v = X.VForm.basis((0, 1), i)
        assert X.hodge(X.hodge(v)) == v.scale(Surd(-1))


def test_degree_one_generation_and_covariance():
    k = X.default_coeffs()
    assert X.check_degree_one_generation(k).passed
    assert X.check_covariance(k).passed


def test_mu_and_j_tables():
    assert X.check_mu_identities().passed
    assert X.check_j_mu_table().passed
    assert X.check_j_intertwining().passed
