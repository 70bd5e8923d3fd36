import mpmath
import pytest

from cp2q import monopole as M
from cp2q.qcoeff import QRatio, QScalar, Surd, q_number

qp = QScalar.qpow


def test_closed_form_specializations():
    for N in range(0, 4):
        assert M.eigenvalue_closed(N, 0) == QRatio.coerce(q_number(2) * q_number(N))
    # mirrored branch: the first term survives at n = 0
    assert M.eigenvalue_closed(-1, 0) == QRatio.coerce((1 + qp(-3)) * q_number(2) + q_number(2) * q_number(-1))
    assert M.eigenvalue_closed(0, 1) == QRatio.coerce((1 + qp(-3)) * q_number(3))


@pytest.mark.parametrize("N", [-1, 1, 2])
def test_connection_identities(N):
    assert M.verify_connection_identities(N).passed


def test_curvature_forms_route():
    r = M.verify_curvature(Ns=(1, 2))
    assert r.passed
    w1, w2 = M.curvature_constant(1)[0], M.curvature_constant(2)[0]
    assert w2 == w1 * Surd(qp(1) * q_number(2))


def test_curvature_rep_route():
    with mpmath.workprec(200):
        val, ratio = M.curvature_via_rep(3, 0.5)
        want = mpmath.mpf(0.5) ** 2 * q_number(3).evaluate(0.5, 200)
        assert abs(ratio - want) < mpmath.mpf(10) ** -25


def test_zero_charge_is_flat():
    assert all(f.is_zero() for f in M.curvature_via_forms(0).values())


def test_spectrum_small_grid():
    assert M.verify_spectrum(range(-2, 3), 2, (0.5,)).passed


def test_spectrum_rows_example():
    rows = M.spectrum_rows(1, 2, 0.5)
    assert len(rows) == 3
    assert all(r["residual"] < 1e-25 for r in rows)


def test_box_casimir():
    assert M.verify_box_casimir(range(-3, 4), 4).passed


def test_asymmetry():
    assert M.verify_asymmetry(3, 3, 0.5).passed
