import pytest

from cp2q.algebra import NormalForm, zs
from cp2q.bundles import (BundleSizeError, build_projection, build_psi, d, psi_norm, trace_formula,
                          verify_equivariance, verify_partition_of_unity, verify_projection_membership,
                          verify_projector, verify_psi_membership, verify_psi_peter_weyl)


def test_sizes():
    assert [d(N) for N in (0, 1, 2, -3)] == [1, 3, 6, 10]
    assert len(build_psi(2).entries) == 6


def test_psi_one_is_conjugate_coordinates():
    psi = build_psi(1)
    assert psi.index == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert list(psi.entries) == [zs(3), zs(2), zs(1)]


@pytest.mark.parametrize("N", range(0, 5))
def test_partition_of_unity(N):
    assert verify_partition_of_unity(N).passed


def test_partition_of_unity_rejects_negative():
    with pytest.raises(ValueError):
        verify_partition_of_unity(-1)


@pytest.mark.parametrize("N", [-2, -1, 1, 2])
def test_projector(N):
    psi = build_psi(N)
    P = build_projection(N, psi=psi)
    assert psi_norm(psi) == NormalForm.scalar(1)
    assert verify_projector(P, psi).passed
    assert verify_projection_membership(P).passed
    assert verify_psi_membership(psi).passed


def test_trace_formula_n1():
    P = build_projection(1)
    tr = sum((P.entries[a][a] for a in range(P.size)), NormalForm())
    assert tr == trace_formula(1)


@pytest.mark.parametrize("N", [0, 1, 2])
def test_peter_weyl_nonnegative(N):
    assert verify_psi_peter_weyl(N).passed


@pytest.mark.parametrize("N", [-1, -2])
def test_peter_weyl_negative_up_to_phase(N):
    rep = verify_psi_peter_weyl(N)
    phased = next(c for c in rep.checks if c.name == "psi = (-1)^k (t_{0,i})*")
    assert phased.passed


def test_peter_weyl_size_limit():
    with pytest.raises(BundleSizeError):
        verify_psi_peter_weyl(3)


@pytest.mark.parametrize("N", [-1, 1, 2])
def test_equivariance(N):
    assert verify_equivariance(N).passed
