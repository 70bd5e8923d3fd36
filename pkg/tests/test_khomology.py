import mpmath
import pytest

from cp2q import khomology as K


def test_exact_identities():
    assert K.verify_identities_exact().passed


@pytest.mark.parametrize("name", K.REPS)
def test_representation_relations(name):
    assert K.verify_rep_relations(name, 0.5).passed


def test_chi_actions():
    chi1 = K.ShiftRep("chi1", 0.5)
    with mpmath.workprec(128):
        for n in range(5):
            assert abs(chi1.diagonal(K.ZPoly.letter(-2) * K.ZPoly.letter(2), n) - mpmath.mpf(0.25) ** n) < 1e-30
        assert not chi1.apply(K.p(1, 2), 3)
    chi2 = K.ShiftRep("chi2", 0.5)
    with mpmath.workprec(128):
        out = chi2.apply(K.z(1), (2, 1))
        assert set(out) == {(2, 1)} and abs(out[(2, 1)] - mpmath.mpf(0.5) ** 3) < 1e-30


@pytest.mark.parametrize("N", [-3, 2])
def test_rank(N):
    assert K.pair_rank(N) == 1


@pytest.mark.parametrize("N,c1,c2", [(1, 1, 1), (-1, -1, 0), (2, 2, 3), (-2, -2, 1)])
def test_chern_numbers(N, c1, c2):
    res = K.chern_numbers(N, 0.5)
    assert (res["rank"], res["c1"], res["c2"]) == (1, c1, c2)


def test_first_chern_with_fixed_cutoff():
    pr = K.pair_first_chern(1, 0.5, 120)
    assert pr.value == 1 and pr.tail < 0.25


def test_generator_matrix():
    g, g_inv, det = K.k_group_matrix(0.5)
    assert g == ((1, 1, 1), (0, -1, 1), (0, 0, 1))
    assert g_inv == ((1, 1, -2), (0, -1, 1), (0, 0, 1))
    assert det == -1


def test_non_fredholm_and_summability():
    assert K.verify_non_fredholm(0.5).passed
    assert K.verify_summability(1, 0.5, 20).passed


def test_inconclusive_pairing_suggests_cutoff():
    with pytest.raises(K.InconclusivePairing) as e:
        K.pair_first_chern(3, 0.9, 2)
    assert e.value.suggested_cutoff is None or e.value.suggested_cutoff > 2
