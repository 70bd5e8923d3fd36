"""Line bundles over CP^2_q: the vectors Psi_N and the projections P_N = Psi_N Psi_N^dag.

Entries carry sqrt([j,k,l]!) as radical factors; every projector-level
identity pairs them up, so the checks below are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .actions import left_action
from .algebra import NormalForm, z, zs
from .hopf import UqWord
from .qcoeff import DEFAULT_PREC, QScalar, precision, q_factorial, q_trinomial, qsqrt
from .report import Report
from .reps import build_irrep
from .spaces import PROJ_PLANE, SubalgebraTag, membership_test, numeric, numeric_distance, peter_weyl_element

N_BOUND = 5


class BundleSizeError(ValueError):
    """Requested |N| beyond the configured bound."""


def d(N: int) -> int:
    n = abs(N)
    return (n + 1) * (n + 2) // 2


def triples(N: int) -> list[tuple[int, int, int]]:
    """(j, k, l) with j + k + l = |N|, lexicographic."""
    n = abs(N)
    return [(j, k, n - j - k) for j in range(n + 1) for k in range(n + 1 - j)]


def z_monomial(j: int, k: int, l: int) -> NormalForm:
    return z(1) ** j * z(2) ** k * z(3) ** l


def _check_bound(N: int, bound: int | None):
    bound = N_BOUND if bound is None else bound
    if abs(N) > bound:
        raise BundleSizeError(
            f"|N| = {abs(N)} exceeds the bound {bound}; P_N would be {d(N)}x{d(N)} "
            f"with entries of degree {3 * abs(N)} in the generators")


@dataclass
class PsiVector:
    N: int
    index: list
    entries: list  # psi^N_{j,k,l}

    @property
    def dagger(self) -> list:
        return [e.star() for e in self.entries]

    def __len__(self):
        return len(self.entries)


@dataclass
class ProjectionMatrix:
    N: int
    entries: list  # list of rows

    @property
    def size(self) -> int:
        return len(self.entries)


def build_psi(N: int, bound: int | None = None) -> PsiVector:
    _check_bound(N, bound)
    idx = triples(N)
    out = []
    for j, k, l in idx:
        r = qsqrt(q_trinomial(j, k, l))
        mono = z_monomial(j, k, l)
        if N >= 0:
            psi_star = mono.scale(r)
        else:
            psi_star = mono.star().scale(r * QScalar.qpow(-N + j - l))
        out.append(psi_star.star())
    return PsiVector(N, idx, out)


def build_projection(N: int, bound: int | None = None, psi: PsiVector | None = None) -> ProjectionMatrix:
    psi = psi or build_psi(N, bound)
    dag = psi.dagger
    return ProjectionMatrix(N, [[a * b for b in dag] for a in psi.entries])


def psi_norm(psi: PsiVector) -> NormalForm:
    """Psi^dag Psi."""
    return sum((a * b for a, b in zip(psi.dagger, psi.entries)), NormalForm())


def verify_partition_of_unity(N: int) -> Report:
    """sum [j,k,l]! m m* = 1 and sum q^(2(j-l)) [j,k,l]! m* m = q^(-2N), m = z1^j z2^k z3^l."""
    if N < 0:
        raise ValueError("the partition-of-unity identities are stated for N >= 0")
    r = Report("bundles.partition_of_unity", config={"N": N})
    s1, s2 = NormalForm(), NormalForm()
    for j, k, l in triples(N):
        m = z_monomial(j, k, l)
        ms = m.star()
        c = q_trinomial(j, k, l)
        s1 = s1 + (m * ms).scale(c)
        s2 = s2 + (ms * m).scale(c * QScalar.qpow(2 * (j - l)))
    res1 = s1 - 1
    res2 = s2 - NormalForm.scalar(QScalar.qpow(-2 * N))
    r.add("sum [j,k,l]! m m* = 1", "partition of unity", res1.is_zero(), residual=res1.render())
    r.add("sum q^2(j-l) [j,k,l]! m* m = q^-2N", "partition of unity", res2.is_zero(),
          residual=res2.render())
    return r


def verify_projector(P: ProjectionMatrix, psi: PsiVector | None = None) -> Report:
    r = Report("bundles.projector", config={"N": P.N})
    n = P.size
    E = P.entries
    sq_bad, star_bad, radical_bad = [], [], []
    for a in range(n):
        for b in range(n):
            s = NormalForm()
            for c in range(n):
                s = s + E[a][c] * E[c][b]
            if s != E[a][b]:
                sq_bad.append((a, b))
            if E[b][a].star() != E[a][b]:
                star_bad.append((a, b))
    r.add("P^2 = P", "P_N is a projection", not sq_bad, detail=str(sq_bad[:3]))
    r.add("P* = P", "P_N is a projection", not star_bad, detail=str(star_bad[:3]))
    if psi is not None:
        norm = psi_norm(psi)
        r.add("Psi^dag Psi = 1", "Psi_N is normalized", norm == 1, residual=(norm - 1).render())
        tr = sum((E[a][a] for a in range(n)), NormalForm())
        # the trace is a single algebra element: it must be radical free
        unpaired = any(not c.is_rational() for c in tr.terms.values())
        if unpaired:
            radical_bad.append("trace")
        r.add("trace is radical free", "radical tags pair up", not radical_bad)
        tf = trace_formula(P.N)
        r.add("Tr P_N matches the trace formula", "trace of P_N", tr == tf,
              residual=(tr - tf).render() if tr != tf else "0")
    return r


def verify_projection_membership(P: ProjectionMatrix) -> Report:
    r = Report("bundles.membership", config={"N": P.N})
    bad = [(a, b) for a, row in enumerate(P.entries) for b, e in enumerate(row)
           if not membership_test(e, PROJ_PLANE)]
    r.add("entries of P_N lie in A(CP^2_q)", "P_N has entries in the projective plane", not bad,
          detail=str(bad[:3]))
    return r


def verify_psi_membership(psi: PsiVector) -> Report:
    r = Report("bundles.psi_membership", config={"N": psi.N})
    tag = SubalgebraTag.sigma(0, psi.N)
    bad = [psi.index[a] for a, e in enumerate(psi.dagger) if not membership_test(e, tag)]
    r.add("entries of Psi^dag lie in Sigma_{0,N}", "Psi_N^dag < K1K2^2 = q^N Psi_N^dag", not bad,
          detail=str(bad[:3]))
    return r


def trace_formula(N: int, z=z, zs=zs, weight=None) -> NormalForm:
    """sum_{j+k+l=|N|} of the q-trinomial weighted z-words (N <= 0 carries the prefactor squared).

    ``weight(jkl)`` optionally multiplies the diagonal entry P_aa, giving Tr(P_N D) for diagonal D.
    """
    n = abs(N)
    out = None
    for j, k, l in triples(N):
        c = (QScalar.qpow(-(j * k + k * l + l * j)) * q_factorial(n)).exact_div(
            q_factorial(j) * q_factorial(k) * q_factorial(l))
        word = (zs(3) ** l) * (zs(2) ** k) * (zs(1) ** j) * z(1) ** j * z(2) ** k * z(3) ** l
        if N < 0:
            word = z(1) ** j * z(2) ** k * z(3) ** l * (zs(3) ** l) * (zs(2) ** k) * (zs(1) ** j)
            c = c * QScalar.qpow(2 * (-N + j - l))
        if weight is not None:
            c = c * weight((j, k, l))
        out = word.scale(c) if out is None else out + word.scale(c)
    return out


def rep_label(N: int) -> tuple[int, int]:
    return (0, N) if N >= 0 else (-N, 0)


def rep_index(N: int, jkl) -> tuple:
    """Weight index matched to psi^N_{j,k,l}."""
    j, k, l = jkl
    if N >= 0:
        return (0, j + k, Fraction(k - j, 2))
    return (j + k, 0, Fraction(j - k, 2))


def rep_phase(N: int, jkl) -> int:
    """Sign relating psi^N_{j,k,l} to (t_{0,i})^* in the irrep basis: (-1)^k for N < 0."""
    return -1 if N < 0 and jkl[1] % 2 else 1


def verify_psi_peter_weyl(N: int) -> Report:
    """psi^N_{j,k,l} = (t_{0, i})^* componentwise, exactly; 0 is the weight index (0, 0, 0)."""
    if abs(N) > 2:
        raise BundleSizeError("the Peter-Weyl comparison is limited to |N| <= 2")
    psi = build_psi(N)
    n1, n2 = rep_label(N)
    row = (0, 0, Fraction(0))
    r = Report("bundles.psi_peter_weyl", config={"N": N})
    bad, bad_phase = [], []
    for jkl, e in zip(psi.index, psi.entries):
        t = peter_weyl_element(n1, n2, row, rep_index(N, jkl)).star()
        if t != e:
            bad.append(jkl)
        if t.scale(rep_phase(N, jkl)) != e:
            bad_phase.append(jkl)
    r.add("psi = (t_{0,i})*", "Peter-Weyl identification of Psi_N", not bad, detail=str(bad))
    if N < 0:
        r.add("psi = (-1)^k (t_{0,i})*", "Peter-Weyl identification up to basis phases",
              not bad_phase, detail=str(bad_phase))
    return r


def verify_equivariance(N: int, q=0.5, prec: int = DEFAULT_PREC, tol=1e-30,
                        generators=("K1", "K2", "E1", "E2", "F1", "F2")) -> Report:
    """h > psi_a = sum_b rho(S(h))_{ab} psi_b, i.e. h > Psi_N = sigma^N(h)^t Psi_N.

    rho is taken in the basis psi_a <-> rep_phase * |rep_index>, which is the
    irrep basis itself for N >= 0.
    """
    psi = build_psi(N)
    rep = build_irrep(*rep_label(N), q=q, prec=prec)
    r = Report("bundles.equivariance", config={"N": N, "q": str(q)})
    with precision(prec):
        vals = [numeric(e, rep.q, prec) for e in psi.entries]
        pos = [rep.index(rep_index(N, jkl)) for jkl in psi.index]
        sign = [rep_phase(N, jkl) for jkl in psi.index]
        for g in generators:
            h = UqWord.gen(g)
            mat = rep(h.antipode())
            worst = mpmath.mpf(0)
            for a, e in enumerate(psi.entries):
                lhs = numeric(left_action(h, e), rep.q, prec)
                rhs: dict = {}
                for b in range(len(psi)):
                    c = mat[pos[a], pos[b]] * sign[a] * sign[b]
                    if c:
                        for m, v in vals[b].items():
                            rhs[m] = rhs.get(m, 0) + c * v
                worst = max(worst, numeric_distance(lhs, rhs))
            r.add(f"{g} > Psi_N = sigma({g})^t Psi_N", "equivariance of the monopole projections",
                  worst < tol, residual=mpmath.nstr(worst, 5))
    return r


__all__ = [
    "PsiVector", "ProjectionMatrix", "BundleSizeError", "N_BOUND", "d", "triples", "z_monomial",
    "build_psi", "build_projection", "psi_norm", "verify_partition_of_unity", "verify_projector",
    "verify_projection_membership", "verify_psi_membership", "trace_formula", "rep_label",
    "rep_index", "rep_phase", "verify_psi_peter_weyl", "verify_equivariance",
]
