"""The quantum 5-sphere, the quantum projective plane and Peter-Weyl elements.

Subalgebras are detected by right-action invariance:

* Sphere5: a < h = eps(h) a for h in U_q(su(2)) (generated by K1, E1, F1);
* ProjPlane: additionally a < K1 K2^2 = a;
* SigmaLN(0, N): U_q(su(2))-invariant with a < K1 K2^2 = q^N a.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import mpmath

from .actions import left_action, right_action
from .algebra import DIAG, NormalForm, p, u, z, zs
from .hopf import E1, F1, K1, K2, L, UqWord
from .qcoeff import DEFAULT_PREC, QScalar, Surd, precision
from .report import Report
from .reps import IrrepMatrices, build_irrep, highest_weight, x_element

Q = QScalar.qpow(1)


def qp(x) -> QScalar:
    return QScalar.qpow(x)


class Subalgebra(Enum):
    FULL = "FullSUq3"
    SPHERE5 = "Sphere5"
    PROJ_PLANE = "ProjPlane"
    SIGMA = "SigmaLN"


@dataclass(frozen=True)
class SubalgebraTag:
    kind: Subalgebra
    l: object = 0
    N: int = 0

    @classmethod
    def sigma(cls, l, N: int) -> "SubalgebraTag":
        return cls(Subalgebra.SIGMA, l, N)


FULL = SubalgebraTag(Subalgebra.FULL)
SPHERE5 = SubalgebraTag(Subalgebra.SPHERE5)
PROJ_PLANE = SubalgebraTag(Subalgebra.PROJ_PLANE)


def _su2_invariant(a: NormalForm) -> bool:
    return (right_action(a, E1).is_zero() and right_action(a, F1).is_zero()
            and right_action(a, K1) == a)


def membership_test(a, tag: SubalgebraTag) -> bool:
    a = NormalForm.coerce(a)
    if tag.kind is Subalgebra.FULL:
        return True
    if tag.kind is Subalgebra.SIGMA and tag.l != 0:
        raise NotImplementedError("only the spin-zero components Sigma_{0,N} are scalar-valued")
    if not _su2_invariant(a):
        return False
    if tag.kind is Subalgebra.SPHERE5:
        return True
    n = 0 if tag.kind is Subalgebra.PROJ_PLANE else tag.N
    if tag.kind is Subalgebra.PROJ_PLANE and right_action(a, K2) != a:
        return False
    return right_action(a, L) == a.scale(qp(n))


def counit(a) -> Surd:
    """eps(u^i_j) = delta_ij, extended multiplicatively."""
    a = NormalForm.coerce(a)
    total = Surd(0)
    for m, c in a.terms.items():
        if all(m[g] == 0 for g in range(9) if g not in DIAG):
            total = total + c
    return total


def projection_matrix() -> list[list[NormalForm]]:
    return [[p(i, j) for j in (1, 2, 3)] for i in (1, 2, 3)]


def _sgn(x: int) -> int:
    return (x > 0) - (x < 0)


def sphere_relations(z=z, zs=zs) -> dict:
    """Residuals of the defining relations of A(S^5_q); each should vanish.

    The generator constructors can be swapped to evaluate the same relations
    in another model of the algebra.
    """
    out = {}
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            if i < j:
                out[f"z{i}z{j}-q z{j}z{i}"] = z(i) * z(j) - (z(j) * z(i)).scale(Q)
            if i != j:
                out[f"z{i}*z{j}-q z{j}z{i}*"] = zs(i) * z(j) - (z(j) * zs(i)).scale(Q)
    c = 1 - Q * Q
    out["[z1*,z1]"] = zs(1) * z(1) - z(1) * zs(1)
    out["[z2*,z2]-(1-q^2)z1z1*"] = zs(2) * z(2) - z(2) * zs(2) - (z(1) * zs(1)).scale(c)
    out["[z3*,z3]-(1-q^2)(z1z1*+z2z2*)"] = (zs(3) * z(3) - z(3) * zs(3)
                                           - (z(1) * zs(1) + z(2) * zs(2)).scale(c))
    out["sum z z* - 1"] = z(1) * zs(1) + z(2) * zs(2) + z(3) * zs(3) - 1
    return out


def projective_relations(p=p) -> dict:
    """Residuals of the commutation relations among the p_ij."""
    out = {}
    c = 1 - Q * Q
    idx = (1, 2, 3)
    for i in idx:
        for j in idx:
            for k in idx:
                for l in idx:
                    if i != l and j != k:
                        e = _sgn(i - k) + _sgn(l - j)
                        out[f"p{i}{j}p{k}{l}"] = p(i, j) * p(k, l) - (p(k, l) * p(i, j)).scale(qp(e))
            for k in idx:
                if i != k:
                    e = _sgn(i - j) + _sgn(k - j) + 1
                    r = p(i, j) * p(j, k) - (p(j, k) * p(i, j)).scale(qp(e))
                    for l in idx:
                        if l < j:
                            r = r + (p(i, l) * p(l, k)).scale(c)
                    out[f"p{i}{j}p{j}{k}"] = r
            if i != j:
                s2 = qp(2 * _sgn(i - j))
                r = p(i, j) * p(j, i) - (p(j, i) * p(i, j)).scale(s2)
                for l in idx:
                    if l < i:
                        r = r - (p(j, l) * p(l, j)).scale(c * s2)
                    if l < j:
                        r = r + (p(i, l) * p(l, i)).scale(c)
                out[f"p{i}{j}p{j}{i}"] = r
    return out


def q_trace() -> NormalForm:
    return p(1, 1).scale(qp(4)) + p(2, 2).scale(qp(2)) + p(3, 3)


def verify_sphere_relations() -> Report:
    r = Report("algebra.sphere")
    for name, res in sphere_relations().items():
        r.add(name, "5-sphere relations", res.is_zero(), residual=res.render())
    for name, res in projective_relations().items():
        r.add(name, "projective plane relations", res.is_zero(), residual=res.render())
    res = q_trace() - 1
    r.add("Tr_q P = 1", "q-trace of the projection", res.is_zero(), residual=res.render())
    P = projection_matrix()
    for i in range(3):
        for j in range(3):
            sq = sum((P[i][k] * P[k][j] for k in range(3)), NormalForm()) - P[i][j]
            r.add(f"(P^2-P)[{i+1}{j+1}]", "P^2 = P = P*", sq.is_zero(), residual=sq.render())
            st = P[j][i].star() - P[i][j]
            r.add(f"(P*-P)[{i+1}{j+1}]", "P^2 = P = P*", st.is_zero(), residual=st.render())
    return r


def unitarity_identities() -> dict[str, NormalForm]:
    out = {}
    for a in (1, 2, 3):
        for b in (1, 2, 3):
            d = 1 if a == b else 0
            s1 = sum((u(a, j) * u(b, j).star() for j in (1, 2, 3)), NormalForm()) - d
            s2 = sum(((u(a, j).star() * u(b, j)).scale(qp(2 * (a - j))) for j in (1, 2, 3)),
                     NormalForm()) - d
            out[f"sum_j u{a}j (u{b}j)* - d"] = s1
            out[f"sum_j q^2(a-j) (u{a}j)* u{b}j - d"] = s2
    return out


def peter_weyl_element(n1: int, n2: int, i, j) -> NormalForm:
    """t_{i,j} = X_j > (u11*)^n1 (u33)^n2 < (X_i)*."""
    top = u(1, 1).star() ** n1 * u(3, 3) ** n2
    xj = x_element(n1, n2, j)
    xi = x_element(n1, n2, i)
    return right_action(left_action(xj, top), xi.star())


def numeric(a: NormalForm, q, prec: int = DEFAULT_PREC) -> dict:
    with precision(prec):
        return {m: c.evaluate(q) for m, c in a.terms.items()}


def numeric_distance(a: dict, b: dict):
    keys = set(a) | set(b)
    return max((abs(a.get(k, 0) - b.get(k, 0)) for k in keys), default=mpmath.mpf(0))


def verify_peter_weyl(n1: int, n2: int, q=0.5, prec: int = DEFAULT_PREC, tol=1e-30,
                      generators=("K1", "K2", "E1", "E2", "F1", "F2")) -> Report:
    """Check h > t_ij = sum_k t_ik rho_kj(h), t_ij < h = sum_k rho_ik(h) t_kj and eps(t_ij) = d_ij."""
    rep = build_irrep(n1, n2, q, prec)
    r = Report("algebra.peter_weyl", config={"label": (n1, n2), "q": str(q)})
    t = {(a, b): peter_weyl_element(n1, n2, a, b) for a in rep.basis for b in rep.basis}
    with precision(prec):
        tn = {key: numeric(v, rep.q, prec) for key, v in t.items()}
        worst = mpmath.mpf(0)
        for g in generators:
            mat = rep.mats[g]
            for a in rep.basis:
                for b in rep.basis:
                    lhs = numeric(left_action(UqWord.gen(g), t[(a, b)]), rep.q, prec)
                    rhs: dict = {}
                    for k in rep.basis:
                        c = mat[rep.index(k), rep.index(b)]
                        if c:
                            for m, v in tn[(a, k)].items():
                                rhs[m] = rhs.get(m, 0) + v * c
                    worst = max(worst, numeric_distance(lhs, rhs))
                    lhs = numeric(right_action(t[(a, b)], UqWord.gen(g)), rep.q, prec)
                    rhs = {}
                    for k in rep.basis:
                        c = mat[rep.index(a), rep.index(k)]
                        if c:
                            for m, v in tn[(k, b)].items():
                                rhs[m] = rhs.get(m, 0) + v * c
                    worst = max(worst, numeric_distance(lhs, rhs))
        r.add("transforms under rho", "Peter-Weyl elements transform by the irrep", worst < tol,
              residual=mpmath.nstr(worst, 5))
        bad = [(a, b) for (a, b), v in t.items() if counit(v) != (1 if a == b else 0)]
        r.add("eps(t_ij) = delta_ij", "unitality of the corepresentation", not bad, detail=str(bad[:3]))
    return r


__all__ = [
    "Subalgebra", "SubalgebraTag", "FULL", "SPHERE5", "PROJ_PLANE", "membership_test", "counit",
    "sphere_relations", "projective_relations", "q_trace", "verify_sphere_relations",
    "unitarity_identities", "peter_weyl_element", "verify_peter_weyl", "projection_matrix",
    "highest_weight", "numeric", "numeric_distance",
]
