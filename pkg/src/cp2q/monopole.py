"""Monopole connections on the line bundles Sigma_{0,N} and their gauged Laplacians.

The Grassmannian connection nabla_N eta = Psi^dag d(Psi eta) has curvature
Psi^dag (dP ^ dP) Psi, a constant (0, w_N) two-form in V^(1,1). The gauged
Laplacian acts on the Sigma_{0,N} isotypic vector of rho^(n, n+N) (N >= 0) or
rho^(n-N, n) (N <= 0) through
    Z = [2][N] + (1 + q^-3)([2] F2 E2 - F2 F1 E2 E1).
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

from .actions import right_action
from .algebra import NormalForm
from .bundles import build_projection, build_psi
from .calculus import Form, dbar, partial, wedge_forms
from .exterior import VForm, default_coeffs, hodge
from .hopf import E1, E2, F1, F2
from .qcoeff import DEFAULT_PREC, QRatio, QScalar, Surd, precision, q_number
from .report import Report
from .reps import build_irrep, casimir_eigenvalue, hw_expectation


class ModelError(ArithmeticError):
    """The isotypic component does not have multiplicity one."""


def _qp(x) -> QScalar:
    return QScalar.qpow(x)


def _qn(x) -> QRatio:
    return QRatio.coerce(q_number(x))


# curvature through forms

def _sum_forms(forms, bidegree) -> Form:
    out = Form.zero(bidegree)
    for f in forms:
        out = out + f
    return out


def connection_forms(N: int, coeffs=None) -> dict:
    """Psi^dag dP (row) and dP Psi (column), split by bidegree."""
    coeffs = coeffs or default_coeffs()
    psi = build_psi(N)
    P = build_projection(N, psi=psi).entries
    n = len(psi)
    dag = psi.dagger
    dp = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            f = Form.function(P[a][b])
            dp[a][b] = (partial(f, coeffs), dbar(f, coeffs))
    out = {}
    for k, bideg in ((0, (1, 0)), (1, (0, 1))):
        out["row", bideg] = [_sum_forms((dp[a][c][k].left_mul(dag[a]) for a in range(n)), bideg)
                             for c in range(n)]
        out["col", bideg] = [_sum_forms((dp[c][b][k].right_mul(psi.entries[b]) for b in range(n)), bideg)
                             for c in range(n)]
    return out


def curvature_via_forms(N: int, coeffs=None) -> dict:
    """{bidegree: Form} of Psi^dag (dP ^ dP) Psi."""
    coeffs = coeffs or default_coeffs()
    cf = connection_forms(N, coeffs)
    n = len(cf["row", (1, 0)])
    out = {}
    for b1 in ((1, 0), (0, 1)):
        for b2 in ((1, 0), (0, 1)):
            s = (b1[0] + b2[0], b1[1] + b2[1])
            terms = [wedge_forms(cf["row", b1][c], cf["col", b2][c], coeffs) for c in range(n)]
            total = _sum_forms(terms, s)
            out[s] = out[s] + total if s in out else total
    return out


def curvature_constant(N: int, coeffs=None) -> tuple[Surd | None, dict]:
    """(w_N, curvature) with w_N None when the curvature is not of the form (0, w_N)."""
    curv = curvature_via_forms(N, coeffs)
    f11 = curv[1, 1]
    ok = (curv[2, 0].is_zero() and curv[0, 2].is_zero()
          and all(c.is_zero() for c in f11.coeffs[:3]) and f11.coeffs[3].is_scalar())
    return (f11.coeffs[3].scalar_part() if ok else None), curv


def curvature_ratio(N: int):
    """q^(N-1)[N]."""
    return Surd(_qp(N - 1) * q_number(N))


def curvature_formula(N: int, coeffs=None) -> Surd:
    """w_N = -q^(-3s/2-3) c2 [2]^(1/2) q^N [N] for N >= 0."""
    coeffs = coeffs or default_coeffs()
    from .exterior import R2
    return -Surd(_qp(Fraction(-3 * coeffs.s2, 2) - 3 + N) * q_number(N)) * coeffs.c[2] * R2


def verify_connection_identities(N: int) -> Report:
    """Psi^dag dP lies in Omega^(1,0), dP Psi in Omega^(0,1), with the right-action formulas."""
    r = Report("monopole.connection", config={"N": N})
    cf = connection_forms(N)
    psi = build_psi(N)
    if N >= 0:
        r.add("Psi^dag dbar P = 0", "Psi^dag dP is holomorphic", all(f.is_zero() for f in cf["row", (0, 1)]))
        r.add("partial P Psi = 0", "dP Psi is antiholomorphic", all(f.is_zero() for f in cf["col", (1, 0)]))
    else:
        # negative charge mirrors the types
        r.add("Psi^dag partial P = 0", "Psi^dag dP is antiholomorphic",
              all(f.is_zero() for f in cf["row", (1, 0)]))
        r.add("dbar P Psi = 0", "dP Psi is holomorphic", all(f.is_zero() for f in cf["col", (0, 1)]))
    if N >= 0:
        h = Surd(_qp(Fraction(N, 2)))
        c = -h * Surd(_qp(Fraction(-3, 2)))
        bad = 0
        for k, a in enumerate(psi.dagger):
            want = Form((1, 0), (right_action(a, E2).scale(c), right_action(a, E2 * E1).scale(c)))
            bad += cf["row", (1, 0)][k] != want
        for k, a in enumerate(psi.entries):
            want = Form((0, 1), (right_action(a, F2 * F1).scale(-h), right_action(a, F2).scale(-h)))
            bad += cf["col", (0, 1)][k] != want
        r.add("q^(-N/2) Psi^dag dP = -q^(-3/2)(Psi^dag<E2, Psi^dag<E2E1)",
              "connection one-forms through the right action", bad == 0, residual=bad)
    return r


def verify_curvature(Ns=(1, 2, 3), coeffs=None) -> Report:
    coeffs = coeffs or default_coeffs()
    r = Report("monopole.curvature", config={"N": list(Ns), "coeffs": coeffs.label})
    w = {}
    for N in sorted(set(Ns) | {1}):
        wN, curv = curvature_constant(N, coeffs)
        w[N] = wN
        r.add(f"curvature N={N} is (0, w_N)", "the curvature is an invariant constant (1,1)-form",
              wN is not None, value=str(wN))
        if wN is None:
            continue
        v = VForm((1, 1), (Surd(0), Surd(0), Surd(0), wN))
        r.add(f"anti-selfdual N={N}", "*_H curvature = -curvature", hodge(v, coeffs) == v.scale(Surd(-1)))
        if N >= 0:
            r.add(f"w_{N} closed form", "w_N = -q^(-3s/2-3) c2 [2]^(1/2) q^N [N]",
                  wN == curvature_formula(N, coeffs), value=str(wN))
    for N in Ns:
        # the scaling law is stated for positive charge; negative N is recorded only
        if N < 1 or w.get(N) is None or w.get(1) is None:
            continue
        r.add(f"w_{N}/w_1 = q^(N-1)[N]", "curvature scales with the monopole charge",
              w[N] == w[1] * curvature_ratio(N), value=str(w[N]))
    r.add("N=0 curvature vanishes", "P_0 = 1 is flat",
          all(f.is_zero() for f in curvature_via_forms(0, coeffs).values()))
    return r


# curvature through the representation

def curvature_via_rep(N: int, q=0.5, prec: int = DEFAULT_PREC):
    """(<hw|E2F2|hw> in rho^(0,N), q^(N-1) times it)."""
    if N < 0:
        raise ValueError("the highest-weight computation covers N >= 0")
    rep = build_irrep(0, N, q, prec)
    with precision(prec):
        val = hw_expectation(rep, E2 * F2)
        return val, mpmath.mpf(q) ** (N - 1) * val


def verify_curvature_rep(Ns=(1, 2, 3), q=0.5, prec: int = DEFAULT_PREC, tol=1e-25,
                         forms: dict | None = None) -> Report:
    r = Report("monopole.curvature_rep", config={"q": q, "prec": prec})
    with precision(prec):
        tol = mpmath.mpf(tol)
        for N in Ns:
            val, ratio = curvature_via_rep(N, q, prec)
            exact = q_number(N).evaluate(q, prec)
            res = abs(val - exact)
            r.add(f"<hw|E2F2|hw> = [{N}]", "F2 on the highest weight vector of rho^(0,N)", res < tol,
                  residual=mpmath.nstr(res, 5))
            if forms and forms.get(N) is not None and forms.get(1) is not None:
                fr = forms[N].evaluate(q, prec) / forms[1].evaluate(q, prec)
                res = abs(fr - ratio)
                r.add(f"rep ratio = forms ratio, N={N}", "both routes to w_N/w_1 agree", res < tol,
                      residual=mpmath.nstr(res, 5))
    return r


# gauged Laplacian

def block_label(N: int, n: int) -> tuple[int, int]:
    return (n, n + N) if N >= 0 else (n - N, n)


def eigenvalue_closed(N: int, n: int) -> QRatio:
    c = QRatio.coerce(1 + _qp(-3))
    if N >= 0:
        return c * _qn(n) * _qn(n + N + 2) + _qn(2) * _qn(N)
    return c * _qn(n + 2) * _qn(n - N) + _qn(2) * _qn(N)


def laplacian_word(N: int, rep):
    """rho(Z) as a numeric matrix."""
    q = rep.q
    two = q + 1 / q
    qN = (q ** N - q ** (-N)) / (q - 1 / q)
    z = two * rep(F2 * E2) - rep(F2 * F1 * E2 * E1)
    return two * qN * mpmath.eye(rep.dim) + (1 + q ** -3) * z


def laplacian_transpose_apply(N: int, rep, c):
    """rho(Z)^t c, computed with sparse products."""
    q = mpmath.mpf(rep.q)
    two = q + 1 / q
    qN = (q ** N - q ** (-N)) / (q - 1 / q)
    z = two * rep.row_apply(c, F2 * E2) - rep.row_apply(c, F2 * F1 * E2 * E1)
    return two * qN * c + (1 + q ** -3) * z


def isotypic_vector(rep):
    """The unique vector with K1 = 1 killed by E1 and F1 (the Sigma_{0,N} component)."""
    idx = [i for i, w in enumerate(rep.basis) if w[2] == 0]
    M = rep.mats
    if not idx:
        raise ModelError("no zero-weight vectors")
    rows = [[M[g][r, c] for c in idx] for g in ("E1", "F1") for r in range(rep.dim)]
    A = mpmath.matrix(rows)
    gram = A.T * A
    evals, evecs = mpmath.eigsy(gram)
    order = sorted(range(len(idx)), key=lambda i: evals[i])
    scale = max(abs(x) for x in evals) or 1
    thresh = scale * mpmath.mpf(10) ** (-(rep.prec // 4) // 3)
    null = [i for i in order if abs(evals[i]) < thresh]
    if len(null) != 1:
        raise ModelError(f"isotypic multiplicity {len(null)} in rho{rep.label}")
    v = mpmath.zeros(rep.dim, 1)
    for k, i in enumerate(idx):
        v[i, 0] = evecs[k, null[0]]
    return v


def laplacian_eigenvalue(N: int, n: int, q=0.5, prec: int = DEFAULT_PREC):
    """(numeric eigenvalue, eigen-residual, closed form) on the block (N, n)."""
    rep = build_irrep(*block_label(N, n), q, prec)
    with precision(prec):
        c = isotypic_vector(rep)
        v = laplacian_transpose_apply(N, rep, c)
        lam = (c.T * v)[0, 0] / (c.T * c)[0, 0]
        res = mpmath.norm(v - lam * c) / mpmath.norm(c)
        closed = eigenvalue_closed(N, n).evaluate(q, prec)
    return lam, res, closed


def verify_spectrum(Ns=range(-3, 4), nmax: int = 4, qs=(0.3, 0.5, 0.8), prec: int = DEFAULT_PREC,
                    tol=1e-25) -> Report:
    r = Report("monopole.spectrum", config={"N": list(Ns), "nmax": nmax, "q": list(qs), "prec": prec})
    rows = []
    with precision(prec):
        tol = mpmath.mpf(tol)
        worst_e, worst_c, bad = mpmath.mpf(0), mpmath.mpf(0), []
        for q in qs:
            for N in Ns:
                for n in range(nmax + 1):
                    lam, res, closed = laplacian_eigenvalue(N, n, q, prec)
                    dev = abs(lam - closed)
                    rows.append((N, n, q, lam, closed, dev))
                    worst_e, worst_c = max(worst_e, res), max(worst_c, dev)
                    if res >= tol or dev >= tol:
                        bad.append((N, n, q))
        r.add("isotypic vector is an eigenvector of rho(Z)^t", "gauged Laplacian via the right action",
              worst_e < tol, residual=mpmath.nstr(worst_e, 5))
        r.add("eigenvalue = lambda_{n,N}", "spectrum of the gauged Laplacian", not bad,
              residual=mpmath.nstr(worst_c, 5), detail=str(bad[:5]))
    r.rows = rows
    return r


def spectrum_rows(N: int, nmax: int, q, prec: int = DEFAULT_PREC) -> list[dict]:
    out = []
    with precision(prec):
        for n in range(nmax + 1):
            lam, res, closed = laplacian_eigenvalue(N, n, q, prec)
            out.append({"N": N, "n": n, "q": q, "lambda_numeric": lam, "lambda_closed": closed,
                        "residual": abs(lam - closed)})
    return out


# Box-Casimir relation

def casimir_of_block(N: int, n: int) -> QRatio:
    return casimir_eigenvalue(*block_label(N, n))


def box_casimir_sides(N: int, n: int) -> tuple[QRatio, QRatio]:
    lam = eigenvalue_closed(N, n)
    third = Fraction(N, 3)
    f = QRatio(_qp(Fraction(3, 2)) * (_qp(third) + _qp(-third)), _qp(Fraction(3, 2)) + _qp(Fraction(-3, 2)))
    lhs = f * (lam - _qn(2) * _qn(N))
    rhs = casimir_of_block(N, n) - _qn(third) ** 2 - _qn(third + 1) ** 2 - _qn(2 * third + 1) ** 2
    return lhs, rhs


def verify_box_casimir(Ns=range(-3, 4), nmax: int = 4, abmax: int = 6) -> Report:
    r = Report("monopole.box_casimir", config={"N": list(Ns), "nmax": nmax})
    bad = [(N, n) for N in Ns for n in range(nmax + 1) if not (lambda s: s[0] == s[1])(box_casimir_sides(N, n))]
    r.add("Laplacian-Casimir relation", "the gauged Laplacian is a function of the Casimir", not bad,
          detail=str(bad[:5]))
    bad = [(a, b) for a in range(abmax + 1) for b in range(abmax + 1)
           if not _qn(a + b) ** 2 - _qn(b) ** 2 == _qn(a) * _qn(a + 2 * b)]
    r.add("[a+b]^2 - [b]^2 = [a][a+2b]", "simplification of the eigenvalues", not bad, detail=str(bad[:5]))
    return r


def asymmetry_table(Nmax: int = 3, nmax: int = 3, q=0.5, prec: int = DEFAULT_PREC) -> list[dict]:
    """lambda_{n,N}, lambda_{n,-N} and lambda_{n,-N} at 1/q."""
    out = []
    with precision(prec):
        q = mpmath.mpf(q)
        for N in range(Nmax + 1):
            for n in range(nmax + 1):
                a = eigenvalue_closed(N, n).evaluate(q, prec)
                b = eigenvalue_closed(-N, n).evaluate(q, prec)
                c = eigenvalue_closed(-N, n).evaluate(1 / q, prec)
                out.append({"N": N, "n": n, "lambda": a, "lambda_minus": b, "lambda_minus_qinv": c,
                            "symmetric": abs(a - b) < 1e-20 or abs(a - c) < 1e-20})
    return out


def verify_asymmetry(Nmax: int = 3, nmax: int = 3, q=0.5) -> Report:
    r = Report("monopole.asymmetry", config={"Nmax": Nmax, "nmax": nmax, "q": q})
    rows = asymmetry_table(Nmax, nmax, q)
    broken = [(x["N"], x["n"]) for x in rows if x["N"] != 0 and x["n"] > 0 and x["symmetric"]]
    r.add("spectrum not symmetric under N -> -N (also with q -> 1/q)", "asymmetry of the spectrum",
          not broken, detail=str(broken[:5]))
    r.add("N = 0 row symmetric", "asymmetry of the spectrum",
          all(x["symmetric"] for x in rows if x["N"] == 0))
    return r


__all__ = [
    "connection_forms", "curvature_via_forms", "curvature_constant", "curvature_ratio",
    "curvature_formula", "verify_connection_identities", "verify_curvature", "curvature_via_rep",
    "verify_curvature_rep", "block_label", "eigenvalue_closed", "laplacian_word", "laplacian_transpose_apply", "isotypic_vector",
    "laplacian_eigenvalue", "verify_spectrum", "spectrum_rows", "box_casimir_sides",
    "verify_box_casimir", "asymmetry_table", "verify_asymmetry", "ModelError",
]
