"""Equivariant idempotents, twisted pairings and the Haar weight on CP^2_q.

The pair (P_N, sigma^N), with sigma^N(h) = rho(S(h))^t in the irrep matching
Psi_N, is an equivariant idempotent.  Its Chern character is paired at the
group-like K = (K1 K2)^-4 with

* the Haar state phi, giving q^(-2N);
* the classical point chi_0, giving q^(2N);
* the twisted cocycles tau_2 and tau_4, which reduce to the constant curvature.

The Haar state restricted to CP^2_q is realized on the chi_2 lattice as a
diagonal weight, solved for from its modular property.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

import mpmath

from .actions import left_action, right_action
from .algebra import NormalForm
from .algebra import p as nf_p
from .bundles import build_projection, build_psi, psi_norm, rep_index, rep_label, rep_phase, trace_formula
from .calculus import Form, d, wedge_forms
from .exterior import default_coeffs
from .hopf import UqWord, power_word
from .khomology import ShiftRep, ZPoly, p, z, zs
from .monopole import curvature_constant
from .qcoeff import DEFAULT_PREC, QScalar, Surd, precision, q_number
from .report import Report
from .reps import build_irrep, k2_exponent
from .spaces import counit, numeric, numeric_distance

K_TWIST = power_word("K1i", 4) * power_word("K2i", 4)
K_TWIST_INV = power_word("K1", 4) * power_word("K2", 4)


def _word(letters) -> UqWord:
    return UqWord({tuple(letters): 1})


def _qp(x) -> QScalar:
    return QScalar.qpow(x)


# the representation sigma^N in the Psi_N basis

class EquivariantIdempotent:
    """(P_N, sigma^N) with sigma^N(h)^t = rho(S(h)) indexed like Psi_N."""

    def __init__(self, N: int, q=0.5, prec: int = DEFAULT_PREC):
        self.N = N
        self.q = q
        self.prec = prec
        self.psi = build_psi(N)
        self.P = build_projection(N, psi=self.psi)
        self.rep = build_irrep(*rep_label(N), q=q, prec=prec)
        self.pos = [self.rep.index(rep_index(N, jkl)) for jkl in self.psi.index]
        self.sign = [rep_phase(N, jkl) for jkl in self.psi.index]

    def sigma_t(self, h: UqWord):
        """sigma^N(h)^t as a numeric matrix in the Psi_N basis."""
        m = self.rep(h.antipode())
        n = len(self.pos)
        with precision(self.prec):
            out = mpmath.zeros(n)
            for a in range(n):
                for b in range(n):
                    out[a, b] = m[self.pos[a], self.pos[b]] * self.sign[a] * self.sign[b]
        return out

    def twist_exponents(self) -> list:
        """Exponents e_a with sigma^N(K)^t_aa = rho((K1 K2)^4)_aa = q^(e_a); exact."""
        n1, n2 = rep_label(self.N)
        out = []
        for jkl in self.psi.index:
            w = rep_index(self.N, jkl)
            out.append(4 * (Fraction(w[2]) + k2_exponent(n1, n2, w)))
        return out


def verify_compatibility(N: int, q=0.5, prec: int = DEFAULT_PREC, tol=1e-30,
                         generators=("K1", "K2", "E1", "E2", "F1", "F2")) -> Report:
    """(h_(1) > P) sigma(h_(2))^t = sigma(h)^t P for each generator."""
    E = EquivariantIdempotent(N, q, prec)
    r = Report("equivariant.compatibility", config={"N": N, "q": q})
    n = len(E.psi)
    with precision(prec):
        qq = mpmath.mpf(q)
        Pn = [[numeric(E.P.entries[a][b], qq, prec) for b in range(n)] for a in range(n)]
        for g in generators:
            h = UqWord.gen(g)
            rhs_m = E.sigma_t(h)
            terms = [(c.evaluate(qq, prec), _word(l), E.sigma_t(_word(rr))) for c, l, rr in h.coproduct()]
            acted = {}
            worst = mpmath.mpf(0)
            for a in range(n):
                for b in range(n):
                    lhs: dict = {}
                    for t, (c, hl, m2) in enumerate(terms):
                        for k in range(n):
                            if not m2[k, b]:
                                continue
                            key = (t, a, k)
                            if key not in acted:
                                acted[key] = numeric(left_action(hl, E.P.entries[a][k]), qq, prec)
                            for mono, v in acted[key].items():
                                lhs[mono] = lhs.get(mono, 0) + c * m2[k, b] * v
                    rhs: dict = {}
                    for k in range(n):
                        if rhs_m[a, k]:
                            for mono, v in Pn[k][b].items():
                                rhs[mono] = rhs.get(mono, 0) + rhs_m[a, k] * v
                    worst = max(worst, numeric_distance(lhs, rhs))
            r.add(f"N={N}: (h1 > P) sigma(h2)^t = sigma({g})^t P", "equivariance of the monopole projection",
                  worst < tol, residual=mpmath.nstr(worst, 5))
    return r


# twisted zero-pairings

def _scalar_ratio(x: NormalForm, y: NormalForm, q=0.5) -> QScalar | None:
    """c with x = c y for c a power of q^(1/12), or None."""
    if y.is_zero():
        return None
    mono, cy = next(iter(y.terms.items()))
    cx = x.terms.get(mono)
    if cx is None:
        return None
    with precision(128):
        ratio = cx.evaluate(q) / cy.evaluate(q)
        if ratio <= 0:
            return None
        e = Fraction(int(mpmath.nint(12 * mpmath.log(ratio) / mpmath.log(q))), 12)
    c = _qp(e)
    return c if x == y.scale(Surd(c)) else None


def pair_haar(N: int) -> QScalar:
    """<phi, ch^0(P_N, sigma^N)> by the modular reduction.

    phi(Tr P sigma(K)^t) = sum_a s_a phi(psi_a psi_a^*) with s_a = sigma(K)^t_aa, and the
    modular property turns phi(psi_a psi_a^*) into mu_a phi(psi_a^* psi_a), where
    K > psi_a^* < K = mu_a psi_a^*.  When s_a mu_a is one constant c, the pairing is
    c phi(Psi^dag Psi) = c, using Psi^dag Psi = 1 exactly.
    """
    E = EquivariantIdempotent(N)
    if psi_norm(E.psi) != NormalForm.scalar(1):
        raise ArithmeticError("Psi^dag Psi != 1")
    consts = set()
    for e, psi in zip(E.twist_exponents(), E.psi.entries):
        ps = psi.star()
        mu = _scalar_ratio(right_action(left_action(K_TWIST, ps), K_TWIST), ps)
        if mu is None:
            raise ArithmeticError("K does not act on psi^* by a q-power")
        consts.add(mu * _qp(e))
    if len(consts) != 1:
        raise ArithmeticError(f"twist factors are not constant: {sorted(map(str, consts))}")
    return consts.pop()


def pair_classical_point(N: int) -> QScalar:
    """Tr chi_0(P_N) sigma^N(K)^t, exact: chi_0 is the counit."""
    E = EquivariantIdempotent(N)
    total = Surd(0)
    for a, e in enumerate(E.twist_exponents()):
        total = total + counit(E.P.entries[a][a]) * Surd(_qp(e))
    return total.as_qscalar()


def classical_point_via_rep(N: int, q=0.5, prec: int = DEFAULT_PREC):
    """<0,0,0| K1^4 K2^4 |0,0,0> in the irrep matching Psi_N.

    |0,0,0> is the basis vector paired with psi_(0,0,|N|), the only entry seen by chi_0;
    for N >= 0 it is the highest weight vector.
    """
    rep = build_irrep(*rep_label(N), q=q, prec=prec)
    i = rep.index(rep_index(N, (0, 0, abs(N))))
    with precision(prec):
        return rep(K_TWIST_INV)[i, i]


def verify_zero_pairings(Ns=range(-3, 4), q=0.5, prec: int = DEFAULT_PREC, tol=1e-30) -> Report:
    r = Report("equivariant.zero_pairings", config={"N": list(Ns), "q": q})
    for N in Ns:
        ph = pair_haar(N)
        cp = pair_classical_point(N)
        r.add(f"<phi, ch0(P_{N})> = q^{-2 * N}", "Haar pairing of the equivariant character",
              ph == _qp(-2 * N), value=str(ph))
        r.add(f"<chi0, ch0(P_{N})> = q^{2 * N}", "classical point pairing", cp == _qp(2 * N), value=str(cp))
        with precision(prec):
            res = abs(classical_point_via_rep(N, q, prec) - _qp(2 * N).evaluate(q, prec))
        r.add(f"<hw|K1^4K2^4|hw> = q^{2 * N}", "classical point through the highest weight",
              res < tol, residual=mpmath.nstr(res, 5))
        r.add(f"product of pairings = 1, N={N}", "q^(-2N) q^(2N) = 1", ph * cp == QScalar.const(1))
        untwisted = sum((counit(E) for E in (row[i] for i, row in enumerate(build_projection(N).entries))),
                        Surd(0))
        r.add(f"ch0 at h=1 is the rank, N={N}", "untwisted trace at the classical point",
              untwisted == Surd(1))
    return r


# tau_2 and tau_4 through the constant curvature

@lru_cache(maxsize=None)
def curvature_scalar(N: int) -> Surd:
    w, _ = curvature_constant(N)
    if w is None:
        raise ArithmeticError(f"curvature of P_{N} is not a constant (1,1)-form")
    return w


def _top(w: Surd) -> Surd:
    """Top coefficient of (0, w) ^ (0, w)."""
    f = Form.of((1, 1), [0, 0, 0, NormalForm.scalar(w)])
    top = wedge_forms(f, f, default_coeffs())
    return top.coeffs[0].scalar_part()


def tau2_value(N: int) -> Surd:
    """q^(-2N) phi(pi(nabla_N^2)) with phi(1) = 1."""
    return Surd(_qp(-2 * N)) * curvature_scalar(N)


def tau4_value(N: int) -> Surd:
    """q^(-2N) integral of nabla_N^2 ^ nabla_N^2."""
    return Surd(_qp(-2 * N)) * _top(curvature_scalar(N))


def tau2_law(N: int) -> QScalar:
    """q^(-N-1)[N] / (q^(-2)[1])."""
    return _qp(1 - N) * q_number(N)


def tau4_law(N: int) -> QScalar:
    return q_number(N) * q_number(N)


def tau_ratio(value, N: int) -> Surd | None:
    """value(N) / value(1) when exactly divisible, else None."""
    try:
        return value(N) / value(1)
    except ArithmeticError:
        return None


def verify_tau_laws(Ns=range(-3, 4)) -> Report:
    r = Report("equivariant.tau_laws", config={"N": list(Ns)})
    t2_1, t4_1 = tau2_value(1), tau4_value(1)
    for N in Ns:
        t2, t4 = tau2_value(N), tau4_value(N)
        r.add(f"tau2 ratio N={N} = q^(-N-1)[N]/q^-2", "q-monopole number",
              t2 == t2_1 * Surd(tau2_law(N)), value=str(t2))
        r.add(f"tau4 ratio N={N} = [N]^2", "q-instanton number",
              t4 == t4_1 * Surd(tau4_law(N)), value=str(t4))
    # negative charges, normalized within their own sector by N = -1
    neg = [N for N in Ns if N < -1]
    if neg:
        t2_m, t4_m = tau2_value(-1), tau4_value(-1)
        for N in neg:
            r.add(f"tau2 sector ratio N={N} vs N=-1", "q-monopole number, negative sector",
                  tau2_value(N) * Surd(tau2_law(-1)) == t2_m * Surd(tau2_law(N)))
            r.add(f"tau4 sector ratio N={N} vs N=-1", "q-instanton number, negative sector",
                  tau4_value(N) * Surd(tau4_law(-1)) == t4_m * Surd(tau4_law(N)))
    return r


def qchern_table(Nmax: int = 3, q=0.5, prec: int = 64) -> list[dict]:
    """Rows N, tau2_ratio, tau4_ratio, phi_ch0, chi0_ch0 (numeric values of exact quantities)."""
    rows = []
    with precision(prec):
        t2_1 = tau2_value(1).evaluate(q)
        t4_1 = tau4_value(1).evaluate(q)
        for N in range(-Nmax, Nmax + 1):
            rows.append({"N": N,
                         "tau2_ratio": mpmath.nstr(tau2_value(N).evaluate(q) / t2_1, 15),
                         "tau4_ratio": mpmath.nstr(tau4_value(N).evaluate(q) / t4_1, 15),
                         "phi_ch0": mpmath.nstr(pair_haar(N).evaluate(q), 15),
                         "chi0_ch0": mpmath.nstr(pair_classical_point(N).evaluate(q), 15)})
    return rows


def independence_report(Nmax: int = 3, q=0.5, prec: int = 128) -> dict:
    """Values q^(-2N) for |N| <= Nmax and the numeric rank of their Vandermonde matrix."""
    with precision(prec):
        vals = [pair_haar(N).evaluate(q) for N in range(-Nmax, Nmax + 1)]
        n = len(vals)
        V = mpmath.matrix([[v ** k for k in range(n)] for v in vals])
        sv = mpmath.svd_r(V, compute_uv=False)
        rank = sum(1 for s in sv if s > max(sv) * mpmath.mpf(10) ** (-(prec // 4)))
    return {"N": list(range(-Nmax, Nmax + 1)), "values": [mpmath.nstr(v, 15) for v in vals],
            "distinct": len({mpmath.nstr(v, 30) for v in vals}) == n, "rank": rank}


# the Haar state on the chi_2 lattice

def eta_exponent(i: int, j: int) -> QScalar:
    """c with K > p_ij = c p_ij, exact."""
    c = _scalar_ratio(left_action(K_TWIST, nf_p(i, j)), nf_p(i, j))
    if c is None:
        raise ArithmeticError(f"K does not act on p{i}{j} by a q-power")
    return c


class HaarFunctional:
    """phi(a) = sum_k W(k) <k|chi_2(a)|k> with W(k1, k2) = C q^(alpha k1 + beta k2)."""

    def __init__(self, q, cutoff: int, alpha, beta, prec: int = DEFAULT_PREC):
        self.q, self.cutoff, self.prec = q, cutoff, prec
        self.alpha, self.beta = alpha, beta
        self.residual, self.worst_at = None, None
        self.rep = ShiftRep("chi2", q, prec)
        self.states = self.rep.basis(cutoff)
        with precision(prec):
            qq = mpmath.mpf(q)
            w = [qq ** (alpha * k1 + beta * k2) for k1, k2 in self.states]
            total = mpmath.fsum(w)
            self.weights = [x / total for x in w]

    def __call__(self, a: ZPoly):
        with precision(self.prec):
            return mpmath.fsum(w * self.rep.diagonal(a, s) for w, s in zip(self.weights, self.states))


def _modular_pairs():
    idx = [(i, j) for i in (1, 2, 3) for j in (1, 2, 3)]
    return [(a, b) for a in idx for b in idx]


def modular_residual(phi: HaarFunctional, pairs=None) -> tuple:
    """max |phi(ab) - phi(eta(b) a)| over pairs of generators p_ij."""
    worst, at = mpmath.mpf(0), None
    for (i, j), (k, l) in pairs or _modular_pairs():
        a, b = p(i, j), p(k, l)
        res = abs(phi(a * b) - phi(b.scale(eta_exponent(k, l)) * a))
        if res > worst:
            worst, at = res, ((i, j), (k, l))
    return worst, at


def solve_haar_weights(q=0.5, cutoff: int = 60, tol=1e-10, prec: int = 128,
                       check: bool = True) -> HaarFunctional:
    """Solve alpha, beta from two modular constraints, then check all generator pairs."""
    eqs = (((3, 1), (1, 3)), ((2, 1), (1, 2)))
    rep = ShiftRep("chi2", q, prec)
    states = rep.basis(cutoff)
    tables = []
    for (i, j), (k, l) in eqs:
        a, b = p(i, j), p(k, l)
        tables.append([[rep.diagonal(x, s) for s in states] for x in (a * b, b.scale(eta_exponent(k, l)) * a)])

    def residuals(alpha, beta):
        qq = mpmath.mpf(q)
        w = [qq ** (alpha * k1 + beta * k2) for k1, k2 in states]
        out = []
        for lhs_t, rhs_t in tables:
            lhs = mpmath.fdot(w, lhs_t)
            out.append((lhs - mpmath.fdot(w, rhs_t)) / lhs)
        return out

    with precision(prec):
        sol = mpmath.findroot(residuals, (mpmath.mpf(1), mpmath.mpf(1)),
                              tol=mpmath.mpf(10) ** (-(prec // 4)), maxsteps=100, verify=False)
        phi = HaarFunctional(q, cutoff, sol[0], sol[1], prec)
        if not check:
            return phi
        worst, at = modular_residual(phi)
        phi.residual, phi.worst_at = worst, at
    if worst >= tol:
        raise ArithmeticError(f"no weight of the form q^(alpha k1 + beta k2) satisfies the modular "
                              f"property: residual {mpmath.nstr(worst, 5)} at {at}")
    return phi


def twisted_trace_poly(N: int) -> ZPoly:
    """Tr(P_N sigma(K)^t) as z-words."""
    E = EquivariantIdempotent(N)
    ex = dict(zip(E.psi.index, E.twist_exponents()))
    return trace_formula(N, z=z, zs=zs, weight=lambda jkl: _qp(ex[jkl]))


def verify_haar(q=0.5, cutoff: int = 60, tol=1e-10, prec: int = 128, Ns=(-1, 0, 1)) -> Report:
    r = Report("equivariant.haar", config={"q": q, "cutoff": cutoff, "prec": prec})
    try:
        phi = solve_haar_weights(q, cutoff, tol, prec)
    except ArithmeticError as e:
        r.add("Haar weight solves the modular property", "modular property of the Haar state", False,
              detail=str(e))
        return r
    worst = phi.residual
    r.add("modular property on all p_ij pairs", "phi(ab) = phi((K > b) a)", worst < tol,
          residual=mpmath.nstr(worst, 5), value=(mpmath.nstr(phi.alpha, 15), mpmath.nstr(phi.beta, 15)))
    big = solve_haar_weights(q, 2 * cutoff, tol, prec, check=False)
    drift = max(abs(big.alpha - phi.alpha), abs(big.beta - phi.beta))
    r.add("weights stable under cutoff doubling", "solved exponents do not depend on the cutoff",
          drift < tol, residual=mpmath.nstr(drift, 5))
    r.add("weights positive", "phi is a state", all(w > 0 for w in phi.weights))
    r.add("phi(1) = 1", "normalization", abs(phi(ZPoly.one()) - 1) < tol)
    r.add("phi(p13) = 0", "off-diagonal generator", abs(phi(p(1, 3))) < tol)
    for N in Ns:
        v = phi(twisted_trace_poly(N))
        res = abs(v - _qp(-2 * N).evaluate(q, prec))
        r.add(f"phi(Tr P_{N} sigma(K)^t) = q^{-2 * N}", "solver agrees with the modular reduction",
              res < tol, residual=mpmath.nstr(res, 5))
    return r


# tau_2 cocycle

_CP2_BASIS: dict = {}


def _cp2_basis(q, prec):
    """Independent monomials of degree <= 2 in the p_ij: words, numeric columns, skinny QR."""
    key = (q, prec)
    if key not in _CP2_BASIS:
        idx = [(i, j) for i in (1, 2, 3) for j in (1, 2, 3)]
        cands = [(ZPoly.one(), NormalForm.scalar(1))]
        cands += [(p(*x), nf_p(*x)) for x in idx]
        cands += [(p(*idx[x]) * p(*idx[y]), nf_p(*idx[x]) * nf_p(*idx[y]))
                  for x in range(len(idx)) for y in range(x, len(idx))]
        cols = [numeric(f, q, prec) for _, f in cands]
        monos = sorted({m for c in cols for m in c})
        with precision(prec):
            eps = mpmath.mpf(2) ** (-prec // 2)
            kept, basis = [], []
            for (w, _), c in zip(cands, cols):
                v = mpmath.matrix([c.get(m, 0) for m in monos])
                for u in basis:
                    v -= mpmath.fdot(u, v) * u
                nv = mpmath.norm(v)
                if nv > eps:
                    basis.append(v / nv)
                    kept.append((w, c))
            A = mpmath.matrix([[c.get(m, 0) for _, c in kept] for m in monos])
            Q, R = mpmath.qr(A, mode="skinny")
        _CP2_BASIS[key] = ([w for w, _ in kept], monos, Q, R, A)
    return _CP2_BASIS[key]


def cp2_to_words(a: NormalForm, q=0.5, prec: int = 128, tol=1e-25) -> list:
    """Numeric expansion [(c, word)] of a degree <= 2 element of A(CP^2_q) in the p_ij."""
    words, monos, Q, R, A = _cp2_basis(q, prec)
    with precision(prec):
        num = numeric(a, q, prec)
        if set(num) - set(monos):
            raise ValueError("element is outside the span of degree <= 2 monomials in p_ij")
        b = mpmath.matrix([num.get(m, 0) for m in monos])
        x = mpmath.lu_solve(R, Q.T * b)
        res = mpmath.norm(A * x - b)
        if res > tol:
            raise ValueError(f"element is outside the span of degree <= 2 monomials (residual {res})")
        return [(c, w) for c, w in zip(x, words) if c]


def _pi11(w1: dict, w2: dict) -> NormalForm:
    """pi(d a1 ^ d a2): scalar slot of the (1,1) part."""
    coeffs = default_coeffs()
    out = NormalForm()
    for b1, b2 in (((1, 0), (0, 1)), ((0, 1), (1, 0))):
        if b1 in w1 and b2 in w2:
            f = wedge_forms(w1[b1], w2[b2], coeffs)
            if f is not None:
                out = out + f.coeffs[3]
    return out


def _gen(ij) -> tuple:
    """(normal form, word) for p_ij, or the unit for None."""
    if ij is None:
        return NormalForm.scalar(1), ZPoly.one()
    return nf_p(*ij), p(*ij)


def tau2_coboundary(phi: HaarFunctional, a0, a1, a2, a3) -> mpmath.mpf:
    """b*tau_2(a0, a1, a2, a3) for generators a_k = p_ij (None for 1).

    By the Leibniz rule and left/right linearity of pi this is
    phi(a0 X a3) - phi(eta(a3) a0 X) with X = pi(d a1 ^ d a2).
    """
    (f1, _), (f2, _) = _gen(a1), _gen(a2)
    X = _pi11(d(Form.function(f1)), d(Form.function(f2)))
    if X.is_zero():
        return mpmath.mpf(0)
    w0, w3 = _gen(a0)[1], _gen(a3)[1]
    e3 = QScalar.const(1) if a3 is None else eta_exponent(*a3)
    with precision(phi.prec):
        total = mpmath.mpf(0)
        for c, w in cp2_to_words(X, phi.q, phi.prec):
            total += c * (phi(w0 * w * w3) - phi(w3.scale(e3) * w0 * w))
    return total


def tau2_value_on(phi: HaarFunctional, a0, a1, a2) -> mpmath.mpf:
    """tau_2(a0, a1, a2) = phi(a0 pi(d a1 ^ d a2))."""
    (f1, _), (f2, _) = _gen(a1), _gen(a2)
    X = _pi11(d(Form.function(f1)), d(Form.function(f2)))
    if X.is_zero():
        return mpmath.mpf(0)
    w0 = _gen(a0)[1]
    with precision(phi.prec):
        return mpmath.fsum(c * phi(w0 * w) for c, w in cp2_to_words(X, phi.q, phi.prec))


def _torus_weight(ijs) -> tuple:
    """Weight of a product of p_ij, with p_ij of weight e_j - e_i."""
    w = [0, 0, 0]
    for ij in ijs:
        if ij is not None:
            w[ij[1] - 1] += 1
            w[ij[0] - 1] -= 1
    return tuple(w)


def tau2_samples(n: int = 6, seed: int = 0) -> list:
    """Generator quadruples of total weight zero (others pair to zero trivially)."""
    rng = random.Random(seed)
    idx = [(i, j) for i in (1, 2, 3) for j in (1, 2, 3)]
    out = [((1, 2), (2, 1), (1, 1), (3, 3)), (None, None, None, None)]
    while len(out) < n:
        s = tuple(rng.choice(idx) for _ in range(4))
        if _torus_weight(s) == (0, 0, 0) and s[1] != s[2] and s not in out:
            out.append(s)
    return out


def verify_tau_cocycles(q=0.5, cutoff: int = 60, tol=1e-15, samples=None, prec: int = 128,
                        phi: HaarFunctional | None = None) -> Report:
    r = Report("equivariant.tau_cocycles", config={"q": q, "cutoff": cutoff})
    phi = phi or solve_haar_weights(q, cutoff, prec=prec, check=False)
    for s in samples or tau2_samples():
        res = abs(tau2_coboundary(phi, *s))
        r.add(f"b* tau2 {s} = 0", "tau_2 is a twisted Hochschild cocycle", res < tol,
              residual=mpmath.nstr(res, 5))
    a = ((1, 2), (2, 1), (1, 1))
    v = tau2_value_on(phi, *a)
    with precision(prec):
        doubled = mpmath.fsum(2 * c * phi(p(1, 2) * w) for c, w in
                              cp2_to_words(_pi11(d(Form.function(nf_p(2, 1))), d(Form.function(nf_p(1, 1)))),
                                           q, prec))
    r.add("tau2 linear in a0", "doubling a0 doubles tau_2", abs(doubled - 2 * v) < tol,
          residual=mpmath.nstr(abs(doubled - 2 * v), 5))
    return r


__all__ = [
    "EquivariantIdempotent", "verify_compatibility", "pair_haar", "pair_classical_point",
    "classical_point_via_rep", "verify_zero_pairings", "tau2_value", "tau4_value", "tau2_law", "tau4_law",
    "verify_tau_laws", "qchern_table", "independence_report", "eta_exponent", "HaarFunctional",
    "modular_residual", "solve_haar_weights", "twisted_trace_poly", "verify_haar", "K_TWIST",
    "cp2_to_words", "tau2_coboundary", "tau2_value_on", "tau2_samples", "verify_tau_cocycles",
]
