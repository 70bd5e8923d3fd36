"""Fredholm modules over CP^2_q and their pairings with the line bundles P_N.

The representations chi_0, chi_1, chi_2 and pi_+/- all come from
representations of A(S^5_q) in which each z_i acts as a weighted shift on an
orthonormal basis.  Words in the z_i are therefore applied exactly, state by
state, and the only approximation is where an infinite trace is cut off.
Those cutoffs carry explicit tail bounds.

Basis labels:

* chi0: the single state ``()``;
* chi1: ``n >= 0``;
* chi2: ``(k1, k2)``;
* pi_+ and pi_-: ``(t, n)`` with ``t = 2l`` and ``n = l + m``; pi_+ is chi2 on
  ``n <= t`` (``k1 = n``, ``k2 = t - n``) and chi0 above.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath

from .algebra import NormalForm
from .algebra import p as nf_p
from .bundles import trace_formula
from .qcoeff import DEFAULT_PREC, QScalar, precision
from .report import Report
from .spaces import projective_relations, sphere_relations

REPS = ("chi0", "chi1", "chi2", "pi_plus", "pi_minus")
TAIL_LIMIT = mpmath.mpf("0.25")


class InconclusivePairing(ArithmeticError):
    """The tail bound is too large to certify an integer."""

    def __init__(self, msg, suggested_cutoff=None):
        super().__init__(msg)
        self.suggested_cutoff = suggested_cutoff


# polynomials in the z_i, z_i^* as words

class ZPoly:
    """Noncommutative polynomial in z_i (letter i) and z_i^* (letter -i).

    No relations are imposed; it is a model for evaluating words in
    representations and converts to a normal form for cross-checks.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {w: c for w, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def letter(cls, a: int) -> "ZPoly":
        return cls({(a,): QScalar.const(1)})

    @classmethod
    def one(cls) -> "ZPoly":
        return cls({(): QScalar.const(1)})

    @classmethod
    def coerce(cls, x) -> "ZPoly":
        if isinstance(x, ZPoly):
            return x
        return cls({(): QScalar.coerce(x)})

    def __add__(self, other):
        other = ZPoly.coerce(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return ZPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-ZPoly.coerce(other))

    def __rsub__(self, other):
        return ZPoly.coerce(other) - self

    def __mul__(self, other):
        other = ZPoly.coerce(other)
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out[w] + c1 * c2 if w in out else c1 * c2
        return ZPoly(out)

    def __pow__(self, n: int):
        out = ZPoly.one()
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c) -> "ZPoly":
        c = QScalar.coerce(c)
        return ZPoly({w: v * c for w, v in self.terms.items()})

    def star(self) -> "ZPoly":
        return ZPoly({tuple(-a for a in reversed(w)): c.bar() for w, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def to_normal_form(self) -> NormalForm:
        from .algebra import z, zs
        out = NormalForm()
        for w, c in self.terms.items():
            t = NormalForm.scalar(1)
            for a in w:
                t = t * (z(a) if a > 0 else zs(-a))
            out = out + t.scale(c)
        return out

    def __repr__(self):
        return f"ZPoly({len(self.terms)} words)"


def z(i: int) -> ZPoly:
    return ZPoly.letter(i)


def zs(i: int) -> ZPoly:
    return ZPoly.letter(-i)


def p(i: int, j: int) -> ZPoly:
    return zs(i) * z(j)


def appendix_identities(p=p) -> dict:
    """Residuals of p_i1 p_1i = q^2 p_11 p_ii (i = 2, 3) and p_11 p_23 = q^-2 p_21 p_13."""
    out = {}
    for i in (2, 3):
        out[f"p{i}1p1{i}-q^2p11p{i}{i}"] = p(i, 1) * p(1, i) - (p(1, 1) * p(i, i)).scale(QScalar.qpow(2))
    out["p11p23-q^-2p21p13"] = p(1, 1) * p(2, 3) - (p(2, 1) * p(1, 3)).scale(QScalar.qpow(-2))
    return out


def trace_poly(N: int) -> ZPoly:
    """Tr P_N as a sum of z-words with exact coefficients."""
    return trace_formula(N, z=z, zs=zs)


# weighted-shift representations

class ShiftRep:
    """A *-representation of A(S^5_q) by weighted shifts."""

    def __init__(self, name: str, q, prec: int = DEFAULT_PREC):
        if name not in REPS:
            raise ValueError(f"unknown representation {name!r}; expected one of {REPS}")
        if not 0 < q < 1:
            raise ValueError("q must lie in (0, 1)")
        self.name = name
        self.q = q
        self.prec = prec
        with precision(prec):
            self._q = mpmath.mpf(q)
        self._cache: dict = {}

    def _sq(self, e: int):
        """sqrt(1 - q^(2e))."""
        return mpmath.sqrt(1 - self._q ** (2 * e))

    def _chi1(self, a, n):
        q = self._q
        if a in (1, -1):
            return None
        if a in (2, -2):
            return q ** n, n
        if a == 3:
            return self._sq(n + 1), n + 1
        return (self._sq(n), n - 1) if n >= 1 else None

    def _chi2(self, a, s):
        q = self._q
        k1, k2 = s
        if a in (1, -1):
            return q ** (k1 + k2), s
        if a == 2:
            return q ** k1 * self._sq(k2 + 1), (k1, k2 + 1)
        if a == -2:
            return (q ** k1 * self._sq(k2), (k1, k2 - 1)) if k2 >= 1 else None
        if a == 3:
            return self._sq(k1 + 1), (k1 + 1, k2)
        return (self._sq(k1), (k1 - 1, k2)) if k1 >= 1 else None

    @staticmethod
    def _chi0(a, s):
        return (1, s) if a in (3, -3) else None

    def act(self, a: int, s):
        """(coefficient, new state) for one letter, or None when the image is zero."""
        name = self.name
        if name == "chi0":
            return self._chi0(a, s)
        if name == "chi1":
            return self._chi1(a, s)
        if name == "chi2":
            return self._chi2(a, s)
        t, n = s
        if name == "pi_minus":
            r = self._chi1(a, n)
            return None if r is None else (r[0], (t, r[1]))
        if n > t:
            return self._chi0(a, s)
        r = self._chi2(a, (n, t - n))
        if r is None:
            return None
        k1, k2 = r[1]
        return r[0], (k1 + k2, k1)

    def apply_word(self, word, s):
        c = mpmath.mpf(1)
        for a in reversed(word):
            r = self.act(a, s)
            if r is None:
                return None
            c, s = c * r[0], r[1]
        return c, s

    def _coeffs(self, poly: ZPoly):
        key = id(poly)
        hit = self._cache.get(key)
        if hit is None or hit[0] is not poly:
            hit = (poly, [(w, c.evaluate(self.q, self.prec)) for w, c in poly.terms.items()])
            self._cache[key] = hit
        return hit[1]

    def apply(self, poly: ZPoly, s) -> dict:
        out: dict = {}
        with precision(self.prec):
            for w, c in self._coeffs(poly):
                r = self.apply_word(w, s)
                if r is not None:
                    out[r[1]] = out.get(r[1], 0) + c * r[0]
        return out

    def diagonal(self, poly: ZPoly, s):
        """<s| rep(poly) |s>."""
        with precision(self.prec):
            total = mpmath.mpf(0)
            for w, c in self._coeffs(poly):
                r = self.apply_word(w, s)
                if r is not None and r[1] == s:
                    total += c * r[0]
            return total

    def basis(self, cutoff: int) -> list:
        """Basis states of level <= cutoff (n, k1 + k2 or t)."""
        if self.name == "chi0":
            return [()]
        if self.name == "chi1":
            return list(range(cutoff + 1))
        if self.name == "chi2":
            return [(k1, s - k1) for s in range(cutoff + 1) for k1 in range(s + 1)]
        return [(t, n) for t in range(cutoff + 1) for n in range(cutoff + 1)]

    def matrix(self, a: int, cutoff: int):
        """Truncated matrix of one generator image on basis(cutoff)."""
        states = self.basis(cutoff)
        pos = {s: i for i, s in enumerate(states)}
        with precision(self.prec):
            m = mpmath.zeros(len(states))
            for j, s in enumerate(states):
                r = self.act(a, s)
                if r is not None and r[1] in pos:
                    m[pos[r[1]], j] = r[0]
        return states, m


def build_chi(name: str, q, cutoff: int = 8, prec: int = DEFAULT_PREC) -> dict:
    """Truncated images of z_1, z_2, z_3 (keyed 'z1'..'z3') and the basis."""
    if cutoff < 4:
        raise ValueError("cutoff must be at least 4")
    rep = ShiftRep(name, q, prec)
    out = {"rep": rep}
    for i in (1, 2, 3):
        out["basis"], out[f"z{i}"] = rep.matrix(i, cutoff)
    return out


def chi0_value(poly: ZPoly) -> QScalar:
    """Exact value of the character chi_0: z_3 -> 1, z_1, z_2 -> 0."""
    out = QScalar.const(0)
    for w, c in poly.terms.items():
        if all(a in (3, -3) for a in w):
            out = out + c
    return out


def verify_rep_relations(name: str, q=0.5, cutoff: int = 6, prec: int = DEFAULT_PREC, tol=1e-30) -> Report:
    """Sphere, projective-plane and appendix identities on every basis state up to the cutoff.

    Generators act exactly, so every basis state counts as interior.
    """
    rep = ShiftRep(name, q, prec)
    r = Report(f"khomology.relations.{name}", config={"q": q, "cutoff": cutoff, "prec": prec})
    rels = {}
    rels.update(sphere_relations(z=z, zs=zs))
    rels.update(projective_relations(p=p))
    rels.update(appendix_identities())
    states = rep.basis(cutoff)
    with precision(prec):
        tol = mpmath.mpf(tol)
        for key, poly in rels.items():
            res = mpmath.mpf(0)
            for s in states:
                for v in rep.apply(poly, s).values():
                    res = max(res, abs(v))
            r.add(f"{name}: {key}", "relation holds on basis states", res < tol, residual=mpmath.nstr(res, 5))
    return r


def verify_identities_exact() -> Report:
    """The word models against the algebra: relations and identities reduce to zero."""
    r = Report("khomology.identities")
    for key, poly in appendix_identities(p=nf_p).items():
        r.add(f"algebra: {key}", "identity in A(CP^2_q)", poly.is_zero())
    for key, poly in sphere_relations(z=z, zs=zs).items():
        r.add(f"word model: {key}", "word relation maps to zero", poly.to_normal_form().is_zero())
    for N in (-1, 1, 2):
        r.add(f"word model: Tr P_{N}", "words reproduce Tr P_N",
              (trace_poly(N).to_normal_form() - trace_formula(N)).is_zero())
    return r


# pairings

@dataclass
class FredholmPairing:
    module: int
    N: int
    q: float
    cutoff: int
    trace: object
    tail: object
    value: int | None = None
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"module": self.module, "N": self.N, "q": self.q, "cutoff": self.cutoff,
                "trace": mpmath.nstr(self.trace, 20), "tail": mpmath.nstr(self.tail, 5),
                "value": self.value, "detail": self.detail}


def _round(pr: FredholmPairing) -> FredholmPairing:
    if pr.tail >= TAIL_LIMIT:
        raise InconclusivePairing(
            f"tail bound {mpmath.nstr(pr.tail, 5)} >= {TAIL_LIMIT} at cutoff {pr.cutoff}",
            suggested_cutoff=suggest_cutoff(pr.N, pr.q, pr.module))
    k = int(mpmath.nint(pr.trace))
    if abs(pr.trace - k) + pr.tail >= mpmath.mpf(1) / 2:
        raise InconclusivePairing(
            f"trace {mpmath.nstr(pr.trace, 10)} is not within 1/2 - tail of an integer",
            suggested_cutoff=2 * pr.cutoff)
    pr.value = k
    return pr


def majorant(N: int, q) -> mpmath.mpf:
    """K_N with |x_n - 1| <= K_N q^(2n) and |row_l| <= K_N (2l + 2) q^(4l).

    A crude bound: the coefficient mass of Tr P_N, inflated by q^(-4|N|) for
    index shifts of up to |N| and by (1 + |N|)(1 + 1/(1 - q^2)) for the
    product factors.
    """
    q = mpmath.mpf(q)
    mass = sum(abs(c.evaluate(q)) for c in trace_poly(N).terms.values())
    n = abs(N)
    return mass * q ** (-4 * n) * (1 + n) * (1 + 1 / (1 - q ** 2))


def _tail_chi1(K, q, cutoff):
    return K * q ** (2 * (cutoff + 1)) / (1 - q ** 2)


def _tail_lattice(K, q, cutoff):
    """sum over t > cutoff of K (t + 2) q^(2t), plus the m-tails of the rows kept."""
    x = q ** 2
    T = cutoff + 1
    rows = K * x ** T * ((T + 2) / (1 - x) + x / (1 - x) ** 2)
    mtails = sum(_tail_chi1(K, q, max(cutoff, t)) for t in range(cutoff + 1))
    return rows + mtails


def suggest_cutoff(N: int, q, module: int = 2, target=mpmath.mpf("0.01")) -> int:
    """Smallest power-of-two cutoff (>= 8) whose tail bound is below target."""
    with precision(64):
        qq = mpmath.mpf(q)
        K = majorant(N, qq)
        c = 8
        while True:
            tail = _tail_chi1(K, qq, c) if module == 1 else _tail_lattice(K, qq, c)
            if tail < target:
                return c
            c *= 2


def pair_rank(N: int) -> int:
    """Tr chi_0(P_N), exact."""
    v = chi0_value(trace_poly(N))
    if not v.is_constant():
        raise ArithmeticError(f"chi_0 value {v} is not a constant")
    return int(v.constant())


def _chi1_diagonal(N, q, cutoff, prec):
    rep = ShiftRep("chi1", q, prec)
    tp = trace_poly(N)
    return [rep.diagonal(tp, n) for n in range(cutoff + 1)]


def pair_first_chern(N: int, q=0.5, cutoff: int | None = None, prec: int = DEFAULT_PREC,
                     x: list | None = None) -> FredholmPairing:
    """Tr (chi_1 - chi_0)(Tr P_N) = sum_n (x_n - 1)."""
    cutoff = cutoff or suggest_cutoff(N, q, 1)
    with precision(prec):
        x = x or _chi1_diagonal(N, q, cutoff, prec)
        qq = mpmath.mpf(q)
        K = majorant(N, qq)
        trace = mpmath.fsum(v - 1 for v in x[:cutoff + 1])
        tail = _tail_chi1(K, qq, cutoff)
        viol = [n for n, v in enumerate(x) if abs(v - 1) > K * qq ** (2 * n)]
        pr = FredholmPairing(1, N, q, cutoff, trace, tail,
                             detail={"majorant": mpmath.nstr(K, 6), "majorant_violations": viol,
                                     "q0_check": q0_first_chern(N)})
    if viol:
        raise InconclusivePairing(f"majorant fails at n = {viol[:5]}")
    return _round(pr)


def q0_first_chern(N: int) -> str:
    """sum_n (x_n - 1) at q -> 0+, evaluated at q = 1e-20.

    For N >= 0 only n = 0 contributes; for N < 0 each n < |N| contributes -1.
    """
    with precision(256):
        rep = ShiftRep("chi1", mpmath.mpf("1e-20"), 256)
        tp = trace_poly(N)
        total = mpmath.fsum(rep.diagonal(tp, n) - 1 for n in range(abs(N) + 3))
        return mpmath.nstr(total, 12)


def pair_second_chern(N: int, q=0.5, cutoff: int | None = None, prec: int = DEFAULT_PREC) -> FredholmPairing:
    """Tr (pi_+ - pi_-)(Tr P_N), summed row by row in l (t = 2l <= cutoff).

    Row t: the chi_2 diagonal on n <= t minus x_n, plus sum_{t < n <= cutoff} (1 - x_n).
    """
    cutoff = cutoff or suggest_cutoff(N, q, 2)
    tp = trace_poly(N)
    with precision(prec):
        qq = mpmath.mpf(q)
        K = majorant(N, qq)
        x = _chi1_diagonal(N, q, cutoff, prec)
        rep = ShiftRep("pi_plus", q, prec)
        suffix = [mpmath.mpf(0)] * (cutoff + 2)
        for n in range(cutoff, -1, -1):
            suffix[n] = suffix[n + 1] + (1 - x[n])
        rows = []
        for t in range(cutoff + 1):
            head = mpmath.fsum(rep.diagonal(tp, (t, n)) - x[n] for n in range(t + 1))
            rows.append(head + suffix[t + 1])
        trace = mpmath.fsum(rows)
        tail = _tail_lattice(K, qq, cutoff)
        viol = [t for t, v in enumerate(rows) if abs(v) > K * (t + 2) * qq ** (2 * t)]
        summed_abs = mpmath.fsum(abs(v) for v in rows)
        pr = FredholmPairing(2, N, q, cutoff, trace, tail,
                             detail={"majorant": mpmath.nstr(K, 6), "majorant_violations": viol,
                                     "row_abs_sum": mpmath.nstr(summed_abs, 10)})
    if viol:
        raise InconclusivePairing(f"majorant fails at t = {viol[:5]}")
    return _round(pr)


def chern_numbers(N: int, q=0.5, cutoff: int | None = None, prec: int = DEFAULT_PREC) -> dict:
    c1 = pair_first_chern(N, q, cutoff, prec)
    c2 = pair_second_chern(N, q, cutoff, prec)
    return {"N": N, "q": q, "cutoff": {"c1": c1.cutoff, "c2": c2.cutoff}, "rank": pair_rank(N), "c1": c1.value, "c2": c2.value,
            "traces": {"c1": mpmath.nstr(c1.trace, 20), "c2": mpmath.nstr(c2.trace, 20)},
            "tails": {"c1": mpmath.nstr(c1.tail, 5), "c2": mpmath.nstr(c2.tail, 5)}}


G_EXPECTED = ((1, 1, 1), (0, -1, 1), (0, 0, 1))
G_INV_EXPECTED = ((1, 1, -2), (0, -1, 1), (0, 0, 1))
# e1 = [1]; e2 = left module Sigma_{0,1} (projection P_-1); e3 = left Sigma_{0,-1} (P_1)
GENERATOR_CHARGES = (0, -1, 1)


def k_group_matrix(q=0.5, cutoff: int | None = None, prec: int = DEFAULT_PREC) -> tuple:
    """g_ij = <module i, e_j> from computed pairings, and its integer inverse."""
    cols = []
    for N in GENERATOR_CHARGES:
        cols.append((pair_rank(N), pair_first_chern(N, q, cutoff, prec).value,
                     pair_second_chern(N, q, cutoff, prec).value))
    g = tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))
    m = mpmath.matrix(g)
    det = int(mpmath.nint(mpmath.det(m)))
    inv = mpmath.inverse(m)
    g_inv = tuple(tuple(int(mpmath.nint(inv[i, j])) for j in range(3)) for i in range(3))
    return g, g_inv, det


def verify_pairings(Ns=range(-3, 4), q=0.5, cutoff: int | None = None, prec: int = DEFAULT_PREC,
                    stability: bool = True) -> Report:
    r = Report("khomology.pairings", config={"q": q, "cutoff": cutoff, "prec": prec})
    for N in Ns:
        r.add(f"rank P_{N} = 1", "chi_0 pairing", pair_rank(N) == 1)
        for module, fn, expect in ((1, pair_first_chern, N), (2, pair_second_chern, N * (N + 1) // 2)):
            try:
                pr = fn(N, q, cutoff, prec)
            except InconclusivePairing as e:
                r.add(f"c{module}(P_{N}) = {expect}", "integer pairing", False, detail=str(e))
                continue
            r.add(f"c{module}(P_{N}) = {expect}", "integer pairing", pr.value == expect,
                  residual=mpmath.nstr(abs(pr.trace - expect), 5), value=pr.value,
                  detail=f"tail bound {mpmath.nstr(pr.tail, 5)}; cutoff {pr.cutoff}")
            if module == 1:
                r.add(f"q->0 limit of sum (x_n - 1) = {N}", "analytic cross-check",
                      abs(float(pr.detail["q0_check"]) - N) < 1e-6, value=pr.detail["q0_check"])
            if stability:
                big = fn(N, q, 2 * pr.cutoff, prec)
                diff = abs(big.trace - pr.trace)
                r.add(f"c{module}(P_{N}) cutoff-stable", "doubling the cutoff moves the trace by < tail",
                      diff <= pr.tail, residual=mpmath.nstr(diff, 5))
    return r


def verify_q_independence(Ns=range(-3, 4), qs=(0.3, 0.5, 0.8), prec: int = 128) -> Report:
    r = Report("khomology.q_independence", config={"q": list(qs)})
    for N in Ns:
        vals = {q: (pair_first_chern(N, q, prec=prec).value, pair_second_chern(N, q, prec=prec).value)
                for q in qs}
        r.add(f"pairings of P_{N} independent of q", "homotopy invariance in q",
              len(set(vals.values())) == 1, value={str(k): v for k, v in vals.items()})
    return r


def verify_generator_matrix(q=0.5) -> Report:
    r = Report("khomology.generators", config={"q": q})
    g, g_inv, det = k_group_matrix(q)
    r.add("g matrix", "pairings of the three Fredholm modules with e1, e2, e3", g == G_EXPECTED, value=g)
    r.add("g inverse", "integer inverse", g_inv == G_INV_EXPECTED, value=g_inv)
    r.add("det g = -1", "g in GL(3, Z)", det == -1, value=det)
    prod = [[sum(g[i][k] * G_INV_EXPECTED[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    r.add("g g^-1 = 1", "stated inverse", prod == [[int(i == j) for j in range(3)] for i in range(3)])
    return r


def divergence_partial_sums(q=0.5, cutoffs=(10, 20, 40, 80), prec: int = 64) -> list:
    """Partial sums of the diagonal of chi_1(z_3) - chi_0(z_3) on l^2(N)."""
    rep = ShiftRep("chi1", q, prec)
    z3 = z(3)
    chi0 = chi0_value(z3).evaluate(q, prec)
    out = []
    for c in cutoffs:
        with precision(prec):
            out.append(mpmath.fsum(rep.diagonal(z3, n) - chi0 for n in range(c + 1)))
    return out


def verify_non_fredholm(q=0.5) -> Report:
    """The sphere-level difference is not trace class: partial sums grow without bound."""
    r = Report("khomology.non_fredholm", config={"q": q})
    sums = divergence_partial_sums(q)
    growth = all(abs(b) >= 1.9 * abs(a) for a, b in zip(sums, sums[1:]))
    r.add("diagonal of chi1(z3) - chi0(z3) not summable", "partial sums grow linearly", growth,
          value=[mpmath.nstr(s, 6) for s in sums])
    return r


def verify_summability(N: int = 2, q=0.5, cutoff: int = 40) -> Report:
    """Summed absolute row traces of pi_+ - pi_- converge."""
    r = Report("khomology.summability", config={"N": N, "q": q})
    a = pair_second_chern(N, q, cutoff).detail["row_abs_sum"]
    b = pair_second_chern(N, q, 2 * cutoff).detail["row_abs_sum"]
    r.add("pi_+ - pi_- rows absolutely summable", "1-summable Fredholm module",
          abs(float(a) - float(b)) < 1e-6, value=(a, b))
    return r


__all__ = [
    "ZPoly", "ShiftRep", "FredholmPairing", "InconclusivePairing", "REPS", "build_chi", "chi0_value",
    "trace_poly", "appendix_identities", "verify_rep_relations", "verify_identities_exact", "majorant",
    "suggest_cutoff", "pair_rank", "pair_first_chern", "pair_second_chern", "chern_numbers",
    "k_group_matrix", "verify_pairings", "verify_q_independence", "verify_generator_matrix",
    "divergence_partial_sums", "verify_non_fredholm", "verify_summability", "G_EXPECTED", "G_INV_EXPECTED",
]
