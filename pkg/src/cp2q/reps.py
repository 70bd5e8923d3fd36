"""Irreducible *-representations rho^(n1,n2) of U_q(su(3)).

Matrices are built from closed-form matrix elements on the basis
|j1, j2, m>, ordered lexicographically, and evaluated in mpmath at a
chosen precision.  The K's are diagonal, F_i is the transpose of E_i.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath

from .hopf import E1, E2, F1, F2, K1, K2, UqWord, qcomm
from .qcoeff import (DEFAULT_PREC, ConfigurationError, QRatio, QScalar, Surd, precision,
                     q_binomial, q_factorial, q_number, qsqrt)
from .report import Report

Weight = tuple  # (j1, j2, m) with m a Fraction


def dimension(n1: int, n2: int) -> int:
    return (n1 + 1) * (n2 + 1) * (n1 + n2 + 2) // 2


def basis(n1: int, n2: int) -> list[Weight]:
    """Admissible (j1, j2, m), lexicographic."""
    out = []
    for j1 in range(n1 + 1):
        for j2 in range(n2 + 1):
            s = Fraction(j1 + j2, 2)
            m = -s
            while m <= s:
                out.append((j1, j2, m))
                m += 1
    return out


def highest_weight(n1: int, n2: int) -> Weight:
    return (n1, 0, Fraction(n1, 2))


def _qn(q, x):
    return (q ** x - q ** (-x)) / (q - 1 / q)


def k2_exponent(n1: int, n2: int, w: Weight) -> Fraction:
    j1, j2, m = w
    return Fraction(3, 4) * (j1 - j2) + Fraction(1, 2) * (n2 - n1 - m)


@dataclass
class IrrepMatrices:
    n1: int
    n2: int
    q: object
    prec: int
    basis: list
    mats: dict = field(default_factory=dict)

    @property
    def label(self) -> tuple[int, int]:
        return (self.n1, self.n2)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, w: Weight) -> int:
        return self._index[w]

    def __post_init__(self):
        self._index = {w: i for i, w in enumerate(self.basis)}

    def hw_vector(self):
        v = mpmath.zeros(self.dim, 1)
        v[self.index(highest_weight(self.n1, self.n2)), 0] = 1
        return v

    def unit(self, w: Weight):
        v = mpmath.zeros(self.dim, 1)
        v[self.index(w), 0] = 1
        return v

    def __call__(self, word) -> mpmath.matrix:
        """rho(word) for a UqWord (or generator name)."""
        word = UqWord.coerce(word)
        with precision(self.prec):
            out = mpmath.zeros(self.dim, self.dim)
            for w, c in word.terms.items():
                m = mpmath.eye(self.dim)
                for letter in w:
                    m = m * self.mats[letter]
                out += c.evaluate(self.q) * m
            return out

    def _sparse(self, letter: str) -> list:
        cache = self.__dict__.setdefault("_nz", {})
        if letter not in cache:
            m = self.mats[letter]
            cache[letter] = [(i, j, m[i, j]) for i in range(self.dim) for j in range(self.dim) if m[i, j]]
        return cache[letter]

    def row_apply(self, v, word) -> mpmath.matrix:
        """(v^t rho(word))^t without forming rho(word); v is a column vector."""
        word = UqWord.coerce(word)
        with precision(self.prec):
            out = [mpmath.mpf(0)] * self.dim
            for w, c in word.terms.items():
                x = [v[i, 0] for i in range(self.dim)]
                for letter in w:
                    y = [mpmath.mpf(0)] * self.dim
                    for i, j, a in self._sparse(letter):
                        if x[i]:
                            y[j] += x[i] * a
                    x = y
                cv = c.evaluate(self.q)
                out = [o + cv * t for o, t in zip(out, x)]
            return mpmath.matrix(out)

    def to_json(self) -> str:
        digits = int(self.prec * 0.30103) + 2

        def rows(m):
            return [[mpmath.nstr(m[i, j], digits) for j in range(m.cols)] for i in range(m.rows)]

        return json.dumps({
            "label": list(self.label),
            "dim": self.dim,
            "basis": [[j1, j2, str(m)] for j1, j2, m in self.basis],
            "mats": {g: rows(self.mats[g]) for g in ("K1", "K2", "E1", "E2", "F1", "F2")},
        }, indent=1)

    def exact_squares(self) -> dict:
        """Exact squares of the nonzero E-matrix entries, keyed (gen, row, col)."""
        out = {}
        for (gen, i, j), sq in _entry_squares(self.n1, self.n2).items():
            out[(gen, i, j)] = sq
        return out


def _e_entries(n1: int, n2: int):
    """Yield (gen, target, source, squared coefficient as QRatio)."""
    qn = q_number
    for w in basis(n1, n2):
        j1, j2, m = w
        s = Fraction(j1 + j2, 2)
        a = s - m
        b = s + m + 1
        if (j1, j2, m + 1) in _basis_set(n1, n2):
            yield "E1", (j1, j2, m + 1), w, QRatio(qn(a) * qn(b))
        t = (j1 + 1, j2, m - Fraction(1, 2))
        if t in _basis_set(n1, n2):
            num = qn(s - m + 1) * qn(n1 - j1) * qn(n2 + j1 + 2) * qn(j1 + 1)
            den = qn(j1 + j2 + 1) * qn(j1 + j2 + 2)
            yield "E2", t, w, QRatio(num, den)
        t = (j1, j2 - 1, m - Fraction(1, 2))
        if t in _basis_set(n1, n2):
            if j1 + j2:
                num = qn(s + m) * qn(n1 + j2 + 1) * qn(n2 - j2 + 1) * qn(j2)
                den = qn(j1 + j2) * qn(j1 + j2 + 1)
            else:
                num, den = qn(s + m), QScalar.const(1)
            yield "E2", t, w, QRatio(num, den)


@lru_cache(maxsize=None)
def _basis_set(n1: int, n2: int) -> frozenset:
    return frozenset(basis(n1, n2))


def _entry_squares(n1: int, n2: int) -> dict:
    idx = {w: i for i, w in enumerate(basis(n1, n2))}
    return {(g, idx[t], idx[s]): sq.simplify() for g, t, s, sq in _e_entries(n1, n2)}


def build_irrep(n1: int, n2: int, q=0.5, prec: int = DEFAULT_PREC) -> IrrepMatrices:
    if n1 < 0 or n2 < 0:
        raise ValueError("irrep labels must be nonnegative")
    if prec < 53:
        raise ConfigurationError("precision below 53 bits cannot separate the square roots")
    with precision(prec):
        q = mpmath.mpf(q)
        b = basis(n1, n2)
        rep = IrrepMatrices(n1, n2, q, prec, b)
        d = len(b)
        k1 = mpmath.zeros(d, d)
        k2 = mpmath.zeros(d, d)
        for i, w in enumerate(b):
            k1[i, i] = q ** w[2]
            k2[i, i] = q ** k2_exponent(n1, n2, w)
        e = {"E1": mpmath.zeros(d, d), "E2": mpmath.zeros(d, d)}
        for gen, t, s, sq in _e_entries(n1, n2):
            val = sq.evaluate(q)
            if val < 0:
                raise ArithmeticError(f"negative squared matrix element {gen} {t} <- {s}")
            e[gen][rep.index(t), rep.index(s)] = mpmath.sqrt(val)
        rep.mats = {
            "K1": k1, "K2": k2,
            "K1i": mpmath.diag([1 / k1[i, i] for i in range(d)]) if d else k1,
            "K2i": mpmath.diag([1 / k2[i, i] for i in range(d)]) if d else k2,
            "E1": e["E1"], "E2": e["E2"], "F1": e["E1"].T, "F2": e["E2"].T,
        }
    return rep


def _norm(m) -> mpmath.mpf:
    return mpmath.mnorm(m, "F") if m.rows else mpmath.mpf(0)


def default_tol(prec: int):
    return mpmath.mpf(10) ** (-(prec // 8))


def verify_relations(rep: IrrepMatrices, tol=None) -> Report:
    """Residual norms of the defining relations of U_q(su(3))."""
    tol = default_tol(rep.prec) if tol is None else mpmath.mpf(tol)
    r = Report("reps.relations", config={"label": rep.label, "q": str(rep.q), "prec": rep.prec})
    M = rep.mats
    with precision(rep.prec):
        q = rep.q
        two = q + 1 / q
        checks = {
            "[K1,K2]=0": M["K1"] * M["K2"] - M["K2"] * M["K1"],
            "F1=E1^T": M["F1"] - M["E1"].T,
            "F2=E2^T": M["F2"] - M["E2"].T,
        }
        for i in (1, 2):
            K, Ki = M[f"K{i}"], M[f"K{i}i"]
            E, F = M[f"E{i}"], M[f"F{i}"]
            checks[f"[E{i},F{i}]"] = E * F - F * E - (K * K - Ki * Ki) / (q - 1 / q)
            checks[f"K{i}E{i}K{i}^-1=qE{i}"] = K * E * Ki - q * E
            j = 3 - i
            Ej, Fj = M[f"E{j}"], M[f"F{j}"]
            checks[f"[E{i},F{j}]=0"] = E * Fj - Fj * E
            checks[f"K{i}E{j}K{i}^-1=q^-1/2E{j}"] = K * Ej * Ki - q ** mpmath.mpf(-0.5) * Ej
            checks[f"Serre E{i}E{i}E{j}"] = E * E * Ej - two * E * Ej * E + Ej * E * E
            checks[f"Serre F{i}F{i}F{j}"] = F * F * Fj - two * F * Fj * F + Fj * F * F
        for name, m in checks.items():
            res = _norm(m)
            r.add(name, "U_q(su(3)) defining relations", res < tol, residual=mpmath.nstr(res, 5))
    return r


def casimir_matrix(rep: IrrepMatrices):
    """C_q with H = (K1 K2^-1)^(2/3) realized on the diagonal."""
    M = rep.mats
    with precision(rep.prec):
        q = rep.q
        d = rep.dim
        h = mpmath.diag([(M["K1"][i, i] / M["K2"][i, i]) ** (mpmath.mpf(2) / 3) for i in range(d)])
        hi = mpmath.diag([1 / h[i, i] for i in range(d)])
        eye = mpmath.eye(d)
        k1, k2, k1i, k2i = M["K1"], M["K2"], M["K1i"], M["K2i"]
        e1, e2, f1, f2 = M["E1"], M["E2"], M["F1"], M["F2"]
        kk = q * k1 * k2
        kki = k1i * k2i / q

        def qc(a, b):
            return a * b - b * a / q

        c = ((h + hi) * (kk * kk + kki * kki) + h * h + hi * hi - 6 * eye) / (q - 1 / q) ** 2
        c += (q * h * k2 * k2 + hi * k2i * k2i / q) * f1 * e1
        c += (q * hi * k1 * k1 + h * k1i * k1i / q) * f2 * e2
        c += q * h * qc(f2, f1) * qc(e1, e2)
        c += q * hi * qc(f1, f2) * qc(e2, e1)
        return c


def casimir_eigenvalue(n1: int, n2: int) -> QRatio:
    """[(n1-n2)/3]^2 + [(2n1+n2)/3+1]^2 + [(n1+2n2)/3+1]^2, exactly."""
    a = QRatio.coerce(q_number(Fraction(n1 - n2, 3)))
    b = QRatio.coerce(q_number(Fraction(2 * n1 + n2, 3) + 1))
    c = QRatio.coerce(q_number(Fraction(n1 + 2 * n2, 3) + 1))
    return a * a + b * b + c * c


def verify_casimir_spectrum(rep: IrrepMatrices, tol=None) -> Report:
    tol = default_tol(rep.prec) if tol is None else mpmath.mpf(tol)
    r = Report("reps.casimir", config={"label": rep.label, "q": str(rep.q)})
    with precision(rep.prec):
        c = casimir_matrix(rep)
        expected = casimir_eigenvalue(rep.n1, rep.n2).evaluate(rep.q)
        dev = mpmath.mpf(0)
        for i in range(rep.dim):
            for j in range(rep.dim):
                target = expected if i == j else 0
                dev = max(dev, abs(c[i, j] - target))
        off = max((abs(c[i, j]) for i in range(rep.dim) for j in range(rep.dim) if i != j),
                  default=mpmath.mpf(0))
        r.add("casimir is scalar", "Casimir acts as a scalar on each irrep", off < tol,
              residual=mpmath.nstr(off, 5))
        r.add("casimir eigenvalue", "Casimir spectrum formula", dev < tol,
              residual=mpmath.nstr(dev, 5), value=mpmath.nstr(expected, 30))
    return r


def branching_formula(n1: int, n2: int) -> dict:
    """Multiplicities of sigma_{l,N} in the restriction to U_q(u(2))."""
    out: dict = {}
    for two_l in range(n1 + n2 + 1):
        l = Fraction(two_l, 2)
        s = max(-l, l - n2)
        while s <= min(l, n1 - l):
            n = 3 * s - n1 + n2
            out[(l, n)] = out.get((l, n), 0) + 1
            s += 1
    return out


def branch_to_u2(rep: IrrepMatrices, tol=None) -> dict:
    """Read (l, N) multiplicities from the su(2) Casimir and L = K1 K2^2."""
    tol = default_tol(rep.prec) if tol is None else mpmath.mpf(tol)
    M = rep.mats
    with precision(rep.prec):
        q = rep.q
        k1, k1i = M["K1"], M["K1i"]
        c2 = M["F1"] * M["E1"] + (q * k1 * k1 + k1i * k1i / q) / (q - 1 / q) ** 2
        lmat = k1 * M["K2"] * M["K2"]
        d = rep.dim
        off = max((abs(c2[i, j]) for i in range(d) for j in range(d) if i != j), default=0)
        if off > tol:
            raise ArithmeticError("su(2) Casimir is not diagonal in the weight basis")
        counts: dict = {}
        for i in range(d):
            v = c2[i, i] * (q - 1 / q) ** 2
            # v = x + 1/x with x = q^(2l+1), x <= 1 for l >= 0 since q < 1
            x = (v - mpmath.sqrt(v * v - 4)) / 2 if q < 1 else (v + mpmath.sqrt(v * v - 4)) / 2
            two_l_plus_1 = mpmath.log(x) / mpmath.log(q)
            n_val = mpmath.log(lmat[i, i]) / mpmath.log(q)
            l = Fraction(int(mpmath.nint(two_l_plus_1 - 1)), 2)
            n = Fraction(int(mpmath.nint(2 * n_val)), 2)
            if abs(two_l_plus_1 - 1 - 2 * l) > mpmath.mpf(10) ** -10 or abs(n_val - n) > mpmath.mpf(10) ** -10:
                raise ArithmeticError("eigenvalue clustering failed; raise the precision")
            counts[(l, n)] = counts.get((l, n), 0) + 1
        out = {}
        for (l, n), cnt in counts.items():
            if cnt % (2 * l + 1):
                raise ArithmeticError(f"eigenspace ({l},{n}) of size {cnt} is not a sum of spin-{l} blocks")
            out[(l, n)] = cnt // int(2 * l + 1)
        return out


def x_normalization(n1: int, n2: int, w: Weight):
    j1, j2, m = w
    s = Fraction(j1 + j2, 2)
    num = (q_factorial(int(s + m)) * q_factorial(n2 - j2) * q_factorial(j1)
           * q_factorial(n1 + j2 + 1) * q_factorial(n2 + j1 + 1))
    den = (q_factorial(int(s - m)) * q_factorial(n1 - j1) * q_factorial(j2)
           * q_factorial(n1) * q_factorial(n2) * q_factorial(n1 + n2 + 1))
    return Surd(qsqrt(q_number(j1 + j2 + 1)) * qsqrt(QRatio(num, den)))


def x_element(n1: int, n2: int, w: Weight) -> UqWord:
    """The word X with X|hw> = |j1, j2, m>."""
    j1, j2, m = w
    if w not in _basis_set(n1, n2):
        raise ValueError(f"{w} is not an admissible weight of ({n1},{n2})")
    s = Fraction(j1 + j2, 2)
    f21 = qcomm(F2, F1)
    total = UqWord()
    for k in range(n1 - j1 + 1):
        coeff = (Surd(QScalar.qpow(-k * (j1 + j2 + k + 1)) * q_binomial(n1 - j1, k))
                 / Surd(q_factorial(j1 + j2 + k + 1)))
        word = F1 ** int(s - m + k) * f21 ** (n1 - j1 - k) * F2 ** (j2 + k)
        total = total + word * coeff
    return total * x_normalization(n1, n2, w)


def verify_x_action(rep: IrrepMatrices, tol=None) -> Report:
    tol = default_tol(rep.prec) if tol is None else mpmath.mpf(tol)
    r = Report("reps.x_elements", config={"label": rep.label})
    hw = rep.hw_vector()
    with precision(rep.prec):
        for w in rep.basis:
            v = rep(x_element(rep.n1, rep.n2, w)) * hw
            res = _norm(v - rep.unit(w))
            r.add(f"X{w}|hw>", "X elements map the highest weight vector to the basis", res < tol,
                  residual=mpmath.nstr(res, 5))
    return r


def hw_expectation(rep: IrrepMatrices, word) -> mpmath.mpf:
    hw = rep.hw_vector()
    with precision(rep.prec):
        return (hw.T * rep(word) * hw)[0, 0]


__all__ = [
    "IrrepMatrices", "basis", "dimension", "highest_weight", "build_irrep", "verify_relations",
    "casimir_matrix", "casimir_eigenvalue", "verify_casimir_spectrum", "branching_formula",
    "branch_to_u2", "x_element", "x_normalization", "verify_x_action", "hw_expectation",
    "k2_exponent", "default_tol", "K1", "K2", "E1", "E2", "F1", "F2",
]
