"""The covariant exterior algebra V^(.,.) of the calculus on CP^2_q.

Bidegrees form the diamond

            (0,0)
        (0,1)   (1,0)
    (0,2)   (1,1)   (2,0)
        (1,2)   (2,1)
            (2,2)

with dimensions 1, 2, 2, 1, 4, 1, 2, 2, 1. A vector in V^(1,1) is (w, w4)
with w in C^3 (spin 1) and w4 a scalar. Products are stored as structure
constants: for each pair of bidegrees a list of (out, i, j, coeff) with coeff
an exact Surd, so the same table drives V-level and A-valued wedges.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import isqrt

from .hopf import L, UqWord
from .qcoeff import (ConfigurationError, QScalar, RadicalScalar, Surd, q_number, qsqrt,
                     radicand)
from .report import Report

BIDEGREES = [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0), (1, 2), (2, 1), (2, 2)]
DIM = {(0, 0): 1, (0, 1): 2, (1, 0): 2, (0, 2): 1, (1, 1): 4, (2, 0): 1,
       (1, 2): 2, (2, 1): 2, (2, 2): 1}
SCALAR_DEGREES = {(0, 0), (0, 2), (2, 0), (2, 2)}
# (spin, charge) of sigma^(i,j); V^(1,1) is sigma_{1,0} + sigma_{0,0}
CHARGES = {(0, 0): 0, (0, 1): Fraction(3, 2), (1, 0): Fraction(-3, 2), (0, 2): 3, (1, 1): 0,
           (2, 0): -3, (1, 2): Fraction(3, 2), (2, 1): Fraction(-3, 2), (2, 2): 0}


def _qp(x) -> Surd:
    return Surd(QScalar.qpow(x))


ONE = Surd(1)
R2 = Surd(qsqrt(q_number(2)))           # [2]^(1/2)
R2I = ONE / R2
R3I = ONE / Surd(qsqrt(q_number(3)))    # [3]^(-1/2)
Q2 = Surd(q_number(2))

# mu maps as (out, i, j, coeff)
MU0 = [(0, 0, 1, _qp(Fraction(1, 2)) * R2I), (0, 1, 0, -_qp(Fraction(-1, 2)) * R2I)]
MU1 = [(0, 0, 0, ONE), (1, 0, 1, _qp(Fraction(-1, 2)) * R2I), (1, 1, 0, _qp(Fraction(1, 2)) * R2I),
       (2, 1, 1, ONE)]
MU2 = [(0, 0, 1, _qp(1)), (0, 1, 0, -_qp(Fraction(-1, 2)) * R2),
       (1, 0, 2, _qp(Fraction(1, 2)) * R2), (1, 1, 1, -_qp(-1))]
MU3 = [(0, 0, 1, _qp(Fraction(1, 2)) * R2), (0, 1, 0, -_qp(-1)),
       (1, 1, 1, _qp(1)), (1, 2, 0, -_qp(Fraction(-1, 2)) * R2)]
MU4 = [(0, 0, 2, _qp(1)), (0, 1, 1, -ONE), (0, 2, 0, _qp(-1))]
MUS = {0: (MU0, 2, 2, 1), 1: (MU1, 2, 2, 3), 2: (MU2, 2, 3, 2), 3: (MU3, 3, 2, 2), 4: (MU4, 3, 3, 1)}


def _mul(a, b):
    if isinstance(a, Surd) and isinstance(b, Surd):
        return a * b
    return a * b  # NormalForm * NormalForm


def _scale(c: Surd, x):
    return c * x if isinstance(x, Surd) else x.scale(c)


def _zero_like(x):
    return Surd(0) if isinstance(x, Surd) else x - x


def bilinear(table, v, w, out_dim: int, zero=None):
    """Evaluate sum coeff * v[i] w[j] into out[o]."""
    out = [None] * out_dim
    for o, i, j, c in table:
        if _is_zero(v[i]) or _is_zero(w[j]):
            continue
        term = _scale(c, _mul(v[i], w[j]))
        out[o] = term if out[o] is None else out[o] + term
    fill = zero if zero is not None else _zero_like(v[0])
    return [fill if x is None else x for x in out]


def _is_zero(x) -> bool:
    return x.is_zero()


def mu(k: int, v, w) -> list:
    """mu_k(v, w) for exact vectors."""
    table, dv, dw, do = MUS[k]
    if len(v) != dv or len(w) != dw:
        raise ValueError(f"mu_{k} expects lengths ({dv}, {dw}), got ({len(v)}, {len(w)})")
    v = [Surd.coerce(x) for x in v]
    w = [Surd.coerce(x) for x in w]
    return bilinear(table, v, w, do, Surd(0))


def _tab(mu_table, c: Surd, oshift: int = 0):
    return [(o + oshift, i, j, c * x) for o, i, j, x in mu_table]


@dataclass
class WedgeCoeffs:
    """Normalization constants of the product.

    c[0..4] and d[0..4] are scalars; cc[(a, i)] with a in {1, 2}, i in 1..5
    are the mixed coefficients of the products involving V^(1,1), labelled
    as in the associativity constraints (i=1: V01 x V11, 2: V10 x V11,
    3: V11 x V01, 4: V11 x V10, 5: V11 x V11).
    """

    c: tuple
    d: tuple
    cc: dict
    s1: int = 1
    s2: int = 1
    label: str = "general"
    _table: dict = field(default=None, repr=False, compare=False)

    @classmethod
    def general(cls, c, d, cc, label="general") -> "WedgeCoeffs":
        c = tuple(Surd.coerce(x) for x in c)
        d = tuple(Surd.coerce(x) for x in d)
        cc = {k: Surd.coerce(v) for k, v in cc.items()}
        return cls(c, d, cc, 0, 0, label)

    @classmethod
    def from_constraints(cls, c, s1: int = 1, s2: int = 1) -> "WedgeCoeffs":
        """Derive d_i and the mixed coefficients from c_0..c_4 through associativity."""
        c0, c1, c2, c3, c4 = (Surd.coerce(x) for x in c)
        r3 = ONE / R3I  # sqrt([3])
        a = r3 / Q2
        b = ONE / Q2
        h, t = _qp(Fraction(s2, 2)), _qp(Fraction(3 * s2, 2))
        hi, ti = ONE / h, ONE / t
        d = (s1 * h * c1, s1 * ti * c2, c3 * c4 / c0, c3 * c4 / c0, c3)
        cc = {
            (1, 1): a * c0 / c1, (2, 1): -b * c0 / c2,
            (1, 3): s1 * hi * a * c0 / c1, (2, 3): -s1 * t * b * c0 / c2,
            (1, 2): -s1 * hi * a * c4 / c1, (2, 2): -s1 * t * b * c4 / c2,
            (1, 4): -a * c4 / c1, (2, 4): -b * c4 / c2,
            (1, 5): -s1 * hi * a * c3 * c4 / (c1 * c1), (2, 5): -s1 * t * b * c3 * c4 / (c2 * c2),
        }
        return cls((c0, c1, c2, c3, c4), d, cc, s1, s2, "constrained")

    def perturbed(self, name: str, factor) -> "WedgeCoeffs":
        """Copy with one parameter ('c0', 'd0', 'cc1_2', ...) multiplied by factor."""
        f = Surd.coerce(factor)
        if name[:2] == "cc":
            a, i = name[2:].split("_")
            cc = dict(self.cc)
            cc[(int(a), int(i))] = cc[(int(a), int(i))] * f
            return replace(self, cc=cc, label=f"{self.label}*{name}", _table=None)
        vals = list(getattr(self, name[0]))
        vals[int(name[1:])] = vals[int(name[1:])] * f
        return replace(self, **{name[0]: tuple(vals)}, label=f"{self.label}*{name}", _table=None)

    @property
    def table(self) -> dict:
        if self._table is None:
            self._table = _build_table(self)
        return self._table

    def to_json(self) -> dict:
        return {"c": [str(x) for x in self.c], "d": [str(x) for x in self.d],
                "cc": {f"{a},{i}": str(v) for (a, i), v in sorted(self.cc.items())},
                "s1": self.s1, "s2": self.s2}


def _vw4(w4_first: bool):
    # v w4 (or v4 w): out[k] = v[k] * w[3]
    if w4_first:
        return [(0, 3, 0, ONE), (1, 3, 1, ONE)]
    return [(0, 0, 3, ONE), (1, 1, 3, ONE)]


def _build_table(k: WedgeCoeffs) -> dict:
    c0, c1, c2, c3, c4 = k.c
    d0, d1, d2, d3, d4 = k.d
    cc = k.cc
    t = {
        ((0, 1), (0, 1)): _tab(MU0, c0),
        ((0, 1), (1, 0)): _tab(MU1, c1) + _tab(MU0, c2, 3),
        ((0, 1), (2, 1)): _tab(MU0, c3),
        ((0, 1), (1, 1)): _tab(MU2, cc[1, 1] * R3I) + _tab(_vw4(False), cc[2, 1]),
        ((1, 0), (1, 0)): _tab(MU0, c4),
        ((1, 0), (0, 1)): _tab(MU1, -d0) + _tab(MU0, d1, 3),
        ((1, 0), (1, 2)): _tab(MU0, d2),
        ((1, 0), (1, 1)): _tab(MU2, cc[1, 2] * R3I) + _tab(_vw4(False), cc[2, 2]),
        ((1, 2), (1, 0)): _tab(MU0, d3),
        ((2, 1), (0, 1)): _tab(MU0, d4),
        ((1, 1), (0, 1)): _tab(MU3, -cc[1, 3] * R3I) + _tab(_vw4(True), cc[2, 3]),
        ((1, 1), (1, 0)): _tab(MU3, -cc[1, 4] * R3I) + _tab(_vw4(True), cc[2, 4]),
        ((1, 1), (1, 1)): _tab(MU4, cc[1, 5] * R3I) + _tab([(0, 3, 3, ONE)], cc[2, 5]),
    }
    # one-dimensional slots act by plain multiplication on 2-dim spaces;
    # associativity then forces V^(0,2) x V^(2,0) to carry d3/c4 (= c3/c0)
    ratio = {((0, 2), (2, 0)): d3 / c4, ((2, 0), (0, 2)): d2 / c4}
    for a, b in itertools.product(BIDEGREES, repeat=2):
        s = (a[0] + b[0], a[1] + b[1])
        if s not in DIM or (a, b) in t:
            continue
        f = ratio.get((a, b), ONE)
        if a in SCALAR_DEGREES:
            t[a, b] = [(i, 0, i, f) for i in range(DIM[b])]
        elif b in SCALAR_DEGREES:
            t[a, b] = [(i, i, 0, f) for i in range(DIM[a])]
        else:
            raise AssertionError(f"missing product {a} x {b}")
    return t


def _r2_power(e: Fraction) -> Surd:
    """[2]^e for e in (1/4)Z restricted to the half-integer lattice."""
    if (2 * e).denominator != 1:
        raise ConfigurationError("fourth roots of [2] are outside the supported ring")
    n = int(2 * e)
    out = ONE
    base = R2 if n >= 0 else R2I
    for _ in range(abs(n)):
        out = out * base
    return out


def _sqrt_single(x: Surd) -> Surd:
    """Exact square root of a positive single-term Surd whose radicals come in pairs."""
    if len(x.terms) != 1:
        raise ConfigurationError(f"cannot take an exact square root of {x}")
    (r,) = x.terms.values()
    if any(m % 2 for _, m in r.rad):
        raise ConfigurationError(f"square root of {r} needs fourth roots")
    out = qsqrt(r.base)
    return Surd(out * RadicalScalar(QScalar.const(1), {tag: m // 2 for tag, m in r.rad}))


def _sign_at(x: Surd, q=0.5) -> int:
    return 1 if x.evaluate(q) > 0 else -1


def solve_coefficients(c0=None, signs=(1, 1), s: int = 1, c3_sign: int = -1) -> WedgeCoeffs:
    """Coefficients with *_H^2 = (-1)^deg and c4 = c0.

    c1 = +-q^(-s/4)[2]^(-1/4)|c0|^(1/2), c2 = +-q^(3s/4)[2]^(-1/4)|c0|^(1/2),
    c3 = c3_sign [2]^(1/2). The default c0 = [2]^(1/2) keeps everything in the
    ring of q^(1/12) with [2]^(1/2) adjoined.
    """
    if s not in (1, -1) or c3_sign not in (1, -1) or any(x not in (1, -1) for x in signs):
        raise ConfigurationError("signs must be +1 or -1")
    c0 = R2 if c0 is None else Surd.coerce(c0)
    if c0.is_zero():
        raise ConfigurationError("c0 must be nonzero")
    root = _sqrt_single(c0 * _sign_at(c0) * R2I)   # |c0|^(1/2) [2]^(-1/4)
    c1 = signs[0] * _qp(Fraction(-s, 4)) * root
    c2 = signs[1] * _qp(Fraction(3 * s, 4)) * root
    c3 = c3_sign * R2
    k = WedgeCoeffs.from_constraints((c0, c1, c2, c3, c0), s1=1, s2=s)
    k.label = "hodge"
    return k


DEFAULT = None


def default_coeffs() -> WedgeCoeffs:
    global DEFAULT
    if DEFAULT is None:
        DEFAULT = solve_coefficients()
    return DEFAULT


# vectors

@dataclass(frozen=True)
class VForm:
    bidegree: tuple
    comps: tuple

    def __post_init__(self):
        if self.bidegree not in DIM:
            raise ValueError(f"bidegree {self.bidegree} outside the diamond")
        if len(self.comps) != DIM[self.bidegree]:
            raise ValueError(f"V^{self.bidegree} has dimension {DIM[self.bidegree]}")

    @classmethod
    def of(cls, bidegree, comps) -> "VForm":
        return cls(tuple(bidegree), tuple(Surd.coerce(x) for x in comps))

    @classmethod
    def basis(cls, bidegree, k: int) -> "VForm":
        return cls.of(bidegree, [1 if i == k else 0 for i in range(DIM[tuple(bidegree)])])

    @property
    def degree(self) -> int:
        return sum(self.bidegree)

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.comps)

    def __add__(self, other: "VForm") -> "VForm":
        assert self.bidegree == other.bidegree
        return VForm(self.bidegree, tuple(a + b for a, b in zip(self.comps, other.comps)))

    def __neg__(self):
        return VForm(self.bidegree, tuple(-a for a in self.comps))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "VForm":
        c = Surd.coerce(c)
        return VForm(self.bidegree, tuple(c * a for a in self.comps))

    def __eq__(self, other):
        if not isinstance(other, VForm) or self.bidegree != other.bidegree:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None


def all_basis(bidegrees=BIDEGREES):
    for b in bidegrees:
        for k in range(DIM[b]):
            yield VForm.basis(b, k)


def wedge_components(coeffs: WedgeCoeffs, b1, b2, v, w, zero=None):
    """Componentwise wedge for coefficient lists over any ring; None outside the diamond."""
    s = (b1[0] + b2[0], b1[1] + b2[1])
    if s not in DIM:
        return s, None
    return s, bilinear(coeffs.table[b1, b2], v, w, DIM[s], zero)


def wedge(coeffs: WedgeCoeffs, v: VForm, w: VForm) -> VForm | None:
    """v ^_q w; None when the bidegrees leave the diamond."""
    s, comps = wedge_components(coeffs, v.bidegree, w.bidegree, v.comps, w.comps, Surd(0))
    return None if comps is None else VForm(s, tuple(comps))


def _eq_or_both_none(a, b) -> bool:
    if a is None or b is None:
        return a is None and b is None
    return a == b


def check_associativity(coeffs: WedgeCoeffs) -> Report:
    """Exhaustive (v^v')^v'' = v^(v'^v'') on basis triples, plus the mu identities."""
    r = Report("exterior.associativity", config={"coeffs": coeffs.label})
    basis = list(all_basis())
    bad, count = [], 0
    for a in basis:
        for b in basis:
            ab = wedge(coeffs, a, b)
            if ab is None:
                continue
            for c in basis:
                bc = wedge(coeffs, b, c)
                if bc is None:
                    continue
                lhs = wedge(coeffs, ab, c)
                rhs = wedge(coeffs, a, bc)
                count += 1
                if not _eq_or_both_none(lhs, rhs):
                    bad.append((a.bidegree, b.bidegree, c.bidegree))
    kinds = sorted(set(bad))
    r.add("associativity on basis triples", "associativity of the wedge product", not bad,
          value=count, residual=len(bad), detail=str(kinds[:5]))
    r.extend(check_mu_identities())
    return r


def _basis_vectors(n: int):
    return [[ONE if i == k else Surd(0) for i in range(n)] for k in range(n)]


def check_mu_identities() -> Report:
    """The five mu-identities used to reduce associativity to the coefficient constraints."""
    r = Report("exterior.mu_identities")
    b2, b3 = _basis_vectors(2), _basis_vectors(3)
    bad = {k: 0 for k in "ABCDE"}

    def vec_eq(x, y):
        return all((a - b).is_zero() for a, b in zip(x, y))

    for v in b2:
        for v1 in b2:
            for w in b3:
                if not vec_eq(mu(4, mu(1, v, v1), w), mu(0, v, mu(2, v1, w))):
                    bad["A"] += 1
                if not vec_eq(mu(0, mu(2, v, w), v1), mu(0, v, mu(3, w, v1))):
                    bad["B"] += 1
                if not vec_eq(mu(0, mu(3, w, v), v1), mu(4, w, mu(1, v, v1))):
                    bad["C"] += 1
            for v2 in b2:
                m01, m12 = mu(0, v, v1)[0], mu(0, v1, v2)[0]
                lhs = mu(2, v, mu(1, v1, v2))
                rhs = [Q2 * m01 * x + y * m12 for x, y in zip(v2, v)]
                if not vec_eq(lhs, rhs):
                    bad["D"] += 1
                lhs = mu(3, mu(1, v, v1), v2)
                rhs = [m01 * x + Q2 * y * m12 for x, y in zip(v2, v)]
                if not vec_eq(lhs, rhs):
                    bad["E"] += 1
    for k, n in bad.items():
        r.add(f"mu identity {k}", "identities between the mu maps", n == 0, residual=n)
    return r


# q = 1 specialization

def _squarefree(n: int) -> tuple[int, int]:
    """n = f^2 * s with s squarefree; returns (f, s)."""
    f, s, p = 1, 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            f *= p
        if n % p == 0:
            n //= p
            s *= p
        p += 1
    return f, s * n


def at_one(x: Surd) -> dict:
    """Exact value at q = 1 as {squarefree n: rational coefficient of sqrt(n)}."""
    out: dict = {}
    for term in x.terms.values():
        val = Fraction(term.base.at_one())
        inside = Fraction(1)
        for tag, m in term.rad:
            rv = Fraction(radicand(tag, term.k).at_one())
            if rv <= 0:
                raise ValueError(f"radicand {tag} does not stay positive at q = 1")
            val *= rv ** ((m - m % 2) // 2)
            if m % 2:
                inside *= rv
        num = inside.numerator * inside.denominator
        f, s = _squarefree(num)
        val *= Fraction(f, inside.denominator)
        out[s] = out.get(s, 0) + val
    return {k: v for k, v in out.items() if v}


def check_graded_commutativity_at_one(coeffs: WedgeCoeffs) -> Report:
    """v ^ w = (-1)^(kk') w ^ v at q = 1 on all basis pairs."""
    r = Report("exterior.graded_commutativity_q1", config={"s1": coeffs.s1})
    bad = []
    for a in all_basis():
        for b in all_basis():
            ab, ba = wedge(coeffs, a, b), wedge(coeffs, b, a)
            if ab is None:
                continue
            sign = -1 if a.degree * b.degree % 2 else 1
            if any(at_one(x - sign * y) for x, y in zip(ab.comps, ba.comps)):
                bad.append((a.bidegree, b.bidegree))
    r.add("graded commutative at q = 1", "graded commutativity in the classical limit", not bad,
          residual=len(bad), detail=str(sorted(set(bad))[:5]))
    return r


# representations sigma_{l,N} of U_q(u(2))

def _spin(bidegree) -> list:
    """Irreducible slots of V^(i,j) as (spin, offset)."""
    if bidegree == (1, 1):
        return [(1, 0), (0, 3)]
    return [(Fraction(DIM[bidegree] - 1, 2), 0)]


def sigma_letter(ell, N, letter: str) -> list:
    """Matrix of a letter in sigma_{l,N}; K2 acts as q^((N - m)/2) so that K1 K2^2 = q^N."""
    ell = Fraction(ell)
    n = int(2 * ell + 1)
    ms = [ell - k for k in range(n)]
    zero = Surd(0)
    mat = [[zero] * n for _ in range(n)]
    if letter in ("K1", "K1i", "K2", "K2i"):
        for k, m in enumerate(ms):
            e = m if letter[:2] == "K1" else (Fraction(N) - m) / 2
            mat[k][k] = _qp(-e if letter.endswith("i") else e)
        return mat
    if letter in ("E1", "F1"):
        scale = R2 if n == 3 else ONE
        for k in range(n - 1):
            if letter == "E1":
                mat[k][k + 1] = scale
            else:
                mat[k + 1][k] = scale
        return mat
    raise ValueError(f"{letter} does not belong to U_q(u(2))")


def _matmul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return [[sum((a[i][k] * b[k][j] for k in range(m)), Surd(0)) for j in range(p)] for i in range(n)]


def sigma_matrix(ell, N, h) -> list:
    h = UqWord.coerce(h)
    n = int(2 * Fraction(ell) + 1)
    out = [[Surd(0)] * n for _ in range(n)]
    for w, c in h.terms.items():
        m = [[ONE if i == j else Surd(0) for j in range(n)] for i in range(n)]
        for letter in w:
            m = _matmul(m, sigma_letter(ell, N, letter))
        out = [[out[i][j] + c * m[i][j] for j in range(n)] for i in range(n)]
    return out


def sigma_bidegree(bidegree, h) -> list:
    """sigma^(i,j)(h) on V^(i,j), block diagonal on V^(1,1)."""
    N = CHARGES[bidegree]
    d = DIM[bidegree]
    out = [[Surd(0)] * d for _ in range(d)]
    for ell, off in _spin(bidegree):
        blk = sigma_matrix(ell, N, h)
        for i, row in enumerate(blk):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
    return out


def _apply(mat, comps):
    return [sum((mat[i][j] * comps[j] for j in range(len(comps))), Surd(0)) for i in range(len(mat))]


U2_GENERATORS = {"K1": UqWord.gen("K1"), "E1": UqWord.gen("E1"), "F1": UqWord.gen("F1"), "K1K2^2": L}


def check_covariance(coeffs: WedgeCoeffs) -> Report:
    """sigma(h)(v ^ w) = sum sigma(h_(1)) v ^ sigma(h_(2)) w on basis pairs."""
    r = Report("exterior.covariance", config={"coeffs": coeffs.label})
    for name, h in U2_GENERATORS.items():
        bad = []
        for a in all_basis():
            for b in all_basis():
                ab = wedge(coeffs, a, b)
                if ab is None:
                    continue
                lhs = _apply(sigma_bidegree(ab.bidegree, h), ab.comps)
                rhs = [Surd(0)] * len(lhs)
                for c, lw, rw in h.coproduct():
                    va = _apply(sigma_bidegree(a.bidegree, UqWord({lw: 1})), a.comps)
                    vb = _apply(sigma_bidegree(b.bidegree, UqWord({rw: 1})), b.comps)
                    prod = wedge(coeffs, VForm.of(a.bidegree, va), VForm.of(b.bidegree, vb))
                    rhs = [x + c * y for x, y in zip(rhs, prod.comps)]
                if any(not (x - y).is_zero() for x, y in zip(lhs, rhs)):
                    bad.append((a.bidegree, b.bidegree))
        r.add(f"covariance under {name}", "left covariance of the product", not bad,
              detail=str(sorted(set(bad))[:3]))
    return r


# involution

def _conj_default(x):
    return x  # real scalars; NormalForm callers pass their own star


def j_map(ell, comps, conj=_conj_default):
    """The antilinear J on V_{l,N}, l = 0, 1/2, 1."""
    ell = Fraction(ell)
    if ell == 0:
        return [conj(comps[0])]
    if ell == Fraction(1, 2):
        v1, v2 = comps
        return [_scale(-_qp(Fraction(-1, 2)), conj(v2)), _scale(_qp(Fraction(1, 2)), conj(v1))]
    if ell == 1:
        w1, w2, w3 = comps
        return [_scale(-_qp(-1), conj(w3)), conj(w2), _scale(-_qp(1), conj(w1))]
    raise ValueError(f"no J for spin {ell}")


def star_components(bidegree, comps, conj=_conj_default):
    """(v*)_{i,j} = (-1)^i J(v_{j,i}); input of bidegree (j,i), output bidegree (i,j)."""
    j, i = bidegree
    out = []
    for ell, off in _spin(bidegree):
        n = int(2 * ell + 1)
        out.extend(j_map(ell, list(comps[off:off + n]), conj))
    if i % 2:
        out = [-x for x in out]
    return (i, j), out


def star(v: VForm) -> VForm:
    b, comps = star_components(v.bidegree, v.comps)
    return VForm(b, tuple(comps))


def check_involution(coeffs: WedgeCoeffs) -> Report:
    """star^2 = id, J^2 = (-1)^(2l), the graded *-law and the J/mu table."""
    r = Report("exterior.involution", config={"coeffs": coeffs.label})
    bad = [v.bidegree for v in all_basis() if star(star(v)) != v]
    r.add("star star = id", "the star is an involution", not bad, detail=str(bad[:3]))
    jbad = []
    for ell in (0, Fraction(1, 2), 1):
        for v in _basis_vectors(int(2 * ell + 1)):
            sign = -1 if (2 * ell) % 2 else 1
            if any(not (a - sign * b).is_zero() for a, b in zip(j_map(ell, j_map(ell, v)), v)):
                jbad.append(ell)
    r.add("J^2 = (-1)^(2l)", "quaternionic and real structures", not jbad, detail=str(jbad))
    bad = []
    for a in all_basis():
        for b in all_basis():
            ab = wedge(coeffs, a, b)
            if ab is None:
                continue
            sign = -1 if a.degree * b.degree % 2 else 1
            rhs = wedge(coeffs, star(b), star(a))
            if rhs is None or star(ab) != rhs.scale(sign):
                bad.append((a.bidegree, b.bidegree))
    r.add("(v^v')* = (-1)^(kk') v'* ^ v*", "graded *-algebra", not bad, residual=len(bad),
          detail=str(sorted(set(bad))[:3]))
    r.extend(check_j_mu_table())
    r.extend(check_j_intertwining())
    return r


def check_j_mu_table() -> Report:
    r = Report("exterior.j_mu")
    spin = {2: Fraction(1, 2), 3: 1, 1: 0}
    # (k, sign, k') meaning J mu_k(v, v') = sign * mu_k'(Jv', Jv)
    rules = [(0, -1, 0), (1, -1, 1), (2, 1, 3), (3, 1, 2), (4, 1, 4)]
    for k, sign, k2 in rules:
        _, dv, dw, do = MUS[k]
        bad = 0
        for v in _basis_vectors(dv):
            for w in _basis_vectors(dw):
                lhs = j_map(spin[do], mu(k, v, w))
                rhs = mu(k2, j_map(spin[dw], w), j_map(spin[dv], v))
                if any(not (a - sign * b).is_zero() for a, b in zip(lhs, rhs)):
                    bad += 1
        r.add(f"J mu_{k}(v,v') = {'-' if sign < 0 else ''}mu_{k2}(Jv',Jv)", "J and the mu maps",
              bad == 0, residual=bad)
    return r


def check_j_intertwining(N=Fraction(3, 2)) -> Report:
    """J sigma_{l,N}(h) = sigma_{l,-N}(S(h)*) J on basis vectors."""
    r = Report("exterior.j_intertwining", config={"N": str(N)})
    for ell in (Fraction(1, 2), 1):
        n = int(2 * ell + 1)
        for name, h in U2_GENERATORS.items():
            hs = h.antipode().star()
            lhs_m = sigma_matrix(ell, N, h)
            rhs_m = sigma_matrix(ell, -N, hs)
            bad = 0
            for v in _basis_vectors(n):
                lhs = j_map(ell, _apply(lhs_m, v))
                rhs = _apply(rhs_m, j_map(ell, v))
                if any(not (a - b).is_zero() for a, b in zip(lhs, rhs)):
                    bad += 1
            r.add(f"J sigma_(l={ell})({name}) = sigma_(-N)(S(h)*) J", "J intertwines sigma_N and sigma_-N",
                  bad == 0, residual=bad)
    return r


# Hodge star

def hodge(v: VForm, coeffs: WedgeCoeffs | None = None) -> VForm:
    """*_H: V^(a,b) -> V^(2-b, 2-a)."""
    coeffs = coeffs or default_coeffs()
    c0, c1, c2, c3, c4 = coeffs.c
    a, b = v.bidegree
    target = (2 - b, 2 - a)
    if v.bidegree in SCALAR_DEGREES:
        # the factor is the normalization of v* ^ w in V^(2,2)
        f = {(0, 2): coeffs.d[2] / c4, (2, 0): coeffs.d[3] / c4}.get(v.bidegree, ONE)
        return VForm(target, tuple(f * x for x in v.comps))
    if v.bidegree == (1, 1):
        s = coeffs.s2
        f = c3 * c4 / Q2
        fw = -f * _qp(Fraction(-s, 2)) / (c1 * c1)
        f4 = f * _qp(Fraction(3 * s, 2)) / (c2 * c2)
        return VForm(target, tuple([fw * x for x in v.comps[:3]] + [f4 * v.comps[3]]))
    f = (-1 if a % 2 else 1) * R2I * c3
    return VForm(target, tuple(f * x for x in v.comps))


def hodge_from_definition(v: VForm, coeffs: WedgeCoeffs | None = None) -> VForm:
    """Solve v* ^ w = (*_H v, w) vol over the basis w of the complementary bidegree."""
    coeffs = coeffs or default_coeffs()
    a, b = v.bidegree
    target = (2 - b, 2 - a)
    vs = star(v)
    comps = []
    for w in all_basis([target]):
        p = wedge(coeffs, vs, w)
        comps.append(p.comps[0])
    return VForm(target, tuple(comps))


def _dot(u: VForm, w: VForm) -> Surd:
    return sum((x * y for x, y in zip(u.comps, w.comps)), Surd(0))


def check_hodge(coeffs: WedgeCoeffs | None = None) -> Report:
    coeffs = coeffs or default_coeffs()
    r = Report("exterior.hodge", config={"coeffs": coeffs.label})
    basis = list(all_basis())
    bad = [v.bidegree for v in basis if hodge(v, coeffs) != hodge_from_definition(v, coeffs)]
    r.add("*_H matches v* ^ w = (*v, w) vol", "definition of the Hodge star", not bad,
          detail=str(bad[:3]))
    bad = []
    for v in basis:
        sign = -1 if v.degree % 2 else 1
        if hodge(hodge(v, coeffs), coeffs) != v.scale(sign):
            bad.append(v.bidegree)
    r.add("*_H^2 = (-1)^deg", "Hodge star squares to the degree sign", not bad, detail=str(bad[:3]))
    bad = [v.bidegree for v in all_basis([(0, 2), (2, 0)]) if hodge(v, coeffs) != v]
    r.add("*_H = id on (0,2) and (2,0)", "Hodge star on holomorphic 2-forms", not bad)
    sgn = _sign_at(coeffs.c[3])
    bad = []
    for v in all_basis([(1, 1)]):
        comps = [-sgn * x for x in v.comps[:3]] + [sgn * v.comps[3]]
        if hodge(v, coeffs) != VForm((1, 1), tuple(comps)):
            bad.append(v.comps)
    r.add("*_H(w, w4) = sign(c3)(-w, w4)", "Hodge star on (1,1)-forms", not bad)
    bad = []
    for deg in BIDEGREES:
        for u in all_basis([deg]):
            for w in all_basis([deg]):
                if not (_dot(hodge(u, coeffs), hodge(w, coeffs)) - _dot(u, w)).is_zero():
                    bad.append(deg)
    r.add("<*u, *w> = <u, w>", "the Hodge star is an isometry", not bad, detail=str(sorted(set(bad))))
    return r


def anti_selfdual_11(coeffs: WedgeCoeffs | None = None) -> list:
    """Basis of the (1,1) eigenspace with *_H = -1."""
    coeffs = coeffs or default_coeffs()
    return [v for v in all_basis([(1, 1)]) if hodge(v, coeffs) == v.scale(-1)]


# degree-one generation

def _det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    total = Surd(0)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = ONE
        for i in range(n):
            term = term * m[i][perm[i]]
            if term.is_zero():
                break
        total = total + (-term if inv % 2 else term)
    return total


def wedge_matrix(coeffs: WedgeCoeffs, left, right) -> list:
    """Matrix of V^left (x) V^right -> V^(left+right), columns indexed by (i, j)."""
    s = (left[0] + right[0], left[1] + right[1])
    cols = list(itertools.product(range(DIM[left]), range(DIM[right])))
    m = [[Surd(0)] * len(cols) for _ in range(DIM[s])]
    pos = {c: k for k, c in enumerate(cols)}
    for o, i, j, c in coeffs.table[left, right]:
        m[o][pos[i, j]] = m[o][pos[i, j]] + c
    return m


def full_rank(m) -> bool:
    """Exact: some maximal minor is a nonzero element of the coefficient ring."""
    rows = len(m)
    for cols in itertools.combinations(range(len(m[0])), rows):
        if not _det([[row[c] for c in cols] for row in m]).is_zero():
            return True
    return False


def check_degree_one_generation(coeffs: WedgeCoeffs | None = None) -> Report:
    coeffs = coeffs or default_coeffs()
    r = Report("exterior.degree_one", config={"coeffs": coeffs.label})
    for one in ((0, 1), (1, 0)):
        for b in BIDEGREES:
            if b == (0, 0):
                continue
            s = (b[0] + one[0], b[1] + one[1])
            if s not in DIM:
                continue
            ok = full_rank(wedge_matrix(coeffs, one, b))
            r.add(f"V^{one} x V^{b} -> V^{s} onto", "generated in degree one", ok,
                  value=DIM[s])
    return r


def structure_constants(coeffs: WedgeCoeffs | None = None) -> dict:
    """JSON-ready tensors: 'i,j|k,l' -> [[out, a, b, coeff], ...]."""
    coeffs = coeffs or default_coeffs()
    return {f"{a[0]},{a[1]}|{b[0]},{b[1]}": [[o, i, j, str(c)] for o, i, j, c in t]
            for (a, b), t in sorted(coeffs.table.items())}


__all__ = [
    "BIDEGREES", "DIM", "CHARGES", "VForm", "WedgeCoeffs", "mu", "wedge", "wedge_components",
    "solve_coefficients", "default_coeffs", "check_associativity", "check_mu_identities",
    "check_graded_commutativity_at_one", "check_covariance", "star", "star_components", "j_map",
    "check_involution", "check_j_mu_table", "check_j_intertwining", "hodge", "hodge_from_definition",
    "check_hodge", "anti_selfdual_11", "wedge_matrix", "full_rank", "check_degree_one_generation",
    "structure_constants", "sigma_matrix", "sigma_bidegree", "sigma_letter", "at_one", "bilinear",
]
