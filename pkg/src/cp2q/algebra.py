"""PBW normal forms for the quantum group algebra A(SU_q(3)).

Generators u^i_j are numbered 0..8 row by row (u11 < u12 < ... < u33).  A
PBW monomial is a tuple of nine exponents, read as the sorted word.

Products are computed in two layers:

* quantum matrices (no determinant relation): straightening by the four
  quadratic families, memoized per (monomial, generator);
* the quotient by D_q = 1: any monomial containing u11 u22 u33 is replaced
  using D_q * M'' computed in the first layer.  D_q is central and its
  leading monomial under (degree, diagonal weight, word order) is
  u11 u22 u33, so the reduction terminates.

The straightening coefficients live in Z[q, 1/q]; they are kept as plain
dicts {exponent of q: int} and lifted to Surd coefficients at the end.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .qcoeff import DEFAULT_ROOT, QScalar, RadicalScalar, Surd, _clean, render

NGEN = 9
DIAG = (0, 4, 8)
Mono = tuple  # nine exponents
ONE_MONO: Mono = (0,) * NGEN
STEP_BUDGET = 10**6


class RewriteBudgetExceeded(RuntimeError):
    """Straightening ran past the configured step budget."""


def gen_index(i: int, j: int) -> int:
    if not (1 <= i <= 3 and 1 <= j <= 3):
        raise IndexError(f"generator index u[{i},{j}] out of range 1..3")
    return 3 * (i - 1) + (j - 1)


def gen_rowcol(g: int) -> tuple[int, int]:
    return g // 3 + 1, g % 3 + 1


def _unit(g: int) -> Mono:
    m = [0] * NGEN
    m[g] = 1
    return tuple(m)


def _add_letter(m: Mono, g: int, n: int = 1) -> Mono:
    l = list(m)
    l[g] += n
    return tuple(l)


def mono_degree(m: Mono) -> int:
    return sum(m)


def mono_word(m: Mono) -> list[int]:
    return [g for g in range(NGEN) for _ in range(m[g])]


def mono_str(m: Mono) -> str:
    if not any(m):
        return "1"
    parts = []
    for g, e in enumerate(m):
        if e:
            i, j = gen_rowcol(g)
            parts.append(f"u{i}{j}" + (f"^{e}" if e > 1 else ""))
    return "*".join(parts)


# Laurent polynomials in q with integer coefficients: {exp: int}

def _lp_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for e1, v1 in a.items():
        for e2, v2 in b.items():
            e = e1 + e2
            out[e] = out.get(e, 0) + v1 * v2
    return {e: v for e, v in out.items() if v}


def _acc(target: dict, m: Mono, coeff: dict, scale: dict | None = None) -> None:
    """target[m] += coeff * scale, dropping zeros."""
    if scale is not None:
        coeff = _lp_mul(coeff, scale)
    cur = target.get(m)
    if cur is None:
        if coeff:
            target[m] = dict(coeff)
        return
    for e, v in coeff.items():
        w = cur.get(e, 0) + v
        if w:
            cur[e] = w
        else:
            cur.pop(e, None)
    if not cur:
        del target[m]


_ONE_LP = {0: 1}
_QINV = {-1: 1}
_QDIFF_NEG = {1: -1, -1: 1}  # -(q - 1/q)


@lru_cache(maxsize=None)
def _swap_rule(x: int, g: int) -> tuple:
    """x*g for x > g as ((coeff, (g, x)), optional (coeff, (y, z)))."""
    a, b = gen_rowcol(x)
    c, d = gen_rowcol(g)
    if a == c or b == d:
        return ((_QINV, (g, x)),)
    if b < d:
        return ((_ONE_LP, (g, x)),)
    # a > c, b > d
    y, z = gen_index(c, b), gen_index(a, d)
    return ((_ONE_LP, (g, x)), (_QDIFF_NEG, (y, z)))


class _Counter:
    steps = 0


def _tick():
    _Counter.steps += 1
    if _Counter.steps > STEP_BUDGET:
        _Counter.steps = 0
        raise RewriteBudgetExceeded("normal form step budget exceeded")


@lru_cache(maxsize=None)
def _gl_mul_gen(m: Mono, g: int) -> dict:
    """m * u_g in quantum matrices, as {mono: lp}. Do not mutate the result."""
    top = max((i for i in range(NGEN) if m[i]), default=-1)
    if top <= g:
        return {_add_letter(m, g): _ONE_LP}
    _tick()
    left = _add_letter(m, top, -1)
    out: dict = {}
    for coeff, (y, z) in _swap_rule(top, g):
        for m1, c1 in _gl_mul_gen(left, y).items():
            for m2, c2 in _gl_mul_gen(m1, z).items():
                _acc(out, m2, _lp_mul(c1, c2), coeff)
    return out


def _gl_mul_mono(m: Mono, n: Mono) -> dict:
    cur = {m: _ONE_LP}
    for g in mono_word(n):
        nxt: dict = {}
        for m1, c1 in cur.items():
            for m2, c2 in _gl_mul_gen(m1, g).items():
                _acc(nxt, m2, c2, c1)
        cur = nxt
    return cur


# quantum determinant: sum over permutations of (-q)^length u1p1 u2p2 u3p3

def _perm_length(p: tuple) -> int:
    return sum(1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j])


DET_TERMS: list[tuple[dict, Mono]] = []
for _p in itertools.permutations(range(3)):
    _l = _perm_length(_p)
    _m = [0] * NGEN
    for _row, _col in enumerate(_p):
        _m[3 * _row + _col] += 1
    DET_TERMS.append(({_l: (-1) ** _l}, tuple(_m)))


def _has_triple(m: Mono) -> bool:
    return m[0] > 0 and m[4] > 0 and m[8] > 0


@lru_cache(maxsize=None)
def _reduce_mono(m: Mono) -> dict:
    """SL normal form of a (quantum matrix) PBW monomial."""
    if not _has_triple(m):
        return {m: _ONE_LP}
    _tick()
    rest = list(m)
    for g in DIAG:
        rest[g] -= 1
    rest = tuple(rest)
    dm: dict = {}
    for coeff, w in DET_TERMS:
        for m2, c2 in _gl_mul_mono(w, rest).items():
            _acc(dm, m2, c2, coeff)
    lead = dm.pop(m)
    if len(lead) != 1:
        raise ArithmeticError(f"determinant leading coefficient not a monomial: {lead}")
    (e, v), = lead.items()
    if v not in (1, -1):
        raise ArithmeticError(f"determinant leading coefficient {lead}")
    inv = {-e: v}
    # m = c^-1 (rest - (D*rest - c*m))
    pending: dict = {}
    _acc(pending, rest, _ONE_LP, inv)
    for m2, c2 in dm.items():
        _acc(pending, m2, {x: -y for x, y in c2.items()}, inv)
    out: dict = {}
    for m2, c2 in pending.items():
        for m3, c3 in _reduce_mono(m2).items():
            _acc(out, m3, c3, c2)
    return out


@lru_cache(maxsize=None)
def _sl_mul_gen(m: Mono, g: int) -> dict:
    out: dict = {}
    for m1, c1 in _gl_mul_gen(m, g).items():
        for m2, c2 in _reduce_mono(m1).items():
            _acc(out, m2, c2, c1)
    return out


@lru_cache(maxsize=200000)
def _sl_mul_mono(m: Mono, n: Mono) -> dict:
    """Product of two SL normal monomials, fully reduced."""
    if not any(n):
        return {m: _ONE_LP}
    if not any(m):
        return {n: _ONE_LP}
    word = mono_word(n)
    # split off the last letter to reuse memoized prefixes
    g = word[-1]
    prefix = _add_letter(n, g, -1)
    cur = _sl_mul_mono(m, prefix)
    out: dict = {}
    for m1, c1 in cur.items():
        for m2, c2 in _sl_mul_gen(m1, g).items():
            _acc(out, m2, c2, c1)
    return out


@lru_cache(maxsize=None)
def _lp_to_q(key: tuple, k: int) -> QScalar:
    return QScalar._raw({e * k: v for e, v in key}, k)


def _lp_surd(lp: dict, k: int = DEFAULT_ROOT) -> QScalar:
    return _lp_to_q(tuple(sorted(lp.items())), k)


def straighten(word: Iterable[int]) -> dict:
    """Normal form of a raw word of generator indices, as {mono: lp}."""
    cur = {ONE_MONO: _ONE_LP}
    for g in word:
        nxt: dict = {}
        for m1, c1 in cur.items():
            for m2, c2 in _sl_mul_gen(m1, g).items():
                _acc(nxt, m2, c2, c1)
        cur = nxt
    return cur


def clear_caches() -> None:
    for f in (_gl_mul_gen, _reduce_mono, _sl_mul_gen, _sl_mul_mono, _star_mono, _prod_t):
        f.cache_clear()


# Fast path for rational coefficients: {mono: {t-exponent: rational}}

@lru_cache(maxsize=400000)
def _prod_t(m1: Mono, m2: Mono) -> tuple:
    return tuple((m3, tuple((e * DEFAULT_ROOT, v) for e, v in lp.items()))
                 for m3, lp in _sl_mul_mono(m1, m2).items())


def _tidy(acc: dict) -> dict:
    out = {}
    for m, c in acc.items():
        c = {e: _clean(v) for e, v in c.items() if v}
        if c:
            out[m] = c
    return out


def _lf_mul(a: dict, b: dict) -> dict:
    acc: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            c12: dict = {}
            for e1, v1 in c1.items():
                for e2, v2 in c2.items():
                    e = e1 + e2
                    c12[e] = c12.get(e, 0) + v1 * v2
            for m3, lp in _prod_t(m1, m2):
                cur = acc.get(m3)
                if cur is None:
                    cur = acc[m3] = {}
                for e3, v3 in lp:
                    for e, v in c12.items():
                        k = e + e3
                        cur[k] = cur.get(k, 0) + v * v3
    return _tidy(acc)


def _lf_star(a: dict) -> dict:
    acc: dict = {}
    for m, c in a.items():
        for m2, lp in _star_mono(m).items():
            cur = acc.get(m2)
            if cur is None:
                cur = acc[m2] = {}
            for e2, v2 in lp.items():
                for e, v in c.items():
                    k = e + e2 * DEFAULT_ROOT
                    cur[k] = cur.get(k, 0) + v * v2
    return _tidy(acc)


def _split(nf: "NormalForm") -> dict:
    """Group terms by radical part: {rad tuple: {mono: t-exponent dict}}."""
    out: dict = {}
    for m, c in nf.terms.items():
        if c.k != DEFAULT_ROOT:
            raise ValueError("normal forms use the default root order")
        for rs in c.terms.values():
            part = out.get(rs.rad)
            if part is None:
                part = out[rs.rad] = {}
            part[m] = rs.base.c
    return out


def _join(parts) -> "NormalForm":
    """Inverse of _split for [(RadicalScalar unit or None, lf)] pairs."""
    parts = list(parts)
    if len(parts) == 1 and parts[0][0] is None:
        return _from_lf(parts[0][1])
    acc: dict = {}
    for unit, lf in parts:
        for m, c in lf.items():
            v = QScalar._raw(c, DEFAULT_ROOT)
            v = Surd(v) if unit is None else Surd(unit * v)
            cur = acc.get(m)
            acc[m] = v if cur is None else cur + v
    return NormalForm._raw({m: c for m, c in acc.items() if not c.is_zero()})


_ONE_Q = QScalar.const(1)


def _unit_of(rad: tuple):
    return None if not rad else RadicalScalar._raw(_ONE_Q, rad)


def _unit_mul(r1: tuple, r2: tuple):
    if not r1 and not r2:
        return None
    if not r1 or not r2:
        return _unit_of(r1 or r2)
    return RadicalScalar._raw(_ONE_Q, r1) * RadicalScalar._raw(_ONE_Q, r2)


def _linear(nf: "NormalForm", fn) -> "NormalForm":
    """Apply a linear map given on rational parts, keeping radicals aside."""
    return _join((_unit_of(rad), fn(lf)) for rad, lf in _split(nf).items())


def _from_lf(d: dict) -> "NormalForm":
    return NormalForm._raw({m: Surd(QScalar._raw(c, DEFAULT_ROOT)) for m, c in d.items()})


class NormalForm:
    """Linear combination of PBW monomials with Surd coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Mono, object] | None = None):
        self.terms: dict = {}
        self._hash = None
        if terms:
            for m, c in terms.items():
                c = Surd.coerce(c)
                if not c.is_zero():
                    self.terms[tuple(m)] = c

    @classmethod
    def _raw(cls, terms: dict) -> "NormalForm":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def scalar(cls, c) -> "NormalForm":
        c = Surd.coerce(c)
        return cls._raw({ONE_MONO: c} if not c.is_zero() else {})

    @classmethod
    def gen(cls, i: int, j: int) -> "NormalForm":
        return cls._raw({_unit(gen_index(i, j)): Surd(1)})

    @classmethod
    def coerce(cls, x) -> "NormalForm":
        return x if isinstance(x, NormalForm) else cls.scalar(x)

    @classmethod
    def from_lp(cls, d: dict) -> "NormalForm":
        return cls._raw({m: Surd(_lp_surd(c)) for m, c in d.items() if c})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_scalar(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE_MONO in self.terms)

    def scalar_part(self) -> Surd:
        return self.terms.get(ONE_MONO, Surd(0))

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def __add__(self, other):
        if not isinstance(other, NormalForm):
            try:
                other = NormalForm.scalar(other)
            except TypeError:
                return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            cur = terms.get(m)
            if cur is None:
                terms[m] = c
            else:
                s = cur + c
                if s.is_zero():
                    del terms[m]
                else:
                    terms[m] = s
        return NormalForm._raw(terms)

    __radd__ = __add__

    def __neg__(self):
        return NormalForm._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-NormalForm.coerce(other))

    def __rsub__(self, other):
        return NormalForm.coerce(other) + (-self)

    def scale(self, c) -> "NormalForm":
        c = Surd.coerce(c)
        if c.is_zero():
            return NormalForm._raw({})
        out = {}
        for m, v in self.terms.items():
            w = v * c
            if not w.is_zero():
                out[m] = w
        return NormalForm._raw(out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QScalar, RadicalScalar, Surd)):
            return self.scale(other)
        if not isinstance(other, NormalForm):
            return NotImplemented
        if not self.terms or not other.terms:
            return NormalForm._raw({})
        sa, sb = _split(self), _split(other)
        return _join((_unit_mul(r1, r2), _lf_mul(a, b))
                     for r1, a in sa.items() for r2, b in sb.items())

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, QScalar, RadicalScalar, Surd)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        out = NormalForm.scalar(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, NormalForm):
            try:
                other = NormalForm.scalar(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def star(self) -> "NormalForm":
        return _linear(self, _lf_star)

    def map_coeffs(self, f) -> "NormalForm":
        return NormalForm({m: f(c) for m, c in self.terms.items()})

    def evaluate_coeffs(self, q, prec=None) -> dict:
        return {m: c.evaluate(q, prec) for m, c in self.terms.items()}

    def render(self) -> str:
        """Canonical text: monomials in PBW order, coefficients via qcoeff."""
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (sum(m), m)):
            c = self.terms[m]
            cs = str(c)
            if m == ONE_MONO:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono_str(m))
            else:
                parts.append(f"({cs}) * {mono_str(m)}")
        return " + ".join(parts)

    __str__ = render

    def __repr__(self):
        return f"NormalForm({self.render()})"


# star structure: (u^i_j)* = (-q)^(j-i) (u^k1_l1 u^k2_l2 - q u^k1_l2 u^k2_l1)

@lru_cache(maxsize=None)
def _star_gen(g: int) -> dict:
    i, j = gen_rowcol(g)
    k1, k2 = [r for r in (1, 2, 3) if r != i]
    l1, l2 = [c for c in (1, 2, 3) if c != j]
    sign = -1 if (j - i) % 2 else 1
    pref = {j - i: sign}
    out: dict = {}
    for m, c in straighten([gen_index(k1, l1), gen_index(k2, l2)]).items():
        _acc(out, m, c, pref)
    for m, c in straighten([gen_index(k1, l2), gen_index(k2, l1)]).items():
        _acc(out, m, c, _lp_mul(pref, {1: -1}))
    return out


@lru_cache(maxsize=None)
def _star_mono(m: Mono) -> dict:
    word = mono_word(m)
    cur = {ONE_MONO: _ONE_LP}
    for g in reversed(word):
        nxt: dict = {}
        for m1, c1 in cur.items():
            for m2, c2 in _star_gen(g).items():
                for m3, c3 in _sl_mul_mono(m1, m2).items():
                    _acc(nxt, m3, _lp_mul(c2, c3), c1)
        cur = nxt
    return cur


def u(i: int, j: int) -> NormalForm:
    return NormalForm.gen(i, j)


def z(i: int) -> NormalForm:
    return NormalForm.gen(3, i)


def zs(i: int) -> NormalForm:
    return z(i).star()


def p(i: int, j: int) -> NormalForm:
    return zs(i) * z(j)


def normalize(word: Iterable, coeff=1) -> NormalForm:
    """Normal form of a raw word.

    Letters are generator indices 0..8 or (i, j) pairs; ``coeff`` scales.
    """
    idx = []
    for g in word:
        if isinstance(g, tuple):
            g = gen_index(*g)
        if not 0 <= g < NGEN:
            raise IndexError(f"generator {g} out of range")
        idx.append(g)
    _Counter.steps = 0
    return NormalForm.from_lp(straighten(idx)).scale(coeff)


def quantum_determinant_word() -> list[tuple[dict, list[int]]]:
    return [(c, mono_word(m)) for c, m in DET_TERMS]


def _bracketed(word: list, rng) -> NormalForm:
    """Normal form of ``word`` through a random binary bracketing."""
    if len(word) <= 1:
        return normalize(word)
    cut = rng.randrange(1, len(word))
    return _bracketed(word[:cut], rng) * _bracketed(word[cut:], rng)


def _with_determinant(word: list, pos: int) -> NormalForm:
    """Normal form of word[:pos] * D_q * word[pos:], expanded term by term."""
    out = NormalForm()
    for c, w in quantum_determinant_word():
        out = out + normalize(word[:pos] + w + word[pos:], Surd(_lp_surd(c)))
    return out


def random_element(rng, terms: int = 3, degree: int = 3) -> NormalForm:
    """Random combination of short words with q-power coefficients."""
    out = NormalForm()
    for _ in range(terms):
        w = [rng.randrange(NGEN) for _ in range(rng.randint(0, degree))]
        c = QScalar.qpow(rng.randint(-3, 3)) * rng.choice((1, -1, 2, Fraction(1, 2)))
        out = out + normalize(w, c)
    return out


def verify_random_normalization(n: int = 1000, seed: int = 0, max_len: int = 6):
    """Normal forms must not depend on the order in which rewrites are applied.

    Each trial compares left-to-right straightening of a random word with a
    random bracketing of it and with a copy carrying D_q at a random slot.
    """
    import random
    from .report import Report
    rng = random.Random(seed)
    rep = Report("algebra.normalization", config={"n": n, "seed": seed, "max_len": max_len})
    bad = []
    for t in range(n):
        word = [rng.randrange(NGEN) for _ in range(rng.randint(2, max_len))]
        ref = normalize(word)
        alt = _bracketed(word, rng) if t % 2 == 0 else _with_determinant(word, rng.randint(0, len(word)))
        if alt != ref:
            bad.append(word)
    rep.add("randomized-order normalization", "normal form uniqueness", not bad,
            value=n - len(bad), detail=f"first failure {bad[0]}" if bad else "")
    return rep


def verify_star_involution(n: int = 200, seed: int = 0):
    """a** = a and (ab)* = b* a* on random elements."""
    import random
    from .report import Report
    rng = random.Random(seed)
    rep = Report("algebra.star", config={"n": n, "seed": seed})
    inv = anti = 0
    for _ in range(n):
        a, b = random_element(rng), random_element(rng)
        inv += a.star().star() != a
        anti += (a * b).star() != b.star() * a.star()
    rep.add("star involutive", "star structure", inv == 0, value=n - inv)
    rep.add("star antimultiplicative", "star structure", anti == 0, value=n - anti)
    return rep


__all__ = [
    "random_element", "verify_random_normalization", "verify_star_involution",
    "NormalForm", "RewriteBudgetExceeded", "u", "z", "zs", "p", "normalize",
    "gen_index", "gen_rowcol", "mono_str", "mono_word", "straighten", "clear_caches",
    "STEP_BUDGET", "ONE_MONO", "render",
]
