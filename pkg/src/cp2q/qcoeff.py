"""Exact arithmetic in fractional powers of q.

The base variable is t = q^(1/k) with k = 12 by default, which holds the
half, third and quarter powers of q that show up in weights, Casimir
eigenvalues and wedge coefficients.

Three layers:

* ``QScalar``: Laurent polynomial in t with rational coefficients.
* ``RadicalScalar``: a QScalar times a product of square roots of tagged
  radicands.  Radicands made of q-integers are split into cyclotomic
  factors Phi_d(q^2), so sqrt([3]!) and q^(-1) sqrt(q^2 [3]!) compare equal.
* ``Surd``: a finite sum of RadicalScalars, one per class of unpaired
  radicals.  This is the coefficient ring of the algebra module.

Numerics go through mpmath at a configurable binary precision.
"""

from __future__ import annotations

from contextlib import contextmanager
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Union

import mpmath

DEFAULT_ROOT = 12
DEFAULT_PREC = 200


class ConfigurationError(ValueError):
    """Incompatible root orders or unsupported exponents."""


class InexactDivision(ArithmeticError):
    """A division that must be exact left a remainder."""


def _clean(v):
    if type(v) is Fraction and v.denominator == 1:
        return v.numerator
    return v


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


class QScalar:
    """Laurent polynomial in t = q^(1/k) with rational coefficients."""

    __slots__ = ("c", "k", "_hash")

    def __init__(self, coeffs: Mapping[int, object] | None = None, k: int = DEFAULT_ROOT):
        if k <= 0:
            raise ConfigurationError("rootOrder must be positive")
        self.k = k
        self.c = {}
        if coeffs:
            for e, v in coeffs.items():
                if v:
                    self.c[int(e)] = _clean(v) if not isinstance(v, int) else v
        self._hash = None

    @classmethod
    def _raw(cls, c: dict, k: int) -> "QScalar":
        obj = cls.__new__(cls)
        obj.c = c
        obj.k = k
        obj._hash = None
        return obj

    # constructors
    @classmethod
    def const(cls, v, k: int = DEFAULT_ROOT) -> "QScalar":
        v = _clean(_as_fraction(v)) if not isinstance(v, int) else v
        return cls._raw({0: v} if v else {}, k)

    @classmethod
    def qpow(cls, x, k: int = DEFAULT_ROOT, coeff=1) -> "QScalar":
        """coeff * q^x for rational x with denominator dividing k."""
        e = _as_fraction(x) * k
        if e.denominator != 1:
            raise ConfigurationError(f"q^{x} needs a root order divisible by {_as_fraction(x).denominator}")
        return cls._raw({e.numerator: coeff} if coeff else {}, k)

    @classmethod
    def coerce(cls, x, k: int = DEFAULT_ROOT) -> "QScalar":
        if isinstance(x, QScalar):
            return x
        return cls.const(x, k)

    # predicates
    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self) -> bool:
        return bool(self.c)

    def is_monomial(self) -> bool:
        return len(self.c) == 1

    def is_constant(self) -> bool:
        return not self.c or (len(self.c) == 1 and 0 in self.c)

    def constant(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not a rational constant")
        return self.c.get(0, 0)

    def min_exp(self) -> int:
        return min(self.c)

    def max_exp(self) -> int:
        return max(self.c)

    # ring operations
    def _other(self, other) -> "QScalar | None":
        if isinstance(other, QScalar):
            if other.k != self.k:
                raise ConfigurationError(f"root orders differ: {self.k} vs {other.k}")
            return other
        if isinstance(other, (int, Fraction)):
            return QScalar.const(other, self.k)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if not o.c:
            return self
        if not self.c:
            return o
        c = dict(self.c)
        for e, v in o.c.items():
            w = c.get(e, 0) + v
            if w:
                c[e] = _clean(w)
            else:
                c.pop(e, None)
        return QScalar._raw(c, self.k)

    __radd__ = __add__

    def __neg__(self):
        return QScalar._raw({e: -v for e, v in self.c.items()}, self.k)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return QScalar._raw({}, self.k)
            return QScalar._raw({e: v * other for e, v in self.c.items()}, self.k)
        o = self._other(other)
        if o is None:
            return NotImplemented
        if not self.c or not o.c:
            return QScalar._raw({}, self.k)
        c: dict = {}
        for e1, v1 in self.c.items():
            for e2, v2 in o.c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return QScalar._raw({e: _clean(v) for e, v in c.items() if v}, self.k)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise InexactDivision(f"cannot invert {self}")
            (e, v), = self.c.items()
            return QScalar._raw({-e * (-n): _clean(Fraction(1) / _as_fraction(v) ** (-n))}, self.k)
        result = QScalar.const(1, self.k)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "QScalar") -> tuple["QScalar", "QScalar"]:
        """Laurent division; the remainder is zero iff ``other`` divides ``self``."""
        o = self._other(other)
        if not o.c:
            raise ZeroDivisionError("division by zero QScalar")
        if not self.c:
            return self, self
        ob = o.min_exp()
        od = o.max_exp() - ob
        lead = _as_fraction(o.c[o.max_exp()])
        rem = {e - self.min_exp(): _as_fraction(v) for e, v in self.c.items()}
        quo: dict = {}
        while rem:
            top = max(rem)
            if top < od:
                break
            f = rem[top] / lead
            shift = top - od
            quo[shift] = f
            for e, v in o.c.items():
                ee = e - ob + shift
                w = rem.get(ee, 0) - f * v
                if w:
                    rem[ee] = w
                else:
                    rem.pop(ee, None)
        base = self.min_exp() - ob
        q = QScalar._raw({e + base: _clean(v) for e, v in quo.items()}, self.k)
        r = QScalar._raw({e + self.min_exp(): _clean(v) for e, v in rem.items()}, self.k)
        return q, r

    def divides(self, other: "QScalar") -> bool:
        """True iff self divides ``other`` exactly."""
        if self.is_monomial():
            return True
        return not other.divmod(self)[1].c

    def exact_div(self, other) -> "QScalar":
        o = self._other(other)
        if o.is_monomial():
            (e, v), = o.c.items()
            inv = Fraction(1) / _as_fraction(v)
            return QScalar._raw({a - e: _clean(b * inv) for a, b in self.c.items()}, self.k)
        q, r = self.divmod(o)
        if r.c:
            raise InexactDivision(f"({self}) / ({o}) leaves remainder {r}")
        return q

    def __truediv__(self, other):
        if not isinstance(other, (QScalar, int, Fraction)):
            return NotImplemented
        return self.exact_div(other)

    def __eq__(self, other):
        if isinstance(other, QScalar):
            return self.k == other.k and self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.c == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.k, frozenset(self.c.items())))
        return self._hash

    # substitutions
    def bar(self) -> "QScalar":
        """Substitute q -> 1/q."""
        return QScalar._raw({-e: v for e, v in self.c.items()}, self.k)

    def at_one(self) -> Fraction:
        """Value at t = 1 (the classical limit)."""
        return _clean(sum((_as_fraction(v) for v in self.c.values()), Fraction(0)))

    def with_root(self, k: int) -> "QScalar":
        if k % self.k:
            raise ConfigurationError(f"cannot refine root order {self.k} to {k}")
        f = k // self.k
        return QScalar._raw({e * f: v for e, v in self.c.items()}, k)

    def evaluate(self, q, prec: int | None = None):
        """mpmath value at numeric q > 0."""
        with _prec(prec):
            q = mpmath.mpf(q)
            t = mpmath.root(q, self.k)
            total = mpmath.mpf(0)
            for e, v in self.c.items():
                v = _as_fraction(v)
                total += mpmath.mpf(v.numerator) / v.denominator * t ** e
            return total

    # rendering
    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"QScalar({render(self)})"


def _exp_str(e: int, k: int) -> str:
    f = Fraction(e, k)
    if f.denominator == 1:
        return f"q^{f.numerator}"
    return f"q^({f.numerator}/{f.denominator})"


def render(x: QScalar) -> str:
    """Canonical text: terms sorted by exponent, ``a*q^(n/k)`` joined by ``+``."""
    if not x.c:
        return "0"
    parts = []
    for e in sorted(x.c):
        v = x.c[e]
        if e == 0:
            parts.append(str(v))
        elif v == 1:
            parts.append(_exp_str(e, x.k))
        elif v == -1:
            parts.append("-" + _exp_str(e, x.k))
        else:
            parts.append(f"{v}*{_exp_str(e, x.k)}")
    return " + ".join(parts).replace("+ -", "- ")


@contextmanager
def _prec(prec: int | None) -> Iterator[None]:
    if prec is None:
        yield
    else:
        with mpmath.workprec(prec):
            yield


@contextmanager
def precision(bits: int = DEFAULT_PREC) -> Iterator[None]:
    """Working binary precision for BigFloat evaluation (round to nearest)."""
    with mpmath.workprec(bits):
        yield


def bigfloat(x, prec: int | None = None):
    with _prec(prec):
        return mpmath.mpf(x)


# q-combinatorics

ONE = QScalar.const(1)
ZERO = QScalar.const(0)
Q = QScalar.qpow(1)


class QRatio:
    """Quotient num/den of QScalars, compared by cross-multiplication.

    Only needed for q-numbers of non-integer arguments such as [1/3],
    which are not Laurent polynomials in any root of q.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        self.num = QScalar.coerce(num)
        self.den = ONE if den is None else QScalar.coerce(den)
        if self.den.is_zero():
            raise ZeroDivisionError("QRatio with zero denominator")

    @staticmethod
    def coerce(x) -> "QRatio":
        return x if isinstance(x, QRatio) else QRatio(x)

    def __add__(self, other):
        o = QRatio.coerce(other)
        if self.den == o.den:
            return QRatio(self.num + o.num, self.den)
        return QRatio(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return QRatio(-self.num, self.den)

    def __sub__(self, other):
        return self + (-QRatio.coerce(other))

    def __rsub__(self, other):
        return QRatio.coerce(other) - self

    def __mul__(self, other):
        o = QRatio.coerce(other)
        return QRatio(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = QRatio.coerce(other)
        return QRatio(self.num * o.den, self.den * o.num)

    def __pow__(self, n: int):
        if n < 0:
            return QRatio(self.den ** (-n), self.num ** (-n))
        return QRatio(self.num ** n, self.den ** n)

    def __eq__(self, other):
        if not isinstance(other, (QRatio, QScalar, int, Fraction)):
            return NotImplemented
        o = QRatio.coerce(other)
        return self.num * o.den == o.num * self.den

    __hash__ = None

    def simplify(self) -> "QScalar | QRatio":
        q, r = self.num.divmod(self.den)
        return q if r.is_zero() else self

    def evaluate(self, q, prec: int | None = None):
        with _prec(prec):
            return self.num.evaluate(q) / self.den.evaluate(q)

    def __repr__(self):
        return f"QRatio(({self.num}) / ({self.den}))"


_Q_MINUS = QScalar.qpow(1) - QScalar.qpow(-1)


def q_number(x, k: int = DEFAULT_ROOT) -> Union[QScalar, QRatio]:
    """[x] = (q^x - q^-x)/(q - q^-1).

    Integers give Laurent polynomials; other arguments give a QRatio.
    """
    x = _as_fraction(x)
    if (x * k).denominator != 1:
        raise ConfigurationError(f"[{x}] needs a root order divisible by {x.denominator}")
    if x.denominator == 1:
        return _q_int(int(x), k)
    num = QScalar.qpow(x, k) - QScalar.qpow(-x, k)
    return QRatio(num, _Q_MINUS.with_root(k) if k != DEFAULT_ROOT else _Q_MINUS)


@lru_cache(maxsize=None)
def _q_int(n: int, k: int) -> QScalar:
    if n < 0:
        return -_q_int(-n, k)
    return QScalar._raw({k * (n - 1 - 2 * i): 1 for i in range(n)}, k)


@lru_cache(maxsize=None)
def q_factorial(n: int, k: int = DEFAULT_ROOT) -> QScalar:
    if n < 0:
        raise ValueError("q-factorial of a negative integer")
    out = QScalar.const(1, k)
    for i in range(2, n + 1):
        out = out * _q_int(i, k)
    return out


@lru_cache(maxsize=None)
def q_binomial(n: int, m: int, k: int = DEFAULT_ROOT) -> QScalar:
    if m < 0 or m > n:
        raise ValueError(f"q-binomial ({n} {m}) out of range")
    return q_factorial(n, k).exact_div(q_factorial(m, k) * q_factorial(n - m, k))


@lru_cache(maxsize=None)
def q_trinomial(j: int, kk: int, l: int, k: int = DEFAULT_ROOT) -> QScalar:
    """[j,kk,l]! = q^-(j kk + kk l + l j) [j+kk+l]! / ([j]! [kk]! [l]!)."""
    if min(j, kk, l) < 0:
        raise ValueError("q-trinomial needs nonnegative arguments")
    num = q_factorial(j + kk + l, k)
    den = q_factorial(j, k) * q_factorial(kk, k) * q_factorial(l, k)
    return QScalar.qpow(-(j * kk + kk * l + l * j), k) * num.exact_div(den)


def verify_tetrahedron_recursion(nmax: int, k: int = DEFAULT_ROOT) -> dict:
    """Check the q-Tartaglia recursion and its companion identities.

    c_{jkl}(N+1) = q^-2(k+l) c_{j-1,k,l} + q^-2l c_{j,k-1,l} + c_{j,k,l-1}
    [j+k+l] = q^(-k-l)[j] + q^(j-l)[k] + q^(j+k)[l]
    """
    if nmax < 1:
        raise ValueError("nmax must be at least 1")

    def c(j, kk, l):
        return q_trinomial(j, kk, l, k) if min(j, kk, l) >= 0 else QScalar.const(0, k)

    qp = lambda x: QScalar.qpow(x, k)
    results = {}
    for n in range(1, nmax + 1):
        for j in range(n + 1):
            for kk in range(n + 1 - j):
                l = n - j - kk
                rec = qp(-2 * (kk + l)) * c(j - 1, kk, l) + qp(-2 * l) * c(j, kk - 1, l) + c(j, kk, l - 1)
                ident = (qp(-kk - l) * q_number(j, k) + qp(j - l) * q_number(kk, k)
                         + qp(j + kk) * q_number(l, k))
                mirror = (qp(kk + l) * q_number(j, k) + qp(l - j) * q_number(kk, k)
                          + qp(-j - kk) * q_number(l, k))
                results[(j, kk, l)] = {
                    "recursion": rec == c(j, kk, l),
                    "identity": ident == q_number(n, k),
                    "mirror_identity": mirror == q_number(n, k),
                }
    return {
        "nmax": nmax,
        "passed": all(all(v.values()) for v in results.values()),
        "triples": results,
    }


# cyclotomic bookkeeping for radicands

@lru_cache(maxsize=None)
def _cyclo_coeffs(d: int) -> tuple[int, ...]:
    """Integer coefficients of the d-th cyclotomic polynomial, low degree first."""
    num = [-1] + [0] * (d - 1) + [1]
    for e in range(1, d):
        if d % e == 0:
            num = _int_poly_div(num, list(_cyclo_coeffs(e)))
    return tuple(num)


def _int_poly_div(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        f = a[i + len(b) - 1] // b[-1]
        out[i] = f
        for j, v in enumerate(b):
            a[i + j] -= f * v
    assert not any(a), "cyclotomic division must be exact"
    return out


@lru_cache(maxsize=None)
def cyclotomic(d: int, k: int = DEFAULT_ROOT) -> QScalar:
    """Phi_d(q^2) as a QScalar."""
    return QScalar._raw({2 * k * i: v for i, v in enumerate(_cyclo_coeffs(d)) if v}, k)


def _phi(n: int) -> int:
    out, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            out -= out // p
        p += 1
    if m > 1:
        out -= out // m
    return out


def factor_cyclotomic(x: QScalar) -> tuple[Fraction, int, dict[int, int], QScalar]:
    """Write x = c * t^a * prod Phi_d(q^2)^m_d * rest.

    ``rest`` is 1 when x is fully a product of that shape, else the
    leftover factor normalized to have lowest exponent 0 and leading
    coefficient 1.
    """
    if x.is_zero():
        raise ZeroDivisionError("cannot factor zero")
    k = x.k
    a = x.min_exp()
    rest = QScalar._raw({e - a: v for e, v in x.c.items()}, k)
    mults: dict[int, int] = {}
    span = 2 * k
    if all(e % span == 0 for e in rest.c):
        deg = rest.max_exp() // span
        d = 1
        while deg > 0 and d <= 4 * deg * deg + 8:
            if _phi(d) <= deg:
                phi_d = cyclotomic(d, k)
                while True:
                    quo, rem = rest.divmod(phi_d)
                    if rem.c:
                        break
                    rest = quo
                    mults[d] = mults.get(d, 0) + 1
                    deg -= _phi(d)
            d += 1
    lead = _as_fraction(rest.c[rest.max_exp()])
    rest = QScalar._raw({e - rest.min_exp(): _clean(_as_fraction(v) / lead) for e, v in rest.c.items()}, k)
    return lead, a, mults, rest


def _squarefree_split(n: int) -> tuple[int, int]:
    """n = s^2 * f with f squarefree."""
    s, f, p = 1, 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            s *= p
        if n % p == 0:
            n //= p
            f *= p
        p += 1
    return s, f * n


# radicals

Tag = tuple
_OPAQUE: dict[tuple, QScalar] = {}


def _opaque_tag(x: QScalar) -> Tag:
    key = (x.k, tuple(sorted((e, _as_fraction(v)) for e, v in x.c.items())))
    _OPAQUE.setdefault(key, x)
    return ("x", key)


def radicand(tag: Tag, k: int = DEFAULT_ROOT) -> QScalar:
    kind = tag[0]
    if kind == "c":
        return cyclotomic(tag[1], k)
    if kind == "r":
        return QScalar.const(tag[1], k)
    if kind == "t":
        return QScalar.qpow(Fraction(1, k), k)
    if kind == "x":
        return _OPAQUE[tag[1]]
    raise KeyError(tag)


def _is_unit_tag(tag: Tag) -> bool:
    return tag[0] in ("r", "t")


def _tag_text(tag: Tag) -> str:
    kind = tag[0]
    if kind == "c":
        return f"Phi{tag[1]}(q^2)"
    if kind == "r":
        return str(tag[1])
    if kind == "t":
        return "t"
    return f"[{render(radicand(tag))}]"


class RadicalScalar:
    """base * prod sqrt(radicand(tag))^m over tags.

    Canonical shape: each multiplicity is 1 or negative, and a negative
    multiplicity only survives when the radicand does not divide base.
    So sqrt(x)*sqrt(x) = x moves into base, and 1/sqrt(x) = sqrt(x)/x
    whenever the base can absorb the division.
    """

    __slots__ = ("base", "rad", "_hash")

    def __init__(self, base, rad: Mapping[Tag, int] | Iterable[tuple[Tag, int]] = ()):
        base = QScalar.coerce(base)
        rad = dict(rad)
        self.base, self.rad = _canonical(base, rad)
        self._hash = None

    @classmethod
    def _raw(cls, base: QScalar, rad: tuple) -> "RadicalScalar":
        obj = cls.__new__(cls)
        obj.base = base
        obj.rad = rad
        obj._hash = None
        return obj

    @property
    def k(self) -> int:
        return self.base.k

    @property
    def radicals(self) -> list[Tag]:
        """Tags as a multiset (negative multiplicities listed as inverse pairs)."""
        out = []
        for tag, m in self.rad:
            out.extend([tag] * abs(m))
        return out

    def cls(self) -> frozenset:
        return frozenset(tag for tag, m in self.rad if m % 2)

    def is_zero(self) -> bool:
        return self.base.is_zero()

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QScalar)):
            if not self.rad or all(m > 0 for _, m in self.rad):
                base = self.base * other
                return RadicalScalar._raw(base, self.rad if base.c else ())
            return RadicalScalar(self.base * other, self.rad)
        if not isinstance(other, RadicalScalar):
            return NotImplemented
        rad = dict(self.rad)
        for tag, m in other.rad:
            rad[tag] = rad.get(tag, 0) + m
        return RadicalScalar(self.base * other.base, rad)

    __rmul__ = __mul__

    def __neg__(self):
        return RadicalScalar._raw(-self.base, self.rad)

    def inverse(self) -> "RadicalScalar":
        lead, shift, mults, rest = factor_cyclotomic(self.base)
        rad = {tag: -m for tag, m in self.rad}
        if rest != QScalar.const(1, self.k):
            t = _opaque_tag(rest)
            rad[t] = rad.get(t, 0) - 2
        for d, m in mults.items():
            rad[("c", d)] = rad.get(("c", d), 0) - 2 * m
        base = QScalar._raw({-shift: _clean(Fraction(1) / lead)}, self.k)
        return RadicalScalar(base, rad)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / _as_fraction(other))
        if isinstance(other, QScalar):
            other = RadicalScalar(other)
        if not isinstance(other, RadicalScalar):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = RadicalScalar(QScalar.const(1, self.k))
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QScalar)):
            return not self.rad and self.base == other
        if not isinstance(other, RadicalScalar):
            return NotImplemented
        return self.base == other.base and self.rad == other.rad

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.base, self.rad))
        return self._hash

    def evaluate(self, q, prec: int | None = None):
        with _prec(prec):
            val = self.base.evaluate(q)
            for tag, m in self.rad:
                r = radicand(tag, self.k).evaluate(q)
                val *= mpmath.sqrt(r) ** m
            return val

    def square(self) -> QScalar:
        """The exact square, when it is a Laurent polynomial."""
        out = self.base * self.base
        for tag, m in self.rad:
            if m > 0:
                out = out * radicand(tag, self.k) ** m
            else:
                out = out.exact_div(radicand(tag, self.k) ** (-m))
        return out

    def __str__(self):
        if not self.rad:
            return render(self.base)
        rads = "*".join(
            f"sqrt({_tag_text(t)})" + (f"^{m}" if m != 1 else "") for t, m in self.rad
        )
        b = render(self.base)
        return f"({b})*{rads}" if len(self.base.c) > 1 else f"{b}*{rads}"

    __repr__ = __str__


def _canonical(base: QScalar, rad: dict) -> tuple[QScalar, tuple]:
    out = []
    if base.is_zero():
        return base, ()
    for tag in sorted(rad):
        m = rad[tag]
        if m >= 2:
            base = base * radicand(tag, base.k) ** (m // 2)
            m %= 2
        if m < 0:
            if _is_unit_tag(tag):
                base = base.exact_div(radicand(tag, base.k) ** ((-m + 1) // 2))
                m = m % 2
            else:
                x = radicand(tag, base.k)
                while m < 0:
                    quo, rem = base.divmod(x)
                    if rem.c:
                        break
                    base = quo
                    m += 2
        if m:
            out.append((tag, m))
    return base, tuple(out)


def qsqrt(x) -> RadicalScalar:
    """Exact square root of a positive QScalar (or QRatio of such)."""
    if isinstance(x, QRatio):
        return qsqrt(x.num) / qsqrt(x.den)
    return _qsqrt(QScalar.coerce(x))


@lru_cache(maxsize=4096)
def _qsqrt(x: QScalar) -> RadicalScalar:
    k = x.k
    lead, shift, mults, rest = factor_cyclotomic(x)
    if lead < 0:
        raise ValueError(f"square root of a negative leading coefficient: {x}")
    rad: dict[Tag, int] = {}
    num_s, num_f = _squarefree_split(lead.numerator * lead.denominator)
    base = QScalar._raw({shift // 2: _clean(Fraction(num_s, lead.denominator))}, k)
    if num_f > 1:
        rad[("r", num_f)] = 1
    if shift % 2:
        rad[("t",)] = 1
    for d, m in mults.items():
        if m // 2:
            base = base * cyclotomic(d, k) ** (m // 2)
        if m % 2:
            rad[("c", d)] = 1
    if not rest == QScalar.const(1, k):
        rad[_opaque_tag(rest)] = 1
    return RadicalScalar(base, rad)


Number = Union[int, Fraction, QScalar, RadicalScalar]


class Surd:
    """Finite sum of RadicalScalars with pairwise distinct radical classes."""

    __slots__ = ("terms", "k", "_hash")

    def __init__(self, x: "Number | Surd" = 0, k: int = DEFAULT_ROOT):
        self._hash = None
        if isinstance(x, Surd):
            self.terms, self.k = x.terms, x.k
            return
        if isinstance(x, (int, Fraction)):
            x = QScalar.const(x, k)
        if isinstance(x, QScalar):
            self.k = x.k
            self.terms = {frozenset(): RadicalScalar._raw(x, ())} if x.c else {}
            return
        if isinstance(x, RadicalScalar):
            self.k = x.k
            self.terms = {x.cls(): x} if not x.is_zero() else {}
            return
        raise TypeError(f"cannot make a Surd from {x!r}")

    @classmethod
    def _raw(cls, terms: dict, k: int) -> "Surd":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.k = k
        obj._hash = None
        return obj

    @staticmethod
    def coerce(x) -> "Surd":
        return x if isinstance(x, Surd) else Surd(x)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_rational(self) -> bool:
        """No surviving radicals: the value lives in the Laurent ring."""
        return not self.terms or (len(self.terms) == 1 and frozenset() in self.terms
                                  and not self.terms[frozenset()].rad)

    def as_qscalar(self) -> QScalar:
        if not self.terms:
            return QScalar.const(0, self.k)
        if not self.is_rational():
            raise ValueError(f"{self} carries unpaired radicals")
        return self.terms[frozenset()].base

    def __add__(self, other):
        if not isinstance(other, Surd):
            if isinstance(other, (int, Fraction, QScalar, RadicalScalar)):
                other = Surd(other, self.k)
            else:
                return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        terms = dict(self.terms)
        for c, t in other.terms.items():
            s = terms.get(c)
            if s is None:
                terms[c] = t
            else:
                r = _add_same_class(s, t)
                if r.is_zero():
                    del terms[c]
                else:
                    terms[c] = r
        return Surd._raw(terms, self.k)

    __radd__ = __add__

    def __neg__(self):
        return Surd._raw({c: -t for c, t in self.terms.items()}, self.k)

    def __sub__(self, other):
        return self + (-Surd.coerce(other))

    def __rsub__(self, other):
        return Surd.coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QScalar)):
            if isinstance(other, (int, Fraction)) and other == 1:
                return self
            out = {}
            for c, t in self.terms.items():
                r = t * other
                if not r.is_zero():
                    out[c] = r
            return Surd._raw(out, self.k)
        if isinstance(other, RadicalScalar):
            other = Surd(other)
        if not isinstance(other, Surd):
            return NotImplemented
        acc = Surd._raw({}, self.k)
        for t1 in self.terms.values():
            for t2 in other.terms.values():
                acc = acc + Surd(t1 * t2)
        return acc

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Surd):
            if len(other.terms) != 1:
                raise InexactDivision(f"cannot divide by the sum {other}")
            other = next(iter(other.terms.values()))
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / _as_fraction(other))
        if isinstance(other, QScalar):
            other = RadicalScalar(other)
        inv = other.inverse()
        return self * Surd(inv)

    def __pow__(self, n: int):
        if n < 0:
            return Surd(1, self.k) / (self ** (-n))
        out = Surd(1, self.k)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QScalar, RadicalScalar)):
            other = Surd(other)
        if not isinstance(other, Surd):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def evaluate(self, q, prec: int | None = None):
        with _prec(prec):
            return mpmath.fsum(t.evaluate(q) for t in self.terms.values()) if self.terms else mpmath.mpf(0)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(str(self.terms[c]) for c in sorted(self.terms, key=lambda s: sorted(s)))

    __repr__ = __str__


def _add_same_class(a: RadicalScalar, b: RadicalScalar) -> RadicalScalar:
    if a.rad == b.rad:
        base = a.base + b.base
        if base.is_zero():
            return RadicalScalar._raw(base, ())
        if any(m < 0 for _, m in a.rad):
            return RadicalScalar(base, a.rad)
        return RadicalScalar._raw(base, a.rad)
    ra, rb = dict(a.rad), dict(b.rad)
    low = {t: min(ra.get(t, 0), rb.get(t, 0)) for t in set(ra) | set(rb)}
    k = a.k

    def lift(x: RadicalScalar, r: dict) -> QScalar:
        out = x.base
        for t, m in low.items():
            extra = r.get(t, 0) - m
            if extra:
                out = out * radicand(t, k) ** (extra // 2)
        return out

    return RadicalScalar(lift(a, ra) + lift(b, rb), low)


def sqrt_q_number(n: int) -> RadicalScalar:
    return qsqrt(q_number(n))


def as_surd(x) -> Surd:
    return Surd.coerce(x)


def evaluate(x, q, prec: int | None = None):
    """Numeric value of any exact scalar, or pass-through for numbers."""
    if isinstance(x, (QScalar, QRatio, RadicalScalar, Surd)):
        return x.evaluate(q, prec)
    with _prec(prec):
        return mpmath.mpf(x) if not isinstance(x, Fraction) else mpmath.mpf(x.numerator) / x.denominator


def qfrac(x) -> Fraction:
    return _as_fraction(x)


def isclose(a, b, tol) -> bool:
    return abs(a - b) <= tol * max(1, abs(a), abs(b))


def classical_limit(x: QScalar) -> Fraction:
    return x.at_one()


__all__ = [
    "DEFAULT_ROOT", "DEFAULT_PREC", "ConfigurationError", "InexactDivision",
    "QScalar", "QRatio", "RadicalScalar", "Surd", "Q", "ONE", "ZERO",
    "q_number", "q_factorial", "q_binomial", "q_trinomial", "qsqrt", "sqrt_q_number",
    "cyclotomic", "factor_cyclotomic", "radicand", "render", "precision", "bigfloat",
    "evaluate", "verify_tetrahedron_recursion", "isclose", "classical_limit",
]
