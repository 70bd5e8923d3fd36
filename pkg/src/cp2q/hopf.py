"""Formal words in U_q(su(3)) with coproduct, antipode, counit and star.

Letters: K1, K2 and their inverses K1i, K2i, plus E1, E2, F1, F2.
Words are kept unsimplified; they are only ever evaluated in a
representation or applied letter by letter to algebra elements.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping

from .qcoeff import QScalar, Surd

LETTERS = ("K1", "K2", "K1i", "K2i", "E1", "E2", "F1", "F2")
_INV = {"K1": "K1i", "K2": "K2i", "K1i": "K1", "K2i": "K2"}
_STAR = {"K1": "K1", "K2": "K2", "K1i": "K1i", "K2i": "K2i",
         "E1": "F1", "E2": "F2", "F1": "E1", "F2": "E2"}


def _q(x) -> QScalar:
    return QScalar.qpow(x)


class UqWord:
    """Linear combination of words in the generators with Surd coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, object] | None = None):
        self.terms: dict = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            for letter in w:
                if letter not in LETTERS:
                    raise ValueError(f"unknown generator {letter!r}")
            c = Surd.coerce(c)
            if not c.is_zero():
                cur = self.terms.get(w)
                c = c if cur is None else cur + c
                if c.is_zero():
                    self.terms.pop(w, None)
                else:
                    self.terms[w] = c

    @classmethod
    def gen(cls, name: str) -> "UqWord":
        return cls({(name,): 1})

    @classmethod
    def one(cls) -> "UqWord":
        return cls({(): 1})

    @classmethod
    def coerce(cls, x) -> "UqWord":
        if isinstance(x, UqWord):
            return x
        if isinstance(x, str):
            return cls.word(x)
        return cls({(): x})

    @classmethod
    def word(cls, text: str) -> "UqWord":
        """Parse a space or '*' separated product like 'K1 K2 E1'."""
        letters = [s for s in text.replace("*", " ").split() if s]
        return cls({tuple(letters): 1})

    def __add__(self, other):
        other = UqWord.coerce(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return UqWord(out)

    __radd__ = __add__

    def __neg__(self):
        return UqWord({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-UqWord.coerce(other))

    def __rsub__(self, other):
        return UqWord.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, UqWord):
            if isinstance(other, str):
                other = UqWord.word(other)
            else:
                return UqWord({w: c * Surd.coerce(other) for w, c in self.terms.items()})
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                out[w] = out[w] + c if w in out else c
        return UqWord(out)

    def __rmul__(self, other):
        if isinstance(other, str):
            return UqWord.word(other) * self
        return UqWord({w: Surd.coerce(other) * c for w, c in self.terms.items()})

    def __pow__(self, n: int):
        out = UqWord.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, UqWord):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "UqWord(0)"
        parts = [f"({c})*{' '.join(w) or '1'}" for w, c in sorted(self.terms.items())]
        return "UqWord(" + " + ".join(parts) + ")"

    # Hopf structure

    def star(self) -> "UqWord":
        """Antilinear antihomomorphism with K* = K, E* = F (coefficients are real)."""
        return UqWord({tuple(_STAR[l] for l in reversed(w)): c for w, c in self.terms.items()})

    def _anti(self, images: dict) -> "UqWord":
        out = UqWord()
        for w, c in self.terms.items():
            term = UqWord({(): c})
            for letter in reversed(w):
                term = term * images[letter]
            out = out + term
        return out

    def antipode(self) -> "UqWord":
        return self._anti(_S)

    def antipode_inv(self) -> "UqWord":
        return self._anti(_SINV)

    def counit(self) -> Surd:
        total = Surd(0)
        for w, c in self.terms.items():
            if all(l[0] == "K" for l in w):
                total = total + c
        return total

    def coproduct(self) -> list[tuple[Surd, tuple, tuple]]:
        """Sweedler list [(c, left word, right word)] of the coproduct."""
        out: dict = {}
        for w, c in self.terms.items():
            for parts in itertools.product(*(_DELTA[l] for l in w)):
                left = tuple(p[0] for p in parts if p[0])
                right = tuple(p[1] for p in parts if p[1])
                key = (left, right)
                coeff = c
                out[key] = out[key] + coeff if key in out else coeff
        return [(c, l, r) for (l, r), c in out.items() if not c.is_zero()]

    def letters(self) -> set:
        return {l for w in self.terms for l in w}


# coproduct of a letter as [(left letter or '', right letter or '')]
_DELTA = {
    "K1": [("K1", "K1")], "K2": [("K2", "K2")],
    "K1i": [("K1i", "K1i")], "K2i": [("K2i", "K2i")],
    "E1": [("E1", "K1"), ("K1i", "E1")], "E2": [("E2", "K2"), ("K2i", "E2")],
    "F1": [("F1", "K1"), ("K1i", "F1")], "F2": [("F2", "K2"), ("K2i", "F2")],
}

_S = {
    "K1": UqWord.gen("K1i"), "K2": UqWord.gen("K2i"), "K1i": UqWord.gen("K1"), "K2i": UqWord.gen("K2"),
    "E1": UqWord({("E1",): -_q(1)}), "E2": UqWord({("E2",): -_q(1)}),
    "F1": UqWord({("F1",): -_q(-1)}), "F2": UqWord({("F2",): -_q(-1)}),
}
_SINV = {
    "K1": UqWord.gen("K1i"), "K2": UqWord.gen("K2i"), "K1i": UqWord.gen("K1"), "K2i": UqWord.gen("K2"),
    "E1": UqWord({("E1",): -_q(-1)}), "E2": UqWord({("E2",): -_q(-1)}),
    "F1": UqWord({("F1",): -_q(1)}), "F2": UqWord({("F2",): -_q(1)}),
}


def qcomm(a, b) -> UqWord:
    """[a, b]_q = ab - q^-1 ba."""
    a, b = UqWord.coerce(a), UqWord.coerce(b)
    return a * b - _q(-1) * (b * a)


K1, K2 = UqWord.gen("K1"), UqWord.gen("K2")
K1i, K2i = UqWord.gen("K1i"), UqWord.gen("K2i")
E1, E2, F1, F2 = (UqWord.gen(n) for n in ("E1", "E2", "F1", "F2"))
L = K1 * K2 * K2
GENERATORS = {"K1": K1, "K2": K2, "E1": E1, "E2": E2, "F1": F1, "F2": F2}


def power_word(base: str, n: int) -> UqWord:
    """K1^n style words; negative n uses the inverse letter."""
    letter = base if n >= 0 else _INV[base]
    return UqWord({(letter,) * abs(n): 1})


def product(words: Iterable) -> UqWord:
    out = UqWord.one()
    for w in words:
        out = out * UqWord.coerce(w)
    return out


__all__ = ["UqWord", "qcomm", "K1", "K2", "K1i", "K2i", "E1", "E2", "F1", "F2", "L",
           "GENERATORS", "LETTERS", "power_word", "product"]
