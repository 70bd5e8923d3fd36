"""Canonical left and right actions of U_q(su(3)) on A(SU_q(3)).

On generators:
    K_i > u^j_k = q^((d(i+1,k) - d(i,k))/2) u^j_k,  E_i > u^j_k = d(i,k) u^j_(i+1),
    F_i > u^j_k = d(i+1,k) u^j_i,
    u^j_k < K_i = q^((d(i+1,j) - d(i,j))/2) u^j_k,  u^j_k < E_i = d(i+1,j) u^i_k,
    u^j_k < F_i = d(i,j) u^(i+1)_k,
extended to products through the coproduct D(E) = E(x)K + K^-1(x)E.
"""

from __future__ import annotations

from functools import lru_cache

from .algebra import (DEFAULT_ROOT, NGEN, ONE_MONO, NormalForm, _add_letter, _linear, _prod_t,
                      _sl_mul_gen, _tidy, gen_index, gen_rowcol, mono_word)
from .hopf import UqWord

HALF = DEFAULT_ROOT // 2  # q^(1/2) in t-units


def _k_weight(side: str, i: int, g: int) -> int:
    """t-exponent of the K_i eigenvalue on u_g."""
    row, col = gen_rowcol(g)
    idx = col if side == "L" else row
    return HALF * ((idx == i + 1) - (idx == i))


def _raise(side: str, letter: str, g: int) -> int | None:
    """Image generator of u_g under E_i / F_i, or None."""
    kind, i = letter[0], int(letter[1])
    row, col = gen_rowcol(g)
    if side == "L":
        if kind == "E" and col == i:
            return gen_index(row, i + 1)
        if kind == "F" and col == i + 1:
            return gen_index(row, i)
    else:
        if kind == "E" and row == i + 1:
            return gen_index(i, col)
        if kind == "F" and row == i:
            return gen_index(i + 1, col)
    return None


def _mono_of(word: list[int]):
    m = list(ONE_MONO)
    for g in word:
        m[g] += 1
    return tuple(m)


@lru_cache(maxsize=None)
def _act_mono(side: str, letter: str, m) -> tuple:
    """Action of one letter on a PBW monomial, as ((mono, ((texp, coeff), ...)), ...)."""
    word = mono_word(m)
    i = int(letter[1])
    if letter[0] == "K":
        sign = -1 if letter.endswith("i") else 1
        e = sign * sum(_k_weight(side, i, g) for g in word)
        return ((m, ((e, 1),)),)
    acc: dict = {}
    weights = [_k_weight(side, i, g) for g in word]
    total = sum(weights)
    before = 0
    for pos, g in enumerate(word):
        after = total - before - weights[pos]
        y = _raise(side, letter, g)
        if y is not None:
            e = after - before
            prefix = _mono_of(word[:pos])
            suffix = _mono_of(word[pos + 1:])
            for m1, c1 in _sl_mul_gen(prefix, y).items():
                for m2, lp in _prod_t(m1, suffix):
                    cur = acc.setdefault(m2, {})
                    for e1, v1 in c1.items():
                        for e2, v2 in lp:
                            k = e + e1 * DEFAULT_ROOT + e2
                            cur[k] = cur.get(k, 0) + v1 * v2
        before += weights[pos]
    return tuple((mm, tuple(c.items())) for mm, c in _tidy(acc).items())


def _act_lf(side: str, letter: str, lf: dict) -> dict:
    acc: dict = {}
    for m, c in lf.items():
        for m2, lp in _act_mono(side, letter, m):
            cur = acc.setdefault(m2, {})
            for e2, v2 in lp:
                for e, v in c.items():
                    k = e + e2
                    cur[k] = cur.get(k, 0) + v * v2
    return _tidy(acc)


def _apply_word(side: str, word: UqWord, a: NormalForm) -> NormalForm:
    a = NormalForm.coerce(a)
    out = NormalForm()
    for w, c in word.terms.items():
        # left: (h1 h2) > a = h1 > (h2 > a); right: a < (h1 h2) = (a < h1) < h2
        letters = reversed(w) if side == "L" else w

        def fn(lf, letters=tuple(letters)):
            for l in letters:
                lf = _act_lf(side, l, lf)
                if not lf:
                    break
            return lf

        out = out + _linear(a, fn).scale(c)
    return out


def left_action(h, a) -> NormalForm:
    """h > a."""
    return _apply_word("L", UqWord.coerce(h), a)


def right_action(a, h) -> NormalForm:
    """a < h."""
    return _apply_word("R", UqWord.coerce(h), a)


def twisted_left(h, a) -> NormalForm:
    """L_h a = a < S^-1(h), a left action by right translations."""
    return right_action(a, UqWord.coerce(h).antipode_inv())


def clear_caches() -> None:
    _act_mono.cache_clear()


__all__ = ["left_action", "right_action", "twisted_left", "clear_caches"]
