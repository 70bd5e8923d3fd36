"""Differential forms on CP^2_q and the derivations partial, dbar, d.

A form of bidegree (i,j) is a vector of A(SU_q(3)) elements indexed by the
basis of V^(i,j), invariant under L_{h(1)} (x) sigma^(i,j)(h(2)) for h in
U_q(u(2)), where L_h a = a < S^-1(h). The derivations are

    partial w = q^(-1/2) L_X ^ w,   dbar w = L_Y ^ w,

with X = (q^-1 K2 E2, -K1 K2 [E1,E2]_q) and Y = (K1 K2 [F2,F1]_q, K2 F2).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .actions import right_action, twisted_left
from .algebra import NormalForm, p, u
from .exterior import (DIM, WedgeCoeffs, bilinear, default_coeffs, sigma_bidegree,
                       star_components)
from .hopf import E1, E2, F1, F2, K1, K2, L, UqWord, qcomm
from .qcoeff import QScalar, Surd
from .report import Report
from .spaces import PROJ_PLANE, membership_test


def _q(x) -> QScalar:
    return QScalar.qpow(x)


X = (_q(-1) * (K2 * E2), -(K1 * K2 * qcomm(E1, E2)))
Y = (K1 * K2 * qcomm(F2, F1), K2 * F2)

# "display": partial a = q^(-1/2) L_X a reproduces the printed derivative;
# "plain": partial = L_X ^ (.) without the prefactor
NORMALIZATIONS = {"display": _q(Fraction(-1, 2)), "plain": QScalar.const(1)}


class DomainError(ValueError):
    """Input is not an invariant form."""


@dataclass(frozen=True)
class Form:
    bidegree: tuple
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != DIM[self.bidegree]:
            raise ValueError(f"bidegree {self.bidegree} needs {DIM[self.bidegree]} coefficients")

    @classmethod
    def of(cls, bidegree, coeffs) -> "Form":
        return cls(tuple(bidegree), tuple(NormalForm.coerce(c) for c in coeffs))

    @classmethod
    def function(cls, a) -> "Form":
        return cls.of((0, 0), [a])

    @classmethod
    def zero(cls, bidegree) -> "Form":
        return cls.of(bidegree, [0] * DIM[tuple(bidegree)])

    @property
    def degree(self) -> int:
        return sum(self.bidegree)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __add__(self, other: "Form") -> "Form":
        if self.bidegree != other.bidegree:
            raise ValueError("adding forms of different bidegree")
        return Form(self.bidegree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return Form(self.bidegree, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Form":
        return Form(self.bidegree, tuple(a.scale(c) for a in self.coeffs))

    def left_mul(self, a) -> "Form":
        a = NormalForm.coerce(a)
        return Form(self.bidegree, tuple(a * x for x in self.coeffs))

    def right_mul(self, a) -> "Form":
        a = NormalForm.coerce(a)
        return Form(self.bidegree, tuple(x * a for x in self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.bidegree == other.bidegree and (self - other).is_zero()

    __hash__ = None

    def render(self) -> str:
        return f"{self.bidegree}: (" + ", ".join(c.render() for c in self.coeffs) + ")"


def wedge_forms(w1: Form, w2: Form, coeffs: WedgeCoeffs | None = None) -> Form | None:
    """(a a')(v ^ v') extended bilinearly; None outside the diamond."""
    coeffs = coeffs or default_coeffs()
    s = (w1.bidegree[0] + w2.bidegree[0], w1.bidegree[1] + w2.bidegree[1])
    if s not in DIM:
        return None
    out = bilinear(coeffs.table[w1.bidegree, w2.bidegree], w1.coeffs, w2.coeffs, DIM[s],
                   NormalForm())
    return Form(s, tuple(out))


def _derive(vec, one, w: Form, pref, coeffs: WedgeCoeffs) -> Form | None:
    s = (w.bidegree[0] + one[0], w.bidegree[1] + one[1])
    if s not in DIM:
        return None
    out = [NormalForm() for _ in range(DIM[s])]
    cache: dict = {}
    for o, i, j, c in coeffs.table[one, w.bidegree]:
        if w.coeffs[j].is_zero():
            continue
        key = (i, j)
        if key not in cache:
            cache[key] = twisted_left(vec[i], w.coeffs[j])
        out[o] = out[o] + cache[key].scale(c * pref)
    return Form(s, tuple(out))


def partial(w: Form, coeffs: WedgeCoeffs | None = None, normalization: str = "display") -> Form | None:
    return _derive(X, (1, 0), w, Surd(NORMALIZATIONS[normalization]), coeffs or default_coeffs())


def dbar(w: Form, coeffs: WedgeCoeffs | None = None) -> Form | None:
    return _derive(Y, (0, 1), w, Surd(1), coeffs or default_coeffs())


def d(w: Form, coeffs: WedgeCoeffs | None = None) -> dict:
    """Total derivative as {bidegree: Form}."""
    out = {}
    for f in (partial(w, coeffs), dbar(w, coeffs)):
        if f is not None:
            out[f.bidegree] = f
    return out


def partial_remark(a) -> Form:
    """partial a = -q^(-3/2)(a < E2, a < E2 E1) for a in A(CP^2_q)."""
    a = NormalForm.coerce(a)
    c = Surd(-_q(Fraction(-3, 2)))
    return Form((1, 0), (right_action(a, E2).scale(c), right_action(a, E2 * E1).scale(c)))


def dbar_remark(a) -> Form:
    """dbar a = -(a < F2 F1, a < F2)."""
    a = NormalForm.coerce(a)
    return Form((0, 1), (-right_action(a, F2 * F1), -right_action(a, F2)))


def star_form(w: Form) -> Form:
    b, comps = star_components(w.bidegree, w.coeffs, conj=lambda x: x.star())
    return Form(b, tuple(comps))


# invariance

U2_CHECK = {"K1": K1, "E1": E1, "F1": F1, "K1K2^2": L}


def invariance_defect(w: Form) -> dict:
    """{generator: residual Form} of (L_{h(1)} (x) sigma(h(2))) w - eps(h) w."""
    out = {}
    for name, h in U2_CHECK.items():
        res = [NormalForm() for _ in w.coeffs]
        for c, lw, rw in h.coproduct():
            sig = sigma_bidegree(w.bidegree, UqWord({rw: 1}))
            acted = [twisted_left(UqWord({lw: 1}), x) if not x.is_zero() else x for x in w.coeffs]
            for o in range(len(res)):
                for m, x in enumerate(acted):
                    s = sig[o][m]
                    if not s.is_zero() and not x.is_zero():
                        res[o] = res[o] + x.scale(s * c)
        eps = h.counit()
        res = [r - x.scale(eps) for r, x in zip(res, w.coeffs)]
        out[name] = Form(w.bidegree, tuple(res))
    return out


def is_invariant(w: Form) -> bool:
    return all(f.is_zero() for f in invariance_defect(w).values())


def _require_invariant(w: Form):
    if not is_invariant(w):
        raise DomainError(f"form of bidegree {w.bidegree} is not invariant")


def check_xy_invariance(samples=None) -> Report:
    """sum_k h(2) X_k S^-1(h(1)) (x) sigma^(1,0)(h(3)) e^k = eps(h) X, tested through L on samples."""
    samples = samples or [u(1, 1), u(2, 3), u(3, 1) * u(1, 2), u(2, 2) * u(3, 3)]
    r = Report("calculus.xy_invariance")
    for label, vec, bideg in (("X", X, (1, 0)), ("Y", Y, (0, 1))):
        for name, h in U2_CHECK.items():
            total = [UqWord() for _ in range(2)]
            for c, h1, rest in h.coproduct():
                for c2, h2, h3 in UqWord({rest: 1}).coproduct():
                    sig = sigma_bidegree(bideg, UqWord({h3: 1}))
                    s_inv = UqWord({h1: 1}).antipode_inv()
                    for o in range(2):
                        for k in range(2):
                            if not sig[o][k].is_zero():
                                term = UqWord({h2: 1}) * vec[k] * s_inv
                                total[o] = total[o] + term * (c * c2 * sig[o][k])
            eps = h.counit()
            bad = 0
            for a in samples:
                for o in range(2):
                    lhs = twisted_left(total[o], a)
                    rhs = twisted_left(vec[o], a).scale(eps)
                    if lhs != rhs:
                        bad += 1
            r.add(f"{label} invariant under {name}", "X and Y are invariant", bad == 0, residual=bad)
    return r


# checks

def quadratic_samples(n: int = 20, seed: int = 0) -> list:
    rng = random.Random(seed)
    idx = [(i, j) for i in (1, 2, 3) for j in (1, 2, 3)]
    out = []
    for _ in range(n):
        (i, j), (k, l) = rng.choice(idx), rng.choice(idx)
        out.append(((i, j, k, l), p(i, j) * p(k, l)))
    return out


def default_samples(n_quadratic: int = 20, seed: int = 0) -> list:
    gens = [((i, j), p(i, j)) for i in (1, 2, 3) for j in (1, 2, 3)]
    return gens + quadratic_samples(n_quadratic, seed)


def verify_generator_derivatives() -> Report:
    """partial p_ij and dbar p_ij against their closed forms and the right-action formulas."""
    r = Report("calculus.generators")
    qi = _q(-1)
    bad_p, bad_b, bad_rp, bad_rb = [], [], [], []
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            a = p(i, j)
            w = Form.function(a)
            dp, db = partial(w), dbar(w)
            u3s = u(3, i).star()
            want = Form.of((1, 0), [(u3s * u(2, j)).scale(-qi), (u3s * u(1, j)).scale(-qi)])
            if dp != want:
                bad_p.append((i, j))
            want = Form.of((0, 1), [(u(1, i).star() * u(3, j)).scale(-_q(Fraction(-3, 2))),
                                    (u(2, i).star() * u(3, j)).scale(_q(Fraction(-1, 2)))])
            if db != want:
                bad_b.append((i, j))
            if dp != partial_remark(a):
                bad_rp.append((i, j))
            if db != dbar_remark(a):
                bad_rb.append((i, j))
    r.add("partial p_ij = -q^-1 (u3_i)* (u2_j, u1_j)", "derivatives of the generators", not bad_p,
          detail=str(bad_p))
    r.add("dbar p_ij = q^-1 (-q^-1/2 (u1_i)*, q^1/2 (u2_i)*) u3_j", "derivatives of the generators",
          not bad_b, detail=str(bad_b))
    r.add("partial a = -q^-3/2 (a<E2, a<E2E1)", "right-action form of partial", not bad_rp,
          detail=str(bad_rp))
    r.add("dbar a = -(a<F2F1, a<F2)", "right-action form of dbar", not bad_rb, detail=str(bad_rb))
    one = Form.function(NormalForm.scalar(1))
    r.add("partial 1 = dbar 1 = 0", "derivatives of constants", partial(one).is_zero() and dbar(one).is_zero())
    return r


def verify_complex_axioms(samples=None, check_invariance: bool = True) -> Report:
    """partial^2 = dbar^2 = partial dbar + dbar partial = 0, reality and Leibniz on samples."""
    samples = samples if samples is not None else default_samples()
    r = Report("calculus.axioms", config={"samples": len(samples)})
    fails = {k: [] for k in ("pp", "bb", "pb", "real", "inv", "leib", "leib2")}
    for label, a in samples:
        w = Form.function(a)
        dp, db = partial(w), dbar(w)
        if not partial(dp).is_zero():
            fails["pp"].append(label)
        if not dbar(db).is_zero():
            fails["bb"].append(label)
        if not (dbar(dp) + partial(db)).is_zero():
            fails["pb"].append(label)
        if db != -star_form(partial(Form.function(a.star()))):
            fails["real"].append(label)
        if check_invariance and not (is_invariant(dp) and is_invariant(db)):
            fails["inv"].append(label)
    # Leibniz on consecutive pairs of samples
    for (la, a), (lb, b) in zip(samples, samples[1:]):
        wa, wb = Form.function(a), Form.function(b)
        for op in (partial, dbar):
            lhs = op(Form.function(a * b))
            rhs = op(wa).right_mul(b) + op(wb).left_mul(a)
            if lhs != rhs:
                fails["leib"].append((la, lb))
        # graded Leibniz one degree up: partial(a dbar b) = partial a ^ dbar b + a partial dbar b
        lhs = partial(dbar(wb).left_mul(a))
        rhs = wedge_forms(partial(wa), dbar(wb)) + partial(dbar(wb)).left_mul(a)
        if lhs != rhs:
            fails["leib2"].append((la, lb))
    names = {
        "pp": ("partial^2 = 0", "the calculus is a double complex"),
        "bb": ("dbar^2 = 0", "the calculus is a double complex"),
        "pb": ("partial dbar + dbar partial = 0", "the calculus is a double complex"),
        "real": ("dbar a = -(partial a*)*", "reality of the calculus"),
        "inv": ("derivatives are invariant forms", "partial and dbar map forms to forms"),
        "leib": ("Leibniz rule on functions", "partial and dbar are derivations"),
        "leib2": ("graded Leibniz on a dbar b", "extension of partial to higher forms"),
    }
    for key, (name, anchor) in names.items():
        if key == "inv" and not check_invariance:
            continue
        r.add(name, anchor, not fails[key], residual=len(fails[key]), detail=str(fails[key][:3]))
    return r


def verify_d_squared_generators() -> Report:
    r = Report("calculus.d_squared")
    bad = []
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            w = Form.function(p(i, j))
            parts = d(w)
            total = {}
            for f in parts.values():
                for g in d(f).values():
                    total[g.bidegree] = total[g.bidegree] + g if g.bidegree in total else g
            if any(not g.is_zero() for g in total.values()):
                bad.append((i, j))
    r.add("d^2 p_ij = 0", "d^2 = 0", not bad, detail=str(bad))
    return r


# expansion in dp_ij

def expand_in_dp(v: Form | None, w: Form | None) -> dict:
    """Coefficients a_ij, b_ij with omega = sum (a_ij + b_ij) d p_ij.

    The j-weights are normalized by sum_j q^(2r-2j) (u^r_j)* u^r_j = 1.
    """
    zero = NormalForm()
    v1, v2 = v.coeffs if v is not None else (zero, zero)
    w1, w2 = w.coeffs if w is not None else (zero, zero)
    a, b = {}, {}
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            a[i, j] = ((v1.scale(_q(2)) * u(2, j).star() + v2 * u(1, j).star()) * u(3, i)).scale(
                -_q(3 - 2 * j))
            b[i, j] = (w1.scale(-_q(Fraction(1, 2))) * u(3, j).star() * u(1, i)
                       + w2.scale(_q(Fraction(-1, 2))) * u(3, j).star() * u(2, i)).scale(_q(7 - 2 * j))
    return {"a": a, "b": b}


def reconstruct(coeffs: dict) -> tuple[Form, Form, Form, Form]:
    """(sum a dp, sum b dbar p, sum a dbar p, sum b dp)."""
    parts = [Form.zero((1, 0)), Form.zero((0, 1)), Form.zero((0, 1)), Form.zero((1, 0))]
    for (i, j), aij in coeffs["a"].items():
        bij = coeffs["b"][i, j]
        w = Form.function(p(i, j))
        dp, db = partial(w), dbar(w)
        parts[0] = parts[0] + dp.left_mul(aij)
        parts[1] = parts[1] + db.left_mul(bij)
        parts[2] = parts[2] + db.left_mul(aij)
        parts[3] = parts[3] + dp.left_mul(bij)
    return tuple(parts)


def random_one_form(rng: random.Random) -> tuple[Form, Form]:
    """sum f_ij d p_ij with f_ij random in span{1, p_kl}."""
    v, w = Form.zero((1, 0)), Form.zero((0, 1))
    idx = [(i, j) for i in (1, 2, 3) for j in (1, 2, 3)]
    for _ in range(2):
        i, j = rng.choice(idx)
        k, l = rng.choice(idx)
        f = NormalForm.scalar(rng.randint(-3, 3)) + p(k, l).scale(rng.randint(1, 3))
        g = Form.function(p(i, j))
        v = v + partial(g).left_mul(f)
        w = w + dbar(g).left_mul(f)
    return v, w


def verify_dp_expansion(n: int = 10, seed: int = 1, check_membership: bool = True) -> Report:
    rng = random.Random(seed)
    r = Report("calculus.dp_expansion", config={"n": n, "seed": seed})
    cases = [("partial p12", partial(Form.function(p(1, 2))), None),
             ("dbar p33", None, dbar(Form.function(p(3, 3))))]
    cases += [(f"random {k}", *random_one_form(rng)) for k in range(n)]
    bad, bad_mem = [], []
    for label, v, w in cases:
        co = expand_in_dp(v, w)
        sa, sb, cross_a, cross_b = reconstruct(co)
        ok = (sa == (v if v is not None else Form.zero((1, 0)))
              and sb == (w if w is not None else Form.zero((0, 1)))
              and cross_a.is_zero() and cross_b.is_zero())
        if not ok:
            bad.append(label)
        if check_membership:
            for x in list(co["a"].values()) + list(co["b"].values()):
                if not x.is_zero() and not membership_test(x, PROJ_PLANE):
                    bad_mem.append(label)
                    break
    r.add("omega = sum (a_ij + b_ij) d p_ij", "the d p_ij generate the 1-forms", not bad,
          residual=len(bad), detail=str(bad[:3]))
    if check_membership:
        r.add("a_ij, b_ij lie in A(CP^2_q)", "expansion coefficients are invariant", not bad_mem,
              detail=str(bad_mem[:3]))
    return r


# integral

def volume_form() -> Form:
    return Form.of((2, 2), [1])


class UnsupportedIntegrand(ValueError):
    pass


def integrate(w: Form, haar=None):
    """phi(w_{2,2}) for forms with constant top component; haar(a) handles the rest."""
    if w.bidegree != (2, 2):
        return Surd(0)
    top = w.coeffs[0]
    if top.is_scalar():
        return top.scalar_part()
    if haar is None:
        raise UnsupportedIntegrand("the top component is not constant and no Haar functional was given")
    return haar(top)


__all__ = [
    "Form", "X", "Y", "partial", "dbar", "d", "partial_remark", "dbar_remark", "wedge_forms",
    "star_form", "invariance_defect", "is_invariant", "check_xy_invariance", "default_samples",
    "quadratic_samples", "verify_generator_derivatives", "verify_complex_axioms",
    "verify_d_squared_generators", "expand_in_dp", "reconstruct", "verify_dp_expansion",
    "volume_form", "integrate", "DomainError", "UnsupportedIntegrand", "NORMALIZATIONS",
]
