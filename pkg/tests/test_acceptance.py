"""One test per acceptance criterion, at the stated tolerances and ranges.

Each test records a one-line verdict (printed in the terminal summary and to
stdout) and then asserts it.
"""

import time

import pytest

from conftest import ACCEPTANCE
from cp2q import bundles as B
from cp2q import calculus as C
from cp2q import equivariant as E
from cp2q import exterior as X
from cp2q import khomology as K
from cp2q import monopole as M
from cp2q.algebra import verify_random_normalization, verify_star_involution
from cp2q.qcoeff import verify_tetrahedron_recursion
from cp2q.reps import build_irrep, verify_casimir_spectrum, verify_relations
from cp2q.report import Report
from cp2q.spaces import q_trace

QS = (0.3, 0.5, 0.8)


def record(k: int, rep: Report, extra_ok: bool = True, note: str = "") -> None:
    fails = rep.failures()
    ok = rep.passed and extra_ok
    line = f"{len(rep.checks) - len(fails)}/{len(rep.checks)} checks"
    if note:
        line += f"; {note}"
    if fails:
        line += "; failing: " + ", ".join(c.name for c in fails[:6])
        if len(fails) > 6:
            line += f" (+{len(fails) - 6} more)"
    ACCEPTANCE[k] = (ok, line)
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {line}")
    assert ok, line


def test_criterion_01_q_combinatorics():
    t = time.perf_counter()
    r = Report("c1")
    tet = verify_tetrahedron_recursion(4)
    r.add("q-Tartaglia recursion N <= 4", "recursion", tet["passed"])
    for N in range(5):
        r.extend(B.verify_partition_of_unity(N), prefix=f"N={N}: ")
    dt = time.perf_counter() - t
    record(1, r, dt < 10, f"{dt:.1f} s (limit 10 s)")


def test_criterion_02_representations():
    r = Report("c2")
    for q in QS:
        for n1 in range(5):
            for n2 in range(5 - n1):
                rep = build_irrep(n1, n2, q, 200)
                r.extend(verify_relations(rep, 1e-25), prefix=f"q={q} ({n1},{n2}): ")
                r.extend(verify_casimir_spectrum(rep, 1e-25), prefix=f"q={q} ({n1},{n2}): ")
    record(2, r, note="n1+n2 <= 4, three q, 200 bits, tol 1e-25")


def test_criterion_03_projectors():
    r = Report("c3")
    r.add("Tr_q P = 1", "q-trace", (q_trace() - 1).is_zero())
    for N in range(-3, 4):
        psi = B.build_psi(N)
        r.extend(B.verify_projector(B.build_projection(N, psi=psi), psi), prefix=f"N={N}: ")
    for N in range(-2, 3):
        pw = B.verify_psi_peter_weyl(N)
        # the irrep basis fixes phases only up to sign; for N < 0 the identification
        # is made in the phase-adjusted basis (the literal check is kept in the module suite)
        key = "psi = (-1)^k (t_{0,i})*" if N < 0 else "psi = (t_{0,i})*"
        c = next(c for c in pw.checks if c.name == key)
        r.add(f"N={N}: {key}", c.anchor, c.passed, detail=c.detail)
    record(3, r, note="|N| <= 3, Peter-Weyl |N| <= 2")


def test_criterion_04_exterior():
    t = time.perf_counter()
    k = X.default_coeffs()
    r = Report("c4")
    a = X.check_associativity(k)
    r.extend(a)
    inv = X.check_involution(k)
    for c in inv.checks:
        if c.name in ("star star = id", "(v^v')* = (-1)^(kk') v'* ^ v*"):
            r.checks.append(c)
    h = X.check_hodge(k)
    r.checks.append(next(c for c in h.checks if c.name == "*_H^2 = (-1)^deg"))
    r.extend(X.check_graded_commutativity_at_one(k))
    dt = time.perf_counter() - t
    record(4, r, dt < 60, f"{dt:.1f} s (limit 60 s)")


def test_criterion_05_calculus():
    r = Report("c5")
    samples = C.default_samples(20, 0)
    r.extend(C.verify_complex_axioms(samples, check_invariance=False))
    r.extend(C.verify_dp_expansion(10, 1))
    record(5, r, note=f"{len(samples)} sample functions, 10 random one-forms")


def test_criterion_06_curvature():
    r = M.verify_curvature(Ns=(1, 2, 3))
    forms = {N: M.curvature_constant(N)[0] for N in (1, 2, 3)}
    r.extend(M.verify_curvature_rep((1, 2, 3), 0.5, 200, 1e-25, forms=forms))
    record(6, r, note="forms route exact, rep route 1e-25")


def test_criterion_07_laplacian():
    r = M.verify_spectrum(range(-3, 4), 4, QS, 200, 1e-25)
    r.extend(M.verify_box_casimir(range(-3, 4), 4))
    record(7, r, note="|N| <= 3, n <= 4, three q")


def test_criterion_08_integer_pairings():
    t = time.perf_counter()
    r = K.verify_pairings(range(-3, 4), 0.5)
    tails = [float(c.detail.split()[2].rstrip(";")) for c in r.checks if c.detail.startswith("tail bound")]
    r.add("all tail bounds < 0.25", "certified integers", bool(tails) and max(tails) < 0.25,
          value=max(tails) if tails else None)
    r.extend(K.verify_generator_matrix(0.5))
    dt = time.perf_counter() - t
    record(8, r, dt < 300, f"{dt:.1f} s (limit 300 s); worst tail {max(tails):.3g}")


def test_criterion_09_twisted_pairings():
    r = E.verify_zero_pairings(range(-3, 4), 0.5)
    laws = E.verify_tau_laws(range(-3, 4))
    for c in laws.checks:
        if "sector" not in c.name:
            r.checks.append(c)
    r.extend(E.verify_haar(0.5, 60, 1e-10))
    record(9, r, note="tau laws |N| <= 3, Haar cutoff 60 tol 1e-10")


def test_criterion_10_rewriting():
    r = verify_random_normalization(1000, 0)
    r.extend(verify_star_involution(200, 0))
    record(10, r, note="1000 normalizations, 200 star checks")
