"""Invariant suites, one per module, each returning a single Report.

A suite takes a RunConfig.  ``config.q`` replaces the default sample values
of q where a check is numeric; ``config.quick`` shrinks the parameter ranges
for smoke runs.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field

from .qcoeff import DEFAULT_PREC, ConfigurationError
from .report import Report

DEFAULT_QS = (0.3, 0.5, 0.8)


@dataclass
class RunConfig:
    q: float | None = None
    prec: int = DEFAULT_PREC
    root_order: int = 12
    cutoff_chi1: int | None = None
    cutoff_chi2: int | None = None
    nbound: int = 3
    seed: int = 0
    format: str = "json"
    jobs: int = 1
    quick: bool = False
    allow_large_n: bool = False
    extra: dict = field(default_factory=dict)

    def validate(self) -> "RunConfig":
        if self.q is not None and not 0 < self.q < 1:
            raise ConfigurationError("q must lie in (0, 1)")
        if self.prec < 64:
            raise ConfigurationError("precision must be at least 64 bits")
        if self.root_order != 12:
            raise ConfigurationError("only root order 12 (q^(1/12)) is supported")
        if self.nbound > 5 and not self.allow_large_n:
            raise ConfigurationError("N bound above 5 needs --allow-large-n")
        if self.format not in ("json", "csv", "text"):
            raise ConfigurationError(f"unknown format {self.format!r}")
        if self.jobs < 1:
            raise ConfigurationError("jobs must be positive")
        return self

    @property
    def qs(self) -> tuple:
        return (self.q,) if self.q is not None else DEFAULT_QS

    @property
    def q0(self) -> float:
        return self.q if self.q is not None else 0.5

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("extra")
        return d


def _charges(cfg: RunConfig, bound: int | None = None) -> range:
    n = min(cfg.nbound, bound) if bound is not None else cfg.nbound
    if cfg.quick:
        n = min(n, 1)
    return range(-n, n + 1)


def suite_qcoeff(cfg: RunConfig) -> Report:
    from .bundles import verify_partition_of_unity
    from .qcoeff import q_binomial, q_number, verify_tetrahedron_recursion, QScalar
    r = Report("qcoeff")
    nmax = 2 if cfg.quick else 4
    t = verify_tetrahedron_recursion(nmax)
    r.add(f"q-Tartaglia recursion, N <= {nmax}", "recursion for the q-trinomials", t["passed"],
          value=len(t["triples"]))
    for N in range(nmax + 1):
        r.extend(verify_partition_of_unity(N), prefix=f"N={N}: ")
    bad = [n for n in range(1, 9) for m in range(n + 1)
           if q_binomial(n, m) != q_binomial(n, n - m)]
    r.add("q-binomials symmetric", "q-binomial symmetry", not bad, detail=str(bad[:3]))
    bad = [n for n in range(-6, 7) if q_number(n) != -q_number(-n)]
    r.add("[-n] = -[n]", "q-number parity", not bad)
    bad = [n for n in range(1, 8) if q_number(n + 1) != QScalar.qpow(1) * q_number(n) + QScalar.qpow(-n)]
    r.add("[n+1] = q[n] + q^-n", "q-number recursion", not bad)
    return r


def suite_reps(cfg: RunConfig) -> Report:
    from .reps import branch_to_u2, branching_formula, build_irrep, verify_casimir_spectrum, \
        verify_relations, verify_x_action
    r = Report("reps")
    top = 2 if cfg.quick else 4
    for q in cfg.qs:
        for n1 in range(top + 1):
            for n2 in range(top + 1 - n1):
                rep = build_irrep(n1, n2, q, cfg.prec)
                tag = f"q={q} ({n1},{n2}): "
                r.extend(verify_relations(rep, 1e-25), prefix=tag)
                r.extend(verify_casimir_spectrum(rep, 1e-25), prefix=tag)
                if q == cfg.q0:
                    r.extend(verify_x_action(rep, 1e-25), prefix=tag)
                    r.add(tag + "branching to U_q(u(2))", "restriction to the Levi subalgebra",
                          branch_to_u2(rep) == branching_formula(n1, n2))
    return r


def suite_algebra(cfg: RunConfig) -> Report:
    from .algebra import verify_random_normalization, verify_star_involution
    from .spaces import unitarity_identities, verify_peter_weyl, verify_sphere_relations
    r = Report("algebra")
    r.extend(verify_sphere_relations())
    r.add("unitarity identities", "u u* = u* u = 1",
          all(v.is_zero() for v in unitarity_identities().values()))
    for lab in ((0, 1), (1, 0), (1, 1)):
        r.extend(verify_peter_weyl(*lab, q=cfg.q0, prec=cfg.prec), prefix=f"{lab}: ")
    n_norm, n_star = (100, 20) if cfg.quick else (1000, 200)
    r.extend(verify_random_normalization(n_norm, cfg.seed))
    r.extend(verify_star_involution(n_star, cfg.seed))
    return r


def suite_bundles(cfg: RunConfig) -> Report:
    from .bundles import build_projection, build_psi, verify_equivariance, verify_projection_membership, \
        verify_projector, verify_psi_membership, verify_psi_peter_weyl
    from .spaces import q_trace
    r = Report("bundles")
    r.add("Tr_q P = 1", "q-trace of the projection", (q_trace() - 1).is_zero())
    for N in _charges(cfg):
        psi = build_psi(N)
        P = build_projection(N, psi=psi)
        tag = f"N={N}: "
        r.extend(verify_projector(P, psi), prefix=tag)
        r.extend(verify_projection_membership(P), prefix=tag)
        r.extend(verify_psi_membership(psi), prefix=tag)
        if abs(N) <= 2:
            r.extend(verify_psi_peter_weyl(N), prefix=tag)
            r.extend(verify_equivariance(N, cfg.q0, cfg.prec), prefix=tag)
    return r


def suite_exterior(cfg: RunConfig) -> Report:
    from . import exterior as X
    k = X.default_coeffs()
    r = Report("exterior", config={"coeffs": k.label})
    for fn in (X.check_associativity, X.check_graded_commutativity_at_one, X.check_involution,
               X.check_hodge, X.check_degree_one_generation, X.check_covariance):
        r.extend(fn(k))
    for fn in (X.check_mu_identities, X.check_j_mu_table, X.check_j_intertwining):
        r.extend(fn())
    return r


def suite_calculus(cfg: RunConfig) -> Report:
    from . import calculus as C
    r = Report("calculus")
    n = 4 if cfg.quick else 20
    r.extend(C.verify_generator_derivatives())
    r.extend(C.check_xy_invariance())
    r.extend(C.verify_d_squared_generators())
    r.extend(C.verify_complex_axioms(C.default_samples(n, cfg.seed)))
    r.extend(C.verify_dp_expansion(3 if cfg.quick else 10, cfg.seed + 1))
    return r


def suite_monopole(cfg: RunConfig) -> Report:
    from . import monopole as M
    r = Report("monopole")
    Ns = [N for N in _charges(cfg) if N != 0]
    for N in Ns:
        if abs(N) <= 2:
            r.extend(M.verify_connection_identities(N), prefix=f"N={N}: ")
    curv = M.verify_curvature(Ns=tuple(Ns))
    r.extend(curv)
    forms = {N: M.curvature_constant(N)[0] for N in Ns if N >= 1}
    r.extend(M.verify_curvature_rep(tuple(N for N in Ns if N >= 1), cfg.q0, cfg.prec, forms=forms))
    nmax = 2 if cfg.quick else 4
    r.extend(M.verify_spectrum(_charges(cfg), nmax, cfg.qs, cfg.prec))
    r.extend(M.verify_box_casimir(_charges(cfg), nmax))
    r.extend(M.verify_asymmetry(cfg.nbound, min(nmax, 3), cfg.q0))
    return r


def suite_khomology(cfg: RunConfig) -> Report:
    from . import khomology as K
    r = Report("khomology")
    r.extend(K.verify_identities_exact())
    for name in K.REPS:
        r.extend(K.verify_rep_relations(name, cfg.q0, prec=cfg.prec))
    r.extend(K.verify_pairings(_charges(cfg), cfg.q0, cfg.cutoff_chi1, cfg.prec, stability=not cfg.quick))
    r.extend(K.verify_generator_matrix(cfg.q0))
    if not cfg.quick:
        r.extend(K.verify_q_independence(_charges(cfg), cfg.qs if len(cfg.qs) > 1 else DEFAULT_QS))
    r.extend(K.verify_non_fredholm(cfg.q0))
    r.extend(K.verify_summability(2, cfg.q0))
    return r


def suite_equivariant(cfg: RunConfig) -> Report:
    from . import equivariant as E
    r = Report("equivariant")
    for N in (-1, 1):
        r.extend(E.verify_compatibility(N, cfg.q0, cfg.prec), prefix=f"N={N}: ")
    r.extend(E.verify_zero_pairings(_charges(cfg), cfg.q0, cfg.prec))
    r.extend(E.verify_tau_laws(_charges(cfg)))
    cutoff = cfg.cutoff_chi2 or (20 if cfg.quick else 60)
    r.extend(E.verify_haar(cfg.q0, cutoff))
    r.extend(E.verify_tau_cocycles(cfg.q0, cutoff, samples=E.tau2_samples(3 if cfg.quick else 6, cfg.seed)))
    return r


SUITES = {
    "qcoeff": suite_qcoeff,
    "reps": suite_reps,
    "algebra": suite_algebra,
    "bundles": suite_bundles,
    "exterior": suite_exterior,
    "calculus": suite_calculus,
    "monopole": suite_monopole,
    "khomology": suite_khomology,
    "equivariant": suite_equivariant,
}


def run_suite(name: str, cfg: RunConfig | None = None) -> Report:
    cfg = (cfg or RunConfig()).validate()
    if name == "all":
        return run_all(cfg)
    if name not in SUITES:
        raise KeyError(name)
    t = time.perf_counter()
    rep = SUITES[name](cfg)
    rep.suite = name
    rep.config = {**cfg.to_dict(), **rep.config}
    rep.elapsed = time.perf_counter() - t
    return rep


def _run_named(args) -> Report:
    name, cfg = args
    return run_suite(name, cfg)


def run_all(cfg: RunConfig) -> Report:
    """All suites; with cfg.jobs > 1 they fan out over worker processes."""
    names = list(SUITES)
    if cfg.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=cfg.jobs) as ex:
            parts = list(ex.map(_run_named, [(n, cfg) for n in names]))
    else:
        parts = [run_suite(n, cfg) for n in names]
    out = Report("all", config=cfg.to_dict())
    for name, part in zip(names, parts):
        out.extend(part, prefix=f"{name}: ")
    return out


__all__ = ["RunConfig", "SUITES", "run_suite", "run_all", "DEFAULT_QS"]
