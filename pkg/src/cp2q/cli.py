"""Command-line entry point: ``cp2q verify|chern|spectrum|qchern|normal-form``.

Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 resource or
budget exhaustion.  Settings come from defaults, then an optional flat TOML
file (``--config``), then flags.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .qcoeff import ConfigurationError
from .report import Report
from .suites import SUITES, RunConfig, run_suite

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
SUITE_NAMES = list(SUITES) + ["all"]
GOLDEN_VERSION = "v1"


class UsageError(Exception):
    pass


def _resource_errors() -> tuple:
    from .algebra import RewriteBudgetExceeded
    from .bundles import BundleSizeError
    from .khomology import InconclusivePairing
    return (RewriteBudgetExceeded, BundleSizeError, InconclusivePairing, MemoryError, RecursionError)


# serialization

def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=str)


def _csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: row.get(k, "") for k in columns})
    return buf.getvalue()


def _text_table(rows: list[dict], columns: list[str]) -> str:
    cells = [[str(r.get(c, "")) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(x[i]) for x in cells]) for i, c in enumerate(columns)]
    line = lambda xs: "  ".join(x.ljust(w) for x, w in zip(xs, widths)).rstrip()
    return "\n".join([line(columns)] + [line(x) for x in cells]) + "\n"


def render_report(rep: Report, fmt: str) -> str:
    if fmt == "json":
        return _dumps(rep.to_dict()) + "\n"
    rows = [{"suite": rep.suite, **c.to_dict()} for c in rep.checks]
    if fmt == "csv":
        return _csv(rows, ["suite", "name", "anchor", "status", "residual", "value"])
    out = [f"{'PASS' if c.passed else 'FAIL'}  {c.name}  [{c.anchor}]"
           + (f"  residual={c.to_dict()['residual']}" if c.residual is not None else "")
           for c in rep.checks]
    n_fail = len(rep.failures())
    out.append(f"{rep.suite}: {len(rep.checks) - n_fail}/{len(rep.checks)} checks passed")
    return "\n".join(out) + "\n"


def render_rows(rows: list[dict], columns: list[str], fmt: str, meta: dict | None = None) -> str:
    if fmt == "json":
        return _dumps({**(meta or {}), "rows": rows} if meta else rows) + "\n"
    if fmt == "csv":
        return _csv(rows, columns)
    return _text_table(rows, columns)


# configuration

def _load_config_file(path: str) -> dict:
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as e:
        raise UsageError(f"cannot read config file: {e}") from e
    except tomllib.TOMLDecodeError as e:
        raise UsageError(f"bad config file: {e}") from e
    nested = [k for k, v in data.items() if isinstance(v, dict)]
    if nested:
        raise UsageError(f"config file must be flat; found tables {nested}")
    return data


_CONFIG_KEYS = {"q": "q", "prec": "prec", "precision": "prec", "root_order": "root_order",
                "cutoff_chi1": "cutoff_chi1", "cutoff_chi2": "cutoff_chi2", "nbound": "nbound",
                "seed": "seed", "format": "format", "jobs": "jobs", "quick": "quick",
                "allow_large_n": "allow_large_n"}


def build_config(args) -> RunConfig:
    values: dict = {}
    if getattr(args, "config", None):
        for k, v in _load_config_file(args.config).items():
            if k not in _CONFIG_KEYS:
                raise UsageError(f"unknown config key {k!r}")
            values[_CONFIG_KEYS[k]] = v
    for k in set(_CONFIG_KEYS.values()):
        v = getattr(args, k, None)
        if v is not None and v is not False:
            values[k] = v
    try:
        return RunConfig(**values).validate()
    except (TypeError, ConfigurationError) as e:
        raise UsageError(str(e)) from e


# commands

def cmd_verify(args, cfg: RunConfig) -> tuple[str, int]:
    rep = run_suite(args.suite, cfg)
    text = render_report(rep, cfg.format)
    if args.golden_dir:
        d = Path(args.golden_dir) / GOLDEN_VERSION / f"q{cfg.q0}_p{cfg.prec}_r{cfg.root_order}"
        d.mkdir(parents=True, exist_ok=True)
        (d / f"{args.suite}.json").write_text(render_report(rep, "json"))
    return text, EXIT_PASS if rep.passed else EXIT_FAIL


def cmd_chern(args, cfg: RunConfig) -> tuple[str, int]:
    from .khomology import chern_numbers
    if abs(args.N) > 5 and not cfg.allow_large_n:
        raise UsageError("|N| above 5 needs --allow-large-n")
    res = chern_numbers(args.N, cfg.q0, args.cutoff or cfg.cutoff_chi1, cfg.prec)
    if cfg.format == "json":
        return _dumps(res) + "\n", EXIT_PASS
    row = {"N": res["N"], "q": res["q"], "cutoff": res["cutoff"], "rank": res["rank"], "c1": res["c1"],
           "c2": res["c2"], "trace_c1": res["traces"]["c1"], "trace_c2": res["traces"]["c2"],
           "tail_c1": res["tails"]["c1"], "tail_c2": res["tails"]["c2"]}
    return render_rows([row], list(row), cfg.format), EXIT_PASS


def cmd_spectrum(args, cfg: RunConfig) -> tuple[str, int]:
    import mpmath
    from .monopole import spectrum_rows
    rows = spectrum_rows(args.N, args.nmax, cfg.q0, cfg.prec)
    out, ok = [], True
    for r in rows:
        ok &= r["residual"] < mpmath.mpf(args.tol)
        out.append({"N": r["N"], "n": r["n"], "q": r["q"],
                    "lambda_numeric": mpmath.nstr(r["lambda_numeric"], 30),
                    "lambda_closed": mpmath.nstr(r["lambda_closed"], 30),
                    "residual": mpmath.nstr(r["residual"], 5)})
    cols = ["N", "n", "q", "lambda_numeric", "lambda_closed", "residual"]
    return render_rows(out, cols, cfg.format), EXIT_PASS if ok else EXIT_FAIL


def cmd_qchern(args, cfg: RunConfig) -> tuple[str, int]:
    from .equivariant import qchern_table
    rows = qchern_table(args.Nmax, cfg.q0)
    cols = ["N", "tau2_ratio", "tau4_ratio", "phi_ch0", "chi0_ch0"]
    return render_rows(rows, cols, cfg.format), EXIT_PASS


def cmd_normal_form(args, cfg: RunConfig) -> tuple[str, int]:
    from .parser import ParseError, parse_expr
    try:
        nf = parse_expr(args.expr)
    except ParseError as e:
        raise UsageError(str(e)) from e
    text = nf.render()
    if cfg.format == "json":
        return _dumps({"input": args.expr, "normal_form": text, "terms": len(nf.terms)}) + "\n", EXIT_PASS
    if cfg.format == "csv":
        return _csv([{"input": args.expr, "normal_form": text}], ["input", "normal_form"]), EXIT_PASS
    return text + "\n", EXIT_PASS


# parser

def _common(p: argparse.ArgumentParser, default_format: str = "json") -> None:
    p.add_argument("--q", type=float, help="deformation parameter in (0, 1)")
    p.add_argument("--prec", type=int, help="working precision in bits (>= 64)")
    p.add_argument("--format", choices=["json", "csv", "text"], default=None,
                   help=f"output format (default {default_format})")
    p.add_argument("--config", help="flat TOML file of settings; flags override it")
    p.add_argument("--out", help="write the output to this file as well as stdout")
    p.add_argument("--seed", type=int)
    p.add_argument("--allow-large-n", action="store_true", default=None)
    p.set_defaults(default_format=default_format)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cp2q", description="Exact and certified computations on CP^2_q.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run an invariant suite")
    p.add_argument("suite", choices=SUITE_NAMES)
    _common(p)
    p.add_argument("--quick", action="store_true", default=None, help="reduced parameter ranges")
    p.add_argument("--nbound", type=int, help="largest |N| checked (default 3)")
    p.add_argument("--cutoff-chi1", dest="cutoff_chi1", type=int)
    p.add_argument("--cutoff-chi2", dest="cutoff_chi2", type=int)
    p.add_argument("--jobs", type=int, help="worker processes for 'verify all'")
    p.add_argument("--golden-dir", help="also store the JSON report under DIR/<version>/<q,prec,root>/")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("chern", help="rank, c1 and c2 of P_N from the Fredholm pairings")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--cutoff", type=int, help="truncation (default: chosen from the tail bound)")
    _common(p)
    p.set_defaults(func=cmd_chern)

    p = sub.add_parser("spectrum", help="eigenvalues of the gauged Laplacian")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-25)
    _common(p, "text")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("qchern", help="twisted pairings tau2, tau4, phi and chi0 for |N| <= Nmax")
    p.add_argument("--Nmax", type=int, required=True)
    _common(p, "csv")
    p.set_defaults(func=cmd_qchern)

    p = sub.add_parser("normal-form", help="PBW normal form of an expression in u[i,j], z[i], zs[i], p[i,j], q")
    p.add_argument("expr")
    _common(p, "text")
    p.set_defaults(func=cmd_normal_form)
    return ap


def _error(kind: str, msg: str, code: int) -> int:
    print(_dumps({"error": kind, "message": msg, "exit_code": code}), file=sys.stderr)
    return code


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS
    try:
        cfg = build_config(args)
        if args.format is None and not (args.config and "format" in _load_config_file(args.config)):
            cfg.format = args.default_format
        text, code = args.func(args, cfg)
    except UsageError as e:
        return _error("usage", str(e), EXIT_USAGE)
    except _resource_errors() as e:
        return _error(type(e).__name__, str(e), EXIT_RESOURCE)
    except (ValueError, ArithmeticError) as e:
        return _error(type(e).__name__, str(e), EXIT_USAGE)
    sys.stdout.write(text)
    if args.out:
        Path(args.out).write_text(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
