"""Command-line front end: ``racahkit <command> [options]``.

Exit status is 0 when every check passes, 1 when a verification fails and
2 for configuration errors.  JSON output is deterministic unless
``--timings`` is given.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import __version__
from .exactcore import MissingParameter, VanishingDenominator, param_evaluate
from .report import VerificationReport

SCHEMA = 1
ALL_DEFAULT_N = 4
ALL_DEFAULT_K = 3


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    action: str | None = None
    n: int | None = None
    k: int | None = None
    model: str = "bargmann"
    subset: list | None = None
    nu: dict = field(default_factory=dict)
    degree: int | None = None
    out: str | None = None
    emit: str = "json"
    timings: bool = False
    suite: str = "all"
    level: str | None = None
    order: str = "standard"
    explicit: str | None = None
    all_pairs: bool = False
    emit_op: bool = False

    def echo(self) -> dict:
        out = {"command": self.command}
        for name in ("action", "n", "k", "model", "subset", "degree", "suite", "level", "order", "explicit"):
            value = getattr(self, name)
            if value is not None:
                out[name] = value
        if self.all_pairs:
            out["all_pairs"] = True
        if self.nu:
            out["nu"] = {f"nu{i}": str(v) for i, v in sorted(self.nu.items())}
        return out


@dataclass
class SuiteReport:
    config: RunConfig
    reports: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def to_json(self) -> dict:
        t = self.config.timings
        out = {
            "schema": SCHEMA,
            "tool": "racahkit",
            "version": __version__,
            "config": self.config.echo(),
            "pass": self.passed,
            "reports": [r.to_json(timings=t) for r in self.reports],
        }
        out.update(self.extra)
        if t:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out

    def to_text(self) -> str:
        lines = [r.line() for r in self.reports]
        for key, value in self.extra.items():
            lines.append(f"{key}: {json.dumps(value, sort_keys=True)}")
        n_ok = sum(r.passed for r in self.reports)
        lines.append(f"{'PASS' if self.passed else 'FAIL'}  {n_ok}/{len(self.reports)} checks")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _parse_subset(text: str) -> list:
    try:
        out = sorted({int(t) for t in text.replace(" ", "").split(",") if t})
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad subset {text!r}; expected e.g. 1,2,3") from None
    if not out:
        raise argparse.ArgumentTypeError("empty subset")
    return out


def _parse_nu(text: str):
    try:
        key, value = text.split("=", 1)
        return int(key.strip().removeprefix("nu")), Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad --nu {text!r}; expected i=p/q") from None


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--n", type=int, help="number of variables")
    p.add_argument("--k", type=int, help="polynomial degree")
    p.add_argument("--model", choices=["bargmann", "bg"], default="bargmann")
    p.add_argument("--subset", type=_parse_subset, help="comma separated indices, e.g. 1,2")
    p.add_argument("--nu", type=_parse_nu, action="append", default=[], metavar="i=p/q",
                   help="specialize nu_i in emitted polynomials and constants (repeatable)")
    p.add_argument("--degree", type=int, help="degree bound")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--emit", choices=["json", "text"], default="json")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="racahkit", description="Exact checks for Racah algebra models.")
    parser.add_argument("--version", action="version", version=f"racahkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("su11", parents=[common], help="su(1,1) bracket relations")
    s.add_argument("--emit-op", action="store_true", help="include the realization operators")

    r = sub.add_parser("racah", help="Racah algebra relations")
    rs = r.add_subparsers(dest="action", required=True)
    rv = rs.add_parser("verify", parents=[common])
    rv.add_argument("--suite", default="all",
                    choices=["all", "commute", "F", "rank1", "expansion", "chain", "central"])
    rv.add_argument("--level", choices=["operator", "matrix"])

    b = sub.add_parser("basis", parents=[common], help="labelled harmonic basis")
    b.add_argument("--order", choices=["standard", "permuted"], default="standard")
    b.add_argument("--explicit", choices=["jacobi"], help="also compare with the closed form")

    red = sub.add_parser("reduced", help="realization on polynomials in n-2 variables")
    reds = red.add_subparsers(dest="action", required=True)
    rdv = reds.add_parser("verify", parents=[common])
    rdv.add_argument("--all-pairs", action="store_true")

    la = sub.add_parser("laplace", help="Laplace transform between the models")
    las = la.add_subparsers(dest="action", required=True)
    las.add_parser("verify", parents=[common])

    mi = sub.add_parser("miller", help="identification with the Miller Hamiltonian")
    mis = mi.add_subparsers(dest="action", required=True)
    mis.add_parser("reduce", parents=[common])

    sub.add_parser("all", parents=[common], help="every suite at small size")
    return parser


def config_from_args(ns) -> RunConfig:
    nu_values = {}
    for i, v in ns.nu:
        if not 1 <= i <= 12:
            raise ConfigError(f"--nu index {i} outside 1..12")
        nu_values[i] = v
    cfg = RunConfig(
        command=ns.command,
        action=getattr(ns, "action", None),
        n=ns.n,
        k=ns.k,
        model=ns.model,
        subset=ns.subset,
        nu=nu_values,
        degree=ns.degree,
        out=ns.out,
        emit=ns.emit,
        timings=ns.timings,
        suite=getattr(ns, "suite", "all") if ns.command == "racah" else None,
        level=getattr(ns, "level", None),
        order=getattr(ns, "order", "standard"),
        explicit=getattr(ns, "explicit", None),
        all_pairs=getattr(ns, "all_pairs", False),
        emit_op=getattr(ns, "emit_op", False),
    )
    if cfg.command != "basis":
        cfg.order = None
    validate(cfg)
    return cfg


def _need(cfg, name, lo, default=None):
    value = getattr(cfg, name)
    if value is None:
        if default is None:
            raise ConfigError(f"missing required parameter --{name}")
        value = default
        setattr(cfg, name, value)
    if value < lo:
        raise ConfigError(f"--{name} must be at least {lo}, got {value}")
    return value


def validate(cfg: RunConfig) -> None:
    c = cfg.command
    if c == "su11":
        _need(cfg, "n", 1)
    elif c == "racah":
        _need(cfg, "n", 1)
    elif c == "basis":
        _need(cfg, "n", 2)
        _need(cfg, "k", 0)
    elif c == "reduced":
        _need(cfg, "n", 3)
        _need(cfg, "k", 0)
        if not cfg.all_pairs and cfg.subset is None:
            raise ConfigError("reduced verify needs --subset or --all-pairs")
    elif c == "laplace":
        _need(cfg, "n", 1)
        _need(cfg, "degree", 0, default=4)
    elif c == "miller":
        _need(cfg, "n", 1)
    elif c == "all":
        _need(cfg, "n", 3, default=ALL_DEFAULT_N)
        _need(cfg, "k", 0, default=ALL_DEFAULT_K)
    if cfg.subset is not None and cfg.n is not None:
        bad = [i for i in cfg.subset if not 1 <= i <= cfg.n]
        if bad:
            raise ConfigError(f"subset indices {bad} outside 1..{cfg.n}")
    if cfg.nu and cfg.n is not None:
        bad = [i for i in cfg.nu if i > cfg.n]
        if bad:
            raise ConfigError(f"--nu given for nu{bad[0]} but n = {cfg.n}")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _specialize(cfg, value):
    if not cfg.nu:
        return value
    return param_evaluate(value, cfg.nu, strict=False)


def _subsets(n):
    return [list(c) for s in range(1, n + 1) for c in combinations(range(1, n + 1), s)]


def cmd_su11(cfg, suite):
    from .su11 import make_realization, verify_su11

    subsets = [cfg.subset] if cfg.subset else _subsets(cfg.n)
    ops = {}
    for A in subsets:
        t = make_realization(cfg.n, A, cfg.model)
        suite.reports.append(verify_su11(t))
        if cfg.emit_op:
            ops[",".join(map(str, A))] = {
                name: str(_specialize(cfg, getattr(t, name))) for name in ("plus", "minus", "zero")
            }
    if ops:
        suite.extra["operators"] = ops


def cmd_racah(cfg, suite):
    from .racah import run_suite

    suite.reports.extend(run_suite(cfg.n, cfg.model, cfg.suite, level=cfg.level, degree=cfg.degree))


def cmd_basis(cfg, suite):
    from .harmonics import BasisOrder, bg_jacobi_explicit, build_basis, is_harmonic

    start = time.perf_counter()
    order = BasisOrder(cfg.order)
    basis = build_basis(cfg.n, cfg.k, cfg.model, order)
    entries = []
    failing = []
    for label, p in basis:
        if not is_harmonic(p, cfg.model):
            failing.append(f"{list(label.j)} not harmonic")
        entries.append({"label": list(label.j), "poly": str(_specialize(cfg, p))})
        if cfg.explicit == "jacobi":
            if cfg.model != "bg":
                raise ConfigError("--explicit jacobi applies to --model bg")
            if bg_jacobi_explicit(label, order) != p:
                failing.append(f"{list(label.j)} differs from the Jacobi product")
    suite.reports.append(VerificationReport(
        identity="basis",
        n=cfg.n,
        model=cfg.model,
        residual=failing,
        passed=not failing,
        details={"k": cfg.k, "size": len(basis), "order": cfg.order},
        elapsed_ms=(time.perf_counter() - start) * 1000.0,
    ))
    suite.extra["basis"] = entries


def cmd_reduced(cfg, suite):
    from .reduced import all_pairs, verify_reduced

    pairs = all_pairs(cfg.n) if cfg.all_pairs else [cfg.subset]
    for B in pairs:
        for k in range(cfg.k + 1):
            suite.reports.append(verify_reduced(cfg.n, k, B))


def cmd_laplace(cfg, suite):
    from .transforms import map_basis_laplace, verify_ck_commutation, verify_intertwine

    suite.reports.append(verify_intertwine(cfg.degree, cfg.n))
    if cfg.n >= 2:
        suite.reports.append(verify_ck_commutation(cfg.n, min(cfg.degree, 4)))
        k = cfg.k if cfg.k is not None else min(cfg.degree, 3)
        for kk in range(k + 1):
            r = map_basis_laplace(cfg.n, kk)
            if cfg.nu:
                r.details["constants"] = {
                    lab: str(_specialize(cfg, c)) for lab, c in r.details["constants"].items()
                }
            suite.reports.append(r)


def cmd_miller(cfg, suite):
    from .transforms import miller_reduce, sphere_identity_check

    _, gauged, report = miller_reduce(cfg.n)
    if cfg.nu:
        report.details["gauged"] = str(_specialize(cfg, gauged))
    suite.reports.append(report)
    if cfg.n >= 2:
        suite.reports.append(sphere_identity_check(cfg.n))


def cmd_all(cfg, suite):
    from .harmonics import build_basis, eigenvalue_lambda
    from .reduced import all_pairs, verify_reduced
    from .su11 import casimir, make_realization, verify_su11
    from .transforms import (
        hyperplane_eigenfunctions,
        map_basis_laplace,
        miller_reduce,
        sphere_identity_check,
        verify_ck_commutation,
        verify_intertwine,
    )
    from .racah import run_suite
    from .harmonics import labels
    from .weyl import weyl_apply

    n, k = cfg.n, cfg.k
    for model in ("bargmann", "bg"):
        for A in _subsets(n):
            suite.reports.append(verify_su11(make_realization(n, A, model)))
        suite.reports.extend(run_suite(n, model))
        start = time.perf_counter()
        bad = []
        for kk in range(k + 1):
            for label, p in build_basis(n, kk, model):
                for level in range(2, n + 1):
                    lam = eigenvalue_lambda(label, level).value
                    if not (weyl_apply(casimir(n, range(1, level + 1), model), p) - p * lam).is_zero():
                        bad.append(f"{list(label.j)} level {level}")
        suite.reports.append(VerificationReport(
            identity="diagonal", n=n, model=model, residual=bad, passed=not bad,
            details={"k": k}, elapsed_ms=(time.perf_counter() - start) * 1000.0,
        ))
    for B in all_pairs(n):
        for kk in range(min(k, 2) + 1):
            suite.reports.append(verify_reduced(n, kk, B))
    suite.reports.append(verify_intertwine(k, n))
    suite.reports.append(verify_ck_commutation(n, k))
    for kk in range(k + 1):
        suite.reports.append(map_basis_laplace(n, kk))
    suite.reports.append(miller_reduce(n)[2])
    suite.reports.append(sphere_identity_check(n))
    for kk in range(k + 1):
        for label in labels(n, kk):
            suite.reports.append(hyperplane_eigenfunctions(n, label)[1])


COMMANDS = {
    "su11": cmd_su11,
    "racah": cmd_racah,
    "basis": cmd_basis,
    "reduced": cmd_reduced,
    "laplace": cmd_laplace,
    "miller": cmd_miller,
    "all": cmd_all,
}


def run(cfg: RunConfig) -> tuple[int, SuiteReport]:
    start = time.perf_counter()
    suite = SuiteReport(cfg)
    COMMANDS[cfg.command](cfg, suite)
    suite.elapsed_ms = (time.perf_counter() - start) * 1000.0
    return (0 if suite.passed else 1), suite


def comparable(data):
    """Copy of a JSON report with every ``elapsed_ms`` field removed."""
    if isinstance(data, dict):
        return {k: comparable(v) for k, v in data.items() if k != "elapsed_ms"}
    if isinstance(data, list):
        return [comparable(v) for v in data]
    return data


def render(suite: SuiteReport) -> str:
    if suite.config.emit == "text":
        return suite.to_text()
    return json.dumps(suite.to_json(), indent=2, sort_keys=True) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        status, suite = run(cfg)
    except (ConfigError, MissingParameter, VanishingDenominator, ValueError, KeyError) as exc:
        print(f"racahkit: error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"racahkit: verification failed: {exc}", file=sys.stderr)
        return 1
    text = render(suite)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
