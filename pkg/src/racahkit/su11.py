"""Bargmann and Barut-Girardello realizations of su(1,1) and their Casimirs."""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass
from typing import Iterable

from .exactcore import nu, xvars
from .report import VerificationReport
from .weyl import WeylOp, weyl_commutator, weyl_compose


class ModelKind(enum.Enum):
    BARGMANN = "bargmann"
    BG = "bg"

    @classmethod
    def parse(cls, text) -> "ModelKind":
        if isinstance(text, ModelKind):
            return text
        key = str(text).strip().lower().replace("-", "").replace("_", "")
        if key in ("bargmann", "b"):
            return cls.BARGMANN
        if key in ("bg", "barutgirardello"):
            return cls.BG
        raise ValueError(f"unknown model {text!r}")


@dataclass(frozen=True)
class RealizationTriple:
    plus: WeylOp
    minus: WeylOp
    zero: WeylOp
    subset: frozenset
    n: int
    kind: ModelKind


def check_subset(n: int, subset: Iterable[int]) -> frozenset:
    if n < 1:
        raise ValueError("ambient dimension n must be at least 1")
    A = frozenset(subset)
    if not A:
        raise ValueError("subset must be nonempty")
    bad = [i for i in A if not 1 <= i <= n]
    if bad:
        raise ValueError(f"indices {sorted(bad)} outside 1..{n}")
    return A


def make_realization(n: int, subset: Iterable[int], kind) -> RealizationTriple:
    """Sum of single-variable su(1,1) triples over ``subset`` (1-based).

    Bargmann: K+ = x^2 d + 2 nu x, K- = d, K0 = x d + nu.
    Barut-Girardello: L+ = x, L- = x d^2 + 2 nu d, L0 = x d + nu.
    """
    kind = ModelKind.parse(kind)
    A = check_subset(n, subset)
    vs = xvars(n)
    plus = WeylOp.zero(vs)
    minus = WeylOp.zero(vs)
    zero = WeylOp.zero(vs)
    for i in sorted(A):
        x = WeylOp.x(vs, i - 1)
        d = WeylOp.d(vs, i - 1)
        v = nu(i)
        if kind is ModelKind.BARGMANN:
            plus = plus + WeylOp.x(vs, i - 1, 2) * d + x.scale(2 * v)
            minus = minus + d
        else:
            plus = plus + x
            minus = minus + x * WeylOp.d(vs, i - 1, 2) + d.scale(2 * v)
        zero = zero + x * d + v
    return RealizationTriple(plus, minus, zero, A, n, kind)


_CASIMIR_CACHE: dict = {}


def casimir(n: int, subset: Iterable[int], kind) -> WeylOp:
    """Intermediate Casimir ``A0^2 - A0 - J+ J-`` of the triple over ``subset``."""
    kind = ModelKind.parse(kind)
    A = check_subset(n, subset)
    key = (n, A, kind)
    if key not in _CASIMIR_CACHE:
        t = make_realization(n, A, kind)
        _CASIMIR_CACHE[key] = weyl_compose(t.zero, t.zero) - t.zero - weyl_compose(t.plus, t.minus)
    return _CASIMIR_CACHE[key]


def verify_su11(t: RealizationTriple) -> VerificationReport:
    """Check [A0, J+] = J+, [A0, J-] = -J-, [J-, J+] = 2 A0 exactly."""
    start = time.perf_counter()
    relations = {
        "[zero,plus]-plus": weyl_commutator(t.zero, t.plus) - t.plus,
        "[zero,minus]+minus": weyl_commutator(t.zero, t.minus) + t.minus,
        "[minus,plus]-2zero": weyl_commutator(t.minus, t.plus) - t.zero.scale(2),
    }
    failing = {name: r for name, r in relations.items() if not r.is_zero()}
    return VerificationReport(
        identity="su11",
        n=t.n,
        model=t.kind.value,
        subsets=[sorted(t.subset)],
        residual=failing,
        passed=not failing,
        elapsed_ms=(time.perf_counter() - start) * 1000.0,
    )
