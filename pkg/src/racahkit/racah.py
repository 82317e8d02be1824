"""Structural relations of the Racah algebra generated by intermediate Casimirs.

Every identity is written once against a generic "element" interface
(``+``, ``-``, ``*`` for composition, ``scale``) so that it can be checked
either on normal-ordered operators or, past the operator-level cap, on the
action matrices of the Casimirs on homogeneous polynomials of degree ``k``.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .exactcore import homogeneous_monomials, xvars
from .linalg import action_matrix
from .report import VerificationReport
from .su11 import ModelKind, casimir, check_subset

DEFAULT_MAX_N = 6
DEFAULT_MATRIX_DEGREE = 2


class UnsupportedPair(ValueError):
    """Raised for subset pairs that are neither nested nor disjoint."""


def operator_cap() -> int:
    raw = os.environ.get("RACAHKIT_MAX_N")
    if raw is None:
        return DEFAULT_MAX_N
    return int(raw)


@dataclass(frozen=True)
class SubsetTriple:
    K: frozenset
    L: frozenset
    M: frozenset

    @classmethod
    def of(cls, n: int, K: Iterable[int], L: Iterable[int], M: Iterable[int]) -> "SubsetTriple":
        K, L, M = (check_subset(n, s) for s in (K, L, M))
        if K & L or K & M or L & M:
            raise ValueError("K, L, M must be pairwise disjoint")
        return cls(K, L, M)

    def as_lists(self) -> list:
        return [sorted(self.K), sorted(self.L), sorted(self.M)]


class CasimirFamily:
    """Lazily built Casimirs C_A, as operators or as matrices on P_k."""

    def __init__(self, n: int, kind, level: str | None = None, degree: int | None = None):
        self.n = n
        self.kind = ModelKind.parse(kind)
        if level is None:
            level = "operator" if n <= operator_cap() else "matrix"
        if level not in ("operator", "matrix"):
            raise ValueError(f"unknown level {level!r}")
        self.level = level
        self.degree = DEFAULT_MATRIX_DEGREE if degree is None else degree
        self._cache: dict = {}
        self._monomials = homogeneous_monomials(n, self.degree) if level == "matrix" else None

    def __call__(self, subset) -> object:
        A = check_subset(self.n, subset)
        if A not in self._cache:
            op = casimir(self.n, A, self.kind)
            if self.level == "matrix":
                op = action_matrix(op, self._monomials, xvars(self.n))
            self._cache[A] = op
        return self._cache[A]

    def describe(self) -> dict:
        out = {"level": self.level}
        if self.level == "matrix":
            out["degree"] = self.degree
        return out


def _report(identity, fam: CasimirFamily, subsets, lhs, rhs, start, **details) -> VerificationReport:
    residual = lhs - rhs
    d = fam.describe()
    d.update(details)
    return VerificationReport(
        identity=identity,
        n=fam.n,
        model=fam.kind.value,
        subsets=list(subsets),
        residual=residual,
        lhs=lhs,
        rhs=rhs,
        passed=residual.is_zero(),
        details=d,
        elapsed_ms=(time.perf_counter() - start) * 1000.0,
    )


def _family(n, kind, family):
    return family if family is not None else CasimirFamily(n, kind)


def check_commute(n: int, A, B, kind, family: CasimirFamily | None = None) -> VerificationReport:
    start = time.perf_counter()
    A, B = check_subset(n, A), check_subset(n, B)
    if not (A <= B or B <= A or not (A & B)):
        raise UnsupportedPair(f"{sorted(A)} and {sorted(B)} overlap without nesting")
    fam = _family(n, kind, family)
    ca, cb = fam(A), fam(B)
    return _report("commute", fam, [sorted(A), sorted(B)], ca * cb, cb * ca, start)


def commuting_pairs(n: int):
    """All unordered pairs of nonempty subsets of [n] that are nested or disjoint."""
    subsets = [
        frozenset(c) for size in range(1, n + 1) for c in combinations(range(1, n + 1), size)
    ]
    for A, B in combinations(subsets, 2):
        if A <= B or B <= A or not (A & B):
            yield A, B


def compute_F(n: int, triple: SubsetTriple, kind, family: CasimirFamily | None = None):
    """F = (1/2)[C_{K u L}, C_{L u M}]."""
    fam = _family(n, kind, family)
    kl, lm = fam(triple.K | triple.L), fam(triple.L | triple.M)
    return (kl * lm - lm * kl).scale(Fraction(1, 2))


def verify_F(n: int, triple: SubsetTriple, kind, family: CasimirFamily | None = None) -> VerificationReport:
    """The three commutator expressions for 2F must coincide."""
    start = time.perf_counter()
    fam = _family(n, kind, family)
    K, L, M = triple.K, triple.L, triple.M
    kl, lm, km = fam(K | L), fam(L | M), fam(K | M)
    e1 = kl * lm - lm * kl
    e2 = km * kl - kl * km
    e3 = lm * km - km * lm
    failing = {}
    for name, r in (("[KL,LM]-[KM,KL]", e1 - e2), ("[KL,LM]-[LM,KM]", e1 - e3)):
        if not r.is_zero():
            failing[name] = r
    return VerificationReport(
        identity="F",
        n=n,
        model=fam.kind.value,
        subsets=triple.as_lists(),
        residual=failing,
        passed=not failing,
        details=fam.describe(),
        elapsed_ms=(time.perf_counter() - start) * 1000.0,
    )


def rank1_relations(fam: CasimirFamily, triple: SubsetTriple) -> dict:
    """Residuals of the three rank-one relations for the triple (K, L, M)."""
    K, L, M = triple.K, triple.L, triple.M
    cK, cL, cM = fam(K), fam(L), fam(M)
    cKL, cLM, cKM = fam(K | L), fam(L | M), fam(K | M)
    cKLM = fam(K | L | M)
    F = (cKL * cLM - cLM * cKL).scale(Fraction(1, 2))
    return {
        "[C_KL,F]": (cKL * F - F * cKL)
        - (cLM * cKL - cKL * cKM + (cL - cK) * (cM - cKLM)),
        "[C_LM,F]": (cLM * F - F * cLM)
        - (cKM * cLM - cLM * cKL + (cM - cL) * (cK - cKLM)),
        "[C_KM,F]": (cKM * F - F * cKM)
        - (cKL * cKM - cKM * cLM + (cK - cM) * (cL - cKLM)),
    }


def verify_rank1(n: int, triple: SubsetTriple, kind, family: CasimirFamily | None = None) -> VerificationReport:
    start = time.perf_counter()
    fam = _family(n, kind, family)
    residuals = rank1_relations(fam, triple)
    failing = {name: r for name, r in residuals.items() if not r.is_zero()}
    details = fam.describe()
    details["relations"] = {name: name not in failing for name in residuals}
    return VerificationReport(
        identity="rank1",
        n=n,
        model=fam.kind.value,
        subsets=triple.as_lists(),
        residual=failing,
        passed=not failing,
        details=details,
        elapsed_ms=(time.perf_counter() - start) * 1000.0,
    )


def casimir_linear_expansion(n: int, A, kind, family: CasimirFamily | None = None) -> VerificationReport:
    """C_A = sum over pairs C_ij - (|A| - 2) sum_i C_i."""
    start = time.perf_counter()
    A = check_subset(n, A)
    if len(A) < 2:
        raise ValueError("the expansion needs |A| >= 2")
    fam = _family(n, kind, family)
    pairs = None
    for i, j in combinations(sorted(A), 2):
        c = fam({i, j})
        pairs = c if pairs is None else pairs + c
    singles = None
    for i in sorted(A):
        c = fam({i})
        singles = c if singles is None else singles + c
    rhs = pairs - singles.scale(len(A) - 2)
    return _report("linear_expansion", fam, [sorted(A)], fam(A), rhs, start)


def check_labelling_chain(n: int, kind, family: CasimirFamily | None = None) -> VerificationReport:
    """Pairwise commutation of C_[2], ..., C_[n] along the standard chain."""
    start = time.perf_counter()
    fam = _family(n, kind, family)
    chain = [frozenset(range(1, l + 1)) for l in range(2, n + 1)]
    failing = {}
    for A, B in combinations(chain, 2):
        r = fam(A) * fam(B) - fam(B) * fam(A)
        if not r.is_zero():
            failing[f"[C_{len(A)},C_{len(B)}]"] = r
    return VerificationReport(
        identity="labelling_chain",
        n=n,
        model=fam.kind.value,
        subsets=[sorted(c) for c in chain],
        residual=failing,
        passed=not failing,
        details=fam.describe(),
        elapsed_ms=(time.perf_counter() - start) * 1000.0,
    )


def check_central(n: int, kind, family: CasimirFamily | None = None) -> VerificationReport:
    """C_[n] and each C_i commute with every C_A."""
    start = time.perf_counter()
    fam = _family(n, kind, family)
    subsets = [
        frozenset(c) for size in range(1, n + 1) for c in combinations(range(1, n + 1), size)
    ]
    central = [frozenset(range(1, n + 1))] + [frozenset({i}) for i in range(1, n + 1)]
    failing = {}
    for Z in central:
        for A in subsets:
            r = fam(Z) * fam(A) - fam(A) * fam(Z)
            if not r.is_zero():
                failing[f"[C{sorted(Z)},C{sorted(A)}]"] = r
    return VerificationReport(
        identity="central",
        n=n,
        model=fam.kind.value,
        subsets=[sorted(Z) for Z in central],
        residual=failing,
        passed=not failing,
        details=fam.describe(),
        elapsed_ms=(time.perf_counter() - start) * 1000.0,
    )


def default_triples(n: int) -> list[SubsetTriple]:
    """Triples exercised by the ``all`` suite."""
    if n < 3:
        return []
    out = [SubsetTriple.of(n, {1}, {2}, {3})]
    if n >= 4:
        out.append(SubsetTriple.of(n, {1}, {2}, {3, 4}))
        out.append(SubsetTriple.of(n, {1, 2}, {3}, {4}))
    return out


def run_suite(n: int, kind, suite: str = "all", level: str | None = None, degree: int | None = None):
    """Reports for the selected suite, in a fixed order."""
    fam = CasimirFamily(n, kind, level=level, degree=degree)
    suites = {"commute", "F", "rank1", "expansion", "chain", "central"}
    chosen = suites if suite == "all" else {suite}
    unknown = chosen - suites
    if unknown:
        raise ValueError(f"unknown suite {sorted(unknown)}")
    reports = []
    if "commute" in chosen:
        for A, B in commuting_pairs(n):
            reports.append(check_commute(n, A, B, kind, fam))
    if "chain" in chosen and n >= 2:
        reports.append(check_labelling_chain(n, kind, fam))
    if "central" in chosen:
        reports.append(check_central(n, kind, fam))
    if "expansion" in chosen:
        for size in range(2, n + 1):
            for A in combinations(range(1, n + 1), size):
                reports.append(casimir_linear_expansion(n, A, kind, fam))
    for t in default_triples(n):
        if "F" in chosen:
            reports.append(verify_F(n, t, kind, fam))
        if "rank1" in chosen:
            reports.append(verify_rank1(n, t, kind, fam))
    return reports
