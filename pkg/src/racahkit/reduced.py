"""Realization of the rank n-2 Racah algebra on polynomials in n-2 variables.

Bargmann harmonics of degree k in n variables are written as
(x1-x2)^k phi(u) with u_j = (x_{j+2}-x_{j+1})/(x1-x2).  Conjugating C_B by
(x1-x2)^k turns it into an operator on phi, i.e. on Pi_k^{n-2}, the
polynomials of total degree at most k in u_1..u_{n-2}.  The explicit
operators are checked against the matrices obtained from C_B directly.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .exactcore import K, LaurentPoly, homogeneous_monomials, nu, param_evaluate, xvars
from .harmonics import phi_to_x, u_realization, uvars, x_to_phi
from .linalg import PMatrix, action_matrix, coordinates
from .racah import SubsetTriple, rank1_relations
from .report import VerificationReport
from .su11 import ModelKind, casimir, check_subset
from .weyl import WeylOp, weyl_apply


class UnsupportedSubset(ValueError):
    """Explicit operators exist only for singletons and pairs."""


class GaugeMismatch(AssertionError):
    """The image of a basis element failed to re-expand in the u-basis."""


@dataclass(frozen=True)
class UBasisElement:
    a: tuple
    n: int
    k: int

    def realization(self) -> LaurentPoly:
        return u_realization(self.a, self.n, self.k)

    def monomial(self) -> LaurentPoly:
        return LaurentPoly.monomial(uvars(self.n), self.a)


def u_monomials(n: int, k: int) -> list[tuple]:
    """Exponents of Pi_k^{n-2}, ordered by degree then descending lex."""
    out = []
    for d in range(k + 1):
        out.extend(homogeneous_monomials(n - 2, d))
    return out


def u_basis(n: int, k: int) -> list[UBasisElement]:
    return [UBasisElement(a, n, k) for a in u_monomials(n, k)]


class _UOps:
    """Building blocks in u_1..u_{n-2}; u_{n-1} and its derivative are zero."""

    def __init__(self, n: int):
        if n < 3:
            raise ValueError("the reduced realization needs n >= 3")
        self.n = n
        self.vs = uvars(n)

    def const(self, c) -> WeylOp:
        return WeylOp.scalar(self.vs, c)

    def u(self, i: int) -> WeylOp:
        if i < 1 or i > self.n - 2:
            return WeylOp.zero(self.vs)
        return WeylOp.x(self.vs, i - 1)

    def du(self, i: int) -> WeylOp:
        if i < 1 or i > self.n - 2:
            return WeylOp.zero(self.vs)
        return WeylOp.d(self.vs, i - 1)

    def usum(self, lo: int, hi: int) -> WeylOp:
        out = WeylOp.zero(self.vs)
        for i in range(lo, hi + 1):
            out = out + self.u(i)
        return out

    def euler(self) -> WeylOp:
        out = WeylOp.zero(self.vs)
        for i in range(1, self.n - 1):
            out = out + self.u(i) * self.du(i)
        return out

    def window(self, j: int) -> WeylOp:
        return self.du(j - 2) - self.du(j - 1)


def printed_tilde(n: int, B: Iterable[int]) -> WeylOp:
    """Explicit gauged Casimir for a singleton or a pair, symbolic in k and nu."""
    B = check_subset(n, B)
    ops = _UOps(n)
    k = K
    if len(B) == 1:
        (i,) = B
        return ops.const(nu(i) * (nu(i) - 1))
    if len(B) != 2:
        raise UnsupportedSubset("explicit operators cover |B| <= 2; use tilde_casimir for larger B")
    j, i = sorted(B)
    E = ops.euler()
    one = ops.const(1)
    if (j, i) == (1, 2):
        a = ops.const(k - 1) - E
        b = ops.const(-k) - ops.du(1) + E
        return (
            -(a * b)
            + (ops.const(k) - E).scale(2 * nu(2))
            - b.scale(2 * nu(1))
            + ops.const((nu(1) + nu(2)) * (nu(1) + nu(2) - 1))
        )
    if j in (1, 2):
        # displays are written with the larger index called j
        j, s = i, ops.usum(1, i - 2)
        w = ops.window(j)
        if B == frozenset({1, j}):
            t = one - s
            return (
                -(t * t * (ops.const(k - 1) - E) * w)
                + (t * (ops.const(k) - E)).scale(2 * nu(j))
                - (t * w).scale(2 * nu(1))
                + ops.const((nu(1) + nu(j)) * (nu(1) + nu(j) - 1))
            )
        return (
            -(s * s * (ops.const(1 - k) - ops.du(1) + E) * w)
            + (s * (ops.const(k) + ops.du(1) - E)).scale(2 * nu(j))
            + (s * w).scale(2 * nu(2))
            + ops.const((nu(2) + nu(j)) * (nu(2) + nu(j) - 1))
        )
    s = ops.usum(j - 1, i - 2)
    wi, wj = ops.window(i), ops.window(j)
    return (
        -(s * s * wi * wj)
        + (s * wi).scale(2 * nu(j))
        - (s * wj).scale(2 * nu(i))
        + ops.const((nu(i) + nu(j)) * (nu(i) + nu(j) - 1))
    )


def tilde_casimir(n: int, B: Iterable[int]) -> WeylOp:
    """C~_B for any B, through the pair expansion of intermediate Casimirs."""
    B = check_subset(n, B)
    if len(B) <= 2:
        return printed_tilde(n, B)
    out = WeylOp.zero(uvars(n))
    for p in combinations(sorted(B), 2):
        out = out + printed_tilde(n, p)
    for i in sorted(B):
        out = out - printed_tilde(n, {i}).scale(len(B) - 2)
    return out


def specialize_k(op, k: int):
    return param_evaluate(op, {"k": k}, strict=False)


def printed_matrix(n: int, k: int, B) -> PMatrix:
    """Matrix of C~_B on the monomials u^a, |a| <= k, with k specialized."""
    mons = u_monomials(n, k)
    return action_matrix(specialize_k(tilde_casimir(n, B), k), mons, uvars(n))


def gauged_action_matrix(n: int, k: int, B) -> PMatrix:
    """Matrix of C_B on H_k(R^n) in the basis u_realization(a)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    B = check_subset(n, B)
    op = casimir(n, B, ModelKind.BARGMANN)
    mons = u_monomials(n, k)
    m = PMatrix.zeros(len(mons), len(mons))
    for col, a in enumerate(mons):
        img = weyl_apply(op, u_realization(a, n, k))
        phi = x_to_phi(img, n)
        # x_to_phi inverts phi_to_x only on harmonics; re-expanding proves the column
        if phi_to_x(phi, n, k) != img:
            raise GaugeMismatch(f"image of u^{a} does not re-expand in the u-basis")
        for row, c in enumerate(coordinates(phi, mons)):
            m.data[row][col] = c
    return m


def verify_reduced(n: int, k: int, B) -> VerificationReport:
    start = time.perf_counter()
    B = check_subset(n, B)
    lhs = printed_matrix(n, k, B)
    rhs = gauged_action_matrix(n, k, B)
    mismatches = []
    for r in range(lhs.rows):
        for c in range(lhs.cols):
            if lhs[r, c] != rhs[r, c]:
                mismatches.append(f"entry ({r},{c}): printed {lhs[r, c]} vs gauged {rhs[r, c]}")
    return VerificationReport(
        identity="reduced",
        n=n,
        model=ModelKind.BARGMANN.value,
        subsets=[sorted(B)],
        residual=mismatches,
        passed=not mismatches,
        details={"k": k, "dim": lhs.rows},
        elapsed_ms=(time.perf_counter() - start) * 1000.0,
    )


def all_pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(1, n + 1), 2))


class TildeFamily:
    """C~_A as matrices on Pi_k^{n-2}; plugs into the Racah relation checks."""

    def __init__(self, n: int, k: int):
        self.n, self.k = n, k
        self.kind = ModelKind.BARGMANN
        self._cache: dict = {}

    def __call__(self, subset) -> PMatrix:
        A = check_subset(self.n, subset)
        if A not in self._cache:
            self._cache[A] = printed_matrix(self.n, self.k, A)
        return self._cache[A]

    def describe(self) -> dict:
        return {"level": "reduced", "k": self.k}


def verify_reduced_racah(n: int, k: int) -> VerificationReport:
    """Commutation, rank-one relations and centrality of C~_[n] on Pi_k^{n-2}."""
    start = time.perf_counter()
    fam = TildeFamily(n, k)
    failing = {}
    subsets = [frozenset(c) for s in range(1, n + 1) for c in combinations(range(1, n + 1), s)]
    for A, Bs in combinations(subsets, 2):
        if A <= Bs or Bs <= A or not (A & Bs):
            r = fam(A) * fam(Bs) - fam(Bs) * fam(A)
            if not r.is_zero():
                failing[f"[C{sorted(A)},C{sorted(Bs)}]"] = str(r)
    for idx in combinations(range(1, n + 1), 3):
        t = SubsetTriple.of(n, {idx[0]}, {idx[1]}, {idx[2]})
        for name, r in rank1_relations(fam, t).items():
            if not r.is_zero():
                failing[f"{name} {list(idx)}"] = str(r)
    full = fam(range(1, n + 1))
    total = sum((nu(i) for i in range(1, n + 1)), K)
    if full != PMatrix.identity(full.rows, specialize_k(total * (total - 1), k)):
        failing["C[n] scalar"] = str(full)
    return VerificationReport(
        identity="reduced_racah",
        n=n,
        model=ModelKind.BARGMANN.value,
        residual=[f"{a}: {b}" for a, b in failing.items()],
        passed=not failing,
        details={"k": k},
        elapsed_ms=(time.perf_counter() - start) * 1000.0,
    )
