"""Harmonic polynomials for the Bargmann and Barut-Girardello models.

Harmonics are the homogeneous polynomials killed by the total lowering
operator of the chosen model.  This module builds them through
Cauchy-Kovalevskaia (CK) extension and Fischer decomposition, produces the
labelled bases that diagonalize the chain C_[2], ..., C_[n], and provides
the closed forms (Jacobi products, terminating 2F1 series, first-order
recursions) used to cross-check those bases.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from .exactcore import (
    ONE,
    ZERO,
    LaurentPoly,
    ParamScalar,
    _ONE,
    _den_cofactors,
    binomial,
    homogeneous_monomials,
    nu,
    nu_sum,
    param_evaluate,
    poly_affine_substitute,
    pochhammer,
    scalar,
    xvars,
)
from .linalg import PMatrix, coordinates, solve
from .su11 import ModelKind, make_realization
from .weyl import WeylOp, weyl_apply


class NotHarmonic(ValueError):
    pass


class DegenerateParameter(ValueError):
    pass


class BasisOrder(enum.Enum):
    STANDARD = "standard"
    PERMUTED = "permuted"


@dataclass(frozen=True)
class BasisLabel:
    j: tuple

    def __post_init__(self):
        if any(int(x) != x or x < 0 for x in self.j):
            raise ValueError(f"label entries must be nonnegative integers: {self.j}")
        object.__setattr__(self, "j", tuple(int(x) for x in self.j))

    @property
    def n(self) -> int:
        return len(self.j) + 1

    @property
    def k(self) -> int:
        return sum(self.j)

    def __str__(self):
        return "(" + ",".join(str(x) for x in self.j) + ")"


@dataclass(frozen=True)
class Eigenvalue:
    level: int
    value: ParamScalar


@dataclass
class FischerDecomposition:
    degree: int
    kind: ModelKind
    components: list = field(default_factory=list)  # (j, h_{k-j}) pairs
    # peel steps (j, q_j, c_j) with h_j = q_j / (c_1 ... c_j), when known
    fraction_free: list | None = field(default=None, repr=False, compare=False)
    denominator: ParamScalar | None = field(default=None, repr=False, compare=False)

    def reconstruct(self) -> LaurentPoly:
        """Sum of raising^j applied to each harmonic component."""
        if self.fraction_free is not None:
            # Horner form of D * sum_j R^j h_j; each step scales by one c_j
            out = None
            for j, q, c in self.fraction_free:
                term = _apply_power(raising(q.nvars, self.kind), q, j)
                out = term if out is None else out * c + term
            return out.lazy_divide(self.denominator)
        parts = []
        for j, h in self.components:
            q, d = h.clear_denominators()
            parts.append((_apply_power(raising(h.nvars, self.kind), q, j), d.num))
        common = parts[0][1]
        for _, d in parts[1:]:
            common = common * _den_cofactors(common, d)[1]
        out = None
        for term, d in parts:
            term = term * ParamScalar._raw(common.exquo(d), _ONE)
            out = term if out is None else out + term
        return out.lazy_divide(ParamScalar._raw(common, _ONE))

    def component(self, j: int) -> LaurentPoly:
        for jj, h in self.components:
            if jj == j:
                return h
        raise KeyError(j)


def labels(n: int, k: int) -> list[BasisLabel]:
    """Compositions of k into n-1 parts, lexicographically descending."""
    return [BasisLabel(e) for e in homogeneous_monomials(n - 1, k)]


def lowering(n: int, kind) -> WeylOp:
    return make_realization(n, range(1, n + 1), kind).minus


def raising(n: int, kind) -> WeylOp:
    return make_realization(n, range(1, n + 1), kind).plus


def is_harmonic(p: LaurentPoly, kind) -> bool:
    return weyl_apply(lowering(p.nvars, kind), p).is_zero()


def _apply_power(op: WeylOp, p: LaurentPoly, m: int) -> LaurentPoly:
    for _ in range(m):
        if p.is_zero():
            break
        p = weyl_apply(op, p)
    return p


def _check_homogeneous(p: LaurentPoly) -> int:
    if not p.is_polynomial():
        raise ValueError("expected a polynomial (no negative exponents)")
    if not p.is_homogeneous():
        raise ValueError(f"expected a homogeneous polynomial, degrees {sorted(p.degrees())}")
    return max(p.degree(), 0)


# ---------------------------------------------------------------------------
# CK extension
# ---------------------------------------------------------------------------


def _ck_ambient(p: LaurentPoly, kind: ModelKind, new: int, block: Sequence[int]) -> LaurentPoly:
    """CK extension inside a fixed ambient variable list.

    ``p`` depends on the (1-based) variables in ``block``; the result is
    annihilated by the lowering operator over ``block`` plus ``new``.
    """
    vs = p.variables
    if kind is ModelKind.BARGMANN:
        xn = LaurentPoly.var(vs, new - 1)
        subst = {vs[i - 1]: LaurentPoly.var(vs, i - 1) - xn for i in block}
        return poly_affine_substitute(p, subst)
    lower = make_realization(len(vs), block, kind).minus
    k = _check_homogeneous(p)
    minus_x = LaurentPoly.var(vs, new - 1) * -1
    two_nu = 2 * nu(new)
    out = p
    term = p
    for j in range(1, k + 1):
        term = weyl_apply(lower, term)
        if term.is_zero():
            break
        # (-x_n L-)^j / (j! (2 nu_n)_j) built up one factor at a time
        term = term * minus_x / ((two_nu + (j - 1)) * j)
        out = out + term
    return out


def ck_extend(p: LaurentPoly, kind) -> LaurentPoly:
    """Extend a homogeneous polynomial in x1..x_{n-1} to a harmonic in x1..x_n."""
    kind = ModelKind.parse(kind)
    _check_homogeneous(p)
    m = p.nvars
    vs = xvars(m + 1)
    if p.variables != xvars(m):
        raise ValueError(f"expected variables {xvars(m)}, got {p.variables}")
    return _ck_ambient(p.with_variables(vs), kind, m + 1, range(1, m + 1))


def ck_inverse(q: LaurentPoly, kind) -> LaurentPoly:
    """Restrict a harmonic to x_n = 0, dropping the last variable."""
    kind = ModelKind.parse(kind)
    if not is_harmonic(q, kind):
        raise NotHarmonic("input is not annihilated by the lowering operator")
    last = q.variables[-1]
    return q.subs_value(last, 0).drop_variable(last)


# ---------------------------------------------------------------------------
# Fischer decomposition
# ---------------------------------------------------------------------------


def suind_coeff(j: int, k: int, l: int, p: int) -> ParamScalar:
    """Coefficient c with L-^l L+^j h = c L+^(j-l) h for h harmonic of degree k.

    Equals j!/(j-l)! * (2|nu|_p + 2k + j - l)_l where |nu|_p = nu_1 + ... + nu_p.
    """
    if l > j:
        raise ValueError("need l <= j")
    if l < 0:
        raise ValueError("need l >= 0")
    base = 2 * nu_sum(range(1, p + 1)) + (2 * k + j - l)
    return pochhammer(base, l) * (factorial(j) // factorial(j - l))


def fischer_decompose(p: LaurentPoly, kind) -> FischerDecomposition:
    """Split p = sum_j R^j h_{k-j} by peeling components with powers of L.

    The remainder is carried fraction-free as R / D with R having
    polynomial coefficients, so each component costs one division at the end.
    """
    kind = ModelKind.parse(kind)
    k = _check_homogeneous(p)
    n = p.nvars
    t = make_realization(n, range(1, n + 1), kind)
    rem, den = p, ONE
    steps = []  # (m, q, c_m) with h = q / (c_1 ... c_m)
    for m in range(k, -1, -1):
        q = _apply_power(t.minus, rem, m)
        c = suind_coeff(m, k - m, m, n)
        steps.append((m, q, c))
        if not q.is_zero():
            rem = rem * c - _apply_power(t.plus, q, m)
            den = den * c
    if not rem.is_zero():
        raise ArithmeticError("Fischer peeling left a nonzero remainder")
    used = [(m, q, c) for m, q, c in steps if not q.is_zero()]
    comps = [(m, q) for m, q, _ in steps if q.is_zero()]
    head = ONE
    for m, q, c in used:
        head = head * c
        comps.append((m, q.lazy_divide(head)))
    comps.sort(key=lambda c: c[0])
    return FischerDecomposition(k, kind, comps, used, den)


def fischer_decompose_linear(p: LaurentPoly, kind) -> FischerDecomposition:
    """Fischer decomposition by one dense exact linear solve.

    Unknowns are all monomial coefficients of the components h_{k-j}; the
    equations are the reconstruction identity plus harmonicity of every
    component.  Serves as an oracle for :func:`fischer_decompose`.
    """
    kind = ModelKind.parse(kind)
    k = _check_homogeneous(p)
    n = p.nvars
    vs = p.variables
    t = make_realization(n, range(1, n + 1), kind)
    blocks = []  # (j, monomials of degree k-j, column offset)
    offset = 0
    for j in range(k + 1):
        mons = homogeneous_monomials(n, k - j)
        blocks.append((j, mons, offset))
        offset += len(mons)
    target = homogeneous_monomials(n, k)
    rows = []
    rhs = []
    recon = [[ZERO] * offset for _ in target]
    for j, mons, off in blocks:
        for c, e in enumerate(mons):
            img = _apply_power(t.plus, LaurentPoly.monomial(vs, e), j)
            for r, v in enumerate(coordinates(img, target)):
                recon[r][off + c] = v
    rows.extend(recon)
    rhs.extend(coordinates(p, target))
    for j, mons, off in blocks:
        if k - j == 0:
            continue
        lower_mons = homogeneous_monomials(n, k - j - 1)
        block_rows = [[ZERO] * offset for _ in lower_mons]
        for c, e in enumerate(mons):
            img = weyl_apply(t.minus, LaurentPoly.monomial(vs, e))
            for r, v in enumerate(coordinates(img, lower_mons)):
                block_rows[r][off + c] = v
        rows.extend(block_rows)
        rhs.extend([ZERO] * len(lower_mons))
    sol = _least_rows_solve(rows, rhs, offset)
    comps = []
    for j, mons, off in blocks:
        h = LaurentPoly(vs, {e: sol[off + c] for c, e in enumerate(mons)})
        comps.append((j, h))
    return FischerDecomposition(k, kind, comps)


def _least_rows_solve(rows, rhs, ncols):
    from .linalg import row_reduce, SingularSystem

    aug = PMatrix([list(r) + [b] for r, b in zip(rows, rhs)])
    red, pivots = row_reduce(aug)
    if ncols in pivots or len(pivots) != ncols:
        raise SingularSystem("Fischer system is not uniquely solvable")
    return [red.data[i][ncols] for i in range(ncols)]


# ---------------------------------------------------------------------------
# Bases
# ---------------------------------------------------------------------------


def _chain(n: int, kind: ModelKind, order: Sequence[int], exps: Sequence[int]) -> LaurentPoly:
    """Alternate raising powers and CK extensions along a variable order."""
    vs = xvars(n)
    p = LaurentPoly.var(vs, order[0] - 1, exps[0])
    for m in range(2, n + 1):
        block = order[: m - 1]
        p = _ck_ambient(p, kind, order[m - 1], block)
        if m < n and exps[m - 1]:
            up = make_realization(n, order[:m], kind).plus
            p = _apply_power(up, p, exps[m - 1])
    return p


def basis_element(label: BasisLabel, kind, order=BasisOrder.STANDARD) -> LaurentPoly:
    kind = ModelKind.parse(kind)
    order = BasisOrder(order)
    n = label.n
    if n < 2:
        raise ValueError("basis needs n >= 2")
    if order is BasisOrder.STANDARD:
        return _chain(n, kind, list(range(1, n + 1)), label.j)
    return _chain(n, kind, list(range(n, 0, -1)), label.j[::-1])


def build_basis(n: int, k: int, kind, order=BasisOrder.STANDARD) -> list[tuple[BasisLabel, LaurentPoly]]:
    if n < 2 or k < 0:
        raise ValueError("need n >= 2 and k >= 0")
    return [(lab, basis_element(lab, kind, order)) for lab in labels(n, k)]


def eigenvalue_lambda(label: BasisLabel, level: int) -> Eigenvalue:
    n = label.n
    if not 2 <= level <= n:
        raise ValueError(f"level must lie in 2..{n}")
    s = nu_sum(range(1, level + 1)) + sum(label.j[: level - 1])
    return Eigenvalue(level, s * (s - 1))


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------


def jacobi_p(m: int, alpha, beta, var: str = "t") -> LaurentPoly:
    """Jacobi polynomial P_m^(alpha,beta)(t) from its finite-sum definition."""
    vs = (var,)
    t = LaurentPoly.var(vs, 0)
    lo = (t - 1) * Fraction(1, 2)
    hi = (t + 1) * Fraction(1, 2)
    out = LaurentPoly(vs)
    for s in range(m + 1):
        c = binomial(scalar(alpha) + m, s) * binomial(scalar(beta) + m, m - s)
        out = out + lo ** (m - s) * hi**s * c
    return out


def jacobi_homogeneous(m: int, alpha, beta, u: LaurentPoly, v: LaurentPoly) -> LaurentPoly:
    """(u+v)^m P_m^(alpha,beta)((v-u)/(u+v)) as a polynomial in u and v."""
    out = u * 0
    for s in range(m + 1):
        c = binomial(scalar(alpha) + m, s) * binomial(scalar(beta) + m, m - s)
        out = out + (u * -1) ** (m - s) * v**s * c
    return out


def jacobi_gamma_form(m: int, alpha, beta, u: LaurentPoly, v: LaurentPoly) -> LaurentPoly:
    """m!(u+v)^m P_m((v-u)/(u+v)) written with Gamma ratios as Pochhammers."""
    alpha, beta = scalar(alpha), scalar(beta)
    out = u * 0
    for j in range(m + 1):
        c = (
            binomial(m, j)
            * pochhammer(alpha + (m - j + 1), j)
            * pochhammer(beta + (j + 1), m - j)
        )
        out = out + v**j * (u * -1) ** (m - j) * c
    return out


def _jacobi_factor(n: int, new: int, block: Sequence[int], prev_jsum: int, j: int) -> tuple[LaurentPoly, ParamScalar]:
    """One factor of the BG Jacobi product and its normalization constant."""
    vs = xvars(n)
    u = LaurentPoly(vs)
    for i in block:
        u = u + LaurentPoly.var(vs, i - 1)
    v = LaurentPoly.var(vs, new - 1)
    alpha = 2 * nu_sum(block) - 1 + 2 * prev_jsum
    beta = 2 * nu(new) - 1
    const = (-1) ** j * factorial(j) / pochhammer(2 * nu(new), j)
    return jacobi_homogeneous(j, alpha, beta, u, v), const


def bg_jacobi_factors(label: BasisLabel, order=BasisOrder.STANDARD) -> list[tuple[LaurentPoly, ParamScalar]]:
    """Jacobi factors of the BG basis element, each with its stated constant."""
    order = BasisOrder(order)
    n = label.n
    j = label.j
    out = []
    for k in range(1, n):
        if order is BasisOrder.STANDARD:
            new, block, prev = k + 1, range(1, k + 1), sum(j[: k - 1])
        else:
            new, block, prev = k, range(k + 1, n + 1), sum(j[k:])
        out.append(_jacobi_factor(n, new, list(block), prev, j[k - 1]))
    return out


def bg_jacobi_explicit(label: BasisLabel, order=BasisOrder.STANDARD) -> LaurentPoly:
    """Product of normalized Jacobi factors; equals the BG basis element."""
    vs = xvars(label.n)
    out = LaurentPoly.constant(vs, 1)
    for poly, const in bg_jacobi_factors(label, order):
        out = out * poly * const
    return out


def hyp2f1_terminating(a, b, c, degree: int, var: str = "u1", values=None) -> LaurentPoly:
    """sum_{m <= degree} (a)_m (b)_m / ((c)_m m!) u^m."""
    a, b, c = scalar(a), scalar(b), scalar(c)
    vs = (var,)
    out = LaurentPoly(vs)
    coeff = ONE
    for m in range(degree + 1):
        if m:
            denom = (c + (m - 1)) * m
            if values is not None and not param_evaluate(denom, values, strict=False):
                raise DegenerateParameter(f"lower parameter hits a pole at term {m}")
            coeff = coeff * (a + (m - 1)) * (b + (m - 1)) / denom
        out = out + LaurentPoly.var(vs, 0, m) * coeff
    return out


def hyp2f1_phi(k: int, j: int, values=None) -> LaurentPoly:
    """2F1(j-k, 1-k-j-2nu1-2nu2; 1-k-2nu1; u), terminating at degree k-j.

    ``values`` optionally names a parameter specialization to screen for
    lower-parameter poles.
    """
    if not 0 <= j <= k:
        raise ValueError("need 0 <= j <= k")
    s = 2 * nu(1) + 2 * nu(2)
    return hyp2f1_terminating(j - k, 1 - k - j - s, 1 - k - 2 * nu(1), k - j, "u1", values)


def uvars(n: int) -> tuple[str, ...]:
    return tuple(f"u{i}" for i in range(1, n - 1))


def recursion_operator(l: int, jsum: int, variables: Sequence[str]) -> WeylOp:
    """First-order operator adding one unit to j_l in the u-coordinates."""
    vs = tuple(variables)
    if l < 2:
        raise ValueError("recursion level must be at least 2")
    need = [f"u{i}" for i in range(1, l)]
    missing = [name for name in need if name not in vs]
    if missing:
        raise ValueError(f"missing u-variables {missing}")
    op = WeylOp.scalar(vs, 2 * nu(1) + jsum)
    for i in range(1, l):
        ui = WeylOp.x(vs, f"u{i}")
        coeff = ui - 1
        for p in range(1, i):
            coeff = coeff + WeylOp.x(vs, f"u{p}").scale(2)
        op = op + coeff * ui * WeylOp.d(vs, f"u{i}")
        op = op - ui.scale(2 * jsum + 2 * nu_sum(range(1, i + 2)))
    return op


def recursion_apply(l: int, jsum: int, phi: LaurentPoly) -> LaurentPoly:
    return weyl_apply(recursion_operator(l, jsum, phi.variables), phi)


def recursion_phi(label: BasisLabel) -> LaurentPoly:
    """phi_{j_1..j_{n-1}} grown from phi = 1 by repeated recursion steps."""
    n = label.n
    vs = uvars(n)
    phi = LaurentPoly.constant(vs, 1)
    jsum = label.j[0]
    for l in range(2, n):
        for _ in range(label.j[l - 1]):
            phi = recursion_apply(l, jsum, phi)
            jsum += 1
    return phi


# ---------------------------------------------------------------------------
# u-coordinates on harmonics of the Bargmann model
# ---------------------------------------------------------------------------


def u_realization(a: Sequence[int], n: int, k: int) -> LaurentPoly:
    """(x1-x2)^(k-|a|) (x3-x2)^a1 (x4-x3)^a2 ... (xn-x_{n-1})^a_{n-2}."""
    if len(a) != n - 2:
        raise ValueError(f"need {n - 2} exponents")
    if sum(a) > k or min(a, default=0) < 0:
        raise ValueError("exponents must be nonnegative with |a| <= k")
    vs = xvars(n)
    x = [LaurentPoly.var(vs, i) for i in range(n)]
    out = (x[0] - x[1]) ** (k - sum(a))
    for j, e in enumerate(a):
        if e:
            out = out * (x[j + 2] - x[j + 1]) ** e
    return out


def phi_to_x(phi: LaurentPoly, n: int, k: int) -> LaurentPoly:
    """Clear denominators in (x1-x2)^k phi(u) with u_j = (x_{j+2}-x_{j+1})/(x1-x2)."""
    out = LaurentPoly(xvars(n))
    for a, c in phi.terms.items():
        out = out + u_realization(a, n, k) * c
    return out


def x_to_phi(q: LaurentPoly, n: int) -> LaurentPoly:
    """Inverse of :func:`phi_to_x` on harmonics: x1 = 1, x2 = 0, x_m = u1+...+u_{m-2}."""
    us = uvars(n)
    if n == 2:
        return q.subs_value(0, 1).subs_value(1, 0).with_variables(()) if q else LaurentPoly(())
    subst = {
        q.variables[0]: LaurentPoly.constant(us, 1),
        q.variables[1]: LaurentPoly(us),
    }
    for m in range(3, n + 1):
        img = LaurentPoly(us)
        for i in range(1, m - 1):
            img = img + LaurentPoly.var(us, i - 1)
        subst[q.variables[m - 1]] = img
    return poly_affine_substitute(q, subst)


def proportionality(p: LaurentPoly, q: LaurentPoly):
    """Return c with p == c*q, or None if p is not a scalar multiple of q."""
    if q.is_zero():
        return ZERO if p.is_zero() else None
    if set(p.terms) != set(q.terms):
        return None
    e0 = next(iter(q.terms))
    c = p.terms[e0] / q.terms[e0]
    if p == q * c:
        return c
    return None


def monomial_span_dim(polys: Iterable[LaurentPoly]) -> int:
    """Rank of a family of polynomials (coefficients in QQ(nu))."""
    from .linalg import rank

    polys = list(polys)
    if not polys:
        return 0
    mons = sorted({e for p in polys for e in p.terms})
    return rank(PMatrix([coordinates(p, mons) for p in polys]))
