"""Weighted Laplace transform between the two models, and the Miller model.

The transform is defined by its action on monomials,
x^m -> (2 nu)_m rho^m in each variable, which intertwines the
Barut-Girardello triple with the Bargmann triple.  The second half of the
module rewrites the BG lowering operator under x = z^2, gauges away the
first-order terms, and checks the pieces that identify the result with
the superintegrable Hamiltonian on the sphere.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .exactcore import (
    ONE,
    LaurentPoly,
    ParamScalar,
    homogeneous_monomials,
    nu,
    pochhammer,
    poly_affine_substitute,
    scalar,
    xvars,
)
from .harmonics import (
    BasisLabel,
    BasisOrder,
    basis_element,
    bg_jacobi_factors,
    build_basis,
    ck_extend,
    jacobi_p,
    proportionality,
)
from .report import VerificationReport
from .su11 import ModelKind, make_realization
from .weyl import (
    GaugeExponent,
    WeylOp,
    weyl_apply,
    weyl_gauge_conjugate,
    weyl_square_change_of_vars,
)


class NotProportional(AssertionError):
    """The transformed BG element is not a multiple of the Bargmann one."""


class NotFactorizable(AssertionError):
    """A hyperplane restriction does not split into the Jacobi product."""


# ---------------------------------------------------------------------------
# Laplace transform
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LaplaceMap:
    """Monomial action x_i^m -> (2 nu_i)_m rho_i^m; rho reuses the x names."""

    nus: tuple

    @classmethod
    def standard(cls, n: int) -> "LaplaceMap":
        return cls(tuple(nu(i) for i in range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.nus)

    def weight(self, exps) -> ParamScalar:
        out = ONE
        for v, m in zip(self.nus, exps):
            if m:
                out = out * pochhammer(2 * v, m)
        return out

    def __call__(self, p: LaurentPoly) -> LaurentPoly:
        return laplace_poly(p, self)


def laplace_poly(p: LaurentPoly, lmap: LaplaceMap | None = None) -> LaurentPoly:
    if lmap is None:
        lmap = LaplaceMap.standard(p.nvars)
    if lmap.n != p.nvars:
        raise ValueError(f"map has {lmap.n} parameters, polynomial has {p.nvars} variables")
    if not p.is_polynomial():
        raise ValueError("the transform is defined on polynomials only")
    return LaurentPoly._raw(
        p.variables, {e: c * lmap.weight(e) for e, c in p.terms.items()}
    )


def _monomials_upto(n: int, D: int):
    for d in range(D + 1):
        yield from homogeneous_monomials(n, d)


def verify_intertwine(D: int, n: int) -> VerificationReport:
    """L(L_s f) = K_s L(f) for s in {+, -, 0} and every monomial f of degree <= D."""
    start = time.perf_counter()
    if D < 0:
        raise ValueError("degree bound must be nonnegative")
    vs = xvars(n)
    lmap = LaplaceMap.standard(n)
    bg = make_realization(n, range(1, n + 1), ModelKind.BG)
    barg = make_realization(n, range(1, n + 1), ModelKind.BARGMANN)
    pairs = (("plus", bg.plus, barg.plus), ("minus", bg.minus, barg.minus), ("zero", bg.zero, barg.zero))
    failing = []
    count = 0
    for e in _monomials_upto(n, D):
        f = LaurentPoly.monomial(vs, e)
        lf = lmap(f)
        for name, src, dst in pairs:
            count += 1
            r = lmap(weyl_apply(src, f)) - weyl_apply(dst, lf)
            if not r.is_zero():
                failing.append(f"{name} on {f}: {r}")
    return VerificationReport(
        identity="laplace_intertwine",
        n=n,
        model="bg->bargmann",
        residual=failing,
        passed=not failing,
        details={"degree": D, "checks": count},
        elapsed_ms=(time.perf_counter() - start) * 1000.0,
    )


def verify_ck_commutation(n: int, D: int) -> VerificationReport:
    """L(CK^BG(p)) = CK(L(p)) for every monomial p in x1..x_{n-1} of degree <= D."""
    start = time.perf_counter()
    if n < 2:
        raise ValueError("CK extension needs n >= 2")
    small = xvars(n - 1)
    failing = []
    for e in _monomials_upto(n - 1, D):
        p = LaurentPoly.monomial(small, e)
        lhs = laplace_poly(ck_extend(p, ModelKind.BG))
        rhs = ck_extend(laplace_poly(p), ModelKind.BARGMANN)
        if lhs != rhs:
            failing.append(f"{p}: {lhs - rhs}")
    return VerificationReport(
        identity="laplace_ck",
        n=n,
        model="bg->bargmann",
        residual=failing,
        passed=not failing,
        details={"degree": D},
        elapsed_ms=(time.perf_counter() - start) * 1000.0,
    )


def map_basis_laplace(n: int, k: int) -> VerificationReport:
    """Transform each BG basis element and record c with L(psi^BG) = c psi."""
    start = time.perf_counter()
    if n < 2:
        raise ValueError("need n >= 2")
    bargmann = dict(build_basis(n, k, ModelKind.BARGMANN))
    constants = {}
    for label, p in build_basis(n, k, ModelKind.BG):
        image = laplace_poly(p)
        c = proportionality(image, bargmann[label])
        if c is None or c.is_zero():
            raise NotProportional(f"label {label.j}: transformed element is not a multiple")
        constants[",".join(map(str, label.j))] = str(c)
    return VerificationReport(
        identity="laplace_basis",
        n=n,
        model="bg->bargmann",
        residual=[],
        passed=True,
        details={"k": k, "constants": constants},
        elapsed_ms=(time.perf_counter() - start) * 1000.0,
    )


# ---------------------------------------------------------------------------
# Miller model
# ---------------------------------------------------------------------------


def zvars(n: int) -> tuple[str, ...]:
    return xvars(n, "z")


def angular_operator(n: int) -> WeylOp:
    """Sum over i < j of (z_j d_i - z_i d_j)^2."""
    vs = zvars(n)
    out = WeylOp.zero(vs)
    for i, j in combinations(range(n), 2):
        L = WeylOp.x(vs, j) * WeylOp.d(vs, i) - WeylOp.x(vs, i) * WeylOp.d(vs, j)
        out = out + L * L
    return out


def laplacian(n: int) -> WeylOp:
    vs = zvars(n)
    out = WeylOp.zero(vs)
    for i in range(n):
        out = out + WeylOp.d(vs, i, 2)
    return out


@dataclass
class MillerForm:
    n: int
    b: list = field(default_factory=list)
    angular: WeylOp | None = None

    @classmethod
    def of(cls, n: int) -> "MillerForm":
        b = [(2 * nu(j) - 1) ** 2 - Fraction(1, 4) for j in range(1, n + 1)]
        return cls(n, b, angular_operator(n))

    def potential(self) -> WeylOp:
        vs = zvars(self.n)
        out = WeylOp.zero(vs)
        for j, bj in enumerate(self.b):
            out = out + WeylOp.x(vs, j, -2).scale(bj)
        return out

    def flat(self) -> WeylOp:
        """Delta_z - sum_j b_j / z_j^2."""
        return laplacian(self.n) - self.potential()

    def on_sphere(self) -> WeylOp:
        return self.angular - self.potential()


def first_order_terms(op: WeylOp) -> list:
    return [(xe, de) for (xe, de) in op.terms if sum(de) == 1]


def miller_reduce(n: int):
    """BG lowering operator -> square change of variables -> gauge.

    Returns (operator in z before the gauge, gauged operator, report).  The
    first is (1/4) sum (d_j^2 + (4 nu_j - 1) z_j^-1 d_j); the second is
    compared with Delta_z - sum b_j z_j^-2.
    """
    start = time.perf_counter()
    if n < 1:
        raise ValueError("need n >= 1")
    lower = make_realization(n, range(1, n + 1), ModelKind.BG).minus
    in_z = weyl_square_change_of_vars(lower)
    vs = in_z.variables
    expected_z = WeylOp.zero(vs)
    for j in range(n):
        expected_z = expected_z + WeylOp.d(vs, j, 2) + (
            WeylOp.x(vs, j, -1) * WeylOp.d(vs, j)
        ).scale(4 * nu(j + 1) - 1)
    expected_z = expected_z.scale(Fraction(1, 4))
    H = in_z.scale(4)
    g = GaugeExponent({vs[j]: 2 * nu(j + 1) - Fraction(1, 2) for j in range(n)})
    gauged = weyl_gauge_conjugate(H, g)
    form = MillerForm.of(n)
    failing = {}
    if in_z != expected_z:
        failing["square change of variables"] = in_z - expected_z
    if gauged != form.flat():
        failing["gauged"] = gauged - form.flat()
    leftover = first_order_terms(gauged)
    report = VerificationReport(
        identity="miller",
        n=n,
        model=ModelKind.BG.value,
        residual=failing,
        passed=not failing and not leftover,
        details={
            "b": [str(scalar(b)) for b in form.b],
            "first_order_terms": len(leftover),
            "gauged": str(gauged),
        },
        elapsed_ms=(time.perf_counter() - start) * 1000.0,
    )
    return in_z, gauged, report


def sphere_identity_check(n: int) -> VerificationReport:
    """r^2 Delta = E(E + n - 2) + sum_{i<j} (z_j d_i - z_i d_j)^2."""
    start = time.perf_counter()
    if n < 2:
        raise ValueError("need n >= 2")
    vs = zvars(n)
    r2 = WeylOp.zero(vs)
    E = WeylOp.zero(vs)
    for i in range(n):
        r2 = r2 + WeylOp.x(vs, i, 2)
        E = E + WeylOp.x(vs, i) * WeylOp.d(vs, i)
    lhs = r2 * laplacian(n)
    rhs = E * (E + (n - 2)) + angular_operator(n)
    residual = lhs - rhs
    return VerificationReport(
        identity="sphere",
        n=n,
        model="z",
        residual=residual,
        lhs=lhs,
        rhs=rhs,
        passed=residual.is_zero(),
        elapsed_ms=(time.perf_counter() - start) * 1000.0,
    )


def _restrict_to_hyperplane(p: LaurentPoly) -> LaurentPoly:
    """Substitute x_n = 1 - x_1 - ... - x_{n-1}."""
    n = p.nvars
    small = xvars(n - 1)
    subst = {p.variables[i]: LaurentPoly.var(small, i) for i in range(n - 1)}
    last = LaurentPoly.constant(small, 1)
    for i in range(n - 1):
        last = last - LaurentPoly.var(small, i)
    subst[p.variables[n - 1]] = last
    return poly_affine_substitute(p, subst)


def displayed_factor(n: int, k: int, j: int, label: BasisLabel) -> LaurentPoly:
    """(1 - sum_{i<k} x_i)^j P_j^(a,b)(2 x_k / (1 - sum_{i<k} x_i) - 1) in x_1..x_{n-1}.

    a = -1 + 2 sum_{l=k+1}^{n-1} j_l + 2 sum_{l=k+1}^{n} nu_l and b = 2 nu_k - 1.
    """
    small = xvars(n - 1)
    alpha = -1 + 2 * sum(label.j[k:]) + 2 * sum((nu(l) for l in range(k + 1, n + 1)), scalar(0))
    beta = 2 * nu(k) - 1
    S = LaurentPoly.constant(small, 1)
    for i in range(1, k):
        S = S - LaurentPoly.var(small, i - 1)
    xk = LaurentPoly.var(small, k - 1)
    P = jacobi_p(j, alpha, beta, "t")
    out = LaurentPoly(small)
    # S^j P(2x/S - 1) = sum_i c_i (2x - S)^i S^(j-i)
    for (i,), c in P.terms.items():
        out = out + (xk * 2 - S) ** i * S ** (j - i) * c
    return out


def hyperplane_eigenfunctions(n: int, label) -> tuple[LaurentPoly, VerificationReport]:
    """Restrict the permuted BG element to x_1 + ... + x_n = 1 and factor it."""
    start = time.perf_counter()
    if not isinstance(label, BasisLabel):
        label = BasisLabel(tuple(label))
    if label.n != n:
        raise ValueError(f"label {label.j} does not have {n - 1} entries")
    psi = basis_element(label, ModelKind.BG, BasisOrder.PERMUTED)
    restricted = _restrict_to_hyperplane(psi)
    factors = bg_jacobi_factors(label, BasisOrder.PERMUTED)
    product = LaurentPoly.constant(psi.variables, 1)
    for poly, const in factors:
        product = product * poly * const
    if product != psi:
        raise NotFactorizable(f"label {label.j}: element is not the product of its Jacobi factors")
    constants = []
    predicted = LaurentPoly.constant(xvars(n - 1), 1)
    for k, (poly, const) in enumerate(factors, start=1):
        shown = displayed_factor(n, k, label.j[k - 1], label)
        c = proportionality(_restrict_to_hyperplane(poly * const), shown)
        if c is None or c.is_zero():
            raise NotFactorizable(f"label {label.j}: factor {k} does not match the Jacobi display")
        constants.append(str(c))
        predicted = predicted * shown * c
    if predicted != restricted:
        raise NotFactorizable(f"label {label.j}: restricted product mismatch")
    report = VerificationReport(
        identity="hyperplane",
        n=n,
        model=ModelKind.BG.value,
        residual=[],
        passed=True,
        details={"label": list(label.j), "constants": constants},
        elapsed_ms=(time.perf_counter() - start) * 1000.0,
    )
    return restricted, report
