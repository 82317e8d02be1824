"""Independent reference computations built on sympy expressions.

Nothing here goes through racahkit's Weyl algebra or linear algebra; the
only bridge is converting coefficients and polynomials to sympy.
"""

from __future__ import annotations

import sympy as sp
from sympy.polys.matrices import DomainMatrix

from racahkit.exactcore import LaurentPoly, ParamScalar

NU = sp.symbols("nu1:13")
KSYM = sp.Symbol("k")


def xs(n, prefix="x"):
    return sp.symbols(f"{prefix}1:{n + 1}")


def scalar_expr(c: ParamScalar):
    c.normalized()
    return c.num.as_expr() / c.den.as_expr()


def poly_expr(p: LaurentPoly):
    syms = sp.symbols(" ".join(p.variables)) if p.variables else ()
    if len(p.variables) == 1:
        syms = (syms,)
    out = 0
    for e, c in p.terms.items():
        out += scalar_expr(c) * sp.Mul(*[s**a for s, a in zip(syms, e)])
    return out


def same(a, b) -> bool:
    return sp.simplify(sp.together(a - b)) == 0


# su(1,1) generators acting on sympy expressions, one variable at a time.
def bargmann(i):
    x, v = sp.Symbol(f"x{i}"), NU[i - 1]
    plus = lambda f: x**2 * sp.diff(f, x) + 2 * v * x * f
    minus = lambda f: sp.diff(f, x)
    zero = lambda f: x * sp.diff(f, x) + v * f
    return plus, minus, zero


def barut_girardello(i):
    x, v = sp.Symbol(f"x{i}"), NU[i - 1]
    plus = lambda f: x * f
    minus = lambda f: x * sp.diff(f, x, 2) + 2 * v * sp.diff(f, x)
    zero = lambda f: x * sp.diff(f, x) + v * f
    return plus, minus, zero


def model(kind):
    return bargmann if kind in ("bargmann",) or getattr(kind, "value", None) == "bargmann" else barut_girardello


def total(kind, subset):
    gens = [model(kind)(i) for i in sorted(subset)]

    def part(idx):
        return lambda f: sp.expand(sum(g[idx](f) for g in gens))

    return part(0), part(1), part(2)


def casimir_apply(kind, subset, f):
    plus, minus, zero = total(kind, subset)
    return sp.expand(zero(zero(f)) - zero(f) - plus(minus(f)))


def monomials(n, k):
    from itertools import combinations_with_replacement

    vars_ = xs(n)
    out = []
    for combo in combinations_with_replacement(range(n), k):
        m = 1
        for i in combo:
            m *= vars_[i]
        out.append(m)
    return out


def kernel_dimension(n, k, kind) -> int:
    """dim ker(lowering) on P_k(R^n) via DomainMatrix rank over QQ(nu)."""
    _, minus, _ = total(kind, range(1, n + 1))
    src = monomials(n, k)
    if k == 0:
        return 1
    tgt = monomials(n, k - 1)
    vars_ = xs(n)
    index = {sp.Poly(m, *vars_).monoms()[0]: r for r, m in enumerate(tgt)}
    rows = [[0] * len(src) for _ in tgt]
    for c, m in enumerate(src):
        img = minus(m)
        if img == 0:
            continue
        for mon, coeff in sp.Poly(img, *vars_).terms():
            rows[index[mon]][c] = coeff
    dom = sp.QQ.frac_field(*NU[:n])
    M = DomainMatrix([[dom.from_sympy(sp.sympify(e)) for e in row] for row in rows], (len(tgt), len(src)), dom)
    return len(src) - M.rank()
