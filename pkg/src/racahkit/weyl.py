"""Differential operators with Laurent polynomial coefficients.

A :class:`WeylOp` is stored in normal order: every term is
``coeff * x^a * d^b`` with all multiplications to the left of all
derivatives.  Normal form is unique, so two operators are equal exactly
when their term maps agree.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb
from typing import Iterable, Mapping

from .exactcore import (
    ONE,
    ZERO,
    LaurentPoly,
    ParamScalar,
    _ONE,
    _format_monomial,
    _index,
    falling,
    format_terms,
    grlex_key,
    scalar,
)


class WeylOp:
    __slots__ = ("variables", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean = {}
        for (xe, de), c in (terms or {}).items():
            xe, de = tuple(xe), tuple(de)
            if len(xe) != n or len(de) != n:
                raise ValueError("exponent length does not match variables")
            if min(de, default=0) < 0:
                raise ValueError("derivative orders must be nonnegative")
            c = scalar(c)
            if c:
                clean[(xe, de)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, variables, terms):
        obj = object.__new__(cls)
        obj.variables = variables
        obj.terms = terms
        return obj

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, variables) -> "WeylOp":
        return cls._raw(tuple(variables), {})

    @classmethod
    def scalar(cls, variables, c=1) -> "WeylOp":
        variables = tuple(variables)
        z = (0,) * len(variables)
        c = scalar(c)
        return cls._raw(variables, {(z, z): c} if c else {})

    identity = scalar

    @classmethod
    def x(cls, variables, i, power: int = 1) -> "WeylOp":
        """Multiplication by the variable ``i`` (name or 0-based index)."""
        variables = tuple(variables)
        j = _index(variables, i)
        xe = [0] * len(variables)
        xe[j] = power
        return cls._raw(variables, {(tuple(xe), (0,) * len(variables)): ONE})

    @classmethod
    def d(cls, variables, i, order: int = 1) -> "WeylOp":
        """Partial derivative with respect to variable ``i``."""
        variables = tuple(variables)
        j = _index(variables, i)
        de = [0] * len(variables)
        de[j] = order
        return cls._raw(variables, {((0,) * len(variables), tuple(de)): ONE})

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "WeylOp":
        z = (0,) * p.nvars
        return cls._raw(p.variables, {(e, z): c for e, c in p.terms.items()})

    # -- inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def order(self) -> int:
        """Highest total derivative order (-1 for the zero operator)."""
        return max((sum(de) for _, de in self.terms), default=-1)

    def sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda t: (sum(t[0][1]), t[0][1], grlex_key(t[0][0])),
            reverse=True,
        )

    def as_poly(self) -> LaurentPoly:
        """The multiplication part, for operators of order zero."""
        if self.order() > 0:
            raise ValueError("operator contains derivatives")
        return LaurentPoly._raw(self.variables, {xe: c for (xe, _), c in self.terms.items()})

    def derivative_part(self, de) -> LaurentPoly:
        """Coefficient polynomial multiplying ``d^de``."""
        de = tuple(de)
        return LaurentPoly._raw(
            self.variables, {xe: c for (xe, d), c in self.terms.items() if d == de}
        )

    def __eq__(self, other):
        if isinstance(other, WeylOp):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, LaurentPoly):
            return self == WeylOp.from_poly(other)
        try:
            return self == WeylOp.scalar(self.variables, scalar(other))
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __repr__(self):
        return f"WeylOp({self.variables!r}, {str(self)!r})"

    def __str__(self):
        pairs = []
        for (xe, de), c in self.sorted_terms():
            mono = _format_monomial(self.variables, xe)
            dpart = _format_monomial([f"d{i + 1}" for i in range(len(de))], de)
            pairs.append((c, "*".join(p for p in (mono, dpart) if p)))
        return format_terms(pairs)

    # -- linear structure -------------------------------------------------
    def _coerce(self, other) -> "WeylOp":
        if isinstance(other, WeylOp):
            if other.variables != self.variables:
                raise ValueError(
                    f"variable mismatch: {self.variables} vs {other.variables}"
                )
            return other
        if isinstance(other, LaurentPoly):
            return self._coerce(WeylOp.from_poly(other))
        return WeylOp.scalar(self.variables, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            s = terms.get(key)
            if s is None:
                terms[key] = c
            else:
                s = s + c
                if s:
                    terms[key] = s
                else:
                    del terms[key]
        return WeylOp._raw(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return WeylOp._raw(self.variables, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def scale(self, c) -> "WeylOp":
        c = scalar(c)
        if not c:
            return WeylOp.zero(self.variables)
        return WeylOp._raw(self.variables, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (WeylOp, LaurentPoly)):
            return weyl_compose(self, self._coerce(other))
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, LaurentPoly):
            return weyl_compose(self._coerce(other), self)
        return self.scale(other)

    def __truediv__(self, other):
        return self.scale(ONE / scalar(other))

    def __pow__(self, m: int):
        if m < 0:
            raise ValueError("negative operator powers are not defined")
        out = WeylOp.scalar(self.variables, 1)
        for _ in range(m):
            out = weyl_compose(out, self)
        return out

    def __call__(self, p: LaurentPoly) -> LaurentPoly:
        return weyl_apply(self, p)

    def map_coefficients(self, fn) -> "WeylOp":
        out = {}
        for key, c in self.terms.items():
            c = scalar(fn(c))
            if c:
                out[key] = c
        return WeylOp._raw(self.variables, out)


def _leibniz(b: int, c: int):
    """Pairs (k, binom(b,k) * falling(c,k)) with nonzero weight for d^b x^c."""
    if b == 0 or c == 0:
        return ((0, 1),)
    out = []
    for k in range(b + 1):
        w = comb(b, k) * falling(c, k)
        if w == 0:
            break
        out.append((k, w))
    return out


def weyl_compose(a: WeylOp, b: WeylOp) -> WeylOp:
    """Normal-ordered product ``a o b``."""
    if a.variables != b.variables:
        raise ValueError(f"variable mismatch: {a.variables} vs {b.variables}")
    n = len(a.variables)
    acc: dict = {}
    for (xa, da), ca in a.terms.items():
        for (xb, db), cb in b.terms.items():
            c = ca * cb
            choices = [_leibniz(da[i], xb[i]) for i in range(n)]
            for combo in product(*choices):
                w = 1
                xe = []
                de = []
                for i, (k, wi) in enumerate(combo):
                    w *= wi
                    xe.append(xa[i] + xb[i] - k)
                    de.append(da[i] + db[i] - k)
                key = (tuple(xe), tuple(de))
                term = c * w if w != 1 else c
                s = acc.get(key)
                acc[key] = term if s is None else s + term
    return WeylOp._raw(a.variables, {k: v for k, v in acc.items() if v})


def weyl_commutator(a: WeylOp, b: WeylOp) -> WeylOp:
    return weyl_compose(a, b) - weyl_compose(b, a)


def weyl_apply(op: WeylOp, p: LaurentPoly) -> LaurentPoly:
    """Act with ``op`` on the Laurent polynomial ``p``."""
    if op.variables != p.variables:
        raise ValueError(f"variable mismatch: {op.variables} vs {p.variables}")
    if any(c.den is not _ONE for c in p.terms.values()):
        # one common denominator keeps the inner sums polynomial
        q, d = p.clear_denominators()
        return weyl_apply(op, q).lazy_divide(d)
    acc: dict = {}
    for pe, pc in p.terms.items():
        # sum the small operator weights per target before touching pc
        local: dict = {}
        for (xe, de), c in op.terms.items():
            w = 1
            for m, b in zip(pe, de):
                if b:
                    w *= falling(m, b)
                    if w == 0:
                        break
            if w == 0:
                continue
            e = tuple(m - b + a for m, b, a in zip(pe, de, xe))
            s = local.get(e)
            local[e] = c * w if s is None else s + c * w
        for e, cw in local.items():
            if not cw:
                continue
            term = cw * pc
            s = acc.get(e)
            acc[e] = term if s is None else s + term
    return LaurentPoly._raw(p.variables, {e: v for e, v in acc.items() if v})


def weyl_transpose(op: WeylOp) -> WeylOp:
    """The anti-automorphism x_i <-> d_i of the polynomial Weyl algebra.

    Reversing the order of ``x^a d^b`` and swapping the letters yields
    ``x^b d^a``, which is again in normal order.
    """
    out = {}
    for (xe, de), c in op.terms.items():
        if min(xe, default=0) < 0:
            raise ValueError("transpose is only defined for polynomial coefficients")
        out[(de, xe)] = c
    return WeylOp._raw(op.variables, out)


class GaugeExponent:
    """Formal weight ``prod_j z_j^{s_j}`` with symbolic exponents."""

    __slots__ = ("exponents",)

    def __init__(self, exponents: Mapping[str, object]):
        self.exponents = {name: scalar(s) for name, s in exponents.items() if scalar(s)}

    def inverse(self) -> "GaugeExponent":
        return GaugeExponent({name: -s for name, s in self.exponents.items()})

    def __repr__(self):
        inner = ", ".join(f"{k}: {v}" for k, v in self.exponents.items())
        return f"GaugeExponent({{{inner}}})"


def weyl_gauge_conjugate(op: WeylOp, g: GaugeExponent) -> WeylOp:
    """Return ``g o op o g^-1`` using ``g d_j g^-1 = d_j - s_j / z_j``."""
    for name in g.exponents:
        if name not in op.variables:
            raise ValueError(f"gauge variable {name!r} not among {op.variables}")
    vs = op.variables
    shifted = []
    for i, name in enumerate(vs):
        d = WeylOp.d(vs, i)
        s = g.exponents.get(name)
        if s is not None:
            d = d - WeylOp.x(vs, i, -1).scale(s)
        shifted.append(d)
    return _substitute_generators(op, [WeylOp.x(vs, i) for i in range(len(vs))], shifted)


def _substitute_generators(op: WeylOp, xs, ds, target_vars=None) -> WeylOp:
    """Evaluate ``op`` on new images of x_i (Laurent monomials) and d_i."""
    target_vars = target_vars or op.variables
    cache: dict = {}

    def power(kind, i, m):
        key = (kind, i, m)
        if key not in cache:
            base = xs[i] if kind == "x" else ds[i]
            if kind == "x" and m < 0:
                cache[key] = _monomial_power(base, m)
            else:
                cache[key] = base**m
        return cache[key]

    out = WeylOp.zero(target_vars)
    for (xe, de), c in op.terms.items():
        term = WeylOp.scalar(target_vars, c)
        for i, m in enumerate(xe):
            if m:
                term = weyl_compose(term, power("x", i, m))
        for i, m in enumerate(de):
            if m:
                term = weyl_compose(term, power("d", i, m))
        out = out + term
    return out


def _monomial_power(op: WeylOp, m: int) -> WeylOp:
    if len(op.terms) != 1:
        raise ValueError("negative power of a non-monomial multiplier")
    ((xe, de), c), = op.terms.items()
    if any(de):
        raise ValueError("negative power of a differential operator")
    return WeylOp._raw(op.variables, {(tuple(m * e for e in xe), de): c**m})


def weyl_square_change_of_vars(op: WeylOp, new_names: Iterable[str] | None = None) -> WeylOp:
    """Rewrite an operator in x-variables under x_i = z_i^2.

    Multiplication by x_i becomes z_i^2 and d/dx_i becomes
    (1/2) z_i^-1 d/dz_i.  Variables are renamed x* -> z* unless
    ``new_names`` is given.
    """
    if new_names is None:
        new_names = tuple("z" + v[1:] if v.startswith("x") else "z" + v for v in op.variables)
    zs = tuple(new_names)
    if len(zs) != len(op.variables):
        raise ValueError("need one new name per variable")
    half = scalar(Fraction(1, 2))
    xs = [WeylOp.x(zs, i, 2) for i in range(len(zs))]
    ds = [WeylOp.x(zs, i, -1).scale(half) * WeylOp.d(zs, i) for i in range(len(zs))]
    return _substitute_generators(op, xs, ds, zs)
