"""Exact coefficient arithmetic and Laurent polynomials.

Coefficients are rational functions in the parameters ``nu1 .. nu12`` and an
auxiliary integer-valued parameter ``k``.  Numerators and denominators are
sparse polynomials over QQ (sympy's ``PolyElement``, gmpy2-backed), wrapped in
:class:`ParamScalar` which keeps them in a canonical reduced form.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, ring

MAX_PARAMS = 12
PARAM_NAMES = tuple(f"nu{i}" for i in range(1, MAX_PARAMS + 1)) + ("k",)
PARAM_RING, *_GENS = ring(list(PARAM_NAMES), QQ, grlex)
_PARAM_INDEX = {name: i for i, name in enumerate(PARAM_NAMES)}
_ZERO_POLY = PARAM_RING.zero
_ONE = PARAM_RING.one


class VanishingDenominator(ZeroDivisionError):
    pass


class MissingParameter(KeyError):
    pass


Number = Union[int, Fraction]


def _qq(c) -> object:
    if isinstance(c, Fraction):
        return QQ(c.numerator, c.denominator)
    return QQ(c)


def _to_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


class ParamScalar:
    """Exact element of QQ(nu1, ..., nu12, k).

    Arithmetic keeps the denominator monic but cancels common factors lazily:
    sums and products with a polynomial skip the gcd, quotients and products
    of two fractions reduce fully.  Equality is decided by cross-multiplication,
    and :meth:`normalized` produces the canonical reduced form used for
    hashing and printing.  A polynomial value has ``den`` identical to the
    ring's one, which lets arithmetic skip denominator work entirely.
    """

    __slots__ = ("num", "den", "red")

    def __init__(self, value=0, den=None):
        if isinstance(value, ParamScalar):
            num, d = value.num, value.den
        elif isinstance(value, PolyElement):
            num, d = value, _ONE
        elif isinstance(value, str):
            num, d = _parse_param(value)
        else:
            num, d = PARAM_RING(_qq(value)), _ONE
        if den is not None:
            other = den if isinstance(den, ParamScalar) else ParamScalar(den)
            if other.is_zero():
                raise VanishingDenominator("division by zero")
            num, d = num * other.den, d * other.num
        self.num, self.den = _reduce(num, d)
        self.red = True

    @classmethod
    def _raw(cls, num, den, red=False):
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj.red = red
        return obj

    def normalized(self) -> "ParamScalar":
        """Cancel common factors in place and return self."""
        if not self.red and self.den is not _ONE:
            self.num, self.den = _reduce(self.num, self.den)
        self.red = True
        return self

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return self.normalized().den is _ONE

    def is_constant(self) -> bool:
        return self.is_polynomial() and self.num.is_ground

    def __bool__(self):
        return bool(self.num)

    def params(self) -> set[str]:
        """Names of the parameters that actually occur."""
        self.normalized()
        used = set()
        for poly in (self.num, self.den):
            for monom in poly.itermonoms():
                used.update(PARAM_NAMES[i] for i, e in enumerate(monom) if e)
        return used

    def as_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return _to_fraction(self.num.LC) if self.num else Fraction(0)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, ParamScalar):
            try:
                other = scalar(other)
            except TypeError:
                return NotImplemented
        d1, d2 = self.den, other.den
        if d1 is _ONE and d2 is _ONE:
            return ParamScalar._raw(self.num + other.num, _ONE)
        if d1 is _ONE:
            return ParamScalar._raw(*_light(self.num * d2 + other.num, d2))
        if d2 is _ONE:
            return ParamScalar._raw(*_light(self.num + other.num * d1, d1))
        if d1 == d2:
            return ParamScalar._raw(*_light(self.num + other.num, d1))
        c1, c2 = _den_cofactors(d1, d2)
        return ParamScalar._raw(*_light(self.num * c2 + other.num * c1, d1 * c2))

    __radd__ = __add__

    def __neg__(self):
        return ParamScalar._raw(-self.num, self.den, self.red)

    def __sub__(self, other):
        return self + (-scalar(other))

    def __rsub__(self, other):
        return scalar(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return ParamScalar._raw(self.num * other, self.den, self.red)
        if not isinstance(other, ParamScalar):
            try:
                other = scalar(other)
            except TypeError:
                return NotImplemented
        if self.den is _ONE and other.den is _ONE:
            return ParamScalar._raw(_pmul(self.num, other.num), _ONE)
        if self.den is _ONE or other.den is _ONE:
            return ParamScalar._raw(*_light(_pmul(self.num, other.num), self.den * other.den))
        return ParamScalar._raw(*_reduce(self.num * other.num, self.den * other.den), True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = scalar(other)
        if other.is_zero():
            raise VanishingDenominator("division by zero")
        return ParamScalar._raw(*_reduce(self.num * other.den, self.den * other.num), True)

    def __rtruediv__(self, other):
        return scalar(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return ONE / (self ** (-e))
        if e == 0:
            return ONE
        self.normalized()
        return ParamScalar._raw(self.num**e, self.den**e if self.den is not _ONE else _ONE, True)

    def __eq__(self, other):
        if not isinstance(other, ParamScalar):
            try:
                other = scalar(other)
            except TypeError:
                return NotImplemented
        if self.den is other.den or self.den == other.den:
            return self.num == other.num
        # cross-multiplication keeps equality sound without a canonical form
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        self.normalized()
        return hash((self.num, self.den))

    def __repr__(self):
        return f"ParamScalar({str(self)!r})"

    def __str__(self):
        return format_scalar(self)

    def evaluate(self, values: Mapping, strict: bool = True) -> "ParamScalar":
        return param_evaluate(self, values, strict=strict)


def _pmul(a, b):
    """Polynomial product with a shortcut for single-term factors."""
    if len(a) == 1:
        return b.mul_term(next(iter(a.items()))) if b else b
    if len(b) == 1:
        return a.mul_term(next(iter(b.items()))) if a else a
    return a * b


_COFACTOR_CACHE: dict = {}


def _den_cofactors(d1, d2):
    """(d1/g, d2/g) for g = gcd(d1, d2); denominators recur, so memoize."""
    key = (d1, d2)
    hit = _COFACTOR_CACHE.get(key)
    if hit is None:
        if len(_COFACTOR_CACHE) > 50000:
            _COFACTOR_CACHE.clear()
        _, c1, c2 = d1.cofactors(d2)
        hit = _COFACTOR_CACHE[key] = (c1, c2)
    return hit


def _light(num, den):
    """Fold constant denominators, no gcd.

    Denominators built from monic factors stay monic, so the leading
    coefficient (costly to locate in a large polynomial) is left alone.
    """
    if not num:
        return _ZERO_POLY, _ONE
    if den is _ONE:
        return num, _ONE
    if den.is_ground:
        return num.quo_ground(den.LC), _ONE
    return num, den


def _reduce(num, den):
    if not num:
        return _ZERO_POLY, _ONE
    if den is _ONE:
        return num, _ONE
    if not den:
        raise VanishingDenominator("zero denominator")
    if den.is_ground:
        return num.quo_ground(den.LC), _ONE
    num, den = num.cancel(den)
    lc = den.LC
    if lc != 1:
        num, den = num.quo_ground(lc), den.quo_ground(lc)
    if den.is_ground:
        return num, _ONE
    return num, den


ZERO = ParamScalar._raw(_ZERO_POLY, _ONE)
ONE = ParamScalar._raw(_ONE, _ONE)


def scalar(value) -> ParamScalar:
    """Coerce ints, Fractions, parameter names or polys to a ParamScalar."""
    if isinstance(value, ParamScalar):
        return value
    if isinstance(value, (int, Fraction, PolyElement, str)):
        return ParamScalar(value)
    if type(value).__name__ == "mpq":
        return ParamScalar._raw(PARAM_RING(value), _ONE)
    raise TypeError(f"cannot coerce {type(value).__name__} to ParamScalar")


def nu(i: int) -> ParamScalar:
    """The symbolic parameter nu_i (1-based)."""
    if not 1 <= i <= MAX_PARAMS:
        raise ValueError(f"parameter index {i} outside 1..{MAX_PARAMS}")
    return ParamScalar._raw(_GENS[i - 1], _ONE)


K = ParamScalar._raw(_GENS[MAX_PARAMS], _ONE)


def nu_sum(indices: Iterable[int]) -> ParamScalar:
    total = ZERO
    for i in indices:
        total = total + nu(i)
    return total


def pochhammer(a, m: int) -> ParamScalar:
    """Rising factorial (a)_m = Gamma(a+m)/Gamma(a)."""
    if m < 0:
        raise ValueError("pochhammer index must be nonnegative")
    a = scalar(a)
    out = ONE
    for i in range(m):
        out = out * (a + i)
    return out


def binomial(a, s: int) -> ParamScalar:
    """Generalized binomial coefficient binom(a, s) for symbolic a."""
    a = scalar(a)
    out = ONE
    for i in range(s):
        out = out * (a - i)
    fact = 1
    for i in range(2, s + 1):
        fact *= i
    return out * Fraction(1, fact)


def falling(c: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= c - i
    return out


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------


def grlex_key(exps: tuple) -> tuple:
    return (sum(exps), exps)


class LaurentPoly:
    """Sparse polynomial with integer (possibly negative) exponents.

    ``terms`` maps exponent tuples to nonzero :class:`ParamScalar`
    coefficients; ``variables`` fixes the meaning of each slot.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping | None = None):
        self.variables = tuple(variables)
        clean = {}
        if terms:
            n = len(self.variables)
            for exps, c in terms.items():
                exps = tuple(exps)
                if len(exps) != n:
                    raise ValueError(f"exponent {exps} does not match {n} variables")
                c = scalar(c)
                if c:
                    clean[exps] = c
        self.terms = clean

    @classmethod
    def _raw(cls, variables, terms):
        obj = object.__new__(cls)
        obj.variables = variables
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, variables, c=1) -> "LaurentPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables, name_or_index, power: int = 1) -> "LaurentPoly":
        variables = tuple(variables)
        i = _index(variables, name_or_index)
        exps = [0] * len(variables)
        exps[i] = power
        return cls._raw(variables, {tuple(exps): ONE})

    @classmethod
    def monomial(cls, variables, exps, c=1) -> "LaurentPoly":
        return cls(variables, {tuple(exps): c})

    # -- inspection -------------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def is_polynomial(self) -> bool:
        """True when no exponent is negative."""
        return all(min(e, default=0) >= 0 for e in self.terms)

    def homogeneous_part(self, d: int) -> "LaurentPoly":
        return LaurentPoly._raw(
            self.variables, {e: c for e, c in self.terms.items() if sum(e) == d}
        )

    def coefficient(self, exps) -> ParamScalar:
        return self.terms.get(tuple(exps), ZERO)

    def params(self) -> set[str]:
        used = set()
        for c in self.terms.values():
            used |= c.params()
        return used

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "LaurentPoly"):
        if self.variables != other.variables:
            raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        return LaurentPoly.constant(self.variables, scalar(other))

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            if s is None:
                terms[e] = c
            else:
                s = s + c
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return LaurentPoly._raw(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            try:
                c = scalar(other)
            except TypeError:
                return NotImplemented
            if not c:
                return LaurentPoly._raw(self.variables, {})
            return LaurentPoly._raw(self.variables, {e: v * c for e, v in self.terms.items()})
        self._check(other)
        acc: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = acc.get(e)
                acc[e] = c if s is None else s + c
        return LaurentPoly._raw(self.variables, {e: c for e, c in acc.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = scalar(other)
        return self * (ONE / c)

    def __pow__(self, m: int):
        if m < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials may be raised to negative powers")
            (e, c), = self.terms.items()
            return LaurentPoly._raw(
                self.variables, {tuple(m * x for x in e): c ** m}
            )
        out = LaurentPoly.constant(self.variables, 1)
        base = self
        while m:
            if m & 1:
                out = out * base
            m >>= 1
            if m:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.variables == other.variables and self.terms == other.terms
        try:
            return self == self._coerce(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __repr__(self):
        return f"LaurentPoly({self.variables!r}, {str(self)!r})"

    def __str__(self):
        return format_terms(
            [(c, _format_monomial(self.variables, e)) for e, c in self.sorted_terms()]
        )

    # -- structural maps --------------------------------------------------
    def map_coefficients(self, fn) -> "LaurentPoly":
        out = {}
        for e, c in self.terms.items():
            c = scalar(fn(c))
            if c:
                out[e] = c
        return LaurentPoly._raw(self.variables, out)

    def with_variables(self, variables: Iterable[str]) -> "LaurentPoly":
        """Re-express in a variable list containing all used variables."""
        variables = tuple(variables)
        pos = {name: i for i, name in enumerate(variables)}
        out = {}
        for e, c in self.terms.items():
            new = [0] * len(variables)
            for name, x in zip(self.variables, e):
                if x:
                    if name not in pos:
                        raise ValueError(f"variable {name} missing from {variables}")
                    new[pos[name]] = x
            out[tuple(new)] = c
        return LaurentPoly._raw(variables, out)

    def rename(self, mapping: Mapping[str, str]) -> "LaurentPoly":
        return LaurentPoly._raw(
            tuple(mapping.get(v, v) for v in self.variables), dict(self.terms)
        )

    def clear_denominators(self) -> tuple["LaurentPoly", "ParamScalar"]:
        """Return (q, d) with q = d * self, q having polynomial coefficients."""
        den = _ONE
        for c in self.terms.values():
            if c.den is not _ONE and c.den != den:
                den = den * _den_cofactors(den, c.den)[1] if den is not _ONE else c.den
        if den is _ONE:
            return self, ONE
        out = {}
        for e, c in self.terms.items():
            if c.den is _ONE:
                out[e] = ParamScalar._raw(c.num * den, _ONE)
            elif c.den is den or c.den == den:
                out[e] = ParamScalar._raw(c.num, _ONE)
            else:
                out[e] = ParamScalar._raw(c.num * den.exquo(c.den), _ONE)
        return LaurentPoly._raw(self.variables, out), ParamScalar._raw(den, _ONE)

    def lazy_divide(self, d: "ParamScalar") -> "LaurentPoly":
        """Divide every coefficient by the polynomial ``d`` without cancelling."""
        if d.den is not _ONE:
            raise ValueError("lazy_divide expects a polynomial divisor")
        if d.num == _ONE:
            return self
        out = {e: ParamScalar._raw(*_light(c.num, c.den * d.num)) for e, c in self.terms.items()}
        return LaurentPoly._raw(self.variables, out)

    def subs_value(self, name_or_index, value) -> "LaurentPoly":
        """Substitute a scalar for one variable; that slot becomes exponent 0."""
        i = _index(self.variables, name_or_index)
        v = scalar(value)
        out = LaurentPoly._raw(self.variables, {})
        for e, c in self.terms.items():
            if e[i] < 0 and not v:
                raise VanishingDenominator(f"{self.variables[i]} = 0 in a Laurent term")
            ne = e[:i] + (0,) + e[i + 1:]
            term = c * v ** e[i]
            if term:
                out = out + LaurentPoly._raw(self.variables, {ne: term})
        return out

    def drop_variable(self, name_or_index) -> "LaurentPoly":
        i = _index(self.variables, name_or_index)
        if any(e[i] for e in self.terms):
            raise ValueError(f"{self.variables[i]} still occurs")
        return LaurentPoly._raw(
            self.variables[:i] + self.variables[i + 1:],
            {e[:i] + e[i + 1:]: c for e, c in self.terms.items()},
        )


def _index(variables, name_or_index) -> int:
    if isinstance(name_or_index, int):
        if not 0 <= name_or_index < len(variables):
            raise IndexError(name_or_index)
        return name_or_index
    try:
        return variables.index(name_or_index)
    except ValueError:
        raise ValueError(f"unknown variable {name_or_index!r}") from None


def xvars(n: int, prefix: str = "x") -> tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(1, n + 1))


def homogeneous_monomials(n: int, k: int):
    """Exponent tuples of total degree k in n variables, grlex-descending."""
    if n == 0:
        return [()] if k == 0 else []
    out = []
    for first in range(k, -1, -1):
        for rest in homogeneous_monomials(n - 1, k - first):
            out.append((first,) + rest)
    return out


def poly_affine_substitute(p: LaurentPoly, subst: Mapping[str, LaurentPoly]) -> LaurentPoly:
    """Replace variables of ``p`` by affine polynomials and expand.

    Substitution images must live in a common variable list, which becomes
    the variable list of the result.  Variables of ``p`` not mentioned in
    ``subst`` are carried over unchanged (they must exist in the target list).
    """
    if not p.is_polynomial():
        raise ValueError("affine substitution needs nonnegative exponents")
    for name in subst:
        if name not in p.variables:
            raise ValueError(f"cannot substitute {name!r}: not a variable of p")
    images = list(subst.values())
    if images:
        target = images[0].variables
    else:
        target = p.variables
    for img in images:
        if img.variables != target:
            raise ValueError("substitution images use different variable lists")
        if not img.is_polynomial() or img.degree() > 1:
            raise ValueError("substitution images must be affine polynomials")
    factors = []
    for name in p.variables:
        if name in subst:
            factors.append(subst[name])
        else:
            factors.append(LaurentPoly.var(target, name))
    powers: list[dict[int, LaurentPoly]] = [dict() for _ in factors]

    def power(i, m):
        cache = powers[i]
        if m not in cache:
            cache[m] = factors[i] ** m
        return cache[m]

    out = LaurentPoly._raw(target, {})
    for e, c in p.terms.items():
        term = LaurentPoly.constant(target, c)
        for i, m in enumerate(e):
            if m:
                term = term * power(i, m)
        out = out + term
    return out


def param_evaluate(s, values: Mapping, strict: bool = True):
    """Substitute rational values for parameters.

    ``values`` maps parameter names (``"nu1"``, ``"k"``) or 1-based integer
    indices of nu to rationals.  With ``strict`` every parameter that occurs
    must be given.
    """
    subs = []
    given = set()
    for key, val in values.items():
        name = f"nu{key}" if isinstance(key, int) else key
        if name not in _PARAM_INDEX:
            raise MissingParameter(f"unknown parameter {key!r}")
        given.add(name)
        subs.append((_GENS[_PARAM_INDEX[name]], _qq(Fraction(val))))
    if isinstance(s, LaurentPoly):
        cache: dict = {}

        def ev(c):
            if c not in cache:
                cache[c] = param_evaluate(c, values, strict)
            return cache[c]

        return s.map_coefficients(ev)
    if hasattr(s, "map_coefficients"):
        return s.map_coefficients(lambda c: param_evaluate(c, values, strict))
    s = scalar(s)
    if strict:
        missing = s.params() - given
        if missing:
            raise MissingParameter(f"no value for {sorted(missing)}")
    num = s.num.subs(subs) if subs else s.num
    if s.den is _ONE:
        return ParamScalar._raw(num, _ONE)
    den = s.den.subs(subs) if subs else s.den
    if not den:
        raise VanishingDenominator(f"denominator {format_param_poly(s.den)} vanishes")
    return ParamScalar._raw(*_reduce(num, den))


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------


def _format_rational(c) -> str:
    c = _to_fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _format_monomial(variables, exps) -> str:
    parts = []
    for name, e in zip(variables, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _signed_param_terms(poly):
    """Yield (negative, text) for each term of a parameter polynomial."""
    for monom, coeff in poly.terms():
        mono = _format_monomial(PARAM_NAMES, monom)
        neg = coeff < 0
        mag = -coeff if neg else coeff
        if mono and mag == 1:
            text = mono
        elif mono:
            text = f"{_format_rational(mag)}*{mono}"
        else:
            text = _format_rational(mag)
        yield neg, text


def format_param_poly(poly) -> str:
    if not poly:
        return "0"
    out = []
    for i, (neg, text) in enumerate(_signed_param_terms(poly)):
        if i == 0:
            out.append(f"-{text}" if neg else text)
        else:
            out.append(f" - {text}" if neg else f" + {text}")
    return "".join(out)


def format_scalar(c: ParamScalar) -> str:
    c.normalized()
    if c.den is _ONE:
        return format_param_poly(c.num)
    num, den = _display_fraction(c.num, c.den)
    top = format_param_poly(num)
    if len(num) > 1:
        top = f"({top})"
    bottom = format_param_poly(den)
    (e, coeff), = den.terms() if len(den) == 1 else ((None, None),)
    if not (coeff == 1 and e is not None and sum(1 for a in e if a) == 1):
        bottom = f"({bottom})"
    return f"{top}/{bottom}"


def _display_fraction(num, den):
    """Integer numerator and denominator, coprime contents, positive leading term."""
    mult, den = den.clear_denoms()
    num = num * mult
    nmult, num = num.clear_denoms()
    den = den * nmult
    g = PARAM_RING.domain.gcd(num.content(), den.content())
    num, den = num.quo_ground(g), den.quo_ground(g)
    if den.LC < 0:
        num, den = -num, -den
    return num, den


def format_terms(pairs) -> str:
    """Join (coefficient, monomial text) pairs into ``a*m1 + b*m2`` form."""
    if not pairs:
        return "0"
    out = []
    for i, (c, mono) in enumerate(pairs):
        neg, body = _format_coefficient(c, mono)
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def _format_coefficient(c: ParamScalar, mono: str):
    c.normalized()
    if c.den is _ONE and len(c.num) == 1:
        (neg, text), = _signed_param_terms(c.num)
        if not mono:
            return neg, text
        if text == "1":
            return neg, mono
        return neg, f"{text}*{mono}"
    neg = False
    if c.den is _ONE:
        text = f"({format_param_poly(c.num)})"
    else:
        if _display_fraction(c.num, c.den)[0].LC < 0:
            neg, c = True, -c
        text = format_scalar(c)
    return neg, f"{text}*{mono}" if mono else text


def _parse_param(text: str):
    from .grammar import parse_scalar

    c = parse_scalar(text)
    return c.num, c.den


_NATURAL = re.compile(r"(\D*)(\d*)")


def natural_key(name: str):
    m = _NATURAL.fullmatch(name)
    if m and m.group(2):
        return (m.group(1), int(m.group(2)))
    return (name, -1)
