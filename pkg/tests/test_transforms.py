from fractions import Fraction

import pytest

from racahkit.exactcore import LaurentPoly, nu, param_evaluate, xvars
from racahkit.grammar import parse_poly
from racahkit.harmonics import BasisLabel, build_basis, is_harmonic
from racahkit.transforms import (
    LaplaceMap,
    MillerForm,
    angular_operator,
    first_order_terms,
    hyperplane_eigenfunctions,
    laplace_poly,
    map_basis_laplace,
    miller_reduce,
    sphere_identity_check,
    verify_ck_commutation,
    verify_intertwine,
)
from racahkit.weyl import WeylOp, weyl_apply

X1 = xvars(1)


def test_monomial_action():
    x = LaurentPoly.var(X1, 0)
    assert laplace_poly(LaurentPoly.constant(X1, 1)) == LaurentPoly.constant(X1, 1)
    assert laplace_poly(x) == x * (2 * nu(1))
    assert laplace_poly(x * x) == x * x * (2 * nu(1) * (2 * nu(1) + 1))
    with pytest.raises(ValueError):
        laplace_poly(x ** -1)
    custom = LaplaceMap((Fraction(1, 2),))
    assert custom(x * x) == x * x * 2


def test_intertwine_plus_on_one():
    vs = xvars(3)
    image = laplace_poly(parse_poly("x1 + x2 + x3", vs))
    assert image == parse_poly("2*nu1*x1 + 2*nu2*x2 + 2*nu3*x3", vs)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_intertwine(n):
    assert verify_intertwine(4, n).passed


def test_ck_commutation():
    assert verify_ck_commutation(3, 3).passed


def test_basis_mapping_constants():
    r = map_basis_laplace(2, 1)
    assert r.details["constants"] == {"1": "2*nu1"}
    r = map_basis_laplace(3, 2)
    assert r.details["constants"]["0,2"] == "1"
    assert set(r.details["constants"]) == {"2,0", "1,1", "0,2"}


def test_laplace_maps_harmonics_to_harmonics():
    for _, p in build_basis(3, 2, "bg"):
        assert is_harmonic(laplace_poly(p), "bargmann")


def test_miller_n1():
    _, gauged, report = miller_reduce(1)
    assert report.passed
    zs = ("z1",)
    expected = WeylOp.d(zs, 0, 2) - WeylOp.x(zs, 0, -2).scale((2 * nu(1) - 1) ** 2 - Fraction(1, 4))
    assert gauged == expected
    assert first_order_terms(gauged) == []


def test_miller_coefficients():
    form = MillerForm.of(2)
    assert param_evaluate(form.b[0], {1: Fraction(3, 4)}) == 0
    assert param_evaluate(form.b[0], {1: Fraction(1, 2)}) == Fraction(-1, 4)
    _, gauged, _ = miller_reduce(2)
    at = param_evaluate(gauged, {1: Fraction(3, 4), 2: Fraction(3, 4)})
    assert at == WeylOp.d(("z1", "z2"), 0, 2) + WeylOp.d(("z1", "z2"), 1, 2)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sphere_identity(n):
    assert sphere_identity_check(n).passed


def test_angular_part_on_harmonic():
    zs = ("z1", "z2", "z3")
    p = parse_poly("z1*z2 + z3^2 - z1^2", zs)
    k, n = 2, 3
    assert weyl_apply(angular_operator(n), p) == p * (-k * (k + n - 2))
    assert weyl_apply(angular_operator(n), LaurentPoly.constant(zs, 1)).is_zero()


def test_hyperplane_examples():
    restricted, report = hyperplane_eigenfunctions(2, BasisLabel((0,)))
    assert restricted == LaurentPoly.constant(X1, 1)
    restricted, report = hyperplane_eigenfunctions(2, (1,))
    assert restricted == parse_poly("1 - (nu1 + nu2)/nu1*x1", X1)
    _, report = hyperplane_eigenfunctions(3, (1, 1))
    assert report.passed and len(report.details["constants"]) == 2
