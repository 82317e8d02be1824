import random
from math import comb, factorial

import pytest

from racahkit.exactcore import LaurentPoly, homogeneous_monomials, nu, param_evaluate, xvars
from racahkit.grammar import parse_poly
from racahkit.harmonics import (
    BasisLabel,
    BasisOrder,
    NotHarmonic,
    basis_element,
    bg_jacobi_explicit,
    build_basis,
    ck_extend,
    ck_inverse,
    eigenvalue_lambda,
    fischer_decompose,
    fischer_decompose_linear,
    hyp2f1_phi,
    is_harmonic,
    jacobi_gamma_form,
    jacobi_homogeneous,
    jacobi_p,
    labels,
    phi_to_x,
    proportionality,
    recursion_apply,
    recursion_phi,
    suind_coeff,
    uvars,
    x_to_phi,
)
from racahkit.su11 import casimir, make_realization
from racahkit.weyl import weyl_apply

from oracles import kernel_dimension

X2 = xvars(2)
X3 = xvars(3)


def test_ck_examples():
    x1 = LaurentPoly.var(xvars(1), 0)
    for j in range(4):
        assert ck_extend(x1**j, "bargmann") == parse_poly(f"(x1 - x2)^{j}", X2)
    assert ck_extend(x1, "bg") == parse_poly("x1 - nu1/nu2*x2", X2)
    one = LaurentPoly.constant(xvars(1), 1)
    assert ck_extend(one, "bg") == LaurentPoly.constant(X2, 1)
    assert ck_inverse(parse_poly("x1 - nu1/nu2*x2", X2), "bg") == x1


def test_ck_rejects_bad_input():
    with pytest.raises(ValueError):
        ck_extend(parse_poly("x1^2 + x1", ["x1"]), "bg")
    with pytest.raises(NotHarmonic):
        ck_inverse(parse_poly("x1^2", X2), "bargmann")


def test_fischer_small_example():
    p = parse_poly("x1", X2)
    dec = fischer_decompose(p, "bargmann")
    assert dec.reconstruct() == p
    h1, h0 = dec.component(0), dec.component(1)
    assert is_harmonic(h1, "bargmann") and h0.degree() == 0
    # K+ 1 = 2 nu1 x1 + 2 nu2 x2, so h0 = 1/(2 nu1 + 2 nu2)
    assert h0 == LaurentPoly.constant(X2, 1 / (2 * nu(1) + 2 * nu(2)))
    lin = fischer_decompose_linear(p, "bargmann")
    assert lin.components == dec.components


def test_fischer_of_harmonic():
    p = basis_element(BasisLabel((1, 1)), "bg")
    dec = fischer_decompose(p, "bg")
    assert dec.component(0) == p
    assert all(h.is_zero() for j, h in dec.components if j)


@pytest.mark.parametrize("kind", ["bargmann", "bg"])
def test_fischer_agrees_with_linear_solve(kind):
    rng = random.Random(7)
    for _ in range(3):
        p = LaurentPoly(X3)
        for e in homogeneous_monomials(3, 3):
            p = p + LaurentPoly.monomial(X3, e, rng.randint(-3, 3))
        assert fischer_decompose(p, kind).components == fischer_decompose_linear(p, kind).components


def test_suind_coeff():
    assert suind_coeff(1, 0, 1, 1) == 2 * nu(1)
    assert suind_coeff(4, 2, 0, 3) == 1
    assert suind_coeff(2, 0, 2, 1) == 2 * (2 * nu(1)) * (2 * nu(1) + 1)
    with pytest.raises(ValueError):
        suind_coeff(1, 0, 2, 1)
    t = make_realization(1, [1], "bg")
    one = LaurentPoly.constant(xvars(1), 1)
    up2 = weyl_apply(t.plus, weyl_apply(t.plus, one))
    assert weyl_apply(t.minus, weyl_apply(t.minus, up2)) == one * suind_coeff(2, 0, 2, 1)


def test_basis_examples_n3():
    basis = dict(build_basis(3, 1, "bargmann"))
    assert basis[BasisLabel((1, 0))] == parse_poly("x1 - x2", X3)
    assert basis[BasisLabel((0, 1))] == parse_poly("2*nu1*(x1 - x3) + 2*nu2*(x2 - x3)", X3)
    assert [lab.j for lab in labels(3, 2)] == [(2, 0), (1, 1), (0, 2)]


@pytest.mark.parametrize("kind", ["bargmann", "bg"])
@pytest.mark.parametrize("n,k", [(2, 3), (3, 2), (3, 3), (4, 2)])
def test_basis_dimension_matches_kernel_rank(kind, n, k):
    basis = build_basis(n, k, kind)
    assert len(basis) == comb(k + n - 2, n - 2) == kernel_dimension(n, k, kind)
    assert all(is_harmonic(p, kind) for _, p in basis)


def test_eigenvalues():
    lab = BasisLabel((1, 0))
    assert param_evaluate(eigenvalue_lambda(lab, 2).value, {1: 1, 2: 1}) == 6
    psi = basis_element(lab, "bargmann")
    image = weyl_apply(casimir(3, [1, 2], "bargmann"), psi)
    assert param_evaluate(proportionality(image, psi), {1: 1, 2: 1}) == 6
    s = nu(1) + nu(2) + nu(3) + 2
    assert eigenvalue_lambda(BasisLabel((0, 2)), 3).value == s * (s - 1)
    with pytest.raises(ValueError):
        eigenvalue_lambda(lab, 1)


@pytest.mark.parametrize("kind", ["bargmann", "bg"])
def test_permuted_basis_diagonalizes_reversed_chain(kind):
    for lab, p in build_basis(3, 2, kind, BasisOrder.PERMUTED):
        img = weyl_apply(casimir(3, [2, 3], kind), p)
        assert proportionality(img, p) is not None


def test_jacobi_forms_agree():
    vs = ("u", "v")
    u, v = LaurentPoly.var(vs, 0), LaurentPoly.var(vs, 1)
    a, b = 2 * nu(1) - 1, 2 * nu(2) - 1
    for m in range(4):
        # the Gamma-ratio form carries an extra m!
        assert jacobi_homogeneous(m, a, b, u, v) * factorial(m) == jacobi_gamma_form(m, a, b, u, v)
    # P_1^(a,b)(t) = (a+1) + (a+b+2)(t-1)/2
    a, b = nu(1), nu(2)
    expected = parse_poly("(nu1 + 1) + (nu1 + nu2 + 2)*(t - 1)/2", ["t"])
    assert jacobi_p(1, a, b) == expected


def test_jacobi_explicit_small():
    assert bg_jacobi_explicit(BasisLabel((1,))) == parse_poly("x1 - nu1/nu2*x2", X2)
    assert bg_jacobi_explicit(BasisLabel((0, 0))) == LaurentPoly.constant(X3, 1)
    for lab, p in build_basis(3, 2, "bg"):
        assert bg_jacobi_explicit(lab) == p


def test_hyp2f1_examples():
    assert hyp2f1_phi(3, 3) == LaurentPoly.constant(("u1",), 1)
    assert hyp2f1_phi(1, 0) == parse_poly("1 - (nu1 + nu2)/nu1*u1", ["u1"])


def test_recursion_examples():
    one = LaurentPoly.constant(uvars(3), 1)
    step = recursion_apply(2, 0, one)
    assert step == parse_poly("2*nu1 - (2*nu1 + 2*nu2)*u1", ["u1"])
    assert proportionality(step, hyp2f1_phi(1, 0)) == 2 * nu(1)
    assert recursion_apply(2, 3, LaurentPoly(uvars(3))).is_zero()


@pytest.mark.parametrize("n,k", [(3, 3), (4, 2)])
def test_recursion_rebuilds_bargmann_basis(n, k):
    for lab, p in build_basis(n, k, "bargmann"):
        phi = recursion_phi(lab)
        assert phi_to_x(phi, n, k) == p
        assert x_to_phi(p, n) == phi
