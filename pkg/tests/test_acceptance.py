"""Acceptance criteria 1-13, one test each.

Every test prints a single ``[criterion N] PASS/FAIL`` line (visible with
``pytest -s`` or in the tee'd log) and then asserts the same verdict.
"""

import json
import random
import time
from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
import sympy as sp

from racahkit.cli import comparable, main
from racahkit.exactcore import (
    LaurentPoly,
    homogeneous_monomials,
    nu,
    param_evaluate,
    pochhammer,
    xvars,
)
from racahkit.harmonics import (
    BasisLabel,
    bg_jacobi_explicit,
    build_basis,
    ck_extend,
    ck_inverse,
    eigenvalue_lambda,
    fischer_decompose,
    hyp2f1_phi,
    is_harmonic,
    labels,
    proportionality,
    recursion_phi,
)
from racahkit.racah import CasimirFamily, SubsetTriple, check_commute, commuting_pairs, verify_F, verify_rank1
from racahkit.reduced import all_pairs, verify_reduced
from racahkit.su11 import casimir, make_realization, verify_su11
from racahkit.transforms import (
    MillerForm,
    hyperplane_eigenfunctions,
    laplace_poly,
    map_basis_laplace,
    miller_reduce,
    sphere_identity_check,
    verify_ck_commutation,
    verify_intertwine,
    zvars,
)
from racahkit.weyl import WeylOp, weyl_apply

from oracles import NU, kernel_dimension, poly_expr, same, scalar_expr

MODELS = ("bargmann", "bg")


@pytest.fixture
def verdict(capsys):
    def record(number, title, failures, note=""):
        status = "FAIL" if failures else "PASS"
        with capsys.disabled():
            print(f"\n[criterion {number}] {status}  {title}{note}")
            for f in failures[:10]:
                print(f"    {f}")
        assert not failures, f"criterion {number}: {failures[:5]}"

    return record


def subsets_of(n):
    for size in range(1, n + 1):
        yield from combinations(range(1, n + 1), size)


def test_criterion_01_su11_brackets(verdict):
    start = time.perf_counter()
    failures = []
    count = 0
    for n in range(1, 6):
        for kind in MODELS:
            for A in subsets_of(n):
                count += 1
                r = verify_su11(make_realization(n, A, kind))
                if not r.passed:
                    failures.append(f"n={n} {kind} A={A}: {r.residual_terms()[:3]}")
    elapsed = time.perf_counter() - start
    if elapsed >= 10:
        failures.append(f"runtime {elapsed:.1f}s exceeds 10s")
    verdict(1, "su(1,1) brackets", failures, f" ({count} realizations, {elapsed:.1f}s)")


def test_criterion_02_commuting_pairs(verdict):
    start = time.perf_counter()
    failures = []
    count = 0
    for kind in MODELS:
        fam = CasimirFamily(4, kind)
        for A, B in commuting_pairs(4):
            count += 1
            if not check_commute(4, A, B, kind, fam).passed:
                failures.append(f"{kind}: [C{sorted(A)}, C{sorted(B)}] != 0")
    elapsed = time.perf_counter() - start
    if elapsed >= 60:
        failures.append(f"runtime {elapsed:.1f}s exceeds 60s")
    verdict(2, "nested/disjoint Casimirs commute, n=4", failures, f" ({count} pairs, {elapsed:.1f}s)")


def test_criterion_03_rank1_and_F(verdict):
    start = time.perf_counter()
    triples = [
        (3, SubsetTriple.of(3, {1}, {2}, {3})),
        (4, SubsetTriple.of(4, {1}, {2}, {3, 4})),
        (4, SubsetTriple.of(4, {1, 2}, {3}, {4})),
    ]
    failures = []
    for kind in MODELS:
        for n, t in triples:
            fam = CasimirFamily(n, kind)
            r = verify_rank1(n, t, kind, fam)
            if r.details["level"] != "operator":
                failures.append(f"{kind} {t.as_lists()}: not checked at operator level")
            if not r.passed:
                failures.append(f"{kind} {t.as_lists()}: rank-1 residual in {sorted(r.residual)}")
            if not verify_F(n, t, kind, fam).passed:
                failures.append(f"{kind} {t.as_lists()}: the three forms of 2F differ")
    elapsed = time.perf_counter() - start
    if elapsed >= 300:
        failures.append(f"runtime {elapsed:.1f}s exceeds 5 min")
    verdict(3, "rank-1 relations and F", failures, f" ({elapsed:.1f}s)")


def test_criterion_04_diagonal_action(verdict):
    start = time.perf_counter()
    failures = []
    count = 0
    for kind in MODELS:
        for n in (3, 4):
            chain = {l: casimir(n, range(1, l + 1), kind) for l in range(2, n + 1)}
            for k in range(5):
                for lab, psi in build_basis(n, k, kind):
                    for l, C in chain.items():
                        count += 1
                        lam = eigenvalue_lambda(lab, l).value
                        if weyl_apply(C, psi) != psi * lam:
                            failures.append(f"{kind} n={n} {lab.j} level {l}")
    elapsed = time.perf_counter() - start
    if elapsed >= 120:
        failures.append(f"runtime {elapsed:.1f}s exceeds 2 min")
    verdict(4, "C_[l] psi = lambda psi", failures, f" ({count} eigen-equations, {elapsed:.1f}s)")


def test_criterion_05_dimension_oracle(verdict):
    failures = []
    for kind in MODELS:
        for n in (2, 3, 4):
            for k in range(6):
                size = len(build_basis(n, k, kind))
                expected = comb(k + n - 2, n - 2)
                rank = kernel_dimension(n, k, kind)
                if not size == expected == rank:
                    failures.append(f"{kind} n={n} k={k}: basis {size}, binomial {expected}, kernel {rank}")
    verdict(5, "basis size = binomial = kernel dimension", failures)


def _random_homogeneous(rng, n, k):
    vs = xvars(n)
    while True:
        p = LaurentPoly(vs, {e: rng.randint(-5, 5) for e in homogeneous_monomials(n, k)})
        if not p.is_zero():
            return p


def test_criterion_06_fischer_round_trip(verdict):
    rng = random.Random(20240601)
    failures = []
    count = 0
    for kind in MODELS:
        for n in range(1, 5):
            for k in range(5):
                for trial in range(50):
                    p = _random_homogeneous(rng, n, k)
                    dec = fischer_decompose(p, kind)
                    count += 1
                    if not all(is_harmonic(h, kind) for _, h in dec.components):
                        failures.append(f"{kind} n={n} k={k} #{trial}: non-harmonic component")
                    if dec.reconstruct() != p:
                        failures.append(f"{kind} n={n} k={k} #{trial}: reconstruction differs")
    verdict(6, "Fischer decomposition round trip", failures, f" ({count} polynomials)")


def _translation_form(p, n):
    """p(x1 - xn, ..., x_{n-1} - xn) computed by sympy substitution."""
    small = sp.symbols(" ".join(p.variables)) if p.nvars > 1 else (sp.Symbol(p.variables[0]),)
    xn = sp.Symbol(f"x{n}")
    return sp.expand(poly_expr(p).subs({s: s - xn for s in small}, simultaneous=True))


def test_criterion_07_ck_round_trips(verdict):
    rng = random.Random(7)
    failures = []
    for n in (2, 3, 4):
        small = xvars(n - 1)
        for k in range(6):
            samples = [LaurentPoly.monomial(small, e) for e in homogeneous_monomials(n - 1, k)]
            samples.append(_random_homogeneous(rng, n - 1, k))
            for p in samples:
                for kind in MODELS:
                    q = ck_extend(p, kind)
                    if ck_inverse(q, kind) != p:
                        failures.append(f"{kind} n={n}: inverse(extend({p})) != {p}")
                q = ck_extend(p, "bargmann")
                if not same(poly_expr(q), _translation_form(p, n)):
                    failures.append(f"n={n}: Bargmann CK of {p} is not the translation form")
    verdict(7, "CK round trips and translation form", failures)


def test_criterion_08_reduced_realization(verdict):
    start = time.perf_counter()
    cases = [(3, (1, 2), k) for k in range(5)]
    cases += [(4, B, k) for B in all_pairs(4) for k in range(4)]
    cases += [(5, B, k) for B in [(1, 2), (1, 4), (2, 4), (3, 5)] for k in range(3)]
    failures = []
    for n, B, k in cases:
        r = verify_reduced(n, k, B)
        if not r.passed:
            failures.append(f"n={n} B={B} k={k}: {r.residual[:2]}")
    elapsed = time.perf_counter() - start
    if elapsed >= 600:
        failures.append(f"runtime {elapsed:.1f}s exceeds 10 min")
    verdict(8, "printed reduced Casimirs = gauged matrices", failures, f" ({len(cases)} cases, {elapsed:.1f}s)")


def test_criterion_09_recursion_vs_hyp2f1(verdict):
    failures = []
    constants = {}
    for k in range(7):
        for j in range(k + 1):
            grown = recursion_phi(BasisLabel((j, k - j)))
            c = proportionality(grown, hyp2f1_phi(k, j))
            if c is None or c.is_zero():
                failures.append(f"k={k} j={j}: recursion is not a multiple of 2F1")
                continue
            constants[(k, j)] = c
            if c != pochhammer(2 * nu(1) + j, k - j):
                failures.append(f"k={k} j={j}: constant {c} differs from (2nu1+j)_(k-j)")
    log = "; ".join(f"k={k},j={j}: {c}" for (k, j), c in sorted(constants.items()) if k == 6)
    verdict(9, "recursion reproduces 2F1 up to constants", failures, f" (k=6 constants: {log})")


def test_criterion_10_jacobi_explicit(verdict):
    failures = []
    for n in (3, 4):
        for k in range(5):
            for lab, psi in build_basis(n, k, "bg"):
                if bg_jacobi_explicit(lab) != psi:
                    failures.append(f"n={n} {lab.j}")
    verdict(10, "Jacobi closed form = BG basis", failures)


def test_criterion_11_laplace_suite(verdict):
    failures = []
    for n in (1, 2, 3):
        vs = xvars(n)
        for d in range(7):
            for e in homogeneous_monomials(n, d):
                weight = 1
                for i, m in enumerate(e, start=1):
                    weight *= sp.rf(2 * NU[i - 1], m)
                mono = LaurentPoly.monomial(vs, e)
                if not same(poly_expr(laplace_poly(mono)), weight * poly_expr(mono)):
                    failures.append(f"monomial action on {mono}")
        if not verify_intertwine(6, n).passed:
            failures.append(f"intertwining fails for n={n}")
    for n in (2, 3):
        if not verify_ck_commutation(n, 6).passed:
            failures.append(f"CK commutation fails for n={n}")
    recorded = {}
    for k in range(4):
        r = map_basis_laplace(3, k)
        recorded.update(r.details["constants"])
        for key, text in r.details["constants"].items():
            j1 = int(key.split(",")[0])
            if sp.sympify(text, locals=dict(nu1=NU[0])) != sp.expand(sp.rf(2 * NU[0], j1)):
                failures.append(f"label {key}: constant {text}")
    note = " (constants: " + ", ".join(f"{k}->{v}" for k, v in sorted(recorded.items())) + ")"
    verdict(11, "Laplace transform suite", failures, note)


def _apply_to_function(op, f, syms):
    out = 0
    for (xe, de), c in op.terms.items():
        g = f
        for s, m in zip(syms, de):
            if m:
                g = sp.diff(g, s, m)
        out += scalar_expr(c) * sp.Mul(*[s**a for s, a in zip(syms, xe)]) * g
    return out


def _miller_oracle(n):
    """z^s (4 L_-) z^-s on a generic f, BG lowering rewritten with x = z^2."""
    zs = sp.symbols(" ".join(zvars(n))) if n > 1 else (sp.Symbol("z1"),)
    f = sp.Function("f")(*zs)
    weight = sp.Mul(*[z ** (2 * NU[j] - sp.Rational(1, 2)) for j, z in enumerate(zs)])
    g = f / weight
    total = 0
    for j, z in enumerate(zs):
        D = lambda h: sp.diff(h, z) / (2 * z)
        total += z**2 * D(D(g)) + 2 * NU[j] * D(g)
    return zs, f, sp.expand(weight * 4 * total)


def test_criterion_12_miller(verdict):
    failures = []
    for n in range(1, 5):
        _, gauged, report = miller_reduce(n)
        vs = zvars(n)
        expected = WeylOp.zero(vs)
        for j in range(n):
            b = (2 * nu(j + 1) - 1) ** 2 - Fraction(1, 4)
            expected = expected + WeylOp.d(vs, j, 2) - WeylOp.x(vs, j, -2).scale(b)
        if not report.passed or gauged != expected:
            failures.append(f"n={n}: gauged operator is not Delta - sum b_j z_j^-2")
        zs, f, oracle = _miller_oracle(n)
        if not same(_apply_to_function(gauged, f, zs), oracle):
            failures.append(f"n={n}: sympy pipeline disagrees")
        for j, b in enumerate(MillerForm.of(n).b, start=1):
            if param_evaluate(b, {j: Fraction(3, 4)}, strict=False) != 0:
                failures.append(f"n={n}: b_{j} does not vanish at nu_{j} = 3/4")
    for n in (2, 3, 4):
        if not sphere_identity_check(n).passed:
            failures.append(f"sphere identity residual for n={n}")
    constants = {}
    for k in range(4):
        for lab in labels(3, k):
            try:
                _, r = hyperplane_eigenfunctions(3, lab)
            except AssertionError as exc:
                failures.append(f"hyperplane {lab.j}: {exc}")
                continue
            if not r.passed:
                failures.append(f"hyperplane {lab.j}")
            constants[lab.j] = r.details["constants"]
    note = f" ({len(constants)} hyperplane labels, e.g. (1,1) -> {constants.get((1, 1))})"
    verdict(12, "Miller identification", failures, note)


def _cli(argv, path):
    code = main(argv + ["--out", str(path)])
    return code, path.read_bytes()


def test_criterion_13_cli_contract(verdict, tmp_path, capsys):
    failures = []
    runs = [
        ["su11", "--n", "3", "--model", "bg"],
        ["racah", "verify", "--n", "3", "--model", "bargmann"],
        ["basis", "--n", "3", "--k", "2", "--model", "bg", "--nu", "1=1/2"],
        ["reduced", "verify", "--n", "4", "--k", "1", "--all-pairs"],
        ["laplace", "verify", "--n", "2", "--degree", "3"],
        ["miller", "reduce", "--n", "3", "--emit", "text"],
    ]
    for i, argv in enumerate(runs):
        c1, a = _cli(argv, tmp_path / f"a{i}")
        c2, b = _cli(argv, tmp_path / f"b{i}")
        if (c1, c2) != (0, 0):
            failures.append(f"{argv}: exit codes {c1}, {c2}")
        if a != b:
            failures.append(f"{argv}: reports differ byte-wise")
    # comparison mode: timings present but ignored
    _, a = _cli(["su11", "--n", "2", "--timings"], tmp_path / "ta")
    _, b = _cli(["su11", "--n", "2", "--timings"], tmp_path / "tb")
    da, db = json.loads(a), json.loads(b)
    if "elapsed_ms" not in da or comparable(da) != comparable(db):
        failures.append("timed reports differ outside elapsed_ms")
    for argv in (["su11", "--n", "0"], ["basis", "--n", "3"], ["su11", "--n", "2", "--subset", "1,7"]):
        code = main(argv)
        err = capsys.readouterr().err
        if code != 2 or "error" not in err:
            failures.append(f"{argv}: expected exit 2 with a diagnostic, got {code}")
    with pytest.raises(SystemExit) as exc:
        main(["su11", "--model", "hermite"])
    capsys.readouterr()
    if exc.value.code != 2:
        failures.append("argparse errors should exit 2")

    import racahkit.cli as cli
    from racahkit.report import VerificationReport

    def broken(cfg, suite):
        suite.reports.append(VerificationReport("forced", 1, "bg", residual=["x"], passed=False))

    saved = cli.COMMANDS["su11"]
    cli.COMMANDS["su11"] = broken
    try:
        code = main(["su11", "--n", "1"])
        capsys.readouterr()
    finally:
        cli.COMMANDS["su11"] = saved
    if code != 1:
        failures.append(f"a failing verification should exit 1, got {code}")
    verdict(13, "CLI determinism and exit codes", failures)
