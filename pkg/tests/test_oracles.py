import math
import random

import numpy as np
import pytest

from reskit.algebra import ParamPoly, PolySystem, Polynomial, mpq, parse_polynomial
from reskit.oracles import (ComplexApprox, DenseMatrix, OracleInconclusive, det_bareiss,
                            det_expansion, determinant_resultant, macaulay_matrix,
                            macaulay_resultant, numeric_root_product, relative_error,
                            sign_ratio, sylvester_matrix, sylvester_resultant)
from reskit.schur import resultant

from conftest import diagonal_system, random_binary_with_leads, random_form, random_system

LIN = ["a", "b", "c", "d"]
a, b, c, d = ParamPoly.gens(LIN)
FIXTURE = "a^4*b^4*c^4 + 3*a^3*b^3*c^3*alpha^3 + 3*a^2*b^2*c^2*alpha^6 + a*b*c*alpha^9"


def linear_pair():
    return PolySystem([parse_polynomial("a*x1 + b*x2", 2, LIN),
                       parse_polynomial("c*x1 + d*x2", 2, LIN)])


def fixture_system():
    names = ["a", "b", "c", "alpha"]
    return PolySystem([parse_polynomial(t, 3, names) for t in (
        "a*x1^2 + alpha*x2*x3", "b*x2^2 + alpha*x1*x3", "c*x3^2 + alpha*x1*x2")])


# --- determinants ----------------------------------------------------------------------

def test_bareiss_matches_numpy_and_expansion():
    rng = random.Random(1)
    for n in range(1, 7):
        m = [[mpq(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
        exact = det_bareiss(m)
        assert exact == det_expansion(m)
        approx = np.linalg.det(np.array(m, dtype=float))
        assert math.isclose(float(exact), approx, rel_tol=1e-9, abs_tol=1e-9)


def test_parametric_determinants_agree():
    m = [[a, b, 0], [c, d, a], [1, b, c]]
    assert det_bareiss(m) == det_expansion(m)
    assert det_bareiss(m) == a * (d * c - a * b) - b * (c * c - a) + 0


def test_empty_and_singular():
    assert det_bareiss([]) == 1
    assert det_bareiss([[1, 2], [2, 4]]) == 0
    assert DenseMatrix([[mpq(0), mpq(1)], [mpq(1), mpq(0)]]).det() == -1
    with pytest.raises(ValueError):
        DenseMatrix([[1, 2]]).det()


# --- sylvester / linear --------------------------------------------------------------------

def test_sylvester_linear():
    assert sylvester_resultant(*linear_pair()) == a * d - b * c


def test_sylvester_diagonal():
    s = diagonal_system((2, 2))
    m = sylvester_matrix(*s)
    assert m.shape == (4, 4)
    assert sylvester_resultant(*s) == 1


def test_sylvester_rejects_non_binary():
    with pytest.raises(ValueError):
        sylvester_resultant(parse_polynomial("x1", 3), parse_polynomial("x2", 3))


def test_sylvester_quadratic_pairs_match_trace_formula():
    rng = random.Random(5)
    for _ in range(20):
        s = random_system(rng, (2, 2))
        assert sylvester_resultant(*s) == resultant(s)


def test_determinant_oracle():
    assert determinant_resultant(linear_pair()) == a * d - b * c
    ident = PolySystem([parse_polynomial(f"x{i}", 3) for i in (1, 2, 3)])
    assert determinant_resultant(ident) == 1
    with pytest.raises(ValueError):
        determinant_resultant(diagonal_system((1, 2)))


def test_determinant_matches_trace_formula_n3():
    rng = random.Random(8)
    for _ in range(10):
        s = random_system(rng, (1, 1, 1))
        assert determinant_resultant(s) == resultant(s)


# --- macaulay ------------------------------------------------------------------------------

def test_macaulay_of_linear_is_coefficient_matrix():
    rng = random.Random(2)
    for n in (2, 3, 4):
        s = random_system(rng, (1,) * n)
        M, mons, nonreduced = macaulay_matrix(s)
        assert M.shape == (n, n) and nonreduced == []
        assert macaulay_resultant(s) == determinant_resultant(s)


def test_macaulay_matches_sylvester():
    rng = random.Random(3)
    for r1, r2 in [(1, 2), (2, 2), (3, 2), (2, 4)]:
        for _ in range(5):
            s = random_system(rng, (r1, r2))
            try:
                mac = macaulay_resultant(s)
            except OracleInconclusive:
                continue
            assert mac == sylvester_resultant(*s)


def test_macaulay_diagonal_is_identity():
    M, _, _ = macaulay_matrix(diagonal_system((2, 2, 2)))
    assert M.rows == [[1 if i == j else 0 for j in range(15)] for i in range(15)]


def test_macaulay_fixture():
    value = macaulay_resultant(fixture_system())
    assert str(value) == FIXTURE
    for p in ("a", "b", "c"):
        assert value.degree(p) == 4


def test_macaulay_inconclusive_on_vanishing_minor():
    s = PolySystem([parse_polynomial(t, 3) for t in ("x1*x2 + x3^2", "x2^2", "x3^2")])
    with pytest.raises(OracleInconclusive):
        macaulay_resultant(s)


def test_macaulay_size_limit():
    with pytest.raises(ValueError):
        macaulay_resultant(diagonal_system((1, 1, 1, 1, 1)))


# --- numerics ------------------------------------------------------------------------------

def test_root_product_single_roots():
    s = PolySystem([parse_polynomial("x1 - x2", 2), parse_polynomial("x1 + x2", 2)])
    # f1(1,z) = -(z - 1), f2(1,z) = (z + 1): (-1) * 1 * (-1 - 1) = 2
    val = numeric_root_product(*s)
    assert abs(complex(val) - 2) < 1e-12
    assert sylvester_resultant(*s) == 2 == resultant(s)


def test_root_product_linear_closed_form():
    rng = random.Random(4)
    for _ in range(20):
        av, bv, cv, dv = (rng.choice([-1, 1]) * rng.randint(1, 9) for _ in range(4))
        s = PolySystem([Polynomial(2, 1, {(1, 0): av, (0, 1): bv}),
                        Polynomial(2, 1, {(1, 0): cv, (0, 1): dv})])
        exact = av * dv - bv * cv
        if exact:
            assert relative_error(numeric_root_product(*s), exact) < 1e-9


def test_root_product_cubics():
    rng = random.Random(6)
    checked = 0
    while checked < 20:
        s = PolySystem([random_binary_with_leads(rng, 3), random_binary_with_leads(rng, 3)])
        exact = resultant(s)
        if not exact:
            continue
        assert relative_error(numeric_root_product(*s), exact) < 1e-8
        checked += 1


def test_root_product_needs_leading_coefficient():
    s = PolySystem([parse_polynomial("x1^2 + x1*x2", 2), parse_polynomial("x1 + x2", 2)])
    with pytest.raises(ValueError, match="leading coefficient"):
        numeric_root_product(*s)


def test_complex_approx_rejects_nan():
    with pytest.raises(ValueError):
        ComplexApprox(float("nan"), 0.0)
    with pytest.raises(ValueError):
        ComplexApprox(0.0, float("inf"))


def test_relative_error_floor():
    assert relative_error(1e-13, 0) == pytest.approx(0.1)


def test_sign_ratio():
    assert sign_ratio(mpq(3), mpq(3)) == 1
    assert sign_ratio(mpq(-3), mpq(3)) == -1
    assert sign_ratio(mpq(0), mpq(0)) is None
    with pytest.raises(ValueError):
        sign_ratio(mpq(2), mpq(3))


def test_numeric_agrees_with_sylvester():
    rng = random.Random(12)
    checked = 0
    while checked < 40:
        r1, r2 = rng.randint(1, 4), rng.randint(1, 4)
        f1, f2 = random_binary_with_leads(rng, r1, -10, 10), random_binary_with_leads(rng, r2, -10, 10)
        exact = sylvester_resultant(f1, f2)
        if not exact:
            continue
        assert relative_error(numeric_root_product(f1, f2), exact) <= 1e-8
        checked += 1


def test_oracles_agree_on_mixed_profiles():
    rng = random.Random(31)
    for degrees in [(2, 1, 1), (1, 2, 3), (2, 2, 2), (1, 1, 1, 2)]:
        s = random_system(rng, degrees)
        try:
            assert macaulay_resultant(s) == resultant(s)
        except OracleInconclusive:
            pass
