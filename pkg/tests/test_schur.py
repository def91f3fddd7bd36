import itertools
import math
import random

import pytest

from reskit.algebra import ParamPoly, PolySystem, Polynomial, mpq, multiply, parse_polynomial
from reskit.oracles import macaulay_resultant, sylvester_resultant
from reskit.schur import (degree_vector, ordered_partitions, resultant, resultant_direct,
                          schur_direct, schur_recurrence, table_size)
from reskit.traces import index_box

from conftest import (diagonal_system, permute_system, random_form, random_rational,
                      random_system)


@pytest.mark.parametrize("r, d, total", [
    ((1, 1), (1, 1), 2),
    ((2, 2, 2), (4, 4, 4), 12),
    ((2, 3), (3, 2), 5),
    ((3,), (1,), 1),
])
def test_degree_vector(r, d, total):
    dv = degree_vector(r)
    assert dv.d == d and dv.total == total


def test_table_size():
    assert table_size((2, 2, 2)) == 125


def _count_ordered(k):
    # number of ordered partitions of a vector into non-zero parts
    k = tuple(k)
    if not any(k):
        return 1
    return sum(_count_ordered(tuple(a - b for a, b in zip(k, v)))
               for v in itertools.product(*(range(x + 1) for x in k)) if any(v))


def test_ordered_partitions_small():
    assert set(ordered_partitions((2,))) == {((2,),), ((1,), (1,))}
    parts = list(ordered_partitions((1, 1)))
    assert sorted(parts) == sorted([((1, 1),), ((1, 0), (0, 1)), ((0, 1), (1, 0))])
    for k in [(2, 1), (2, 2), (1, 1, 1)]:
        got = list(ordered_partitions(k))
        assert len(got) == len(set(got)) == _count_ordered(k)
        assert all(tuple(map(sum, zip(*p))) == k for p in got)


def test_schur_direct_single_step():
    t = {(1, 0): mpq(5)}
    assert schur_direct(t, (1, 0)) == -5


def test_schur_direct_missing_entry():
    with pytest.raises(KeyError):
        schur_direct({(1, 0): mpq(1)}, (2, 0))


def _random_table(rng, bound):
    return {v: random_rational(rng) for v in index_box(bound) if any(v)}


@pytest.mark.parametrize("bound", [(1, 0), (2, 3), (3, 3), (2, 2, 2), (4,)])
def test_recurrence_matches_direct(bound):
    rng = random.Random(sum(bound))
    table = _random_table(rng, bound)
    table[(0,) * len(bound)] = mpq(0)
    P = schur_recurrence(table, bound)
    assert P[(0,) * len(bound)] == 1
    for k in index_box(bound):
        if any(k):
            assert P[k] == schur_direct(table, k)


def test_recurrence_unit_entries_are_minus_traces():
    rng = random.Random(4)
    table = _random_table(rng, (2, 2, 1))
    P = schur_recurrence(table, (2, 2, 1))
    for i in range(3):
        unit = tuple(1 if j == i else 0 for j in range(3))
        assert P[unit] == -table[unit]


def test_univariate_recurrence_is_exp():
    # exp(-t*l) -> (-t)^k / k!
    t = mpq(3, 2)
    table = {(1,): t, (2,): mpq(0), (3,): mpq(0), (4,): mpq(0)}
    P = schur_recurrence(table, (4,))
    for k in range(5):
        assert P[(k,)] == (-t) ** k / math.factorial(k)


# --- resultant examples ----------------------------------------------------------------

LIN = ["a", "b", "c", "d"]


def test_linear_resultant():
    a, b, c, d = ParamPoly.gens(LIN)
    s = PolySystem([parse_polynomial("a*x1 + b*x2", 2, LIN),
                    parse_polynomial("c*x1 + d*x2", 2, LIN)])
    assert resultant(s) == a * d - b * c


def test_diagonal_quadratics():
    assert resultant(diagonal_system((2, 2))) == 1


def test_common_root_gives_zero():
    s = PolySystem([parse_polynomial("x1^2 - x1*x2", 2), parse_polynomial("x1*x2 - x2^2", 2)])
    assert resultant(s) == 0


def test_single_form():
    s = PolySystem([parse_polynomial("7*x1^3", 1)])
    assert resultant(s) == 7


def test_zero_polynomial_rejected():
    s = PolySystem([parse_polynomial("x1", 2), Polynomial.zero(2, 2)])
    with pytest.raises(ValueError, match="zero polynomial"):
        resultant(s)


@pytest.mark.parametrize("degrees", [(1, 1), (1, 2), (2, 2), (1, 1, 1), (2, 1, 1)])
def test_direct_formula_matches_recurrence(degrees):
    rng = random.Random(len(degrees) * 10 + sum(degrees))
    for _ in range(3):
        s = random_system(rng, degrees)
        assert resultant_direct(s) == resultant(s)


# --- invariants ------------------------------------------------------------------------

SCALING_PROFILES = [(1, 1), (2, 3), (3, 3), (1, 2, 2), (2, 2, 2), (3, 1, 2), (2, 2, 3)]


@pytest.mark.parametrize("degrees", SCALING_PROFILES)
def test_scaling_law(degrees):
    rng = random.Random(hash(degrees) % 1000)
    s = random_system(rng, degrees)
    base = resultant(s)
    d = degree_vector(degrees).d
    i = rng.randrange(len(degrees))
    lam = mpq(rng.choice([-3, -2, 2, 3, 5]), rng.randint(1, 4))
    assert resultant(s.scale(i, lam)) == lam ** d[i] * base


@pytest.mark.parametrize("degrees", [(1, 1), (2, 2), (3, 2), (1, 1, 1), (2, 2, 1), (2, 2, 2)])
def test_vanishes_with_common_linear_factor(degrees):
    rng = random.Random(sum(degrees))
    n = len(degrees)
    ell = random_form(rng, n, 1)
    polys = [ell if r == 1 else multiply(ell, random_form(rng, n, r - 1)) for r in degrees]
    assert resultant(PolySystem(polys)) == 0


@pytest.mark.parametrize("rg, rh, r2", [(1, 1, 2), (1, 2, 1), (2, 1, 3), (2, 2, 2)])
def test_first_slot_multiplicativity(rg, rh, r2):
    rng = random.Random(rg * 100 + rh * 10 + r2)
    g, h, f2 = random_form(rng, 2, rg), random_form(rng, 2, rh), random_form(rng, 2, r2)
    assert resultant(PolySystem([multiply(g, h), f2])) == \
        resultant(PolySystem([g, f2])) * resultant(PolySystem([h, f2]))


def test_integer_input_gives_integer():
    rng = random.Random(99)
    for degrees in [(2, 3), (2, 2, 2), (1, 2, 3)]:
        value = resultant(random_system(rng, degrees))
        assert value.denominator == 1


@pytest.mark.parametrize("degrees", [(1,), (3,), (2, 3), (3, 3), (1, 2, 3), (3, 3, 3),
                                     (2, 2, 2, 2), (1, 3, 2, 1)])
def test_diagonal_resultant_is_one(degrees):
    assert resultant(diagonal_system(degrees)) == 1


def test_parametric_resultant_matches_specializations():
    names = ["p", "q"]
    p, q = ParamPoly.gens(names)
    s = PolySystem([parse_polynomial("p*x1^2 + x2^2", 2, names),
                    parse_polynomial("x1^2 - q*x1*x2", 2, names)])
    sym = resultant(s)
    for pv, qv in [(1, 2), (-3, 5), (0, 1)]:
        assert sym.subs({"p": pv, "q": qv}) == resultant(s.subs({"p": pv, "q": qv}))


@pytest.mark.parametrize("degrees", [(1, 2), (2, 3), (1, 2, 2), (2, 1, 3), (1, 1, 2, 1)])
def test_simultaneous_permutation_invariance(degrees):
    s = random_system(random.Random(3), degrees)
    base = resultant(s)
    for perm in itertools.permutations(range(len(degrees))):
        assert resultant(permute_system(s, perm)) == base


def _drop_pure_powers(s):
    polys = []
    for i, p in enumerate(s):
        terms = dict(p.terms)
        terms.pop(tuple(p.degree if j == i else 0 for j in range(s.n)), None)
        polys.append(Polynomial(s.n, p.degree, terms))
    return polys


@pytest.mark.parametrize("degrees", [(2, 2), (3, 2), (2, 2, 2), (1, 2, 2), (2, 1, 1)])
def test_vanishing_pure_power_coefficients(degrees):
    # with every x_i^{r_i} coefficient zero the Macaulay minor often vanishes;
    # the oracle value is taken from f_i + t*x_i^{r_i} at t = 0 instead
    rng = random.Random(sum(degrees) * 7)
    t = ParamPoly.gen(("t",), "t")
    checked = 0
    while checked < 6:
        polys = _drop_pure_powers(random_system(rng, degrees))
        if any(p.is_zero() for p in polys):
            continue
        s = PolySystem(polys)
        n = s.n
        lifted = PolySystem([
            Polynomial(n, p.degree, {e: ParamPoly.constant(("t",), c) for e, c in p.terms.items()})
            + Polynomial(n, p.degree, {tuple(p.degree if j == i else 0 for j in range(n)): t})
            for i, p in enumerate(s)])
        oracle = macaulay_resultant(lifted).subs({"t": 0})
        if n == 2:
            assert sylvester_resultant(*s) == oracle
        assert resultant(s) == oracle
        checked += 1
