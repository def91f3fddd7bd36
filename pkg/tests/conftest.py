import itertools
import random

import pytest

from reskit.algebra import ParamPoly, PolySystem, Polynomial, grlex_key, mpq


def monomials(n, degree):
    """All exponent tuples of the given degree, descending graded-lex."""
    out = [e for e in itertools.product(range(degree + 1), repeat=n) if sum(e) == degree]
    return sorted(out, key=grlex_key, reverse=True)


def random_form(rng, n, r, lo=-5, hi=5, density=1.0):
    """Random integer form; never the zero polynomial."""
    while True:
        terms = {e: rng.randint(lo, hi) for e in monomials(n, r) if rng.random() < density}
        p = Polynomial(n, r, terms)
        if p:
            return p


def random_system(rng, degrees, lo=-5, hi=5, density=1.0):
    n = len(degrees)
    return PolySystem([random_form(rng, n, r, lo, hi, density) for r in degrees])


def random_binary_with_leads(rng, r, lo=-5, hi=5):
    """Binary form whose x2^r coefficient is non-zero."""
    terms = {(r - j, j): rng.randint(lo, hi) for j in range(r)}
    terms[(0, r)] = rng.choice([-1, 1]) * rng.randint(1, hi)
    return Polynomial(2, r, terms)


def diagonal_system(degrees):
    n = len(degrees)
    return PolySystem([Polynomial.monomial(tuple(r if j == i else 0 for j in range(n)))
                       for i, r in enumerate(degrees)])


def generic_system(degrees):
    """Every coefficient is an independent parameter ``c<i>_<k>``."""
    n = len(degrees)
    names = []
    layout = []
    for i, r in enumerate(degrees):
        mons = monomials(n, r)
        layout.append(mons)
        names.extend(f"c{i + 1}_{j}" for j in range(len(mons)))
    gens = dict(zip(names, ParamPoly.gens(names)))
    polys = []
    for i, (r, mons) in enumerate(zip(degrees, layout)):
        polys.append(Polynomial(n, r, {e: gens[f"c{i + 1}_{j}"] for j, e in enumerate(mons)}))
    return PolySystem(polys)


def random_rational(rng, num=20, den=9):
    return mpq(rng.randint(-num, num), rng.randint(1, den))


@pytest.fixture
def rng():
    return random.Random(20081)


def permute_system(s, perm):
    """New f_i is old f_{perm[i]} with old x_{perm[j]} renamed to x_j."""
    n = s.n
    return PolySystem([
        Polynomial(n, s[perm[i]].degree,
                   {tuple(e[perm[j]] for j in range(n)): c for e, c in s[perm[i]].terms.items()})
        for i in range(n)])
