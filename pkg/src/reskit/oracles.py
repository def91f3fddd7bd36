"""Classical resultant constructions used to cross-check the trace formula.

All exact oracles are normalized so that ``R(x_1^{r_1}, ..., x_n^{r_n}) = 1``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from gmpy2 import mpq

from .algebra import ParamPoly, PolySystem, Polynomial, grlex_key

__all__ = [
    "OracleInconclusive",
    "DenseMatrix",
    "ComplexApprox",
    "det_bareiss",
    "det_expansion",
    "sylvester_matrix",
    "sylvester_resultant",
    "determinant_resultant",
    "macaulay_matrix",
    "macaulay_resultant",
    "numeric_root_product",
    "relative_error",
    "sign_ratio",
]


class OracleInconclusive(ArithmeticError):
    """An oracle cannot produce a value for this input (never a wrong one)."""


def _divide(a, b):
    if isinstance(a, ParamPoly):
        return a.exact_div(b) if isinstance(b, ParamPoly) else a / b
    if isinstance(b, ParamPoly):
        return ParamPoly.constant(b.params, a).exact_div(b)
    return a / b


def _weight(x):
    return len(x.terms) if isinstance(x, ParamPoly) else 0


def det_bareiss(rows: Sequence[Sequence]):
    """Fraction-free Gaussian elimination over ``mpq`` or ``ParamPoly``.

    Every division is exact.  Row pivots are chosen by smallest term count so
    parametric entries stay small.
    """
    n = len(rows)
    if n == 0:
        return mpq(1)
    m = [list(r) for r in rows]
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = mpq(1)
    for k in range(n - 1):
        candidates = [i for i in range(k, n) if m[i][k]]
        if not candidates:
            return mpq(0)
        s = min(candidates, key=lambda i: _weight(m[i][k]))
        if s != k:
            m[k], m[s] = m[s], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                num = m[i][j] * pivot - mik * m[k][j]
                m[i][j] = _divide(num, prev) if num else mpq(0)
        prev = pivot
    d = m[n - 1][n - 1]
    return -d if sign < 0 else d


def det_expansion(rows: Sequence[Sequence]):
    """Division-free Laplace expansion memoized on the set of used columns.

    Cost is governed by the number of reachable column subsets, which is
    small for sparse matrices such as Macaulay matrices.
    """
    n = len(rows)
    if n == 0:
        return mpq(1)
    nz = [[(j, v) for j, v in enumerate(r) if v] for r in rows]
    memo: dict = {}

    def rec(i, used):
        if i == n:
            return mpq(1)
        key = used
        if key in memo:
            return memo[key]
        total = mpq(0)
        for j, v in nz[i]:
            bit = 1 << j
            if used & bit:
                continue
            sub = rec(i + 1, used | bit)
            if not sub:
                continue
            # sign of column j among the still-free columns
            before = bin(~used & (bit - 1) & ((1 << n) - 1)).count("1")
            term = v * sub
            total = total - term if before & 1 else total + term
        memo[key] = total
        return total

    return rec(0, 0)


class DenseMatrix:
    """Rectangular matrix of exact coefficients."""

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = [list(r) for r in rows]
        width = {len(r) for r in self.rows}
        if len(width) > 1:
            raise ValueError("ragged rows")
        self.shape = (len(self.rows), width.pop() if width else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "DenseMatrix":
        return DenseMatrix([[self.rows[i][j] for j in cols] for i in rows])

    def det(self, method: str = "auto"):
        if self.shape[0] != self.shape[1]:
            raise ValueError(f"determinant of a {self.shape} matrix")
        if method == "auto":
            parametric = any(isinstance(v, ParamPoly) for r in self.rows for v in r)
            method = "expansion" if parametric and self.shape[0] <= 60 else "bareiss"
        if method == "bareiss":
            return det_bareiss(self.rows)
        if method == "expansion":
            return det_expansion(self.rows)
        raise ValueError(f"unknown method {method!r}")

    def __repr__(self):
        return f"DenseMatrix(shape={self.shape})"


# ---------------------------------------------------------------------------
# Sylvester and linear determinant
# ---------------------------------------------------------------------------


def _binary_coeffs(f: Polynomial) -> list:
    """Coefficients of ``x1^{r-j} x2^j`` for ``j = 0..r``."""
    if f.nvars != 2:
        raise ValueError("binary forms required (n = 2)")
    r = f.degree
    return [f.terms.get((r - j, j), mpq(0)) for j in range(r + 1)]


def sylvester_matrix(f1: Polynomial, f2: Polynomial) -> DenseMatrix:
    r1, r2 = f1.degree, f2.degree
    if r1 < 1 or r2 < 1:
        raise ValueError("degrees must be positive")
    a, b = _binary_coeffs(f1), _binary_coeffs(f2)
    size = r1 + r2
    rows = []
    for s in range(r2):
        rows.append([mpq(0)] * s + a + [mpq(0)] * (size - s - r1 - 1))
    for s in range(r1):
        rows.append([mpq(0)] * s + b + [mpq(0)] * (size - s - r2 - 1))
    return DenseMatrix(rows)


def sylvester_resultant(f1: Polynomial, f2: Polynomial):
    """Determinant of the Sylvester matrix of two binary forms."""
    return sylvester_matrix(f1, f2).det("bareiss")


def determinant_resultant(system: PolySystem):
    """Determinant of the coefficient matrix of a linear system."""
    n = system.n
    if any(r != 1 for r in system.degrees):
        raise ValueError("all polynomials must be linear")
    rows = []
    for f in system:
        rows.append([f.terms.get(tuple(1 if j == i else 0 for j in range(n)), mpq(0))
                     for i in range(n)])
    return det_bareiss(rows)


# ---------------------------------------------------------------------------
# Macaulay
# ---------------------------------------------------------------------------


def _monomials(n: int, degree: int) -> list:
    out = []
    for cut in itertools.combinations(range(degree + n - 1), n - 1):
        prev = -1
        e = []
        for c in cut:
            e.append(c - prev - 1)
            prev = c
        e.append(degree + n - 2 - prev)
        out.append(tuple(e))
    return sorted(out, key=grlex_key, reverse=True)


def macaulay_matrix(system: PolySystem):
    """Macaulay matrix at the critical degree ``sum(r_i - 1) + 1``.

    Returns ``(matrix, monomials, nonreduced)`` where rows and columns are
    both indexed by ``monomials`` and ``nonreduced`` lists the positions of
    the extraneous minor.
    """
    n = system.n
    r = system.degrees
    rho = sum(x - 1 for x in r) + 1
    mons = _monomials(n, rho)
    pos = {e: i for i, e in enumerate(mons)}
    rows = []
    nonreduced = []
    for idx, e in enumerate(mons):
        divisible = [i for i in range(n) if e[i] >= r[i]]
        i = divisible[0]
        if len(divisible) > 1:
            nonreduced.append(idx)
        shift = list(e)
        shift[i] -= r[i]
        row = [mpq(0)] * len(mons)
        for fe, c in system[i].terms.items():
            row[pos[tuple(a + b for a, b in zip(fe, shift))]] = c
        rows.append(row)
    return DenseMatrix(rows), mons, nonreduced


def macaulay_resultant(system: PolySystem):
    """Macaulay's quotient ``det(M) / det(M')``.

    Raises :class:`OracleInconclusive` when the extraneous minor vanishes
    or, for parametric input, when the quotient is not exact.
    """
    if system.n > 4:
        raise ValueError("macaulay oracle supports n <= 4")
    M, _, nonreduced = macaulay_matrix(system)
    minor = M.submatrix(nonreduced, nonreduced)
    den = minor.det()
    if not den:
        raise OracleInconclusive("Macaulay extraneous minor vanishes")
    num = M.det()
    try:
        return _divide(num, den)
    except ArithmeticError as exc:
        raise OracleInconclusive(f"Macaulay quotient is not exact: {exc}") from exc


# ---------------------------------------------------------------------------
# Floating-point root product
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComplexApprox:
    real: float
    imag: float

    def __post_init__(self):
        if not (math.isfinite(self.real) and math.isfinite(self.imag)):
            raise ValueError(f"non-finite value {self.real} + {self.imag}j")

    def __complex__(self):
        return complex(self.real, self.imag)

    def __abs__(self):
        return abs(complex(self))


def _as_float(c) -> float:
    if isinstance(c, ParamPoly):
        if not c.is_constant():
            raise TypeError("numeric oracle needs rational coefficients")
        c = c.constant_value()
    return float(c)


def _companion_roots(coeffs: list) -> np.ndarray:
    """Roots of ``sum coeffs[j] z^j`` from companion-matrix eigenvalues."""
    deg = len(coeffs) - 1
    lead = coeffs[-1]
    comp = np.zeros((deg, deg))
    comp[0, :] = [-c / lead for c in reversed(coeffs[:-1])]
    if deg > 1:
        comp[1:, :-1] = np.eye(deg - 1)
    return np.linalg.eigvals(comp)


def numeric_root_product(f1: Polynomial, f2: Polynomial) -> ComplexApprox:
    """``a^{r2} b^{r1} prod (beta_j - alpha_i)`` from the roots of ``f(1, z)``.

    ``a`` and ``b`` are the coefficients of ``z^{r_i}`` in ``f_i(1, z)``;
    both must be non-zero.
    """
    c1 = [_as_float(c) for c in _binary_coeffs(f1)]
    c2 = [_as_float(c) for c in _binary_coeffs(f2)]
    a, b = c1[-1], c2[-1]
    if a == 0 or b == 0:
        raise ValueError("leading coefficient vanishes; dehomogenization loses degree")
    alphas = _companion_roots(c1)
    betas = _companion_roots(c2)
    value = complex(a ** len(betas) * b ** len(alphas))
    for al in alphas:
        for be in betas:
            value *= complex(be - al)
    return ComplexApprox(value.real, value.imag)


def relative_error(approx, exact, floor: float = 1e-12) -> float:
    """``|approx - exact| / max(|exact|, floor)``."""
    exact = complex(float(exact))
    return abs(complex(approx) - exact) / max(abs(exact), floor)


def sign_ratio(value, oracle):
    """Return +1 or -1 with ``value == sign * oracle``; None if both vanish.

    Raises ValueError when the two values are not related by a sign.
    """
    if not value and not oracle:
        return None
    if value == oracle:
        return 1
    if value == -oracle:
        return -1
    raise ValueError("values differ by more than a sign")
