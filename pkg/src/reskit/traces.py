"""Traces of a homogeneous system.

``T_k`` is the Taylor coefficient of ``-log R`` of the shifted system
``x_i^{r_i} - lambda_i f_i`` at ``lambda^k``.  For positive ``k`` it is a sum
over transportation matrices (row and column ``i`` both summing to
``r_i k_i``) weighted by an integer minor and a product of coefficients of
the powers ``f_i^{k_i}``.  Indices with zero entries reduce to a smaller
system with those variables set to zero.
"""
from __future__ import annotations

import itertools
from operator import sub
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from gmpy2 import mpq

from .algebra import PolySystem, Polynomial, PowerTable, coefficient, restrict_zero

__all__ = [
    "TraceTable",
    "enumerate_transportation",
    "int_det",
    "minor_weight",
    "admissible_rows",
    "trace_positive",
    "trace_positive_bruteforce",
    "trace",
    "build_trace_table",
    "index_box",
]


def _compositions(total: int, caps: Sequence[int]) -> Iterator[tuple]:
    """Vectors of non-negative ints summing to ``total`` bounded by ``caps``."""
    if not caps:
        if total == 0:
            yield ()
        return
    if total > sum(caps):
        return
    head, rest = caps[0], caps[1:]
    for a in range(min(head, total), -1, -1):
        for tail in _compositions(total - a, rest):
            yield (a,) + tail


def enumerate_transportation(row_sums: Sequence[int], col_sums: Sequence[int]
                             ) -> Iterator[tuple]:
    """Yield every non-negative integer matrix with the given margins.

    Matrices are tuples of row tuples.  Mismatched totals or lengths give an
    empty stream.
    """
    row_sums, col_sums = tuple(row_sums), tuple(col_sums)
    if len(row_sums) != len(col_sums) or sum(row_sums) != sum(col_sums):
        return

    def rec(i, remaining):
        if i == len(row_sums) - 1:
            if sum(remaining) == row_sums[i]:
                yield (remaining,)
            return
        for row in _compositions(row_sums[i], remaining):
            left = tuple(c - a for c, a in zip(remaining, row))
            for tail in rec(i + 1, left):
                yield (row,) + tail

    if not row_sums:
        yield ()
        return
    yield from rec(0, col_sums)


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix.

    Cofactor formulas up to 3x3, fraction-free (Bareiss) elimination above.
    The empty matrix has determinant 1.
    """
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    if n == 2:
        (a, b), (c, d) = rows
        return a * d - b * c
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for s in range(k + 1, n):
                if m[s][k] != 0:
                    m[k], m[s] = m[s], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def minor_weight(m: Sequence[Sequence[int]], r: Sequence[int], k: Sequence[int]) -> int:
    """``det(delta_ij r_i k_i - m_ij)`` over rows and columns 2..n."""
    n = len(r)
    minor = [[(r[i] * k[i] if i == j else 0) - m[i][j] for j in range(1, n)]
             for i in range(1, n)]
    return int_det(minor)


def _check_positive(k):
    if any(x < 1 for x in k):
        raise ValueError(f"all indices must be positive, got {tuple(k)}")


def admissible_rows(powers: Sequence[Polynomial], targets: Sequence[int]) -> list:
    """Transportation matrices supported on the given power polynomials.

    Depth-first over the monomials of ``powers[1:]`` with pruning on partial
    column sums; the first row is then forced to be the remaining column
    deficit and looked up in ``powers[0]``.  Returns ``(rows, coeffs)``
    pairs with one exponent tuple and one coefficient per polynomial.
    """
    n = len(powers)
    if n == 0:
        return []
    lists = [list(p.terms.items()) for p in powers]
    first = powers[0].terms
    out = []

    def rec(i, remaining, rows, coeffs):
        if i == n:
            c0 = first.get(remaining)
            if c0 is not None:
                out.append(((remaining,) + rows, (c0,) + coeffs))
            return
        for e, c in lists[i]:
            left = tuple(map(sub, remaining, e))
            if min(left) >= 0:
                rec(i + 1, left, rows + (e,), coeffs + (c,))

    rec(1, tuple(targets), (), ())
    return out


def _minor_rows(power: Polynomial, i: int, diag: int) -> list:
    """``(exponent, coefficient, minor row)`` for each term of ``f_i^{k_i}``."""
    n = power.nvars
    return [(e, c, tuple((diag if j == i else 0) - e[j] for j in range(1, n)))
            for e, c in power.terms.items()]


def _positive_sum(powers, r, k, lists=None):
    """Fused form of the admissible-row sum used on the production path.

    Each monomial of ``f_i^{k_i}`` (i >= 2) carries its precomputed row of
    the minor; coefficient products are accumulated along the search path.
    ``lists`` may supply those rows already built, as ``lists[i - 1]``.
    """
    n = len(powers)
    for pw in powers:
        if not pw.terms:
            return mpq(0)
    targets = tuple(ri * ki for ri, ki in zip(r, k))
    first = powers[0].terms
    denom = 1
    for ki in k:
        denom *= ki
    if n == 1:
        c = first.get(targets)
        return c / denom if c else mpq(0)
    if lists is None:
        lists = [_minor_rows(powers[i], i, r[i] * k[i]) for i in range(1, n)]
    total = mpq(0)
    if n == 2:
        for e, c, (w,) in lists[0]:
            if w:
                c0 = first.get((targets[0] - e[0], targets[1] - e[1]))
                if c0 is not None:
                    total = c0 * c * w + total
    elif n == 3:
        inner_list = lists[1]
        for e2, c2, (a, b) in lists[0]:
            rem = tuple(map(sub, targets, e2))
            if min(rem) < 0:
                continue
            inner = mpq(0)
            for e3, c3, (c, d) in inner_list:
                w = a * d - b * c
                if w:
                    c0 = first.get(tuple(map(sub, rem, e3)))
                    if c0 is not None:
                        inner = c0 * c3 * w + inner
            if inner:
                total = inner * c2 + total
    else:
        last = n - 2

        def rec(i, remaining, rows, coeff):
            nonlocal total
            for e, c, mrow in lists[i]:
                left = tuple(map(sub, remaining, e))
                if i == last:
                    c0 = first.get(left)
                    if c0 is not None:
                        w = int_det(rows + [mrow])
                        if w:
                            total = c0 * c * coeff * w + total
                elif min(left) >= 0:
                    rec(i + 1, left, rows + [mrow], c * coeff)

        rec(0, targets, [], mpq(1))
    if not total:
        return total
    return total / denom


def trace_positive(polys: Sequence[Polynomial], k: Sequence[int],
                   powers: Sequence[PowerTable] | None = None):
    """Trace for an index with every entry at least one.

    ``polys`` is a square system (a :class:`PolySystem` or a plain sequence,
    which may contain zero forms).  ``powers`` optionally supplies cached
    power tables for the polynomials.
    """
    polys = tuple(polys)
    k = tuple(k)
    if len(k) != len(polys):
        raise ValueError("index length does not match system size")
    if not polys:
        return mpq(0)
    _check_positive(k)
    if powers is None:
        powers = [PowerTable(p) for p in polys]
    r = [p.degree for p in polys]
    return _positive_sum([pt[ki] for pt, ki in zip(powers, k)], r, k)


def trace_positive_bruteforce(polys: Sequence[Polynomial], k: Sequence[int]):
    """Same as :func:`trace_positive` by plain enumeration of all matrices."""
    polys = tuple(polys)
    k = tuple(k)
    _check_positive(k)
    r = [p.degree for p in polys]
    pw = [p ** ki for p, ki in zip(polys, k)]
    sums = [ri * ki for ri, ki in zip(r, k)]
    total = mpq(0)
    for m in enumerate_transportation(sums, sums):
        w = minor_weight(m, r, k)
        if not w:
            continue
        prod = mpq(w)
        for p, row in zip(pw, m):
            prod = coefficient(p, row) * prod
            if not prod:
                break
        total = prod + total
    denom = 1
    for ki in k:
        denom *= ki
    return total / denom


class _Reducer:
    """Memoized zero-index reduction over one system."""

    def __init__(self, polys: Sequence[Polynomial]):
        self.polys = tuple(polys)
        self.r = [p.degree for p in self.polys]
        self._subsystems: dict = {}
        self._rows: dict = {}

    def subsystem(self, keep: tuple):
        powers = self._subsystems.get(keep)
        if powers is None:
            dropped = [i for i in range(len(self.polys)) if i not in keep]
            polys = [restrict_zero(self.polys[i], dropped) for i in keep]
            powers = [PowerTable(p) for p in polys]
            self._subsystems[keep] = powers
        return powers

    def warm_up(self, bound):
        """Build every subsystem and power table needed below ``bound``."""
        n = len(self.polys)
        for size in range(1, n + 1):
            for keep in itertools.combinations(range(n), size):
                for pt, i in zip(self.subsystem(keep), keep):
                    pt.extend(bound[i])

    def trace(self, k):
        keep = tuple(i for i, ki in enumerate(k) if ki)
        if not keep:
            return mpq(0)
        factor = 1
        for i, ki in enumerate(k):
            if not ki:
                factor *= self.r[i]
        powers = self.subsystem(keep)
        kk = tuple(k[i] for i in keep)
        rr = [self.r[i] for i in keep]
        pw = [pt[ki] for pt, ki in zip(powers, kk)]
        lists = []
        for i in range(1, len(keep)):
            key = (keep, i, kk[i])
            rows = self._rows.get(key)
            if rows is None:
                rows = self._rows[key] = _minor_rows(pw[i], i, rr[i] * kk[i])
            lists.append(rows)
        value = _positive_sum(pw, rr, kk, lists)
        return value * factor if factor != 1 else value


def trace(polys: Sequence[Polynomial], k: Sequence[int], table: "TraceTable | None" = None):
    """Trace ``T_k`` for any non-negative index.

    Zero entries of ``k`` are removed all at once: the matching polynomials
    are dropped, the matching variables are set to zero in the rest, and the
    result is scaled by the product of the dropped degrees.
    """
    k = tuple(k)
    if table is not None and k in table.values:
        return table.values[k]
    polys = tuple(polys)
    if len(k) != len(polys):
        raise ValueError("index length does not match system size")
    if any(x < 0 for x in k):
        raise ValueError("indices must be non-negative")
    reducer = table._reducer if table is not None else _Reducer(polys)
    return reducer.trace(k)


def index_box(bound: Sequence[int]) -> list:
    """All indices ``0 <= v <= bound`` in graded-lex order."""
    box = itertools.product(*(range(b + 1) for b in bound))
    return sorted(box, key=lambda v: (sum(v), v))


@dataclass
class TraceTable:
    """Memoized traces for every index up to ``bound``."""

    system: PolySystem
    bound: tuple
    values: dict = field(default_factory=dict)
    _reducer: _Reducer | None = field(default=None, repr=False, compare=False)

    def __getitem__(self, k):
        return self.values[tuple(k)]

    def __contains__(self, k):
        return tuple(k) in self.values

    def __len__(self):
        return len(self.values)

    def get(self, k, default=None):
        return self.values.get(tuple(k), default)

    def items(self):
        return self.values.items()

    def nonzero(self) -> dict:
        return {k: v for k, v in self.values.items() if v}


def build_trace_table(system: PolySystem, bound: Sequence[int] | None = None,
                      threads: int = 1) -> TraceTable:
    """Traces for every index between zero and ``bound`` componentwise.

    ``bound`` defaults to the degree vector of the system.  Power tables are
    built sequentially first; with ``threads > 1`` (0 means one per CPU) the
    individual traces are then evaluated by a thread pool.  The table is the
    same for any thread count.
    """
    if not isinstance(system, PolySystem):
        system = PolySystem(system)
    if bound is None:
        from .schur import degree_vector
        bound = degree_vector(system).d
    bound = tuple(bound)
    if len(bound) != system.n:
        raise ValueError("bound length does not match system size")
    reducer = _Reducer(system.polys)
    reducer.warm_up(bound)
    indices = index_box(bound)
    if threads == 1:
        values = {k: reducer.trace(k) for k in indices}
    else:
        with ThreadPoolExecutor(max_workers=threads or None) as pool:
            values = dict(zip(indices, pool.map(reducer.trace, indices)))
    return TraceTable(system, bound, values, reducer)
