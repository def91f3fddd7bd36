"""Recombination of traces into the resultant.

With ``S(lambda) = sum_v T_v lambda^v`` the coefficients ``P_k`` of
``exp(-S)`` are multi-Schur polynomials in the traces, and the resultant is
``(-1)^d P_{d_1..d_n}`` where ``d_i = (r_1 ... r_n) / r_i``.

Two ways of computing ``P_k`` are provided: :func:`schur_direct` sums over
ordered vector partitions (small indices only), :func:`schur_recurrence`
uses ``k_p P_k = -sum_{0 < v <= k} v_p T_v P_{k-v}`` for a pivot ``p`` with
``k_p > 0``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from gmpy2 import mpq

from .algebra import PolySystem
from .traces import TraceTable, build_trace_table, index_box

__all__ = [
    "DegreeVector",
    "degree_vector",
    "ordered_partitions",
    "schur_direct",
    "schur_recurrence",
    "resultant",
    "resultant_direct",
    "table_size",
]


@dataclass(frozen=True)
class DegreeVector:
    d: tuple
    total: int


def degree_vector(system) -> DegreeVector:
    """Degrees of the resultant in the coefficients of each ``f_i``.

    Accepts a :class:`PolySystem` or a plain sequence of degrees.
    """
    r = system.degrees if isinstance(system, PolySystem) else tuple(system)
    if not r or any(x < 1 for x in r):
        raise ValueError(f"degrees must be positive, got {r}")
    prod = math.prod(r)
    d = tuple(prod // x for x in r)
    return DegreeVector(d, sum(d))


def table_size(degrees: Sequence[int]) -> int:
    """Number of trace-table entries needed for the given degree profile."""
    return math.prod(x + 1 for x in degree_vector(degrees).d)


def _lookup(table, v):
    try:
        return table[v]
    except KeyError:
        raise KeyError(f"trace table has no entry for index {v}") from None


def ordered_partitions(k: Sequence[int]) -> Iterator[tuple]:
    """Ordered decompositions of ``k`` into non-zero non-negative vectors."""
    k = tuple(k)
    if not any(k):
        yield ()
        return
    for v in itertools.product(*(range(x + 1) for x in k)):
        if not any(v):
            continue
        rest = tuple(a - b for a, b in zip(k, v))
        for tail in ordered_partitions(rest):
            yield (v,) + tail


def schur_direct(table: Mapping, k: Sequence[int]):
    """``P_k`` by explicit summation over ordered partitions of ``k``.

    Every part ``v`` must be present in ``table``.  The number of terms
    grows very quickly, so this is meant for small ``k``.
    """
    k = tuple(k)
    if not any(k):
        raise ValueError("index must be non-zero")
    by_m: dict = {}
    for parts in ordered_partitions(k):
        prod = _lookup(table, parts[0])
        for v in parts[1:]:
            prod = prod * _lookup(table, v)
        m = len(parts)
        by_m[m] = by_m[m] + prod if m in by_m else prod
    total = mpq(0)
    for m, s in by_m.items():
        total = total + s * mpq((-1) ** m, math.factorial(m))
    return total


def schur_recurrence(table: Mapping, bound: Sequence[int]) -> dict:
    """``P_v`` for every ``0 <= v <= bound``.

    The pivot for ``k`` is its first non-zero position ``p``; only traces
    whose own first non-zero position is ``p`` can appear in the sum.  For
    such ``v`` the index ``k - v`` either keeps pivot ``p`` with a smaller
    entry there or has a later pivot, so pivots are processed from last to
    first with ``k_p`` increasing.
    """
    bound = tuple(bound)
    n = len(bound)
    values = table.values if isinstance(table, TraceTable) else table
    # indices are packed into one int, one field per position with a guard
    # bit on top; k - v underflows in some field iff a guard bit is cleared
    width = max(bound, default=0).bit_length() + 1
    shifts = [i * width for i in range(n)]
    guard = sum(1 << (s + width - 1) for s in shifts)

    # tails[p]: packed (0..0, k_p, ..., k_{n-1}) in lexicographic order
    tails = [[0]]
    for p in reversed(range(n)):
        tails.append([(x << shifts[p]) + t for x in range(bound[p] + 1) for t in tails[-1]])
    tails.reverse()
    box = list(itertools.product(*(range(b + 1) for b in bound)))

    by_pivot: list = [[] for _ in range(n)]
    for v, pv in zip(box, tails[0]):
        if not pv:
            continue
        t = values.get(v) if hasattr(values, "get") else values[v]
        if t is None:
            raise KeyError(f"trace table has no entry for index {v}")
        if t:
            p = next(i for i, x in enumerate(v) if x)
            by_pivot[p].append((v[p], pv, t))

    zero = mpq(0)
    packed = {0: mpq(1)}
    for p in reversed(range(n)):
        terms = sorted(by_pivot[p], key=lambda item: item[0])
        for kp in range(1, bound[p] + 1):
            usable = [(t * vp, pv) for vp, pv, t in terms if vp <= kp]
            base = (kp << shifts[p]) | guard
            for tail in tails[p + 1]:
                kg = base + tail
                acc = zero
                for wt, pv in usable:
                    x = kg - pv
                    if x & guard == guard:
                        prev = packed[x - guard]
                        if prev:
                            acc = wt * prev + acc
                packed[kg - guard] = -acc / kp if acc else zero
    return dict(zip(box, map(packed.__getitem__, tails[0])))


def _check_system(system: PolySystem):
    if not isinstance(system, PolySystem):
        system = PolySystem(system)
    for i, p in enumerate(system.polys):
        if p.is_zero():
            raise ValueError(f"f{i + 1} is the zero polynomial; the resultant is undefined")
    return system


def resultant(system, threads: int = 1):
    """Resultant of ``n`` homogeneous forms in ``n`` variables.

    Returns an exact ``mpq`` for rational input or a
    :class:`~reskit.algebra.ParamPoly` for parametric input.  Normalized so
    that the system ``x_i^{r_i}`` has resultant 1.
    """
    system = _check_system(system)
    dv = degree_vector(system)
    table = build_trace_table(system, dv.d, threads=threads)
    P = schur_recurrence(table, dv.d)
    value = P[dv.d]
    return -value if dv.total % 2 else value


def resultant_direct(system):
    """Resultant through the ordered-partition sum; tiny systems only."""
    system = _check_system(system)
    dv = degree_vector(system)
    table = build_trace_table(system, dv.d)
    by_m: dict = {}
    for parts in ordered_partitions(dv.d):
        prod = table[parts[0]]
        for v in parts[1:]:
            prod = prod * table[v]
        m = len(parts)
        by_m[m] = by_m[m] + prod if m in by_m else prod
    total = mpq(0)
    for m, s in by_m.items():
        total = total + s * mpq((-1) ** (m + dv.total), math.factorial(m))
    return total
