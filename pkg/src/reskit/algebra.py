"""Exact coefficient rings and sparse homogeneous polynomials.

Coefficients live in one of two rings, both containing the rationals:

* plain rationals, represented by :class:`gmpy2.mpq`;
* :class:`ParamPoly`, polynomials in a fixed ordered list of named
  parameters with rational coefficients.

A :class:`Polynomial` is a homogeneous form in ``x1 .. xn`` whose
coefficients are drawn from either ring.  Exponent vectors are plain tuples
and the canonical order is graded-lexicographic (:func:`grlex_key`).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence, Union

from gmpy2 import mpq

__all__ = [
    "mpq",
    "ParamPoly",
    "Polynomial",
    "PolySystem",
    "PowerTable",
    "ParseError",
    "HomogeneityError",
    "grlex_key",
    "as_coefficient",
    "format_coefficient",
    "parse_polynomial",
    "parse_coefficient",
    "multiply",
    "power",
    "coefficient",
    "restrict_zero",
]

Exponent = tuple


def grlex_key(e: Sequence[int]):
    """Sort key for graded-lexicographic order (total degree, then lex)."""
    return (sum(e), tuple(e))


def _is_scalar(x) -> bool:
    return isinstance(x, (int, type(mpq())))


def as_coefficient(x):
    """Promote ints, Fractions and numeric strings to ``mpq``.

    ParamPoly values are returned unchanged.
    """
    if isinstance(x, ParamPoly):
        return x
    if isinstance(x, float):
        raise TypeError("floating point coefficients are not exact")
    return mpq(x)


class ParamPoly:
    """Polynomial in named parameters with rational coefficients.

    ``params`` fixes the variable order; two values can only be combined if
    they share the same parameter tuple.  Zero entries are never stored.
    Instances are treated as immutable.
    """

    __slots__ = ("params", "terms")

    def __init__(self, params: Sequence[str], terms: Mapping[tuple, object] | None = None):
        self.params = tuple(params)
        clean = {}
        if terms:
            n = len(self.params)
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match {n} parameters")
                c = mpq(c)
                if c:
                    clean[e] = c
        self.terms = clean

    @classmethod
    def _raw(cls, params, terms):
        obj = cls.__new__(cls)
        obj.params = params
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, params: Sequence[str], value) -> "ParamPoly":
        params = tuple(params)
        value = mpq(value)
        return cls._raw(params, {(0,) * len(params): value} if value else {})

    @classmethod
    def gen(cls, params: Sequence[str], name: str) -> "ParamPoly":
        params = tuple(params)
        i = params.index(name)
        e = tuple(1 if j == i else 0 for j in range(len(params)))
        return cls._raw(params, {e: mpq(1)})

    @classmethod
    def gens(cls, params: Sequence[str]) -> tuple:
        return tuple(cls.gen(params, p) for p in params)

    # -- helpers -----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, ParamPoly):
            if other.params != self.params:
                raise ValueError(
                    f"parameter lists differ: {self.params} vs {other.params}")
            return other
        if _is_scalar(other):
            return ParamPoly.constant(self.params, other)
        try:
            return ParamPoly.constant(self.params, mpq(other))
        except (TypeError, ValueError):
            return NotImplemented

    def is_constant(self) -> bool:
        zero = (0,) * len(self.params)
        return not self.terms or (len(self.terms) == 1 and zero in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.terms.get((0,) * len(self.params), mpq(0))

    def degree(self, param: str | None = None) -> int:
        """Total degree, or the degree in one parameter."""
        if not self.terms:
            return -1
        if param is None:
            return max(sum(e) for e in self.terms)
        i = self.params.index(param)
        return max(e[i] for e in self.terms)

    # -- ring operations -----------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __neg__(self):
        return ParamPoly._raw(self.params, {e: -c for e, c in self.terms.items()})

    def __pos__(self):
        return self

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return ParamPoly._raw(self.params, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if _is_scalar(other):
            if not other:
                return ParamPoly._raw(self.params, {})
            return ParamPoly._raw(self.params, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e)
                out[e] = c1 * c2 if s is None else s + c1 * c2
        return ParamPoly._raw(self.params, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a non-zero rational, or exact division by a ParamPoly."""
        if isinstance(other, ParamPoly):
            return self.exact_div(other)
        other = mpq(other)
        if not other:
            raise ZeroDivisionError("division by zero")
        return ParamPoly._raw(self.params, {e: c / other for e, c in self.terms.items()})

    def __rtruediv__(self, other):
        return ParamPoly.constant(self.params, other).exact_div(self)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = ParamPoly.constant(self.params, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def exact_div(self, other: "ParamPoly") -> "ParamPoly":
        """Quotient ``self / other``; raises ArithmeticError on a remainder."""
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        if other.is_constant():
            return self / other.constant_value()
        lead_e = max(other.terms, key=grlex_key)
        lead_c = other.terms[lead_e]
        rem = self
        quot: dict = {}
        while rem.terms:
            e = max(rem.terms, key=grlex_key)
            q = tuple(a - b for a, b in zip(e, lead_e))
            if min(q) < 0:
                raise ArithmeticError("polynomial division is not exact")
            c = rem.terms[e] / lead_c
            quot[q] = c
            shifted = ParamPoly._raw(
                self.params,
                {tuple(a + b for a, b in zip(q, oe)): c * oc for oe, oc in other.terms.items()},
            )
            rem = rem - shifted
        return ParamPoly._raw(self.params, quot)

    # -- comparison / evaluation ------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, ParamPoly):
            return self.params == other.params and self.terms == other.terms
        if _is_scalar(other) or hasattr(other, "denominator"):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self.params, frozenset(self.terms.items())))

    def subs(self, values: Mapping[str, object]):
        """Substitute rational values for some or all parameters.

        Returns an ``mpq`` when every parameter is substituted.
        """
        idx = [i for i, p in enumerate(self.params) if p in values]
        vals = {i: mpq(values[self.params[i]]) for i in idx}
        if len(idx) == len(self.params):
            total = mpq(0)
            for e, c in self.terms.items():
                t = c
                for i, k in enumerate(e):
                    if k:
                        t *= vals[i] ** k
                total += t
            return total
        keep = [i for i in range(len(self.params)) if i not in vals]
        params = tuple(self.params[i] for i in keep)
        out = ParamPoly(params)
        for e, c in self.terms.items():
            t = c
            for i in idx:
                if e[i]:
                    t *= vals[i] ** e[i]
            ne = tuple(e[i] for i in keep)
            s = out.terms.get(ne, mpq(0)) + t
            if s:
                out.terms[ne] = s
            else:
                out.terms.pop(ne, None)
        return out

    def monomials(self) -> list:
        """``(exponent, coefficient)`` pairs in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda it: grlex_key(it[0]), reverse=True)

    def __str__(self):
        return format_coefficient(self)

    def __repr__(self):
        return f"ParamPoly({self.params!r}, {str(self)!r})"


Coefficient = Union[mpq, ParamPoly]


def _monomial_factors(names: Sequence[str], e: Sequence[int]) -> list[str]:
    out = []
    for name, k in zip(names, e):
        if k == 1:
            out.append(name)
        elif k > 1:
            out.append(f"{name}^{k}")
    return out


def _join_terms(pieces: list[tuple[object, list[str]]]) -> str:
    """Render (rational, factor-list) pairs as ``c*f1*f2 + ...``."""
    if not pieces:
        return "0"
    chunks = []
    for i, (c, factors) in enumerate(pieces):
        neg = c < 0
        a = -c if neg else c
        if factors:
            body = "*".join(factors) if a == 1 else "*".join([str(a)] + factors)
        else:
            body = str(a)
        if i == 0:
            chunks.append(("-" if neg else "") + body)
        else:
            chunks.append((" - " if neg else " + ") + body)
    return "".join(chunks)


def format_coefficient(c) -> str:
    """Canonical text for a coefficient (descending graded-lex)."""
    if isinstance(c, ParamPoly):
        return _join_terms([(v, _monomial_factors(c.params, e)) for e, v in c.monomials()])
    return str(mpq(c))


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


class HomogeneityError(ValueError):
    pass


class Polynomial:
    """Sparse homogeneous polynomial in ``nvars`` variables.

    Parameters
    ----------
    nvars : int
        Number of variables ``x1 .. xn``.
    degree : int
        Total degree shared by every term.  Required even for the zero
        polynomial.
    terms : mapping
        Exponent tuple -> coefficient.  Zero coefficients are dropped.
    """

    __slots__ = ("nvars", "degree", "terms")

    def __init__(self, nvars: int, degree: int, terms: Mapping[tuple, object] | None = None):
        if nvars < 0 or degree < 0:
            raise ValueError("nvars and degree must be non-negative")
        self.nvars = nvars
        self.degree = degree
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != nvars or min(e, default=0) < 0:
                raise ValueError(f"bad exponent {e} for {nvars} variables")
            if sum(e) != degree:
                raise HomogeneityError(
                    f"non-homogeneous: term {e} has degree {sum(e)}, expected {degree}")
            c = as_coefficient(c)
            if c:
                clean[e] = c
        self.terms = clean

    @classmethod
    def _raw(cls, nvars, degree, terms):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.degree = degree
        obj.terms = terms
        return obj

    @classmethod
    def one(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, 0, {(0,) * nvars: mpq(1)})

    @classmethod
    def zero(cls, nvars: int, degree: int) -> "Polynomial":
        return cls._raw(nvars, degree, {})

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff=1) -> "Polynomial":
        e = tuple(exponent)
        return cls(len(e), sum(e), {e: coeff})

    @property
    def params(self) -> tuple | None:
        for c in self.terms.values():
            if isinstance(c, ParamPoly):
                return c.params
        return None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self.nvars == other.nvars and self.degree == other.degree
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, self.degree, frozenset(self.terms)))

    def __neg__(self):
        return Polynomial._raw(self.nvars, self.degree, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.nvars != self.nvars:
            raise ValueError("variable counts differ")
        if other.degree != self.degree:
            if not other.terms:
                return self
            if not self.terms:
                return other
            raise HomogeneityError("sum of forms of different degree")
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out[e] + c if e in out else c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(self.nvars, self.degree, out)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return multiply(self, other)
        c = as_coefficient(other)
        if not c:
            return Polynomial.zero(self.nvars, self.degree)
        return Polynomial._raw(self.nvars, self.degree, {e: v * c for e, v in self.terms.items()
                                                         if v * c})

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k):
        return power(self, k)

    def coefficient(self, e: Sequence[int]):
        return coefficient(self, e)

    def restrict_zero(self, variables: Iterable[int]) -> "Polynomial":
        return restrict_zero(self, variables)

    def monomials(self) -> list:
        """``(exponent, coefficient)`` pairs in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda it: grlex_key(it[0]), reverse=True)

    def __str__(self):
        names = [f"x{i + 1}" for i in range(self.nvars)]
        pieces = []
        for e, c in self.monomials():
            xs = _monomial_factors(names, e)
            if isinstance(c, ParamPoly):
                for pe, v in c.monomials():
                    pieces.append((v, _monomial_factors(c.params, pe) + xs))
            else:
                pieces.append((c, xs))
        return _join_terms(pieces)

    def __repr__(self):
        return f"Polynomial(nvars={self.nvars}, degree={self.degree}, {str(self)!r})"


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    """Product of two forms; degrees add."""
    if p.nvars != q.nvars:
        raise ValueError(f"variable counts differ: {p.nvars} vs {q.nvars}")
    out: dict = {}
    for e1, c1 in p.terms.items():
        for e2, c2 in q.terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            s = out.get(e)
            out[e] = c1 * c2 if s is None else s + c1 * c2
    return Polynomial._raw(p.nvars, p.degree + q.degree, {e: c for e, c in out.items() if c})


class PowerTable:
    """Cached powers ``p^0, p^1, ...`` built by successive multiplication.

    The table grows on demand and is safe to read concurrently once warmed up
    with :meth:`extend`.
    """

    def __init__(self, p: Polynomial):
        self.base = p
        self._powers = [Polynomial.one(p.nvars), p]

    def extend(self, k: int) -> "PowerTable":
        while len(self._powers) <= k:
            self._powers.append(multiply(self._powers[-1], self.base))
        return self

    def __getitem__(self, k: int) -> Polynomial:
        if k < 0:
            raise ValueError("negative exponent")
        self.extend(k)
        return self._powers[k]

    def __len__(self):
        return len(self._powers)


def power(p: Polynomial, k: int) -> Polynomial:
    if k < 0:
        raise ValueError("negative exponent")
    return PowerTable(p)[k]


def coefficient(p: Polynomial, e: Sequence[int]):
    """Coefficient of ``x^e`` in ``p`` (exact zero when absent)."""
    e = tuple(e)
    if len(e) != p.nvars:
        raise ValueError(f"exponent of length {len(e)} for {p.nvars} variables")
    return p.terms.get(e, mpq(0))


def restrict_zero(p: Polynomial, variables: Iterable[int]) -> Polynomial:
    """Set the given variables (0-based indices) to zero and drop them.

    The result lives in the remaining ``nvars - len(variables)`` variables,
    in their original order, and keeps the declared degree.
    """
    dropped = set(variables)
    keep = [i for i in range(p.nvars) if i not in dropped]
    out = {}
    for e, c in p.terms.items():
        if all(e[i] == 0 for i in dropped):
            out[tuple(e[i] for i in keep)] = c
    return Polynomial._raw(len(keep), p.degree, out)


@dataclass(frozen=True)
class PolySystem:
    """``n`` homogeneous forms in ``n`` variables."""

    polys: tuple

    def __init__(self, polys: Sequence[Polynomial]):
        polys = tuple(polys)
        n = len(polys)
        if n == 0:
            raise ValueError("empty system")
        for i, p in enumerate(polys):
            if p.nvars != n:
                raise ValueError(f"f{i + 1} has {p.nvars} variables, expected {n}")
            if p.degree < 1:
                raise ValueError(f"f{i + 1} has degree {p.degree}; degrees must be >= 1")
        object.__setattr__(self, "polys", polys)

    @property
    def n(self) -> int:
        return len(self.polys)

    @property
    def degrees(self) -> tuple:
        return tuple(p.degree for p in self.polys)

    @property
    def params(self) -> tuple | None:
        for p in self.polys:
            if p.params is not None:
                return p.params
        return None

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.polys)

    def __getitem__(self, i) -> Polynomial:
        return self.polys[i]

    def __len__(self):
        return len(self.polys)

    def scale(self, i: int, factor) -> "PolySystem":
        """Copy of the system with ``f_i`` multiplied by ``factor``."""
        polys = list(self.polys)
        polys[i] = polys[i] * factor
        return PolySystem(polys)

    def subs(self, values: Mapping[str, object]) -> "PolySystem":
        """Specialize parameters to rational values."""
        out = []
        for p in self.polys:
            terms = {}
            for e, c in p.terms.items():
                terms[e] = c.subs(values) if isinstance(c, ParamPoly) else c
            out.append(Polynomial(p.nvars, p.degree, terms))
        return PolySystem(out)

    def __str__(self):
        return "\n".join(f"f{i + 1} = {p}" for i, p in enumerate(self.polys))


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.)")
_VAR = re.compile(r"x(\d+)$")


def _tokenize(text: str):
    pos = 0
    out = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        start = pos
        if m.group(1) is not None:
            out.append(("num", int(m.group(1)), start))
        elif m.group(2) is not None:
            out.append(("id", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*^/":
                raise ParseError(f"unexpected character {ch!r}", start)
            out.append((ch, ch, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text, n, params):
        self.toks = _tokenize(text)
        self.i = 0
        self.n = n
        self.params = tuple(params)

    def peek(self):
        return self.toks[self.i]

    def take(self, kind):
        tok = self.toks[self.i]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind}, found {what}", tok[2])
        self.i += 1
        return tok

    def posint(self):
        tok = self.take("num")
        if tok[1] <= 0:
            raise ParseError("expected a positive integer", tok[2])
        return tok[1]

    def factor(self, xexp, pexp):
        kind, name, pos = self.take("id")
        k = 1
        if self.peek()[0] == "^":
            self.i += 1
            k = self.posint()
        m = _VAR.match(name)
        if m:
            j = int(m.group(1))
            if not 1 <= j <= self.n:
                raise ParseError(f"unknown variable {name!r} (expected x1..x{self.n})", pos)
            xexp[j - 1] += k
        elif re.match(r"x\d", name):
            raise ParseError(f"malformed variable {name!r}", pos)
        elif name in self.params:
            pexp[self.params.index(name)] += k
        else:
            raise ParseError(f"unknown parameter {name!r}", pos)

    def term(self):
        xexp = [0] * self.n
        pexp = [0] * len(self.params)
        coef = mpq(1)
        if self.peek()[0] == "num":
            coef = mpq(self.take("num")[1])
            if self.peek()[0] == "/":
                self.i += 1
                coef /= self.posint()
            if self.peek()[0] != "*":
                return coef, tuple(xexp), tuple(pexp)
            self.i += 1
        self.factor(xexp, pexp)
        while self.peek()[0] == "*":
            self.i += 1
            self.factor(xexp, pexp)
        return coef, tuple(xexp), tuple(pexp)

    def poly(self):
        terms = []
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take(self.peek()[0])[0] == "-" else 1
        while True:
            pos = self.peek()[2]
            c, xe, pe = self.term()
            terms.append((sign * c, xe, pe, pos))
            kind = self.peek()[0]
            if kind == "end":
                return terms
            if kind not in ("+", "-"):
                tok = self.peek()
                raise ParseError(f"unexpected {tok[1]!r}", tok[2])
            sign = -1 if kind == "-" else 1
            self.i += 1


def parse_polynomial(text: str, n: int, params: Sequence[str] = (), degree: int | None = None
                     ) -> Polynomial:
    """Parse a homogeneous polynomial in ``x1 .. xn``.

    With a non-empty ``params`` list every coefficient is a
    :class:`ParamPoly` over those names.  ``degree`` is only needed to give
    the zero polynomial a declared degree (default 0).

    >>> str(parse_polynomial("x1^2 - x1*x2", 2))
    'x1^2 - x1*x2'
    """
    params = tuple(params)
    raw = _Parser(text, n, params).poly()
    acc: dict = {}
    first_pos = {}
    for c, xe, pe, pos in raw:
        inner = acc.setdefault(xe, {})
        inner[pe] = inner.get(pe, mpq(0)) + c
        first_pos.setdefault(xe, pos)
    terms = {}
    for xe, inner in acc.items():
        if params:
            cval = ParamPoly(params, inner)
        else:
            cval = inner[()]
        if cval:
            terms[xe] = cval
    degrees = {sum(e) for e in terms}
    if len(degrees) > 1:
        lead = max(terms, key=grlex_key)
        bad = next(e for e in sorted(terms, key=lambda e: first_pos[e]) if sum(e) != sum(lead))
        raise HomogeneityError(
            f"non-homogeneous polynomial: term at position {first_pos[bad]} has degree "
            f"{sum(bad)}, expected {sum(lead)}")
    if degrees:
        deg = degrees.pop()
        if degree is not None and degree != deg:
            raise HomogeneityError(f"polynomial has degree {deg}, expected {degree}")
    else:
        deg = degree or 0
    return Polynomial._raw(n, deg, terms)


def parse_coefficient(text: str, params: Sequence[str] = ()):
    """Parse a parameter expression such as ``-a^2*b + 1/2*alpha``."""
    p = parse_polynomial(text, 0, params)
    c = p.terms.get((), mpq(0))
    if params and not isinstance(c, ParamPoly):
        c = ParamPoly.constant(params, c)
    return c
