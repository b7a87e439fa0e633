"""Exact multivariate Laurent polynomials over the integers.

A :class:`LaurentPoly` is an immutable sparse map from exponent vectors
(tuples of ints, possibly negative) to nonzero Python integers.  All values
in one computation share the same number of variables ``nvars``.

The text format is a sum of terms ``c*x1^a1*x2^a2``; a coefficient of 1 and
exponents equal to 1 are omitted, zero exponents are dropped, and terms are
listed in increasing lexicographic order of their exponent vectors::

    >>> p = LaurentPoly.parse("x1^-1*x2 + x1^-1", 2)
    >>> str(p * LaurentPoly.gen(0, 2))
    '1 + x2'
"""

from __future__ import annotations

import heapq
import re
from operator import add, sub
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

__all__ = [
    "LaurentPoly",
    "LaurentError",
    "RankMismatch",
    "InexactDivision",
    "NegativePowerOfNonUnit",
    "lp_arith",
    "lp_div_exact",
    "lp_substitute",
    "lp_denominator_vector",
    "lp_classify",
]

Exponent = tuple[int, ...]


class LaurentError(ArithmeticError):
    """Base class for Laurent polynomial errors."""


class RankMismatch(LaurentError, ValueError):
    pass


class InexactDivision(LaurentError):
    pass


class NegativePowerOfNonUnit(LaurentError):
    pass


class LaurentPoly:
    __slots__ = ("nvars", "_terms", "_hash", "_str")

    def __init__(self, terms: Mapping[Exponent, int] | Iterable[tuple[Exponent, int]] = (), nvars: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponent, int] = {}
        for exp, coeff in items:
            exp = tuple(int(e) for e in exp)
            if nvars is None:
                nvars = len(exp)
            elif len(exp) != nvars:
                raise RankMismatch(f"exponent {exp} has length {len(exp)}, expected {nvars}")
            coeff = int(coeff)
            if coeff:
                c = clean.get(exp, 0) + coeff
                if c:
                    clean[exp] = c
                else:
                    del clean[exp]
        if nvars is None:
            raise ValueError("nvars is required for the zero polynomial")
        self.nvars = nvars
        self._terms = clean
        self._hash = None
        self._str = None

    @classmethod
    def _raw(cls, terms: dict[Exponent, int], nvars: int) -> "LaurentPoly":
        # terms must already be canonical (no zero coefficients)
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        obj._str = None
        return obj

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls._raw({}, nvars)

    @classmethod
    def const(cls, c: int, nvars: int) -> "LaurentPoly":
        return cls._raw({(0,) * nvars: int(c)} if c else {}, nvars)

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls.const(1, nvars)

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff: int = 1) -> "LaurentPoly":
        exp = tuple(int(e) for e in exp)
        return cls._raw({exp: int(coeff)} if coeff else {}, len(exp))

    @classmethod
    def gen(cls, i: int, nvars: int) -> "LaurentPoly":
        """The variable ``x_{i+1}`` (``i`` is 0-based)."""
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[i] = 1
        return cls._raw({tuple(exp): 1}, nvars)

    # -- inspection -----------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponent, int]:
        return MappingProxyType(self._terms)

    def items(self):
        """Terms in canonical (lexicographic) order."""
        return sorted(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_unit(self) -> bool:
        """True for ``±x^a``, the units of the Laurent ring."""
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def coefficient(self, exp: Sequence[int]) -> int:
        return self._terms.get(tuple(exp), 0)

    def min_exponents(self) -> Exponent:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return tuple(map(min, zip(*self._terms)))

    def max_exponents(self) -> Exponent:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return tuple(map(max, zip(*self._terms)))

    def sort_key(self) -> str:
        return str(self)

    # -- equality / hashing ---------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, int):
            return self == LaurentPoly.const(other, self.nvars)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __reduce__(self):
        return (LaurentPoly, (dict(self._terms), self.nvars))

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise RankMismatch(f"rank {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other, self.nvars)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                del out[e]
        return LaurentPoly._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()}, self.nvars)

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        a, b = self._terms, other._terms
        if not a or not b:
            return LaurentPoly.zero(self.nvars)
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (eb, cb), = b.items()
            return LaurentPoly._raw({tuple(map(add, e, eb)): c * cb for e, c in a.items()}, self.nvars)
        out: dict[Exponent, int] = {}
        get = out.get
        b_items = list(b.items())
        for ea, ca in a.items():
            for eb, cb in b_items:
                e = tuple(map(add, ea, eb))
                out[e] = get(e, 0) + ca * cb
        return LaurentPoly._raw({e: c for e, c in out.items() if c}, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_unit():
                raise NegativePowerOfNonUnit(f"cannot invert {self}")
            (e, c), = self._terms.items()
            return LaurentPoly._raw({tuple(x * k for x in e): c ** -k}, self.nvars)
        result = LaurentPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, exp: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial ``x^exp``."""
        return LaurentPoly._raw({tuple(map(add, e, exp)): c for e, c in self._terms.items()}, self.nvars)

    # -- text format ----------------------------------------------------

    def __str__(self) -> str:
        if self._str is None:
            self._str = _format(self)
        return self._str

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r}, nvars={self.nvars})"

    @classmethod
    def parse(cls, text: str, nvars: int) -> "LaurentPoly":
        return _parse(text, nvars)


# ---------------------------------------------------------------------------
# formatting and parsing


def _format_monomial(exp: Exponent) -> str:
    parts = []
    for i, a in enumerate(exp):
        if a == 1:
            parts.append(f"x{i + 1}")
        elif a:
            parts.append(f"x{i + 1}^{a}")
    return "*".join(parts)


def _format(p: LaurentPoly) -> str:
    if not p._terms:
        return "0"
    out = []
    for k, (exp, c) in enumerate(p.items()):
        mono = _format_monomial(exp)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|x(?P<var>\d+)|(?P<op>[+\-*^]))")


def _parse(text: str, nvars: int) -> LaurentPoly:
    pos = 0
    tokens = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse Laurent polynomial at {text[pos:]!r}")
        pos = m.end()
        if m.group("num") is not None:
            tokens.append(("num", int(m.group("num"))))
        elif m.group("var") is not None:
            tokens.append(("var", int(m.group("var"))))
        else:
            tokens.append(("op", m.group("op")))
    if not tokens:
        raise ValueError("empty polynomial string")

    terms: dict[Exponent, int] = {}
    i = 0
    n = len(tokens)

    def peek(kind, value=None):
        return i < n and tokens[i][0] == kind and (value is None or tokens[i][1] == value)

    while i < n:
        sign = 1
        while peek("op", "+") or peek("op", "-"):
            if tokens[i][1] == "-":
                sign = -sign
            i += 1
        coeff = 1
        exp = [0] * nvars
        seen_factor = False
        while i < n and not (peek("op", "+") or peek("op", "-")):
            if peek("op", "*"):
                i += 1
                continue
            kind, val = tokens[i]
            i += 1
            if kind == "num":
                coeff *= val
            elif kind == "var":
                if not 1 <= val <= nvars:
                    raise ValueError(f"variable x{val} out of range for {nvars} variables")
                power = 1
                if peek("op", "^"):
                    i += 1
                    psign = 1
                    while peek("op", "-") or peek("op", "+"):
                        if tokens[i][1] == "-":
                            psign = -psign
                        i += 1
                    if not peek("num"):
                        raise ValueError(f"missing exponent in {text!r}")
                    power = psign * tokens[i][1]
                    i += 1
                exp[val - 1] += power
            else:
                raise ValueError(f"unexpected {val!r} in {text!r}")
            seen_factor = True
        if not seen_factor:
            raise ValueError(f"dangling sign in {text!r}")
        key = tuple(exp)
        terms[key] = terms.get(key, 0) + sign * coeff
    return LaurentPoly(terms, nvars)


# ---------------------------------------------------------------------------
# operations


def lp_arith(p: LaurentPoly, q: LaurentPoly, op: str) -> LaurentPoly:
    if p.nvars != q.nvars:
        raise RankMismatch(f"rank {p.nvars} vs {q.nvars}")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def _poly_divide(num: dict[Exponent, int], den: dict[Exponent, int]) -> dict[Exponent, int] | None:
    """Lex-order division of ordinary polynomials; None when inexact."""
    lead = max(den)
    lead_c = den[lead]
    rest = [(e, c) for e, c in den.items() if e != lead]
    rem = dict(num)
    # max-heap on exponent tuples via negated keys
    heap = [tuple(-x for x in e) for e in rem]
    heapq.heapify(heap)
    quot: dict[Exponent, int] = {}
    while heap:
        key = heapq.heappop(heap)
        e = tuple(-x for x in key)
        c = rem.pop(e, 0)
        if not c:
            continue
        shift = tuple(map(sub, e, lead))
        if min(shift) < 0:
            return None
        qc, r = divmod(c, lead_c)
        if r:
            return None
        quot[shift] = qc
        for ed, cd in rest:
            t = tuple(map(add, ed, shift))
            v = rem.get(t, 0) - qc * cd
            if v:
                if t not in rem:
                    heapq.heappush(heap, tuple(-x for x in t))
                rem[t] = v
            else:
                rem.pop(t, None)
    return quot


def lp_div_exact(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Return ``r`` with ``r * q == p``; raise :class:`InexactDivision` otherwise."""
    if p.nvars != q.nvars:
        raise RankMismatch(f"rank {p.nvars} vs {q.nvars}")
    if q.is_zero():
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    n = p.nvars
    if p.is_zero():
        return LaurentPoly.zero(n)
    if q.is_monomial():
        (eq, cq), = q._terms.items()
        out = {}
        for e, c in p._terms.items():
            v, r = divmod(c, cq)
            if r:
                raise InexactDivision(f"{p} is not divisible by {q}")
            out[tuple(map(sub, e, eq))] = v
        return LaurentPoly._raw(out, n)
    mp, mq = p.min_exponents(), q.min_exponents()
    num = {tuple(map(sub, e, mp)): c for e, c in p._terms.items()}
    den = {tuple(map(sub, e, mq)): c for e, c in q._terms.items()}
    quot = _poly_divide(num, den)
    if quot is None:
        raise InexactDivision(f"{p} is not divisible by {q}")
    offset = tuple(map(sub, mp, mq))
    return LaurentPoly._raw({tuple(map(add, e, offset)): c for e, c in quot.items()}, n)


def lp_substitute(p: LaurentPoly, images: Sequence[LaurentPoly]) -> LaurentPoly:
    """Simultaneously substitute ``x_i -> images[i]``."""
    if len(images) != p.nvars:
        raise RankMismatch(f"{len(images)} images for {p.nvars} variables")
    if not images:
        raise ValueError("substitution needs at least one variable")
    m = images[0].nvars
    for img in images:
        if img.nvars != m:
            raise RankMismatch("images live in different rings")
        if img.is_zero():
            raise ValueError("substitution image must be nonzero")
    if p.is_zero():
        return LaurentPoly.zero(m)
    lows = p.min_exponents()
    for i, low in enumerate(lows):
        if low < 0 and not images[i].is_unit():
            raise NegativePowerOfNonUnit(f"x{i + 1} has negative exponent but image {images[i]} is not a unit")
    cache: dict[tuple[int, int], LaurentPoly] = {}

    def power(i: int, a: int) -> LaurentPoly:
        key = (i, a)
        if key not in cache:
            cache[key] = images[i] ** a
        return cache[key]

    out: dict[Exponent, int] = {}
    for exp, c in p._terms.items():
        term = LaurentPoly.const(c, m)
        for i, a in enumerate(exp):
            if a:
                term = term * power(i, a)
        for e, v in term._terms.items():
            s = out.get(e, 0) + v
            if s:
                out[e] = s
            else:
                del out[e]
    return LaurentPoly._raw(out, m)


def lp_denominator_vector(p: LaurentPoly) -> tuple[int, ...]:
    """``d_i = -min_e e_i`` over the support of ``p``."""
    if p.is_zero():
        raise ValueError("the zero polynomial has no denominator vector")
    return tuple(-x for x in p.min_exponents())


def lp_classify(p: LaurentPoly) -> dict[str, bool]:
    return {
        "is_nonneg": all(c >= 0 for c in p._terms.values()),
        "is_proper_sum": all(min(e) < 0 for e in p._terms),
    }
