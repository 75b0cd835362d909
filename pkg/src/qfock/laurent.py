"""Laurent polynomials in one variable ``q`` with integer coefficients.

Values are immutable and stored sparsely as ``{exponent: coefficient}`` with
no zero coefficients, so equality is plain dict equality.
"""
from __future__ import annotations

import json
import re
from typing import Iterable, Mapping

__all__ = ["LaurentPoly", "ZERO", "ONE", "Q", "add", "mul", "bar",
           "in_positive_part", "in_negative_part", "parse"]


class LaurentPoly:
    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        if coeffs:
            for e, a in coeffs.items():
                if not isinstance(a, int) or isinstance(a, bool):
                    raise TypeError(f"coefficient {a!r} is not an integer")
                if a:
                    c[int(e)] = a
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict) -> "LaurentPoly":
        # c must already be canonical (no zero values)
        p = object.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls._raw({exponent: coeff} if coeff else {})

    @classmethod
    def const(cls, a: int) -> "LaurentPoly":
        return cls.monomial(0, a)

    # -- inspection -------------------------------------------------------

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def __getitem__(self, e: int) -> int:
        return self._c.get(e, 0)

    def __bool__(self) -> bool:
        return bool(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def min_degree(self) -> int | None:
        return min(self._c) if self._c else None

    def max_degree(self) -> int | None:
        return max(self._c) if self._c else None

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not other._c:
            return self
        if not self._c:
            return other
        c = dict(self._c)
        for e, a in other._c.items():
            v = c.get(e, 0) + a
            if v:
                c[e] = v
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -a for e, a in self._c.items()})

    def __sub__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._c, other._c
        if not a or not b:
            return ZERO
        if len(a) == 1:
            (e0, a0), = a.items()
            return LaurentPoly._raw({e0 + e: a0 * v for e, v in b.items()})
        if len(b) == 1:
            (e0, b0), = b.items()
            return LaurentPoly._raw({e0 + e: b0 * v for e, v in a.items()})
        c: dict[int, int] = {}
        for e1, v1 in a.items():
            for e2, v2 in b.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return LaurentPoly._raw({e: v for e, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if len(self._c) == 1:
                (e, a), = self._c.items()
                if a in (1, -1):
                    return LaurentPoly._raw({-e * (-k): a ** (-k)})
            raise ValueError("only monomials with unit coefficient are invertible")
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``q**k``."""
        if not k:
            return self
        return LaurentPoly._raw({e + k: a for e, a in self._c.items()})

    def bar(self) -> "LaurentPoly":
        return LaurentPoly._raw({-e: a for e, a in self._c.items()})

    def evaluate(self, q):
        return sum(a * q ** e for e, a in self._c.items())

    # -- lattice tests ----------------------------------------------------

    def in_positive_part(self) -> bool:
        """True iff every exponent is >= 1, i.e. ``self`` lies in q Z[q]."""
        return all(e >= 1 for e in self._c)

    def in_negative_part(self) -> bool:
        """True iff every exponent is <= -1, i.e. ``self`` lies in q^-1 Z[q^-1]."""
        return all(e <= -1 for e in self._c)

    def truncate(self, lo: int | None = None, hi: int | None = None) -> "LaurentPoly":
        """Keep the terms whose exponent lies in ``[lo, hi]``."""
        return LaurentPoly._raw({e: a for e, a in self._c.items()
                                 if (lo is None or e >= lo) and (hi is None or e <= hi)})

    # -- rendering --------------------------------------------------------

    def __str__(self) -> str:
        if not self._c:
            return "0"
        out = []
        for e, a in sorted(self._c.items()):
            if e == 0:
                mono = str(abs(a))
            else:
                x = "q" if e == 1 else f"q^{e}"
                mono = x if abs(a) == 1 else f"{abs(a)}*{x}"
            if not out:
                out.append(("-" if a < 0 else "") + mono)
            else:
                out.append(("- " if a < 0 else "+ ") + mono)
        return " ".join(out)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"

    def to_json(self) -> list[list[int]]:
        return [[e, a] for e, a in sorted(self._c.items())]

    @classmethod
    def from_json(cls, data: Iterable) -> "LaurentPoly":
        if isinstance(data, str):
            data = json.loads(data)
        c: dict[int, int] = {}
        for pair in data:
            e, a = pair
            if not isinstance(e, int) or not isinstance(a, int):
                raise ValueError(f"bad [exponent, coefficient] pair {pair!r}")
            if e in c:
                raise ValueError(f"duplicate exponent {e}")
            c[e] = a
        return cls(c)

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        return parse(text)


def _coerce(x) -> LaurentPoly | None:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return LaurentPoly.const(x)
    return None


ZERO = LaurentPoly._raw({})
ONE = LaurentPoly._raw({0: 1})
Q = LaurentPoly._raw({1: 1})

_TERM = re.compile(r"""
    \s*([+-])?\s*                 # sign
    (?:(\d+)\s*(\*)?\s*)?         # coefficient
    (q(?:\s*\^\s*(-?\d+))?)?      # power of q
    \s*""", re.X)


def parse(text: str) -> LaurentPoly:
    """Parse the human form produced by ``str``, e.g. ``"-q^-1 + 2*q^3"``."""
    s = text.strip()
    if s == "0":
        return ZERO
    if not s:
        raise ValueError("empty polynomial string")
    c: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at offset {pos}")
        sign, num, star, qpart, exp = m.groups()
        if sign is None and not first:
            raise ValueError(f"missing operator in {text!r} at offset {pos}")
        if num is None and qpart is None:
            raise ValueError(f"empty term in {text!r} at offset {pos}")
        if star and qpart is None:
            raise ValueError(f"dangling '*' in {text!r}")
        a = int(num) if num is not None else 1
        if sign == "-":
            a = -a
        e = 0 if qpart is None else (1 if exp is None else int(exp))
        c[e] = c.get(e, 0) + a
        pos = m.end()
        first = False
    return LaurentPoly(c)


def add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def bar(a: LaurentPoly) -> LaurentPoly:
    return a.bar()


def in_positive_part(a: LaurentPoly) -> bool:
    return a.in_positive_part()


def in_negative_part(a: LaurentPoly) -> bool:
    return a.in_negative_part()
