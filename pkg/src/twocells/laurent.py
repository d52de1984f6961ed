"""Integer Laurent polynomials in one variable ``q``.

``q**g`` stands for the grading shift [[g]]; a polynomial records graded
multiplicities of direct summands.  Values are immutable.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping


class LaurentPoly:
    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        clean = {}
        for e, c in (coeffs or {}).items():
            c = int(c)
            if c:
                clean[int(e)] = c
        self._coeffs = dict(sorted(clean.items()))
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    # -- accessors --------------------------------------------------------
    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def __getitem__(self, exponent: int) -> int:
        return self._coeffs.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self):
        return bool(self._coeffs)

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self._coeffs.values())

    def eval1(self) -> int:
        return sum(self._coeffs.values())

    def evaluate(self, q):
        return sum(c * q**e for e, c in self._coeffs.items())

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def shift(self, g: int) -> "LaurentPoly":
        return LaurentPoly({e + g: c for e, c in self._coeffs.items()})

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._coeffs.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        return render(self)


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.constant(x)
    return None


q = LaurentPoly.monomial(1)


def add(p: LaurentPoly, r: LaurentPoly) -> LaurentPoly:
    return p + r


def mul(p: LaurentPoly, r: LaurentPoly) -> LaurentPoly:
    return p * r


def shift(p: LaurentPoly, g: int) -> LaurentPoly:
    """Translate every exponent by ``g`` (the shift [[g]])."""
    return p.shift(g)


def shift_sum(n: int, step: int) -> LaurentPoly:
    """``sum(q**(k*step) for k in range(n))``; zero when ``n == 0``."""
    if n < 0:
        raise ValueError(f"shift_sum needs n >= 0, got {n}")
    out: dict[int, int] = {}
    for k in range(n):
        out[k * step] = out.get(k * step, 0) + 1
    return LaurentPoly(out)


def total(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    acc = LaurentPoly()
    for p in polys:
        acc = acc + p
    return acc


def render(p: LaurentPoly) -> str:
    """Text form, exponents ascending: ``-q^-2+1+3*q``; zero renders as ``0``."""
    if p.is_zero():
        return "0"
    parts = []
    for e, c in p.items():
        if e == 0:
            body = str(abs(c))
        else:
            mono = "q" if e == 1 else f"q^{e}"
            body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += sign + body
    return text


_TERM = re.compile(r"([+-]?)(?:(\d+)\*?)?(q(?:\^(-?\d+))?)?")


def parse(text: str) -> LaurentPoly:
    """Inverse of :func:`render`; whitespace is ignored."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ValueError("empty Laurent polynomial")
    out: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos or not (m.group(2) or m.group(3)):
            raise ValueError(f"cannot parse Laurent polynomial {text!r} at offset {pos}")
        sign, num, mono, exp = m.groups()
        if pos > 0 and not sign:
            raise ValueError(f"missing sign between terms in {text!r}")
        c = int(num) if num else 1
        if sign == "-":
            c = -c
        if mono:
            e = int(exp) if exp is not None else 1
        else:
            e = 0
        out[e] = out.get(e, 0) + c
        pos = m.end()
    return LaurentPoly(out)
