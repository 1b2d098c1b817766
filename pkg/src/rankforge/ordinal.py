"""Ordinals below epsilon_0 in Cantor normal form.

An ordinal is a tuple of ``(exponent, coefficient)`` terms with strictly
decreasing exponents, each exponent itself an :class:`Ordinal`.  Values are
immutable and hashable; integers are accepted wherever an ordinal is expected.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Tuple, Union

OrdinalLike = Union["Ordinal", int]


class Order(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


class OrdinalSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def _term_hash(terms) -> int:
    # finite ordinals compare equal to ints, so they must hash alike
    if not terms:
        return hash(0)
    if len(terms) == 1 and not terms[0][0].terms:
        return hash(terms[0][1])
    return hash(terms)


@total_ordering
class Ordinal:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Iterable[Tuple["Ordinal", int]] = ()):
        terms = tuple((as_ordinal(e), int(c)) for e, c in terms)
        for i, (e, c) in enumerate(terms):
            if c < 1:
                raise ValueError("coefficients must be positive")
            if i and not e < terms[i - 1][0]:
                raise ValueError("exponents must be strictly decreasing")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_hash", _term_hash(terms))

    def __setattr__(self, name, value):
        raise AttributeError("Ordinal is immutable")

    @classmethod
    def _raw(cls, terms):
        obj = object.__new__(cls)
        object.__setattr__(obj, "terms", terms)
        object.__setattr__(obj, "_hash", _term_hash(terms))
        return obj

    @classmethod
    def of(cls, n: int) -> "Ordinal":
        if n < 0:
            raise ValueError("negative ordinal")
        return ZERO if n == 0 else cls._raw(((ZERO, n),))

    # -- classification -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or self.terms[0][0].is_zero()

    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero()

    def is_limit(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].is_zero()

    def __int__(self) -> int:
        if not self.is_finite():
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    def predecessor(self) -> "Ordinal":
        if not self.is_successor():
            raise ValueError(f"{self} has no predecessor")
        *head, (e, c) = self.terms
        return Ordinal._raw(tuple(head) + (((e, c - 1),) if c > 1 else ()))

    def successor(self) -> "Ordinal":
        return add(self, ONE)

    @property
    def leading_exponent(self) -> "Ordinal":
        if not self.terms:
            raise ValueError("0 has no leading exponent")
        return self.terms[0][0]

    # -- protocol -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return other >= 0 and self == Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __lt__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            if other < 0:
                return False
            other = Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return compare(self, other) is Order.LT

    def __hash__(self):
        return self._hash

    def __add__(self, other):
        return add(self, other)

    def __radd__(self, other):
        return add(other, self)

    def __mul__(self, other):
        return mul(self, other)

    def __rmul__(self, other):
        return mul(other, self)

    def __repr__(self):
        return f"Ordinal({format_ordinal(self)!r})"

    def __str__(self):
        return format_ordinal(self)


def as_ordinal(x: OrdinalLike) -> Ordinal:
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Ordinal.of(x)
    raise TypeError(f"not an ordinal: {x!r}")


ZERO = Ordinal._raw(())
ONE = Ordinal._raw(((ZERO, 1),))
OMEGA = Ordinal._raw(((ONE, 1),))


def compare(a: OrdinalLike, b: OrdinalLike) -> Order:
    a, b = as_ordinal(a), as_ordinal(b)
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = compare(ea, eb)
        if c is not Order.EQ:
            return c
        if ca != cb:
            return Order.LT if ca < cb else Order.GT
    la, lb = len(a.terms), len(b.terms)
    if la == lb:
        return Order.EQ
    return Order.LT if la < lb else Order.GT


def add(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    a, b = as_ordinal(a), as_ordinal(b)
    if b.is_zero():
        return a
    lead = b.terms[0][0]
    kept = [t for t in a.terms if not t[0] < lead]
    if kept and kept[-1][0] == lead:
        e, c = kept.pop()
        return Ordinal._raw(tuple(kept) + ((e, c + b.terms[0][1]),) + b.terms[1:])
    return Ordinal._raw(tuple(kept) + b.terms)


def mul(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    a, b = as_ordinal(a), as_ordinal(b)
    if a.is_zero() or b.is_zero():
        return ZERO
    lead, lead_coef = a.terms[0]
    out = ZERO
    for e, c in b.terms:
        if e.is_zero():
            # a * c = w^lead * (lead_coef * c) + tail of a
            part = Ordinal._raw(((lead, lead_coef * c),) + a.terms[1:])
        else:
            part = Ordinal._raw(((add(lead, e), c),))
        out = add(out, part)
    return out


def nat_add(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    """Hessenberg sum: add the CNF polynomials coefficient-wise."""
    a, b = as_ordinal(a), as_ordinal(b)
    coef = {}
    for e, c in a.terms + b.terms:
        coef[e] = coef.get(e, 0) + c
    return Ordinal._raw(tuple(sorted(coef.items(), key=lambda t: t[0], reverse=True)))


def omega_pow(exponent: OrdinalLike) -> Ordinal:
    return Ordinal._raw(((as_ordinal(exponent), 1),))


@dataclass(frozen=True)
class Analysis:
    kind: str
    cnf_length: int
    indecomposable: bool


def analyze(a: OrdinalLike) -> Analysis:
    a = as_ordinal(a)
    if a.is_zero():
        return Analysis("zero", 0, False)
    kind = "successor" if a.is_successor() else "limit"
    length = sum(c for _, c in a.terms)
    return Analysis(kind, length, len(a.terms) == 1 and a.terms[0][1] == 1)


# -- text form -----------------------------------------------------------

def format_ordinal(a: OrdinalLike) -> str:
    a = as_ordinal(a)
    if a.is_zero():
        return "0"
    parts = []
    for e, c in a.terms:
        if e.is_zero():
            parts.append(str(c))
            continue
        if e == ONE:
            base = "w"
        elif e.is_finite():
            base = f"w^{int(e)}"
        else:
            base = f"w^({format_ordinal(e)})"
        parts.append(base if c == 1 else f"{base}*{c}")
    return "+".join(parts)


class _Parser:
    def __init__(self, text: str):
        self.text = text.replace("ω", "w")
        self.i = 0

    def error(self, message):
        raise OrdinalSyntaxError(message, self.i)

    def skip(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self):
        self.skip()
        return self.text[self.i] if self.i < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.i += 1

    def nat(self) -> int:
        self.skip()
        start = self.i
        while self.i < len(self.text) and self.text[self.i].isdigit():
            self.i += 1
        if start == self.i:
            self.error("expected a natural number")
        return int(self.text[start:self.i])

    def ordinal(self) -> Ordinal:
        value = self.term()
        while self.peek() == "+":
            self.i += 1
            value = add(value, self.term())
        return value

    def term(self) -> Ordinal:
        ch = self.peek()
        if ch.isdigit():
            return Ordinal.of(self.nat())
        if ch != "w":
            self.error("expected 'w' or a natural number")
        self.i += 1
        exponent = ONE
        if self.peek() == "^":
            self.i += 1
            if self.peek() == "(":
                self.i += 1
                exponent = self.ordinal()
                self.expect(")")
            elif self.peek() == "w":
                # shorthand: w^w
                self.i += 1
                exponent = OMEGA
            else:
                exponent = Ordinal.of(self.nat())
        value = omega_pow(exponent)
        if self.peek() == "*":
            self.i += 1
            value = mul(value, self.nat())
        return value


def parse(text: str) -> Ordinal:
    p = _Parser(text)
    value = p.ordinal()
    if p.peek():
        p.error("unexpected trailing input")
    return value
