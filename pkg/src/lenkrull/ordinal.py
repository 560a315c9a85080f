"""Ordinals below w^w in Cantor normal form.

An ordinal is stored as its Cantor normal form: a tuple of
``(exponent, coefficient)`` pairs with strictly decreasing natural exponents
and positive coefficients, so structural equality is ordinal equality.  The
empty tuple is 0.  All rings handled by this package have finite Krull
dimension, hence every length computed here stays below w^w and natural-number
exponents suffice; there is deliberately no way to build a transfinite
exponent.

Canonical string form: ``w`` for the first infinite ordinal, ``^`` for the
exponent, ``*`` for the coefficient, `` + `` between terms, terms in
decreasing exponent order (e.g. ``w^2*3 + w + 4``).  ``parse`` accepts terms
in any order and folds them with ordinal addition; ``format`` always emits
the canonical decreasing order, so ``parse(format(a)) == a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import ParseError

Term = tuple[int, int]


@dataclass(frozen=True)
class Ordinal:
    """An ordinal < w^w; ``terms`` is the Cantor normal form."""

    terms: tuple[Term, ...] = ()

    def __post_init__(self):
        prev = None
        for exponent, coefficient in self.terms:
            if exponent < 0 or coefficient <= 0:
                raise ValueError(f"bad CNF term ({exponent}, {coefficient})")
            if prev is not None and exponent >= prev:
                raise ValueError("CNF exponents must strictly decrease")
            prev = exponent

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "Ordinal":
        return cls(())

    @classmethod
    def from_int(cls, n: int) -> "Ordinal":
        if n < 0:
            raise ValueError("ordinals are non-negative")
        return cls(((0, n),) if n else ())

    @classmethod
    def from_length_vector(cls, vec: Mapping[int, int]) -> "Ordinal":
        """Sum of w^a * vec[a], largest exponent first.

        Summing in decreasing exponent order means nothing is absorbed, so the
        result is literally the CNF with the nonzero entries of ``vec``.
        """
        terms = []
        for exponent in sorted(vec, reverse=True):
            count = vec[exponent]
            if count < 0 or exponent < 0:
                raise ValueError("length vectors have natural entries")
            if count:
                terms.append((exponent, count))
        return cls(tuple(terms))

    @classmethod
    def from_json(cls, data: Iterable[Iterable[int]]) -> "Ordinal":
        return cls(tuple((int(e), int(c)) for e, c in data))

    @classmethod
    def parse(cls, text: str) -> "Ordinal":
        return parse(text)

    # -- arithmetic ----------------------------------------------------

    def add(self, other: "Ordinal") -> "Ordinal":
        """Ordinal sum; left terms below the leading exponent of ``other`` are absorbed."""
        if not other.terms:
            return self
        cut = other.terms[0][0]
        kept = [t for t in self.terms if t[0] > cut]
        merged = list(other.terms)
        for exponent, coefficient in self.terms:
            if exponent == cut:
                merged[0] = (cut, coefficient + merged[0][1])
                break
        return Ordinal(tuple(kept) + tuple(merged))

    def left_mul_omega(self) -> "Ordinal":
        """w * self: each term w^e*c becomes w^(e+1)*c."""
        return Ordinal(tuple((e + 1, c) for e, c in self.terms))

    def saturating_pred(self) -> "Ordinal":
        """Predecessor of a successor; limit ordinals (and 0) are fixed."""
        if not self.is_successor:
            return self
        head, (_, c) = self.terms[:-1], self.terms[-1]
        return Ordinal(head + ((0, c - 1),) if c > 1 else head)

    # -- inspection ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0] == 0

    @property
    def finite_part(self) -> int:
        """Coefficient of w^0."""
        if self.is_successor:
            return self.terms[-1][1]
        return 0

    def to_json(self) -> list[list[int]]:
        return [[e, c] for e, c in self.terms]

    # -- order and rendering -------------------------------------------

    def __lt__(self, other: "Ordinal") -> bool:
        return self.terms < other.terms

    def __le__(self, other: "Ordinal") -> bool:
        return self.terms <= other.terms

    def __gt__(self, other: "Ordinal") -> bool:
        return self.terms > other.terms

    def __ge__(self, other: "Ordinal") -> bool:
        return self.terms >= other.terms

    def __add__(self, other: "Ordinal") -> "Ordinal":
        return self.add(other)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        rendered = []
        for exponent, coefficient in self.terms:
            if exponent == 0:
                rendered.append(str(coefficient))
                continue
            part = "w" if exponent == 1 else f"w^{exponent}"
            if coefficient != 1:
                part += f"*{coefficient}"
            rendered.append(part)
        return " + ".join(rendered)

    def __repr__(self) -> str:
        return f"Ordinal({str(self)!r})"


ZERO = Ordinal.zero()
ONE = Ordinal.from_int(1)
OMEGA = Ordinal(((1, 1),))


def from_length_vector(vec: Mapping[int, int]) -> Ordinal:
    return Ordinal.from_length_vector(vec)


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    return a.add(b)


def left_mul_omega(a: Ordinal) -> Ordinal:
    return a.left_mul_omega()


def saturating_pred(a: Ordinal) -> Ordinal:
    return a.saturating_pred()


def compare(a: Ordinal, b: Ordinal) -> int:
    """-1 / 0 / +1 for a <, ==, > b; term tuples compare lexicographically."""
    if a.terms == b.terms:
        return 0
    return -1 if a.terms < b.terms else 1


def format_ordinal(a: Ordinal) -> str:
    return str(a)


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def eof(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def try_char(self, ch: str) -> bool:
        self.skip_ws()
        if self.pos < len(self.text) and self.text[self.pos] == ch:
            self.pos += 1
            return True
        return False

    def nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError(
                f"expected a natural number at position {start}", (start, start + 1)
            )
        return int(self.text[start : self.pos])


def parse(text: str) -> Ordinal:
    """Parse ``"0" | term (" + " term)*`` with ``term := w[^nat][*nat] | nat``."""
    sc = _Scanner(text)
    if sc.eof():
        raise ParseError("empty ordinal string", (0, max(len(text), 1)))
    total = ZERO
    while True:
        total = total.add(_parse_term(sc))
        if sc.eof():
            return total
        if not sc.try_char("+"):
            raise ParseError(
                f"expected '+' or end of input at position {sc.pos}",
                (sc.pos, sc.pos + 1),
            )


def _parse_term(sc: _Scanner) -> Ordinal:
    sc.skip_ws()
    if sc.pos < len(sc.text) and sc.text[sc.pos] == "w":
        sc.pos += 1
        exponent = sc.nat() if sc.try_char("^") else 1
        coefficient = sc.nat() if sc.try_char("*") else 1
        if coefficient == 0:
            return ZERO
        return Ordinal(((exponent, coefficient),))
    return Ordinal.from_int(sc.nat())
