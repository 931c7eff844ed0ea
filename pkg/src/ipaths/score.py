"""Exact score algebra.

A score ``s`` is a base-2 logarithm of a positive integer ``N``; it is kept as
the prime factorization of ``N`` so that summing scores becomes adding
exponents and comparing scores becomes comparing integers.  Nothing in this
module touches floating point.
"""

from __future__ import annotations

import decimal
import enum
from collections import Counter
from functools import lru_cache
from typing import Iterable, Mapping


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``n >= 1`` by trial division, primes ascending."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def _is_prime(p: int) -> bool:
    return p >= 2 and factorize(p) == ((p, 1),)


class ExactScore:
    """Score ``log2(prod p**e)`` held as an immutable ``{p: e}`` map."""

    __slots__ = ("_factors",)

    def __init__(self, factors: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = factors.items() if isinstance(factors, Mapping) else factors
        clean: dict[int, int] = {}
        for p, e in items:
            p, e = int(p), int(e)
            if e < 0:
                raise ValueError(f"negative exponent {e} for {p}")
            if e == 0:
                continue
            if not _is_prime(p):
                raise ValueError(f"{p} is not prime")
            clean[p] = clean.get(p, 0) + e
        self._factors = tuple(sorted(clean.items()))

    @classmethod
    def _trusted(cls, items: Iterable[tuple[int, int]]) -> "ExactScore":
        obj = cls.__new__(cls)
        obj._factors = tuple(sorted((p, e) for p, e in items if e))
        return obj

    @classmethod
    def one(cls) -> "ExactScore":
        """The score 0 (value 1)."""
        return cls._trusted(())

    @classmethod
    def from_int(cls, n: int) -> "ExactScore":
        return cls._trusted(factorize(n))

    @classmethod
    def power(cls, base: int, exponent: int) -> "ExactScore":
        if exponent < 0:
            raise ValueError("exponent must be natural")
        return cls._trusted((p, e * exponent) for p, e in factorize(base))

    @property
    def factors(self) -> dict[int, int]:
        return dict(self._factors)

    def materialize(self) -> int:
        value = 1
        for p, e in self._factors:
            value *= p**e
        return value

    @property
    def value(self) -> int:
        return self.materialize()

    def __mul__(self, other: "ExactScore") -> "ExactScore":
        if not isinstance(other, ExactScore):
            return NotImplemented
        acc = Counter(dict(self._factors))
        acc.update(dict(other._factors))
        return ExactScore._trusted(acc.items())

    def __pow__(self, k: int) -> "ExactScore":
        if k < 0:
            raise ValueError("exponent must be natural")
        return ExactScore._trusted((p, e * k) for p, e in self._factors)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactScore):
            return NotImplemented
        return self._factors == other._factors

    def __hash__(self) -> int:
        return hash(self._factors)

    def __lt__(self, other: "ExactScore") -> bool:
        return compare(self, other) is Ordering.LESS

    def __le__(self, other: "ExactScore") -> bool:
        return compare(self, other) is not Ordering.GREATER

    def __gt__(self, other: "ExactScore") -> bool:
        return compare(self, other) is Ordering.GREATER

    def __ge__(self, other: "ExactScore") -> bool:
        return compare(self, other) is not Ordering.LESS

    def __str__(self) -> str:
        if not self._factors:
            return "1"
        return " * ".join(f"{p}^{e}" for p, e in self._factors)

    def __repr__(self) -> str:
        return f"ExactScore({dict(self._factors)!r})"

    @classmethod
    def parse(cls, text: str) -> "ExactScore":
        """Inverse of ``str``: ``"2^3 * 5^1"`` or ``"1"``."""
        text = text.strip()
        if text == "1":
            return cls.one()
        factors = []
        for term in text.split("*"):
            term = term.strip()
            base, sep, exp = term.partition("^")
            if not sep or not base.isdigit() or not exp.isdigit():
                raise ValueError(f"malformed factor {term!r}")
            factors.append((int(base), int(exp)))
        primes = [p for p, _ in factors]
        if primes != sorted(set(primes)) or any(e == 0 for _, e in factors):
            raise ValueError(f"non-canonical factored form {text!r}")
        return cls(factors)


def compare(a: ExactScore, b: ExactScore) -> Ordering:
    """Order two scores exactly: cancel shared prime powers, compare integers."""
    fa, fb = dict(a._factors), dict(b._factors)
    left = right = 1
    for p in fa.keys() | fb.keys():
        d = fa.get(p, 0) - fb.get(p, 0)
        if d > 0:
            left *= p**d
        elif d < 0:
            right *= p**-d
    if left < right:
        return Ordering.LESS
    if left > right:
        return Ordering.GREATER
    return Ordering.EQUAL


def _round_sig(x: decimal.Decimal, digits: int) -> str:
    """Render ``x > 0`` with ``digits`` significant digits, no exponent notation."""
    ctx = decimal.Context(prec=digits + 10, rounding=decimal.ROUND_HALF_EVEN)
    q = decimal.Decimal(1).scaleb(x.adjusted() - digits + 1)
    r = x.quantize(q, context=ctx)
    if r.adjusted() != x.adjusted():
        # rounding carried into a new leading digit, e.g. 9.9996 -> 10.00
        q = decimal.Decimal(1).scaleb(r.adjusted() - digits + 1)
        r = x.quantize(q, context=ctx)
    return format(r, "f")


def approx_decimal(a: ExactScore, digits: int) -> str:
    """The score ``log2(a)`` to ``digits`` significant digits, every digit certified.

    Working precision grows until both ends of a rigorous error interval
    round to the same string.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    factors = a._factors
    if not factors:
        return "0" if digits == 1 else "0." + "0" * (digits - 1)
    if len(factors) == 1 and factors[0][0] == 2:
        return _round_sig(decimal.Decimal(factors[0][1]), digits)

    prec = digits + 10
    while True:
        ctx = decimal.Context(prec=prec, rounding=decimal.ROUND_HALF_EVEN)
        total = decimal.Decimal(0)
        for p, e in factors:
            total = ctx.add(total, ctx.multiply(decimal.Decimal(e), ctx.ln(decimal.Decimal(p))))
        x = ctx.divide(total, ctx.ln(decimal.Decimal(2)))
        # every op above is correctly rounded (relative error <= 10**(1-prec)); all
        # terms are positive, so the accumulated relative error stays below this
        slack = decimal.Decimal(3 * len(factors) + 6).scaleb(1 - prec)
        lo = ctx.multiply(x, ctx.subtract(1, slack))
        hi = ctx.multiply(x, ctx.add(1, slack))
        r_lo, r_hi = _round_sig(lo, digits), _round_sig(hi, digits)
        if r_lo == r_hi:
            return r_lo
        prec *= 2
