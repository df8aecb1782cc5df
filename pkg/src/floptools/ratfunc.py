"""Univariate rational functions with integer coefficients, canonical form.

Polynomials are coefficient tuples in ascending degree with no trailing
zeros (the zero polynomial is (0,)).  A RationalFunction is reduced to a
coprime numerator/denominator pair with positive leading denominator
coefficient and no common integer content across the pair, so equal
functions compare equal as values.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

Poly = tuple  # ascending coefficients


def poly_trim(coeffs: Sequence) -> tuple:
    coeffs = list(coeffs)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs) if coeffs else (0,)


def poly_is_zero(p: Sequence) -> bool:
    return all(c == 0 for c in p)


def poly_degree(p: Sequence) -> int:
    """Degree with the convention deg 0 = -1."""
    p = poly_trim(p)
    return -1 if poly_is_zero(p) else len(p) - 1


def poly_add(p: Sequence, q: Sequence) -> tuple:
    n = max(len(p), len(q))
    return poly_trim(tuple(
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)))


def poly_neg(p: Sequence) -> tuple:
    return tuple(-c for c in p)


def poly_sub(p: Sequence, q: Sequence) -> tuple:
    return poly_add(p, poly_neg(q))


def poly_mul(p: Sequence, q: Sequence) -> tuple:
    if poly_is_zero(p) or poly_is_zero(q):
        return (0,)
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return poly_trim(out)


def poly_scale(c, p: Sequence) -> tuple:
    return poly_trim(tuple(c * a for a in p))


def poly_eval(p: Sequence, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(poly_trim(p)):
        acc = acc * x + c
    return acc


def poly_divmod(p: Sequence, q: Sequence) -> tuple[tuple, tuple]:
    """Exact rational division with remainder."""
    if poly_is_zero(q):
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in poly_trim(p)]
    div = [Fraction(c) for c in poly_trim(q)]
    dq = len(div) - 1
    lead = div[-1]
    quo = [Fraction(0)] * max(len(rem) - dq, 1)
    while not poly_is_zero(rem) and len(rem) - 1 >= dq:
        shift = len(rem) - 1 - dq
        factor = rem[-1] / lead
        quo[shift] = factor
        for i in range(len(div)):
            rem[shift + i] -= factor * div[i]
        rem = list(poly_trim(rem))
        if poly_is_zero(rem):
            break
    return poly_trim(quo), poly_trim(rem)


def poly_content(p: Sequence) -> int:
    """Positive gcd of the integer coefficients (content of 0 is 0)."""
    g = 0
    for c in poly_trim(p):
        g = gcd(g, abs(int(c)))
    return g


def poly_primitive(p: Sequence) -> tuple:
    """Integer-primitive representative of a rational-coefficient polynomial."""
    p = poly_trim(p)
    if poly_is_zero(p):
        return (0,)
    fracs = [Fraction(c) for c in p]
    denom = 1
    for c in fracs:
        denom = denom * c.denominator // gcd(denom, c.denominator)
    ints = [int(c * denom) for c in fracs]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    return tuple(c // g for c in ints)


def poly_gcd(p: Sequence, q: Sequence) -> tuple:
    """Monic-free gcd: integer-primitive, positive leading coefficient."""
    a, b = poly_trim(p), poly_trim(q)
    while not poly_is_zero(b):
        _, r = poly_divmod(a, b)
        a, b = b, r
    if poly_is_zero(a):
        return (0,)
    a = poly_primitive(a)
    return a if a[-1] > 0 else poly_neg(a)


def poly_str(p: Sequence, var: str = "u") -> str:
    p = poly_trim(p)
    if poly_is_zero(p):
        return "0"
    pieces = []
    for power in range(len(p) - 1, -1, -1):
        c = p[power]
        if c == 0:
            continue
        mag = abs(c)
        if power == 0:
            body = str(mag)
        else:
            head = "" if mag == 1 else f"{mag}*"
            body = f"{head}{var}" + (f"^{power}" if power > 1 else "")
        if not pieces:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append(("- " if c < 0 else "+ ") + body)
    return " ".join(pieces)


@dataclass(frozen=True)
class RationalFunction:
    """num/den over the integers, always in canonical reduced form."""

    num: tuple[int, ...]
    den: tuple[int, ...]

    def __post_init__(self):
        num, den = poly_trim(self.num), poly_trim(self.den)
        if poly_is_zero(den):
            raise ZeroDivisionError("rational function with zero denominator")
        num, den = poly_primitive(num) if not poly_is_zero(num) else (0,), poly_primitive(den)
        g = poly_gcd(num, den)
        if poly_degree(g) > 0:
            num, _ = poly_divmod(num, g)
            den, _ = poly_divmod(den, g)
            num, den = poly_primitive(num) if not poly_is_zero(num) else (0,), poly_primitive(den)
        if den[-1] < 0:
            num, den = poly_neg(num), poly_neg(den)
        if poly_is_zero(num):
            num, den = (0,), (1,)
        object.__setattr__(self, "num", tuple(int(c) for c in num))
        object.__setattr__(self, "den", tuple(int(c) for c in den))

    @classmethod
    def from_fraction(cls, value: Fraction | int) -> "RationalFunction":
        value = Fraction(value)
        return cls((value.numerator,), (value.denominator,))

    @classmethod
    def monomial(cls, k: int) -> "RationalFunction":
        """u^k for any integer k (negative powers allowed)."""
        if k >= 0:
            return cls((0,) * k + (1,), (1,))
        return cls((1,), (0,) * (-k) + (1,))

    @property
    def is_zero(self) -> bool:
        return self.num == (0,)

    @property
    def is_constant(self) -> bool:
        return poly_degree(self.num) <= 0 and poly_degree(self.den) == 0

    def as_fraction(self) -> Fraction:
        if not self.is_constant:
            raise ValueError("not a constant rational function")
        return Fraction(self.num[0], self.den[0])

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            poly_add(poly_mul(self.num, other.den), poly_mul(other.num, self.den)),
            poly_mul(self.den, other.den))

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(poly_neg(self.num), self.den)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(poly_mul(self.num, other.num), poly_mul(self.den, other.den))

    def scale(self, c: Fraction | int) -> "RationalFunction":
        c = Fraction(c)
        return RationalFunction(
            poly_scale(c.numerator, self.num), poly_scale(c.denominator, self.den))

    def eval(self, u: Fraction | int) -> Fraction:
        u = Fraction(u)
        bottom = poly_eval(self.den, u)
        if bottom == 0:
            raise ValueError(f"evaluation at a pole: u = {u}")
        return poly_eval(self.num, u) / bottom

    def __str__(self) -> str:
        if poly_degree(self.den) == 0 and self.den[0] == 1:
            return poly_str(self.num)
        return f"({poly_str(self.num)})/({poly_str(self.den)})"


ZERO = RationalFunction((0,), (1,))
ONE = RationalFunction((1,), (1,))


def geometric_term(c: Fraction | int, k: int) -> RationalFunction:
    """The function c * u^k / (1 - u^k) for a nonzero integer k.

    For k < 0 this is c / (u^|k| - 1), the same function written without
    negative powers.
    """
    if k == 0:
        raise ValueError("geometric term needs a nonzero power")
    if k > 0:
        base = RationalFunction((0,) * k + (1,), (1,) + (0,) * (k - 1) + (-1,))
    else:
        base = RationalFunction((1,), (-1,) + (0,) * (-k - 1) + (1,))
    return base.scale(c)
