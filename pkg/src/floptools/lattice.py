"""Integral divisor and curve classes, cubic intersection forms, framings.

The ambient data is a pair of dual free abelian groups of finite rank:
divisor classes on one side, curve classes on the other, paired by the
standard dot product in fixed bases.  Rank is carried on every object and
checked at every operation boundary; nothing broadcasts.

Complexified classes B + iJ and their exponentials live here too, since
they are coordinate data for the series modules: a framing basis converts
B + iJ into the coordinates q_j = exp(2 pi i a_j).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Mapping, Sequence

from . import exact


def _int_coords(coords: Sequence, what: str) -> tuple[int, ...]:
    out = []
    for c in coords:
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise ValueError(f"{what} coordinates must be integers, got {c}")
            c = c.numerator
        if not isinstance(c, int) or isinstance(c, bool):
            raise ValueError(f"{what} coordinates must be integers, got {c!r}")
        out.append(c)
    if not out:
        raise ValueError(f"{what} needs positive rank")
    return tuple(out)


@dataclass(frozen=True)
class DivisorClass:
    """An integral divisor class in the fixed basis."""

    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", _int_coords(self.coords, "divisor"))

    @property
    def rank(self) -> int:
        return len(self.coords)

    @classmethod
    def zero(cls, rank: int) -> "DivisorClass":
        return cls((0,) * rank)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        _check_rank(self, other)
        return DivisorClass(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        _check_rank(self, other)
        return DivisorClass(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(tuple(-a for a in self.coords))

    def __rmul__(self, scalar: int) -> "DivisorClass":
        if not isinstance(scalar, int):
            raise ValueError("divisor classes scale by integers only")
        return DivisorClass(tuple(scalar * a for a in self.coords))


@dataclass(frozen=True)
class CurveClass:
    """An integral curve class in the dual basis."""

    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", _int_coords(self.coords, "curve"))

    @property
    def rank(self) -> int:
        return len(self.coords)

    @classmethod
    def zero(cls, rank: int) -> "CurveClass":
        return cls((0,) * rank)

    def __add__(self, other: "CurveClass") -> "CurveClass":
        _check_rank(self, other)
        return CurveClass(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "CurveClass") -> "CurveClass":
        _check_rank(self, other)
        return CurveClass(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "CurveClass":
        return CurveClass(tuple(-a for a in self.coords))

    def __rmul__(self, scalar: int) -> "CurveClass":
        if not isinstance(scalar, int):
            raise ValueError("curve classes scale by integers only")
        return CurveClass(tuple(scalar * a for a in self.coords))

    def is_primitive(self) -> bool:
        return exact.primitive_vector(self.coords) == self.coords


def _check_rank(a, b) -> None:
    if a.rank != b.rank:
        raise ValueError(f"rank mismatch: {a.rank} vs {b.rank}")


def pair(divisor: DivisorClass | Sequence[int], curve: CurveClass | Sequence[int]) -> int:
    """Intersection pairing of a divisor class with a curve class."""
    d = divisor.coords if isinstance(divisor, DivisorClass) else tuple(divisor)
    c = curve.coords if isinstance(curve, CurveClass) else tuple(curve)
    if len(d) != len(c):
        raise ValueError(f"rank mismatch: divisor rank {len(d)} vs curve rank {len(c)}")
    return sum(a * b for a, b in zip(d, c))


@dataclass(frozen=True)
class CubicForm:
    """A symmetric cubic form, stored by its coefficients c_{ijk} with i <= j <= k.

    Evaluation sums c_{ijk} over the distinct permutations of each index
    multiset, so c_{ijk} is the literal coefficient of the monomial
    x_i x_j x_k in the associated polynomial.
    """

    rank: int
    entries: tuple[tuple[tuple[int, int, int], int], ...]

    def __post_init__(self):
        seen = {}
        for key, value in self.entries:
            i, j, k = key
            if not (0 <= i <= j <= k < self.rank):
                raise ValueError(f"cubic index {key} out of order for rank {self.rank}")
            if key in seen:
                raise ValueError(f"duplicate cubic index {key}")
            if not isinstance(value, int) or isinstance(value, bool):
                raise ValueError(f"cubic coefficient for {key} must be an integer")
            if value != 0:
                seen[key] = value
        object.__setattr__(self, "entries", tuple(sorted(seen.items())))

    @classmethod
    def from_coeffs(cls, rank: int, coeffs: Mapping[tuple[int, int, int], int]) -> "CubicForm":
        return cls(rank, tuple(coeffs.items()))

    @classmethod
    def zero(cls, rank: int) -> "CubicForm":
        return cls(rank, ())

    @property
    def coeffs(self) -> dict[tuple[int, int, int], int]:
        return dict(self.entries)

    def coefficient(self, i: int, j: int, k: int) -> int:
        key = tuple(sorted((i, j, k)))
        return self.coeffs.get(key, 0)

    def evaluate(self, a: DivisorClass, b: DivisorClass, c: DivisorClass) -> int:
        for d in (a, b, c):
            if d.rank != self.rank:
                raise ValueError(f"rank mismatch: form rank {self.rank} vs divisor rank {d.rank}")
        total = 0
        for (i, j, k), coeff in self.entries:
            for p, q, r in set(permutations((i, j, k))):
                total += coeff * a.coords[p] * b.coords[q] * c.coords[r]
        return total

    __call__ = evaluate

    def subtract_cube(self, gamma: CurveClass, weight: int) -> "CubicForm":
        """Return the form with c_{ijk} replaced by c_{ijk} - weight * g_i g_j g_k."""
        if gamma.rank != self.rank:
            raise ValueError(f"rank mismatch: form rank {self.rank} vs curve rank {gamma.rank}")
        g = gamma.coords
        coeffs = self.coeffs
        keys = set(coeffs)
        for i in range(self.rank):
            for j in range(i, self.rank):
                for k in range(j, self.rank):
                    if g[i] * g[j] * g[k] != 0:
                        keys.add((i, j, k))
        out = {}
        for key in keys:
            i, j, k = key
            value = coeffs.get(key, 0) - weight * g[i] * g[j] * g[k]
            if value != 0:
                out[key] = value
        return CubicForm.from_coeffs(self.rank, out)


@dataclass(frozen=True)
class ComplexifiedClass:
    """B + iJ with exact rational coordinates for both parts."""

    b: tuple[Fraction, ...]
    j: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "b", exact.frac_vector(self.b))
        object.__setattr__(self, "j", exact.frac_vector(self.j))
        if len(self.b) != len(self.j):
            raise ValueError(f"rank mismatch: B rank {len(self.b)} vs J rank {len(self.j)}")
        if not self.b:
            raise ValueError("complexified class needs positive rank")

    @property
    def rank(self) -> int:
        return len(self.b)


@dataclass(frozen=True)
class FramingBasis:
    """An integral basis e^1..e^r whose span cone fixes the series coordinates.

    The basis must be unimodular so integral classes have integral
    coordinates.  exponent() converts a curve class to the exponent vector
    of its series monomial: component j is the pairing of e^j with the class.
    """

    basis: tuple[DivisorClass, ...]

    def __post_init__(self):
        basis = tuple(self.basis)
        if not basis:
            raise ValueError("framing needs at least one basis vector")
        rank = basis[0].rank
        if any(e.rank != rank for e in basis) or len(basis) != rank:
            raise ValueError("framing basis must be square")
        d = exact.det(tuple(e.coords for e in basis))
        if d not in (1, -1):
            raise ValueError(f"framing basis must be unimodular, det = {d}")
        object.__setattr__(self, "basis", basis)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @classmethod
    def standard(cls, rank: int) -> "FramingBasis":
        return cls(tuple(DivisorClass(tuple(1 if j == i else 0 for j in range(rank)))
                         for i in range(rank)))

    def exponent(self, eta: CurveClass | Sequence[int]) -> tuple[int, ...]:
        return tuple(pair(e, eta) for e in self.basis)

    def coefficients(self, vector: Sequence) -> tuple[Fraction, ...]:
        """Exact coordinates of a divisor-side vector in this basis."""
        if len(tuple(vector)) != self.rank:
            raise ValueError(f"rank mismatch: framing rank {self.rank} vs vector rank {len(tuple(vector))}")
        columns = tuple(zip(*(e.coords for e in self.basis)))
        return exact.solve(columns, tuple(vector))

    def cone(self):
        from .cones import cone_from_rays
        return cone_from_rays(tuple(e.coords for e in self.basis))


def q_coordinates(z: ComplexifiedClass, framing: FramingBasis) -> tuple[complex, ...]:
    """Coordinates q_j = exp(2 pi i a_j) of B + iJ = sum a_j e^j.

    J must lie in the open framing cone (all imaginary parts positive), so
    every |q_j| lands strictly between 0 and 1.  Shifting B by an integral
    class leaves the result unchanged: the real parts are reduced mod 1
    exactly before exponentiating.
    """
    if z.rank != framing.rank:
        raise ValueError(f"rank mismatch: class rank {z.rank} vs framing rank {framing.rank}")
    a_re = framing.coefficients(z.b)
    a_im = framing.coefficients(z.j)
    if any(im <= 0 for im in a_im):
        raise ValueError("outside framing cone")
    out = []
    for re, im in zip(a_re, a_im):
        amplitude = math.exp(-2.0 * math.pi * float(im))
        phase = 2.0 * math.pi * float(re % 1)
        out.append(amplitude * complex(math.cos(phase), math.sin(phase)))
    return tuple(out)
