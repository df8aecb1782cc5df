"""Formal q-expressions: truncated multivariate series and closed forms.

Coordinates are q_1..q_r attached to a framing; a monomial q^eta is keyed
by its integer exponent vector.  Two layers:

  * QSeries: a series truncated at total degree N, the computable shadow.
  * QExpression: exact polynomial part plus "primitive" geometric terms
    c * q^eta / (1 - q^eta), closed under the operations the three-point
    functions need.

Stored primitive terms always have framing-nonnegative exponents.  A term
handed in with eta <= 0 componentwise is rewritten on construction through

    c * q^(-g) / (1 - q^(-g)) = -c - c * q^g / (1 - q^g)   (g >= 0)

which is the analytic continuation move between the two sides of a wall,
so the canonical form of an expression is the same no matter which side
it was assembled on.  A mixed-sign exponent has no such rewrite and is
rejected.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import ratfunc
from .ratfunc import RationalFunction


def _exponent_tuple(eta, rank: int | None = None) -> tuple[int, ...]:
    coords = tuple(eta.coords) if hasattr(eta, "coords") else tuple(eta)
    if not all(isinstance(c, int) and not isinstance(c, bool) for c in coords):
        raise ValueError(f"exponent vector must be integral, got {coords}")
    if rank is not None and len(coords) != rank:
        raise ValueError(f"rank mismatch: exponent rank {len(coords)} vs {rank}")
    return coords


def _monomial_value(exponent: tuple[int, ...], q: Sequence[Fraction]) -> Fraction:
    value = Fraction(1)
    for e, qi in zip(exponent, q):
        value *= Fraction(qi) ** e
    return value


@dataclass(frozen=True)
class QMonomial:
    """q^eta with a framing-nonnegative exponent vector."""

    exponent: tuple[int, ...]

    def __post_init__(self):
        exponent = _exponent_tuple(self.exponent)
        if any(e < 0 for e in exponent):
            raise ValueError(f"series monomial needs nonnegative exponents, got {exponent}")
        object.__setattr__(self, "exponent", exponent)

    @property
    def degree(self) -> int:
        return sum(self.exponent)

    @property
    def rank(self) -> int:
        return len(self.exponent)


def _sorted_terms(terms: Mapping[tuple[int, ...], Fraction]):
    return tuple(sorted(((e, c) for e, c in terms.items() if c != 0),
                        key=lambda item: (sum(item[0]), item[0])))


@dataclass(frozen=True)
class QSeries:
    """A q-series truncated at total degree <= order."""

    rank: int
    order: int
    terms: tuple[tuple[tuple[int, ...], Fraction], ...]

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("truncation order must be nonnegative")
        cleaned: dict[tuple[int, ...], Fraction] = {}
        for exponent, coeff in self.terms:
            exponent = _exponent_tuple(exponent, self.rank)
            if any(e < 0 for e in exponent):
                raise ValueError(f"series exponent must be nonnegative, got {exponent}")
            if sum(exponent) > self.order:
                continue
            coeff = Fraction(coeff)
            if coeff != 0:
                cleaned[exponent] = cleaned.get(exponent, Fraction(0)) + coeff
        object.__setattr__(self, "terms", _sorted_terms(cleaned))

    @classmethod
    def from_terms(cls, rank: int, order: int,
                   terms: Mapping[tuple[int, ...], Fraction | int]) -> "QSeries":
        return cls(rank, order, tuple((tuple(e), Fraction(c)) for e, c in terms.items()))

    @classmethod
    def zero(cls, rank: int, order: int) -> "QSeries":
        return cls(rank, order, ())

    @classmethod
    def constant(cls, rank: int, order: int, value: Fraction | int) -> "QSeries":
        return cls.from_terms(rank, order, {(0,) * rank: Fraction(value)})

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        exponent = _exponent_tuple(exponent, self.rank)
        for e, c in self.terms:
            if e == exponent:
                return c
        return Fraction(0)

    def as_dict(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self.terms)

    def monomials(self) -> Iterable[tuple[QMonomial, Fraction]]:
        for e, c in self.terms:
            yield QMonomial(e), c

    def _binary_check(self, other: "QSeries") -> int:
        if self.rank != other.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")
        return min(self.order, other.order)

    def __add__(self, other: "QSeries") -> "QSeries":
        order = self._binary_check(other)
        merged = self.as_dict()
        for e, c in other.terms:
            merged[e] = merged.get(e, Fraction(0)) + c
        return QSeries.from_terms(self.rank, order, merged)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + other.scale(-1)

    def __mul__(self, other: "QSeries") -> "QSeries":
        order = self._binary_check(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms:
            d1 = sum(e1)
            for e2, c2 in other.terms:
                if d1 + sum(e2) > order:
                    continue
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return QSeries.from_terms(self.rank, order, out)

    def scale(self, c: Fraction | int) -> "QSeries":
        c = Fraction(c)
        return QSeries(self.rank, self.order, tuple((e, c * v) for e, v in self.terms))

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise ValueError(f"cannot extend truncation {self.order} to {order}")
        return QSeries(self.rank, order, self.terms)

    def eval(self, q: Sequence[Fraction]) -> Fraction:
        """Exact value of the truncated polynomial at rational q."""
        if len(tuple(q)) != self.rank:
            raise ValueError(f"rank mismatch: series rank {self.rank} vs point rank {len(tuple(q))}")
        return sum((c * _monomial_value(e, q) for e, c in self.terms), start=Fraction(0))

    def to_text(self) -> str:
        """Deterministic rendering, terms by (degree, exponent)."""
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.terms:
            if sum(e) == 0:
                body = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)} * "
                body = f"{mag}q^[{','.join(map(str, e))}]"
            if not pieces:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append(("- " if c < 0 else "+ ") + body)
        return " ".join(pieces)

    __str__ = to_text


@dataclass(frozen=True)
class PrimitiveTerm:
    """The closed-form summand c * q^eta / (1 - q^eta)."""

    coefficient: Fraction
    eta: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))
        eta = _exponent_tuple(self.eta)
        if all(e == 0 for e in eta):
            raise ValueError("primitive term needs a nonzero exponent")
        object.__setattr__(self, "eta", eta)

    @property
    def rank(self) -> int:
        return len(self.eta)


def expand(term: PrimitiveTerm, order: int) -> QSeries:
    """Multiple-cover expansion c * sum_{k>=1} q^(k eta), truncated at order.

    Only terms whose exponent is nonnegative in the framing can be
    expanded; the other side of the wall has no series on this side.
    """
    if any(e < 0 for e in term.eta):
        raise ValueError("not expandable in this framing")
    degree = sum(term.eta)
    out = {}
    k = 1
    while k * degree <= order:
        out[tuple(k * e for e in term.eta)] = term.coefficient
        k += 1
    return QSeries.from_terms(term.rank, order, out)


@dataclass(frozen=True)
class QExpression:
    """Exact closed form: polynomial part plus primitive geometric terms.

    Construction normalizes every primitive term to a framing-nonnegative
    exponent via the continuation rewrite (see module docstring), merges
    duplicates, and drops zeros, so the representation is canonical.
    """

    rank: int
    poly: tuple[tuple[tuple[int, ...], Fraction], ...]
    prims: tuple[PrimitiveTerm, ...]

    def __post_init__(self):
        poly: dict[tuple[int, ...], Fraction] = {}
        for exponent, coeff in self.poly:
            exponent = _exponent_tuple(exponent, self.rank)
            if any(e < 0 for e in exponent):
                raise ValueError(f"polynomial exponent must be nonnegative, got {exponent}")
            coeff = Fraction(coeff)
            if coeff != 0:
                poly[exponent] = poly.get(exponent, Fraction(0)) + coeff
        prims: dict[tuple[int, ...], Fraction] = {}
        for term in self.prims:
            if term.rank != self.rank:
                raise ValueError(f"rank mismatch: term rank {term.rank} vs {self.rank}")
            eta, c = term.eta, term.coefficient
            if all(e >= 0 for e in eta):
                prims[eta] = prims.get(eta, Fraction(0)) + c
            elif all(e <= 0 for e in eta):
                flipped = tuple(-e for e in eta)
                zero = (0,) * self.rank
                poly[zero] = poly.get(zero, Fraction(0)) - c
                prims[flipped] = prims.get(flipped, Fraction(0)) - c
            else:
                raise ValueError(
                    f"mixed-sign curve class {eta}; not representable in this framing")
        object.__setattr__(self, "poly", _sorted_terms(poly))
        object.__setattr__(
            self, "prims",
            tuple(PrimitiveTerm(c, e) for e, c in
                  sorted(((e, c) for e, c in prims.items() if c != 0),
                         key=lambda item: (sum(item[0]), item[0]))))

    @classmethod
    def build(cls, rank: int,
              poly: Mapping[tuple[int, ...], Fraction | int] | Fraction | int = (),
              prims: Iterable[tuple[Fraction | int, Sequence[int]]] = ()) -> "QExpression":
        if isinstance(poly, (int, Fraction)):
            poly = {(0,) * rank: poly}
        poly_terms = tuple((tuple(e), Fraction(c)) for e, c in dict(poly).items())
        prim_terms = tuple(PrimitiveTerm(Fraction(c), _exponent_tuple(e)) for c, e in prims)
        return cls(rank, poly_terms, prim_terms)

    def __add__(self, other: "QExpression") -> "QExpression":
        if self.rank != other.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")
        return QExpression(self.rank, self.poly + other.poly, self.prims + other.prims)

    def scale(self, c: Fraction | int) -> "QExpression":
        c = Fraction(c)
        return QExpression(
            self.rank,
            tuple((e, c * v) for e, v in self.poly),
            tuple(PrimitiveTerm(c * t.coefficient, t.eta) for t in self.prims))

    def eval(self, q: Sequence[Fraction]) -> Fraction:
        """Exact evaluation at rational q with every q^eta != 1.

        Defined on both sides of the wall locus; only the locus itself is
        excluded, where a primitive denominator vanishes.
        """
        q = tuple(Fraction(v) for v in q)
        if len(q) != self.rank:
            raise ValueError(f"rank mismatch: expression rank {self.rank} vs point rank {len(q)}")
        total = sum((c * _monomial_value(e, q) for e, c in self.poly), start=Fraction(0))
        for term in self.prims:
            power = _monomial_value(term.eta, q)
            if power == 1:
                raise ValueError("on the wall locus")
            total += term.coefficient * power / (1 - power)
        return total

    def expand(self, order: int) -> QSeries:
        out = QSeries.from_terms(self.rank, order, dict(self.poly))
        for term in self.prims:
            out = out + expand(term, order)
        return out

    def to_text(self) -> str:
        parts = []
        poly_series = QSeries(self.rank, max([sum(e) for e, _ in self.poly], default=0),
                              self.poly)
        if poly_series.terms:
            parts.append(poly_series.to_text())
        for term in self.prims:
            c = term.coefficient
            mag = "" if abs(c) == 1 else f"{abs(c)} * "
            mono = f"q^[{','.join(map(str, term.eta))}]"
            body = f"{mag}{mono}/(1 - {mono})"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts) if parts else "0"

    __str__ = to_text


def _proportionality(exponent: tuple[int, ...], gamma: tuple[int, ...]) -> int | None:
    """The integer k with exponent = k * gamma, or None."""
    k = None
    for e, g in zip(exponent, gamma):
        if g == 0:
            if e != 0:
                return None
            continue
        ratio = Fraction(e, g)
        if ratio.denominator != 1:
            return None
        if k is None:
            k = int(ratio)
        elif k != int(ratio):
            return None
    if k is None:
        return None  # gamma must be nonzero; zero exponent handled by caller
    return k


def restrict_to_wall_variable(expr: QExpression, gamma) -> RationalFunction:
    """Collapse an expression in powers of gamma to a function of u = q^gamma.

    Every monomial and primitive exponent must be an integer multiple of
    gamma; anything else cannot be written in the single wall variable.
    """
    g = _exponent_tuple(gamma, expr.rank)
    if all(c == 0 for c in g):
        raise ValueError("wall class must be nonzero")
    out = ratfunc.ZERO
    for exponent, coeff in expr.poly:
        if all(e == 0 for e in exponent):
            out = out + RationalFunction.from_fraction(coeff)
            continue
        k = _proportionality(exponent, g)
        if k is None or k == 0:
            raise ValueError("mixed classes; use eval")
        out = out + RationalFunction.monomial(k).scale(coeff)
    for term in expr.prims:
        k = _proportionality(term.eta, g)
        if k is None or k == 0:
            raise ValueError("mixed classes; use eval")
        out = out + ratfunc.geometric_term(term.coefficient, k)
    return out
