"""Exact rational polyhedral cones with canonical double descriptions.

Every cone carries both generators (rays) and halfspace normals, kept in a
canonical form: primitive integer vectors, deduplicated, sorted
lexicographically.  Lineality shows up as +/- ray pairs, a cone of less
than full dimension as +/- halfspace pairs cutting out its span.  Two
cones are equal as sets exactly when they compare equal as values.

The conversion in both directions reduces to one primitive: extreme rays
plus lineality of the dual cone D(V) = {y : y . v >= 0 for all v in V},
computed by incremental double description with the combinatorial
adjacency test.  Exactness over Fraction, built for desk-scale ranks.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, Sequence

from . import exact
from .lattice import CurveClass


def _prepare_vectors(vectors: Iterable[Sequence], rank: int | None, what: str):
    prepared = []
    for v in vectors:
        coords = tuple(v.coords) if hasattr(v, "coords") else tuple(v)
        if exact.is_zero_vector(coords):
            raise ValueError(f"zero vector is not a valid {what}")
        prepared.append(exact.primitive_vector(coords))
    if prepared:
        lengths = {len(v) for v in prepared}
        if len(lengths) != 1:
            raise ValueError(f"{what} vectors have mixed ranks {sorted(lengths)}")
        found = lengths.pop()
        if rank is not None and rank != found:
            raise ValueError(f"rank mismatch: declared {rank}, vectors have rank {found}")
        rank = found
    if rank is None:
        raise ValueError(f"rank required when no {what} vectors are given")
    return sorted(set(prepared)), rank


def _initial_simplex(m_rows: list[tuple[int, ...]], k: int):
    """Greedy choice of k independent constraint rows and the inverse matrix."""
    chosen: list[int] = []
    for i in range(len(m_rows)):
        if exact.matrix_rank([m_rows[j] for j in chosen] + [m_rows[i]]) > len(chosen):
            chosen.append(i)
            if len(chosen) == k:
                break
    if len(chosen) < k:
        raise ValueError("constraint matrix does not have full column rank")
    inv = exact.inverse(tuple(m_rows[i] for i in chosen))
    return chosen, inv


def _extreme_rays_pointed(m_rows: list[tuple[int, ...]], k: int) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone {c in Q^k : M c >= 0}.

    Incremental double description: start from a simplicial cone cut out by
    k independent constraints, then add the remaining constraints one at a
    time, combining adjacent positive/negative rays.  Adjacency is the
    combinatorial test on tight sets, valid because the cone stays pointed.
    """
    chosen, inv = _initial_simplex(m_rows, k)
    rays = []
    for col in range(k):
        column = tuple(inv[row][col] for row in range(k))
        rays.append(exact.primitive_vector(column))
    # tight sets hold indices into m_rows of processed constraints at value 0
    processed = list(chosen)
    tight = []
    for ray in rays:
        tight.append(frozenset(i for i in processed if exact.dot(m_rows[i], ray) == 0))
    for i in range(len(m_rows)):
        if i in chosen:
            continue
        row = m_rows[i]
        values = [exact.dot(row, ray) for ray in rays]
        keep_idx = [j for j, v in enumerate(values) if v >= 0]
        neg_idx = [j for j, v in enumerate(values) if v < 0]
        if neg_idx:
            new_rays = []
            new_tight = []
            for jp in (j for j in keep_idx if values[j] > 0):
                for jm in neg_idx:
                    common = tight[jp] & tight[jm]
                    adjacent = not any(
                        jo != jp and jo != jm and common <= tight[jo]
                        for jo in range(len(rays)))
                    if not adjacent:
                        continue
                    combined = exact.vec_sub(
                        exact.vec_scale(values[jp], rays[jm]),
                        exact.vec_scale(values[jm], rays[jp]))
                    new_rays.append(exact.primitive_vector(combined))
                    new_tight.append(common | {i})
            rays = [rays[j] for j in keep_idx] + new_rays
            tight = [tight[j] for j in keep_idx] + new_tight
            values = [values[j] for j in keep_idx] + [Fraction(0)] * len(new_rays)
        tight = [t | {i} if values[j] == 0 else t for j, t in enumerate(tight)]
        processed.append(i)
    return rays


def _dual_extreme(vectors: list[tuple[int, ...]], rank: int):
    """Lineality basis and extreme rays of D(V) = {y : y . v >= 0 for v in V}.

    The lineality is the kernel of the stacked rows; the pointed part is
    computed in coordinates on the row space of V, where the constraint
    matrix has trivial kernel.
    """
    if not vectors:
        identity = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
        return identity, []
    lines = exact.kernel_basis(vectors, ncols=rank)
    wbasis = exact.row_space_basis(vectors)
    k = len(wbasis)
    m_rows = [tuple(exact.dot(v, w) for w in wbasis) for v in vectors]
    crays = _extreme_rays_pointed(m_rows, k)
    rays = []
    for c in crays:
        lifted = tuple(sum(c[j] * wbasis[j][t] for j in range(k)) for t in range(rank))
        rays.append(exact.primitive_vector(lifted))
    return lines, sorted(rays)


def _with_pairs(pointed: list[tuple[int, ...]], lines: list[tuple[int, ...]]):
    out = set(pointed)
    for line in lines:
        out.add(line)
        out.add(tuple(-c for c in line))
    return tuple(sorted(out))


@dataclass(frozen=True)
class Cone:
    """A rational polyhedral cone with canonical V- and H-descriptions."""

    rank: int
    rays: tuple[tuple[int, ...], ...]
    halfspaces: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return exact.matrix_rank(self.rays) if self.rays else 0

    @property
    def is_full_dimensional(self) -> bool:
        return not self.span_equalities

    @property
    def span_equalities(self) -> tuple[tuple[int, ...], ...]:
        """Halfspace normals whose negatives are also present (span cutting)."""
        present = set(self.halfspaces)
        return tuple(h for h in self.halfspaces
                     if tuple(-c for c in h) in present and exact.sign_canonical(h) == h)

    @property
    def lineality(self) -> tuple[tuple[int, ...], ...]:
        present = set(self.rays)
        return tuple(r for r in self.rays
                     if tuple(-c for c in r) in present and exact.sign_canonical(r) == r)

    def contains(self, point: Sequence, mode: Literal["closed", "open"] = "closed") -> bool:
        """Membership test; "open" means the relative interior.

        In open mode the equalities cutting the span must hold exactly and
        every other halfspace must be strict, which for a full-dimensional
        cone is the topological interior.
        """
        coords = tuple(point.coords) if hasattr(point, "coords") else tuple(point)
        if len(coords) != self.rank:
            raise ValueError(f"rank mismatch: cone rank {self.rank} vs point rank {len(coords)}")
        if mode not in ("closed", "open"):
            raise ValueError(f"unknown membership mode {mode!r}")
        values = {h: exact.dot(h, coords) for h in self.halfspaces}
        if mode == "closed":
            return all(v >= 0 for v in values.values())
        equalities = set()
        for h in self.span_equalities:
            equalities.add(h)
            equalities.add(tuple(-c for c in h))
        for h, v in values.items():
            if h in equalities:
                if v != 0:
                    return False
            elif v <= 0:
                return False
        if not self.rays:
            return all(c == 0 for c in coords)
        return True

    def __str__(self) -> str:
        return f"Cone(rank={self.rank}, rays={list(self.rays)})"


def cone_from_rays(rays: Iterable[Sequence], rank: int | None = None) -> Cone:
    """Cone generated by the given rays, in canonical double description.

    The stored rays are recomputed from the halfspaces, so redundant input
    generators disappear and equal cones compare equal.
    """
    generators, rank = _prepare_vectors(rays, rank, "ray")
    lines_dual, normals = _dual_extreme(generators, rank)
    halfspaces = _with_pairs(normals, lines_dual)
    lines_back, rays_back = _dual_extreme(list(halfspaces), rank)
    canonical_rays = _with_pairs(rays_back, lines_back)
    return Cone(rank=rank, rays=canonical_rays, halfspaces=halfspaces)


def cone_from_halfspaces(halfspaces: Iterable[Sequence], rank: int | None = None) -> Cone:
    """Cone {x : h . x >= 0 for all given h}, in canonical double description."""
    normals, rank = _prepare_vectors(halfspaces, rank, "halfspace normal")
    lines, rays = _dual_extreme(normals, rank)
    generators = list(_with_pairs(rays, lines))
    if not generators:
        # the zero cone: span equalities in every direction
        identity = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
        return Cone(rank=rank, rays=(), halfspaces=_with_pairs([], identity))
    return cone_from_rays(generators, rank)


def intersect(k1: Cone, k2: Cone) -> Cone:
    if k1.rank != k2.rank:
        raise ValueError(f"rank mismatch: {k1.rank} vs {k2.rank}")
    combined = sorted(set(k1.halfspaces) | set(k2.halfspaces))
    if not combined:
        # both cones are the whole space
        identity = [tuple(1 if j == i else 0 for j in range(k1.rank)) for i in range(k1.rank)]
        return cone_from_rays(_with_pairs([], identity), k1.rank)
    return cone_from_halfspaces(combined, k1.rank)


@dataclass(frozen=True)
class WallHyperplane:
    """The hyperplane separating two adjacent full-dimensional chambers.

    The normal is a primitive curve class, sign-normalized so the first
    nonzero coordinate is positive; callers compare declared wall classes
    against it up to sign.
    """

    normal: CurveClass

    def __post_init__(self):
        coords = self.normal.coords
        if exact.is_zero_vector(coords):
            raise ValueError("wall normal must be nonzero")
        canonical = exact.sign_canonical(exact.primitive_vector(coords))
        object.__setattr__(self, "normal", CurveClass(canonical))


def common_wall(k1: Cone, k2: Cone) -> WallHyperplane | None:
    """Shared codimension-one wall of two full-dimensional chambers.

    Returns None when the cones meet in codimension two or higher, and
    raises when their interiors overlap, since then they are not chambers
    of a common decomposition.
    """
    if k1.rank != k2.rank:
        raise ValueError(f"rank mismatch: {k1.rank} vs {k2.rank}")
    for cone in (k1, k2):
        if cone.dim != cone.rank:
            raise ValueError("common_wall requires full-dimensional cones")
    meet = intersect(k1, k2)
    d = meet.dim
    if d == k1.rank:
        raise ValueError("not adjacent chambers")
    if d != k1.rank - 1:
        return None
    kernel = exact.kernel_basis(meet.rays, ncols=k1.rank)
    assert len(kernel) == 1
    return WallHyperplane(CurveClass(kernel[0]))
