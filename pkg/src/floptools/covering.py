"""Word-ball covering checks: do group translates of a cone cover a target?

A desk-scale falsifier for cone-covering statements: enumerate the ball
of words of bounded length in the given unimodular generators, then test
each sample ray for membership in some translate of the candidate cone.
Witnesses are reported as group words and re-verified by exact membership
before the report is assembled.  This certifies covering only for the
sampled rays and the given ball, never the full statement.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import exact
from .cones import Cone, cone_from_rays, intersect


@dataclass(frozen=True)
class LatticeAutomorphism:
    """An invertible integer matrix acting on the ray lattice."""

    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        matrix = tuple(tuple(int(c) for c in row) for row in self.matrix)
        n = len(matrix)
        if n == 0 or any(len(row) != n for row in matrix):
            raise ValueError("automorphism matrix must be square")
        d = exact.det(matrix)
        if d not in (1, -1):
            raise ValueError(f"unimodular matrix required, det = {d}")
        object.__setattr__(self, "matrix", matrix)

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @classmethod
    def identity(cls, rank: int) -> "LatticeAutomorphism":
        return cls(tuple(tuple(1 if j == i else 0 for j in range(rank))
                         for i in range(rank)))

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        coords = tuple(vector.coords) if hasattr(vector, "coords") else tuple(vector)
        if len(coords) != self.rank:
            raise ValueError(f"rank mismatch: matrix rank {self.rank} vs vector rank {len(coords)}")
        return tuple(sum(row[j] * coords[j] for j in range(self.rank)) for row in self.matrix)

    def compose(self, other: "LatticeAutomorphism") -> "LatticeAutomorphism":
        if self.rank != other.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")
        return LatticeAutomorphism(exact.mat_mul(self.matrix, other.matrix))

    def inverse(self) -> "LatticeAutomorphism":
        inv = exact.inverse(self.matrix)
        return LatticeAutomorphism(tuple(
            tuple(int(c) for c in row) for row in inv))

    def transform_cone(self, cone: Cone) -> Cone:
        if not cone.rays:
            return cone
        return cone_from_rays([self.apply(r) for r in cone.rays], cone.rank)


@dataclass(frozen=True)
class BallElement:
    """A group element with its canonical (shortest, then lexicographic) word."""

    word: str
    auto: LatticeAutomorphism

    @property
    def length(self) -> int:
        return 0 if self.word == "id" else self.word.count("*") + 1


def orbit_ball(generators: Sequence[LatticeAutomorphism], depth: int) -> tuple[BallElement, ...]:
    """All distinct products of at most `depth` generators and inverses.

    Breadth-first over letters (g0, g0^-1, g1, ...), deduplicated by
    matrix equality keeping the first word found.  The result is sorted by
    (word length, matrix entries) so downstream reports are reproducible.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if not generators:
        raise ValueError("need at least one generator")
    rank = generators[0].rank
    if any(g.rank != rank for g in generators):
        raise ValueError("generators have mixed ranks")
    letters = []
    for i, g in enumerate(generators):
        letters.append((f"g{i}", g))
        letters.append((f"g{i}^-1", g.inverse()))
    identity = LatticeAutomorphism.identity(rank)
    found = {identity.matrix: BallElement("id", identity)}
    frontier = [found[identity.matrix]]
    for _ in range(depth):
        new_frontier = []
        for element in frontier:
            for token, letter in letters:
                product = element.auto.compose(letter)
                if product.matrix in found:
                    continue
                word = token if element.word == "id" else f"{element.word}*{token}"
                candidate = BallElement(word, product)
                found[product.matrix] = candidate
                new_frontier.append(candidate)
        frontier = new_frontier
        if not frontier:
            break
    return tuple(sorted(found.values(), key=lambda e: (e.length, e.auto.matrix)))


@dataclass(frozen=True)
class CandidateDomain:
    """The rational polyhedral cone whose translates should cover the target."""

    pi: Cone


@dataclass(frozen=True)
class CoverReport:
    depth: int
    rays_tested: int
    covered: int
    uncovered: tuple[tuple[int, ...], ...]
    witnesses: tuple[tuple[tuple[int, ...], str], ...]

    def __post_init__(self):
        if self.covered + len(self.uncovered) != self.rays_tested:
            raise ValueError("covered + uncovered must equal tested")

    def witness_for(self, ray: Sequence[int]) -> str | None:
        ray = tuple(ray)
        for key, word in self.witnesses:
            if key == ray:
                return word
        return None

    def to_json_dict(self) -> dict:
        return {
            "depth": self.depth,
            "rays_tested": self.rays_tested,
            "covered": self.covered,
            "uncovered": [list(r) for r in self.uncovered],
            "witnesses": {",".join(map(str, r)): w for r, w in self.witnesses},
        }


def covers(domain: CandidateDomain | Cone, ball: Sequence[BallElement],
           target: Cone, rays: Iterable[Sequence[int]]) -> CoverReport:
    """Assign each sample ray the first ball element whose translate holds it.

    Rays must lie in the target interior; a ray no translate holds is
    listed uncovered (a warning for the caller, not an error, since finite
    depth legitimately misses boundary-hugging rays).  Each witness is
    re-verified by exact membership after the scan.
    """
    pi = domain.pi if isinstance(domain, CandidateDomain) else domain
    for generator in pi.rays:
        if not target.contains(generator, "closed"):
            raise ValueError(
                f"candidate domain ray {generator} is not contained in the target cone")
    ordered = sorted(ball, key=lambda e: (e.length, e.auto.matrix))
    inverses = [(element, element.auto.inverse()) for element in ordered]
    witnesses = []
    uncovered = []
    tested = 0
    for ray in rays:
        coords = tuple(ray.coords) if hasattr(ray, "coords") else tuple(ray)
        tested += 1
        if not target.contains(coords, "open"):
            raise ValueError(f"ray outside target: {coords}")
        hit = None
        for element, inverse in inverses:
            if pi.contains(inverse.apply(coords), "closed"):
                hit = element
                break
        if hit is None:
            uncovered.append(coords)
            continue
        if not hit.auto.transform_cone(pi).contains(coords, "closed"):
            raise AssertionError(f"witness failed re-verification for ray {coords}")
        witnesses.append((coords, hit.word))
    depth = max((e.length for e in ordered), default=0)
    return CoverReport(
        depth=depth, rays_tested=tested, covered=len(witnesses),
        uncovered=tuple(uncovered), witnesses=tuple(witnesses))


def overlap_audit(domain: CandidateDomain | Cone,
                  ball: Sequence[BallElement]) -> tuple[tuple[str, str], ...]:
    """Pairs of ball elements whose translates of the domain share interior.

    Exact: two full-dimensional cones share interior points exactly when
    their intersection is full-dimensional.
    """
    pi = domain.pi if isinstance(domain, CandidateDomain) else domain
    if pi.dim != pi.rank:
        raise ValueError("overlap audit requires a full-dimensional candidate domain")
    ordered = sorted(ball, key=lambda e: (e.length, e.auto.matrix))
    translates = [(element.word, element.auto.transform_cone(pi)) for element in ordered]
    overlaps = []
    for i in range(len(translates)):
        for j in range(i + 1, len(translates)):
            if intersect(translates[i][1], translates[j][1]).dim == pi.rank:
                overlaps.append((translates[i][0], translates[j][0]))
    return tuple(overlaps)
