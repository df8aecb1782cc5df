"""Charts of a birational model atlas and the wall-crossing transforms.

A chart packages the data attached to one chamber: a cubic self-intersection
form, the chamber cone, the walls in its boundary with their types and
curve data, and signed counts of rational curve classes.  Crossing a
flopping wall produces the neighboring chart by the rank-one cubic
correction, curve-class negation on the wall multiples, and a mirrored
chamber cone.  Crossing a divisorial wall reflects divisor classes.

Hard structural rules (ranks, primitivity, wall kinds, required fields)
are enforced at construction.  Geometric compatibility conditions that
legitimately fail on transported or non-generic data (a wall hyperplane
no longer supporting a facet, a curve count negative against the chamber)
are reported by diagnostics() instead, so transforms stay total and
exactly involutive while ingestion can still be strict.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Sequence

from . import exact
from .cones import Cone, common_wall, cone_from_rays, intersect
from .lattice import CubicForm, CurveClass, DivisorClass, FramingBasis, pair

WALL_KINDS = ("flopping", "divisorial", "mori_fibration")


@dataclass(frozen=True)
class WallDescriptor:
    """A wall of a chamber: its curve class, type, and crossing data.

    flopping walls carry the signed curve count n_gamma >= 1; divisorial
    walls meant for reflection carry the contracted divisor class with
    pairing -2 against gamma.  aux_divisor, when present, defines the ray
    map g -> g + (g . gamma) * aux across a flop and must also pair to -2.
    transforms, when present, overrides the ray map generator by generator.
    """

    gamma: CurveClass
    kind: str
    n_gamma: int | None = None
    e_divisor: DivisorClass | None = None
    aux_divisor: DivisorClass | None = None
    transforms: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] | None = None

    def __post_init__(self):
        if self.kind not in WALL_KINDS:
            raise ValueError(f"unknown wall kind {self.kind!r}, expected one of {WALL_KINDS}")
        if exact.is_zero_vector(self.gamma.coords):
            raise ValueError("wall class must be nonzero")
        if not self.gamma.is_primitive():
            raise ValueError(f"wall class must be primitive, got {self.gamma.coords}")
        if self.kind == "flopping":
            if not isinstance(self.n_gamma, int) or self.n_gamma < 1:
                raise ValueError("flopping wall needs an integer curve count n_gamma >= 1")
        elif self.n_gamma is not None:
            raise ValueError(f"n_gamma only applies to flopping walls, not {self.kind!r}")
        if self.e_divisor is not None and self.kind != "divisorial":
            raise ValueError(f"e_divisor only applies to divisorial walls, not {self.kind!r}")
        if self.aux_divisor is not None and self.kind != "flopping":
            raise ValueError(f"aux_divisor only applies to flopping walls, not {self.kind!r}")
        if self.transforms is not None and self.kind != "flopping":
            raise ValueError(f"transforms only apply to flopping walls, not {self.kind!r}")
        if self.e_divisor is not None:
            value = pair(self.e_divisor, self.gamma)
            if value != -2:
                raise ValueError(
                    f"not a reflection wall: E.gamma = {value}, expected -2")
        if self.aux_divisor is not None:
            value = pair(self.aux_divisor, self.gamma)
            if value != -2:
                raise ValueError(
                    f"aux divisor must pair to -2 with the wall class, got {value}")
        if self.transforms is not None:
            normalized = tuple(sorted(
                (tuple(src), tuple(dst)) for src, dst in self.transforms))
            sources = [src for src, _ in normalized]
            if len(set(sources)) != len(sources):
                raise ValueError("transforms map the same generator twice")
            object.__setattr__(self, "transforms", normalized)

    @property
    def rank(self) -> int:
        return self.gamma.rank


@dataclass(frozen=True)
class CurveCount:
    """A signed count n attached to a curve class."""

    eta: CurveClass
    n: int

    def __post_init__(self):
        if exact.is_zero_vector(self.eta.coords):
            raise ValueError("counted curve class must be nonzero")
        if not isinstance(self.n, int) or isinstance(self.n, bool):
            raise ValueError("curve count must be an integer")


@dataclass(frozen=True)
class ModelChart:
    """One chamber of the atlas with its intersection and curve data."""

    id: str
    rank: int
    cubic: CubicForm
    nef: Cone
    walls: tuple[WallDescriptor, ...] = ()
    curves: tuple[CurveCount, ...] = ()
    framing: FramingBasis | None = None

    def __post_init__(self):
        if not self.id:
            raise ValueError("chart needs a nonempty id")
        if self.cubic.rank != self.rank:
            raise ValueError(f"rank mismatch: chart rank {self.rank} vs cubic rank {self.cubic.rank}")
        if self.nef.rank != self.rank:
            raise ValueError(f"rank mismatch: chart rank {self.rank} vs cone rank {self.nef.rank}")
        for wall in self.walls:
            if wall.rank != self.rank:
                raise ValueError(f"rank mismatch: chart rank {self.rank} vs wall rank {wall.rank}")
        seen = set()
        for count in self.curves:
            if count.eta.rank != self.rank:
                raise ValueError(f"rank mismatch: chart rank {self.rank} vs curve rank {count.eta.rank}")
            if count.eta.coords in seen:
                raise ValueError(f"duplicate curve class {count.eta.coords}")
            seen.add(count.eta.coords)
        if self.framing is not None and self.framing.rank != self.rank:
            raise ValueError(f"rank mismatch: chart rank {self.rank} vs framing rank {self.framing.rank}")
        object.__setattr__(self, "walls", tuple(self.walls))
        object.__setattr__(self, "curves", tuple(sorted(self.curves, key=lambda c: c.eta.coords)))

    def diagnostics(self) -> tuple[str, ...]:
        """Advisory findings: conditions a freshly authored chart should meet.

        Transported wall data after a flop may legitimately fail these; they
        are reported rather than enforced so transforms remain total.
        """
        findings = []
        for index, wall in enumerate(self.walls):
            values = [pair(ray, wall.gamma) for ray in self.nef.rays]
            if any(v < 0 for v in values):
                findings.append(
                    f"walls[{index}]: gamma {wall.gamma.coords} is negative on a nef generator")
            else:
                tight = [ray for ray, v in zip(self.nef.rays, values) if v == 0]
                tight_rank = exact.matrix_rank(tight) if tight else 0
                if tight_rank != self.rank - 1:
                    findings.append(
                        f"walls[{index}]: gamma-perp of {wall.gamma.coords} does not support a facet")
        for count in self.curves:
            values = [pair(ray, count.eta) for ray in self.nef.rays]
            if any(v < 0 for v in values):
                findings.append(
                    f"curve {count.eta.coords} pairs negatively with a nef generator")
        return tuple(findings)

    def wall_index(self, wall: WallDescriptor) -> int:
        for index, candidate in enumerate(self.walls):
            if candidate == wall:
                return index
        raise ValueError("wall not on chart")


def _mirror_ray(chart: ModelChart, wall: WallDescriptor,
                ray: tuple[int, ...], value: int) -> tuple[int, ...]:
    """Image of a positive-side nef generator across the wall."""
    if wall.transforms is not None:
        table = dict(wall.transforms)
        if ray in table:
            return table[ray]
    if wall.aux_divisor is not None:
        return tuple(r + value * a for r, a in zip(ray, wall.aux_divisor.coords))
    if chart.rank == 2 and len(chart.nef.rays) == 2:
        tight = [r for r in chart.nef.rays if pair(r, wall.gamma) == 0]
        if len(tight) == 1 and abs(exact.det((tight[0], ray))) == 1:
            return tuple(t - r for t, r in zip(tight[0], ray))
    raise ValueError(
        f"no transform rule for nef generator {ray}: supply transforms or aux_divisor")


def flop(chart: ModelChart, wall: WallDescriptor) -> ModelChart:
    """The neighboring chart across a flopping wall.

    The cubic picks up the rank-one correction -n * (g . gamma)^3, counts
    on multiples of gamma flip to the negated classes with the same n, and
    the chamber cone is mirrored: wall generators stay, positive-side
    generators map through the wall's ray rule.  Applying flop again with
    the transported wall returns the original chart bit for bit.
    """
    if wall.kind != "flopping":
        raise ValueError(f"flop requires a flopping wall, got kind {wall.kind!r}")
    index = chart.wall_index(wall)
    gamma = wall.gamma

    new_cubic = chart.cubic.subtract_cube(gamma, wall.n_gamma)

    new_counts = []
    for count in chart.curves:
        k = _integer_multiple(count.eta.coords, gamma.coords)
        if k is not None and k != 0:
            new_counts.append(CurveCount(-count.eta, count.n))
        else:
            new_counts.append(count)

    values = [pair(ray, gamma) for ray in chart.nef.rays]
    if any(v < 0 for v in values):
        raise ValueError("wall class is negative on a nef generator; not a wall of this chamber")
    if all(v == 0 for v in values):
        raise ValueError("wall hyperplane contains the whole chamber")
    new_rays = []
    for ray, value in zip(chart.nef.rays, values):
        if value == 0:
            new_rays.append(ray)
        else:
            new_rays.append(_mirror_ray(chart, wall, ray, value))
    new_nef = cone_from_rays(new_rays, chart.rank)

    transported = replace(
        wall,
        gamma=-gamma,
        aux_divisor=None if wall.aux_divisor is None else -wall.aux_divisor,
        transforms=None if wall.transforms is None else tuple(
            (dst, src) for src, dst in wall.transforms))
    new_walls = tuple(transported if i == index else w for i, w in enumerate(chart.walls))

    return ModelChart(
        id=chart.id, rank=chart.rank, cubic=new_cubic, nef=new_nef,
        walls=new_walls, curves=tuple(new_counts), framing=chart.framing)


def _integer_multiple(eta: tuple[int, ...], gamma: tuple[int, ...]) -> int | None:
    k = None
    for e, g in zip(eta, gamma):
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
    return k


def reflect_divisorial(h: DivisorClass, wall: WallDescriptor) -> DivisorClass:
    """Reflection h -> h + (h . gamma) E across a divisorial wall.

    E . gamma = -2 makes this an involution fixing the wall hyperplane.
    """
    if wall.kind != "divisorial":
        raise ValueError(f"not a reflection wall: kind is {wall.kind!r}")
    if wall.e_divisor is None:
        raise ValueError("not a reflection wall: no contracted divisor class attached")
    if h.rank != wall.rank:
        raise ValueError(f"rank mismatch: divisor rank {h.rank} vs wall rank {wall.rank}")
    return h + pair(h, wall.gamma) * wall.e_divisor


@dataclass(frozen=True)
class Adjacency:
    """Two chart ids sharing a wall, with the declared wall data."""

    left: str
    right: str
    wall: WallDescriptor


@dataclass(frozen=True)
class Atlas:
    """A finite set of chamber charts glued along declared walls."""

    charts: tuple[ModelChart, ...]
    adjacency: tuple[Adjacency, ...] = ()

    def __post_init__(self):
        if not self.charts:
            raise ValueError("atlas needs at least one chart")
        ranks = {chart.rank for chart in self.charts}
        if len(ranks) != 1:
            raise ValueError(f"charts have mixed ranks {sorted(ranks)}")
        ids = [chart.id for chart in self.charts]
        if len(set(ids)) != len(ids):
            raise ValueError("chart ids must be unique")
        by_id = {chart.id: chart for chart in self.charts}
        for i, a in enumerate(self.charts):
            if a.nef.dim != a.rank:
                raise ValueError(f"chart {a.id!r} chamber is not full-dimensional")
            for b in self.charts[i + 1:]:
                if intersect(a.nef, b.nef).dim == a.rank:
                    raise ValueError(
                        f"chambers {a.id!r} and {b.id!r} have overlapping interiors")
        for adj in self.adjacency:
            for key in (adj.left, adj.right):
                if key not in by_id:
                    raise ValueError(f"adjacency references unknown chart {key!r}")
            hyperplane = common_wall(by_id[adj.left].nef, by_id[adj.right].nef)
            if hyperplane is None:
                raise ValueError(
                    f"charts {adj.left!r} and {adj.right!r} do not share a wall")
            normal = hyperplane.normal.coords
            declared = adj.wall.gamma.coords
            if declared != normal and tuple(-c for c in declared) != normal:
                raise ValueError(
                    f"declared wall class {declared} is not normal to the "
                    f"{adj.left!r}/{adj.right!r} wall (expected {normal} up to sign)")

    def chart(self, chart_id: str) -> ModelChart:
        for candidate in self.charts:
            if candidate.id == chart_id:
                return candidate
        raise ValueError(f"no chart with id {chart_id!r}")


def movable_cone(atlas: Atlas) -> Cone:
    """Hull of all chamber cones: the cone the chambers decompose."""
    rays: list[tuple[int, ...]] = []
    for chart in atlas.charts:
        rays.extend(chart.nef.rays)
    return cone_from_rays(rays, atlas.charts[0].rank)


def chamber_structure(atlas: Atlas) -> dict:
    """Report of the chamber decomposition the atlas describes."""
    by_id = {chart.id: chart for chart in atlas.charts}
    walls = []
    for adj in atlas.adjacency:
        hyperplane = common_wall(by_id[adj.left].nef, by_id[adj.right].nef)
        entry = {
            "left": adj.left,
            "right": adj.right,
            "gamma": list(adj.wall.gamma.coords),
            "kind": adj.wall.kind,
            "hyperplane_normal": list(hyperplane.normal.coords),
        }
        if adj.wall.n_gamma is not None:
            entry["n_gamma"] = adj.wall.n_gamma
        walls.append(entry)
    diagnostics = {}
    for chart in sorted(atlas.charts, key=lambda c: c.id):
        findings = chart.diagnostics()
        if findings:
            diagnostics[chart.id] = list(findings)
    return {
        "rank": atlas.charts[0].rank,
        "chambers": [
            {"id": chart.id, "rays": [list(r) for r in chart.nef.rays]}
            for chart in sorted(atlas.charts, key=lambda c: c.id)
        ],
        "disjoint_interiors": True,
        "walls": walls,
        "movable_rays": [list(r) for r in movable_cone(atlas).rays],
        "diagnostics": diagnostics,
    }
