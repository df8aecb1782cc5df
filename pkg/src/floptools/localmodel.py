"""The local quotient model: C^4 acted on by the torus with weights (1,1,-1,-1).

Points are (w,x,y,z) in C^4.  The invariant products A = wy, B = wz,
C = xy, D = xz cut out the quadric cone AD - BC = 0, and the two blowup
resolutions appear on the two sides of the reduction-level wall r = 0:

    r < 0: unstable locus {y = z = 0}, quotient = blowup along A = B = 0,
    r = 0: unstable locus empty, quotient = the singular quadric cone,
    r > 0: unstable locus {w = x = 0}, quotient = blowup along A = C = 0.

The moment map mu = (|w|^2 + |x|^2 - |y|^2 - |z|^2)/2 restricted to a real
one-parameter orbit s = e^t is an explicit hyperbolic function of t, so
orbit-closure questions reduce to rigorous bracketing plus the closed-form
limits at t -> +/- infinity.

This is the only module that computes in floating point.  Algebraic
identities are checked to 1e-9 and quadrature to 1e-3 relative by the
callers; the exceptional-curve area slope below is pinned by an
independent quadrature oracle in the test suite before being used as a
regression constant.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DEFAULT_SEED = 1994

# Area of the exceptional curve in the level-r reduction is DH_SLOPE * |r|:
# the reduced form pulls back to 2r/(1 + rho^2)^2 on the section over the
# exceptional curve, whose total integral is 2*pi*r.  The slope constant is
# frozen here after confirmation by the independent quadrature oracle in
# the test suite; exceptional_area never reads it.
DH_SLOPE = 2.0 * math.pi


@dataclass(frozen=True)
class PointC4:
    """A point (w, x, y, z) of the ambient C^4."""

    w: complex
    x: complex
    y: complex
    z: complex

    def __post_init__(self):
        for name in ("w", "x", "y", "z"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    def as_tuple(self) -> tuple[complex, complex, complex, complex]:
        return (self.w, self.x, self.y, self.z)


def act(s: complex, p: PointC4) -> PointC4:
    """The torus action with weights (1, 1, -1, -1)."""
    s = complex(s)
    if s == 0:
        raise ValueError("group element must be nonzero")
    return PointC4(s * p.w, s * p.x, p.y / s, p.z / s)


def moment_map(p: PointC4) -> float:
    return 0.5 * (abs(p.w) ** 2 + abs(p.x) ** 2 - abs(p.y) ** 2 - abs(p.z) ** 2)


def invariants(p: PointC4) -> tuple[complex, complex, complex, complex]:
    """The generating invariants (A, B, C, D) = (wy, wz, xy, xz).

    They satisfy AD - BC = 0 identically: both products expand to wxyz.
    """
    return (p.w * p.y, p.w * p.z, p.x * p.y, p.x * p.z)


def unstable_locus(r: float) -> str:
    """Which locus fails to reach the level set: one of the three labels."""
    if r < 0:
        return "y_z_zero"
    if r > 0:
        return "w_x_zero"
    return "empty"


@dataclass(frozen=True)
class QuotientDescriptor:
    label: str
    unstable_locus: str


def classify_quotient(r: float) -> QuotientDescriptor:
    """The reduced space at level r: two blowups separated by the cone."""
    if r < 0:
        return QuotientDescriptor("blowup_AB", "y_z_zero")
    if r > 0:
        return QuotientDescriptor("blowup_AC", "w_x_zero")
    return QuotientDescriptor("singular_cone", "empty")


@dataclass(frozen=True)
class OrbitProbe:
    """Probe grid for the real one-parameter subgroup s = e^t."""

    t_max: float = 20.0
    count: int = 801
    tol: float = 1e-9

    def __post_init__(self):
        if not (self.t_max > 0 and math.isfinite(self.t_max)):
            raise ValueError("degenerate probe: t_max must be positive and finite")
        if self.count < 3:
            raise ValueError("degenerate probe: need at least 3 sample points")
        if not (self.tol > 0):
            raise ValueError("degenerate probe: tolerance must be positive")


def orbit_closure_meets_level(p: PointC4, r: float,
                              probe: OrbitProbe = OrbitProbe()) -> bool:
    """Does the closure of the orbit of p meet the moment level mu = r?

    Along s = e^t the moment map is mu(t) = (P e^{2t} - Q e^{-2t})/2 with
    P = |w|^2 + |x|^2 and Q = |y|^2 + |z|^2, monotone nondecreasing in t,
    so a sign bracket on the probe grid is conclusive.  The boundary cases
    use the closed-form limits: when Q = 0 the closure gains the origin
    (every value in [0, infinity) is reached in the closure), symmetrically
    for P = 0.
    """
    P = abs(p.w) ** 2 + abs(p.x) ** 2
    Q = abs(p.y) ** 2 + abs(p.z) ** 2
    if P > 0 and Q > 0:
        # mu is a surjection from the orbit line onto R
        return True
    if P == 0 and Q == 0:
        return abs(r) <= probe.tol
    # one-sided case: range of mu over the closure is [0, inf) or (-inf, 0]
    ts = np.linspace(-probe.t_max, probe.t_max, probe.count)
    mus = 0.5 * (P * np.exp(2.0 * ts) - Q * np.exp(-2.0 * ts))
    if np.min(np.abs(mus - r)) <= probe.tol:
        return True
    if mus[0] <= r <= mus[-1]:
        return True
    if P == 0:
        return r <= probe.tol
    return r >= -probe.tol


def _sphere_chart(r: float, theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Section of the level sphere over the exceptional curve, as C^4 rows.

    For r > 0 the sphere {|w|^2 + |x|^2 = 2r, y = z = 0} is parametrized by
    (sqrt(2r) cos theta, sqrt(2r) sin theta e^{i phi}, 0, 0); the first slot
    is kept real, which fixes the torus phase, so the chart is a section of
    the quotient map away from theta = pi/2.  For r < 0 the roles of (w,x)
    and (y,z) swap.
    """
    rho = math.sqrt(2.0 * abs(r))
    a = rho * np.cos(theta) + 0j
    b = rho * np.sin(theta) * np.exp(1j * phi)
    zero = np.zeros_like(a)
    if r > 0:
        return np.stack([a, b, zero, zero], axis=-1)
    return np.stack([zero, zero, a, b], axis=-1)


def _two_form(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """The standard symplectic pairing sum_k Im(conj(u_k) v_k) on C^4."""
    return np.sum(np.imag(np.conj(u) * v), axis=-1)


def exceptional_area(r: float, samples: int = 20000) -> float:
    """Symplectic area of the exceptional curve in the reduction at level r.

    Midpoint quadrature of the pulled-back two-form over a chart of the
    curve; tangent vectors come from central finite differences, so the
    routine follows the geometry rather than a closed formula.  Accuracy is
    well inside 1e-3 relative at the default sample count.  At r = 0 the
    curve has collapsed and the area is 0 by continuity.
    """
    if r == 0:
        return 0.0
    if samples < 1000:
        raise ValueError("need at least 1000 samples for the area quadrature")
    n_theta = max(8, int(round(math.sqrt(samples / 2.0))))
    n_phi = 2 * n_theta
    d_theta = (math.pi / 2.0) / n_theta
    d_phi = (2.0 * math.pi) / n_phi
    theta = (np.arange(n_theta) + 0.5) * d_theta
    phi = (np.arange(n_phi) + 0.5) * d_phi
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    h = 1e-5
    d_dtheta = (_sphere_chart(r, tt + h, pp) - _sphere_chart(r, tt - h, pp)) / (2.0 * h)
    d_dphi = (_sphere_chart(r, tt, pp + h) - _sphere_chart(r, tt, pp - h)) / (2.0 * h)
    density = _two_form(d_dtheta, d_dphi)
    return float(np.sum(density) * d_theta * d_phi)


def dh_path(levels, samples: int = 20000) -> list[tuple[float, float]]:
    """(r, area) pairs along a path of reduction levels."""
    return [(float(r), exceptional_area(float(r), samples)) for r in levels]
