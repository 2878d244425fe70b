"""Lifts of the boundary circle action and the winding invariant of the
commutator.

An element of the universal cover of PSL(2,R) is modeled as a group
element together with the value at 0 of one continuous lift of its
boundary circle map.  Composition evaluates one lift at the base value
of the other; the deck group acts by shifting the lift value by
multiples of 2*pi and is central.

The lifted commutator of a pair is independent of the lift choices, so
its lift value is an honest invariant of (g, h).  Reducing it against a
reference lift of the same matrix (continued from the identity along a
path inside SL(2,R)) yields an integer level; the level's parity picks
the SL(2,R) sign of the commutator, whose trace is the scalar the
trichotomy classifier consumes.
"""

import math

from .errors import ReferencePathAmbiguous, UnwrapResolutionExceeded
from .mobius import (GroupElem, boundary_angle, commutator, compose, TWO_PI)

MAX_BISECTION_DEPTH = 52
NEAR_CENTRAL_TOL = 1e-9


class LiftedElem:
    """A group element with a pinned lift value w = f~(0) of its circle map."""

    __slots__ = ("g", "w")

    def __init__(self, g, w):
        self.g = g
        self.w = w

    def deck_shift(self, k):
        """Same projection, lift shifted by 2*pi*k."""
        return LiftedElem(self.g, self.w + TWO_PI * k)

    def __repr__(self):
        return f"LiftedElem({self.g!r}, w={self.w!r})"


def base_lift(g):
    """The lift pinned at the principal angle boundary_angle(g, 0) in [0, 2pi)."""
    return LiftedElem(g, boundary_angle(g, 0.0))


def _wrap_pm_pi(d):
    return (d + math.pi) % TWO_PI - math.pi


def _unwrap_increment(g, a, b, phi_a, phi_b, depth):
    """Total lift increase of the circle map of g over [a, b], a < b.

    The map is monotone increasing of degree one, so the true increment
    over a subinterval is nonnegative and below 2*pi; once the wrapped
    raw increment lands in [0, pi/2) it is the true one.  Negative or
    large wrapped increments indicate a branch crossing and are bisected.
    """
    d = _wrap_pm_pi(phi_b - phi_a)
    if -1e-12 <= d < math.pi / 2.0:
        return d if d > 0.0 else 0.0
    if depth >= MAX_BISECTION_DEPTH:
        raise UnwrapResolutionExceeded(
            "bisection depth exhausted while unwrapping a circle-map lift")
    mid = 0.5 * (a + b)
    phi_mid = boundary_angle(g, mid)
    return (_unwrap_increment(g, a, mid, phi_a, phi_mid, depth + 1)
            + _unwrap_increment(g, mid, b, phi_mid, phi_b, depth + 1))


def _lift_increase(g, lo, hi):
    """f~(hi) - f~(lo) for lo <= hi, by unwrapping over a coarse grid."""
    span = hi - lo
    n_seg = max(1, int(math.ceil(span / (math.pi / 2.0))))
    pts = [lo + span * i / n_seg for i in range(n_seg + 1)]
    phis = [boundary_angle(g, p) for p in pts]
    total = 0.0
    for i in range(n_seg):
        total += _unwrap_increment(g, pts[i], pts[i + 1], phis[i], phis[i + 1], 0)
    return total


def lift_eval(lifted, x):
    """Evaluate the continuous monotone lift f~ with f~(0) = w at x."""
    g, w = lifted.g, lifted.w
    if x == 0.0:
        return w
    if x > 0.0:
        return w + _lift_increase(g, 0.0, x)
    return w - _lift_increase(g, x, 0.0)


def compose_lifts(gl, hl):
    """Group law of the cover: (g, w_g) * (h, w_h) = (g h, f~_g(w_h))."""
    return LiftedElem(compose(gl.g, hl.g), lift_eval(gl, hl.w))


def invert_lift(gl):
    """The inverse element: projection g^-1, lift pinned by f~_{g^-1} = f~_g^{-1}."""
    ginv = gl.g.inverse()
    u = boundary_angle(ginv, 0.0)
    v = lift_eval(gl, u)          # == 0 mod 2*pi
    return LiftedElem(ginv, u - TWO_PI * round(v / TWO_PI))


def lifted_commutator(g, h):
    """[g~, h~] computed from the base lifts; independent of lift choices.

    Deck shifts of either lift cancel between an element and its inverse
    because the deck group is central, so any lifts give the same result.
    """
    gl, hl = base_lift(g), base_lift(h)
    prod = compose_lifts(compose_lifts(gl, hl),
                         compose_lifts(invert_lift(gl), invert_lift(hl)))
    return prod


def _polar_factors(c):
    """Rotation angle psi and spd factor s with c = R(psi) s, det s = 1."""
    # s = sqrt(c^T c), closed form for 2x2 spd with det 1
    m00 = c.a * c.a + c.c * c.c
    m01 = c.a * c.b + c.c * c.d
    m11 = c.b * c.b + c.d * c.d
    tr = m00 + m11
    k = math.sqrt(tr + 2.0)
    s00, s01, s11 = (m00 + 1.0) / k, m01 / k, (m11 + 1.0) / k
    # r = c s^-1, a rotation; det s = 1 so s^-1 = [[s11, -s01], [-s01, s00]]
    r00 = c.a * s11 - c.b * s01
    r10 = c.c * s11 - c.d * s01
    psi = math.atan2(r10, r00)
    return psi, (s00, s01, s11)


def _spd_power(s_entries, u):
    """(2x2 spd with det 1) ** u via its eigendecomposition."""
    s00, s01, s11 = s_entries
    half_tr = 0.5 * (s00 + s11)
    gap = math.sqrt(max(half_tr * half_tr - 1.0, 0.0))
    lam = half_tr + gap
    if lam <= 1.0 + 1e-15:
        return GroupElem.identity()
    lam_u = lam ** u
    mu_u = lam ** (-u)
    # eigenvector for lam: (s01, lam - s00) unless degenerate
    vx, vy = s01, lam - s00
    if vx * vx + vy * vy < 1e-30:
        vx, vy = lam - s11, s01
    n = math.hypot(vx, vy)
    vx, vy = vx / n, vy / n
    wx, wy = -vy, vx
    return GroupElem.normalized(
        lam_u * vx * vx + mu_u * wx * wx,
        lam_u * vx * vy + mu_u * wx * wy,
        lam_u * vy * vx + mu_u * wy * wx,
        lam_u * vy * vy + mu_u * wy * wy)


def _path_point_straight(c, u):
    return GroupElem.normalized(
        (1.0 - u) + u * c.a, u * c.b, u * c.c, (1.0 - u) + u * c.d)


def _path_point_polar(c, u, psi, s_entries):
    rot = GroupElem.rotation(u * psi)
    return compose(rot, _spd_power(s_entries, u))


def reference_lift_value(c, n_steps=64):
    """Lift value at 0 of c continued from the identity along a path in SL(2,R).

    The straight matrix path (1-u) I + u c stays invertible exactly when
    tr c > -2; otherwise the polar path R(u psi) s^u is used.  Near -I
    the polar rotation angle is ambiguous and the continuation refuses.
    """
    dm = max(abs(c.a + 1.0), abs(c.b), abs(c.c), abs(c.d + 1.0))
    if dm < NEAR_CENTRAL_TOL:
        raise ReferencePathAmbiguous("commutator too close to -I")
    dp = max(abs(c.a - 1.0), abs(c.b), abs(c.c), abs(c.d - 1.0))
    if dp < NEAR_CENTRAL_TOL:
        return 0.0
    if c.trace() > -2.0 + 1e-6:
        point = lambda u: _path_point_straight(c, u)
    else:
        psi, s_entries = _polar_factors(c)
        point = lambda u: _path_point_polar(c, u, psi, s_entries)

    w = 0.0
    phi_prev = 0.0
    u_prev = 0.0
    grid = [i / n_steps for i in range(1, n_steps + 1)]
    for u in grid:
        phi = boundary_angle(point(u), 0.0)
        w += _unwrap_path_step(point, u_prev, u, phi_prev, phi, 0)
        u_prev, phi_prev = u, phi
    return w


def _unwrap_path_step(point, u0, u1, phi0, phi1, depth):
    d = _wrap_pm_pi(phi1 - phi0)
    if abs(d) < math.pi / 2.0:
        return d
    if depth >= MAX_BISECTION_DEPTH:
        raise UnwrapResolutionExceeded(
            "bisection depth exhausted while continuing a reference lift")
    um = 0.5 * (u0 + u1)
    phim = boundary_angle(point(um), 0.0)
    return (_unwrap_path_step(point, u0, um, phi0, phim, depth + 1)
            + _unwrap_path_step(point, um, u1, phim, phi1, depth + 1))


class FiberClass:
    """Invariant (t, level) of a pair: SL(2,R) trace of the lifted commutator
    projection, and the winding of its lift relative to the reference lift."""

    __slots__ = ("t", "level")

    def __init__(self, t, level):
        self.t = t
        self.level = level

    def __eq__(self, other):
        return self.level == other.level and abs(self.t - other.t) < 1e-6

    def __repr__(self):
        return f"FiberClass(t={self.t!r}, level={self.level!r})"


def fiber_class(g, h):
    """Compute (t, level) for a pair.

    level counts deck steps between the lifted commutator and the
    reference lift of the same matrix; reducing the winding mod 4*pi
    (the SL(2,R) double cover inside the full cover) resolves the sign
    of the SL(2,R) representative, so t = (-1)^level * tr [g, h].

    Pairs whose commutator is within 1e-9 of +I use the degenerate
    reference w_ref = 0 (the continuation path is constant there); near
    -I the reference path is genuinely ambiguous and an error is raised.
    """
    lc = lifted_commutator(g, h)
    c = lc.g
    dp = max(abs(c.a - 1.0), abs(c.b), abs(c.c), abs(c.d - 1.0))
    if dp < NEAR_CENTRAL_TOL:
        level = round(lc.w / TWO_PI)
        return FiberClass(((-1.0) ** (level % 2)) * c.trace(), level)
    w_ref = reference_lift_value(c)
    ratio = (lc.w - w_ref) / TWO_PI
    level = round(ratio)
    if abs(ratio - level) > 0.25:
        raise UnwrapResolutionExceeded(
            f"winding {ratio} is not close to an integer level")
    t = ((-1.0) ** (level % 2)) * c.trace()
    return FiberClass(t, level)
