"""Recovering matrix pairs from trace coordinates and sampling
commutator-trace fibers.

The normal form pins g = [[x, -1], [1, 0]] and solves the second matrix
from tr h = y, tr gh = z and unimodularity, which reduces to one real
quadratic.  Its discriminant, maximized over the free parameter, equals
4 (kappa - 2) / (4 - x^2) when |x| < 2, so triples with |x| < 2 and
kappa < 2 admit no real solution in this slot -- and none elsewhere
either: minimizing kappa over the last coordinate gives
kappa - 2 >= (x^2 - 4)(4 - y^2) / 4, so kappa < 2 with |x| < 2 forces
every coordinate inside (-2, 2).  Such triples belong to the compact
unitary family and are genuinely unrealizable over the reals.
"""

import math

import numpy as np

from . import chars
from . import twists
from .cover import fiber_class
from .errors import LevelUnreachable, NotRealizable, ReducibleTriple
from .mobius import GroupElem, commutator, conjugate, random_element

REDUCIBLE_TOL = 1e-9
FIBER_T_TOL = 1e-6
SAMPLE_BUDGET = 100_000


class FiberSpec:
    """Request for fiber samples: target commutator trace t, optional
    level filter, count, seed, and the sampling box for (x, y)."""

    __slots__ = ("t", "level", "count", "seed", "box", "budget")

    def __init__(self, t, count, seed, level=None, box=4.0, budget=SAMPLE_BUDGET):
        if count < 1:
            raise ValueError("count must be positive")
        self.t = float(t)
        self.level = level
        self.count = int(count)
        self.seed = int(seed)
        self.box = float(box)
        self.budget = int(budget)


def solve_z(x, y, t):
    """Real roots z of kappa(x, y, z) = t, i.e. z^2 - xyz + (x^2+y^2-2-t) = 0.

    Returns a list with zero, one (double root) or two entries.
    """
    b = x * y
    c = x * x + y * y - 2.0 - t
    disc = b * b - 4.0 * c
    if disc < 0.0:
        return []
    if disc == 0.0:
        return [b / 2.0]
    r = math.sqrt(disc)
    return [(b - r) / 2.0, (b + r) / 2.0]


def _fricke_direct(p):
    """Pair for a triple whose first coordinate slot admits the normal form."""
    x, y, z = p
    a_coef = x * x - 4.0
    b_coef = 4.0 * y - 2.0 * x * z
    c_coef = z * z - 4.0

    if abs(a_coef) < 1e-12:
        if abs(b_coef) > 1e-12:
            pp = (4.0 - c_coef) / b_coef
        elif c_coef >= 0.0:
            pp = 0.0
        else:
            raise NotRealizable(f"no real matrices for triple {p}")
    elif a_coef < 0.0:
        pp = (2.0 * y - x * z) / (4.0 - x * x)
        if (c_coef * (4.0 - x * x) + (2.0 * y - x * z) ** 2) < 0.0:
            raise NotRealizable(f"no real matrices for triple {p}")
    else:
        vertex = -b_coef / (2.0 * a_coef)
        d_min = c_coef - b_coef * b_coef / (4.0 * a_coef)
        pp = vertex + math.sqrt((4.0 + max(0.0, -d_min)) / a_coef)

    disc = a_coef * pp * pp + b_coef * pp + c_coef
    if disc < 0.0:
        if disc > -1e-12:
            disc = 0.0
        else:
            raise NotRealizable(f"no real matrices for triple {p}")
    q = ((z - x * pp) + math.sqrt(disc)) / 2.0
    r = x * pp + q - z
    s = y - pp
    g = GroupElem(x, -1.0, 1.0, 0.0)
    h = GroupElem(pp, q, r, s)
    return twists.PairState(g, h)


def fricke_pair(p):
    """A matrix pair with trace coordinates p, for irreducible triples.

    Raises ReducibleTriple at kappa = 2 and NotRealizable for triples
    only the compact unitary family realizes (kappa < 2 with the first
    coordinate, hence every coordinate, inside (-2, 2)).
    """
    k = chars.kappa(p)
    if abs(k - 2.0) < REDUCIBLE_TOL:
        raise ReducibleTriple(f"kappa(p) = {k}; the normal form degenerates")
    if abs(p[0]) >= 2.0 or k > 2.0:
        return _fricke_direct(p)
    raise NotRealizable(
        f"triple {p} has kappa < 2 and all coordinates inside (-2, 2); "
        "only the compact unitary family realizes it")


def sample_fiber(spec):
    """Sample matrix pairs with commutator trace spec.t.

    Uniform (x, y) in the box, z a random root of the level equation,
    Fricke construction, then a random conjugation.  The sampling law is
    a documented convenience, not any invariant measure.  When
    spec.level is given, samples are filtered by their fiber level.
    """
    if abs(spec.t - 2.0) <= FIBER_T_TOL:
        raise ReducibleTriple(
            "t = 2 is the reducible level; fibers this close to it are "
            "rejected as numerically degenerate")
    rng = np.random.default_rng(spec.seed)
    out = []
    realized = 0
    for _ in range(spec.budget):
        if len(out) >= spec.count:
            return out
        x = rng.uniform(-spec.box, spec.box)
        y = rng.uniform(-spec.box, spec.box)
        roots = solve_z(x, y, spec.t)
        if not roots:
            continue
        z = roots[int(rng.integers(0, len(roots)))]
        try:
            state = fricke_pair((x, y, z))
        except (NotRealizable, ReducibleTriple):
            continue
        k = random_element(rng, scale=0.4)
        state = twists.PairState(conjugate(state.g, k), conjugate(state.h, k))
        if abs(commutator(state.g, state.h).trace() - spec.t) > FIBER_T_TOL:
            continue
        realized += 1
        if spec.level is not None and fiber_class(state.g, state.h).level != spec.level:
            continue
        out.append(state)
    if len(out) >= spec.count:
        return out
    if realized > 0 and spec.level is not None:
        raise LevelUnreachable(
            f"level {spec.level} not reached in {spec.budget} attempts "
            f"({realized} pairs realized at other levels)")
    raise NotRealizable(
        f"could not realize {spec.count} pairs at t = {spec.t} "
        f"within {spec.budget} attempts")
