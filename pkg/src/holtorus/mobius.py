"""SL(2,R) matrices, PSL(2,R) identification and the boundary circle action.

Group elements are unimodular 2x2 real matrices stored as four floats.
Every operation renormalizes the determinant, so long products stay on
the group to machine precision.  The unit-disk picture (a 2x2 complex
matrix with |alpha|^2 - |beta|^2 = 1) is derived on demand and cached;
it drives the action on the boundary circle, which is all the covering
machinery in :mod:`holtorus.cover` needs.

Conventions fixed here and used across the package:

* commutator [g,h] = g h g^-1 h^-1,
* PSL equality: min(||g-h||_inf, ||g+h||_inf) < 1e-8 after det
  normalization,
* trace classification with a deterministic parabolic band of
  half-width 1e-9 around |tr| = 2.
"""

import enum
import math

import numpy as np

from .errors import RejectionBudgetExceeded

DET_EPS = 1e-10
PROJ_EQ_TOL = 1e-8
PARABOLIC_BAND = 1e-9

_SPLITTER = 134217729.0  # 2**27 + 1, Dekker splitting constant


def _two_product(x, y):
    p = x * y
    t = _SPLITTER * x
    xh = t - (t - x)
    xl = x - xh
    t = _SPLITTER * y
    yh = t - (t - y)
    yl = y - yh
    e = ((xh * yh - p) + xh * yl + xl * yh) + xl * yl
    return p, e


def accurate_det(a, b, c, d):
    """ad - bc with compensated products.

    The naive expression loses all digits to cancellation once entries
    reach ~1e8; this version keeps the determinant of long twist-word
    products meaningful so renormalization stays an improvement.
    """
    p1, e1 = _two_product(a, d)
    p2, e2 = _two_product(b, c)
    s = p1 - p2
    bb = s - p1
    err = (p1 - (s - bb)) + ((-p2) - bb)
    return s + (err + (e1 - e2))


class ElementClass(enum.Enum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"
    CENTRAL = "central"


class GroupElem:
    """A unimodular 2x2 real matrix [[a, b], [c, d]].

    The constructor validates det = 1 within ``det_eps`` and then
    rescales exactly, so stored entries always satisfy ad - bc = 1 to
    machine precision.  Use :meth:`normalized` to build an element from
    an arbitrary positive-determinant matrix.
    """

    __slots__ = ("a", "b", "c", "d", "_disk")

    def __init__(self, a, b, c, d, det_eps=DET_EPS):
        det = accurate_det(a, b, c, d)
        if not det > 0.0:
            raise ValueError(f"matrix has non-positive determinant {det}")
        # entries of a computed product carry rounding ~eps * |entries|, so
        # its true determinant drifts by ~eps * |entries|^2; the tolerance
        # scales accordingly and renormalization pulls it back to 1
        scale2 = max(1.0, max(abs(a), abs(b), abs(c), abs(d)) ** 2)
        if abs(det - 1.0) > det_eps * scale2:
            raise ValueError(f"matrix determinant {det} violates unimodularity")
        s = 1.0 / math.sqrt(det)
        object.__setattr__(self, "a", a * s)
        object.__setattr__(self, "b", b * s)
        object.__setattr__(self, "c", c * s)
        object.__setattr__(self, "d", d * s)
        object.__setattr__(self, "_disk", None)

    def __setattr__(self, name, value):
        raise AttributeError("GroupElem is immutable")

    @classmethod
    def normalized(cls, a, b, c, d):
        """Scale an arbitrary positive-determinant matrix onto SL(2,R)."""
        det = accurate_det(a, b, c, d)
        if not det > 0.0:
            raise ValueError(f"matrix has non-positive determinant {det}")
        s = 1.0 / math.sqrt(det)
        return cls(a * s, b * s, c * s, d * s)

    @classmethod
    def identity(cls):
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def rotation(cls, theta):
        """Rotation about i in the upper half plane: [[cos, -sin], [sin, cos]]."""
        c, s = math.cos(theta), math.sin(theta)
        return cls(c, -s, s, c)

    def det(self):
        return accurate_det(self.a, self.b, self.c, self.d)

    def trace(self):
        return self.a + self.d

    def inverse(self):
        return GroupElem(self.d, -self.b, -self.c, self.a)

    def neg(self):
        return GroupElem(-self.a, -self.b, -self.c, -self.d)

    def as_array(self):
        return np.array([[self.a, self.b], [self.c, self.d]])

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def proj_eq(self, other, tol=PROJ_EQ_TOL):
        """PSL(2,R) equality: equal or opposite entrywise within tol."""
        dp = max(abs(self.a - other.a), abs(self.b - other.b),
                 abs(self.c - other.c), abs(self.d - other.d))
        dm = max(abs(self.a + other.a), abs(self.b + other.b),
                 abs(self.c + other.c), abs(self.d + other.d))
        return min(dp, dm) < tol

    def is_central(self, tol=PROJ_EQ_TOL):
        return max(abs(self.b), abs(self.c), abs(self.a - self.d)) < tol

    def __repr__(self):
        return f"GroupElem({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"


def compose(g, h):
    """Matrix product g*h, renormalized to determinant 1."""
    return GroupElem.normalized(
        g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d,
        g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d)


def conjugate(g, k):
    """k g k^-1."""
    return compose(compose(k, g), k.inverse())


def commutator(g, h):
    """[g, h] = g h g^-1 h^-1."""
    return compose(compose(g, h), compose(g.inverse(), h.inverse()))


def classify(g):
    """Elliptic / parabolic / hyperbolic / central by |trace|.

    Traces within PARABOLIC_BAND of 2 in absolute value classify as
    parabolic so that numerical ties resolve deterministically; +-I is
    detected first and reported central.
    """
    if g.is_central():
        return ElementClass.CENTRAL
    t = abs(g.trace())
    if abs(t - 2.0) <= PARABOLIC_BAND:
        return ElementClass.PARABOLIC
    return ElementClass.ELLIPTIC if t < 2.0 else ElementClass.HYPERBOLIC


class DiskElem:
    """SU(1,1) form [[alpha, beta], [conj(beta), conj(alpha)]] of a group element."""

    __slots__ = ("alpha", "beta")

    def __init__(self, alpha, beta):
        self.alpha = alpha
        self.beta = beta

    def trace(self):
        return 2.0 * self.alpha.real

    def as_array(self):
        return np.array([[self.alpha, self.beta],
                         [self.beta.conjugate(), self.alpha.conjugate()]])

    def __repr__(self):
        return f"DiskElem({self.alpha!r}, {self.beta!r})"


def cayley_to_disk(g):
    """Conjugate an upper-half-plane element into the unit-disk picture.

    Uses z -> (z - i)/(z + i); the image matrix satisfies
    |alpha|^2 - |beta|^2 = det g = 1 and has the same trace.
    """
    alpha = complex((g.a + g.d) / 2.0, (g.b - g.c) / 2.0)
    beta = complex((g.a - g.d) / 2.0, -(g.b + g.c) / 2.0)
    return DiskElem(alpha, beta)


def _disk_params(g):
    disk = g._disk
    if disk is None:
        d = cayley_to_disk(g)
        disk = (d.alpha, d.beta)
        object.__setattr__(g, "_disk", disk)
    return disk


TWO_PI = 2.0 * math.pi


def boundary_angle(g, theta):
    """Angle in [0, 2*pi) of g . e^{i theta} on the boundary of the disk.

    The action is projective, so g and -g induce the same circle map;
    this is the PSL(2,R) action on the boundary circle.
    """
    alpha, beta = _disk_params(g)
    w = complex(math.cos(theta), math.sin(theta))
    z = (alpha * w + beta) / (beta.conjugate() * w + alpha.conjugate())
    phi = math.atan2(z.imag, z.real)
    return phi % TWO_PI


def random_algvec_entries(rng, scale=1.0):
    v = rng.normal(0.0, scale, size=3)
    return float(v[0]), float(v[1]), float(v[2])


def random_element(seed_or_rng, class_hint=None, scale=1.0, budget=1000):
    """Sample exp(X) * R with X Gaussian traceless and R a uniform rotation.

    The distribution is an arbitrary but documented and seed-reproducible
    choice.  ``class_hint`` rejection-samples until ``classify`` matches;
    the parabolic class has measure zero under this distribution, so
    requesting it exhausts the budget.
    """
    from .lie import AlgVec, exp_alg

    rng = np.random.default_rng(seed_or_rng) if isinstance(seed_or_rng, (int, np.integer)) \
        else seed_or_rng
    for _ in range(budget):
        x = AlgVec(*random_algvec_entries(rng, scale))
        rot = GroupElem.rotation(rng.uniform(0.0, TWO_PI))
        g = compose(exp_alg(x), rot)
        if class_hint is None or classify(g) is class_hint:
            return g
    raise RejectionBudgetExceeded(
        f"no sample of class {class_hint} in {budget} draws")


def random_pairs(rng, n, scale=1.0):
    """Batch of n independent (g, h) pairs from the random_element law."""
    from .lie import AlgVec, exp_alg

    xs = rng.normal(0.0, scale, size=(2 * n, 3))
    thetas = rng.uniform(0.0, TWO_PI, size=2 * n)
    elems = [compose(exp_alg(AlgVec(*xs[i])), GroupElem.rotation(thetas[i]))
             for i in range(2 * n)]
    return list(zip(elems[:n], elems[n:]))
