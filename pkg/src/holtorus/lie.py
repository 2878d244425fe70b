"""The Lie algebra sl(2,R): adjoint action, exponential, centralizers,
and the derivative of the commutator map (g,h) -> [g,h].

An algebra element is the traceless matrix [[a, b], [c, -a]], stored as
a triple.  The fixed basis used for all matrices of linear maps is

    e1 = [[1, 0], [0, -1]],  e2 = [[0, 1], [0, 0]],  e3 = [[0, 0], [1, 0]].

The derivative of the commutator map sends (xi, eta) to

    Ad(h g h^-1) xi - Ad(h g) xi + Ad(h g) eta - Ad(h) eta,

a rank-3 map exactly when g and h do not commute projectively; the rank
machinery below (SVD with a relative threshold) turns that equivalence
into something testable.
"""

import math

import numpy as np

from .errors import CommutingPair, NonRegularPoint, NotElliptic, StepSizeUnderflow
from .mobius import GroupElem, classify, commutator, compose, ElementClass

RANK_REL_THRESHOLD = 1e-7
CENTRALIZER_TOL = 1e-8
FD_STEP = 1e-5
COMMUTING_NORM_TOL = 1e-6


class AlgVec:
    """Traceless 2x2 matrix [[a, b], [c, -a]]."""

    __slots__ = ("a", "b", "c")

    def __init__(self, a, b, c):
        self.a = float(a)
        self.b = float(b)
        self.c = float(c)

    @classmethod
    def from_matrix(cls, m):
        # symmetrize away numerical trace
        return cls((m[0][0] - m[1][1]) / 2.0, m[0][1], m[1][0])

    def det(self):
        return -self.a * self.a - self.b * self.c

    def coords(self):
        return np.array([self.a, self.b, self.c])

    def as_array(self):
        return np.array([[self.a, self.b], [self.c, -self.a]])

    def norm(self):
        return math.sqrt(2.0 * self.a * self.a + self.b * self.b + self.c * self.c)

    def scale(self, s):
        return AlgVec(s * self.a, s * self.b, s * self.c)

    def add(self, other):
        return AlgVec(self.a + other.a, self.b + other.b, self.c + other.c)

    def sub(self, other):
        return AlgVec(self.a - other.a, self.b - other.b, self.c - other.c)

    def __repr__(self):
        return f"AlgVec({self.a!r}, {self.b!r}, {self.c!r})"


BASIS = (AlgVec(1.0, 0.0, 0.0), AlgVec(0.0, 1.0, 0.0), AlgVec(0.0, 0.0, 1.0))


def from_coords(v):
    return AlgVec(v[0], v[1], v[2])


def bracket(x, y):
    """Matrix commutator xy - yx, again traceless."""
    return AlgVec(x.b * y.c - y.b * x.c,
                  2.0 * (x.a * y.b - y.a * x.b),
                  2.0 * (y.a * x.c - x.a * y.c))


def Ad(g, x):
    """Adjoint action g x g^-1."""
    # (g x) g^-1 written out; g^-1 = [[d, -b], [-c, a]]
    m00 = g.a * x.a + g.b * x.c
    m01 = g.a * x.b - g.b * x.a
    m10 = g.c * x.a + g.d * x.c
    m11 = g.c * x.b - g.d * x.a
    r00 = m00 * g.d - m01 * g.c
    r01 = -m00 * g.b + m01 * g.a
    r10 = m10 * g.d - m11 * g.c
    return AlgVec((r00 - (-m10 * g.b + m11 * g.a)) / 2.0, r01, r10)


def ad_matrix(g):
    """3x3 matrix of Ad(g) in the fixed basis."""
    cols = [Ad(g, e).coords() for e in BASIS]
    return np.column_stack(cols)


def exp_alg(x):
    """Matrix exponential of a traceless 2x2 matrix, in closed form.

    With delta = det x the eigenvalues satisfy lambda^2 + delta = 0, so
    exp(x) = cos(w) I + sinc(w) x for delta = w^2 > 0 (elliptic side,
    trace 2 cos w) and the cosh/sinh analogue for delta < 0.  A Taylor
    guard covers the nilpotent neighborhood delta ~ 0.
    """
    delta = x.det()
    if delta > 1e-12:
        w = math.sqrt(delta)
        co, si = math.cos(w), math.sin(w) / w
    elif delta < -1e-12:
        mu = math.sqrt(-delta)
        co, si = math.cosh(mu), math.sinh(mu) / mu
    else:
        co = 1.0 - delta / 2.0
        si = 1.0 - delta / 6.0
    return GroupElem.normalized(co + si * x.a, si * x.b,
                                si * x.c, co - si * x.a)


class CentralizerBasis:
    """Basis of the fixed subspace of Ad(g); dimension 1 or 3."""

    __slots__ = ("dim", "basis")

    def __init__(self, dim, basis):
        self.dim = dim
        self.basis = basis


def centralizer(g, tol=CENTRALIZER_TOL):
    """Nullspace of Ad(g) - I, via SVD.

    Non-central elements have a one-dimensional centralizer spanned by
    the traceless part of g itself; +-I fixes everything.
    """
    m = ad_matrix(g) - np.eye(3)
    _, s, vt = np.linalg.svd(m)
    scale = max(1.0, s[0])
    null_rows = [vt[i] for i in range(3) if s[i] < tol * scale]
    return CentralizerBasis(len(null_rows), [from_coords(v) for v in null_rows])


def dp_map(g, h):
    """3x6 matrix of (xi, eta) -> Ad(hgh^-1) xi - Ad(hg) xi + Ad(hg) eta - Ad(h) eta."""
    hg = compose(h, g)
    hghi = compose(hg, h.inverse())
    ad_hghi = ad_matrix(hghi)
    ad_hg = ad_matrix(hg)
    ad_h = ad_matrix(h)
    return np.hstack([ad_hghi - ad_hg, ad_hg - ad_h])


def dp_apply(g, h, xi, eta):
    """The same map evaluated on a single (xi, eta) pair."""
    hg = compose(h, g)
    hghi = compose(hg, h.inverse())
    return Ad(hghi, xi).sub(Ad(hg, xi)).add(Ad(hg, eta)).sub(Ad(h, eta))


def dp_factored(g, h):
    """Right factor M of dp = Ad(hg) . M with M = [Ad(h^-1) - I | I - Ad(g^-1)].

    Ad(hg) is invertible, so M has the same rank and the same kernel as
    the full map but without the huge common factor that wrecks the
    singular-value spread for large-entry pairs.
    """
    eye = np.eye(3)
    return np.hstack([ad_matrix(h.inverse()) - eye, eye - ad_matrix(g.inverse())])


def dp_rank(g, h, rel_threshold=RANK_REL_THRESHOLD):
    s = np.linalg.svd(dp_factored(g, h), compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > rel_threshold * s[0]))


def is_regular(g, h):
    """True iff the commutator-map derivative at (g,h) has full rank 3."""
    return dp_rank(g, h) == 3


def commutes_projectively(g, h, tol=COMMUTING_NORM_TOL):
    """True iff [g,h] is within tol of +-I entrywise."""
    c = commutator(g, h)
    dp = max(abs(c.a - 1.0), abs(c.b), abs(c.c), abs(c.d - 1.0))
    dm = max(abs(c.a + 1.0), abs(c.b), abs(c.c), abs(c.d + 1.0))
    return min(dp, dm) <= tol


def centralizers_intersect(g, h, tol=CENTRALIZER_TOL):
    """True iff the centralizer subspaces of g and h share a direction.

    The stacked unit bases [B_g; B_h] drop rank exactly on a nontrivial
    intersection; rank loss is read off the SVD with threshold ``tol``.
    """
    cg, ch = centralizer(g), centralizer(h)
    if cg.dim == 3 or ch.dim == 3:
        return True
    rows = np.array([v.coords() for v in cg.basis + ch.basis])
    rows = rows / np.linalg.norm(rows, axis=1, keepdims=True)
    s = np.linalg.svd(rows, compute_uv=False)
    return s[-1] < tol


def kernel_dp(g, h, rel_threshold=RANK_REL_THRESHOLD):
    """Orthonormal basis (rows, as 6-vectors) of Kernel(dp) at a regular point.

    Computed from the factored form, whose kernel coincides with the
    kernel of the full map.
    """
    m = dp_factored(g, h)
    _, s, vt = np.linalg.svd(m)
    if s[0] == 0.0 or np.sum(s > rel_threshold * s[0]) < 3:
        raise NonRegularPoint("kernel basis requested at a non-regular pair")
    return vt[3:]


# --- local centralizer-valued fields -------------------------------------

def elliptic_section(g):
    """Unit-determinant generator of the centralizer of an elliptic g.

    s = (g - (tr g / 2) I) / sqrt(1 - (tr g / 2)^2); smooth in g on the
    elliptic set, satisfies s^2 = -I, and exp(theta s) rotates about the
    fixed point of g.
    """
    t = g.trace()
    disc = 1.0 - (t / 2.0) ** 2
    if disc <= 0.0:
        raise NotElliptic(f"no elliptic section at trace {t}")
    s = 1.0 / math.sqrt(disc)
    return AlgVec(s * (g.a - g.d) / 2.0, s * g.b, s * g.c)


def _bump_exponent(t):
    # E(t) with profile exp(-E), smooth and supported in (-2, 2)
    u = (t / 2.0) ** 2
    if u >= 1.0:
        return math.inf
    return 1.0 / (1.0 - u)


class LocalField:
    """A centralizer-valued map g' -> phi(tr g') * section(g') near a base point.

    Values commute with their argument by construction and are supported
    in the elliptic set (the profile vanishes at |tr| >= 2).  The profile
    is normalized to `amplitude` at the anchor trace, computed as a ratio
    of bump exponentials so anchors near the boundary of the elliptic set
    keep order-one values instead of underflowing.
    """

    __slots__ = ("base", "amplitude", "_e0")

    def __init__(self, base, amplitude=1.0):
        if classify(base) is not ElementClass.ELLIPTIC:
            raise NotElliptic("local fields are anchored at elliptic elements")
        self.base = base
        self.amplitude = amplitude
        self._e0 = _bump_exponent(base.trace())

    def value(self, g=None):
        g = self.base if g is None else g
        e = _bump_exponent(g.trace())
        if e == math.inf:
            return AlgVec(0.0, 0.0, 0.0)
        phi = self.amplitude * math.exp(self._e0 - e)
        return elliptic_section(g).scale(phi)


class ConstantField:
    """Field with a frozen value; derivative-free stand-in for degenerate cases."""

    __slots__ = ("val",)

    def __init__(self, val):
        self.val = val

    def value(self, g=None):
        return self.val


def directional_derivative(field, at, direction, step=FD_STEP):
    """Central difference of field.value along the curve at * exp(s * direction).

    The curve moves at unit speed (the direction is normalized and the
    slope rescaled), so tiny or huge direction vectors cannot push the
    evaluation points below the resolution of the base point.
    """
    n = direction.norm()
    if n == 0.0:
        return AlgVec(0.0, 0.0, 0.0)
    eps = step / n
    if eps == 0.0 or not math.isfinite(eps):
        raise StepSizeUnderflow("finite-difference step underflowed")
    fwd = field.value(compose(at, exp_alg(direction.scale(eps))))
    bwd = field.value(compose(at, exp_alg(direction.scale(-eps))))
    return fwd.sub(bwd).scale(1.0 / (2.0 * eps))


def field_bracket(x_pair, y_pair, g, h, step=FD_STEP):
    """Bracket of the vector fields (x1(h), y1(g)) and (x2(h), y2(g)).

    Returns the pair

        ( dx2|_h(y1(g)) - dx1|_h(y2(g)),  dy2|_g(x1(h)) - dy1|_g(x2(h)) ),

    with each directional derivative taken by central differences along
    the matching exponential curve.  The pointwise commutator term of the
    general vector-field bracket vanishes for centralizer-valued fields,
    so this is the whole bracket.
    """
    x1, y1 = x_pair
    x2, y2 = y_pair
    y1_at_g = y1.value(g)
    y2_at_g = y2.value(g)
    x1_at_h = x1.value(h)
    x2_at_h = x2.value(h)
    first = directional_derivative(x2, h, y1_at_g, step).sub(
        directional_derivative(x1, h, y2_at_g, step))
    second = directional_derivative(y2, g, x1_at_h, step).sub(
        directional_derivative(y1, g, x2_at_h, step))
    return first, second


def eval_span(g, h, rel_threshold=RANK_REL_THRESHOLD):
    """Dimension and conditioning of the twist-flow directions inside Kernel(dp).

    Stacks the two centralizer directions (u, 0), (0, v) with one field
    bracket built from the choice x1 = 0, y2 = 0, projects onto an
    orthonormal kernel basis and reports (rank, smallest singular value)
    of the projected, row-normalized 3x3 matrix.  Full rank 3 certifies
    infinitesimal transitivity at (g, h).
    """
    if classify(g) is not ElementClass.ELLIPTIC or classify(h) is not ElementClass.ELLIPTIC:
        raise NotElliptic("eval_span requires a pair of elliptic elements")
    if commutes_projectively(g, h):
        raise CommutingPair("eval_span requires a non-commuting pair")

    u = centralizer(h).basis[0]          # direction (u, 0), u in the h-centralizer
    v = centralizer(g).basis[0]          # direction (0, v), v in the g-centralizer
    zero = ConstantField(AlgVec(0.0, 0.0, 0.0))
    y1 = LocalField(g)
    x2 = LocalField(h)
    br_first, br_second = field_bracket((zero, y1), (x2, zero), g, h)

    rows = np.array([
        np.concatenate([u.coords(), np.zeros(3)]),
        np.concatenate([np.zeros(3), v.coords()]),
        np.concatenate([br_first.coords(), br_second.coords()]),
    ])
    norms = np.linalg.norm(rows, axis=1)
    if np.any(norms == 0.0):
        return 0, 0.0
    rows = rows / norms[:, None]
    kernel = kernel_dp(g, h)
    coeffs = rows @ kernel.T
    s = np.linalg.svd(coeffs, compute_uv=False)
    dim = int(np.sum(s > rel_threshold * max(s[0], 1.0)))
    return dim, float(s[-1])
