"""Twist moves on matrix pairs, words with their integer homology
matrices, the continuous centralizer flow, and the search that makes
the second component of a pair elliptic.

The two twist substitutions are T1: (g, h) -> (g h^-1, h) and
T2: (g, h) -> (g, h g^-1); Q: (g, h) -> (g^-1, h) is the reflection.
Sign letters act on the SL(2,R) lifts only ((g, h) -> (g, -h) etc.)
and are invisible projectively.  Permutation letters are realized by
their factorizations into the core letters, so the matrix action, the
trace action and the homology matrix always cohere.

Homology matrices: T1 -> [[1,0],[1,1]], T2 -> [[1,1],[0,1]],
Q -> [[-1,0],[0,1]]; a word applied left to right carries the product
in composition order (last letter leftmost).
"""

import math

import numpy as np

from . import chars
from .errors import (NotElliptic, PreconditionKappa, SearchBudgetExceeded,
                     TorsionRotation)
from .mobius import ElementClass, GroupElem, classify, compose
from .lie import commutes_projectively, elliptic_section

ELLIPTICIZE_BUDGET = 1_000_000
TORSION_MAX_DENOM = 100
TORSION_TOL = 1e-6


class PairState:
    """A pair of group elements, the state every twist move acts on."""

    __slots__ = ("g", "h")

    def __init__(self, g, h):
        self.g = g
        self.h = h

    def chi(self):
        return chars.chi(self.g, self.h)

    def kappa(self):
        return chars.kappa(self.chi())

    def max_entry(self):
        return max(abs(v) for v in self.g.entries() + self.h.entries())

    def __repr__(self):
        return f"PairState({self.g!r}, {self.h!r})"


# factorizations of the permutation letters into core letters
PERM_FACTORIZATION = {
    "pxy": ("T2i", "T1", "Q", "T2"),
    "pxz": ("Q", "T1"),
    "pyz": ("Q", "T2"),
    "pxyz": ("T2i", "T1"),
    "pxzy": ("T1i", "T2"),
}

_CORE_MATRICES = {
    "T1": np.array([[1, 0], [1, 1]]),
    "T1i": np.array([[1, 0], [-1, 1]]),
    "T2": np.array([[1, 1], [0, 1]]),
    "T2i": np.array([[1, -1], [0, 1]]),
    "Q": np.array([[-1, 0], [0, 1]]),
    "s1": np.eye(2, dtype=int),
    "s2": np.eye(2, dtype=int),
}


def _apply_core(letter, g, h):
    if letter == "T1":
        return compose(g, h.inverse()), h
    if letter == "T1i":
        return compose(g, h), h
    if letter == "T2":
        return g, compose(h, g.inverse())
    if letter == "T2i":
        return g, compose(h, g)
    if letter == "Q":
        return g.inverse(), h
    if letter == "s1":
        return g, h.neg()
    if letter == "s2":
        return g.neg(), h
    raise ValueError(f"unknown core letter {letter!r}")


def apply_twist(letter, state):
    """Apply one letter (core, sign, or permutation) to a pair."""
    g, h = state.g, state.h
    for core in PERM_FACTORIZATION.get(letter, (letter,)):
        g, h = _apply_core(core, g, h)
    return PairState(g, h)


def apply_word(word, state):
    """Apply a letter sequence left to right."""
    for letter in word:
        state = apply_twist(letter, state)
    return state


def word_matrix(word):
    """Integer homology matrix of a word, product in composition order."""
    m = np.eye(2, dtype=int)
    for letter in word:
        for core in PERM_FACTORIZATION.get(letter, (letter,)):
            m = _CORE_MATRICES[core] @ m
    return m


class TwistWord:
    """A letter sequence with its induced integer matrix."""

    __slots__ = ("letters",)

    def __init__(self, letters):
        letters = tuple(letters)
        for letter in letters:
            if letter not in chars.TRACE_MAPS:
                raise ValueError(f"unknown letter {letter!r}")
        self.letters = letters

    @property
    def induced_matrix(self):
        return word_matrix(self.letters)

    def __mul__(self, other):
        """Concatenation: self applied first, then other."""
        return TwistWord(self.letters + other.letters)

    def apply(self, state):
        return apply_word(self.letters, state)

    def on_traces(self, p):
        return chars.apply_trace_word(self.letters, p)

    def __len__(self):
        return len(self.letters)

    def __repr__(self):
        return f"TwistWord({list(self.letters)!r})"


# --- elliptic rotation machinery ------------------------------------------

def rotation_angle(g):
    """Angle theta in (0, pi) with g = cos(theta) I + sin(theta) S.

    S is the unit-determinant centralizer section, so exp(theta S)
    recovers g exactly; requires g elliptic and non-central.
    """
    if classify(g) is not ElementClass.ELLIPTIC:
        raise NotElliptic(f"rotation angle defined for elliptic elements, "
                          f"got trace {g.trace()}")
    half = g.trace() / 2.0
    return math.acos(max(-1.0, min(1.0, half)))


def is_torsion_rotation(g, max_denom=TORSION_MAX_DENOM, tol=TORSION_TOL):
    """True iff the rotation angle is within tol of a rational multiple
    p/q of pi with q <= max_denom; such rotations have (numerically)
    finite orbits on the circle."""
    ratio = rotation_angle(g) / math.pi
    for q in range(1, max_denom + 1):
        if abs(ratio - round(ratio * q) / q) <= tol:
            return True
    return False


def elliptic_power(g, s):
    """g raised to a real power s through its rotation family.

    Rotation through s times the angle of g about the same fixed point;
    integer s agrees with repeated multiplication.
    """
    theta = rotation_angle(g)
    sec = elliptic_section(g)
    c, si = math.cos(s * theta), math.sin(s * theta)
    return GroupElem.normalized(c + si * sec.a, si * sec.b,
                                si * sec.c, c - si * sec.a)


def a2_flow(state, t):
    """Continuous second-twist flow (g, h) -> (g, h g^-t); t = 1 is T2."""
    return PairState(state.g, compose(state.h, elliptic_power(state.g, -t)))


def _trace_after_power(state, theta, w):
    """Closed form tr(h g^n) = y cos(n theta) + w sin(n theta)."""
    y = state.h.trace()

    def tau(n):
        return y * math.cos(n * theta) + w * math.sin(n * theta)

    return tau


def ellipticize(state, budget=ELLIPTICIZE_BUDGET):
    """Find n >= 0 making (g, h g^n) a pair of elliptic elements.

    Searches increasing integers using the closed form
    tr(h g^n) = y cos(n theta) + w sin(n theta), where theta is the
    rotation angle of g and w = tr(h S); the orbit of n theta is dense
    on the circle when the rotation is non-torsion, so the band
    |trace| < 2 is always hit eventually.  Returns (n, new_state).
    """
    g = state.g
    if classify(g) is not ElementClass.ELLIPTIC:
        raise NotElliptic("ellipticization flows along an elliptic first component")
    if classify(state.h) is ElementClass.ELLIPTIC:
        return 0, state
    if is_torsion_rotation(g):
        raise TorsionRotation(
            "rotation angle is (numerically) a rational multiple of pi; "
            "the power orbit may never become elliptic")
    theta = rotation_angle(g)
    sec = elliptic_section(g)
    h = state.h
    # w = tr(h S)
    w = (h.a - h.d) * sec.a + h.c * sec.b + h.b * sec.c
    y = h.trace()
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    c, s = 1.0, 0.0
    for n in range(1, budget + 1):
        c, s = c * cos_t - s * sin_t, s * cos_t + c * sin_t
        if n % 4096 == 0:
            c, s = math.cos(n * theta), math.sin(n * theta)
        tau = y * c + w * s
        if abs(tau) < 2.0 - 1e-9:
            return n, PairState(g, compose(h, elliptic_power(g, float(n))))
    raise SearchBudgetExceeded(
        f"no elliptic power found within {budget} steps")


def ellipticize_continuous(state):
    """Real-power fast path: solve tr(h g^s) = 0 directly.

    tr(h g^s) = R cos(s theta - phi) vanishes at s = (phi + pi/2)/theta,
    which lands strictly inside the elliptic band.  Returns (s, new_state).
    """
    g = state.g
    if classify(g) is not ElementClass.ELLIPTIC:
        raise NotElliptic("ellipticization flows along an elliptic first component")
    if classify(state.h) is ElementClass.ELLIPTIC:
        return 0.0, state
    theta = rotation_angle(g)
    sec = elliptic_section(g)
    h = state.h
    w = (h.a - h.d) * sec.a + h.c * sec.b + h.b * sec.c
    phi = math.atan2(w, h.trace())
    s = (phi + math.pi / 2.0) / theta
    return s, PairState(g, compose(h, elliptic_power(g, s)))


TORSION_RETRIES = 8


def full_reduction(state, budget=ELLIPTICIZE_BUDGET):
    """Reduce a pair to two elliptic components: twist-word reduction of
    the traces, matrix replay, then the integer power search.

    Requires kappa above 2.  Returns (log, final_state) where log lists
    every move: ("twist", letter) entries followed by ("power", n).
    Inputs whose traces reduce into the negative octant admit no
    elliptic representative and raise NotElliptic.

    The power search needs a first component of (numerically) infinite
    rotation order.  When the reduced pair trips the torsion guard, the
    pipeline steps to a different slab representative (one more twist,
    re-reduced) and retries; the detour is recorded in the log.
    """
    if (classify(state.g) is ElementClass.ELLIPTIC
            and classify(state.h) is ElementClass.ELLIPTIC
            and not commutes_projectively(state.g, state.h)):
        return [], state
    p = state.chi()
    if chars.kappa(p) <= 2.0:
        raise PreconditionKappa(
            f"full reduction needs kappa > 2, got {chars.kappa(p)}")
    log = []
    for attempt in range(TORSION_RETRIES):
        p = state.chi()
        if not -2.0 < p[0] < 2.0:
            word, _, region = chars.reduce_to_region(p, mode="twists")
            log.extend(("twist", letter) for letter in word)
            state = apply_word(word, state)
            if region is not chars.Region.ELLIPTIC_SLAB:
                raise NotElliptic(
                    "traces reduced into the negative octant; no elliptic "
                    "representative on that side")
        try:
            n, state = ellipticize(state, budget=budget)
        except TorsionRotation:
            if attempt == TORSION_RETRIES - 1:
                raise
            log.append(("twist", "T1"))
            state = apply_twist("T1", state)
            continue
        log.append(("power", n))
        return log, state
    raise TorsionRotation("every retry produced a torsion-angle rotation")


def random_word(rng, length, letters=chars.TWIST_LETTERS):
    """Uniform random word over the given alphabet."""
    idx = rng.integers(0, len(letters), size=length)
    return TwistWord([letters[i] for i in idx])
