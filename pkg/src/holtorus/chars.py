"""Trace coordinates (x, y, z) = (tr g, tr h, tr gh), the invariant
polynomial kappa, the generator actions on triples, and the reduction
into the elliptic slab or the negative octant.

kappa(x, y, z) = x^2 + y^2 + z^2 - x y z - 2 equals the trace of the
commutator of any matrix pair realizing the triple, and every generator
action implemented here preserves it.  The two target regions are

* EllipticSlab: first coordinate in (-2, 2), so the first matrix of a
  realizing pair is elliptic,
* NegativeOctant: all coordinates below -2, which forces kappa > 18.

Reduction is a deterministic greedy descent over the generator moves;
levels with kappa > 2 always land in one of the regions (kappa < 18
can only reach the slab since the octant sits above 18).
"""

import enum

from .errors import IterationBudgetExceeded, PreconditionKappa
from .mobius import compose

REDUCE_BUDGET = 10_000
WORD_REPLAY_TOL = 1e-8


class Region(enum.Enum):
    ELLIPTIC_SLAB = "elliptic-slab"
    NEGATIVE_OCTANT = "negative-octant"
    LOW_KAPPA = "low-kappa"


class Regime(enum.Enum):
    PROPERLY_DISCONTINUOUS = "properly-discontinuous"
    ERGODIC = "ergodic"
    MIXED = "mixed"
    BOUNDARY = "boundary"


def chi(g, h):
    """Trace triple of a matrix pair."""
    gh = compose(g, h)
    return (g.trace(), h.trace(), gh.trace())


def kappa(p):
    x, y, z = p
    return x * x + y * y + z * z - x * y * z - 2.0


# --- generator actions on triples -----------------------------------------
#
# The twist letters act by a Vieta move combined with a transposition;
# Q is the bare Vieta move on z; s1/s2 flip pairs of signs; p** permute
# coordinates.  Every action preserves kappa.

def _t1(p):
    x, y, z = p
    return (x * y - z, y, x)


def _t1i(p):
    x, y, z = p
    return (z, y, z * y - x)


def _t2(p):
    x, y, z = p
    return (x, x * y - z, y)


def _t2i(p):
    x, y, z = p
    return (x, z, x * z - y)


def _q(p):
    x, y, z = p
    return (x, y, x * y - z)


def _s1(p):
    x, y, z = p
    return (x, -y, -z)


def _s2(p):
    x, y, z = p
    return (-x, y, -z)


def _pxy(p):
    return (p[1], p[0], p[2])


def _pxz(p):
    return (p[2], p[1], p[0])


def _pyz(p):
    return (p[0], p[2], p[1])


def _pxyz(p):
    # x <- y <- z <- x
    return (p[1], p[2], p[0])


def _pxzy(p):
    return (p[2], p[0], p[1])


TRACE_MAPS = {
    "T1": _t1, "T1i": _t1i, "T2": _t2, "T2i": _t2i,
    "Q": _q,
    "pxy": _pxy, "pxz": _pxz, "pyz": _pyz, "pxyz": _pxyz, "pxzy": _pxzy,
    "s1": _s1, "s2": _s2,
}

GENERATORS = ("T1", "T1i", "T2", "T2i", "Q",
              "pxy", "pxz", "pyz", "pxyz", "pxzy", "s1", "s2")
TWIST_LETTERS = ("T1", "T1i", "T2", "T2i")
SIGN_LETTERS = ("s1", "s2")


def twist_on_traces(letter, p):
    """Apply one generator letter to a trace triple."""
    try:
        return TRACE_MAPS[letter](p)
    except KeyError:
        raise ValueError(f"unknown generator letter {letter!r}") from None


def apply_trace_word(word, p):
    """Apply a letter sequence left to right."""
    for letter in word:
        p = TRACE_MAPS[letter](p)
    return p


def trichotomy(t, tol=1e-9):
    """Dynamical regime of the commutator-trace level t.

    Below 2 the twist group acts properly discontinuously; strictly
    between 2 and 18 it acts ergodically; at and above 18 the level
    splits into a wandering region and an ergodic part.  t = 2 is the
    degenerate boundary.
    """
    if abs(t - 2.0) <= tol:
        return Regime.BOUNDARY
    if t < 2.0:
        return Regime.PROPERLY_DISCONTINUOUS
    if t < 18.0:
        return Regime.ERGODIC
    return Regime.MIXED


def _in_slab(p):
    return -2.0 < p[0] < 2.0


def _in_octant(p):
    return p[0] < -2.0 and p[1] < -2.0 and p[2] < -2.0


def region_of(p):
    """Region membership of a triple: the elliptic slab (first coordinate
    in (-2, 2)), the negative octant, the kappa <= 2 locus outside both,
    or None for unreduced triples above kappa = 2."""
    if _in_slab(p):
        return Region.ELLIPTIC_SLAB
    if _in_octant(p):
        return Region.NEGATIVE_OCTANT
    if kappa(p) <= 2.0:
        return Region.LOW_KAPPA
    return None


def _fmax(p):
    return max(abs(p[0]), abs(p[1]), abs(p[2]))


def _sumsq(p):
    return p[0] * p[0] + p[1] * p[1] + p[2] * p[2]


# candidate moves for the greedy descent: single letters for the full
# generator set, words up to length two for the twist-only mode
_FULL_MOVES = [(letter,) for letter in GENERATORS]
_TWIST_SINGLE = [(letter,) for letter in TWIST_LETTERS]
_TWIST_PAIRS = [(a, b) for a in TWIST_LETTERS for b in TWIST_LETTERS
                if not (a == "T1" and b == "T1i") and not (a == "T1i" and b == "T1")
                and not (a == "T2" and b == "T2i") and not (a == "T2i" and b == "T2")]
_TWIST_MOVES = _TWIST_SINGLE + _TWIST_PAIRS
_VIETA_WORDS = [("Q",), ("pyz", "Q", "pyz"), ("pxz", "Q", "pxz")]
_TWIST_TRIPLES = [(a, b, c) for a in TWIST_LETTERS for b in TWIST_LETTERS
                  for c in TWIST_LETTERS]

# permutations bringing slot 1 or 2 into the first slot
_SLOT_TO_FRONT_FULL = {1: ("pxy",), 2: ("pxz",)}
_SLOT_TO_FRONT_TWIST = {1: ("T2i", "T1"), 2: ("T1i", "T2")}  # 3-cycles


def _sign_normalize_letters(p):
    """Sign-flip letters turning an all-|.|>2, negative-product triple
    into an all-negative one; empty if no flip is needed."""
    pos = [i for i, v in enumerate(p) if v > 0.0]
    if not pos:
        return ()
    if pos == [1, 2]:
        return ("s1",)
    if pos == [0, 2]:
        return ("s2",)
    if pos == [0, 1]:
        return ("s1", "s2")
    return None  # odd number of positives: octant not reachable by flips


def reduce_to_region(p, mode="full", budget=REDUCE_BUDGET):
    """Drive a triple into the elliptic slab or the negative octant.

    Greedy descent on max(|x|, |y|, |z|) over the generator moves, with
    a sum-of-squares tie-break on plateaus; deterministic with ties
    resolved in the canonical generator order.  Returns
    (word, final_triple, region).

    mode="full" uses all generators.  mode="twists" restricts to the
    four twist letters; sign-change letters may still appear as a
    trailing suffix when the descent stalls in the sign-orbit of the
    octant, since they act trivially on the underlying projective pair
    and only adjust the SL(2,R) lift bookkeeping.

    Requires kappa(p) > 2 unless the input already lies in a region;
    below that level the two-region dichotomy fails.
    """
    if mode not in ("full", "twists"):
        raise ValueError(f"unknown reduction mode {mode!r}")
    word = []
    if _in_slab(p):
        return word, p, Region.ELLIPTIC_SLAB
    if _in_octant(p):
        return word, p, Region.NEGATIVE_OCTANT
    if kappa(p) <= 2.0:
        raise PreconditionKappa(
            f"reduction guaranteed only above kappa = 2, got {kappa(p)}")

    slot_front = _SLOT_TO_FRONT_FULL if mode == "full" else _SLOT_TO_FRONT_TWIST
    descent_moves = _FULL_MOVES if mode == "full" else _TWIST_MOVES
    plateau_moves = _VIETA_WORDS if mode == "full" else _TWIST_TRIPLES

    best = p
    for _ in range(budget):
        if _in_slab(p):
            return word, p, Region.ELLIPTIC_SLAB
        if _in_octant(p):
            return word, p, Region.NEGATIVE_OCTANT
        if abs(p[1]) < 2.0:
            mv = slot_front[1]
        elif abs(p[2]) < 2.0:
            mv = slot_front[2]
        else:
            mv = None
        if mv is not None:
            word.extend(mv)
            p = apply_trace_word(mv, p)
            continue

        # all coordinates outside [-2, 2]; octant sign-orbit check
        flips = _sign_normalize_letters(p)
        if flips is not None and _fmax(p) > 2.0:
            q = apply_trace_word(flips, p)
            if _in_octant(q):
                word.extend(flips)
                p = q
                continue

        f0 = _fmax(p)
        chosen = None
        chosen_val = f0 - 1e-12 * (1.0 + f0)
        for mv in descent_moves:
            val = _fmax(apply_trace_word(mv, p))
            if val < chosen_val:
                chosen, chosen_val = mv, val
        if chosen is None:
            s0 = _sumsq(p)
            for mv in plateau_moves:
                q = apply_trace_word(mv, p)
                if _sumsq(q) < s0 * (1.0 - 1e-14) and _fmax(q) <= f0 * (1.0 + 1e-14):
                    chosen = mv
                    break
        if chosen is None:
            break
        word.extend(chosen)
        p = apply_trace_word(chosen, p)
        if _fmax(p) < _fmax(best):
            best = p
    raise IterationBudgetExceeded(
        "reduction did not reach a region within budget", word=word, best=best)


def omega_membership(p, budget=REDUCE_BUDGET):
    """True iff the triple reduces into the negative octant.

    Only meaningful on levels with kappa >= 18, the first level the
    octant touches; below that the call is a precondition error.
    """
    if kappa(p) < 18.0:
        raise PreconditionKappa(
            f"octant membership needs kappa >= 18, got {kappa(p)}")
    _, _, region = reduce_to_region(p, mode="full", budget=budget)
    return region is Region.NEGATIVE_OCTANT
