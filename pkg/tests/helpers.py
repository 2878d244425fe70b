"""Shared test utilities: bounded word sampling and pair constructions.

Twist words make matrix entries grow doubly exponentially, so property
tests that compare matrix-level results at tight tolerances must keep
the entries inside the range where double precision still resolves the
group structure.  The guards here implement that discipline; they
restrict the sampled words, never the claims being checked.
"""

import numpy as np

from holtorus import chars, lie
from holtorus import mobius as mo
from holtorus.twists import PairState, apply_twist

WORD_ENTRY_GUARD = 64.0


def sampled_pair(rng, scale=0.5):
    return mo.random_element(rng, scale=scale), mo.random_element(rng, scale=scale)


def bounded_word_apply(rng, state, max_len, guard=WORD_ENTRY_GUARD,
                       letters=chars.TWIST_LETTERS, max_tries=60):
    """A random word of length <= max_len whose matrix replay stays under
    the guard; returns (letters, final_state) or None if none was found."""
    for _ in range(max_tries):
        length = int(rng.integers(1, max_len + 1))
        word = [letters[int(rng.integers(0, len(letters)))] for _ in range(length)]
        s = state
        ok = True
        for name in word:
            s = apply_twist(name, s)
            if s.max_entry() > guard:
                ok = False
                break
        if ok:
            return word, s
    return None


def bounded_trace_word(rng, p, length, letters=chars.GENERATORS, cap=1e6):
    """Random trace-level word rejecting letters that push past the cap.

    Permutation and sign letters never grow a triple, and the inverse of
    the previous letter always returns below the cap, so this directly
    terminates.
    """
    word = []
    for _ in range(length):
        while True:
            letter = letters[int(rng.integers(0, len(letters)))]
            q = chars.TRACE_MAPS[letter](p)
            if max(abs(q[0]), abs(q[1]), abs(q[2])) <= cap:
                break
        word.append(letter)
        p = q
    return word, p


def commuting_pair(rng):
    """A genuinely commuting pair, built without SVD noise."""
    kind = int(rng.integers(0, 4))
    if kind == 0:
        g = mo.random_element(rng, scale=0.6)
        h = mo.compose(g, g)
    elif kind == 1:
        lam = float(rng.uniform(1.2, 3.0))
        g = mo.GroupElem(lam, 0.0, 0.0, 1.0 / lam)
        mu = float(rng.uniform(0.3, 2.5))
        h = mo.GroupElem(mu, 0.0, 0.0, 1.0 / mu)
    elif kind == 2:
        g = mo.GroupElem(1.0, float(rng.uniform(-2, 2)), 0.0, 1.0)
        h = mo.GroupElem(1.0, float(rng.uniform(-2, 2)), 0.0, 1.0)
    else:
        g = mo.random_element(rng, scale=0.6)
        h = mo.GroupElem(-1.0, 0.0, 0.0, -1.0)
    k = mo.random_element(rng, scale=0.4)
    return mo.conjugate(g, k), mo.conjugate(h, k)


def noncommuting_pair(rng, scale=0.6):
    while True:
        g, h = sampled_pair(rng, scale=scale)
        if not lie.commutes_projectively(g, h):
            return g, h


def elliptic_noncommuting_pair(rng, scale=1.0):
    while True:
        g = mo.random_element(rng, mo.ElementClass.ELLIPTIC, scale=scale)
        h = mo.random_element(rng, mo.ElementClass.ELLIPTIC, scale=scale)
        if not lie.commutes_projectively(g, h):
            return g, h
