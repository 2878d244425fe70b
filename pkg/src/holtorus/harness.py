"""Experiment drivers behind the CLI: orbit walks, equidistribution and
divergence diagnostics, fiber sampling and lift reports.

Walks run in exact trace coordinates (the polynomial letter maps), not
on matrix pairs: the triple maps are numerically benign while long
matrix products lose the group structure.  The default random scheme
draws i.i.d. uniform letters from {T1, T1i, T2, T2i} and rejects moves
whose image exceeds a magnitude ceiling; without the ceiling a random
orbit escapes doubly exponentially and overflows well before 10^5
steps.  The ceiling is configuration, not mathematics: kappa stays
conserved along every accepted move.
"""

import math

import numpy as np

from . import chars, fiber, kernels
from .cover import fiber_class
from .errors import (InsufficientSamples, IterationBudgetExceeded,
                     PreconditionKappa)
from .mobius import commutator
from .twists import apply_twist

LETTER_NAMES = ("T1", "T1i", "T2", "T2i")
LETTER_CODES = {name: i for i, name in enumerate(LETTER_NAMES)}
DEFAULT_CEILING = 12.0
KAPPA_SHELL = 1e-3
CSV_HEADER = "step,letter,x,y,z,kappa,level"


class ExperimentConfig:
    """Resolved configuration shared by the walk-driven commands."""

    FIELDS = ("t", "level", "steps", "walk_scheme", "word", "seed", "seed_b",
              "bins", "window", "ceiling", "box", "budget")

    def __init__(self, t, steps, seed, level=None, walk_scheme="uniform-random",
                 word="T1,T2", seed_b=None, bins=8, window=2.0,
                 ceiling=DEFAULT_CEILING, box=4.0, budget=fiber.SAMPLE_BUDGET):
        if steps < 1:
            raise ValueError("steps must be >= 1")
        if bins < 2:
            raise ValueError("bins must be >= 2")
        if walk_scheme not in ("uniform-random", "fixed-word"):
            raise ValueError(f"unknown walk scheme {walk_scheme!r}")
        self.t = float(t)
        self.level = level
        self.steps = int(steps)
        self.walk_scheme = walk_scheme
        self.word = word
        self.seed = int(seed)
        self.seed_b = int(seed_b) if seed_b is not None else int(seed) + 1
        self.bins = int(bins)
        self.window = float(window)
        self.ceiling = float(ceiling)
        self.box = float(box)
        self.budget = int(budget)

    def as_dict(self):
        return {name: getattr(self, name) for name in self.FIELDS}


def parse_word(text):
    letters = [w.strip() for w in text.split(",") if w.strip()]
    for letter in letters:
        if letter not in LETTER_CODES:
            raise ValueError(f"fixed-word letters must be twist letters, got {letter!r}")
    return letters


def window_start(t, rng, half_width=2.0, budget=100_000):
    """A triple on the level kappa = t with all coordinates in the window."""
    for _ in range(budget):
        x = rng.uniform(-half_width, half_width)
        y = rng.uniform(-half_width, half_width)
        roots = [z for z in fiber.solve_z(x, y, t) if abs(z) <= half_width]
        if roots:
            z = roots[int(rng.integers(0, len(roots)))]
            return (x, y, z)
    raise InsufficientSamples(
        f"no window start found on kappa = {t} in {budget} draws")


def _uniform_walk(p0, steps, ceiling, rng, max_rounds=200):
    """Bounded uniform-letter walk; returns (xyz, kappa, letter codes)."""
    xyz = np.empty((steps, 3))
    kap = np.empty(steps)
    letters = np.empty(steps, dtype=np.int8)
    x, y, z = p0
    filled = 0
    chunk = max(4 * steps, 1024)
    for _ in range(max_rounds):
        proposals = rng.integers(0, 4, size=chunk).astype(np.int8)
        filled, _ = kernels.walk_traces(x, y, z, proposals, ceiling,
                                        xyz, kap, letters, filled)
        if filled >= steps:
            return xyz, kap, letters
        if filled > 0:
            x, y, z = xyz[filled - 1]
    raise IterationBudgetExceeded(
        f"walk accepted only {filled} of {steps} steps; the start triple "
        f"may sit above the ceiling {ceiling}")


def _fixed_walk(p0, steps, word_letters, hard_ceiling=1e100):
    codes = np.array([LETTER_CODES[w] for w in word_letters], dtype=np.int8)
    xyz = np.empty((steps, 3))
    kap = np.empty(steps)
    done = kernels.walk_traces_fixed(p0[0], p0[1], p0[2], codes, steps,
                                     hard_ceiling, xyz, kap)
    letters = np.resize(codes, steps)
    return xyz[:done], kap[:done], letters[:done]


def _start_state(cfg, seed):
    """Sampled fiber pair, its triple and its level."""
    spec = fiber.FiberSpec(t=cfg.t, count=1, seed=seed, level=cfg.level,
                           box=cfg.box, budget=cfg.budget)
    state = fiber.sample_fiber(spec)[0]
    p0 = state.chi()
    level = fiber_class(state.g, state.h).level
    return state, p0, level


def run_orbit(cfg):
    """Walk records plus conservation summary.

    Returns a dict with the start data, per-step arrays and the maximal
    relative kappa drift along the walk.
    """
    state, p0, level = _start_state(cfg, cfg.seed)
    k0 = chars.kappa(p0)
    rng = np.random.default_rng(cfg.seed)
    if cfg.walk_scheme == "uniform-random":
        ceiling = max(cfg.ceiling, 2.0 * max(abs(v) for v in p0) + 4.0)
        xyz, kap, letters = _uniform_walk(p0, cfg.steps, ceiling, rng)
    else:
        xyz, kap, letters = _fixed_walk(p0, cfg.steps, parse_word(cfg.word))
    drift = float(np.max(np.abs(kap - k0)) / max(abs(k0), 1e-30)) if len(kap) else 0.0
    return {
        "start": {"triple": list(p0), "kappa": k0, "level": level},
        "steps_done": int(len(kap)),
        "letters": [LETTER_NAMES[c] for c in letters],
        "xyz": xyz,
        "kappa": kap,
        "level": level,
        "kappa_rel_drift": drift,
    }


def _window_counts(xyz, kap, t, bins, window):
    """Histogram of in-window, on-shell points; returns (counts, n_in)."""
    m = (np.max(np.abs(xyz), axis=1) <= window) & (np.abs(kap - t) <= KAPPA_SHELL / 2)
    pts = xyz[m]
    edges = np.linspace(-window, window, bins + 1)
    counts, _ = np.histogramdd(pts, bins=(edges, edges, edges))
    return counts, int(m.sum())


def run_equidistribution(cfg):
    """Total-variation distance between the window histograms of two walks.

    Exploratory evidence only; requires 2 < t < 18, the regime whose
    level sets meet the compact window.
    """
    if not (2.0 < cfg.t < 18.0):
        raise PreconditionKappa(
            f"equidistribution diagnostics need 2 < t < 18, got {cfg.t}")
    results = []
    for seed in (cfg.seed, cfg.seed_b):
        rng = np.random.default_rng(seed)
        p0 = window_start(cfg.t, rng)
        xyz, kap, _ = _uniform_walk(p0, cfg.steps, cfg.ceiling, rng)
        counts, n_in = _window_counts(xyz, kap, cfg.t, cfg.bins, cfg.window)
        results.append((counts, n_in))
    (ca, na), (cb, nb) = results
    if na == 0 or nb == 0:
        raise InsufficientSamples(
            f"window visits: {na} and {nb}; walk too short for a histogram")
    tv = 0.5 * float(np.abs(ca / na - cb / nb).sum())
    def sparse(c):
        nz = np.argwhere(c > 0)
        return {",".join(map(str, idx)): int(c[tuple(idx)]) for idx in nz}
    return {
        "tv_distance": tv,
        "in_window": [na, nb],
        "cells_a": sparse(ca),
        "cells_b": sparse(cb),
    }


def _growth_exponent(kap_or_max):
    """Mean slope of log log max-coordinate over the growing tail."""
    vals = np.asarray(kap_or_max)
    vals = vals[vals > 3.0]
    if len(vals) < 4:
        return 0.0
    ll = np.log(np.log(vals))
    return float(np.polyfit(np.arange(len(ll)), ll, 1)[0])


def run_divergence(cfg, start="fiber"):
    """Discreteness diagnostics: orbit separation and escape growth.

    The bounded uniform walk yields the minimum pairwise distance among
    visited triples (none when every point is visited once, as proper
    discontinuity predicts for t < 2); the fixed escape word measures
    the doubly-exponential growth rate and the step at which double
    precision gives out.
    """
    rng = np.random.default_rng(cfg.seed)
    if start == "octant":
        if cfg.t < 18.0:
            raise PreconditionKappa(
                f"octant starts exist only for t >= 18, got {cfg.t}")
        p0 = octant_start(cfg.t, rng)
    else:
        _, p0, _ = _start_state(cfg, cfg.seed)

    xyz, kap, _ = _uniform_walk(p0, cfg.steps, max(
        cfg.ceiling, 2.0 * max(abs(v) for v in p0) + 4.0), rng)
    # the walk backtracks through revisits (letter inverses cancel on
    # traces up to the last bit); distinct orbit points are clustered on
    # a 1e-9 grid so ulp twins of one point do not masquerade as a pair
    distinct = np.unique(np.round(xyz / 1e-9) * 1e-9, axis=0)
    sub = distinct[:: max(1, len(distinct) // 2048)][:2048]
    d = sub[:, None, :] - sub[None, :, :]
    dist = np.sqrt((d * d).sum(axis=2))
    np.fill_diagonal(dist, np.inf)
    min_dist = float(dist.min())
    revisit_fraction = 1.0 - len(distinct) / max(1, len(xyz))

    exyz, ekap, _ = _fixed_walk(p0, min(cfg.steps, 2000), parse_word(cfg.word))
    emax = np.max(np.abs(exyz), axis=1)
    return {
        "start": {"triple": list(p0), "kappa": chars.kappa(p0)},
        "min_pairwise_distance": min_dist,
        "distinct_points": int(len(distinct)),
        "revisit_fraction": revisit_fraction,
        "bounded_walk_max": float(np.max(np.abs(xyz))),
        "escape_steps": int(len(emax)),
        "escape_final_max": float(emax[-1]) if len(emax) else 0.0,
        "escape_growth_exponent": _growth_exponent(emax),
    }


def octant_start(t, rng, budget=100_000):
    """A triple in the negative octant on the level kappa = t (t >= 18)."""
    for _ in range(budget):
        u = rng.uniform(2.0005, 2.0 + math.sqrt(max(t - 18.0, 1e-4)))
        roots = [z for z in fiber.solve_z(-u, -u, t) if z < -2.0]
        if roots:
            return (-u, -u, roots[0])
    raise InsufficientSamples(f"no octant start found on kappa = {t}")


def run_sample(cfg, count):
    """Fiber samples with their trace data and levels."""
    spec = fiber.FiberSpec(t=cfg.t, count=count, seed=cfg.seed,
                           level=cfg.level, box=cfg.box, budget=cfg.budget)
    rows = []
    for state in fiber.sample_fiber(spec):
        p = state.chi()
        fc = fiber_class(state.g, state.h)
        rows.append({
            "g": list(state.g.entries()),
            "h": list(state.h.entries()),
            "triple": list(p),
            "kappa": chars.kappa(p),
            "commutator_trace": commutator(state.g, state.h).trace(),
            "t": fc.t,
            "level": fc.level,
        })
    return rows


def run_lift(cfg, count):
    """Lifted-commutator data for sampled pairs."""
    from .cover import lifted_commutator
    spec = fiber.FiberSpec(t=cfg.t, count=count, seed=cfg.seed,
                           level=cfg.level, box=cfg.box, budget=cfg.budget)
    rows = []
    for state in fiber.sample_fiber(spec):
        lc = lifted_commutator(state.g, state.h)
        fc = fiber_class(state.g, state.h)
        rows.append({
            "commutator": list(lc.g.entries()),
            "lift_value": lc.w,
            "t": fc.t,
            "level": fc.level,
        })
    return rows


def run_reduce(cfg, triple=None, mode="full"):
    """Reduce a given or sampled triple; returns word, endpoint, region."""
    if triple is None:
        rng = np.random.default_rng(cfg.seed)
        for _ in range(cfg.budget):
            x = rng.uniform(-cfg.box, cfg.box)
            y = rng.uniform(-cfg.box, cfg.box)
            roots = fiber.solve_z(x, y, cfg.t)
            if roots:
                triple = (x, y, roots[int(rng.integers(0, len(roots)))])
                break
        else:
            raise InsufficientSamples(f"no triple found on kappa = {cfg.t}")
    word, q, region = chars.reduce_to_region(tuple(triple), mode=mode,
                                             budget=cfg.budget)
    return {
        "input": list(triple),
        "kappa": chars.kappa(tuple(triple)),
        "word": list(word),
        "final": list(q),
        "region": region.value,
    }


def replay_prefix(state, letter_names, guard=1e4):
    """Apply letters to a matrix pair while entries stay under the guard.

    Long twist words drive matrix entries out of the double-precision
    range even when the trace triple stays bounded (the conjugating
    frame drifts), so only a prefix of a long walk admits an honest
    matrix replay.  Returns (reached_state, letters_applied).
    """
    applied = 0
    for name in letter_names:
        nxt = apply_twist(name, state)
        if nxt.max_entry() > guard:
            break
        state = nxt
        applied += 1
    return state, applied
