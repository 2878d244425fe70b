"""Machine-checkable identity suites, runnable from the CLI.

Each suite draws its own samples from a seed, checks one family of
identities at fixed tolerances and returns a record; failures are
reported, never raised.  The dp suite accepts an injectable
implementation so a deliberately broken formula can serve as a
negative control in the tests.
"""

import numpy as np

from . import chars, fiber, lie
from . import mobius as mo
from .cover import fiber_class
from .errors import HoltorusError
from .twists import PairState, apply_twist


def _record(name, passed, detail):
    return {"name": name, "passed": bool(passed), "detail": detail}


def suite_kappa_commutator(seed, n=2000):
    """tr[g,h] equals kappa(chi(g,h)); moderate pair scale keeps both
    sides computable to well below the absolute tolerance."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for g, h in mo.random_pairs(rng, n, scale=0.6):
        k = chars.kappa(chars.chi(g, h))
        worst = max(worst, abs(mo.commutator(g, h).trace() - k))
    return _record("kappa-commutator", worst < 1e-8, {"worst": worst, "n": n})


def suite_twist_equivariance(seed, n=400):
    """Matrix-level letters match the trace-level maps, for every letter."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    letters = chars.GENERATORS
    for g, h in mo.random_pairs(rng, n, scale=0.8):
        p = chars.chi(g, h)
        for letter in letters:
            s = apply_twist(letter, PairState(g, h))
            got = chars.chi(s.g, s.h)
            want = chars.twist_on_traces(letter, p)
            worst = max(worst, max(abs(a - b) for a, b in zip(got, want)))
    return _record("twist-equivariance", worst < 1e-8,
                   {"worst": worst, "n": n, "letters": len(letters)})


def suite_kappa_invariance(seed, n=2000):
    """kappa is preserved by every generator on random triples."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        p = tuple(rng.uniform(-6, 6, size=3))
        k = chars.kappa(p)
        for letter in chars.GENERATORS:
            kk = chars.kappa(chars.twist_on_traces(letter, p))
            worst = max(worst, abs(kk - k) / (1.0 + abs(k)))
    return _record("kappa-invariance", worst < 1e-9, {"worst_rel": worst, "n": n})


def suite_dp_finite_difference(seed, n=30, dirs=5, dp_fn=None):
    """The commutator-derivative formula against central differences."""
    rng = np.random.default_rng(seed)
    dp_fn = dp_fn if dp_fn is not None else lie.dp_apply
    eps = 1e-5
    worst = 0.0
    for g, h in mo.random_pairs(rng, n, scale=0.7):
        cinv = mo.commutator(g, h).inverse()
        for _ in range(dirs):
            xi = lie.AlgVec(*mo.random_algvec_entries(rng))
            eta = lie.AlgVec(*mo.random_algvec_entries(rng))
            formula = dp_fn(g, h, xi, eta).coords()

            def curve(s):
                gp = mo.compose(g, lie.exp_alg(xi.scale(s)))
                hp = mo.compose(h, lie.exp_alg(eta.scale(s)))
                return mo.compose(cinv, mo.commutator(gp, hp)).as_array()

            d = (curve(eps) - curve(-eps)) / (2.0 * eps)
            fd = np.array([(d[0, 0] - d[1, 1]) / 2.0, d[0, 1], d[1, 0]])
            rel = np.linalg.norm(formula - fd) / max(np.linalg.norm(fd), 1e-12)
            worst = max(worst, rel)
    return _record("dp-finite-difference", worst < 1e-5,
                   {"worst_rel": worst, "pairs": n, "directions": dirs})


def suite_centralizer_dims(seed, n=600):
    """Centralizer dimension 1 off the center, 3 at the center."""
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(n):
        g = mo.random_element(rng, scale=0.8)
        if g.is_central():
            continue
        if lie.centralizer(g).dim != 1:
            bad += 1
    for sign in (1.0, -1.0):
        e = mo.GroupElem(sign, 0.0, 0.0, sign)
        if lie.centralizer(e).dim != 3:
            bad += 1
    return _record("centralizer-dims", bad == 0, {"bad": bad, "n": n})


def suite_regularity(seed, n=300):
    """rank(dp) = 3 iff non-commuting iff trivial centralizer intersection."""
    rng = np.random.default_rng(seed)
    bad = 0
    for i in range(n):
        g = mo.random_element(rng, scale=0.6)
        if i % 3 == 0:
            gamma = float(rng.uniform(0.3, 2.0))
            if lie.classify(g) is mo.ElementClass.ELLIPTIC:
                h = lie.exp_alg(lie.elliptic_section(g).scale(gamma))
            else:
                h = mo.compose(g, g)
        else:
            h = mo.random_element(rng, scale=0.6)
        r = (lie.is_regular(g, h),
             not lie.commutes_projectively(g, h),
             not lie.centralizers_intersect(g, h))
        if len(set(r)) != 1:
            bad += 1
    return _record("regularity-trichotomy", bad == 0, {"bad": bad, "n": n})


def suite_eval_span(seed, n=40):
    """Twist-flow directions span the kernel at elliptic non-commuting pairs."""
    rng = np.random.default_rng(seed)
    bad = 0
    tested = 0
    while tested < n:
        g = mo.random_element(rng, mo.ElementClass.ELLIPTIC)
        h = mo.random_element(rng, mo.ElementClass.ELLIPTIC)
        if lie.commutes_projectively(g, h):
            continue
        tested += 1
        dim, sv = lie.eval_span(g, h)
        if dim != 3 or sv <= 1e-6:
            bad += 1
    return _record("eval-span", bad == 0, {"bad": bad, "n": n})


def suite_lift_invariance(seed, n=40):
    """Fiber class is unchanged by twist words and by conjugation."""
    rng = np.random.default_rng(seed)
    bad = 0
    tested = 0
    while tested < n:
        g = mo.random_element(rng, scale=0.5)
        h = mo.random_element(rng, scale=0.5)
        if lie.commutes_projectively(g, h):
            continue
        try:
            fc0 = fiber_class(g, h)
        except HoltorusError:
            continue
        state = PairState(g, h)
        ok = True
        for _ in range(12):
            letter = chars.TWIST_LETTERS[int(rng.integers(0, 4))]
            nxt = apply_twist(letter, state)
            if nxt.max_entry() > 64.0:
                break
            state = nxt
        else:
            fc1 = fiber_class(state.g, state.h)
            ok = fc1.level == fc0.level and abs(fc1.t - fc0.t) < 1e-6
        k = mo.random_element(rng, scale=0.5)
        fc2 = fiber_class(mo.conjugate(g, k), mo.conjugate(h, k))
        ok = ok and fc2.level == fc0.level and abs(fc2.t - fc0.t) < 1e-6
        tested += 1
        if not ok:
            bad += 1
    return _record("lift-invariance", bad == 0, {"bad": bad, "n": n})


def suite_reduction(seed, n=80):
    """Mid-level triples reach the elliptic slab; words replay exactly."""
    rng = np.random.default_rng(seed)
    bad = 0
    done = 0
    while done < n:
        t = rng.uniform(2.05, 17.95)
        x = rng.uniform(-5, 5)
        y = rng.uniform(-5, 5)
        roots = fiber.solve_z(x, y, t)
        if not roots:
            continue
        p = (x, y, roots[int(rng.integers(0, len(roots)))])
        done += 1
        word, q, region = chars.reduce_to_region(p)
        replay = chars.apply_trace_word(word, p)
        if region is not chars.Region.ELLIPTIC_SLAB:
            bad += 1
        elif max(abs(a - b) for a, b in zip(replay, q)) > 1e-8:
            bad += 1
    return _record("reduction", bad == 0, {"bad": bad, "n": n})


def suite_exp_closed_form(seed, n=300):
    """Closed-form exponential against plain series summation."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        x = lie.AlgVec(*mo.random_algvec_entries(rng))
        m = x.as_array()
        acc = np.eye(2)
        term = np.eye(2)
        for k in range(1, 30):
            term = term @ m / k
            acc = acc + term
        got = lie.exp_alg(x).as_array()
        worst = max(worst, float(np.max(np.abs(got - acc))))
    return _record("exp-closed-form", worst < 1e-10, {"worst": worst, "n": n})


SUITES = {
    "kappa-commutator": suite_kappa_commutator,
    "twist-equivariance": suite_twist_equivariance,
    "kappa-invariance": suite_kappa_invariance,
    "dp-finite-difference": suite_dp_finite_difference,
    "centralizer-dims": suite_centralizer_dims,
    "regularity-trichotomy": suite_regularity,
    "eval-span": suite_eval_span,
    "lift-invariance": suite_lift_invariance,
    "reduction": suite_reduction,
    "exp-closed-form": suite_exp_closed_form,
}


def run_suites(seed, names=None, dp_fn=None):
    """Run the selected (default: all) suites; returns a list of records."""
    names = list(SUITES) if names is None else list(names)
    out = []
    for name in names:
        fn = SUITES[name]
        if name == "dp-finite-difference":
            out.append(fn(seed, dp_fn=dp_fn))
        else:
            out.append(fn(seed))
    return out
