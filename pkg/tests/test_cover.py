import math

import numpy as np
import pytest

import helpers
from holtorus import cover, lie
from holtorus import mobius as mo
from holtorus.errors import ReferencePathAmbiguous
from holtorus.twists import PairState, apply_twist

TWO_PI = 2.0 * math.pi


def test_identity_lift_is_identity_map():
    lifted = cover.base_lift(mo.GroupElem.identity())
    assert lifted.w == 0.0
    for x in (0.0, 0.3, 5.0, -2.0, 9.0):
        assert abs(cover.lift_eval(lifted, x) - x) < 1e-12


def test_lift_degree_one():
    rng = np.random.default_rng(0)
    for _ in range(30):
        g = mo.random_element(rng)
        lifted = cover.base_lift(g)
        for x in (-1.0, 0.2, 2.5):
            assert abs(cover.lift_eval(lifted, x + TWO_PI)
                       - cover.lift_eval(lifted, x) - TWO_PI) < 1e-9


def test_lift_monotone_on_grid():
    rng = np.random.default_rng(1)
    for _ in range(10):
        g = mo.random_element(rng)
        lifted = cover.base_lift(g)
        vals = [cover.lift_eval(lifted, x)
                for x in np.linspace(0.0, TWO_PI, 1025)]
        diffs = np.diff(vals)
        assert np.all(diffs >= -1e-9)
        assert abs(vals[-1] - vals[0] - TWO_PI) < 1e-8


def test_compose_with_identity_lift():
    rng = np.random.default_rng(2)
    g = mo.random_element(rng)
    gl = cover.base_lift(g)
    il = cover.base_lift(mo.GroupElem.identity())
    left = cover.compose_lifts(il, gl)
    right = cover.compose_lifts(gl, il)
    assert left.g.proj_eq(g) and right.g.proj_eq(g)
    assert abs(left.w - gl.w) < 1e-10 and abs(right.w - gl.w) < 1e-10


def test_compose_projects_to_product():
    rng = np.random.default_rng(3)
    for _ in range(30):
        g, h = helpers.sampled_pair(rng)
        comp = cover.compose_lifts(cover.base_lift(g), cover.base_lift(h))
        assert comp.g.proj_eq(mo.compose(g, h))


def test_deck_shifts_are_central():
    rng = np.random.default_rng(4)
    for _ in range(20):
        g, h = helpers.sampled_pair(rng)
        gl, hl = cover.base_lift(g), cover.base_lift(h)
        base = cover.compose_lifts(gl, hl)
        shifted = cover.compose_lifts(gl, hl.deck_shift(1))
        assert abs(shifted.w - base.w - TWO_PI) < 1e-9
        shifted2 = cover.compose_lifts(gl.deck_shift(-2), hl)
        assert abs(shifted2.w - base.w + 2 * TWO_PI) < 1e-9


def test_invert_lift_two_sided():
    rng = np.random.default_rng(5)
    for _ in range(30):
        g = mo.random_element(rng)
        gl = cover.base_lift(g)
        inv = cover.invert_lift(gl)
        for prod in (cover.compose_lifts(gl, inv), cover.compose_lifts(inv, gl)):
            assert prod.g.proj_eq(mo.GroupElem.identity())
            assert abs(prod.w) < 1e-9


def test_lifted_commutator_of_commuting_pair_is_identity_lift():
    rng = np.random.default_rng(6)
    for _ in range(20):
        g, h = helpers.commuting_pair(rng)
        lc = cover.lifted_commutator(g, h)
        assert lc.g.proj_eq(mo.GroupElem.identity(), tol=1e-6)
        assert abs(lc.w) < 1e-6


def test_lifted_commutator_independent_of_lift_choice():
    rng = np.random.default_rng(7)
    for _ in range(30):
        g, h = helpers.sampled_pair(rng)
        base = cover.lifted_commutator(g, h)
        for kg, kh in ((1, 0), (0, 1), (-2, 3)):
            gl = cover.base_lift(g).deck_shift(kg)
            hl = cover.base_lift(h).deck_shift(kh)
            alt = cover.compose_lifts(
                cover.compose_lifts(gl, hl),
                cover.compose_lifts(cover.invert_lift(gl), cover.invert_lift(hl)))
            assert alt.g.proj_eq(base.g, tol=1e-7)
            assert abs(alt.w - base.w) < 1e-6


def test_lifted_commutator_exactly_invariant_under_twists():
    rng = np.random.default_rng(8)
    for _ in range(20):
        g, h = helpers.noncommuting_pair(rng, scale=0.5)
        base = cover.lifted_commutator(g, h)
        for letter in ("T1", "T1i", "T2", "T2i"):
            s = apply_twist(letter, PairState(g, h))
            lc = cover.lifted_commutator(s.g, s.h)
            assert lc.g.proj_eq(base.g, tol=1e-7)
            assert abs(lc.w - base.w) < 1e-6


def test_fiber_class_of_pair_with_identity():
    rng = np.random.default_rng(9)
    g = mo.random_element(rng)
    fc = cover.fiber_class(g, mo.GroupElem.identity())
    assert abs(fc.t - 2.0) < 1e-9
    assert fc.level == 0


def test_reference_lift_near_minus_identity_is_ambiguous():
    # commutators exactly equal to -I do not occur for real pairs (the
    # would-be solutions are the compact unitary family), so the guard
    # is exercised directly on a synthetic near -I matrix
    c = mo.GroupElem(-1.0, 1e-12, 0.0, -1.0)
    with pytest.raises(ReferencePathAmbiguous):
        cover.reference_lift_value(c)


def test_fiber_class_invariance_under_bounded_words():
    rng = np.random.default_rng(10)
    tested = 0
    while tested < 60:
        g, h = helpers.noncommuting_pair(rng, scale=0.5)
        fc0 = cover.fiber_class(g, h)
        res = helpers.bounded_word_apply(rng, PairState(g, h), 20)
        if res is None:
            continue
        _, s = res
        fc1 = cover.fiber_class(s.g, s.h)
        assert fc1.level == fc0.level
        assert abs(fc1.t - fc0.t) < 1e-6
        tested += 1


def test_fiber_class_conjugation_invariance():
    rng = np.random.default_rng(11)
    for _ in range(40):
        g, h = helpers.noncommuting_pair(rng, scale=0.5)
        k = mo.random_element(rng, scale=0.5)
        fc0 = cover.fiber_class(g, h)
        fc1 = cover.fiber_class(mo.conjugate(g, k), mo.conjugate(h, k))
        assert fc1.level == fc0.level
        assert abs(fc1.t - fc0.t) < 1e-6


def test_level_constant_along_fiber_path():
    # the centralizer flow preserves the commutator exactly; the level
    # must stay constant along a long discretized flow path
    rng = np.random.default_rng(12)
    from holtorus.twists import a2_flow
    done = 0
    while done < 5:
        g = mo.random_element(rng, mo.ElementClass.ELLIPTIC)
        h = mo.random_element(rng, scale=0.6)
        if lie.commutes_projectively(g, h):
            continue
        done += 1
        state = PairState(g, h)
        fc0 = cover.fiber_class(state.g, state.h)
        dt = float(rng.uniform(0.001, 0.003))
        state2 = state
        for step in range(1, 1001):
            state2 = a2_flow(state, dt * step)
            if step % 100 == 0:
                fc = cover.fiber_class(state2.g, state2.h)
                assert fc.level == fc0.level
                assert abs(fc.t - fc0.t) < 1e-6


def test_nonzero_levels_exist_and_flip_trace_sign():
    def rot_about(p_re, p_im, theta):
        t = mo.GroupElem(math.sqrt(p_im), p_re / math.sqrt(p_im),
                         0.0, 1.0 / math.sqrt(p_im))
        return mo.conjugate(mo.GroupElem.rotation(theta), t)

    rng = np.random.default_rng(13)
    seen = {}
    for _ in range(400):
        try:
            g = rot_about(rng.uniform(-8, 8), math.exp(rng.uniform(-3, 3)),
                          rng.uniform(2.5, math.pi - 0.01))
            h = rot_about(rng.uniform(-8, 8), math.exp(rng.uniform(-3, 3)),
                          rng.uniform(2.5, math.pi - 0.01))
            if lie.commutes_projectively(g, h):
                continue
            fc = cover.fiber_class(g, h)
        except ValueError:
            # extreme samples overrun double precision; skip them
            continue
        seen[fc.level] = seen.get(fc.level, 0) + 1
        expected = ((-1.0) ** (fc.level % 2)) * mo.commutator(g, h).trace()
        assert abs(fc.t - expected) < 1e-6
    assert 0 in seen
    assert any(lvl != 0 for lvl in seen)


def test_reflection_level_observation():
    # reported as a measured observation: how the reflection moves the
    # level; nothing is asserted about the sign relation itself
    rng = np.random.default_rng(14)
    observations = []
    for _ in range(10):
        g, h = helpers.noncommuting_pair(rng, scale=0.5)
        fc0 = cover.fiber_class(g, h)
        fc1 = cover.fiber_class(g.inverse(), h)
        observations.append((fc0.level, fc1.level))
    assert all(isinstance(a, int) and isinstance(b, int)
               for a, b in observations)


def test_straight_and_polar_reference_paths_agree():
    rng = np.random.default_rng(15)
    checked = 0
    while checked < 40:
        g, h = helpers.sampled_pair(rng)
        c = mo.commutator(g, h)
        if c.trace() <= -1.9:
            continue
        w_straight = cover.reference_lift_value(c)
        psi, s_entries = cover._polar_factors(c)
        point = lambda u: cover._path_point_polar(c, u, psi, s_entries)
        w_polar = 0.0
        u_prev, phi_prev = 0.0, 0.0
        for j in range(1, 65):
            u = j / 64
            phi = mo.boundary_angle(point(u), 0.0)
            w_polar += cover._unwrap_path_step(point, u_prev, u, phi_prev, phi, 0)
            u_prev, phi_prev = u, phi
        assert abs(w_straight - w_polar) < 1e-6
        checked += 1
