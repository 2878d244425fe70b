import math

import numpy as np
import pytest

from holtorus import mobius as mo
from holtorus.errors import RejectionBudgetExceeded

TWO_PI = 2.0 * math.pi


def test_compose_identity():
    i = mo.GroupElem.identity()
    g = mo.random_element(3)
    assert mo.compose(i, i).proj_eq(i)
    assert mo.compose(g, i).proj_eq(g)
    assert mo.compose(i, g).proj_eq(g)


def test_compose_inverse_law():
    rng = np.random.default_rng(0)
    for _ in range(50):
        g = mo.random_element(rng)
        assert mo.compose(g, g.inverse()).proj_eq(mo.GroupElem.identity())


def test_rotation_one_parameter_subgroup():
    r = mo.compose(mo.GroupElem.rotation(0.7), mo.GroupElem.rotation(0.2))
    assert r.proj_eq(mo.GroupElem.rotation(0.9))


def test_compose_determinant_many_pairs():
    rng = np.random.default_rng(1)
    worst = 0.0
    for g, h in mo.random_pairs(rng, 10_000):
        worst = max(worst, abs(mo.compose(g, h).det() - 1.0))
    assert worst < 1e-9


def test_commutator_trivial_cases():
    rng = np.random.default_rng(2)
    g = mo.random_element(rng)
    assert mo.commutator(g, mo.GroupElem.identity()).proj_eq(mo.GroupElem.identity())
    d1 = mo.GroupElem(2.0, 0.0, 0.0, 0.5)
    d2 = mo.GroupElem(3.0, 0.0, 0.0, 1.0 / 3.0)
    assert mo.commutator(d1, d2).proj_eq(mo.GroupElem.identity())


def test_commutator_mutually_inverse():
    rng = np.random.default_rng(3)
    for _ in range(100):
        g, h = mo.random_element(rng), mo.random_element(rng)
        prod = mo.compose(mo.commutator(g, h), mo.commutator(h, g))
        assert prod.proj_eq(mo.GroupElem.identity(), tol=1e-7)


def test_classify_examples():
    g = mo.GroupElem.rotation(math.pi / 5)
    assert abs(g.trace() - 2 * math.cos(math.pi / 5)) < 1e-12
    assert mo.classify(g) is mo.ElementClass.ELLIPTIC
    h = mo.GroupElem(2.0, 1.0, 1.0, 1.0)   # trace 3
    assert mo.classify(h) is mo.ElementClass.HYPERBOLIC
    assert mo.classify(mo.GroupElem.identity()) is mo.ElementClass.CENTRAL
    assert mo.classify(mo.GroupElem(-1.0, 0.0, 0.0, -1.0)) is mo.ElementClass.CENTRAL
    par = mo.GroupElem(1.0, 1.0, 0.0, 1.0)
    assert mo.classify(par) is mo.ElementClass.PARABOLIC


def test_classify_parabolic_band_is_deterministic():
    g = mo.GroupElem(1.0 + 2e-10, 1.0, 0.0, 1.0 / (1.0 + 2e-10))
    assert mo.classify(g) is mo.ElementClass.PARABOLIC


def test_classify_conjugation_invariant():
    rng = np.random.default_rng(4)
    for _ in range(10_000):
        g = mo.random_element(rng)
        k = mo.random_element(rng)
        assert mo.classify(mo.conjugate(g, k)) is mo.classify(g)


def test_conjugate_trivial_and_trace():
    rng = np.random.default_rng(5)
    g = mo.random_element(rng)
    assert mo.conjugate(g, mo.GroupElem.identity()).proj_eq(g)
    for _ in range(200):
        g, k = mo.random_element(rng), mo.random_element(rng)
        assert abs(mo.conjugate(g, k).trace() - g.trace()) < 1e-8 * (1 + abs(g.trace()))


def test_boundary_angle_identity_and_rotation():
    for theta in (0.0, 0.4, 3.0, 6.0):
        assert abs(mo.boundary_angle(mo.GroupElem.identity(), theta)
                   - theta % TWO_PI) < 1e-12
    # a half-plane rotation acts on the disk boundary as a rigid shift
    g = mo.GroupElem.rotation(0.4)
    shift = mo.boundary_angle(g, 0.0)
    for theta in (0.1, 1.0, 2.0, 5.5):
        got = mo.boundary_angle(g, theta)
        assert abs((got - theta - shift) % TWO_PI) < 1e-10 or \
               abs((got - theta - shift) % TWO_PI - TWO_PI) < 1e-10


def test_boundary_angle_monotone():
    rng = np.random.default_rng(6)
    for _ in range(20):
        g = mo.random_element(rng)
        lifted = 0.0
        prev = mo.boundary_angle(g, 0.0)
        grid = np.linspace(0.0, TWO_PI, 4097)
        for theta in grid[1:]:
            cur = mo.boundary_angle(g, theta)
            d = (cur - prev) % TWO_PI
            lifted += d
            prev = cur
        # degree one: total increase over a full period is exactly 2*pi
        assert abs(lifted - TWO_PI) < 1e-6


def test_boundary_angle_degree_one_1024_grid():
    rng = np.random.default_rng(7)
    g = mo.random_element(rng)
    grid = np.linspace(0.0, TWO_PI, 1025)
    total = 0.0
    prev = mo.boundary_angle(g, 0.0)
    for theta in grid[1:]:
        cur = mo.boundary_angle(g, theta)
        total += (cur - prev) % TWO_PI
        prev = cur
    assert abs(total - TWO_PI) < 1e-8


def test_cayley_identity_and_traces():
    d = mo.cayley_to_disk(mo.GroupElem.identity())
    assert abs(d.alpha - 1.0) < 1e-15 and abs(d.beta) < 1e-15
    rng = np.random.default_rng(8)
    for _ in range(300):
        g = mo.random_element(rng)
        d = mo.cayley_to_disk(g)
        assert abs(d.trace() - g.trace()) < 1e-10 * (1 + abs(g.trace()))
        assert abs((abs(d.alpha) ** 2 - abs(d.beta) ** 2) - 1.0) < 1e-10


def test_cayley_elliptic_eigenvalues_on_circle():
    rng = np.random.default_rng(9)
    for _ in range(100):
        g = mo.random_element(rng, mo.ElementClass.ELLIPTIC)
        eig = np.linalg.eigvals(mo.cayley_to_disk(g).as_array())
        assert np.allclose(np.abs(eig), 1.0, atol=1e-9)
        assert np.allclose(eig[0].conjugate(), eig[1], atol=1e-8)


def test_random_element_det_and_hints():
    rng = np.random.default_rng(10)
    for _ in range(200):
        g = mo.random_element(rng)
        assert abs(g.det() - 1.0) < 1e-10
    for _ in range(50):
        g = mo.random_element(rng, mo.ElementClass.ELLIPTIC)
        assert abs(g.trace()) < 2.0
    for _ in range(50):
        g = mo.random_element(rng, mo.ElementClass.HYPERBOLIC)
        assert abs(g.trace()) > 2.0


def test_random_element_distinct_seeds():
    g1 = mo.random_element(11)
    g2 = mo.random_element(12)
    assert not g1.proj_eq(g2)
    assert g1.proj_eq(mo.random_element(11))


def test_random_element_rejection_budget():
    with pytest.raises(RejectionBudgetExceeded):
        mo.random_element(0, mo.ElementClass.PARABOLIC, budget=50)


def test_group_elem_rejects_bad_matrices():
    with pytest.raises(ValueError):
        mo.GroupElem(2.0, 0.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        mo.GroupElem(1.0, 0.0, 0.0, -1.0)


def test_projective_equality():
    g = mo.GroupElem(1.3, 0.2, 0.4, (1.0 + 0.2 * 0.4) / 1.3)
    assert g.proj_eq(g.neg())
    assert not g.proj_eq(mo.GroupElem.identity())
