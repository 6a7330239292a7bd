"""Tests for fundamental fields, orbit openness and singular points."""

import numpy as np
import pytest

from adsbh import causal, orbits, so2n


def _point(*coords):
    return orbits.check_point(np.array(coords, dtype=float))


def test_fundamental_field_j1_closed_form():
    p = _point(1.0, 0.7, 0.3, np.sqrt(1.0 + 0.49 - 1.0 - 0.09))
    gs = so2n.generators(3)
    v = orbits.fundamental_field(gs.J1, p)
    assert np.allclose(v, [0.0, -p[3], 0.0, -p[1]], atol=1e-14)


def test_fundamental_field_zero_element():
    p = _point(1.0, 0.0, 0.0, 0.0)
    assert np.max(np.abs(orbits.fundamental_field(np.zeros((4, 4)), p))) == 0.0


def test_fundamental_field_vj_closed_form_l5():
    rng = np.random.default_rng(0)
    p = orbits.random_points(5, 1, rng)[0]
    gs = so2n.generators(5)
    u, x = p[0], p[2]
    for i, V in enumerate(gs.V):
        a = 3 + i                     # ambient transverse index
        want = np.zeros(6)
        want[0] = -p[a]
        want[2] = -p[a]
        want[a] = x - u
        assert np.max(np.abs(orbits.fundamental_field(V, p) - want)) < 1e-14


@pytest.mark.parametrize("l", [3, 4, 5])
def test_fields_are_eta_tangent(l):
    rng = np.random.default_rng(l)
    gs = so2n.generators(l)
    gens = [gs.q0, gs.J1, gs.J2, gs.M, gs.L, gs.N, gs.F, *gs.q, *gs.W, *gs.V]
    for p in orbits.random_points(l, 50, rng):
        for X in gens:
            v = orbits.fundamental_field(X, p)
            assert abs(orbits.eta_inner(v, p)) < 1e-10


def test_orbit_closed_at_base_point():
    p = _point(1.0, 0.0, 0.0, 0.0)
    assert not orbits.orbit_is_open(p, "an")
    assert not orbits.orbit_is_open(p, "anbar")


def test_orbit_open_at_generic_point():
    # t = 0.6, y = 0.3 with u chosen on the hyperboloid
    p = _point(np.sqrt(1.0 - 0.36 + 0.09), 0.6, 0.0, 0.3)
    assert orbits.orbit_is_open(p, "an")


def test_orbit_closed_anbar_l4():
    t = 0.8
    p = _point(np.sqrt(1.25), t, 0.5, 0.0, -t)
    assert abs(p[-1] + p[1]) < 1e-12
    assert not orbits.orbit_is_open(p, "anbar")
    assert orbits.orbit_is_open(p, "an")


@pytest.mark.parametrize("l", [3, 4, 5])
def test_openness_equals_branch_distance(l):
    rng = np.random.default_rng(100 + l)
    P = orbits.random_points(l, 300, rng)
    for p in P:
        assert orbits.orbit_is_open(p, "an") == (abs(p[-1] - p[1]) >= 1e-9)
        assert orbits.orbit_is_open(p, "anbar") == (abs(p[-1] + p[1]) >= 1e-9)
    # exactly singular construction: y = t, u^2 - x^2 - transverse^2 = 1
    for _ in range(20):
        x = rng.standard_normal(l - 2) * 0.5
        t = rng.standard_normal() * 2.0
        u = np.sqrt(1.0 + np.sum(x * x))
        p = np.concatenate([[u, t], x, [t]])
        assert not orbits.orbit_is_open(p, "an")


def test_pairing_matrix_rank_drops_at_base_point():
    p = _point(1.0, 0.0, 0.0, 0.0)
    for which in ("an", "anbar"):
        delta = orbits.pairing_matrix(p, which)
        sv = np.linalg.svd(delta, compute_uv=False)
        assert int(np.sum(sv > 1e-9 * sv[0])) < 3


@pytest.mark.parametrize("l", [3, 4])
def test_pairing_matrix_rank_equals_field_rank(l):
    rng = np.random.default_rng(200 + l)
    for p in orbits.random_points(l, 30, rng):
        for which in ("an", "anbar"):
            delta = orbits.pairing_matrix(p, which)
            sv = np.linalg.svd(delta, compute_uv=False)
            rank = int(np.sum(sv > 1e-9 * sv[0]))
            assert (rank == l) == orbits.orbit_is_open(p, which)


def test_pairing_matrix_is_scaled_field_gram():
    """Delta_ij = B(q_i, Ad(g^-1)N_j) equals -2(l-1) times the ambient Gram
    matrix of the pushed-forward Q frame against the fundamental fields."""
    rng = np.random.default_rng(5)
    for l in (3, 4):
        gs = so2n.generators(l)
        q_basis = (gs.q0,) + gs.q
        p = orbits.random_points(l, 1, rng)[0]
        base = np.eye(l + 1)[:, 0]
        g = causal.frame_completion(p)
        for which in ("an", "anbar"):
            delta = orbits.pairing_matrix(p, which, frame=g)
            basis = orbits.subgroup_basis(l, which)
            gram = np.array([[orbits.eta_inner(g @ (qi @ base),
                                               orbits.fundamental_field(Nj, p))
                              for Nj in basis] for qi in q_basis])
            assert np.max(np.abs(delta + 2.0 * (l - 1) * gram)) < 1e-9


def test_pairing_matrix_stabilizer_invariance():
    rng = np.random.default_rng(6)
    l = 3
    p = orbits.random_points(l, 1, rng)[0]
    g = causal.frame_completion(p)
    # stabilizer element: spatial rotation block (fixes the base point)
    h = np.eye(l + 1)
    c, s = np.cos(0.8), np.sin(0.8)
    h[2, 2], h[2, 3], h[3, 2], h[3, 3] = c, -s, s, c
    d1 = orbits.pairing_matrix(p, "an", frame=g)
    d2 = orbits.pairing_matrix(p, "an", frame=g @ h)
    r1 = np.linalg.matrix_rank(d1, tol=1e-9)
    r2 = np.linalg.matrix_rank(d2, tol=1e-9)
    assert r1 == r2


def test_classify_singularity_examples():
    assert orbits.classify_singularity(_point(1, 0, 0, 0)) is orbits.SingularityClass.ON_BOTH
    # points on one branch only (t = +-y forces u^2 - x^2 >= 1)
    p = _point(np.sqrt(2.0), 1 / np.sqrt(2), 1.0, 1 / np.sqrt(2))
    assert orbits.classify_singularity(p) is orbits.SingularityClass.ON_AN
    p = _point(np.sqrt(2.0), 1 / np.sqrt(2), 1.0, -1 / np.sqrt(2))
    assert orbits.classify_singularity(p) is orbits.SingularityClass.ON_ANBAR


def test_classify_singularity_generic_matches_openness():
    rng = np.random.default_rng(7)
    for p in orbits.random_points(4, 100, rng):
        if orbits.classify_singularity(p) is orbits.SingularityClass.GENERIC:
            assert orbits.orbit_is_open(p, "an") and orbits.orbit_is_open(p, "anbar")


def test_j1_norm_examples_and_identity():
    assert abs(orbits.j1_norm_sq(_point(1, 0, 0, 0))) == 0.0
    assert abs(orbits.j1_norm_sq(_point(0, 1, 0, 0)) - 1.0) < 1e-14
    rng = np.random.default_rng(8)
    for l in (3, 4, 5):
        for p in orbits.random_points(l, 100, rng):
            assert abs(orbits.j1_norm_sq(p) - (p[1] ** 2 - p[-1] ** 2)) < 1e-12


def test_point_validation_and_projection():
    with pytest.raises(ValueError):
        orbits.check_point(np.array([1.0, 1.0, 0.0, 0.0]))
    p = orbits.project_to_hyperboloid(np.array([2.0, 0.0, 0.0, 0.0]))
    assert np.allclose(p, [1, 0, 0, 0])
    with pytest.raises(ValueError):
        orbits.project_to_hyperboloid(np.array([0.1, 0.0, 5.0, 0.0]))
