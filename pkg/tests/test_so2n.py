"""Tests for the so(2,n) matrix model: generators, Killing form, involutions,
root labels, exponentials."""

import itertools

import numpy as np
import pytest

from adsbh import so2n


def test_j1_entries_l3():
    gs = so2n.generators(3)
    nz = np.argwhere(gs.J1 != 0.0)
    # 1-based positions (2,4) and (4,2), both +1
    assert sorted(map(tuple, nz)) == [(1, 3), (3, 1)]
    assert gs.J1[1, 3] == 1.0 and gs.J1[3, 1] == 1.0


def test_e_is_null_generator_for_first_direction():
    gs = so2n.generators(3)
    want = np.zeros((4, 4))
    want[0, 1] = 1.0
    want[1, 0] = -1.0
    want[0, 2] = want[2, 0] = 1.0
    assert np.array_equal(gs.E, want)


def test_w_v_families_empty_for_l3():
    gs = so2n.generators(3)
    assert gs.W == () and gs.V == () and gs.X == () and gs.Y == ()
    assert len(so2n.generators(5).W) == 2


@pytest.mark.parametrize("l", [3, 4, 5, 6])
def test_generators_satisfy_defining_relation(l):
    gs = so2n.generators(l)
    for name in ("q0", "J1", "J2", "M", "L", "N", "F", "E"):
        so2n.check_algebra_element(getattr(gs, name))
    for fam in (gs.q, gs.W, gs.Y, gs.V, gs.X):
        for Z in fam:
            so2n.check_algebra_element(Z)


def test_generators_rejects_low_dimension():
    with pytest.raises(ValueError):
        so2n.generators(1)


def test_bracket_antisymmetry_and_dimension_check():
    gs = so2n.generators(4)
    assert np.max(np.abs(so2n.bracket(gs.M, gs.M))) == 0.0
    with pytest.raises(ValueError):
        so2n.bracket(gs.M, so2n.generators(3).M)


def test_cartan_pair_commutes_l4():
    gs = so2n.generators(4)
    assert np.max(np.abs(so2n.bracket(gs.J1, gs.J2))) == 0.0


@pytest.mark.parametrize("l", [3, 4, 5, 6, 7, 8])
def test_jacobi_identity(l):
    rng = np.random.default_rng(l)
    basis = so2n.algebra_basis(l)
    for _ in range(30):
        X, Y, Z = (basis[rng.integers(len(basis))] for _ in range(3))
        J = (so2n.bracket(X, so2n.bracket(Y, Z))
             + so2n.bracket(Y, so2n.bracket(Z, X))
             + so2n.bracket(Z, so2n.bracket(X, Y)))
        assert np.max(np.abs(J)) < 1e-12


def test_killing_j1_so22_against_ad_oracle():
    """Independent oracle: build the 6x6 adjoint matrices of so(2,2) by
    solving for bracket coefficients, then trace.  Frozen value: 4."""
    basis = so2n.algebra_basis(3)
    flat = np.stack([B.ravel() for B in basis]).T      # (16, 6)
    def ad_matrix(X):
        cols = []
        for B in basis:
            C = X @ B - B @ X
            coef, *_ = np.linalg.lstsq(flat, C.ravel(), rcond=None)
            cols.append(coef)
        return np.stack(cols).T
    J1 = so2n.generators(3).J1
    oracle = float(np.trace(ad_matrix(J1) @ ad_matrix(J1)))
    assert abs(oracle - 4.0) < 1e-9
    assert abs(so2n.killing(J1, J1) - 4.0) < 1e-12


def test_killing_bilinear_and_zero():
    gs = so2n.generators(4)
    zero = np.zeros_like(gs.M)
    assert so2n.killing(gs.M, zero) == 0.0
    a = so2n.killing(gs.M + 2.0 * gs.L, gs.F)
    b = so2n.killing(gs.M, gs.F) + 2.0 * so2n.killing(gs.L, gs.F)
    assert abs(a - b) < 1e-9


def test_killing_ad_invariance():
    rng = np.random.default_rng(2)
    for l in (3, 4):
        basis = so2n.algebra_basis(l)
        X = sum(rng.standard_normal() * B for B in basis)
        Y = sum(rng.standard_normal() * B for B in basis)
        Z = sum(rng.standard_normal() * B for B in basis)
        g = so2n.mat_exp(0.3 * Z)
        ginv = np.linalg.inv(g)
        lhs = so2n.killing(g @ X @ ginv, g @ Y @ ginv)
        assert abs(lhs - so2n.killing(X, Y)) < 1e-9 * max(1.0, abs(lhs))


def test_killing_root_space_orthogonality():
    for l in (3, 4, 5):
        gs = so2n.generators(l)
        labelled = [(gs.M, (1, 1)), (gs.L, (1, -1)), (gs.N, (-1, 1)), (gs.F, (-1, -1))]
        labelled += [(Z, (1, 0)) for Z in gs.W] + [(Z, (-1, 0)) for Z in gs.Y]
        labelled += [(Z, (0, 1)) for Z in gs.V] + [(Z, (0, -1)) for Z in gs.X]
        for (X, lx), (Y, ly) in itertools.product(labelled, labelled):
            if (lx[0] + ly[0], lx[1] + ly[1]) != (0, 0):
                assert abs(so2n.killing(X, Y)) < 1e-9


def test_cartan_theta_involution():
    gs = so2n.generators(5)
    for Z in (gs.M, gs.E, gs.J1):
        assert np.array_equal(so2n.cartan_theta(so2n.cartan_theta(Z)), Z)


def test_theta_maps_n_family_to_nbar_family():
    for l in (3, 4, 5):
        gs = so2n.generators(l)
        image = np.stack([so2n.algebra_coords(so2n.cartan_theta(Z)) for Z in gs.n_family])
        target = np.stack([so2n.algebra_coords(Z) for Z in gs.nbar_family])
        r_img = np.linalg.matrix_rank(image, tol=1e-10)
        r_joint = np.linalg.matrix_rank(np.vstack([image, target]), tol=1e-10)
        assert r_img == len(gs.n_family) == r_joint


def test_sigma_split_examples():
    gs = so2n.generators(3)
    h, q = so2n.sigma_split(gs.J1)
    assert np.array_equal(h, gs.J1) and np.max(np.abs(q)) == 0.0
    h, q = so2n.sigma_split(gs.J2)
    assert np.array_equal(q, gs.J2) and np.max(np.abs(h)) == 0.0
    X = gs.M + 0.7 * gs.q0
    h, q = so2n.sigma_split(X)
    assert np.array_equal(h + q, X)


@pytest.mark.parametrize("l", [3, 4, 5, 6, 7, 8])
def test_sigma_bracket_relations_full_basis(l):
    basis = so2n.algebra_basis(l)
    hs = [so2n.sigma_split(B)[0] for B in basis]
    qs = [so2n.sigma_split(B)[1] for B in basis]
    for A, B, h_part in ((hs, hs, True), (hs, qs, False), (qs, qs, True)):
        for X, Y in itertools.product(A, B):
            h, q = so2n.sigma_split(so2n.bracket(X, Y))
            bad = q if h_part else h
            assert np.max(np.abs(bad)) < 1e-12


@pytest.mark.parametrize("l", [3, 4, 5, 6, 7, 8])
def test_theta_sigma_commute(l):
    for B in so2n.algebra_basis(l):
        h, q = so2n.sigma_split(B)
        lhs = so2n.cartan_theta(h) + so2n.cartan_theta(q)
        h2, q2 = so2n.sigma_split(so2n.cartan_theta(B))
        assert np.max(np.abs(lhs - (h2 + q2))) < 1e-14
        assert np.max(np.abs(so2n.cartan_theta(h) - h2)) < 1e-14


@pytest.mark.parametrize("l", [3, 4, 5, 6, 7, 8])
def test_root_label_table(l):
    gs = so2n.generators(l)
    assert so2n.root_label(gs.M) == (1, 1)
    assert so2n.root_label(gs.L) == (1, -1)
    assert so2n.root_label(gs.N) == (-1, 1)
    assert so2n.root_label(gs.F) == (-1, -1)
    for Z in gs.W:
        assert so2n.root_label(Z) == (1, 0)
    for Z in gs.Y:
        assert so2n.root_label(Z) == (-1, 0)
    for Z in gs.V:
        assert so2n.root_label(Z) == (0, 1)
    for Z in gs.X:
        assert so2n.root_label(Z) == (0, -1)


def test_root_label_rejects_mixed_vector():
    gs = so2n.generators(3)
    with pytest.raises(so2n.NotARootVector):
        so2n.root_label(gs.J1 + gs.M)


def test_mat_exp_zero_and_nilpotent():
    assert np.array_equal(so2n.mat_exp(np.zeros((4, 4)), 2.0), np.eye(4))
    E = np.array([[0.0, 1.0], [0.0, 0.0]])
    t = 0.7
    assert np.array_equal(so2n.mat_exp(E, t), np.array([[1.0, t], [0.0, t * 0 + 1.0]]))


def test_e_cubed_vanishes_exactly():
    for l in (3, 4, 5, 6, 7, 8):
        E = so2n.generators(l).E
        assert so2n.nilpotency_degree(E) == 3
        assert np.max(np.abs(E @ E @ E)) == 0.0


def test_adke_cube_vanishes_and_exp_in_group():
    rng = np.random.default_rng(9)
    for l in range(3, 9):
        E = so2n.generators(l).E
        for _ in range(12):
            q, r = np.linalg.qr(rng.standard_normal((l - 1, l - 1)))
            q *= np.sign(np.diag(r))
            if np.linalg.det(q) < 0:
                q[:, 0] = -q[:, 0]
            k = np.eye(l + 1)
            k[2:, 2:] = q
            ake = k @ E @ k.T
            assert np.max(np.abs(ake @ ake @ ake)) < 1e-12
            g = so2n.mat_exp(ake, rng.uniform(-3, 3))
            assert so2n.is_group_element(g, tol=1e-9)


def test_mat_exp_generic_is_group_element():
    rng = np.random.default_rng(13)
    for l in (3, 5):
        basis = so2n.algebra_basis(l)
        X = sum(rng.standard_normal() * B for B in basis)
        g = so2n.mat_exp(X, 0.4)
        so2n.check_group_element(g, tol=1e-9)


def test_group_membership_checks():
    g = np.eye(5)
    so2n.check_group_element(g)
    rot_pi = g.copy()
    rot_pi[0, 0] = -1.0
    rot_pi[1, 1] = -1.0      # the (u,t)-plane rotation by pi: still connected
    assert so2n.is_group_element(rot_pi)
    g2 = g.copy()
    g2[0, 0] = -1.0
    g2[2, 2] = -1.0          # eta-orthogonal, det +1, but time-reversing
    assert not so2n.is_group_element(g2)
