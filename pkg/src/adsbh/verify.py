"""Machine-runnable invariant suites (the CLI `verify` command).

Each check returns None on success or a short counterexample string; the
suite runner collects results.  These are the cheap always-on versions of
the invariants; the full-scale acceptance runs live in the test suite.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import ads2, btz_sl2, causal, orbits, so2n

__all__ = ["CheckResult", "SUITES", "run_suite", "run"]


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _random_so(n: int, rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    q *= np.sign(np.diag(r))
    if np.linalg.det(q) < 0.0:
        q[:, 0] = -q[:, 0]
    return q


def _embed_spatial_rotation(k: np.ndarray, l: int) -> np.ndarray:
    g = np.eye(l + 1)
    g[2:, 2:] = k
    return g


def _gen_list(gs) -> list:
    return [gs.q0, gs.J1, gs.J2, gs.M, gs.L, gs.N, gs.F, gs.E,
            *gs.q, *gs.W, *gs.Y, *gs.V, *gs.X]


# -- algebra ----------------------------------------------------------------

def check_jacobi() -> str | None:
    rng = np.random.default_rng(11)
    for l in range(3, 9):
        gens = _gen_list(so2n.generators(l))
        for _ in range(20):
            X, Y, Z = (gens[rng.integers(len(gens))] for _ in range(3))
            J = (so2n.bracket(X, so2n.bracket(Y, Z))
                 + so2n.bracket(Y, so2n.bracket(Z, X))
                 + so2n.bracket(Z, so2n.bracket(X, Y)))
            if np.max(np.abs(J)) > 1e-12:
                return f"Jacobi residual {np.max(np.abs(J)):.2e} at l={l}"
    return None


def check_root_labels() -> str | None:
    for l in range(3, 9):
        gs = so2n.generators(l)
        want = [(gs.M, (1, 1)), (gs.L, (1, -1)), (gs.N, (-1, 1)), (gs.F, (-1, -1))]
        want += [(Z, (1, 0)) for Z in gs.W] + [(Z, (-1, 0)) for Z in gs.Y]
        want += [(Z, (0, 1)) for Z in gs.V] + [(Z, (0, -1)) for Z in gs.X]
        for Z, lab in want:
            got = so2n.root_label(Z)
            if got != lab:
                return f"l={l}: label {got} != {lab}"
        try:
            so2n.root_label(gs.J1 + gs.M)
            return f"l={l}: J1+M accepted as root vector"
        except so2n.NotARootVector:
            pass
    return None


def check_root_space_orthogonality() -> str | None:
    for l in range(3, 9):
        gs = so2n.generators(l)
        labelled = [(gs.M, (1, 1)), (gs.L, (1, -1)), (gs.N, (-1, 1)), (gs.F, (-1, -1))]
        labelled += [(Z, (1, 0)) for Z in gs.W] + [(Z, (-1, 0)) for Z in gs.Y]
        labelled += [(Z, (0, 1)) for Z in gs.V] + [(Z, (0, -1)) for Z in gs.X]
        for (X, lx), (Y, ly) in itertools.product(labelled, labelled):
            s = (lx[0] + ly[0], lx[1] + ly[1])
            b = so2n.killing(X, Y)
            if s != (0, 0) and abs(b) > 1e-9:
                return f"l={l}: B(G_{lx}, G_{ly}) = {b}"
    return None


def check_hq_brackets() -> str | None:
    for l in range(3, 9):
        basis = so2n.algebra_basis(l)
        for X, Y in itertools.product(basis, basis):
            hx, qx = so2n.sigma_split(X)
            hy, qy = so2n.sigma_split(Y)
            for A, B, expect_h in ((hx, hy, True), (hx, qy, False), (qx, qy, True)):
                h, q = so2n.sigma_split(so2n.bracket(A, B))
                bad = q if expect_h else h
                if np.max(np.abs(bad)) > 1e-12:
                    return f"l={l}: bracket left its sigma eigenspace"
    return None


def check_theta_sigma_commute() -> str | None:
    for l in range(3, 9):
        for X in so2n.algebra_basis(l):
            h, q = so2n.sigma_split(so2n.cartan_theta(X))
            ht, qt = so2n.sigma_split(X)
            d = (h + q) - so2n.cartan_theta(ht + qt)
            s1 = h - so2n.cartan_theta(ht)
            if np.max(np.abs(s1)) > 1e-14 or np.max(np.abs(d)) > 1e-14:
                return f"l={l}: theta and sigma do not commute"
    return None


def check_theta_maps_n_to_nbar() -> str | None:
    for l in range(3, 9):
        gs = so2n.generators(l)
        image = np.stack([so2n.algebra_coords(so2n.cartan_theta(Z)) for Z in gs.n_family])
        target = np.stack([so2n.algebra_coords(Z) for Z in gs.nbar_family])
        joint = np.vstack([image, target])
        if (np.linalg.matrix_rank(image, tol=1e-10)
                != np.linalg.matrix_rank(joint, tol=1e-10)):
            return f"l={l}: span(theta(N)) != span(Nbar)"
    return None


def check_nilpotents() -> str | None:
    rng = np.random.default_rng(5)
    for l in range(3, 9):
        gs = so2n.generators(l)
        if so2n.nilpotency_degree(gs.E) != 3:
            return f"l={l}: E is not nilpotent of degree 3"
        for _ in range(10):
            k = _embed_spatial_rotation(_random_so(l - 1, rng), l)
            ake = k @ gs.E @ k.T
            cube = ake @ ake @ ake
            if np.max(np.abs(cube)) > 1e-12:
                return f"l={l}: (Ad(k)E)^3 != 0"
    return None


def check_sl2_killing() -> str | None:
    want = np.array([[8, 0, 0], [0, 0, 4], [0, 4, 0]])
    got = btz_sl2.killing_sl2_matrix()
    if not np.array_equal(got, want):
        return f"sl2 Killing matrix {got.tolist()}"
    return None


# -- orbits -----------------------------------------------------------------

def check_field_tangency() -> str | None:
    rng = np.random.default_rng(3)
    for l in (3, 4, 5):
        P = orbits.random_points(l, 100, rng)
        gens = _gen_list(so2n.generators(l))
        for p in P[:20]:
            for X in gens:
                v = orbits.fundamental_field(X, p)
                if abs(orbits.eta_inner(v, p)) > 1e-10:
                    return f"l={l}: field is not tangent"
    return None


def _closed_form_fields(p: np.ndarray) -> dict:
    l = p.size - 1
    u, t, x, y = p[0], p[1], p[2], p[-1]
    out = {}
    v = np.zeros(l + 1); v[1] = -y; v[-1] = -t
    out["J1"] = v
    v = np.zeros(l + 1); v[0] = -x; v[2] = -u
    out["J2"] = v
    v = np.zeros(l + 1); v[0] = y - t; v[1] = u - x; v[2] = y - t; v[-1] = u - x
    out["M"] = v
    v = np.zeros(l + 1); v[0] = y - t; v[1] = u + x; v[2] = t - y; v[-1] = u + x
    out["L"] = v
    for i, a in enumerate(range(3, l)):
        v = np.zeros(l + 1); v[1] = -p[a]; v[-1] = -p[a]; v[a] = y - t
        out[f"W{i}"] = v
        v = np.zeros(l + 1); v[0] = -p[a]; v[2] = -p[a]; v[a] = x - u
        out[f"V{i}"] = v
    return out


def check_closed_form_fields() -> str | None:
    rng = np.random.default_rng(4)
    for l in (3, 4, 5):
        gs = so2n.generators(l)
        for p in orbits.random_points(l, 50, rng):
            cf = _closed_form_fields(p)
            named = {"J1": gs.J1, "J2": gs.J2, "M": gs.M, "L": gs.L}
            named.update({f"W{i}": Z for i, Z in enumerate(gs.W)})
            named.update({f"V{i}": Z for i, Z in enumerate(gs.V)})
            for name, X in named.items():
                d = np.max(np.abs(orbits.fundamental_field(X, p) - cf[name]))
                if d > 1e-12:
                    return f"l={l}: field {name} off closed form by {d:.2e}"
    return None


def check_openness_matches_branch_distance() -> str | None:
    rng = np.random.default_rng(6)
    for l in (3, 4, 5):
        P = orbits.random_points(l, 400, rng)
        for p in P:
            for which, sgn in (("an", -1.0), ("anbar", +1.0)):
                closed = abs(p[-1] + sgn * p[1]) < 1e-9
                if orbits.orbit_is_open(p, which) != (not closed):
                    return f"l={l}: openness mismatch at {p}"
        # constructed singular points
        for _ in range(20):
            p = orbits.random_points(l, 1, rng)[0]
            p[-1] = p[1]
            p = orbits.project_to_hyperboloid(p) if p[0]**2 + p[1]**2 - np.sum(p[2:]**2) > 0 else p
            if abs(p[-1] - p[1]) < 1e-12 and orbits.hyperboloid_residual(p) < 1e-9:
                if orbits.orbit_is_open(p, "an"):
                    return f"l={l}: closed orbit not detected"
    return None


def check_pairing_rank_equivalence() -> str | None:
    rng = np.random.default_rng(7)
    for l in (3, 4):
        for p in orbits.random_points(l, 25, rng):
            for which in ("an", "anbar"):
                delta = orbits.pairing_matrix(p, which)
                sv = np.linalg.svd(delta, compute_uv=False)
                rank = int(np.sum(sv > 1e-9 * sv[0]))
                if (rank == l) != orbits.orbit_is_open(p, which):
                    return f"l={l}: pairing rank disagrees with openness"
    return None


def check_j1_norm() -> str | None:
    rng = np.random.default_rng(8)
    for l in (3, 4, 5):
        for p in orbits.random_points(l, 200, rng):
            if abs(orbits.j1_norm_sq(p) - (p[1] ** 2 - p[-1] ** 2)) > 1e-12:
                return f"l={l}: |J1*|^2 != t^2 - y^2 at {p}"
    return None


# -- causal -----------------------------------------------------------------

def check_hit_formula() -> str | None:
    for l in (3, 4, 5):
        for mu in np.linspace(0.12, 3.0, 12):
            for ca in np.linspace(-0.95, 0.95, 11):
                if min(abs(np.cos(mu) - ca), abs(np.cos(mu) + ca)) < 1e-3:
                    continue
                w = np.zeros(l - 1)
                w[-1] = -ca
                w[0] = np.sqrt(1.0 - ca * ca)
                ht = causal.hit_times(causal.k_point(l, mu), w)
                s_an = np.sin(mu) / (np.cos(mu) - ca)
                s_anbar = np.sin(mu) / (np.cos(mu) + ca)
                if not any(abs(r - s_an) < 1e-10 for r in ht.roots_an):
                    return f"l={l} mu={mu:.3f}: AN root missing"
                if not any(abs(r - s_anbar) < 1e-10 for r in ht.roots_anbar):
                    return f"l={l} mu={mu:.3f}: ANbar root missing"
    return None


def check_ray_invariants() -> str | None:
    rng = np.random.default_rng(9)
    for l in (3, 4, 5):
        for p in orbits.random_points(l, 10, rng):
            frame = causal.frame_completion(p)
            w = causal.sphere_directions(l - 1, 4, 1)[rng.integers(4)]
            for s in np.linspace(-50.0, 50.0, 9):
                q = causal.ray_point(p, w, s, frame=frame)
                if orbits.hyperboloid_residual(q) > 1e-10:
                    return f"l={l}: ray leaves the hyperboloid"
            # quadratic interpolation through s = -1, 0, 1 reproduces s = 3
            q = [causal.ray_point(p, w, s, frame=frame) for s in (-1.0, 0.0, 1.0)]
            interp = q[1] + 1.5 * (q[2] - q[0]) + 3.0 * (q[2] - 2 * q[1] + q[0])
            if np.max(np.abs(interp - causal.ray_point(p, w, 3.0, frame=frame))) > 1e-11:
                return f"l={l}: ray is not quadratic in s"
    return None


def check_kpoint_partition() -> str | None:
    for l in (3, 4, 5):
        for mu in np.linspace(0.05, np.pi - 0.05, 40):
            cls = causal.classify(causal.k_point(l, mu)).cls
            if abs(np.cos(mu)) < 1e-3:
                continue
            want = (causal.CausalClass.INTERIOR_FUTURE if np.cos(mu) > 0
                    else causal.CausalClass.EXTERIOR)
            if cls is not want:
                return f"l={l} mu={mu:.3f}: {cls.value}"
    return None


def check_d_interval() -> str | None:
    for mu in (0.6, 1.2, 2.2):
        p = causal.k_point(3, mu)
        mask = causal.direction_sets(p, 128, 3)
        cos_alpha = -mask.samples[:, -1]
        want = cos_alpha < np.cos(mu)
        if not np.array_equal(mask.hits_an, want):
            return f"mu={mu}: D[u] mask differs from the interval predicate"
    return None


def check_mask_duality() -> str | None:
    rng = np.random.default_rng(10)
    for l in (3, 4, 5):
        for p in orbits.random_points(l, 20, rng):
            g = causal.frame_completion(p)
            mask = causal.direction_sets(p, 128, 5, frame=g)
            q = causal.theta_point(p)
            gq = so2n.cartan_theta_group(g)
            mask_q = causal.direction_sets(q, 128, 5, frame=gq)
            flipped = causal._branch_mask(gq, -mask.samples, "an")
            if not np.array_equal(mask.hits_anbar, flipped):
                return f"l={l}: Dbar[g] != (D theta[g])_theta"
            del mask_q
    return None


def check_monotone_refinement() -> str | None:
    rng = np.random.default_rng(12)
    for l in (3, 4):
        for p in orbits.random_points(l, 100, rng):
            c1 = causal.classify(p, n_samples=64, seed=2).cls
            c2 = causal.classify(p, n_samples=128, seed=2).cls
            if c1 is not c2:
                return f"l={l}: classification changed when samples doubled"
    return None


# -- btz --------------------------------------------------------------------

def check_btz_embedding() -> str | None:
    rng = np.random.default_rng(13)
    for p in orbits.random_points(3, 200, rng):
        q = btz_sl2.unembed(btz_sl2.embed(*p))
        if np.max(np.abs(q - p)) > 1e-12:
            return f"round trip failed at {p}"
    return None


def check_xi_norm() -> str | None:
    rng = np.random.default_rng(14)
    a = 0.8
    for p in orbits.random_points(3, 300, rng):
        val = btz_sl2.xi_norm_sq(a, btz_sl2.embed(*p))
        if abs(val - 32.0 * a * a * (p[1] ** 2 - p[3] ** 2)) > 1e-9:
            return f"xi norm != 32 a^2 (t^2-y^2) at {p}"
    return None


def check_equ_identities() -> str | None:
    for beta in np.linspace(0.1, 2.0 * np.pi - 0.1, 40):
        for theta in np.linspace(0.05, np.pi - 0.05, 40):
            a, b, c = btz_sl2.equ_coefficients(beta, theta)
            den = np.sin(2.0 * theta) * np.sin(beta + 2.0 * theta)
            if abs(den) < 1e-2 or abs(a) < 1e-10:
                continue
            roots = btz_sl2.equ_roots(beta, theta)
            if len(roots) != 2:
                continue
            prod = 4.0 * np.sin(beta / 2.0) ** 2 / den
            tot = -2.0 * np.sin(beta) / den
            if abs(roots[0] * roots[1] - prod) > 1e-9 * max(1.0, abs(prod)):
                return f"product identity fails at beta={beta:.3f} theta={theta:.3f}"
            if abs(roots[0] + roots[1] - tot) > 1e-9 * max(1.0, abs(tot)):
                return f"sum identity fails at beta={beta:.3f} theta={theta:.3f}"
    return None


def check_interior_beta_window() -> str | None:
    for beta, want in ((np.pi / 2, False), (3 * np.pi / 2, True),
                       (np.pi + 1e-3, True), (np.pi - 1e-3, False),
                       (2 * np.pi - 1e-3, True), (1e-3, False)):
        if btz_sl2.interior_beta_test(beta) != want:
            return f"interior test wrong at beta={beta}"
    return None


def check_btz_horizon_closed_form() -> str | None:
    for rho in np.linspace(-2.0, 2.0, 9):
        for branch in (+1, -1):
            tau = btz_sl2.horizon_closed_form(rho, branch)
            p = btz_sl2.unembed(btz_sl2.global_coords_to_group(rho, 0.4, tau))
            if abs(p[0] ** 2 - p[2] ** 2) > 1e-8:
                return f"u^2 != x^2 at rho={rho}, branch={branch}"
    return None


def check_bhtz_action() -> str | None:
    rng = np.random.default_rng(15)
    a = 0.55
    for p in orbits.random_points(3, 20, rng):
        g = btz_sl2.embed(*p)
        c1 = btz_sl2.bhtz_apply(a, 0.3, btz_sl2.bhtz_apply(a, 0.9, g))
        c2 = btz_sl2.bhtz_apply(a, 1.2, g)
        if np.max(np.abs(c1 - c2)) > 1e-10:
            return "psi_s o psi_s' != psi_(s+s')"
        tw = btz_sl2.twisted_action(btz_sl2.exp_h(a), g)
        if np.max(np.abs(tw - btz_sl2.bhtz_apply(a, 1.0, g))) > 1e-10:
            return "psi_1 != twisted action by exp(aH)"
    z1 = btz_sl2.global_coords_to_group(0.7, 1.1 + 2 * a, 2.0)
    z2 = btz_sl2.bhtz_apply(a, 1.0, btz_sl2.global_coords_to_group(0.7, 1.1, 2.0))
    if np.max(np.abs(z1 - z2)) > 1e-10:
        return "BHTZ shift theta -> theta + 2a fails"
    return None


def check_relabel_lemma() -> str | None:
    rng = np.random.default_rng(16)
    for _ in range(40):
        a = float(rng.uniform(-1.5, 1.5))
        theta = float(rng.uniform(0.05, np.pi / 2 - 0.05))
        s = float(rng.uniform(-3.0, 3.0))
        ake = btz_sl2.ad_k_e(theta)
        lhs = btz_sl2.exp_h(-a) @ (np.eye(2) - s * ake) @ btz_sl2.exp_h(a)
        s_t = s * (np.exp(-2 * a) * np.cos(theta) ** 2 + np.exp(2 * a) * np.sin(theta) ** 2)
        t_t = float(np.arctan(np.exp(2 * a) * np.tan(theta)))
        rhs = np.eye(2) - s_t * btz_sl2.ad_k_e(t_t)
        if np.max(np.abs(lhs - rhs)) > 1e-10:
            return f"relabel lemma fails at a={a:.3f}, theta={theta:.3f}"
        if np.sign(s_t) != np.sign(s) and s != 0.0:
            return "relabelled parameter changed sign"
    return None


def check_parabolic_products_singular() -> str | None:
    rng = np.random.default_rng(17)
    for _ in range(50):
        a = float(rng.uniform(-2, 2))
        n = float(rng.uniform(-3, 3))
        g = btz_sl2.exp_h(a) @ (np.eye(2) + n * btz_sl2.E2)
        for sign in (1.0, -1.0):
            for h in (g, -np.linalg.inv(g).T):   # Cartan image stays in the set
                p = btz_sl2.unembed(sign * h)
                if abs(p[1] ** 2 - p[3] ** 2) > 1e-10:
                    return "AN element off the singular set"
    return None


def check_a_bi_invariance() -> str | None:
    rng = np.random.default_rng(18)
    base = [p for p in orbits.random_points(3, 40, rng)
            if min(abs(p[3] - p[1]), abs(p[3] + p[1])) > 1e-3]
    for p in base[:10]:
        cls = causal.classify(p).cls
        for _ in range(5):
            a = btz_sl2.exp_h(float(rng.uniform(-1.0, 1.0)))
            for moved in (a @ btz_sl2.embed(*p), btz_sl2.embed(*p) @ a):
                if causal.classify(btz_sl2.unembed(moved)).cls is not cls:
                    return f"classification not A bi-invariant at {p}"
    return None


def check_btz_cross_validation() -> str | None:
    for rho in np.linspace(-1.5, 1.5, 7):
        for branch in (+1, -1):
            tau = btz_sl2.horizon_closed_form(rho, branch)
            future_sheet = tau >= btz_sl2.horizon_closed_form(rho, -branch) - 1e-12

            sign = 1.0 if future_sheet else -1.0

            def path(lam, rho=rho, tau=tau, future=future_sheet, sign=sign):
                p = btz_sl2.unembed(btz_sl2.global_coords_to_group(
                    rho, 0.0, tau + sign * (0.25 - 0.5 * lam)))
                # the past horizon is located through the time reflection
                return p if future else causal.time_reflect(p)

            h = causal.horizon_bisect(path(0.0), path(1.0), steps=30, path=path)
            if np.max(np.abs(h - path(0.5))) > 1e-4:
                return f"bisection off the closed form at rho={rho}"
    return None


# -- ads2 -------------------------------------------------------------------

def check_ads2_lines() -> str | None:
    rng = np.random.default_rng(19)
    for _ in range(200):
        a = float(rng.uniform(-2, 2))
        k = float(rng.uniform(-np.pi, np.pi))
        s = float(rng.uniform(-5, 5))
        for br in ("E", "F"):
            d = np.max(np.abs(ads2.ads2_light_line(a, k, br, s)
                              - ads2.light_line_oracle(a, k, br, s)))
            if d > 1e-10:
                return f"line formula off oracle by {d:.2e}"
    return None


def check_ads2_chart() -> str | None:
    rng = np.random.default_rng(20)
    for _ in range(200):
        a = float(rng.uniform(-2, 2))
        beta = float(rng.uniform(1e-2, np.pi - 1e-2))
        x = ads2.physical_point(a, beta)
        if abs(ads2.orbit_norm(x) - 8.0) > 1e-10:
            return "chart point off the orbit"
        a2, b2 = ads2.physical_point_inverse(x)
        if abs(a - a2) > 1e-9 or abs(beta - b2) > 1e-9:
            return "chart inversion failed"
    return None


def check_ads2_no_horizon() -> str | None:
    for seed in (1, 2, 3):
        rep = ads2.ads2_no_horizon(1000, seed)
        if rep.escapes != 0:
            return f"escape witness found with seed {seed}: {rep.witnesses[0]}"
    return None


def check_ads2_killing_diag() -> str | None:
    basis = [btz_sl2.H2, btz_sl2.E2 + btz_sl2.F2, btz_sl2.E2 - btz_sl2.F2]
    got = np.array([[btz_sl2.killing_sl2(X, Y) for Y in basis] for X in basis])
    if not np.array_equal(got, np.diag([8.0, 8.0, -8.0])):
        return f"Killing in basis (H, E+F, E-F) is {got.tolist()}"
    return None


SUITES = {
    "algebra": [check_jacobi, check_root_labels, check_root_space_orthogonality,
                check_hq_brackets, check_theta_sigma_commute,
                check_theta_maps_n_to_nbar, check_nilpotents, check_sl2_killing],
    "orbits": [check_field_tangency, check_closed_form_fields,
               check_openness_matches_branch_distance,
               check_pairing_rank_equivalence, check_j1_norm],
    "causal": [check_hit_formula, check_ray_invariants, check_kpoint_partition,
               check_d_interval, check_mask_duality, check_monotone_refinement],
    "btz": [check_btz_embedding, check_xi_norm, check_equ_identities,
            check_interior_beta_window, check_btz_horizon_closed_form,
            check_bhtz_action, check_relabel_lemma,
            check_parabolic_products_singular, check_a_bi_invariance,
            check_btz_cross_validation],
    "ads2": [check_ads2_lines, check_ads2_chart, check_ads2_no_horizon,
             check_ads2_killing_diag],
}


def run_suite(name: str) -> list[CheckResult]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    results = []
    for fn in SUITES[name]:
        try:
            detail = fn()
        except Exception as exc:  # a crash is a failure with the exception as witness
            detail = f"exception: {exc!r}"
        results.append(CheckResult(fn.__name__, detail is None, detail or ""))
    return results


def run(suite: str) -> dict:
    names = sorted(SUITES) if suite == "all" else [suite]
    suites = {}
    ok = True
    for name in names:
        results = run_suite(name)
        ok &= all(r.passed for r in results)
        suites[name] = results
    return {"ok": ok, "suites": suites}
