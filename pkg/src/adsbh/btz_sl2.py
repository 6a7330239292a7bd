"""Non-rotating massive BTZ machinery on SL2(R), the 3D oracle.

The hyperboloid u^2 + t^2 - x^2 - y^2 = 1 is identified with SL2(R) via

    g = [[u + x, y + t],
         [y - t, u - x]]

with sl2 basis H = diag(1,-1), E = E_12, F = E_21, T = E - F.  The
identification flow is conjugation by exp(s a H); its Killing-norm squared
equals 32 a^2 (t^2 - y^2), so the singular set t^2 = y^2 is exactly where
the flow turns null.  The safe region is charted by twisted coordinates

    z(rho, theta, tau) = tau_{exp(theta/2 H) exp(-tau/2 T)}(exp(rho H)),

where tau_g(x) = g x sigma(g^{-1}) and sigma = Ad(diag(1,-1)) is the
exterior automorphism fixing H (so sigma(exp(c T)) = exp(-c T)); the
identification acts by theta -> theta + 2 n a and the horizon is the locus
cos(tau) = +- tanh(rho), equivalently u^2 = x^2 in embedding coordinates.

Light rays are left translations l_g^k(s) = exp(-s Ad(k) E) g with
k = exp(k_angle T).  The hit condition along a ray through the rotated
point Ad(exp(-beta/2 T))H reduces to the quadratic

    1/4 s^2 (cos b - cos(b + 4 th)) + s sin b + 2 sin^2(b/2) = 0,

whose constant term is written here with b/2: the theta = 0 root
-tan(b/2) and the root-product identity both require it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "H2",
    "E2",
    "F2",
    "T2",
    "sl2_check",
    "sl2_coords",
    "sl2_from_coords",
    "killing_sl2_matrix",
    "killing_sl2",
    "embed",
    "unembed",
    "exp_h",
    "exp_t",
    "sigma_auto",
    "twisted_action",
    "bhtz_apply",
    "xi_norm_sq",
    "global_coords_to_group",
    "equ_coefficients",
    "equ_roots",
    "interior_beta_test",
    "horizon_closed_form",
    "ad_k_e",
    "light_ray_sl2",
]

H2 = np.array([[1.0, 0.0], [0.0, -1.0]])
E2 = np.array([[0.0, 1.0], [0.0, 0.0]])
F2 = np.array([[0.0, 0.0], [1.0, 0.0]])
T2 = E2 - F2
_D2 = np.array([[1.0, 0.0], [0.0, -1.0]])   # realizes the exterior automorphism


def sl2_check(g: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    g = np.asarray(g, dtype=float)
    if g.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got {g.shape}")
    if abs(np.linalg.det(g) - 1.0) > tol:
        raise ValueError(f"determinant is {np.linalg.det(g):.12f}, not 1")
    return g


def sl2_coords(X: np.ndarray) -> tuple[float, float, float]:
    """Coefficients (z_H, z_E, z_F) of a traceless 2x2 matrix."""
    return float(X[0, 0]), float(X[0, 1]), float(X[1, 0])


def sl2_from_coords(zh: float, ze: float, zf: float) -> np.ndarray:
    return zh * H2 + ze * E2 + zf * F2


@lru_cache(maxsize=1)
def killing_sl2_matrix() -> np.ndarray:
    """Killing form of sl2 in the basis {H, E, F} from the adjoint
    representation, exact integer arithmetic."""
    basis = (H2, E2, F2)
    ads = np.empty((3, 3, 3), dtype=np.int64)
    for a, A in enumerate(basis):
        for b, B in enumerate(basis):
            C = A @ B - B @ A
            ads[a, :, b] = np.round(sl2_coords(C)).astype(np.int64)
    return np.einsum("aij,bji->ab", ads, ads)


def killing_sl2(X: np.ndarray, Y: np.ndarray) -> float:
    cx = np.array(sl2_coords(X))
    cy = np.array(sl2_coords(Y))
    return float(cx @ killing_sl2_matrix() @ cy)


# ---------------------------------------------------------------------------
# Embedding
# ---------------------------------------------------------------------------

def embed(u: float, t: float, x: float, y: float, tol: float = 1e-8) -> np.ndarray:
    """Hyperboloid point -> SL2 element [[u+x, y+t], [y-t, u-x]]."""
    r = u * u + t * t - x * x - y * y - 1.0
    if abs(r) > tol:
        raise ValueError(f"(u,t,x,y) is off the hyperboloid (residual {r:.3e})")
    return np.array([[u + x, y + t], [y - t, u - x]])


def unembed(g: np.ndarray) -> np.ndarray:
    """SL2 element -> (u, t, x, y)."""
    g = sl2_check(g, tol=1e-8)
    u = 0.5 * (g[0, 0] + g[1, 1])
    x = 0.5 * (g[0, 0] - g[1, 1])
    t = 0.5 * (g[0, 1] - g[1, 0])
    y = 0.5 * (g[0, 1] + g[1, 0])
    return np.array([u, t, x, y])


def exp_h(c: float) -> np.ndarray:
    return np.array([[np.exp(c), 0.0], [0.0, np.exp(-c)]])


def exp_t(phi: float) -> np.ndarray:
    return np.array([[np.cos(phi), np.sin(phi)], [-np.sin(phi), np.cos(phi)]])


# ---------------------------------------------------------------------------
# BHTZ identification and twisted coordinates
# ---------------------------------------------------------------------------

def sigma_auto(g: np.ndarray) -> np.ndarray:
    """Exterior automorphism fixing A pointwise: sigma(g) = d g d with
    d = diag(1,-1) (on the algebra H -> H, E -> -E, F -> -F, T -> -T)."""
    return _D2 @ g @ _D2


def twisted_action(g: np.ndarray, z: np.ndarray) -> np.ndarray:
    """tau_g(z) = g z sigma(g^{-1})."""
    return g @ z @ sigma_auto(np.linalg.inv(g))


def bhtz_apply(a: float, s: float, g: np.ndarray) -> np.ndarray:
    """Identification flow psi_s(g) = exp(s a H) g exp(-s a H); integer s
    realizes the quotient action."""
    return exp_h(s * a) @ g @ exp_h(-s * a)


def xi_norm_sq(a: float, g: np.ndarray) -> float:
    """Killing-norm squared of the identification vector at g; equals
    32 a^2 (t^2 - y^2) and is positive exactly on the safe region."""
    g = sl2_check(g, tol=1e-8)
    ginv = np.array([[g[1, 1], -g[0, 1]], [-g[1, 0], g[0, 0]]])
    ad_g_h = g @ H2 @ ginv
    return 2.0 * a * a * (killing_sl2(H2, H2) - killing_sl2(H2, ad_g_h))


def global_coords_to_group(rho: float, theta: float, tau: float) -> np.ndarray:
    """Safe-region chart z(rho, theta, tau); requires tau in (0, pi)."""
    if not 0.0 < tau < np.pi:
        raise ValueError(f"tau must lie in (0, pi), got {tau}")
    return twisted_action(exp_h(0.5 * theta) @ exp_t(-0.5 * tau), exp_h(rho))


# ---------------------------------------------------------------------------
# Interior condition along rotated points (appendix quadratic)
# ---------------------------------------------------------------------------

def equ_coefficients(beta: float, theta_dir: float) -> tuple[float, float, float]:
    """(a, b, c) of the hit-condition quadratic a s^2 + b s + c."""
    a = 0.25 * (np.cos(beta) - np.cos(beta + 4.0 * theta_dir))
    b = np.sin(beta)
    c = 2.0 * np.sin(0.5 * beta) ** 2
    return float(a), float(b), float(c)


def equ_roots(beta: float, theta_dir: float) -> tuple:
    """Real roots of the hit quadratic; degenerate leading coefficients
    (< 1e-14) are handled as a linear equation."""
    a, b, c = equ_coefficients(beta, theta_dir)
    if abs(a) < 1e-14:
        if abs(b) < 1e-14:
            return ()
        return (-c / b,)
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        return ()
    sq = np.sqrt(disc)
    return tuple(sorted(((-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a))))


def interior_beta_test(beta: float, grid: int = 200) -> bool:
    """True iff every direction theta in [0, pi] yields a positive root;
    matches beta in (pi, 2 pi)."""
    if not 0.0 < beta < 2.0 * np.pi:
        raise ValueError(f"beta must lie in (0, 2 pi), got {beta}")
    for theta in np.linspace(0.0, np.pi, grid):
        if not any(r > 0.0 for r in equ_roots(beta, theta)):
            return False
    return True


def horizon_closed_form(rho: float, branch: int = +1) -> float:
    """Horizon time tau = arccos(branch * tanh(rho)), in (0, pi).

    The resulting (rho, tau) point satisfies u^2 = x^2 in embedding
    coordinates for every theta.
    """
    if branch not in (+1, -1):
        raise ValueError("branch must be +1 or -1")
    return float(np.arccos(branch * np.tanh(rho)))


# ---------------------------------------------------------------------------
# Light rays
# ---------------------------------------------------------------------------

def ad_k_e(k_angle: float) -> np.ndarray:
    """Ad(exp(k_angle T)) E, a nilpotent direction generator."""
    k = exp_t(k_angle)
    return k @ E2 @ exp_t(-k_angle)


def light_ray_sl2(g: np.ndarray, k_angle: float, s: float) -> np.ndarray:
    """Left-translated null ray l_g^k(s) = exp(-s Ad(k)E) g; the
    exponential of the nilpotent generator is I - s Ad(k)E exactly."""
    g = sl2_check(g, tol=1e-8)
    ake = ad_k_e(k_angle)
    return (np.eye(2) - s * ake) @ g
