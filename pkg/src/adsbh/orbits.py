"""Orbit openness, fundamental fields and singular points on the hyperboloid.

Points of AdS_l are length-(l+1) arrays ``(u, t, x_1, ..., x_{l-1})`` with
``u^2 + t^2 - sum x_i^2 = 1``; we abbreviate ``x = x_1`` and ``y = x_{l-1}``
(the last coordinate).  The Iwasawa subgroup AN has Lie algebra spanned by
``{J1, J2, M, L, V_i, W_i}`` and its orbit through a point is closed exactly
on ``y - t = 0``; for the opposite subgroup (basis ``{J1, J2, N, F, X_i,
Y_i}``) the closed orbits sit on ``y + t = 0``.  Both facts are decided
numerically by the rank of the fundamental vector fields and cross-checked
against the Killing-pairing matrix ``Delta_ij = B(q_i, Ad(g^-1) N_j)``.
"""

from __future__ import annotations

import enum

import numpy as np

from . import so2n

__all__ = [
    "HYPERBOLOID_TOL",
    "SING_TOL",
    "RANK_CUTOFF",
    "SingularityClass",
    "hyperboloid_residual",
    "check_point",
    "project_to_hyperboloid",
    "random_points",
    "eta_inner",
    "eta_norm_sq",
    "fundamental_field",
    "subgroup_basis",
    "field_matrix",
    "orbit_is_open",
    "pairing_matrix",
    "classify_singularity",
    "j1_norm_sq",
]

HYPERBOLOID_TOL = 1e-10
SING_TOL = 1e-9       # default tolerance for |y -+ t|, matched to the rank cutoff
RANK_CUTOFF = 1e-9    # singular values below cutoff * sigma_max count as zero


class SingularityClass(enum.Enum):
    ON_AN = "OnAN"
    ON_ANBAR = "OnANbar"
    ON_BOTH = "OnBoth"
    GENERIC = "Generic"


def hyperboloid_residual(p: np.ndarray) -> float:
    p = np.asarray(p, dtype=float)
    return float(abs(p[0] ** 2 + p[1] ** 2 - np.sum(p[2:] ** 2) - 1.0))


def check_point(p: np.ndarray, tol: float = HYPERBOLOID_TOL) -> np.ndarray:
    """Validate the hyperboloid constraint; the tolerance scales with the
    squared coordinate magnitude (the representable precision) so that
    strongly boosted points remain usable."""
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size < 4:
        raise ValueError(f"expected a point (u, t, x_1, ..), got shape {p.shape}")
    r = hyperboloid_residual(p)
    if r > tol * max(1.0, float(np.max(p * p))):
        raise ValueError(f"point is off the hyperboloid (residual {r:.3e})")
    return p


def project_to_hyperboloid(p: np.ndarray) -> np.ndarray:
    """Radial rescaling p / sqrt(u^2 + t^2 - |x|^2); fails if that norm <= 0."""
    p = np.asarray(p, dtype=float)
    q = p[0] ** 2 + p[1] ** 2 - np.sum(p[2:] ** 2)
    if q <= 0.0:
        raise ValueError("point cannot be radially projected (u^2+t^2-|x|^2 <= 0)")
    return p / np.sqrt(q)


def random_points(l: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Sample points on the hyperboloid by radially projecting Gaussians."""
    out = np.empty((count, l + 1))
    filled = 0
    while filled < count:
        cand = rng.standard_normal((2 * (count - filled) + 8, l + 1))
        q = cand[:, 0] ** 2 + cand[:, 1] ** 2 - np.sum(cand[:, 2:] ** 2, axis=1)
        good = cand[q > 1e-9]
        good = good / np.sqrt(q[q > 1e-9])[:, None]
        take = min(count - filled, good.shape[0])
        out[filled:filled + take] = good[:take]
        filled += take
    return out


def eta_inner(v: np.ndarray, w: np.ndarray) -> float:
    """Ambient pairing -v_u w_u - v_t w_t + sum v_i w_i."""
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    return float(-v[0] * w[0] - v[1] * w[1] + np.dot(v[2:], w[2:]))


def eta_norm_sq(v: np.ndarray) -> float:
    return eta_inner(v, v)


def fundamental_field(X: np.ndarray, p: np.ndarray) -> np.ndarray:
    """Value -X p of the fundamental vector field of X at p."""
    p = np.asarray(p, dtype=float)
    if X.shape[1] != p.size:
        raise ValueError(f"dimension mismatch: {X.shape} vs point of size {p.size}")
    return -X @ p


def subgroup_basis(l: int, which: str) -> tuple:
    """Ordered basis of the Lie algebra of AN ('an') or of its theta image
    ANbar ('anbar')."""
    gs = so2n.generators(l)
    if which == "an":
        return gs.an_basis
    if which == "anbar":
        return gs.anbar_basis
    raise ValueError(f"which must be 'an' or 'anbar', got {which!r}")


def field_matrix(p: np.ndarray, which: str) -> np.ndarray:
    """Rows are the fundamental vectors of the subgroup basis at p."""
    p = np.asarray(p, dtype=float)
    basis = subgroup_basis(p.size - 1, which)
    return np.stack([-B @ p for B in basis])


def orbit_is_open(p: np.ndarray, which: str, cutoff: float = RANK_CUTOFF) -> bool:
    """True iff the fundamental vectors at p span the full l-dimensional
    tangent space (rank by SVD with a scale-free cutoff)."""
    p = check_point(p)
    sv = np.linalg.svd(field_matrix(p, which), compute_uv=False)
    rank = int(np.sum(sv > cutoff * sv[0])) if sv[0] > 0.0 else 0
    return rank == p.size - 1


def pairing_matrix(p: np.ndarray, which: str, frame: np.ndarray | None = None) -> np.ndarray:
    """Killing pairings Delta_ij = B(q_i, Ad(g^-1) N_j) for a frame g of p.

    Rows run over the Q basis (q0, q_1, .., q_n), columns over the chosen
    subgroup basis; rank(Delta) < l exactly when the orbit through p is
    closed.
    """
    p = check_point(p)
    l = p.size - 1
    if frame is None:
        from .causal import frame_completion
        frame = frame_completion(p)
    gs = so2n.generators(l)
    q_basis = (gs.q0,) + gs.q
    n_basis = subgroup_basis(l, which)
    ginv = np.linalg.inv(frame)
    gram = so2n.killing_gram(l)
    qc = np.stack([so2n.algebra_coords(qi) for qi in q_basis])
    nc = np.stack([so2n.algebra_coords(ginv @ Nj @ frame) for Nj in n_basis])
    return qc @ gram @ nc.T


def classify_singularity(p: np.ndarray, tol: float = SING_TOL) -> SingularityClass:
    """Branch test |y - t| <= tol (AN) and |y + t| <= tol (ANbar)."""
    p = check_point(p)
    on_an = abs(p[-1] - p[1]) <= tol
    on_anbar = abs(p[-1] + p[1]) <= tol
    if on_an and on_anbar:
        return SingularityClass.ON_BOTH
    if on_an:
        return SingularityClass.ON_AN
    if on_anbar:
        return SingularityClass.ON_ANBAR
    return SingularityClass.GENERIC


def j1_norm_sq(p: np.ndarray) -> float:
    """Ambient squared norm of the J1 fundamental field; equals t^2 - y^2."""
    p = check_point(p)
    gs = so2n.generators(p.size - 1)
    return eta_norm_sq(fundamental_field(gs.J1, p))
