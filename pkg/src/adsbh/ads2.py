"""Adjoint-orbit model of AdS_2 and the no-black-hole result.

AdS_2 is the adjoint orbit Ad(G)H in sl2(R), the level set
B(x, x) = 8 (x_H^2 + x_E x_F) = 8 of the Killing form.  Closed AN-orbits
are the lines +-H + lambda E (x_F = 0) and closed ANbar-orbits the lines
+-H + lambda F (x_E = 0); together they bound the physical chart
x_E > 0, x_F > 0, parameterized by

    physical_point(a, beta) = (cos b, e^{2a} sin b, e^{-2a} sin b).

Light "cones" at a point are two straight lines; every such line meets a
singular line of the +H family and one of the -H family, so no point
connects to infinity: the construction yields no horizon in two dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .btz_sl2 import H2, E2, F2, T2, exp_h, exp_t, killing_sl2_matrix, sl2_coords

__all__ = [
    "ORBIT_TOL",
    "orbit_norm",
    "check_orbit_point",
    "ads2_closed_orbit",
    "physical_point",
    "physical_point_inverse",
    "adjoint_point_oracle",
    "ads2_light_line",
    "light_line_oracle",
    "singular_line_hits",
    "NoHorizonReport",
    "ads2_no_horizon",
]

ORBIT_TOL = 1e-10


def orbit_norm(x) -> float:
    """Killing norm 8 (x_H^2 + x_E x_F); equals 8 on the orbit."""
    xh, xe, xf = x
    return 8.0 * (xh * xh + xe * xf)


def check_orbit_point(x, tol: float = ORBIT_TOL) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (3,):
        raise ValueError(f"expected (x_H, x_E, x_F), got shape {x.shape}")
    r = abs(orbit_norm(x) - 8.0)
    if r > tol:
        raise ValueError(f"point is off the adjoint orbit (residual {r:.3e})")
    return x


def _wedge_coeffs(v, w) -> np.ndarray:
    """Components of v ^ w in the bivector basis (H^E, H^F, E^F)."""
    return np.array([
        v[0] * w[1] - v[1] * w[0],
        v[0] * w[2] - v[2] * w[0],
        v[1] * w[2] - v[2] * w[1],
    ])


def wedge_residual(x, which: str) -> float:
    """Max component of the wedge of the subgroup's fundamental fields
    ([E,x] ^ [H,x] for AN, [H,x] ^ [F,x] for ANbar); zero on closed orbits."""
    x = check_orbit_point(x)
    xh, xe, xf = x
    if which == "an":
        # [E, x] = xf H - 2 xh E ; [H, x] = 2 xe E - 2 xf F
        wedge = _wedge_coeffs((xf, -2.0 * xh, 0.0), (0.0, 2.0 * xe, -2.0 * xf))
    elif which == "anbar":
        # [F, x] = -xe H + 2 xh F
        wedge = _wedge_coeffs((0.0, 2.0 * xe, -2.0 * xf), (-xe, 0.0, 2.0 * xh))
    else:
        raise ValueError(f"which must be 'an' or 'anbar', got {which!r}")
    return float(np.max(np.abs(wedge)))


def ads2_closed_orbit(x, which: str, tol: float = 1e-9) -> bool:
    """True on closed orbits: x_F = 0 for AN, x_E = 0 for ANbar."""
    x = check_orbit_point(x)
    if which == "an":
        return abs(x[2]) < tol
    if which == "anbar":
        return abs(x[1]) < tol
    raise ValueError(f"which must be 'an' or 'anbar', got {which!r}")


def physical_point(a: float, beta: float) -> np.ndarray:
    """Chart point (cos b, e^{2a} sin b, e^{-2a} sin b), beta in (0, pi)."""
    if not 0.0 < beta < np.pi:
        raise ValueError(f"beta must lie in (0, pi), got {beta}")
    sb = np.sin(beta)
    return np.array([np.cos(beta), np.exp(2.0 * a) * sb, np.exp(-2.0 * a) * sb])


def physical_point_inverse(x) -> tuple[float, float]:
    """Recover (a, beta) from a physical point (x_E > 0, x_F > 0)."""
    x = check_orbit_point(x)
    xh, xe, xf = x
    if xe <= 0.0 or xf <= 0.0:
        raise ValueError("not in the physical chart (needs x_E > 0, x_F > 0)")
    beta = float(np.arctan2(np.sqrt(xe * xf), xh))
    a = 0.25 * float(np.log(xe / xf))
    return a, beta


def _ad(g: np.ndarray, X: np.ndarray) -> np.ndarray:
    return g @ X @ np.linalg.inv(g)


def adjoint_point_oracle(a: float, beta: float) -> np.ndarray:
    """physical_point computed by matrix conjugation Ad(exp(aH) k)H with the
    rotation k chosen so that Ad(k)H = cos b H + sin b (E + F)."""
    g = exp_h(a) @ exp_t(-0.5 * beta)
    return np.array(sl2_coords(_ad(g, H2)))


def ads2_light_line(a: float, k_angle: float, branch: str, s: float) -> np.ndarray:
    """Affine light line through Ad(a k)H, coefficients in (H, E, F).

    branch 'E':  (cos 2k - s sin 2k,
                  -e^{2a} (sin 2k + 2 s cos^2 k),
                  -e^{-2a}(sin 2k - 2 s sin^2 k))
    branch 'F' swaps the E/F slope pattern.
    """
    c2k, s2k = np.cos(2.0 * k_angle), np.sin(2.0 * k_angle)
    ck2, sk2 = np.cos(k_angle) ** 2, np.sin(k_angle) ** 2
    h = c2k - s * s2k
    if branch == "E":
        e = -np.exp(2.0 * a) * (s2k + 2.0 * s * ck2)
        f = -np.exp(-2.0 * a) * (s2k - 2.0 * s * sk2)
    elif branch == "F":
        e = -np.exp(2.0 * a) * (s2k - 2.0 * s * sk2)
        f = -np.exp(-2.0 * a) * (s2k + 2.0 * s * ck2)
    else:
        raise ValueError(f"branch must be 'E' or 'F', got {branch!r}")
    return np.array([h, e, f])


def light_line_oracle(a: float, k_angle: float, branch: str, s: float) -> np.ndarray:
    """Same line by conjugation: Ad(exp(aH) exp(kT) exp(+-s E/F)) H."""
    if branch == "E":
        nil = np.eye(2) + s * E2
    elif branch == "F":
        nil = np.eye(2) - s * F2
    else:
        raise ValueError(f"branch must be 'E' or 'F', got {branch!r}")
    g = exp_h(a) @ exp_t(k_angle) @ nil
    return np.array(sl2_coords(_ad(g, H2)))


def singular_line_hits(x0: np.ndarray, slope: np.ndarray) -> list:
    """Intersections of the affine line x0 + s * slope with the four singular
    lines +-H + lambda E and +-H + lambda F.

    Returns entries (family, h_sign, s, lambda); 'family' is 'E' when the
    line lands on +-H + lambda E (solving x_F(s) = 0; x_H(s) = +-1 is then
    automatic on the orbit quadric) and 'F' for x_E(s) = 0.  Parallel
    non-intersecting configurations produce no entry for that family.
    """
    hits = []
    for family, idx, lam_idx in (("E", 2, 1), ("F", 1, 2)):
        if abs(slope[idx]) < 1e-14:
            continue
        s = -x0[idx] / slope[idx]
        pt = x0 + s * slope
        h_sign = int(np.sign(pt[0])) if abs(abs(pt[0]) - 1.0) < 1e-8 else 0
        hits.append((family, h_sign, float(s), float(pt[lam_idx])))
    return hits


@dataclass
class NoHorizonReport:
    samples: int
    escapes: int
    status: str
    witnesses: list = field(default_factory=list)


def ads2_no_horizon(sample_count: int, seed: int) -> NoHorizonReport:
    """Check that every light line from sampled physical points meets a
    +H-family and a -H-family singular line; escapes are falsifications."""
    if sample_count < 1:
        raise ValueError("sample_count must be >= 1")
    rng = np.random.default_rng(seed)
    escapes = 0
    witnesses = []
    for _ in range(sample_count):
        a = float(rng.uniform(-2.0, 2.0))
        beta = float(rng.uniform(1e-3, np.pi - 1e-3))
        k_angle = -0.5 * beta     # line passes through physical_point(a, beta) at s = 0
        x0 = physical_point(a, beta)
        for branch in ("E", "F"):
            slope = ads2_light_line(a, k_angle, branch, 1.0) - x0
            hits = singular_line_hits(x0, slope)
            signs = {h_sign for (_, h_sign, _, _) in hits}
            if not {+1, -1} <= signs:
                escapes += 1
                witnesses.append({"a": a, "beta": beta, "branch": branch,
                                  "point": x0.tolist(), "hits": hits})
    status = "ok" if escapes == 0 else "falsified"
    return NoHorizonReport(samples=sample_count, escapes=escapes, status=status,
                           witnesses=witnesses)
