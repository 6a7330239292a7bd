"""Concrete matrix model of the Lie algebra so(2,n) and the group SO+(2,n).

Conventions used throughout the package
---------------------------------------

Ambient coordinates on R^(2,n) are ordered ``(u, t, x_1, ..., x_n)`` with
bilinear form ``eta = diag(-1, -1, +1, ..., +1)``.  We write ``l = n + 1``
for the dimension of the hyperboloid ``u^2 + t^2 - sum x_i^2 = 1``; matrices
are ``(l+1) x (l+1)``.  Internally indices are 0-based: ``u -> 0``,
``t -> 1``, ``x_i -> 1 + i``.  The distinguished spatial coordinates are
``x = x_1`` (index 2) and ``y = x_{l-1}`` (index l, the last); the remaining
"transverse" coordinates sit at indices ``3 .. l-1``.

Algebra elements satisfy ``X^T eta + eta X = 0``:  the (u,t) block is
antisymmetric (rotation), time-space entries are symmetric (boosts), and the
spatial block is antisymmetric.

Basis ordering (fixed so structure constants are reproducible): first the
(u,t) rotation ``q0``, then the u-boosts ``q_1 .. q_n``, then the t-boosts,
then the spatial rotations ``(i, j)`` with ``2 <= i < j`` in lexicographic
order.

Named generators follow the 4x4 patterns below placed in the ambient slots
``(u, t, x, y)``; the split Cartan pair is ``A = span{J1, J2}`` with
``J1`` the (t,y)-boost and ``J2 = q_1`` the (u,x)-boost.  Root labels
``(a, b)`` are the simultaneous eigenvalues of ``ad(J1)`` and ``ad(J2)``,
which reproduces the table M -> (1,1), L -> (1,-1), N -> (-1,1),
F -> (-1,-1), W -> (1,0), V -> (0,1), Y -> (-1,0), X -> (0,-1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import scipy.linalg

__all__ = [
    "eta",
    "base_point",
    "algebra_residual",
    "check_algebra_element",
    "group_residual",
    "is_group_element",
    "check_group_element",
    "bracket",
    "generators",
    "GeneratorSet",
    "algebra_basis",
    "algebra_coords",
    "killing_gram",
    "killing",
    "cartan_theta",
    "cartan_theta_group",
    "sigma_split",
    "root_label",
    "NotARootVector",
    "mat_exp",
    "nilpotency_degree",
]

ALGEBRA_TOL = 1e-12
GROUP_TOL = 1e-10


def eta(l: int) -> np.ndarray:
    """Bilinear form diag(-1,-1,+1,...,+1) on R^(2, l-1)."""
    e = np.ones(l + 1)
    e[0] = e[1] = -1.0
    return np.diag(e)


def base_point(l: int) -> np.ndarray:
    """The coset base point (1, 0, ..., 0)."""
    v = np.zeros(l + 1)
    v[0] = 1.0
    return v


def algebra_residual(X: np.ndarray) -> float:
    """Max-entry violation of X^T eta + eta X = 0."""
    e = eta(X.shape[0] - 1)
    return float(np.max(np.abs(X.T @ e + e @ X)))


def check_algebra_element(X: np.ndarray, tol: float = ALGEBRA_TOL) -> None:
    if X.ndim != 2 or X.shape[0] != X.shape[1] or X.shape[0] < 4:
        raise ValueError(f"expected square matrix of size >= 4, got {X.shape}")
    r = algebra_residual(X)
    if r > tol:
        raise ValueError(f"not an so(2,n) element: defining-relation residual {r:.3e}")


def group_residual(g: np.ndarray) -> tuple[float, float, float]:
    """Residuals (|g^T eta g - eta|, |det g - 1|, det of the time block).

    The third entry is the determinant of the upper-left 2x2 block; it is
    positive exactly on the identity component SO+(2,n) (for eta-orthogonal
    g one has det(A)^2 = det(I + C^T C) >= 1, so its sign is a component
    invariant).
    """
    e = eta(g.shape[0] - 1)
    form = float(np.max(np.abs(g.T @ e @ g - e)))
    det = float(abs(np.linalg.det(g) - 1.0))
    time_block = float(np.linalg.det(g[:2, :2]))
    return form, det, time_block


def is_group_element(g: np.ndarray, tol: float = GROUP_TOL) -> bool:
    form, det, tb = group_residual(g)
    scale = max(1.0, float(np.max(g * g)))
    return form <= tol * scale and det <= tol * scale * scale and tb > 0.0


def check_group_element(g: np.ndarray, tol: float = GROUP_TOL) -> None:
    """Validate eta-orthogonality, unit determinant and identity-component
    membership; tolerances scale with the entry magnitude (strong boosts
    have proportionately larger representable error)."""
    form, det, tb = group_residual(g)
    scale = max(1.0, float(np.max(g * g)))
    if form > tol * scale:
        raise ValueError(f"g^T eta g != eta (residual {form:.3e})")
    if det > tol * scale * scale:
        raise ValueError(f"det g != 1 (residual {det:.3e})")
    if tb <= 0.0:
        raise ValueError("g is not in the identity component (time block reversed)")


def bracket(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Matrix commutator [X, Y] = XY - YX."""
    if X.shape != Y.shape:
        raise ValueError(f"dimension mismatch: {X.shape} vs {Y.shape}")
    return X @ Y - Y @ X


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def _boost(d: int, i: int, j: int) -> np.ndarray:
    B = np.zeros((d, d))
    B[i, j] = B[j, i] = 1.0
    return B


def _rot(d: int, i: int, j: int) -> np.ndarray:
    R = np.zeros((d, d))
    R[i, j] = 1.0
    R[j, i] = -1.0
    return R


# 4x4 patterns in the slots (u, t, x, y); M spans the root space (1,1),
# L (1,-1), N (-1,1), F (-1,-1).
_PAT_M = np.array([[0, 1, 0, -1], [-1, 0, 1, 0], [0, 1, 0, -1], [-1, 0, 1, 0]], dtype=float)
_PAT_L = np.array([[0, 1, 0, -1], [-1, 0, -1, 0], [0, -1, 0, 1], [-1, 0, -1, 0]], dtype=float)
_PAT_N = np.array([[0, 1, 0, 1], [-1, 0, 1, 0], [0, 1, 0, 1], [1, 0, -1, 0]], dtype=float)
_PAT_F = np.array([[0, 1, 0, 1], [-1, 0, -1, 0], [0, -1, 0, -1], [1, 0, 1, 0]], dtype=float)


def _place_pattern(pat: np.ndarray, l: int) -> np.ndarray:
    slots = (0, 1, 2, l)
    G = np.zeros((l + 1, l + 1))
    for a in range(4):
        for b in range(4):
            G[slots[a], slots[b]] = pat[a, b]
    return G


@dataclass(frozen=True)
class GeneratorSet:
    """Named generators of so(2,n) for hyperboloid dimension ``dim`` (= l)."""

    dim: int
    q0: np.ndarray                 # (u,t) rotation
    q: tuple                       # u-boosts q_1 .. q_n (q[i-1] pairs u with x_i)
    J1: np.ndarray                 # (t,y) boost, in H
    J2: np.ndarray                 # (u,x) boost = q_1, in Q
    M: np.ndarray                  # root (1,1)
    L: np.ndarray                  # root (1,-1)
    N: np.ndarray                  # root (-1,1)
    F: np.ndarray                  # root (-1,-1)
    W: tuple                       # root (1,0), one per transverse coordinate
    Y: tuple                       # root (-1,0)
    V: tuple                       # root (0,1)
    X: tuple                       # root (0,-1)
    E: np.ndarray                  # nilpotent null generator, = direction w = e_1
    K0: np.ndarray = field(default=None)  # compact (u,t) rotation (= q0), K-circle flow

    @property
    def n_family(self) -> tuple:
        """Basis of the positive nilpotent part N = {M, L, V_i, W_i}."""
        return (self.M, self.L) + self.V + self.W

    @property
    def nbar_family(self) -> tuple:
        """Basis of the opposite nilpotent part theta(N) = {N, F, X_i, Y_i}."""
        return (self.N, self.F) + self.X + self.Y

    @property
    def an_basis(self) -> tuple:
        return (self.J1, self.J2) + self.n_family

    @property
    def anbar_basis(self) -> tuple:
        return (self.J1, self.J2) + self.nbar_family


@lru_cache(maxsize=None)
def generators(l: int) -> GeneratorSet:
    """All named generators for so(2, l-1); index ranges adapt to l.

    For l = 3 there are no transverse coordinates and the W/Y/V/X families
    are empty.
    """
    if l < 2:
        raise ValueError(f"dimension must be >= 2, got l={l}")
    n = l - 1
    d = l + 1
    q0 = _rot(d, 0, 1)
    q = tuple(_boost(d, 0, 1 + i) for i in range(1, n + 1))
    J2 = q[0]
    J1 = _boost(d, 1, l)
    if l == 2:
        # Degenerate case: only the 3x3 algebra so(2,1); the 4x4 root
        # patterns do not exist.  Only q0/q/J1/J2 are meaningful.
        empty = ()
        M = L = N = F = np.zeros((d, d))
        W = Y = V = X = empty
    else:
        M = _place_pattern(_PAT_M, l)
        L = _place_pattern(_PAT_L, l)
        N = _place_pattern(_PAT_N, l)
        F = _place_pattern(_PAT_F, l)
        W, Y, V, X = [], [], [], []
        for a in range(3, l):          # ambient transverse indices
            Wa = np.zeros((d, d))
            Wa[1, a] = Wa[a, 1] = 1.0
            Wa[l, a] = 1.0
            Wa[a, l] = -1.0
            Ya = np.zeros((d, d))
            Ya[1, a] = Ya[a, 1] = -1.0
            Ya[l, a] = 1.0
            Ya[a, l] = -1.0
            Va = np.zeros((d, d))
            Va[0, a] = Va[a, 0] = 1.0
            Va[2, a] = 1.0
            Va[a, 2] = -1.0
            Xa = np.zeros((d, d))
            Xa[0, a] = Xa[a, 0] = -1.0
            Xa[2, a] = 1.0
            Xa[a, 2] = -1.0
            W.append(Wa)
            Y.append(Ya)
            V.append(Va)
            X.append(Xa)
        W, Y, V, X = tuple(W), tuple(Y), tuple(V), tuple(X)
    E = q0 + q[0]
    gs = GeneratorSet(dim=l, q0=q0, q=q, J1=J1, J2=J2, M=M, L=L, N=N, F=F,
                      W=W, Y=Y, V=V, X=X, E=E, K0=q0)
    return gs


# ---------------------------------------------------------------------------
# Basis, coordinates and the Killing form
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def algebra_basis(l: int) -> tuple:
    """Ordered basis of so(2, l-1): q0, u-boosts, t-boosts, spatial rotations."""
    d = l + 1
    basis = [_rot(d, 0, 1)]
    basis += [_boost(d, 0, j) for j in range(2, d)]
    basis += [_boost(d, 1, j) for j in range(2, d)]
    basis += [_rot(d, i, j) for i in range(2, d) for j in range(i + 1, d)]
    return tuple(basis)


@lru_cache(maxsize=None)
def _basis_index_pairs(l: int) -> tuple:
    d = l + 1
    pairs = [(0, 1)]
    pairs += [(0, j) for j in range(2, d)]
    pairs += [(1, j) for j in range(2, d)]
    pairs += [(i, j) for i in range(2, d) for j in range(i + 1, d)]
    return tuple(pairs)


def algebra_coords(X: np.ndarray) -> np.ndarray:
    """Coordinates of X in the fixed basis (each basis element owns one
    strict-upper-triangle entry, so coordinates are read off directly)."""
    l = X.shape[0] - 1
    pairs = _basis_index_pairs(l)
    return np.array([X[i, j] for (i, j) in pairs])


@lru_cache(maxsize=None)
def killing_gram(l: int) -> np.ndarray:
    """Gram matrix of the Killing form B(X,Y) = tr(ad X o ad Y) on the fixed
    basis, computed from the true adjoint representation with integer
    structure constants."""
    basis = algebra_basis(l)
    dim = len(basis)
    ads = np.empty((dim, dim, dim))
    for a, Ea in enumerate(basis):
        for b, Eb in enumerate(basis):
            ads[a, :, b] = algebra_coords(bracket(Ea, Eb))
    gram = np.einsum("aij,bji->ab", ads, ads)
    return np.round(gram)   # exact integers for this basis


def killing(X: np.ndarray, Y: np.ndarray) -> float:
    """Killing form of so(2,n) via the adjoint representation."""
    if X.shape != Y.shape:
        raise ValueError(f"dimension mismatch: {X.shape} vs {Y.shape}")
    l = X.shape[0] - 1
    return float(algebra_coords(X) @ killing_gram(l) @ algebra_coords(Y))


# ---------------------------------------------------------------------------
# Involutions
# ---------------------------------------------------------------------------

def cartan_theta(X: np.ndarray) -> np.ndarray:
    """Cartan involution theta(X) = -X^T."""
    return -X.T


def cartan_theta_group(g: np.ndarray) -> np.ndarray:
    """Group-level Cartan involution theta(g) = (g^T)^{-1} = eta g eta."""
    e = eta(g.shape[0] - 1)
    return e @ g @ e


def sigma_split(X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split X = h + q for sigma = id on H, -id on Q.

    H = so(1,n) (zero first row and column), Q = first row/column only.
    """
    h = X.copy()
    h[0, :] = 0.0
    h[:, 0] = 0.0
    return h, X - h


# ---------------------------------------------------------------------------
# Root labels
# ---------------------------------------------------------------------------

class NotARootVector(ValueError):
    """X is not a simultaneous ad-eigenvector of the Cartan pair (J1, J2)."""


def root_label(X: np.ndarray, rel_tol: float = 1e-9) -> tuple[int, int]:
    """Label (a, b) with [J1, X] = a X and [J2, X] = b X.

    Raises NotARootVector when the relative residual exceeds ``rel_tol``.
    """
    norm = np.linalg.norm(X)
    if norm == 0.0:
        raise ValueError("root_label requires a nonzero element")
    l = X.shape[0] - 1
    gs = generators(l)
    label = []
    for A in (gs.J1, gs.J2):
        C = bracket(A, X)
        lam = float(np.tensordot(C, X) / norm**2)
        if np.linalg.norm(C - lam * X) > rel_tol * max(norm, np.linalg.norm(C)):
            raise NotARootVector("not a simultaneous eigenvector of ad(J1), ad(J2)")
        lam_int = int(round(lam))
        if abs(lam - lam_int) > rel_tol or lam_int not in (-1, 0, 1):
            raise NotARootVector(f"eigenvalue {lam} is not in {{-1, 0, 1}}")
        label.append(lam_int)
    return tuple(label)


# ---------------------------------------------------------------------------
# Matrix exponential
# ---------------------------------------------------------------------------

def nilpotency_degree(X: np.ndarray, tol: float = 1e-13) -> int | None:
    """Smallest d with X^d = 0, or None if X is not nilpotent.

    Integer matrices are checked exactly; otherwise powers are compared to
    ``tol`` times the running entry scale.
    """
    d_max = X.shape[0]
    if bool(np.all(X == np.round(X))):
        Xi = np.round(X).astype(np.int64)
        P = Xi
        for d in range(1, d_max + 1):
            if not P.any():
                return d
            P = P @ Xi
        return None
    scale = max(1.0, float(np.max(np.abs(X))))
    P = X
    for d in range(1, d_max + 1):
        if np.max(np.abs(P)) <= tol * scale**d:
            return d
        P = P @ X
    return None


def mat_exp(X: np.ndarray, s: float = 1.0) -> np.ndarray:
    """exp(s X); finite sum when X is nilpotent, scaling-and-squaring otherwise."""
    d = nilpotency_degree(X)
    if d is not None:
        out = np.eye(X.shape[0])
        term = np.eye(X.shape[0])
        for k in range(1, d):
            term = term @ (s * X) / k
            out = out + term
        return out
    return scipy.linalg.expm(s * X)
