# lsl/matrices.py
"""
Dense complex linear algebra on small matrices: validated hermitian/unitary inputs,
Cayley transforms, eigendecomposition of unitaries, spectral maps, projectors and the
two-sided action (U+, U-) * S = U- S U+^*.

Matrices are plain complex numpy arrays; the validators return a cleaned copy.
"""
import logging
from typing import Callable, List, Optional, Tuple

import numpy as np
import scipy.linalg
from scipy.stats import unitary_group

from lsl.config import Tolerances, resolve_tolerances
from lsl.errors import CayleyPoleError, InputValidationError

logger = logging.getLogger(__name__)

# hermitian inputs within this multiple of tol_herm are symmetrised
_HERM_REPAIR_FACTOR = 10.0

PhaseMap = Callable[[complex], complex]


def as_matrix(M, rows: Optional[int] = None, cols: Optional[int] = None) -> np.ndarray:
    """Complex 2-d array with finite entries and (optionally) a required shape."""
    arr = np.array(M, dtype=complex)
    if arr.ndim != 2:
        raise InputValidationError(f"expected a matrix, got array of shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InputValidationError("matrix has non-finite entries")
    if rows is not None and arr.shape[0] != rows or cols is not None and arr.shape[1] != cols:
        raise InputValidationError(f"expected shape ({rows}, {cols}), got {arr.shape}")
    return arr


def hermitian_residual(M: np.ndarray) -> float:
    return float(np.max(np.abs(M - M.conj().T), initial=0.0))


def unitary_residual(S: np.ndarray) -> float:
    return float(np.max(np.abs(S.conj().T @ S - np.eye(S.shape[0])), initial=0.0))


def is_hermitian(M, tol: Optional[Tolerances] = None) -> bool:
    tol = resolve_tolerances(tol)
    arr = np.asarray(M, dtype=complex)
    return arr.ndim == 2 and arr.shape[0] == arr.shape[1] and hermitian_residual(arr) <= tol.herm


def is_unitary(S, tol: Optional[Tolerances] = None) -> bool:
    tol = resolve_tolerances(tol)
    arr = np.asarray(S, dtype=complex)
    return arr.ndim == 2 and arr.shape[0] == arr.shape[1] and unitary_residual(arr) <= tol.unit


def hermitian(M, tol: Optional[Tolerances] = None) -> np.ndarray:
    """Validated hermitian matrix; near-hermitian input is symmetrised as (M + M*)/2."""
    tol = resolve_tolerances(tol)
    arr = as_matrix(M)
    if arr.shape[0] != arr.shape[1]:
        raise InputValidationError(f"hermitian matrix must be square, got {arr.shape}")
    residual = hermitian_residual(arr)
    if residual > _HERM_REPAIR_FACTOR * tol.herm:
        raise InputValidationError(f"matrix is not hermitian (residual {residual:.3e})")
    if residual > 0:
        arr = (arr + arr.conj().T) / 2
    return arr


def unitary(S, tol: Optional[Tolerances] = None) -> np.ndarray:
    """Validated unitary matrix."""
    tol = resolve_tolerances(tol)
    arr = as_matrix(S)
    if arr.shape[0] != arr.shape[1]:
        raise InputValidationError(f"unitary matrix must be square, got {arr.shape}")
    residual = unitary_residual(arr)
    if residual > tol.unit:
        raise InputValidationError(f"matrix is not unitary (residual {residual:.3e})")
    return arr


def singular_values(M: np.ndarray) -> np.ndarray:
    if M.size == 0:
        return np.zeros(0)
    return scipy.linalg.svdvals(M)


def numerical_rank(M: np.ndarray, tol_rank: float, scale: Optional[float] = None) -> int:
    """Count singular values above tol_rank * scale (scale defaults to the largest one)."""
    sv = singular_values(M)
    if sv.size == 0:
        return 0
    reference = sv[0] if scale is None else scale
    if reference <= 0:
        return 0
    return int(np.sum(sv > tol_rank * reference))


def nearest_unitary(M: np.ndarray) -> np.ndarray:
    u, _ = scipy.linalg.polar(M)
    return u


def cayley(A, tol: Optional[Tolerances] = None) -> np.ndarray:
    """S = (1 - iA)(1 + iA)^{-1}."""
    A = hermitian(A, tol)
    eye = np.eye(A.shape[0])
    # the two factors commute
    return scipy.linalg.solve(eye + 1j * A, eye - 1j * A)


def inverse_cayley(S, tol: Optional[Tolerances] = None) -> np.ndarray:
    """A = -i(1 - S)(1 + S)^{-1}; raises CayleyPoleError when -1 is an eigenvalue."""
    tol = resolve_tolerances(tol)
    S = as_matrix(S)
    eye = np.eye(S.shape[0])
    plus = eye + S
    sv = singular_values(plus)
    if sv[-1] <= tol.rank:
        raise CayleyPoleError()
    A = -1j * scipy.linalg.solve(plus, eye - S)
    return (A + A.conj().T) / 2


def _normalise_phases(phases: np.ndarray) -> np.ndarray:
    return np.where(phases <= -np.pi, phases + 2 * np.pi, phases)


def unitary_eig(S, tol: Optional[Tolerances] = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigenphases in (-π, π], ascending, with a unitary eigenframe.

    Uses the complex Schur form; for a normal matrix the triangular factor is diagonal
    up to rounding, and the Schur vectors span each eigenspace.
    """
    tol = resolve_tolerances(tol)
    S = as_matrix(S)
    triangular, frame = scipy.linalg.schur(S, output="complex")
    phases = _normalise_phases(np.angle(np.diag(triangular)))
    order = np.argsort(phases, kind="stable")
    phases = phases[order]
    frame = frame[:, order]
    # re-orthonormalise degenerate clusters
    for cluster in eigen_clusters(phases, tol.phase):
        if len(cluster) > 1:
            q, _ = np.linalg.qr(frame[:, cluster])
            frame[:, cluster] = q
    return phases, frame


def _circular_gap(a: float, b: float) -> float:
    d = abs(a - b) % (2 * np.pi)
    return min(d, 2 * np.pi - d)


def eigen_clusters(phases: np.ndarray, gap: float) -> List[List[int]]:
    """Group sorted phases whose circular neighbours are closer than gap."""
    if len(phases) == 0:
        return []
    clusters = [[0]]
    for k in range(1, len(phases)):
        if phases[k] - phases[k - 1] < gap:
            clusters[-1].append(k)
        else:
            clusters.append([k])
    # wrap-around between the last and first phase
    if len(clusters) > 1 and _circular_gap(phases[-1], phases[0]) < gap:
        clusters[0] = clusters.pop() + clusters[0]
    return clusters


def spectral_map(S, xi: PhaseMap, tol: Optional[Tolerances] = None) -> np.ndarray:
    """Ξ(S) = frame · diag(ξ(λ_k)) · frame*, with ξ applied once per eigenvalue cluster."""
    tol = resolve_tolerances(tol)
    phases, frame = unitary_eig(S, tol)
    n = len(phases)
    out = np.zeros((n, n), dtype=complex)
    for cluster in eigen_clusters(phases, tol.phase):
        centre = np.mean(np.exp(1j * phases[cluster]))
        value = complex(xi(centre / abs(centre)))
        basis = frame[:, cluster]
        out += value * (basis @ basis.conj().T)
    return out


def projector_of_unitary(S) -> np.ndarray:
    """Orthogonal projector of Ê = E ⊕ E onto the lagrangian L_S."""
    S = as_matrix(S)
    n = S.shape[0]
    eye = np.eye(n)
    sym = (S + S.conj().T) / 2
    skew = 0.5j * (S - S.conj().T)
    return 0.5 * np.block([[eye + sym, skew], [skew, eye - sym]])


def act(u_plus, u_minus, S) -> np.ndarray:
    """(U+, U-) * S = U- S U+^*."""
    u_plus, u_minus, S = as_matrix(u_plus), as_matrix(u_minus), as_matrix(S)
    if not u_plus.shape == u_minus.shape == S.shape:
        raise InputValidationError(
            f"size mismatch: {u_plus.shape}, {u_minus.shape}, {S.shape}"
        )
    return u_minus @ S @ u_plus.conj().T


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary."""
    if n == 1:
        return np.exp(1j * rng.uniform(-np.pi, np.pi, size=(1, 1)))
    return unitary_group.rvs(n, random_state=rng)


def random_hermitian(n: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    h = (z + z.conj().T) / 2
    norm = np.linalg.norm(h, 2)
    return h * (scale / norm) if norm > 0 else h
