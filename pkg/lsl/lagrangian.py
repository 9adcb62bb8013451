# lsl/lagrangian.py
"""
Hermitian lagrangian subspaces of Ê = E ⊕ E.

A frame is a 2n×n complex matrix whose columns span L; top block X, bottom block Y.
J is the block operator [[0, -1], [1, 0]], so J e_k = f_k and J f_k = -e_k.

Chart-I coordinates index rows and columns by e_i (i ∈ I, ascending) followed by
f_j (j ∉ I, ascending). Every sign downstream depends on this ordering.
"""
import logging
from typing import List, Optional, Tuple

import numpy as np
import scipy.linalg

from lsl.combinatorics import SubsetIndex
from lsl.config import Tolerances, resolve_tolerances
from lsl.errors import CayleyPoleError, ChartError, InputValidationError
from lsl.matrices import (
    as_matrix,
    hermitian,
    inverse_cayley,
    nearest_unitary,
    singular_values,
    unitary,
    unitary_residual,
)

logger = logging.getLogger(__name__)


def j_operator(n: int) -> np.ndarray:
    zero, eye = np.zeros((n, n)), np.eye(n)
    return np.block([[zero, -eye], [eye, zero]]).astype(complex)


def orthonormal(F: np.ndarray) -> np.ndarray:
    q, _ = np.linalg.qr(F)
    return q


def lagrangian_residual(F: np.ndarray) -> float:
    """max |Q* J Q| for an orthonormalisation Q of the frame."""
    q = orthonormal(F)
    n = F.shape[1]
    return float(np.max(np.abs(q.conj().T @ j_operator(n) @ q), initial=0.0))


def frame(F, tol: Optional[Tolerances] = None) -> np.ndarray:
    """Validated lagrangian frame: shape 2n×n, rank n, F* J F = 0."""
    tol = resolve_tolerances(tol)
    F = as_matrix(F)
    rows, n = F.shape
    if rows != 2 * n:
        raise InputValidationError(f"lagrangian frame must be 2n×n, got {F.shape}")
    sv = singular_values(F)
    if sv[0] == 0 or sv[-1] <= tol.rank * sv[0]:
        raise InputValidationError(f"frame has rank below {n}")
    residual = lagrangian_residual(F)
    if residual > tol.lagrangian:
        raise InputValidationError(f"frame is not lagrangian (residual {residual:.3e})")
    return F


def frame_from_unitary(S, tol: Optional[Tolerances] = None) -> np.ndarray:
    """Columns ((1 + S) e_k, -i (1 - S) e_k)."""
    S = unitary(S, tol)
    eye = np.eye(S.shape[0])
    return np.vstack([eye + S, -1j * (eye - S)])


def unitary_from_frame(F, tol: Optional[Tolerances] = None) -> np.ndarray:
    """
    The unitary S with L_S = span(F).

    Writing L as the graph of an operator from F+ = {(x, -ix)} to F- = {(y, iy)}, the
    operator is S: x = (a + ib)/2 and y = (a - ib)/2, hence S = (X - iY)(X + iY)^{-1}.
    """
    tol = resolve_tolerances(tol)
    try:
        F = frame(F, tol)
    except InputValidationError as e:
        raise InputValidationError(f"frame is not lagrangian: {e}")
    n = F.shape[1]
    X, Y = F[:n], F[n:]
    P = X + 1j * Y
    sv = singular_values(P)
    if sv[-1] <= tol.rank * sv[0]:
        raise InputValidationError("frame is not lagrangian")
    S = scipy.linalg.solve(P.T, (X - 1j * Y).T).T
    if unitary_residual(S) > tol.unit:
        logger.debug(f"projecting graph operator to U(n), residual {unitary_residual(S):.2e}")
        S = nearest_unitary(S)
    return S


def j_map(F) -> np.ndarray:
    F = as_matrix(F)
    return j_operator(F.shape[1]) @ F


def basis_vector(n: int, k: int, vertical: bool = False) -> np.ndarray:
    """e_k (or f_k when vertical) in Ê, k counted from 1."""
    v = np.zeros(2 * n, dtype=complex)
    v[k - 1 + (n if vertical else 0)] = 1.0
    return v


def critical_lagrangian(I: SubsetIndex) -> np.ndarray:
    """Orthonormal frame of Λ_I: e_i for i ∈ I, f_j for j ∉ I, ordered by index."""
    n = I.n
    return np.column_stack([basis_vector(n, k, vertical=k not in I) for k in range(1, n + 1)])


def chart_order(I: SubsetIndex) -> List[int]:
    """Zero-based coordinate order of chart I: members ascending, then the rest ascending."""
    inside = [k - 1 for k in range(1, I.n + 1) if k in I]
    outside = [k - 1 for k in range(1, I.n + 1) if k not in I]
    return inside + outside


def chart_basis(I: SubsetIndex) -> np.ndarray:
    """Frame of Λ_I with columns in chart order."""
    return critical_lagrangian(I)[:, chart_order(I)]


def subspace_distance(F1, F2) -> float:
    """Largest principal angle between the column spans."""
    return float(np.max(scipy.linalg.subspace_angles(as_matrix(F1), as_matrix(F2))))


def same_subspace(F1, F2, tol: Optional[Tolerances] = None) -> bool:
    tol = resolve_tolerances(tol)
    return subspace_distance(F1, F2) < tol.angle


def chart_margin(F, I: SubsetIndex) -> float:
    """Smallest singular value of <Λ_I columns, orthonormalised F columns>."""
    q = orthonormal(as_matrix(F))
    return float(singular_values(chart_basis(I).conj().T @ q)[-1])


def in_chart(F, I: SubsetIndex, tol: Optional[Tolerances] = None) -> bool:
    """True iff L ∩ Λ_I^⊥ = 0."""
    tol = resolve_tolerances(tol)
    return chart_margin(F, I) > tol.rank


def _chart_diagonal(I: SubsetIndex) -> np.ndarray:
    return np.array([1.0 if k in I else 1j for k in range(1, I.n + 1)])


def unitary_arnold_coords(S, I: SubsetIndex, tol: Optional[Tolerances] = None) -> np.ndarray:
    """Arnold coordinates of L_S in chart I: inverse_cayley(D S D), D = diag(1 on I, i off I)."""
    S = as_matrix(S)
    d = _chart_diagonal(I)
    try:
        natural = inverse_cayley(d[:, None] * S * d[None, :], tol)
    except CayleyPoleError:
        raise ChartError()
    order = chart_order(I)
    return natural[np.ix_(order, order)]


def arnold_coords(F, I: SubsetIndex, tol: Optional[Tolerances] = None) -> np.ndarray:
    tol = resolve_tolerances(tol)
    F = frame(F, tol)
    if not in_chart(F, I, tol):
        raise ChartError()
    return unitary_arnold_coords(unitary_from_frame(F, tol), I, tol)


def frame_from_arnold(I: SubsetIndex, T, tol: Optional[Tolerances] = None) -> np.ndarray:
    """Columns b_k + Σ_l t_{lk} J b_l over the chart basis b (e_i for i ∈ I, f_j otherwise)."""
    T = hermitian(T, tol)
    if T.shape != (I.n, I.n):
        raise InputValidationError(f"coordinates must be {I.n}×{I.n}, got {T.shape}")
    B = chart_basis(I)
    return B + j_operator(I.n) @ B @ T


def chart_transition(T, I: SubsetIndex, J: SubsetIndex, tol: Optional[Tolerances] = None):
    """Chart-I coordinates to chart-J coordinates of the same lagrangian."""
    return arnold_coords(frame_from_arnold(I, T, tol), J, tol)


def _intersect_block(F: np.ndarray, top: bool, tol: Tolerances) -> Tuple[int, np.ndarray]:
    q = orthonormal(F)
    n = F.shape[1]
    other = q[n:] if top else q[:n]
    keep = q[:n] if top else q[n:]
    _, sv, vh = np.linalg.svd(other)
    null = vh[sv <= tol.rank].conj().T
    return null.shape[1], keep @ null


def plus_part(F, tol: Optional[Tolerances] = None) -> Tuple[int, np.ndarray]:
    """Depth dim(L ∩ Ê^+) and an orthonormal n×depth basis of it."""
    tol = resolve_tolerances(tol)
    return _intersect_block(frame(F, tol), top=True, tol=tol)


def minus_part(F, tol: Optional[Tolerances] = None) -> Tuple[int, np.ndarray]:
    """dim(L ∩ Ê^-) and an orthonormal basis (coordinates in the f block)."""
    tol = resolve_tolerances(tol)
    return _intersect_block(frame(F, tol), top=False, tol=tol)


def pair_operator(u_plus, u_minus) -> np.ndarray:
    """Unitary of Ê acting by U+ on F+ = {(x, -ix)} and by U- on F- = {(y, iy)}."""
    u_plus, u_minus = as_matrix(u_plus), as_matrix(u_minus)
    s, d = u_plus + u_minus, u_plus - u_minus
    return 0.5 * np.block([[s, 1j * d], [-1j * d, s]])


def vertical_frames(n: int) -> Tuple[np.ndarray, np.ndarray]:
    """Frames of F+ = {(x, -ix)} and F- = {(y, iy)}."""
    eye = np.eye(n)
    return np.vstack([eye, -1j * eye]), np.vstack([eye, 1j * eye])
