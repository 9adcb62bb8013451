# lsl/morse.py
import logging
from collections import Counter
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg
from pydantic import BaseModel, ConfigDict, Field, field_validator

from lsl.combinatorics import SubsetIndex, all_subsets, weight
from lsl.config import Tolerances, settings
from lsl.errors import FlowHorizonError, InputValidationError
from lsl.lagrangian import (
    chart_order,
    critical_lagrangian,
    frame,
    frame_from_unitary,
    orthonormal,
    subspace_distance,
)
from lsl.matrices import as_matrix, hermitian, unitary

logger = logging.getLogger(__name__)


class FlowSpec(BaseModel):
    """Eigenvalues 0 < α_1 < ... < α_n of the operator A driving the flow."""

    model_config = ConfigDict(frozen=True)

    alpha: Tuple[float, ...] = Field(..., min_length=1)

    @field_validator("alpha", mode="after")
    def check_increasing(cls, v):
        if v[0] <= 0:
            raise ValueError(f"flow eigenvalues must be positive, got {v}")
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError(f"flow eigenvalues must be strictly increasing, got {v}")
        return v

    @classmethod
    def default(cls, n: int) -> "FlowSpec":
        """Self-indexing choice α_i = (2i - 1)/2."""
        return cls(alpha=tuple((2 * i - 1) / 2 for i in range(1, n + 1)))

    @classmethod
    def parse(cls, text: Optional[str], n: int) -> "FlowSpec":
        """'default' (or empty) or a comma list of n increasing positive reals."""
        if text is None or text.strip().lower() in ("", "default"):
            return cls.default(n)
        try:
            alpha = tuple(float(part) for part in text.split(",") if part.strip())
        except ValueError as e:
            raise ValueError(f"Invalid flow spec {text!r}: {e}")
        if len(alpha) != n:
            raise ValueError(f"flow spec has {len(alpha)} eigenvalues, expected {n}")
        return cls(alpha=alpha)

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.alpha, dtype=float)

    @property
    def A(self) -> np.ndarray:
        return np.diag(self.vector)

    @property
    def A_hat(self) -> np.ndarray:
        return np.diag(np.concatenate([self.vector, -self.vector]))


def _check_size(spec: FlowSpec, n: int) -> None:
    if spec.n != n:
        raise InputValidationError(f"size mismatch: flow spec has n={spec.n}, matrix n={n}")


def morse_value(spec: FlowSpec, S) -> float:
    """f_A(S) = Re tr(AS)."""
    S = as_matrix(S)
    _check_size(spec, S.shape[0])
    return float(np.real(np.sum(spec.vector * np.diag(S))))


def phi_value(spec: FlowSpec, F) -> float:
    """φ_A(L) = Re tr(Â P_L)."""
    F = frame(F)
    _check_size(spec, F.shape[1])
    q = orthonormal(F)
    projector = q @ q.conj().T
    return float(np.real(np.trace(spec.A_hat @ projector)))


def critical_unitary(I: SubsetIndex) -> np.ndarray:
    return np.diag([1.0 + 0j if k in I else -1.0 + 0j for k in range(1, I.n + 1)])


def is_critical(S, spec: FlowSpec, atol: float = 1e-8) -> bool:
    """S = S*, S² = 1 and SA = AS."""
    S = as_matrix(S)
    _check_size(spec, S.shape[0])
    eye = np.eye(S.shape[0])
    A = spec.A
    return (
        np.max(np.abs(S - S.conj().T)) <= atol
        and np.max(np.abs(S @ S - eye)) <= atol
        and np.max(np.abs(S @ A - A @ S)) <= atol
    )


def _signs(I: SubsetIndex) -> np.ndarray:
    return np.array([1.0 if k in I else -1.0 for k in range(1, I.n + 1)])


def hessian_form(I: SubsetIndex, spec: FlowSpec, Z) -> float:
    """
    Second derivative of t ↦ Re tr(A S_I e^{itZ}) at t = 0:
    -Σ_i ε_i α_i z_ii² - Σ_{i<j} (ε_i α_i + ε_j α_j) |z_ij|².
    """
    Z = hermitian(Z)
    _check_size(spec, Z.shape[0])
    c = _signs(I) * spec.vector
    diagonal = np.real(np.diag(Z))
    total = -np.sum(c * diagonal**2)
    n = I.n
    for i in range(n):
        for j in range(i + 1, n):
            total -= (c[i] + c[j]) * abs(Z[i, j]) ** 2
    return float(total)


def hermitian_basis(n: int) -> List[np.ndarray]:
    """Real basis of the n²-dimensional space of hermitian matrices."""
    basis = []
    for i in range(n):
        e = np.zeros((n, n), dtype=complex)
        e[i, i] = 1
        basis.append(e)
    for i in range(n):
        for j in range(i + 1, n):
            sym = np.zeros((n, n), dtype=complex)
            sym[i, j] = sym[j, i] = 1
            skew = np.zeros((n, n), dtype=complex)
            skew[i, j], skew[j, i] = 1j, -1j
            basis.extend([sym, skew])
    return basis


def hessian_matrix(I: SubsetIndex, spec: FlowSpec) -> np.ndarray:
    """Gram matrix of the Hessian form in hermitian_basis, by polarisation."""
    basis = hermitian_basis(I.n)
    size = len(basis)
    H = np.zeros((size, size))
    q = [hessian_form(I, spec, b) for b in basis]
    for a in range(size):
        H[a, a] = q[a]
        for b in range(a + 1, size):
            H[a, b] = H[b, a] = (hessian_form(I, spec, basis[a] + basis[b]) - q[a] - q[b]) / 2
    return H


def hessian_inertia(I: SubsetIndex, spec: FlowSpec) -> Tuple[int, int]:
    """(negative, positive) eigenvalue counts of the Hessian: index and coindex."""
    eig = np.linalg.eigvalsh(hessian_matrix(I, spec))
    return int(np.sum(eig < 0)), int(np.sum(eig > 0))


def morse_index(I: SubsetIndex, spec: FlowSpec) -> int:
    _check_size(spec, I.n)
    return weight(I)


def critical_points_by_index(n: int) -> List[int]:
    counts = Counter(weight(I) for I in all_subsets(n))
    return [counts.get(k, 0) for k in range(n * n + 1)]


def _check_horizon(t: float, spec: FlowSpec) -> None:
    if abs(t) > settings.overflow_guard / spec.alpha[-1]:
        raise FlowHorizonError()


def flow(S, t: float, spec: FlowSpec, tol: Optional[Tolerances] = None) -> np.ndarray:
    """Φ_t(S) = (sinh(tA) + cosh(tA) S)(cosh(tA) + sinh(tA) S)^{-1}."""
    S = unitary(S, tol)
    _check_size(spec, S.shape[0])
    _check_horizon(t, spec)
    sh = np.sinh(t * spec.vector)
    ch = np.cosh(t * spec.vector)
    numerator = np.diag(sh) + ch[:, None] * S
    denominator = np.diag(ch) + sh[:, None] * S
    return scipy.linalg.solve(denominator.T, numerator.T).T


def flow_arnold(T, t: float, I: SubsetIndex, spec: FlowSpec) -> np.ndarray:
    """
    The flow in chart-I coordinates: T ↦ e^{-tA_I} T e^{-tA_I}, A_I = diag(α on I, -α off I)
    in chart order. Entrywise scaling, so exact zeros stay zero.
    """
    T = as_matrix(T)
    _check_size(spec, T.shape[0])
    _check_horizon(t, spec)
    c = (_signs(I) * spec.vector)[chart_order(I)]
    with np.errstate(over="ignore", invalid="ignore"):
        scale = np.exp(-t * c)
        return T * np.outer(scale, scale)


def flow_vector_field(S, spec: FlowSpec) -> np.ndarray:
    """V(S) = A - S A S, the velocity of the flow at S."""
    S = as_matrix(S)
    _check_size(spec, S.shape[0])
    A = spec.A
    return A - S @ A @ S


def integrate_flow(S, t: float, spec: FlowSpec, step: float = 1e-3) -> np.ndarray:
    """Classical fourth-order Runge-Kutta for dS/dt = V(S)."""
    S = as_matrix(S)
    steps = max(1, int(round(abs(t) / step)))
    h = t / steps
    for _ in range(steps):
        k1 = flow_vector_field(S, spec)
        k2 = flow_vector_field(S + 0.5 * h * k1, spec)
        k3 = flow_vector_field(S + 0.5 * h * k2, spec)
        k4 = flow_vector_field(S + h * k3, spec)
        S = S + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
    return S


def distance_column(K: SubsetIndex) -> str:
    """CSV-safe column name: dist_1_3 for {1,3}, dist_empty for the empty set."""
    return "dist_" + ("_".join(str(i) for i in K.members) or "empty")


def trajectory(
    S,
    spec: FlowSpec,
    times: Sequence[float],
    targets: Sequence[SubsetIndex],
) -> List[Dict[str, float]]:
    """Rows of t, morse value and distance to Λ_K for each target K."""
    S = unitary(S)
    frames = {K: critical_lagrangian(K) for K in targets}
    rows = []
    for t in times:
        St = flow(S, t, spec)
        F = frame_from_unitary(St)
        row = {"t": float(t), "morse_value": morse_value(spec, St)}
        for K, target in frames.items():
            row[distance_column(K)] = subspace_distance(F, target)
        rows.append(row)
    return rows
