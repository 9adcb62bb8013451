# lsl/strata.py
"""
Which unstable cell W_I^- (or stable cell W_K^+) a unitary lies in, decided two ways:
algebraically from ker(1 - S) against the standard flag, and dynamically by following the
flow to its limit. Also the tunnelling search between critical points and the samplers
used to exercise both.
"""
import logging
from enum import Enum
from typing import Iterator, List, Optional

import numpy as np
import scipy.linalg

from lsl.combinatorics import SubsetIndex, all_subsets, dual_subset, order_leq
from lsl.config import Tolerances, resolve_tolerances, settings
from lsl.errors import (
    ChartError,
    InputValidationError,
    LimitNotResolvedError,
    SpectralGapError,
)
from lsl.lagrangian import (
    chart_order,
    frame_from_arnold,
    minus_part,
    plus_part,
    unitary_arnold_coords,
    unitary_from_frame,
)
from lsl.matrices import (
    as_matrix,
    numerical_rank,
    random_hermitian,
    random_unitary,
    unitary,
    unitary_eig,
)
from lsl.morse import FlowSpec, flow_arnold

logger = logging.getLogger(__name__)


class FlowDirection(str, Enum):
    BACKWARD = "backward"
    FORWARD = "forward"


def _kernel_basis(S: np.ndarray, tol: Tolerances) -> np.ndarray:
    """Orthonormal basis of ker(1 - S), with the guard band between tol.kernel and tol.phase."""
    phases, frame = unitary_eig(S, tol)
    magnitude = np.abs(phases)
    borderline = (magnitude >= tol.kernel) & (magnitude < tol.phase)
    if np.any(borderline):
        logger.debug(f"eigenphases in guard band: {magnitude[borderline]}")
        raise SpectralGapError()
    return frame[:, magnitude < tol.kernel]


def _pivots(basis: np.ndarray, tol: Tolerances) -> List[int]:
    """Jump positions of i ↦ dim(V ∩ span{e_j : j ≥ i}) for V the column span of basis."""
    n, k = basis.shape
    dims = [k - numerical_rank(basis[: i - 1], tol.rank, scale=1.0) for i in range(1, n + 2)]
    return [i for i in range(1, n + 1) if dims[i - 1] > dims[i]]


def classify_unstable(
    S,
    tol: Optional[Tolerances] = None,
    rho: complex = 1.0,
    basis=None,
) -> SubsetIndex:
    """
    The I with S ∈ W_I^-: the pivot set of ker(rho - S) against the standard flag,
    or against the flag of the orthonormal basis U when given.
    """
    tol = resolve_tolerances(tol)
    S = unitary(S, tol)
    n = S.shape[0]
    if abs(abs(rho) - 1) > tol.unit:
        raise InputValidationError(f"rho must lie on the unit circle, got {rho}")
    if basis is not None:
        U = unitary(basis, tol)
        if U.shape != S.shape:
            raise InputValidationError(f"size mismatch: basis {U.shape}, matrix {S.shape}")
        S = U.conj().T @ S @ U
    if rho != 1:
        S = np.conj(rho) * S
    return SubsetIndex.of(n, _pivots(_kernel_basis(S, tol), tol))


def classify_stable(
    S,
    tol: Optional[Tolerances] = None,
    rho: complex = 1.0,
    basis=None,
) -> SubsetIndex:
    """The K with S ∈ W_K^+, via the duality S ↦ -S."""
    S = as_matrix(S)
    return dual_subset(classify_unstable(-S, tol, rho=rho, basis=basis))


def classify_unstable_frame(F, tol: Optional[Tolerances] = None) -> SubsetIndex:
    """The I with L ∈ W_I^-, read off L ∩ Ê^+ = ker(1 - S) ⊕ 0."""
    tol = resolve_tolerances(tol)
    _, basis = plus_part(F, tol)
    return SubsetIndex.of(basis.shape[0], _pivots(basis, tol))


def classify_stable_frame(F, tol: Optional[Tolerances] = None) -> SubsetIndex:
    """The K with L ∈ W_K^+: the dual of the pivot set of L ∩ Ê^- = 0 ⊕ ker(1 + S)."""
    tol = resolve_tolerances(tol)
    _, basis = minus_part(F, tol)
    return dual_subset(SubsetIndex.of(basis.shape[0], _pivots(basis, tol)))


def horizons(spec: FlowSpec, t_max: Optional[float] = None) -> List[float]:
    """Doubling horizons 1, 2, 4, ... capped by t_max and the overflow guard."""
    limit = min(
        settings.horizon_factor / spec.alpha[0],
        settings.overflow_guard / spec.alpha[-1],
    )
    if t_max is not None:
        limit = min(limit, t_max)
    out = []
    t = 1.0
    while t < limit:
        out.append(t)
        t *= 2
    out.append(limit)
    return out


def _snap(T: np.ndarray, tol: Tolerances) -> np.ndarray:
    """Zero the coordinates that sit at rounding level."""
    scale = max(1.0, float(np.max(np.abs(T), initial=0.0)))
    return np.where(np.abs(T) <= tol.kernel * scale, 0, T)


def converges_in_chart(
    K: SubsetIndex,
    T: np.ndarray,
    spec: FlowSpec,
    direction: FlowDirection,
    steps: List[float],
    tol: Tolerances,
) -> bool:
    """
    Distance to Λ_K is arctan of the spectral norm of the chart-K coordinates; convergence
    means it stays below tol.limit on two consecutive horizons.
    """
    T = _snap(T, tol)
    sign = -1.0 if direction == FlowDirection.BACKWARD else 1.0
    support = T != 0
    previous = False
    for t in steps:
        with np.errstate(over="ignore", invalid="ignore"):
            flowed = np.where(support, flow_arnold(T, sign * t, K, spec), 0)
        if np.all(np.isfinite(flowed)):
            close = np.arctan(np.linalg.norm(flowed, 2)) < tol.limit
        else:
            close = False
        if close and previous:
            return True
        previous = close
    return False


def flow_limit(
    S,
    spec: Optional[FlowSpec] = None,
    direction: FlowDirection = FlowDirection.BACKWARD,
    tol: Optional[Tolerances] = None,
    t_max: Optional[float] = None,
) -> SubsetIndex:
    """The K with Λ_K = lim e^{±tÂ} L_S, followed chart by chart."""
    tol = resolve_tolerances(tol)
    S = unitary(S, tol)
    n = S.shape[0]
    spec = spec or FlowSpec.default(n)
    if spec.n != n:
        raise InputValidationError(f"size mismatch: flow spec has n={spec.n}, matrix n={n}")
    direction = FlowDirection(direction)
    steps = horizons(spec, t_max)
    for K in all_subsets(n):
        try:
            T = unitary_arnold_coords(S, K, tol)
        except ChartError:
            continue
        if converges_in_chart(K, T, spec, direction, steps, tol):
            logger.debug(f"{direction.value} limit {K} resolved by t={steps[-1]:.3g}")
            return K
    raise LimitNotResolvedError()


def tunnelling_exists(M: SubsetIndex, K: SubsetIndex) -> bool:
    """W_M^- ∩ W_K^+ ≠ ∅."""
    return order_leq(K, M)


def admissible_pattern(M: SubsetIndex) -> np.ndarray:
    """
    Boolean mask of chart-M coordinates allowed on W_M^-: zero on the M×M block and on
    (i, j) with i ∈ M, j ∉ M, j < i, and its mirror.
    """
    n = M.n
    indices = [k + 1 for k in chart_order(M)]
    mask = np.zeros((n, n), dtype=bool)
    for a, i in enumerate(indices):
        for b, j in enumerate(indices):
            if i in M and j in M:
                continue
            if i in M and j < i or j in M and i < j:
                continue
            mask[a, b] = True
    return mask


def _random_entries(
    mask: np.ndarray, rng: np.random.Generator, magnitude: float, density: float
) -> np.ndarray:
    n = mask.shape[0]
    T = np.zeros((n, n), dtype=complex)
    for a in range(n):
        for b in range(a, n):
            if not mask[a, b] or rng.random() >= density:
                continue
            if a == b:
                T[a, a] = rng.uniform(-magnitude, magnitude)
            else:
                T[a, b] = rng.uniform(0, magnitude) * np.exp(1j * rng.uniform(-np.pi, np.pi))
                T[b, a] = np.conj(T[a, b])
    return T


def matching_coordinates(M: SubsetIndex, K: SubsetIndex) -> Optional[np.ndarray]:
    """
    Chart-M coordinates pairing each m ∈ M∖K with the smallest free k ∈ K∖M above it through
    τ_mk = 1; unpaired k ∈ K∖M get a unit diagonal entry. None when no such matching exists.
    """
    position = {k + 1: a for a, k in enumerate(chart_order(M))}
    losing = [m for m in M.members if m not in K]
    free = [k for k in K.members if k not in M]
    T = np.zeros((M.n, M.n), dtype=complex)
    for m in losing:
        k = next((k for k in free if k > m), None)
        if k is None:
            return None
        free.remove(k)
        a, b = position[m], position[k]
        T[a, b] = T[b, a] = 1.0
    for k in free:
        T[position[k], position[k]] = 1.0
    return T


def _candidates(
    M: SubsetIndex, K: SubsetIndex, rng: np.random.Generator, budget: int, magnitude: float
) -> Iterator[np.ndarray]:
    seed = matching_coordinates(M, K)
    if seed is not None:
        yield seed
    mask = admissible_pattern(M)
    for _ in range(budget):
        yield _random_entries(mask, rng, magnitude, density=rng.uniform(0.2, 1.0))


def tunnelling_witness(
    M: SubsetIndex,
    K: SubsetIndex,
    seed: int,
    spec: Optional[FlowSpec] = None,
    budget: Optional[int] = None,
    magnitude: Optional[float] = None,
    tol: Optional[Tolerances] = None,
) -> Optional[np.ndarray]:
    """
    Frame of a lagrangian flowing from Λ_M (backward) to Λ_K (forward), or None when the
    search budget runs out.
    """
    if M.n != K.n:
        raise ValueError(f"ambient sizes differ: {M.n} != {K.n}")
    tol = resolve_tolerances(tol)
    spec = spec or FlowSpec.default(M.n)
    budget = settings.witness_budget if budget is None else budget
    magnitude = settings.witness_magnitude if magnitude is None else magnitude
    rng = np.random.default_rng(seed)
    steps = horizons(spec)

    for attempt, T in enumerate(_candidates(M, K, rng, budget, magnitude)):
        if not converges_in_chart(M, T, spec, FlowDirection.BACKWARD, steps, tol):
            continue
        F = frame_from_arnold(M, T, tol)
        try:
            forward = flow_limit(unitary_from_frame(F, tol), spec, FlowDirection.FORWARD, tol)
        except (LimitNotResolvedError, InputValidationError) as e:
            logger.debug(f"candidate {attempt} for {M}->{K} rejected: {e}")
            continue
        if forward == K:
            logger.info(f"tunnelling {M} -> {K} witnessed on attempt {attempt}")
            return F
    logger.info(f"no tunnelling witness {M} -> {K} within budget {budget}")
    return None


def borel_element(A, H) -> np.ndarray:
    """[[A, A H], [0, (A*)^{-1}]] for A lower triangular invertible and H hermitian."""
    A, H = as_matrix(A), as_matrix(H)
    n = A.shape[0]
    if np.any(np.triu(A, 1)):
        raise InputValidationError("Borel factor must be lower triangular")
    if np.min(np.abs(np.diag(A))) == 0:
        raise InputValidationError("Borel factor must be invertible")
    inverse_adjoint = scipy.linalg.solve_triangular(A.conj().T, np.eye(n), lower=False)
    return np.block([[A, A @ H], [np.zeros((n, n)), inverse_adjoint]])


def borel_sample(n: int, seed: int) -> np.ndarray:
    """Random element of the group preserving the isotropic flag and the symplectic form."""
    rng = np.random.default_rng(seed)
    A = np.tril(rng.uniform(-1, 1, (n, n)) + 1j * rng.uniform(-1, 1, (n, n)), -1)
    radii = rng.uniform(0.5, 2.0, n)
    A += np.diag(radii * np.exp(1j * rng.uniform(-np.pi, np.pi, n)))
    return borel_element(A, random_hermitian(n, rng))


def stratum_sample(I: SubsetIndex, rng: np.random.Generator, magnitude: float = 2.0) -> np.ndarray:
    """Unitary on W_I^- built from dense admissible chart-I coordinates."""
    T = _random_entries(admissible_pattern(I), rng, magnitude, density=1.0)
    return unitary_from_frame(frame_from_arnold(I, T))


def wnu_sample(I: SubsetIndex, rng: np.random.Generator) -> np.ndarray:
    """
    Unitary whose eigenvalue-1 space is spanned by e_ν + Σ_{j>ν} z_j e_j for ν ∈ I,
    with the remaining spectrum kept away from 1.
    """
    n, k = I.n, I.size
    V = np.zeros((n, k), dtype=complex)
    for col, nu in enumerate(I.members):
        V[nu - 1, col] = 1.0
        V[nu:, col] = rng.normal(size=n - nu) + 1j * rng.normal(size=n - nu)
    if k:
        q, _ = np.linalg.qr(V, mode="complete")
    else:
        q = np.eye(n, dtype=complex)
    kernel, rest = q[:, :k], q[:, k:]
    S = kernel @ kernel.conj().T
    if n > k:
        W = rest @ random_unitary(n - k, rng)
        phases = rng.uniform(0.2, 2 * np.pi - 0.2, n - k)
        S = S + (W * np.exp(1j * phases)) @ W.conj().T
    return S
