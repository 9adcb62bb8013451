# lsl/spectral_flow.py
"""
Loops of unitaries θ ↦ S(θ), θ ∈ [-π, π]: the winding number of det S and the signed
count of eigenvalues passing a point ρ of the circle. On closed loops the count through
ρ = 1 (the Maslov index) equals the determinant winding.
"""
import logging
from typing import Callable, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator
from scipy.optimize import linear_sum_assignment

from lsl.config import Tolerances, resolve_tolerances
from lsl.errors import BranchMatchingError, InputValidationError, LoopSamplingError
from lsl.matrices import as_matrix, random_unitary, unitary, unitary_eig

logger = logging.getLogger(__name__)

# largest ‖S_{k+1} - S_k‖_max between consecutive samples
MAX_SAMPLE_GAP = 0.5
# largest argument increment trusted for unwrapping
MAX_PHASE_STEP = np.pi / 2
CLOSURE_TOL = 1e-8
WINDING_TOL = 1e-3


class UnitaryLoop(BaseModel):
    """Samples (θ_k, S(θ_k)) with θ strictly increasing from -π to π."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    theta: List[float]
    samples: List[np.ndarray]
    closed: bool = True

    @field_validator("theta", mode="after")
    def check_theta(cls, v):
        if len(v) < 2:
            raise ValueError("a loop needs at least two samples")
        if abs(v[0] + np.pi) > 1e-12 or abs(v[-1] - np.pi) > 1e-12:
            raise ValueError(f"loop must run from -π to π, got [{v[0]}, {v[-1]}]")
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("loop parameter must be strictly increasing")
        return v

    @field_validator("samples", mode="after")
    def check_samples(cls, v):
        cleaned = [unitary(S) for S in v]
        shapes = {S.shape for S in cleaned}
        if len(shapes) != 1:
            raise ValueError(f"loop samples have different sizes: {sorted(shapes)}")
        return cleaned

    @model_validator(mode="after")
    def check_closure(self):
        if len(self.theta) != len(self.samples):
            raise ValueError(f"{len(self.theta)} parameters for {len(self.samples)} samples")
        if self.closed:
            gap = np.max(np.abs(self.samples[-1] - self.samples[0]))
            if gap > CLOSURE_TOL:
                raise ValueError(f"loop is not closed: S(π) - S(-π) = {gap:.3e}")
        return self

    @classmethod
    def from_function(
        cls,
        fn: Callable[[float], np.ndarray],
        samples: int = 257,
        closed: bool = True,
    ) -> "UnitaryLoop":
        theta = np.linspace(-np.pi, np.pi, samples)
        return cls(theta=[float(t) for t in theta], samples=[fn(t) for t in theta], closed=closed)

    @property
    def n(self) -> int:
        return self.samples[0].shape[0]

    def check_sampling(self) -> None:
        for k in range(len(self.samples) - 1):
            gap = np.max(np.abs(self.samples[k + 1] - self.samples[k]))
            if gap > MAX_SAMPLE_GAP:
                logger.debug(f"sample gap {gap:.3f} at θ={self.theta[k]:.4f}")
                raise LoopSamplingError()

    def concatenate(self, times: int) -> "UnitaryLoop":
        """The loop traversed `times` times, reparametrised onto [-π, π]."""
        if not self.closed:
            raise InputValidationError("only closed loops can be concatenated")
        if times < 1:
            raise InputValidationError(f"times must be positive, got {times}")
        base = np.array(self.theta) + np.pi
        theta: List[float] = []
        samples: List[np.ndarray] = []
        for copy in range(times):
            start = 0 if copy == 0 else 1
            theta.extend((-np.pi + (copy * 2 * np.pi + base[start:]) / times).tolist())
            samples.extend(self.samples[start:])
        theta[-1] = np.pi
        return UnitaryLoop(theta=theta, samples=samples, closed=True)

    def conjugate(self, U) -> "UnitaryLoop":
        """θ ↦ U S(θ) U*."""
        U = unitary(U)
        return UnitaryLoop(
            theta=self.theta,
            samples=[U @ S @ U.conj().T for S in self.samples],
            closed=self.closed,
        )


def diagonal_loop(
    windings: Sequence[int],
    samples: int = 257,
    conjugator=None,
    offsets: Optional[Sequence[float]] = None,
) -> UnitaryLoop:
    """θ ↦ U diag(e^{i(w_j θ + φ_j)}) U*, with U the conjugator (identity when omitted)."""
    w = np.array(windings, dtype=float)
    phi = np.zeros_like(w) if offsets is None else np.array(offsets, dtype=float)
    if phi.shape != w.shape:
        raise InputValidationError(f"{len(phi)} offsets for {len(w)} windings")
    U = np.eye(len(w)) if conjugator is None else as_matrix(conjugator)

    def path(t: float) -> np.ndarray:
        return (U * np.exp(1j * (w * t + phi))) @ U.conj().T

    return UnitaryLoop.from_function(path, samples=samples, closed=True)


def product_loop(
    windings: Sequence[int],
    left,
    right,
    samples: int = 257,
    offsets: Optional[Sequence[float]] = None,
) -> UnitaryLoop:
    """θ ↦ L diag(e^{i(w_j θ + φ_j)}) R for fixed unitaries L, R."""
    w = np.array(windings, dtype=float)
    phi = np.zeros_like(w) if offsets is None else np.array(offsets, dtype=float)
    L, R = unitary(left), unitary(right)

    def path(t: float) -> np.ndarray:
        return (L * np.exp(1j * (w * t + phi))) @ R

    return UnitaryLoop.from_function(path, samples=samples, closed=True)


def random_loop(n: int, rng: np.random.Generator, max_winding: int = 2) -> UnitaryLoop:
    """Generic closed loop: random windings and offsets between two Haar unitaries."""
    windings = rng.integers(-max_winding, max_winding + 1, size=n)
    offsets = rng.uniform(-np.pi, np.pi, size=n)
    samples = 64 * max(1, int(np.max(np.abs(windings)))) * n + 1
    return product_loop(
        windings,
        random_unitary(n, rng),
        random_unitary(n, rng),
        samples=samples,
        offsets=offsets,
    )


def _cyclic(loop: UnitaryLoop) -> List[np.ndarray]:
    """Samples with the endpoint identified with the start on closed loops."""
    if loop.closed:
        return loop.samples[:-1] + [loop.samples[0]]
    return loop.samples


def det_winding(loop: UnitaryLoop) -> int:
    """Winding number of θ ↦ det S(θ)."""
    if not loop.closed:
        raise InputValidationError("det_winding needs a closed loop")
    loop.check_sampling()
    dets = np.array([np.linalg.det(S) for S in _cyclic(loop)])
    steps = np.angle(dets[1:] / dets[:-1])
    if np.max(np.abs(steps), initial=0.0) > MAX_PHASE_STEP:
        raise LoopSamplingError()
    winding = float(np.sum(steps)) / (2 * np.pi)
    if abs(winding - round(winding)) > WINDING_TOL:
        raise LoopSamplingError(f"determinant winding {winding:.6f} is not an integer")
    return int(round(winding))


def _eigenvalues(S: np.ndarray, tol: Tolerances) -> np.ndarray:
    phases, _ = unitary_eig(S, tol)
    return np.exp(1j * phases)


def _check_endpoints(first: np.ndarray, last: np.ndarray, gap: float) -> None:
    """On an open path an endpoint eigenvalue sitting on ρ makes the count depend on rounding."""
    if np.min(np.abs(np.concatenate([first, last]))) < gap:
        raise BranchMatchingError()


def crossings_through(
    loop: UnitaryLoop, rho: complex = 1.0, tol: Optional[Tolerances] = None
) -> int:
    """
    Signed count of eigenvalue branches passing ρ: +1 when the phase relative to ρ moves
    from negative to nonnegative, -1 the other way. Steps that pass the antipode -ρ are
    not crossings. On a closed loop the count only depends on those antipode passages,
    so rounding noise at ρ cancels.
    """
    tol = resolve_tolerances(tol)
    if abs(abs(rho) - 1) > tol.unit:
        raise InputValidationError(f"rho must lie on the unit circle, got {rho}")
    loop.check_sampling()
    reference = np.conj(rho)
    values = [_eigenvalues(S, tol) for S in _cyclic(loop)]
    psi = [np.angle(v * reference) for v in values]
    if not loop.closed:
        _check_endpoints(psi[0], psi[-1], tol.kernel)
    total = 0
    for k in range(len(values) - 1):
        before, after = values[k], values[k + 1]
        displacement = np.abs(np.angle(after[None, :] / before[:, None]))
        rows, cols = linear_sum_assignment(displacement)
        if np.max(displacement[rows, cols], initial=0.0) > MAX_PHASE_STEP:
            raise LoopSamplingError()
        for a, b in zip(rows, cols):
            start, end = psi[k][a], psi[k + 1][b]
            if abs(end - start) > np.pi:
                continue
            if start < 0 <= end:
                total += 1
            elif end < 0 <= start:
                total -= 1
    return total


def maslov_index(loop: UnitaryLoop, tol: Optional[Tolerances] = None) -> int:
    """Signed eigenvalue-1 crossings of a closed loop."""
    if not loop.closed:
        raise InputValidationError("maslov_index needs a closed loop")
    return crossings_through(loop, 1.0, tol)
