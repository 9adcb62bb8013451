# lsl/verify.py
"""
Verification suites: exhaustive and sampled property checks tying the combinatorial,
geometric and dynamical descriptions together.

Each suite expands into independent cases with their own seeds, so results do not depend
on the number of worker threads. Reports are sorted by case id.
"""
import logging
from enum import Enum
from typing import Callable, Dict, List, Optional, Tuple

import networkx as nx
import numpy as np
import scipy.linalg

from lsl.combinatorics import (
    OrderStrategy,
    SubsetIndex,
    all_subsets,
    codim1_related,
    codim2_related,
    dual_subset,
    epsilon_sign,
    order_leq,
    partition_dual,
    partition_of,
    subset_of_partition,
    weight,
)
from lsl.config import Tolerances, resolve_tolerances
from lsl.errors import LSLError, SpectralGapError
from lsl.lagrangian import (
    arnold_coords,
    critical_lagrangian,
    frame_from_arnold,
    frame_from_unitary,
    in_chart,
    j_map,
    pair_operator,
    same_subspace,
    unitary_arnold_coords,
    unitary_from_frame,
    vertical_frames,
)
from lsl.matrices import (
    act,
    cayley,
    inverse_cayley,
    numerical_rank,
    projector_of_unitary,
    random_hermitian,
    random_unitary,
    spectral_map,
    unitary_eig,
    unitary_residual,
)
from lsl.morse import (
    FlowSpec,
    critical_unitary,
    flow,
    flow_arnold,
    flow_vector_field,
    hessian_form,
    hessian_inertia,
    integrate_flow,
    is_critical,
    morse_index,
    morse_value,
    phi_value,
)
from lsl.poset import hasse_covers, mobius_table, order_graph
from lsl.ring import (
    SignRule,
    basis_class,
    basis_of_degree,
    betti_ranks,
    cup,
    cup_all,
    decompose,
    is_signed_permutation,
    pairing,
    pairing_matrix,
    poincare_coefficients,
)
from lsl.runtime import parallel_map
from lsl.schemas import CaseResult, SuiteReport, VerifyReport
from lsl.spectral_flow import (
    crossings_through,
    det_winding,
    diagonal_loop,
    maslov_index,
    product_loop,
    random_loop,
)
from lsl.strata import (
    FlowDirection,
    borel_sample,
    classify_stable,
    classify_stable_frame,
    classify_unstable,
    classify_unstable_frame,
    flow_limit,
    stratum_sample,
    tunnelling_witness,
    wnu_sample,
)

logger = logging.getLogger(__name__)

Check = Callable[[], Tuple[bool, float]]
Case = Tuple[str, Check]

# share of classification samples allowed to land in the spectral guard band
EXCLUSION_RATE = 0.01
EXCLUDED = "excluded"


class Suite(str, Enum):
    COMBINATORICS = "combinatorics"
    MATRICES = "matrices"
    CHARTS = "charts"
    MORSE = "morse"
    CLASSIFICATION = "classification"
    TUNNELLING = "tunnelling"
    RING = "ring"
    SPECTRAL = "spectral"


# largest n each suite expands to
_SIZE_CAPS = {
    Suite.COMBINATORICS: 8,
    Suite.MATRICES: 5,
    Suite.CHARTS: 4,
    Suite.MORSE: 4,
    Suite.CLASSIFICATION: 4,
    Suite.TUNNELLING: 3,
    Suite.RING: 8,
    Suite.SPECTRAL: 4,
}


def case_rng(seed: int, suite: Suite, n: int, index: int) -> np.random.Generator:
    suite_index = list(Suite).index(suite)
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(suite_index, n, index)))


def flipped_sign_rule(I: SubsetIndex, J: SubsetIndex) -> int:
    """ε with the sign of the pair ({1}, {1}^c) reversed."""
    sign = epsilon_sign(I, J)
    if I.mask == 1 and J == dual_subset(I):
        return -sign
    return sign


def _max_abs(M) -> float:
    return float(np.max(np.abs(M), initial=0.0))


def shuffle_signature(first: Tuple[int, ...], second: Tuple[int, ...]) -> int:
    """Signature of the permutation sorting first + second, by cycle decomposition."""
    sequence = list(first) + list(second)
    target = sorted(sequence)
    position = {v: k for k, v in enumerate(target)}
    perm = [position[v] for v in sequence]
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        if length and length % 2 == 0:
            sign = -sign
    return sign


# =====================
# COMBINATORICS
# =====================
def _combinatorics_cases(n: int) -> List[Case]:
    subsets = all_subsets(n)

    def weight_duality():
        bad = [I for I in subsets if weight(I) + weight(dual_subset(I)) != n * n]
        return not bad, float(len(bad))

    def strategies_agree():
        bad = 0
        for J in subsets:
            for K in subsets:
                answers = {order_leq(J, K, s) for s in OrderStrategy}
                bad += len(answers) > 1
        return bad == 0, float(bad)

    def order_axioms():
        leq = {(J, K): order_leq(J, K) for J in subsets for K in subsets}
        ok = all(leq[(J, J)] for J in subsets)
        ok &= all(J == K for (J, K), v in leq.items() if v and leq[(K, J)])
        if n <= 5:
            for J, K in (p for p, v in leq.items() if v):
                ok &= all(leq[(J, L)] for L in subsets if leq[(K, L)])
        return ok, 0.0

    def monotone():
        ok = all(
            weight(J) > weight(K)
            for J in subsets
            for K in subsets
            if J != K and order_leq(J, K)
        )
        return ok, 0.0

    def codim_characterisations():
        ok = True
        for K in subsets:
            for M in subsets:
                related = order_leq(K, M)
                ok &= codim1_related(K, M) == (related and weight(K) == weight(M) + 1)
                ok &= codim2_related(K, M) == (related and weight(K) == weight(M) + 2)
        return ok, 0.0

    def partitions():
        ok = all(subset_of_partition(partition_of(I)) == I for I in subsets)
        ok &= all(partition_of(dual_subset(I)) == partition_dual(partition_of(I)) for I in subsets)
        return ok, 0.0

    def epsilon_antisymmetry():
        ok = True
        for I in subsets:
            for J in subsets:
                if I.mask & J.mask:
                    continue
                expected = -1 if (I.size * J.size) % 2 else 1
                ok &= epsilon_sign(I, J) * epsilon_sign(J, I) == expected
        return ok, 0.0

    cases: List[Case] = [
        (f"combinatorics/n{n}/weight-duality", weight_duality),
        (f"combinatorics/n{n}/order-strategies", strategies_agree),
        (f"combinatorics/n{n}/order-axioms", order_axioms),
        (f"combinatorics/n{n}/monotone-weight", monotone),
        (f"combinatorics/n{n}/codim-characterisations", codim_characterisations),
        (f"combinatorics/n{n}/partitions", partitions),
        (f"combinatorics/n{n}/epsilon-antisymmetry", epsilon_antisymmetry),
    ]

    if n <= 6:

        def covers_are_reduction():
            reduced = nx.transitive_reduction(order_graph(n))
            return set(reduced.edges) == set(hasse_covers(n)), 0.0

        cases.append((f"combinatorics/n{n}/hasse-covers", covers_are_reduction))

    if n <= 4:

        def mobius():
            table = mobius_table(n)
            order = sorted(subsets, key=lambda s: (-weight(s), s.members))
            index = {s: k for k, s in enumerate(order)}
            zeta = np.zeros((len(order), len(order)))
            for J in order:
                for K in order:
                    if order_leq(J, K):
                        zeta[index[J], index[K]] = 1
            inverse = np.rint(np.linalg.inv(zeta)).astype(int)
            ok = all(inverse[index[J], index[K]] == mu for (J, K), mu in table.items())
            ok &= all(
                sum(table[(L, K)] for L in subsets if (J, L) in table and (L, K) in table) == 0
                for (J, K) in table
                if J != K
            )
            return ok, 0.0

        cases.append((f"combinatorics/n{n}/mobius", mobius))
    return cases


# =====================
# MATRICES
# =====================
def _matrices_cases(n: int, seed: int, samples: int, tol: Tolerances) -> List[Case]:
    cases: List[Case] = []
    for k in range(samples):

        def check(k=k):
            rng = case_rng(seed, Suite.MATRICES, n, k)
            A = random_hermitian(n, rng, scale=rng.uniform(0.1, 10.0))
            S = cayley(A, tol)
            errors = [unitary_residual(S), _max_abs(inverse_cayley(S, tol) - A)]

            U = random_unitary(n, rng)
            phases, frame = unitary_eig(U, tol)
            errors.append(_max_abs(U @ frame - frame * np.exp(1j * phases)))

            P = projector_of_unitary(U)
            errors += [_max_abs(P - P.conj().T), _max_abs(P @ P - P), abs(np.trace(P) - n)]
            F = frame_from_unitary(U, tol)
            errors.append(_max_abs(P @ F - F))

            u1, v1, u2, v2 = (random_unitary(n, rng) for _ in range(4))
            lhs = act(u1, v1, act(u2, v2, U))
            errors.append(_max_abs(lhs - act(u1 @ u2, v1 @ v2, U)))

            gaps = np.diff(np.concatenate([phases, [phases[0] + 2 * np.pi]]))
            if n == 1 or np.min(gaps) > 1e-3:

                def xi(z):
                    return z**2

                def eta(z):
                    return z * np.exp(0.3j)

                composed = spectral_map(U, lambda z: xi(eta(z)), tol)
                iterated = spectral_map(spectral_map(U, eta, tol), xi, tol)
                errors.append(_max_abs(composed - iterated))
            error = max(errors)
            return error <= 1e-9, error

        cases.append((f"matrices/n{n}/sample{k:03d}", check))
    return cases


# =====================
# LAGRANGIAN CHARTS
# =====================
def _charts_cases(n: int, seed: int, samples: int, tol: Tolerances) -> List[Case]:
    cases: List[Case] = []
    for k in range(samples):

        def correspondence(k=k):
            rng = case_rng(seed, Suite.CHARTS, n, k)
            S = random_unitary(n, rng)
            F = frame_from_unitary(S, tol)
            errors = [_max_abs(unitary_from_frame(F, tol) - S)]
            errors.append(_max_abs(unitary_from_frame(j_map(F), tol) + S))
            ok = same_subspace(j_map(j_map(F)), F, tol)
            for other in vertical_frames(n):
                ok &= numerical_rank(np.hstack([F, other]), tol.rank) == 2 * n
            u_plus, u_minus = random_unitary(n, rng), random_unitary(n, rng)
            moved = pair_operator(u_plus, u_minus) @ F
            ok &= same_subspace(moved, frame_from_unitary(act(u_plus, u_minus, S), tol), tol)
            error = max(errors)
            return ok and error <= 1e-8, error

        cases.append((f"charts/n{n}/correspondence{k:03d}", correspondence))

    for I in all_subsets(n):
        for k in range(max(1, samples // 4)):

            def roundtrip(I=I, k=k):
                rng = case_rng(seed, Suite.CHARTS, n, 1000 + I.mask * 64 + k)
                T = random_hermitian(n, rng, scale=rng.uniform(0.1, 5.0))
                F = frame_from_arnold(I, T, tol)
                errors = [_max_abs(arnold_coords(F, I, tol) - T)]
                S = random_unitary(n, rng)
                G = frame_from_unitary(S, tol)
                if in_chart(G, I, tol):
                    coords = arnold_coords(G, I, tol)
                    scale = max(1.0, _max_abs(coords))
                    ok = same_subspace(frame_from_arnold(I, coords, tol), G, tol)
                    errors.append(_max_abs(unitary_arnold_coords(S, I, tol) - coords) / scale)
                else:
                    ok = True
                error = max(errors)
                return ok and error <= 1e-8, error

            cases.append((f"charts/n{n}/chart{I}/roundtrip{k:03d}", roundtrip))
    return cases


# =====================
# MORSE FUNCTION AND FLOW
# =====================
def _morse_cases(n: int, seed: int, samples: int, tol: Tolerances) -> List[Case]:
    spec = FlowSpec.default(n)
    cases: List[Case] = []

    def self_indexing():
        errors = [
            abs(phi_value(spec, critical_lagrangian(I)) + n * n / 2 - weight(I))
            for I in all_subsets(n)
        ]
        error = max(errors)
        return error <= 1e-12, error

    def index_identity():
        ok = True
        for I in all_subsets(n):
            negative, positive = hessian_inertia(I, spec)
            ok &= negative == morse_index(I, spec) == weight(I)
            ok &= positive == weight(dual_subset(I))
            ok &= is_critical(critical_unitary(I), spec)
        return ok, 0.0

    cases += [
        (f"morse/n{n}/self-indexing", self_indexing),
        (f"morse/n{n}/index", index_identity),
    ]

    for I in all_subsets(n):

        def hessian_fd(I=I):
            rng = case_rng(seed, Suite.MORSE, n, 5000 + I.mask)
            S_I = critical_unitary(I)
            h = 1e-3
            worst = 0.0
            for _ in range(max(1, samples // 4)):
                Z = random_hermitian(n, rng)

                def f(t):
                    return morse_value(spec, S_I @ scipy.linalg.expm(1j * t * Z))

                fd = (f(h) - 2 * f(0.0) + f(-h)) / h**2
                exact = hessian_form(I, spec, Z)
                worst = max(worst, abs(fd - exact) / max(1.0, abs(exact)))
            return worst <= 1e-5, worst

        cases.append((f"morse/n{n}/hessian{I}", hessian_fd))

    for k in range(samples):

        def dynamics(k=k):
            rng = case_rng(seed, Suite.MORSE, n, k)
            S = random_unitary(n, rng)
            s, t = rng.uniform(-2, 2, 2)
            composed = flow(flow(S, s, spec, tol), t, spec, tol)
            errors = [_max_abs(composed - flow(S, s + t, spec, tol))]
            V = flow_vector_field(S, spec)
            W = S.conj().T @ V
            errors.append(_max_abs(W + W.conj().T))
            h = 1e-5
            fd = (flow(S, h, spec, tol) - flow(S, -h, spec, tol)) / (2 * h)
            ok = _max_abs(fd - V) <= 1e-6
            ok &= _max_abs(integrate_flow(S, 2.0, spec) - flow(S, 2.0, spec, tol)) <= 1e-6
            ok &= morse_value(spec, flow(S, 0.1, spec, tol)) > morse_value(spec, S)
            ok &= abs(morse_value(spec, S) - phi_value(spec, frame_from_unitary(S, tol))) <= 1e-10
            error = max(errors)
            return ok and error <= 1e-8, error

        cases.append((f"morse/n{n}/dynamics{k:03d}", dynamics))

        def chart_flow(k=k):
            rng = case_rng(seed, Suite.MORSE, n, 2000 + k)
            I = SubsetIndex(n=n, mask=int(rng.integers(0, 1 << n)))
            S = random_unitary(n, rng)
            t = float(rng.uniform(-1, 1))
            T = unitary_arnold_coords(S, I, tol)
            moved = unitary_arnold_coords(flow(S, t, spec, tol), I, tol)
            expected = flow_arnold(T, t, I, spec)
            error = _max_abs(moved - expected) / max(1.0, _max_abs(expected))
            return error <= 1e-7, error

        cases.append((f"morse/n{n}/chart-flow{k:03d}", chart_flow))
    return cases


# =====================
# CLASSIFICATION
# =====================
def _classification_cases(n: int, seed: int, samples: int, tol: Tolerances) -> List[Case]:
    spec = FlowSpec.default(n)
    strata = [I for I in all_subsets(n) if I.size in (1, 2)]
    cases: List[Case] = []

    def limits_agree(S) -> bool:
        backward = flow_limit(S, spec, FlowDirection.BACKWARD, tol)
        forward = flow_limit(S, spec, FlowDirection.FORWARD, tol)
        ok = backward == classify_unstable(S, tol) and forward == classify_stable(S, tol)
        F = frame_from_unitary(S, tol)
        ok &= classify_unstable_frame(F, tol) == backward
        ok &= classify_stable_frame(F, tol) == forward
        return ok

    for k in range(samples):

        def generic(k=k):
            rng = case_rng(seed, Suite.CLASSIFICATION, n, k)
            return limits_agree(random_unitary(n, rng)), 0.0

        cases.append((f"classification/n{n}/generic{k:03d}", generic))

        if strata:

            def constructed(k=k):
                rng = case_rng(seed, Suite.CLASSIFICATION, n, 1000 + k)
                I = strata[k % len(strata)]
                S = wnu_sample(I, rng) if k % 2 == 0 else stratum_sample(I, rng)
                return classify_unstable(S, tol) == I and limits_agree(S), 0.0

            cases.append((f"classification/n{n}/stratum{k:03d}", constructed))

        def borel(k=k):
            rng = case_rng(seed, Suite.CLASSIFICATION, n, 2000 + k)
            I = SubsetIndex(n=n, mask=int(rng.integers(0, 1 << n)))
            S = stratum_sample(I, rng)
            B = borel_sample(n, int(rng.integers(0, 2**31)))
            moved = unitary_from_frame(B @ frame_from_unitary(S, tol), tol)
            return classify_unstable(moved, tol) == classify_unstable(S, tol) == I, 0.0

        cases.append((f"classification/n{n}/borel{k:03d}", borel))
    return cases


# =====================
# TUNNELLING
# =====================
def _tunnelling_cases(n: int, seed: int, budget: int, tol: Tolerances) -> List[Case]:
    spec = FlowSpec.default(n)
    cases: List[Case] = []
    for M in all_subsets(n):
        for K in all_subsets(n):

            def search(M=M, K=K):
                witness = tunnelling_witness(M, K, seed, spec, budget=budget, tol=tol)
                found = witness is not None
                ok = found == order_leq(K, M)
                if found and K != M:
                    ok &= weight(K) > weight(M)
                return ok, 0.0

            cases.append((f"tunnelling/n{n}/{M}->{K}", search))
    return cases


# =====================
# RING
# =====================
def _random_class(n: int, rng: np.random.Generator):
    subsets = all_subsets(n)
    picks = rng.choice(len(subsets), size=min(3, len(subsets)), replace=False)
    total = basis_class(subsets[0]).scale(0)
    for p in picks:
        total = total + basis_class(subsets[p]).scale(int(rng.integers(-3, 4)))
    return total


def _ring_cases(n: int, seed: int, samples: int, sign: SignRule) -> List[Case]:
    subsets = all_subsets(n)
    unit = basis_class(SubsetIndex.empty(n))
    cases: List[Case] = []

    def schubert_products():
        ok = True
        for I in subsets:
            if I.size == 0:
                continue
            generators = [basis_class(SubsetIndex.of(n, [i])) for i in I.members]
            ok &= cup_all(generators) == basis_class(I)
        return ok, 0.0

    def pairing_unimodularity():
        ok = True
        for k in range(n * n + 1):
            M = pairing_matrix(n, k, sign)
            if M.size == 0:
                continue
            ok &= is_signed_permutation(M)
            rows = basis_of_degree(n, k)
            cols = basis_of_degree(n, n * n - k)
            for a, I in enumerate(rows):
                b = cols.index(dual_subset(I))
                ok &= M[a, b] == shuffle_signature(I.members, dual_subset(I).members)
        return ok, 0.0

    def betti():
        ranks = betti_ranks(n)
        return ranks == poincare_coefficients(n) and ranks == ranks[::-1], 0.0

    cases += [
        (f"ring/n{n}/schubert-products", schubert_products),
        (f"ring/n{n}/pairing-unimodularity", pairing_unimodularity),
        (f"ring/n{n}/betti", betti),
    ]

    if n <= 6:

        def commutativity():
            ok = True
            for I in subsets:
                x = basis_class(I)
                ok &= cup(unit, x) == x == cup(x, unit)
                for J in subsets:
                    y = basis_class(J)
                    sign_ij = -1 if (weight(I) * weight(J)) % 2 else 1
                    ok &= cup(x, y) == cup(y, x).scale(sign_ij)
                    if I.mask & J.mask:
                        ok &= cup(x, y).is_zero()
            return ok, 0.0

        def decomposition():
            ok = True
            for I in subsets:
                c = basis_class(I)
                k = weight(I)
                values = {
                    J: pairing(c, basis_class(dual_subset(J)), sign)
                    for J in subsets
                    if weight(J) == k
                }
                ok &= decompose(values, n, k, sign) == c
            return ok, 0.0

        cases += [
            (f"ring/n{n}/graded-commutativity", commutativity),
            (f"ring/n{n}/decompose", decomposition),
        ]

        for k in range(samples):

            def associativity(k=k):
                rng = case_rng(seed, Suite.RING, n, k)
                x, y, z = (_random_class(n, rng) for _ in range(3))
                return cup(cup(x, y), z) == cup(x, cup(y, z)), 0.0

            cases.append((f"ring/n{n}/associativity{k:03d}", associativity))
    return cases


# =====================
# SPECTRAL FLOW
# =====================
def _spectral_cases(n: int, seed: int, samples: int, tol: Tolerances) -> List[Case]:
    cases: List[Case] = []

    for w in (0, 1, 2, -1):

        def deterministic(w=w):
            offsets = [0.25] + [0.5 + 0.4 * j for j in range(n - 1)]
            loop = diagonal_loop(
                [w] + [0] * (n - 1), samples=128 * max(1, abs(w)) + 1, offsets=offsets
            )
            return maslov_index(loop, tol) == det_winding(loop) == w, 0.0

        cases.append((f"spectral/n{n}/winding{w:+d}", deterministic))

    for k in range(samples):

        def random_case(k=k):
            rng = case_rng(seed, Suite.SPECTRAL, n, k)
            loop = random_loop(n, rng)
            winding = det_winding(loop)
            ok = maslov_index(loop, tol) == winding
            ok &= crossings_through(loop, -1.0, tol) == winding
            ok &= maslov_index(loop.concatenate(2), tol) == det_winding(loop.concatenate(2))
            ok &= det_winding(loop.concatenate(2)) == 2 * winding
            ok &= maslov_index(loop.conjugate(random_unitary(n, rng)), tol) == winding
            rho = np.exp(1j * rng.uniform(-np.pi, np.pi))
            coarse_samples = 128 * n + 1
            fine = product_loop(
                *_loop_parameters(n, case_rng(seed, Suite.SPECTRAL, n, 1000 + k)),
                samples=2 * coarse_samples - 1,
            )
            coarse = product_loop(
                *_loop_parameters(n, case_rng(seed, Suite.SPECTRAL, n, 1000 + k)),
                samples=coarse_samples,
            )
            ok &= crossings_through(fine, rho, tol) == crossings_through(coarse, rho, tol)
            return ok, 0.0

        cases.append((f"spectral/n{n}/loop{k:03d}", random_case))
    return cases


def _loop_parameters(n: int, rng: np.random.Generator):
    windings = rng.integers(-2, 3, size=n)
    left, right = random_unitary(n, rng), random_unitary(n, rng)
    return windings, left, right


# =====================
# RUNNER
# =====================
def _run_case(case: Case) -> CaseResult:
    case_id, check = case
    try:
        passed, error = check()
        return CaseResult(case_id=case_id, passed=bool(passed), error=float(error))
    except SpectralGapError as e:
        if case_id.startswith(Suite.CLASSIFICATION.value):
            return CaseResult(case_id=case_id, passed=True, detail=f"{EXCLUDED}: {e}")
        return CaseResult(case_id=case_id, passed=False, detail=str(e))
    except LSLError as e:
        return CaseResult(case_id=case_id, passed=False, detail=str(e))


def build_cases(
    suite: Suite,
    n: int,
    seed: int,
    samples: int,
    budget: int,
    tol: Tolerances,
    sign: SignRule,
) -> List[Case]:
    cases: List[Case] = []
    for size in range(1, min(n, _SIZE_CAPS[suite]) + 1):
        if suite == Suite.COMBINATORICS:
            cases += _combinatorics_cases(size)
        elif suite == Suite.MATRICES:
            cases += _matrices_cases(size, seed, samples, tol)
        elif suite == Suite.CHARTS:
            cases += _charts_cases(size, seed, samples, tol)
        elif suite == Suite.MORSE:
            cases += _morse_cases(size, seed, samples, tol)
        elif suite == Suite.CLASSIFICATION:
            cases += _classification_cases(size, seed, samples, tol)
        elif suite == Suite.TUNNELLING:
            cases += _tunnelling_cases(size, seed, budget, tol)
        elif suite == Suite.RING:
            cases += _ring_cases(size, seed, samples, sign)
        elif suite == Suite.SPECTRAL:
            cases += _spectral_cases(size, seed, samples, tol)
    return cases


def run_suite(
    suite: Suite,
    n: int,
    seed: int,
    samples: int = 20,
    budget: int = 64,
    tol: Optional[Tolerances] = None,
    inject_sign_flip: bool = False,
    threads: Optional[int] = None,
) -> Tuple[SuiteReport, List[CaseResult]]:
    tol = resolve_tolerances(tol)
    sign = flipped_sign_rule if inject_sign_flip else epsilon_sign
    cases = build_cases(suite, n, seed, samples, budget, tol, sign)
    logger.info(f"Suite {suite.value}: {len(cases)} cases")
    results = sorted(parallel_map(_run_case, cases, threads), key=lambda r: r.case_id)

    excluded = [r for r in results if r.detail and r.detail.startswith(EXCLUDED)]
    if excluded and len(excluded) > EXCLUSION_RATE * len(results):
        results.append(
            CaseResult(
                case_id=f"{suite.value}/guard-band",
                passed=False,
                detail=f"{len(excluded)} of {len(results)} samples in the spectral guard band",
            )
        )
    failed = [r.case_id for r in results if not r.passed]
    report = SuiteReport(
        suite=suite.value,
        cases=len(results),
        failures=len(failed),
        max_error=max((r.error for r in results), default=0.0),
        failed_cases=failed,
    )
    logger.info(
        f"Suite {suite.value}: {report.failures} failures, max error {report.max_error:.2e}"
    )
    return report, results


def run_verification(
    n: int,
    seed: int,
    suites: Optional[List[Suite]] = None,
    samples: int = 20,
    budget: int = 64,
    tol: Optional[Tolerances] = None,
    inject_sign_flip: bool = False,
    threads: Optional[int] = None,
) -> Tuple[VerifyReport, Dict[str, List[CaseResult]]]:
    suites = suites or list(Suite)
    reports: List[SuiteReport] = []
    details: Dict[str, List[CaseResult]] = {}
    for suite in suites:
        report, results = run_suite(
            suite, n, seed, samples, budget, tol, inject_sign_flip, threads
        )
        reports.append(report)
        details[suite.value] = results
    passed = all(r.failures == 0 for r in reports)
    return VerifyReport(n=n, seed=seed, suites=reports, passed=passed), details
