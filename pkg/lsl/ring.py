# lsl/ring.py
"""
Integral cohomology of U(n) on the basis of cell classes α_I: a signed exterior algebra on
odd generators α_{1}, ..., α_{n} of degrees 1, 3, ..., 2n - 1.

Homology and cohomology classes share one representation; only `pairing` and `decompose`
treat a class as a cycle.
"""
import logging
from collections import Counter
from typing import Callable, Dict, Iterator, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from lsl.combinatorics import (
    MAX_EXHAUSTIVE_N,
    SubsetIndex,
    all_subsets,
    dual_subset,
    epsilon_sign,
    weight,
)

logger = logging.getLogger(__name__)

SignRule = Callable[[SubsetIndex, SubsetIndex], int]
ProductRow = Tuple[SubsetIndex, SubsetIndex, int, Optional[SubsetIndex]]

MAX_TABLE_N = 5


class ExteriorClass(BaseModel):
    """Integer combination Σ c_I α_I, keyed by subset bitmask. Zero coefficients are dropped."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1)
    terms: Dict[int, int] = Field(default_factory=dict)

    @field_validator("terms", mode="after")
    def _drop_zeros(cls, v):
        return {mask: c for mask, c in sorted(v.items()) if c != 0}

    @model_validator(mode="after")
    def _check_masks(self):
        for mask in self.terms:
            if mask < 0 or mask >> self.n:
                raise ValueError(f"term {mask:#x} has members outside 1..{self.n}")
        return self

    @classmethod
    def zero(cls, n: int) -> "ExteriorClass":
        return cls(n=n)

    @classmethod
    def from_items(cls, n: int, items: Dict[SubsetIndex, int]) -> "ExteriorClass":
        terms: Counter = Counter()
        for I, c in items.items():
            if I.n != n:
                raise ValueError(f"ambient sizes differ: {n} != {I.n}")
            terms[I.mask] += int(c)
        return cls(n=n, terms=dict(terms))

    def items(self) -> Iterator[Tuple[SubsetIndex, int]]:
        for mask, c in self.terms.items():
            yield SubsetIndex(n=self.n, mask=mask), c

    def coefficient(self, I: SubsetIndex) -> int:
        return self.terms.get(I.mask, 0)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Common weight of the terms; the zero class has degree 0."""
        degrees = {weight(I) for I, _ in self.items()}
        if len(degrees) > 1:
            raise ValueError(f"class is not homogeneous: degrees {sorted(degrees)}")
        return degrees.pop() if degrees else 0

    def _check_same_n(self, other: "ExteriorClass") -> None:
        if self.n != other.n:
            raise ValueError(f"ambient sizes differ: {self.n} != {other.n}")

    def __add__(self, other: "ExteriorClass") -> "ExteriorClass":
        self._check_same_n(other)
        terms = Counter(self.terms)
        terms.update(other.terms)
        return ExteriorClass(n=self.n, terms=dict(terms))

    def __neg__(self) -> "ExteriorClass":
        return self.scale(-1)

    def __sub__(self, other: "ExteriorClass") -> "ExteriorClass":
        return self + (-other)

    def scale(self, k: int) -> "ExteriorClass":
        return ExteriorClass(n=self.n, terms={mask: k * c for mask, c in self.terms.items()})

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        return " + ".join(f"{c}·α{I}" for I, c in self.items())


def basis_class(I: SubsetIndex) -> ExteriorClass:
    return ExteriorClass(n=I.n, terms={I.mask: 1})


def cup(x: ExteriorClass, y: ExteriorClass) -> ExteriorClass:
    """α_I ∪ α_J = ε(I, J) α_{I∪J} for disjoint I, J, else 0; extended bilinearly."""
    x._check_same_n(y)
    terms: Counter = Counter()
    for I, a in x.items():
        for J, b in y.items():
            if I.mask & J.mask:
                continue
            terms[I.mask | J.mask] += epsilon_sign(I, J) * a * b
    return ExteriorClass(n=x.n, terms=dict(terms))


def cup_all(classes: List[ExteriorClass]) -> ExteriorClass:
    """Left-to-right product of a nonempty list."""
    if not classes:
        raise ValueError("cup_all needs at least one class")
    product = classes[0]
    for c in classes[1:]:
        product = cup(product, c)
    return product


def pairing(x: ExteriorClass, y: ExteriorClass, sign: SignRule = epsilon_sign) -> int:
    """α_I • α_J = ε(I, J) when J = I^c, else 0."""
    x._check_same_n(y)
    total = 0
    for I, a in x.items():
        complement = dual_subset(I)
        b = y.coefficient(complement)
        if b:
            total += sign(I, complement) * a * b
    return total


def decompose(
    values: Dict[SubsetIndex, int],
    n: int,
    k: int,
    sign: SignRule = epsilon_sign,
) -> ExteriorClass:
    """
    The class c with c • α_{I^c} = values[I] for every weight-k subset I:
    c = Σ ε(I, I^c) values[I] α_I.
    """
    terms: Dict[int, int] = {}
    for I, value in values.items():
        if I.n != n:
            raise ValueError(f"ambient sizes differ: {n} != {I.n}")
        if weight(I) != k:
            raise ValueError(f"subset {I} has weight {weight(I)}, expected {k}")
        terms[I.mask] = sign(I, dual_subset(I)) * int(value)
    return ExteriorClass(n=n, terms=terms)


def _check_n(n: int, limit: int) -> None:
    if not 1 <= n <= limit:
        raise ValueError(f"n must lie in 1..{limit}, got {n}")


def betti_ranks(n: int) -> List[int]:
    """rank_k = #{I : weight(I) = k}, for k = 0..n²."""
    _check_n(n, MAX_EXHAUSTIVE_N)
    counts = Counter(weight(I) for I in all_subsets(n))
    return [counts.get(k, 0) for k in range(n * n + 1)]


def poincare_coefficients(n: int) -> List[int]:
    """Coefficients of ∏_{i=1}^n (1 + t^{2i-1})."""
    _check_n(n, MAX_EXHAUSTIVE_N)
    poly = np.array([1], dtype=np.int64)
    for i in range(1, n + 1):
        factor = np.zeros(2 * i, dtype=np.int64)
        factor[0] = factor[-1] = 1
        poly = np.convolve(poly, factor)
    return [int(c) for c in poly]


def basis_of_degree(n: int, k: int) -> List[SubsetIndex]:
    return sorted((I for I in all_subsets(n) if weight(I) == k), key=lambda I: I.members)


def pairing_matrix(n: int, k: int, sign: SignRule = epsilon_sign) -> np.ndarray:
    """Pairings of the degree-k basis (rows) against the degree-(n² - k) basis (columns)."""
    rows = basis_of_degree(n, k)
    cols = basis_of_degree(n, n * n - k)
    M = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for a, I in enumerate(rows):
        for b, J in enumerate(cols):
            M[a, b] = pairing(basis_class(I), basis_class(J), sign)
    return M


def is_signed_permutation(M: np.ndarray) -> bool:
    """Entries in {0, ±1} with exactly one nonzero per row and per column."""
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        return False
    if not np.all(np.isin(M, (-1, 0, 1))):
        return False
    nonzero = M != 0
    return bool(np.all(nonzero.sum(axis=0) == 1) and np.all(nonzero.sum(axis=1) == 1))


def product_table(n: int) -> List[ProductRow]:
    """Every basis product α_I ∪ α_J as (I, J, sign, I ∪ J); sign 0 and None when they meet."""
    _check_n(n, MAX_TABLE_N)
    basis = sorted(all_subsets(n), key=lambda I: (weight(I), I.members))
    rows = []
    for I in basis:
        for J in basis:
            if I.mask & J.mask:
                rows.append((I, J, 0, None))
            else:
                rows.append((I, J, epsilon_sign(I, J), SubsetIndex(n=n, mask=I.mask | J.mask)))
    logger.debug(f"n={n}: {len(rows)} basis products")
    return rows
