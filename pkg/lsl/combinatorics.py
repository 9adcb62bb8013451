# lsl/combinatorics.py
"""
Subsets of {1, ..., n}, their weights, the order ⊴ on subsets, the depth/partition
bijection and shuffle signs.

Subsets are stored as bitmasks: bit (i - 1) is set when i is a member.
"""
import logging
from enum import Enum
from itertools import combinations
from typing import Iterable, List, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

logger = logging.getLogger(__name__)

MAX_ARITHMETIC_N = 64
MAX_EXHAUSTIVE_N = 16


class OrderStrategy(str, Enum):
    NU = "nu"
    TAIL = "tail"
    COMPLEMENT = "complement"


class SubsetIndex(BaseModel):
    """A subset I ⊆ {1, ..., n} with its ambient size."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1, le=MAX_ARITHMETIC_N)
    mask: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _check_mask(self):
        if self.mask >> self.n:
            raise ValueError(f"subset mask {self.mask:#x} has members outside 1..{self.n}")
        return self

    @classmethod
    def of(cls, n: int, members: Iterable[int]) -> "SubsetIndex":
        mask = 0
        for i in members:
            i = int(i)
            if not 1 <= i <= n:
                raise ValueError(f"member {i} outside 1..{n}")
            mask |= 1 << (i - 1)
        return cls(n=n, mask=mask)

    @classmethod
    def empty(cls, n: int) -> "SubsetIndex":
        return cls(n=n, mask=0)

    @classmethod
    def full(cls, n: int) -> "SubsetIndex":
        return cls(n=n, mask=(1 << n) - 1)

    @property
    def members(self) -> Tuple[int, ...]:
        return tuple(i + 1 for i in range(self.n) if self.mask >> i & 1)

    @property
    def size(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, i: int) -> bool:
        return 1 <= i <= self.n and bool(self.mask >> (i - 1) & 1)

    def __str__(self) -> str:
        return "{" + ",".join(str(i) for i in self.members) + "}"

    def sort_key(self) -> Tuple[int, int, Tuple[int, ...]]:
        return (self.n, self.size, self.members)


class DepthPartition(BaseModel):
    """Depth m and a partition mu whose Ferrers diagram fits the m × (n - m) box."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1, le=MAX_ARITHMETIC_N)
    m: int = Field(..., ge=0)
    mu: Tuple[int, ...] = ()

    @field_validator("mu", mode="after")
    def _canonical_mu(cls, v):
        for a, b in zip(v, v[1:]):
            if a < b:
                raise ValueError(f"partition {v} is not weakly decreasing")
        if any(p < 0 for p in v):
            raise ValueError(f"partition {v} has negative parts")
        # canonical form drops trailing zeros
        return tuple(p for p in v if p > 0)

    @model_validator(mode="after")
    def _check_box(self):
        if self.m > self.n:
            raise ValueError(f"depth {self.m} exceeds n = {self.n}")
        if len(self.mu) > self.m:
            raise ValueError(f"partition {self.mu} has more than {self.m} parts")
        width = self.n - self.m
        if any(p > width for p in self.mu):
            raise ValueError(f"partition {self.mu} does not fit the {self.m}x{width} box")
        return self

    @property
    def size(self) -> int:
        return sum(self.mu)

    def padded(self) -> Tuple[int, ...]:
        return self.mu + (0,) * (self.m - len(self.mu))


def _require_same_n(*subsets: SubsetIndex) -> int:
    n = subsets[0].n
    for s in subsets[1:]:
        if s.n != n:
            raise ValueError(f"ambient sizes differ: {n} != {s.n}")
    return n


def all_subsets(n: int) -> List[SubsetIndex]:
    """Every subset of {1..n}, ordered by size then lexicographically."""
    if not 1 <= n <= MAX_EXHAUSTIVE_N:
        raise ValueError(f"n must lie in 1..{MAX_EXHAUSTIVE_N} for enumeration, got {n}")
    out = []
    for k in range(n + 1):
        for members in combinations(range(1, n + 1), k):
            out.append(SubsetIndex.of(n, members))
    return out


def weight(I: SubsetIndex) -> int:
    return sum(2 * i - 1 for i in I.members)


def nu_sequence(I: SubsetIndex) -> List[int]:
    if I.mask == 0:
        raise ValueError("nu undefined for empty set")
    return sorted(I.members, reverse=True)


def tail_count(I: SubsetIndex, ell: int) -> int:
    """#(I ∩ [ell, n])."""
    return bin(I.mask >> (ell - 1)).count("1") if ell >= 1 else I.size


def _leq_nu(J: SubsetIndex, K: SubsetIndex) -> bool:
    if K.mask == 0:
        return True
    if J.size < K.size:
        return False
    nu_j = nu_sequence(J)
    return all(a <= b for a, b in zip(nu_sequence(K), nu_j))


def _leq_tail(J: SubsetIndex, K: SubsetIndex) -> bool:
    return all(tail_count(J, ell) >= tail_count(K, ell) for ell in range(1, J.n + 1))


def order_leq(J: SubsetIndex, K: SubsetIndex, strategy: OrderStrategy = OrderStrategy.NU) -> bool:
    """J ⊴ K. Reflexive; K = ∅ is the top element."""
    _require_same_n(J, K)
    if strategy == OrderStrategy.NU:
        return _leq_nu(J, K)
    if strategy == OrderStrategy.TAIL:
        return _leq_tail(J, K)
    if strategy == OrderStrategy.COMPLEMENT:
        return _leq_nu(dual_subset(K), dual_subset(J))
    raise ValueError(f"Unknown order strategy: {strategy}")


def codim1_related(K: SubsetIndex, M: SubsetIndex) -> bool:
    _require_same_n(K, M)
    return 1 in K and M.mask == K.mask & ~1


def codim2_related(K: SubsetIndex, M: SubsetIndex) -> bool:
    _require_same_n(K, M)
    if K.size != M.size:
        return False
    common = K.mask & M.mask
    if bin(common).count("1") != K.size - 1:
        return False
    extra_k = K.mask & ~common
    extra_m = M.mask & ~common
    return extra_k == extra_m << 1


def partition_of(I: SubsetIndex) -> DepthPartition:
    k = I.size
    if k == 0:
        return DepthPartition(n=I.n, m=0, mu=())
    nu = nu_sequence(I)
    mu = tuple(nu[i - 1] - (k + 1 - i) for i in range(1, k + 1))
    return DepthPartition(n=I.n, m=k, mu=mu)


def subset_of_partition(p: DepthPartition) -> SubsetIndex:
    mu = p.padded()
    k = p.m
    return SubsetIndex.of(p.n, (mu[i - 1] + (k + 1 - i) for i in range(1, k + 1)))


def conjugate_partition(mu: Tuple[int, ...]) -> Tuple[int, ...]:
    if not mu:
        return ()
    return tuple(sum(1 for p in mu if p >= j) for j in range(1, mu[0] + 1))


def partition_dual(p: DepthPartition) -> DepthPartition:
    """π ↦ π* = (n - m, μ*): transpose of the complement of μ in the m × (n - m) box."""
    width = p.n - p.m
    padded = p.padded()
    complement = tuple(width - padded[p.m - i] for i in range(1, p.m + 1))
    mu = conjugate_partition(tuple(c for c in complement if c))
    return DepthPartition(n=p.n, m=width, mu=mu)


def dual_subset(I: SubsetIndex) -> SubsetIndex:
    return SubsetIndex(n=I.n, mask=((1 << I.n) - 1) & ~I.mask)


def cell_codim(I: SubsetIndex) -> int:
    p = partition_of(I)
    return p.m * p.m + 2 * p.size


def cell_dim(I: SubsetIndex) -> int:
    return I.n * I.n - cell_codim(I)


def epsilon_sign(I: SubsetIndex, J: SubsetIndex) -> int:
    """Signature of the shuffle listing I ascending, then J ascending."""
    _require_same_n(I, J)
    if I.mask & J.mask:
        raise ValueError("epsilon undefined on overlapping subsets")
    inversions = sum(1 for i in I.members for j in J.members if i > j)
    return -1 if inversions % 2 else 1


def parse_subset(text: str, n: int) -> SubsetIndex:
    """Parse '1,3' style text; '', '-', 'empty' or '∅' give the empty set."""
    text = (text or "").strip().strip("{}[]")
    if text in ("", "-", "empty", "∅"):
        return SubsetIndex.empty(n)
    try:
        members = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise ValueError(f"Invalid subset {text!r}: {e}")
    return SubsetIndex.of(n, members)
