"""Reid-Tai criterion for cyclic quotient singularities 1/m(a_1, ..., a_n)."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import gcd


@dataclass(frozen=True)
class CyclicQuotient:
    order: int
    weights: tuple[int, ...]

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        object.__setattr__(self, "weights", tuple(int(a) % self.order for a in self.weights))

    def __str__(self):
        return f"1/{self.order}({','.join(map(str, self.weights))})"

    def has_zero_weight(self) -> bool:
        return self.order > 1 and any(a == 0 for a in self.weights)

    def normalized(self) -> "CyclicQuotient":
        """Canonical representative up to permuting weights and changing the generator."""
        m = self.order
        best = None
        for c in range(1, m + 1):
            if gcd(c, m) != 1:
                continue
            w = tuple(sorted((c * a) % m for a in self.weights))
            if best is None or w < best:
                best = w
        return CyclicQuotient(m, best or ())


@dataclass
class ReidTaiVerdict:
    terminal: bool
    violating_r: int | None = None
    sums: dict[int, int] = field(default_factory=dict)
    flags: list[str] = field(default_factory=list)


def is_terminal_reid_tai(q: CyclicQuotient) -> ReidTaiVerdict:
    """Sum condition: sum_i (r a_i mod m) > m for every r acting nontrivially."""
    m = q.order
    flags = []
    if q.has_zero_weight():
        flags.append("zero weight: the group contains quasi-reflections; criterion applied verbatim")
    sums = {}
    for r in range(1, m):
        residues = [(r * a) % m for a in q.weights]
        if not any(residues):
            continue  # r-th power acts trivially
        s = sum(residues)
        sums[r] = s
        if s <= m:
            return ReidTaiVerdict(False, r, sums, flags)
    return ReidTaiVerdict(True, None, sums, flags)


def sign_split_type(n: int, I_u) -> CyclicQuotient:
    """Weights i for i outside I_u and -i mod (n+1) for i in I_u."""
    m = n + 1
    I_u = set(I_u)
    return CyclicQuotient(m, tuple((-i) % m if i in I_u else i for i in range(1, n + 1)))


@dataclass
class SplittingReport:
    n: int
    count: int
    all_terminal: bool
    failures: list[tuple[tuple[int, ...], int]]


def check_U_cone_types(n: int) -> SplittingReport:
    """Run the criterion on every sign splitting {1..n} = I_v u I_u."""
    if n % 2 or not _is_prime(n + 1):
        raise ValueError("need n even with n+1 prime")
    failures = []
    count = 0
    for k in range(n + 1):
        for I_u in combinations(range(1, n + 1), k):
            count += 1
            v = is_terminal_reid_tai(sign_split_type(n, I_u))
            if not v.terminal:
                failures.append((I_u, v.violating_r))
    return SplittingReport(n, count, not failures, failures)


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))
