"""Finite subgroups of GL_n(Z).

Closure is done on stacked numpy integer arrays with byte keys, which keeps
groups of a few million elements (W(E7) in the root basis) within a desktop
memory budget.  Everything that certifies something (conjugacy witnesses,
char polys, fixed ranks) is exact integer arithmetic.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .exact import det, hermite_normal_form, int_matmul, nullspace, rank

_LADDER = (np.int8, np.int16, np.int32, np.int64)


def _as_int_rows(M) -> list[list[int]]:
    if isinstance(M, np.ndarray):
        return [[int(x) for x in row] for row in M.tolist()]
    if hasattr(M, "tolist"):
        M = M.tolist()
    out = []
    for row in M:
        r = []
        for x in row:
            if hasattr(x, "denominator") and x.denominator != 1:
                raise ValueError("matrix is not integral")
            r.append(int(x))
        out.append(r)
    return out


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def is_unimodular(C) -> bool:
    C = _as_int_rows(C)
    return len(C) == len(C[0]) and abs(det(C)) == 1


def int_inverse(C) -> list[list[int]]:
    """Inverse of a unimodular integer matrix."""
    C = _as_int_rows(C)
    n = len(C)
    d = det(C)
    if abs(d) != 1:
        raise ValueError("matrix is not unimodular")
    from .exact import ExactMatrix

    inv = ExactMatrix(C).inverse()
    return _as_int_rows(inv.tolist())


# ---------------------------------------------------------------------------
# The matrix families of the cyclic and dihedral quotient constructions


class StandardMatrices(NamedTuple):
    A: list[list[int]]
    S: list[list[int]]
    B: list[list[int]]
    T: list[list[int]]
    C_cyclic: list[list[int]]
    C_dihedral: list[list[int]]
    T_prime: list[list[int]]


def standard_matrices(n: int) -> StandardMatrices:
    """The n x n operator families (column convention: column j is the image of basis vector j).

    A   cyclic shift v_1 -> v_2 -> ... -> v_{n+1} -> v_1 on Z^n
    S   the reversal x_i <-> x_{n+2-i} on Z^n
    B   A written in the basis v, v_2, ..., v_n of the overlattice
    T   the reversal on the overlattice, with the sign of the reference matrices
    T_prime = -T, the sign under which C_dihedral^{-1} S C_dihedral = T_prime holds
    """
    if n < 3:
        raise ValueError("need n >= 3")
    A = [[0] * n for _ in range(n)]
    A[0][n - 1] = -1
    for i in range(1, n):
        A[i][i - 1] = 1
        A[i][n - 1] = -1

    B = [[0] * n for _ in range(n)]
    B[0][0] = -n
    B[0][n - 1] = -(n + 1)
    for i in range(1, n):  # 0-based row i is row i+1 in 1-based terms
        B[i][0] = i
        B[i][n - 1] = i
        if i >= 2:
            B[i][i - 1] += 1

    S = [[0] * n for _ in range(n)]
    S[0][0] = -1
    for i in range(1, n):
        S[i][0] = -1
        S[i][n - i] = 1

    T = [[0] * n for _ in range(n)]
    T[0][0] = -1
    for i in range(1, n):
        T[i][0] = 1
        T[i][n - i] = 1

    Cc = [[0] * n for _ in range(n)]
    Cc[0] = [1] * n
    for i in range(1, n):
        for j in range(i):
            Cc[i][j] = -1

    Cd = [[0] * n for _ in range(n)]
    for i in range(n):
        if i < n - 1:
            Cd[i][0] = -1
        if i + 1 < n:
            Cd[i][i + 1] -= 1
        if i >= 2:
            Cd[i][i - 1] += 1
        Cd[i][n - 1] -= 1
    Tp = [[-x for x in row] for row in T]
    return StandardMatrices(A, S, B, T, Cc, Cd, Tp)


def verify_intertwiner(A, B, C) -> bool:
    """C A == B C exactly."""
    if not is_unimodular(C):
        raise ValueError("C is not unimodular")
    A, B, C = _as_int_rows(A), _as_int_rows(B), _as_int_rows(C)
    return int_matmul(C, A) == int_matmul(B, C)


def verify_conjugation(pairs, C) -> bool:
    """C^{-1} g C == h for every pair (g, h)."""
    if not is_unimodular(C):
        raise ValueError("C is not unimodular")
    C = _as_int_rows(C)
    Ci = int_inverse(C)
    return all(int_matmul(int_matmul(Ci, _as_int_rows(g)), C) == _as_int_rows(h) for g, h in pairs)


# ---------------------------------------------------------------------------
# Closure


def _keys(stack: np.ndarray) -> list[bytes]:
    flat = np.ascontiguousarray(stack.reshape(len(stack), -1))
    return [row.tobytes() for row in flat]


def int_closure(generators, cap: int = 10**6) -> np.ndarray:
    """All products of the generators, as a (k, n, n) integer array (identity first).

    Storage uses the narrowest integer type that holds every entry seen so far.
    """
    gens = [np.array(_as_int_rows(g), dtype=np.int64) for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].shape[0]
    level = 0
    bound = max(int(np.abs(g).max()) for g in gens)
    while bound > np.iinfo(_LADDER[level]).max:
        level += 1
    dt = _LADDER[level]
    gstack = [g.astype(np.int64) for g in gens]
    ident = np.eye(n, dtype=dt)[None]
    seen = {ident[0].tobytes()}
    blocks = [ident]
    frontier = ident
    total = 1
    while len(frontier):
        wide = frontier.astype(np.int64)
        cand = np.concatenate([wide @ g for g in gstack])
        big = int(np.abs(cand).max())
        while big > np.iinfo(_LADDER[level]).max:
            level += 1
        if _LADDER[level] != dt:
            dt = _LADDER[level]
            blocks = [b.astype(dt) for b in blocks]
            seen = set()
            for b in blocks:
                seen.update(_keys(b))
        cand = cand.astype(dt)
        keep = []
        for i, k in enumerate(_keys(cand)):
            if k not in seen:
                seen.add(k)
                keep.append(i)
        frontier = cand[np.array(keep, dtype=np.int64)] if keep else cand[:0]
        total += len(frontier)
        if total > cap:
            raise OverflowError(f"closure exceeds the cap of {cap} elements")
        if len(frontier):
            blocks.append(frontier)
    return np.concatenate(blocks)


@dataclass
class IntMatrixGroup:
    generators: list[list[list[int]]]
    cap: int = 10**6
    _elements: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.generators = [_as_int_rows(g) for g in self.generators]
        n = len(self.generators[0])
        for g in self.generators:
            if len(g) != n or any(len(r) != n for r in g):
                raise ValueError("generators must be square of equal size")
            if abs(det(g)) != 1:
                raise ValueError("generator is not unimodular")

    @property
    def dim(self) -> int:
        return len(self.generators[0])

    @property
    def elements(self) -> np.ndarray:
        if self._elements is None:
            self._elements = int_closure(self.generators, self.cap)
        return self._elements

    def order(self) -> int:
        return len(self.elements)

    def contains(self, g) -> bool:
        key = np.array(_as_int_rows(g), dtype=self.elements.dtype).tobytes()
        return key in set(_keys(self.elements))

    def conjugate(self, C) -> "IntMatrixGroup":
        """The group C^{-1} G C."""
        C = _as_int_rows(C)
        Ci = int_inverse(C)
        return IntMatrixGroup([int_matmul(int_matmul(Ci, g), C) for g in self.generators], self.cap)

    def transpose_inverse(self) -> "IntMatrixGroup":
        """The contragredient action (on the dual lattice)."""
        return IntMatrixGroup([[list(r) for r in zip(*int_inverse(g))] for g in self.generators], self.cap)


def fixed_sublattice_rank(G: IntMatrixGroup) -> int:
    """Rank of the common fixed sublattice: n - rank of the stacked (g - I)."""
    n = G.dim
    stacked = []
    for g in G.generators:
        for i in range(n):
            stacked.append([g[i][j] - (i == j) for j in range(n)])
    return n - rank(stacked)


def fixed_sublattice_basis(G: IntMatrixGroup) -> list[list[int]]:
    n = G.dim
    stacked = [[g[i][j] - (i == j) for j in range(n)] for g in G.generators for i in range(n)]
    basis = nullspace(stacked, n)
    out = []
    for v in basis:
        den = 1
        for x in v:
            den = den * x.denominator // np.gcd(den, x.denominator)
        out.append([int(x * den) for x in v])
    if out:
        H, _ = hermite_normal_form(out)
        out = [r for r in H if any(r)]
    return out


# ---------------------------------------------------------------------------
# Conjugation-invariant data


def int_charpoly(M) -> tuple[int, ...]:
    """Characteristic polynomial det(xI - M), constant term first (Faddeev-LeVerrier)."""
    M = _as_int_rows(M)
    n = len(M)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    Mk = [[0] * n for _ in range(n)]
    I = identity(n)
    for k in range(1, n + 1):
        c_prev = coeffs[n - k + 1]
        Mk = int_matmul(M, [[Mk[i][j] + c_prev * I[i][j] for j in range(n)] for i in range(n)])
        tr = sum(Mk[i][i] for i in range(n))
        if tr % k:
            raise ArithmeticError("non-integral char poly coefficient")
        coeffs[n - k] = -tr // k
    return tuple(coeffs)


def charpoly_multiset(G: IntMatrixGroup) -> Counter:
    return Counter(int_charpoly(g) for g in G.elements)


def mod_orbit_sizes(G: IntMatrixGroup, m: int) -> Counter:
    """Multiset of orbit sizes of G acting on (Z/m)^n by x -> g x."""
    n = G.dim
    N = m**n
    idx = np.arange(N, dtype=np.int64)
    digits = np.stack([(idx // m**k) % m for k in range(n)], axis=1)  # x_k = digit k
    place = m ** np.arange(n, dtype=np.int64)
    perms = []
    for g in G.generators:
        img = (digits @ np.array(g, dtype=np.int64).T) % m
        perms.append(img @ place)
    label = np.full(N, -1, dtype=np.int64)
    sizes = Counter()
    for s in range(N):
        if label[s] >= 0:
            continue
        label[s] = s
        stack = [s]
        count = 0
        while stack:
            x = stack.pop()
            count += 1
            for p in perms:
                y = int(p[x])
                if label[y] < 0:
                    label[y] = s
                    stack.append(y)
        sizes[count] += 1
    return sizes


@dataclass
class ConjugacyCertificate:
    verdict: str  # "conjugate" | "not-conjugate" | "inconclusive"
    modulus: int | None = None
    invariant: str | None = None
    left: dict | None = None
    right: dict | None = None
    witness: list[list[int]] | None = None
    searched: list[int] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


def _same_group(G1: IntMatrixGroup, G2: IntMatrixGroup) -> bool:
    if G1.order() != G2.order():
        return False
    keys2 = set(_keys(G2.elements.astype(np.int64)))
    return all(np.array(g, dtype=np.int64).tobytes() in keys2 for g in G1.generators)


def nonconjugacy_certificate(G1: IntMatrixGroup, G2: IntMatrixGroup, m_max: int = 13, witness=None, max_points: int = 2_000_000) -> ConjugacyCertificate:
    """Search conjugation-invariant data for a difference between G1 and G2.

    A mismatch is a sound proof of non-conjugacy in GL_n(Z).  Equal data is
    never read as conjugacy; only an explicit witness C with C^{-1} G1 C = G2
    yields the verdict "conjugate".
    """
    if G1.dim != G2.dim:
        raise ValueError("dimension mismatch")
    cert = ConjugacyCertificate("inconclusive")
    if G1.order() != G2.order():
        cert.verdict = "not-conjugate"
        cert.invariant = "order"
        cert.left, cert.right = {"order": G1.order()}, {"order": G2.order()}
        return cert
    c1, c2 = charpoly_multiset(G1), charpoly_multiset(G2)
    if c1 != c2:
        cert.verdict = "not-conjugate"
        cert.invariant = "charpoly multiset"
        cert.left = {str(k): v for k, v in sorted(c1.items())}
        cert.right = {str(k): v for k, v in sorted(c2.items())}
        return cert
    for m in range(2, m_max + 1):
        if m**G1.dim > max_points:
            cert.notes.append(f"modulus {m} skipped: {m}^{G1.dim} points exceed {max_points}")
            continue
        cert.searched.append(m)
        o1, o2 = mod_orbit_sizes(G1, m), mod_orbit_sizes(G2, m)
        if o1 != o2:
            cert.verdict = "not-conjugate"
            cert.modulus = m
            cert.invariant = "orbit sizes mod m"
            cert.left = dict(sorted(o1.items()))
            cert.right = dict(sorted(o2.items()))
            return cert
    if witness is not None:
        if is_unimodular(witness) and _same_group(G1.conjugate(witness), G2):
            cert.verdict = "conjugate"
            cert.witness = _as_int_rows(witness)
        else:
            cert.notes.append("supplied witness does not conjugate G1 onto G2")
    return cert


# ---------------------------------------------------------------------------
# Irreducibility over Q, certified modulo primes


def _primes(limit: int):
    for p in range(2, limit + 1):
        if all(p % d for d in range(2, int(p**0.5) + 1)):
            yield p


def _span_dim_mod_p(vectors: np.ndarray, p: int) -> int:
    """Rank over F_p of the rows of an integer array."""
    M = vectors.copy() % p
    r = 0
    rows, cols = M.shape
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i, c]), None)
        if piv is None:
            continue
        M[[r, piv]] = M[[piv, r]]
        inv = pow(int(M[r, c]), -1, p)
        M[r] = (M[r] * inv) % p
        for i in range(rows):
            if i != r and M[i, c]:
                M[i] = (M[i] - M[i, c] * M[r]) % p
        r += 1
        if r == rows:
            break
    return r


def _spins_to_full(v: np.ndarray, gens: list[np.ndarray], p: int) -> bool:
    n = len(v)
    basis = [v % p]
    queue = [v % p]
    while queue:
        x = queue.pop()
        for g in gens:
            y = (g @ x) % p
            trial = np.array(basis + [y])
            if _span_dim_mod_p(trial, p) > len(basis):
                basis.append(y)
                queue.append(y)
                if len(basis) == n:
                    return True
    return len(basis) == n


def _projective_points(n: int, p: int):
    """One representative per line of F_p^n (first nonzero coordinate 1)."""
    for lead in range(n):
        rest = n - lead - 1
        for t in range(p**rest):
            v = np.zeros(n, dtype=np.int64)
            v[lead] = 1
            for k in range(rest):
                v[lead + 1 + k] = (t // p**k) % p
            yield v


@dataclass
class IrreducibilityVerdict:
    verdict: str  # "irreducible" | "reducible" | "unknown"
    prime: int | None = None
    fixed_rank: int = 0
    detail: str = ""


def q_irreducible(G: IntMatrixGroup, prime_bound: int = 50, max_lines: int = 200_000) -> IrreducibilityVerdict:
    """One-sided Q-irreducibility test.

    A nonzero fixed sublattice is reported as reducible (it is an invariant
    line).  Otherwise, for primes p not dividing |G|, every line of F_p^n is
    spun under the generators; if each spins to the whole space the reduction
    is irreducible, which certifies irreducibility over Q (an invariant
    Q-subspace would reduce to an invariant F_p-subspace of the same dimension).
    """
    n = G.dim
    fr = fixed_sublattice_rank(G)
    if fr > 0 and n > 1:
        return IrreducibilityVerdict("reducible", None, fr, "nonzero fixed sublattice")
    if n == 1:
        return IrreducibilityVerdict("irreducible", None, fr, "dimension 1")
    order = G.order()
    gens = [np.array(g, dtype=np.int64) for g in G.generators]
    for p in _primes(prime_bound):
        if order % p == 0:
            continue
        lines = (p**n - 1) // (p - 1)
        if lines > max_lines:
            break
        if all(_spins_to_full(v, gens, p) for v in _projective_points(n, p)):
            return IrreducibilityVerdict("irreducible", p, fr, f"every line of F_{p}^{n} spins to the whole space")
    return IrreducibilityVerdict("unknown", None, fr, "no prime within the search bound certifies irreducibility")


# ---------------------------------------------------------------------------
# Group files


def format_group(G: IntMatrixGroup) -> str:
    from .exact import ExactMatrix, format_matrix

    parts = [f"dim: {G.dim}"]
    for g in G.generators:
        parts.append(format_matrix(ExactMatrix(g)).rstrip("\n"))
    return "\n\n".join(parts) + "\n"


def parse_group(text: str) -> IntMatrixGroup:
    """Header "dim: n", then generator matrices separated by blank lines."""
    from .exact import parse_matrix

    lines = [ln.rstrip() for ln in text.splitlines()]
    body = [ln for ln in lines if not ln.strip().startswith("#")]
    header = next((ln for ln in body if ln.strip()), "")
    if not header.strip().startswith("dim:"):
        raise ValueError("group file must start with 'dim: n'")
    n = int(header.split(":", 1)[1])
    rest = body[body.index(header) + 1:]
    blocks, cur = [], []
    for ln in rest:
        if ln.strip():
            cur.append(ln)
        elif cur:
            blocks.append(cur)
            cur = []
    if cur:
        blocks.append(cur)
    gens = []
    for b in blocks:
        M = parse_matrix("\n".join(b))
        if M.shape != (n, n):
            raise ValueError(f"generator of shape {M.shape}, expected {n}x{n}")
        gens.append(_as_int_rows(M.tolist()))
    return IntMatrixGroup(gens)
