"""Dimensions of invariant polynomials of finite matrix groups.

The count in degree d is the group average of h_d(g), the complete
homogeneous symmetric function of the eigenvalues of g.  It is obtained from
the power traces p_k = tr(g^k) by Newton's identity

    h_d = (1/d) * sum_{k=1..d} p_k h_{d-k}.

Groups with integer generators are enumerated with the numpy closure from
:mod:`toricverify.latgroups`; everything else goes through a hash-set closure
of :class:`ExactMatrix` objects.  Elements are bucketed by power-trace
signature before the exact summation, so the exact arithmetic runs once per
distinct signature rather than once per element.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from pathlib import Path

import numpy as np

from .exact import Cyc, ExactMatrix, euler_phi, format_cyc, hermite_normal_form, parse_cyc
from .latgroups import int_closure
from .permgroups import PermGroup

ELEMENT_CAP = 4_000_000
MAX_DEGREE = 8


class MolienError(ArithmeticError):
    """A Molien average came out non-integral or negative."""


class CharacterError(ValueError):
    """Generator values do not extend to a character of the group."""


# ---------------------------------------------------------------------------
# Scalars


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _as_scalar(x, m: int):
    """Rationals stay Fractions; cyclotomics are lifted to Q(zeta_m)."""
    if isinstance(x, Cyc):
        if x.is_rational():
            return x.to_rational()
        return x.lift(m)
    return Fraction(x)


def _to_integer(x) -> int | None:
    if isinstance(x, Cyc):
        if not x.is_rational():
            return None
        x = x.to_rational()
    x = Fraction(x)
    return int(x) if x.denominator == 1 else None


def complete_homogeneous(power_traces, d_max: int) -> list:
    """h_0..h_{d_max} from p_1..p_{d_max} by Newton's identity."""
    h = [Fraction(1)]
    for d in range(1, d_max + 1):
        s = 0
        for k in range(1, d + 1):
            s = s + power_traces[k - 1] * h[d - k]
        h.append(s / d if isinstance(s, Cyc) else Fraction(s) / d)
    return h


# ---------------------------------------------------------------------------
# Trace tables


@dataclass
class TraceTable:
    """Power traces tr(g^k), k = 1..dmax, with multiplicities.

    Records need not be conjugacy classes: any partition of the group into
    sets with equal power traces works.
    """

    order: int
    dim: int
    dmax: int
    provenance: str
    records: list[tuple[int, tuple]]
    conductor: int = 1

    def __post_init__(self):
        if not self.provenance.strip():
            raise ValueError("trace table without provenance")
        total = sum(size for size, _ in self.records)
        if total != self.order:
            raise ValueError(f"record sizes sum to {total}, declared order is {self.order}")
        for size, tr in self.records:
            if size <= 0:
                raise ValueError("record size must be positive")
            if len(tr) < self.dmax:
                raise ValueError("record shorter than dmax")

    def to_text(self) -> str:
        lines = [f"order: {self.order}", f"dim: {self.dim}", f"dmax: {self.dmax}"]
        if self.conductor != 1:
            lines.append(f"conductor: {self.conductor}")
        lines.append(f"provenance: {self.provenance}")
        for size, tr in self.records:
            lines.append("; ".join([str(size)] + [_fmt_scalar(x) for x in tr]))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "TraceTable":
        header: dict[str, str] = {}
        body = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, val = line.partition(":")
            if sep and key.strip() in {"order", "dim", "dmax", "conductor", "provenance"}:
                header[key.strip()] = val.strip()
            else:
                body.append(line)
        for key in ("order", "dim", "dmax", "provenance"):
            if key not in header:
                raise ValueError(f"trace table is missing the {key!r} header")
        m = int(header.get("conductor", "1"))
        records = []
        for line in body:
            parts = [p.strip() for p in line.split(";")]
            tr = tuple(_parse_scalar(p, m) for p in parts[1:])
            records.append((int(parts[0]), tr))
        return cls(int(header["order"]), int(header["dim"]), int(header["dmax"]),
                   header["provenance"], records, m)

    @classmethod
    def load(cls, path) -> "TraceTable":
        return cls.from_text(Path(path).read_text(encoding="utf-8"))

    def digest(self) -> str:
        return hashlib.sha256(self.to_text().encode()).hexdigest()


def _fmt_scalar(x) -> str:
    if isinstance(x, Cyc):
        return str(x.to_rational()) if x.is_rational() else format_cyc(x)
    return str(x)


def _parse_scalar(text: str, m: int):
    if "z" in text:
        return parse_cyc(text, m)
    return Fraction(text)


# ---------------------------------------------------------------------------
# Groups


class MatrixGroup:
    """Finite group generated by exact square matrices.

    ``character`` optionally assigns a root of unity to each generator; it is
    extended over the closure and rejected if it is not well defined.
    """

    def __init__(self, generators, cap: int = ELEMENT_CAP, name: str = "", character=None,
                 use_lattice: bool = True):
        gens = [g if isinstance(g, ExactMatrix) else ExactMatrix(g) for g in generators]
        if not gens:
            raise ValueError("need at least one generator")
        n = gens[0].nrows
        for g in gens:
            if g.shape != (n, n):
                raise ValueError("generators must be square of equal size")
        self.generators = gens
        self.dim = n
        self.cap = cap
        self.name = name
        self.conductor = 1
        for g in gens:
            self.conductor = _lcm(self.conductor, g.conductor())
        self.integral = all(g.is_integral() for g in gens)
        self.use_lattice = use_lattice
        self._lattice: RealLattice | None = None
        self._int_elements: np.ndarray | None = None
        self._exact_elements: list[ExactMatrix] | None = None
        self._char_exps: np.ndarray | list[int] | None = None
        self.character = None
        self.char_order = 1
        if character is not None:
            self._set_character(character)

    # -- characters ----------------------------------------------------------

    def _set_character(self, values):
        if len(values) != len(self.generators):
            raise CharacterError("one character value per generator required")
        K = 1
        for v in values:
            K = _lcm(K, _root_order(v))
        exps = [_root_exponent(v, K) for v in values]
        self.character = list(values)
        self.char_order = K
        self._gen_exps = exps

    # -- enumeration ---------------------------------------------------------

    def _enumerate(self):
        if self._int_elements is not None or self._exact_elements is not None:
            return
        if self.integral:
            self._enumerate_int([g.tolist() for g in self.generators])
        elif self.use_lattice:
            self._lattice = RealLattice(self.generators, self.conductor)
            self._enumerate_int(self._lattice.int_generators)
        else:
            self._enumerate_exact()

    def _enumerate_int(self, gens):
        plain = int_closure(gens, self.cap)
        if self.character is None:
            self._int_elements = plain
            return
        K, n = self.char_order, len(gens[0])
        aug = []
        for g, a in zip(gens, self._gen_exps):
            M = [[0] * (n + K) for _ in range(n + K)]
            for i in range(n):
                M[i][:n] = g[i]
            for j in range(K):
                M[n + (j + a) % K][n + j] = 1
            aug.append(M)
        full = int_closure(aug, self.cap)
        if len(full) != len(plain):
            raise CharacterError("values do not define a character (extension is larger than the group)")
        self._int_elements = np.ascontiguousarray(full[:, :n, :n])
        self._char_exps = np.argmax(full[:, n:, n], axis=1).astype(np.int64)

    def _enumerate_exact(self):
        m = self.conductor
        gens = [ExactMatrix([[_as_scalar(x, m) for x in r] for r in g.rows]) for g in self.generators]
        ident = ExactMatrix([[_as_scalar(int(i == j), m) for j in range(self.dim)] for i in range(self.dim)])
        K = self.char_order
        gexps = self._gen_exps if self.character is not None else [0] * len(gens)
        seen = {ident: 0}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                ex = seen[x]
                for g, a in zip(gens, gexps):
                    y = x @ g
                    e = (ex + a) % K
                    old = seen.get(y)
                    if old is None:
                        seen[y] = e
                        nxt.append(y)
                        if len(seen) > self.cap:
                            raise OverflowError(f"closure exceeds the cap of {self.cap} elements")
                    elif old != e:
                        raise CharacterError("values do not define a character")
            frontier = nxt
        self._exact_elements = list(seen)
        self._char_exps = list(seen.values())

    def order(self) -> int:
        self._enumerate()
        if self._int_elements is not None:
            return len(self._int_elements)
        return len(self._exact_elements)

    @property
    def int_elements(self) -> np.ndarray:
        if not self.integral:
            raise TypeError("group is not integral")
        self._enumerate()
        return self._int_elements

    def elements(self) -> list[ExactMatrix]:
        self._enumerate()
        if self._exact_elements is not None:
            return self._exact_elements
        if self._lattice is not None:
            return [self._lattice.to_exact(x) for x in self._int_elements]
        return [ExactMatrix(g.tolist()) for g in self._int_elements]

    def contains(self, g) -> bool:
        g = g if isinstance(g, ExactMatrix) else ExactMatrix(g)
        self._enumerate()
        if self._lattice is not None:
            if self.conductor % g.conductor():
                # entries written over a field we cannot lift into; compare exactly
                return g in set(self.elements())
            x = self._lattice.from_exact(g)
            if x is None:
                return False
            key = np.array(x, dtype=self._int_elements.dtype).tobytes()
            return any(key == row.tobytes() for row in self._int_elements)
        if self.integral:
            if not g.is_integral():
                return False
            key = np.array(g.tolist(), dtype=self.int_elements.dtype).tobytes()
            return any(key == row.tobytes() for row in self.int_elements)
        return g in set(self.elements())

    def conjugate(self, C) -> "MatrixGroup":
        """The group C^{-1} G C with the same character values."""
        C = C if isinstance(C, ExactMatrix) else ExactMatrix(C)
        Ci = C.inverse()
        return MatrixGroup([Ci @ g @ C for g in self.generators], self.cap, self.name, self.character,
                           self.use_lattice)

    # -- power traces --------------------------------------------------------

    def trace_table(self, d_max: int, jobs: int = 1, provenance: str | None = None) -> TraceTable:
        """Bucket the elements by (character exponent, tr g, ..., tr g^d_max).

        Only meaningful without a character; for semi-invariants use
        :meth:`signature_counts`.
        """
        counts = self.signature_counts(d_max, jobs)
        records = []
        for (ex, *tr), c in sorted(counts.items(), key=lambda kv: _sort_key(kv[0])):
            if ex:
                raise ValueError("trace tables cannot carry a character")
            records.append((c, tuple(tr)))
        prov = provenance or f"enumeration of {self.name or 'a matrix group'} by toricverify closure"
        return TraceTable(self.order(), self.dim, d_max, prov, records, self.conductor)

    def signature_counts(self, d_max: int, jobs: int = 1) -> Counter:
        """Counter of (character exponent, p_1, ..., p_d_max) over all elements."""
        self._enumerate()
        if self._lattice is not None:
            return self._lattice.signatures(self._int_elements, self._char_exps, d_max)
        if self._int_elements is not None:
            return _int_signatures(self._int_elements, self._char_exps, d_max, jobs)
        out: Counter = Counter()
        exps = self._char_exps or [0] * len(self._exact_elements)
        for g, ex in zip(self._exact_elements, exps):
            tr = []
            P = g
            for k in range(d_max):
                tr.append(P.trace())
                if k + 1 < d_max:
                    P = P @ g
            out[(ex,) + tuple(_norm_trace(t) for t in tr)] += 1
        return out


def _norm_trace(t):
    if isinstance(t, Cyc):
        return t.to_rational() if t.is_rational() else t
    return Fraction(t)


def _sort_key(sig):
    return tuple(_fmt_scalar(x) if not isinstance(x, int) else f"{x:012d}" for x in sig)


def _root_order(v) -> int:
    if isinstance(v, Cyc) and not v.is_rational():
        M = _lcm(v.m, 2)
        if M > 60:
            M = v.m
        w = v.lift(M)
        for k in range(M):
            if w == Cyc.zeta(M, k):
                return M // gcd(M, k)
        raise CharacterError(f"{v} is not a root of unity")
    q = _to_integer(v)
    if q == 1:
        return 1
    if q == -1:
        return 2
    raise CharacterError(f"{v} is not a root of unity")


def _root_exponent(v, K: int) -> int:
    if K == 1:
        return 0
    if not isinstance(v, Cyc):
        return 0 if Fraction(v) == 1 else K // 2
    w = v.lift(K) if not v.is_rational() else Cyc.const(K, v.to_rational())
    for k in range(K):
        if w == Cyc.zeta(K, k):
            return k
    raise CharacterError(f"{v} is not a {K}-th root of unity")


# -- integer fast path -----------------------------------------------------


def _chunk_signatures(args) -> list[tuple[tuple[int, ...], int]]:
    elems, exps, d_max = args
    g = elems.astype(np.int64)
    traces = np.empty((len(g), d_max + 1), dtype=np.int64)
    traces[:, 0] = exps
    P = g
    for k in range(d_max):
        traces[:, k + 1] = np.einsum("nii->n", P)
        if k + 1 < d_max:
            P = P @ g
    rows, counts = np.unique(traces, axis=0, return_counts=True)
    return [(tuple(int(x) for x in r), int(c)) for r, c in zip(rows, counts)]


def _int_signatures(elements: np.ndarray, exps, d_max: int, jobs: int = 1, chunk: int = 100_000) -> Counter:
    if exps is None:
        exps = np.zeros(len(elements), dtype=np.int64)
    tasks = [(elements[i:i + chunk], exps[i:i + chunk], d_max) for i in range(0, len(elements), chunk)]
    out: Counter = Counter()
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_chunk_signatures, tasks))
    else:
        parts = [_chunk_signatures(t) for t in tasks]
    for part in parts:
        for sig, c in part:
            out[(sig[0],) + tuple(Fraction(x) for x in sig[1:])] += c
    return out


# -- cyclotomic groups as integer groups ------------------------------------


def _realify(g: ExactMatrix, m: int) -> list[list[Fraction]]:
    """Block matrix of g over Q: each entry becomes its multiplication matrix
    on the power basis 1, zeta, ..., zeta^(phi-1) of Q(zeta_m)."""
    phi = euler_phi(m)
    basis = [Cyc.zeta(m, j) for j in range(phi)]
    n = g.nrows
    R = [[Fraction(0)] * (n * phi) for _ in range(n * phi)]
    for i in range(n):
        for j in range(n):
            x = _as_scalar(g[i, j], m)
            x = x if isinstance(x, Cyc) else Cyc(m, [x])
            if x.is_zero():
                continue
            for b, z in enumerate(basis):
                col = (x * z).coeffs
                for a in range(phi):
                    R[i * phi + a][j * phi + b] = col[a]
    return R


def _rational_hnf(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    den = 1
    for r in rows:
        for x in r:
            den = _lcm(den, x.denominator)
    H, _ = hermite_normal_form([[int(x * den) for x in r] for r in rows])
    return [[Fraction(x, den) for x in r] for r in H if any(r)]


class RealLattice:
    """A Z-lattice in Q(zeta_m)^n stable under finitely many generators.

    Starting from the standard lattice, images under the generators are
    added until nothing changes, which happens exactly when the generated
    group is finite (checked against a size bound).  In a basis of that
    lattice the generators become integer matrices, so the integer closure
    applies; traces are recovered through fixed integer weights.
    """

    MAX_ROUNDS = 64

    def __init__(self, generators, m: int):
        self.m, self.phi = m, euler_phi(m)
        self.n = generators[0].nrows
        N = self.n * self.phi
        real = [_realify(g, m) for g in generators]
        L = [[Fraction(int(i == j)) for j in range(N)] for i in range(N)]
        for _ in range(self.MAX_ROUNDS):
            rows = list(L)
            for R in real:
                rows += [[sum(v[k] * R[c][k] for k in range(N)) for c in range(N)] for v in L]
            L2 = _rational_hnf(rows)
            if L2 == L:
                break
            L = L2
        else:
            raise ValueError("no stable lattice found; is the group finite?")
        B = ExactMatrix(L).transpose()
        Bi = B.inverse()
        self.basis, self.basis_inv = B, Bi
        self.int_generators = []
        for R in real:
            X = Bi @ ExactMatrix(R) @ B
            if not X.is_integral():
                raise ValueError("generator does not preserve the computed lattice")
            self.int_generators.append([[int(x) for x in r] for r in X.rows])
        # trace coordinate a of B X B^-1 is sum_{r,s} X[r,s] W[a][r][s]
        phi = self.phi
        W = [[[sum(B[i * phi + a, r] * Bi[s, i * phi] for i in range(self.n)) for s in range(N)]
              for r in range(N)] for a in range(phi)]
        den = 1
        for plane in W:
            for row in plane:
                for x in row:
                    den = _lcm(den, Fraction(x).denominator)
        self.trace_den = den
        self.trace_weights = np.array([[[int(x * den) for x in row] for row in plane] for plane in W],
                                      dtype=np.int64)

    def to_exact(self, x) -> ExactMatrix:
        R = self.basis @ ExactMatrix(np.asarray(x).tolist()) @ self.basis_inv
        phi, m = self.phi, self.m
        return ExactMatrix([[_norm_trace(Cyc(m, [R[i * phi + a, j * phi] for a in range(phi)]))
                             for j in range(self.n)] for i in range(self.n)])

    def from_exact(self, g: ExactMatrix):
        X = self.basis_inv @ ExactMatrix(_realify(g, self.m)) @ self.basis
        return [[int(v) for v in r] for r in X.rows] if X.is_integral() else None

    def signatures(self, elements: np.ndarray, exps, d_max: int, chunk: int = 50_000) -> Counter:
        if exps is None:
            exps = np.zeros(len(elements), dtype=np.int64)
        out: Counter = Counter()
        phi = self.phi
        for start in range(0, len(elements), chunk):
            g = elements[start:start + chunk].astype(np.int64)
            sig = np.empty((len(g), 1 + d_max * phi), dtype=np.int64)
            sig[:, 0] = exps[start:start + chunk]
            P = g
            for k in range(d_max):
                sig[:, 1 + k * phi:1 + (k + 1) * phi] = np.einsum("nrs,ars->na", P, self.trace_weights)
                if k + 1 < d_max:
                    P = P @ g
            rows, counts = np.unique(sig, axis=0, return_counts=True)
            for r, c in zip(rows, counts):
                tr = tuple(_norm_trace(Cyc(self.m, [Fraction(int(v), self.trace_den)
                                                     for v in r[1 + k * phi:1 + (k + 1) * phi]]))
                           for k in range(d_max))
                out[(int(r[0]),) + tr] += int(c)
        return out


# ---------------------------------------------------------------------------
# Molien averages


def _average(weighted: list[tuple[int, object, tuple]], order: int, d_max: int, K: int) -> list[int]:
    """(count, character value or None, traces) -> integer dims for d = 1..d_max."""
    totals = [Fraction(0)] * (d_max + 1)
    cyc_totals: list = [None] * (d_max + 1)
    for count, lam_inv, tr in weighted:
        h = complete_homogeneous(tr, d_max)
        for d in range(1, d_max + 1):
            term = h[d] * count
            if lam_inv is not None:
                term = term * lam_inv
            if isinstance(term, Cyc):
                cyc_totals[d] = term if cyc_totals[d] is None else cyc_totals[d] + term
            else:
                totals[d] += term
    dims = []
    for d in range(1, d_max + 1):
        s = totals[d]
        if cyc_totals[d] is not None:
            c = cyc_totals[d] + s
            if not c.is_rational():
                raise MolienError(f"degree {d}: average is not rational")
            s = c.to_rational()
        val = Fraction(s) / order
        if val.denominator != 1 or val < 0:
            raise MolienError(f"degree {d}: Molien average {val} is not a nonnegative integer")
        dims.append(int(val))
    return dims


def _check_dmax(d_max: int):
    if not 1 <= d_max <= MAX_DEGREE:
        raise ValueError(f"d_max must lie in 1..{MAX_DEGREE}")


def invariant_dims(G: MatrixGroup | TraceTable, d_max: int, jobs: int = 1) -> list[int]:
    """Dimensions of degree-d invariant polynomials for d = 1..d_max."""
    _check_dmax(d_max)
    if isinstance(G, TraceTable):
        if G.dmax < d_max:
            raise ValueError("trace table does not reach the requested degree")
        weighted = [(size, None, tr[:d_max]) for size, tr in G.records]
        return _average(weighted, G.order, d_max, 1)
    counts = G.signature_counts(d_max, jobs)
    weighted = [(c, None, sig[1:]) for sig, c in counts.items()]
    return _average(weighted, G.order(), d_max, 1)


def semi_invariant_dims(G: MatrixGroup, d_max: int, character=None, jobs: int = 1) -> list[int]:
    """Dimensions of {P of degree d : P(g x) = lambda(g) P(x) for all g}.

    ``character`` lists lambda on the generators (roots of unity as ints or
    :class:`Cyc`); it defaults to the one the group was built with.
    """
    _check_dmax(d_max)
    if character is not None:
        G = MatrixGroup(G.generators, G.cap, G.name, character)
    if G.character is None:
        return invariant_dims(G, d_max, jobs)
    K = G.char_order
    counts = G.signature_counts(d_max, jobs)
    weighted = []
    for sig, c in counts.items():
        ex = sig[0] % K
        lam_inv = None
        if ex:
            lam_inv = Fraction(-1) if K == 2 else Cyc.zeta(K, -ex)
        weighted.append((c, lam_inv, sig[1:]))
    return _average(weighted, G.order(), d_max, K)


def group_order(G: MatrixGroup) -> int:
    return G.order()


def molien_cross_check(G: MatrixGroup, d_max: int) -> tuple[list[int], list[int]]:
    """Dims from the full element sum and from a re-read trace table; they must agree."""
    direct = invariant_dims(G, d_max)
    table = TraceTable.from_text(G.trace_table(d_max).to_text())
    via_table = invariant_dims(table, d_max)
    if direct != via_table:
        raise MolienError(f"enumeration {direct} and trace table {via_table} disagree")
    return direct, via_table


# ---------------------------------------------------------------------------
# Builders


def build_deleted_permutation_rep(G: PermGroup, name: str = "") -> MatrixGroup:
    """Permutation action on the sum-zero lattice, basis e_1 - e_2, ..., e_{r-1} - e_r."""
    if not G.is_transitive():
        raise ValueError("group must be transitive")
    r = G.degree
    gens = []
    for p in G.generators:
        M = [[0] * (r - 1) for _ in range(r - 1)]
        for j in range(r - 1):
            a, b = p.images[j], p.images[j + 1]
            lo, hi, sign = (a, b, 1) if a < b else (b, a, -1)
            for i in range(lo, hi):
                M[i][j] += sign
        gens.append(M)
    return MatrixGroup(gens, name=name or f"deleted permutation rep of degree {r}")


_DYNKIN_EDGES = {
    "E6": [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)],
    "E7": [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)],
}

WEYL_ORDERS = {"E6": 51840, "E7": 2903040}


def cartan_matrix(root_system: str) -> list[list[int]]:
    """Cartan matrix in Bourbaki numbering."""
    edges = _DYNKIN_EDGES[root_system]
    n = max(max(e) for e in edges)
    A = [[2 * (i == j) for j in range(n)] for i in range(n)]
    for i, j in edges:
        A[i - 1][j - 1] = A[j - 1][i - 1] = -1
    return A


def simple_reflections(root_system: str) -> list[list[list[int]]]:
    """s_i(alpha_j) = alpha_j - A_ij alpha_i, as matrices acting on root coordinates."""
    A = cartan_matrix(root_system)
    n = len(A)
    out = []
    for i in range(n):
        s = [[int(r == c) for c in range(n)] for r in range(n)]
        for c in range(n):
            s[i][c] -= A[i][c]
        out.append(s)
    return out


def build_reflection_rep(root_system: str, twist: str | None = None) -> MatrixGroup:
    """Weyl group in the root basis; ``twist="sign"`` gives g -> det(g) g.

    Reflections have determinant -1, so the twisted group is generated by the
    negated reflections.
    """
    if root_system not in _DYNKIN_EDGES:
        raise ValueError(f"unsupported root system {root_system!r}")
    gens = simple_reflections(root_system)
    if twist is None:
        return MatrixGroup(gens, name=f"W({root_system})")
    if twist != "sign":
        raise ValueError(f"unknown twist {twist!r}")
    return MatrixGroup([[[-x for x in r] for r in s] for s in gens], name=f"W({root_system}) twisted by sign")


def longest_element(root_system: str) -> list[list[int]]:
    """w_0 as a reduced word product, found by descending the positive roots."""
    gens = [np.array(s, dtype=np.int64) for s in simple_reflections(root_system)]
    n = len(gens)
    w = np.eye(n, dtype=np.int64)
    # right-multiplying by s_i lengthens w exactly when w(alpha_i) is positive
    while True:
        step = next((i for i in range(n) if (w[:, i] >= 0).all()), None)
        if step is None:
            return w.tolist()
        w = w @ gens[step]


def twist_descends(root_system: str) -> bool:
    """True iff the longest element is -I, so det(w0) w0 is the identity."""
    w0 = longest_element(root_system)
    n = len(w0)
    return all(w0[i][j] == -(i == j) for i in range(n) for j in range(n)) and (-1) ** n == -1


def deleted_rep_from_name(name: str) -> MatrixGroup:
    from . import permgroups as pg

    table = {
        "S5": lambda: pg.symmetric_group(5),
        "S6": lambda: pg.symmetric_group(6),
        "A7": lambda: pg.alternating_group(7),
        "S7": lambda: pg.symmetric_group(7),
        "A8": lambda: pg.alternating_group(8),
        "S8": lambda: pg.symmetric_group(8),
        "PSL27-7": pg.psl27_on_7_points,
        "PSL27-8": pg.psl27_on_8_points,
    }
    if name not in table:
        raise KeyError(name)
    return build_deleted_permutation_rep(table[name](), name=f"{name} deleted permutation rep")


BUILTIN_GROUPS = {
    "S5": "deleted", "S6": "deleted", "A7": "deleted", "S7": "deleted",
    "A8": "deleted", "S8": "deleted", "PSL27-7": "deleted", "PSL27-8": "deleted",
    "WE6": "reflection", "WE7": "reflection", "WE7-sign": "reflection",
}


def builtin_group(name: str) -> MatrixGroup:
    kind = BUILTIN_GROUPS.get(name)
    if kind == "deleted":
        return deleted_rep_from_name(name)
    if name == "WE6":
        return build_reflection_rep("E6")
    if name == "WE7":
        return build_reflection_rep("E7")
    if name == "WE7-sign":
        return build_reflection_rep("E7", twist="sign")
    raise KeyError(f"unknown builtin group {name!r}; known: {', '.join(sorted(BUILTIN_GROUPS))}")


@dataclass
class SymmetricFunctionOracle:
    """Invariant counts for S_r on the deleted rep: partitions of d into parts 2..r."""

    r: int
    cache: dict = field(default_factory=dict)

    def dim(self, d: int) -> int:
        return _partitions(d, 2, self.r)

    def dims(self, d_max: int) -> list[int]:
        return [self.dim(d) for d in range(1, d_max + 1)]


def _partitions(d: int, lo: int, hi: int) -> int:
    if d == 0:
        return 1
    return sum(_partitions(d - k, k, hi) for k in range(lo, min(d, hi) + 1))


# ---------------------------------------------------------------------------
# Group files: "dim: n", optional "name:" / "provenance:" lines, then
# generator matrices separated by blank lines (each block may start with its
# own "conductor: m" line).


def format_matrix_group(G: MatrixGroup, provenance: str = "") -> str:
    from .exact import format_matrix

    head = [f"dim: {G.dim}"]
    if G.name:
        head.append(f"name: {G.name}")
    if provenance:
        head.append(f"provenance: {provenance}")
    parts = ["\n".join(head)] + [format_matrix(g) for g in G.generators]
    return "\n\n".join(parts) + "\n"


def parse_matrix_group(text: str, cap: int = ELEMENT_CAP) -> tuple[MatrixGroup, str | None]:
    """(group, provenance) from a group file."""
    from .exact import parse_matrix

    n = None
    name = ""
    prov = None
    blocks, cur = [], []
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("#"):
            continue
        key, sep, val = line.partition(":")
        if sep and key in ("dim", "name", "provenance") and not cur:
            if key == "dim":
                n = int(val)
            elif key == "name":
                name = val.strip()
            else:
                prov = val.strip()
            continue
        if line:
            cur.append(line)
        elif cur:
            blocks.append(cur)
            cur = []
    if cur:
        blocks.append(cur)
    if n is None:
        raise ValueError("group file needs a 'dim: n' header")
    gens = [parse_matrix("\n".join(b)) for b in blocks]
    for g in gens:
        if g.shape != (n, n):
            raise ValueError(f"generator of shape {g.shape}, expected {n}x{n}")
    return MatrixGroup(gens, cap, name), prov


def parse_character(text: str) -> list:
    """One root of unity per line; an optional leading "conductor: m" line."""
    from .exact import parse_scalar

    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    m = 1
    if lines and lines[0].startswith("conductor:"):
        m = int(lines[0].split(":", 1)[1])
        lines = lines[1:]
    return [parse_scalar(ln, m) for ln in lines]


def we7_sign_trace_table(d_max: int = 8, jobs: int = 1) -> TraceTable:
    """Regenerate the cached table for the sign-twisted W(E7) group by full enumeration."""
    G = build_reflection_rep("E7", twist="sign")
    return G.trace_table(
        d_max,
        jobs,
        provenance=(
            "toricverify full enumeration of the group generated by the negated simple "
            "reflections of E7 (root basis, Bourbaki numbering); records group elements "
            "by equal power traces"
        ),
    )
