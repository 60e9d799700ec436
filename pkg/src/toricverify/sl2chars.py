"""Seven-dimensional characters of PSL2(13) and SL2(8), derived from scratch.

Both are produced as exact trace tables for the Molien machinery.

* PSL2(13): the representation induced from the Borel subgroup by the
  Legendre character is 14-dimensional with a 2-dimensional commutant.  A
  commutant element J with J^2 = c I splits it into two 7-dimensional
  pieces whose characters are (tr g +- tr gJ / sqrt c) / 2.  Since sqrt 13
  is a Gauss sum, everything stays in Q(zeta_13).
* SL2(8): the cuspidal class functions of degree 7 are written down
  from the torus data and certified as irreducible characters.  Brauer's
  characterization reduces this to integrality on the elementary subgroups,
  and the certificate also checks that these all sit inside the unipotent
  radical or one of the two tori.  Norm one and a positive degree then
  force irreducibility.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .exact import Cyc, nullspace

Mat = tuple[int, int, int, int]


class GF:
    """GF(p^k) with elements encoded as integers 0..q-1 (base-p digits)."""

    MODULI = {(2, 3): (1, 1, 0), (2, 6): (1, 1, 0, 0, 0, 0)}  # x^3+x+1, x^6+x+1

    def __init__(self, p: int, k: int = 1):
        self.p, self.k, self.q = p, k, p ** k
        q = self.q
        if k > 1:
            mod = self.MODULI[(p, k)]
        digits = [self._digits(x) for x in range(q)]
        enc = {tuple(d): x for x, d in enumerate(digits)}
        self.add = [[enc[tuple((a + b) % p for a, b in zip(digits[x], digits[y]))] for y in range(q)]
                    for x in range(q)]
        self.mul = [[0] * q for _ in range(q)]
        for x in range(q):
            for y in range(q):
                prod = [0] * (2 * k - 1)
                for i, a in enumerate(digits[x]):
                    if a:
                        for j, b in enumerate(digits[y]):
                            prod[i + j] = (prod[i + j] + a * b) % p
                for deg in range(2 * k - 2, k - 1, -1):
                    c = prod[deg]
                    if c:
                        prod[deg] = 0
                        for i in range(k):
                            prod[deg - k + i] = (prod[deg - k + i] - c * mod[i]) % p
                self.mul[x][y] = enc[tuple(prod[:k])]
        self.neg = [next(y for y in range(q) if self.add[x][y] == 0) for x in range(q)]
        self.inv = [0] + [next(y for y in range(1, q) if self.mul[x][y] == 1) for x in range(1, q)]
        self.generator = next(g for g in range(2, q) if self.order(g) == q - 1) if q > 2 else 1

    def _digits(self, x: int) -> list[int]:
        return [(x // self.p ** i) % self.p for i in range(self.k)]

    def pow(self, x: int, n: int) -> int:
        r = 1
        for _ in range(n % (self.q - 1) if x else n):
            r = self.mul[r][x]
        return r

    def order(self, x: int) -> int:
        n, y = 1, x
        while y != 1:
            y, n = self.mul[y][x], n + 1
        return n

    def sub(self, x: int, y: int) -> int:
        return self.add[x][self.neg[y]]


def sl2_elements(F: GF, entries=None) -> list[Mat]:
    vals = range(F.q) if entries is None else sorted(entries)
    out = []
    for a in vals:
        for b in vals:
            for c in vals:
                for d in vals:
                    if F.sub(F.mul[a][d], F.mul[b][c]) == 1:
                        out.append((a, b, c, d))
    return out


def mat_mul(F: GF, x: Mat, y: Mat) -> Mat:
    a, b, c, d = x
    e, f, g, h = y
    m, ad = F.mul, F.add
    return (ad[m[a][e]][m[b][g]], ad[m[a][f]][m[b][h]], ad[m[c][e]][m[d][g]], ad[m[c][f]][m[d][h]])


def mat_inv(F: GF, x: Mat) -> Mat:
    a, b, c, d = x
    return (d, F.neg[b], F.neg[c], a)


def powers(F: GF, x: Mat, kmax: int) -> list[Mat]:
    out, y = [], (1, 0, 0, 1)
    for _ in range(kmax):
        y = mat_mul(F, y, x)
        out.append(y)
    return out


def _trace_table(F: GF, elements, chi, dmax: int, provenance: str):
    from .molien import TraceTable

    counts: dict[tuple, int] = defaultdict(int)
    for g in elements:
        counts[tuple(chi(h) for h in powers(F, g, dmax))] += 1
    m = 1
    for key in counts:
        for v in key:
            if isinstance(v, Cyc):
                m = max(m, v.m)
    records = [(n, tuple(v if isinstance(v, Cyc) and not v.is_rational() else _rat(v) for v in key))
               for key, n in sorted(counts.items(), key=lambda kv: (-kv[1], str(kv[0])))]
    return TraceTable(len(elements), 7, dmax, provenance, records, m)


def _rat(v):
    if isinstance(v, Cyc):
        q = v.to_rational()
        return int(q) if q.denominator == 1 else q
    return v


def _norm(values, order: int) -> Fraction:
    total = sum((v * v.conjugate() if isinstance(v, Cyc) else v * v for v in values), Cyc(1, [0]))
    return total.to_rational() / order


# ---------------------------------------------------------------------------
# PSL2(13) from an induced monomial representation


def legendre(F: GF, x: int) -> int:
    return 1 if F.pow(x, (F.q - 1) // 2) == 1 else -1


@dataclass
class InducedSplit:
    field: GF
    elements: list[Mat]     # SL2(q) elements, one per +-pair
    J: list[list[Fraction]]  # traceless commutant element
    c: Fraction              # J^2 = c I
    sqrt_c: Cyc
    degree: int

    def __post_init__(self):
        self.inv_sqrt_c = self.sqrt_c.inverse()

    def monomial(self, g: Mat) -> tuple[list[int], list[int]]:
        return _monomial(self.field, g)

    def character(self, g: Mat, sign: int = 1) -> Cyc:
        perm, signs = self.monomial(g)
        t = sum(signs[P] for P in range(len(perm)) if perm[P] == P)
        tj = sum(signs[P] * self.J[P][perm[P]] for P in range(len(perm)))
        return (self.inv_sqrt_c * (sign * tj) + t) * Fraction(1, 2)


def _point(F: GF, u: int, v: int) -> int:
    """Index of [u:v] in P^1: 0 for [1:0], 1 + u/v otherwise."""
    return 0 if v == 0 else 1 + F.mul[u][F.inv[v]]


def _coset_rep(F: GF, P: int) -> Mat:
    return (1, 0, 0, 1) if P == 0 else (P - 1, F.neg[1], 1, 0)


def _monomial(F: GF, g: Mat) -> tuple[list[int], list[int]]:
    perm, signs = [], []
    for P in range(F.q + 1):
        u, v = (1, 0) if P == 0 else (P - 1, 1)
        Q = _point(F, F.add[F.mul[g[0]][u]][F.mul[g[1]][v]], F.add[F.mul[g[2]][u]][F.mul[g[3]][v]])
        h = mat_mul(F, mat_inv(F, _coset_rep(F, Q)), mat_mul(F, g, _coset_rep(F, P)))
        assert h[2] == 0
        perm.append(Q)
        signs.append(legendre(F, h[0]))
    return perm, signs


def gauss_sqrt(p: int) -> Cyc:
    """sqrt(p) for p = 1 mod 4 as the quadratic Gauss sum in Q(zeta_p)."""
    F = GF(p)
    return sum((Cyc.zeta(p, a) * legendre(F, a) for a in range(1, p)), Cyc(p, [0]))


def induced_split(p: int = 13) -> InducedSplit:
    if p % 4 != 1:
        raise ValueError("the Gauss-sum square root needs p = 1 mod 4")
    F = GF(p)
    gens = [(1, 1, 0, 1), (0, F.neg[1], 1, 0)]
    n = p + 1
    rows = []
    for g in gens:
        perm, signs = _monomial(F, g)
        # (rho J)[perm k, j] = s_k J[k, j];  (J rho)[perm k, j] = s_j J[perm k, perm j]
        for k in range(n):
            for j in range(n):
                row = [Fraction(0)] * (n * n)
                row[k * n + j] += signs[k]
                row[perm[k] * n + perm[j]] -= signs[j]
                rows.append(row)
    basis = nullspace(rows, n * n)
    if len(basis) != 2:
        raise ValueError(f"commutant has dimension {len(basis)}, expected 2")
    J = next([list(v[i * n:(i + 1) * n]) for i in range(n)] for v in basis
             if any(v[i * n + j] for i in range(n) for j in range(n) if i != j))
    shift = sum(J[i][i] for i in range(n)) / n
    J = [[J[i][j] - (shift if i == j else 0) for j in range(n)] for i in range(n)]
    J2 = [[sum(J[i][k] * J[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    c = J2[0][0]
    if any(J2[i][j] != (c if i == j else 0) for i in range(n) for j in range(n)):
        raise ValueError("commutant element does not square to a scalar")
    r = c / p
    num, den = _isqrt(r.numerator), _isqrt(r.denominator)
    if num is None or den is None:
        raise ValueError(f"J^2 = {c} is not p times a rational square")
    sqrt_c = gauss_sqrt(p) * Fraction(num, den)
    if sqrt_c * sqrt_c != Cyc(1, [c]):
        raise ValueError("Gauss sum check failed")
    elements, seen = [], set()
    for g in sl2_elements(F):
        if g in seen:
            continue
        minus = tuple(F.neg[x] for x in g)
        seen.update((g, minus))
        elements.append(g)
    return InducedSplit(F, elements, J, c, sqrt_c, n // 2)


def _isqrt(n: int):
    r = isqrt(n)
    return r if r * r == n else None


def psl2_13_trace_table(dmax: int = 8):
    S = induced_split(13)
    F = S.field
    cache: dict[Mat, Cyc] = {}

    def chi(h):
        if h not in cache:
            cache[h] = S.character(h)
        return cache[h]

    values = [chi(g) for g in S.elements]
    if _norm(values, len(S.elements)) != 1 or values[S.elements.index((1, 0, 0, 1))] != Cyc(1, [7]):
        raise ValueError("split character is not irreducible of degree 7")
    prov = ("derived by toricverify.sl2chars.psl2_13_trace_table: PSL2(13), 7-dim constituent of the "
            "representation induced from the Borel subgroup by the Legendre character, split by its "
            "commutant; norm 1 checked")
    return _trace_table(F, S.elements, chi, dmax, prov)


# ---------------------------------------------------------------------------
# SL2(8) cuspidal characters


@dataclass
class SL2EvenData:
    field: GF          # GF(64) containing GF(8)
    sub: list[int]     # the GF(8) elements
    elements: list[Mat]
    split_traces: dict[int, int]     # trace -> k with eigenvalues gamma^{+-k}
    nonsplit_traces: dict[int, int]  # trace -> j with eigenvalues alpha^{+-j}
    gamma: int
    alpha: int


def sl2_8_data() -> SL2EvenData:
    F = GF(2, 6)
    sub = [x for x in range(F.q) if F.pow(x, 8) == x]
    g = F.generator
    gamma, alpha = F.pow(g, 9), F.pow(g, 7)
    split = {F.add[F.pow(gamma, k)][F.pow(gamma, 7 - k)]: k for k in range(1, 4)}
    nonsplit = {F.add[F.pow(alpha, j)][F.pow(alpha, 9 - j)]: j for j in range(1, 5)}
    if set(split) | set(nonsplit) != set(sub) - {0} or set(split) & set(nonsplit):
        raise ValueError("torus traces do not partition the nonzero traces")
    return SL2EvenData(F, sub, sl2_elements(F, sub), split, nonsplit, gamma, alpha)


def cuspidal_character(D: SL2EvenData, m: int):
    """Degree-7 class function attached to the order-9 torus character j -> zeta_9^{mj}."""
    z = [Cyc.zeta(9, (m * j) % 9) for j in range(9)]

    def chi(x: Mat) -> Cyc:
        t = D.field.add[x[0]][x[3]]
        if x == (1, 0, 0, 1):
            return Cyc(9, [7])
        if t == 0:
            return Cyc(9, [-1])
        if t in D.split_traces:
            return Cyc(9, [0])
        j = D.nonsplit_traces[t]
        return -(z[j] + z[(9 - j) % 9])

    return chi


def _cyclic_multiplicities(chi, F, x: Mat) -> list:
    els = [(1, 0, 0, 1)] + powers(F, x, 40)
    n = els.index((1, 0, 0, 1), 1)
    vals = [chi(els[k]) for k in range(n)]
    vals = [_rat(v) if v.is_rational() else v for v in vals]
    return [sum((vals[k] * Cyc.zeta(n, (-i * k) % n) for k in range(n)), Cyc(n, [0])) / n for i in range(n)]


def _abs_trace(F: GF, b: int) -> int:
    return F.add[F.add[b][F.mul[b][b]]][F.pow(b, 4)]


def brauer_certificate(D: SL2EvenData, chi) -> dict:
    """Integrality of chi on the elementary subgroups plus its norm and degree."""
    F = D.field
    u = [(1, b, 0, 1) for b in D.sub]
    t7 = (D.gamma, 0, 0, F.inv[D.gamma])
    # an order-9 element: companion matrix of x^2 + t x + 1 for a nonsplit trace
    tn = next(t for t, j in D.nonsplit_traces.items() if j == 1)
    t9 = (0, 1, 1, tn)  # det = 0*t - 1*1 = 1 in characteristic 2
    cent = {}
    for name, x in (("unipotent", u[1]), ("split", t7), ("nonsplit", t9)):
        cent[name] = sum(1 for y in D.elements if mat_mul(F, x, y) == mat_mul(F, y, x))
    # U is elementary abelian; its characters are b -> (-1)^{Tr(cb)}
    mult_u = []
    for c in D.sub:
        s = sum((chi(g) * (1 if _abs_trace(F, F.mul[c][g[1]]) == 0 else -1) for g in u), Cyc(1, [0]))
        mult_u.append(s / 8)
    mults = {"U": mult_u, "C7": _cyclic_multiplicities(chi, F, t7), "C9": _cyclic_multiplicities(chi, F, t9)}
    integral = all(v.is_rational() and v.to_rational().denominator == 1 and v.to_rational() >= 0
                   for vs in mults.values() for v in vs)
    norm = _norm([chi(g) for g in D.elements], len(D.elements))
    return {
        "centralizer_orders": cent,
        "elementary_multiplicities": {k: [str(v) for v in vs] for k, vs in mults.items()},
        "integral": integral,
        "norm": norm,
        "degree": chi((1, 0, 0, 1)),
        "certified": integral and norm == 1 and cent == {"unipotent": 8, "split": 7, "nonsplit": 9},
    }


def sl2_8_trace_table(kind: str = "rational", dmax: int = 8):
    """Trace table of a degree-7 cuspidal character: torus character of order 3 or 9."""
    m = {"rational": 3, "galois": 1}[kind]
    D = sl2_8_data()
    chi = cuspidal_character(D, m)
    cert = brauer_certificate(D, chi)
    if not cert["certified"]:
        raise ValueError(f"class function is not certified as an irreducible character: {cert}")
    prov = (f"derived by toricverify.sl2chars.sl2_8_trace_table({kind!r}): cuspidal character of SL2(8) "
            f"for a torus character of order {9 // gcd(m, 9)}; certified irreducible by "
            "integrality on the elementary subgroups (U, C7, C9) and norm 1")
    return _trace_table(D.field, D.elements, chi, dmax, prov)


DERIVED_TABLES = {
    "psl2_13_7dim.trace": psl2_13_trace_table,
    "sl2_8_7dim_rational.trace": lambda dmax=8: sl2_8_trace_table("rational", dmax),
    "sl2_8_7dim_galois.trace": lambda dmax=8: sl2_8_trace_table("galois", dmax),
}


def derived_asset_text(name: str) -> str:
    return DERIVED_TABLES[name]().to_text()
