"""Exact multivariate polynomials and their behaviour under linear substitution.

Convention: ``act(g, p)`` is the polynomial x -> p(g x), with x a column
vector.  This is a right action, act(g, act(h, p)) == act(h @ g, p).  Feeding
the transpose of a generator into a row-vector substitution gives the same
polynomial, which is how the classical computer-algebra listings phrase it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb

from .exact import Cyc, ExactMatrix, format_cyc, parse_cyc, rank


def _canon(c):
    if isinstance(c, Cyc) and c.is_rational():
        c = c.to_rational()
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def _is_zero(c) -> bool:
    return c.is_zero() if isinstance(c, Cyc) else c == 0


class Poly:
    """Sparse polynomial in ``nvars`` variables over Q or a cyclotomic field."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError("exponent length differs from the number of variables")
            if not _is_zero(c):
                clean[e] = _canon(c)
        self.terms = clean

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exps, c=1) -> "Poly":
        return cls(len(exps), {tuple(exps): c})

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(self.nvars, {e: c * other for e, c in self.terms.items()})
        if other.nvars != self.nvars:
            raise ValueError("variable count mismatch")
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return Poly.const(self.nvars, other)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and not (self - other).terms

    def __hash__(self):
        return hash((self.nvars, frozenset((e, str(c)) for e, c in self.terms.items())))

    # -- structure -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def degree(self) -> int:
        return max(self.degrees(), default=-1)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), 0)

    def monomials(self) -> list[tuple[int, ...]]:
        return sorted(self.terms, reverse=True)

    def derivative(self, i: int) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Poly(self.nvars, out)

    def evaluate(self, point):
        total = 0
        for e, c in self.terms.items():
            term = c
            for x, a in zip(point, e):
                if a:
                    term = term * x ** a
            total = term + total
        return _canon(total) if not isinstance(total, int) else total

    def __repr__(self):
        return f"Poly({self.nvars}, {format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


# ---------------------------------------------------------------------------
# Text format: "c * x1^a1 x2^a2 + ..."


def _fmt_coeff(c) -> str:
    if isinstance(c, Cyc):
        return f"({format_cyc(c)})"
    return str(c)


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    out = ""
    for e in p.monomials():
        c = p.terms[e]
        mono = " ".join(f"x{i + 1}" + (f"^{a}" if a > 1 else "") for i, a in enumerate(e) if a)
        neg = not isinstance(c, Cyc) and c < 0
        if neg:
            c = -c
        if not mono:
            body = _fmt_coeff(c)
        elif c == 1:
            body = mono
        else:
            body = f"{_fmt_coeff(c)} * {mono}"
        if not out:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out


_VAR = re.compile(r"x(\d+)(?:\^(\d+))?")


def _split_terms(text: str) -> list[str]:
    """Split on top-level + and - (parentheses protect cyclotomic literals)."""
    terms, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-" and cur.strip() and not cur.rstrip().endswith(("*", "^")):
            terms.append(cur)
            cur = "" if ch == "+" else "-"
            continue
        cur += ch
    if cur.strip():
        terms.append(cur)
    return terms


def parse_poly(text: str, nvars: int | None = None, conductor: int = 1) -> Poly:
    """Inverse of :func:`format_poly`; coefficients may be ``(... z ...)`` literals."""
    text = text.strip()
    if nvars is None:
        nvars = max((int(m.group(1)) for m in _VAR.finditer(text)), default=1)
    out: dict = {}
    for term in _split_terms(text):
        t = term.strip()
        sign = 1
        while t.startswith(("-", "+")):
            if t[0] == "-":
                sign = -sign
            t = t[1:].strip()
        coeff = Fraction(1)
        m = re.match(r"\(([^()]*)\)", t)
        if m:
            coeff = parse_cyc(m.group(1), conductor) if "z" in m.group(1) else Fraction(m.group(1).replace(" ", ""))
            t = t[m.end():]
        else:
            m = re.match(r"\d+(?:/\d+)?", t)
            if m:
                coeff = Fraction(m.group(0))
                t = t[m.end():]
        t = t.strip().lstrip("*").strip()
        exps = [0] * nvars
        rest = _VAR.sub("", t).replace("*", "").strip()
        if rest:
            raise ValueError(f"cannot parse term {term!r}")
        for vm in _VAR.finditer(t):
            i = int(vm.group(1)) - 1
            if not 0 <= i < nvars:
                raise ValueError(f"variable x{i + 1} out of range")
            exps[i] += int(vm.group(2) or 1)
        e = tuple(exps)
        out[e] = out.get(e, 0) + coeff * sign
    return Poly(nvars, out)


# ---------------------------------------------------------------------------
# Linear substitution


def act(g, p: Poly) -> Poly:
    """x -> p(g x)."""
    g = g if isinstance(g, ExactMatrix) else ExactMatrix(g)
    if g.shape != (p.nvars, p.nvars):
        raise ValueError(f"matrix of shape {g.shape} cannot act on {p.nvars} variables")
    n = p.nvars
    forms = []
    for i in range(n):
        forms.append(Poly(n, {tuple(int(k == j) for k in range(n)): g[i, j] for j in range(n)}))
    cache: dict[tuple[int, int], Poly] = {}

    def power(i: int, a: int) -> Poly:
        key = (i, a)
        if key not in cache:
            cache[key] = forms[i] if a == 1 else power(i, a - 1) * forms[i]
        return cache[key]

    out = Poly(n)
    for e, c in p.terms.items():
        term = Poly.const(n, c)
        for i, a in enumerate(e):
            if a:
                term = term * power(i, a)
        out = out + term
    return out


@dataclass
class SemiInvariance:
    semi_invariant: bool
    multipliers: list
    failing_generator: int | None = None
    counterexample: tuple[int, ...] | None = None

    @property
    def invariant(self) -> bool:
        return self.semi_invariant and all(m == 1 for m in self.multipliers)


def _div(a, b):
    if isinstance(a, Cyc) or isinstance(b, Cyc):
        return (a if isinstance(a, Cyc) else Cyc.const(b.m, a)) / b
    return Fraction(a) / Fraction(b)


def is_semi_invariant(p: Poly, gens) -> SemiInvariance:
    """For each generator test act(g, p) == c p; report c or a witness monomial."""
    if p.is_zero():
        return SemiInvariance(True, [1] * len(gens))
    lead = p.monomials()[0]
    mults = []
    for idx, g in enumerate(gens):
        q = act(g, p)
        c = _div(q.coefficient(lead), p.terms[lead])
        c = _canon(c)
        diff = q - p * c
        if not diff.is_zero():
            return SemiInvariance(False, mults, idx, diff.monomials()[0])
        mults.append(c)
    return SemiInvariance(True, mults)


# ---------------------------------------------------------------------------
# Named polynomials


def burkhardt_quartic() -> Poly:
    """x1 (x1^3 + ... + x5^3) + 3 x2 x3 x4 x5."""
    x = [Poly.var(5, i) for i in range(5)]
    return x[0] * sum((xi ** 3 for xi in x), Poly(5)) + 3 * x[1] * x[2] * x[3] * x[4]


# Invariant hermitian form for the reflections below: 2|x1|^2 + |x2|^2 + ... + |x5|^2.
BURKHARDT_FORM = (2, 1, 1, 1, 1)


def burkhardt_nodes() -> list[tuple]:
    """The 45 singular points of the Burkhardt quartic.

    With x1 = 0 the gradient forces two coordinates 1, -w^a (w a cube root of
    unity) and the rest zero, giving 18 points.  With x1 = 1 it forces
    x_i^3 = -1 and x2 x3 x4 x5 = 1, so (1, -w^a2, ..., -w^a5) with
    a2 + ... + a5 = 0 mod 3, giving 27 more.
    """
    w = [Cyc.zeta(3, a) for a in range(3)]
    out = []
    for i in range(1, 5):
        for j in range(i + 1, 5):
            for a in range(3):
                v = [0] * 5
                v[i], v[j] = 1, -w[a]
                out.append(tuple(v))
    for a2 in range(3):
        for a3 in range(3):
            for a4 in range(3):
                a5 = (-a2 - a3 - a4) % 3
                out.append((1,) + tuple(-w[a] for a in (a2, a3, a4, a5)))
    return [tuple(_canon(x) if isinstance(x, Cyc) else x for x in v) for v in out]


def hermitian_reflection(root, form=BURKHARDT_FORM) -> ExactMatrix:
    """Order-2 reflection x -> x - 2 r <r, x> / <r, r> for <u, v> = sum form_i conj(u_i) v_i."""
    n = len(root)
    r = [x if isinstance(x, Cyc) else Cyc(1, [x]) for x in root]
    norm = sum((r[i].conjugate() * r[i] * form[i] for i in range(n)), Cyc(1, [0]))
    rows = []
    for i in range(n):
        rows.append([_canon(Cyc(1, [int(i == j)]) - r[i] * r[j].conjugate() * form[j] * 2 / norm) for j in range(n)])
    return ExactMatrix(rows)


def burkhardt_generators() -> list[ExactMatrix]:
    """Five node reflections: one through (1, -1, -1, -1, -1), three transpositions, one twisted swap."""
    w = Cyc.zeta(3, 1)
    roots = [(1, -1, -1, -1, -1), (0, 1, -1, 0, 0), (0, 0, 1, -1, 0), (0, 0, 0, 1, -1), (0, 0, 0, 1, -w)]
    return [hermitian_reflection(r) for r in roots]


KLEIN_PRINTED_TERMS = [(0, 1, 2), (1, 2, 2), (2, 3, 4), (3, 4, 2), (4, 0, 2)]


def klein_cubic(reading: str = "cyclic") -> Poly:
    """Sum of x_i x_{i+1}^2 (indices mod 5).

    ``reading="printed"`` keeps the third term as x3 x4^4, which is not cubic;
    use :func:`klein_readings` to see both.
    """
    x = [Poly.var(5, i) for i in range(5)]
    out = Poly(5)
    for i, j, a in KLEIN_PRINTED_TERMS:
        if reading == "cyclic":
            a = 2
        elif reading != "printed":
            raise ValueError(f"unknown reading {reading!r}")
        out = out + x[i] * x[j] ** a
    return out


@dataclass
class KleinReading:
    name: str
    poly: Poly
    homogeneous: bool
    degrees: set[int]


def klein_readings() -> list[KleinReading]:
    out = []
    for name in ("printed", "cyclic"):
        p = klein_cubic(name)
        out.append(KleinReading(name, p, p.is_homogeneous(), p.degrees()))
    return out


def cyclic_shift_matrix(n: int) -> list[list[int]]:
    """Matrix with (g x)_i = x_{i+1}, indices mod n."""
    return [[int(j == (i + 1) % n) for j in range(n)] for i in range(n)]


def permutation_substitution(images: list[int]) -> list[list[int]]:
    """Matrix with (g x)_i = x_{images[i]}."""
    n = len(images)
    return [[int(j == images[i]) for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# The linear system of degree 2n polynomials


def _monomials_of_degree(nvars: int, d: int) -> list[tuple[int, ...]]:
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def build_M_member(n: int, f: Poly, lam) -> Poly:
    """x_1...x_{n+1} f + sum_i lam_i (x_1...x_{n+1})^2 / x_i^2."""
    N1 = n + 1
    if f.nvars != N1:
        raise ValueError(f"f must have {N1} variables")
    if not f.is_zero() and (not f.is_homogeneous() or f.degree() != n - 1):
        raise ValueError(f"f must be homogeneous of degree {n - 1}")
    lam = list(lam)
    if len(lam) != N1:
        raise ValueError(f"need {N1} coefficients")
    prod = Poly.monomial((1,) * N1)
    out = prod * f
    for i, c in enumerate(lam):
        e = tuple(0 if j == i else 2 for j in range(N1))
        out = out + Poly.monomial(e, c)
    if not out.is_zero() and out.degrees() != {2 * n}:
        raise AssertionError("member of the wrong degree")
    return out


def m_member_span_rank(n: int) -> tuple[int, int]:
    """(rank of the span of all members, number of free parameters)."""
    N1 = n + 1
    basis: list[Poly] = []
    for e in _monomials_of_degree(N1, n - 1):
        basis.append(build_M_member(n, Poly.monomial(e), [0] * N1))
    for i in range(N1):
        lam = [int(j == i) for j in range(N1)]
        basis.append(build_M_member(n, Poly(N1), lam))
    monos = sorted({e for p in basis for e in p.terms})
    mat = [[p.coefficient(e) for e in monos] for p in basis]
    return rank(mat), len(basis)


def free_parameter_count(n: int) -> int:
    return comb(2 * n - 1, n) + n + 1


def burkhardt_generators_text() -> str:
    from .molien import MatrixGroup, format_matrix_group

    G = MatrixGroup(burkhardt_generators(), name="Burkhardt reflections")
    return format_matrix_group(G, provenance=(
        "derived by toricverify.polyinv.burkhardt_generators: order-2 reflections in five of the 45 nodes "
        "of the Burkhardt quartic, unitary for the hermitian form 2|x1|^2 + |x2|^2 + ... + |x5|^2"))
