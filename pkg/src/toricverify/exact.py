"""Exact scalars, matrices and integer normal forms.

Rationals are ``fractions.Fraction`` (aliased as ``Rat``).  Cyclotomic numbers
are stored in the power basis of a primitive m-th root of unity reduced modulo
the m-th cyclotomic polynomial, so equal values have identical coefficients.
Nothing in this module uses floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
import re

Rat = Fraction

MAX_CONDUCTOR = 60


# ---------------------------------------------------------------------------
# Cyclotomic fields


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Divide integer polynomials (low degree first); den must be monic."""
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1]
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    r = num[: len(den) - 1]
    return q, r


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients of the m-th cyclotomic polynomial, constant term first."""
    if m < 1:
        raise ValueError("conductor must be positive")
    p = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            p, r = _poly_divmod(p, list(cyclotomic_poly(d)))
            assert not any(r)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p)


@lru_cache(maxsize=None)
def euler_phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


def _mobius(n: int) -> int:
    res, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            res = -res
        p += 1
    return -res if n > 1 else res


@lru_cache(maxsize=None)
def _power_reductions(m: int) -> tuple[tuple[int, ...], ...]:
    """Reduced coefficient vectors of zeta^k for k = 0 .. 2*phi(m) - 2."""
    phi = euler_phi(m)
    poly = cyclotomic_poly(m)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(max(2 * phi - 1, m)):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(phi):
                cur[j] -= top * poly[j]
    return tuple(rows)


@lru_cache(maxsize=None)
def _trace_weights(m: int) -> tuple[Fraction, ...]:
    """Normalised trace (trace divided by phi(m)) of each basis power."""
    phi = euler_phi(m)
    out = []
    for k in range(phi):
        g = gcd(k, m)
        q = m // g
        out.append(Fraction(_mobius(q) * phi // euler_phi(q), phi))
    return tuple(out)


class Cyc:
    """Element of the cyclotomic field Q(zeta_m), m <= 60."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs=None):
        if not 1 <= m <= MAX_CONDUCTOR:
            raise ValueError(f"conductor {m} outside 1..{MAX_CONDUCTOR}")
        phi = euler_phi(m)
        if coeffs is None:
            coeffs = [0] * phi
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) > phi:
            coeffs = _reduce(m, coeffs)
        elif len(coeffs) < phi:
            coeffs = coeffs + [Fraction(0)] * (phi - len(coeffs))
        self.m = m
        self.coeffs = tuple(coeffs)

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "Cyc":
        """zeta_m ** k."""
        k %= m
        c = [0] * (k + 1)
        c[k] = 1
        return cls(m, c)

    @classmethod
    def const(cls, m: int, q) -> "Cyc":
        return cls(m, [q])

    def lift(self, M: int) -> "Cyc":
        """The same number written in Q(zeta_M); requires m | M."""
        if M == self.m:
            return self
        if M % self.m:
            raise ValueError(f"cannot lift conductor {self.m} to {M}")
        step = M // self.m
        c = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1)
        for i, a in enumerate(self.coeffs):
            c[i * step] = a
        return Cyc(M, c)

    def _coerce(self, other) -> tuple["Cyc", "Cyc"]:
        if isinstance(other, Cyc):
            if other.m == self.m:
                return self, other
            M = self.m * other.m // gcd(self.m, other.m)
            return self.lift(M), other.lift(M)
        if isinstance(other, (int, Fraction)):
            return self, Cyc(self.m, [other])
        return NotImplemented, NotImplemented

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return Cyc(a.m, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.m, [-x for x in self.coeffs])

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return Cyc(a.m, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyc(self.m, [x * other for x in self.coeffs])
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        prod = [Fraction(0)] * (2 * len(a.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return Cyc(a.m, _reduce(a.m, prod))

    __rmul__ = __mul__

    def inverse(self) -> "Cyc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic")
        # Solve (multiplication-by-self matrix) * x = e_0 exactly.
        phi = len(self.coeffs)
        cols = []
        for k in range(phi):
            cols.append((self * Cyc.zeta(self.m, k)).coeffs)
        mat = [[cols[j][i] for j in range(phi)] for i in range(phi)]
        rhs = [Fraction(1)] + [Fraction(0)] * (phi - 1)
        return Cyc(self.m, solve(mat, rhs))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyc(self.m, [x / other for x in self.coeffs])
        a, b = self._coerce(other)
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyc(self.m, [1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def conjugate(self) -> "Cyc":
        """Complex conjugate (zeta -> zeta^-1)."""
        out = Cyc(self.m)
        for k, c in enumerate(self.coeffs):
            if c:
                out = out + Cyc.zeta(self.m, -k) * c
        return out

    def normalized_trace(self) -> Fraction:
        """Field trace divided by the degree; independent of the conductor."""
        return sum((c * w for c, w in zip(self.coeffs, _trace_weights(self.m))), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, Cyc):
            return NotImplemented
        a, b = self._coerce(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash(("cyc", self.normalized_trace()))

    def __repr__(self):
        return f"Cyc({self.m}, {format_cyc(self)!r})"

    def __str__(self):
        return format_cyc(self)


def _reduce(m: int, coeffs) -> list[Fraction]:
    phi = euler_phi(m)
    if len(coeffs) <= phi:
        return list(coeffs) + [Fraction(0)] * (phi - len(coeffs))
    table = _power_reductions(m)
    out = [Fraction(0)] * phi
    for k, c in enumerate(coeffs):
        if c:
            if k >= len(table):
                row = Cyc.zeta(m, k).coeffs
            else:
                row = table[k]
            for j, r in enumerate(row):
                if r:
                    out[j] += c * r
    return out


def format_cyc(x: Cyc) -> str:
    terms = []
    for k, c in enumerate(x.coeffs):
        if not c:
            continue
        mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        elif c == -1:
            terms.append("-" + mono)
        else:
            terms.append(f"{c}*{mono}")
    if not terms:
        return "0"
    return " + ".join(terms).replace("+ -", "- ")


_TERM = re.compile(r"([+-]?)\s*([0-9]+(?:/[0-9]+)?)?\s*\*?\s*(z(?:\^([0-9]+))?)?")


def parse_cyc(text: str, m: int) -> Cyc:
    """Parse a polynomial in the symbol ``z`` such as ``1 - 2*z^3 + z/1``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty cyclotomic literal")
    out = Cyc(m)
    pos = 0
    while pos < len(s):
        mt = _TERM.match(s, pos)
        if not mt or mt.end() == pos or not (mt.group(2) or mt.group(3)):
            raise ValueError(f"cannot parse cyclotomic literal {text!r}")
        sign = -1 if mt.group(1) == "-" else 1
        coeff = Fraction(mt.group(2)) if mt.group(2) else Fraction(1)
        power = 0
        if mt.group(3):
            power = int(mt.group(4)) if mt.group(4) else 1
        out = out + Cyc.zeta(m, power) * (sign * coeff)
        pos = mt.end()
    return out


# ---------------------------------------------------------------------------
# Dense linear algebra over Q (lists of lists; entries int/Fraction/Cyc)


def _is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, Cyc) else x == 0


def row_echelon(mat, *, reduced: bool = True):
    """Gauss-Jordan elimination.  Returns (echelon rows, pivot columns)."""
    rows = [[x if isinstance(x, Cyc) else Fraction(x) for x in r] for r in mat]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if not _is_zero(rows[i][c])), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and (reduced or i > r) and not _is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(mat) -> int:
    if not mat or not mat[0]:
        return 0
    return len(row_echelon(mat, reduced=False)[1])


def nullspace(mat, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {x : mat x = 0} over the field of the entries."""
    if ncols is None:
        ncols = len(mat[0])
    if not mat:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    rows, piv = row_echelon(mat)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(piv):
            v[pc] = -rows[i][f]
        basis.append(v)
    return basis


def solve(mat, rhs):
    """Unique solution of a square nonsingular system."""
    n = len(mat)
    aug = [list(mat[i]) + [rhs[i]] for i in range(n)]
    rows, piv = row_echelon(aug)
    if piv[:n] != list(range(n)) or len(piv) > n:
        raise ValueError("singular or inconsistent system")
    return [rows[i][n] for i in range(n)]


def solve_any(mat, rhs):
    """Some solution of mat x = rhs, or None if inconsistent."""
    ncols = len(mat[0])
    aug = [list(mat[i]) + [rhs[i]] for i in range(len(mat))]
    rows, piv = row_echelon(aug)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for i, pc in enumerate(piv):
        x[pc] = rows[i][ncols]
    return x


def det(mat):
    """Determinant; fraction-free Bareiss for integers, elimination otherwise."""
    n = len(mat)
    if n == 0:
        return 1
    if all(isinstance(x, int) for r in mat for x in r):
        a = [list(r) for r in mat]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                p = next((i for i in range(k + 1, n) if a[i][k]), None)
                if p is None:
                    return 0
                a[k], a[p] = a[p], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]
    rows = [list(r) for r in mat]
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if not _is_zero(rows[i][c])), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            result = -result
        result = result * rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, n):
            if not _is_zero(rows[i][c]):
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return result


# ---------------------------------------------------------------------------
# Immutable matrices


def _canon(x):
    if isinstance(x, Cyc):
        return x
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    if isinstance(x, (int, Fraction)):
        return x
    raise TypeError(f"unsupported scalar {x!r}")


class ExactMatrix:
    """Immutable dense matrix over Q or a cyclotomic field."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows):
        rows = tuple(tuple(_canon(x) for x in r) for r in rows)
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        self.rows = rows
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, entries) -> "ExactMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]

    def is_integral(self) -> bool:
        return all(isinstance(x, int) for r in self.rows for x in r)

    def conductor(self) -> int:
        """Least common conductor of cyclotomic entries (1 for rational)."""
        m = 1
        for r in self.rows:
            for x in r:
                if isinstance(x, Cyc) and not x.is_rational():
                    m = m * x.m // gcd(m, x.m)
        return m

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(list(zip(*self.rows)))

    T = property(transpose)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            out.append([_dot(r, c) for c in cols])
        return ExactMatrix(out)

    def __mul__(self, scalar):
        return ExactMatrix([[x * scalar for x in r] for r in self.rows])

    __rmul__ = __mul__

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return ExactMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return ExactMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix([[-a for a in r] for r in self.rows])

    def __pow__(self, k: int) -> "ExactMatrix":
        self._require_square()
        if k < 0:
            return self.inverse() ** (-k)
        result = ExactMatrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def _require_square(self):
        if self.nrows != self.ncols:
            raise ValueError(f"matrix is not square: {self.shape}")

    def trace(self):
        self._require_square()
        s = 0
        for i in range(self.nrows):
            s = s + self.rows[i][i]
        return _canon(s)

    def det(self):
        self._require_square()
        return _canon(det(self.rows))

    def inverse(self) -> "ExactMatrix":
        self._require_square()
        n = self.nrows
        aug = [list(self.rows[i]) + [int(i == j) for j in range(n)] for i in range(n)]
        rows, piv = row_echelon(aug)
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return ExactMatrix([r[n:] for r in rows])

    def charpoly(self) -> tuple:
        """Characteristic polynomial det(xI - M), constant term first.

        Faddeev-LeVerrier recursion; exact over Q and cyclotomic fields.
        """
        self._require_square()
        n = self.nrows
        coeffs = [0] * (n + 1)
        coeffs[n] = 1
        Mk = ExactMatrix.identity(n)
        for k in range(1, n + 1):
            AM = self @ Mk
            tr = AM.trace()
            c = -tr / k if isinstance(tr, Cyc) else _canon(Fraction(-tr) / k)
            coeffs[n - k] = c
            if k < n:
                Mk = AM + ExactMatrix.identity(n) * c
        return tuple(_canon(c) for c in coeffs)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        return f"ExactMatrix({[[str(x) for x in r] for r in self.rows]})"


def _dot(r, c):
    s = 0
    for a, b in zip(r, c):
        if isinstance(a, Cyc) or isinstance(b, Cyc) or (a and b):
            s = s + a * b
    return s


def char_poly_power_traces(M: ExactMatrix, k_max: int) -> list:
    """[tr(M), tr(M^2), ..., tr(M^k_max)] by repeated multiplication."""
    if M.nrows != M.ncols:
        raise ValueError("power traces need a square matrix")
    out = []
    P = M
    for k in range(1, k_max + 1):
        out.append(P.trace())
        if k < k_max:
            P = P @ M
    return out


# ---------------------------------------------------------------------------
# Integer normal forms


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with x*a + y*b = g = gcd(a, b) >= 0; prefers x = +-1 when a | b."""
    if a and b % a == 0:
        return (abs(a), 1 if a > 0 else -1, 0)
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _ident(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def hermite_normal_form(M) -> tuple[list[list[int]], list[list[int]]]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``H = U M``, ``U`` unimodular, ``H`` in row echelon
    form with positive pivots and entries above each pivot reduced into
    ``[0, pivot)``; zero rows come last.
    """
    H = [[int(x) for x in r] for r in M]
    m = len(H)
    n = len(H[0]) if m else 0
    U = _ident(m)
    row = 0
    for col in range(n):
        if row >= m:
            break
        # Combine every lower row into the pivot row with extended gcd steps.
        for i in range(row + 1, m):
            if H[i][col]:
                a, b = H[row][col], H[i][col]
                g, x, y = _xgcd(a, b)
                p, q = a // g, b // g
                H[row], H[i] = (
                    [x * u + y * v for u, v in zip(H[row], H[i])],
                    [-q * u + p * v for u, v in zip(H[row], H[i])],
                )
                U[row], U[i] = (
                    [x * u + y * v for u, v in zip(U[row], U[i])],
                    [-q * u + p * v for u, v in zip(U[row], U[i])],
                )
        if H[row][col] == 0:
            continue
        if H[row][col] < 0:
            H[row] = [-v for v in H[row]]
            U[row] = [-v for v in U[row]]
        piv = H[row][col]
        for i in range(row):
            f = H[i][col] // piv
            if f:
                H[i] = [u - f * v for u, v in zip(H[i], H[row])]
                U[i] = [u - f * v for u, v in zip(U[i], U[row])]
        row += 1
    return H, U


def smith_normal_form(M) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form ``D = U M V`` with d_1 | d_2 | ... and d_i >= 0."""
    A = [[int(x) for x in r] for r in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = _ident(m)
    V = _ident(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        done = False
        while not done:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    a, b = A[t][t], A[i][t]
                    g, x, y = _xgcd(a, b)
                    p, q = a // g, b // g
                    A[t], A[i] = (
                        [x * u + y * v for u, v in zip(A[t], A[i])],
                        [-q * u + p * v for u, v in zip(A[t], A[i])],
                    )
                    U[t], U[i] = (
                        [x * u + y * v for u, v in zip(U[t], U[i])],
                        [-q * u + p * v for u, v in zip(U[t], U[i])],
                    )
            for j in range(t + 1, n):
                if A[t][j]:
                    a, b = A[t][t], A[t][j]
                    g, x, y = _xgcd(a, b)
                    p, q = a // g, b // g
                    for R in (A, V):
                        for r in R:
                            r[t], r[j] = x * r[t] + y * r[j], -q * r[t] + p * r[j]
                    done = False
            if done:
                # Enforce divisibility of the remaining block by the pivot.
                piv = A[t][t]
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % piv),
                    None,
                )
                if bad is not None:
                    i, _ = bad
                    A[t] = [u + v for u, v in zip(A[t], A[i])]
                    U[t] = [u + v for u, v in zip(U[t], U[i])]
                    done = False
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            U[t] = [-v for v in U[t]]
        t += 1
    return A, U, V


def smith_invariants(M) -> list[int]:
    """Diagonal of the Smith form (length min(rows, cols))."""
    D, _, _ = smith_normal_form(M)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def int_matmul(A, B) -> list[list[int]]:
    cols = list(zip(*B))
    return [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in A]


def primitive(v) -> tuple[int, ...]:
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive generator")
    return tuple(x // g for x in ints)


# ---------------------------------------------------------------------------
# Lattices


class IntLattice:
    """Full-rank lattice in Q^n given by basis rows ``basis / denominator``."""

    def __init__(self, basis, denominator: int = 1):
        self.basis = tuple(tuple(int(x) for x in r) for r in basis)
        self.denominator = int(denominator)
        n = len(self.basis)
        if any(len(r) != n for r in self.basis):
            raise ValueError("lattice basis must be square")
        if det([list(r) for r in self.basis]) == 0:
            raise ValueError("lattice basis is singular")

    @classmethod
    def standard(cls, n: int) -> "IntLattice":
        return cls(_ident(n))

    @classmethod
    def from_generators(cls, vectors) -> "IntLattice":
        """Lattice spanned by rational vectors (HNF of the cleared generators)."""
        fr = [[Fraction(x) for x in v] for v in vectors]
        den = 1
        for v in fr:
            for x in v:
                den = den * x.denominator // gcd(den, x.denominator)
        ints = [[int(x * den) for x in v] for v in fr]
        H, _ = hermite_normal_form(ints)
        H = [r for r in H if any(r)]
        return cls(H, den)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def basis_rational(self) -> list[list[Fraction]]:
        return [[Fraction(x, self.denominator) for x in r] for r in self.basis]

    def coordinates(self, v) -> list[Fraction]:
        """Coordinates of an ambient vector in the lattice basis."""
        B = self.basis_rational()
        # v = sum c_i B_i  <=>  B^T c = v
        BT = [list(c) for c in zip(*B)]
        return solve(BT, [Fraction(x) for x in v])

    def contains(self, v) -> bool:
        return all(c.denominator == 1 for c in self.coordinates(v))

    def to_ambient(self, coords) -> list[Fraction]:
        B = self.basis_rational()
        n = self.rank
        return [sum((Fraction(coords[i]) * B[i][j] for i in range(n)), Fraction(0)) for j in range(n)]

    def covolume(self) -> Fraction:
        return abs(Fraction(det([list(r) for r in self.basis]), self.denominator**self.rank))

    def index_in(self, other: "IntLattice") -> Fraction:
        """[other : self] when self is a sublattice of other."""
        return self.covolume() / other.covolume()

    def __eq__(self, other):
        if not isinstance(other, IntLattice):
            return NotImplemented
        return all(other.contains(v) for v in self.basis_rational()) and all(
            self.contains(v) for v in other.basis_rational()
        )

    def __repr__(self):
        return f"IntLattice({[list(r) for r in self.basis]}, denominator={self.denominator})"


# ---------------------------------------------------------------------------
# Text format


def format_scalar(x) -> str:
    if isinstance(x, Cyc):
        return format_cyc(x).replace(" ", "")
    return str(x)


def format_matrix(M: ExactMatrix) -> str:
    """One row per line; a ``conductor: m`` header precedes cyclotomic matrices."""
    m = M.conductor()
    lines = [f"conductor: {m}"] if m > 1 else []
    for r in M.rows:
        lines.append(" ".join(format_scalar(x) for x in r))
    return "\n".join(lines)


def parse_scalar(tok: str, m: int = 1):
    if m > 1 and "z" in tok:
        return parse_cyc(tok, m)
    return _canon(Fraction(tok))


def parse_matrix(text: str) -> ExactMatrix:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip() and not ln.strip().startswith("#")]
    m = 1
    if lines and lines[0].startswith("conductor:"):
        m = int(lines[0].split(":", 1)[1])
        lines = lines[1:]
    rows = [[parse_scalar(t, m) for t in ln.split()] for ln in lines]
    if m > 1:
        rows = [[x if isinstance(x, Cyc) else Cyc.const(m, x) for x in r] for r in rows]
    return ExactMatrix(rows)
