"""Fans built from the coordinate simplex of P^n and its symmetries.

Coordinates.  N = Z^{n+1} / (1, ..., 1) is identified with Z^n by sending
the class of x to (x_1 - x_{n+1}, ..., x_n - x_{n+1}).  The rays of P^n are
then e_1, ..., e_n and -(1, ..., 1), and a permutation of the n+1
homogeneous coordinates acts on Z^n by an integer matrix.  Subsets are
0-based frozensets of {0, ..., n}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, permutations
from math import comb

from .exact import IntLattice, int_matmul, solve_any
from .latgroups import IntMatrixGroup, _as_int_rows, fixed_sublattice_rank, int_inverse, is_unimodular
from .permgroups import Perm, PermGroup
from .toric import Fan, LatticePolytope, face_fan, normal_fan


# ---------------------------------------------------------------------------
# Coordinates


def subset_vector(S, n: int) -> tuple[int, ...]:
    """Image of sum_{i in S} e_i in Z^{n+1}/(1,...,1), written in Z^n."""
    last = 1 if n in S else 0
    return tuple((1 if i in S else 0) - last for i in range(n))


def permutation_matrix(sigma, n: int) -> list[list[int]]:
    """Matrix on Z^n of the coordinate permutation e_j -> e_{sigma(j)} (column convention)."""
    images = sigma.images if isinstance(sigma, Perm) else tuple(sigma)
    if len(images) != n + 1:
        raise ValueError("permutation must have degree n+1")
    cols = [subset_vector({images[j]}, n) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def lattice_matrix(M, lattice: IntLattice) -> list[list[int]]:
    """An ambient linear map written in the basis of ``lattice`` (P^{-1} M P)."""
    B = lattice.basis_rational()
    n = len(B)
    P = [[B[j][i] for j in range(n)] for i in range(n)]  # columns are basis vectors
    from .exact import ExactMatrix

    Pm = ExactMatrix(P)
    out = Pm.inverse() @ ExactMatrix(_as_int_rows(M)) @ Pm
    rows = out.tolist()
    if any(Fraction(x).denominator != 1 for r in rows for x in r):
        raise ValueError("map does not preserve the lattice")
    return [[int(x) for x in r] for r in rows]


def overlattice(n: int) -> IntLattice:
    """Z^n together with v = (1, 2, ..., n)/(n+1); basis v, e_2, ..., e_n."""
    rows = [list(range(1, n + 1))]
    for i in range(1, n):
        rows.append([(n + 1) * (j == i) for j in range(n)])
    return IntLattice(rows, n + 1)


# ---------------------------------------------------------------------------
# P^n and the permutohedron


def build_projective_fan(n: int) -> Fan:
    if n < 1:
        raise ValueError("need n >= 1")
    rays = [subset_vector({i}, n) for i in range(n + 1)]
    cones = list(combinations(range(n + 1), n))
    return Fan(rays, cones, IntLattice.standard(n), f"P^{n}")


@dataclass
class PermutohedronFan(Fan):
    n: int = 0
    subsets: list[frozenset[int]] = field(default_factory=list)

    def ray_index(self, S) -> int:
        return self._index[frozenset(S)]

    def __post_init__(self):
        super().__post_init__()
        self._index = {S: i for i, S in enumerate(self.subsets)}


def build_permutohedron(n: int) -> PermutohedronFan:
    """Rays u_S for proper nonempty S, one maximal cone per complete flag."""
    if n < 2:
        raise ValueError("need n >= 2")
    subsets = [frozenset(c) for k in range(1, n + 1) for c in combinations(range(n + 1), k)]
    index = {S: i for i, S in enumerate(subsets)}
    rays = [subset_vector(S, n) for S in subsets]
    cones = []
    for sigma in permutations(range(n + 1)):
        cones.append(tuple(sorted(index[frozenset(sigma[:k])] for k in range(1, n + 1))))
    return PermutohedronFan(rays, cones, IntLattice.standard(n), f"permutohedron({n})", n=n, subsets=subsets)


# ---------------------------------------------------------------------------
# Divisor classes on a fan


@dataclass(frozen=True)
class DivisorClass:
    fan: Fan = field(compare=False, repr=False)
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) != len(self.fan.rays):
            raise ValueError("one coefficient per ray")

    def __add__(self, other):
        return DivisorClass(self.fan, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return DivisorClass(self.fan, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rmul__(self, k: int):
        return DivisorClass(self.fan, tuple(k * a for a in self.coeffs))

    def principal_character(self):
        """m with <m, v_rho> = coefficient for every ray, or None."""
        m = solve_any([list(r) for r in self.fan.rays], list(self.coeffs))
        if m is None or any(Fraction(x).denominator != 1 for x in m):
            return None
        return [int(x) for x in m]

    def linearly_equivalent(self, other: "DivisorClass") -> bool:
        """Equality in Cl: the difference is div(chi^m) for an integer character m."""
        # rays span N over Q, so the solution of R m = diff is unique when it exists
        return (self - other).principal_character() is not None


def pullback_hyperplane(P: PermutohedronFan, j: int) -> DivisorClass:
    """pi^* of the coordinate hyperplane x_j = 0: rays whose subset contains j."""
    return DivisorClass(P, tuple(int(j in S) for S in P.subsets))


def exceptional_divisor(P: PermutohedronFan, k: int) -> DivisorClass:
    """E_k: components over the torus-invariant k-dimensional subspaces.

    The subspace of dimension k is cut out by n - k coordinates, so its
    components are the rays u_S with |S| = n - k.  For k = n - 1 these are the
    strict transforms of the coordinate hyperplanes.
    """
    n = P.n
    if not 0 <= k <= n - 1:
        raise ValueError("k out of range")
    return DivisorClass(P, tuple(int(len(S) == n - k) for S in P.subsets))


def anticanonical_pullback(P: PermutohedronFan) -> DivisorClass:
    """pi^*(-K) written as (n+1) times the pullback of one hyperplane."""
    return (P.n + 1) * pullback_hyperplane(P, 0)


def check_eq_T(n: int, perturb: tuple[int, int] | None = None) -> bool:
    """E_{n-1} ~ pi^*(-K) - sum_{i<=n-2} (n - i) E_i on the permutohedron.

    ``perturb=(ray, delta)`` shifts one coefficient of the right-hand side,
    which must break the relation.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    P = build_permutohedron(n)
    lhs = exceptional_divisor(P, n - 1)
    rhs = anticanonical_pullback(P)
    for i in range(n - 1):
        rhs = rhs - (n - i) * exceptional_divisor(P, i)
    if perturb is not None:
        c = list(rhs.coeffs)
        c[perturb[0]] += perturb[1]
        rhs = DivisorClass(P, tuple(c))
    return lhs.linearly_equivalent(rhs)


# ---------------------------------------------------------------------------
# Fan automorphisms


@dataclass
class FanAutomorphism:
    matrix: list[list[int]]
    ray_perm: tuple[int, ...]
    cone_perm: tuple[int, ...]

    def squared_is_identity(self) -> bool:
        return all(self.ray_perm[self.ray_perm[i]] == i for i in range(len(self.ray_perm)))


def fan_automorphism(F: Fan, M) -> FanAutomorphism:
    """Check that M (lattice coordinates, column convention) permutes rays and maximal cones."""
    M = _as_int_rows(M)
    if not is_unimodular(M):
        raise ValueError("matrix is not unimodular")
    n = F.dim
    index = {r: i for i, r in enumerate(F.rays)}
    perm = []
    for r in F.rays:
        img = tuple(sum(M[i][j] * r[j] for j in range(n)) for i in range(n))
        if img not in index:
            raise ValueError(f"ray {r} maps to {img}, which is not a ray")
        perm.append(index[img])
    cone_index = {frozenset(c): i for i, c in enumerate(F.cones)}
    cperm = []
    for c in F.cones:
        img = frozenset(perm[j] for j in c)
        if img not in cone_index:
            raise ValueError(f"cone {c} does not map to a maximal cone")
        cperm.append(cone_index[img])
    return FanAutomorphism(M, tuple(perm), tuple(cperm))


def cremona_involution(n: int) -> tuple[PermutohedronFan, FanAutomorphism]:
    """-I on N: sends u_S to u_{complement of S} and preserves the flag cones."""
    P = build_permutohedron(n)
    M = [[-int(i == j) for j in range(n)] for i in range(n)]
    return P, fan_automorphism(P, M)


def cremona_swaps_levels(n: int) -> bool:
    """The involution maps the components of E_k onto those of E_{n-1-k} for every k."""
    P, tau = cremona_involution(n)
    full = frozenset(range(n + 1))
    for i, S in enumerate(P.subsets):
        T = P.subsets[tau.ray_perm[i]]
        if T != full - S:
            return False
    for k in range(n):
        src = {i for i, S in enumerate(P.subsets) if len(S) == n - k}
        dst = {i for i, S in enumerate(P.subsets) if len(S) == n - (n - 1 - k)}
        if {tau.ray_perm[i] for i in src} != dst:
            return False
    return True


# ---------------------------------------------------------------------------
# The linear system of degree 2n and the discrepancies


def m_system_exponents(n: int) -> list[tuple[int, ...]]:
    """Exponents of the monomials spanning the degree-2n system.

    x_1...x_{n+1} times any monomial of degree n-1, plus the n+1 monomials
    (x_1...x_{n+1})^2 / x_i^2.
    """
    out = set()
    for c in combinations_with_replacement(range(n + 1), n - 1):
        out.add(tuple(1 + c.count(i) for i in range(n + 1)))
    for i in range(n + 1):
        out.add(tuple(2 - 2 * (j == i) for j in range(n + 1)))
    return sorted(out)


def linear_system_dim(n: int) -> int:
    """Projective dimension N = n + C(2n-1, n)."""
    if n < 2:
        raise ValueError("need n >= 2")
    return n + comb(2 * n - 1, n)


def linear_system_dim_by_count(n: int) -> int:
    return len(m_system_exponents(n)) - 1


def discrepancies(n: int) -> list[Fraction]:
    """a_i = (n^2 - (i+3) n + i) / (2n) for i = 0..n-2."""
    if n < 4:
        raise ValueError("need n >= 4")
    return [Fraction(n * n - (i + 3) * n + i, 2 * n) for i in range(n - 1)]


def discrepancies_toric(n: int) -> list[Fraction]:
    """The same numbers from the fan: for the ray u_S over a k-dimensional subspace,

    a = (log discrepancy of K) - 1 - c * ord_S(M),  c = (n+1)/(2n),

    where the log discrepancy of u_S is |S| and ord_S is the minimum of
    <exponent, u_S> over the monomials of the system.
    """
    c = Fraction(n + 1, 2 * n)
    exps = m_system_exponents(n)
    out = []
    for k in range(n - 1):
        S = range(n - k)
        order = min(sum(e[i] for i in S) for e in exps)
        out.append(Fraction(len(S) - 1) - c * order)
    return out


def discrepancy_closed_forms(n: int) -> dict[str, bool]:
    a = discrepancies(n)
    return {
        "a_0": a[0] == Fraction(n - 3, 2),
        "a_1": a[1] == Fraction(n * n - 4 * n + 1, 2 * n),
        "a_{n-3}": a[n - 3] == Fraction(n - 3, 2 * n),
        "a_{n-2}": a[n - 2] == Fraction(-1, n),
        "positive below n-2": all(x > 0 for x in a[: n - 2]),
    }


# ---------------------------------------------------------------------------
# The toric variety of the degree-2n system, and the n = 4 listing


def m_newton_polytope(n: int) -> LatticePolytope:
    """Newton polytope of the degree-2n system, projected to the first n exponents."""
    return LatticePolytope([e[:n] for e in m_system_exponents(n)])


def build_m_variety(n: int) -> Fan:
    """Normal fan of the Newton polytope; its rays are u_S for |S| = 2 (n >= 3)."""
    F = normal_fan(m_newton_polytope(n))
    F.lattice = IntLattice.standard(n)
    F.name = f"X_M({n})"
    return F


LISTING_MAT = (
    (1, 1, 0, 0, 0),
    (0, 1, 1, 0, 0),
    (0, 0, 1, 1, 0),
    (0, 0, 0, 1, 1),
    (1, 0, 0, 0, 1),
)


def listing_points() -> list[tuple[int, ...]]:
    """The set A of the n = 4 listing: (1,...,1) + e_i together with f * Mat for |f| = 3."""
    A = set()
    for i in range(5):
        A.add(tuple(1 + (j == i) for j in range(5)))
    for c in combinations_with_replacement(range(5), 3):
        f = [c.count(i) for i in range(5)]
        A.add(tuple(sum(f[i] * LISTING_MAT[i][j] for i in range(5)) for j in range(5)))
    return sorted(A)


def build_listing_polytope(reading: str = "listing") -> tuple[LatticePolytope, int]:
    """(P, #A) for the n = 4 listing.

    ``reading="listing"`` follows the printed code literally.
    ``reading="system"`` uses the exponents of the degree-8 system instead,
    which is the variety the listing is meant to produce.
    """
    if reading == "listing":
        A = listing_points()
    elif reading == "system":
        A = m_system_exponents(4)
    else:
        raise ValueError("reading must be 'listing' or 'system'")
    return LatticePolytope([a[:4] for a in A]), len(A)


# ---------------------------------------------------------------------------
# V, Y, U


def _require_prime(n: int):
    m = n + 1
    if m < 2 or any(m % d == 0 for d in range(2, int(m**0.5) + 1)):
        raise ValueError(f"n+1 = {m} is not prime")


def build_V(n: int) -> Fan:
    """P^n / mu_{n+1}: the rays of P^n in the overlattice."""
    _require_prime(n)
    L = overlattice(n)
    rays = [subset_vector({i}, n) for i in range(n + 1)]
    F = Fan.from_ambient(rays, list(combinations(range(n + 1), n)), L, f"V({n})")
    return F


def _y_rays(n: int) -> list[tuple[int, ...]]:
    v = [subset_vector({i}, n) for i in range(n + 1)]
    return v + [tuple(-x for x in r) for r in v]


def build_Y(n: int) -> Fan:
    """Face fan of conv(+-v_1, ..., +-v_{n+1}) in Z^n."""
    if n < 2:
        raise ValueError("need n >= 2")
    F = face_fan(LatticePolytope(_y_rays(n)))
    order = {r: i for i, r in enumerate(_y_rays(n))}
    # reorder rays as v_1..v_{n+1}, u_1..u_{n+1}
    perm = [order[r] for r in F.rays]
    rays = _y_rays(n)
    cones = [tuple(sorted(perm[j] for j in c)) for c in F.cones]
    return Fan(rays, cones, IntLattice.standard(n), f"Y({n})")


def build_U(n: int) -> Fan:
    """Y / mu_{n+1}: the cones of Y with the lattice enlarged by (1, ..., n)/(n+1)."""
    _require_prime(n)
    if n % 2:
        raise ValueError("U needs n even")
    Y = build_Y(n)
    return Fan.from_ambient(Y.rays, Y.cones, overlattice(n), f"U({n})")


def x24_fan() -> Fan:
    """(P^1)^3 / mu_2 with the diagonal sign action: rays +-e_i in Z^3 + (1,1,1)/2."""
    L = IntLattice([[1, 1, 1], [0, 2, 0], [0, 0, 2]], 2)
    rays = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    cones = [(a, b, c) for a in (0, 1) for b in (2, 3) for c in (4, 5)]
    return Fan.from_ambient(rays, cones, L, "X24")


# ---------------------------------------------------------------------------
# Group actions on fans


@dataclass
class FanGroupAction:
    fan: Fan
    generators: list[list[list[int]]]
    automorphisms: list[FanAutomorphism] = field(default_factory=list)

    def __post_init__(self):
        self.generators = [_as_int_rows(g) for g in self.generators]
        self.automorphisms = []
        for k, g in enumerate(self.generators):
            try:
                self.automorphisms.append(fan_automorphism(self.fan, g))
            except ValueError as exc:
                raise ValueError(f"generator {k} is not a fan automorphism: {exc}") from None

    @classmethod
    def from_permutations(cls, fan: Fan, group: PermGroup) -> "FanGroupAction":
        """Coordinate permutations of P^n acting on a fan in the standard coordinates."""
        n = fan.dim
        mats = [permutation_matrix(g, n) for g in group.generators]
        if fan.lattice is not None and fan.lattice != IntLattice.standard(n):
            mats = [lattice_matrix(M, fan.lattice) for M in mats]
        return cls(fan, mats)

    @classmethod
    def from_ambient(cls, fan: Fan, matrices) -> "FanGroupAction":
        lat = fan.lattice or IntLattice.standard(fan.dim)
        return cls(fan, [lattice_matrix(M, lat) for M in matrices])

    def ray_orbits(self) -> list[list[int]]:
        nr = len(self.fan.rays)
        parent = list(range(nr))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in self.automorphisms:
            for i, j in enumerate(a.ray_perm):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
        groups: dict[int, list[int]] = {}
        for i in range(nr):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values())


def invariant_class_rank(F: Fan, action: FanGroupAction) -> int:
    """rk Cl^G = #(ray orbits) - rk M^G, from 0 -> M -> Z^rays -> Cl -> 0 over Q."""
    if action.fan is not F:
        action = FanGroupAction(F, action.generators)
    dual = IntMatrixGroup([[list(r) for r in zip(*int_inverse(g))] for g in action.generators])
    return len(action.ray_orbits()) - fixed_sublattice_rank(dual)


def u_group_generators(n: int, primed: bool) -> list[list[list[int]]]:
    """Ambient generators of G_U (sigma, iota) or of G'_U (sigma, -iota)."""
    sigma = Perm(tuple((i + 1) % (n + 1) for i in range(n + 1)))
    iota = Perm(tuple(n - i for i in range(n + 1)))
    A = permutation_matrix(sigma, n)
    S = permutation_matrix(iota, n)
    if primed:
        S = [[-x for x in r] for r in S]
    return [A, S]


@dataclass
class BigOrbitsGate:
    holds: bool
    min_pair_orbit: int
    boundary_lower_bound: int
    n: int


def big_orbits_gate(G: PermGroup) -> BigOrbitsGate:
    """If every pair orbit is longer than n+1, the surviving boundary has at least n+2 components.

    Components of the boundary are indexed by pairs; a G-equivariant map
    keeps whole orbits, and keeps at least one, so it keeps at least the
    shortest orbit length of them.
    """
    n = G.degree - 1
    m = G.min_orbit_on_k_subsets(2)
    return BigOrbitsGate(m > n + 1, m, m, n)
