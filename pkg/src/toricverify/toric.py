"""Fans, cones and lattice polytopes with exact toric invariants.

Ray generators are stored in lattice coordinates (integer vectors); a fan may
carry an :class:`IntLattice` recording how its lattice sits in an ambient
rational space.  Bulk lattice-point scans use numpy integer arrays; every
quantity they touch is a small integer, so no rounding is involved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from math import factorial, gcd
import random

import numpy as np

from .exact import (
    IntLattice,
    det,
    nullspace,
    primitive,
    rank,
    smith_normal_form,
    solve,
    solve_any,
)
from .reidtai import CyclicQuotient, is_terminal_reid_tai


# ---------------------------------------------------------------------------
# Small helpers


def _sign_of_perm(p) -> int:
    s = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


def _int_dets(mats: np.ndarray) -> np.ndarray:
    """Exact determinants of a stack of small integer matrices (Leibniz)."""
    k = mats.shape[-1]
    if k == 0:
        return np.ones(mats.shape[0], dtype=np.int64)
    out = np.zeros(mats.shape[0], dtype=np.int64)
    for p in permutations(range(k)):
        term = np.full(mats.shape[0], _sign_of_perm(p), dtype=np.int64)
        for i, j in enumerate(p):
            term = term * mats[:, i, j]
        out += term
    return out


def _cross_normals(diffs: np.ndarray) -> np.ndarray:
    """Generalised cross product of (n-1) vectors in Z^n, vectorised over the stack."""
    m, k, n = diffs.shape
    cols = []
    for j in range(n):
        minor = np.delete(diffs, j, axis=2)
        cols.append(((-1) ** j) * _int_dets(minor))
    return np.stack(cols, axis=1)


def _primitive_rows(a: np.ndarray) -> np.ndarray:
    g = np.gcd.reduce(np.abs(a), axis=1)
    g[g == 0] = 1
    return a // g[:, None]


# ---------------------------------------------------------------------------
# Lattice polytopes


@dataclass
class Facet:
    normal: tuple[int, ...]  # inner normal, primitive
    offset: int  # facet is {x : normal . x = offset}, polytope is normal . x >= offset
    vertices: frozenset[int]  # indices into the vertex list


class LatticePolytope:
    """Convex hull of integer points in Z^n, computed exactly.

    Facets come from a naive scan over n-subsets of the input points with a
    sidedness check, which is adequate for a few dozen points in dimension
    at most six.
    """

    def __init__(self, points):
        pts = sorted({tuple(int(x) for x in p) for p in points})
        if not pts:
            raise ValueError("empty point set")
        self.dim_ambient = len(pts[0])
        self.points = pts
        self._facets: list[Facet] | None = None
        self._vertices: list[tuple[int, ...]] | None = None

    def dimension(self) -> int:
        p0 = self.points[0]
        return rank([[a - b for a, b in zip(p, p0)] for p in self.points[1:]]) if len(self.points) > 1 else 0

    def _hull(self):
        n = self.dim_ambient
        if self.dimension() != n:
            raise ValueError("polytope is not full-dimensional")
        P = np.array(self.points, dtype=np.int64)
        found: dict[tuple, int] = {}
        subsets = np.array(list(combinations(range(len(P)), n)), dtype=np.int64)
        chunk = 200000
        for s in range(0, len(subsets), chunk):
            sub = subsets[s : s + chunk]
            base = P[sub[:, 0]]
            diffs = P[sub[:, 1:]] - base[:, None, :]
            normals = _cross_normals(diffs)
            nz = np.any(normals != 0, axis=1)
            normals, base = normals[nz], base[nz]
            normals = _primitive_rows(normals)
            offs = np.einsum("ij,ij->i", normals, base)
            vals = normals @ P.T - offs[:, None]
            pos = np.all(vals >= 0, axis=1)
            neg = np.all(vals <= 0, axis=1)
            for i in np.nonzero(pos | neg)[0]:
                sgn = 1 if pos[i] else -1
                key = tuple(int(x) * sgn for x in normals[i])
                found[key] = int(offs[i]) * sgn
        verts_on = {}
        for nrm, off in found.items():
            on = frozenset(i for i, p in enumerate(self.points) if sum(a * b for a, b in zip(nrm, p)) == off)
            verts_on[nrm] = (off, on)
        # vertices: points that are the unique intersection of their facets
        vertex_idx = []
        for i, p in enumerate(self.points):
            normals = [nrm for nrm, (off, on) in verts_on.items() if i in on]
            if normals and rank(normals) == n:
                vertex_idx.append(i)
        remap = {old: new for new, old in enumerate(vertex_idx)}
        self._vertices = [self.points[i] for i in vertex_idx]
        facets = []
        for nrm, (off, on) in sorted(verts_on.items()):
            facets.append(Facet(nrm, off, frozenset(remap[i] for i in on if i in remap)))
        self._facets = facets

    @property
    def vertices(self) -> list[tuple[int, ...]]:
        if self._vertices is None:
            self._hull()
        return self._vertices

    @property
    def facets(self) -> list[Facet]:
        if self._facets is None:
            self._hull()
        return self._facets

    def contains(self, x) -> bool:
        return all(sum(a * b for a, b in zip(f.normal, x)) >= f.offset for f in self.facets)

    def lattice_points(self) -> list[tuple[int, ...]]:
        """Integer points of the polytope: bounding box plus facet inequalities."""
        V = np.array(self.vertices, dtype=np.int64)
        lo, hi = V.min(axis=0), V.max(axis=0)
        grids = np.meshgrid(*[np.arange(a, b + 1) for a, b in zip(lo, hi)], indexing="ij")
        box = np.stack([g.ravel() for g in grids], axis=1)
        N = np.array([f.normal for f in self.facets], dtype=np.int64)
        off = np.array([f.offset for f in self.facets], dtype=np.int64)
        ok = np.all(box @ N.T >= off, axis=1)
        return sorted(tuple(int(x) for x in p) for p in box[ok])

    def contains_origin_in_interior(self) -> bool:
        return all(f.offset < 0 for f in self.facets)


def normal_fan(P: LatticePolytope) -> "Fan":
    """Inner normal fan: one ray per facet, one maximal cone per vertex."""
    rays = [f.normal for f in P.facets]
    cones = []
    for vi in range(len(P.vertices)):
        cones.append(tuple(j for j, f in enumerate(P.facets) if vi in f.vertices))
    return Fan(rays, cones)


def face_fan(P: LatticePolytope) -> "Fan":
    """Cones over the faces of P; P must contain the origin in its interior."""
    if not P.contains_origin_in_interior():
        raise ValueError("face fan needs the origin in the interior")
    rays = [tuple(v) for v in P.vertices]
    for r in rays:
        if primitive(r) != r:
            raise ValueError(f"vertex {r} is not a primitive lattice vector")
    cones = [tuple(sorted(f.vertices)) for f in P.facets]
    return Fan(rays, cones)


# ---------------------------------------------------------------------------
# Cones


@dataclass
class QuotientSingularityType:
    """Abelian quotient type of a simplicial cone.

    ``order`` is the index of the sublattice spanned by the generators;
    ``generators`` lists, for each cyclic factor of the quotient group, the
    order d and the weights (d * lambda_i mod d) of a group generator
    written in the basis of cone generators.
    """

    order: int
    generators: list[tuple[int, tuple[int, ...]]]

    def is_cyclic(self) -> bool:
        return len(self.generators) <= 1

    def as_cyclic(self) -> CyclicQuotient:
        if not self.is_cyclic():
            raise ValueError("quotient group is not cyclic")
        if not self.generators:
            return CyclicQuotient(1, ())
        d, w = self.generators[0]
        return CyclicQuotient(d, w)

    def __str__(self):
        if not self.generators:
            return "smooth"
        return " x ".join(f"1/{d}({','.join(map(str, w))})" for d, w in self.generators)


def cone_facets(rays: list[tuple[int, ...]]) -> list[tuple[tuple[int, ...], frozenset[int]]]:
    """Inner facet normals of a full-dimensional cone with the rays on each facet."""
    n = len(rays[0])
    out = {}
    for sub in combinations(range(len(rays)), n - 1):
        M = [list(rays[i]) for i in sub]
        if rank(M) != n - 1:
            continue
        ns = nullspace(M, n)
        nrm = primitive(ns[0])
        vals = [sum(a * b for a, b in zip(nrm, r)) for r in rays]
        if all(v >= 0 for v in vals):
            pass
        elif all(v <= 0 for v in vals):
            nrm = tuple(-x for x in nrm)
            vals = [-v for v in vals]
        else:
            continue
        out[nrm] = frozenset(i for i, v in enumerate(vals) if v == 0)
    return sorted(out.items())


def quotient_singularity_type(rays: list[tuple[int, ...]]) -> QuotientSingularityType:
    """Type of the simplicial cone spanned by ``rays`` in Z^n (Smith form of the generator matrix)."""
    n = len(rays)
    if n != len(rays[0]):
        raise ValueError("cone is not simplicial of full dimension")
    Vcols = [[rays[j][i] for j in range(n)] for i in range(n)]  # columns are rays
    d = det(Vcols)
    if d == 0:
        raise ValueError("cone generators are linearly dependent")
    D, U, _ = smith_normal_form(Vcols)
    # Z^n / V Z^n  ~  Z^n / D Z^n via U; a generator of the i-th factor is U^-1 e_i.
    Uinv = _int_inverse(U)
    gens = []
    for i in range(n):
        di = D[i][i]
        if di == 1:
            continue
        p = [Uinv[r][i] for r in range(n)]
        lam = solve(Vcols, p)
        w = tuple(int((x * di) % di) for x in lam)
        gens.append((di, w))
    return QuotientSingularityType(abs(d), gens)


def _int_inverse(U):
    n = len(U)
    from .exact import ExactMatrix

    inv = ExactMatrix(U).inverse()
    return [[int(x) for x in r] for r in inv.rows]


def terminal_points_check(rays: list[tuple[int, ...]]) -> tuple[bool, tuple[int, ...] | None]:
    """Lattice points of conv(0, rays) other than 0 and the rays, by box scan.

    Works for any full-dimensional cone whose rays lie on a common affine
    hyperplane m . v = 1 (the Q-Gorenstein condition); returns (False,
    None) when no such hyperplane exists.
    """
    n = len(rays[0])
    m = solve_any([list(r) for r in rays], [1] * len(rays))
    if m is None:
        return False, None
    den = 1
    for x in m:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    m_int = np.array([int(Fraction(x) * den) for x in m], dtype=np.int64)
    R = np.array(rays, dtype=np.int64)
    lo = np.minimum(R.min(axis=0), 0)
    hi = np.maximum(R.max(axis=0), 0)
    if len(rays) == n:
        Vcols = [[rays[j][i] for j in range(n)] for i in range(n)]
        D = det(Vcols)
        adj = _adjugate(Vcols)
        A = np.array(adj, dtype=np.int64) * (1 if D > 0 else -1)
        absD = abs(D)
        ineqs = None
    else:
        facets = cone_facets([tuple(r) for r in rays])
        ineqs = np.array([f[0] for f in facets], dtype=np.int64)
    ray_set = {tuple(int(x) for x in r) for r in rays}
    for box in _box_chunks(lo, hi):
        if ineqs is None:
            lam = box @ A.T  # = |det| * barycentric coordinates
            inside = np.all(lam >= 0, axis=1) & (lam.sum(axis=1) <= absD)
        else:
            inside = np.all(box @ ineqs.T >= 0, axis=1) & (box @ m_int <= den)
        for p in box[inside]:
            t = tuple(int(x) for x in p)
            if any(t) and t not in ray_set:
                return False, t
    return True, None


def _box_chunks(lo, hi, chunk: int = 1 << 20):
    ranges = [np.arange(a, b + 1, dtype=np.int64) for a, b in zip(lo, hi)]
    sizes = [len(r) for r in ranges]
    total = int(np.prod(sizes))
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        cols = []
        for r, s in zip(reversed(ranges), reversed(sizes)):
            cols.append(r[idx % s])
            idx = idx // s
        yield np.stack(list(reversed(cols)), axis=1)


def _adjugate(M):
    n = len(M)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1 :] for k, row in enumerate(M) if k != i]
            adj[j][i] = (-1) ** (i + j) * det(minor)
    return adj


def pulling_triangulation(rays: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Triangulate a full-dimensional cone using only its rays.

    Recursive pulling: pick the first ray, triangulate each facet not
    containing it, and cone over the result.  Faces of faces are
    intersections of facets of the whole cone.
    """
    n = len(rays[0])
    facets = [f for _, f in cone_facets(rays)]

    def faces_below(face: frozenset[int], d: int) -> list[frozenset[int]]:
        cands = set()
        for f in facets:
            g = face & f
            if g != face and g and rank([list(rays[i]) for i in g]) == d - 1:
                cands.add(g)
        return [g for g in cands if not any(g < h for h in cands)]

    def tri(face: frozenset[int], d: int) -> list[tuple[int, ...]]:
        if len(face) == d:
            return [tuple(sorted(face))]
        apex = min(face)
        out = []
        for g in faces_below(face, d):
            if apex in g:
                continue
            for s in tri(g, d - 1):
                out.append(tuple(sorted(s + (apex,))))
        return out

    return tri(frozenset(range(len(rays))), n)


# ---------------------------------------------------------------------------
# Fans


@dataclass
class ConeReport:
    index: int
    rays: tuple[int, ...]
    simplicial: bool
    index_det: int | None
    qtype: str | None
    terminal_points: bool
    terminal_reid_tai: bool | None
    pieces: int = 1


@dataclass
class Fan:
    rays: list[tuple[int, ...]]
    cones: list[tuple[int, ...]]
    lattice: IntLattice | None = None
    name: str = ""
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.rays = [tuple(int(x) for x in r) for r in self.rays]
        self.cones = [tuple(sorted(c)) for c in self.cones]
        for r in self.rays:
            if primitive(r) != r:
                raise ValueError(f"ray {r} is not primitive")

    @classmethod
    def from_ambient(cls, rays_ambient, cones, lattice: IntLattice, name: str = "") -> "Fan":
        """Express ambient rational ray vectors in lattice coordinates."""
        rays = []
        for v in rays_ambient:
            c = lattice.coordinates(v)
            if any(x.denominator != 1 for x in c):
                raise ValueError(f"ray {v} is not a lattice vector")
            rays.append(primitive(c))
        return cls(rays, cones, lattice, name)

    @property
    def dim(self) -> int:
        return len(self.rays[0])

    def cone_rays(self, i: int) -> list[tuple[int, ...]]:
        return [self.rays[j] for j in self.cones[i]]

    def is_simplicial(self) -> bool:
        return all(len(c) == self.dim and rank([list(r) for r in self.cone_rays(i)]) == self.dim for i, c in enumerate(self.cones))

    def cone_det(self, i: int) -> int:
        return abs(det([list(r) for r in self.cone_rays(i)]))

    def is_smooth(self) -> bool:
        return all(len(c) == self.dim and self.cone_det(i) == 1 for i, c in enumerate(self.cones))

    # -- class and Picard groups ------------------------------------------------

    def class_group(self) -> tuple[int, list[int]]:
        """(rank, torsion invariants) of Z^rays / M."""
        n = self.dim
        if rank([list(r) for r in self.rays]) != n:
            raise ValueError("rays do not span the lattice over Q")
        D, _, _ = smith_normal_form([list(r) for r in self.rays])
        diag = [D[i][i] for i in range(n)]
        return len(self.rays) - n, [d for d in diag if d > 1]

    def picard_rank(self) -> int:
        """Rank of the divisors that are linear on every maximal cone, modulo M."""
        if not self.spot_check_complete():
            raise ValueError("fan is not complete")
        constraints = []
        nr = len(self.rays)
        for c in self.cones:
            V = [list(self.rays[j]) for j in c]
            # a|_c must lie in the column space of V: c . a = 0 for all c in left kernel
            VT = [list(col) for col in zip(*V)]
            for k in nullspace(VT, len(c)):
                row = [Fraction(0)] * nr
                for coef, j in zip(k, c):
                    row[j] = coef
                constraints.append(row)
        cdiv = nr - (rank(constraints) if constraints else 0)
        return cdiv - self.dim

    # -- terminality and types -------------------------------------------------

    def quotient_type(self, i: int) -> QuotientSingularityType:
        return quotient_singularity_type(self.cone_rays(i))

    def cone_report(self, i: int) -> ConeReport:
        rays = self.cone_rays(i)
        simp = len(rays) == self.dim and rank([list(r) for r in rays]) == self.dim
        term, _ = terminal_points_check(rays)
        if simp:
            qt = quotient_singularity_type(rays)
            rt = reid_tai_on_type(qt)
            return ConeReport(i, self.cones[i], True, qt.order, str(qt), term, rt)
        pieces = pulling_triangulation(rays)
        verdicts = []
        types = []
        for s in pieces:
            sub = [rays[k] for k in s]
            qt = quotient_singularity_type(sub)
            types.append(str(qt))
            verdicts.append(reid_tai_on_type(qt) and terminal_points_check(sub)[0])
        return ConeReport(i, self.cones[i], False, None, "; ".join(types), term, all(verdicts), len(pieces))

    def is_terminal(self) -> tuple[bool, int | None]:
        """(terminal?, index of the first offending cone)."""
        for i in range(len(self.cones)):
            ok, _ = terminal_points_check(self.cone_rays(i))
            if not ok:
                return False, i
        return True, None

    def singular_cone_types(self) -> dict[str, int]:
        """Multiset of types of singular simplicial faces of every dimension."""
        out: dict[str, int] = {}
        for face in self.all_cones():
            rays = [self.rays[j] for j in face]
            if len(rays) < 2 or rank([list(r) for r in rays]) != len(rays):
                continue
            qt = face_quotient_type(rays)
            if qt.order > 1:
                label = str(qt.as_cyclic().normalized()) if qt.is_cyclic() else str(qt)
                key = f"dim {len(rays)}: {label}"
                out[key] = out.get(key, 0) + 1
        return dict(sorted(out.items()))

    def all_cones(self) -> list[tuple[int, ...]]:
        """Every cone of the fan (faces of maximal cones), as ray index tuples."""
        seen = set()
        for c in self.cones:
            rays = [self.rays[j] for j in c]
            facets = [f for _, f in cone_facets(rays)]
            faces = {frozenset(range(len(c)))}
            frontier = [frozenset(range(len(c)))]
            while frontier:
                nxt = []
                for F in frontier:
                    for f in facets:
                        g = F & f
                        if g and g not in faces:
                            faces.add(g)
                            nxt.append(g)
                frontier = nxt
            for F in faces:
                seen.add(tuple(sorted(c[k] for k in F)))
        return sorted(seen, key=lambda t: (len(t), t))

    # -- completeness ------------------------------------------------------------

    def spot_check_complete(self, samples: int = 200, seed: int = 7) -> bool:
        """Random rational directions all fall into some maximal cone."""
        if getattr(self, "_complete", None) is not None:
            return self._complete
        rng = random.Random(seed)
        hreps = [cone_facets(self.cone_rays(i)) for i in range(len(self.cones))]
        ok = True
        for _ in range(samples):
            v = [rng.randint(-1000, 1000) for _ in range(self.dim)]
            if not any(v):
                continue
            if not any(all(sum(a * b for a, b in zip(nrm, v)) >= 0 for nrm, _ in h) for h in hreps):
                ok = False
                break
        self._complete = ok
        return ok

    # -- anticanonical polytope --------------------------------------------------

    def is_fano(self) -> bool:
        """-K is Q-Cartier and strictly convex on the fan."""
        for i, c in enumerate(self.cones):
            rays = self.cone_rays(i)
            m = solve_any([list(r) for r in rays], [-1] * len(rays))
            if m is None:
                return False
            for j, r in enumerate(self.rays):
                if j not in c and sum(a * b for a, b in zip(m, r)) <= -1:
                    return False
        return self.spot_check_complete()

    def anticanonical_polytope(self) -> "RationalPolytope":
        """{u : <u, v> >= -1 for every ray v}."""
        if not self.spot_check_complete():
            raise ValueError("fan is not complete; the dual polytope is unbounded")
        n = self.dim
        verts = set()
        R = [list(r) for r in self.rays]
        for sub in combinations(range(len(R)), n):
            M = [R[i] for i in sub]
            if det(M) == 0:
                continue
            u = tuple(solve(M, [-1] * n))
            if all(sum(a * b for a, b in zip(u, r)) >= -1 for r in R):
                verts.add(u)
        ineqs = [(tuple(Fraction(x) for x in r), Fraction(-1)) for r in R]
        return RationalPolytope(sorted(verts), ineqs)

    def anticanonical_degree(self) -> Fraction:
        return self.anticanonical_polytope().normalized_volume()

    # -- IO ----------------------------------------------------------------------

    def to_text(self) -> str:
        from .exact import ExactMatrix, format_matrix

        lines = []
        if self.lattice is not None:
            lines.append("lattice:")
            lines.append(format_matrix(ExactMatrix(self.lattice.basis_rational())))
        lines.append("rays:")
        lines.extend(" ".join(map(str, r)) for r in self.rays)
        lines.append("cones:")
        lines.extend(" ".join(map(str, c)) for c in self.cones)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Fan":
        from .exact import parse_matrix

        blocks: dict[str, list[str]] = {}
        cur = None
        for ln in text.splitlines():
            s = ln.strip()
            if not s or s.startswith("#"):
                continue
            if s.endswith(":") and s[:-1] in ("lattice", "rays", "cones"):
                cur = s[:-1]
                blocks[cur] = []
                continue
            if cur is None:
                raise ValueError(f"unexpected line before any block: {s!r}")
            blocks[cur].append(s)
        if "rays" not in blocks or "cones" not in blocks:
            raise ValueError("fan file needs rays: and cones: blocks")
        lattice = None
        if "lattice" in blocks:
            B = parse_matrix("\n".join(blocks["lattice"]))
            lattice = IntLattice.from_generators(B.tolist())
        rays = [tuple(int(x) for x in s.split()) for s in blocks["rays"]]
        cones = [tuple(int(x) for x in s.split()) for s in blocks["cones"]]
        return cls(rays, cones, lattice)


def invariants_report(fan: Fan, with_types: bool = True) -> dict:
    """Headline invariants of a complete fan as a plain dict."""
    rank_cl, torsion = fan.class_group()
    terminal, _ = fan.is_terminal()
    fano = fan.is_fano()
    out = {
        "rays": len(fan.rays),
        "max_cones": len(fan.cones),
        "smooth": fan.is_smooth(),
        "simplicial": fan.is_simplicial(),
        "terminal": terminal,
        "cl_rank": rank_cl,
        "cl_torsion": torsion,
        "pic_rank": fan.picard_rank(),
        "fano": fano,
        "antican_degree": str(fan.anticanonical_degree()) if fano else None,
    }
    if with_types:
        out["singular_cone_types"] = fan.singular_cone_types()
    return out


def face_quotient_type(rays: list[tuple[int, ...]]) -> QuotientSingularityType:
    """Quotient type of a simplicial cone of any dimension, in its own linear span.

    The saturation of the span is computed with the Smith form; the
    generators are then written in a basis of the saturated lattice.
    """
    k = len(rays)
    n = len(rays[0])
    if k == n:
        return quotient_singularity_type(rays)
    # columns = rays; D = U V W.  Rows of U^{-1} first k columns span saturation.
    Vcols = [[rays[j][i] for j in range(k)] for i in range(n)]
    D, U, W = smith_normal_form(Vcols)
    # U V W = D  =>  V = U^{-1} D W^{-1}; in the basis U^{-1} e_1..e_k the rays have coordinates D W^{-1}.
    Winv = _int_inverse(W)
    coords = [[D[i][i] * Winv[i][j] for i in range(k)] for j in range(k)]
    return quotient_singularity_type([tuple(c) for c in coords])


def reid_tai_on_type(qt: QuotientSingularityType) -> bool:
    """Reid-Tai sum condition on every nontrivial element of the abelian group."""
    if qt.is_cyclic():
        return is_terminal_reid_tai(qt.as_cyclic()).terminal
    orders = [d for d, _ in qt.generators]
    n = len(qt.generators[0][1])
    for coeffs in product(*[range(d) for d in orders]):
        if not any(coeffs):
            continue
        frac = [Fraction(0)] * n
        for c, (d, w) in zip(coeffs, qt.generators):
            for i in range(n):
                frac[i] += Fraction(c * w[i], d)
        fr = [x - (x.numerator // x.denominator) for x in frac]
        if any(fr) and sum(fr) <= 1:
            return False
    return True


# ---------------------------------------------------------------------------
# Rational polytopes given by inequalities and vertices


class RationalPolytope:
    """Bounded polytope {u : a . u >= b} with its vertex list."""

    def __init__(self, vertices, inequalities):
        self.vertices = [tuple(Fraction(x) for x in v) for v in vertices]
        self.inequalities = inequalities
        self.dim = len(self.vertices[0]) if self.vertices else 0

    def _facet_sets(self) -> list[frozenset[int]]:
        out = set()
        for a, b in self.inequalities:
            on = frozenset(i for i, v in enumerate(self.vertices) if sum(x * y for x, y in zip(a, v)) == b)
            if len(on) >= self.dim and self._affine_dim(on) == self.dim - 1:
                out.add(on)
        return sorted(out, key=sorted)

    def _affine_dim(self, idx) -> int:
        idx = sorted(idx)
        if not idx:
            return -1
        p0 = self.vertices[idx[0]]
        return rank([[x - y for x, y in zip(self.vertices[i], p0)] for i in idx[1:]]) if len(idx) > 1 else 0

    def _barycenter(self, idx) -> tuple[Fraction, ...]:
        idx = list(idx)
        return tuple(sum((self.vertices[i][k] for i in idx), Fraction(0)) / len(idx) for k in range(self.dim))

    def normalized_volume(self) -> Fraction:
        """n! times the Euclidean volume, via the barycentric subdivision."""
        n = self.dim
        facets = self._facet_sets()
        full = frozenset(range(len(self.vertices)))
        if self._affine_dim(full) != n:
            raise ValueError("polytope is not full-dimensional")
        memo: dict[frozenset, list[frozenset]] = {}

        def subfaces(F: frozenset, d: int) -> list[frozenset]:
            if F in memo:
                return memo[F]
            if d == n:
                res = facets
            else:
                cands = set()
                for f in facets:
                    g = F & f
                    if g != F and g and self._affine_dim(g) == d - 1:
                        cands.add(g)
                res = [g for g in cands if not any(g < h for h in cands)]
            memo[F] = res
            return res

        total = Fraction(0)

        def walk(F: frozenset, d: int, chain: list):
            nonlocal total
            chain = chain + [self._barycenter(F)]
            if d == 0:
                p0 = chain[0]
                M = [[x - y for x, y in zip(p, p0)] for p in chain[1:]]
                total += abs(det(M))
                return
            for G in subfaces(F, d):
                walk(G, d - 1, chain)

        walk(full, n, [])
        return total

    def volume(self) -> Fraction:
        return self.normalized_volume() / factorial(self.dim)
