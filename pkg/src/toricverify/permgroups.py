"""Finite permutation groups: orbits, blocks, primitivity, orbits on subsets.

Points are stored 0-based internally; the cycle-notation text format is
1-based, e.g. ``"(1 2 3)(4 5)"``.  Orbit computations work from generators
only, so large groups such as S_8 never need to be enumerated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb, factorial
import re

ELEMENT_CAP = 10**7


class Perm:
    """Permutation of {0, ..., r-1}; ``p(i)`` is the image of ``i``."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        self.images = images

    @classmethod
    def identity(cls, r: int) -> "Perm":
        return cls(range(r))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> "Perm":
        return parse_cycles(text, degree)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Perm") -> "Perm":
        """Left-to-right product: ``(p * q)(i) = q(p(i))``."""
        q = other.images
        return Perm(tuple(q[i] for i in self.images))

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(inv)

    def __pow__(self, k: int) -> "Perm":
        if k < 0:
            return self.inverse() ** (-k)
        out = Perm.identity(self.degree)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def order(self) -> int:
        from math import lcm

        o = 1
        for c in self.cycles():
            o = lcm(o, len(c))
        return o

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i]:
                continue
            c = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                c.append(j)
                seen[j] = True
                j = self.images[j]
            if len(c) > 1 or include_fixed:
                out.append(tuple(c))
        return out

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Perm({format_cycles(self)!r}, degree={self.degree})"


def parse_cycles(text: str, degree: int) -> Perm:
    """Parse 1-based cycle notation; ``"()"`` or ``""`` is the identity."""
    images = list(range(degree))
    for body in re.findall(r"\(([^()]*)\)", text):
        pts = [int(t) - 1 for t in body.replace(",", " ").split()]
        if any(p < 0 or p >= degree for p in pts):
            raise ValueError(f"point out of range in {text!r}")
        if len(set(pts)) != len(pts):
            raise ValueError(f"repeated point in cycle {body!r}")
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a] = b
    # Cycles are applied independently; disjointness is required.
    return Perm(images)


def format_cycles(p: Perm) -> str:
    cyc = p.cycles()
    if not cyc:
        return "()"
    return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cyc)


@dataclass
class PermGroup:
    """Permutation group given by generators; elements materialised on demand."""

    degree: int
    generators: list[Perm]
    _elements: list[Perm] | None = field(default=None, repr=False)

    def __post_init__(self):
        if not self.generators:
            self.generators = [Perm.identity(self.degree)]
        if any(g.degree != self.degree for g in self.generators):
            raise ValueError("generator degree mismatch")

    @classmethod
    def from_cycles(cls, degree: int, *gens: str) -> "PermGroup":
        return cls(degree, [parse_cycles(g, degree) for g in gens])

    # -- elements -----------------------------------------------------------

    def elements(self, cap: int = ELEMENT_CAP) -> list[Perm]:
        if self._elements is None:
            self._elements = closure(self.generators, self.degree, cap)
        return self._elements

    def order(self) -> int:
        return len(self.elements())

    def contains(self, p: Perm) -> bool:
        return p in set(self.elements())

    # -- orbits on points -----------------------------------------------------

    def orbits(self) -> list[list[int]]:
        return orbits_of(self.generators, range(self.degree), lambda g, x: g.images[x])

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    # -- orbits on subsets ----------------------------------------------------

    def orbits_on_k_subsets(self, k: int) -> list[list[frozenset[int]]]:
        pts = [frozenset(c) for c in combinations(range(self.degree), k)]
        return orbits_of(self.generators, pts, lambda g, s: frozenset(g.images[i] for i in s))

    def pair_orbit_lengths(self) -> list[int]:
        return sorted(len(o) for o in self.orbits_on_k_subsets(2))

    def min_orbit_on_k_subsets(self, k: int) -> int:
        if not 0 < k < self.degree:
            raise ValueError("need 0 < k < degree")
        return min(len(o) for o in self.orbits_on_k_subsets(k))

    # -- blocks ---------------------------------------------------------------

    def minimal_block(self, beta: int, alpha: int = 0) -> list[list[int]]:
        """Finest block system in which ``alpha`` and ``beta`` share a block."""
        return minimal_block_system(self.generators, self.degree, alpha, beta)

    def is_primitive(self) -> tuple[bool, list[list[int]] | None]:
        """(True, None) or (False, witness block system)."""
        orbs = self.orbits()
        if len(orbs) > 1:
            return False, orbs
        if self.degree <= 2:
            return True, None
        best = None
        for beta in range(1, self.degree):
            blocks = self.minimal_block(beta)
            if len(blocks) > 1:
                if best is None or len(blocks[0]) < len(best[0]):
                    best = blocks
        if best is None:
            return True, None
        return False, best


def closure(gens: list[Perm], degree: int, cap: int = ELEMENT_CAP) -> list[Perm]:
    """All elements of <gens> by breadth-first multiplication."""
    ident = tuple(range(degree))
    seen = {ident}
    out = [ident]
    frontier = [ident]
    gimgs = [g.images for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gimgs:
                y = tuple(g[i] for i in x)
                if y not in seen:
                    seen.add(y)
                    out.append(y)
                    nxt.append(y)
                    if len(out) > cap:
                        raise OverflowError(f"group exceeds {cap} elements")
        frontier = nxt
    return [Perm(p) for p in out]


def orbits_of(gens, points, act) -> list[list]:
    """Orbits of a point set under generators; deterministic order."""
    pts = list(points)
    index = {p: i for i, p in enumerate(pts)}
    seen = [False] * len(pts)
    out = []
    for i, p in enumerate(pts):
        if seen[i]:
            continue
        orb = [p]
        seen[i] = True
        k = 0
        while k < len(orb):
            x = orb[k]
            k += 1
            for g in gens:
                y = act(g, x)
                j = index[y]
                if not seen[j]:
                    seen[j] = True
                    orb.append(y)
        out.append(orb)
    return out


def minimal_block_system(gens: list[Perm], degree: int, alpha: int, beta: int) -> list[list[int]]:
    """Atkinson's union-find refinement for the block containing {alpha, beta}."""
    parent = list(range(degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pending = []

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
            pending.append((a, b))

    union(alpha, beta)
    while pending:
        a, b = pending.pop()
        for g in gens:
            union(g.images[a], g.images[b])
    classes: dict[int, list[int]] = {}
    for x in range(degree):
        classes.setdefault(find(x), []).append(x)
    return sorted(classes.values())


def is_block_system(gens: list[Perm], blocks: list[list[int]]) -> bool:
    bset = {frozenset(b) for b in blocks}
    return all(frozenset(g.images[x] for x in b) in bset for g in gens for b in blocks)


# ---------------------------------------------------------------------------
# Standard groups


def cyclic_group(r: int) -> PermGroup:
    return PermGroup(r, [Perm([(i + 1) % r for i in range(r)])])


def dihedral_group(r: int) -> PermGroup:
    """Regular dihedral group of order 2r acting on the r vertices of a polygon."""
    rot = Perm([(i + 1) % r for i in range(r)])
    ref = Perm([(-i) % r for i in range(r)])
    return PermGroup(r, [rot, ref])


def symmetric_group(r: int) -> PermGroup:
    if r == 1:
        return PermGroup(1, [Perm([0])])
    gens = [Perm([(i + 1) % r for i in range(r)])]
    if r > 2:
        gens.append(Perm([1, 0] + list(range(2, r))))
    return PermGroup(r, gens)


def alternating_group(r: int) -> PermGroup:
    if r < 3:
        return PermGroup(r, [Perm.identity(r)])
    gens = []
    for i in range(r - 2):
        images = list(range(r))
        images[i], images[i + 1], images[i + 2] = images[i + 1], images[i + 2], images[i]
        gens.append(Perm(images))
    return PermGroup(r, gens)


def psl27_on_7_points() -> PermGroup:
    """PSL(3,2) on the 7 points of the Fano plane with lines {i, i+1, i+3} mod 7."""
    return PermGroup.from_cycles(7, "(1 2 3 4 5 6 7)", "(3 5)(6 7)")


def psl27_on_8_points() -> PermGroup:
    """PSL_2(F_7) on the projective line; point k <-> k-1 for k <= 7, 8 <-> infinity."""
    # x -> x + 1 and x -> -1/x on F_7 u {inf}
    def idx(x):
        return 7 if x is None else x

    t = [0] * 8
    s = [0] * 8
    for x in list(range(7)) + [None]:
        t[idx(x)] = idx(None if x is None else (x + 1) % 7)
        if x is None:
            img = 0
        elif x == 0:
            img = None
        else:
            img = (-pow(x, -1, 7)) % 7
        s[idx(x)] = idx(img)
    return PermGroup(8, [Perm(t), Perm(s)])


def semidirect_5_4() -> PermGroup:
    """The affine group of F_5 generated by (1 2 3 4 5) and (2 3 5 4)."""
    return PermGroup.from_cycles(5, "(1 2 3 4 5)", "(2 3 5 4)")


# ---------------------------------------------------------------------------
# Regular cyclic / dihedral recognition and the pair-orbit bound


@dataclass
class RegularModel:
    kind: str  # "cyclic" or "dihedral"
    order: int
    conjugator: Perm  # maps the group onto the standard model by relabelling


def recognize_regular_model(G: PermGroup) -> RegularModel | None:
    """Relabel along an r-cycle and compare with the standard mu_r or D_r.

    Returns the model and the relabelling permutation ``pi`` such that
    ``pi^-1 * g * pi`` lies in the standard model for every g in G.
    """
    r = G.degree
    try:
        elems = G.elements(cap=2 * r)
    except OverflowError:
        return None
    order = len(elems)
    if order not in (r, 2 * r):
        return None
    rcycle = next((g for g in elems if g.order() == r and len(g.cycles()) == 1), None)
    if rcycle is None and r > 1:
        return None
    pos = [0] * r
    x = 0
    for k in range(r):
        pos[x] = k
        x = rcycle(x) if rcycle is not None else x
    pi = Perm(pos)
    relabelled = {pi.inverse() * g * pi for g in elems}
    std = cyclic_group(r) if order == r else dihedral_group(r)
    if relabelled == set(std.elements()):
        return RegularModel("cyclic" if order == r else "dihedral", order, pi)
    return None


@dataclass
class PairOrbitReport:
    degree: int
    pair_orbit_lengths: list[int]
    clause: str  # "i" or "ii"
    holds: bool
    model: RegularModel | None = None
    detail: str = ""


class NotPrimitiveError(ValueError):
    pass


def check_pair_orbit_bound(G: PermGroup) -> PairOrbitReport:
    """Check the pair-orbit bound for a primitive group.

    Clause (i): every orbit on unordered pairs has length >= r.  Clause (ii):
    if some orbit has length exactly r, the group is regular cyclic or
    dihedral, established by an explicit relabelling.
    """
    prim, witness = G.is_primitive()
    if not prim:
        raise NotPrimitiveError(f"group is not primitive; witness blocks {witness}")
    r = G.degree
    lengths = G.pair_orbit_lengths() if r >= 2 else []
    if not lengths:
        return PairOrbitReport(r, lengths, "i", True, detail="no pairs")
    s = min(lengths)
    if s > r:
        return PairOrbitReport(r, lengths, "i", True, detail=f"minimal pair-orbit length {s} > {r}")
    if s < r:
        return PairOrbitReport(r, lengths, "i", False, detail=f"pair-orbit of length {s} < {r}")
    model = recognize_regular_model(G)
    if model is None:
        return PairOrbitReport(r, lengths, "ii", False, detail="orbit of length r but not regular cyclic/dihedral")
    return PairOrbitReport(r, lengths, "ii", True, model, f"regular {model.kind} of order {model.order}")


# ---------------------------------------------------------------------------
# Corpus of groups for the pair-orbit property


# Generator tables for the transitive groups of degree <= 7, one per
# conjugacy class, as (label, order, generators).  Degrees <= 6 were produced
# by ``enumerate_transitive_groups`` (re-checked in the test suite); degree 7
# groups are the primitive groups of prime degree, with F21 and F42 the
# affine maps x -> 2x and x -> 3x and L(3,2) the Fano-plane automorphisms for
# lines {i, i+1, i+3}.
TRANSITIVE_TABLE: dict[int, list[tuple[str, int, list[str]]]] = {
    1: [("1", 1, ["()"])],
    2: [("C2", 2, ["(1 2)"])],
    3: [("C3", 3, ["(1 2 3)"]), ("S3", 6, ["(2 3)", "(1 2)"])],
    4: [
        ("V4", 4, ["(1 2)(3 4)", "(1 3)(2 4)"]),
        ("C4", 4, ["(1 2 3 4)"]),
        ("D4", 8, ["(3 4)", "(1 3)(2 4)"]),
        ("A4", 12, ["(2 3 4)", "(1 2)(3 4)"]),
        ("S4", 24, ["(3 4)", "(1 2 3)"]),
    ],
    5: [
        ("C5", 5, ["(1 2 3 4 5)"]),
        ("D5", 10, ["(2 3)(4 5)", "(1 2)(3 4)"]),
        ("F20", 20, ["(2 3)(4 5)", "(1 2 3 4)"]),
        ("A5", 60, ["(3 4 5)", "(1 2 3)"]),
        ("S5", 120, ["(4 5)", "(1 2 3 4)"]),
    ],
    6: [
        ("S3 regular", 6, ["(1 2)(3 4)(5 6)", "(1 3)(2 5)(4 6)"]),
        ("C6", 6, ["(1 2 3 4 5 6)"]),
        ("D6", 12, ["(3 4)(5 6)", "(1 3)(2 5)(4 6)"]),
        ("A4(6)", 12, ["(3 4)(5 6)", "(1 3 5)(2 4 6)"]),
        ("F18", 18, ["(4 5 6)", "(1 4)(2 5)(3 6)"]),
        ("24a", 24, ["(5 6)", "(1 2 5)(3 4 6)"]),
        ("24b", 24, ["(3 4)(5 6)", "(1 3 2 5)(4 6)"]),
        ("24c", 24, ["(3 4 5 6)", "(1 3)(2 5)(4 6)"]),
        ("36a", 36, ["(4 5 6)", "(1 4)(2 5 3 6)"]),
        ("36b", 36, ["(3 4)(5 6)", "(1 2 3 5 4 6)"]),
        ("48", 48, ["(3 4)(5 6)", "(1 3 2 5)"]),
        ("PSL2(5)", 60, ["(3 4)(5 6)", "(1 2 3)(4 5 6)"]),
        ("72", 72, ["(5 6)", "(1 2 3 5)(4 6)"]),
        ("PGL2(5)", 120, ["(3 4)(5 6)", "(1 2 3 4 5 6)"]),
        ("A6", 360, ["(4 5 6)", "(1 2 3 4)(5 6)"]),
        ("S6", 720, ["(5 6)", "(1 2 3 4 5)"]),
    ],
    7: [
        ("C7", 7, ["(1 2 3 4 5 6 7)"]),
        ("D7", 14, ["(1 2 3 4 5 6 7)", "(2 7)(3 6)(4 5)"]),
        ("F21", 21, ["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"]),
        ("F42", 42, ["(1 2 3 4 5 6 7)", "(2 4 3 7 5 6)"]),
        ("L(3,2)", 168, ["(1 2 3 4 5 6 7)", "(3 5)(6 7)"]),
        ("A7", 2520, ["(1 2 3 4 5 6 7)", "(1 2 3)"]),
        ("S7", 5040, ["(1 2 3 4 5 6 7)", "(1 2)"]),
    ],
}

# Numbers of conjugacy classes of transitive groups of degree 1..7.
TRANSITIVE_COUNTS = {1: 1, 2: 1, 3: 2, 4: 5, 5: 5, 6: 16, 7: 7}


def _conjugates(elems: frozenset, all_perms) -> set[frozenset]:
    out = set()
    for p in all_perms:
        inv = [0] * len(p)
        for i, j in enumerate(p):
            inv[j] = i
        out.add(frozenset(tuple(p[g[inv[i]]] for i in range(len(p))) for g in elems))
    return out


def enumerate_transitive_groups(degree: int) -> list[PermGroup]:
    """Conjugacy-class representatives of transitive subgroups of S_degree.

    Closes every pair (cycle-type representative, arbitrary element) and
    merges subgroups up to conjugation.  Every transitive group of degree
    <= 6 is 2-generated, which the class count check confirms.
    """
    from itertools import permutations

    if degree == 1:
        return [PermGroup(1, [Perm([0])])]
    allp = list(permutations(range(degree)))
    reps = {}
    for p in allp:
        ct = tuple(sorted(len(c) for c in Perm(p).cycles(include_fixed=True)))
        reps.setdefault(ct, p)
    seen: set[frozenset] = set()
    found: list[PermGroup] = []
    for a in reps.values():
        for b in allp:
            G = PermGroup(degree, [Perm(a), Perm(b)])
            if not G.is_transitive():
                continue
            el = frozenset(g.images for g in G.elements())
            if el in seen:
                continue
            seen |= _conjugates(el, allp)
            found.append(G)
    found.sort(key=lambda G: (G.order(), G.pair_orbit_lengths()))
    return found


def transitive_groups(degree: int) -> list[PermGroup]:
    """Transitive groups of the given degree (<= 7) from the generator table."""
    if degree not in TRANSITIVE_TABLE:
        raise ValueError("transitive group tables cover degree <= 7")
    out = []
    for name, order, gens in TRANSITIVE_TABLE[degree]:
        G = PermGroup.from_cycles(degree, *gens)
        if G.order() != order or not G.is_transitive():
            raise AssertionError(f"table entry {name} is inconsistent (order {G.order()})")
        out.append(G)
    if len(out) != TRANSITIVE_COUNTS[degree]:
        raise AssertionError(f"degree {degree}: {len(out)} table entries, expected {TRANSITIVE_COUNTS[degree]}")
    return out


def random_subgroups_s8(count: int, seed: int = 20240101) -> list[PermGroup]:
    """Subgroups of S_8 generated by one to three random elements."""
    import random

    rng = random.Random(seed)
    out = []
    for i in range(count):
        k = 1 + i % 3
        gens = []
        for _ in range(k):
            images = list(range(8))
            rng.shuffle(images)
            gens.append(Perm(images))
        out.append(PermGroup(8, gens))
    return out


def primitive_corpus(random_count: int = 500) -> list[tuple[str, PermGroup]]:
    corpus: list[tuple[str, PermGroup]] = []
    for d in range(1, 8):
        for i, G in enumerate(transitive_groups(d)):
            corpus.append((f"T{d}.{i + 1}", G))
    for r in range(2, 14):
        corpus.append((f"mu_{r}", cyclic_group(r)))
        corpus.append((f"D_{r}", dihedral_group(r)))
    for r in range(2, 9):
        corpus.append((f"A_{r}", alternating_group(r)))
        corpus.append((f"S_{r}", symmetric_group(r)))
    corpus.append(("PSL2(7) on 7", psl27_on_7_points()))
    corpus.append(("PSL2(7) on 8", psl27_on_8_points()))
    for i, G in enumerate(random_subgroups_s8(random_count)):
        corpus.append((f"rand_S8_{i}", G))
    return corpus


def subset_count(r: int, k: int) -> int:
    return comb(r, k)


def order_divides_factorial(G: PermGroup) -> bool:
    return factorial(G.degree) % G.order() == 0
