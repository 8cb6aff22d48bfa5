"""Semirigidity of finite equivalence systems and the plane constructions.

A system is semirigid when its only unary preserving maps are the identity
and the constants.  Plane point sets carry the three kernels of x, y and
x + y; exact rational coordinates keep the kernel relations decidable.

Only finite carriers are decided here.  Monogenic asymmetric plane sets of
every cardinality up to the continuum yield semirigid systems; whether any
exist on strictly larger sets is an open problem, out of reach of
computation.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .partitions import EquivSystem, Partition
from .spaces import SizeGuard

Point = tuple[Fraction, Fraction]


def point(x, y) -> Point:
    return (Fraction(x), Fraction(y))


def parse_points(payload: Iterable) -> tuple[Point, ...]:
    pts = []
    for p in payload:
        x, y = p
        pts.append((Fraction(str(x)), Fraction(str(y))))
    if len(set(pts)) != len(pts):
        raise ValueError("duplicate points")
    return tuple(sorted(pts))


def points_to_json(points: Iterable[Point]) -> list[list[str]]:
    return [[str(x), str(y)] for x, y in points]


# --- systems ------------------------------------------------------------------


def plane_system(points: Sequence[Point]) -> EquivSystem:
    """The three kernels on a plane set: equal x, equal y, equal x + y."""
    pts = tuple(sorted(points))

    def kernel(proj):
        groups: dict = {}
        for p in pts:
            groups.setdefault(proj(p), []).append(p)
        return Partition.from_blocks(pts, groups.values())

    return EquivSystem(pts, (kernel(lambda p: p[0]),
                             kernel(lambda p: p[1]),
                             kernel(lambda p: p[0] + p[1])))


def zadori_system(n: int) -> EquivSystem:
    """The three-relation semirigid system on n points (n = 3 or n > 4).

    Even n = 2k+2 uses the displayed blocks (unlisted elements are
    singletons); odd n deletes element 0 of the (n+1)-point system and
    relabels i to i-1."""
    if n in (1, 2, 4) or n <= 0:
        raise ValueError(f"no system for n = {n}")
    if n % 2 == 0:
        return _zadori_even(n)
    big = _zadori_even(n + 1)
    keep = [x for x in big.carrier if x != 0]
    relabel = {x: x - 1 for x in keep}
    carrier = tuple(relabel[x] for x in keep)
    rels = []
    for rho in big.relations:
        blocks = [[relabel[x] for x in b if x != 0] for b in rho.blocks]
        rels.append(Partition.from_blocks(carrier, [b for b in blocks if b]))
    return EquivSystem(carrier, tuple(rels))


def _zadori_even(n: int) -> EquivSystem:
    k = (n - 2) // 2
    carrier = tuple(range(n))
    rho = [[0], list(range(1, k + 1)), list(range(k + 1, 2 * k + 2))]
    sigma = [[0, 1, k + 1]] + [[i, k + i] for i in range(2, k + 1)]
    tau = [[i, k + 1 + i] for i in range(1, k)] + [[0, k, 2 * k + 1]]
    return EquivSystem.of(carrier, [rho, sigma, tau])


# --- semirigidity deciders ------------------------------------------------------


def preserving_maps(system: EquivSystem, guard: int = 7):
    """Every preserving self map, by exhaustive enumeration (the oracle)."""
    n = len(system.carrier)
    if n > guard:
        raise SizeGuard(f"{n}^{n} maps exceed the exhaustive guard")
    blocks = [[rho.block_id(x) for x in system.carrier] for rho in system.relations]
    grouped = [[[i for i, x in enumerate(system.carrier) if rho.same(x, b[0])]
                for b in rho.blocks] for rho in system.relations]
    for values in itertools.product(range(n), repeat=n):
        ok = True
        for ids, groups in zip(blocks, grouped):
            for members in groups:
                first = ids[values[members[0]]]
                if any(ids[values[m]] != first for m in members[1:]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield {system.carrier[i]: system.carrier[v]
                   for i, v in enumerate(values)}


def is_semirigid_bruteforce(system: EquivSystem, guard: int = 7
                            ) -> tuple[bool, Optional[dict]]:
    for f in preserving_maps(system, guard):
        if _is_witness(system.carrier, f):
            return False, f
    return True, None


def _is_witness(carrier, f) -> bool:
    return any(f[x] != x for x in carrier) and len(set(f.values())) > 1


def is_semirigid(system: EquivSystem, guard: int = 12
                 ) -> tuple[bool, Optional[dict]]:
    """Backtracking search for a preserving map that is neither the identity
    nor constant; most-constrained-first variable order with forward
    checking, branching on a forced non-fixed point first."""
    carrier = system.carrier
    n = len(carrier)
    if n > guard:
        raise SizeGuard(f"{n} points exceeds the backtracking guard {guard}")
    if n <= 1:
        return True, None
    rel_ids = [{x: rho.block_id(x) for x in carrier} for rho in system.relations]

    def consistent(x, v, assign):
        # preservation: x ~ y forces f(x) ~ f(y), per relation
        for ids in rel_ids:
            ix, iv = ids[x], ids[v]
            for y, w in assign.items():
                if ids[y] == ix and ids[w] != iv:
                    return False
        return True

    def search(assign, domains) -> Optional[dict]:
        if len(assign) == n:
            return dict(assign) if _is_witness(carrier, assign) else None
        x = min((y for y in carrier if y not in assign),
                key=lambda y: len(domains[y]))
        for v in list(domains[x]):
            if not consistent(x, v, assign):
                continue
            assign[x] = v
            pruned = {}
            dead = False
            for y in carrier:
                if y in assign:
                    continue
                keep = {w for w in domains[y] if consistent(y, w, assign)}
                pruned[y] = domains[y]
                domains[y] = keep
                if not keep:
                    dead = True
                    break
            if not dead:
                found = search(assign, domains)
                if found:
                    return found
            domains.update(pruned)
            del assign[x]
        return None

    # seed with f(x0) != x0: every non-identity map moves some point, and
    # constants are filtered at the leaves
    for x0 in carrier:
        for v0 in carrier:
            if v0 == x0:
                continue
            assign = {x0: v0}
            domains = {y: set(carrier) for y in carrier if y != x0}
            witness = search(assign, domains)
            if witness:
                return False, witness
    return True, None


# --- plane geometry -------------------------------------------------------------


@dataclass(frozen=True)
class Triangle:
    """Ordered triangle (u0, u1, u2): u0 and u1 share y, u1 and u2 share the
    coordinate sum, u2 and u0 share x."""

    u0: Point
    u1: Point
    u2: Point

    def __post_init__(self):
        if not (self.u0[1] == self.u1[1]
                and self.u1[0] + self.u1[1] == self.u2[0] + self.u2[1]
                and self.u2[0] == self.u0[0]
                and len({self.u0, self.u1, self.u2}) == 3):
            raise ValueError("points do not form a triangle")

    def points(self) -> frozenset[Point]:
        return frozenset((self.u0, self.u1, self.u2))


def triangles(points: Sequence[Point]) -> list[Triangle]:
    """All nontrivial triangles in the set: corner (a,b) with (a+t,b) and
    (a,b+t) for a nonzero offset t."""
    pts = set(points)
    out = []
    for (a, b) in sorted(pts):
        for (c, d) in sorted(pts):
            if d == b and c != a:
                t = c - a
                if (a, b + t) in pts:
                    out.append(Triangle((a, b), (c, d), (a, b + t)))
    return out


def is_monogenic(points: Sequence[Point]
                 ) -> tuple[bool, Optional[tuple[Point, ...]]]:
    """Whether a seed of at most two points generates the whole set.

    Generation walks the triangle hypergraph two points at a time: a triangle
    is reached when it shares two points with the seed or with an earlier
    triangle.  Every point must be covered by the seed or a reached triangle;
    without the coverage requirement a triangle-free set would count as
    monogenic, which would break the semirigidity theorem.
    """
    pts = tuple(sorted(points))
    tris = triangles(pts)
    seeds = [()] if not pts else \
        [(p,) for p in pts] + list(itertools.combinations(pts, 2))
    for seed in seeds:
        reached_pts = set(seed)
        remaining = list(tris)
        grew = True
        reached_tris = []
        while grew:
            grew = False
            for t in list(remaining):
                if len(t.points() & reached_pts) >= 2:
                    remaining.remove(t)
                    reached_tris.append(t)
                    reached_pts |= t.points()
                    grew = True
        if not remaining and reached_pts == set(pts):
            return True, seed
    return False, None


def has_center_of_symmetry(points: Sequence[Point]
                           ) -> tuple[bool, Optional[Point]]:
    """Search pairwise midpoints (and the bounding-box midpoint) for a point
    c with 2c - C = C; a center fixing a point of C is that point itself and
    is covered by the self-midpoints."""
    pts = sorted(points)
    if not pts:
        return False, None
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    candidates = {((min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2)}
    candidates.update(((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)
                      for p in pts for q in pts)
    sset = set(pts)
    for c in sorted(candidates):
        if all((2 * c[0] - p[0], 2 * c[1] - p[1]) in sset for p in pts):
            return True, c
    return False, None


# --- stock point sets -----------------------------------------------------------


def t_n(n: int) -> tuple[Point, ...]:
    """Lattice triangle {(i, j) : i + j <= n}, (n+1)(n+2)/2 points."""
    if n < 1:
        raise ValueError("n must be positive")
    return tuple(sorted(point(i, j) for i in range(n + 1)
                        for j in range(n + 1 - i)))


def t_n2(n: int) -> tuple[Point, ...]:
    """The two outer layers of t_n: points with i + j in {n-1, n}."""
    return tuple(sorted(p for p in t_n(n) if p[0] + p[1] in (n - 1, n)))


def t_n2_prime(n: int) -> tuple[Point, ...]:
    return tuple(sorted(set(t_n2(n)) | {point(0, 0)}))


def band_truncation(x_range: tuple[int, int]) -> tuple[Point, ...]:
    """Finite slice of the infinite band {x + y in {1, 2}} plus the origin."""
    lo, hi = x_range
    pts = {point(0, 0)}
    for x in range(lo, hi + 1):
        pts.add(point(x, 1 - x))
        pts.add(point(x, 2 - x))
    return tuple(sorted(pts))


def system_isomorphism(a: EquivSystem, b: EquivSystem) -> Optional[dict]:
    """A carrier bijection carrying the relations of one system onto the
    other's, in some relation order; None when none exists."""
    if len(a.carrier) != len(b.carrier) or \
            len(a.relations) != len(b.relations):
        return None

    def profile(system, x, perm):
        return tuple(len(system.relations[i].block_of(x))
                     for i in perm)

    for perm in itertools.permutations(range(len(b.relations))):
        sizes_a = sorted(sorted(len(blk) for blk in r.blocks)
                         for r in a.relations)
        sizes_b = sorted(sorted(len(b.relations[i].blocks[j])
                                for j in range(len(b.relations[i].blocks)))
                         for i in perm)
        if sizes_a != sizes_b:
            continue
        prof_b: dict = {}
        for y in b.carrier:
            prof_b.setdefault(profile(b, y, perm), []).append(y)

        def backtrack(assign: dict) -> Optional[dict]:
            if len(assign) == len(a.carrier):
                return dict(assign)
            x = next(z for z in a.carrier if z not in assign)
            for y in prof_b.get(profile(a, x, range(len(a.relations))), []):
                if y in assign.values():
                    continue
                ok = all(a.relations[i].same(x, z) ==
                         b.relations[perm[i]].same(y, w)
                         for i in range(len(a.relations))
                         for z, w in assign.items())
                if ok:
                    assign[x] = y
                    found = backtrack(assign)
                    if found:
                        return found
                    del assign[x]
            return None

        iso = backtrack({})
        if iso:
            return iso
    return None
