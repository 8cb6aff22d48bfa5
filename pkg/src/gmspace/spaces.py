"""Finite generalized metric spaces over a tabulated involutive ordered monoid.

The value monoid is given by explicit finite tables and validated at load:
the order is a partial order with the neutral element least, the operation is
associative, monotone and reversed by the self-inverse involution.
"""
from __future__ import annotations

import itertools
from typing import Iterable, Mapping, Optional, Sequence

from ._orders import MissingJoin, join_of, least_of, maximal_cliques, meet_of


class SizeGuard(ValueError):
    """An enumeration would exceed the configured size guard."""


class MonoidTable:
    """Finite involutive ordered monoid given by tables."""

    def __init__(self, elements: Sequence, leq_pairs: Iterable[tuple],
                 oplus: Mapping, involution: Mapping, zero):
        self.elements = tuple(elements)
        elems = set(self.elements)
        if len(elems) != len(self.elements):
            raise ValueError("duplicate monoid elements")
        self._leq = {(a, a) for a in self.elements} | set(map(tuple, leq_pairs))
        self._oplus = dict(oplus)
        self._inv = dict(involution)
        self.zero = zero
        self._validate(elems)

    def _validate(self, elems):
        for a, b in self._leq:
            if a not in elems or b not in elems:
                raise ValueError(f"order pair {(a, b)!r} uses unknown elements")
        for a, b in self._leq:
            if a != b and (b, a) in self._leq:
                raise ValueError(f"order is not antisymmetric at {(a, b)!r}")
            for c in self.elements:
                if (b, c) in self._leq and (a, c) not in self._leq:
                    raise ValueError("order is not transitive")
        if self.zero not in elems:
            raise ValueError("zero must be an element")
        for a in self.elements:
            if not self.leq(self.zero, a):
                raise ValueError("zero must be the least element")
            if self._inv.get(a) not in elems:
                raise ValueError(f"involution undefined at {a!r}")
            if self._inv[self._inv[a]] != a:
                raise ValueError(f"involution is not self-inverse at {a!r}")
        for a in self.elements:
            for b in self.elements:
                if (a, b) not in self._oplus or self._oplus[(a, b)] not in elems:
                    raise ValueError(f"operation undefined at {(a, b)!r}")
            if self.oplus(a, self.zero) != a or self.oplus(self.zero, a) != a:
                raise ValueError("zero is not neutral")
        for a in self.elements:
            for b in self.elements:
                if self.inv(self.oplus(a, b)) != self.oplus(self.inv(b), self.inv(a)):
                    raise ValueError("involution does not reverse the operation")
                if self.leq(a, b):
                    if not self.leq(self.inv(a), self.inv(b)):
                        raise ValueError("involution is not order-preserving")
                    for c in self.elements:
                        if not (self.leq(self.oplus(a, c), self.oplus(b, c))
                                and self.leq(self.oplus(c, a), self.oplus(c, b))):
                            raise ValueError("operation is not monotone")
                for c in self.elements:
                    if self.oplus(self.oplus(a, b), c) != self.oplus(a, self.oplus(b, c)):
                        raise ValueError("operation is not associative")

    def leq(self, a, b) -> bool:
        return (a, b) in self._leq

    def oplus(self, a, b):
        return self._oplus[(a, b)]

    def inv(self, a):
        return self._inv[a]

    def join(self, subset):
        return join_of(self.elements, subset, self.leq)

    def meet(self, subset):
        return meet_of(self.elements, subset, self.leq)

    def is_accessible(self, v) -> bool:
        """Full enumeration of the witnessing r: v not<= r and v <= r+inv(r)."""
        return any(not self.leq(v, r) and self.leq(v, self.oplus(r, self.inv(r)))
                   for r in self.elements)

    def inaccessible_elements(self) -> frozenset:
        return frozenset(v for v in self.elements if not self.is_accessible(v))

    # --- stock constructions -------------------------------------------------

    @classmethod
    def from_join_semilattice(cls, elements: Sequence,
                              leq_pairs: Iterable[tuple]) -> MonoidTable:
        """Join as the operation, identity involution, bottom as zero."""
        elements = tuple(elements)
        leq = {(a, a) for a in elements} | set(map(tuple, leq_pairs))
        def le(a, b):
            return (a, b) in leq
        bottom = least_of(elements, le)
        if bottom is None:
            raise ValueError("semilattice needs a least element")
        oplus = {(a, b): join_of(elements, [a, b], le)
                 for a in elements for b in elements}
        return cls(elements, leq, oplus, {a: a for a in elements}, bottom)

    @classmethod
    def chain(cls, n: int) -> MonoidTable:
        """The (n+1)-chain 0 < 1 < ... < n with join, identity involution."""
        elems = list(range(n + 1))
        return cls.from_join_semilattice(
            elems, [(i, j) for i in elems for j in elems if i < j])

    @classmethod
    def boolean(cls, indices: Sequence) -> MonoidTable:
        """Powerset of the index set with union; identity involution."""
        elems = [frozenset(s) for r in range(len(indices) + 1)
                 for s in itertools.combinations(indices, r)]
        return cls.from_join_semilattice(
            elems, [(a, b) for a in elems for b in elems if a < b])

    @classmethod
    def divisor_lattice(cls, n: int) -> MonoidTable:
        """Divisors of n under divisibility with lcm as the operation."""
        divs = [d for d in range(1, n + 1) if n % d == 0]
        return cls.from_join_semilattice(
            divs, [(a, b) for a in divs for b in divs if a != b and b % a == 0])

    @classmethod
    def involutive_four(cls) -> MonoidTable:
        """0 < p, m < t with p and m exchanged by the involution and every
        product of nonzero elements saturating to t.  Not meet-distributive
        (p and m meet at 0); kept as a plain involutive monoid example."""
        elems = ["0", "p", "m", "t"]
        leq = [("0", "p"), ("0", "m"), ("0", "t"), ("p", "t"), ("m", "t")]
        oplus = {}
        for a in elems:
            for b in elems:
                if a == "0":
                    oplus[(a, b)] = b
                elif b == "0":
                    oplus[(a, b)] = a
                else:
                    oplus[(a, b)] = "t"
        inv = {"0": "0", "p": "m", "m": "p", "t": "t"}
        return cls(elems, leq, oplus, inv, "0")

    @classmethod
    def zigzag_truncation(cls) -> MonoidTable:
        """Five-element quotient of the final-segment quantale of +/- words
        that collapses everything of minimal length >= 2 to the top.

        0 < n < p, m < t where n stands for the nonempty words, p and m for
        the upsets of + and -, and t for the absorbing top.  This is a finite
        involutive Heyting algebra in which only 0 is inaccessible, so every
        space over it is bounded."""
        elems = ["0", "n", "p", "m", "t"]
        below = {"0": set(), "n": {"0"}, "p": {"0", "n"}, "m": {"0", "n"},
                 "t": {"0", "n", "p", "m"}}
        leq = [(a, b) for b, lows in below.items() for a in lows]
        oplus = {}
        for a in elems:
            for b in elems:
                if a == "0":
                    oplus[(a, b)] = b
                elif b == "0":
                    oplus[(a, b)] = a
                else:
                    oplus[(a, b)] = "t"
        inv = {"0": "0", "n": "n", "p": "m", "m": "p", "t": "t"}
        return cls(elems, leq, oplus, inv, "0")

    def is_heyting(self) -> bool:
        """Complete lattice whose operation distributes over meets on both
        sides (binary meets plus top absorption suffice in a finite lattice)."""
        try:
            top = self.join(self.elements)
            meets = {(a, b): self.meet([a, b])
                     for a in self.elements for b in self.elements}
            for a in self.elements:
                for b in self.elements:
                    self.join([a, b])
        except MissingJoin:
            return False
        for a in self.elements:
            if self.oplus(a, top) != top or self.oplus(top, a) != top:
                return False
            for b in self.elements:
                for c in self.elements:
                    if self.oplus(a, meets[(b, c)]) != \
                            meets[(self.oplus(a, b), self.oplus(a, c))]:
                        return False
                    if self.oplus(meets[(b, c)], a) != \
                            meets[(self.oplus(b, a), self.oplus(c, a))]:
                        return False
        return True

    def residual(self, v, beta, side: str):
        """Least r with v <= r + beta (side='right') or v <= beta + r."""
        if side == "right":
            cands = [r for r in self.elements if self.leq(v, self.oplus(r, beta))]
        elif side == "left":
            cands = [r for r in self.elements if self.leq(v, self.oplus(beta, r))]
        else:
            raise ValueError("side must be 'left' or 'right'")
        r = least_of(cands, self.leq)
        if r is None:
            raise MissingJoin(f"no least residual of {v!r} by {beta!r}")
        return r

    def canonical_distance(self, p, q):
        """The least r with p <= q + inv(r) and q <= p + r; the distance that
        makes a Heyting-algebra table into a hyperconvex space."""
        first = self.residual(self.inv(p), self.inv(q), "right")
        second = self.residual(q, p, "left")
        return self.join([first, second])

    def to_json(self) -> dict:
        return {"elements": [repr(e) for e in self.elements],
                "zero": repr(self.zero)}


class FiniteGms:
    """A finite point set with a monoid-valued distance table."""

    def __init__(self, points: Sequence, monoid: MonoidTable,
                 dist: Mapping[tuple, object]):
        self.points = tuple(points)
        self.monoid = monoid
        self.dist = dict(dist)
        elems = set(monoid.elements)
        for x in self.points:
            for y in self.points:
                if (x, y) not in self.dist or self.dist[(x, y)] not in elems:
                    raise ValueError(f"distance undefined at {(x, y)!r}")

    def d(self, x, y):
        return self.dist[(x, y)]

    def check_axioms(self) -> list[tuple]:
        """Report every violation of separation, triangle and involution
        symmetry with a witness."""
        m, bad = self.monoid, []
        for x in self.points:
            for y in self.points:
                if (self.d(x, y) == m.zero) != (x == y):
                    bad.append(("separation", x, y))
                if m.inv(self.d(y, x)) != self.d(x, y):
                    bad.append(("involution", x, y))
        for x in self.points:
            for z in self.points:
                for y in self.points:
                    if not m.leq(self.d(x, y), m.oplus(self.d(x, z), self.d(z, y))):
                        bad.append(("triangle", x, z, y))
        return bad

    def _require_axioms(self):
        bad = self.check_axioms()
        if bad:
            raise ValueError(f"space violates the distance axioms: {bad[0]}")

    def ball(self, x, r) -> frozenset:
        return frozenset(y for y in self.points if self.monoid.leq(self.d(x, y), r))

    def is_convex(self) -> bool:
        """Whenever d(x,y) <= p + q some z satisfies d(x,z) <= p, d(z,y) <= q."""
        self._require_axioms()
        m = self.monoid
        for x in self.points:
            for y in self.points:
                for p in m.elements:
                    for q in m.elements:
                        if m.leq(self.d(x, y), m.oplus(p, q)) and not any(
                                m.leq(self.d(x, z), p) and m.leq(self.d(z, y), q)
                                for z in self.points):
                            return False
        return True

    def _ball_sets(self) -> list[frozenset]:
        return sorted({self.ball(x, r) for x in self.points
                       for r in self.monoid.elements},
                      key=lambda s: sorted(map(self.points.index, s)))

    def is_2helly(self) -> bool:
        """Every pairwise-intersecting family of balls has a common point.

        Duplicated point sets are irrelevant, and any pairwise-intersecting
        family extends to a maximal clique of the intersection graph, so it
        suffices to intersect the maximal cliques over distinct ball sets.
        """
        self._require_axioms()
        sets = self._ball_sets()
        for clique in maximal_cliques(sets, lambda i, j: bool(sets[i] & sets[j])):
            common = frozenset(self.points)
            for i in clique:
                common &= sets[i]
            if not common:
                return False
        return True

    def is_hyperconvex(self) -> bool:
        """Convexity plus the 2-Helly property; cross-checked against direct
        enumeration of compatible ball families on very small spaces."""
        result = self.is_convex() and self.is_2helly()
        if len(self.points) <= 3 and len(self.monoid.elements) <= 4:
            direct = self._hyperconvex_by_enumeration()
            if direct != result:
                raise AssertionError("hyperconvexity checkers disagree: engine bug")
        return result

    def _hyperconvex_by_enumeration(self) -> bool:
        # compatibility between centers: d(x_i, x_j) <= r_i + inv(r_j)
        m = self.monoid
        balls = [(x, r) for x in self.points for r in m.elements]
        for k in range(1, len(balls) + 1):
            for family in itertools.combinations(balls, k):
                ok = all(m.leq(self.d(xi, xj), m.oplus(ri, m.inv(rj)))
                         for xi, ri in family for xj, rj in family)
                if ok:
                    common = frozenset(self.points)
                    for x, r in family:
                        common &= self.ball(x, r)
                    if not common:
                        return False
        return True

    def diameter(self, subset: Optional[Iterable] = None):
        pts = list(self.points if subset is None else subset)
        return self.monoid.join([self.d(x, y) for x in pts for y in pts]
                                or [self.monoid.zero])

    def radius(self, subset: Iterable):
        """Least radius r with the subset inside B(x, r) for some center x
        drawn from the subset itself."""
        pts = list(subset)
        if not pts:
            raise ValueError("radius needs a nonempty subset")
        m = self.monoid
        candidates = [r for r in m.elements
                      if any(all(m.leq(self.d(x, y), r) for y in pts) for x in pts)]
        if not candidates:
            raise MissingJoin("no radius covers the subset from inside")
        return m.meet(candidates)

    def is_equally_centered(self, subset: Iterable) -> bool:
        pts = list(subset)
        if not pts:
            return False
        return self.radius(pts) == self.diameter(pts)

    def ball_intersections(self) -> set[frozenset]:
        """All intersections of families of closed balls (the empty family
        contributes the whole point set)."""
        sets = set(self._ball_sets()) | {frozenset(self.points)}
        frontier = set(sets)
        while frontier:
            nxt = {a & b for a in frontier for b in sets} - sets
            sets |= nxt
            frontier = nxt
        return sets

    def has_normal_structure(self) -> bool:
        """No ball intersection other than a singleton is equally centered."""
        self._require_axioms()
        for inter in self.ball_intersections():
            if len(inter) != 1 and inter and self.is_equally_centered(inter):
                return False
        return True

    def is_bounded(self, inaccessibles: Optional[Iterable] = None) -> bool:
        """Zero is the only inaccessible element below the diameter."""
        if inaccessibles is None:
            inaccessibles = self.monoid.inaccessible_elements()
        delta = self.diameter()
        return all(v == self.monoid.zero for v in inaccessibles
                   if self.monoid.leq(v, delta))

    # --- self maps ------------------------------------------------------------

    def is_nonexpansive_selfmap(self, f: Mapping) -> bool:
        m = self.monoid
        return all(m.leq(self.d(f[x], f[y]), self.d(x, y))
                   for x in self.points for y in self.points)

    def nonexpansive_selfmaps(self, guard: int = 8):
        """All non-expansive self maps, enumerated exhaustively."""
        if len(self.points) > guard:
            raise SizeGuard(f"{len(self.points)} points exceeds the guard {guard}")
        for values in itertools.product(self.points, repeat=len(self.points)):
            f = dict(zip(self.points, values))
            if self.is_nonexpansive_selfmap(f):
                yield f

    def fpp_check(self, guard: int = 8) -> tuple[bool, Optional[dict]]:
        """Whether every non-expansive self map has a fixed point.

        Searches for a fixed-point-free non-expansive map by backtracking
        (equivalent to enumerating all maps and testing each, but prunes the
        f(x) = x branches up front); the witness is such a map when found.
        """
        if len(self.points) > guard:
            raise SizeGuard(f"{len(self.points)} points exceeds the guard {guard}")
        m, pts = self.monoid, self.points
        assign: dict = {}

        def extend(i: int) -> Optional[dict]:
            if i == len(pts):
                return dict(assign)
            x = pts[i]
            for v in pts:
                if v == x:
                    continue
                if all(m.leq(self.d(v, assign[y]), self.d(x, y))
                       and m.leq(self.d(assign[y], v), self.d(y, x))
                       for y in assign):
                    assign[x] = v
                    found = extend(i + 1)
                    if found:
                        return found
                    del assign[x]
            return None

        witness = extend(0)
        return (witness is None), witness

    def commuting_fpp_check(self, maps: Sequence[Mapping]) -> bool:
        """Common fixed point of a commuting family of non-expansive maps."""
        for f in maps:
            if not self.is_nonexpansive_selfmap(f):
                raise ValueError("map in the family is not non-expansive")
        for f in maps:
            for g in maps:
                if any(f[g[x]] != g[f[x]] for x in self.points):
                    raise ValueError("maps in the family do not commute")
        common = set(self.points)
        for f in maps:
            common &= {x for x in self.points if f[x] == x}
        return bool(common)


def canonical_distance_space(monoid: MonoidTable) -> FiniteGms:
    """The monoid itself as a metric space under its canonical distance."""
    dist = {(p, q): monoid.canonical_distance(p, q)
            for p in monoid.elements for q in monoid.elements}
    return FiniteGms(monoid.elements, monoid, dist)


def space_from_json(payload: Mapping) -> FiniteGms:
    def conv(e):
        # lists in JSON stand for tuple-valued monoid elements
        return tuple(e) if isinstance(e, list) else e

    mon = payload["monoid"]
    monoid = MonoidTable(
        [conv(e) for e in mon["elements"]],
        [(conv(a), conv(b)) for a, b in mon["leq"]],
        {(conv(a), conv(b)): conv(c) for a, b, c in mon["oplus"]},
        {conv(a): conv(b) for a, b in mon["involution"]},
        conv(mon["zero"]))
    points = [str(p) for p in payload["points"]]
    rows = payload["dist"]
    dist = {(points[i], points[j]): conv(rows[i][j])
            for i in range(len(points)) for j in range(len(points))}
    return FiniteGms(points, monoid, dist)
