"""Partitions of finite sets: lattice operations, commutation, arithmetical
sublattices, Chinese-remainder solving, congruence-preserving map extension,
ultrametric translation, and orthogonal-family search."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from ._orders import MissingJoin, least_of
from .spaces import FiniteGms, MonoidTable, SizeGuard


class PreservationViolated(ValueError):
    """A partial map fails to preserve a member of the lattice."""


class NotResiduated(ValueError):
    def __init__(self, x, y):
        super().__init__(f"no least z with {x!r} <= {y!r} v z")
        self.pair = (x, y)


@dataclass(frozen=True)
class Partition:
    """Equivalence relation stored as blocks sorted by least element."""

    carrier: tuple
    blocks: tuple[tuple, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        seen = [x for b in self.blocks for x in b]
        if sorted(seen, key=self.carrier.index) != sorted(
                self.carrier, key=self.carrier.index) or len(seen) != len(self.carrier):
            raise ValueError("blocks must partition the carrier exactly")
        object.__setattr__(self, "_index",
                           {x: i for i, b in enumerate(self.blocks) for x in b})

    @classmethod
    def from_blocks(cls, carrier: Sequence, blocks: Iterable[Iterable]) -> Partition:
        carrier = tuple(carrier)
        pos = {x: i for i, x in enumerate(carrier)}
        covered = {x for b in blocks for x in b}
        norm = [tuple(sorted(set(b), key=pos.get)) for b in blocks if b]
        norm += [(x,) for x in carrier if x not in covered]
        norm.sort(key=lambda b: pos[b[0]])
        return cls(carrier, tuple(norm))

    @classmethod
    def from_pairs(cls, carrier: Sequence, pairs: Iterable[tuple]) -> Partition:
        parent = {x: x for x in carrier}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in pairs:
            parent[find(a)] = find(b)
        groups: dict = {}
        for x in carrier:
            groups.setdefault(find(x), []).append(x)
        return cls.from_blocks(carrier, groups.values())

    @classmethod
    def discrete(cls, carrier: Sequence) -> Partition:
        return cls.from_blocks(carrier, [[x] for x in carrier])

    @classmethod
    def full(cls, carrier: Sequence) -> Partition:
        return cls.from_blocks(carrier, [list(carrier)])

    @classmethod
    def pair(cls, carrier: Sequence, x, y) -> Partition:
        """The equivalence whose only non-singleton block is {x, y}."""
        return cls.from_blocks(carrier, [[x, y]])

    def same(self, x, y) -> bool:
        return self._index[x] == self._index[y]

    def block_id(self, x) -> int:
        return self._index[x]

    def block_of(self, x) -> tuple:
        return self.blocks[self._index[x]]

    def leq(self, other: Partition) -> bool:
        """Refinement order: every block of self sits inside a block of other."""
        self._check(other)
        return all(other.same(b[0], x) for b in self.blocks for x in b[1:])

    def meet(self, other: Partition) -> Partition:
        self._check(other)
        keyed: dict = {}
        for x in self.carrier:
            keyed.setdefault((self._index[x], other._index[x]), []).append(x)
        return Partition.from_blocks(self.carrier, keyed.values())

    def join(self, other: Partition) -> Partition:
        self._check(other)
        pairs = [(b[0], x) for p in (self, other) for b in p.blocks for x in b[1:]]
        return Partition.from_pairs(self.carrier, pairs)

    def compose(self, other: Partition) -> frozenset[tuple]:
        """Relational composition self o other: pairs (x, y) with
        (x, z) in other and (z, y) in self for some z."""
        self._check(other)
        out = set()
        for bo in other.blocks:
            linked = {y for z in bo for y in self.block_of(z)}
            out.update((x, y) for x in bo for y in linked)
        return frozenset(out)

    def commutes(self, other: Partition) -> bool:
        return self.compose(other) == other.compose(self)

    def pairs(self) -> frozenset[tuple]:
        return frozenset((x, y) for b in self.blocks for x in b for y in b)

    def _check(self, other: Partition):
        if self.carrier != other.carrier:
            raise ValueError("partitions over different carriers")

    def to_json(self) -> list[list]:
        return [list(b) for b in self.blocks]

    def __str__(self) -> str:
        return "|".join("".join(map(str, b)) for b in self.blocks)


@dataclass(frozen=True)
class EquivSystem:
    carrier: tuple
    relations: tuple[Partition, ...]

    def __post_init__(self):
        for r in self.relations:
            if r.carrier != self.carrier:
                raise ValueError("system relations must share the carrier")

    @classmethod
    def of(cls, carrier: Sequence, relations: Iterable) -> EquivSystem:
        carrier = tuple(carrier)
        rels = [r if isinstance(r, Partition) else Partition.from_blocks(carrier, r)
                for r in relations]
        return cls(carrier, tuple(rels))

    def preserves(self, f: Mapping) -> bool:
        return all(preserves_partition(f, r) for r in self.relations)

    def to_json(self) -> dict:
        return {"carrier": list(self.carrier),
                "relations": [r.to_json() for r in self.relations]}


def preserves_partition(f: Mapping, rho: Partition) -> bool:
    """A (possibly partial) map preserves rho when related arguments in its
    domain have related images."""
    dom = [x for x in rho.carrier if x in f]
    return all(rho.same(f[x], f[y]) for x in dom for y in dom if rho.same(x, y))


def sublattice_closure(parts: Iterable[Partition], guard: int = 512
                       ) -> frozenset[Partition]:
    """Least meet/join-closed superset of the given partitions."""
    closed = set(parts)
    frontier = set(closed)
    while frontier:
        new = set()
        for a in frontier:
            for b in closed:
                for c in (a.meet(b), a.join(b)):
                    if c not in closed:
                        new.add(c)
        closed |= new
        if len(closed) > guard:
            raise SizeGuard(f"closure exceeded {guard} partitions")
        frontier = new
    return frozenset(closed)


def is_sublattice(parts: Iterable[Partition]) -> bool:
    ps = set(parts)
    return all(a.meet(b) in ps and a.join(b) in ps for a in ps for b in ps)


def is_distributive(parts: Iterable[Partition]) -> bool:
    ps = list(parts)
    if not is_sublattice(ps):
        raise ValueError("not a meet/join-closed set of partitions")
    return all(a.meet(b.join(c)) == a.meet(b).join(a.meet(c))
               for a in ps for b in ps for c in ps)


def is_arithmetical(parts: Iterable[Partition]) -> bool:
    """Distributive with pairwise commuting members."""
    ps = list(parts)
    return is_distributive(ps) and \
        all(ps[i].commutes(ps[j]) for i in range(len(ps))
            for j in range(i + 1, len(ps)))


@dataclass(frozen=True)
class CrtResult:
    status: str  # "ok" | "incompatible" | "unsolvable"
    solution: object = None
    witness_pair: Optional[tuple[int, int]] = None

    def __bool__(self) -> bool:
        return self.status == "ok"


def crt_solve(lattice: Iterable[Partition],
              constraints: Sequence[tuple]) -> CrtResult:
    """Solve x = a_i (theta_i) by direct carrier search.

    Reports the first failing pairwise condition a_i = a_j (theta_i v theta_j)
    as ``incompatible``; ``unsolvable`` only happens over non-arithmetical
    lattices."""
    lattice = list(lattice)
    if not constraints:
        raise ValueError("need at least one constraint")
    for _, theta in constraints:
        if theta not in lattice:
            raise ValueError("constraint relation not in the lattice")
    carrier = constraints[0][1].carrier
    for i in range(len(constraints)):
        for j in range(i + 1, len(constraints)):
            ai, ti = constraints[i]
            aj, tj = constraints[j]
            if not ti.join(tj).same(ai, aj):
                return CrtResult("incompatible", witness_pair=(i, j))
    # scan the constraint values first: a system whose values coincide then
    # canonically solves to that value
    scan = list(dict.fromkeys([a for a, _ in constraints])) + list(carrier)
    for x in scan:
        if all(theta.same(x, a) for a, theta in constraints):
            return CrtResult("ok", solution=x)
    return CrtResult("unsolvable")


def kaarli_extend(lattice: Iterable[Partition], f: Mapping, z) -> dict:
    """Extend a lattice-preserving partial map to one more point.

    For each value b' the modulus is the meet, over the preimages b of b',
    of the least lattice member relating z to b; the system x = b'
    (theta_b') is then solved.  (Grouping the preimages under a single least
    relation linking z to all of them at once is too coarse: it can drop the
    binding constraint of a single preimage and break preservation.)
    Arithmeticity makes the system solvable and the result preserving.
    """
    lattice = list(lattice)
    if not lattice:
        raise ValueError("empty lattice")
    if z in f:
        raise ValueError("z must be outside the domain")
    if not all(preserves_partition(f, rho) for rho in lattice):
        raise PreservationViolated("partial map does not preserve the lattice")
    closed = set(lattice)
    if not all(a.meet(b) in closed for a in closed for b in closed):
        # the least-modulus step needs meet-closure
        closed = set(sublattice_closure(lattice))

    def least_linking(b):
        # a point no member relates to z imposes no constraint at all
        cands = [t for t in closed if t.same(b, z)]
        if not cands:
            return None
        theta = least_of(cands, Partition.leq)
        if theta is None:
            raise MissingJoin(f"no least relation linking {z!r} to {b!r}")
        return theta

    by_value: dict = {}
    for b, b2 in f.items():
        by_value.setdefault(b2, []).append(b)
    constraints = []
    for b2, preimages in by_value.items():
        thetas = [t for t in map(least_linking, preimages) if t is not None]
        if not thetas:
            continue
        theta = thetas[0]
        for t in thetas[1:]:
            theta = theta.meet(t)
        constraints.append((b2, theta))
    if constraints:
        res = crt_solve(list(closed), constraints)
        if not res:
            raise AssertionError(
                "extension system unsolvable: lattice not arithmetical?")
        value = res.solution
    else:
        value = lattice[0].carrier[0]
    g = dict(f)
    g[z] = value
    if not all(preserves_partition(g, rho) for rho in lattice):
        raise AssertionError("extension fails preservation: engine bug")
    return g


def ultrametric_from_system(system: EquivSystem) -> tuple[FiniteGms, bool]:
    """View a relation system as a space over the powerset of the index set:
    d(x, y) collects the indices of the relations separating x and y.

    Returns the space and whether the separation axiom holds (the relations
    intersect to equality)."""
    idx = tuple(range(len(system.relations)))
    monoid = MonoidTable.boolean(idx)
    dist = {}
    for x in system.carrier:
        for y in system.carrier:
            dist[(x, y)] = frozenset(i for i in idx
                                     if not system.relations[i].same(x, y))
    space = FiniteGms(system.carrier, monoid, dist)
    separated = all(dist[(x, y)] or x == y
                    for x in system.carrier for y in system.carrier)
    return space, separated


def residuated_distance(elements: Sequence, leq_pairs: Iterable[tuple]) -> dict:
    """Distance table d(x,y) = (x\\y) v (y\\x) on a finite lattice.

    Raises NotResiduated with the witness pair exactly when some residual is
    missing, which for a finite lattice means it is not distributive."""
    monoid = MonoidTable.from_join_semilattice(elements, leq_pairs)

    def resid(x, y):
        cands = [z for z in monoid.elements if monoid.leq(x, monoid.oplus(y, z))]
        r = least_of(cands, monoid.leq)
        if r is None:
            raise NotResiduated(x, y)
        return r

    return {(x, y): monoid.join([resid(x, y), resid(y, x)])
            for x in monoid.elements for y in monoid.elements}


def orthogonal(rho: Partition, tau: Partition) -> bool:
    """Strong orthogonality: meet is equality and join is the full relation."""
    return rho.meet(tau) == Partition.discrete(rho.carrier) and \
        rho.join(tau) == Partition.full(rho.carrier)


def weakly_orthogonal(rho: Partition, tau: Partition) -> bool:
    """Only the meet condition; named for the terminology clash, unused."""
    return rho.meet(tau) == Partition.discrete(rho.carrier)


def all_partitions(carrier: Sequence):
    """Every partition of the carrier (restricted-growth enumeration)."""
    carrier = tuple(carrier)
    if not carrier:
        return
    def rec(i, blocks):
        if i == len(carrier):
            yield Partition.from_blocks(carrier, [list(b) for b in blocks])
            return
        for b in blocks:
            b.append(carrier[i])
            yield from rec(i + 1, blocks)
            b.pop()
        blocks.append([carrier[i]])
        yield from rec(i + 1, blocks)
        blocks.pop()
    yield from rec(0, [])


def orthogonal_family_search(n: int, block_size: Optional[int] = None,
                             guard: int = 8) -> list[Partition]:
    """Maximum family of pairwise strongly-orthogonal partitions of an n-set.

    Candidates exclude the equality partition (it is orthogonal only to the
    full relation); with ``block_size`` given, only partitions with uniform
    blocks of that size are considered."""
    if n > guard:
        raise SizeGuard(f"{n} exceeds the search guard {guard}")
    carrier = tuple(range(n))
    cands = []
    for p in all_partitions(carrier):
        if p == Partition.discrete(carrier):
            continue
        if block_size is not None and any(len(b) != block_size for b in p.blocks):
            continue
        cands.append(p)
    adj = {(i, j): orthogonal(cands[i], cands[j])
           for i in range(len(cands)) for j in range(i + 1, len(cands))}
    best: list[int] = []

    def extend(chosen: list[int], rest: list[int]):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        for k, i in enumerate(rest):
            if len(chosen) + len(rest) - k <= len(best):
                break  # cannot beat the incumbent
            filtered = [j for j in rest[k + 1:] if adj[(i, j)]]
            extend(chosen + [i], filtered)

    extend([], list(range(len(cands))))
    return [cands[i] for i in best]
