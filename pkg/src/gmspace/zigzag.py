"""Reflexive digraphs as generalized metric spaces under the zigzag distance.

The distance from x to y is the upward-closed set of +/- words coding the
zigzags that map homomorphically into the graph from x to y; it is computed
by reading the graph as an acceptor and extracting the minimal antichain.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping, Optional

from . import automata
from .segments import FinalSegment, in_macneille
from .words import PLUS_MINUS, Word


@dataclass(frozen=True)
class ReflexiveDigraph:
    vertices: tuple[str, ...]
    edges: frozenset[tuple[str, str]]
    loops_added: bool = field(default=False, compare=False)

    @classmethod
    def of(cls, vertices, edges) -> ReflexiveDigraph:
        """Build a digraph, silently adding the loop at every vertex.

        ``loops_added`` records whether any loop was missing from the input.
        """
        vs = tuple(str(v) for v in vertices)
        if len(set(vs)) != len(vs):
            raise ValueError("duplicate vertices")
        es = {(str(a), str(b)) for a, b in edges}
        for a, b in es:
            if a not in vs or b not in vs:
                raise ValueError(f"edge {(a, b)} uses unknown vertex")
        loops = {(v, v) for v in vs}
        added = not loops <= es
        return cls(vs, frozenset(es | loops), added)

    @classmethod
    def from_json(cls, payload: Mapping) -> ReflexiveDigraph:
        return cls.of(payload["vertices"], payload["edges"])

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices),
                "edges": sorted([a, b] for a, b in self.edges if a != b)}

    def has_edge(self, a: str, b: str) -> bool:
        return (a, b) in self.edges

    def _index(self, v: str) -> int:
        try:
            return self.vertices.index(v)
        except ValueError:
            raise ValueError(f"unknown vertex {v!r}") from None


def zigzag_automaton(g: ReflexiveDigraph, x: str, y: str) -> automata.Automaton:
    """Acceptor of the zigzag words from x to y: a + step follows an edge
    forward, a - step follows one backward; loops absorb insertions."""
    ix, iy = g._index(x), g._index(y)
    n = len(g.vertices)
    pos = {v: i for i, v in enumerate(g.vertices)}
    trans = set()
    for a, b in g.edges:
        trans.add((pos[a], "+", pos[b]))
        trans.add((pos[b], "-", pos[a]))
    return automata.Automaton(PLUS_MINUS, n, frozenset(trans),
                              frozenset({ix}), frozenset({iy}))


def zigzag_distance(g: ReflexiveDigraph, x: str, y: str) -> FinalSegment:
    aut = zigzag_automaton(g, x, y)
    # reflexive loops guarantee upward closure; minimal_antichain re-checks
    return FinalSegment(PLUS_MINUS, automata.minimal_antichain(aut))


@dataclass(frozen=True)
class DistanceMatrix:
    vertices: tuple[str, ...]
    entries: tuple[tuple[FinalSegment, ...], ...]

    def entry(self, x: str, y: str) -> FinalSegment:
        return self.entries[self.vertices.index(x)][self.vertices.index(y)]

    def check_axioms(self) -> list[tuple]:
        """Violations of separation, the triangle inequality and involution
        symmetry, each with a witness tuple."""
        bad = []
        vs = self.vertices
        zero = FinalSegment.zero(PLUS_MINUS)
        for i, x in enumerate(vs):
            for j, y in enumerate(vs):
                d = self.entries[i][j]
                if (d == zero) != (i == j):
                    bad.append(("separation", x, y))
                if self.entries[j][i].involute() != d:
                    bad.append(("involution", x, y))
        for i, x in enumerate(vs):
            for j, y in enumerate(vs):
                for k, z in enumerate(vs):
                    lhs = self.entries[i][j]
                    rhs = self.entries[i][k].oplus(self.entries[k][j])
                    if not lhs.leq(rhs):
                        bad.append(("triangle", x, z, y))
        return bad

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices),
                "matrix": [[e.to_json() for e in row] for row in self.entries]}


def distance_matrix(g: ReflexiveDigraph, jobs: int = 1) -> DistanceMatrix:
    pairs = [(x, y) for x in g.vertices for y in g.vertices]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            flat = list(pool.map(lambda p: zigzag_distance(g, *p), pairs))
    else:
        flat = [zigzag_distance(g, x, y) for x, y in pairs]
    n = len(g.vertices)
    rows = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
    # involution symmetry is asserted on the computed entries, not derived
    for i in range(n):
        for j in range(i + 1, n):
            assert rows[j][i].involute() == rows[i][j], "asymmetric entries"
    return DistanceMatrix(g.vertices, rows)


def is_graph_hom(g: ReflexiveDigraph, h: ReflexiveDigraph,
                 f: Mapping[str, str]) -> bool:
    if set(f) != set(g.vertices):
        raise ValueError("map must be total on the source vertices")
    return all(h.has_edge(f[a], f[b]) for a, b in g.edges)


def is_nonexpansive(dm_g: DistanceMatrix, dm_h: DistanceMatrix,
                    f: Mapping[str, str]) -> bool:
    return all(dm_h.entry(f[x], f[y]).leq(dm_g.entry(x, y))
               for x in dm_g.vertices for y in dm_g.vertices)


def satisfies_graph_condition(m: DistanceMatrix) -> tuple[bool, Optional[tuple]]:
    """Check the midpoint condition characterizing zigzag distances of graphs:
    every 2-split u.v of a word of d(x,y) admits z with u in d(x,z) and
    v in d(z,y).

    Splits of minimal words suffice: if w' = u'v' lies in d(x,y), pick a
    minimal w <= w' and cut w at the embedding's image of the split point;
    this yields u <= u', v <= v' with uv = w, and any midpoint for (u,v)
    works for (u',v') because the entries are upward-closed.
    """
    bad = m.check_axioms()
    if bad:
        raise ValueError(f"distance matrix violates the axioms: {bad[0]}")
    vs = m.vertices
    for i, x in enumerate(vs):
        for j, y in enumerate(vs):
            for word in m.entries[i][j].generators:
                for cut in range(len(word) + 1):
                    u, v = word.prefix(cut), word.suffix_from(cut)
                    if not any(m.entries[i][k].contains(u)
                               and m.entries[k][j].contains(v)
                               for k in range(len(vs))):
                        return False, (x, y, u, v)
    return True, None


def graph_from_matrix(m: DistanceMatrix) -> ReflexiveDigraph:
    """Recover the graph of a matrix satisfying the midpoint condition:
    x -> y is an edge iff the one-letter + word lies in d(x,y)."""
    plus = Word.parse("+", PLUS_MINUS)
    edges = {(x, y) for i, x in enumerate(m.vertices)
             for j, y in enumerate(m.vertices) if m.entries[i][j].contains(plus)}
    return ReflexiveDigraph.of(m.vertices, edges)


def _is_poset(g: ReflexiveDigraph) -> bool:
    e = g.edges
    for a, b in e:
        if a != b and (b, a) in e:
            return False
    return all((a, d) in e for a, b in e for c, d in e if b == c)


def fence_distance(g: ReflexiveDigraph, x: str, y: str
                   ) -> tuple[Optional[int], Optional[int]]:
    """Shortest alternating zigzag lengths between two poset elements.

    Returns (n, m): n is the length of the shortest word shaped +-+-... in
    d(x,y) and m the shortest shaped -+-+...; None encodes that no such word
    exists.  Lengths count letters (steps), so the 2-chain gives (1, 2).
    """
    if not _is_poset(g):
        raise ValueError("fence distance needs a reflexive poset digraph")
    if x == y:
        g._index(x)
        return 0, 0
    aut = zigzag_automaton(g, x, y)

    def shortest(first: str) -> Optional[int]:
        # alternating membership is monotone in length, and any accepted
        # alternating word pumps down below 2|V| states in the product
        limit = 2 * len(g.vertices) + 2
        for n in range(1, limit + 1):
            letters = tuple(first if i % 2 == 0 else
                            ("-" if first == "+" else "+") for i in range(n))
            if automata.accepts(aut, Word(PLUS_MINUS, letters)):
                return n
        return None

    return shortest("+"), shortest("-")


def oriented_embeddable(g: ReflexiveDigraph) -> tuple[bool, Optional[tuple]]:
    """True iff every zigzag distance value lies in the MacNeille completion,
    i.e. the graph embeds isometrically into a product of oriented zigzags."""
    m = distance_matrix(g)
    for i, x in enumerate(g.vertices):
        for j, y in enumerate(g.vertices):
            if i == j:
                continue
            ok, witness = in_macneille(m.entries[i][j])
            if not ok:
                return False, (x, y, witness)
    return True, None
