"""Shared helpers for finite orders: bounds, residuals, clique enumeration."""
from __future__ import annotations

from typing import Callable, Iterable, Optional, TypeVar

T = TypeVar("T")


class MissingJoin(ValueError):
    """A required supremum or infimum does not exist in the finite order."""


def least_of(candidates: Iterable[T], leq: Callable[[T, T], bool]) -> Optional[T]:
    cands = list(candidates)
    for c in cands:
        if all(leq(c, d) for d in cands):
            return c
    return None


def greatest_of(candidates: Iterable[T], leq: Callable[[T, T], bool]) -> Optional[T]:
    return least_of(candidates, lambda a, b: leq(b, a))


def join_of(elements: Iterable[T], subset: Iterable[T],
            leq: Callable[[T, T], bool]) -> T:
    sub = list(subset)
    uppers = [u for u in elements if all(leq(s, u) for s in sub)]
    lub = least_of(uppers, leq)
    if lub is None:
        raise MissingJoin(f"no least upper bound for {sub!r}")
    return lub


def meet_of(elements: Iterable[T], subset: Iterable[T],
            leq: Callable[[T, T], bool]) -> T:
    sub = list(subset)
    lowers = [u for u in elements if all(leq(u, s) for s in sub)]
    glb = greatest_of(lowers, leq)
    if glb is None:
        raise MissingJoin(f"no greatest lower bound for {sub!r}")
    return glb


def order_residual(elements: Iterable[T], leq: Callable[[T, T], bool],
                   join: Callable[[T, T], T], x: T, y: T) -> Optional[T]:
    """Least z with x <= y v z, or None when no least element exists."""
    return least_of([z for z in elements if leq(x, join(y, z))], leq)


def maximal_cliques(nodes: list, adjacent: Callable[[int, int], bool]):
    """Bron-Kerbosch over node indices; yields each maximal clique as a list."""
    neigh = [set() for _ in nodes]
    for i in range(len(nodes)):
        for j in range(i + 1, len(nodes)):
            if adjacent(i, j):
                neigh[i].add(j)
                neigh[j].add(i)

    def expand(r: set, p: set, x: set):
        if not p and not x:
            yield sorted(r)
            return
        pivot = max(p | x, key=lambda v: len(neigh[v] & p))
        for v in sorted(p - neigh[pivot]):
            yield from expand(r | {v}, p & neigh[v], x & neigh[v])
            p = p - {v}
            x = x | {v}

    yield from expand(set(), set(range(len(nodes))), set())
