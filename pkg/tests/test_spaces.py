import itertools
import random

import pytest

from gmspace._orders import order_residual
from gmspace.spaces import (FiniteGms, MonoidTable, SizeGuard,
                            canonical_distance_space, space_from_json)


def divisor12_space():
    mon = MonoidTable.divisor_lattice(12)
    return canonical_distance_space(mon)


def two_point_swap_space():
    mon = MonoidTable.involutive_four()
    return FiniteGms(["x", "y"], mon,
                     {("x", "x"): "0", ("y", "y"): "0",
                      ("x", "y"): "t", ("y", "x"): "t"})


def test_monoid_validation():
    with pytest.raises(ValueError):
        MonoidTable([0, 1], [(1, 0)], {(a, b): max(a, b) for a in (0, 1)
                                       for b in (0, 1)}, {0: 0, 1: 1}, 0)
    with pytest.raises(ValueError):  # zero not least
        MonoidTable([0, 1], [], {(a, b): max(a, b) for a in (0, 1)
                                 for b in (0, 1)}, {0: 0, 1: 1}, 0)
    chain = MonoidTable.chain(2)
    assert chain.leq(0, 2) and not chain.leq(2, 1)
    assert chain.join([1, 2]) == 2 and chain.meet([1, 2]) == 1


def test_monoid_heyting_flags():
    assert MonoidTable.divisor_lattice(12).is_heyting()
    assert MonoidTable.boolean("ab").is_heyting()
    assert MonoidTable.zigzag_truncation().is_heyting()
    assert not MonoidTable.involutive_four().is_heyting()


def test_check_axioms_examples():
    space = divisor12_space()
    assert space.check_axioms() == []
    mon = MonoidTable.chain(1)
    bad = FiniteGms(["x", "y"], mon, {("x", "x"): 0, ("y", "y"): 0,
                                      ("x", "y"): 0, ("y", "x"): 0})
    assert ("separation", "x", "y") in bad.check_axioms()
    asym = FiniteGms(["x", "y"], mon, {("x", "x"): 0, ("y", "y"): 0,
                                       ("x", "y"): 1, ("y", "x"): 0})
    kinds = {v[0] for v in asym.check_axioms()}
    assert "involution" in kinds or "separation" in kinds


def test_ball_examples():
    mon = MonoidTable.chain(2)
    sp = FiniteGms(["x", "y"], mon, {("x", "x"): 0, ("y", "y"): 0,
                                     ("x", "y"): 1, ("y", "x"): 1})
    assert sp.ball("x", 0) == frozenset({"x"})
    assert sp.ball("x", 2) == frozenset({"x", "y"})
    assert sp.ball("x", 1) == frozenset({"x", "y"})


def test_hyperconvexity_examples():
    one = FiniteGms(["p"], MonoidTable.chain(1), {("p", "p"): 0})
    assert one.is_hyperconvex()
    # the canonical space over a finite distributive lattice is hyperconvex
    assert divisor12_space().is_hyperconvex()
    assert canonical_distance_space(MonoidTable.boolean("ab")).is_hyperconvex()
    assert canonical_distance_space(MonoidTable.zigzag_truncation()).is_hyperconvex()
    # 2-point space with an unsplittable distance is not convex
    sp = two_point_swap_space()
    assert not sp.is_convex()
    assert not sp.is_hyperconvex()


def test_hyperconvex_decomposition_is_consistent():
    for mon in (MonoidTable.chain(2), MonoidTable.boolean("a")):
        sp = canonical_distance_space(mon)
        if sp.is_hyperconvex():
            assert sp.is_convex() and sp.is_2helly()


def test_diameter_radius_examples():
    one = FiniteGms(["p"], MonoidTable.chain(1), {("p", "p"): 0})
    assert one.diameter() == 0
    space = divisor12_space()
    assert space.diameter() == 12
    assert space.is_equally_centered([1])          # singleton
    assert not space.is_equally_centered([])
    rng = random.Random(21)
    for _ in range(50):
        pts = rng.sample(space.points, rng.randint(1, 6))
        r = space.radius(pts)
        assert space.monoid.leq(r, space.diameter(pts)) or \
            space.diameter(pts) == space.monoid.zero
    with pytest.raises(ValueError):
        space.radius([])


def test_radius_leq_diameter_on_random_spaces():
    rng = random.Random(22)
    mon = MonoidTable.boolean("ab")
    sp = canonical_distance_space(mon)
    for _ in range(50):
        pts = rng.sample(sp.points, rng.randint(1, 4))
        assert sp.monoid.leq(sp.radius(pts), sp.diameter(pts))


def test_normal_structure_and_boundedness():
    space = divisor12_space()
    # identity involution with idempotent join makes everything inaccessible
    assert space.monoid.inaccessible_elements() == frozenset(space.monoid.elements)
    assert not space.is_bounded()
    zt = MonoidTable.zigzag_truncation()
    assert zt.inaccessible_elements() == frozenset({"0", "n"})
    one = FiniteGms(["p"], MonoidTable.chain(1), {("p", "p"): 0})
    assert one.is_bounded() and one.has_normal_structure()


def test_fpp_examples():
    one = FiniteGms(["p"], MonoidTable.chain(1), {("p", "p"): 0})
    assert one.fpp_check() == (True, None)
    ok, witness = two_point_swap_space().fpp_check()
    assert not ok and witness == {"x": "y", "y": "x"}
    # the divisor-of-12 canonical space is hyperconvex but unbounded, and a
    # fixed-point-free non-expansive map exists (verified by the oracle too)
    space = divisor12_space()
    ok, witness = space.fpp_check()
    assert not ok
    assert all(witness[x] != x for x in space.points)
    assert space.is_nonexpansive_selfmap(witness)
    oracle_free = [f for f in space.nonexpansive_selfmaps()
                   if all(f[x] != x for x in space.points)]
    assert oracle_free


def test_fpp_backtracking_matches_oracle():
    rng = random.Random(23)
    mon = MonoidTable.zigzag_truncation()
    elems = [e for e in mon.elements if e != "0"]
    for _ in range(25):
        pts = ["a", "b", "c"]
        dist = {(p, p): "0" for p in pts}
        for i in range(3):
            for j in range(i + 1, 3):
                v = rng.choice(elems)
                dist[(pts[i], pts[j])] = v
                dist[(pts[j], pts[i])] = mon.inv(v)
        sp = FiniteGms(pts, mon, dist)
        if sp.check_axioms():
            continue
        ok, _ = sp.fpp_check()
        oracle = not any(all(f[x] != x for x in pts)
                         for f in sp.nonexpansive_selfmaps())
        assert ok == oracle


def test_size_guard():
    mon = MonoidTable.chain(1)
    pts = [f"p{i}" for i in range(9)]
    dist = {(a, b): (0 if a == b else 1) for a in pts for b in pts}
    sp = FiniteGms(pts, mon, dist)
    with pytest.raises(SizeGuard):
        sp.fpp_check()


def test_commuting_family():
    space = divisor12_space()
    ident = {x: x for x in space.points}
    to_top = {x: 12 for x in space.points}
    assert space.commuting_fpp_check([ident, to_top])
    ok, witness = space.fpp_check()
    with pytest.raises(ValueError):
        space.commuting_fpp_check([{x: 1 for x in space.points},
                                   {x: 12 for x in space.points}])
    swap_sp = two_point_swap_space()
    _, swap = swap_sp.fpp_check()
    assert not swap_sp.commuting_fpp_check([swap])


def test_retracts_preserve_fpp():
    # a retract of a space with the fixed-point property keeps it
    rng = random.Random(24)
    mon = MonoidTable.zigzag_truncation()
    checked = 0
    trials = 0
    while checked < 20 and trials < 400:
        trials += 1
        n = rng.randint(2, 4)
        pts = [f"p{i}" for i in range(n)]
        elems = [e for e in mon.elements if e != "0"]
        dist = {(p, p): "0" for p in pts}
        for i in range(n):
            for j in range(i + 1, n):
                v = rng.choice(elems)
                dist[(pts[i], pts[j])] = v
                dist[(pts[j], pts[i])] = mon.inv(v)
        sp = FiniteGms(pts, mon, dist)
        if sp.check_axioms() or not sp.fpp_check()[0]:
            continue
        sub = rng.sample(pts, rng.randint(1, n - 1))
        retraction = None
        for values in itertools.product(sub, repeat=n):
            f = dict(zip(pts, values))
            if all(f[s] == s for s in sub) and sp.is_nonexpansive_selfmap(f):
                retraction = f
                break
        if retraction is None:
            continue
        retract = FiniteGms(sub, mon, {(a, b): sp.d(a, b)
                                       for a in sub for b in sub})
        assert retract.fpp_check()[0]
        checked += 1
    assert checked == 20


def test_order_residual_helper():
    mon = MonoidTable.divisor_lattice(12)
    assert order_residual(mon.elements, mon.leq, mon.oplus, 4, 2) == 4
    assert order_residual(mon.elements, mon.leq, mon.oplus, 2, 2) == 1


def test_space_json_round_trip():
    mon = MonoidTable.chain(1)
    payload = {
        "points": ["x", "y"],
        "monoid": {"elements": [0, 1], "leq": [[0, 1]],
                   "oplus": [[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 1]],
                   "involution": [[0, 0], [1, 1]], "zero": 0},
        "dist": [[0, 1], [1, 0]],
    }
    sp = space_from_json(payload)
    assert sp.check_axioms() == []
    assert sp.d("x", "y") == 1
