"""Finite groupoids: constructors, nerves, faces, Morita checks."""

import pytest

from vbgc.errors import IndexOutOfRange, InvalidInputTable
from vbgc.groupoid import (
    GroupoidMorphism,
    build_action,
    build_cyclic,
    build_disjoint_union,
    build_group,
    build_pair,
    build_pullback,
    cyclic_table,
    face,
    identity_morphism,
    is_morita,
    nerve,
    to_point_morphism,
    validate,
)


def test_pair_groupoid_valid():
    g = build_pair([1, 2])
    assert validate(g) == []
    assert len(g.arrows) == 4


def test_pair_groupoid_counts():
    assert len(build_pair([1, 2, 3]).arrows) == 9


def test_cyclic_group_valid():
    g = build_cyclic(3)
    assert validate(g) == []
    assert len(g.arrows) == 3
    assert len(g.objects) == 1


def test_group_of_order_two():
    assert len(build_group(cyclic_table(2)).arrows) == 2


def test_broken_associativity_reported():
    g = build_cyclic(3)
    # mutate one composition entry
    (k, v), *_ = list(g.comp.items())
    g.comp[k] = g.inv[v] if g.inv[v] != v else (v + 1) % 3
    report = validate(g)
    assert any("associativity" in p or "unit" in p or "inv" in p for p in report)


def test_nerve_counts():
    pair2 = build_pair([1, 2])
    assert len(nerve(pair2, 1)) == 4
    z3 = build_cyclic(3)
    assert len(nerve(z3, 2)) == 9
    assert nerve(z3, 0) == [(0,)]
    assert [t for t in nerve(pair2, 0)] == [(1,), (2,)]


def test_nerve_tuples_composable():
    g = build_pair([1, 2])
    for t in nerve(g, 3):
        for a, b in zip(t, t[1:]):
            assert g.src[a] == g.tgt[b]


def test_face_formula_degree2():
    g = build_cyclic(3)
    for (g1, g2) in nerve(g, 2):
        assert face(g, 0, (g1, g2)) == (g2,)
        assert face(g, 1, (g1, g2)) == (g.comp[(g1, g2)],)
        assert face(g, 2, (g1, g2)) == (g1,)
    with pytest.raises(IndexOutOfRange):
        face(g, 3, nerve(g, 2)[0])


def test_simplicial_identities():
    # face_i . face_j = face_{j-1} . face_i for i < j, all degrees <= 4
    for g in (build_pair([1, 2]), build_cyclic(3), build_pair([1, 2, 3])):
        for p in (2, 3, 4):
            for t in nerve(g, p):
                for j in range(1, p + 1):
                    for i in range(j):
                        assert face(g, i, face(g, j, t)) == face(
                            g, j - 1, face(g, i, t)
                        )


def test_action_groupoid_swap():
    # Z/2 acting on {1, 2} by swap: action groupoid has 4 arrows
    act = {(0, 1): 1, (0, 2): 2, (1, 1): 2, (1, 2): 1}
    g = build_action(cyclic_table(2), act, [1, 2])
    assert validate(g) == []
    assert len(g.arrows) == 4


def test_action_groupoid_rejects_non_action():
    act = {(0, 1): 1, (0, 2): 2, (1, 1): 1, (1, 2): 1}
    with pytest.raises(InvalidInputTable):
        build_action(cyclic_table(2), act, [1, 2])


def test_disjoint_union():
    g = build_disjoint_union(build_cyclic(2), build_pair([0, 1]))
    assert validate(g) == []
    assert len(g.objects) == 3
    assert len(g.arrows) == 6


def test_pullback_of_point_is_pair():
    # pulling the trivial group back along {1,2} -> {0} gives pair{1,2}
    point = build_group([[0]], name="point")
    gp, phi = build_pullback(point, {1: 0, 2: 0})
    assert validate(gp) == []
    assert len(gp.arrows) == 4
    assert phi.validate() == []
    ok, report = is_morita(phi)
    assert ok, report


def test_pullback_morphism_is_morita():
    g = build_pair([1, 2])
    gp, phi = build_pullback(g, {10: 1, 11: 2, 12: 2})
    assert validate(gp) == []
    ok, _ = is_morita(phi)
    assert ok


def test_identity_is_morita():
    g = build_cyclic(3)
    ok, _ = is_morita(identity_morphism(g))
    assert ok


def test_pair_to_point_is_morita():
    g = build_pair([1, 2])
    point = build_group([[0]], name="point")
    phi = to_point_morphism(g, point)
    ok, _ = is_morita(phi)
    assert ok


def test_non_morita_detected():
    # inclusion of the trivial group into Z/2 is not essentially... it IS
    # essentially surjective (one object) but not fully faithful.
    z2 = build_cyclic(2)
    point = build_group([[0]], name="point")
    phi = GroupoidMorphism(point, z2, {0: 0}, {0: z2.unit[0]})
    ok, report = is_morita(phi)
    assert not ok
    assert not report["fully_faithful"]


def test_pullback_requires_surjection():
    g = build_pair([1, 2])
    with pytest.raises(InvalidInputTable):
        build_pullback(g, {10: 1, 11: 1})
