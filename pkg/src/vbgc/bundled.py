"""Bundled finite examples: groupoids, ruths and Morita morphisms.

Everything here is constructed programmatically and validated at build
time; the CLI exposes the same objects through generated problem files.
"""

from __future__ import annotations

from fractions import Fraction

from .groupoid import (
    FiniteGroupoid,
    GroupoidMorphism,
    build_cyclic,
    build_disjoint_union,
    build_group,
    build_pair,
    build_pullback,
    identity_morphism,
    to_point_morphism,
)
from .rational import MatQ, rat
from .ruth import Ruth, split_with_lift


def trivial_ruth(g: FiniteGroupoid, name: str | None = None) -> Ruth:
    """C = Q with the trivial action, E = 0."""
    return Ruth(
        base=g,
        dimC={x: 1 for x in g.objects},
        dimE={x: 0 for x in g.objects},
        partial={x: MatQ.zeros(0, 1) for x in g.objects},
        psiC={a: MatQ.identity(1) for a in g.arrows},
        psiE={a: MatQ.zeros(0, 0) for a in g.arrows},
        omega={},
        name=name or f"trivial({g.name})",
    )


def representation_ruth(
    g: FiniteGroupoid,
    dimC: int,
    dimE: int,
    partial0: MatQ,
    rep_c: dict[int, MatQ],
    rep_e: dict[int, MatQ],
    name: str = "rep",
) -> Ruth:
    """Genuine representation (omega = 0) with constant fiber dimensions."""
    return Ruth(
        base=g,
        dimC={x: dimC for x in g.objects},
        dimE={x: dimE for x in g.objects},
        partial={x: partial0 for x in g.objects},
        psiC=rep_c,
        psiE=rep_e,
        omega={},
        name=name,
    )


def _pair_cocycle_rep(
    g: FiniteGroupoid, t_mats: dict[int, MatQ], s_mats: dict[int, MatQ],
    partial0: MatQ, name: str,
) -> Ruth:
    """Pair-groupoid representation psi_(x,y) = T(x) T(y)^{-1}.

    T must be given with exact inverses; here the T's are unipotent or
    diagonal so inverses are computed exactly.
    """
    from .rational import solve, unit_vec

    def invert(m: MatQ) -> MatQ:
        cols = [solve(m, unit_vec(m.rows, i)) for i in range(m.rows)]
        return MatQ.from_cols(cols)

    t_inv = {x: invert(m) for x, m in t_mats.items()}
    s_inv = {x: invert(m) for x, m in s_mats.items()}
    psiC = {}
    psiE = {}
    partial = {}
    for a in g.arrows:
        x, y = g.tgt[a], g.src[a]
        psiC[a] = t_mats[x] @ t_inv[y]
        psiE[a] = s_mats[x] @ s_inv[y]
    for x in g.objects:
        partial[x] = s_mats[x] @ partial0 @ t_inv[x]
    return Ruth(
        base=g,
        dimC={x: partial0.cols for x in g.objects},
        dimE={x: partial0.rows for x in g.objects},
        partial=partial,
        psiC=psiC,
        psiE=psiE,
        omega={},
        name=name,
    )


def _q(rows) -> MatQ:
    return MatQ.from_rows([[rat(e) for e in row] for row in rows])


def z3_trivial() -> Ruth:
    return trivial_ruth(build_cyclic(3), name="z3-trivial")


def pair2_trivial() -> Ruth:
    return trivial_ruth(build_pair([1, 2]), name="pair2-trivial")


def z2_contractible() -> Ruth:
    """Z/2 acting by sign on an invertible complex C = E = Q."""
    g = build_cyclic(2)
    u, s = g.unit[0], g.arrow_by_label(1)
    return representation_ruth(
        g,
        1,
        1,
        MatQ.identity(1),
        {u: MatQ.identity(1), s: _q([[-1]])},
        {u: MatQ.identity(1), s: _q([[-1]])},
        name="z2-sign-invertible",
    )


def z3_partial_ruth() -> Ruth:
    """Z/3 with trivial actions on C = E = Q and partial = 1."""
    g = build_cyclic(3)
    return representation_ruth(
        g,
        1,
        1,
        MatQ.identity(1),
        {a: MatQ.identity(1) for a in g.arrows},
        {a: MatQ.identity(1) for a in g.arrows},
        name="z3-partial",
    )


def pair3_rep() -> Ruth:
    """Pair groupoid on three objects with a nontrivial 2-dim representation."""
    g = build_pair([1, 2, 3])
    t_mats = {
        1: MatQ.identity(2),
        2: _q([[1, 1], [0, 1]]),
        3: _q([[2, 0], [0, 1]]),
    }
    s_mats = {
        1: MatQ.identity(2),
        2: _q([[1, 0], [1, 1]]),
        3: _q([[1, 0], [0, 3]]),
    }
    partial0 = _q([[1, 0], [0, 0]])
    return _pair_cocycle_rep(g, t_mats, s_mats, partial0, name="pair3-rep")


def z3_gauged() -> Ruth:
    """Gauge shift of z3_partial_ruth; has nonzero curvature."""
    r = z3_partial_ruth()
    g = r.base
    phi = {a: MatQ.zeros(1, 1) for a in g.arrows}
    phi[g.arrow_by_label(1)] = MatQ.identity(1)
    out = split_with_lift(r, phi)
    out.name = "z3-gauged"
    assert out.omega, "gauge was expected to create curvature"
    return out


def pair3_gauged() -> Ruth:
    """Gauge shift of pair3_rep; has nonzero curvature."""
    r = pair3_rep()
    g = r.base
    phi = {}
    for a in g.arrows:
        x, y = g.tgt[a], g.src[a]
        phi[a] = MatQ.from_rows([[x - y, 0], [0, 2 * (x - y)]])
    out = split_with_lift(r, phi)
    out.name = "pair3-gauged"
    assert out.omega, "gauge was expected to create curvature"
    return out


def union_trivial() -> Ruth:
    g = build_disjoint_union(build_cyclic(3), build_pair([0, 1]))
    return trivial_ruth(g, name="union-trivial")


def z3_rational_rotation() -> Ruth:
    """Z/3 on C = Q^2 via the rational order-3 rotation, E = 0."""
    g = build_cyclic(3)
    w = _q([[0, -1], [1, -1]])  # companion matrix of x^2 + x + 1
    u = g.unit[0]
    a1 = g.arrow_by_label(1)
    a2 = g.arrow_by_label(2)
    return representation_ruth(
        g,
        2,
        0,
        MatQ.zeros(0, 2),
        {u: MatQ.identity(2), a1: w, a2: w @ w},
        {u: MatQ.zeros(0, 0), a1: MatQ.zeros(0, 0), a2: MatQ.zeros(0, 0)},
        name="z3-rotation",
    )


def bundled_ruths() -> dict[str, Ruth]:
    """Every bundled finite ruth, keyed by name."""
    ruths = [
        z3_trivial(),
        pair2_trivial(),
        z2_contractible(),
        z3_partial_ruth(),
        pair3_rep(),
        z3_gauged(),
        pair3_gauged(),
        union_trivial(),
        z3_rational_rotation(),
    ]
    return {r.name: r for r in ruths}


def point_groupoid() -> FiniteGroupoid:
    return build_group([[0]], name="point")


def point_complex_ruth(g: FiniteGroupoid | None = None) -> Ruth:
    """Trivial group with complex Q^2 -> Q: homology (ker, coker) = (1, 0)."""
    g = g if g is not None else point_groupoid()
    return representation_ruth(
        g,
        2,
        1,
        _q([[1, 0]]),
        {g.arrows[0]: MatQ.identity(2)},
        {g.arrows[0]: MatQ.identity(1)},
        name="point-complex",
    )


def bundled_morita_cases() -> list[dict]:
    """Morita morphisms phi: G' -> G with a ruth on G, for comparison runs."""
    cases = []

    g_pair2 = build_pair([1, 2])
    gp, phi = build_pullback(g_pair2, {10: 1, 11: 2, 12: 2})
    cases.append(
        {
            "name": "pullback-pair2-to-3pts",
            "morphism": phi,
            "ruth": trivial_ruth(g_pair2),
        }
    )

    z2 = build_cyclic(2)
    u, s = z2.unit[0], z2.arrow_by_label(1)
    z2_rep = representation_ruth(
        z2,
        1,
        1,
        MatQ.identity(1),
        {u: MatQ.identity(1), s: _q([[-1]])},
        {u: MatQ.identity(1), s: _q([[-1]])},
        name="z2-sign",
    )
    _, phi2 = build_pullback(z2, {0: 0, 1: 0})
    cases.append({"name": "pullback-z2-doubled", "morphism": phi2, "ruth": z2_rep})

    pair3 = build_pair([1, 2, 3])
    point = point_groupoid()
    cases.append(
        {
            "name": "pair3-to-point",
            "morphism": to_point_morphism(pair3, point),
            "ruth": point_complex_ruth(point),
        }
    )

    z3 = build_cyclic(3)
    cases.append(
        {
            "name": "identity-z3",
            "morphism": identity_morphism(z3),
            "ruth": z3_trivial(),
        }
    )
    return cases
