"""Finite VB-groupoids as explicit matrix data, the brute-force axiom
suite, and dualization.

A FiniteVB stores, over a base groupoid, a fiber dimension per arrow, a
side-bundle dimension per object, and all structure maps as matrices:
source/target (fiber -> side), unit (side -> fiber over the unit arrow),
inverse (fiber over g -> fiber over g^{-1}) and multiplication as a
single linear map fiber(g1) + fiber(g2) -> fiber(g1 g2), meaningful on
the composable subspace {source(v1) = target(v2)}.

The same axiom suite validates semidirect products of ruths and their
duals, which is how ruth validity and the dual construction are tested.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groupoid import FiniteGroupoid
from .rational import (
    MatQ,
    QVec,
    nullspace_basis,
    rank,
    solve,
    unit_vec,
    vec_add,
    zero_vec,
)
from .ruth import Ruth


@dataclass
class FiniteVB:
    base: FiniteGroupoid
    side_dim: dict[int, int]
    fiber_dim: dict[int, int]
    src_mat: dict[int, MatQ]
    tgt_mat: dict[int, MatQ]
    unit_mat: dict[int, MatQ]
    inv_mat: dict[int, MatQ]
    mul_mat: dict[tuple[int, int], MatQ]
    name: str = ""

    def source(self, g: int, v: QVec) -> QVec:
        return self.src_mat[g].apply(v)

    def target(self, g: int, v: QVec) -> QVec:
        return self.tgt_mat[g].apply(v)

    def unit(self, x: int, e: QVec) -> QVec:
        return self.unit_mat[x].apply(e)

    def inverse(self, g: int, v: QVec) -> QVec:
        return self.inv_mat[g].apply(v)

    def mul(self, g1: int, v1: QVec, g2: int, v2: QVec) -> QVec:
        return self.mul_mat[(g1, g2)].apply(tuple(v1) + tuple(v2))

    def core_basis(self, x: int) -> list[QVec]:
        """Basis of ker(source) inside the fiber over the unit arrow at x."""
        return nullspace_basis(self.src_mat[self.base.unit[x]])

    def core_anchor(self, x: int) -> MatQ:
        """Matrix of target restricted to the core, core basis -> side coords."""
        cols = [self.target(self.base.unit[x], c) for c in self.core_basis(x)]
        return MatQ.from_cols(cols) if cols else MatQ.zeros(self.side_dim[x], 0)


def semidirect_vb(r: Ruth) -> FiniteVB:
    """The total VB-groupoid of a ruth, fibers coordinatized as (c, e)."""
    b = r.base
    side = dict(r.dimE)
    fiber = {g: r.dimC[b.tgt[g]] + r.dimE[b.src[g]] for g in b.arrows}
    src_mat = {}
    tgt_mat = {}
    inv_mat = {}
    for g in b.arrows:
        s, t = b.src[g], b.tgt[g]
        nc, ne = r.dimC[t], r.dimE[s]
        src_mat[g] = MatQ.zeros(ne, nc).hstack(MatQ.identity(ne))
        tgt_mat[g] = r.partial[t].hstack(r.psiE[g])
        gi = b.inv[g]
        top = (-(r.psiC[gi])).hstack(r.om(gi, g))
        bottom = r.partial[t].hstack(r.psiE[g])
        inv_mat[g] = MatQ.from_rows(top.to_rows() + bottom.to_rows())
    unit_mat = {}
    for x in b.objects:
        nc, ne = r.dimC[x], r.dimE[x]
        unit_mat[x] = MatQ.from_rows(
            MatQ.zeros(nc, ne).to_rows() + MatQ.identity(ne).to_rows()
        )
    mul_mat = {}
    for (g1, g2) in b.comp:
        t1, s1 = b.tgt[g1], b.src[g1]
        s2 = b.src[g2]
        nc1, ne1 = r.dimC[t1], r.dimE[s1]
        nc2, ne2 = r.dimC[b.tgt[g2]], r.dimE[s2]
        c_rows = (
            MatQ.identity(nc1)
            .hstack(MatQ.zeros(nc1, ne1))
            .hstack(r.psiC[g1])
            .hstack(-r.om(g1, g2))
        )
        e_rows = MatQ.zeros(ne2, nc1 + ne1 + nc2).hstack(MatQ.identity(ne2))
        mul_mat[(g1, g2)] = MatQ.from_rows(c_rows.to_rows() + e_rows.to_rows())
    return FiniteVB(
        base=b,
        side_dim=side,
        fiber_dim=fiber,
        src_mat=src_mat,
        tgt_mat=tgt_mat,
        unit_mat=unit_mat,
        inv_mat=inv_mat,
        mul_mat=mul_mat,
        name=f"V({r.name})",
    )


def _composable_pair_basis(vb: FiniteVB, g1: int, g2: int) -> list[QVec]:
    """Basis of {(v1, v2) : source(v1) = target(v2)} in fiber(g1)+fiber(g2)."""
    constraint = vb.src_mat[g1].hstack(-vb.tgt_mat[g2])
    return nullspace_basis(constraint)


def _split2(vb: FiniteVB, g1: int, g2: int, w: QVec) -> tuple[QVec, QVec]:
    n1 = vb.fiber_dim[g1]
    return w[:n1], w[n1:]


def axiom_report(vb: FiniteVB) -> list[str]:
    """Brute-force groupoid axioms and the interchange law on basis vectors."""
    problems: list[str] = []
    b = vb.base

    for x in b.objects:
        u = b.unit[x]
        if vb.src_mat[u] @ vb.unit_mat[x] != MatQ.identity(vb.side_dim[x]):
            problems.append(f"source of unit section is not the identity at {x}")
        if vb.tgt_mat[u] @ vb.unit_mat[x] != MatQ.identity(vb.side_dim[x]):
            problems.append(f"target of unit section is not the identity at {x}")

    for g in b.arrows:
        if rank(vb.src_mat[g]) != vb.side_dim[b.src[g]]:
            problems.append(f"source map not surjective on fiber over arrow {g}")
        for j in range(vb.fiber_dim[g]):
            v = unit_vec(vb.fiber_dim[g], j)
            tv, sv = vb.target(g, v), vb.source(g, v)
            # unit laws
            lu = vb.mul(b.unit[b.tgt[g]], vb.unit(b.tgt[g], tv), g, v)
            if lu != v:
                problems.append(f"left unit law fails over arrow {g} basis {j}")
            ru = vb.mul(g, v, b.unit[b.src[g]], vb.unit(b.src[g], sv))
            if ru != v:
                problems.append(f"right unit law fails over arrow {g} basis {j}")
            # inverse laws
            iv = vb.inverse(g, v)
            gi = b.inv[g]
            if vb.source(gi, iv) != tv or vb.target(gi, iv) != sv:
                problems.append(f"inverse has wrong source/target over {g} basis {j}")
            if vb.mul(g, v, gi, iv) != vb.unit(b.tgt[g], tv):
                problems.append(f"v . v^-1 != unit over arrow {g} basis {j}")
            if vb.mul(gi, iv, g, v) != vb.unit(b.src[g], sv):
                problems.append(f"v^-1 . v != unit over arrow {g} basis {j}")

    for (g1, g2) in b.comp:
        g12 = b.mul(g1, g2)
        pair_basis = _composable_pair_basis(vb, g1, g2)
        for w in pair_basis:
            v1, v2 = _split2(vb, g1, g2, w)
            prod = vb.mul(g1, v1, g2, v2)
            if vb.source(g12, prod) != vb.source(g2, v2):
                problems.append(f"source of product wrong on pair ({g1},{g2})")
            if vb.target(g12, prod) != vb.target(g1, v1):
                problems.append(f"target of product wrong on pair ({g1},{g2})")
        # interchange law on sums of composable basis pairs
        for i, w in enumerate(pair_basis):
            for w2 in pair_basis[i:]:
                v1, v2 = _split2(vb, g1, g2, w)
                u1, u2 = _split2(vb, g1, g2, w2)
                lhs = vb.mul(g1, vec_add(v1, u1), g2, vec_add(v2, u2))
                rhs = vec_add(vb.mul(g1, v1, g2, v2), vb.mul(g1, u1, g2, u2))
                if lhs != rhs:
                    problems.append(f"interchange law fails on pair ({g1},{g2})")

    for g1 in b.arrows:
        for g2 in b.arrows:
            if not b.composable(g1, g2):
                continue
            for g3 in b.arrows:
                if not b.composable(g2, g3):
                    continue
                g12 = b.mul(g1, g2)
                g23 = b.mul(g2, g3)
                constraint = MatQ.from_rows(
                    vb.src_mat[g1]
                    .hstack(-vb.tgt_mat[g2])
                    .hstack(MatQ.zeros(vb.side_dim[b.src[g1]], vb.fiber_dim[g3]))
                    .to_rows()
                    + MatQ.zeros(vb.side_dim[b.src[g2]], vb.fiber_dim[g1])
                    .hstack(vb.src_mat[g2])
                    .hstack(-vb.tgt_mat[g3])
                    .to_rows()
                )
                for w in nullspace_basis(constraint):
                    n1, n2 = vb.fiber_dim[g1], vb.fiber_dim[g2]
                    v1, v2, v3 = w[:n1], w[n1 : n1 + n2], w[n1 + n2 :]
                    left = vb.mul(g12, vb.mul(g1, v1, g2, v2), g3, v3)
                    right = vb.mul(g1, v1, g23, vb.mul(g2, v2, g3, v3))
                    if left != right:
                        problems.append(
                            f"associativity fails on triple ({g1},{g2},{g3})"
                        )
    return problems


# -- dualization --------------------------------------------------------


def _right_core_vec(vb: FiniteVB, c: QVec, g: int) -> QVec:
    """c . 0_g for c in the core at tgt(g)."""
    return vb.mul(vb.base.unit[vb.base.tgt[g]], c, g, zero_vec(vb.fiber_dim[g]))


def _left_core_vec(vb: FiniteVB, c: QVec, g: int) -> QVec:
    """0_g . (c - unit(anchor c)) for c in the core at src(g)."""
    b = vb.base
    x = b.src[g]
    u = b.unit[x]
    anchor = vb.target(u, c)
    d = vec_add(c, tuple(-t for t in vb.unit(x, anchor)))
    return vb.mul(g, zero_vec(vb.fiber_dim[g]), u, d)


def _right_inverse(m: MatQ) -> MatQ:
    """Any exact right inverse of a full-row-rank matrix (deterministic)."""
    cols = [solve(m, unit_vec(m.rows, i)) for i in range(m.rows)]
    return MatQ.from_cols(cols) if cols else MatQ.zeros(m.cols, 0)


def dualize(vb: FiniteVB) -> FiniteVB:
    """The dual VB-groupoid, fibers in dual coordinates of the originals.

    The side bundle is the dual of the core; source/target pair against
    left/right core sections, the multiplication is the unique linear map
    with <psi1 . psi2, v1 . v2> = <psi1, v1> + <psi2, v2>, computed from
    the factorization v = (v . w2^{-1}) . w2 with w2 a chosen preimage of
    source(v), and inversion satisfies <psi^{-1}, w> = -<psi, w^{-1}>.
    """
    b = vb.base
    core = {x: vb.core_basis(x) for x in b.objects}
    side = {x: len(core[x]) for x in b.objects}
    fiber = dict(vb.fiber_dim)

    src_mat = {}
    tgt_mat = {}
    for g in b.arrows:
        s, t = b.src[g], b.tgt[g]
        lrows = [_left_core_vec(vb, c, g) for c in core[s]]
        src_mat[g] = MatQ.from_rows(lrows) if lrows else MatQ.zeros(0, fiber[g])
        rrows = [_right_core_vec(vb, c, g) for c in core[t]]
        tgt_mat[g] = MatQ.from_rows(rrows) if rrows else MatQ.zeros(0, fiber[g])

    unit_mat = {}
    for x in b.objects:
        u = b.unit[x]
        basis = vb.unit_mat[x].hstack(
            MatQ.from_cols(core[x]) if core[x] else MatQ.zeros(fiber[u], 0)
        )
        bt = basis.transpose()
        cols = []
        for j in range(side[x]):
            rhs = zero_vec(vb.side_dim[x]) + unit_vec(side[x], j)
            cols.append(solve(bt, rhs))
        unit_mat[x] = MatQ.from_cols(cols) if cols else MatQ.zeros(fiber[u], 0)

    inv_mat = {g: -(vb.inv_mat[b.inv[g]].transpose()) for g in b.arrows}

    mul_mat = {}
    for (g1, g2) in b.comp:
        g12 = b.mul(g1, g2)
        g2i = b.inv[g2]
        rinv2 = _right_inverse(vb.src_mat[g2])
        w2_of_v = rinv2 @ vb.src_mat[g12]
        n12 = fiber[g12]
        stacked = MatQ.from_rows(
            MatQ.identity(n12).to_rows()
            + (vb.inv_mat[g2] @ w2_of_v).to_rows()
        )
        v1_of_v = vb.mul_mat[(g12, g2i)] @ stacked
        mul_mat[(g1, g2)] = MatQ.from_rows(
            v1_of_v.to_rows() + w2_of_v.to_rows()
        ).transpose()

    return FiniteVB(
        base=b,
        side_dim=side,
        fiber_dim=fiber,
        src_mat=src_mat,
        tgt_mat=tgt_mat,
        unit_mat=unit_mat,
        inv_mat=inv_mat,
        mul_mat=mul_mat,
        name=f"{vb.name}*",
    )


def dual_core_anchor_matrix(vb: FiniteVB, x: int) -> MatQ:
    """Core anchor of the dual at x, in (core-of-dual basis -> dual side) coords."""
    return dualize(vb).core_anchor(x)


def dual_pairing_identity_report(vb: FiniteVB, dual: FiniteVB) -> list[str]:
    """Check <psi1 . psi2, v1 . v2> = <psi1, v1> + <psi2, v2> on basis pairs."""
    problems = []
    b = vb.base
    for (g1, g2) in b.comp:
        g12 = b.mul(g1, g2)
        vpairs = _composable_pair_basis(vb, g1, g2)
        ppairs = _composable_pair_basis(dual, g1, g2)
        for w in vpairs:
            v1, v2 = _split2(vb, g1, g2, w)
            v12 = vb.mul(g1, v1, g2, v2)
            for pw in ppairs:
                p1, p2 = _split2(dual, g1, g2, pw)
                p12 = dual.mul(g1, p1, g2, p2)
                lhs = sum(a * bqty for a, bqty in zip(p12, v12))
                rhs = sum(a * bv for a, bv in zip(p1, v1)) + sum(
                    a * bv for a, bv in zip(p2, v2)
                )
                if lhs != rhs:
                    problems.append(f"dual pairing identity fails on ({g1},{g2})")
    return problems


def mul_factorization_independent(vb: FiniteVB, g1: int, g2: int) -> bool:
    """Dual multiplication must not depend on the chosen source preimage.

    Recomputes the dual multiplication with a different right inverse of
    the source (shifted by a kernel element) and compares values on
    composable dual pairs.
    """
    b = vb.base
    g12 = b.mul(g1, g2)
    g2i = b.inv[g2]
    rinv = _right_inverse(vb.src_mat[g2])
    kerb = nullspace_basis(vb.src_mat[g2])
    if not kerb:
        return True
    shift = MatQ.from_cols([kerb[0]] * vb.side_dim[b.src[g2]])
    rinv2 = rinv + shift

    def build(rv: MatQ) -> MatQ:
        w2_of_v = rv @ vb.src_mat[g12]
        stacked = MatQ.from_rows(
            MatQ.identity(vb.fiber_dim[g12]).to_rows()
            + (vb.inv_mat[g2] @ w2_of_v).to_rows()
        )
        v1_of_v = vb.mul_mat[(g12, g2i)] @ stacked
        return MatQ.from_rows(v1_of_v.to_rows() + w2_of_v.to_rows()).transpose()

    m1, m2 = build(rinv), build(rinv2)
    dual = dualize(vb)
    for pw in _composable_pair_basis(dual, g1, g2):
        if m1.apply(pw) != m2.apply(pw):
            return False
    return True


def vb_isomorphic_on_axioms(a: FiniteVB, c: FiniteVB) -> list[str]:
    """Structure comparison for canonically identified fibers (double dual).

    Fibers of both objects must be coordinatized identically; checks that
    inverse matrices agree, source/target kernels agree, unit images
    agree, and multiplications agree on the composable subspace.
    """
    problems = []
    b = a.base
    if a.fiber_dim != c.fiber_dim:
        return ["fiber dimensions differ"]
    for g in b.arrows:
        if a.inv_mat[g] != c.inv_mat[g]:
            problems.append(f"inverse matrices differ over arrow {g}")
        for m1, m2, tag in (
            (a.src_mat[g], c.src_mat[g], "source"),
            (a.tgt_mat[g], c.tgt_mat[g], "target"),
        ):
            stacked = MatQ.from_rows(m1.to_rows() + m2.to_rows())
            if not (rank(stacked) == rank(m1) == rank(m2)):
                problems.append(f"{tag} kernels differ over arrow {g}")
    for x in b.objects:
        u1, u2 = a.unit_mat[x], c.unit_mat[x]
        stacked = u1.hstack(u2)
        if not (rank(stacked) == rank(u1) == rank(u2)):
            problems.append(f"unit images differ at object {x}")
    for (g1, g2) in b.comp:
        ca = a.src_mat[g1].hstack(-a.tgt_mat[g2])
        cc = c.src_mat[g1].hstack(-c.tgt_mat[g2])
        stacked = MatQ.from_rows(ca.to_rows() + cc.to_rows())
        if not (rank(stacked) == rank(ca) == rank(cc)):
            problems.append(f"composable subspaces differ on pair ({g1},{g2})")
            continue
        for w in _composable_pair_basis(a, g1, g2):
            if a.mul_mat[(g1, g2)].apply(w) != c.mul_mat[(g1, g2)].apply(w):
                problems.append(f"multiplication differs on pair ({g1},{g2})")
                break
    return problems
