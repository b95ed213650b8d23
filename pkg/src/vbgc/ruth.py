"""2-term representations up to homotopy over finite groupoids and the
semidirect-product groupoid of fiberwise vectors they generate.

A ruth consists of a per-object complex partial: C -> E, a quasi-action
(psiC, psiE) per arrow and a curvature omega per composable pair.  The
associated total groupoid has arrows (g, c, e) with c in C at tgt(g) and
e in E at src(g), and structure maps

    source(g, c, e) = e
    target(g, c, e) = psiE_g e + partial c
    (g1, c1, e1) . (g2, c2, e2) = (g1 g2, c1 + psiC_{g1} c2 - omega_{(g1,g2)} e2, e2)
    (g, c, e)^{-1} = (g^{-1}, omega_{(g^{-1},g)} e - psiC_{g^{-1}} c, partial c + psiE_g e)

Ruths are normalized: unital quasi-action, omega vanishing when either
arrow is a unit.  Validity is operational: a ruth is valid iff the
brute-force groupoid/interchange suite on its semidirect product passes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotComposable, NotInvertible, ShapeMismatch
from .groupoid import FiniteGroupoid
from .rational import MatQ, QVec, rank, vec_add, vec_neg, vec_sub, zero_vec


@dataclass
class Ruth:
    base: FiniteGroupoid
    dimC: dict[int, int]                 # object -> fiber dim of C
    dimE: dict[int, int]                 # object -> fiber dim of E
    partial: dict[int, MatQ]             # object -> (dimE x dimC)
    psiC: dict[int, MatQ]                # arrow  -> C_{src} -> C_{tgt}
    psiE: dict[int, MatQ]                # arrow  -> E_{src} -> E_{tgt}
    omega: dict[tuple[int, int], MatQ]   # composable pair -> E_{src g2} -> C_{tgt g1}
    name: str = ""

    def shape_check(self) -> None:
        g = self.base
        for x in g.objects:
            p = self.partial[x]
            if p.rows != self.dimE[x] or p.cols != self.dimC[x]:
                raise ShapeMismatch(f"partial at object {x} has wrong shape")
        for a in g.arrows:
            s, t = g.src[a], g.tgt[a]
            if (self.psiC[a].rows, self.psiC[a].cols) != (self.dimC[t], self.dimC[s]):
                raise ShapeMismatch(f"psiC at arrow {a} has wrong shape")
            if (self.psiE[a].rows, self.psiE[a].cols) != (self.dimE[t], self.dimE[s]):
                raise ShapeMismatch(f"psiE at arrow {a} has wrong shape")
        for (g1, g2), om in self.omega.items():
            if not g.composable(g1, g2):
                raise ShapeMismatch(f"omega given on non-composable pair ({g1},{g2})")
            if (om.rows, om.cols) != (self.dimC[g.tgt[g1]], self.dimE[g.src[g2]]):
                raise ShapeMismatch(f"omega at ({g1},{g2}) has wrong shape")

    def om(self, g1: int, g2: int) -> MatQ:
        got = self.omega.get((g1, g2))
        if got is not None:
            return got
        g = self.base
        return MatQ.zeros(self.dimC[g.tgt[g1]], self.dimE[g.src[g2]])


@dataclass(frozen=True)
class VBArrow:
    g: int
    c: QVec  # in C at tgt(g)
    e: QVec  # in E at src(g)


def zero_arrow(r: Ruth, g: int) -> VBArrow:
    b = r.base
    return VBArrow(g, zero_vec(r.dimC[b.tgt[g]]), zero_vec(r.dimE[b.src[g]]))


def unit_arrow(r: Ruth, x: int, e: QVec) -> VBArrow:
    return VBArrow(r.base.unit[x], zero_vec(r.dimC[x]), e)


def core_arrow(r: Ruth, x: int, c: QVec) -> VBArrow:
    """The core element c viewed over the unit arrow at x."""
    return VBArrow(r.base.unit[x], c, zero_vec(r.dimE[x]))


def vb_source(r: Ruth, v: VBArrow) -> QVec:
    return v.e


def vb_target(r: Ruth, v: VBArrow) -> QVec:
    b = r.base
    return vec_add(r.psiE[v.g].apply(v.e), r.partial[b.tgt[v.g]].apply(v.c))


def vb_mul(r: Ruth, v1: VBArrow, v2: VBArrow) -> VBArrow:
    b = r.base
    if not b.composable(v1.g, v2.g):
        raise NotComposable(f"arrows {v1.g}, {v2.g} do not compose")
    if v1.e != vb_target(r, v2):
        raise NotComposable("fiber mismatch: source of left != target of right")
    g12 = b.mul(v1.g, v2.g)
    c = vec_sub(vec_add(v1.c, r.psiC[v1.g].apply(v2.c)), r.om(v1.g, v2.g).apply(v2.e))
    return VBArrow(g12, c, v2.e)


def vb_inv(r: Ruth, v: VBArrow) -> VBArrow:
    b = r.base
    gi = b.inv[v.g]
    c = vec_sub(r.om(gi, v.g).apply(v.e), r.psiC[gi].apply(v.c))
    return VBArrow(gi, c, vb_target(r, v))


def right_core(r: Ruth, c: QVec, g: int) -> VBArrow:
    """c . 0_g for c in C at tgt(g), which is simply (g, c, 0)."""
    return vb_mul(r, core_arrow(r, r.base.tgt[g], c), zero_arrow(r, g))


def left_core(r: Ruth, c: QVec, g: int) -> VBArrow:
    """Left core section at g for c in C at src(g).

    Both defining expressions, -0_g . c^{-1} and 0_g . (c - partial c),
    are computed and must agree; the shared value is returned.
    """
    b = r.base
    x = b.src[g]
    route1 = _neg_arrow(vb_mul(r, zero_arrow(r, g), vb_inv(r, core_arrow(r, x, c))))
    shifted = VBArrow(b.unit[x], c, vec_neg(r.partial[x].apply(c)))
    route2 = vb_mul(r, zero_arrow(r, g), shifted)
    if route1 != route2:
        raise ShapeMismatch("the two left-core expressions disagree (invalid ruth?)")
    return route1


def _neg_arrow(v: VBArrow) -> VBArrow:
    return VBArrow(v.g, vec_neg(v.c), vec_neg(v.e))


def normalization_report(r: Ruth) -> list[str]:
    b = r.base
    problems = []
    for x in b.objects:
        u = b.unit[x]
        if r.psiC[u] != MatQ.identity(r.dimC[x]):
            problems.append(f"psiC at unit of {x} is not the identity")
        if r.psiE[u] != MatQ.identity(r.dimE[x]):
            problems.append(f"psiE at unit of {x} is not the identity")
    for (g1, g2), om in r.omega.items():
        if (g1 in b.unit.values() or g2 in b.unit.values()) and not om.is_zero():
            problems.append(f"omega nonzero on unit-containing pair ({g1},{g2})")
    return problems


def intertwining_report(r: Ruth) -> list[str]:
    """psiE_g . partial_{src g} == partial_{tgt g} . psiC_g for every arrow."""
    b = r.base
    return [
        f"partial does not intertwine the quasi-action at arrow {a}"
        for a in b.arrows
        if r.psiE[a] @ r.partial[b.src[a]] != r.partial[b.tgt[a]] @ r.psiC[a]
    ]


def validate_vb(r: Ruth) -> list[str]:
    """Brute-force the semidirect product's groupoid axioms and interchange law.

    This is the operational definition of ruth validity: shapes and
    normalization, the intertwining square, source/target compatibility,
    unit and inverse laws on fiber basis vectors, associativity on all
    composable triples against all basis parameters, and the interchange
    law on composable basis pairs.
    """
    from .vb import axiom_report, semidirect_vb  # local import; vb builds on us

    r.shape_check()
    problems = normalization_report(r) + intertwining_report(r)
    problems += axiom_report(semidirect_vb(r))
    return problems


# -- splittings and gauge transformations ------------------------------


def _lift(r: Ruth, phi: dict[int, MatQ], g: int, e: QVec) -> VBArrow:
    """h'(g, e) = h(g, e) + phi_g(e) . 0_g = (g, phi_g e, e)."""
    return VBArrow(g, phi[g].apply(e), e)


def split_with_lift(r: Ruth, phi: dict[int, MatQ]) -> Ruth:
    """Re-split the semidirect product along the shifted horizontal lift.

    phi maps each arrow g to a gauge matrix E_{src g} -> C_{tgt g}
    vanishing at units.  The induced quasi-action and curvature are read
    off by evaluating inside the total groupoid:

      psiE'_g e = target(h'(g, e))
      psiC'_g c = C-part of  h'(g, partial c) . c . 0_{g^{-1}}
      omega'_{(g1,g2)} e = C-part of  h'(g1 g2, e) - h'(g1) . h'(g2) (e)

    The core complex is unchanged.
    """
    b = r.base
    for x in b.objects:
        if not phi[b.unit[x]].is_zero():
            raise ShapeMismatch("gauge must vanish at unit arrows")
    psiC = {}
    psiE = {}
    omega = {}
    for a in b.arrows:
        s, t = b.src[a], b.tgt[a]
        ecols = []
        for j in range(r.dimE[s]):
            e = tuple((1 if k == j else 0) for k in range(r.dimE[s]))
            ecols.append(vb_target(r, _lift(r, phi, a, e)))
        psiE[a] = MatQ.from_cols(ecols) if ecols else MatQ.zeros(r.dimE[t], 0)
        ccols = []
        for j in range(r.dimC[s]):
            c = tuple((1 if k == j else 0) for k in range(r.dimC[s]))
            prod = vb_mul(
                r,
                _lift(r, phi, a, r.partial[s].apply(c)),
                vb_mul(r, core_arrow(r, s, c), zero_arrow(r, b.inv[a])),
            )
            ccols.append(prod.c)
        psiC[a] = MatQ.from_cols(ccols) if ccols else MatQ.zeros(r.dimC[t], 0)
    for g1 in b.arrows:
        for g2 in b.arrows:
            if not b.composable(g1, g2):
                continue
            g12 = b.mul(g1, g2)
            cols = []
            for j in range(r.dimE[b.src[g2]]):
                e = tuple((1 if k == j else 0) for k in range(r.dimE[b.src[g2]]))
                v2 = _lift(r, phi, g2, e)
                v1 = _lift(r, phi, g1, vb_target(r, v2))
                prod = vb_mul(r, v1, v2)
                cols.append(vec_sub(_lift(r, phi, g12, e).c, prod.c))
            om = MatQ.from_cols(cols) if cols else MatQ.zeros(
                r.dimC[b.tgt[g1]], 0
            )
            if not om.is_zero():
                omega[(g1, g2)] = om
    return Ruth(
        base=b,
        dimC=dict(r.dimC),
        dimE=dict(r.dimE),
        partial=dict(r.partial),
        psiC=psiC,
        psiE=psiE,
        omega=omega,
        name=f"{r.name}/gauge",
    )


def reassemble_iso_check(r1: Ruth, r2: Ruth, phi: dict[int, MatQ]) -> bool:
    """Check that (g, c, e) -> (g, c + phi_g e, e) intertwines all structure maps.

    r2 should be the re-splitting of r1 along phi; the map above is then
    an isomorphism of the two semidirect products.  Verified on all fiber
    basis vectors and all composable basis pairs.
    """
    b = r1.base
    if r1.dimC != r2.dimC or r1.dimE != r2.dimE or b is not r2.base:
        return False

    def fmap(v: VBArrow) -> VBArrow:
        return VBArrow(v.g, vec_add(v.c, phi[v.g].apply(v.e)), v.e)

    for a in b.arrows:
        for v in _fiber_basis(r2, a):
            if vb_source(r2, v) != vb_source(r1, fmap(v)):
                return False
            if vb_target(r2, v) != vb_target(r1, fmap(v)):
                return False
            if fmap(vb_inv(r2, v)) != vb_inv(r1, fmap(v)):
                return False
    for g1 in b.arrows:
        for g2 in b.arrows:
            if not b.composable(g1, g2):
                continue
            for v2 in _fiber_basis(r2, g2):
                for c1 in _basis_vectors(r2.dimC[b.tgt[g1]]):
                    v1 = VBArrow(g1, c1, vb_target(r2, v2))
                    if fmap(vb_mul(r2, v1, v2)) != vb_mul(r1, fmap(v1), fmap(v2)):
                        return False
    return True


def _basis_vectors(n: int):
    from .rational import unit_vec

    return [unit_vec(n, i) for i in range(n)] or []


def _fiber_basis(r: Ruth, g: int) -> list[VBArrow]:
    b = r.base
    s, t = b.src[g], b.tgt[g]
    out = [VBArrow(g, c, zero_vec(r.dimE[s])) for c in _basis_vectors(r.dimC[t])]
    out += [VBArrow(g, zero_vec(r.dimC[t]), e) for e in _basis_vectors(r.dimE[s])]
    return out


# -- pointwise fat representation --------------------------------------


def fat_rep(r: Ruth, g: int, b_mat: MatQ) -> tuple[MatQ, MatQ]:
    """Action of the pointwise splitting b(e) = (g, B e, e) on the core complex.

    Returns (action on E, action on C):

        E-action: e |-> target(b(e))
        C-action: c |-> C-part of  b(partial c) . c . 0_{g^{-1}}

    The E-action must be invertible (checked by rank); the pair is a
    chain map for the core anchor, which is asserted.
    """
    base = r.base
    s, t = base.src[g], base.tgt[g]
    if (b_mat.rows, b_mat.cols) != (r.dimC[t], r.dimE[s]):
        raise ShapeMismatch("splitting matrix must map E at src(g) to C at tgt(g)")
    phi = {g: b_mat}
    ecols = [
        vb_target(r, _lift(r, phi, g, e)) for e in _basis_vectors(r.dimE[s])
    ]
    psi_e = MatQ.from_cols(ecols) if ecols else MatQ.zeros(r.dimE[t], 0)
    if rank(psi_e) != r.dimE[s] or r.dimE[s] != r.dimE[t]:
        raise NotInvertible("the induced action on E is not invertible")
    ccols = []
    for c in _basis_vectors(r.dimC[s]):
        prod = vb_mul(
            r,
            _lift(r, phi, g, r.partial[s].apply(c)),
            vb_mul(r, core_arrow(r, s, c), zero_arrow(r, base.inv[g])),
        )
        ccols.append(prod.c)
    psi_c = MatQ.from_cols(ccols) if ccols else MatQ.zeros(r.dimC[t], 0)
    if r.partial[t] @ psi_c != psi_e @ r.partial[s]:
        raise ShapeMismatch("fat action is not a chain map (invalid ruth?)")
    return psi_e, psi_c


def fat_mul(r: Ruth, g1: int, b1: MatQ, g2: int, b2: MatQ) -> tuple[int, MatQ]:
    """Compose two pointwise splittings: (g1, b1)(g2, b2) = (g1 g2, b1 . b2)."""
    base = r.base
    if not base.composable(g1, g2):
        raise NotComposable("splitting arrows do not compose")
    cols = []
    for e in _basis_vectors(r.dimE[base.src[g2]]):
        v2 = _lift(r, {g2: b2}, g2, e)
        v1 = _lift(r, {g1: b1}, g1, vb_target(r, v2))
        cols.append(vb_mul(r, v1, v2).c)
    b12 = MatQ.from_cols(cols) if cols else MatQ.zeros(r.dimC[base.tgt[g1]], 0)
    return base.mul(g1, g2), b12
