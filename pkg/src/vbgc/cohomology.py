"""The degree-(p, 0) cochain complex of a ruth's total VB-groupoid:
cochain bases, the differential, cohomology and Morita comparison.

A degree-p cochain is a pair (omega, theta): omega assigns to every
composable p-tuple a vector in C at the target of its first arrow, theta
assigns to every (p-1)-tuple a vector in E at the target of its first
arrow (for p = 0 the cochain is a section of C over objects and theta is
absent).  The arrow-valued map g |-> (g_1, omega, theta(face_0)) then has
source equal to the pulled-back theta by construction.

The differential is evaluated along two independent routes:

  * direct: the defining alternating expression, with its leading
    product term computed through the actual semidirect multiplication
    and inversion;
  * component: the expanded quasi-action/curvature formula
        omega' = psiC_{g1} (face_0^* omega) + sum_{i>=1} (-1)^i face_i^* omega
                 - omega_{(g1,g2)} (face_0 face_0)^* theta
        theta' = -(partial . omega + psiE_{h1} (face_0^* theta)
                 + sum_{i>=1} (-1)^i face_i^* theta).

Both must agree entrywise, exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotMorita, ShapeMismatch
from .groupoid import GroupoidMorphism, face, is_morita, nerve
from .rational import (
    MatQ,
    QVec,
    induced_map_on_quotients,
    nullspace_basis,
    rank,
    solve,
    vec_add,
    vec_neg,
    vec_sub,
    zero_vec,
)
from .ruth import Ruth, VBArrow, core_arrow, vb_inv, vb_mul, zero_arrow


@dataclass
class Cochain:
    p: int
    omega: dict[tuple, QVec]
    theta: dict[tuple, QVec] | None  # None iff p == 0

    def copy(self) -> "Cochain":
        return Cochain(
            self.p,
            dict(self.omega),
            dict(self.theta) if self.theta is not None else None,
        )


BasisKey = tuple[str, tuple, int]  # ("C"| "E", nerve tuple, fiber index)


def cochain_basis(r: Ruth, p: int, budget: int | None = None) -> list[BasisKey]:
    """Deterministic ordered basis of the degree-p cochain space."""
    b = r.base
    keys: list[BasisKey] = []
    if p == 0:
        for (x,) in nerve(b, 0):
            keys += [("C", (x,), j) for j in range(r.dimC[x])]
        return keys
    for t in nerve(b, p, budget):
        x = b.tgt[t[0]]
        keys += [("C", t, j) for j in range(r.dimC[x])]
    for t in nerve(b, p - 1, budget):
        x = b.tgt[t[0]] if p - 1 >= 1 else t[0]
        keys += [("E", t, j) for j in range(r.dimE[x])]
    return keys


def zero_cochain(r: Ruth, p: int) -> Cochain:
    b = r.base
    if p == 0:
        return Cochain(0, {(x,): zero_vec(r.dimC[x]) for x in b.objects}, None)
    omega = {t: zero_vec(r.dimC[b.tgt[t[0]]]) for t in nerve(b, p)}
    if p - 1 == 0:
        theta = {(x,): zero_vec(r.dimE[x]) for x in b.objects}
    else:
        theta = {t: zero_vec(r.dimE[b.tgt[t[0]]]) for t in nerve(b, p - 1)}
    return Cochain(p, omega, theta)


def basis_cochain(r: Ruth, p: int, key: BasisKey) -> Cochain:
    c = zero_cochain(r, p)
    kind, t, j = key
    store = c.omega if kind == "C" else c.theta
    store[t] = tuple(
        Fraction(1 if i == j else 0) for i in range(len(store[t]))
    )
    return c


def cochain_coords(r: Ruth, c: Cochain, basis: list[BasisKey]) -> list[Fraction]:
    out = []
    for kind, t, j in basis:
        store = c.omega if kind == "C" else c.theta
        out.append(store[t][j])
    return out


def _value_arrow(r: Ruth, c: Cochain, t: tuple) -> VBArrow:
    """The arrow-valued evaluation (g1, omega(t), theta(face_0 t))."""
    b = r.base
    g1 = t[0]
    th = c.theta[face(b, 0, t)]
    return VBArrow(g1, c.omega[t], th)


def _add(a: VBArrow, b2: VBArrow) -> VBArrow:
    if a.g != b2.g:
        raise ShapeMismatch("cannot add arrow values over different arrows")
    return VBArrow(a.g, vec_add(a.c, b2.c), vec_add(a.e, b2.e))


def _neg(a: VBArrow) -> VBArrow:
    return VBArrow(a.g, vec_neg(a.c), vec_neg(a.e))


def delta(r: Ruth, c: Cochain) -> Cochain:
    """Direct evaluation of the differential through the semidirect product."""
    b = r.base
    p = c.p
    out = zero_cochain(r, p + 1)
    seen: set[tuple] = set()
    if p == 0:
        for g in b.arrows:
            t_term = VBArrow(g, c.omega[(b.tgt[g],)], zero_vec(r.dimE[b.src[g]]))
            s_val = core_arrow(r, b.src[g], c.omega[(b.src[g],)])
            s_term = vb_mul(r, zero_arrow(r, g), vb_inv(r, s_val))
            value = _add(_neg(t_term), _neg(s_term))
            out.omega[(g,)] = value.c
            key = (b.src[g],)
            if key in seen and out.theta[key] != value.e:
                raise ShapeMismatch("differential value inconsistent over faces")
            seen.add(key)
            out.theta[key] = value.e
        return out
    for t in nerve(b, p + 1):
        v1 = _value_arrow(r, c, face(b, 1, t))
        v0 = _value_arrow(r, c, face(b, 0, t))
        value = _neg(vb_mul(r, v1, vb_inv(r, v0)))
        sign = 1
        for i in range(2, p + 2):
            term = _value_arrow(r, c, face(b, i, t))
            value = _add(value, term if sign > 0 else _neg(term))
            sign = -sign
        out.omega[t] = value.c
        key = face(b, 0, t)
        if key in seen and out.theta[key] != value.e:
            raise ShapeMismatch("differential value inconsistent over faces")
        seen.add(key)
        out.theta[key] = value.e
    return out


def delta_component(r: Ruth, c: Cochain) -> Cochain:
    """The expanded component formula for the differential."""
    b = r.base
    p = c.p
    out = zero_cochain(r, p + 1)
    if p == 0:
        for g in b.arrows:
            out.omega[(g,)] = vec_sub(
                r.psiC[g].apply(c.omega[(b.src[g],)]), c.omega[(b.tgt[g],)]
            )
        for x in b.objects:
            out.theta[(x,)] = vec_neg(r.partial[x].apply(c.omega[(x,)]))
        return out
    for t in nerve(b, p + 1):
        g1, g2 = t[0], t[1]
        acc = r.psiC[g1].apply(c.omega[face(b, 0, t)])
        sign = -1
        for i in range(1, p + 2):
            term = c.omega[face(b, i, t)]
            acc = vec_add(acc, term if sign > 0 else vec_neg(term))
            sign = -sign
        th = c.theta[face(b, 0, face(b, 0, t))]
        acc = vec_sub(acc, r.om(g1, g2).apply(th))
        out.omega[t] = acc
    for h in nerve(b, p):
        h1 = h[0]
        acc = r.partial[b.tgt[h1]].apply(c.omega[h])
        acc = vec_add(acc, r.psiE[h1].apply(c.theta[face(b, 0, h)]))
        sign = -1
        for i in range(1, p + 1):
            term = c.theta[face(b, i, h)]
            acc = vec_add(acc, term if sign > 0 else vec_neg(term))
            sign = -sign
        out.theta[h] = vec_neg(acc)
    return out


def delta_matrix(r: Ruth, p: int, route: str = "direct",
                 budget: int | None = None) -> MatQ:
    """Matrix of the differential from degree p, in the deterministic bases."""
    fn = delta if route == "direct" else delta_component
    src_basis = cochain_basis(r, p, budget)
    tgt_basis = cochain_basis(r, p + 1, budget)
    cols = []
    for key in src_basis:
        image = fn(r, basis_cochain(r, p, key))
        cols.append(cochain_coords(r, image, tgt_basis))
    if not cols:
        return MatQ.zeros(len(tgt_basis), 0)
    return MatQ.from_cols(cols)


def cohomology(r: Ruth, p_max: int, budget: int | None = None,
               route: str = "component") -> list[int]:
    """Betti numbers dim H^p for p = 0..p_max, by exact rank computation."""
    dims = [len(cochain_basis(r, p, budget)) for p in range(p_max + 1)]
    deltas = [delta_matrix(r, p, route, budget) for p in range(p_max + 1)]
    betti = []
    prev_rank = 0
    for p in range(p_max + 1):
        rk = rank(deltas[p])
        betti.append(dims[p] - rk - prev_rank)
        prev_rank = rk
    return betti


def pullback_ruth(phi: GroupoidMorphism, r: Ruth) -> Ruth:
    """The ruth on the morphism's source with fibers identified along phi."""
    t, b = phi.target, r.base
    if (t.objects, t.src, t.tgt, t.comp) != (b.objects, b.src, b.tgt, b.comp):
        raise ShapeMismatch("ruth must live on the morphism's target groupoid")
    gs = phi.source
    omega = {}
    for (g1, g2) in gs.comp:
        om = r.om(phi.arr_map[g1], phi.arr_map[g2])
        if not om.is_zero():
            omega[(g1, g2)] = om
    return Ruth(
        base=gs,
        dimC={x: r.dimC[phi.obj_map[x]] for x in gs.objects},
        dimE={x: r.dimE[phi.obj_map[x]] for x in gs.objects},
        partial={x: r.partial[phi.obj_map[x]] for x in gs.objects},
        psiC={a: r.psiC[phi.arr_map[a]] for a in gs.arrows},
        psiE={a: r.psiE[phi.arr_map[a]] for a in gs.arrows},
        omega=omega,
        name=f"{phi.name}^*({r.name})",
    )


def pullback_cochain_matrix(phi: GroupoidMorphism, r: Ruth, rp: Ruth, p: int) -> MatQ:
    """Matrix of the pullback map on degree-p cochains."""
    gs = phi.source
    src_basis = cochain_basis(r, p)
    tgt_basis = cochain_basis(rp, p)
    index = {key: i for i, key in enumerate(src_basis)}
    m = MatQ.zeros(len(tgt_basis), len(src_basis))

    def image_tuple(t: tuple, degree: int) -> tuple:
        if degree == 0:
            return (phi.obj_map[t[0]],)
        return tuple(phi.arr_map[a] for a in t)

    for row, (kind, t, j) in enumerate(tgt_basis):
        degree = p if kind == "C" else p - 1
        col = index[(kind, image_tuple(t, degree), j)]
        m[row, col] = Fraction(1)
    return m


def pullback_chain_map(phi: GroupoidMorphism, r: Ruth, p_max: int
                       ) -> tuple[Ruth, dict[int, MatQ]]:
    """Pulled-back ruth plus pullback matrices; asserts the chain-map identity."""
    rp = pullback_ruth(phi, r)
    mats = {p: pullback_cochain_matrix(phi, r, rp, p) for p in range(p_max + 2)}
    for p in range(p_max + 1):
        left = delta_matrix(rp, p, "component") @ mats[p]
        right = mats[p + 1] @ delta_matrix(r, p, "component")
        if left != right:
            raise ShapeMismatch(f"pullback is not a chain map in degree {p}")
    return rp, mats


def _kernel_matrix(m: MatQ) -> MatQ:
    basis = nullspace_basis(m)
    return MatQ.from_cols(basis) if basis else MatQ.zeros(m.cols, 0)


def _coords_in(columns: MatQ, v: QVec) -> QVec:
    return solve(columns, v)


def morita_compare(phi: GroupoidMorphism, r: Ruth, p_max: int) -> dict:
    """Cohomology on both sides of a Morita morphism plus the induced maps.

    For each degree p <= p_max the induced map on cohomology is computed
    through quotient bases of ker(delta) mod im(delta) and reported with
    an isomorphism verdict.
    """
    ok, morita_report = is_morita(phi)
    if not ok:
        raise NotMorita(f"morphism fails the Morita test: {morita_report}")
    rp = pullback_ruth(phi, r)
    mats = {p: pullback_cochain_matrix(phi, r, rp, p) for p in range(p_max + 1)}
    d_src = {p: delta_matrix(r, p, "component") for p in range(p_max + 1)}
    d_tgt = {p: delta_matrix(rp, p, "component") for p in range(p_max + 1)}

    degrees = []
    for p in range(p_max + 1):
        z_src = _kernel_matrix(d_src[p])
        z_tgt = _kernel_matrix(d_tgt[p])
        if p == 0:
            x_src = MatQ.zeros(z_src.cols, 0)
            x_tgt = MatQ.zeros(z_tgt.cols, 0)
        else:
            bnd_src = d_src[p - 1]
            bnd_tgt = d_tgt[p - 1]
            cols_s = [
                _coords_in(z_src, bnd_src.col(j)) for j in range(bnd_src.cols)
            ]
            cols_t = [
                _coords_in(z_tgt, bnd_tgt.col(j)) for j in range(bnd_tgt.cols)
            ]
            x_src = MatQ.from_cols(cols_s) if cols_s else MatQ.zeros(z_src.cols, 0)
            x_tgt = MatQ.from_cols(cols_t) if cols_t else MatQ.zeros(z_tgt.cols, 0)
        f_on_kernels = (
            MatQ.from_cols(
                [_coords_in(z_tgt, (mats[p] @ z_src).col(j)) for j in range(z_src.cols)]
            )
            if z_src.cols
            else MatQ.zeros(z_tgt.cols, 0)
        )
        induced = induced_map_on_quotients(f_on_kernels, x_src, x_tgt)
        betti_src = z_src.cols - rank(x_src)
        betti_tgt = z_tgt.cols - rank(x_tgt)
        iso = betti_src == betti_tgt and rank(induced) == betti_src
        degrees.append(
            {
                "p": p,
                "betti_source_side": betti_src,
                "betti_pulled_side": betti_tgt,
                "induced_rank": rank(induced),
                "iso": iso,
            }
        )
    return {
        "morphism": phi.name,
        "ruth": r.name,
        "morita": morita_report,
        "degrees": degrees,
        "all_iso": all(d["iso"] for d in degrees),
    }
