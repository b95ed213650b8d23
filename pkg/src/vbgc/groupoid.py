"""Finite groupoids, their nerves, constructors and Morita checks.

Conventions: an arrow g runs src(g) -> tgt(g).  comp[(g1, g2)] = g1 g2 is
defined iff src(g1) == tgt(g2) ("first apply g2, then g1"), so nerve
tuples (g_1, ..., g_p) satisfy src(g_i) == tgt(g_{i+1}).  Objects and
arrows are opaque integer ids and every structure map is an explicit
table, which keeps brute-force validation trivial.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceeded, IndexOutOfRange, InvalidInputTable, NotMorita


@dataclass
class FiniteGroupoid:
    objects: list[int]
    src: dict[int, int]              # arrow -> object
    tgt: dict[int, int]              # arrow -> object
    unit: dict[int, int]             # object -> arrow
    inv: dict[int, int]              # arrow -> arrow
    comp: dict[tuple[int, int], int]  # (g1, g2) -> g1 g2, iff src(g1)==tgt(g2)
    name: str = ""
    labels: dict[int, object] | None = None  # arrow id -> constructor label

    def arrow_by_label(self, label) -> int:
        if self.labels is None:
            raise KeyError("groupoid carries no arrow labels")
        for a, lab in self.labels.items():
            if lab == label:
                return a
        raise KeyError(f"no arrow labelled {label!r}")

    @property
    def arrows(self) -> list[int]:
        return sorted(self.src)

    def composable(self, g1: int, g2: int) -> bool:
        return self.src[g1] == self.tgt[g2]

    def mul(self, g1: int, g2: int) -> int:
        return self.comp[(g1, g2)]

    def arrows_into(self, x: int) -> list[int]:
        return [g for g in self.arrows if self.tgt[g] == x]

    def arrows_out_of(self, x: int) -> list[int]:
        return [g for g in self.arrows if self.src[g] == x]


def validate(g: FiniteGroupoid) -> list[str]:
    """Brute-force all groupoid axioms; returns the list of violations."""
    problems = []
    arrows = g.arrows
    objset = set(g.objects)
    for a in arrows:
        if g.src[a] not in objset or g.tgt[a] not in objset:
            problems.append(f"arrow {a} has src/tgt outside the object set")
    for x in g.objects:
        u = g.unit.get(x)
        if u is None:
            problems.append(f"object {x} has no unit arrow")
            continue
        if g.src[u] != x or g.tgt[u] != x:
            problems.append(f"unit arrow {u} of object {x} is not an endo-arrow at {x}")
    for (g1, g2), g12 in g.comp.items():
        if g.src[g1] != g.tgt[g2]:
            problems.append(f"comp defined on non-composable pair ({g1},{g2})")
        elif g.src[g12] != g.src[g2] or g.tgt[g12] != g.tgt[g1]:
            problems.append(f"comp({g1},{g2}) has wrong source or target")
    for g1 in arrows:
        for g2 in arrows:
            if g.src[g1] == g.tgt[g2] and (g1, g2) not in g.comp:
                problems.append(f"composable pair ({g1},{g2}) missing from comp table")
    for a in arrows:
        u_t, u_s = g.unit[g.tgt[a]], g.unit[g.src[a]]
        if g.comp.get((u_t, a)) != a:
            problems.append(f"left unit law fails at arrow {a}")
        if g.comp.get((a, u_s)) != a:
            problems.append(f"right unit law fails at arrow {a}")
    for a in arrows:
        b = g.inv.get(a)
        if b is None:
            problems.append(f"arrow {a} has no inverse")
            continue
        if g.src[b] != g.tgt[a] or g.tgt[b] != g.src[a]:
            problems.append(f"inverse of {a} has wrong source/target")
            continue
        if g.comp.get((a, b)) != g.unit[g.tgt[a]]:
            problems.append(f"a . inv(a) != unit at arrow {a}")
        if g.comp.get((b, a)) != g.unit[g.src[a]]:
            problems.append(f"inv(a) . a != unit at arrow {a}")
    for g1 in arrows:
        for g2 in arrows:
            if g.src[g1] != g.tgt[g2]:
                continue
            for g3 in arrows:
                if g.src[g2] != g.tgt[g3]:
                    continue
                if g.comp[(g.comp[(g1, g2)], g3)] != g.comp[(g1, g.comp[(g2, g3)])]:
                    problems.append(f"associativity fails on triple ({g1},{g2},{g3})")
    return problems


_nerve_cache: dict[tuple[int, int], tuple[FiniteGroupoid, list[tuple]]] = {}


def nerve(g: FiniteGroupoid, p: int, budget: int | None = None) -> list[tuple]:
    """Composable p-tuples in lexicographic arrow-id order; p=0 gives objects.

    Tuples are (g_1, ..., g_p) with src(g_i) == tgt(g_{i+1}).  Results are
    memoized per groupoid instance (groupoids are immutable once built).
    """
    if p < 0:
        raise IndexOutOfRange("nerve degree must be >= 0")
    key = (id(g), p)
    cached = _nerve_cache.get(key)
    if cached is not None and cached[0] is g:
        if budget is not None and len(cached[1]) > budget:
            raise BudgetExceeded(
                f"nerve enumeration exceeded budget of {budget} tuples"
            )
        return cached[1]
    if p == 0:
        out: list[tuple] = [(x,) for x in sorted(g.objects)]
    else:
        out = [(a,) for a in g.arrows]
        for _ in range(p - 1):
            nxt = []
            for t in out:
                last = t[-1]
                for a in g.arrows:
                    if g.src[last] == g.tgt[a]:
                        nxt.append(t + (a,))
                if budget is not None and len(nxt) > budget:
                    raise BudgetExceeded(
                        f"nerve enumeration exceeded budget of {budget} tuples"
                    )
            out = nxt
    if budget is not None and len(out) > budget:
        raise BudgetExceeded(f"nerve enumeration exceeded budget of {budget} tuples")
    _nerve_cache[key] = (g, out)
    return out


def face(g: FiniteGroupoid, i: int, t: tuple) -> tuple:
    """Simplicial face: drop-first / compose-adjacent / drop-last.

    For p = 1 the two faces land in the object set: (src,) resp. (tgt,).
    """
    p = len(t)
    if not 0 <= i <= p:
        raise IndexOutOfRange(f"face index {i} out of range for degree {p}")
    if p == 1:
        return (g.src[t[0]],) if i == 0 else (g.tgt[t[0]],)
    if i == 0:
        return t[1:]
    if i == p:
        return t[:-1]
    return t[: i - 1] + (g.comp[(t[i - 1], t[i])],) + t[i + 1 :]


@dataclass
class GroupoidMorphism:
    """Morphism source -> target: object map and arrow map."""

    source: FiniteGroupoid
    target: FiniteGroupoid
    obj_map: dict[int, int]
    arr_map: dict[int, int]
    name: str = ""

    def validate(self) -> list[str]:
        problems = []
        gs, gt = self.source, self.target
        for a in gs.arrows:
            b = self.arr_map.get(a)
            if b is None:
                problems.append(f"arrow {a} unmapped")
                continue
            if self.obj_map.get(gs.src[a]) != gt.src[b]:
                problems.append(f"source not preserved at arrow {a}")
            if self.obj_map.get(gs.tgt[a]) != gt.tgt[b]:
                problems.append(f"target not preserved at arrow {a}")
        for x in gs.objects:
            if self.arr_map.get(gs.unit[x]) != gt.unit[self.obj_map[x]]:
                problems.append(f"unit not preserved at object {x}")
        for (g1, g2), g12 in gs.comp.items():
            if self.arr_map[g12] != gt.comp[(self.arr_map[g1], self.arr_map[g2])]:
                problems.append(f"composition not preserved on ({g1},{g2})")
        return problems


# -- constructors ------------------------------------------------------


def _from_labels(objects, labels, src_of, tgt_of, mul, inv_of, unit_of, name=""):
    """Assemble and validate a groupoid whose arrows carry hashable labels."""
    ids = {lab: i for i, lab in enumerate(sorted(labels, key=repr))}
    src = {i: src_of(lab) for lab, i in ids.items()}
    tgt = {i: tgt_of(lab) for lab, i in ids.items()}
    unit = {x: ids[unit_of(x)] for x in objects}
    inv = {i: ids[inv_of(lab)] for lab, i in ids.items()}
    comp = {}
    for l1, i1 in ids.items():
        for l2, i2 in ids.items():
            if src[i1] == tgt[i2]:
                comp[(i1, i2)] = ids[mul(l1, l2)]
    g = FiniteGroupoid(
        sorted(objects), src, tgt, unit, inv, comp, name=name,
        labels={i: lab for lab, i in ids.items()},
    )
    problems = validate(g)
    if problems:
        raise InvalidInputTable("; ".join(problems[:3]))
    return g, ids


def build_pair(objects) -> FiniteGroupoid:
    """Pair groupoid on a finite set: one arrow (x, y): y -> x per pair."""
    objects = sorted(objects)
    labels = [(x, y) for x in objects for y in objects]
    g, _ = _from_labels(
        objects,
        labels,
        src_of=lambda l: l[1],
        tgt_of=lambda l: l[0],
        mul=lambda l1, l2: (l1[0], l2[1]),
        inv_of=lambda l: (l[1], l[0]),
        unit_of=lambda x: (x, x),
        name=f"pair{{{','.join(map(str, objects))}}}",
    )
    return g


def build_group(mult_table: list[list[int]], name: str = "group") -> FiniteGroupoid:
    """One-object groupoid from a group multiplication table.

    mult_table[i][j] is the index of element i * j; element 0 must be the
    identity.
    """
    n = len(mult_table)
    if any(len(r) != n for r in mult_table) or n == 0:
        raise InvalidInputTable("multiplication table must be square and non-empty")
    if any(mult_table[0][j] != j or mult_table[j][0] != j for j in range(n)):
        raise InvalidInputTable("element 0 must be the identity")
    inv_of = {}
    for i in range(n):
        for j in range(n):
            if mult_table[i][j] == 0:
                inv_of[i] = j
    if len(inv_of) != n:
        raise InvalidInputTable("some element has no inverse")
    g, _ = _from_labels(
        [0],
        list(range(n)),
        src_of=lambda l: 0,
        tgt_of=lambda l: 0,
        mul=lambda l1, l2: mult_table[l1][l2],
        inv_of=lambda l: inv_of[l],
        unit_of=lambda x: 0,
        name=name,
    )
    return g


def cyclic_table(n: int) -> list[list[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def build_cyclic(n: int) -> FiniteGroupoid:
    return build_group(cyclic_table(n), name=f"Z/{n}")


def build_action(mult_table: list[list[int]], action: dict[tuple[int, int], int],
                 points, name: str = "action") -> FiniteGroupoid:
    """Action groupoid for a group acting on a finite set.

    action[(h, x)] = h . x; arrows are (h, x): x -> h.x, and
    (h1, h2.x) (h2, x) = (h1 h2, x).
    """
    n = len(mult_table)
    points = sorted(points)
    for h in range(n):
        for x in points:
            if (h, x) not in action:
                raise InvalidInputTable(f"action table misses ({h},{x})")
    for x in points:
        if action[(0, x)] != x:
            raise InvalidInputTable("identity must act trivially")
    for h1 in range(n):
        for h2 in range(n):
            for x in points:
                if action[(h1, action[(h2, x)])] != action[(mult_table[h1][h2], x)]:
                    raise InvalidInputTable("action table is not a group action")
    inv_of = {i: next(j for j in range(n) if mult_table[i][j] == 0) for i in range(n)}
    labels = [(h, x) for h in range(n) for x in points]
    g, _ = _from_labels(
        points,
        labels,
        src_of=lambda l: l[1],
        tgt_of=lambda l: action[(l[0], l[1])],
        mul=lambda l1, l2: (mult_table[l1[0]][l2[0]], l2[1]),
        inv_of=lambda l: (inv_of[l[0]], action[(l[0], l[1])]),
        unit_of=lambda x: (0, x),
        name=name,
    )
    return g


def build_disjoint_union(g1: FiniteGroupoid, g2: FiniteGroupoid) -> FiniteGroupoid:
    """Disjoint union, with ids of the second summand shifted."""
    oshift = max(g1.objects) + 1 if g1.objects else 0
    ashift = max(g1.arrows) + 1 if g1.arrows else 0
    objects = list(g1.objects) + [x + oshift for x in g2.objects]
    src = dict(g1.src)
    tgt = dict(g1.tgt)
    src.update({a + ashift: g2.src[a] + oshift for a in g2.arrows})
    tgt.update({a + ashift: g2.tgt[a] + oshift for a in g2.arrows})
    unit = dict(g1.unit)
    unit.update({x + oshift: g2.unit[x] + ashift for x in g2.objects})
    inv = dict(g1.inv)
    inv.update({a + ashift: g2.inv[a] + ashift for a in g2.arrows})
    comp = dict(g1.comp)
    comp.update(
        {(a + ashift, b + ashift): c + ashift for (a, b), c in g2.comp.items()}
    )
    return FiniteGroupoid(objects, src, tgt, unit, inv, comp,
                          name=f"{g1.name}+{g2.name}")


def build_pullback(g: FiniteGroupoid, pi: dict[int, int], new_objects=None
                   ) -> tuple[FiniteGroupoid, GroupoidMorphism]:
    """Pullback groupoid along a surjection pi: M' -> M, plus the projection.

    Arrows are triples (y', a, x') with pi(y') = tgt(a), pi(x') = src(a);
    the projection morphism is fully faithful by construction and
    essentially surjective because pi is onto.
    """
    new_objects = sorted(pi) if new_objects is None else sorted(new_objects)
    if set(pi) != set(new_objects):
        raise InvalidInputTable("pi must be defined exactly on the new objects")
    if set(pi.values()) != set(g.objects):
        raise InvalidInputTable("pi must be a surjection onto the base objects")
    labels = [
        (yp, a, xp)
        for yp in new_objects
        for a in g.arrows
        for xp in new_objects
        if pi[yp] == g.tgt[a] and pi[xp] == g.src[a]
    ]
    gp, ids = _from_labels(
        new_objects,
        labels,
        src_of=lambda l: l[2],
        tgt_of=lambda l: l[0],
        mul=lambda l1, l2: (l1[0], g.comp[(l1[1], l2[1])], l2[2]),
        inv_of=lambda l: (l[2], g.inv[l[1]], l[0]),
        unit_of=lambda x: (x, g.unit[pi[x]], x),
        name=f"pullback({g.name})",
    )
    arr_map = {i: lab[1] for lab, i in ids.items()}
    phi = GroupoidMorphism(gp, g, dict(pi), arr_map, name="pullback projection")
    return gp, phi


def is_morita(phi: GroupoidMorphism) -> tuple[bool, dict]:
    """Fully-faithfulness and essential surjectivity, brute-forced.

    (a) g' -> {(a, y', x') : a in target arrows, pi(x')=src(a), pi(y')=tgt(a)}
        via g' |-> (phi(g'), tgt(g'), src(g')) is a bijection;
    (b) (a, x') with src(a) = pi(x') covers every target object via tgt(a).
    """
    errs = phi.validate()
    if errs:
        raise NotMorita("; ".join(errs[:3]))
    gs, gt = phi.source, phi.target
    pi = phi.obj_map
    fibered = {
        (a, yp, xp)
        for a in gt.arrows
        for yp in gs.objects
        for xp in gs.objects
        if pi[xp] == gt.src[a] and pi[yp] == gt.tgt[a]
    }
    image = {}
    injective = True
    for gp in gs.arrows:
        key = (phi.arr_map[gp], gs.tgt[gp], gs.src[gp])
        if key in image:
            injective = False
        image[key] = gp
    fully_faithful = injective and set(image) == fibered
    covered = {
        gt.tgt[a]
        for a in gt.arrows
        for xp in gs.objects
        if gt.src[a] == pi[xp]
    }
    essentially_surjective = covered == set(gt.objects)
    report = {
        "fully_faithful": fully_faithful,
        "essentially_surjective": essentially_surjective,
        "fibered_product_size": len(fibered),
        "source_arrows": len(gs.arrows),
    }
    return fully_faithful and essentially_surjective, report


def identity_morphism(g: FiniteGroupoid) -> GroupoidMorphism:
    return GroupoidMorphism(
        g, g, {x: x for x in g.objects}, {a: a for a in g.arrows}, name="id"
    )


def to_point_morphism(g: FiniteGroupoid, point: FiniteGroupoid) -> GroupoidMorphism:
    """The collapse morphism onto a one-object, one-arrow groupoid."""
    if len(point.objects) != 1 or len(point.arrows) != 1:
        raise InvalidInputTable("target must be the trivial one-arrow groupoid")
    o = point.objects[0]
    u = point.arrows[0]
    return GroupoidMorphism(
        g, point, {x: o for x in g.objects}, {a: u for a in g.arrows}, name="collapse"
    )
