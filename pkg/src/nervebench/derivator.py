"""Represented derivators over finite targets.

Everything here is evaluated on functor categories Fun(shape, C) for a
finite target C: brute-force (co)limits, pointwise Kan extensions along
arbitrary functors, the pi-Cartesian subcategories of nerve packages,
the Cartesian projectors, and the enlargement with its equivalence
checks.  The base system of the fibered theory is fixed to the terminal
one, so (co)Cartesian-over-the-base simply means isomorphism.
"""

from dataclasses import dataclass, field

from .errors import (
    EnumerationBudget,
    MissingColimit,
    NotOpfibration,
    SearchSpaceTooLarge,
    ShapeMismatch,
)
from .fincat import (
    FinCat,
    Functor,
    NatTrans,
    all_functors,
    all_nat_trans,
    check_adjunction,
    classify_category,
    cocartesian_lift,
    comma_category,
    full_subcategory,
    identity_functor,
    inverse_morphism,
    is_iso_morphism,
    isomorphic_objects,
    natural_isos,
    object_pick,
    opfibration_check,
    product,
)
from .nerve import N_on_functor, build_N, is_dir
from .reports import FAIL, PASS, VerificationReport, timed
from .shapes import terminal_category

DEFAULT_BUDGET = 10**6

# A diagram is just a functor from a shape into the target's category.
DiagramFunctor = Functor


# -- targets ---------------------------------------------------------------


@dataclass
class TargetCategory:
    """A finite target with (co)limit certificates.

    A finite lattice certifies every finite shape: the limit is the meet
    of the diagram's object values and the colimit the join.  Other
    targets fall back to cone enumeration, and every certificate can be
    re-verified against that oracle.
    """

    cat: FinCat
    is_lattice: bool = False
    leq_mor: dict = field(default_factory=dict)  # (a, b) -> morphism name
    meet: dict = field(default_factory=dict)
    join: dict = field(default_factory=dict)
    top: str = ""
    bottom: str = ""

    @staticmethod
    def from_cat(cat):
        t = TargetCategory(cat)
        flags = classify_category(cat)
        if not flags.is_poset:
            return t
        leq = {}
        for (a, b), ms in cat._hom.items():
            leq[(a, b)] = ms[0]
        below = {o: {p for p in cat.objects if (p, o) in leq} for o in cat.objects}
        above = {o: {p for p in cat.objects if (o, p) in leq} for o in cat.objects}

        def greatest(s):
            for o in s:
                if all((p, o) in leq for p in s):
                    return o
            return None

        def least(s):
            for o in s:
                if all((o, p) in leq for p in s):
                    return o
            return None

        meets, joins = {}, {}
        ok = bool(cat.objects)
        for a in cat.objects:
            for b in cat.objects:
                m = greatest(below[a] & below[b])
                j = least(above[a] & above[b])
                if m is None or j is None:
                    ok = False
                    break
                meets[(a, b)] = m
                joins[(a, b)] = j
            if not ok:
                break
        top = greatest(set(cat.objects))
        bottom = least(set(cat.objects))
        if ok and top is not None and bottom is not None:
            t.is_lattice = True
            t.leq_mor = leq
            t.meet = meets
            t.join = joins
            t.top = top
            t.bottom = bottom
        return t

    def join_all(self, values):
        acc = self.bottom
        for v in values:
            acc = self.join[(acc, v)]
        return acc

    def meet_all(self, values):
        acc = self.top
        for v in values:
            acc = self.meet[(acc, v)]
        return acc

    # -- cone enumeration oracle ------------------------------------

    def _cones(self, diagram, limit_side):
        shape, cat = diagram.dom, self.cat
        cones = []
        objs = list(shape.objects)
        for apex in cat.objects:
            legs_list = [{}]
            for x in objs:
                homs = (
                    cat.hom(apex, diagram.ob(x)) if limit_side else cat.hom(diagram.ob(x), apex)
                )
                legs_list = [dict(l, **{x: h}) for l in legs_list for h in homs]
            for legs in legs_list:
                good = True
                for m in shape.morphisms:
                    if limit_side:
                        if cat.compose(diagram.mor(m.name), legs[m.src]) != legs[m.tgt]:
                            good = False
                            break
                    else:
                        if cat.compose(legs[m.tgt], diagram.mor(m.name)) != legs[m.src]:
                            good = False
                            break
                if good:
                    cones.append((apex, legs))
        return cones

    def limit_enumerated(self, diagram):
        """Terminal cone by exhaustive search, or None."""
        cones = self._cones(diagram, limit_side=True)
        for apex, legs in cones:
            terminal = True
            for apex2, legs2 in cones:
                sols = [
                    h
                    for h in self.cat.hom(apex2, apex)
                    if all(
                        self.cat.compose(legs[x], h) == legs2[x] for x in legs
                    )
                ]
                if len(sols) != 1:
                    terminal = False
                    break
            if terminal:
                return apex, legs
        return None

    def colimit_enumerated(self, diagram):
        """Initial cocone by exhaustive search, or None."""
        cones = self._cones(diagram, limit_side=False)
        for apex, legs in cones:
            initial = True
            for apex2, legs2 in cones:
                sols = [
                    h
                    for h in self.cat.hom(apex, apex2)
                    if all(
                        self.cat.compose(h, legs[x]) == legs2[x] for x in legs
                    )
                ]
                if len(sols) != 1:
                    initial = False
                    break
            if initial:
                return apex, legs
        return None

    def limit(self, diagram):
        if self.is_lattice:
            apex = self.meet_all(diagram.ob(x) for x in diagram.dom.objects)
            legs = {x: self.leq_mor[(apex, diagram.ob(x))] for x in diagram.dom.objects}
            return apex, legs
        return self.limit_enumerated(diagram)

    def colimit(self, diagram):
        if self.is_lattice:
            apex = self.join_all(diagram.ob(x) for x in diagram.dom.objects)
            legs = {x: self.leq_mor[(diagram.ob(x), apex)] for x in diagram.dom.objects}
            return apex, legs
        return self.colimit_enumerated(diagram)

    def factor_cocone(self, apex, legs, apex2, legs2):
        """The unique h: apex -> apex2 with h∘legs = legs2."""
        sols = [
            h
            for h in self.cat.hom(apex, apex2)
            if all(self.cat.compose(h, legs[x]) == legs2[x] for x in legs)
        ]
        if len(sols) != 1:
            raise MissingColimit("cocone factorisation", apex, f"({len(sols)} solutions)")
        return sols[0]

    def factor_cone(self, apex, legs, apex2, legs2):
        """The unique h: apex2 -> apex with legs∘h = legs2."""
        sols = [
            h
            for h in self.cat.hom(apex2, apex)
            if all(self.cat.compose(legs[x], h) == legs2[x] for x in legs)
        ]
        if len(sols) != 1:
            raise MissingColimit("cone factorisation", apex, f"({len(sols)} solutions)")
        return sols[0]


def lattice_target(n=1):
    """The chain lattice 0 < ... < n as a target (n=1 gives the lattice 2)."""
    from .shapes import chain

    return TargetCategory.from_cat(chain(n))


def limit(diagram, target):
    """(object, cone) of the terminal cone, or None.  Oracle: cone enumeration."""
    return target.limit_enumerated(diagram)


def colimit(diagram, target):
    return target.colimit_enumerated(diagram)


# -- pointwise Kan extensions ----------------------------------------------


class KanOps:
    """Pointwise Kan extensions along alpha with units and counits."""

    def __init__(self, alpha, target):
        self.alpha = alpha
        self.target = target
        self.pt = terminal_category()
        self._left_commas = {}
        self._right_commas = {}

    def _left_comma(self, j):
        if j not in self._left_commas:
            cc = comma_category(self.alpha, object_pick(self.alpha.cod, j, self.pt))
            index = {}
            for name, (x, _, m) in cc.obj_data.items():
                index[(x, m)] = name
            self._left_commas[j] = (cc, index)
        return self._left_commas[j]

    def _right_comma(self, j):
        if j not in self._right_commas:
            cc = comma_category(object_pick(self.alpha.cod, j, self.pt), self.alpha)
            index = {}
            for name, (_, x, m) in cc.obj_data.items():
                index[(x, m)] = name
            self._right_commas[j] = (cc, index)
        return self._right_commas[j]

    # -- left Kan -----------------------------------------------------

    def left_kan(self, diagram):
        """(functor, data) for the left Kan extension of ``diagram`` along alpha."""
        I, J, C = self.alpha.dom, self.alpha.cod, self.target.cat
        values, legs_by_j = {}, {}
        for j in J.objects:
            cc, index = self._left_comma(j)
            restricted = cc.pr1.then(diagram)
            got = self.target.colimit(restricted)
            if got is None:
                raise MissingColimit("colimit", cc.total.name)
            values[j], legs_by_j[j] = got
        mor_map = {}
        for m in J.morphisms:
            cc, index = self._left_comma(m.src)
            cc2, index2 = self._left_comma(m.tgt)
            legs2 = {}
            for name, (x, _, mm) in cc.obj_data.items():
                legs2[name] = legs_by_j[m.tgt][index2[(x, J.compose(m.name, mm))]]
            mor_map[m.name] = self.target.factor_cocone(
                values[m.src], legs_by_j[m.src], values[m.tgt], legs2
            )
        out = Functor(f"lan[{self.alpha.name}]({diagram.name})", J, C, values, mor_map).validate()
        return out, legs_by_j

    def left_unit(self, diagram, lan=None):
        """diagram => alpha* (lan diagram)."""
        lan = lan or self.left_kan(diagram)
        functor, legs_by_j = lan
        comps = {}
        for x in self.alpha.dom.objects:
            j = self.alpha.ob(x)
            cc, index = self._left_comma(j)
            comps[x] = legs_by_j[j][index[(x, self.alpha.cod.id_of(j))]]
        return NatTrans(
            f"eta[{diagram.name}]", diagram, self.alpha.then(functor), comps
        ).validate()

    def left_counit(self, g, lan_of_restriction=None):
        """lan(alpha* g) => g."""
        restricted = self.alpha.then(g)
        lan = lan_of_restriction or self.left_kan(restricted)
        functor, legs_by_j = lan
        J = self.alpha.cod
        comps = {}
        for j in J.objects:
            cc, index = self._left_comma(j)
            legs2 = {name: g.mor(mm) for name, (x, _, mm) in cc.obj_data.items()}
            comps[j] = self.target.factor_cocone(functor.ob(j), legs_by_j[j], g.ob(j), legs2)
        return NatTrans(f"eps[{g.name}]", functor, g, comps).validate()

    def left_kan_nt(self, nt, lan_src, lan_tgt):
        """lan applied to a transformation between diagrams on the domain."""
        f_src, legs_src = lan_src
        f_tgt, legs_tgt = lan_tgt
        J = self.alpha.cod
        comps = {}
        for j in J.objects:
            cc, index = self._left_comma(j)
            legs2 = {}
            for name, (x, _, mm) in cc.obj_data.items():
                legs2[name] = self.target.cat.compose(legs_tgt[j][name], nt.at(x))
            comps[j] = self.target.factor_cocone(f_src.ob(j), legs_src[j], f_tgt.ob(j), legs2)
        return NatTrans(f"lan[{nt.name}]", f_src, f_tgt, comps).validate()

    # -- right Kan ----------------------------------------------------

    def right_kan(self, diagram):
        I, J, C = self.alpha.dom, self.alpha.cod, self.target.cat
        values, legs_by_j = {}, {}
        for j in J.objects:
            cc, index = self._right_comma(j)
            restricted = cc.pr2.then(diagram)
            got = self.target.limit(restricted)
            if got is None:
                raise MissingColimit("limit", cc.total.name)
            values[j], legs_by_j[j] = got
        mor_map = {}
        for m in J.morphisms:
            # comparison values[src] -> values[tgt]
            cc2, index2 = self._right_comma(m.tgt)
            legs2 = {}
            cc, index = self._right_comma(m.src)
            for name, (_, x, mm) in cc2.obj_data.items():
                legs2[name] = legs_by_j[m.src][index[(x, J.compose(mm, m.name))]]
            mor_map[m.name] = self.target.factor_cone(
                values[m.tgt], legs_by_j[m.tgt], values[m.src], legs2
            )
        out = Functor(f"ran[{self.alpha.name}]({diagram.name})", J, C, values, mor_map).validate()
        return out, legs_by_j

    def right_unit(self, g, ran_of_restriction=None):
        """g => ran(alpha* g)."""
        restricted = self.alpha.then(g)
        ran = ran_of_restriction or self.right_kan(restricted)
        functor, legs_by_j = ran
        J = self.alpha.cod
        comps = {}
        for j in J.objects:
            cc, index = self._right_comma(j)
            legs2 = {name: g.mor(mm) for name, (_, x, mm) in cc.obj_data.items()}
            comps[j] = self.target.factor_cone(functor.ob(j), legs_by_j[j], g.ob(j), legs2)
        return NatTrans(f"eta*[{g.name}]", g, functor, comps).validate()

    def right_counit(self, diagram, ran=None):
        """alpha* (ran diagram) => diagram."""
        ran = ran or self.right_kan(diagram)
        functor, legs_by_j = ran
        comps = {}
        for x in self.alpha.dom.objects:
            j = self.alpha.ob(x)
            cc, index = self._right_comma(j)
            comps[x] = legs_by_j[j][index[(x, self.alpha.cod.id_of(j))]]
        return NatTrans(
            f"eps*[{diagram.name}]", self.alpha.then(functor), diagram, comps
        ).validate()

    def right_kan_nt(self, nt, ran_src, ran_tgt):
        f_src, legs_src = ran_src
        f_tgt, legs_tgt = ran_tgt
        J = self.alpha.cod
        comps = {}
        for j in J.objects:
            cc, index = self._right_comma(j)
            legs2 = {}
            for name, (_, x, mm) in cc.obj_data.items():
                legs2[name] = self.target.cat.compose(nt.at(x), legs_src[j][name])
            comps[j] = self.target.factor_cone(f_tgt.ob(j), legs_tgt[j], f_src.ob(j), legs2)
        return NatTrans(f"ran[{nt.name}]", f_src, f_tgt, comps).validate()


def left_kan(alpha, diagram, target):
    """Pointwise left Kan extension; value at j is the colimit over the comma at j."""
    return KanOps(alpha, target).left_kan(diagram)[0]


def right_kan(alpha, diagram, target):
    return KanOps(alpha, target).right_kan(diagram)[0]


# -- cartesian markings and projectors --------------------------------------


@dataclass
class CartesianMarking:
    pi: Functor
    vertical: tuple

    @staticmethod
    def from_projection(pi):
        vertical = tuple(
            m.name for m in pi.dom.morphisms if pi.cod.is_identity(pi.mor(m.name))
        )
        return CartesianMarking(pi, vertical)

    @staticmethod
    def from_package(pkg):
        return CartesianMarking.from_projection(pkg.pi)

    def violations(self):
        total = self.pi.dom
        out = []
        vert = set(self.vertical)
        for o in total.objects:
            if total.id_of(o) not in vert:
                out.append(f"identity of {o} not marked vertical")
        for (g, f), h in total.composition.items():
            if g in vert and f in vert and h not in vert:
                out.append(f"vertical set not closed under {g}∘{f}")
        return out


def is_pi_cartesian(diagram, marking):
    """True iff the diagram sends every vertical morphism to an isomorphism."""
    C = diagram.cod
    return all(is_iso_morphism(C, diagram.mor(v)) for v in marking.vertical)


def cart_functors(marking, target, budget=DEFAULT_BUDGET):
    """All pi-Cartesian diagrams on the marked total, in enumeration order.

    For poset targets a cart diagram is constant on each vertical
    component, so enumeration runs over components instead of objects;
    other targets fall back to filtering the full functor space.
    """
    total = marking.pi.dom
    C = target.cat
    if not classify_category(C).is_poset:
        try:
            candidates = all_functors(total, C, budget=budget)
        except SearchSpaceTooLarge as err:
            raise EnumerationBudget(err.budget, f"cart diagrams on {total.name}") from err
        return [f for f in candidates if is_pi_cartesian(f, marking)]
    comp = {o: o for o in total.objects}

    def find(o):
        while comp[o] != o:
            comp[o] = comp[comp[o]]
            o = comp[o]
        return o

    for v in marking.vertical:
        a, b = find(total.src(v)), find(total.tgt(v))
        if a != b:
            comp[max(a, b)] = min(a, b)
    reps = sorted({find(o) for o in total.objects})
    edges = sorted(
        {(find(m.src), find(m.tgt)) for m in total.morphisms if find(m.src) != find(m.tgt)}
    )
    results = []
    assign = {}
    count = 0

    def extend(idx):
        nonlocal count
        if idx == len(reps):
            obj_map = {o: assign[find(o)] for o in total.objects}
            mor_map = {}
            for m in total.morphisms:
                homs = C.hom(obj_map[m.src], obj_map[m.tgt])
                mor_map[m.name] = homs[0]
            f = Functor(f"F{len(results)}", total, C, obj_map, mor_map)
            results.append(f)
            return
        r = reps[idx]
        for val in C.objects:
            count += 1
            if count > budget:
                raise EnumerationBudget(budget, f"cart diagrams on {total.name}")
            assign[r] = val
            if all(
                C.hom(assign[a], assign[b])
                for a, b in edges
                if a in assign and b in assign
            ):
                extend(idx + 1)
            del assign[r]

    extend(0)
    return results


@dataclass
class Projector:
    """A Cartesian projector realised through the projection's Kan extension."""

    kind: str  # "left" (pi* pi_!) or "right" (pi* pi_*)
    marking: CartesianMarking
    target: TargetCategory
    kan: KanOps

    def apply(self, diagram):
        if self.kind == "left":
            lan, _ = self.kan.left_kan(diagram)
            return self.marking.pi.then(lan)
        ran, _ = self.kan.right_kan(diagram)
        return self.marking.pi.then(ran)

    def unit(self, diagram):
        """left: diagram => projector(diagram)  (Kan adjunction unit)."""
        if self.kind != "left":
            raise ShapeMismatch("unit is the left projector's datum")
        return self.kan.left_unit(diagram)

    def counit(self, diagram):
        """right: projector(diagram) => diagram."""
        if self.kind != "right":
            raise ShapeMismatch("counit is the right projector's datum")
        return self.kan.right_counit(diagram)

    def apply_nt(self, nt):
        if self.kind == "left":
            lan_src = self.kan.left_kan(nt.dom)
            lan_tgt = self.kan.left_kan(nt.cod)
            inner = self.kan.left_kan_nt(nt, lan_src, lan_tgt)
        else:
            ran_src = self.kan.right_kan(nt.dom)
            ran_tgt = self.kan.right_kan(nt.cod)
            inner = self.kan.right_kan_nt(nt, ran_src, ran_tgt)
        pi = self.marking.pi
        return NatTrans(
            f"proj[{nt.name}]",
            pi.then(inner.dom),
            pi.then(inner.cod),
            {x: inner.at(pi.ob(x)) for x in pi.dom.objects},
        )


def cartesian_projector_left(marking, target):
    return Projector("left", marking, target, KanOps(marking.pi, target))


def cartesian_projector_right(marking, target):
    return Projector("right", marking, target, KanOps(marking.pi, target))


# -- functor category presentations ------------------------------------------


@dataclass
class FunCatPresentation:
    shape: FinCat
    target: TargetCategory
    fincat: FinCat
    functors: list
    functor_name: dict  # table key -> object name
    nts: dict  # morphism name -> NatTrans
    nt_name: dict  # (src name, tgt name, component tuple) -> morphism name

    def name_of(self, functor):
        return self.functor_name[_functor_key(functor)]

    def nt_of(self, name):
        return self.nts[name]

    def name_of_nt(self, nt):
        src = self.name_of(nt.dom)
        tgt = self.name_of(nt.cod)
        key = tuple(sorted(nt.components.items()))
        return self.nt_name[(src, tgt, key)]


def _functor_key(f):
    return (tuple(sorted(f.obj_map.items())), tuple(sorted(f.mor_map.items())))


def functor_category(shape, target, functors=None, budget=DEFAULT_BUDGET, name=None):
    """Materialise Fun(shape, target) (or a full subcategory) as a FinCat."""
    functors = list(functors) if functors is not None else all_functors(shape, target.cat, budget)
    fid = {}
    for i, f in enumerate(functors):
        fid[_functor_key(f)] = f"F{i}"
    objects = [fid[_functor_key(f)] for f in functors]
    morphisms = []
    nts = {}
    nt_name = {}
    identities = {}
    count = 0
    for f in functors:
        for g in functors:
            for t in all_nat_trans(f, g, budget):
                src, tgt = fid[_functor_key(f)], fid[_functor_key(g)]
                mname = f"t{count}:{src}>{tgt}"
                count += 1
                if count > budget:
                    raise EnumerationBudget(budget, "functor category morphisms")
                morphisms.append((mname, src, tgt))
                nts[mname] = t
                nt_name[(src, tgt, tuple(sorted(t.components.items())))] = mname
                if src == tgt and all(
                    target.cat.is_identity(c) for c in t.components.values()
                ):
                    identities[src] = mname
    composition = {}
    by_src = {}
    for (mname, src, tgt) in morphisms:
        by_src.setdefault(src, []).append((mname, src, tgt))
    C = target.cat
    for (fn, fs, ft) in morphisms:
        for (gn, gs, gt) in by_src.get(ft, ()):
            a, b = nts[fn], nts[gn]
            comps = {x: C.compose(b.at(x), a.at(x)) for x in shape.objects}
            composition[(gn, fn)] = nt_name[(fs, gt, tuple(sorted(comps.items())))]
    fincat = FinCat(name or f"Fun({shape.name},{target.cat.name})", objects, morphisms, identities, composition)
    return FunCatPresentation(shape, target, fincat, functors, fid, nts, nt_name)


# -- monads and idempotent reflections ---------------------------------------


@dataclass
class MonadData:
    base: FinCat
    t: Functor
    u: NatTrans  # id => t
    mu: NatTrans  # t∘t => t
    sub: tuple  # objects of the reflective candidate


@dataclass
class MonadVerdict:
    ok: bool
    failed_hypothesis: int = 0  # 1: values, 2: unit iso; 0 when ok
    witness: str = ""
    left_adjoint: Functor = None
    inclusion: Functor = None
    unit: NatTrans = None
    counit: NatTrans = None


def monad_laws_violations(m):
    """Unit and associativity laws of a monad, componentwise."""
    out = []
    C = m.base
    t = m.t
    for x in C.objects:
        # mu ∘ (t u) = id_t = mu ∘ (u t)
        left = C.compose(m.mu.at(x), t.mor(m.u.at(x)))
        right = C.compose(m.mu.at(x), m.u.at(t.ob(x)))
        if left != C.id_of(t.ob(x)):
            out.append(f"mu∘(Tu) != id at {x}")
        if right != C.id_of(t.ob(x)):
            out.append(f"mu∘(uT) != id at {x}")
        assoc_l = C.compose(m.mu.at(x), t.mor(m.mu.at(x)))
        assoc_r = C.compose(m.mu.at(x), m.mu.at(t.ob(x)))
        if assoc_l != assoc_r:
            out.append(f"mu associativity fails at {x}")
    return out


def idempotent_monad_adjoint(m):
    """Reflection onto a full subcategory from an idempotent monad.

    Checks that (1) the endofunctor lands in the subcategory and
    (2) the unit is an isomorphism there; on success returns the
    adjunction to the inclusion with verified triangle identities and
    the componentwise identity uT = Tu.
    """
    bad = monad_laws_violations(m)
    if bad:
        raise ShapeMismatch("monad laws fail: " + "; ".join(bad))
    C = m.base
    sub = set(m.sub)
    for x in C.objects:
        if m.t.ob(x) not in sub:
            return MonadVerdict(False, 1, witness=x)
    for d in m.sub:
        if not is_iso_morphism(C, m.u.at(d)):
            return MonadVerdict(False, 2, witness=d)
    subcat = full_subcategory(C, m.sub, name=f"{C.name}|sub")
    t_into = Functor(f"{m.t.name}|sub", C, subcat, dict(m.t.obj_map), dict(m.t.mor_map)).validate()
    incl = Functor(
        f"incl[{subcat.name}]",
        subcat,
        C,
        {o: o for o in subcat.objects},
        {mm.name: mm.name for mm in subcat.morphisms},
    )
    counit = NatTrans(
        "counit", incl.then(t_into), identity_functor(subcat), {d: inverse_morphism(C, m.u.at(d)) for d in m.sub}
    ).validate()
    unit = NatTrans("unit", identity_functor(C), t_into.then(incl), dict(m.u.components)).validate()
    if not check_adjunction(t_into, incl, unit, counit):
        return MonadVerdict(False, 2, witness="triangle identities fail")
    for x in C.objects:
        if m.u.at(m.t.ob(x)) != m.t.mor(m.u.at(x)):
            return MonadVerdict(False, 2, witness=f"uT != Tu at {x}")
    return MonadVerdict(True, 0, "", t_into, incl, unit, counit)


def monad_from_adjunction(left, right, unit, counit):
    """The monad right∘left on the domain of ``left`` (left ⊣ right)."""
    t = left.then(right)
    mu = NatTrans(
        "mu",
        t.then(t),
        t,
        {x: right.mor(counit.at(left.ob(x))) for x in left.dom.objects},
    )
    return t, unit, mu


def projector_monad(pres, marking, target, kind="left"):
    """The projector as a monad (left) or comonad (right) on a presentation.

    Lets the brute-force reflection machinery (idempotent_monad_adjoint,
    find_adjoint) cross-check the Kan-theoretic projector.  Returns
    (endofunctor, unit-or-counit, multiplication-or-None, projector).
    """
    proj = (cartesian_projector_left if kind == "left" else cartesian_projector_right)(
        marking, target
    )
    pi = marking.pi
    kan = proj.kan
    obj_map, mor_map = {}, {}
    for f in pres.functors:
        obj_map[pres.name_of(f)] = pres.name_of(proj.apply(f))
    for mname, nt in pres.nts.items():
        image = proj.apply_nt(nt)
        src = obj_map[pres.fincat.src(mname)]
        tgt = obj_map[pres.fincat.tgt(mname)]
        mor_map[mname] = pres.nt_name[(src, tgt, tuple(sorted(image.components.items())))]
    t = Functor(f"box_{kind}", pres.fincat, pres.fincat, obj_map, mor_map).validate()

    if kind == "left":
        unit_comps = {}
        mu_comps = {}
        for f in pres.functors:
            fname = pres.name_of(f)
            nt = proj.unit(f)
            unit_comps[fname] = pres.nt_name[
                (fname, obj_map[fname], tuple(sorted(nt.components.items())))
            ]
            # mu_F = pi^*(counit of pi_! ⊣ pi^* at the extension pi_! F)
            lan_f, _ = kan.left_kan(f)
            eps = kan.left_counit(lan_f)
            comps = {x: eps.at(pi.ob(x)) for x in pi.dom.objects}
            mu_comps[fname] = pres.nt_name[
                (obj_map[obj_map[fname]], obj_map[fname], tuple(sorted(comps.items())))
            ]
        u = NatTrans("unit", identity_functor(pres.fincat), t, unit_comps).validate()
        mu = NatTrans("mu", t.then(t), t, mu_comps).validate()
        return t, u, mu, proj

    counit_comps = {}
    for f in pres.functors:
        fname = pres.name_of(f)
        nt = proj.counit(f)
        counit_comps[fname] = pres.nt_name[
            (obj_map[fname], fname, tuple(sorted(nt.components.items())))
        ]
    c = NatTrans("counit", t, identity_functor(pres.fincat), counit_comps).validate()
    return t, c, None, proj


# -- the enlargement ---------------------------------------------------------


@dataclass
class EnlargementPresentation:
    package: object  # NervePackage
    marking: CartesianMarking
    target: TargetCategory
    presentation: FunCatPresentation  # the cart subcategory as a FinCat

    @property
    def object_count(self):
        return len(self.presentation.fincat.objects)

    @property
    def morphism_count(self):
        return len(self.presentation.fincat.morphisms)

    @property
    def functors(self):
        return self.presentation.functors


def enlargement_E(shape, target, mode, truncation=None, budget=DEFAULT_BUDGET, pkg=None):
    """The category of pi-Cartesian diagrams on the nerve of the shape.

    Objects are all cart diagrams, morphisms all transformations
    between them, returned as an explicit FinCat presentation.
    """
    pkg = pkg or build_N(shape, mode, truncation)
    marking = CartesianMarking.from_package(pkg)
    carts = cart_functors(marking, target, budget)
    pres = functor_category(
        pkg.total, target, functors=carts, budget=budget, name=f"E({shape.name})@{mode}"
    )
    return EnlargementPresentation(pkg, marking, target, pres)


def restriction_equivalence_check(shape, target, mode, truncation=None, budget=DEFAULT_BUDGET):
    """pi^* : Fun(shape, C) -> E(shape) is an equivalence for shapes in Dia'.

    Fully faithful by exhaustive hom comparison; essentially surjective
    with the inverse exhibited through the projection's Kan extension
    (left Kan in Dir modes, right Kan in Inv modes).
    """
    with timed() as tm:
        enlargement = enlargement_E(shape, target, mode, truncation, budget)
        pkg = enlargement.package
        pi = pkg.pi
        kan = KanOps(pi, target)
        base_functors = all_functors(shape, target.cat, budget)
        witnesses = {
            "E_objects": enlargement.object_count,
            "base_objects": len(base_functors),
        }
        verdict = PASS
        notes = []

        pulled = []
        for g in base_functors:
            pg = pi.then(g)
            if not is_pi_cartesian(pg, enlargement.marking):
                verdict = FAIL
                notes.append(f"pi^*{g.name} not cartesian")
            pulled.append((g, pg))

        # fully faithful: hom(G, G') vs hom(pi^*G, pi^*G') via whiskering
        for g, pg in pulled:
            for g2, pg2 in pulled:
                down = all_nat_trans(g, g2, budget)
                up = all_nat_trans(pg, pg2, budget)
                image = {tuple(sorted({x: nt.at(pi.ob(x)) for x in pi.dom.objects}.items())) for nt in down}
                if len(image) != len(down) or len(down) != len(up):
                    verdict = FAIL
                    notes.append(
                        f"hom({g.name},{g2.name}): {len(down)} below vs {len(up)} above"
                    )
        # essential surjectivity with the stated inverse
        for f in enlargement.functors:
            if is_dir(mode):
                lan, _ = kan.left_kan(f)
                unit = kan.left_unit(f)
                back = pi.then(lan)
                iso = all(is_iso_morphism(target.cat, unit.at(x)) for x in pi.dom.objects)
            else:
                ran, _ = kan.right_kan(f)
                counit = kan.right_counit(f)
                back = pi.then(ran)
                iso = all(is_iso_morphism(target.cat, counit.at(x)) for x in pi.dom.objects)
            if not iso:
                verdict = FAIL
                notes.append(f"(co)unit not iso on {f.name}")
            if not natural_isos(back, f, budget):
                verdict = FAIL
                notes.append(f"{f.name} not in the essential image")
        if verdict == PASS and len(base_functors) != enlargement.object_count:
            # a genuine equivalence still allows different object counts,
            # but for poset targets cart objects biject with base diagrams
            notes.append("object counts differ")
    report = VerificationReport(
        check="restriction_equivalence",
        instance=f"{shape.name},{mode},{target.cat.name}",
        verdict=verdict,
        truncation=str(truncation if truncation is not None else pkg.truncation),
        witnesses=witnesses,
        notes="; ".join(notes),
        seconds=tm.seconds,
    )
    return report


def _unit_of_composite_left(kan_n, proj, f):
    """Unit F => N(alpha)^* (box_! N(alpha)_! F) of the composite adjunction."""
    nalpha = kan_n.alpha
    lan_f, _ = kan_n.left_kan(f)
    eta1 = kan_n.left_unit(f)  # F => N(alpha)^* N(alpha)_! F
    eta2 = proj.unit(lan_f)  # N(alpha)_!F => box N(alpha)_! F  (on the big total)
    comps = {
        x: f.cod.compose(eta2.at(nalpha.ob(x)), eta1.at(x)) for x in nalpha.dom.objects
    }
    boxed = proj.apply(lan_f)
    return NatTrans(f"unit[{f.name}]", f, nalpha.then(boxed), comps).validate(), boxed


def fder3_fder4_check(alpha, target, mode, truncation=None, budget=DEFAULT_BUDGET):
    """Relative left Kan extension of the enlargement along alpha.

    (a) box_! N(alpha)_! is left adjoint to restriction between the cart
    subcategories (exhaustive hom bijection through the unit);
    (b) its value at any object over j is the colimit over the nerve of
    the comma I x_{/J} j, both routes computed independently.
    """
    with timed() as tm:
        I, J = alpha.dom, alpha.cod
        pkg_i = build_N(I, mode, truncation)
        pkg_j = build_N(J, mode, truncation)
        nalpha = N_on_functor(alpha, mode, truncation, pkg_dom=pkg_i, pkg_cod=pkg_j)
        e_i = enlargement_E(I, target, mode, truncation, budget, pkg=pkg_i)
        e_j = enlargement_E(J, target, mode, truncation, budget, pkg=pkg_j)
        marking_j = e_j.marking
        proj = cartesian_projector_left(marking_j, target)
        kan_n = KanOps(nalpha, target)
        pt = terminal_category()

        verdict = PASS
        notes = []
        witnesses = {"E_I": e_i.object_count, "E_J": e_j.object_count}

        images = {}
        units = {}
        for f in e_i.functors:
            unit, boxed = _unit_of_composite_left(kan_n, proj, f)
            images[e_i.presentation.name_of(f)] = boxed
            units[e_i.presentation.name_of(f)] = unit
            if not is_pi_cartesian(boxed, marking_j):
                verdict = FAIL
                notes.append(f"E(alpha)_! {f.name} not cartesian")

        # (a) hom(E! F, G)  ~  hom(F, N(alpha)^* G), bijection via the unit
        for f in e_i.functors:
            fname = e_i.presentation.name_of(f)
            ef = images[fname]
            for g in e_j.functors:
                upstairs = all_nat_trans(ef, g, budget)
                downstairs = all_nat_trans(f, nalpha.then(g), budget)
                transported = set()
                for nu in upstairs:
                    comps = {
                        x: target.cat.compose(nu.at(nalpha.ob(x)), units[fname].at(x))
                        for x in nalpha.dom.objects
                    }
                    transported.add(tuple(sorted(comps.items())))
                wanted = {tuple(sorted(nu.components.items())) for nu in downstairs}
                if len(transported) != len(upstairs) or transported != wanted:
                    verdict = FAIL
                    notes.append(f"adjunction bijection fails at ({fname},{e_j.presentation.name_of(g)})")

        # (b) pointwise comma-colimit route
        for j in J.objects:
            cc = comma_category(alpha, object_pick(J, j, pt))
            pkg_cc = build_N(cc.total, mode, truncation)
            n_pr1 = N_on_functor(cc.pr1, mode, truncation, pkg_dom=pkg_cc, pkg_cod=pkg_i)
            overs = [n for n in pkg_j.total.objects if pkg_j.pi.ob(n) == j]
            for f in e_i.functors:
                fname = e_i.presentation.name_of(f)
                got = target.colimit(n_pr1.then(f))
                if got is None:
                    raise MissingColimit("colimit", pkg_cc.total.name)
                expected, _ = got
                for n in overs:
                    actual = images[fname].ob(n)
                    if not isomorphic_objects(target.cat, actual, expected):
                        verdict = FAIL
                        notes.append(
                            f"pointwise mismatch at {n}: {actual} vs colim {expected} ({fname})"
                        )
    return VerificationReport(
        check="fder3_fder4",
        instance=f"{alpha.name}:{I.name}->{J.name},{mode},{target.cat.name}",
        verdict=verdict,
        truncation=str(truncation if truncation is not None else pkg_i.truncation),
        witnesses=witnesses,
        notes="; ".join(notes),
        seconds=tm.seconds,
    )


def transport_equivalence_check(shape_i, shape_j, target, mode, truncation=None, budget=DEFAULT_BUDGET):
    """Comparison between cart diagrams on N(I) x J and on N(I x J).

    The comparison restricts along (N(pr1), pr2 ∘ pi_{I,J}); its stated
    inverse is the left Kan extension along that functor followed by the
    left Cartesian projector.  Unit and counit are checked to be
    isomorphisms on every enumerated cart object, and hom sets compare
    bijectively.
    """
    with timed() as tm:
        I, J = shape_i, shape_j
        prod_shape, spr1, spr2 = product(I, J)
        pkg_i = build_N(I, mode, truncation)
        pkg_prod = build_N(prod_shape, mode, truncation)

        big, bpr1, bpr2 = product(pkg_i.total, J)  # N(I) x J
        # pi_{I,J} = pi_I x id_J : N(I) x J -> I x J
        pi_ij = Functor(
            "pi_IxJ",
            big,
            prod_shape,
            {o: f"({pkg_i.pi.ob(bpr1.ob(o))},{bpr2.ob(o)})" for o in big.objects},
            {
                m.name: f"({pkg_i.pi.mor(bpr1.mor(m.name))},{bpr2.mor(m.name)})"
                for m in big.morphisms
            },
        ).validate()
        n_pr1 = N_on_functor(spr1, mode, truncation, pkg_dom=pkg_prod, pkg_cod=pkg_i)
        # comparison functor N(I x J) -> N(I) x J
        comparison = Functor(
            "transport",
            pkg_prod.total,
            big,
            {
                z: f"({n_pr1.ob(z)},{spr2.ob(pkg_prod.pi.ob(z))})"
                for z in pkg_prod.total.objects
            },
            {
                m.name: f"({n_pr1.mor(m.name)},{spr2.mor(pkg_prod.pi.mor(m.name))})"
                for m in pkg_prod.total.morphisms
            },
        ).validate()

        marking_big = CartesianMarking.from_projection(pi_ij)
        marking_prod = CartesianMarking.from_package(pkg_prod)
        carts_big = cart_functors(marking_big, target, budget)
        carts_prod = cart_functors(marking_prod, target, budget)
        witnesses = {"cart_NIxJ": len(carts_big), "cart_NIJ": len(carts_prod)}
        verdict = PASS
        notes = []

        proj = cartesian_projector_left(marking_big, target)
        kan_c = KanOps(comparison, target)

        def inverse(g):
            lan, _ = kan_c.left_kan(g)
            return proj.apply(lan)

        # comparison preserves cartness and is essentially surjective with iso units
        for h in carts_big:
            restricted = comparison.then(h)
            if not is_pi_cartesian(restricted, marking_prod):
                verdict = FAIL
                notes.append(f"restriction of {h.name} not cartesian")
            back = inverse(restricted)
            if not natural_isos(back, h, budget):
                verdict = FAIL
                notes.append(f"inverse∘comparison != id at {h.name}")
        for g in carts_prod:
            back = inverse(g)
            round_trip = comparison.then(back)
            if not natural_isos(round_trip, g, budget):
                verdict = FAIL
                notes.append(f"comparison∘inverse != id at {g.name}")

        # fully faithful on the cart subcategories
        for h in carts_big:
            for h2 in carts_big:
                down = all_nat_trans(h, h2, budget)
                up = all_nat_trans(comparison.then(h), comparison.then(h2), budget)
                image = {
                    tuple(
                        sorted(
                            {z: nt.at(comparison.ob(z)) for z in pkg_prod.total.objects}.items()
                        )
                    )
                    for nt in down
                }
                if len(image) != len(down) or len(down) != len(up):
                    verdict = FAIL
                    notes.append(f"hom mismatch at ({h.name},{h2.name})")
    return VerificationReport(
        check="transport_equivalence",
        instance=f"{I.name}x{J.name},{mode},{target.cat.name}",
        verdict=verdict,
        truncation=str(truncation if truncation is not None else pkg_i.truncation),
        witnesses=witnesses,
        notes="; ".join(notes),
        seconds=tm.seconds,
    )


def left_right_comparison(shape, target, truncation=None, budget=DEFAULT_BUDGET):
    """Equivalence of the Inv-side and Dir-side enlargements via the comma span.

    Builds N(I) x_{/I} N~(I), transports through pr2_! pr1^* and
    pr1_* pr2^*, and verifies the unit is an isomorphism on every
    pi-cart object and the counit on every pi~-cart object.
    """
    from .nerve import DIR_REDUCED, INV_REDUCED

    with timed() as tm:
        pkg_inv = build_N(shape, INV_REDUCED, truncation)
        pkg_dir = build_N(shape, DIR_REDUCED, truncation)
        cc = comma_category(pkg_inv.pi, pkg_dir.pi, name=f"span({shape.name})")
        marking_inv = CartesianMarking.from_package(pkg_inv)
        marking_dir = CartesianMarking.from_package(pkg_dir)
        carts_inv = cart_functors(marking_inv, target, budget)
        carts_dir = cart_functors(marking_dir, target, budget)
        kan1 = KanOps(cc.pr1, target)  # right Kan for pr1
        kan2 = KanOps(cc.pr2, target)  # left Kan for pr2
        span_flags = classify_category(cc.total)
        witnesses = {
            "cart_inv": len(carts_inv),
            "cart_dir": len(carts_dir),
            "span_objects": len(cc.total.objects),
            # the comparison needs the comma span itself to stay tame
            "span_is_poset": span_flags.is_poset,
            "span_acyclic": span_flags.admits_decreasing_degree,
        }
        verdict = PASS
        notes = []

        def left_transport(f):
            lan, _ = kan2.left_kan(cc.pr1.then(f))
            return lan

        def right_transport(g):
            ran, _ = kan1.right_kan(cc.pr2.then(g))
            return ran

        for f in carts_inv:
            lf = left_transport(f)
            if not is_pi_cartesian(lf, marking_dir):
                verdict = FAIL
                notes.append(f"L({f.name}) not cartesian on the Dir side")
            # unit: F => pr1_* pr2^* pr2_! pr1^* F
            pulled = cc.pr1.then(f)
            eta1 = kan1.right_unit(f)  # F => pr1_* pr1^* F
            eta2 = kan2.left_unit(pulled)  # pr1^*F => pr2^* L F
            ran_src = kan1.right_kan(pulled)
            ran_tgt = kan1.right_kan(cc.pr2.then(lf))
            lifted = kan1.right_kan_nt(eta2, ran_src, ran_tgt)
            unit = eta1.then(lifted)
            if not unit.is_componentwise_iso():
                verdict = FAIL
                notes.append(f"unit not iso at {f.name}")
        for g in carts_dir:
            rg = right_transport(g)
            if not is_pi_cartesian(rg, marking_inv):
                verdict = FAIL
                notes.append(f"R({g.name}) not cartesian on the Inv side")
            # counit: pr2_! pr1^* pr1_* pr2^* G => G
            pulled = cc.pr2.then(g)
            ran = kan1.right_kan(pulled)
            eps1 = kan1.right_counit(pulled, ran=ran)  # pr1^* R G => pr2^* G
            lan_src = kan2.left_kan(cc.pr1.then(rg))
            lan_tgt = kan2.left_kan(pulled)
            lowered = kan2.left_kan_nt(eps1, lan_src, lan_tgt)
            eps2 = kan2.left_counit(g, lan_of_restriction=lan_tgt)  # pr2_! pr2^* G => G
            counit = lowered.then(eps2)
            if not counit.is_componentwise_iso():
                verdict = FAIL
                notes.append(f"counit not iso at {g.name}")
    return VerificationReport(
        check="left_right_comparison",
        instance=f"{shape.name},{target.cat.name}",
        verdict=verdict,
        truncation=str(truncation or "exact"),
        witnesses=witnesses,
        notes="; ".join(notes),
        seconds=tm.seconds,
    )


def fiber_category(alpha, j):
    """The strict fiber of alpha over j: morphisms mapping to id_j."""
    E = alpha.dom
    idj = alpha.cod.id_of(j)
    objs = [x for x in E.objects if alpha.ob(x) == j]
    mors = [m for m in E.morphisms if alpha.mor(m.name) == idj]
    names = {m.name for m in mors}
    identities = {o: E.id_of(o) for o in objs}
    comp = {
        (g, f): h
        for (g, f), h in E.composition.items()
        if g in names and f in names and h in names
    }
    return FinCat(f"fiber({alpha.name}@{j})", objs, mors, identities, comp)


def opfib_fiberwise_check(alpha, diagram, target, budget=DEFAULT_BUDGET):
    """Fiberwise computation of the left Kan extension along an opfibration.

    For every j the extension's value is the colimit of the diagram over
    the strict fiber, and the comma transition functors built from
    chosen coCartesian lifts section their projections (rho ∘ rho' = id,
    with rho' left adjoint to rho).
    """
    if not opfibration_check(alpha):
        raise NotOpfibration(f"{alpha.name} is not an opfibration")
    with timed() as tm:
        E, B = alpha.dom, alpha.cod
        kan = KanOps(alpha, target)
        lan, _ = kan.left_kan(diagram)
        verdict = PASS
        notes = []
        pt = terminal_category()
        for j in B.objects:
            fib = fiber_category(alpha, j)
            restricted = Functor(
                f"{diagram.name}|{j}",
                fib,
                target.cat,
                {o: diagram.ob(o) for o in fib.objects},
                {m.name: diagram.mor(m.name) for m in fib.morphisms},
            )
            got = target.colimit(restricted)
            if got is None:
                raise MissingColimit("colimit", fib.name)
            expected, _ = got
            if not isomorphic_objects(target.cat, lan.ob(j), expected):
                verdict = FAIL
                notes.append(f"at {j}: lan={lan.ob(j)} vs fiber colim={expected}")

        # section fact from the coCartesian lifts
        pt_obj = pt.objects[0]
        id_pt = pt.id_of(pt_obj)
        for e in E.objects:
            b = alpha.ob(e)
            under_e = comma_category(object_pick(E, e, pt), identity_functor(E))
            under_b = comma_category(object_pick(B, b, pt), identity_functor(B))

            def b_obj(y, m):
                return under_b.obj_name(pt_obj, y, m)

            def e_obj(x, n):
                return under_e.obj_name(pt_obj, x, n)

            rho_obj = {
                name: b_obj(alpha.ob(x), alpha.mor(n))
                for name, (_, x, n) in under_e.obj_data.items()
            }
            rho_mor = {
                mn: under_b.mor_name(
                    id_pt,
                    alpha.mor(uv[1]),
                    rho_obj[under_e.total.src(mn)],
                    rho_obj[under_e.total.tgt(mn)],
                )
                for mn, uv in under_e.mor_data.items()
            }
            rho = Functor(f"rho[{e}]", under_e.total, under_b.total, rho_obj, rho_mor).validate()

            # rho' picks the chosen coCartesian lift of each arrow out of b
            lift_obj = {}
            for name, (_, y, m) in under_b.obj_data.items():
                phi = cocartesian_lift(alpha, m, e)
                if phi is None:
                    raise NotOpfibration(f"no lift of {m} at {e}")
                lift_obj[name] = (E.tgt(phi), phi)
            rprime_obj = {name: e_obj(x, phi) for name, (x, phi) in lift_obj.items()}
            rprime_mor = {}
            for mn, (_, w) in under_b.mor_data.items():
                srcb, tgtb = under_b.total.src(mn), under_b.total.tgt(mn)
                y1, phi1 = lift_obj[srcb]
                y2, phi2 = lift_obj[tgtb]
                sols = [
                    chi
                    for chi in E.hom(y1, y2)
                    if alpha.mor(chi) == w and E.compose(chi, phi1) == phi2
                ]
                if len(sols) != 1:
                    verdict = FAIL
                    notes.append(f"lift transition not unique over {w}")
                    sols = sols or [E.id_of(y1)]
                rprime_mor[mn] = under_e.mor_name(
                    id_pt, sols[0], rprime_obj[srcb], rprime_obj[tgtb]
                )
            rho_prime = Functor(
                f"rho'[{e}]", under_b.total, under_e.total, rprime_obj, rprime_mor
            ).validate()

            if not rho_prime.then(rho).maps_equal(identity_functor(under_b.total)):
                verdict = FAIL
                notes.append(f"rho∘rho' != id at {e}")

            # rho' ⊣ rho with identity unit
            unit = NatTrans(
                "unit",
                identity_functor(under_b.total),
                rho_prime.then(rho),
                {o: under_b.total.id_of(o) for o in under_b.total.objects},
            )
            counit_comps = {}
            for name, (_, x, n) in under_e.obj_data.items():
                y, phi = lift_obj[rho_obj[name]]
                sols = [
                    chi
                    for chi in E.hom(y, x)
                    if alpha.mor(chi) == B.id_of(alpha.ob(x)) and E.compose(chi, phi) == n
                ]
                if len(sols) != 1:
                    verdict = FAIL
                    notes.append(f"counit not unique at {name}")
                    sols = sols or [E.id_of(y)]
                counit_comps[name] = under_e.mor_name(id_pt, sols[0], e_obj(y, phi), name)
            counit = NatTrans(
                "counit", rho.then(rho_prime), identity_functor(under_e.total), counit_comps
            )
            if not check_adjunction(rho_prime, rho, unit, counit):
                verdict = FAIL
                notes.append(f"rho' not left adjoint to rho at {e}")
    return VerificationReport(
        check="opfib_fiberwise",
        instance=f"{alpha.name},{diagram.name},{target.cat.name}",
        verdict=verdict,
        witnesses={},
        notes="; ".join(notes),
        seconds=tm.seconds,
    )


def projector_pullback_commutation(alpha, target, mode, truncation=None, budget=DEFAULT_BUDGET):
    """N(alpha)^* commutes with the right Cartesian projector.

    Both composites are evaluated objectwise on every enumerated diagram
    of Fun(N(cod alpha), C).
    """
    with timed() as tm:
        pkg_dom = build_N(alpha.dom, mode, truncation)
        pkg_cod = build_N(alpha.cod, mode, truncation)
        nalpha = N_on_functor(alpha, mode, truncation, pkg_dom=pkg_dom, pkg_cod=pkg_cod)
        marking_dom = CartesianMarking.from_package(pkg_dom)
        marking_cod = CartesianMarking.from_package(pkg_cod)
        proj_dom = cartesian_projector_right(marking_dom, target)
        proj_cod = cartesian_projector_right(marking_cod, target)
        verdict = PASS
        notes = []
        count = 0
        for f in all_functors(pkg_cod.total, target.cat, budget):
            count += 1
            lhs = nalpha.then(proj_cod.apply(f))
            rhs = proj_dom.apply(nalpha.then(f))
            if lhs.maps_equal(rhs):
                continue
            if not natural_isos(lhs, rhs, budget):
                verdict = FAIL
                notes.append(f"composites differ at {f.name}")
    return VerificationReport(
        check="projector_pullback",
        instance=f"{alpha.name},{mode},{target.cat.name}",
        verdict=verdict,
        truncation=str(truncation if truncation is not None else pkg_dom.truncation),
        witnesses={"diagrams": count},
        notes="; ".join(notes),
        seconds=tm.seconds,
    )
