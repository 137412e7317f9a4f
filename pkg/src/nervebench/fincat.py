"""Finite categories as explicit composition tables.

A category is stored with all of its data made literal: object
identifiers, morphism triples (name, source, target), the identity
assignment, and the full composition table on composable pairs.  Every
construction in the workbench (opposites, products, comma categories,
nerves, functor categories) bottoms out in this representation, so all
verdicts produced elsewhere can be re-checked by enumeration here.
"""

from dataclasses import dataclass, field

from .errors import (
    CategoryLawError,
    SearchSpaceTooLarge,
    ShapeMismatch,
)


@dataclass(frozen=True)
class Mor:
    name: str
    src: str
    tgt: str


@dataclass(frozen=True)
class LawViolation:
    """One violated category law together with its witnesses."""

    kind: str  # MissingComposite | AssociativityViolation | IdentityLawViolation | Structural
    witnesses: tuple
    message: str

    def __str__(self):
        return f"{self.kind}{self.witnesses}: {self.message}"


class FinCat:
    """A finite category; immutable after construction."""

    def __init__(self, name, objects, morphisms, identities, composition):
        self.name = name
        self.objects = tuple(objects)
        self.morphisms = tuple(Mor(*m) if not isinstance(m, Mor) else m for m in morphisms)
        self.identities = dict(identities)  # object -> morphism name
        self.composition = dict(composition)  # (g, f) -> g.f  with f first
        self._mor = {m.name: m for m in self.morphisms}
        self._hom = {}
        for m in self.morphisms:
            self._hom.setdefault((m.src, m.tgt), []).append(m.name)
        self._out = {}
        self._in = {}
        for m in self.morphisms:
            self._out.setdefault(m.src, []).append(m.name)
            self._in.setdefault(m.tgt, []).append(m.name)
        self._identity_names = set(self.identities.values())

    # -- basic queries ------------------------------------------------

    def mor(self, name):
        return self._mor[name]

    def has_mor(self, name):
        return name in self._mor

    def src(self, name):
        return self._mor[name].src

    def tgt(self, name):
        return self._mor[name].tgt

    def hom(self, a, b):
        return tuple(self._hom.get((a, b), ()))

    def out_of(self, a):
        return tuple(self._out.get(a, ()))

    def into(self, b):
        return tuple(self._in.get(b, ()))

    def id_of(self, obj):
        return self.identities[obj]

    def is_identity(self, name):
        return name in self._identity_names

    def compose(self, g, f):
        """Composite g∘f (f first).  Raises ShapeMismatch if not composable."""
        if self.tgt(f) != self.src(g):
            raise ShapeMismatch(f"{g}∘{f}: tgt({f})={self.tgt(f)} != src({g})={self.src(g)}")
        return self.composition[(g, f)]

    def compose_chain(self, names):
        """Composite of a diagram-ordered sequence (first arrow first)."""
        if not names:
            raise ValueError("empty chain has no composite without an object")
        acc = names[0]
        for nxt in names[1:]:
            acc = self.compose(nxt, acc)
        return acc

    def nonidentity_morphisms(self):
        return tuple(m.name for m in self.morphisms if m.name not in self._identity_names)

    # -- law checking ---------------------------------------------------

    def violations(self):
        """All violated category laws, each with concrete witnesses."""
        out = []
        seen_obj = set(self.objects)
        if len(seen_obj) != len(self.objects):
            out.append(LawViolation("Structural", (), "duplicate object identifiers"))
        names = [m.name for m in self.morphisms]
        if len(set(names)) != len(names):
            out.append(LawViolation("Structural", (), "duplicate morphism identifiers"))
        for m in self.morphisms:
            if m.src not in seen_obj or m.tgt not in seen_obj:
                out.append(LawViolation("Structural", (m.name,), "morphism endpoint is not an object"))
        for obj in self.objects:
            i = self.identities.get(obj)
            if i is None or i not in self._mor:
                out.append(LawViolation("Structural", (obj,), "object without identity morphism"))
            else:
                mi = self._mor[i]
                if mi.src != obj or mi.tgt != obj:
                    out.append(LawViolation("Structural", (obj, i), "identity has wrong endpoints"))
        ids = list(self.identities.values())
        if len(set(ids)) != len(ids):
            out.append(LawViolation("Structural", (), "identities map is not injective"))
        if out:
            return out  # endpoint data unusable; do not chase table laws

        # composition defined exactly on composable pairs
        for (g, f), h in self.composition.items():
            if g not in self._mor or f not in self._mor or h not in self._mor:
                out.append(LawViolation("Structural", (g, f, h), "composition entry names unknown morphism"))
                continue
            if self.tgt(f) != self.src(g):
                out.append(LawViolation("Structural", (g, f), "composition entry on non-composable pair"))
            elif self.src(h) != self.src(f) or self.tgt(h) != self.tgt(g):
                out.append(LawViolation("Structural", (g, f, h), "composite has wrong endpoints"))
        for f in self._mor:
            for g in self._out.get(self.tgt(f), ()):
                if (g, f) not in self.composition:
                    out.append(LawViolation("MissingComposite", (g, f), f"no entry for {g}∘{f}"))
        if out:
            return out

        # identity laws
        for m in self.morphisms:
            li = self.id_of(m.tgt)
            ri = self.id_of(m.src)
            if self.composition[(li, m.name)] != m.name or self.composition[(m.name, ri)] != m.name:
                out.append(LawViolation("IdentityLawViolation", (m.name,), "identity law fails"))

        # associativity, exhaustive over composable triples
        for f in self._mor:
            for g in self._out.get(self.tgt(f), ()):
                gf = self.composition[(g, f)]
                for h in self._out.get(self.tgt(g), ()):
                    if self.composition[(h, gf)] != self.composition[(self.composition[(h, g)], f)]:
                        out.append(
                            LawViolation(
                                "AssociativityViolation",
                                (f, g, h),
                                f"h∘(g∘f)={self.composition[(h, gf)]} != (h∘g)∘f={self.composition[(self.composition[(h, g)], f)]}",
                            )
                        )
        return out

    def validate(self):
        bad = self.violations()
        if bad:
            raise CategoryLawError(bad)
        return self

    # -- comparison -----------------------------------------------------

    def data(self):
        return (
            tuple(sorted(self.objects)),
            tuple(sorted((m.name, m.src, m.tgt) for m in self.morphisms)),
            tuple(sorted(self.identities.items())),
            tuple(sorted(self.composition.items())),
        )

    def same_data(self, other):
        return self.data() == other.data()

    def __repr__(self):
        return f"FinCat({self.name!r}, {len(self.objects)} objects, {len(self.morphisms)} morphisms)"


def validate_category(name, objects, morphisms, composition, identities=None):
    """Build a FinCat from raw data and check every law.

    Identity morphisms may be omitted: they are added as ``id_<object>``
    and the composition table is completed with the forced identity
    entries.  Raises CategoryLawError carrying all violations.
    """
    objects = list(objects)
    morphisms = [Mor(*m) if not isinstance(m, Mor) else m for m in morphisms]
    composition = dict(composition)
    names = {m.name for m in morphisms}
    if identities is None:
        identities = {}
        for obj in objects:
            mid = f"id_{obj}"
            identities[obj] = mid
            if mid not in names:
                morphisms.append(Mor(mid, obj, obj))
                names.add(mid)
    # fill entries forced by the identity laws when absent
    by_name = {m.name: m for m in morphisms}
    for m in morphisms:
        if m.src in identities and identities[m.src] in by_name:
            composition.setdefault((m.name, identities[m.src]), m.name)
        if m.tgt in identities and identities[m.tgt] in by_name:
            composition.setdefault((identities[m.tgt], m.name), m.name)
    return FinCat(name, objects, morphisms, identities, composition).validate()


# -- canonical constructions ---------------------------------------------


def opposite(cat):
    """The opposite category; an involution on the underlying data."""
    morphisms = [Mor(m.name, m.tgt, m.src) for m in cat.morphisms]
    composition = {(f, g): h for (g, f), h in cat.composition.items()}
    return FinCat(f"{cat.name}^op", cat.objects, morphisms, dict(cat.identities), composition)


def coproduct(c, d, tags=("inl:", "inr:")):
    """Disjoint union with no cross morphisms."""
    lt, rt = tags
    objects = [lt + o for o in c.objects] + [rt + o for o in d.objects]
    morphisms = [Mor(lt + m.name, lt + m.src, lt + m.tgt) for m in c.morphisms]
    morphisms += [Mor(rt + m.name, rt + m.src, rt + m.tgt) for m in d.morphisms]
    identities = {lt + o: lt + i for o, i in c.identities.items()}
    identities.update({rt + o: rt + i for o, i in d.identities.items()})
    composition = {(lt + g, lt + f): lt + h for (g, f), h in c.composition.items()}
    composition.update({(rt + g, rt + f): rt + h for (g, f), h in d.composition.items()})
    return FinCat(f"{c.name}+{d.name}", objects, morphisms, identities, composition)


def _pair(a, b):
    return f"({a},{b})"


def product(c, d):
    """Product category with componentwise composition."""
    objects = [_pair(x, y) for x in c.objects for y in d.objects]
    morphisms = [
        Mor(_pair(m.name, n.name), _pair(m.src, n.src), _pair(m.tgt, n.tgt))
        for m in c.morphisms
        for n in d.morphisms
    ]
    identities = {
        _pair(x, y): _pair(c.id_of(x), d.id_of(y)) for x in c.objects for y in d.objects
    }
    composition = {}
    for (g1, f1), h1 in c.composition.items():
        for (g2, f2), h2 in d.composition.items():
            composition[(_pair(g1, g2), _pair(f1, f2))] = _pair(h1, h2)
    cat = FinCat(f"{c.name}x{d.name}", objects, morphisms, identities, composition)
    pr1 = Functor(
        f"pr1[{cat.name}]",
        cat,
        c,
        {_pair(x, y): x for x in c.objects for y in d.objects},
        {_pair(m.name, n.name): m.name for m in c.morphisms for n in d.morphisms},
    )
    pr2 = Functor(
        f"pr2[{cat.name}]",
        cat,
        d,
        {_pair(x, y): y for x in c.objects for y in d.objects},
        {_pair(m.name, n.name): n.name for m in c.morphisms for n in d.morphisms},
    )
    return cat, pr1, pr2


# -- functors ----------------------------------------------------------


class Functor:
    def __init__(self, name, dom, cod, obj_map, mor_map):
        self.name = name
        self.dom = dom
        self.cod = cod
        self.obj_map = dict(obj_map)
        self.mor_map = dict(mor_map)

    def ob(self, x):
        return self.obj_map[x]

    def mor(self, m):
        return self.mor_map[m]

    def violations(self):
        out = []
        for x in self.dom.objects:
            if self.obj_map.get(x) not in set(self.cod.objects):
                out.append(f"object {x} mapped outside codomain")
        for m in self.dom.morphisms:
            fm = self.mor_map.get(m.name)
            if fm is None or not self.cod.has_mor(fm):
                out.append(f"morphism {m.name} mapped outside codomain")
                continue
            if self.cod.src(fm) != self.obj_map[m.src] or self.cod.tgt(fm) != self.obj_map[m.tgt]:
                out.append(f"morphism {m.name} does not preserve endpoints")
        if out:
            return out
        for x in self.dom.objects:
            if self.mor_map[self.dom.id_of(x)] != self.cod.id_of(self.obj_map[x]):
                out.append(f"identity of {x} not preserved")
        for (g, f), h in self.dom.composition.items():
            if self.cod.composition[(self.mor_map[g], self.mor_map[f])] != self.mor_map[h]:
                out.append(f"composition {g}∘{f} not preserved")
        return out

    def validate(self):
        bad = self.violations()
        if bad:
            raise ShapeMismatch(f"functor {self.name} invalid: " + "; ".join(bad))
        return self

    def then(self, other):
        """Composite self;other (apply self first)."""
        if other.dom is not self.cod and not other.dom.same_data(self.cod):
            raise ShapeMismatch(f"cannot compose {self.name} with {other.name}")
        return Functor(
            f"{other.name}∘{self.name}",
            self.dom,
            other.cod,
            {x: other.ob(v) for x, v in self.obj_map.items()},
            {m: other.mor(v) for m, v in self.mor_map.items()},
        )

    def maps_equal(self, other):
        return self.obj_map == other.obj_map and self.mor_map == other.mor_map

    def __repr__(self):
        return f"Functor({self.name!r}: {self.dom.name} -> {self.cod.name})"


def identity_functor(cat):
    return Functor(
        f"id[{cat.name}]",
        cat,
        cat,
        {x: x for x in cat.objects},
        {m.name: m.name for m in cat.morphisms},
    )


def constant_functor(dom, cod, obj):
    return Functor(
        f"const[{obj}]",
        dom,
        cod,
        {x: obj for x in dom.objects},
        {m.name: cod.id_of(obj) for m in dom.morphisms},
    )


def object_pick(cat, obj, pt):
    """The functor from the terminal category selecting ``obj``."""
    return Functor(
        f"pick[{obj}]",
        pt,
        cat,
        {pt.objects[0]: obj},
        {pt.id_of(pt.objects[0]): cat.id_of(obj)},
    )


# -- natural transformations -------------------------------------------


class NatTrans:
    def __init__(self, name, dom, cod, components):
        self.name = name
        self.dom = dom  # Functor
        self.cod = cod  # Functor
        self.components = dict(components)  # object of dom.dom -> morphism of cod.cod

    def at(self, x):
        return self.components[x]

    def violations(self):
        out = []
        f, g = self.dom, self.cod
        cat = f.dom
        tgtcat = f.cod
        for x in cat.objects:
            c = self.components.get(x)
            if c is None or not tgtcat.has_mor(c):
                out.append(f"component at {x} missing")
                continue
            if tgtcat.src(c) != f.ob(x) or tgtcat.tgt(c) != g.ob(x):
                out.append(f"component at {x} has wrong endpoints")
        if out:
            return out
        for m in cat.morphisms:
            left = tgtcat.compose(self.components[m.tgt], f.mor(m.name))
            right = tgtcat.compose(g.mor(m.name), self.components[m.src])
            if left != right:
                out.append(f"naturality fails at {m.name}")
        return out

    def validate(self):
        bad = self.violations()
        if bad:
            raise ShapeMismatch(f"transformation {self.name} invalid: " + "; ".join(bad))
        return self

    def then(self, other):
        """Vertical composite self;other."""
        cat = self.dom.cod
        comps = {x: cat.compose(other.components[x], self.components[x]) for x in self.components}
        return NatTrans(f"{other.name}∘{self.name}", self.dom, other.cod, comps)

    def is_componentwise_iso(self):
        cat = self.dom.cod
        return all(is_iso_morphism(cat, c) for c in self.components.values())

    def __repr__(self):
        return f"NatTrans({self.name!r}: {self.dom.name} => {self.cod.name})"


def identity_nat(functor):
    return NatTrans(
        f"id[{functor.name}]",
        functor,
        functor,
        {x: functor.cod.id_of(functor.ob(x)) for x in functor.dom.objects},
    )


def whisker_left(functor, nt):
    """nt ∘ functor : precompose a transformation with a functor."""
    return NatTrans(
        f"{nt.name}*{functor.name}",
        functor.then(nt.dom),
        functor.then(nt.cod),
        {x: nt.at(functor.ob(x)) for x in functor.dom.objects},
    )


def whisker_right(nt, functor):
    """functor ∘ nt : postcompose a transformation with a functor."""
    return NatTrans(
        f"{functor.name}*{nt.name}",
        nt.dom.then(functor),
        nt.cod.then(functor),
        {x: functor.mor(nt.at(x)) for x in nt.dom.dom.objects},
    )


def is_iso_morphism(cat, name):
    """Brute-force invertibility in a finite category."""
    if cat.is_identity(name):
        return True
    a, b = cat.src(name), cat.tgt(name)
    for back in cat.hom(b, a):
        if cat.compose(back, name) == cat.id_of(a) and cat.compose(name, back) == cat.id_of(b):
            return True
    return False


def isomorphic_objects(cat, a, b):
    return a == b or any(is_iso_morphism(cat, m) for m in cat.hom(a, b))


def inverse_morphism(cat, name):
    a, b = cat.src(name), cat.tgt(name)
    for back in cat.hom(b, a):
        if cat.compose(back, name) == cat.id_of(a) and cat.compose(name, back) == cat.id_of(b):
            return back
    raise ShapeMismatch(f"{name} is not invertible")


# -- comma categories ----------------------------------------------------


@dataclass
class CommaCategory:
    total: FinCat
    pr1: Functor
    pr2: Functor
    cell: NatTrans
    obj_data: dict = field(default_factory=dict)  # total object -> (x, y, m)
    mor_data: dict = field(default_factory=dict)  # total morphism -> (u, v)

    def obj_name(self, x, y, m):
        return f"({x},{y},{m})"

    def mor_name(self, u, v, src_name, tgt_name):
        return f"[{u},{v}]{src_name}>{tgt_name}"


def comma_category(alpha, beta, name=None):
    """The comma category of alpha: I -> J against beta: K -> J.

    Objects are triples (x, y, m: alpha(x) -> beta(y)), ordered
    lexicographically so the output is reproducible bit for bit.
    """
    if alpha.cod is not beta.cod and not alpha.cod.same_data(beta.cod):
        raise ShapeMismatch("comma legs must share their codomain")
    I, K, J = alpha.dom, beta.dom, alpha.cod
    name = name or f"({alpha.name}/{beta.name})"

    triples = sorted(
        (x, y, m)
        for x in I.objects
        for y in K.objects
        for m in J.hom(alpha.ob(x), beta.ob(y))
    )
    oname = {t: f"({t[0]},{t[1]},{t[2]})" for t in triples}
    objects = [oname[t] for t in triples]

    morphisms = []
    mor_data = {}
    identities = {}
    for (x, y, m) in triples:
        src = oname[(x, y, m)]
        for u in I.out_of(x):
            for v in K.out_of(y):
                tgt_t = (I.tgt(u), K.tgt(v))
                for m2 in J.hom(alpha.ob(tgt_t[0]), beta.ob(tgt_t[1])):
                    # square: m2 ∘ alpha(u) == beta(v) ∘ m
                    if J.compose(m2, alpha.mor(u)) == J.compose(beta.mor(v), m):
                        tgt = oname[(tgt_t[0], tgt_t[1], m2)]
                        mn = f"[{u},{v}]{src}>{tgt}"
                        morphisms.append(Mor(mn, src, tgt))
                        mor_data[mn] = (u, v)
                        if I.is_identity(u) and K.is_identity(v) and src == tgt:
                            identities[src] = mn
    by_endpoints = {}
    for m in morphisms:
        by_endpoints.setdefault(m.src, []).append(m)
    composition = {}
    for f in morphisms:
        uf, vf = mor_data[f.name]
        for g in by_endpoints.get(f.tgt, ()):
            ug, vg = mor_data[g.name]
            u = I.compose(ug, uf)
            v = K.compose(vg, vf)
            composition[(g.name, f.name)] = f"[{u},{v}]{f.src}>{g.tgt}"
    total = FinCat(name, objects, morphisms, identities, composition)
    pr1 = Functor(
        f"pr1[{name}]",
        total,
        I,
        {oname[t]: t[0] for t in triples},
        {mn: uv[0] for mn, uv in mor_data.items()},
    )
    pr2 = Functor(
        f"pr2[{name}]",
        total,
        K,
        {oname[t]: t[1] for t in triples},
        {mn: uv[1] for mn, uv in mor_data.items()},
    )
    cell = NatTrans(
        f"cell[{name}]",
        pr1.then(alpha),
        pr2.then(beta),
        {oname[t]: t[2] for t in triples},
    )
    obj_data = {oname[t]: t for t in triples}
    return CommaCategory(total, pr1, pr2, cell, obj_data, mor_data)


def full_subcategory(cat, objects, name=None):
    """The full subcategory on the given objects."""
    keep = set(objects)
    objs = [o for o in cat.objects if o in keep]
    mors = [m for m in cat.morphisms if m.src in keep and m.tgt in keep]
    kept_names = {m.name for m in mors}
    identities = {o: i for o, i in cat.identities.items() if o in keep}
    composition = {
        (g, f): h for (g, f), h in cat.composition.items() if g in kept_names and f in kept_names
    }
    return FinCat(name or f"{cat.name}|{len(objs)}", objs, mors, identities, composition)


# -- classification -------------------------------------------------------


@dataclass(frozen=True)
class ClassificationFlags:
    is_poset: bool
    is_identity_rigid: bool
    admits_increasing_degree: bool
    admits_decreasing_degree: bool
    is_connected: bool


def _nonidentity_digraph(cat):
    edges = set()
    for m in cat.morphisms:
        if not cat.is_identity(m.name):
            edges.add((m.src, m.tgt))
    return edges


def _acyclic(objects, edges):
    """Kahn topological sort on the non-identity digraph."""
    succ = {o: set() for o in objects}
    indeg = {o: 0 for o in objects}
    for a, b in edges:
        if b not in succ[a]:
            succ[a].add(b)
            indeg[b] += 1
    queue = [o for o in objects if indeg[o] == 0]
    seen = 0
    while queue:
        o = queue.pop()
        seen += 1
        for b in succ[o]:
            indeg[b] -= 1
            if indeg[b] == 0:
                queue.append(b)
    return seen == len(objects)


def classify_category(cat):
    """Structural predicate flags reproducible from the data alone.

    identity_rigid fails exactly when some pair of non-identity
    morphisms composes to an identity.  The degree flags ask for a
    natural-number grading strictly monotone along non-identity
    morphisms; on finite categories both reduce to acyclicity of the
    non-identity digraph (self-loops count as cycles).
    """
    poset = True
    for (a, b), ms in cat._hom.items():
        if len(ms) > 1:
            poset = False
            break
    if poset:
        for (a, b) in _nonidentity_digraph(cat):
            if a != b and cat.hom(b, a):
                poset = False
                break
            if a == b:
                poset = False
                break

    rigid = True
    for (g, f), h in cat.composition.items():
        if cat.is_identity(h) and not (cat.is_identity(g) and cat.is_identity(f)):
            rigid = False
            break

    edges = _nonidentity_digraph(cat)
    acyclic = _acyclic(cat.objects, edges)

    # undirected connectivity
    adj = {o: set() for o in cat.objects}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    connected = True
    if len(cat.objects) > 1:
        stack = [cat.objects[0]]
        seen = {cat.objects[0]}
        while stack:
            o = stack.pop()
            for b in adj[o]:
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        connected = len(seen) == len(cat.objects)

    return ClassificationFlags(
        is_poset=poset,
        is_identity_rigid=rigid,
        admits_increasing_degree=acyclic,
        admits_decreasing_degree=acyclic,
        is_connected=connected,
    )


# -- functor image checks -------------------------------------------------


@dataclass(frozen=True)
class ImageChecks:
    surjective_on_objects: bool
    surjective_on_morphisms: bool
    all_fibers_connected: bool
    disconnected_fiber: str = ""


def fiber_of(functor, obj):
    """Objects and morphisms of the fiber over ``obj`` (strict preimage of identities)."""
    objs = [x for x in functor.dom.objects if functor.ob(x) == obj]
    idm = functor.cod.id_of(obj)
    mors = [m for m in functor.dom.morphisms if functor.mor(m.name) == idm]
    return objs, mors


def functor_image_checks(functor):
    cod = functor.cod
    surj_obj = set(functor.obj_map.values()) == set(cod.objects)
    surj_mor = set(functor.mor_map.values()) == {m.name for m in cod.morphisms}
    bad_fiber = ""
    fibers_ok = True
    for obj in cod.objects:
        objs, mors = fiber_of(functor, obj)
        if not objs:
            fibers_ok = False
            bad_fiber = obj
            break
        adj = {o: set() for o in objs}
        inset = set(objs)
        for m in mors:
            if m.src in inset and m.tgt in inset:
                adj[m.src].add(m.tgt)
                adj[m.tgt].add(m.src)
        stack, seen = [objs[0]], {objs[0]}
        while stack:
            o = stack.pop()
            for b in adj[o]:
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        if len(seen) != len(objs):
            fibers_ok = False
            bad_fiber = obj
            break
    return ImageChecks(surj_obj, surj_mor, fibers_ok, bad_fiber)


def is_isomorphism_of_categories(functor):
    """Bijective on objects and on morphisms."""
    obj_vals = list(functor.obj_map.values())
    mor_vals = list(functor.mor_map.values())
    return (
        len(set(obj_vals)) == len(obj_vals)
        and set(obj_vals) == set(functor.cod.objects)
        and len(set(mor_vals)) == len(mor_vals)
        and set(mor_vals) == {m.name for m in functor.cod.morphisms}
    )


# -- functor and transformation enumeration -------------------------------


class _Budget:
    def __init__(self, limit, context=""):
        self.limit = limit
        self.used = 0
        self.context = context

    def tick(self, n=1):
        self.used += n
        if self.used > self.limit:
            raise SearchSpaceTooLarge(self.limit, self.context)


def all_functors(dom, cod, budget=10**6, name_prefix="F"):
    """Every functor dom -> cod, by backtracking over object then morphism maps."""
    b = _Budget(budget, f"functors {dom.name}->{cod.name}")
    results = []
    objs = list(dom.objects)
    nonids = [dom.mor(m) for m in dom.nonidentity_morphisms()]

    def extend_mor(obj_map, idx, mor_map):
        if idx == len(nonids):
            f = Functor(f"{name_prefix}{len(results)}", dom, cod, dict(obj_map), dict(mor_map))
            if not f.violations():
                results.append(f)
            return
        m = nonids[idx]
        for cand in cod.hom(obj_map[m.src], obj_map[m.tgt]):
            b.tick()
            mor_map[m.name] = cand
            ok = True
            # check any composition whose factors are all assigned
            for (g, fm), h in dom.composition.items():
                if g in mor_map and fm in mor_map and h in mor_map:
                    if cod.composition.get((mor_map[g], mor_map[fm])) != mor_map[h]:
                        ok = False
                        break
            if ok:
                extend_mor(obj_map, idx + 1, mor_map)
            del mor_map[m.name]

    def extend_obj(idx, obj_map):
        if idx == len(objs):
            mor_map = {dom.id_of(x): cod.id_of(obj_map[x]) for x in objs}
            extend_mor(obj_map, 0, mor_map)
            return
        x = objs[idx]
        for val in cod.objects:
            b.tick()
            obj_map[x] = val
            if all(
                cod.hom(obj_map[m.src], obj_map[m.tgt])
                for m in nonids
                if m.src in obj_map and m.tgt in obj_map
            ):
                extend_obj(idx + 1, obj_map)
            del obj_map[x]

    extend_obj(0, {})
    return results


def all_nat_trans(f, g, budget=10**6):
    """Every natural transformation f => g, by backtracking with naturality pruning."""
    cat, tgt = f.dom, f.cod
    b = _Budget(budget, f"transformations {f.name}=>{g.name}")
    objs = list(cat.objects)
    results = []

    def extend(idx, comps):
        if idx == len(objs):
            results.append(NatTrans(f"t{len(results)}", f, g, dict(comps)))
            return
        x = objs[idx]
        for cand in tgt.hom(f.ob(x), g.ob(x)):
            b.tick()
            comps[x] = cand
            ok = True
            for m in cat.morphisms:
                if m.src in comps and m.tgt in comps:
                    if tgt.compose(comps[m.tgt], f.mor(m.name)) != tgt.compose(g.mor(m.name), comps[m.src]):
                        ok = False
                        break
            if ok:
                extend(idx + 1, comps)
            del comps[x]

    extend(0, {})
    return results


def natural_isos(f, g, budget=10**6):
    return [t for t in all_nat_trans(f, g, budget) if t.is_componentwise_iso()]


# -- adjunctions ----------------------------------------------------------


@dataclass
class AdjointAnswer:
    side: str
    functor: Functor
    unit: NatTrans
    counit: NatTrans
    candidates_checked: int


def check_adjunction(f, g, unit, counit):
    """Triangle identities for an adjunction f ⊣ g.

    unit: id_{dom f} => g∘f and counit: f∘g => id_{cod f}; true iff
    (counit f)∘(f unit) = id_f and (g counit)∘(unit g) = id_g
    componentwise.
    """
    C, D = f.dom, f.cod
    if g.dom is not D and not g.dom.same_data(D):
        raise ShapeMismatch("adjunction functors are not opposed")
    if unit.violations() or counit.violations():
        return False
    for c in C.objects:
        if D.compose(counit.at(f.ob(c)), f.mor(unit.at(c))) != D.id_of(f.ob(c)):
            return False
    for d in D.objects:
        if C.compose(g.mor(counit.at(d)), unit.at(g.ob(d))) != C.id_of(g.ob(d)):
            return False
    return True


def find_adjoint(functor, side, budget=10**7, assert_unique=True):
    """Brute-force search for a left or right adjoint.

    side="left": find L with L ⊣ functor, returning (L, unit, counit)
    of that adjunction.  side="right": find R with functor ⊣ R.  The
    returned witnesses always satisfy both triangle identities;
    uniqueness up to natural isomorphism is asserted when requested.
    Returns None when the search exhausts without a hit.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    F = functor
    C, D = F.dom, F.cod
    b = _Budget(budget, f"adjoint search for {F.name}")

    winners = []
    if side == "left":
        candidates = all_functors(D, C, budget=budget, name_prefix="L")
    else:
        candidates = all_functors(D, C, budget=budget, name_prefix="R")

    for G in candidates:
        if side == "left":
            # unit: id_D => F∘G, counit: G∘F => id_C; adjunction G ⊣ F
            units = all_nat_trans(identity_functor(D), G.then(F), budget=budget)
            counits = all_nat_trans(F.then(G), identity_functor(C), budget=budget)
            for u in units:
                for c in counits:
                    b.tick()
                    if check_adjunction(G, F, u, c):
                        winners.append(AdjointAnswer("left", G, u, c, b.used))
                        break
                if winners and winners[-1].functor is G:
                    break
        else:
            # unit: id_C => G∘F, counit: F∘G => id_D; adjunction F ⊣ G
            units = all_nat_trans(identity_functor(C), F.then(G), budget=budget)
            counits = all_nat_trans(G.then(F), identity_functor(D), budget=budget)
            for u in units:
                for c in counits:
                    b.tick()
                    if check_adjunction(F, G, u, c):
                        winners.append(AdjointAnswer("right", G, u, c, b.used))
                        break
                if winners and winners[-1].functor is G:
                    break

    if not winners:
        return None
    first = winners[0]
    if assert_unique:
        for other in winners[1:]:
            if not natural_isos(first.functor, other.functor, budget=budget):
                raise ShapeMismatch(
                    f"adjoint of {F.name} not unique up to natural isomorphism: "
                    f"{first.functor.name} vs {other.functor.name}"
                )
    first.candidates_checked = b.used
    return first


# -- opfibrations ----------------------------------------------------------


def cocartesian_lift(alpha, f, x):
    """A chosen coCartesian lift of f: alpha(x) -> j at x, or None.

    A lift phi: x -> y over f is coCartesian when every psi: x -> z
    whose image factors as g∘f admits a unique chi: y -> z over g with
    chi∘phi = psi.  Verified by enumeration; the lexicographically
    first valid lift is returned.
    """
    E, B = alpha.dom, alpha.cod
    if B.src(f) != alpha.ob(x):
        raise ShapeMismatch(f"{f} does not start at alpha({x})")
    lifts = sorted(m for m in E.out_of(x) if alpha.mor(m) == f)
    for phi in lifts:
        y = E.tgt(phi)
        ok = True
        for psi in E.out_of(x):
            for g in B.out_of(B.tgt(f)):
                if alpha.mor(psi) != B.compose(g, f):
                    continue
                z = E.tgt(psi)
                sols = [
                    chi
                    for chi in E.hom(y, z)
                    if alpha.mor(chi) == g and E.compose(chi, phi) == psi
                ]
                if len(sols) != 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return phi
    return None


def opfibration_check(alpha):
    """True iff every morphism out of an image object admits a coCartesian lift."""
    E, B = alpha.dom, alpha.cod
    for x in E.objects:
        for f in B.out_of(alpha.ob(x)):
            if cocartesian_lift(alpha, f, x) is None:
                return False
    return True
