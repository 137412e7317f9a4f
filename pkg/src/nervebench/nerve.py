"""Semi-simplicial nerves, their Grothendieck totals and the four
nerve packages with projection to the shape.

Simplices are stored as ``(base_object, arrows)`` where ``arrows`` is a
diagram-ordered tuple of morphism names; object chains are derived, so
parallel morphisms stay unambiguous.  An n-simplex of the nerve of I is
a chain of n composable morphisms, a 0-simplex is an object.
"""

from dataclasses import dataclass
from itertools import combinations

from .errors import (
    AdmissibilityLoss,
    ExactModeUnavailable,
    NoInitialObject,
    TruncationTooSmall,
)
from .fincat import FinCat, Functor, Mor, NatTrans, opposite

EXACT = "exact"

DIR_FULL = "DirFull"
DIR_REDUCED = "DirReduced"
INV_FULL = "InvFull"
INV_REDUCED = "InvReduced"
MODES = (DIR_FULL, DIR_REDUCED, INV_FULL, INV_REDUCED)


def is_dir(mode):
    return mode in (DIR_FULL, DIR_REDUCED)


def is_reduced(mode):
    return mode in (DIR_REDUCED, INV_REDUCED)


def chain_objects(cat, simplex):
    """The vertex sequence i_0, ..., i_n of a simplex."""
    o0, arrows = simplex
    out = [o0]
    for a in arrows:
        out.append(cat.tgt(a))
    return out


def interval_composite(cat, simplex, a, b):
    """Composite of the arrows over the interval [a, b]; identity when a == b."""
    o0, arrows = simplex
    if a == b:
        return cat.id_of(chain_objects(cat, simplex)[a])
    return cat.compose_chain(list(arrows[a:b]))


@dataclass
class SemiSimplicialSet:
    name: str
    cat: FinCat
    levels: dict  # n -> tuple of simplices
    faces: dict  # (n, i) -> {simplex: simplex}
    truncation: object  # int | "exact"

    @property
    def max_level(self):
        return max(self.levels) if self.levels else -1

    def violations(self):
        """Simplicial identities d_i d_j = d_{j-1} d_i for i < j, exhaustively."""
        out = []
        for n, simplices in self.levels.items():
            if n < 2:
                continue
            for x in simplices:
                for j in range(n + 1):
                    for i in range(j):
                        left = self.faces[(n - 1, i)][self.faces[(n, j)][x]]
                        right = self.faces[(n - 1, j - 1)][self.faces[(n, i)][x]]
                        if left != right:
                            out.append((n, i, j, x))
        return out

    def validate(self):
        bad = self.violations()
        if bad:
            raise AdmissibilityLoss(bad[0], "simplicial identity failure")
        return self


def _face(cat, simplex, i):
    o0, arrows = simplex
    n = len(arrows)
    if i == 0:
        return (cat.tgt(arrows[0]), arrows[1:])
    if i == n:
        return (o0, arrows[:-1])
    merged = cat.compose(arrows[i], arrows[i - 1])
    return (o0, arrows[: i - 1] + (merged,) + arrows[i + 1 :])


def _build_faces(cat, levels):
    faces = {}
    for n, simplices in levels.items():
        if n == 0:
            continue
        for i in range(n + 1):
            faces[(n, i)] = {x: _face(cat, x, i) for x in simplices}
    return faces


def semisimplicial_nerve(cat, k):
    """Chains of composable morphisms up to length k, with face maps."""
    if k < 0:
        raise ValueError("truncation must be >= 0")
    levels = {0: tuple(sorted((o, ()) for o in cat.objects))}
    for n in range(1, k + 1):
        nxt = []
        for (o0, arrows) in levels[n - 1]:
            last = cat.tgt(arrows[-1]) if arrows else o0
            for m in sorted(cat.out_of(last)):
                nxt.append((o0, arrows + (m,)))
        levels[n] = tuple(sorted(nxt))
    sset = SemiSimplicialSet(f"N({cat.name})<=k{k}", cat, levels, _build_faces(cat, levels), k)
    return sset


def is_admissible(cat, simplex):
    """No composite over a nondegenerate interval of the chain is an identity."""
    o0, arrows = simplex
    n = len(arrows)
    for a in range(n):
        for b in range(a + 1, n + 1):
            if cat.is_identity(interval_composite(cat, simplex, a, b)):
                return False
    return True


def find_cycle(cat):
    """A cycle of objects in the non-identity digraph, or None."""
    succ = {o: set() for o in cat.objects}
    for m in cat.morphisms:
        if not cat.is_identity(m.name):
            succ[m.src].add(m.tgt)
    color = {o: 0 for o in cat.objects}
    stack_path = []

    def dfs(o):
        color[o] = 1
        stack_path.append(o)
        for b in sorted(succ[o]):
            if color[b] == 1:
                return stack_path[stack_path.index(b) :] + [b]
            if color[b] == 0:
                got = dfs(b)
                if got:
                    return got
        color[o] = 2
        stack_path.pop()
        return None

    for o in cat.objects:
        if color[o] == 0:
            got = dfs(o)
            if got:
                return got
    return None


def reduced_nerve(cat, truncation=EXACT):
    """The subobject of chains whose every partial composite is a non-identity.

    Exact mode produces every admissible chain and requires the shape's
    non-identity digraph to be acyclic.
    """
    if truncation == EXACT:
        cycle = find_cycle(cat)
        if cycle is not None:
            raise ExactModeUnavailable(cycle)
        bound = None
    else:
        if truncation < 0:
            raise ValueError("truncation must be >= 0")
        bound = truncation
    levels = {0: tuple(sorted((o, ()) for o in cat.objects))}
    n = 0
    while True:
        if bound is not None and n >= bound:
            break
        nxt = []
        for (o0, arrows) in levels[n]:
            last = cat.tgt(arrows[-1]) if arrows else o0
            for m in sorted(cat.out_of(last)):
                cand = (o0, arrows + (m,))
                if is_admissible(cat, cand):
                    nxt.append(cand)
        if not nxt and bound is None:
            break
        levels[n + 1] = tuple(sorted(nxt))
        n += 1
    sset = SemiSimplicialSet(
        f"N'({cat.name})@{truncation}", cat, levels, _build_faces(cat, levels), truncation
    )
    return sset


# -- Grothendieck construction --------------------------------------------


def simplex_name(simplex):
    o0, arrows = simplex
    if not arrows:
        return f"s0[{o0}]"
    return f"s{len(arrows)}[{'.'.join(arrows)}]"


def _pullback(sset, n, simplex, u):
    """u*x for an injective monotone u: [m] -> [n], via iterated faces."""
    keep = set(u)
    current = simplex
    dim = n
    remaining = list(range(n + 1))
    for idx in sorted((i for i in range(n + 1) if i not in keep), reverse=True):
        pos = remaining.index(idx)
        current = sset.faces[(dim, pos)][current]
        dim -= 1
        remaining.remove(idx)
    return current


@dataclass
class GrothendieckTotal:
    total: FinCat
    base: FinCat
    proj: Functor  # total -> base
    dim: dict  # object name -> simplex dimension
    chain: dict  # object name -> simplex
    mor_u: dict  # morphism name -> injection tuple


def simplex_index_category(max_level):
    """Objects [0]..[k]; a morphism [n] -> [m] is an injective monotone [m] -> [n]."""
    objects = [f"[{n}]" for n in range(max_level + 1)]
    morphisms = []
    identities = {}
    info = {}
    for n in range(max_level + 1):
        for m in range(n + 1):
            for u in combinations(range(n + 1), m + 1):
                name = f"[{n}]>[{m}]|{','.join(map(str, u))}"
                morphisms.append(Mor(name, f"[{n}]", f"[{m}]"))
                info[name] = u
                if n == m:
                    identities[f"[{n}]"] = name
    composition = {}
    for f in morphisms:
        uf = info[f.name]
        for g in morphisms:
            if g.src != f.tgt:
                continue
            ug = info[g.name]
            w = tuple(uf[j] for j in ug)
            composition[(g.name, f.name)] = f"{f.src}>{g.tgt}|{','.join(map(str, w))}"
    cat = FinCat(f"chains<= {max_level}", objects, morphisms, identities, composition)
    return cat, info


def grothendieck_total(sset, name=None):
    """Category of pairs (n, x); morphisms are injections acting by faces.

    The projection to the simplex-index category is an opfibration with
    discrete fibers.
    """
    name = name or f"int({sset.name})"
    max_level = sset.max_level
    objects = []
    dim = {}
    chain = {}
    for n in sorted(sset.levels):
        for x in sset.levels[n]:
            on = simplex_name(x)
            objects.append(on)
            dim[on] = n
            chain[on] = x
    morphisms = []
    mor_u = {}
    identities = {}
    base_mor_of = {}
    for on in objects:
        n = dim[on]
        x = chain[on]
        for m in range(n + 1):
            for u in combinations(range(n + 1), m + 1):
                y = _pullback(sset, n, x, u)
                yn = simplex_name(y)
                mn = f"{on}>{yn}|{','.join(map(str, u))}"
                morphisms.append(Mor(mn, on, yn))
                mor_u[mn] = u
                base_mor_of[mn] = f"[{n}]>[{m}]|{','.join(map(str, u))}"
                if m == n:
                    identities[on] = mn
    composition = {}
    for f in morphisms:
        uf = mor_u[f.name]
        for g in morphisms:
            if g.src != f.tgt:
                continue
            ug = mor_u[g.name]
            w = tuple(uf[j] for j in ug)
            composition[(g.name, f.name)] = f"{f.src}>{g.tgt}|{','.join(map(str, w))}"
    total = FinCat(name, objects, morphisms, identities, composition)
    if max_level < 0:
        base = FinCat("chains<=-1", (), (), {}, {})
        proj = Functor(f"proj[{name}]", total, base, {}, {})
    else:
        base, _ = simplex_index_category(max_level)
        proj = Functor(
            f"proj[{name}]",
            total,
            base,
            {on: f"[{dim[on]}]" for on in objects},
            base_mor_of,
        )
    return GrothendieckTotal(total, base, proj, dim, chain, mor_u)


# -- nerve packages ---------------------------------------------------------


@dataclass
class NervePackage:
    shape: FinCat
    mode: str
    truncation: object
    total: FinCat
    pi: Functor  # total -> shape
    base: FinCat
    base_projection: Functor
    groth: GrothendieckTotal  # always in the Dir orientation
    sset: SemiSimplicialSet

    @property
    def max_level(self):
        return self.groth.dim and max(self.groth.dim.values()) or 0

    def dim(self, obj):
        return self.groth.dim[obj]

    def chain_of(self, obj):
        return self.groth.chain[obj]

    def vertical_morphisms(self):
        """Morphisms of the total that pi maps to identities."""
        return tuple(
            m.name for m in self.total.morphisms if self.shape.is_identity(self.pi.mor(m.name))
        )


def _pi_dir(shape, groth):
    obj_map = {}
    mor_map = {}
    for on, x in groth.chain.items():
        obj_map[on] = x[0]
    for mn, u in groth.mor_u.items():
        src_chain = groth.chain[groth.total.src(mn)]
        mor_map[mn] = interval_composite(shape, src_chain, 0, u[0])
    return obj_map, mor_map


def _pi_inv(shape, groth):
    obj_map = {}
    mor_map = {}
    for on, x in groth.chain.items():
        obj_map[on] = chain_objects(shape, x)[-1]
    for mn, u in groth.mor_u.items():
        src_chain = groth.chain[groth.total.src(mn)]
        n = len(src_chain[1])
        mor_map[mn] = interval_composite(shape, src_chain, u[-1], n)
    return obj_map, mor_map


def build_N(shape, mode, truncation=None):
    """Assemble the nerve package for one of the four modes.

    Dir modes project a chain to its first vertex, Inv modes take the
    opposite total category and project to the last vertex.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if truncation is None:
        truncation = EXACT if is_reduced(mode) else 3
    if not is_reduced(mode) and truncation == EXACT:
        raise ValueError("full-mode nerves are infinite; choose a finite truncation")
    if is_reduced(mode):
        sset = reduced_nerve(shape, truncation)
    else:
        sset = semisimplicial_nerve(shape, truncation)
    groth = grothendieck_total(sset, name=f"N[{mode}]({shape.name})@{truncation}")
    if is_dir(mode):
        total = groth.total
        obj_map, mor_map = _pi_dir(shape, groth)
        base = groth.base
        base_projection = groth.proj
    else:
        total = opposite(groth.total)
        obj_map, mor_map = _pi_inv(shape, groth)
        base = opposite(groth.base)
        base_projection = Functor(
            f"proj[{total.name}]", total, base, dict(groth.proj.obj_map), dict(groth.proj.mor_map)
        )
    pi = Functor(f"pi[{total.name}]", total, shape, obj_map, mor_map)
    return NervePackage(shape, mode, truncation, total, pi, base, base_projection, groth, sset)


def _image_chain(alpha, simplex):
    o0, arrows = simplex
    return (alpha.ob(o0), tuple(alpha.mor(a) for a in arrows))


def _collapse(cat, simplex):
    """Drop identity steps from a chain; returns (chain, vertex relabelling)."""
    o0, arrows = simplex
    phi = [0]
    kept = []
    for a in arrows:
        if cat.is_identity(a):
            phi.append(phi[-1])
        else:
            kept.append(a)
            phi.append(phi[-1] + 1)
    return (o0, tuple(kept)), phi


def N_on_functor(alpha, mode, truncation=None, pkg_dom=None, pkg_cod=None, collapse=True):
    """The nerve construction applied to a functor, chain by chain.

    In reduced modes the image of an admissible chain may contain
    identity steps; with ``collapse`` enabled those steps are composed
    away (which keeps the construction functorial on identity-rigid
    categories), otherwise AdmissibilityLoss reports the witnessing
    simplex.  Strict naturality pi_J ∘ N(alpha) = alpha ∘ pi_I is
    verified before returning.
    """
    pkg_dom = pkg_dom or build_N(alpha.dom, mode, truncation)
    pkg_cod = pkg_cod or build_N(alpha.cod, mode, truncation)
    if pkg_dom.mode != pkg_cod.mode:
        raise ValueError("packages have different modes")
    J = alpha.cod
    reduced = is_reduced(mode)

    obj_map = {}
    phi_of = {}
    for on, x in pkg_dom.groth.chain.items():
        img = _image_chain(alpha, x)
        if reduced:
            if collapse:
                img, phi = _collapse(J, img)
            else:
                phi = list(range(len(x[1]) + 1))
                if not is_admissible(J, img):
                    raise AdmissibilityLoss(simplex_name(x), "(image chain hits identities)")
            if not is_admissible(J, img):
                raise AdmissibilityLoss(simplex_name(x), "(collapsed image still inadmissible)")
        else:
            phi = list(range(len(x[1]) + 1))
        yn = simplex_name(img)
        if yn not in pkg_cod.groth.chain:
            raise AdmissibilityLoss(simplex_name(x), "(image outside codomain truncation)")
        obj_map[on] = yn
        phi_of[on] = phi

    mor_map = {}
    for mn, u in pkg_dom.groth.mor_u.items():
        src = pkg_dom.groth.total.src(mn)
        tgt = pkg_dom.groth.total.tgt(mn)
        phi_src = phi_of[src]
        phi_tgt = phi_of[tgt]
        # image injection: one entry per collapsed vertex of the target chain
        seen = set()
        uprime = []
        for j, uj in enumerate(u):
            jprime = phi_tgt[j]
            if jprime in seen:
                continue
            seen.add(jprime)
            uprime.append(phi_src[uj])
        if any(b <= a for a, b in zip(uprime, uprime[1:])):
            raise AdmissibilityLoss(simplex_name(pkg_dom.groth.chain[src]), "(injection collapses)")
        target_name = f"{obj_map[src]}>{obj_map[tgt]}|{','.join(map(str, uprime))}"
        if not pkg_cod.groth.total.has_mor(target_name):
            raise AdmissibilityLoss(simplex_name(pkg_dom.groth.chain[src]), "(no image morphism)")
        mor_map[mn] = target_name

    functor = Functor(
        f"N[{mode}]({alpha.name})", pkg_dom.total, pkg_cod.total, obj_map, mor_map
    ).validate()
    left = functor.then(pkg_cod.pi)
    right = pkg_dom.pi.then(alpha)
    if not left.maps_equal(right):
        raise AdmissibilityLoss("naturality", f"pi∘N({alpha.name}) != {alpha.name}∘pi")
    return functor


# -- the zigzag functor -----------------------------------------------------


def initial_object(cat):
    for o in cat.objects:
        if all(len(cat.hom(o, x)) == 1 for x in cat.objects):
            return o
    return None


def final_object(cat):
    for o in cat.objects:
        if all(len(cat.hom(x, o)) == 1 for x in cat.objects):
            return o
    return None


@dataclass
class ZigzagData:
    package: NervePackage
    ambient: NervePackage  # same as package in exact mode, one level deeper otherwise
    xi: Functor  # package.total -> ambient.total
    incl: Functor  # canonical inclusion package.total -> ambient.total
    n_object: str
    p_then_n: Functor  # constant functor at n_object
    to_identity: NatTrans  # Dir: xi => incl; Inv: incl => xi
    to_extremum: NatTrans  # Dir: xi => n∘p; Inv: n∘p => xi


def _inclusion(pkg, ambient):
    return Functor(
        f"incl[{pkg.total.name}]",
        pkg.total,
        ambient.total,
        {o: o for o in pkg.total.objects},
        {m.name: m.name for m in pkg.total.morphisms},
    )


def zigzag(pkg, ambient=None):
    """The dimension-raising functor xi with its two transformations.

    Dir modes prepend the unique arrow out of the initial object (full
    mode always, reduced mode only on chains not already starting
    there); Inv modes dually append the arrow into the final object.
    """
    dir_mode = is_dir(pkg.mode)
    shape = pkg.shape
    extremal = initial_object(shape) if dir_mode else final_object(shape)
    if extremal is None:
        raise NoInitialObject(
            f"{shape.name} has no {'initial' if dir_mode else 'final'} object"
        )
    always = not is_reduced(pkg.mode)
    if pkg.truncation == EXACT:
        ambient = ambient or pkg
    else:
        if ambient is None:
            ambient = build_N(shape, pkg.mode, pkg.truncation + 1)
        if ambient.max_level < pkg.max_level + 1:
            raise TruncationTooSmall(
                f"need truncation {pkg.max_level + 1}, ambient has {ambient.max_level}"
            )

    groth_src = pkg.groth
    n_object = simplex_name((extremal, ()))

    def extended(x):
        o0, arrows = x
        if dir_mode:
            if always or o0 != extremal:
                return (extremal, (shape.hom(extremal, o0)[0],) + arrows), True
            return x, False
        last = chain_objects(shape, x)[-1]
        if always or last != extremal:
            return (o0, arrows + (shape.hom(last, extremal)[0],)), True
        return x, False

    obj_map = {}
    bumped = {}
    for on, x in groth_src.chain.items():
        y, did = extended(x)
        obj_map[on] = simplex_name(y)
        bumped[on] = did

    mor_map = {}
    for mn, u in groth_src.mor_u.items():
        src = groth_src.total.src(mn)
        tgt = groth_src.total.tgt(mn)
        bs, bt = bumped[src], bumped[tgt]
        if dir_mode:
            if bs and bt:
                up = (0,) + tuple(v + 1 for v in u)
            elif bs:
                up = tuple(v + 1 for v in u)
            elif bt:
                up = (0,) + tuple(u)  # chain already starts at the extremum
            else:
                up = tuple(u)
        else:
            n = len(groth_src.chain[src][1])
            if bt:
                up = tuple(u) + (n + (1 if bs else 0),)
            else:
                up = tuple(u)
        name = f"{obj_map[src]}>{obj_map[tgt]}|{','.join(map(str, up))}"
        if not ambient.groth.total.has_mor(name):
            raise TruncationTooSmall(f"xi image morphism {name} missing")
        mor_map[mn] = name

    source_total = pkg.total
    ambient_total = ambient.total
    xi = Functor(f"xi[{pkg.total.name}]", source_total, ambient_total, obj_map, mor_map).validate()
    incl = _inclusion(pkg, ambient)
    p_then_n = Functor(
        f"np[{pkg.total.name}]",
        source_total,
        ambient_total,
        {o: n_object for o in source_total.objects},
        {m.name: ambient_total.id_of(n_object) for m in source_total.morphisms},
    )

    to_identity_comps = {}
    to_extremum_comps = {}
    for on, x in groth_src.chain.items():
        n = len(x[1])
        xname = obj_map[on]
        if dir_mode:
            if bumped[on]:
                drop = tuple(range(1, n + 2))
                to_identity_comps[on] = f"{xname}>{on}|{','.join(map(str, drop))}"
            else:
                to_identity_comps[on] = ambient_total.id_of(on)
            to_extremum_comps[on] = f"{xname}>{n_object}|0"
        else:
            if bumped[on]:
                drop = tuple(range(0, n + 1))
                to_identity_comps[on] = f"{xname}>{on}|{','.join(map(str, drop))}"
                to_extremum_comps[on] = f"{xname}>{n_object}|{n + 1}"
            else:
                to_identity_comps[on] = ambient_total.id_of(on)
                to_extremum_comps[on] = f"{xname}>{n_object}|{n}"

    if dir_mode:
        to_identity = NatTrans("xi=>id", xi, incl, to_identity_comps).validate()
        to_extremum = NatTrans("xi=>np", xi, p_then_n, to_extremum_comps).validate()
    else:
        # in the opposite total the arrows reverse: incl => xi and np => xi
        to_identity = NatTrans("id=>xi", incl, xi, to_identity_comps).validate()
        to_extremum = NatTrans("np=>xi", p_then_n, xi, to_extremum_comps).validate()
    return ZigzagData(pkg, ambient, xi, incl, n_object, p_then_n, to_identity, to_extremum)


def xi_functor(pkg, ambient=None):
    """Dir-mode zigzag; the shape must have an initial object."""
    if not is_dir(pkg.mode):
        raise ValueError("xi_functor expects a Dir-type package; see zigzag() for both")
    return zigzag(pkg, ambient)
