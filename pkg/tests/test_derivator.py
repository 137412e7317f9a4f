import pytest

from nervebench.derivator import (
    CartesianMarking,
    KanOps,
    MonadData,
    TargetCategory,
    cart_functors,
    cartesian_projector_left,
    cartesian_projector_right,
    colimit,
    enlargement_E,
    fder3_fder4_check,
    functor_category,
    idempotent_monad_adjoint,
    is_pi_cartesian,
    lattice_target,
    left_kan,
    left_right_comparison,
    limit,
    opfib_fiberwise_check,
    projector_monad,
    projector_pullback_commutation,
    restriction_equivalence_check,
    right_kan,
    transport_equivalence_check,
)
from nervebench.errors import EnumerationBudget, NotOpfibration
from nervebench.fincat import (
    Functor,
    NatTrans,
    all_functors,
    all_nat_trans,
    comma_category,
    constant_functor,
    find_adjoint,
    full_subcategory,
    identity_functor,
    natural_isos,
    object_pick,
    validate_category,
)
from nervebench.nerve import DIR_REDUCED, INV_REDUCED, build_N
from nervebench.shapes import chain, terminal_category, vee

TWO = lattice_target(1)
THREE = lattice_target(2)


def monotone(shape, assignment, target=TWO):
    mor = {
        m.name: target.leq_mor[(assignment[m.src], assignment[m.tgt])] for m in shape.morphisms
    }
    return Functor(f"mono{assignment}", shape, target.cat, dict(assignment), mor).validate()


def test_lattice_detection():
    assert TWO.is_lattice and TWO.top == "1" and TWO.bottom == "0"
    disc = TargetCategory.from_cat(validate_category("disc", ["a", "b"], [], {}))
    assert not disc.is_lattice


def test_empty_diagram_limits():
    from nervebench.shapes import empty_category

    empty = Functor("e", empty_category(), TWO.cat, {}, {})
    assert limit(empty, TWO) == ("1", {})
    assert colimit(empty, TWO) == ("0", {})


def test_span_colimit_is_join_everywhere():
    v = vee()
    for a in ("0", "1"):
        for b in ("0", "1"):
            diagram = monotone(v, {"a": a, "b": b, "c": "1"})
            apex, _ = colimit(diagram, TWO)
            assert apex == TWO.join_all([a, b, "1"])
            lattice_apex, _ = TWO.colimit(diagram)
            assert apex == lattice_apex


def test_missing_product_in_discrete_category():
    disc_cat = validate_category("disc", ["a", "b"], [], {})
    disc = TargetCategory.from_cat(disc_cat)
    diagram = identity_functor(disc_cat)
    assert limit(diagram, disc) is None


def test_lattice_certificates_match_enumeration_oracle():
    for target in (TWO, THREE):
        for shape in (chain(2), vee()):
            for f in all_functors(shape, target.cat):
                assert target.colimit(f)[0] == target.colimit_enumerated(f)[0]
                assert target.limit(f)[0] == target.limit_enumerated(f)[0]


def test_kan_extension_examples():
    pt = terminal_category()
    c1 = chain(1)
    ident = left_kan(identity_functor(c1), monotone(c1, {"0": "0", "1": "1"}), TWO)
    assert ident.ob("0") == "0" and ident.ob("1") == "1"
    pick0 = object_pick(c1, "0", pt)
    for v in ("0", "1"):
        diagram = constant_functor(pt, TWO.cat, v)
        lk = left_kan(pick0, diagram, TWO)
        rk = right_kan(pick0, diagram, TWO)
        assert (lk.ob("0"), lk.ob("1")) == (v, v)
        assert (rk.ob("0"), rk.ob("1")) == (v, "1")  # empty limit = top
    collapse = constant_functor(c1, pt, "*")
    for a, b in (("0", "0"), ("0", "1"), ("1", "1")):
        lk = left_kan(collapse, monotone(c1, {"0": a, "1": b}), TWO)
        assert lk.ob("*") == TWO.join[(a, b)]


def test_kan_adjunction_hom_bijection_exhaustive():
    pt = terminal_category()
    c1 = chain(1)
    alphas = [
        object_pick(c1, "0", pt),
        object_pick(c1, "1", pt),
        constant_functor(c1, pt, "*"),
        identity_functor(c1),
    ]
    for target in (TWO, THREE):
        for alpha in alphas:
            kan = KanOps(alpha, target)
            for f in all_functors(alpha.dom, target.cat):
                lan, _ = kan.left_kan(f)
                for g in all_functors(alpha.cod, target.cat):
                    up = all_nat_trans(lan, g)
                    down = all_nat_trans(f, alpha.then(g))
                    assert len(up) == len(down)


def test_kan_adjunction_along_projection_of_seven_object_nerve():
    # the projection of N([2]) hits the "shapes up to 7 objects" bound
    pkg = build_N(chain(2), DIR_REDUCED)
    kan = KanOps(pkg.pi, TWO)
    diagrams = all_functors(pkg.total, TWO.cat)
    bases = all_functors(chain(2), TWO.cat)
    for f in diagrams:
        lan, _ = kan.left_kan(f)
        for g in bases:
            up = all_nat_trans(lan, g)
            down = all_nat_trans(f, pkg.pi.then(g))
            assert len(up) == len(down)


def test_is_pi_cartesian_examples():
    pkg = build_N(chain(1), DIR_REDUCED)
    marking = CartesianMarking.from_package(pkg)
    assert not marking.violations()
    constant = constant_functor(pkg.total, TWO.cat, "0")
    assert is_pi_cartesian(constant, marking)
    bad = monotone(
        pkg.total, {"s1[0.1]": "0", "s0[0]": "1", "s0[1]": "0"}
    )
    assert not is_pi_cartesian(bad, marking)
    good = monotone(pkg.total, {"s1[0.1]": "0", "s0[0]": "0", "s0[1]": "1"})
    assert is_pi_cartesian(good, marking)


def test_projector_values_on_spec_instance():
    pkg = build_N(chain(1), DIR_REDUCED)
    marking = CartesianMarking.from_package(pkg)
    left = cartesian_projector_left(marking, TWO)
    right = cartesian_projector_right(marking, TWO)
    f = monotone(pkg.total, {"s1[0.1]": "0", "s0[0]": "1", "s0[1]": "0"})
    lf = left.apply(f)
    assert {o: lf.ob(o) for o in pkg.total.objects} == {
        "s1[0.1]": "1",
        "s0[0]": "1",
        "s0[1]": "1",
    }
    rf = right.apply(f)
    assert {o: rf.ob(o) for o in pkg.total.objects} == {
        "s1[0.1]": "0",
        "s0[0]": "0",
        "s0[1]": "0",
    }


def test_projector_laws():
    pkg = build_N(chain(1), DIR_REDUCED)
    marking = CartesianMarking.from_package(pkg)
    left = cartesian_projector_left(marking, TWO)
    for f in all_functors(pkg.total, TWO.cat):
        bf = left.apply(f)
        assert is_pi_cartesian(bf, marking)
        unit = left.unit(f)
        assert unit.is_componentwise_iso() == is_pi_cartesian(f, marking)
        again = left.apply(bf)
        assert bf.maps_equal(again) or natural_isos(bf, again)


def test_projector_monad_reflection_and_brute_force_agreement():
    pkg = build_N(chain(1), DIR_REDUCED)
    marking = CartesianMarking.from_package(pkg)
    pres = functor_category(pkg.total, TWO)
    carts = tuple(
        pres.name_of(f) for f in pres.functors if is_pi_cartesian(f, marking)
    )
    t, u, mu, _ = projector_monad(pres, marking, TWO, "left")
    verdict = idempotent_monad_adjoint(MonadData(pres.fincat, t, u, mu, carts))
    assert verdict.ok
    sub = full_subcategory(pres.fincat, carts)
    incl = Functor(
        "incl", sub, pres.fincat,
        {o: o for o in sub.objects}, {m.name: m.name for m in sub.morphisms},
    ).validate()
    brute = find_adjoint(incl, "left")
    assert all(brute.functor.ob(o) == t.ob(o) for o in pres.fincat.objects)


def test_projector_reflection_on_more_instances():
    # the definitional contract (adjoint to the inclusion) on a bigger
    # shape and on a taller lattice
    for shape, target in ((chain(2), TWO), (chain(1), THREE)):
        pkg = build_N(shape, DIR_REDUCED)
        marking = CartesianMarking.from_package(pkg)
        pres = functor_category(pkg.total, target)
        carts = tuple(
            pres.name_of(f) for f in pres.functors if is_pi_cartesian(f, marking)
        )
        t, u, mu, _ = projector_monad(pres, marking, target, "left")
        verdict = idempotent_monad_adjoint(MonadData(pres.fincat, t, u, mu, carts))
        assert verdict.ok, f"{shape.name}/{target.cat.name}"
        # dual: the right projector is a comonad whose dual reflection holds
        t2, c2, _, proj2 = projector_monad(pres, marking, target, "right")
        for f in pres.functors:
            boxed = proj2.apply(f)
            assert is_pi_cartesian(boxed, marking)
            counit = proj2.counit(f)
            assert counit.is_componentwise_iso() == is_pi_cartesian(f, marking)


def test_idempotent_monad_examples():
    c2 = chain(2)
    t = identity_functor(c2)
    u = NatTrans("u", t, t, {x: c2.id_of(x) for x in c2.objects})
    mu = NatTrans("mu", t, t, {x: c2.id_of(x) for x in c2.objects})
    verdict = idempotent_monad_adjoint(MonadData(c2, t, u, mu, tuple(c2.objects)))
    assert verdict.ok

    # closure operator with closed set {0, 2}: sends 1 to 2
    closure = Functor(
        "cl", c2, c2,
        {"0": "0", "1": "2", "2": "2"},
        {"id_0": "id_0", "id_1": "id_2", "id_2": "id_2",
         "0.1": "0.2", "0.2": "0.2", "1.2": "id_2"},
    ).validate()
    u = NatTrans("u", identity_functor(c2), closure,
                 {"0": "id_0", "1": "1.2", "2": "id_2"}).validate()
    mu = NatTrans("mu", closure.then(closure), closure,
                  {x: c2.id_of(closure.ob(x)) for x in c2.objects}).validate()
    verdict = idempotent_monad_adjoint(MonadData(c2, closure, u, mu, ("0", "2")))
    assert verdict.ok
    from nervebench.fincat import check_adjunction

    assert check_adjunction(verdict.left_adjoint, verdict.inclusion, verdict.unit, verdict.counit)

    # same data but the subcategory misses the image of 0
    verdict = idempotent_monad_adjoint(MonadData(c2, closure, u, mu, ("2",)))
    assert not verdict.ok and verdict.failed_hypothesis == 1 and verdict.witness == "0"


def test_enlargement_counts():
    for shape, expected in ((terminal_category(), 2), (chain(1), 3), (chain(2), 4)):
        e = enlargement_E(shape, TWO, DIR_REDUCED)
        assert e.object_count == expected
        assert e.object_count == len(all_functors(shape, TWO.cat))


def test_enlargement_matches_monotone_maps_on_four_element_posets():
    # every poset with at most 4 elements in the suite's repertoire
    from nervebench.shapes import square, wedge

    for shape in (square(), vee(), wedge(), chain(3)):
        e = enlargement_E(shape, TWO, DIR_REDUCED)
        assert e.object_count == len(all_functors(shape, TWO.cat))


def test_restriction_equivalence_hom_counts():
    rep = restriction_equivalence_check(chain(1), TWO, DIR_REDUCED)
    assert rep.passed
    assert rep.witnesses == {"E_objects": 3, "base_objects": 3}
    assert restriction_equivalence_check(chain(2), TWO, INV_REDUCED).passed


def test_fder_checks_examples():
    pt = terminal_category()
    c1 = chain(1)
    assert fder3_fder4_check(identity_functor(c1), TWO, DIR_REDUCED).passed
    collapse = constant_functor(c1, pt, "*")
    rep = fder3_fder4_check(collapse, TWO, DIR_REDUCED)
    assert rep.passed
    assert fder3_fder4_check(object_pick(c1, "0", pt), TWO, DIR_REDUCED).passed


def test_fder_pointwise_value_is_join():
    # E(alpha)_! of the cart object (a, a, b) along [1] -> pt is a ∨ b
    pt = terminal_category()
    c1 = chain(1)
    collapse = constant_functor(c1, pt, "*")
    pkg1 = build_N(c1, DIR_REDUCED)
    pkgpt = build_N(pt, DIR_REDUCED)
    from nervebench.nerve import N_on_functor

    nalpha = N_on_functor(collapse, DIR_REDUCED, pkg_dom=pkg1, pkg_cod=pkgpt)
    marking_pt = CartesianMarking.from_package(pkgpt)
    proj = cartesian_projector_left(marking_pt, TWO)
    kan = KanOps(nalpha, TWO)
    for a, b in (("0", "0"), ("0", "1"), ("1", "1")):
        cart = monotone(pkg1.total, {"s1[0.1]": a, "s0[0]": a, "s0[1]": b})
        lan, _ = kan.left_kan(cart)
        boxed = proj.apply(lan)
        assert boxed.ob("s0[*]") == TWO.join[(a, b)]


def test_transport_and_left_right():
    pt = terminal_category()
    assert transport_equivalence_check(pt, chain(1), TWO, DIR_REDUCED).passed
    rep = transport_equivalence_check(chain(1), chain(1), TWO, DIR_REDUCED)
    assert rep.passed
    # oracle: both cart subcategories match Fun([1]x[1], 2)
    from nervebench.fincat import product

    grid, _, _ = product(chain(1), chain(1))
    base_count = len(all_functors(grid, TWO.cat))
    assert rep.witnesses["cart_NIxJ"] == rep.witnesses["cart_NIJ"] == base_count == 6
    for shape in (pt, chain(1), vee()):
        rep = left_right_comparison(shape, TWO)
        assert rep.passed
        assert rep.witnesses["cart_inv"] == rep.witnesses["cart_dir"]


def test_any_fiber_object_over_the_extremum_computes_the_adjoint():
    # on cart diagrams every object over the extremal vertex evaluates
    # alike, and that common value is the limit (Dir: n* is a right
    # adjoint) resp. the colimit (Inv: n* is a left adjoint)
    from nervebench.nerve import final_object, initial_object

    for shape in (chain(1), chain(2)):
        pkg = build_N(shape, DIR_REDUCED)
        marking = CartesianMarking.from_package(pkg)
        i = initial_object(shape)
        fiber = [o for o in pkg.total.objects if pkg.pi.ob(o) == i]
        assert len(fiber) >= 2
        for f in cart_functors(marking, TWO):
            values = {f.ob(o) for o in fiber}
            assert len(values) == 1
            apex, _ = TWO.limit(f)
            assert values == {apex}

        inv = build_N(shape, INV_REDUCED)
        marking_inv = CartesianMarking.from_package(inv)
        t = final_object(shape)
        fiber_inv = [o for o in inv.total.objects if inv.pi.ob(o) == t]
        assert len(fiber_inv) >= 2
        for f in cart_functors(marking_inv, TWO):
            values = {f.ob(o) for o in fiber_inv}
            assert len(values) == 1
            apex, _ = TWO.colimit(f)
            assert values == {apex}


def test_left_right_on_square_poset():
    from nervebench.shapes import square

    rep = left_right_comparison(square(), TWO)
    assert rep.passed
    assert rep.witnesses["cart_inv"] == rep.witnesses["cart_dir"] == 6


def test_enlargement_on_identity_rigid_non_poset():
    # the free double arrow lives in Cat° without being a poset; the
    # whole battery still applies in the reduced modes
    from nervebench.shapes import parallel_pair

    pp = parallel_pair()
    e = enlargement_E(pp, TWO, DIR_REDUCED)
    assert e.object_count == len(all_functors(pp, TWO.cat)) == 3
    assert restriction_equivalence_check(pp, TWO, DIR_REDUCED).passed
    collapse = constant_functor(pp, terminal_category(), "*")
    assert fder3_fder4_check(collapse, TWO, DIR_REDUCED).passed


def test_opfib_fiberwise_and_sections():
    pt = terminal_category()
    c1 = chain(1)
    under0 = comma_category(object_pick(c1, "0", pt), identity_functor(c1))
    q = under0.pr2
    for diagram in all_functors(q.dom, TWO.cat):
        assert opfib_fiberwise_check(q, diagram, TWO).passed
    ident = identity_functor(c1)
    for diagram in all_functors(c1, TWO.cat):
        assert opfib_fiberwise_check(ident, diagram, TWO).passed
    with pytest.raises(NotOpfibration):
        opfib_fiberwise_check(object_pick(c1, "0", pt), constant_functor(pt, TWO.cat, "0"), TWO)


def test_projector_pullback_commutation_instances():
    pt = terminal_category()
    for shape, i in ((chain(1), "0"), (chain(2), "0")):
        under = comma_category(object_pick(shape, i, pt), identity_functor(shape))
        q = under.pr2
        q.name = f"slice[{shape.name}@{i}]"
        rep = projector_pullback_commutation(q, TWO, DIR_REDUCED)
        assert rep.passed
    # the [1]@0 instance compares composites on every diagram of Fun(N([1]), 2)
    under = comma_category(object_pick(chain(1), "0", pt), identity_functor(chain(1)))
    rep = projector_pullback_commutation(under.pr2, TWO, DIR_REDUCED)
    assert rep.witnesses["diagrams"] == 5


def test_non_poset_target_paths():
    # the walking isomorphism: a groupoid target exercises the
    # enumeration fallbacks that lattice targets never touch
    iso_cat = validate_category(
        "walkiso",
        ["a", "b"],
        [("f", "a", "b"), ("g", "b", "a")],
        {("g", "f"): "id_a", ("f", "g"): "id_b"},
    )
    target = TargetCategory.from_cat(iso_cat)
    assert not target.is_lattice
    pkg = build_N(chain(1), DIR_REDUCED)
    marking = CartesianMarking.from_package(pkg)
    carts = cart_functors(marking, target)
    # all hom-sets are singletons, so functors = object assignments,
    # and every morphism lands on an isomorphism
    assert len(carts) == 2 ** len(pkg.total.objects) == 8
    diagram = identity_functor(iso_cat)
    apex, legs = target.limit_enumerated(diagram)
    assert apex in ("a", "b") and set(legs) == {"a", "b"}


def test_enumeration_budget_raises():
    pkg = build_N(chain(2), DIR_REDUCED)
    with pytest.raises(EnumerationBudget):
        cart_functors(CartesianMarking.from_package(pkg), TWO, budget=2)
