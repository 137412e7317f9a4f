import pytest
from hypothesis import given, settings, strategies as st

from nervebench.errors import CategoryLawError, ShapeMismatch
from nervebench.fincat import (
    Functor,
    NatTrans,
    all_functors,
    all_nat_trans,
    check_adjunction,
    classify_category,
    cocartesian_lift,
    comma_category,
    coproduct,
    find_adjoint,
    functor_image_checks,
    identity_functor,
    is_isomorphism_of_categories,
    object_pick,
    opfibration_check,
    opposite,
    product,
    validate_category,
)
from nervebench.shapes import (
    chain,
    empty_category,
    idempotent_monoid,
    poset_category,
    square,
    terminal_category,
    two_element_group,
    vee,
    wedge,
)


def test_validate_terminal_and_interval():
    pt = terminal_category()
    assert len(pt.objects) == 1 and len(pt.morphisms) == 1
    c1 = chain(1)
    assert len(c1.objects) == 2 and len(c1.morphisms) == 3


def test_validate_reports_associativity_violation_with_witnesses():
    # a 3-step chain whose two bracketings of h∘g∘f disagree
    objects = ["a", "b", "c", "d"]
    morphisms = [
        ("f", "a", "b"),
        ("g", "b", "c"),
        ("h", "c", "d"),
        ("gf", "a", "c"),
        ("hg", "b", "d"),
        ("good", "a", "d"),
        ("bad", "a", "d"),
    ]
    composition = {
        ("g", "f"): "gf",
        ("h", "g"): "hg",
        ("h", "gf"): "bad",
        ("hg", "f"): "good",
    }
    with pytest.raises(CategoryLawError) as err:
        validate_category("broken", objects, morphisms, composition)
    witnessed = [v for v in err.value.violations if v.kind == "AssociativityViolation"]
    assert witnessed and witnessed[0].witnesses == ("f", "g", "h")


def test_validate_reports_missing_composite():
    objects = ["a", "b", "c"]
    morphisms = [("f", "a", "b"), ("g", "b", "c")]
    with pytest.raises(CategoryLawError) as err:
        validate_category("gap", objects, morphisms, {})
    assert any(v.kind == "MissingComposite" and v.witnesses == ("g", "f") for v in err.value.violations)


def test_opposite_involution_and_point():
    pt = terminal_category()
    assert opposite(pt).same_data(pt)
    c2 = chain(2)
    assert opposite(opposite(c2)).same_data(c2)
    op1 = opposite(chain(1))
    assert op1.hom("1", "0") and not op1.hom("0", "1")


def test_coproduct_counts():
    c1 = chain(1)
    both = coproduct(c1, c1)
    both.validate()
    assert len(both.objects) == 4 and len(both.morphisms) == 6
    with_empty = coproduct(c1, empty_category())
    assert len(with_empty.objects) == 2 and len(with_empty.morphisms) == 3


def test_product_counts_by_pair_enumeration():
    c1 = chain(1)
    prod, pr1, pr2 = product(c1, c1)
    prod.validate()
    pr1.validate()
    pr2.validate()
    # oracle: objects and morphisms are exactly pairs
    assert len(prod.objects) == len(c1.objects) ** 2 == 4
    assert len(prod.morphisms) == len(c1.morphisms) ** 2 == 9


def test_comma_point_and_slice():
    pt = terminal_category()
    c1 = chain(1)
    cc = comma_category(identity_functor(pt), identity_functor(pt))
    assert len(cc.total.objects) == 1
    slice1 = comma_category(identity_functor(c1), object_pick(c1, "1", pt))
    assert list(slice1.total.objects) == ["(0,*,0.1)", "(1,*,id_1)"]
    arrow = comma_category(identity_functor(c1), identity_functor(c1))
    arrow.total.validate()
    assert len(arrow.total.objects) == 3
    with pytest.raises(ShapeMismatch):
        comma_category(identity_functor(c1), identity_functor(pt))


def _cones_into(alpha, beta, test_shape):
    """All (functor pair, cell) triples from test_shape into the cospan."""
    out = []
    for h1 in all_functors(test_shape, alpha.dom):
        for h2 in all_functors(test_shape, beta.dom):
            for cell in all_nat_trans(h1.then(alpha), h2.then(beta)):
                out.append((h1, h2, cell))
    return out


@pytest.mark.parametrize("shape_builder", [terminal_category, lambda: chain(1)])
@pytest.mark.parametrize(
    "legs",
    [
        lambda: (identity_functor(chain(1)), identity_functor(chain(1))),
        lambda: (identity_functor(chain(1)), object_pick(chain(1), "1", terminal_category())),
        lambda: (
            object_pick(vee(), "a", terminal_category()),
            identity_functor(vee()),
        ),
    ],
)
def test_comma_universal_property(shape_builder, legs):
    alpha, beta = legs()
    # rebuild on shared codomain instances
    test_shape = shape_builder()
    cc = comma_category(alpha, beta)
    for (h1, h2, cell) in _cones_into(alpha, beta, test_shape):
        # the factorisation through the comma
        obj_map = {}
        for x in test_shape.objects:
            obj_map[x] = cc.obj_name(h1.ob(x), h2.ob(x), cell.at(x))
        mor_map = {}
        for m in test_shape.morphisms:
            mor_map[m.name] = cc.mor_name(
                h1.mor(m.name), h2.mor(m.name), obj_map[m.src], obj_map[m.tgt]
            )
        lift = Functor("lift", test_shape, cc.total, obj_map, mor_map)
        assert not lift.violations()
        assert lift.then(cc.pr1).maps_equal(h1)
        assert lift.then(cc.pr2).maps_equal(h2)
        # uniqueness: any functor with the same projections and cell equals lift
        others = [
            f
            for f in all_functors(test_shape, cc.total)
            if f.then(cc.pr1).maps_equal(h1)
            and f.then(cc.pr2).maps_equal(h2)
            and all(cc.obj_data[f.ob(x)][2] == cell.at(x) for x in test_shape.objects)
        ]
        assert len(others) == 1 and others[0].maps_equal(lift)


def test_classification_examples():
    flags = classify_category(chain(2))
    assert flags.is_poset and flags.is_identity_rigid and flags.is_connected
    assert flags.admits_increasing_degree and flags.admits_decreasing_degree

    idem = classify_category(idempotent_monoid())
    assert idem.is_identity_rigid and not idem.is_poset
    assert not idem.admits_increasing_degree and not idem.admits_decreasing_degree

    group = classify_category(two_element_group())
    assert not group.is_identity_rigid


def test_degree_flags_match_acyclicity():
    for poset in (chain(0), chain(3), vee(), wedge(), square()):
        flags = classify_category(poset)
        assert flags.admits_increasing_degree and flags.admits_decreasing_degree
    for cyclic in (idempotent_monoid(), two_element_group()):
        flags = classify_category(cyclic)
        assert not flags.admits_increasing_degree and not flags.admits_decreasing_degree


def test_functor_image_checks():
    c1 = chain(1)
    ok = functor_image_checks(identity_functor(c1))
    assert ok.surjective_on_objects and ok.surjective_on_morphisms and ok.all_fibers_connected
    inc = object_pick(c1, "0", terminal_category())
    bad = functor_image_checks(inc)
    assert not bad.surjective_on_objects


def test_is_isomorphism():
    c1 = chain(1)
    assert is_isomorphism_of_categories(identity_functor(c1))
    collapse = Functor(
        "collapse",
        c1,
        terminal_category(),
        {"0": "*", "1": "*"},
        {"id_0": "id_*", "id_1": "id_*", "0.1": "id_*"},
    )
    assert not is_isomorphism_of_categories(collapse)


def _diagonal_into_square():
    two = chain(1)
    prod, _, _ = product(two, two)
    return two, prod, Functor(
        "diag",
        two,
        prod,
        {x: f"({x},{x})" for x in two.objects},
        {m.name: f"({m.name},{m.name})" for m in two.morphisms},
    ).validate()


def test_find_adjoint_diagonal_join_meet():
    two, prod, diag = _diagonal_into_square()
    left = find_adjoint(diag, "left")
    right = find_adjoint(diag, "right")
    assert left.functor.obj_map == {"(0,0)": "0", "(0,1)": "1", "(1,0)": "1", "(1,1)": "1"}
    assert right.functor.obj_map == {"(0,0)": "0", "(0,1)": "0", "(1,0)": "0", "(1,1)": "1"}
    assert check_adjunction(left.functor, diag, left.unit, left.counit)
    assert check_adjunction(diag, right.functor, right.unit, right.counit)


def test_find_adjoint_identity_and_inclusion():
    c2 = chain(2)
    ident = find_adjoint(identity_functor(c2), "left")
    assert ident.functor.maps_equal(identity_functor(c2))
    sub = poset_category("zerotwo", ["0", "2"], lambda a, b: int(a) <= int(b))
    inc = Functor(
        "inc", sub, c2, {"0": "0", "2": "2"}, {"id_0": "id_0", "id_2": "id_2", "0.2": "0.2"}
    ).validate()
    assert find_adjoint(inc, "left").functor.ob("1") == "2"
    assert find_adjoint(inc, "right").functor.ob("1") == "0"


def test_check_adjunction_rejects_corrupted_unit():
    two, prod, diag = _diagonal_into_square()
    left = find_adjoint(diag, "left")
    bad = dict(left.unit.components)
    # corrupt the component at (0,1): replace the unit leg by an identity
    bad["(0,1)"] = prod.id_of("(0,1)")
    corrupted = NatTrans("bad", left.unit.dom, left.unit.cod, bad)
    assert corrupted.violations() or not check_adjunction(left.functor, diag, corrupted, left.counit)


def test_monad_from_left_adjoint_satisfies_monad_laws():
    from nervebench.derivator import MonadData, monad_from_adjunction, monad_laws_violations

    two, prod, diag = _diagonal_into_square()
    left = find_adjoint(diag, "left")
    t, unit, mu = monad_from_adjunction(left.functor, diag, left.unit, left.counit)
    assert not monad_laws_violations(MonadData(prod, t, unit, mu, tuple(prod.objects)))


def test_opfibration_examples():
    c1 = chain(1)
    pt = terminal_category()
    prod, pr1, pr2 = product(c1, c1)
    assert opfibration_check(pr2)
    under0 = comma_category(object_pick(c1, "0", pt), identity_functor(c1))
    assert opfibration_check(under0.pr2)
    lift = cocartesian_lift(under0.pr2, "0.1", "(*,0,id_0)")
    assert lift is not None and under0.total.tgt(lift) == "(*,1,0.1)"
    assert not opfibration_check(object_pick(c1, "0", pt))


# -- randomized structural properties ---------------------------------------


@st.composite
def small_posets(draw):
    n = draw(st.integers(min_value=1, max_value=4))
    edges = set()
    for i in range(n):
        for j in range(i + 1, n):
            if draw(st.booleans()):
                edges.add((i, j))
    # reachability closure gives a poset order on 0..n-1
    reach = {(i, i) for i in range(n)} | set(edges)
    changed = True
    while changed:
        changed = False
        for (a, b) in list(reach):
            for (c, d) in list(reach):
                if b == c and (a, d) not in reach:
                    reach.add((a, d))
                    changed = True
    els = [str(i) for i in range(n)]
    return poset_category(f"P{n}", els, lambda a, b: (int(a), int(b)) in reach)


@given(small_posets())
@settings(max_examples=25, deadline=None)
def test_random_poset_roundtrips(poset):
    poset.validate()
    assert opposite(opposite(poset)).same_data(poset)
    flags = classify_category(poset)
    assert flags.is_poset
    assert flags.admits_increasing_degree and flags.admits_decreasing_degree


@given(small_posets(), small_posets())
@settings(max_examples=10, deadline=None)
def test_random_comma_validates(p1, p2):
    pt = terminal_category()
    for x in p1.objects[:1]:
        cc = comma_category(object_pick(p1, x, pt), identity_functor(p1))
        cc.total.validate()
        cc.pr1.validate()
        cc.pr2.validate()
        cc.cell.validate()
