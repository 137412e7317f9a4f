import pytest

from nervebench.axiomcheck import (
    parallel_morphism_homotopy,
    verify_N1,
    verify_N2,
    verify_N3,
    verify_N4,
    verify_N5_zigzag,
)
from nervebench.derivator import lattice_target
from nervebench.fincat import (
    FinCat,
    Functor,
    fiber_of,
    identity_functor,
    object_pick,
)
from nervebench.intlinalg import smith_normal_form, solve_integer
from nervebench.nerve import (
    DIR_FULL,
    DIR_REDUCED,
    EXACT,
    INV_REDUCED,
    NervePackage,
    build_N,
    grothendieck_total,
    semisimplicial_nerve,
)
from nervebench.shapes import chain, parallel_pair, terminal_category, vee, wedge


def test_N1_examples():
    assert verify_N1(terminal_category(), DIR_REDUCED).verdict == "pass"
    assert verify_N1(chain(1), DIR_REDUCED).verdict == "pass"
    rep = verify_N1(chain(1), DIR_FULL, 2)
    assert rep.verdict == "inconclusive"
    assert "level 2" in rep.notes


def test_N2_examples():
    assert verify_N2(terminal_category(), terminal_category(), DIR_REDUCED).verdict == "pass"
    rep = verify_N2(chain(1), chain(2), DIR_REDUCED)
    assert rep.verdict == "pass"
    # 3 + 7 objects on both sides
    assert rep.witnesses["lhs_objects"] == rep.witnesses["rhs_objects"] == 10
    assert rep.witnesses["empty_nerve_objects"] == 0
    assert verify_N2(chain(1), chain(1), INV_REDUCED).verdict == "pass"


def test_N3_examples_and_fiber_contents():
    assert verify_N3(terminal_category(), DIR_REDUCED).verdict == "pass"
    pkg = build_N(chain(2), DIR_REDUCED)
    rep = verify_N3(pkg=pkg)
    assert rep.verdict == "pass"
    objs, _ = fiber_of(pkg.pi, "0")
    assert sorted(objs) == ["s0[0]", "s1[0.1]", "s1[0.2]", "s2[0.1.1.2]"]


def test_N3_fails_on_collapsed_discrete_fiber():
    # hand-built package: two-object discrete total collapsed to the point
    pt = terminal_category()
    total = FinCat(
        "disc2",
        ["a", "b"],
        [("id_a", "a", "a"), ("id_b", "b", "b")],
        {"a": "id_a", "b": "id_b"},
        {("id_a", "id_a"): "id_a", ("id_b", "id_b"): "id_b"},
    ).validate()
    pi = Functor("crush", total, pt, {"a": "*", "b": "*"}, {"id_a": "id_*", "id_b": "id_*"})
    fake = NervePackage(pt, DIR_REDUCED, EXACT, total, pi, None, None, None, None)
    rep = verify_N3(pkg=fake)
    assert rep.verdict == "fail"
    assert rep.witnesses["bad_fiber"] == "*"


def test_N4_identity_instances():
    pt = terminal_category()
    assert verify_N4(identity_functor(pt), "*", "right", DIR_REDUCED).verdict == "pass"
    rep = verify_N4(identity_functor(chain(1)), "0", "right", DIR_REDUCED)
    assert rep.verdict == "pass"
    assert rep.witnesses["nerve_of_comma_objects"] == 3
    assert rep.witnesses["comma_of_nerve_objects"] == 3


def test_N4_point_inclusion_both_orientations():
    pt = terminal_category()
    inc = object_pick(chain(1), "0", pt)
    left = verify_N4(inc, "1", "left", DIR_REDUCED)
    assert left.verdict == "pass" and left.witnesses["nerve_of_comma_objects"] == 1
    right = verify_N4(inc, "1", "right", DIR_REDUCED)
    assert right.verdict == "pass" and right.witnesses["nerve_of_comma_objects"] == 0


def test_N4_left_orientation_fails_in_dir_mode():
    # the opposite orientation belongs to the Inv construction: a
    # recorded, genuine failure rather than a bug
    rep = verify_N4(identity_functor(chain(2)), "0", "left", DIR_REDUCED)
    assert rep.verdict == "fail"
    rep_inv = verify_N4(identity_functor(chain(2)), "0", "left", INV_REDUCED)
    assert rep_inv.verdict == "pass"


def test_N5_on_dir_and_inv_shapes():
    two = lattice_target(1)
    assert verify_N5_zigzag(chain(1), DIR_REDUCED, target=two).verdict == "pass"
    assert verify_N5_zigzag(chain(2), DIR_REDUCED, target=two).verdict == "pass"
    assert verify_N5_zigzag(vee(), INV_REDUCED, target=two).verdict == "pass"
    assert verify_N5_zigzag(wedge(), DIR_REDUCED, target=two).verdict == "pass"
    rep = verify_N5_zigzag(terminal_category(), DIR_FULL, 2, target=two)
    assert rep.verdict == "inconclusive"
    assert rep.witnesses["xi_n"] == "s1[id_*]"


def test_N5_adjoint_agrees_with_brute_force_search():
    # oracle cross-check: the (N5 right) adjunction located by search
    from nervebench.derivator import (
        CartesianMarking,
        cart_functors,
        functor_category,
    )
    from nervebench.fincat import find_adjoint

    two = lattice_target(1)
    pkg = build_N(chain(1), DIR_REDUCED)
    marking = CartesianMarking.from_package(pkg)
    carts = cart_functors(marking, two)
    pres = functor_category(pkg.total, two, functors=carts)
    # p^*: C -> cart subcategory sends X to the constant diagram at X
    const_name = {}
    for f in carts:
        values = {f.ob(o) for o in pkg.total.objects}
        if len(values) == 1:
            const_name[values.pop()] = pres.name_of(f)
    p_star = Functor(
        "p*",
        two.cat,
        pres.fincat,
        {x: const_name[x] for x in two.cat.objects},
        {
            m.name: pres.fincat.hom(const_name[m.src], const_name[m.tgt])[0]
            for m in two.cat.morphisms
        },
    ).validate()
    found = find_adjoint(p_star, "right")
    assert found is not None
    # the right adjoint is evaluation at n = s0[0]
    for f in carts:
        assert found.functor.ob(pres.name_of(f)) == f.ob("s0[0]")


def test_parallel_homotopy_syntactic_and_nerve_instance():
    pt = terminal_category()
    g = grothendieck_total(semisimplicial_nerve(pt, 2))
    verdict = parallel_morphism_homotopy(g.total, "s1[id_*]>s0[*]|0", "s1[id_*]>s0[*]|0")
    assert verdict.verdict == "equal" and verdict.rounds == 0
    verdict = parallel_morphism_homotopy(g.total, "s1[id_*]>s0[*]|0", "s1[id_*]>s0[*]|1", depth=3)
    assert verdict.verdict == "equal"
    assert verdict.rounds <= 3
    assert verdict.certificate


def test_parallel_homotopy_distinct_free_pair():
    verdict = parallel_morphism_homotopy(parallel_pair(), "f", "g")
    assert verdict.verdict == "distinct"
    assert verdict.certificate == [("homology", "f", "g")]


def test_parallel_homotopy_all_pairs_in_truncated_point_nerve():
    pt = terminal_category()
    g = grothendieck_total(semisimplicial_nerve(pt, 3))
    for m1 in g.total.morphisms:
        for m2 in g.total.morphisms:
            if m1.name < m2.name and m1.src == m2.src and m1.tgt == m2.tgt:
                assert parallel_morphism_homotopy(g.total, m1.name, m2.name).verdict == "equal"


def test_homotopy_certificate_routes_are_consistent():
    # soundness cross-check: whenever congruence closure certifies
    # equality, the homology route must not certify distinctness
    from nervebench.intlinalg import solve_integer

    cats = [
        grothendieck_total(semisimplicial_nerve(terminal_category(), 2)).total,
        grothendieck_total(semisimplicial_nerve(chain(1), 2)).total,
    ]
    for cat in cats:
        names = [m.name for m in cat.morphisms]
        idx = {n: i for i, n in enumerate(names)}
        triangles = [(f, g, h) for (g, f), h in cat.composition.items()]
        matrix = [[0] * len(triangles) for _ in names]
        for col, (v, w, z) in enumerate(triangles):
            matrix[idx[v]][col] += 1
            matrix[idx[w]][col] += 1
            matrix[idx[z]][col] -= 1
        for m1 in cat.morphisms:
            for m2 in cat.morphisms:
                if m1.name < m2.name and m1.src == m2.src and m1.tgt == m2.tgt:
                    verdict = parallel_morphism_homotopy(cat, m1.name, m2.name)
                    if verdict.verdict == "equal":
                        vec = [0] * len(names)
                        vec[idx[m1.name]] += 1
                        vec[idx[m2.name]] -= 1
                        assert solve_integer(matrix, vec) is not None


def test_parallel_homotopy_rejects_non_parallel():
    g = grothendieck_total(semisimplicial_nerve(terminal_category(), 2))
    with pytest.raises(ValueError):
        parallel_morphism_homotopy(g.total, "s1[id_*]>s0[*]|0", "s2[id_*.id_*]>s0[*]|0")


# -- integer linear algebra -------------------------------------------------


def test_smith_normal_form_transforms():
    a = [[2, 4, 4], [-6, 6, 12], [10, 4, 16]]
    d, u, v = smith_normal_form(a)
    # u * a * v == d, and d is diagonal
    import itertools

    def matmul(x, y):
        return [
            [sum(x[i][k] * y[k][j] for k in range(len(y))) for j in range(len(y[0]))]
            for i in range(len(x))
        ]

    lhs = matmul(matmul(u, a), v)
    assert lhs == d
    for i, j in itertools.product(range(3), range(3)):
        if i != j:
            assert d[i][j] == 0


def test_solve_integer_membership():
    assert solve_integer([[2]], [4]) == [2]
    assert solve_integer([[2]], [3]) is None
    # b in the column span over Q but not over Z
    assert solve_integer([[2, 0], [0, 3]], [1, 0]) is None
    sol = solve_integer([[1, 2], [3, 4]], [5, 11])
    assert sol is not None
    assert [1 * sol[0] + 2 * sol[1], 3 * sol[0] + 4 * sol[1]] == [5, 11]
    # empty edge cases
    assert solve_integer([], []) == []
    assert solve_integer([[0, 0]], [1]) is None
