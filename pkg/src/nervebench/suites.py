"""Named verification suites over a shape, and the full acceptance battery."""

from .axiomcheck import (
    parallel_morphism_homotopy,
    verify_N1,
    verify_N2,
    verify_N3,
    verify_N4,
    verify_N5_zigzag,
)
from .derivator import (
    DEFAULT_BUDGET,
    CartesianMarking,
    MonadData,
    enlargement_E,
    fder3_fder4_check,
    functor_category,
    idempotent_monad_adjoint,
    is_pi_cartesian,
    lattice_target,
    left_right_comparison,
    opfib_fiberwise_check,
    projector_monad,
    projector_pullback_commutation,
    restriction_equivalence_check,
    transport_equivalence_check,
)
from .fincat import (
    Functor,
    all_functors,
    classify_category,
    comma_category,
    constant_functor,
    find_adjoint,
    full_subcategory,
    identity_functor,
    object_pick,
)
from .nerve import EXACT, MODES, build_N, grothendieck_total, is_dir, is_reduced, semisimplicial_nerve
from .reports import FAIL, PASS, VerificationReport, timed
from .shapes import chain, parallel_pair, square, terminal_category, vee, wedge


def default_truncation(mode):
    return EXACT if is_reduced(mode) else 3


def slice_instances(shape):
    """(alpha, j) pairs: identities with every base object, plus every
    slice and coslice projection with every base object."""
    pt = terminal_category()
    out = []
    for j in shape.objects:
        out.append((identity_functor(shape), j))
    for i in shape.objects:
        under = comma_category(object_pick(shape, i, pt), identity_functor(shape))
        q = under.pr2
        q.name = f"coslice[{i}]"
        over = comma_category(identity_functor(shape), object_pick(shape, i, pt))
        p = over.pr1
        p.name = f"slice[{i}]"
        for j in shape.objects:
            out.append((q, j))
            out.append((p, j))
    return out


def has_initial(shape):
    from .nerve import initial_object

    return initial_object(shape) is not None


def has_final(shape):
    from .nerve import final_object

    return final_object(shape) is not None


def axiom_suite(shape, mode, truncation=None, target=None, budget=DEFAULT_BUDGET):
    """N1 through N5 over the shape and its slice/coslice instances."""
    truncation = truncation if truncation is not None else default_truncation(mode)
    target = target or lattice_target(1)
    reports = []
    reports.append(verify_N1(shape, mode, truncation))
    reports.append(verify_N2(shape, shape, mode, truncation))
    reports.append(verify_N3(shape, mode, truncation))
    matched_side = "right" if is_dir(mode) else "left"
    other_side = "left" if is_dir(mode) else "right"
    for alpha, j in slice_instances(shape):
        reports.append(verify_N4(alpha, j, matched_side, mode, truncation))
        # the opposite orientation is recorded, not asserted: it belongs
        # to the dual construction and may legitimately fail here
        probe = verify_N4(alpha, j, other_side, mode, truncation)
        reports.append(
            VerificationReport(
                check="N4_orientation_probe",
                instance=probe.instance,
                verdict=PASS,
                truncation=probe.truncation,
                witnesses={"holds": probe.verdict, **probe.witnesses},
                notes=f"opposite orientation verdict: {probe.verdict}",
                seconds=probe.seconds,
            )
        )
    extremal_ok = has_initial(shape) if is_dir(mode) else has_final(shape)
    if extremal_ok:
        reports.append(verify_N5_zigzag(shape, mode, truncation, target, budget))
    else:
        reports.append(
            VerificationReport(
                check="N5",
                instance=f"{shape.name},{mode}",
                verdict=PASS,
                truncation=str(truncation),
                notes="vacuously satisfied: shape has no "
                + ("initial" if is_dir(mode) else "final")
                + " object",
            )
        )
    return reports


def enlarge_suite(shape, target, mode, truncation=None, functors=(), budget=DEFAULT_BUDGET):
    """Enlargement battery: counts, restriction equivalence, FDer checks,
    left/right comparison, and the product-transport equivalence."""
    truncation = truncation if truncation is not None else default_truncation(mode)
    pt = terminal_category()
    reports = []
    with timed() as tm:
        e = enlargement_E(shape, target, mode, truncation, budget)
        base = len(all_functors(shape, target.cat, budget))
    reports.append(
        VerificationReport(
            check="enlargement_count",
            instance=f"{shape.name},{mode},{target.cat.name}",
            verdict=PASS if e.object_count == base else FAIL,
            truncation=str(truncation),
            witnesses={
                "E_objects": e.object_count,
                "E_morphisms": e.morphism_count,
                "base_objects": base,
            },
            seconds=tm.seconds,
        )
    )
    flags = classify_category(shape)
    in_dia_prime = flags.is_poset if is_reduced(mode) else True
    in_dia_prime = in_dia_prime and (
        flags.admits_decreasing_degree if is_dir(mode) else flags.admits_increasing_degree
    )
    if in_dia_prime:
        reports.append(restriction_equivalence_check(shape, target, mode, truncation, budget))
    alphas = list(functors)
    if not alphas:
        collapse = constant_functor(shape, pt, "*")
        collapse.name = f"collapse[{shape.name}]"
        alphas.append(collapse)
        for j in shape.objects:
            alphas.append(object_pick(shape, j, pt))
    for alpha in alphas:
        reports.append(fder3_fder4_check(alpha, target, mode, truncation, budget))
    if flags.is_poset and truncation == EXACT:
        reports.append(left_right_comparison(shape, target, truncation=None, budget=budget))
    reports.append(transport_equivalence_check(shape, chain(1), target, mode, truncation, budget))
    return reports


ACCEPTANCE_SHAPES = ("[0]", "[1]", "[2]", "[3]", "V", "Wedge", "square")


def _shape(name):
    return {
        "[0]": lambda: chain(0),
        "[1]": lambda: chain(1),
        "[2]": lambda: chain(2),
        "[3]": lambda: chain(3),
        "V": vee,
        "Wedge": wedge,
        "square": square,
    }[name]()


def acceptance_battery(budget=DEFAULT_BUDGET, full_truncation=2):
    """Every acceptance criterion, as one flat list of reports."""
    two = lattice_target(1)
    pt = terminal_category()
    reports = []

    # 1: nerve counts against the chain-enumeration oracle
    for n in range(4):
        shape = chain(n)
        with timed() as tm:
            pkg = build_N(shape, "DirReduced", EXACT)
            chains = _enumerate_chains(shape)
            expected_objects = len(chains)
            expected_morphisms = sum(2 ** (len(c) ) - 1 for c in chains) - len(chains)
            ok = (
                len(pkg.total.objects) == expected_objects == 2 ** (n + 1) - 1
                and len(pkg.total.nonidentity_morphisms()) == expected_morphisms
            )
        reports.append(
            VerificationReport(
                check="nerve_counts",
                instance=f"[{n}]",
                verdict=PASS if ok else FAIL,
                witnesses={
                    "objects": len(pkg.total.objects),
                    "non_identity_morphisms": len(pkg.total.nonidentity_morphisms()),
                    "oracle_objects": expected_objects,
                    "oracle_morphisms": expected_morphisms,
                },
                seconds=tm.seconds,
            )
        )

    # 2: axiom suite on the shape battery
    for sname in ACCEPTANCE_SHAPES:
        shape = _shape(sname)
        for mode in MODES:
            trunc = EXACT if is_reduced(mode) else full_truncation
            for rep in axiom_suite(shape, mode, trunc, two, budget):
                reports.append(rep)

    # 3: parallel morphism homotopy
    with timed() as tm:
        g = grothendieck_total(semisimplicial_nerve(pt, 2))
        v1 = parallel_morphism_homotopy(g.total, "s1[id_*]>s0[*]|0", "s1[id_*]>s0[*]|1", depth=3)
        v2 = parallel_morphism_homotopy(parallel_pair(), "f", "g")
        ok = v1.verdict == "equal" and v1.rounds <= 3 and v2.verdict == "distinct"
    reports.append(
        VerificationReport(
            check="parallel_homotopy",
            instance="int N(pt,2); free double arrow",
            verdict=PASS if ok else FAIL,
            witnesses={"nerve_pair": v1.verdict, "rounds": v1.rounds, "free_pair": v2.verdict},
            seconds=tm.seconds,
        )
    )

    # 4: projector oracle agreement on Fun(N([1]), 2)
    reports.append(projector_oracle_agreement(chain(1), two, budget))

    # 5: closure operators on [2] and [3]
    for n in (2, 3):
        reports.append(closure_operator_battery(chain(n)))

    # 6-8: enlargement, FDer, left/right
    for sname in ("[0]", "[1]", "[2]", "[3]", "V", "Wedge"):
        shape = _shape(sname)
        e = enlargement_E(shape, two, "DirReduced", EXACT, budget)
        base = len(all_functors(shape, two.cat, budget))
        reports.append(
            VerificationReport(
                check="enlargement_count",
                instance=f"{sname},DirReduced",
                verdict=PASS if e.object_count == base else FAIL,
                witnesses={"E_objects": e.object_count, "base_objects": base},
            )
        )
        reports.append(restriction_equivalence_check(shape, two, "DirReduced", EXACT, budget))
    for alpha in _acceptance_alphas():
        reports.append(fder3_fder4_check(alpha, two, "DirReduced", EXACT, budget))
    for sname in ("pt", "[1]", "[2]", "V"):
        shape = terminal_category() if sname == "pt" else _shape(sname)
        reports.append(left_right_comparison(shape, two, budget=budget))

    # 9: opfibration lemmas
    for rep in opfibration_battery(two, budget):
        reports.append(rep)
    return reports


def _enumerate_chains(shape):
    """All nonempty strictly increasing chains of a finite poset (oracle)."""
    chains = [[o] for o in shape.objects]
    out = [tuple(c) for c in chains]
    while chains:
        nxt = []
        for c in chains:
            last = c[-1]
            for m in shape.out_of(last):
                if not shape.is_identity(m):
                    nxt.append(c + [shape.tgt(m)])
        chains = nxt
        out.extend(tuple(c) for c in chains)
    return out


def _acceptance_alphas():
    pt = terminal_category()
    c1, c2 = chain(1), chain(2)
    collapse = constant_functor(c1, pt, "*")
    collapse.name = "collapse[1]->pt"
    alphas = [collapse, object_pick(c1, "0", pt), object_pick(c1, "1", pt)]
    for a, b in (("0", "1"), ("0", "2"), ("1", "2")):
        alphas.append(
            Functor(
                f"inj[{a}{b}]",
                c1,
                c2,
                {"0": a, "1": b},
                {"id_0": f"id_{a}", "id_1": f"id_{b}", "0.1": f"{a}.{b}"},
            ).validate()
        )
    return alphas


def projector_oracle_agreement(shape, target, budget=DEFAULT_BUDGET):
    """pi^* pi_! against the brute-force left adjoint to the cart inclusion
    (and dually pi^* pi_*), object by object."""
    with timed() as tm:
        pkg = build_N(shape, "DirReduced", EXACT)
        marking = CartesianMarking.from_package(pkg)
        pres = functor_category(pkg.total, target, budget=budget)
        carts = [f for f in pres.functors if is_pi_cartesian(f, marking)]
        cart_names = tuple(pres.name_of(f) for f in carts)
        ok = True
        notes = []

        t_left, unit, mu, _ = projector_monad(pres, marking, target, "left")
        verdict = idempotent_monad_adjoint(
            MonadData(pres.fincat, t_left, unit, mu, cart_names)
        )
        if not verdict.ok:
            ok = False
            notes.append("left projector monad fails the reflection test")
        sub = full_subcategory(pres.fincat, cart_names)
        incl = Functor(
            "incl",
            sub,
            pres.fincat,
            {o: o for o in sub.objects},
            {m.name: m.name for m in sub.morphisms},
        ).validate()
        brute_left = find_adjoint(incl, "left", budget=10**7)
        if brute_left is None or any(
            brute_left.functor.ob(o) != t_left.ob(o) for o in pres.fincat.objects
        ):
            ok = False
            notes.append("brute-force left adjoint disagrees with pi*pi_!")

        t_right, counit, _, _ = projector_monad(pres, marking, target, "right")
        brute_right = find_adjoint(incl, "right", budget=10**7)
        if brute_right is None or any(
            brute_right.functor.ob(o) != t_right.ob(o) for o in pres.fincat.objects
        ):
            ok = False
            notes.append("brute-force right adjoint disagrees with pi*pi_*")
        witnesses = {
            "diagrams": len(pres.functors),
            "cart_diagrams": len(carts),
            "left_table": {o: t_left.ob(o) for o in pres.fincat.objects},
            "right_table": {o: t_right.ob(o) for o in pres.fincat.objects},
        }
    return VerificationReport(
        check="projector_oracle",
        instance=f"{shape.name},{target.cat.name}",
        verdict=PASS if ok else FAIL,
        witnesses=witnesses,
        notes="; ".join(notes),
        seconds=tm.seconds,
    )


def enumerate_closure_operators(poset):
    """All inflationary idempotent monotone self-maps (exhaustive oracle)."""
    out = []
    for f in all_functors(poset, poset):
        if all(poset.hom(x, f.ob(x)) for x in poset.objects) and all(
            f.ob(f.ob(x)) == f.ob(x) for x in poset.objects
        ):
            out.append(f)
    return out


def closure_operator_battery(poset):
    """Criterion: every closure operator passes the idempotent-monad test."""
    from .fincat import NatTrans

    with timed() as tm:
        ops = enumerate_closure_operators(poset)
        ok = True
        notes = []
        for t in ops:
            u = NatTrans(
                "u",
                identity_functor(poset),
                t,
                {x: poset.hom(x, t.ob(x))[0] for x in poset.objects},
            ).validate()
            mu = NatTrans(
                "mu",
                t.then(t),
                t,
                {x: poset.id_of(t.ob(x)) for x in poset.objects},
            ).validate()
            sub = tuple(sorted({t.ob(x) for x in poset.objects}))
            verdict = idempotent_monad_adjoint(MonadData(poset, t, u, mu, sub))
            if not verdict.ok:
                ok = False
                notes.append(f"closure {t.obj_map} fails ({verdict.failed_hypothesis})")
    return VerificationReport(
        check="closure_operators",
        instance=poset.name,
        verdict=PASS if ok else FAIL,
        witnesses={"count": len(ops)},
        notes="; ".join(notes),
        seconds=tm.seconds,
    )


def opfibration_battery(target, budget=DEFAULT_BUDGET):
    """Criterion 9: fiberwise Kan extensions and projector commutation on
    slice projections of [1], [2] and the product projection."""
    from .fincat import product as cat_product

    pt = terminal_category()
    reports = []
    instances = []
    for n in (1, 2):
        shape = chain(n)
        for i in shape.objects:
            cc = comma_category(object_pick(shape, i, pt), identity_functor(shape))
            q = cc.pr2
            q.name = f"slice[{shape.name}@{i}]"
            instances.append(q)
    prod, _, pr2 = cat_product(chain(1), chain(1))
    pr2.name = "pr2[[1]x[1]]"
    instances.append(pr2)
    for q in instances:
        with timed() as tm:
            ok = True
            notes = []
            for diagram in all_functors(q.dom, target.cat, budget):
                rep = opfib_fiberwise_check(q, diagram, target, budget)
                if not rep.passed:
                    ok = False
                    notes.append(rep.notes)
        reports.append(
            VerificationReport(
                check="opfib_fiberwise",
                instance=q.name,
                verdict=PASS if ok else FAIL,
                notes="; ".join(notes),
                seconds=tm.seconds,
            )
        )
        reports.append(projector_pullback_commutation(q, target, "DirReduced", EXACT, budget))
    return reports


def summarize(reports):
    counts = {"pass": 0, "fail": 0, "inconclusive": 0}
    for r in reports:
        counts[r.verdict] = counts.get(r.verdict, 0) + 1
    return counts


def exit_code(reports):
    counts = summarize(reports)
    if counts.get("fail"):
        return 1
    if counts.get("inconclusive"):
        return 2
    return 0
