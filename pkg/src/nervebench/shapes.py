"""Canonical small shapes used throughout the suites."""

from .fincat import FinCat, Mor, validate_category


def poset_category(name, elements, leq):
    """The category of a finite poset; morphism a->b named "a.b"."""
    elements = list(elements)
    morphisms = []
    composition = {}
    identities = {}
    for a in elements:
        for b in elements:
            if leq(a, b):
                mn = f"id_{a}" if a == b else f"{a}.{b}"
                morphisms.append(Mor(mn, a, b))
                if a == b:
                    identities[a] = mn
    names = {(m.src, m.tgt): m.name for m in morphisms}
    for f in morphisms:
        for g in morphisms:
            if f.tgt == g.src:
                composition[(g.name, f.name)] = names[(f.src, g.tgt)]
    return FinCat(name, elements, morphisms, identities, composition).validate()


def empty_category():
    return FinCat("empty", (), (), {}, {})


def terminal_category():
    return poset_category("pt", ["*"], lambda a, b: True)


def chain(n):
    """The linear poset 0 < 1 < ... < n."""
    return poset_category(f"[{n}]", [str(i) for i in range(n + 1)], lambda a, b: int(a) <= int(b))


def vee():
    """Two minimal elements under a common top: a < c > b."""
    order = {("a", "c"), ("b", "c")}
    return poset_category("V", ["a", "b", "c"], lambda x, y: x == y or (x, y) in order)


def wedge():
    """One minimal element under two tops: a > c < b."""
    order = {("c", "a"), ("c", "b")}
    return poset_category("Wedge", ["a", "b", "c"], lambda x, y: x == y or (x, y) in order)


def square():
    """The commuting square poset (0,0) < (0,1),(1,0) < (1,1)."""
    els = ["00", "01", "10", "11"]

    def leq(a, b):
        return a[0] <= b[0] and a[1] <= b[1]

    return poset_category("square", els, leq)


def parallel_pair():
    """The free category on a double arrow a => b."""
    return validate_category(
        "parallel",
        ["a", "b"],
        [("f", "a", "b"), ("g", "a", "b")],
        {},
    )


def idempotent_monoid():
    """One object, one non-identity idempotent endomorphism."""
    return validate_category(
        "idem",
        ["*"],
        [("x", "*", "*")],
        {("x", "x"): "x"},
    )


def two_element_group():
    """One object, hom = Z/2."""
    return validate_category(
        "Z2",
        ["*"],
        [("s", "*", "*")],
        {("s", "s"): "id_*"},
    )


BUILTIN_BUILDERS = {
    "pt": terminal_category,
    "empty": empty_category,
    "V": vee,
    "Wedge": wedge,
    "square": square,
    "parallel": parallel_pair,
    "2": lambda: chain(1),
}


def builtin(name):
    """Resolve a builtin shape name such as ``pt``, ``[2]`` or ``square``."""
    if name in BUILTIN_BUILDERS:
        return BUILTIN_BUILDERS[name]()
    if name.startswith("[") and name.endswith("]"):
        return chain(int(name[1:-1]))
    if name.startswith("chain:"):
        return chain(int(name.split(":", 1)[1]))
    raise KeyError(f"unknown builtin shape {name!r}")
