"""The category file format and builtin shape resolution.

Layout (one identifier per token, no whitespace inside identifiers):

    CATEGORYFILE 1
    NAME mycat
    OBJECTS
    a
    b
    MORPHISMS
    f a b
    COMPOSITION
    g f h
    FUNCTOR alpha -> self
    OBJ a b
    MOR f id_b
    END

Identity morphisms are implicit as ``id_<object>``; COMPOSITION rows
read "g f h" for g∘f = h and identity entries may be omitted.  Export
is canonical (stable ordering), so files round-trip byte for byte.
"""

from dataclasses import dataclass, field

from .errors import ParseError
from .fincat import FinCat, Functor, Mor, validate_category
from .shapes import builtin

HEADER = "CATEGORYFILE 1"


@dataclass
class FunctorBlock:
    name: str
    target: str  # "self" or "builtin:<spec>"
    obj_map: dict = field(default_factory=dict)
    mor_map: dict = field(default_factory=dict)


@dataclass
class CategoryFileData:
    cat: FinCat
    functor_blocks: list

    def resolve_functor(self, block):
        cod = self.cat if block.target == "self" else builtin(block.target.split(":", 1)[1])
        mor_map = dict(block.mor_map)
        for obj, image in block.obj_map.items():
            mor_map.setdefault(self.cat.id_of(obj), cod.id_of(image))
        return Functor(block.name, self.cat, cod, block.obj_map, mor_map).validate()


def parse_category_file(text):
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0] != HEADER:
        raise ParseError(f"missing header {HEADER!r}")
    name = "category"
    objects, morphisms, composition = [], [], {}
    blocks = []
    section = None
    current = None
    for ln in lines[1:]:
        tokens = ln.split()
        head = tokens[0]
        if head == "NAME" and len(tokens) == 2:
            name = tokens[1]
            continue
        if head in ("OBJECTS", "MORPHISMS", "COMPOSITION", "END"):
            section = head
            current = None
            continue
        if head == "FUNCTOR":
            if len(tokens) != 4 or tokens[2] != "->":
                raise ParseError(f"bad FUNCTOR line: {ln!r}")
            current = FunctorBlock(tokens[1], tokens[3])
            blocks.append(current)
            section = "FUNCTOR"
            continue
        if section == "OBJECTS":
            if len(tokens) != 1:
                raise ParseError(f"bad object line: {ln!r}")
            objects.append(tokens[0])
        elif section == "MORPHISMS":
            if len(tokens) != 3:
                raise ParseError(f"bad morphism line: {ln!r}")
            morphisms.append((tokens[0], tokens[1], tokens[2]))
        elif section == "COMPOSITION":
            if len(tokens) != 3:
                raise ParseError(f"bad composition line: {ln!r}")
            composition[(tokens[0], tokens[1])] = tokens[2]
        elif section == "FUNCTOR":
            if head == "OBJ" and len(tokens) == 3:
                current.obj_map[tokens[1]] = tokens[2]
            elif head == "MOR" and len(tokens) == 3:
                current.mor_map[tokens[1]] = tokens[2]
            else:
                raise ParseError(f"bad functor assignment: {ln!r}")
        else:
            raise ParseError(f"line outside any section: {ln!r}")
    cat = validate_category(name, objects, morphisms, composition)
    return CategoryFileData(cat, blocks)


def canonical_identity_names(cat):
    """Rename identity morphisms to id_<object> for export."""
    rename = {}
    for obj, mid in cat.identities.items():
        rename[mid] = f"id_{obj}"
    morphisms = [Mor(rename.get(m.name, m.name), m.src, m.tgt) for m in cat.morphisms]
    identities = {o: rename[mid] for o, mid in cat.identities.items()}
    composition = {
        (rename.get(g, g), rename.get(f, f)): rename.get(h, h)
        for (g, f), h in cat.composition.items()
    }
    return FinCat(cat.name, cat.objects, morphisms, identities, composition)


def write_category_file(cat, functor_blocks=()):
    for tok in list(cat.objects) + [m.name for m in cat.morphisms]:
        if any(c.isspace() for c in tok):
            raise ParseError(f"identifier contains whitespace: {tok!r}")
    out = [HEADER, f"NAME {cat.name.replace(' ', '_')}"]
    out.append("OBJECTS")
    out.extend(cat.objects)
    out.append("MORPHISMS")
    idnames = set(cat.identities.values())
    for m in cat.morphisms:
        if m.name not in idnames:
            out.append(f"{m.name} {m.src} {m.tgt}")
    out.append("COMPOSITION")
    rows = []
    for (g, f), h in cat.composition.items():
        if g in idnames or f in idnames:
            continue
        rows.append(f"{g} {f} {h}")
    out.extend(sorted(rows))
    for block in functor_blocks:
        out.append(f"FUNCTOR {block.name} -> {block.target}")
        for a in sorted(block.obj_map):
            out.append(f"OBJ {a} {block.obj_map[a]}")
        for a in sorted(block.mor_map):
            out.append(f"MOR {a} {block.mor_map[a]}")
    out.append("END")
    return "\n".join(out) + "\n"


def load_category(spec):
    """A path, or ``builtin:<name>`` such as builtin:[2] or builtin:pt."""
    if spec.startswith("builtin:"):
        return CategoryFileData(builtin(spec.split(":", 1)[1]), [])
    with open(spec, "r", encoding="utf-8") as fh:
        return parse_category_file(fh.read())


def export_dot(pkg, out_path):
    """DOT rendering of a nerve total; vertical morphisms dashed."""
    from .nerve import chain_objects

    vertical = set(pkg.vertical_morphisms())
    lines = ["digraph nerve {", "  rankdir=BT;"]
    for o in pkg.total.objects:
        label = ",".join(chain_objects(pkg.shape, pkg.chain_of(o)))
        lines.append(f'  "{o}" [label="({label})"];')
    for m in pkg.total.morphisms:
        if pkg.total.is_identity(m.name):
            continue
        style = ' [style=dashed]' if m.name in vertical else ""
        lines.append(f'  "{m.src}" -> "{m.tgt}"{style};')
    lines.append("}")
    text = "\n".join(lines) + "\n"
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return text
