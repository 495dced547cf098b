"""Built-in example data: the small finite convolution category and friends.

These builders back the shipped problem files and the test corpus.  `c2conv`
is the two-object convolution category on the group of order two: objects are
the group elements, the object product is the group law, and every hom space
is one-dimensional with composition given by concatenation.
"""

from __future__ import annotations

from .category import CategoryPresentation, Representation
from .field import Field
from .matrix import Matrix


def c2_convolution_category(field: Field) -> CategoryPresentation:
    objs = ("e", "g")
    mul = {("e", "e"): "e", ("e", "g"): "g", ("g", "e"): "g", ("g", "g"): "e"}
    hom = {(x, y): ("u_%s%s" % (x, y),) for x in objs for y in objs}
    compose_table = {}
    for x in objs:
        for y in objs:
            for z in objs:
                compose_table[((y, z, 0), (x, y, 0))] = {0: field.one()}
    identities = {x: {0: field.one()} for x in objs}
    dmor_table = {}
    for x1 in objs:
        for y1 in objs:
            for x2 in objs:
                for y2 in objs:
                    dmor_table[((x1, y1, 0), (x2, y2, 0))] = {0: field.one()}
    symmetry_table = {(x, y): {0: field.one()} for x in objs for y in objs}
    return CategoryPresentation(
        backend="finite",
        field=field,
        objects=objs,
        unit="e",
        hom=hom,
        compose_table=compose_table,
        identities=identities,
        dobj_table=mul,
        dmor_table=dmor_table,
        symmetry_table=symmetry_table,
        name="c2conv",
    )


def c2_regular_representation(cat: CategoryPresentation) -> Representation:
    """Two-dimensional representation with a nontrivial transport between objects."""
    f = cat.field
    ident = Matrix.identity(f, 2)
    p = Matrix.from_rows(f, [[1, 1], [0, 1]])
    p_inv = Matrix.from_rows(f, [[1, -1], [0, 1]])
    actions = {
        ("e", "e", 0): ident,
        ("g", "g", 0): ident,
        ("e", "g", 0): p,
        ("g", "e", 0): p_inv,
    }
    return Representation(cat, {"e": 2, "g": 2}, actions, name="reg")


def dual_numbers(field: Field, cat=None):
    """Q[x]/(x^2) on the trivial backend, basis (one, xbar)."""
    from .monoid import monoid_from_table

    cat = cat or CategoryPresentation.trivial(field)
    one = field.one()
    mul = {
        ("one", "one"): {"one": one},
        ("one", "xbar"): {"xbar": one},
        ("xbar", "one"): {"xbar": one},
        ("xbar", "xbar"): {},
    }
    return monoid_from_table(cat, {cat.unit: ("one", "xbar")}, mul, {"one": one},
                             name="Q[x]/(x^2)")


def _s3_elements():
    """Permutations of {0,1,2} as tuples, named."""
    perms = {
        "e": (0, 1, 2),
        "t12": (1, 0, 2),
        "t13": (2, 1, 0),
        "t23": (0, 2, 1),
        "c123": (1, 2, 0),
        "c132": (2, 0, 1),
    }
    return perms


def s3_group_algebra(field: Field, cat=None):
    """The group algebra of the symmetric group on three letters."""
    from .monoid import monoid_from_table

    cat = cat or CategoryPresentation.trivial(field)
    perms = _s3_elements()
    names = tuple(perms)
    by_perm = {p: n for n, p in perms.items()}
    one = field.one()
    mul = {}
    for n1, p1 in perms.items():
        for n2, p2 in perms.items():
            comp = tuple(p1[p2[i]] for i in range(3))
            mul[(n1, n2)] = {by_perm[comp]: one}
    return monoid_from_table(cat, {cat.unit: names}, mul, {"e": one}, name="Q[S3]")


def s3_center(field: Field, cat=None):
    """Center of Q[S3]: class sums z1 = e, z2 = transpositions, z3 = 3-cycles."""
    from .monoid import monoid_from_table

    cat = cat or CategoryPresentation.trivial(field)
    one = field.one()

    def c(n):
        return field.from_int(n)

    mul = {
        ("z1", "z1"): {"z1": one},
        ("z1", "z2"): {"z2": one},
        ("z1", "z3"): {"z3": one},
        ("z2", "z1"): {"z2": one},
        ("z3", "z1"): {"z3": one},
        ("z2", "z2"): {"z1": c(3), "z3": c(3)},
        ("z2", "z3"): {"z2": c(2)},
        ("z3", "z2"): {"z2": c(2)},
        ("z3", "z3"): {"z1": c(2), "z3": one},
    }
    return monoid_from_table(cat, {cat.unit: ("z1", "z2", "z3")}, mul, {"z1": one},
                             name="Z(Q[S3])")


def broken_associativity_category(field: Field) -> CategoryPresentation:
    """c2conv with one composition constant perturbed; for validator tests."""
    cat = c2_convolution_category(field)
    bad = dict(cat.compose_table)
    bad[(("e", "g", 0), ("g", "e", 0))] = {0: field.from_int(2)}
    return CategoryPresentation(
        backend="finite",
        field=field,
        objects=cat.objects,
        unit=cat.unit,
        hom=cat.hom,
        compose_table=bad,
        identities=cat.identities,
        dobj_table=cat.dobj_table,
        dmor_table=cat.dmor_table,
        symmetry_table=cat.symmetry_table,
        name="c2broken",
    )
