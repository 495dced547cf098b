"""Monoids and modules given by bilinear pairings, with graded carriers.

Everything is graded by an internal degree; a classical algebra is the
degree-0 concentrated case (cap 0), while polynomial monoids truncate an
infinite graded object at a recorded cap.  Carriers store one space per
(object, degree) cell and one matrix per (basis arrow, degree); pairings and
actions are stored per (object, degree) pair of cells on Kronecker bases
(left factor slowest).

Cells iterate degree-first, then object order; witnesses always report the
lexicographically first kernel vector of the first failing cell, so failure
messages are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .category import CategoryPresentation, Representation
from .errors import (
    NotCentralError,
    PreconditionError,
    StabilityError,
    StructuralError,
    WrongObjectError,
)
from .field import Field
from .matrix import Matrix, Subspace, kernel_basis, quotient, vstack
from .report import ValidationReport


def fix_left(field: Field, vec: Sequence, dim_right: int) -> Matrix:
    """Matrix of b -> vec (x) b on Kronecker bases."""
    m = Matrix.zeros(field, len(vec) * dim_right, dim_right)
    for i, c in enumerate(vec):
        if c:
            for k in range(dim_right):
                m.rows[i * dim_right + k][k] = c
    return m


def fix_right(field: Field, dim_left: int, vec: Sequence) -> Matrix:
    """Matrix of b -> b (x) vec on Kronecker bases."""
    m = Matrix.zeros(field, dim_left * len(vec), dim_left)
    for k in range(dim_left):
        for j, c in enumerate(vec):
            if c:
                m.rows[k * len(vec) + j][k] = c
    return m


class GradedCarrier:
    """Graded functor data: a space per (object, degree) cell up to a cap."""

    __slots__ = ("cat", "field", "cap", "truncated", "dims", "actions", "basis_names")

    def __init__(self, cat: CategoryPresentation, cap: int, truncated: bool,
                 dims: dict, actions: dict, basis_names: Optional[dict] = None):
        self.cat = cat
        self.field = cat.field
        self.cap = cap
        self.truncated = truncated
        self.dims = dict(dims)              # (obj, deg) -> int
        self.actions = dict(actions)        # ((x, y, i), deg) -> Matrix
        self.basis_names = basis_names or {}

    def dim(self, obj, deg) -> int:
        return self.dims.get((obj, deg), 0)

    def cells(self):
        for d in range(self.cap + 1):
            for x in self.cat.objects:
                yield (x, d)

    def names(self, obj, deg):
        key = (obj, deg)
        if key in self.basis_names:
            return self.basis_names[key]
        return tuple("%s[%s,%d]#%d" % ("b", obj, deg, i) for i in range(self.dim(obj, deg)))

    def action_matrix(self, key, deg) -> Matrix:
        m = self.actions.get((key, deg))
        if m is None:
            x, y, _ = key
            m = Matrix.zeros(self.field, self.dim(y, deg), self.dim(x, deg))
        return m

    def slice_rep(self, deg: int, name="F") -> Representation:
        dims = {x: self.dim(x, deg) for x in self.cat.objects}
        actions = {}
        for (x, y, i) in self.cat.all_basis_mors():
            key = ((x, y, i), deg)
            if key in self.actions:
                actions[(x, y, i)] = self.actions[key]
            else:
                actions[(x, y, i)] = Matrix.zeros(self.field, dims[y], dims[x])
        return Representation(self.cat, dims, actions, name="%s_%d" % (name, deg))

    def total_dim(self) -> int:
        return sum(self.dims.values())


@dataclass(frozen=True)
class Element:
    """Homogeneous element: object, internal degree, coordinate tuple."""

    obj: str
    degree: int
    coords: tuple

    def is_zero(self) -> bool:
        return not any(self.coords)


class Monoid:
    __slots__ = ("carrier", "pairing", "unit", "name", "poly_info")

    def __init__(self, carrier: GradedCarrier, pairing: dict, unit: tuple,
                 name="A", poly_info=None):
        self.carrier = carrier
        self.pairing = pairing  # (x, d1, y, d2) -> Matrix into (x<>y, d1+d2)
        self.unit = tuple(unit)
        self.name = name
        self.poly_info = poly_info  # (base Monoid, var names) for polynomial monoids
        u = carrier.cat.unit
        if len(unit) != carrier.dim(u, 0):
            raise StructuralError("unit has %d coordinates, expected %d"
                                  % (len(unit), carrier.dim(u, 0)))

    @property
    def cat(self) -> CategoryPresentation:
        return self.carrier.cat

    @property
    def field(self) -> Field:
        return self.carrier.field

    @property
    def cap(self) -> int:
        return self.carrier.cap

    def pairing_cell(self, x, d1, y, d2) -> Matrix:
        try:
            return self.pairing[(x, d1, y, d2)]
        except KeyError:
            raise StructuralError("missing pairing cell (%s,%d,%s,%d)" % (x, d1, y, d2))

    def unit_element(self) -> Element:
        return Element(self.cat.unit, 0, self.unit)

    def basis_element(self, name: str) -> Element:
        """Look up a basis vector of the carrier by name."""
        for (obj, deg) in self.carrier.cells():
            names = self.carrier.names(obj, deg)
            if name in names:
                i = names.index(name)
                coords = [self.field.zero()] * self.carrier.dim(obj, deg)
                coords[i] = self.field.one()
                return Element(obj, deg, tuple(coords))
        raise StructuralError("no basis element named %r in %s" % (name, self.name))

    def multiply(self, a: Element, b: Element) -> Element:
        """Product of homogeneous elements; degree adds, objects diamond."""
        tgt_deg = a.degree + b.degree
        if tgt_deg > self.cap:
            raise PreconditionError("product degree %d exceeds cap %d" % (tgt_deg, self.cap))
        mat = self.pairing_cell(a.obj, a.degree, b.obj, b.degree)
        vec = []
        for ca in a.coords:
            for cb in b.coords:
                vec.append(self.field.mul(ca, cb))
        return Element(self.cat.dobj(a.obj, b.obj), tgt_deg, mat.apply(vec))

    def __repr__(self):
        return "Monoid(%s over %s, cap %d)" % (self.name, self.cat.name, self.cap)


class Module:
    __slots__ = ("monoid", "carrier", "side", "left", "right", "name", "tags")

    def __init__(self, monoid: Monoid, carrier: GradedCarrier, side: str,
                 left: Optional[dict], right: Optional[dict], name="M", tags=None):
        if side not in ("left", "right", "bi"):
            raise StructuralError("side must be left, right or bi")
        self.monoid = monoid
        self.carrier = carrier
        self.side = side
        self.left = left    # (x, d1, y, d2): A(x)_{d1} (x) M(y)_{d2} -> M(x<>y)
        self.right = right  # (x, d1, y, d2): M(x)_{d1} (x) A(y)_{d2} -> M(x<>y)
        self.name = name
        self.tags = dict(tags or {})  # structural notes, e.g. induced-from-base

    @property
    def cat(self):
        return self.carrier.cat

    @property
    def field(self):
        return self.carrier.field

    @property
    def cap(self):
        return self.carrier.cap

    def left_cell(self, x, d1, y, d2) -> Matrix:
        if self.left is None:
            raise StructuralError("module %s has no left action" % self.name)
        return self.left[(x, d1, y, d2)]

    def right_cell(self, x, d1, y, d2) -> Matrix:
        if self.right is None:
            raise StructuralError("module %s has no right action" % self.name)
        return self.right[(x, d1, y, d2)]

    def __repr__(self):
        return "Module(%s over %s, %s)" % (self.name, self.monoid.name, self.side)


def regular_bimodule(a: Monoid) -> Module:
    """The monoid as a bimodule over itself; actions are the pairing."""
    return Module(a, a.carrier, "bi", dict(a.pairing), dict(a.pairing), name=a.name)


def degree_zero_carrier(rep: Representation, name="F") -> GradedCarrier:
    """Wrap a plain representation as a carrier concentrated in degree zero."""
    dims = {(x, 0): rep.dims[x] for x in rep.cat.objects}
    actions = {(key, 0): mat for key, mat in rep.actions.items()}
    names = {(x, 0): tuple("%s#%d" % (name, i) for i in range(rep.dims[x]))
             for x in rep.cat.objects}
    return GradedCarrier(rep.cat, 0, False, dims, actions, names)


def monoid_from_table(cat: CategoryPresentation, basis: dict, mul, unit,
                      carrier_actions=None, name="A") -> Monoid:
    """Degree-0 monoid from structure constants.

    basis: obj -> tuple of names (all names distinct across objects).
    mul: (name1, name2) -> {name3: scalar}; omitted products are zero.
    unit: {name: scalar} supported at the unit object.
    carrier_actions: optional ((x, y, i)) -> Matrix for finite backends.
    """
    field = cat.field
    dims = {}
    basis_names = {}
    where = {}
    for x in cat.objects:
        names = tuple(basis.get(x, ()))
        dims[(x, 0)] = len(names)
        basis_names[(x, 0)] = names
        for i, nm in enumerate(names):
            if nm in where:
                raise StructuralError("duplicate basis name %r" % nm)
            where[nm] = (x, i)
    actions = {}
    if carrier_actions:
        for key, m in carrier_actions.items():
            actions[(key, 0)] = m
    else:
        for (x, y, i) in cat.all_basis_mors():
            if x == y and cat.identities[x].get(i):
                actions[((x, y, i), 0)] = Matrix.identity(field, dims[(x, 0)])
            elif cat.is_trivial:
                actions[((x, y, i), 0)] = Matrix.identity(field, dims[(x, 0)])
            else:
                raise StructuralError("finite backend monoid needs carrier_actions")
    carrier = GradedCarrier(cat, 0, False, dims, actions, basis_names)
    pairing = {}
    for x in cat.objects:
        for y in cat.objects:
            tgt = cat.dobj(x, y)
            mat = Matrix.zeros(field, dims[(tgt, 0)], dims[(x, 0)] * dims[(y, 0)])
            for i, nx in enumerate(basis_names[(x, 0)]):
                for j, ny in enumerate(basis_names[(y, 0)]):
                    terms = mul.get((nx, ny), {})
                    for nz, c in terms.items():
                        zo, zi = where[nz]
                        if zo != tgt:
                            raise StructuralError(
                                "product %s*%s lands at %s, expected %s" % (nx, ny, zo, tgt))
                        if c:
                            mat.rows[zi][i * dims[(y, 0)] + j] = c
            pairing[(x, 0, y, 0)] = mat
    ucoords = [field.zero()] * dims[(cat.unit, 0)]
    for nm, c in unit.items():
        xo, xi = where[nm]
        if xo != cat.unit:
            raise StructuralError("unit supported away from the unit object")
        ucoords[xi] = c
    return Monoid(carrier, pairing, tuple(ucoords), name=name)


def scalar_monoid(cat: CategoryPresentation, name="Q") -> Monoid:
    """The base field as a one-dimensional monoid on the trivial backend."""
    if not cat.is_trivial:
        raise PreconditionError("scalar_monoid needs the trivial backend")
    one = cat.field.one()
    return monoid_from_table(cat, {cat.unit: ("one",)},
                             {("one", "one"): {"one": one}}, {"one": one}, name=name)


def identity_monoid(cat: CategoryPresentation) -> Monoid:
    """The unit object I = X(1, -) with its composition-induced product."""
    from .category import identity_representation

    field = cat.field
    u = cat.unit
    rep = identity_representation(cat)
    dims = {(x, 0): rep.dims[x] for x in cat.objects}
    actions = {(key, 0): mat for key, mat in rep.actions.items()}
    names = {(x, 0): cat.hom_basis(u, x) for x in cat.objects}
    carrier = GradedCarrier(cat, 0, False, dims, actions, names)
    pairing = {}
    for y in cat.objects:
        for z in cat.objects:
            yz = cat.dobj(y, z)
            mat = Matrix.zeros(field, rep.dims[yz], rep.dims[y] * rep.dims[z])
            for k1 in range(rep.dims[y]):
                for k2 in range(rep.dims[z]):
                    prod = cat.diamond(cat.basis_mor(u, y, k1), cat.basis_mor(u, z, k2))
                    for t, c in prod.coeffs.items():
                        mat.rows[t][k1 * rep.dims[z] + k2] = c
            pairing[(y, 0, z, 0)] = mat
    unit = [field.zero()] * rep.dims[u]
    for i, c in cat.identities[u].items():
        unit[i] = c
    return Monoid(carrier, pairing, tuple(unit), name="I")


# -- validation ---------------------------------------------------------------


def validate_monoid(a: Monoid) -> ValidationReport:
    """Certify associativity, unit laws and naturality on all stored cells."""
    rep = ValidationReport("monoid %s" % a.name)
    cat, field, car = a.cat, a.field, a.carrier
    cap = car.cap
    u = cat.unit

    # unit laws, cellwise: multiplying by the unit is the identity matrix
    for (x, d) in car.cells():
        dim = car.dim(x, d)
        left = a.pairing_cell(u, 0, x, d) * fix_left(field, a.unit, dim)
        right = a.pairing_cell(x, d, u, 0) * fix_right(field, dim, a.unit)
        ident = Matrix.identity(field, dim)
        if left != ident:
            rep.add("unit-left", "(%s, %d)" % (x, d))
        if right != ident:
            rep.add("unit-right", "(%s, %d)" % (x, d))
        rep.checked += 2

    # associativity, cellwise matrix identity
    for d1 in range(cap + 1):
        for d2 in range(cap + 1 - d1):
            for d3 in range(cap + 1 - d1 - d2):
                for x in cat.objects:
                    for y in cat.objects:
                        for z in cat.objects:
                            dx, dy, dz = car.dim(x, d1), car.dim(y, d2), car.dim(z, d3)
                            if 0 in (dx, dy, dz):
                                rep.checked += 1
                                continue
                            xy = cat.dobj(x, y)
                            yz = cat.dobj(y, z)
                            lhs = a.pairing_cell(xy, d1 + d2, z, d3) * \
                                a.pairing_cell(x, d1, y, d2).kron(Matrix.identity(field, dz))
                            rhs = a.pairing_cell(x, d1, yz, d2 + d3) * \
                                Matrix.identity(field, dx).kron(a.pairing_cell(y, d2, z, d3))
                            if lhs != rhs:
                                rep.add("associativity",
                                        "cells (%s,%d)(%s,%d)(%s,%d)" % (x, d1, y, d2, z, d3))
                            rep.checked += 1

    # naturality of the pairing against basis arrows (finite backend)
    if not cat.is_trivial:
        slices = {d: car.slice_rep(d) for d in range(cap + 1)}
        for (y, yp, i) in cat.all_basis_mors():
            phi = cat.basis_mor(y, yp, i)
            for z in cat.objects:
                for d1 in range(cap + 1):
                    for d2 in range(cap + 1 - d1):
                        dyz = car.dim(y, d1) * car.dim(z, d2)
                        if dyz == 0:
                            rep.checked += 2
                            continue
                        d = d1 + d2
                        act_phi = car.action_matrix((y, yp, i), d1)
                        big = slices[d].action(cat.diamond(phi, cat.identity_mor(z)))
                        lhs = big * a.pairing_cell(y, d1, z, d2)
                        rhs = a.pairing_cell(yp, d1, z, d2) * \
                            act_phi.kron(Matrix.identity(field, car.dim(z, d2)))
                        if lhs != rhs:
                            rep.add("pairing-naturality-left",
                                    "(%s, %s at degrees %d,%d)" % (cat.mor_name((y, yp, i)), z, d1, d2))
                        big2 = slices[d].action(cat.diamond(cat.identity_mor(z), phi))
                        lhs2 = big2 * a.pairing_cell(z, d2, y, d1)
                        rhs2 = a.pairing_cell(z, d2, yp, d1) * \
                            Matrix.identity(field, car.dim(z, d2)).kron(act_phi)
                        if lhs2 != rhs2:
                            rep.add("pairing-naturality-right",
                                    "(%s, %s at degrees %d,%d)" % (cat.mor_name((y, yp, i)), z, d2, d1))
                        rep.checked += 2
    return rep


def is_commutative(a: Monoid) -> bool:
    """Check a x b = A(s)(b x a) on all stored cells."""
    cat, field, car = a.cat, a.field, a.carrier
    slices = {d: car.slice_rep(d) for d in range(car.cap + 1)}
    for d1 in range(car.cap + 1):
        for d2 in range(car.cap + 1 - d1):
            for x in cat.objects:
                for y in cat.objects:
                    dx, dy = car.dim(x, d1), car.dim(y, d2)
                    if 0 in (dx, dy):
                        continue
                    swap = Matrix.zeros(field, dy * dx, dx * dy)
                    for i in range(dx):
                        for j in range(dy):
                            swap.rows[j * dx + i][i * dy + j] = field.one()
                    s_act = slices[d1 + d2].action(cat.symmetry_mor(x, y))
                    lhs = s_act * a.pairing_cell(x, d1, y, d2)
                    rhs = a.pairing_cell(y, d2, x, d1) * swap
                    if lhs != rhs:
                        return False
    return True


def validate_module(m: Module) -> ValidationReport:
    """Certify action associativity, unit action and bimodule compatibility."""
    rep = ValidationReport("module %s" % m.name)
    a = m.monoid
    cat, field = m.cat, m.field
    car, acar = m.carrier, a.carrier
    cap = car.cap
    u = cat.unit
    for (x, d) in car.cells():
        dim = car.dim(x, d)
        ident = Matrix.identity(field, dim)
        if m.left is not None:
            got = m.left_cell(u, 0, x, d) * fix_left(field, a.unit, dim)
            if got != ident:
                rep.add("unit-acts-as-identity-left", "(%s, %d)" % (x, d))
            rep.checked += 1
        if m.right is not None:
            got = m.right_cell(x, d, u, 0) * fix_right(field, dim, a.unit)
            if got != ident:
                rep.add("unit-acts-as-identity-right", "(%s, %d)" % (x, d))
            rep.checked += 1
    for d1 in range(cap + 1):
        for d2 in range(cap + 1 - d1):
            for d3 in range(cap + 1 - d1 - d2):
                for x in cat.objects:
                    for y in cat.objects:
                        for z in cat.objects:
                            if m.left is not None:
                                da, db = acar.dim(x, d1), acar.dim(y, d2)
                                dm = car.dim(z, d3)
                                if 0 not in (da, db, dm):
                                    xy, yz = cat.dobj(x, y), cat.dobj(y, z)
                                    lhs = m.left_cell(xy, d1 + d2, z, d3) * \
                                        a.pairing_cell(x, d1, y, d2).kron(Matrix.identity(field, dm))
                                    rhs = m.left_cell(x, d1, yz, d2 + d3) * \
                                        Matrix.identity(field, da).kron(m.left_cell(y, d2, z, d3))
                                    if lhs != rhs:
                                        rep.add("left-action-associativity",
                                                "cells (%s,%d)(%s,%d)(%s,%d)" % (x, d1, y, d2, z, d3))
                                rep.checked += 1
                            if m.right is not None:
                                dm = car.dim(x, d1)
                                da, db = acar.dim(y, d2), acar.dim(z, d3)
                                if 0 not in (dm, da, db):
                                    xy, yz = cat.dobj(x, y), cat.dobj(y, z)
                                    lhs = m.right_cell(xy, d1 + d2, z, d3) * \
                                        m.right_cell(x, d1, y, d2).kron(Matrix.identity(field, db))
                                    rhs = m.right_cell(x, d1, yz, d2 + d3) * \
                                        Matrix.identity(field, dm).kron(a.pairing_cell(y, d2, z, d3))
                                    if lhs != rhs:
                                        rep.add("right-action-associativity",
                                                "cells (%s,%d)(%s,%d)(%s,%d)" % (x, d1, y, d2, z, d3))
                                rep.checked += 1
                            if m.side == "bi":
                                da = acar.dim(x, d1)
                                dm = car.dim(y, d2)
                                db = acar.dim(z, d3)
                                if 0 not in (da, dm, db):
                                    xy, yz = cat.dobj(x, y), cat.dobj(y, z)
                                    lhs = m.right_cell(xy, d1 + d2, z, d3) * \
                                        m.left_cell(x, d1, y, d2).kron(Matrix.identity(field, db))
                                    rhs = m.left_cell(x, d1, yz, d2 + d3) * \
                                        Matrix.identity(field, da).kron(m.right_cell(y, d2, z, d3))
                                    if lhs != rhs:
                                        rep.add("bimodule-compatibility",
                                                "cells (%s,%d)(%s,%d)(%s,%d)" % (x, d1, y, d2, z, d3))
                                rep.checked += 1
    return rep


# -- commutant ----------------------------------------------------------------


def commutant(a: Monoid, x: str) -> dict:
    """CA(x) per degree: kernel of the stacked commutation conditions.

    When the carrier is truncated, products above the cap cannot be tested;
    the result is certified for the stored window only.
    """
    cat, field, car = a.cat, a.field, a.carrier
    out = {}
    for d in range(car.cap + 1):
        dim_b = car.dim(x, d)
        if dim_b == 0:
            out[d] = Subspace.zero(field, 0)
            continue
        rows_of_blocks = []
        for dp in range(car.cap + 1 - d):
            for y in cat.objects:
                dim_a = car.dim(y, dp)
                if dim_a == 0:
                    continue
                s_act = car.slice_rep(d + dp).action(cat.symmetry_mor(x, y))
                for j in range(dim_a):
                    avec = [field.zero()] * dim_a
                    avec[j] = field.one()
                    m1 = a.pairing_cell(y, dp, x, d) * fix_left(field, avec, dim_b)
                    m2 = s_act * (a.pairing_cell(x, d, y, dp) * fix_right(field, dim_b, avec))
                    rows_of_blocks.append(m1 - m2)
        if not rows_of_blocks:
            out[d] = Subspace.full(field, dim_b)
            continue
        from .matrix import vstack
        stacked = vstack(rows_of_blocks)
        out[d] = Subspace.from_columns(field, dim_b, kernel_basis(stacked))
    return out


def is_central(a: Monoid, elt: Element) -> bool:
    """Direct commutation check for a single element, all cells in the window."""
    cat, field, car = a.cat, a.field, a.carrier
    x, d = elt.obj, elt.degree
    for dp in range(car.cap + 1 - d):
        for y in cat.objects:
            dim_a = car.dim(y, dp)
            if dim_a == 0:
                continue
            s_act = car.slice_rep(d + dp).action(cat.symmetry_mor(x, y))
            m1 = a.pairing_cell(y, dp, x, d) * fix_right(field, dim_a, list(elt.coords))
            m2 = s_act * (a.pairing_cell(x, d, y, dp) * fix_left(field, list(elt.coords), dim_a))
            if m1 != m2:
                return False
    return True


# -- multiplication operators ---------------------------------------------------


@dataclass
class MultOperator:
    """The family b -> elt x b (or b x elt) on a module, one matrix per cell."""

    elt: Element
    shift: int
    side: str
    cells: dict  # (obj, deg) -> Matrix from M(obj)_deg to M(obj)_{deg+shift}

    def cell(self, obj, deg) -> Matrix:
        return self.cells[(obj, deg)]


def mult_operator(a: Monoid, elt: Element, m: Module, side="left") -> MultOperator:
    """L_elt (or the right-hand analogue) for an element supported at the unit."""
    cat, field = a.cat, a.field
    if elt.obj != cat.unit:
        raise WrongObjectError("element lives at %s, expected the unit object" % elt.obj)
    car = m.carrier
    e = elt.degree
    cells = {}
    for (x, d) in car.cells():
        if d + e > car.cap:
            continue
        dim = car.dim(x, d)
        if side == "left":
            mat = m.left_cell(cat.unit, e, x, d) * fix_left(field, list(elt.coords), dim)
        else:
            mat = m.right_cell(x, d, cat.unit, e) * fix_right(field, dim, list(elt.coords))
        cells[(x, d)] = mat
    return MultOperator(elt, e, side, cells)


# -- generated submodules and quotients ----------------------------------------


def generated_submodule(a: Monoid, gens: Sequence[Element]) -> dict:
    """The ideal A<gens> per cell: image of right multiplication by the gens.

    Every generator must be supported at the unit object; an empty list gives
    the zero family.
    """
    cat, field, car = a.cat, a.field, a.carrier
    for g in gens:
        if g.obj != cat.unit:
            raise WrongObjectError("generator lives at %s, expected the unit object" % g.obj)
    out = {}
    for (x, d) in car.cells():
        dim = car.dim(x, d)
        cols = []
        for g in gens:
            if g.degree > d:
                continue
            mat = a.pairing_cell(x, d - g.degree, cat.unit, g.degree) * \
                fix_right(field, car.dim(x, d - g.degree), list(g.coords))
            for j in range(mat.ncols):
                cols.append(mat.column(j))
        out[(x, d)] = Subspace.from_columns(field, dim, cols)
    return out


@dataclass
class QuotientModule:
    module: Module
    projections: dict  # cell -> Matrix
    sections: dict     # cell -> Matrix
    sub: dict          # cell -> Subspace


def quotient_module(m: Module, sub: dict) -> QuotientModule:
    """Pointwise quotient with induced actions; sub must be action-stable."""
    a = m.monoid
    cat, field, car = m.cat, m.field, m.carrier
    acar = a.carrier

    # stability checks name the violating generator cell
    for (x, d) in car.cells():
        basis = sub[(x, d)].basis
        for ((gx, gy, gi), gd) in list(car.actions.keys()):
            if gx != x or gd != d:
                continue
            mat = car.actions[((gx, gy, gi), gd)] * basis
            for j in range(mat.ncols):
                if not sub[(gy, d)].contains(mat.column(j)):
                    raise StabilityError("submodule not stable under arrow %s at (%s,%d)"
                                         % (cat.mor_name((gx, gy, gi)), x, d))
    for (y, d2) in car.cells():
        basis = sub[(y, d2)].basis
        if basis.ncols == 0:
            continue
        for d1 in range(car.cap + 1 - d2):
            for x in cat.objects:
                tgt = (cat.dobj(x, y), d1 + d2)
                if m.left is not None:
                    da = acar.dim(x, d1)
                    if da:
                        mat = m.left_cell(x, d1, y, d2) * Matrix.identity(field, da).kron(basis)
                        for j in range(mat.ncols):
                            if not sub[tgt].contains(mat.column(j)):
                                raise StabilityError(
                                    "submodule not stable under left action of (%s,%d) at (%s,%d)"
                                    % (x, d1, y, d2))
                if m.right is not None:
                    da = acar.dim(x, d1)
                    if da:
                        tgt_r = (cat.dobj(y, x), d1 + d2)
                        mat = m.right_cell(y, d2, x, d1) * basis.kron(Matrix.identity(field, da))
                        for j in range(mat.ncols):
                            if not sub[tgt_r].contains(mat.column(j)):
                                raise StabilityError(
                                    "submodule not stable under right action of (%s,%d) at (%s,%d)"
                                    % (x, d1, y, d2))

    quots = {cell: quotient(car.dim(*cell), sub[cell]) for cell in car.cells()}
    dims = {cell: quots[cell].dim for cell in car.cells()}
    actions = {}
    for (key, d), mat in car.actions.items():
        x, y, i = key
        actions[(key, d)] = quots[(y, d)].projection * mat * quots[(x, d)].section
    left = None
    right = None
    if m.left is not None:
        left = {}
        for (x, d1, y, d2), mat in m.left.items():
            tgt = (cat.dobj(x, y), d1 + d2)
            da = acar.dim(x, d1)
            left[(x, d1, y, d2)] = quots[tgt].projection * mat * \
                Matrix.identity(field, da).kron(quots[(y, d2)].section)
    if m.right is not None:
        right = {}
        for (x, d1, y, d2), mat in m.right.items():
            tgt = (cat.dobj(x, y), d1 + d2)
            da = acar.dim(y, d2)
            right[(x, d1, y, d2)] = quots[tgt].projection * mat * \
                quots[(x, d1)].section.kron(Matrix.identity(field, da))
    carrier = GradedCarrier(cat, car.cap, car.truncated, dims, actions)
    mod = Module(a, carrier, m.side, left, right, name="%s/sub" % m.name)
    return QuotientModule(mod, {c: q.projection for c, q in quots.items()},
                          {c: q.section for c, q in quots.items()}, dict(sub))


# -- regularity -----------------------------------------------------------------


@dataclass
class RegularityCertificate:
    element: Element
    regular: bool
    witness: Optional[Element]
    cells_checked: int
    window: int
    truncated: bool

    def to_jsonable(self, field: Field):
        out = {
            "regular": self.regular,
            "cells_checked": self.cells_checked,
            "window": self.window,
            "truncated": self.truncated,
        }
        if self.witness is not None:
            out["witness"] = {
                "obj": self.witness.obj,
                "degree": self.witness.degree,
                "coords": [field.format(c) for c in self.witness.coords],
            }
        return out


def is_regular(a: Monoid, elt: Element, m: Module) -> RegularityCertificate:
    """Certify that elt acts injectively on every cell of m within the window.

    Requires elt central (the definition lives in the commutant); reports a
    nonzero annihilated witness otherwise during the scan.
    """
    if not is_central(a, elt):
        raise NotCentralError("element at (%s, degree %d) is not in the commutant"
                              % (elt.obj, elt.degree))
    op = mult_operator(a, elt, m, side="left")
    window = m.carrier.cap - elt.degree
    checked = 0
    for d in range(window + 1):
        for x in a.cat.objects:
            if (x, d) not in op.cells:
                continue
            mat = op.cells[(x, d)]
            checked += 1
            vecs = kernel_basis(mat)
            if vecs:
                return RegularityCertificate(elt, False, Element(x, d, vecs[0]),
                                             checked, window, m.carrier.truncated)
    return RegularityCertificate(elt, True, None, checked, window, m.carrier.truncated)


@dataclass
class SequenceCertificate:
    regular: bool
    stages: list
    quotient_nonzero: bool
    failed_stage: Optional[int]
    final_dims: dict
    truncated: bool

    def to_jsonable(self, field: Field):
        return {
            "regular": self.regular,
            "stages": [s.to_jsonable(field) for s in self.stages],
            "quotient_nonzero": self.quotient_nonzero,
            "failed_stage": self.failed_stage,
            "truncated": self.truncated,
        }


def is_regular_sequence(a: Monoid, gens: Sequence[Element]) -> SequenceCertificate:
    """Definition-checked regular sequence: successive quotients plus A/<gens> != 0."""
    module = regular_bimodule(a)
    stages = []
    current = module
    for i, g in enumerate(gens):
        cert = is_regular(a, g, current)
        stages.append(cert)
        if not cert.regular:
            final = quotient_module(module, generated_submodule(a, gens)).module
            dims = dict(final.carrier.dims)
            return SequenceCertificate(False, stages, any(dims.values()), i, dims,
                                       a.carrier.truncated)
        sub = generated_submodule(a, gens[:i + 1])
        current = quotient_module(module, sub).module
    dims = dict(current.carrier.dims) if gens else dict(a.carrier.dims)
    nonzero = any(dims.values())
    return SequenceCertificate(nonzero, stages, nonzero,
                               None if nonzero else len(gens), dims, a.carrier.truncated)
