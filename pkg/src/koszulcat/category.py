"""Finite presentations of the base symmetric monoidal linear category.

Two backends share one data model.  The trivial backend has a single object
whose endomorphisms are spanned by the identity; the finite strict backend
carries an explicit object set closed under the monoidal product, hom bases
with composition structure constants, an object-level product table, a
morphism-level product on basis pairs, and symmetry morphisms.  Coherence is
strict: associators and unitors are identities, so object products are plain
table lookups.

Representations assign a space dimension to each object and a matrix to each
hom basis element.  Day convolution of two representations is computed as a
pointwise quotient of the direct sum over object pairs of
hom(y <> z, x) (x) F(y) (x) G(z) by the naturality relations generated by the
hom basis elements, with induced functorial actions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import StructuralError
from .field import Field
from .matrix import Matrix, Subspace, quotient, rank
from .report import ValidationReport

UNIT_NAME = "1"


@dataclass
class Mor:
    """Linear combination of hom basis elements between fixed objects."""

    src: str
    tgt: str
    coeffs: dict  # basis index -> scalar, zeros omitted


class CategoryPresentation:
    __slots__ = ("backend", "field", "objects", "unit", "hom", "compose_table",
                 "identities", "dobj_table", "dmor_table", "symmetry_table", "name")

    def __init__(self, backend, field, objects, unit, hom, compose_table,
                 identities, dobj_table, dmor_table, symmetry_table, name="X"):
        self.backend = backend              # "trivial" | "finite"
        self.field = field
        self.objects = tuple(objects)       # unit listed among them
        self.unit = unit
        self.hom = hom                      # (x, y) -> tuple of basis names
        self.compose_table = compose_table  # ((y,z,j),(x,y,i)) -> {k: scalar}
        self.identities = identities        # x -> {i: scalar} over hom(x, x)
        self.dobj_table = dobj_table        # (x, y) -> object
        self.dmor_table = dmor_table        # ((x1,y1,i1),(x2,y2,i2)) -> {k: scalar}
        self.symmetry_table = symmetry_table  # (x, y) -> {k: scalar} over hom(x<>y, y<>x)
        self.name = name

    # -- constructors --------------------------------------------------------

    @staticmethod
    def trivial(field: Field) -> "CategoryPresentation":
        u = UNIT_NAME
        return CategoryPresentation(
            backend="trivial",
            field=field,
            objects=(u,),
            unit=u,
            hom={(u, u): ("id",)},
            compose_table={((u, u, 0), (u, u, 0)): {0: field.one()}},
            identities={u: {0: field.one()}},
            dobj_table={(u, u): u},
            dmor_table={((u, u, 0), (u, u, 0)): {0: field.one()}},
            symmetry_table={(u, u): {0: field.one()}},
            name="trivial",
        )

    @property
    def is_trivial(self) -> bool:
        return self.backend == "trivial"

    # -- structure access ----------------------------------------------------

    def hom_basis(self, x, y):
        return self.hom.get((x, y), ())

    def hom_dim(self, x, y) -> int:
        return len(self.hom_basis(x, y))

    def dobj(self, x, y):
        try:
            return self.dobj_table[(x, y)]
        except KeyError:
            raise StructuralError("diamond not total at (%s, %s)" % (x, y))

    def basis_mor(self, x, y, i) -> Mor:
        return Mor(x, y, {i: self.field.one()})

    def identity_mor(self, x) -> Mor:
        return Mor(x, x, dict(self.identities[x]))

    def symmetry_mor(self, x, y) -> Mor:
        return Mor(self.dobj(x, y), self.dobj(y, x), dict(self.symmetry_table[(x, y)]))

    def compose(self, g: Mor, f: Mor) -> Mor:
        """g after f, extended bilinearly over the structure constants."""
        if f.tgt != g.src:
            raise StructuralError("cannot compose %s->%s after %s->%s"
                                  % (g.src, g.tgt, f.src, f.tgt))
        fld = self.field
        out: dict = {}
        for j, cg in g.coeffs.items():
            for i, cf in f.coeffs.items():
                table = self.compose_table.get(((g.src, g.tgt, j), (f.src, f.tgt, i)), {})
                c = fld.mul(cg, cf)
                for k, v in table.items():
                    s = fld.add(out.get(k, fld.zero()), fld.mul(c, v))
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
        return Mor(f.src, g.tgt, out)

    def diamond(self, f: Mor, g: Mor) -> Mor:
        fld = self.field
        out: dict = {}
        for i, cf in f.coeffs.items():
            for j, cg in g.coeffs.items():
                table = self.dmor_table.get(((f.src, f.tgt, i), (g.src, g.tgt, j)), {})
                c = fld.mul(cf, cg)
                for k, v in table.items():
                    s = fld.add(out.get(k, fld.zero()), fld.mul(c, v))
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
        return Mor(self.dobj(f.src, g.src), self.dobj(f.tgt, g.tgt), out)

    def mor_equal(self, f: Mor, g: Mor) -> bool:
        return f.src == g.src and f.tgt == g.tgt and f.coeffs == g.coeffs

    def all_basis_mors(self):
        for (x, y), names in sorted(self.hom.items()):
            for i in range(len(names)):
                yield (x, y, i)

    def mor_name(self, key) -> str:
        x, y, i = key
        return self.hom[(x, y)][i]


def validate_presentation(cat: CategoryPresentation) -> ValidationReport:
    """Exhaustively certify the axioms on all basis combinations."""
    rep = ValidationReport("category %s" % cat.name)
    objs = cat.objects

    # diamond totality, associativity, unit
    for x in objs:
        for y in objs:
            if (x, y) not in cat.dobj_table:
                rep.add("diamond-totality", "(%s, %s)" % (x, y))
        rep.checked += len(objs)
    for x in objs:
        if cat.dobj(cat.unit, x) != x or cat.dobj(x, cat.unit) != x:
            rep.add("diamond-unit", x)
        rep.checked += 1
    for x in objs:
        for y in objs:
            for z in objs:
                if cat.dobj(cat.dobj(x, y), z) != cat.dobj(x, cat.dobj(y, z)):
                    rep.add("diamond-associativity", "(%s, %s, %s)" % (x, y, z))
                rep.checked += 1

    # composition associativity on basis triples
    for (x, y) in sorted(cat.hom):
        for (y2, z) in sorted(cat.hom):
            if y2 != y:
                continue
            for (z2, w) in sorted(cat.hom):
                if z2 != z:
                    continue
                for i in range(cat.hom_dim(x, y)):
                    f = cat.basis_mor(x, y, i)
                    for j in range(cat.hom_dim(y, z)):
                        g = cat.basis_mor(y, z, j)
                        for k in range(cat.hom_dim(z, w)):
                            h = cat.basis_mor(z, w, k)
                            lhs = cat.compose(cat.compose(h, g), f)
                            rhs = cat.compose(h, cat.compose(g, f))
                            if not cat.mor_equal(lhs, rhs):
                                rep.add("composition-associativity",
                                        "(%s, %s, %s)" % (cat.mor_name((z, w, k)),
                                                          cat.mor_name((y, z, j)),
                                                          cat.mor_name((x, y, i))))
                            rep.checked += 1

    # unit laws of composition
    for (x, y, i) in cat.all_basis_mors():
        f = cat.basis_mor(x, y, i)
        if not cat.mor_equal(cat.compose(f, cat.identity_mor(x)), f):
            rep.add("right-identity", cat.mor_name((x, y, i)))
        if not cat.mor_equal(cat.compose(cat.identity_mor(y), f), f):
            rep.add("left-identity", cat.mor_name((x, y, i)))
        rep.checked += 2

    # functoriality of the product on morphisms, on composable basis quadruples
    for (x1, y1, i1) in cat.all_basis_mors():
        for (y1b, z1, j1) in cat.all_basis_mors():
            if y1b != y1:
                continue
            for (x2, y2, i2) in cat.all_basis_mors():
                for (y2b, z2, j2) in cat.all_basis_mors():
                    if y2b != y2:
                        continue
                    f1 = cat.basis_mor(x1, y1, i1)
                    g1 = cat.basis_mor(y1, z1, j1)
                    f2 = cat.basis_mor(x2, y2, i2)
                    g2 = cat.basis_mor(y2, z2, j2)
                    lhs = cat.diamond(cat.compose(g1, f1), cat.compose(g2, f2))
                    rhs = cat.compose(cat.diamond(g1, g2), cat.diamond(f1, f2))
                    if not cat.mor_equal(lhs, rhs):
                        rep.add("diamond-functoriality",
                                "(%s o %s) <> (%s o %s)"
                                % (cat.mor_name((y1, z1, j1)), cat.mor_name((x1, y1, i1)),
                                   cat.mor_name((y2, z2, j2)), cat.mor_name((x2, y2, i2))))
                    rep.checked += 1
    # identity compatibility of the product
    for x in objs:
        for y in objs:
            lhs = cat.diamond(cat.identity_mor(x), cat.identity_mor(y))
            if not cat.mor_equal(lhs, cat.identity_mor(cat.dobj(x, y))):
                rep.add("diamond-identity", "(%s, %s)" % (x, y))
            rep.checked += 1

    # symmetry: involutive, natural on generators, strict hexagon
    for x in objs:
        for y in objs:
            s_xy = cat.symmetry_mor(x, y)
            s_yx = cat.symmetry_mor(y, x)
            if not cat.mor_equal(cat.compose(s_yx, s_xy), cat.identity_mor(cat.dobj(x, y))):
                rep.add("symmetry-involutive", "(%s, %s)" % (x, y))
            rep.checked += 1
    for (x, xp, i) in cat.all_basis_mors():
        for (y, yp, j) in cat.all_basis_mors():
            f = cat.basis_mor(x, xp, i)
            g = cat.basis_mor(y, yp, j)
            lhs = cat.compose(cat.symmetry_mor(xp, yp), cat.diamond(f, g))
            rhs = cat.compose(cat.diamond(g, f), cat.symmetry_mor(x, y))
            if not cat.mor_equal(lhs, rhs):
                rep.add("symmetry-naturality",
                        "(%s, %s)" % (cat.mor_name((x, xp, i)), cat.mor_name((y, yp, j))))
            rep.checked += 1
    for x in objs:
        for y in objs:
            for z in objs:
                lhs = cat.symmetry_mor(x, cat.dobj(y, z))
                rhs = cat.compose(cat.diamond(cat.identity_mor(y), cat.symmetry_mor(x, z)),
                                  cat.diamond(cat.symmetry_mor(x, y), cat.identity_mor(z)))
                if not cat.mor_equal(lhs, rhs):
                    rep.add("symmetry-hexagon", "(%s, %s, %s)" % (x, y, z))
                rep.checked += 1
    # strict unit coherence: braiding against the unit is the identity
    for x in objs:
        if not cat.mor_equal(cat.symmetry_mor(x, cat.unit), cat.identity_mor(x)):
            rep.add("symmetry-unit-coherence", "(%s, unit)" % x)
        if not cat.mor_equal(cat.symmetry_mor(cat.unit, x), cat.identity_mor(x)):
            rep.add("symmetry-unit-coherence", "(unit, %s)" % x)
        rep.checked += 2
    return rep


class Representation:
    """Functor to vector spaces: a dimension per object, a matrix per basis arrow."""

    __slots__ = ("cat", "dims", "actions", "name")

    def __init__(self, cat: CategoryPresentation, dims: dict, actions: dict, name="F"):
        self.cat = cat
        self.dims = dict(dims)
        self.actions = dict(actions)  # (x, y, i) -> Matrix dims[y] x dims[x]
        self.name = name
        for key, m in self.actions.items():
            x, y, _ = key
            if m.nrows != self.dims[y] or m.ncols != self.dims[x]:
                raise StructuralError(
                    "action %s has shape %dx%d, expected %dx%d"
                    % (cat.mor_name(key), m.nrows, m.ncols, self.dims[y], self.dims[x]))

    def dim(self, x) -> int:
        return self.dims[x]

    def action_basis(self, key) -> Matrix:
        if key in self.actions:
            return self.actions[key]
        raise StructuralError("no action for basis arrow %s" % (key,))

    def action(self, f: Mor) -> Matrix:
        fld = self.cat.field
        out = Matrix.zeros(fld, self.dims[f.tgt], self.dims[f.src])
        for i, c in f.coeffs.items():
            out = out + self.action_basis((f.src, f.tgt, i)).scale(c)
        return out


def trivial_representation(cat: CategoryPresentation, dim: int, name="F") -> Representation:
    """One-object backend: a bare space with the identity arrow acting as id."""
    u = cat.unit
    return Representation(cat, {u: dim}, {(u, u, 0): Matrix.identity(cat.field, dim)}, name)


def identity_representation(cat: CategoryPresentation) -> Representation:
    """The unit I = X(1, -): spaces are hom(1, x), arrows act by postcomposition."""
    fld = cat.field
    u = cat.unit
    dims = {x: cat.hom_dim(u, x) for x in cat.objects}
    actions = {}
    for (x, y, i) in cat.all_basis_mors():
        phi = cat.basis_mor(x, y, i)
        cols = []
        for k in range(cat.hom_dim(u, x)):
            comp = cat.compose(phi, cat.basis_mor(u, x, k))
            cols.append([comp.coeffs.get(t, fld.zero()) for t in range(cat.hom_dim(u, y))])
        actions[(x, y, i)] = Matrix.from_columns(fld, dims[y], cols)
    return Representation(cat, dims, actions, name="I")


def validate_representation(cat: CategoryPresentation, f: Representation) -> ValidationReport:
    """Certify F(id) = id and F(g o f) = F(g) F(f) on basis pairs."""
    rep = ValidationReport("representation %s" % f.name)
    fld = cat.field
    for x in cat.objects:
        if x not in f.dims:
            raise StructuralError("representation misses object %s" % x)
        if f.action(cat.identity_mor(x)) != Matrix.identity(fld, f.dims[x]):
            rep.add("functor-identity", x)
        rep.checked += 1
    for (x, y, i) in cat.all_basis_mors():
        for (y2, z, j) in cat.all_basis_mors():
            if y2 != y:
                continue
            g = cat.basis_mor(y, z, j)
            ff = cat.basis_mor(x, y, i)
            lhs = f.action(cat.compose(g, ff))
            rhs = f.action_basis((y, z, j)) * f.action_basis((x, y, i))
            if lhs != rhs:
                rep.add("functor-composition",
                        "(%s, %s)" % (cat.mor_name((y, z, j)), cat.mor_name((x, y, i))))
            rep.checked += 1
    return rep


# -- Day convolution ----------------------------------------------------------


@dataclass
class DaySummand:
    y: str
    z: str
    hom_dim: int
    dim_f: int
    dim_g: int
    offset: int

    @property
    def size(self):
        return self.hom_dim * self.dim_f * self.dim_g


class DayTensor:
    """Pointwise coend presentation of F (x) G with its induced actions.

    Ambient basis at x: per object pair (y, z), triples h (x) a (x) b with the
    hom index slowest, then F(y), then G(z).
    """

    __slots__ = ("cat", "f", "g", "layout", "quot", "rep")

    def __init__(self, cat, f, g, layout, quot, rep):
        self.cat = cat
        self.f = f
        self.g = g
        self.layout = layout  # x -> list[DaySummand]
        self.quot = quot      # x -> QuotientPresentation
        self.rep = rep

    def summand(self, x, y, z) -> DaySummand:
        for s in self.layout[x]:
            if s.y == y and s.z == z:
                return s
        raise StructuralError("no summand (%s, %s) at %s" % (y, z, x))

    def ambient_dim(self, x) -> int:
        lay = self.layout[x]
        return lay[-1].offset + lay[-1].size if lay else 0

    def ambient_index(self, x, y, z, h_idx, a_idx, b_idx) -> int:
        s = self.summand(x, y, z)
        return s.offset + (h_idx * s.dim_f + a_idx) * s.dim_g + b_idx

    def pure_tensor_block(self, x, y, z) -> Matrix:
        """Map F(y) (x) G(z) -> (F (x) G)(x) along a hom basis element h.

        Only meaningful summed over h; callers embed a chosen (h, a, b) index
        by `ambient_index` and project.  This block fixes h = the full hom
        inclusion: columns enumerate (h, a, b) row-major.
        """
        s = self.summand(x, y, z)
        incl = Matrix.zeros(self.cat.field, self.ambient_dim(x), s.size)
        for k in range(s.size):
            incl.rows[s.offset + k][k] = self.cat.field.one()
        return self.quot[x].projection * incl

    def induced_map(self, target: Representation, beta: dict) -> dict:
        """Descend a natural bilinear family beta[(y,z)]: F(y) (x) G(z) -> H(y<>z).

        Returns per-object matrices (F (x) G)(x) -> H(x) given on the ambient
        summand (y, z) by h (x) a (x) b -> H(h)(beta(a (x) b)).
        """
        fld = self.cat.field
        out = {}
        for x in self.cat.objects:
            amb = Matrix.zeros(fld, target.dims[x], self.ambient_dim(x))
            for s in self.layout[x]:
                yz = self.cat.dobj(s.y, s.z)
                b_cell = beta[(s.y, s.z)]
                if b_cell.nrows != target.dims[yz] or b_cell.ncols != s.dim_f * s.dim_g:
                    raise StructuralError("bilinear cell (%s, %s) has wrong shape" % (s.y, s.z))
                for h_idx in range(s.hom_dim):
                    blk = target.action_basis((yz, x, h_idx)) * b_cell
                    for i, row in enumerate(blk.rows):
                        for j, v in row.items():
                            amb.rows[i][s.offset + h_idx * s.dim_f * s.dim_g + j] = v
            out[x] = amb * self.quot[x].section
            # well-definedness: the ambient map must kill the relations
            if not (amb * self.quot[x].sub.basis).is_zero():
                raise StructuralError("bilinear family is not natural; does not descend at %s" % x)
        return out


def day_tensor(cat: CategoryPresentation, f: Representation, g: Representation) -> DayTensor:
    """Build the coend quotient of the direct sum over (y, z) at every object."""
    fld = cat.field
    layout = {}
    quot = {}
    for x in cat.objects:
        lay = []
        off = 0
        for y in cat.objects:
            for z in cat.objects:
                hd = cat.hom_dim(cat.dobj(y, z), x)
                s = DaySummand(y, z, hd, f.dims[y], g.dims[z], off)
                lay.append(s)
                off += s.size
        layout[x] = lay
        amb_dim = off

        def idx(y, z, h_idx, a_idx, b_idx, lay=lay):
            for s in lay:
                if s.y == y and s.z == z:
                    return s.offset + (h_idx * s.dim_f + a_idx) * s.dim_g + b_idx
            raise AssertionError

        relations = []
        # left-variable relations: phi: y -> y'
        for (y, yp, i) in cat.all_basis_mors():
            phi = cat.basis_mor(y, yp, i)
            f_phi = f.action_basis((y, yp, i))
            for z in cat.objects:
                shifted = cat.diamond(phi, cat.identity_mor(z))  # y<>z -> y'<>z
                hd = cat.hom_dim(cat.dobj(yp, z), x)
                for h_idx in range(hd):
                    h = cat.basis_mor(cat.dobj(yp, z), x, h_idx)
                    h_shift = cat.compose(h, shifted)  # in hom(y<>z, x)
                    for a_idx in range(f.dims[y]):
                        col_fa = f_phi.column(a_idx)
                        for b_idx in range(g.dims[z]):
                            vec = {}
                            for k, c in h_shift.coeffs.items():
                                vec[idx(y, z, k, a_idx, b_idx)] = c
                            for ap, c in enumerate(col_fa):
                                if c:
                                    t = idx(yp, z, h_idx, ap, b_idx)
                                    vec[t] = fld.sub(vec.get(t, fld.zero()), c)
                            if vec:
                                relations.append(vec)
        # right-variable relations: psi: z -> z'
        for (z, zp, j) in cat.all_basis_mors():
            psi = cat.basis_mor(z, zp, j)
            g_psi = g.action_basis((z, zp, j))
            for y in cat.objects:
                shifted = cat.diamond(cat.identity_mor(y), psi)  # y<>z -> y<>z'
                hd = cat.hom_dim(cat.dobj(y, zp), x)
                for h_idx in range(hd):
                    h = cat.basis_mor(cat.dobj(y, zp), x, h_idx)
                    h_shift = cat.compose(h, shifted)
                    for a_idx in range(f.dims[y]):
                        for b_idx in range(g.dims[z]):
                            col_gb = g_psi.column(b_idx)
                            vec = {}
                            for k, c in h_shift.coeffs.items():
                                vec[idx(y, z, k, a_idx, b_idx)] = c
                            for bp, c in enumerate(col_gb):
                                if c:
                                    t = idx(y, zp, h_idx, a_idx, bp)
                                    vec[t] = fld.sub(vec.get(t, fld.zero()), c)
                            if vec:
                                relations.append(vec)
        cols = [[v.get(i, fld.zero()) for i in range(amb_dim)] for v in relations]
        sub = Subspace.from_columns(fld, amb_dim, cols)
        quot[x] = quotient(amb_dim, sub)

    dims = {x: quot[x].dim for x in cat.objects}
    # induced functorial actions: postcompose the hom factor
    actions = {}
    for (x, xp, k) in cat.all_basis_mors():
        chi = cat.basis_mor(x, xp, k)
        amb_map_rows = Matrix.zeros(fld, quot[xp].ambient, quot[x].ambient)
        for s in layout[x]:
            yz = cat.dobj(s.y, s.z)
            sp = next(t for t in layout[xp] if t.y == s.y and t.z == s.z)
            for h_idx in range(s.hom_dim):
                comp = cat.compose(chi, cat.basis_mor(yz, x, h_idx))
                for hp_idx, c in comp.coeffs.items():
                    for rest in range(s.dim_f * s.dim_g):
                        amb_map_rows.rows[sp.offset + hp_idx * s.dim_f * s.dim_g + rest][
                            s.offset + h_idx * s.dim_f * s.dim_g + rest] = c
        actions[(x, xp, k)] = quot[xp].projection * amb_map_rows * quot[x].section
    rep = Representation(cat, dims, actions,
                         name="(%s(x)%s)" % (f.name, g.name))
    return DayTensor(cat, f, g, layout, quot, rep)


def day_convolution(cat: CategoryPresentation, f: Representation, g: Representation) -> Representation:
    """The monoidal product of representations; see `day_tensor` for the data."""
    return day_tensor(cat, f, g).rep


def day_unit_iso(cat: CategoryPresentation, f: Representation, side: str):
    """Explicit natural isomorphism I (x) F -> F (resp. F (x) I -> F).

    Returns (DayTensor, per-object matrices); raises StructuralError if the
    canonical map fails to be invertible at some object.
    """
    fld = cat.field
    ident = identity_representation(cat)
    if side == "left":
        dt = day_tensor(cat, ident, f)
        beta = {}
        for y in cat.objects:
            for z in cat.objects:
                cols = []
                for k in range(cat.hom_dim(cat.unit, y)):
                    phi = cat.basis_mor(cat.unit, y, k)
                    mat = f.action(cat.diamond(phi, cat.identity_mor(z)))
                    for a_idx in range(f.dims[z]):
                        cols.append(list(mat.column(a_idx)))
                beta[(y, z)] = Matrix.from_columns(fld, f.dims[cat.dobj(y, z)], cols)
    elif side == "right":
        dt = day_tensor(cat, f, ident)
        beta = {}
        for y in cat.objects:
            for z in cat.objects:
                cols = []
                for a_idx in range(f.dims[y]):
                    for k in range(cat.hom_dim(cat.unit, z)):
                        phi = cat.basis_mor(cat.unit, z, k)
                        mat = f.action(cat.diamond(cat.identity_mor(y), phi))
                        cols.append(list(mat.column(a_idx)))
                beta[(y, z)] = Matrix.from_columns(fld, f.dims[cat.dobj(y, z)], cols)
    else:
        raise ValueError("side must be 'left' or 'right'")
    maps = dt.induced_map(f, beta)
    for x in cat.objects:
        m = maps[x]
        if m.nrows != m.ncols or rank(m) != m.nrows:
            raise StructuralError("unit comparison map not invertible at %s" % x)
    # naturality: the comparison intertwines the induced and original actions
    for key in cat.all_basis_mors():
        x, y, _ = key
        if f.action_basis(key) * maps[x] != maps[y] * dt.rep.action_basis(key):
            raise StructuralError("unit comparison map not natural at %s"
                                  % cat.mor_name(key))
    return dt, maps
