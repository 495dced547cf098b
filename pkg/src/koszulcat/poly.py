"""Polynomial monoids: graded carriers of monomial-indexed copies of a base.

Monomials of a fixed total degree are ordered graded-lexicographically
(exponent tuples descending), and a cell basis lists monomial blocks with the
base coordinates fastest.  Variables all have degree one; the base sits in
degree zero.  Products that would exceed the cap are discarded and the
carrier is flagged truncated.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import IsoFailureError, PreconditionError, StructuralError
from .gtensor import GradedTensor
from .matrix import Matrix, rank
from .monoid import Element, GradedCarrier, Monoid, is_central


@lru_cache(maxsize=None)
def multi_indices(n: int, d: int) -> tuple:
    """Exponent tuples of length n with total degree d, graded-lex order."""
    if n == 0:
        return ((),) if d == 0 else ()
    if n == 1:
        return ((d,),)
    out = []
    for first in range(d, -1, -1):
        for rest in multi_indices(n - 1, d - first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def mono_index(n: int, d: int) -> dict:
    return {m: i for i, m in enumerate(multi_indices(n, d))}


def mono_str(m: tuple, var_names) -> str:
    parts = []
    for e, v in zip(m, var_names):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append("%s^%d" % (v, e))
    return "*".join(parts)


def default_var_names(n: int) -> tuple:
    return ("t",) if n == 1 else tuple("t%d" % (i + 1) for i in range(n))


@dataclass
class PolyInfo:
    base: Monoid
    var_names: tuple

    @property
    def nvars(self) -> int:
        return len(self.var_names)


def polynomial_monoid(a: Monoid, n: int, cap: int, var_names=None) -> Monoid:
    """The free polynomial monoid on n degree-one variables over a.

    The degree-d cell at x has dimension dim A(x) * #monomials(n, d); the
    pairing is the convolution extension of the base pairing.
    """
    if n == 0:
        return a
    if a.cap != 0:
        raise PreconditionError("polynomial base must be concentrated in degree 0")
    if cap < 0:
        raise PreconditionError("cap must be nonnegative")
    cat, field = a.cat, a.field
    names = tuple(var_names) if var_names else default_var_names(n)
    if len(names) != n:
        raise StructuralError("expected %d variable names, got %d" % (n, len(names)))

    dims = {}
    basis_names = {}
    for d in range(cap + 1):
        mons = multi_indices(n, d)
        for x in cat.objects:
            base_dim = a.carrier.dim(x, 0)
            dims[(x, d)] = len(mons) * base_dim
            base_names = a.carrier.names(x, 0)
            cell = []
            for m in mons:
                ms = mono_str(m, names)
                for bn in base_names:
                    if not ms:
                        cell.append(bn)
                    elif base_dim == 1:
                        cell.append(ms)
                    else:
                        cell.append("%s*%s" % (ms, bn))
            basis_names[(x, d)] = tuple(cell)

    actions = {}
    for key in cat.all_basis_mors():
        base_act = a.carrier.action_matrix(key, 0)
        for d in range(cap + 1):
            mons = multi_indices(n, d)
            actions[(key, d)] = Matrix.identity(field, len(mons)).kron(base_act)

    carrier = GradedCarrier(cat, cap, True, dims, actions, basis_names)

    pairing = {}
    for d1 in range(cap + 1):
        mons1 = multi_indices(n, d1)
        for d2 in range(cap + 1 - d1):
            mons2 = multi_indices(n, d2)
            tgt_index = mono_index(n, d1 + d2)
            for x in cat.objects:
                for y in cat.objects:
                    xy = cat.dobj(x, y)
                    base = a.pairing_cell(x, 0, y, 0)
                    dx, dy = a.carrier.dim(x, 0), a.carrier.dim(y, 0)
                    dt = a.carrier.dim(xy, 0)
                    mat = Matrix.zeros(field, dims[(xy, d1 + d2)],
                                       dims[(x, d1)] * dims[(y, d2)])
                    for i1, m1 in enumerate(mons1):
                        for i2, m2 in enumerate(mons2):
                            t_idx = tgt_index[tuple(e1 + e2 for e1, e2 in zip(m1, m2))]
                            for bi, row in enumerate(base.rows):
                                for bj, v in row.items():
                                    # bj indexes the base Kronecker pair (p, q)
                                    p, q = divmod(bj, dy)
                                    col = (i1 * dx + p) * dims[(y, d2)] + (i2 * dy + q)
                                    mat.rows[t_idx * dt + bi][col] = v
                    pairing[(x, d1, y, d2)] = mat

    name = "%s[%s]" % (a.name, ",".join(names))
    return Monoid(carrier, pairing, a.unit, name=name, poly_info=PolyInfo(a, names))


def variable_element(g: Monoid, i: int) -> Element:
    """The i-th variable (1-based) as a degree-one element at the unit object."""
    if g.poly_info is None:
        raise PreconditionError("not a polynomial monoid")
    n = g.poly_info.nvars
    if not 1 <= i <= n:
        raise PreconditionError("variable index %d out of range 1..%d" % (i, n))
    if g.cap < 1:
        raise PreconditionError("cap too small to contain the variables")
    cat, field = g.cat, g.field
    expo = tuple(1 if k == i - 1 else 0 for k in range(n))
    m_idx = mono_index(n, 1)[expo]
    base_dim = g.poly_info.base.carrier.dim(cat.unit, 0)
    coords = [field.zero()] * g.carrier.dim(cat.unit, 1)
    for j, c in enumerate(g.unit):
        coords[m_idx * base_dim + j] = c
    elt = Element(cat.unit, 1, tuple(coords))
    if not is_central(g, elt):
        raise StructuralError("variable %d is not central; pairing data is inconsistent" % i)
    return elt


def element_from_name(g: Monoid, name: str) -> Element:
    """Resolve a basis name, a variable name, or 'u-v' style differences."""
    if g.poly_info is not None and name in g.poly_info.var_names:
        return variable_element(g, g.poly_info.var_names.index(name) + 1)
    if "-" in name:
        left, right = name.split("-", 1)
        a = element_from_name(g, left.strip())
        b = element_from_name(g, right.strip())
        if (a.obj, a.degree) != (b.obj, b.degree):
            raise StructuralError("difference %r mixes cells" % name)
        f = g.field
        return Element(a.obj, a.degree,
                       tuple(f.sub(x, y) for x, y in zip(a.coords, b.coords)))
    return g.basis_element(name)


@dataclass
class MergeResult:
    monoid: Monoid
    phi: dict          # (obj, deg) -> Matrix from (C_n (x) D_m)(obj)_deg
    tensor: GradedTensor
    unit_preserved: bool
    hom_checked: bool
    hom_ok: bool


def merge_variables(c: Monoid, d: Monoid, e_base: Monoid, witness: dict) -> MergeResult:
    """Realize C[u] (x) D[v] as E[u, v] along a base isomorphism witness.

    witness[x] is the matrix of (C_base (x) D_base)(x) -> E(x) on Day
    coordinates of the degree-0 slices.  The identification Phi sends the
    monomial block pair (u^i, v^j) to the block u^i v^j through the witness;
    it is verified invertible degreewise and unit-preserving.  On the trivial
    backend the monoid-morphism property of Phi is verified cellwise as well.
    """
    if c.poly_info is None and c.cap == 0:
        c = polynomial_monoid(c, 0, 0)  # no-op; keeps the interface uniform
    info_c = c.poly_info
    info_d = d.poly_info
    n = info_c.nvars if info_c else 0
    m = info_d.nvars if info_d else 0
    base_c = info_c.base if info_c else c
    base_d = info_d.base if info_d else d
    cat, field = c.cat, c.field
    cap = min(c.cap, d.cap) if (n and m) else max(c.cap, d.cap)

    day0 = GradedTensor(base_c.carrier, base_d.carrier, cap=0).day[(0, 0)]
    for x in cat.objects:
        w = witness[x]
        if w.ncols != day0.rep.dims[x] or w.nrows != e_base.carrier.dim(x, 0):
            raise IsoFailureError("witness at %s has the wrong shape" % x)
        if w.nrows != w.ncols or rank(w) != w.nrows:
            raise IsoFailureError("witness at %s is not invertible" % x)

    names = (info_c.var_names if info_c else ()) + (info_d.var_names if info_d else ())
    merged = polynomial_monoid(e_base, n + m, cap, var_names=names) if n + m else e_base

    gt = GradedTensor(c.carrier, d.carrier, cap=cap)

    def beta(d1, d2):
        """(C_n)(y)_{d1} (x) (D_m)(z)_{d2} -> E_{n+m}(y<>z)_{d1+d2}."""
        mons1 = multi_indices(n, d1) if n else multi_indices(0, d1)
        mons2 = multi_indices(m, d2) if m else multi_indices(0, d2)
        tgt_index = mono_index(n + m, d1 + d2)
        out = {}
        for y in cat.objects:
            for z in cat.objects:
                yz = cat.dobj(y, z)
                dim_cy = base_c.carrier.dim(y, 0)
                dim_dz = base_d.carrier.dim(z, 0)
                tgt_dim = merged.carrier.dim(yz, d1 + d2)
                base_tgt = e_base.carrier.dim(yz, 0)
                pure = {}
                for a_idx in range(dim_cy):
                    va = [field.zero()] * dim_cy
                    va[a_idx] = field.one()
                    for b_idx in range(dim_dz):
                        vb = [field.zero()] * dim_dz
                        vb[b_idx] = field.one()
                        amb = [field.zero()] * day0.ambient_dim(yz)
                        ident = cat.identity_mor(yz)
                        for h_idx, hc in ident.coeffs.items():
                            amb[day0.ambient_index(yz, y, z, h_idx, a_idx, b_idx)] = hc
                        small = day0.quot[yz].projection.apply(amb)
                        pure[(a_idx, b_idx)] = witness[yz].apply(small)
                mat = Matrix.zeros(field, tgt_dim,
                                   len(mons1) * dim_cy * len(mons2) * dim_dz)
                for i1, m1 in enumerate(mons1):
                    for i2, m2 in enumerate(mons2):
                        t_idx = tgt_index[m1 + m2]
                        for a_idx in range(dim_cy):
                            for b_idx in range(dim_dz):
                                col = (i1 * dim_cy + a_idx) * (len(mons2) * dim_dz) \
                                    + (i2 * dim_dz + b_idx)
                                for r, v in enumerate(pure[(a_idx, b_idx)]):
                                    if v:
                                        mat.rows[t_idx * base_tgt + r][col] = v
                out[(y, z)] = mat
        return out

    phi = gt.induced_map_cells(merged.carrier, beta, shift=0)
    for (x, deg), mat in sorted(phi.items()):
        if mat.nrows != mat.ncols or (mat.nrows and rank(mat) != mat.nrows):
            raise IsoFailureError("Phi fails to be invertible at (%s, %d)" % (x, deg))

    # identity of the tensor maps to the identity of the merged monoid
    u = cat.unit
    unit_tensor = gt.pure_cell_vector(u, 0, 0, u, u, list(c.unit), list(d.unit))
    unit_preserved = phi[(u, 0)].apply(unit_tensor) == tuple(merged.unit)

    hom_checked = cat.is_trivial
    hom_ok = True
    if hom_checked:
        hom_ok = _check_phi_multiplicative(c, d, merged, gt, phi)
    return MergeResult(merged, phi, gt, unit_preserved, hom_checked, hom_ok)


def _check_phi_multiplicative(c: Monoid, d: Monoid, merged: Monoid,
                              gt: GradedTensor, phi: dict) -> bool:
    """Trivial backend: Phi of a product equals the product of the Phi images.

    Checked as one matrix identity per degree 4-tuple: the tensor-square
    multiplication is (mu_C (x) mu_D) conjugated by the middle swap of the
    Kronecker factors; the braiding contributes no twist on a single object.
    """
    cat, field = c.cat, c.field
    u = cat.unit
    cap = gt.cap

    def block_embed(d1, d2, mat_cols):
        """Columns in C_{d1} (x) D_{d2} coordinates, embedded in the cell."""
        blk = gt.block(u, d1 + d2, d1)
        big = Matrix.zeros(field, gt.dim(u, d1 + d2), mat_cols.ncols)
        for i, row in enumerate(mat_cols.rows):
            for j, v in row.items():
                big.rows[blk.offset + i][j] = v
        return big

    for da1 in range(cap + 1):
        for da2 in range(cap + 1 - da1):
            for db1 in range(cap + 1 - da1 - da2):
                for db2 in range(cap + 1 - da1 - da2 - db1):
                    dc1, dd1 = c.carrier.dim(u, da1), d.carrier.dim(u, da2)
                    dc2, dd2 = c.carrier.dim(u, db1), d.carrier.dim(u, db2)
                    size = dc1 * dd1 * dc2 * dd2
                    if size == 0:
                        continue
                    # middle swap: (p1 q1 p2 q2) -> (p1 p2 q1 q2)
                    swap = Matrix.zeros(field, size, size)
                    for i1 in range(dc1):
                        for j1 in range(dd1):
                            for i2 in range(dc2):
                                for j2 in range(dd2):
                                    src = ((i1 * dd1 + j1) * dc2 + i2) * dd2 + j2
                                    dst = ((i1 * dc2 + i2) * dd1 + j1) * dd2 + j2
                                    swap.rows[dst][src] = field.one()
                    mu_cc = c.pairing_cell(u, da1, u, db1)
                    mu_dd = d.pairing_cell(u, da2, u, db2)
                    mu_tensor = mu_cc.kron(mu_dd) * swap
                    # embed pure tensors of the two cells into their blocks
                    tot = da1 + da2 + db1 + db2
                    lhs = phi[(u, tot)] * block_embed(da1 + db1, da2 + db2, mu_tensor)
                    emb1 = block_embed(da1, da2,
                                       Matrix.identity(field, dc1 * dd1))
                    emb2 = block_embed(db1, db2,
                                       Matrix.identity(field, dc2 * dd2))
                    rhs = merged.pairing_cell(u, da1 + da2, u, db1 + db2) * \
                        (phi[(u, da1 + da2)] * emb1).kron(phi[(u, db1 + db2)] * emb2)
                    if lhs != rhs:
                        return False
    return True
