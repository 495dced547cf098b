"""Chain complexes of graded cells, homology, and contracting homotopies.

A term is a family of cell dimensions; a differential is a `GradedMap` whose
blocks may raise the internal degree by several different shifts (one per
generator degree).  Homology is computed independently per (object, degree)
cell; a cell is certified only when every block leaving it stays under the
cap.  Contracting homotopies are built chainwise from deterministic
complements, so a split certificate is an exact matrix identity dh + hd = id
on every certified cell.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .errors import DimensionError, WindowError
from .matrix import (
    Matrix,
    Subspace,
    hstack,
    kernel,
    quotient,
    rank,
    solve_matrix,
    vstack,
)


@dataclass
class Term:
    label: str
    dims: dict                      # (obj, deg) -> int
    meta: dict = dc_field(default_factory=dict)

    def dim(self, obj, deg) -> int:
        return self.dims.get((obj, deg), 0)


class GradedMap:
    """Blockwise map between graded terms, keyed (obj, src_deg, tgt_deg)."""

    __slots__ = ("field", "src", "tgt", "blocks", "shifts")

    def __init__(self, field, src: Term, tgt: Term, blocks: dict):
        self.field = field
        self.src = src
        self.tgt = tgt
        self.blocks = {}
        shifts = set()
        for (x, ds, dt), m in blocks.items():
            if m.nrows != tgt.dim(x, dt) or m.ncols != src.dim(x, ds):
                raise DimensionError("block (%s,%d,%d) has shape %dx%d, want %dx%d"
                                     % (x, ds, dt, m.nrows, m.ncols,
                                        tgt.dim(x, dt), src.dim(x, ds)))
            self.blocks[(x, ds, dt)] = m
            shifts.add(dt - ds)
        self.shifts = frozenset(shifts) if shifts else frozenset({0})

    def block(self, x, ds, dt) -> Matrix:
        m = self.blocks.get((x, ds, dt))
        if m is None:
            m = Matrix.zeros(self.field, self.tgt.dim(x, dt), self.src.dim(x, ds))
        return m

    def single_shift(self) -> int:
        if len(self.shifts) != 1:
            raise WindowError("map has mixed degree shifts %s" % sorted(self.shifts))
        return next(iter(self.shifts))

    def out_matrix(self, x, d) -> Matrix:
        """All blocks leaving cell (x, d), stacked over ascending target degree."""
        parts = [self.block(x, d, d + s) for s in sorted(self.shifts)]
        return vstack(parts) if parts else Matrix.zeros(self.field, 0, self.src.dim(x, d))

    def in_matrix(self, x, d) -> Matrix:
        """All blocks entering cell (x, d), side by side over ascending source degree."""
        parts = [self.block(x, d - s, d) for s in sorted(self.shifts) if d - s >= 0]
        return hstack(parts) if parts else Matrix.zeros(self.field, self.tgt.dim(x, d), 0)

    def compose(self, inner: "GradedMap") -> "GradedMap":
        """self after inner; only stored-block paths contribute."""
        blocks = {}
        for (x, d0, dm), m_in in inner.blocks.items():
            for s in self.shifts:
                key = (x, dm, dm + s)
                if key in self.blocks:
                    acc = self.blocks[key] * m_in
                    tgt_key = (x, d0, dm + s)
                    if tgt_key in blocks:
                        blocks[tgt_key] = blocks[tgt_key] + acc
                    else:
                        blocks[tgt_key] = acc
        return GradedMap(self.field, inner.src, self.tgt, blocks)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.blocks.values())

    def nonzero_cells(self):
        return sorted({(x, ds) for (x, ds, dt), m in self.blocks.items() if not m.is_zero()})

    def scale(self, c) -> "GradedMap":
        return GradedMap(self.field, self.src, self.tgt,
                         {k: m.scale(c) for k, m in self.blocks.items()})

    def add(self, other: "GradedMap") -> "GradedMap":
        blocks = dict(self.blocks)
        for k, m in other.blocks.items():
            blocks[k] = blocks[k] + m if k in blocks else m
        return GradedMap(self.field, self.src, self.tgt, blocks)


class ChainComplex:
    """Terms indexed 0..length with differentials d_p: term p -> term p-1."""

    __slots__ = ("cat", "field", "cap", "terms", "diffs", "label")

    def __init__(self, cat, cap, terms, diffs, label="C"):
        self.cat = cat
        self.field = cat.field
        self.cap = cap
        self.terms = list(terms)
        self.diffs = list(diffs)  # diffs[0] is None
        self.label = label
        if len(self.diffs) != len(self.terms):
            raise DimensionError("need one differential slot per term")

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def dd_certificate(self):
        """Check d o d = 0 on every composable pair; returns (ok, cells, bad)."""
        ok = True
        cells = 0
        bad = []
        for p in range(2, len(self.terms)):
            comp = self.diffs[p - 1].compose(self.diffs[p])
            cells += len(comp.blocks)
            if not comp.is_zero():
                ok = False
                bad.append((p, comp.nonzero_cells()))
        return ok, cells, bad

    def homology_window(self, p: int) -> int:
        """Largest internal degree at which H_p is fully certified."""
        out_shift = max(self.diffs[p].shifts) if p >= 1 and self.diffs[p] else 0
        return self.cap - out_shift

    def homology_cell(self, p: int, x, d: int):
        """dim ker - dim im at one cell; asserts boundaries sit inside cycles."""
        dim = self.terms[p].dim(x, d)
        if p >= 1 and self.diffs[p] is not None:
            out = self.diffs[p].out_matrix(x, d)
            cyc = kernel(out)
        else:
            cyc = Subspace.full(self.field, dim)
        if p + 1 < len(self.terms) and self.diffs[p + 1] is not None:
            inm = self.diffs[p + 1].in_matrix(x, d)
            bnd_rank = rank(inm)
            if bnd_rank:
                aug = hstack([cyc.basis, inm])
                assert rank(aug) == cyc.dim, \
                    "boundaries escape cycles at p=%d cell (%s,%d)" % (p, x, d)
        else:
            bnd_rank = 0
        h = cyc.dim - bnd_rank
        assert h >= 0
        return h

    def homology_dims(self, p: int, degrees, parallel_map=map):
        """Homology dimensions over a degree window, cellwise."""
        win = self.homology_window(p)
        for d in degrees:
            if d < 0 or d > win:
                raise WindowError("degree %d outside certified window 0..%d for p=%d"
                                  % (d, win, p))
        cells = [(x, d) for d in degrees for x in self.cat.objects]
        dims = list(parallel_map(lambda cell: self.homology_cell(p, *cell), cells))
        return {cell: h for cell, h in zip(cells, dims)}


@dataclass
class HomotopyCertificate:
    ok: bool
    cells_checked: int
    detail: str
    homotopies: Optional[list] = None  # per term p: dict cell -> Matrix into term p+1


def contracting_homotopy(cx: ChainComplex, top_degrees=None) -> HomotopyCertificate:
    """Build h with dh + hd = id chainwise; certifies the complex splits.

    Works when every differential has a single degree shift.  Chains are
    anchored at term-0 cells; a chain anchored at degree d0 within the cap is
    entirely stored, so the certificate covers every anchored cell.
    """
    field = cx.field
    shifts = [None] + [cx.diffs[p].single_shift() for p in range(1, len(cx.terms))]
    if top_degrees is None:
        top_degrees = range(cx.cap + 1)
    hom = [dict() for _ in cx.terms]
    checked = 0
    for x in cx.cat.objects:
        for d0 in top_degrees:
            degs = [d0]
            for p in range(1, len(cx.terms)):
                degs.append(degs[-1] - shifts[p])
            spaces = [cx.terms[p].dim(x, degs[p]) if degs[p] >= 0 else 0
                      for p in range(len(cx.terms))]
            mats = [None]
            for p in range(1, len(cx.terms)):
                if degs[p] < 0:
                    mats.append(Matrix.zeros(field, spaces[p - 1], 0))
                else:
                    mats.append(cx.diffs[p].block(x, degs[p], degs[p - 1]))
            hs = _chain_homotopy(field, spaces, mats)
            if hs is None:
                return HomotopyCertificate(False, checked,
                                           "no contracting homotopy along chain (%s, %d)"
                                           % (x, d0))
            for p in range(len(cx.terms)):
                if degs[p] >= 0 and p < len(cx.terms) - 1:
                    hom[p][(x, degs[p])] = hs[p]
            # exact identity check dh + hd = id on every cell of the chain
            for p in range(len(cx.terms)):
                if degs[p] < 0 or spaces[p] == 0:
                    continue
                total = Matrix.zeros(field, spaces[p], spaces[p])
                if p < len(cx.terms) - 1:
                    total = total + mats[p + 1] * hs[p]
                if p >= 1:
                    total = total + hs[p - 1] * mats[p]
                if total != Matrix.identity(field, spaces[p]):
                    return HomotopyCertificate(False, checked,
                                               "dh + hd != id at term %d cell (%s, %d)"
                                               % (p, x, degs[p]))
                checked += 1
    return HomotopyCertificate(True, checked, "dh + hd = id on all %d cells" % checked,
                               homotopies=hom)


def _chain_homotopy(field, spaces, mats):
    """Homotopy for one exact chain 0 -> V_N -> ... -> V_0 -> 0.

    mats[p]: V_p -> V_{p-1}.  Returns [h_0, ..., h_{N-1}] with
    h_p: V_p -> V_{p+1}, or None when the chain is not exact.

    Construction: split V_p = Z_p (+) W_p with Z_p the cycles and W_p the
    complement of the canonical quotient; h_p lifts cycles through d_{p+1}
    into W_{p+1} and kills W_p.  Forcing the lift into the complement is what
    makes dh + hd = id hold on the nose and keeps the homotopy deterministic.
    """
    n_terms = len(spaces)
    z_proj = []  # projection onto cycles along the complement, per term
    secs = []    # inclusion of the complement, per term
    for p in range(n_terms):
        v = spaces[p]
        if v == 0:
            z_proj.append(Matrix.zeros(field, 0, 0))
            secs.append(Matrix.zeros(field, 0, 0))
            continue
        z = Subspace.full(field, v) if p == 0 else kernel(mats[p])
        q = quotient(v, z)
        z_proj.append(Matrix.identity(field, v) - q.section * q.projection)
        secs.append(q.section)
    hs = []
    for p in range(n_terms - 1):
        v = spaces[p]
        if v == 0:
            hs.append(Matrix.zeros(field, spaces[p + 1], 0))
            continue
        d_into_w = mats[p + 1] * secs[p + 1]  # W_{p+1} -> V_p
        y = solve_matrix(d_into_w, z_proj[p])
        if y is None:
            return None  # some cycle is not a boundary: not exact here
        hs.append(secs[p + 1] * y)
    # ker(d_top) = 0 is needed too; the dh + hd = id check in the caller
    # detects any failure there.
    return hs
