"""Problem-file parser: one plain-text grammar for every CLI task.

Line-oriented, comments with '#', blank lines ignored.  Scalars are exact
('3/7', '-2'; prime fields also accept 'a mod p' on input).  Linear
combinations are '+'-separated 'coefficient*name' terms, or '0'.

    field Q | field F 5
    backend trivial | backend finite

    # finite backend only
    objects e g
    unit e
    diamond e g = g
    hom e g = u_eg ...
    identity e = 1*u_ee
    compose u_gg u_eg = 1*u_eg        # g after f
    dmor u_eg u_ge = 1*u_gg           # f <> g
    symmetry e g = 1*u_gg             # in hom(e<>g, g<>e)
    rep reg dims e=2 g=2
    act reg u_eg = 1 1 ; 0 1          # rows of the matrix

    # monoids
    monoid A                          # structure-constant table
      basis one xbar                  # trivial backend: one list
      basis e : i_e                   # finite backend: per object
      unit 1*one
      mul one xbar = 1*xbar           # omitted products are zero
      act u_eg i_e = 1*i_g            # finite backend carrier actions
    end
    monoid I identity                 # the unit monoid of the category
    poly P over A vars x y            # polynomial monoid (cap set at run time)
    main P                            # the subject of the tasks

    module M quotient x               # quotient of the subject by an ideal
    module N self                     # the subject as a bimodule

    task koszul alpha=x,y max-degree=4
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .category import CategoryPresentation, Representation, identity_representation
from .errors import ParseError, StructuralError
from .field import Field
from .matrix import Matrix
from .monoid import (
    Monoid,
    generated_submodule,
    identity_monoid,
    monoid_from_table,
    quotient_module,
    regular_bimodule,
)
from .poly import element_from_name, polynomial_monoid


@dataclass
class MonoidDecl:
    kind: str                     # "table" | "identity" | "poly"
    basis: dict = dc_field(default_factory=dict)
    mul: dict = dc_field(default_factory=dict)
    unit: dict = dc_field(default_factory=dict)
    acts: dict = dc_field(default_factory=dict)
    over: Optional[str] = None
    var_names: tuple = ()


@dataclass
class RepDecl:
    dims: dict
    acts: dict


@dataclass
class ProblemFile:
    path: str
    field: Field
    backend: str
    category: CategoryPresentation
    monoids: dict
    reps: dict
    main: Optional[str]
    modules: dict
    task: dict

    def main_name(self) -> str:
        if self.main:
            return self.main
        if len(self.monoids) == 1:
            return next(iter(self.monoids))
        raise StructuralError("several monoids declared; add a 'main <name>' line")

    def build_monoid(self, name: str, cap: int) -> Monoid:
        try:
            decl = self.monoids[name]
        except KeyError:
            raise StructuralError("no monoid named %r in %s" % (name, self.path))
        if decl.kind == "identity":
            return identity_monoid(self.category)
        if decl.kind == "table":
            carrier_actions = None
            if decl.acts:
                where = {}
                for obj, names in decl.basis.items():
                    for i, nm in enumerate(names):
                        where[nm] = (obj, i)
                carrier_actions = {}
                for mor_name, images in decl.acts.items():
                    key = _resolve_mor(self.category, mor_name)
                    x, y, _ = key
                    mat = Matrix.zeros(self.field, len(decl.basis.get(y, ())),
                                       len(decl.basis.get(x, ())))
                    for src_name, combo in images.items():
                        so, si = where[src_name]
                        if so != x:
                            raise StructuralError(
                                "act %s applied to %s at the wrong object" % (mor_name, src_name))
                        for tgt_name, c in combo.items():
                            to, ti = where[tgt_name]
                            if to != y:
                                raise StructuralError(
                                    "act %s lands at the wrong object" % mor_name)
                            mat.rows[ti][si] = c
                    carrier_actions[key] = mat
            return monoid_from_table(self.category, decl.basis, decl.mul, decl.unit,
                                     carrier_actions=carrier_actions, name=name)
        base = self.build_monoid(decl.over, 0)
        return polynomial_monoid(base, len(decl.var_names), cap,
                                 var_names=decl.var_names)

    def build_subject(self, cap: int) -> Monoid:
        return self.build_monoid(self.main_name(), cap)

    def build_module(self, name: str, subject: Monoid):
        try:
            decl = self.modules[name]
        except KeyError:
            raise StructuralError("no module named %r in %s" % (name, self.path))
        if decl == ("self",):
            return regular_bimodule(subject)
        gens = [element_from_name(subject, g) for g in decl[1]]
        return quotient_module(regular_bimodule(subject),
                               generated_submodule(subject, gens)).module

    def build_representation(self, name: str) -> Representation:
        try:
            decl = self.reps[name]
        except KeyError:
            raise StructuralError("no representation named %r in %s" % (name, self.path))
        if decl == ("identity",):
            return identity_representation(self.category)
        mors = {}
        for (mor_name, rows) in decl.acts.items():
            key = _resolve_mor(self.category, mor_name)
            x, y, _ = key
            mors[key] = Matrix.from_rows(self.field, rows)
        return Representation(self.category, decl.dims, mors, name=name)


def _resolve_mor(cat: CategoryPresentation, name: str):
    for (x, y), names in cat.hom.items():
        if name in names:
            return (x, y, names.index(name))
    raise StructuralError("no hom basis element named %r" % name)


class _Parser:
    def __init__(self, text: str, path: str):
        self.path = path
        self.lines = text.splitlines()
        self.i = 0
        self.field: Optional[Field] = None
        self.backend = None
        self.objects = []
        self.unit = None
        self.diamond = {}
        self.hom = {}
        self.identity = {}
        self.compose = {}
        self.dmor = {}
        self.symmetry = {}
        self.reps = {}
        self.monoids = {}
        self.main = None
        self.modules = {}
        self.task = {}

    def err(self, msg):
        raise ParseError(msg, line=self.i + 1)

    def scalar(self, text):
        try:
            return self.field.parse(text)
        except Exception:
            self.err("bad scalar %r" % text)

    def lincomb(self, text):
        text = text.strip()
        if text == "0":
            return {}
        out = {}
        for term in text.split("+"):
            term = term.strip()
            if "*" not in term:
                self.err("term %r needs the form coeff*name" % term)
            coeff, name = term.split("*", 1)
            out[name.strip()] = self.scalar(coeff.strip())
        return out

    def parse(self) -> ProblemFile:
        while self.i < len(self.lines):
            raw = self.lines[self.i]
            line = raw.split("#", 1)[0].strip()
            if not line:
                self.i += 1
                continue
            toks = line.split()
            head = toks[0]
            handler = getattr(self, "p_" + head.replace("-", "_"), None)
            if handler is None:
                self.err("unknown directive %r" % head)
            handler(toks, line)
            self.i += 1
        if self.field is None:
            raise ParseError("missing 'field' line in %s" % self.path)
        if self.backend is None:
            raise ParseError("missing 'backend' line in %s" % self.path)
        cat = self.build_category()
        return ProblemFile(self.path, self.field, self.backend, cat, self.monoids,
                           self.reps, self.main, self.modules, self.task)

    # -- directives -------------------------------------------------------

    def p_field(self, toks, line):
        try:
            self.field = Field.from_descriptor(" ".join(toks[1:]))
        except Exception as exc:
            self.err(str(exc))

    def p_backend(self, toks, line):
        if toks[1] not in ("trivial", "finite"):
            self.err("backend must be trivial or finite")
        self.backend = toks[1]

    def p_objects(self, toks, line):
        self.objects = toks[1:]

    def p_unit(self, toks, line):
        self.unit = toks[1]

    def p_diamond(self, toks, line):
        if len(toks) != 5 or toks[3] != "=":
            self.err("expected: diamond x y = z")
        self.diamond[(toks[1], toks[2])] = toks[4]

    def p_hom(self, toks, line):
        if "=" not in toks:
            self.err("expected: hom x y = names...")
        eq = toks.index("=")
        if eq != 3:
            self.err("expected: hom x y = names...")
        self.hom[(toks[1], toks[2])] = tuple(toks[4:])

    def p_identity(self, toks, line):
        _, rest = line.split(None, 1)
        obj, expr = rest.split("=", 1)
        self.identity[obj.strip()] = self.lincomb(expr)

    def p_compose(self, toks, line):
        # compose g f = lincomb  (g after f)
        body = line[len("compose"):]
        left, expr = body.split("=", 1)
        parts = left.split()
        if len(parts) != 2:
            self.err("expected: compose g f = lincomb")
        self.compose[(parts[0], parts[1])] = self.lincomb(expr)

    def p_dmor(self, toks, line):
        body = line[len("dmor"):]
        left, expr = body.split("=", 1)
        parts = left.split()
        if len(parts) != 2:
            self.err("expected: dmor f g = lincomb")
        self.dmor[(parts[0], parts[1])] = self.lincomb(expr)

    def p_symmetry(self, toks, line):
        body = line[len("symmetry"):]
        left, expr = body.split("=", 1)
        parts = left.split()
        if len(parts) != 2:
            self.err("expected: symmetry x y = lincomb")
        self.symmetry[(parts[0], parts[1])] = self.lincomb(expr)

    def p_rep(self, toks, line):
        name = toks[1]
        if len(toks) == 3 and toks[2] == "identity":
            self.reps[name] = ("identity",)
            return
        if len(toks) < 3 or toks[2] != "dims":
            self.err("expected: rep name dims obj=dim ... or rep name identity")
        dims = {}
        for pair in toks[3:]:
            obj, val = pair.split("=")
            dims[obj] = int(val)
        self.reps[name] = RepDecl(dims, {})

    def p_act(self, toks, line):
        # either 'act <rep> <mor> = rows' or inside a monoid block (handled there)
        body = line[len("act"):]
        left, expr = body.split("=", 1)
        parts = left.split()
        if len(parts) != 2:
            self.err("expected: act rep mor = rows")
        rep, mor = parts
        if rep not in self.reps or self.reps[rep] == ("identity",):
            self.err("unknown representation %r" % rep)
        rows = []
        for chunk in expr.split(";"):
            rows.append([self.scalar(v) for v in chunk.split()])
        self.reps[rep].acts[mor] = rows

    def p_monoid(self, toks, line):
        name = toks[1]
        if len(toks) == 3 and toks[2] == "identity":
            self.monoids[name] = MonoidDecl("identity")
            return
        decl = MonoidDecl("table")
        self.i += 1
        while self.i < len(self.lines):
            raw = self.lines[self.i].split("#", 1)[0].strip()
            if not raw:
                self.i += 1
                continue
            if raw == "end":
                break
            toks2 = raw.split()
            if toks2[0] == "basis":
                if ":" in toks2:
                    sep = toks2.index(":")
                    decl.basis[toks2[1]] = tuple(toks2[sep + 1:])
                else:
                    if self.backend != "trivial":
                        self.err("finite backend basis needs 'basis obj : names'")
                    decl.basis["1"] = tuple(toks2[1:])
            elif toks2[0] == "unit":
                decl.unit = self.lincomb(raw[len("unit"):])
            elif toks2[0] == "mul":
                body = raw[len("mul"):]
                left, expr = body.split("=", 1)
                parts = left.split()
                if len(parts) != 2:
                    self.err("expected: mul a b = lincomb")
                decl.mul[(parts[0], parts[1])] = self.lincomb(expr)
            elif toks2[0] == "act":
                body = raw[len("act"):]
                left, expr = body.split("=", 1)
                parts = left.split()
                if len(parts) != 2:
                    self.err("expected: act mor basisname = lincomb")
                decl.acts.setdefault(parts[0], {})[parts[1]] = self.lincomb(expr)
            else:
                self.err("unknown monoid directive %r" % toks2[0])
            self.i += 1
        else:
            self.err("monoid block for %r not closed with 'end'" % name)
        self.monoids[name] = decl

    def p_poly(self, toks, line):
        # poly P over A vars x y ...
        if len(toks) < 6 or toks[2] != "over" or toks[4] != "vars":
            self.err("expected: poly name over base vars v1 v2 ...")
        self.monoids[toks[1]] = MonoidDecl("poly", over=toks[3],
                                           var_names=tuple(toks[5:]))

    def p_main(self, toks, line):
        self.main = toks[1]

    def p_module(self, toks, line):
        name = toks[1]
        if toks[2] == "self":
            self.modules[name] = ("self",)
        elif toks[2] == "quotient":
            gens = " ".join(toks[3:]).replace(",", " ").split()
            if not gens:
                self.err("quotient module needs generators")
            self.modules[name] = ("quotient", gens)
        else:
            self.err("module kind must be self or quotient")

    def p_task(self, toks, line):
        task = {"op": toks[1]}
        for item in toks[2:]:
            if "=" in item:
                k, v = item.split("=", 1)
                task[k] = v
            else:
                task[item] = True
        self.task = task

    # -- category assembly ---------------------------------------------------

    def build_category(self) -> CategoryPresentation:
        if self.backend == "trivial":
            return CategoryPresentation.trivial(self.field)
        if not self.objects or self.unit is None:
            raise ParseError("finite backend needs 'objects' and 'unit' lines")
        where = {}
        for (x, y), names in self.hom.items():
            for i, nm in enumerate(names):
                if nm in where:
                    raise ParseError("duplicate hom basis name %r" % nm)
                where[nm] = (x, y, i)

        def mor_key(nm):
            if nm not in where:
                raise ParseError("unknown hom basis name %r" % nm)
            return where[nm]

        def to_indexed(table):
            out = {}
            for names, combo in table.items():
                keys = tuple(mor_key(nm) for nm in names)
                vec = {}
                for nm, c in combo.items():
                    kx, ky, ki = mor_key(nm)
                    vec[ki] = c
                out[keys] = vec
            return out

        compose_table = to_indexed(self.compose)
        dmor_table = to_indexed(self.dmor)
        identities = {}
        for obj, combo in self.identity.items():
            vec = {}
            for nm, c in combo.items():
                _, _, ki = mor_key(nm)
                vec[ki] = c
            identities[obj] = vec
        symmetry_table = {}
        for (x, y), combo in self.symmetry.items():
            vec = {}
            for nm, c in combo.items():
                _, _, ki = mor_key(nm)
                vec[ki] = c
            symmetry_table[(x, y)] = vec
        return CategoryPresentation(
            backend="finite",
            field=self.field,
            objects=tuple(self.objects),
            unit=self.unit,
            hom=self.hom,
            compose_table=compose_table,
            identities=identities,
            dobj_table=self.diamond,
            dmor_table=dmor_table,
            symmetry_table=symmetry_table,
            name=self.path.rsplit("/", 1)[-1],
        )


def parse_problem_file(path: str) -> ProblemFile:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return _Parser(text, path).parse()


def parse_problem_text(text: str, path="<string>") -> ProblemFile:
    return _Parser(text, path).parse()
