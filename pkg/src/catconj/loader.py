"""Meaning of definition documents: resolution, checks and computations.

Names are resolved on demand, so declarations may refer to each other in any
order.  A reference ``P.C`` reaches into a built-in (here the base category of
the closed structure ``P``).
"""

from __future__ import annotations

import dataclasses
import os

import numpy as np

from . import ekgraph as ek
from .adjoint import Adjunction, check_adjunction, conjugate_left, conjugate_right, galois_connection
from .closedmon import (
    ClosedMonoidalCategory,
    MonoidalFunctorData,
    check_closed,
    check_monoidal_functor,
    closed_structure_operator,
    from_two_var,
    internal_adjunction_operator,
    projection_operator,
    to_two_var,
)
from .docformat import Call, Decl, Document, Entry, Sym, kv, stmt, ARROW, COLON, EQ
from .extranat import ExtranatFrame, ExtranatTrans, check_extranatural
from .fincat import (
    Category,
    FinCategory,
    Functor,
    NatTrans,
    ProductCategory,
    Report,
    StructuralError,
    check_functor,
    check_nat_trans,
    compose_functors,
    identity_functor,
    opposite,
    opposite_functor,
    posetal_functor,
    posetal_nat,
    product,
    product_functor,
    random_poset_category,
    same_category,
    terminal,
    validate_category,
)
from .instances import (
    HeytingSearch,
    SetMapData,
    chain,
    cyclic_group,
    delooping,
    group_category,
    powerset,
    search_nonclosed_map,
    set_map_adjunctions,
    symmetric_group,
)
from .twovar import (
    TwoVarAdjunctionL,
    TwoVarAdjunctionR,
    check_two_var,
    compose_two_var,
    conjugate2_left,
    conjugate2_right,
)


class LoadError(StructuralError):
    def __init__(self, decl: Decl | None, msg, line=None):
        self.decl = decl
        self.line = line or (decl.line if decl else 0)
        where = f"line {self.line}: " if self.line else ""
        super().__init__(f"{where}{msg}" + (f" (in {decl.kind} {decl.name!r})" if decl else ""))


def seed() -> int:
    """Seed for random instances, from ``CONJ_SEED`` (default 0)."""
    return int(os.environ.get("CONJ_SEED", "0"))


def _truthy(v) -> bool:
    return v in ("true", "yes", "1")


def _int(v, decl, what):
    try:
        return int(v)
    except (TypeError, ValueError):
        raise LoadError(decl, f"{what} must be an integer, got {v!r}") from None


_KIND_TYPES = {
    "category": Category, "functor": Functor, "nattrans": NatTrans, "adjunction": Adjunction,
    "extranat": ExtranatTrans, "twovar": (TwoVarAdjunctionL, TwoVarAdjunctionR),
    "closed": ClosedMonoidalCategory, "monfunctor": MonoidalFunctorData,
}

_DERIVED = {"two_var": to_two_var}


class Loader:
    def __init__(self, doc: Document):
        self.doc = doc
        self.decls = {d.name: d for d in doc.decls}
        self.values: dict = {}
        self._stack: list = []

    # -- lookup -------------------------------------------------------------

    def value(self, name: str, ctx: Decl | None = None):
        if name in self.values:
            return self.values[name]
        head, _, rest = name.partition(".")
        if head not in self.decls:
            raise LoadError(ctx, f"unresolved reference {name!r}")
        if rest:
            v = self.value(head, ctx)
            for part in rest.split("."):
                if part.startswith("_"):
                    raise LoadError(ctx, f"no part {part!r} in {name!r}")
                if part in _DERIVED:
                    v = _DERIVED[part](v)
                    continue
                if not hasattr(v, part):
                    raise LoadError(ctx, f"{head} has no part {part!r} (reference {name!r})")
                v = getattr(v, part)
                if callable(v) and not isinstance(v, (Category, Functor)):
                    v = v()
            return v
        d = self.decls[name]
        if name in self._stack:
            cyc = " -> ".join(self._stack[self._stack.index(name):] + [name])
            raise LoadError(d, f"circular reference {cyc}")
        self._stack.append(name)
        try:
            v = getattr(self, f"_build_{d.kind}")(d)
        except LoadError:
            raise
        except StructuralError as e:
            raise LoadError(d, str(e)) from None
        finally:
            self._stack.pop()
        self.values[name] = v
        return v

    def typed(self, ref, kind, ctx):
        if not isinstance(ref, str):
            raise LoadError(ctx, f"expected the name of a {kind}, got {ref!r}")
        v = self.value(ref, ctx)
        if not isinstance(v, _KIND_TYPES[kind]):
            raise LoadError(ctx, f"{ref!r} is a {type(v).__name__}, expected a {kind}")
        return v

    def category(self, ref, ctx) -> Category:
        if isinstance(ref, list):
            return product(*[self.category(r, ctx) for r in ref])
        if ref == "terminal":
            return terminal()
        if isinstance(ref, str) and ref.endswith("^op"):
            return opposite(self.category(ref[:-3], ctx))
        v = self.value(ref, ctx) if isinstance(ref, str) else None
        if isinstance(v, ClosedMonoidalCategory):
            raise LoadError(ctx, f"{ref!r} is a closed structure; use {ref}.C for its category")
        if not isinstance(v, Category):
            raise LoadError(ctx, f"{ref!r} is not a category")
        return v

    def functor(self, ref, ctx) -> Functor:
        if isinstance(ref, Call):
            args = ref.args
            if ref.fn == "comp":
                out = self.functor(args[-1], ctx)
                for g in reversed(args[:-1]):
                    out = compose_functors(self.functor(g, ctx), out)
                return out
            if ref.fn == "op" and len(args) == 1:
                return opposite_functor(self.functor(args[0], ctx))
            if ref.fn == "id" and len(args) == 1:
                return identity_functor(self.category(args[0], ctx))
            if ref.fn == "prod":
                return product_functor(*[self.functor(a, ctx) for a in args])
            raise LoadError(ctx, f"unknown functor expression {ref}")
        return self.typed(ref, "functor", ctx)

    # -- builders -----------------------------------------------------------

    def _need(self, d: Decl, *keys):
        for k in keys:
            if not d.has(k):
                raise LoadError(d, f"missing key {k!r}")

    def _build_builtin(self, d: Decl):
        self._need(d, "make")
        kind, arg = d.get("make"), d.get("arg")
        if kind == "powerset":
            return powerset(arg if isinstance(arg, list) else _int(arg, d, "arg"), name=d.name)
        if kind == "chain":
            return chain(_int(arg, d, "arg"))
        if kind in ("cyclic", "symmetric"):
            els, mul = (cyclic_group if kind == "cyclic" else symmetric_group)(_int(arg, d, "arg"))
            return group_category(els, mul, name=d.name)
        if kind == "delooping":
            return delooping(_int(arg, d, "arg"))
        if kind == "setmap":
            if not isinstance(arg, list) or not all(isinstance(p, tuple) and len(p) == 2 for p in arg):
                raise LoadError(d, "setmap needs arg: [(x, y), ...]")
            ys = d.get("codomain")
            return set_map_adjunctions(dict(arg), ys=ys)
        if kind == "heyting_search":
            return search_nonclosed_map(_int(arg, d, "arg") if arg is not None else 5)
        if kind == "random_poset":
            n = _int(arg, d, "arg")
            return random_poset_category(np.random.default_rng(seed()), n, name=d.name)
        raise LoadError(d, f"unknown builtin {kind!r}")

    def _build_category(self, d: Decl):
        self._need(d, "objects")
        objects = d.get("objects")
        mors, idents, comp = [], {}, {}
        for e in d.statements():
            it = e.items
            if it[0] == "morphism" and len(it) == 6 and it[2] == Sym(":") and it[4] == Sym("->"):
                mors.append((it[1], it[3], it[5]))
            elif it[0] == "identity" and len(it) == 4 and it[2] == Sym("="):
                idents[it[1]] = it[3]
            elif it[0] == "compose" and len(it) == 5 and it[3] == Sym("="):
                comp[(it[1], it[2])] = it[4]
            else:
                raise LoadError(d, f"cannot read statement {' '.join(map(str, it))!r}", e.line)
        names = {m for m, _, _ in mors}
        for x in objects:
            if x not in idents:
                idents[x] = f"id_{x}"
            if idents[x] not in names:
                mors.append((idents[x], x, x))
                names.add(idents[x])
        if _truthy(d.get("thin")):
            ends = {m: (s, t) for m, s, t in mors}
            by_ends: dict = {}
            for m, s, t in mors:
                by_ends.setdefault((s, t), []).append(m)
            for g, (sg, tg) in ends.items():
                for f, (sf, tf) in ends.items():
                    if tf == sg and (g, f) not in comp:
                        hs = by_ends.get((sf, tg), [])
                        if len(hs) != 1:
                            raise LoadError(d, f"thin category: {len(hs)} morphisms {sf} -> {tg} for {g} o {f}")
                        comp[(g, f)] = hs[0]
        return FinCategory(objects, mors, idents, comp, name=d.name)

    def _map_statements(self, d, head):
        out = {}
        for e in d.statements(head):
            it = e.items
            if len(it) != 4 or it[2] not in (Sym("->"), Sym("=")):
                raise LoadError(d, f"cannot read statement {' '.join(map(str, it))!r}", e.line)
            if it[1] in out:
                raise LoadError(d, f"two {head} entries for {it[1]!r}", e.line)
            out[it[1]] = it[3]
        return out

    def _build_functor(self, d: Decl):
        for key, fn in (("compose", "comp"), ("op", "op"), ("identity", "id"), ("product", "prod")):
            if d.has(key):
                v = d.get(key)
                f = self.functor(Call(fn, tuple(v) if isinstance(v, list) else (v,)), d)
                f.name = d.name
                return f
        self._need(d, "source", "target")
        S, T = self.category(d.get("source"), d), self.category(d.get("target"), d)
        omap = self._map_statements(d, "obj")
        if _truthy(d.get("thin")):
            missing = [x for x in S.objects if x not in omap]
            if missing:
                raise LoadError(d, f"no image for object {missing[0]!r}")
            return posetal_functor(S, T, omap.__getitem__, name=d.name)
        return Functor(S, T, omap, self._map_statements(d, "mor"), name=d.name)

    def _build_nattrans(self, d: Decl):
        self._need(d, "source", "target")
        F, G = self.functor(d.get("source"), d), self.functor(d.get("target"), d)
        if _truthy(d.get("thin")):
            return posetal_nat(F, G, name=d.name)
        return NatTrans(F, G, self._map_statements(d, "component"), name=d.name)

    def _build_adjunction(self, d: Decl):
        self._need(d, "left", "right")
        F, U = self.functor(d.get("left"), d), self.functor(d.get("right"), d)
        if _truthy(d.get("thin")):
            return galois_connection(F, U, name=d.name)
        self._need(d, "unit", "counit")
        return Adjunction(F, U, self.typed(d.get("unit"), "nattrans", d),
                          self.typed(d.get("counit"), "nattrans", d), name=d.name)

    def _build_extranat(self, d: Decl):
        self._need(d, "P", "Q", "p_factors", "p_roles", "q_factors", "q_roles")
        P, Q = self.functor(d.get("P"), d), self.functor(d.get("Q"), d)
        fr = ExtranatFrame(P, Q, [self.category(c, d) for c in d.get("p_factors")], d.get("p_roles"),
                           [self.category(c, d) for c in d.get("q_factors")], d.get("q_roles"))
        if _truthy(d.get("thin")):
            comps = {}
            for c, a, b in fr.keys():
                hs = fr.D.hom(fr.p_obj(c, c, a), fr.q_obj(a, b, b))
                if len(hs) != 1:
                    raise LoadError(d, f"thin: {len(hs)} candidate components at {(c, a, b)!r}")
                comps[(c, a, b)] = hs[0]
        else:
            comps = self._map_statements(d, "component")
        return ExtranatTrans(fr, comps, name=d.name)

    def _build_twovar(self, d: Decl):
        self._need(d, "side", "T", "H")
        side = d.get("side")
        cls = {"L": TwoVarAdjunctionL, "R": TwoVarAdjunctionR}.get(side)
        if cls is None:
            raise LoadError(d, f"side must be L or R, got {side!r}")
        T, H = self.functor(d.get("T"), d), self.functor(d.get("H"), d)
        if _truthy(d.get("thin")):
            def forced(what, cat):
                def pick(x, y):
                    hs = cat.hom(x, y)
                    if len(hs) != 1:
                        raise LoadError(d, f"thin: {len(hs)} candidate {what} components {x!r} -> {y!r}")
                    return hs[0]
                return pick
            if side == "L":
                C, B = T.target, H.target
                eps = lambda a, c: forced("counit", C)(T.obj((a, H.obj((a, c)))), c)
                eta = lambda a, b: forced("unit", B)(b, H.obj((a, T.obj((a, b)))))
            else:
                C, A = T.target, H.target
                eps = lambda b, c: forced("counit", C)(T.obj((H.obj((c, b)), b)), c)
                eta = lambda b, a: forced("unit", A)(a, H.obj((T.obj((a, b)), b)))
            return cls(T, H, eps, eta, name=d.name)
        return cls(T, H, self._map_statements(d, "eps"), self._map_statements(d, "eta"), name=d.name)

    def _build_closed(self, d: Decl):
        self._need(d, "twovar", "unit")
        adj = self.typed(d.get("twovar"), "twovar", d)
        if adj.side != "L":
            raise LoadError(d, "a closed structure is built from a left-sided two-variable adjunction")
        return from_two_var(adj, d.get("unit"), name=d.name)

    def _build_monfunctor(self, d: Decl):
        self._need(d, "X", "Y", "f_star")
        X, Y = self.typed(d.get("X"), "closed", d), self.typed(d.get("Y"), "closed", d)
        fs = self.functor(d.get("f_star"), d)
        if _truthy(d.get("thin")):
            omega = posetal_nat(compose_functors(X.tensor, product_functor(fs, fs)), compose_functors(fs, Y.tensor),
                                name="omega")
        else:
            self._need(d, "omega")
            omega = self.typed(d.get("omega"), "nattrans", d)
        return MonoidalFunctorData(X, Y, fs, omega, name=d.name)

    # -- diagrams -----------------------------------------------------------

    def _build_signature(self, d: Decl):
        s = ek.Signature()
        s.category(*d.get("categories", []))
        for e in d.statements():
            it = e.items
            try:
                if it[0] == "functor" and len(it) == 6 and it[2] == Sym(":") and it[4] == Sym("->"):
                    s.functor(it[1], list(it[3]), list(it[5]))
                elif it[0] == "cell" and len(it) in (6, 8) and it[2] == Sym(":") and it[4] == Sym("=>"):
                    arcs = None
                    if len(it) == 8:
                        if it[6] != "arcs":
                            raise LoadError(d, f"expected 'arcs', found {it[6]!r}", e.line)
                        arcs = [tuple(a) for a in it[7]]
                    s.cell(it[1], self._fterm(s, it[3], d), self._fterm(s, it[5], d), arcs)
                else:
                    raise LoadError(d, f"cannot read statement {' '.join(map(str, it))!r}", e.line)
            except LoadError:
                raise
            except StructuralError as err:
                raise LoadError(d, str(err), e.line) from None
        return s

    def _fterm(self, s: ek.Signature, v, d):
        if isinstance(v, str):
            if v not in s.functors:
                raise LoadError(d, f"unknown functor generator {v!r}")
            return s.gen(v)
        if isinstance(v, Call):
            if v.fn == "idw":
                return ek.idw(*v.args)
            if v.fn == "fjuxt":
                return ek.fjuxt(*[self._fterm(s, a, d) for a in v.args])
            if v.fn == "comp" and len(v.args) == 2:
                return ek.comp(self._fterm(s, v.args[0], d), self._fterm(s, v.args[1], d))
            if v.fn == "op" and len(v.args) == 1:
                return ek.fop(self._fterm(s, v.args[0], d))
        raise LoadError(d, f"cannot read functor term {v}")

    def _cterm(self, s: ek.Signature, v, d):
        if isinstance(v, str):
            if v not in s.cells:
                raise LoadError(d, f"unknown cell generator {v!r}")
            return s.get_cell(v)
        if isinstance(v, Call):
            a = v.args
            if v.fn == "vcomp":
                return ek.vcomp(*[self._cterm(s, x, d) for x in a])
            if v.fn == "juxt":
                return ek.juxt(*[self._cterm(s, x, d) for x in a])
            if v.fn == "lwhisk" and len(a) == 2:
                return ek.lwhisk(self._fterm(s, a[0], d), self._cterm(s, a[1], d))
            if v.fn == "rwhisk" and len(a) == 2 and isinstance(a[1], list):
                return ek.rwhisk(self._cterm(s, a[0], d), [self._fterm(s, x, d) for x in a[1]])
            if v.fn == "id" and len(a) == 1:
                return ek.idcell(self._fterm(s, a[0], d))
        raise LoadError(d, f"cannot read diagram term {v}")

    def _build_interp(self, d: Decl):
        self._need(d, "signature")
        s = self.value(d.get("signature"), d)
        cats, funs, cells = {}, {}, {}
        for e in d.statements():
            it = e.items
            if len(it) != 4 or it[2] != Sym("="):
                raise LoadError(d, f"cannot read statement {' '.join(map(str, it))!r}", e.line)
            kind, name, ref = it[0], it[1], it[3]
            if kind == "category":
                cats[name] = self.category(ref, d)
            elif kind == "functor":
                funs[name] = self.functor(ref, d)
            elif kind == "cell":
                v = self.value(ref, d)
                if not isinstance(v, (NatTrans, ExtranatTrans)):
                    raise LoadError(d, f"{ref!r} is not a natural or extranatural transformation", e.line)
                cells[name] = v
            else:
                raise LoadError(d, f"unknown interpretation entry {kind!r}", e.line)
        missing = [x for x in s.categories if x not in cats] + [x for x in s.functors if x not in funs] + \
                  [x for x in s.cells if x not in cells]
        if missing:
            raise LoadError(d, f"nothing assigned to {missing[0]!r}")
        return ek.Interpretation(cats, funs, cells).validate(s)

    def _build_term(self, d: Decl):
        self._need(d, "signature", "expr")
        s = self.value(d.get("signature"), d)
        if not isinstance(s, ek.Signature):
            raise LoadError(d, f"{d.get('signature')!r} is not a signature")
        try:
            return self._cterm(s, d.get("expr"), d)
        except LoadError:
            raise
        except StructuralError as e:
            raise LoadError(d, str(e)) from None

    def _build_equation(self, d: Decl):
        self._need(d, "lhs", "rhs")
        return (self.value(d.get("lhs"), d), self.value(d.get("rhs"), d))

    def resolve_all(self):
        for d in self.doc.decls:
            self.value(d.name)
        return self.values


# ---------------------------------------------------------------------------
# checks


def _record(subject, check, rep: Report | None = None, ok=None, witness=()):
    if rep is not None:
        ok = rep.ok
        witness = [f"{v.law} at {v.witness!r}" + (f": {v.detail}" if v.detail else "") for v in rep.violations[:5]]
        extra = len(rep.violations) - len(witness)
        if extra > 0:
            witness.append(f"... {extra} more")
    return {"subject": subject, "check": check, "status": "pass" if ok else "fail", "witness": list(witness)}


CHECKS = ("category", "functor", "naturality", "zigzag", "extranatural", "two-var", "closed",
          "monoidal-functor", "search", "ek", "eval", "equation")


def _checks_for(loader: Loader, d: Decl):
    v = loader.value(d.name)
    k = d.kind
    if k == "category":
        yield "category", lambda: _record(d.name, "category", validate_category(v))
    elif k == "functor":
        yield "functor", lambda: _record(d.name, "functor", check_functor(v))
    elif k == "nattrans":
        yield "naturality", lambda: _record(d.name, "naturality", check_nat_trans(v))
    elif k == "adjunction":
        yield "zigzag", lambda: _record(d.name, "zigzag", check_adjunction(v))
    elif k == "extranat":
        yield "extranatural", lambda: _record(d.name, "extranatural", check_extranatural(v, paths=True))
    elif k == "twovar":
        yield "two-var", lambda: _record(d.name, "two-var", check_two_var(v))
    elif k == "closed":
        yield "closed", lambda: _record(d.name, "closed", check_closed(v))
    elif k == "monfunctor":
        yield "monoidal-functor", lambda: _record(d.name, "monoidal-functor", check_monoidal_functor(v))
    elif k == "builtin":
        if isinstance(v, ClosedMonoidalCategory):
            yield "closed", lambda: _record(d.name, "closed", check_closed(v))
        elif isinstance(v, SetMapData):
            def adj_rec():
                rep = Report(d.name)
                rep.merge(check_adjunction(v.adj_lower), prefix="lower.")
                rep.merge(check_adjunction(v.adj_upper), prefix="upper.")
                return _record(d.name, "zigzag", rep)
            yield "zigzag", adj_rec
        elif isinstance(v, HeytingSearch):
            def search_rec():
                f = v.found
                w = [f"lattices={v.lattices} maps={v.maps_tested} counterexamples={v.counterexamples}"]
                if f:
                    w.append(f"first: {f.Y.C.name} -> {f.X.C.name} at {f.witness!r}")
                return _record(d.name, "search", ok=f is not None, witness=w)
            yield "search", search_rec
        elif isinstance(v, Category):
            yield "category", lambda: _record(d.name, "category", validate_category(v))
    elif k == "term":
        g = v.graph
        yield "ek", lambda: _record(d.name, "ek", ok=not g.loops, witness=[" ".join(lp) for lp in g.loops])
        if d.has("interp") and not g.loops:
            def eval_rec():
                I = loader.value(d.get("interp"), d)
                ek.evaluate(v, I).table()
                return _record(d.name, "eval", ok=True)
            yield "eval", eval_rec
    elif k == "equation":
        def eq_rec():
            lhs, rhs = (loader.decls[d.get(s)] for s in ("lhs", "rhs"))
            vals = []
            for t in (lhs, rhs):
                if not t.has("interp"):
                    raise LoadError(d, f"term {t.name!r} has no interpretation")
                vals.append(ek.evaluate(loader.value(t.name), loader.value(t.get("interp"), t)))
            a, b = vals
            if a.graph.arcs != b.graph.arcs:
                return _record(d.name, "equation", ok=False, witness=[
                    f"different arc profiles: {ek.export_arcs(a.graph.arcs)} vs {ek.export_arcs(b.graph.arcs)}"])
            ta, tb = a.table(), b.table()
            diff = [f"{k!r}: {ta[k]!r} vs {tb[k]!r}" for k in ta if ta[k] != tb[k]]
            return _record(d.name, "equation", ok=not diff, witness=diff[:5])
        yield "equation", eq_rec


def run_checks(doc: Document, selector: str = "all") -> list:
    """One record per check, sorted by subject then check name.

    Raises ``LoadError`` for unresolvable documents and ``ValueError`` for
    an unknown selector."""
    loader = Loader(doc)
    loader.resolve_all()
    if selector != "all" and selector not in CHECKS and selector not in loader.decls:
        raise ValueError(f"unknown selector {selector!r}; use 'all', a check name ({', '.join(CHECKS)}) "
                         f"or a declaration name")
    records = []
    for d in doc.decls:
        for check, run in _checks_for(loader, d):
            if selector in ("all", check, d.name):
                try:
                    records.append(run())
                except StructuralError as e:
                    records.append({"subject": d.name, "check": check, "status": "error", "witness": [str(e)]})
    records.sort(key=lambda r: (r["subject"], r["check"]))
    return records


# ---------------------------------------------------------------------------
# computations and emission


class Emitter:
    """Turns computed values into declarations, reusing names already in
    the document where the values agree."""

    def __init__(self, loader: Loader):
        self.loader = loader
        self.new: list = []
        self.taken = set(loader.decls)
        self._named = list(self._candidates())

    def _candidates(self):
        L = self.loader
        for name, d in L.decls.items():
            try:
                v = L.value(name)
            except StructuralError:
                continue
            yield name, v
            yield from self._parts(name, v, 0)

    def _parts(self, name, v, depth):
        if depth > 2:
            return
        if isinstance(v, ClosedMonoidalCategory):
            fields = ["C", "tensor", "hom"]
        elif dataclasses.is_dataclass(v):
            fields = [f.name for f in dataclasses.fields(v)]
        else:
            return
        for f in fields:
            sub = getattr(v, f)
            if isinstance(sub, (Category, Functor, NatTrans, ClosedMonoidalCategory, Adjunction)) or \
                    dataclasses.is_dataclass(sub):
                yield f"{name}.{f}", sub
                yield from self._parts(f"{name}.{f}", sub, depth + 1)

    def fresh(self, base):
        name, k = base, 1
        while name in self.taken:
            k += 1
            name = f"{base}_{k}"
        self.taken.add(name)
        return name

    def category(self, c: Category):
        if c.objects == ("*",) and c.morphisms == ("id*",):
            return "terminal"
        for name, v in self._named:
            if isinstance(v, Category) and same_category(v, c):
                return name
            if isinstance(v, Category) and same_category(opposite(v), c) and not v.is_discrete:
                return f"{name}^op"
        if isinstance(c, ProductCategory):
            return [self.category(f) for f in c.factors]
        name = self.fresh(c.name if c.name.isidentifier() else "cat")
        ents = [kv("objects", list(c.objects))]
        ids = {c.identity(x) for x in c.objects}
        for x in c.objects:
            ents.append(stmt("identity", x, EQ, c.identity(x)))
        for m in c.morphisms:
            if m not in ids:
                ents.append(stmt("morphism", m, COLON, c.source(m), ARROW, c.target(m)))
        for (g, f), h in c.composition_entries():
            if g not in ids and f not in ids:
                ents.append(stmt("compose", g, f, EQ, h))
        self.new.append(Decl("category", name, ents))
        self._named.append((name, c))
        return name

    def functor(self, F: Functor, hint):
        for name, v in self._named:
            if isinstance(v, Functor) and v.same_as(F):
                return name
        name = self.fresh(hint)
        ents = [kv("source", self.category(F.source)), kv("target", self.category(F.target))]
        thin = F.target.is_posetal
        if thin:
            ents.append(kv("thin", "true"))
        ents += [stmt("obj", x, ARROW, y) for x, y in F.object_map.items()]
        if not thin:
            ents += [stmt("mor", m, ARROW, g) for m, g in F.morphism_map.items()]
        self.new.append(Decl("functor", name, ents))
        self._named.append((name, F))
        return name

    def nattrans(self, t: NatTrans, name):
        name = self.fresh(name)
        ents = [kv("source", self.functor(t.source_functor, f"{name}_src")),
                kv("target", self.functor(t.target_functor, f"{name}_tgt"))]
        if t.category.is_posetal:
            ents.append(kv("thin", "true"))
        else:
            ents += [stmt("component", x, EQ, m) for x, m in t.components.items()]
        self.new.append(Decl("nattrans", name, ents))
        return name

    def twovar(self, adj, name):
        name = self.fresh(name)
        ents = [kv("side", adj.side), kv("T", self.functor(adj.T, f"{name}_T")),
                kv("H", self.functor(adj.H, f"{name}_H"))]
        if adj.T.target.is_posetal and adj.H.target.is_posetal:
            ents.append(kv("thin", "true"))
        else:
            ents += [stmt("eps", k, EQ, m) for k, m in adj.eps.items()]
            ents += [stmt("eta", k, EQ, m) for k, m in adj.eta.items()]
        self.new.append(Decl("twovar", name, ents))
        return name


OPS = {
    # name: (argument kinds, function)
    "conjugate_left": (("nattrans", "adjunction", "adjunction"), conjugate_left),
    "conjugate_right": (("nattrans", "adjunction", "adjunction"), conjugate_right),
    "conjugate2_left": (("nattrans", "twovar", "twovar"), conjugate2_left),
    "conjugate2_right": (("nattrans", "twovar", "twovar"), conjugate2_right),
    "compose_two_var": (("twovar", "functor", "adjunction", "adjunction"), compose_two_var),
    "projection_operator": (("monfunctor", "adjunction"), projection_operator),
    "closed_structure_operator": (("monfunctor",), closed_structure_operator),
    "internal_adjunction_operator": (("monfunctor", "adjunction"), internal_adjunction_operator),
}


def compute(doc: Document, op: str, args, name=None) -> tuple:
    """Apply ``op`` to the named arguments; returns ``(new document, result name)``."""
    if op not in OPS:
        raise ValueError(f"unknown operation {op!r}; available: {', '.join(sorted(OPS))}")
    kinds, fn = OPS[op]
    if len(args) != len(kinds):
        raise ValueError(f"{op} takes {len(kinds)} arguments ({', '.join(kinds)}), got {len(args)}")
    loader = Loader(doc)
    loader.resolve_all()
    vals = []
    for a, k in zip(args, kinds):
        v = None
        if k == "functor":
            v = loader.functor(a, None)
        elif k in ("adjunction", "monfunctor", "twovar", "nattrans"):
            v = loader.value(a)
            if not isinstance(v, _KIND_TYPES[k]):
                raise LoadError(None, f"argument {a!r} of {op} is a {type(v).__name__}, expected a {k}")
        vals.append(v)
    result = fn(*vals)
    em = Emitter(loader)
    base = name or f"{op}_{args[0]}".replace(".", "_")
    if isinstance(result, NatTrans):
        out = em.nattrans(result, base)
    else:
        out = em.twovar(result, base)
    return Document(doc.decls + em.new), out
