"""Extranatural transformations and their profunctor 2-cells.

A frame fixes ``P: C x C^op x A -> D`` and ``Q: A x B^op x B -> D``.  The
sources of ``P`` and ``Q`` are flat products of factor categories, and a
role layout says which factors make up ``C``, ``C^op``, ``A``, ``B^op`` and ``B``,
so permuted or merged factors can be framed without guessing.  A group
with no factors is the terminal category; its object is ``"*"``.

Components are keyed by ``(c, a, b)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .fincat import (
    TERMINAL_ID,
    TERMINAL_OBJECT,
    Category,
    Functor,
    NatTrans,
    Profunctor,
    Report,
    StructuralError,
    compose_functors,
    functor_from,
    hom_profunctor,
    identity_functor,
    opposite,
    product,
    same_category,
)

P_ROLES = ("c", "cop", "a")
Q_ROLES = ("a", "bop", "b")


class Layout:
    """Placement of role groups inside a flat product of factors."""

    def __init__(self, factors: Sequence[Category], roles: Sequence[str], allowed):
        if len(factors) != len(roles):
            raise StructuralError(f"layout has {len(roles)} roles for {len(factors)} factors")
        bad = [r for r in roles if r not in allowed]
        if bad:
            raise StructuralError(f"unknown role {bad[0]!r}; expected one of {allowed}")
        self.factors, self.roles = tuple(factors), tuple(roles)
        self.pos = {r: [i for i, rr in enumerate(roles) if rr == r] for r in allowed}
        self.category = product(*self.factors)

    def group(self, role) -> Category:
        return product(*[self.factors[i] for i in self.pos[role]])

    def group_factors(self, role) -> list:
        return [self.factors[i] for i in self.pos[role]]

    def join(self, parts: Mapping, morphism=False):
        n = len(self.factors)
        if n == 0:
            return TERMINAL_ID if morphism else TERMINAL_OBJECT
        flat = [None] * n
        for role, idxs in self.pos.items():
            if not idxs:
                continue
            v = parts[role]
            if len(idxs) == 1:
                flat[idxs[0]] = v
            else:
                for i, vi in zip(idxs, v):
                    flat[i] = vi
        return flat[0] if n == 1 else tuple(flat)

    def split(self, value, morphism=False) -> dict:
        n = len(self.factors)
        flat = (value,) if n == 1 else tuple(value) if n else ()
        out = {}
        for role, idxs in self.pos.items():
            if not idxs:
                out[role] = TERMINAL_ID if morphism else TERMINAL_OBJECT
            elif len(idxs) == 1:
                out[role] = flat[idxs[0]]
            else:
                out[role] = tuple(flat[i] for i in idxs)
        return out


class ExtranatFrame:
    """``P: C x C^op x A -> D`` and ``Q: A x B^op x B -> D`` with explicit layouts."""

    def __init__(self, P: Functor, Q: Functor, p_factors, p_layout, q_factors, q_layout):
        self.P, self.Q = P, Q
        self.p = Layout(p_factors, p_layout, P_ROLES)
        self.q = Layout(q_factors, q_layout, Q_ROLES)
        if not same_category(self.p.category, P.source):
            raise StructuralError(f"P = {P.name}: source {P.source.name} does not match layout {self.p.category.name}")
        if not same_category(self.q.category, Q.source):
            raise StructuralError(f"Q = {Q.name}: source {Q.source.name} does not match layout {self.q.category.name}")
        if not same_category(P.target, Q.target):
            raise StructuralError(f"P and Q land in different categories: {P.target.name} vs {Q.target.name}")
        cs, cops = self.p.group_factors("c"), self.p.group_factors("cop")
        if len(cs) != len(cops) or any(not same_category(opposite(x), y) for x, y in zip(cs, cops)):
            raise StructuralError("P layout: the cop factors are not the opposites of the c factors")
        bs, bops = self.q.group_factors("b"), self.q.group_factors("bop")
        if len(bs) != len(bops) or any(not same_category(opposite(x), y) for x, y in zip(bs, bops)):
            raise StructuralError("Q layout: the bop factors are not the opposites of the b factors")
        pa, qa = self.p.group_factors("a"), self.q.group_factors("a")
        if len(pa) != len(qa) or any(not same_category(x, y) for x, y in zip(pa, qa)):
            raise StructuralError("P and Q disagree on the factors of A")
        self.C, self.A, self.B = self.p.group("c"), self.p.group("a"), self.q.group("b")
        self.D = P.target

    def p_obj(self, c, c2, a):
        return self.P.obj(self.p.join({"c": c, "cop": c2, "a": a}))

    def q_obj(self, a, b2, b):
        return self.Q.obj(self.q.join({"a": a, "bop": b2, "b": b}))

    def p_mor(self, f, f2, h):
        """``P(f, f2, h)``; ``f2`` is a morphism of ``C``, used contravariantly."""
        return self.P.mor(self.p.join({"c": f, "cop": f2, "a": h}, morphism=True))

    def q_mor(self, h, g2, g):
        return self.Q.mor(self.q.join({"a": h, "bop": g2, "b": g}, morphism=True))

    def keys(self):
        return itertools.product(self.C.objects, self.A.objects, self.B.objects)

    def describe(self) -> str:
        return (f"P = {self.P.name}: [{', '.join(f.name for f in self.p.factors)}] {list(self.p.roles)}; "
                f"Q = {self.Q.name}: [{', '.join(f.name for f in self.q.factors)}] {list(self.q.roles)}")


def standard_frame(P: Functor, Q: Functor, C: Category, A: Category, B: Category) -> ExtranatFrame:
    """Frame with P on ``[C, C^op, A]`` and Q on ``[A, B^op, B]``."""
    return ExtranatFrame(P, Q, [C, opposite(C), A], P_ROLES, [A, opposite(B), B], Q_ROLES)


class ExtranatTrans:
    def __init__(self, frame: ExtranatFrame, components: Mapping, name="beta"):
        self.frame, self.name = frame, name
        fr = frame
        comps = {}
        for key in fr.keys():
            if key not in components:
                raise StructuralError(f"{name}: missing component at {key!r}")
            comps[key] = components[key]
        if len(components) != len(comps):
            extra = [k for k in components if k not in comps]
            raise StructuralError(f"{name}: component indexed by unknown objects {extra[0]!r}")
        D = fr.D
        for (c, a, b), m in comps.items():
            if not D.has_morphism(m):
                raise StructuralError(f"{name}: component at {(c, a, b)!r} is not a morphism of {D.name}: {m!r}")
            s, t = fr.p_obj(c, c, a), fr.q_obj(a, b, b)
            if D.source(m) != s or D.target(m) != t:
                raise StructuralError(f"{name}: component at {(c, a, b)!r} goes {D.source(m)!r} -> {D.target(m)!r}, "
                                      f"expected {s!r} -> {t!r}")
        self.components = comps

    def __getitem__(self, key):
        return self.components[key]

    def same_as(self, other: "ExtranatTrans") -> bool:
        return self.components == other.components

    def replace(self, key, m, name=None) -> "ExtranatTrans":
        comps = dict(self.components)
        comps[key] = m
        return ExtranatTrans(self.frame, comps, name=name or self.name)

    def __repr__(self):
        return f"<ExtranatTrans {self.name}: {self.frame.P.name} -> {self.frame.Q.name}>"


def from_nat_trans(t: NatTrans, name=None) -> ExtranatTrans:
    """A natural transformation as an extranatural one with ``C = B = 1``."""
    A = t.index_category
    frame = ExtranatFrame(t.source_functor, t.target_functor, [A], ["a"], [A], ["a"])
    return ExtranatTrans(frame, {(TERMINAL_OBJECT, a, TERMINAL_OBJECT): m for a, m in t.components.items()},
                         name=name or t.name)


def to_nat_trans(e: ExtranatTrans, name=None) -> NatTrans:
    fr = e.frame
    if fr.p.pos["c"] or fr.q.pos["b"]:
        raise StructuralError(f"{e.name}: C and B must be terminal to read off a natural transformation")
    A = fr.A
    F = functor_from(A, fr.D, lambda a: fr.p_obj(TERMINAL_OBJECT, TERMINAL_OBJECT, a),
                     lambda h: fr.p_mor(TERMINAL_ID, TERMINAL_ID, h), name=fr.P.name)
    G = functor_from(A, fr.D, lambda a: fr.q_obj(a, TERMINAL_OBJECT, TERMINAL_OBJECT),
                     lambda h: fr.q_mor(h, TERMINAL_ID, TERMINAL_ID), name=fr.Q.name)
    return NatTrans(F, G, {a: e[(TERMINAL_OBJECT, a, TERMINAL_OBJECT)] for a in A.objects}, name=name or e.name)


# ---------------------------------------------------------------------------
# checking


def check_extranatural(e: ExtranatTrans, paths: bool = False) -> Report:
    """The three squares, for every ``f: c -> c'``, ``h: a -> a'``, ``g: b -> b'``.

    Witnesses are ``(f, h, g)`` with identities in the unused slots, followed
    by the two composites that differ.  With ``paths=True`` the full
    path-independence scan is appended as well.
    """
    fr, D = e.frame, e.frame.D
    C, A, B = fr.C, fr.A, fr.B
    rep = Report(f"extranatural {e.name}")
    rep.checks += ["extranatural in c", "natural in a", "extranatural in b"]
    for f in C.morphisms:
        c, c2 = C.source(f), C.target(f)
        for a in A.objects:
            ida = A.identity(a)
            for b in B.objects:
                # beta_c o P(c, f, a) == beta_c' o P(f, c', a) : P(c, c', a) -> Q(a, b, b)
                lhs = D.compose(e[(c, a, b)], fr.p_mor(C.identity(c), f, ida))
                rhs = D.compose(e[(c2, a, b)], fr.p_mor(f, C.identity(c2), ida))
                if lhs != rhs:
                    rep.add("extranatural in c", (f, ida, B.identity(b), lhs, rhs))
    for h in A.morphisms:
        a, a2 = A.source(h), A.target(h)
        for c in C.objects:
            idc = C.identity(c)
            for b in B.objects:
                idb = B.identity(b)
                lhs = D.compose(fr.q_mor(h, idb, idb), e[(c, a, b)])
                rhs = D.compose(e[(c, a2, b)], fr.p_mor(idc, idc, h))
                if lhs != rhs:
                    rep.add("natural in a", (idc, h, idb, lhs, rhs))
    for g in B.morphisms:
        b, b2 = B.source(g), B.target(g)
        for c in C.objects:
            for a in A.objects:
                ida = A.identity(a)
                lhs = D.compose(fr.q_mor(ida, B.identity(b), g), e[(c, a, b)])
                rhs = D.compose(fr.q_mor(ida, g, B.identity(b2)), e[(c, a, b2)])
                if lhs != rhs:
                    rep.add("extranatural in b", (C.identity(c), ida, g, lhs, rhs))
    if paths:
        rep.merge(check_path_independence(e))
    return rep


PATH_NAMES = tuple(
    f"{cr}{hr}{br}" for cr in ("P(f,c')", "P(c,f)") for hr in (".h-before", ".h-after") for br in (".Q(b,g)", ".Q(g,b')")
)


def diagram_paths(e: ExtranatTrans, f, h, g) -> list:
    """All composites ``P(c, c', a) -> Q(a', b, b')`` through the diagram.

    Three independent binary choices: route ``f`` through ``beta_c'`` or
    ``beta_c``; apply ``h`` on the P side or the Q side; route ``g`` through
    ``beta_b`` or ``beta_b'``.  Returns ``[(name, composite)]``.
    """
    fr, D = e.frame, e.frame.D
    C, A, B = fr.C, fr.A, fr.B
    c, c2 = C.source(f), C.target(f)
    a, a2 = A.source(h), A.target(h)
    b, b2 = B.source(g), B.target(g)
    out = []
    for i, (c_route, h_before, b_route) in enumerate(itertools.product((0, 1), (1, 0), (0, 1))):
        hp = h if h_before else A.identity(a)
        hq = A.identity(a2) if h_before else h
        ai = a2 if h_before else a
        if c_route == 0:
            pm, ci = fr.p_mor(f, C.identity(c2), hp), c2
        else:
            pm, ci = fr.p_mor(C.identity(c), f, hp), c
        if b_route == 0:
            qm, bi = fr.q_mor(hq, B.identity(b), g), b
        else:
            qm, bi = fr.q_mor(hq, g, B.identity(b2)), b2
        out.append((PATH_NAMES[i], D.compose_path(qm, e[(ci, ai, bi)], pm)))
    return out


def check_path_independence(e: ExtranatTrans) -> Report:
    fr = e.frame
    rep = Report(f"paths {e.name}")
    rep.checks.append("path independence")
    for f in fr.C.morphisms:
        for h in fr.A.morphisms:
            for g in fr.B.morphisms:
                ps = diagram_paths(e, f, h, g)
                first = ps[0][1]
                for nm, m in ps[1:]:
                    if m != first:
                        rep.add("path independence", (f, h, g, ps[0][0], first, nm, m))
                        break
    return rep


# ---------------------------------------------------------------------------
# whiskering


def _check_endpoint(fn: Functor, cat: Category, side: str, what: str):
    got = fn.target if side == "target" else fn.source
    if not same_category(got, cat):
        raise StructuralError(f"{what} = {fn.name}: {side} is {got.name}, expected {cat.name}")


def _assemble(layout: Layout, parts: Sequence, roles: Sequence[str], name: str) -> Functor:
    """Functor ``X1 x X2 x X3 -> layout.category`` applying ``parts[i]`` to slot ``roles[i]``."""
    src = product(*[p.source for p in parts])

    def obj(x):
        return layout.join({r: p.obj(xi) for r, p, xi in zip(roles, parts, x)})

    def mor(m):
        return layout.join({r: p.mor(mi) for r, p, mi in zip(roles, parts, m)}, morphism=True)

    return functor_from(src, layout.category, obj, mor, name=name)


def _op_of(fn: Functor) -> Functor:
    from .fincat import opposite_functor
    return opposite_functor(fn)


def whisker_frame(fr: ExtranatFrame, G: Functor, Gp: Functor, F: Functor, Fp: Functor,
                  Hp: Functor, H: Functor, K: Functor, Kp: Functor) -> ExtranatFrame:
    """Frame ``(K P (G x Gp^op x F), Kp Q (Fp x Hp^op x H))`` in standard layout."""
    for fn, what in ((G, "G"), (Gp, "G'")):
        _check_endpoint(fn, fr.C, "target", what)
    for fn, what in ((F, "F"), (Fp, "F'")):
        _check_endpoint(fn, fr.A, "target", what)
    for fn, what in ((H, "H"), (Hp, "H'")):
        _check_endpoint(fn, fr.B, "target", what)
    for fn, what in ((K, "K"), (Kp, "K'")):
        _check_endpoint(fn, fr.D, "source", what)
    Ct, At, Bt = G.source, F.source, H.source
    ap = _assemble(fr.p, [G, _op_of(Gp), F], P_ROLES, "assemble")
    aq = _assemble(fr.q, [Fp, _op_of(Hp), H], Q_ROLES, "assemble")
    P2 = compose_functors(K, compose_functors(fr.P, ap), name=f"{K.name}.{fr.P.name}")
    Q2 = compose_functors(Kp, compose_functors(fr.Q, aq), name=f"{Kp.name}.{fr.Q.name}")
    return standard_frame(P2, Q2, Ct, At, Bt)


def whisker(e: ExtranatTrans, G: Functor, F: Functor, H: Functor, K: Functor, name=None) -> ExtranatTrans:
    """Components ``K(beta_{G c, F a, H b})``."""
    frame = whisker_frame(e.frame, G, G, F, F, H, H, K, K)
    comps = {(c, a, b): K.mor(e[(G.obj(c), F.obj(a), H.obj(b))]) for c, a, b in frame.keys()}
    return ExtranatTrans(frame, comps, name=name or f"{K.name}{e.name}")


def compose_with_naturals(e: ExtranatTrans, phi: NatTrans, gamma: NatTrans, theta: NatTrans,
                          kappa: NatTrans, order: str = "above", name=None) -> ExtranatTrans:
    """Paste ``phi: F => F'``, ``gamma: G => G'``, ``theta: H' => H`` and
    ``kappa: K => K'`` onto ``e``.

    The result goes ``K P (G x G'^op x F) -> K' Q (F' x H'^op x H)``.
    ``order="above"`` inserts ``gamma`` below and ``phi``, ``theta``,
    ``kappa`` above ``e``; ``order="below"`` pushes ``phi`` and ``theta``
    through ``e`` first.
    """
    fr = e.frame
    F, Fp = phi.source_functor, phi.target_functor
    G, Gp = gamma.source_functor, gamma.target_functor
    Hp, H = theta.source_functor, theta.target_functor
    K, Kp = kappa.source_functor, kappa.target_functor
    if not same_category(theta.index_category, H.source) or not same_category(H.target, fr.B):
        raise StructuralError(f"theta = {theta.name} must run H' => H into {fr.B.name}")
    frame = whisker_frame(fr, G, Gp, F, Fp, Hp, H, K, Kp)
    D, Dt = fr.D, Kp.target
    C, A, B = fr.C, fr.A, fr.B
    comps = {}
    for c, a, b in frame.keys():
        ga, fa, fpa = gamma[c], F.obj(a), Fp.obj(a)
        hb, hpb = H.obj(b), Hp.obj(b)
        if order == "above":
            m_p = K.mor(fr.p_mor(ga, C.identity(Gp.obj(c)), A.identity(fa)))
            m_b = K.mor(e[(Gp.obj(c), fa, hpb)])
            m_k = kappa[fr.q_obj(fa, hpb, hpb)]
            m_q = Kp.mor(fr.q_mor(phi[a], B.identity(hpb), theta[b]))
            comps[(c, a, b)] = Dt.compose_path(m_q, m_k, m_b, m_p)
        elif order == "below":
            inner = D.compose_path(fr.q_mor(A.identity(fpa), theta[b], B.identity(hb)),
                                   e[(G.obj(c), fpa, hb)],
                                   fr.p_mor(C.identity(G.obj(c)), ga, phi[a]))
            comps[(c, a, b)] = Dt.compose(kappa[fr.q_obj(fpa, hpb, hb)], K.mor(inner))
        else:
            raise ValueError(f"order must be 'above' or 'below', not {order!r}")
    return ExtranatTrans(frame, comps, name=name or f"{e.name}[{order}]")


# ---------------------------------------------------------------------------
# profunctor 2-cells


@dataclass
class ProfunctorCell:
    """``gamma_{x,y}: M(x, y) -> M'(G x, G' y)`` as a set function."""

    dom: Profunctor
    cod: Profunctor
    G: Functor
    Gp: Functor
    component: Callable
    name: str = "gamma"

    def __call__(self, x, y, e):
        return self.component(x, y, e)


def check_cell(cell: ProfunctorCell, generators_only: bool = True) -> Report:
    """Naturality of a cell in both variables.

    For a product category it is enough to test morphisms that are the
    identity in all but one factor, since both actions are functorial; set
    ``generators_only=False`` to test every morphism.
    """
    M, N, G, Gp = cell.dom, cell.cod, cell.G, cell.Gp
    rep = Report(f"cell {cell.name}")
    rep.checks += ["values", "left naturality", "right naturality"]
    X, Y = M.source, M.target
    vals = M.value_sets
    for (x, y), es in vals.items():
        target_set = set(N.value_set(G.obj(x), Gp.obj(y)))
        for e in es:
            if cell(x, y, e) not in target_set:
                rep.add("values", (x, y, e))
    if rep.violations:
        return rep
    for u in _generators(X, generators_only):
        x1, x = X.source(u), X.target(u)
        for y in Y.objects:
            for e in vals[(x, y)]:
                if cell(x1, y, M.left(u, y, e)) != N.left(G.mor(u), Gp.obj(y), cell(x, y, e)):
                    rep.add("left naturality", (u, y, e))
    for v in _generators(Y, generators_only):
        y, y1 = Y.source(v), Y.target(v)
        for x in X.objects:
            for e in vals[(x, y)]:
                if cell(x, y1, M.right(v, x, e)) != N.right(Gp.mor(v), G.obj(x), cell(x, y, e)):
                    rep.add("right naturality", (v, x, e))
    return rep


def _generators(cat: Category, generators_only: bool):
    from .fincat import ProductCategory
    if not (generators_only and isinstance(cat, ProductCategory)):
        return cat.morphisms
    ids = [{f.morphisms[i] for i in f.ident} for f in cat.factors]
    return [m for m in cat.morphisms if sum(mi not in idset for mi, idset in zip(m, ids)) <= 1]


def source_profunctor(fr: ExtranatFrame) -> Profunctor:
    """``E_C x Id_A x N_B``: ``(c, c', a), (a', b, b') |-> C(c, c') x A(a, a') x B(b, b')``.

    Elements are triples ``(f, h, g)``.
    """
    C, A, B = fr.C, fr.A, fr.B
    X, Y = fr.P.source, fr.Q.source

    def values(x, y):
        px, qy = fr.p.split(x), fr.q.split(y)
        return tuple(itertools.product(C.hom(px["c"], px["cop"]), A.hom(px["a"], qy["a"]),
                                       B.hom(qy["bop"], qy["b"])))

    def left(u, y, e):
        pu = fr.p.split(u, morphism=True)
        f, h, g = e
        # pu["cop"] is a morphism c' -> c1' of C
        return (C.compose_path(pu["cop"], f, pu["c"]), A.compose(h, pu["a"]), g)

    def right(v, x, e):
        qv = fr.q.split(v, morphism=True)
        f, h, g = e
        return (f, A.compose(qv["a"], h), B.compose_path(qv["b"], g, qv["bop"]))

    return Profunctor(X, Y, values, left, right, name=f"E x Id x N[{fr.P.name},{fr.Q.name}]",
                      kind=("extranat-source", fr))


def hat(e: ExtranatTrans) -> ProfunctorCell:
    """The cell whose value at ``(f, h, g)`` is ``Q(h, b, g) . beta_{c',a,b} . P(f, c', a)``."""
    fr, D = e.frame, e.frame.D
    C, A, B = fr.C, fr.A, fr.B

    def comp(x, y, el):
        f, h, g = el
        c2, a, b = C.target(f), A.source(h), B.source(g)
        return D.compose_path(fr.q_mor(h, B.identity(b), g), e[(c2, a, b)],
                              fr.p_mor(f, C.identity(c2), A.identity(a)))

    return ProfunctorCell(source_profunctor(fr), hom_profunctor(D), fr.P, fr.Q, comp, name=f"hat {e.name}")


def unhat(cell: ProfunctorCell, name=None) -> ExtranatTrans:
    kind = cell.dom.kind
    if not (isinstance(kind, tuple) and kind and kind[0] == "extranat-source"):
        raise StructuralError(f"{cell.name}: source profunctor is not of the form E_C x Id_A x N_B")
    fr = kind[1]
    if not (isinstance(cell.cod.kind, tuple) and cell.cod.kind[0] == "hom" and same_category(cell.cod.kind[1], fr.D)):
        raise StructuralError(f"{cell.name}: target profunctor is not the hom of {fr.D.name}")
    C, A, B = fr.C, fr.A, fr.B
    comps = {}
    for c, a, b in fr.keys():
        x = fr.p.join({"c": c, "cop": c, "a": a})
        y = fr.q.join({"a": a, "bop": b, "b": b})
        comps[(c, a, b)] = cell(x, y, (C.identity(c), A.identity(a), B.identity(b)))
    return ExtranatTrans(fr, comps, name=name or f"unhat {cell.name}")


def same_cell(g1: ProfunctorCell, g2: ProfunctorCell) -> bool:
    vals = g1.dom.value_sets
    return all(g1(x, y, e) == g2(x, y, e) for (x, y), es in vals.items() for e in es)
