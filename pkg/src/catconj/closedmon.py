"""Closed monoidal categories, monoidal functors and their operators.

A left closed monoidal category is stored as a strict monoidal category
with a hom functor ``[-, -]: C^op x C -> C`` and the two families

    ev_{c,a}:   c (x) [c, a] -> a
    coev_{c,a}: a -> [c, c (x) a]

which are exactly the counit and unit of the two-variable adjunction
``(x) -|_L [-, -]`` (see :func:`to_two_var`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .adjoint import Adjunction, check_adjunction
from .fincat import (
    Category,
    Functor,
    NatTrans,
    Report,
    StructuralError,
    check_functor,
    check_nat_trans,
    compose_functors,
    functor_from,
    identity_functor,
    is_invertible,
    nat_from,
    opposite,
    opposite_functor,
    product,
    product_functor,
    same_category,
)
from .twovar import ShapeFrame, TwoVarAdjunctionL, TwoVarAdjunctionR, check_two_var


@dataclass
class MonoidalCategory:
    base: Category
    tensor: Functor
    unit: object
    strict: bool = True
    name: str = "M"

    def __post_init__(self):
        C = self.base
        if not (same_category(self.tensor.source, product(C, C)) and same_category(self.tensor.target, C)):
            raise StructuralError(f"{self.name}: tensor {self.tensor.name} is not a functor C x C -> C")
        if not C.has_object(self.unit):
            raise StructuralError(f"{self.name}: unit {self.unit!r} is not an object of {C.name}")
        if not self.strict:
            raise StructuralError(f"{self.name}: only strict monoidal structures are supported")

    def t(self, x, y):
        return self.tensor.obj((x, y))

    def tm(self, f, g):
        return self.tensor.mor((f, g))


def check_monoidal(m: MonoidalCategory) -> Report:
    rep = Report(f"monoidal {m.name}")
    rep.merge(check_functor(m.tensor))
    if rep.violations:
        return rep
    C = m.base
    rep.checks += ["strict associativity", "strict unit"]
    for x in C.objects:
        for y in C.objects:
            for z in C.objects:
                if m.t(m.t(x, y), z) != m.t(x, m.t(y, z)):
                    rep.add("strict associativity", (x, y, z))
        if m.t(m.unit, x) != x or m.t(x, m.unit) != x:
            rep.add("strict unit", (x,))
    i = C.identity(m.unit)
    for f in C.morphisms:
        for g in C.morphisms:
            for h in C.morphisms:
                if m.tm(m.tm(f, g), h) != m.tm(f, m.tm(g, h)):
                    rep.add("strict associativity", (f, g, h))
        if m.tm(i, f) != f or m.tm(f, i) != f:
            rep.add("strict unit", (f,))
    return rep


class ClosedMonoidalCategory:
    """Left closed monoidal category ``(C, (x), 1, [-, -], ev, coev)``.

    ``ev[(c, a)]`` and ``coev[(c, a)]`` hold the components.  ``right`` may
    carry a right-sided structure as a :class:`TwoVarAdjunctionR`.
    """

    def __init__(self, mon: MonoidalCategory, hom: Functor, ev: Mapping, coev: Mapping,
                 name=None, right: TwoVarAdjunctionR | None = None):
        C = mon.base
        if not (same_category(hom.source, product(opposite(C), C)) and same_category(hom.target, C)):
            raise StructuralError(f"{name or mon.name}: hom {hom.name} is not a functor C^op x C -> C")
        self.mon, self.hom, self.name = mon, hom, name or mon.name
        self.right = right
        self._adj = TwoVarAdjunctionL(mon.tensor, hom, dict(ev), dict(coev), name=f"{self.name}.closed")
        self.ev, self.coev = self._adj.eps, self._adj.eta

    @property
    def C(self) -> Category:
        return self.mon.base

    @property
    def tensor(self) -> Functor:
        return self.mon.tensor

    @property
    def unit(self):
        return self.mon.unit

    def t(self, x, y):
        return self.mon.t(x, y)

    def tm(self, f, g):
        return self.mon.tm(f, g)

    def h(self, x, y):
        return self.hom.obj((x, y))

    def hm(self, f, g):
        """``[f, g]: [c', a] -> [c, a']`` for ``f: c -> c'`` and ``g: a -> a'``."""
        return self.hom.mor((f, g))

    def __repr__(self):
        return f"<ClosedMonoidalCategory {self.name} on {self.C.name}>"


def to_two_var(cm: ClosedMonoidalCategory) -> TwoVarAdjunctionL:
    """``(x) -|_L [-, -]`` with counit ``ev`` and unit ``coev``."""
    return cm._adj


def from_two_var(adj: TwoVarAdjunctionL, unit, name=None) -> ClosedMonoidalCategory:
    if not (same_category(adj.A, adj.B) and same_category(adj.B, adj.C)):
        raise StructuralError(f"{adj.name}: a closed structure needs A = B = C")
    mon = MonoidalCategory(adj.C, adj.T, unit, name=name or adj.name)
    return ClosedMonoidalCategory(mon, adj.H, adj.eps, adj.eta, name=name)


# ---------------------------------------------------------------------------
# hom functor from per-object adjunctions


def per_object_adjunctions(cm: ClosedMonoidalCategory) -> dict:
    """``{c: (c (x) -) -| [c, -]}`` read off a closed structure."""
    C = cm.C
    out = {}
    for c in C.objects:
        idc = C.identity(c)
        L = functor_from(C, C, lambda a, c=c: cm.t(c, a), lambda g, idc=idc: cm.tm(idc, g), name=f"{c}(x)-")
        R = functor_from(C, C, lambda a, c=c: cm.h(c, a), lambda g, idc=idc: cm.hm(idc, g), name=f"[{c},-]")
        unit = nat_from(identity_functor(C), compose_functors(R, L), lambda a, c=c: cm.coev[(c, a)], name="coev")
        counit = nat_from(compose_functors(L, R), identity_functor(C), lambda a, c=c: cm.ev[(c, a)], name="ev")
        out[c] = Adjunction(L, R, unit, counit, name=f"{c}(x)- -| [{c},-]")
    return out


def induce_hom_functor(base: Category, tensor: Functor, adjunctions: Mapping, name="[-,-]") -> Functor:
    """The hom functor determined by ``{c: (c (x) -) -| [c, -]}``.

    ``[f, a] = [c, ev_{c',a}] . [c, f (x) [c', a]] . coev_{c,[c',a]}`` for
    ``f: c -> c'``, and ``[f, g] = [c, g] . [f, a]``.
    """
    C = base
    missing = [c for c in C.objects if c not in adjunctions]
    if missing:
        raise StructuralError(f"no adjunction (c (x) -) -| [c, -] supplied for c = {missing[0]!r}")
    for c, adj in adjunctions.items():
        if not (same_category(adj.C, C) and same_category(adj.D, C)):
            raise StructuralError(f"adjunction for {c!r} is not on {C.name}")

    def mor(m):
        f, g = m
        c, c2 = C.source(f), C.target(f)
        a = C.source(g)
        hom_c, hom_c2 = adjunctions[c].U, adjunctions[c2].U
        h2a = hom_c2.obj(a)
        f_a = C.compose_path(hom_c.mor(adjunctions[c2].counit[a]),
                             hom_c.mor(tensor.mor((f, C.identity(h2a)))),
                             adjunctions[c].unit[h2a])
        return C.compose(hom_c.mor(g), f_a)

    return functor_from(product(opposite(C), C), C, lambda x: adjunctions[x[0]].U.obj(x[1]), mor, name=name)


# ---------------------------------------------------------------------------
# checking


def ev_square_cells(cm: ClosedMonoidalCategory, f, a) -> dict:
    """Interior cells of the filling for the ev square at ``f: c -> c'`` and ``a``.

    Each entry maps a cell name to the pair of composites that must agree.
    """
    C, t, tm, h, hm = cm.C, cm.t, cm.tm, cm.h, cm.hm
    c, c2 = C.source(f), C.target(f)
    idc = C.identity(c)
    h2a = h(c2, a)
    f_h = tm(f, C.identity(h2a))  # f (x) [c', a]
    ev, coev = cm.ev, cm.coev
    f_a = hm(f, C.identity(a))  # [f, a]
    cells = {
        "trivial triangle": (C.compose(f_h, C.identity(t(c, h2a))), f_h),
        "triangle identity": (C.compose(ev[(c, t(c, h2a))], tm(idc, coev[(c, h2a)])), C.identity(t(c, h2a))),
        "definition of [f,a]": (
            C.compose_path(tm(idc, hm(idc, ev[(c2, a)])), tm(idc, hm(idc, f_h)), tm(idc, coev[(c, h2a)])),
            tm(idc, f_a)),
        "ev natural in ev": (C.compose(ev[(c, a)], tm(idc, hm(idc, ev[(c2, a)]))),
                             C.compose(ev[(c2, a)], ev[(c, t(c2, h2a))])),
        "ev natural in f(x)[c',a]": (C.compose(ev[(c, t(c2, h2a))], tm(idc, hm(idc, f_h))),
                                     C.compose(f_h, ev[(c, t(c, h2a))])),
        "exterior": (C.compose(ev[(c, a)], tm(idc, f_a)), C.compose(ev[(c2, a)], f_h)),
    }
    return cells


def hom_formula_cells(cm: ClosedMonoidalCategory, f, a) -> dict:
    """Interior cells showing that ``[f, a]`` equals the composite through ``coev`` and ``ev``."""
    C, t, tm, h, hm = cm.C, cm.t, cm.tm, cm.h, cm.hm
    c, c2 = C.source(f), C.target(f)
    idc, idc2 = C.identity(c), C.identity(c2)
    h2a = h(c2, a)
    f_h = tm(f, C.identity(h2a))
    ev, coev = cm.ev, cm.coev
    f_a = hm(f, C.identity(a))
    return {
        "triangle identity": (C.compose(hm(idc2, ev[(c2, a)]), coev[(c2, h2a)]), C.identity(h2a)),
        "coev extranatural": (C.compose(hm(f, C.identity(t(c2, h2a))), coev[(c2, h2a)]),
                              C.compose(hm(idc, f_h), coev[(c, h2a)])),
        "[f,-] natural": (C.compose(f_a, hm(idc2, ev[(c2, a)])),
                          C.compose(hm(idc, ev[(c2, a)]), hm(f, C.identity(t(c2, h2a))))),
        "trivial": (C.compose(f_a, C.identity(h2a)), f_a),
        "exterior": (f_a, C.compose_path(hm(idc, ev[(c2, a)]), hm(idc, f_h), coev[(c, h2a)])),
    }


def first_parameter_squares(cm: ClosedMonoidalCategory, f, a) -> dict:
    C, tm, hm = cm.C, cm.tm, cm.hm
    c, c2 = C.source(f), C.target(f)
    ida, idc = C.identity(a), C.identity(c)
    return {
        "ev": (C.compose(cm.ev[(c, a)], tm(idc, hm(f, ida))),
               C.compose(cm.ev[(c2, a)], tm(f, C.identity(cm.h(c2, a))))),
        "coev": (C.compose(hm(f, C.identity(cm.t(c2, a))), cm.coev[(c2, a)]),
                 C.compose(hm(idc, tm(f, ida)), cm.coev[(c, a)])),
    }


def check_closed(cm: ClosedMonoidalCategory, cells: bool = True) -> Report:
    """Everything that makes ``cm`` a left closed monoidal category.

    Monoidal laws, hom functoriality, ev/coev extranaturality and triangle
    identities (through the two-variable adjunction), the first-parameter
    squares, agreement of the hom functor with the one induced from the
    per-object adjunctions, and the componentwise cells of both fillings.
    """
    rep = Report(f"closed monoidal {cm.name}")
    rep.merge(check_monoidal(cm.mon))
    rep.merge(check_two_var(to_two_var(cm)))
    if rep.violations:
        return rep
    C = cm.C
    rep.checks += ["first parameter", "induced hom"]
    for f in C.morphisms:
        for a in C.objects:
            for nm, (x, y) in first_parameter_squares(cm, f, a).items():
                if x != y:
                    rep.add("first parameter", (nm, f, a), f"{x} != {y}")
    induced = induce_hom_functor(C, cm.tensor, per_object_adjunctions(cm))
    for m in induced.source.morphisms:
        if induced.mor(m) != cm.hom.mor(m):
            rep.add("induced hom", (m,), f"induced formula gives {induced.mor(m)}, hom gives {cm.hom.mor(m)}")
    if cells:
        rep.checks += ["ev square cells", "hom formula cells"]
        for f in C.morphisms:
            for a in C.objects:
                for law, fn in (("ev square cells", ev_square_cells), ("hom formula cells", hom_formula_cells)):
                    for nm, (x, y) in fn(cm, f, a).items():
                        if x != y:
                            rep.add(law, (nm, f, a), f"{x} != {y}")
    if cm.right is not None:
        rep.merge(check_two_var(cm.right), prefix="right.")
    return rep


# ---------------------------------------------------------------------------
# monoidal functors and operators


@dataclass
class MonoidalFunctorData:
    """``f*: Y -> X`` with ``omega_{y,y'}: f*y (x) f*y' -> f*(y (x) y')``."""

    X: ClosedMonoidalCategory
    Y: ClosedMonoidalCategory
    f_star: Functor
    omega: NatTrans
    name: str = "f*"

    def __post_init__(self):
        fs = self.f_star
        if not (same_category(fs.source, self.Y.C) and same_category(fs.target, self.X.C)):
            raise StructuralError(f"{self.name}: {fs.name} must go {self.Y.C.name} -> {self.X.C.name}")
        src = compose_functors(self.X.tensor, product_functor(fs, fs))
        tgt = compose_functors(fs, self.Y.tensor)
        if not (self.omega.source_functor.same_as(src) and self.omega.target_functor.same_as(tgt)):
            raise StructuralError(f"{self.name}: omega must run (x)(f* x f*) => f*(x)")


def check_monoidal_functor(m: MonoidalFunctorData) -> Report:
    rep = Report(f"monoidal functor {m.name}")
    rep.merge(check_functor(m.f_star))
    rep.merge(check_nat_trans(m.omega))
    return rep


def closed_structure_operator(m: MonoidalFunctorData, name="closed op") -> NatTrans:
    """``f*(y -o y') -> f*y -o f*y'``:
    ``[f*y, f*(ev_{y,y'})] . [f*y, omega_{y, y-oy'}] . coev_{f*y, f*(y-oy')}``."""
    X, Y, fs, om = m.X, m.Y, m.f_star, m.omega
    C = X.C
    src = compose_functors(fs, Y.hom, name=f"{fs.name}.[-,-]")
    tgt = compose_functors(X.hom, product_functor(opposite_functor(fs), fs), name=f"[{fs.name}-,{fs.name}-]")

    def comp(k):
        y, y2 = k
        fy, hyy = fs.obj(y), Y.h(y, y2)
        idfy = C.identity(fy)
        return C.compose_path(X.hm(idfy, fs.mor(Y.ev[(y, y2)])), X.hm(idfy, om[(y, hyy)]),
                              X.coev[(fy, fs.obj(hyy))])

    return nat_from(src, tgt, comp, name=name)


def projection_operator(m: MonoidalFunctorData, adj: Adjunction, name="pi") -> NatTrans:
    """``pi_{y,x}: f_!(f*y (x) x) -> y (x) f_!x``:
    ``eps_{y (x) f_!x} . f_!(omega_{y, f_!x}) . f_!(f*y (x) eta_x)``."""
    X, Y, fs, om = m.X, m.Y, m.f_star, m.omega
    fl = adj.F
    if not adj.U.same_as(fs):
        raise StructuralError(f"{adj.name}: right adjoint {adj.U.name} is not {fs.name}")
    src = compose_functors(fl, compose_functors(X.tensor, product_functor(fs, identity_functor(X.C))),
                           name=f"{fl.name}((x)({fs.name} x id))")
    tgt = compose_functors(Y.tensor, product_functor(identity_functor(Y.C), fl), name=f"(x)(id x {fl.name})")

    def comp(k):
        y, x = k
        flx = fl.obj(x)
        return Y.C.compose_path(adj.counit[Y.t(y, flx)], fl.mor(om[(y, flx)]),
                                fl.mor(X.tm(X.C.identity(fs.obj(y)), adj.unit[x])))

    return nat_from(src, tgt, comp, name=name)


def internal_adjunction_operator(m: MonoidalFunctorData, adj: Adjunction, name="internal op") -> NatTrans:
    """``y -o f_*x -> f_*(f*y -o x)`` for ``f* -| f_*``::

        f_*[f*y, eps_x] . f_*[f*y, f*(ev_{y, f_*x})] . f_*[f*y, omega_{y, y -o f_*x}]
            . f_*(coev_{f*y, f*(y -o f_*x)}) . eta_{y -o f_*x}
    """
    X, Y, fs, om = m.X, m.Y, m.f_star, m.omega
    if not adj.F.same_as(fs):
        raise StructuralError(f"{adj.name}: left adjoint {adj.F.name} is not {fs.name}")
    fu = adj.U
    src = compose_functors(Y.hom, product_functor(identity_functor(opposite(Y.C)), fu), name=f"[-,{fu.name}-]")
    tgt = compose_functors(fu, compose_functors(X.hom, product_functor(opposite_functor(fs), identity_functor(X.C))),
                           name=f"{fu.name}[{fs.name}-,-]")

    def comp(k):
        y, x = k
        fy = fs.obj(y)
        idfy = X.C.identity(fy)
        w = Y.h(y, fu.obj(x))
        return Y.C.compose_path(fu.mor(X.hm(idfy, adj.counit[x])),
                                fu.mor(X.hm(idfy, fs.mor(Y.ev[(y, fu.obj(x))]))),
                                fu.mor(X.hm(idfy, om[(y, w)])),
                                fu.mor(X.coev[(fy, fs.obj(w))]),
                                adj.unit[w])

    return nat_from(src, tgt, comp, name=name)


# ---------------------------------------------------------------------------
# conjugate-pair families


def _id_adj(C: Category) -> Adjunction:
    from .adjoint import identity_adjunction
    return identity_adjunction(C)


@dataclass
class AdjunctionString:
    """A functor ``f*: Y -> X`` between closed categories and whichever of
    ``f_! -| f*``, ``f* -| f_*``, ``f_* -| f^!`` are available."""

    X: ClosedMonoidalCategory
    Y: ClosedMonoidalCategory
    f_star: Functor
    lower: Adjunction | None = None
    upper: Adjunction | None = None
    shriek: Adjunction | None = None


def conjugate_pair_family(row: int, s: AdjunctionString) -> ShapeFrame:
    """Wiring for the five standard conjugate pairs.

    1. ``f*y (x) f*y' -> f*(y (x) y')``  with  ``y -o f_*x -> f_*(f*y -o x)``
    2. ``f_!(f*y (x) x) -> y (x) f_!x``  with  ``f*(y -o y') -> f*y -o f*y'``
    3. ``f_!(x (x) f*y) -> f_!x (x) y``  with  ``f_!x -o y -> f_*(x -o f*y)``
    4. ``f_*(x (x) f*y) -> f_*x (x) y``  with  ``f_*x -o y -> f_*(x -o f^!y)``
    5. ``f_*(f*y (x) x) -> y (x) f_*x``  with  ``f^!(y -o y') -> f*y -o f^!y'``
    """
    X, Y = to_two_var(s.X), to_two_var(s.Y)
    idX, idY = identity_functor(s.X.C), identity_functor(s.Y.C)
    aX, aY = _id_adj(s.X.C), _id_adj(s.Y.C)

    def need(nm):
        adj = getattr(s, nm)
        if adj is None:
            raise StructuralError(f"row {row} needs the adjunction {nm!r} in the string")
        return adj

    if row == 1:
        up = need("upper")
        return ShapeFrame(X, Y, aX, up, up, aY, s.f_star, idY, name="row1")
    if row == 2:
        lo = need("lower")
        return ShapeFrame(X, Y, lo, aX, aY, lo, s.f_star, idY, name="row2")
    if row == 3:
        lo, up = need("lower"), need("upper")
        return ShapeFrame(X, Y, lo, up, aY, aY, idX, lo.F, name="row3")
    if row == 4:
        up, sh = need("upper"), need("shriek")
        return ShapeFrame(X, Y, sh, up, aY, aY, idX, sh.F, name="row4")
    if row == 5:
        up, sh = need("upper"), need("shriek")
        return ShapeFrame(X, Y, sh, aX, aY, sh, s.f_star, idY, name="row5")
    raise ValueError(f"row must be 1..5, got {row}")


def strong_closed(m: MonoidalFunctorData) -> bool:
    return is_invertible(closed_structure_operator(m))
