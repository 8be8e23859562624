"""Adjunctions of two variables, composites, and conjugation.

Left-sided: ``T: A x B -> C`` and ``H: A^op x C -> B`` with
``eps_{a,c}: T(a, H(a, c)) -> c`` and ``eta_{a,b}: b -> H(a, T(a, b))``.

Right-sided: ``T: A x B -> C`` and ``H: C x B^op -> A`` with
``eps_{b,c}: T(H(c, b), b) -> c`` and ``eta_{b,a}: a -> H(T(a, b), b)``.

Unit and counit are stored as plain dictionaries; the extranatural frames
are assembled on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

from .adjoint import Adjunction, check_adjunction
from .extranat import ExtranatFrame, ExtranatTrans, check_extranatural
from .fincat import (
    TERMINAL_ID,
    TERMINAL_OBJECT,
    Category,
    Functor,
    NatTrans,
    ProductCategory,
    Report,
    StructuralError,
    check_functor,
    compose_functors,
    functor_from,
    identity_functor,
    identity_nat,
    nat_from,
    opposite,
    product,
    same_category,
    terminal,
)


def _factors2(cat: Category, what: str):
    if not (isinstance(cat, ProductCategory) and len(cat.factors) == 2):
        raise StructuralError(f"{what}: source must be a binary product, got {cat.name}")
    return cat.factors


def _fill(name, keys, comps, what):
    keys = list(keys)
    if callable(comps):
        return {k: comps(*k) for k in keys}
    missing = [k for k in keys if k not in comps]
    if missing:
        raise StructuralError(f"{name}: missing {what} component at {missing[0]!r}")
    extra = set(comps) - set(keys)
    if extra:
        raise StructuralError(f"{name}: {what} component indexed by unknown objects {next(iter(extra))!r}")
    return {k: comps[k] for k in keys}


def _check_ends(cat, name, what, key, m, s, t):
    if not cat.has_morphism(m):
        raise StructuralError(f"{name}: {what} at {key!r} is not a morphism of {cat.name}: {m!r}")
    if cat.source(m) != s or cat.target(m) != t:
        raise StructuralError(f"{name}: {what} at {key!r} goes {cat.source(m)!r} -> {cat.target(m)!r}, "
                              f"expected {s!r} -> {t!r}")


class TwoVarAdjunctionL:
    """``T -|_L H``.  ``eps[(a, c)]`` and ``eta[(a, b)]`` hold the components."""

    side = "L"

    def __init__(self, T: Functor, H: Functor, eps, eta, name="adj2"):
        self.T, self.H, self.name = T, H, name
        A, B = _factors2(T.source, f"{name}: T = {T.name}")
        C = T.target
        if not same_category(H.source, product(opposite(A), C)):
            raise StructuralError(f"{name}: H = {H.name} must have source {opposite(A).name} x {C.name}, "
                                  f"got {H.source.name}")
        if not same_category(H.target, B):
            raise StructuralError(f"{name}: H = {H.name} must land in {B.name}, got {H.target.name}")
        self.A, self.B, self.C = A, B, C
        self.eps = _fill(name, ((a, c) for a in A.objects for c in C.objects), eps, "counit")
        self.eta = _fill(name, ((a, b) for a in A.objects for b in B.objects), eta, "unit")
        for (a, c), m in self.eps.items():
            _check_ends(C, name, "counit", (a, c), m, T.obj((a, H.obj((a, c)))), c)
        for (a, b), m in self.eta.items():
            _check_ends(B, name, "unit", (a, b), m, b, H.obj((a, T.obj((a, b)))))

    @cached_property
    def counit(self) -> ExtranatTrans:
        A, C, T, H = self.A, self.C, self.T, self.H
        Aop = opposite(A)
        P = functor_from(product(A, Aop, C), C,
                         lambda x: T.obj((x[0], H.obj((x[1], x[2])))),
                         lambda m: T.mor((m[0], H.mor((m[1], m[2])))), name=f"{T.name}(id x {H.name})")
        fr = ExtranatFrame(P, identity_functor(C), [A, Aop, C], ["c", "cop", "a"], [C], ["a"])
        return ExtranatTrans(fr, {(a, c, TERMINAL_OBJECT): m for (a, c), m in self.eps.items()}, name="eps")

    @cached_property
    def unit(self) -> ExtranatTrans:
        A, B, T, H = self.A, self.B, self.T, self.H
        Aop = opposite(A)
        Q = functor_from(product(Aop, A, B), B,
                         lambda x: H.obj((x[0], T.obj((x[1], x[2])))),
                         lambda m: H.mor((m[0], T.mor((m[1], m[2])))), name=f"{H.name}(id x {T.name})")
        fr = ExtranatFrame(identity_functor(B), Q, [B], ["a"], [Aop, A, B], ["bop", "b", "a"])
        return ExtranatTrans(fr, {(TERMINAL_OBJECT, b, a): m for (a, b), m in self.eta.items()}, name="eta")

    def triangles(self, rep: Report):
        A, B, C, T, H = self.A, self.B, self.C, self.T, self.H
        rep.checks += ["triangle H", "triangle T"]
        for a in A.objects:
            ida = A.identity(a)
            for c in C.objects:
                hac = H.obj((a, c))
                m = B.compose(H.mor((ida, self.eps[(a, c)])), self.eta[(a, hac)])
                if m != B.identity(hac):
                    rep.add("triangle H", (a, c), f"got {m}")
            for b in B.objects:
                tab = T.obj((a, b))
                m = C.compose(self.eps[(a, tab)], T.mor((ida, self.eta[(a, b)])))
                if m != C.identity(tab):
                    rep.add("triangle T", (a, b), f"got {m}")

    def with_counit(self, key, m) -> "TwoVarAdjunctionL":
        eps = dict(self.eps)
        eps[key] = m
        return TwoVarAdjunctionL(self.T, self.H, eps, self.eta, name=self.name)

    @classmethod
    def from_adjunction(cls, adj: Adjunction, name=None) -> "TwoVarAdjunctionL":
        """``F -| U`` as a two-variable adjunction with ``A = 1``."""
        one = terminal()
        F, U = adj.F, adj.U
        T = functor_from(product(one, F.source), F.target, lambda x: F.obj(x[1]), lambda m: F.mor(m[1]), name=F.name)
        H = functor_from(product(opposite(one), F.target), F.source, lambda x: U.obj(x[1]), lambda m: U.mor(m[1]),
                         name=U.name)
        star = TERMINAL_OBJECT
        return cls(T, H, lambda a, c: adj.counit[c], lambda a, b: adj.unit[b], name=name or adj.name)

    def to_adjunction(self, name=None) -> Adjunction:
        if len(self.A.objects) != 1 or len(self.A.morphisms) != 1:
            raise StructuralError(f"{self.name}: A = {self.A.name} is not terminal")
        star, idstar = self.A.objects[0], self.A.morphisms[0]
        T, H = self.T, self.H
        F = functor_from(self.B, self.C, lambda b: T.obj((star, b)), lambda m: T.mor((idstar, m)), name=T.name)
        U = functor_from(self.C, self.B, lambda c: H.obj((star, c)), lambda m: H.mor((idstar, m)), name=H.name)
        unit = nat_from(identity_functor(self.B), compose_functors(U, F), lambda b: self.eta[(star, b)], name="eta")
        counit = nat_from(compose_functors(F, U), identity_functor(self.C), lambda c: self.eps[(star, c)], name="eps")
        return Adjunction(F, U, unit, counit, name=name or self.name)

    def __repr__(self):
        return f"<TwoVarAdjunctionL {self.T.name} -|_L {self.H.name}>"


class TwoVarAdjunctionR:
    """``T -|_R H``.  ``eps[(b, c)]`` and ``eta[(b, a)]`` hold the components."""

    side = "R"

    def __init__(self, T: Functor, H: Functor, eps, eta, name="adj2"):
        self.T, self.H, self.name = T, H, name
        A, B = _factors2(T.source, f"{name}: T = {T.name}")
        C = T.target
        if not same_category(H.source, product(C, opposite(B))):
            raise StructuralError(f"{name}: H = {H.name} must have source {C.name} x {opposite(B).name}, "
                                  f"got {H.source.name}")
        if not same_category(H.target, A):
            raise StructuralError(f"{name}: H = {H.name} must land in {A.name}, got {H.target.name}")
        self.A, self.B, self.C = A, B, C
        self.eps = _fill(name, ((b, c) for b in B.objects for c in C.objects), eps, "counit")
        self.eta = _fill(name, ((b, a) for b in B.objects for a in A.objects), eta, "unit")
        for (b, c), m in self.eps.items():
            _check_ends(C, name, "counit", (b, c), m, T.obj((H.obj((c, b)), b)), c)
        for (b, a), m in self.eta.items():
            _check_ends(A, name, "unit", (b, a), m, a, H.obj((T.obj((a, b)), b)))

    @cached_property
    def counit(self) -> ExtranatTrans:
        B, C, T, H = self.B, self.C, self.T, self.H
        Bop = opposite(B)
        P = functor_from(product(C, Bop, B), C,
                         lambda x: T.obj((H.obj((x[0], x[1])), x[2])),
                         lambda m: T.mor((H.mor((m[0], m[1])), m[2])), name=f"{T.name}({H.name} x id)")
        fr = ExtranatFrame(P, identity_functor(C), [C, Bop, B], ["a", "cop", "c"], [C], ["a"])
        return ExtranatTrans(fr, {(b, c, TERMINAL_OBJECT): m for (b, c), m in self.eps.items()}, name="eps")

    @cached_property
    def unit(self) -> ExtranatTrans:
        A, B, T, H = self.A, self.B, self.T, self.H
        Bop = opposite(B)
        Q = functor_from(product(A, B, Bop), A,
                         lambda x: H.obj((T.obj((x[0], x[1])), x[2])),
                         lambda m: H.mor((T.mor((m[0], m[1])), m[2])), name=f"{H.name}({T.name} x id)")
        fr = ExtranatFrame(identity_functor(A), Q, [A], ["a"], [A, B, Bop], ["a", "b", "bop"])
        return ExtranatTrans(fr, {(TERMINAL_OBJECT, a, b): m for (b, a), m in self.eta.items()}, name="eta")

    def triangles(self, rep: Report):
        A, B, C, T, H = self.A, self.B, self.C, self.T, self.H
        rep.checks += ["triangle H", "triangle T"]
        for b in B.objects:
            idb = B.identity(b)
            for c in C.objects:
                hcb = H.obj((c, b))
                m = A.compose(H.mor((self.eps[(b, c)], idb)), self.eta[(b, hcb)])
                if m != A.identity(hcb):
                    rep.add("triangle H", (b, c), f"got {m}")
            for a in A.objects:
                tab = T.obj((a, b))
                m = C.compose(self.eps[(b, tab)], T.mor((self.eta[(b, a)], idb)))
                if m != C.identity(tab):
                    rep.add("triangle T", (a, b), f"got {m}")

    def __repr__(self):
        return f"<TwoVarAdjunctionR {self.T.name} -|_R {self.H.name}>"


def check_two_var(adj) -> Report:
    rep = Report(f"two-variable adjunction {adj.name}")
    rep.merge(check_functor(adj.T))
    rep.merge(check_functor(adj.H))
    if rep.violations:
        return rep
    rep.merge(check_extranatural(adj.counit), prefix="counit.")
    rep.merge(check_extranatural(adj.unit), prefix="unit.")
    adj.triangles(rep)
    return rep


# ---------------------------------------------------------------------------
# composites


def _need(cond, msg):
    if not cond:
        raise StructuralError(msg)


def compose_two_var(adj: TwoVarAdjunctionL, K: Functor, adj1: Adjunction, adj2: Adjunction,
                    name=None) -> TwoVarAdjunctionL:
    """``F1 T (K x F2) -|_L U2 H (K^op x U1)``.

    ``K: A~ -> A``, ``adj1 = F1: C -> C~ -| U1`` and ``adj2 = F2: B~ -> B -| U2``.
    """
    T, H = adj.T, adj.H
    F1, U1, F2, U2 = adj1.F, adj1.U, adj2.F, adj2.U
    _need(same_category(K.target, adj.A), f"K = {K.name} lands in {K.target.name}, expected A = {adj.A.name}")
    _need(same_category(F1.source, adj.C), f"F1 = {F1.name} starts at {F1.source.name}, expected C = {adj.C.name}")
    _need(same_category(F2.target, adj.B), f"F2 = {F2.name} lands in {F2.target.name}, expected B = {adj.B.name}")
    At, Bt, Ct = K.source, F2.source, F1.target
    T2 = functor_from(product(At, Bt), Ct,
                      lambda x: F1.obj(T.obj((K.obj(x[0]), F2.obj(x[1])))),
                      lambda m: F1.mor(T.mor((K.mor(m[0]), F2.mor(m[1])))),
                      name=f"{F1.name}.{T.name}({K.name} x {F2.name})")
    H2 = functor_from(product(opposite(At), Ct), Bt,
                      lambda x: U2.obj(H.obj((K.obj(x[0]), U1.obj(x[1])))),
                      lambda m: U2.mor(H.mor((K.mor(m[0]), U1.mor(m[1])))),
                      name=f"{U2.name}.{H.name}({K.name} x {U1.name})")
    A, B, C = adj.A, adj.B, adj.C

    def eps(a, c):
        ka, u1c = K.obj(a), U1.obj(c)
        hx = H.obj((ka, u1c))
        return Ct.compose_path(adj1.counit[c], F1.mor(adj.eps[(ka, u1c)]),
                               F1.mor(T.mor((A.identity(ka), adj2.counit[hx]))))

    def eta(a, b):
        ka, f2b = K.obj(a), F2.obj(b)
        tx = T.obj((ka, f2b))
        return Bt.compose_path(U2.mor(H.mor((A.identity(ka), adj1.unit[tx]))),
                               U2.mor(adj.eta[(ka, f2b)]), adj2.unit[b])

    return TwoVarAdjunctionL(T2, H2, eps, eta, name=name or f"composite({adj.name})")


# ---------------------------------------------------------------------------
# conjugation


def _same_shape(adj, adjp):
    for x, y, nm in ((adj.A, adjp.A, "A"), (adj.B, adjp.B, "B"), (adj.C, adjp.C, "C")):
        _need(same_category(x, y), f"{adj.name} and {adjp.name} differ in {nm}: {x.name} vs {y.name}")
    _need(adj.side == adjp.side, "cannot conjugate between a left- and a right-sided adjunction")


def conjugate2_left(theta: NatTrans, adj, adjp, name=None) -> NatTrans:
    """``j_l(theta): H' => H`` for ``theta: T => T'``."""
    _same_shape(adj, adjp)
    _need(theta.source_functor.same_as(adj.T) and theta.target_functor.same_as(adjp.T),
          f"{theta.name} must run {adj.T.name} => {adjp.T.name}, "
          f"got {theta.source_functor.name} => {theta.target_functor.name}")
    T, H, Hp = adj.T, adj.H, adjp.H
    if adj.side == "L":
        A, B = adj.A, adj.B

        def comp(x):
            a, c = x
            ida, hp = A.identity(a), Hp.obj((a, c))
            return B.compose_path(H.mor((ida, adjp.eps[(a, c)])), H.mor((ida, theta[(a, hp)])), adj.eta[(a, hp)])
    else:
        A, B = adj.A, adj.B

        def comp(x):
            c, b = x
            idb, hp = B.identity(b), Hp.obj((c, b))
            return A.compose_path(H.mor((adjp.eps[(b, c)], idb)), H.mor((theta[(hp, b)], idb)), adj.eta[(b, hp)])
    return nat_from(Hp, H, comp, name=name or f"j_l({theta.name})")


def conjugate2_right(phi: NatTrans, adj, adjp, name=None) -> NatTrans:
    """``j_r(phi): T => T'`` for ``phi: H' => H``."""
    _same_shape(adj, adjp)
    _need(phi.source_functor.same_as(adjp.H) and phi.target_functor.same_as(adj.H),
          f"{phi.name} must run {adjp.H.name} => {adj.H.name}, "
          f"got {phi.source_functor.name} => {phi.target_functor.name}")
    T, Tp, C = adj.T, adjp.T, adj.C
    if adj.side == "L":
        A = adj.A

        def comp(x):
            a, b = x
            ida, tp = A.identity(a), Tp.obj((a, b))
            return C.compose_path(adj.eps[(a, tp)], T.mor((ida, phi[(a, tp)])), T.mor((ida, adjp.eta[(a, b)])))
    else:
        B = adj.B

        def comp(x):
            a, b = x
            idb, tp = B.identity(b), Tp.obj((a, b))
            return C.compose_path(adj.eps[(b, tp)], T.mor((phi[(tp, b)], idb)), T.mor((adjp.eta[(b, a)], idb)))
    return nat_from(T, Tp, comp, name=name or f"j_r({phi.name})")


# ---------------------------------------------------------------------------
# conjugate shapes


@dataclass
class ShapeFrame:
    """Wiring for conjugation between composite adjunctions.

    ``tc`` and ``td`` are the tensor-hom adjunctions of the closed monoidal
    categories ``C`` and ``D``; ``adj1 = F1: C -> E``, ``adj2 = F2: B -> C``,
    ``adj1p = F1': D -> E``, ``adj2p = F2': B -> D``, ``K: A -> C``,
    ``Kp = K': A -> D``.
    """

    tc: TwoVarAdjunctionL
    td: TwoVarAdjunctionL
    adj1: Adjunction
    adj2: Adjunction
    adj1p: Adjunction
    adj2p: Adjunction
    K: Functor
    Kp: Functor
    name: str = "shape"

    def __post_init__(self):
        C, D = self.tc.C, self.td.C
        E, B, A = self.adj1.D, self.adj2.C, self.K.source
        checks = [
            (self.adj1.C, C, "F1 source"), (self.adj2.D, C, "F2 target"), (self.K.target, C, "K target"),
            (self.adj1p.C, D, "F1' source"), (self.adj2p.D, D, "F2' target"), (self.Kp.target, D, "K' target"),
            (self.adj1p.D, E, "F1' target"), (self.adj2p.C, B, "F2' source"), (self.Kp.source, A, "K' source"),
        ]
        for got, want, what in checks:
            _need(same_category(got, want), f"{self.name}: {what} is {got.name}, expected {want.name}")

    @cached_property
    def left(self) -> TwoVarAdjunctionL:
        return compose_two_var(self.tc, self.K, self.adj1, self.adj2, name=f"{self.name}.left")

    @cached_property
    def right(self) -> TwoVarAdjunctionL:
        return compose_two_var(self.td, self.Kp, self.adj1p, self.adj2p, name=f"{self.name}.right")

    def forward(self, theta: NatTrans, name=None) -> NatTrans:
        """``theta_{a,b}: F1(K a (x) F2 b) -> F1'(K' a (x) F2' b)`` to
        ``phi_{a,e}: U2'(K' a -o U1' e) -> U2(K a -o U1 e)``."""
        return conjugate2_left(theta, self.left, self.right, name=name)

    def backward(self, phi: NatTrans, name=None) -> NatTrans:
        return conjugate2_right(phi, self.left, self.right, name=name)

    def forward_reversed(self, theta: NatTrans, name=None) -> NatTrans:
        """Both arrows switched: ``theta: T' => T`` to ``H => H'``."""
        return conjugate2_left(theta, self.right, self.left, name=name)

    def backward_reversed(self, phi: NatTrans, name=None) -> NatTrans:
        return conjugate2_right(phi, self.right, self.left, name=name)


def conjugate_shape(theta: NatTrans, frame: ShapeFrame, direction: str = "forward", name=None) -> NatTrans:
    if direction == "forward":
        return frame.forward(theta, name=name)
    if direction == "backward":
        return frame.backward(theta, name=name)
    raise ValueError(f"direction must be 'forward' or 'backward', not {direction!r}")
