"""Ordinary adjunctions and conjugation of natural transformations."""

from __future__ import annotations

from dataclasses import dataclass

from .fincat import (
    Category,
    Functor,
    NatTrans,
    Report,
    StructuralError,
    check_functor,
    check_nat_trans,
    compose_functors,
    identity_functor,
    identity_nat,
    nat_from,
    posetal_nat,
    same_category,
)


@dataclass
class Adjunction:
    """``F: C -> D`` left adjoint to ``U: D -> C``.

    ``unit: id_C => U F`` and ``counit: F U => id_D``.
    """

    F: Functor
    U: Functor
    unit: NatTrans
    counit: NatTrans
    name: str = "adj"

    def __post_init__(self):
        F, U = self.F, self.U
        if not (same_category(F.source, U.target) and same_category(F.target, U.source)):
            raise StructuralError(f"{self.name}: {F.name}: {F.source.name} -> {F.target.name} and "
                                  f"{U.name}: {U.source.name} -> {U.target.name} do not form a pair")
        for t, s, g, what in ((self.unit, identity_functor(F.source), compose_functors(U, F), "unit"),
                              (self.counit, compose_functors(F, U), identity_functor(F.target), "counit")):
            if not (t.source_functor.same_as(s) and t.target_functor.same_as(g)):
                raise StructuralError(f"{self.name}: {what} {t.name} goes {t.source_functor.name} => "
                                      f"{t.target_functor.name}, expected {s.name} => {g.name}")

    @property
    def C(self) -> Category:
        return self.F.source

    @property
    def D(self) -> Category:
        return self.F.target


def check_adjunction(a: Adjunction) -> Report:
    rep = Report(f"adjunction {a.name}")
    for part in (check_functor(a.F), check_functor(a.U), check_nat_trans(a.unit), check_nat_trans(a.counit)):
        rep.merge(part)
    if rep.violations:
        return rep
    C, D = a.C, a.D
    rep.checks += ["zigzag F", "zigzag U"]
    for c in C.objects:
        # eps_{Fc} . F(eta_c) = id_{Fc}
        m = D.compose(a.counit[a.F.obj(c)], a.F.mor(a.unit[c]))
        if m != D.identity(a.F.obj(c)):
            rep.add("zigzag F", (c,), f"got {m}")
    for d in D.objects:
        # U(eps_d) . eta_{Ud} = id_{Ud}
        m = C.compose(a.U.mor(a.counit[d]), a.unit[a.U.obj(d)])
        if m != C.identity(a.U.obj(d)):
            rep.add("zigzag U", (d,), f"got {m}")
    return rep


def identity_adjunction(c: Category) -> Adjunction:
    i = identity_functor(c)
    return Adjunction(i, i, identity_nat(i), identity_nat(i), name=f"id_{c.name}")


def galois_connection(F: Functor, U: Functor, name="adj") -> Adjunction:
    """Adjunction between thin categories; the unit and counit are forced."""
    return Adjunction(F, U, posetal_nat(identity_functor(F.source), compose_functors(U, F), name="eta"),
                      posetal_nat(compose_functors(F, U), identity_functor(F.target), name="eps"), name=name)


def from_hom_bijection(F: Functor, U: Functor, phi, name="adj") -> Adjunction:
    """Adjunction from ``phi(c, d, g: F c -> d) -> (c -> U d)``.

    The unit is ``phi`` at identities; the counit component at ``d`` is the
    unique ``g: F U d -> d`` with ``phi(U d, d, g) = id``.  The zig-zag
    check decides whether the supplied bijection was natural.
    """
    C, D = F.source, F.target
    unit = nat_from(identity_functor(C), compose_functors(U, F),
                    lambda c: phi(c, F.obj(c), D.identity(F.obj(c))), name="eta")

    def eps(d):
        ud = U.obj(d)
        hits = [g for g in D.hom(F.obj(ud), d) if phi(ud, d, g) == C.identity(ud)]
        if len(hits) != 1:
            raise StructuralError(f"{name}: hom bijection has {len(hits)} preimages of id_{ud}")
        return hits[0]

    counit = nat_from(compose_functors(F, U), identity_functor(D), eps, name="eps")
    return Adjunction(F, U, unit, counit, name=name)


def _same_ends(a: Adjunction, b: Adjunction):
    if not (same_category(a.C, b.C) and same_category(a.D, b.D)):
        raise StructuralError(f"{a.name} and {b.name} do not share endpoint categories: "
                              f"{a.C.name} -> {a.D.name} vs {b.C.name} -> {b.D.name}")


def conjugate_left(theta: NatTrans, a: Adjunction, ap: Adjunction, name=None) -> NatTrans:
    """``j_l(theta): U' => U`` for ``theta: F => F'``.

    Component at ``d``: ``U(eps'_d) . U(theta_{U'd}) . eta_{U'd}``.
    """
    _same_ends(a, ap)
    if not (theta.source_functor.same_as(a.F) and theta.target_functor.same_as(ap.F)):
        raise StructuralError(f"{theta.name} must run {a.F.name} => {ap.F.name}")
    C = a.C

    def comp(d):
        upd = ap.U.obj(d)
        return C.compose_path(a.U.mor(ap.counit[d]), a.U.mor(theta[upd]), a.unit[upd])

    return nat_from(ap.U, a.U, comp, name=name or f"j_l({theta.name})")


def conjugate_right(phi: NatTrans, a: Adjunction, ap: Adjunction, name=None) -> NatTrans:
    """``j_r(phi): F => F'`` for ``phi: U' => U``.

    Component at ``c``: ``eps_{F'c} . F(phi_{F'c}) . F(eta'_c)``.
    """
    _same_ends(a, ap)
    if not (phi.source_functor.same_as(ap.U) and phi.target_functor.same_as(a.U)):
        raise StructuralError(f"{phi.name} must run {ap.U.name} => {a.U.name}")
    D = a.D

    def comp(c):
        fpc = ap.F.obj(c)
        return D.compose_path(a.counit[fpc], a.F.mor(phi[fpc]), a.F.mor(ap.unit[c]))

    return nat_from(a.F, ap.F, comp, name=name or f"j_r({phi.name})")
