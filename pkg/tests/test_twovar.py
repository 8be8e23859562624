import itertools

import pytest
from hypothesis import given, strategies as st

from catconj.adjoint import check_adjunction, conjugate_left, identity_adjunction
from catconj.closedmon import to_two_var
from catconj.fincat import StructuralError, identity_functor, nat_from, vertical
from catconj.instances import chain, cyclic_group, delooping, group_category, powerset, symmetric_group
from catconj.twovar import (
    ShapeFrame,
    TwoVarAdjunctionL,
    check_two_var,
    compose_two_var,
    conjugate2_left,
    conjugate2_right,
    conjugate_shape,
)

from helpers import twisted, twisted2, zn


@pytest.mark.parametrize("cm", [powerset(["0", "1"]), chain(3), delooping(4), group_category(*symmetric_group(3))],
                         ids=["P2", "chain3", "BZ4", "S3"])
def test_builtin_structures_are_two_variable_adjunctions(cm):
    assert check_two_var(to_two_var(cm)).ok


def test_right_sided_group_structure():
    g = group_category(*symmetric_group(3))
    assert check_two_var(g.right).ok


@given(st.integers(2, 6), st.integers(0, 5), st.integers(1, 5))
def test_mutated_counit_is_caught(n, k, d):
    C = zn(n)
    adj = twisted2(C, n, k)
    assert check_two_var(adj).ok
    bad = adj.with_counit(("*", "*"), str((k + d) % n))
    rep = check_two_var(bad)
    assert (d % n == 0) == rep.ok
    if not rep.ok:
        assert {v.law for v in rep.violations} & {"triangle H", "triangle T"}


def test_missing_component_is_structural():
    C = zn(3)
    adj = twisted2(C, 3, 0)
    with pytest.raises(StructuralError):
        TwoVarAdjunctionL(adj.T, adj.H, {}, adj.eta)


@given(st.integers(2, 6), st.integers(0, 5), st.integers(0, 5), st.integers(0, 5))
def test_conjugate2_round_trip(n, k, kp, t):
    C = zn(n)
    a, ap = twisted2(C, n, k), twisted2(C, n, kp)
    theta = nat_from(a.T, ap.T, lambda x: str(t % n))
    phi = conjugate2_left(theta, a, ap)
    assert conjugate2_right(phi, a, ap).same_as(theta)
    assert conjugate2_left(conjugate2_right(phi, a, ap), a, ap).same_as(phi)


def test_conjugate2_reverses_composition():
    n = 3
    C = zn(n)
    adjs = [twisted2(C, n, k) for k in range(n)]
    T = adjs[0].T
    for a1, a2, a3 in itertools.product(adjs, repeat=3):
        for s, t in itertools.product(range(n), repeat=2):
            th1 = nat_from(T, T, lambda x: str(s))
            th2 = nat_from(T, T, lambda x: str(t))
            lhs = conjugate2_left(vertical(th2, th1), a1, a3)
            rhs = vertical(conjugate2_left(th1, a1, a2), conjugate2_left(th2, a2, a3))
            assert lhs.same_as(rhs)


@given(st.integers(2, 6), st.integers(0, 5), st.integers(0, 5), st.integers(0, 5))
def test_terminal_parameter_recovers_one_variable_conjugation(n, k, kp, t):
    C = zn(n)
    a, ap = twisted(C, n, k), twisted(C, n, kp)
    a2 = TwoVarAdjunctionL.from_adjunction(a)
    ap2 = TwoVarAdjunctionL.from_adjunction(ap)
    assert check_two_var(a2).ok
    assert check_adjunction(a2.to_adjunction()).ok
    I = identity_functor(C)
    theta = nat_from(I, I, lambda x: str(t % n))
    theta2 = nat_from(a2.T, ap2.T, lambda x: theta[x[1]])
    one = conjugate_left(theta, a, ap)
    two = conjugate2_left(theta2, a2, ap2)
    for c in C.objects:
        assert two[("*", c)] == one[c]


def test_composite_with_identities_is_unchanged():
    cm = delooping(3)
    adj = to_two_var(cm)
    i = identity_adjunction(cm.C)
    comp = compose_two_var(adj, identity_functor(cm.C), i, i)
    assert check_two_var(comp).ok
    for k in adj.eps:
        assert comp.eps[k] == adj.eps[k]


def test_composite_with_galois_pairs(fmap):
    tc = to_two_var(fmap.X)
    lo, up = fmap.adj_lower, fmap.adj_upper
    comp = compose_two_var(tc, fmap.inverse, lo, up)
    assert check_two_var(comp).ok


def test_composite_shape_mismatch():
    cm = delooping(3)
    other = identity_adjunction(zn(2))
    with pytest.raises(StructuralError):
        compose_two_var(to_two_var(cm), identity_functor(cm.C), other, other)


def test_shape_frame_round_trip_on_cyclic_group():
    cm = group_category(*cyclic_group(3))
    tv = to_two_var(cm)
    a = identity_adjunction(cm.C)
    I = identity_functor(cm.C)
    fr = ShapeFrame(tv, tv, a, a, a, a, I, I)
    theta = nat_from(fr.left.T, fr.right.T, lambda x: fr.left.C.identity(fr.left.T.obj(x)))
    phi = conjugate_shape(theta, fr)
    assert conjugate_shape(phi, fr, "backward").same_as(theta)
    with pytest.raises(ValueError):
        conjugate_shape(theta, fr, "sideways")
