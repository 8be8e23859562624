import pytest
from hypothesis import given, strategies as st

from catconj.adjoint import conjugate_left
from catconj.ekgraph import (
    Interpretation,
    InterfaceError,
    LoopError,
    Signature,
    comp,
    composable,
    conjugate2_diagram,
    conjugate_diagram,
    ek_graph,
    evaluate,
    export_ek,
    stacking_signature,
    fjuxt,
    idcell,
    idw,
    juxt,
    lwhisk,
    rwhisk,
    vcomp,
    zigzag_diagram,
)
from catconj.fincat import StructuralError, identity_functor, identity_nat, nat_from
from catconj.twovar import conjugate2_left

from helpers import twisted, twisted2, zn

EMPTY = Interpretation({}, {}, {})


def test_stacking_left_composite_is_an_extranatural_shape():
    _, beta, first, _ = stacking_signature()
    assert composable(beta, first)
    g = ek_graph(vcomp(beta, first))
    assert not g.has_loops
    assert export_ek(vcomp(beta, first)).splitlines() == ["arc b0 b1 C", "arc b2 t0 A", "arc t1 t2 B"]


def test_stacking_right_composite_closes_a_loop():
    _, beta, _, last = stacking_signature()
    c = composable(beta, last)
    assert not c and c.loops == (("lower:t1-t2", "upper:b1-b2"),)
    t = vcomp(beta, last)
    assert "loop lower:t1-t2 upper:b1-b2" in export_ek(t)
    with pytest.raises(LoopError):
        evaluate(t, EMPTY)


def conjugate_cells():
    s = Signature()
    s.category("C", "D")
    F, U = s.functor("F", ["C"], ["D"]), s.functor("U", ["D"], ["C"])
    Fp, Up = s.functor("F'", ["C"], ["D"]), s.functor("U'", ["D"], ["C"])
    eta = s.cell("eta", idw("C"), comp(U, F))
    th = s.cell("theta", F, Fp)
    epsp = s.cell("eps'", comp(Fp, Up), idw("D"))
    return rwhisk(eta, [Up]), lwhisk(U, rwhisk(th, [Up])), lwhisk(U, epsp)


def test_reassociation_gives_the_same_graph():
    a, b, c = conjugate_cells()
    left, right = vcomp(vcomp(a, b), c), vcomp(a, vcomp(b, c))
    assert export_ek(left) == export_ek(right) == export_ek(vcomp(a, b, c))


@given(st.integers(2, 5), st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
def test_reassociation_gives_the_same_value(n, k, kp, t):
    C = zn(n)
    a, ap = twisted(C, n, k), twisted(C, n, kp)
    I = identity_functor(C)
    _, interp = conjugate_diagram(nat_from(I, I, lambda x: str(t % n)), a, ap)
    x, y, z = conjugate_cells()
    assert evaluate(vcomp(vcomp(x, y), z), interp).same_as(evaluate(vcomp(x, vcomp(y, z)), interp))


def test_identity_cells_are_units():
    _, beta, first, _ = stacking_signature()
    for t in (beta, first, vcomp(beta, first)):
        assert export_ek(vcomp(idcell(t.dom), t)) == export_ek(t) == export_ek(vcomp(t, idcell(t.cod)))


def test_interface_mismatch():
    _, beta, _, _ = stacking_signature()
    with pytest.raises(InterfaceError):
        vcomp(beta, beta)


def test_bad_profiles_are_rejected():
    s = Signature()
    s.category("C", "D")
    F = s.functor("F", ["C", "C"], ["D"])
    G = s.functor("G", ["C"], ["D"])
    with pytest.raises(StructuralError):
        s.cell("cap", F, G, [("b0", "b1"), ("b2", "t0")])  # no b2
    with pytest.raises(StructuralError):
        s.cell("cap", F, idw("D"), [("b0", "b1")])  # two covariant C letters cannot be capped
    with pytest.raises(StructuralError):
        s.functor("H", ["E"], ["D"])


@given(st.integers(2, 6), st.integers(0, 5), st.integers(0, 5), st.integers(0, 5))
def test_conjugate_diagram_matches_the_formula(n, k, kp, t):
    C = zn(n)
    a, ap = twisted(C, n, k), twisted(C, n, kp)
    I = identity_functor(C)
    theta = nat_from(I, I, lambda x: str(t % n))
    term, interp = conjugate_diagram(theta, a, ap)
    assert evaluate(term, interp).as_nat_trans().same_as(conjugate_left(theta, a, ap))


@given(st.integers(2, 5), st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
def test_two_variable_diagram_matches_the_formula(n, k, kp, t):
    C = zn(n)
    a, ap = twisted2(C, n, k), twisted2(C, n, kp)
    theta = nat_from(a.T, ap.T, lambda x: str(t % n))
    term, interp = conjugate2_diagram(theta, a, ap)
    assert not ek_graph(term).has_loops
    assert evaluate(term, interp).as_nat_trans().same_as(conjugate2_left(theta, a, ap))


def test_zigzag_is_the_identity(fmap):
    for adj in (fmap.adj_lower, twisted(zn(4), 4, 1)):
        term, interp = zigzag_diagram(adj)
        assert evaluate(term, interp).as_nat_trans().same_as(identity_nat(adj.F))


def test_functor_leaf_evaluates_to_its_identity():
    adj = twisted(zn(3), 3, 1)
    _, interp = zigzag_diagram(adj)
    s = Signature()
    s.category("C", "D")
    F = s.functor("F", ["C"], ["D"])
    assert evaluate(F, interp).as_nat_trans().same_as(identity_nat(adj.F))


def test_cup_generator_keeps_its_components():
    C = zn(3)
    a = twisted2(C, 3, 2)
    term, interp = conjugate2_diagram(nat_from(a.T, a.T, lambda x: "0"), a, a)
    s = Signature()
    s.category("A", "B", "C")
    T, H = s.functor("T", ["A", "B"], ["C"]), s.functor("H", ["A^op", "C"], ["B"])
    eta = s.cell("eta", idw("B"), comp(H, fjuxt(idw("A^op"), T)), [("b0", "t2"), ("t0", "t1")])
    v = evaluate(eta, interp)
    assert not v.is_natural
    assert all(m == a.eta[("*", "*")] for m in v.table().values())
    with pytest.raises(StructuralError):
        v.as_nat_trans()


def test_missing_cell_value():
    _, beta, first, _ = stacking_signature()
    with pytest.raises(StructuralError):
        evaluate(juxt(first), EMPTY)
