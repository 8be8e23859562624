import numpy as np
import pytest
from hypothesis import given, strategies as st

from catconj.closedmon import to_two_var
from catconj.extranat import (
    PATH_NAMES,
    ExtranatFrame,
    ExtranatTrans,
    check_cell,
    check_extranatural,
    check_path_independence,
    compose_with_naturals,
    diagram_paths,
    from_nat_trans,
    hat,
    same_cell,
    to_nat_trans,
    unhat,
    whisker,
)
from catconj.fincat import (
    NatTrans,
    StructuralError,
    identity_functor,
    identity_nat,
    nat_from,
    posetal_functor,
)
from catconj.instances import chain, delooping, parallel_arrows, powerset

from oracles import extranatural_ok, is_natural


@pytest.fixture(scope="module")
def ev3():
    return to_two_var(powerset(3)).counit


def test_powerset_ev_and_coev_are_extranatural(p2, ev3):
    adj = to_two_var(p2)
    for e in (adj.counit, adj.unit, ev3):
        assert check_extranatural(e, paths=True).ok
        assert extranatural_ok(e)


def test_hat_unhat_round_trip(p2, ev3):
    for e in (to_two_var(p2).counit, ev3):
        cell = hat(e)
        assert check_cell(cell).ok
        assert unhat(cell).same_as(e)


def test_hat_of_a_hat_matches_its_values(p2):
    e = to_two_var(p2).counit
    assert same_cell(hat(e), hat(unhat(hat(e))))


def test_eight_paths_agree_for_ev(ev3):
    assert len(PATH_NAMES) == 8
    assert check_path_independence(ev3).ok
    fr = ev3.frame
    f = fr.C.morphisms[-1]
    h, g = fr.A.morphisms[0], fr.B.morphisms[0]
    assert len({m for _, m in diagram_paths(ev3, f, h, g)}) == 1


def test_delooping_ev_is_extranatural():
    e = to_two_var(delooping(4)).counit
    assert check_extranatural(e, paths=True).ok


@given(st.integers(2, 5), st.integers(0, 10**6))
def test_squares_agree_with_outer_oracle_on_deloopings(n, k):
    adj = to_two_var(delooping(n))
    e = adj.counit
    r = np.random.default_rng(k)
    key = next(iter(e.components))
    bent = e.replace(key, str(r.integers(n)))
    assert check_extranatural(bent).ok == extranatural_ok(bent)


@pytest.mark.parametrize("c1", ["id1", "s"])
def test_naturals_embed_as_extranaturals(c1):
    c0 = "id0"
    P = parallel_arrows()
    I = identity_functor(P)
    t = NatTrans(I, I, {"0": c0, "1": c1})
    e = from_nat_trans(t)
    assert check_extranatural(e).ok == is_natural(t) == extranatural_ok(e)
    assert to_nat_trans(e).same_as(t)


def test_non_natural_family_gives_a_square_witness():
    P = parallel_arrows()
    I = identity_functor(P)
    e = from_nat_trans(NatTrans(I, I, {"0": "id0", "1": "s"}))
    rep = check_extranatural(e)
    assert not rep.ok
    assert any(v.witness[1] in ("u", "su") for v in rep.violations)


def test_wrong_endpoints_are_structural(p2):
    e = to_two_var(p2).counit
    key = next(k for k in e.components if k[0] != "S_")
    with pytest.raises(StructuralError, match="goes"):
        e.replace(key, p2.C.identity("S_01"))


def test_mismatched_layout_is_structural(p2):
    T = p2.tensor
    with pytest.raises(StructuralError):
        ExtranatFrame(T, identity_functor(p2.C), [p2.C, p2.C], ["c", "cop"], [p2.C], ["a"])


def test_whiskering_by_a_monotone_map_stays_extranatural():
    cm = chain(3)
    e = to_two_var(cm).counit
    C = cm.C
    K = posetal_functor(C, C, lambda x: str(min(int(x) + 1, 3)), name="succ")
    I = identity_functor(C)
    w = whisker(e, I, I, identity_functor(e.frame.B), K)
    assert check_extranatural(w).ok


def test_pasting_naturals_above_or_below_agrees():
    cm = delooping(5)
    e = to_two_var(cm).counit
    fr = e.frame
    one = lambda cat, v: nat_from(identity_functor(cat), identity_functor(cat), lambda x: v)
    phi, gamma = one(fr.A, "1"), one(fr.C, "2")
    theta, kappa = identity_nat(identity_functor(fr.B)), one(fr.D, "3")
    up = compose_with_naturals(e, phi, gamma, theta, kappa, order="above")
    down = compose_with_naturals(e, phi, gamma, theta, kappa, order="below")
    assert up.same_as(down)
    assert check_extranatural(up).ok


@pytest.mark.parametrize("shift", [0, 1, 2])
def test_generator_scan_agrees_with_full_scan(shift):
    import dataclasses

    cell = hat(to_two_var(delooping(3)).counit)
    base = cell.component

    def bent(x, y, e):
        v = base(x, y, e)
        return str((int(v) + shift) % 3) if e[0] == "1" else v

    c = dataclasses.replace(cell, component=bent)
    fast, full = check_cell(c), check_cell(c, generators_only=False)
    assert fast.ok == full.ok == (shift == 0)
