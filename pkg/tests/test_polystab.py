import pytest
from hypothesis import assume, given, strategies as st

from fistab.fimod import derivative
from fistab.fixtures import RandomParams, random_module
from fistab.polystab import (
    PolyQuery,
    UncertifiedInput,
    check_derivative_props,
    check_theorem_A,
    check_theorem_B,
    hilbert_delta,
    in_poly1,
    in_poly2,
    stable_degree,
)


def test_stable_degree_examples(fx):
    for d in range(4):
        assert stable_degree(fx[f"T{d}"]).value == -1
    for m in range(3):
        s = stable_degree(fx[f"M{m}"])
        assert s.value == m and s.certified
    assert stable_degree(fx["Z"]).value == 1


def test_hilbert_delta_examples(fx):
    assert hilbert_delta(fx["M1"]).value == 1
    assert hilbert_delta(fx["M2"]).value == 2
    assert hilbert_delta(fx["T2"]).value == -1
    assert not hilbert_delta(fx["M1"]).certified


def test_in_poly1_examples(fx):
    for d in range(4):
        assert in_poly1(fx[f"T{d}"], -1, d + 1)[0]
    ok, trace = in_poly1(fx["M1"], 1, 0)
    assert ok and len(trace.steps) == 3
    for L in range(8):
        assert not in_poly1(fx["M1"], 0, L)[0]


def test_in_poly2_examples(fx):
    for d in range(4):
        assert in_poly2(fx[f"T{d}"], -1, d + 1)[0]
    assert in_poly2(fx["diamond"], 1, 3)[0]
    assert not in_poly2(fx["diamond"], 1, 2)[0]
    assert in_poly2(fx["M0"], 0, 0)[0]


def test_poly_query():
    with pytest.raises(ValueError):
        PolyQuery(3, 0, 0)
    with pytest.raises(ValueError):
        PolyQuery(1, -2, 0)


def test_theorem_A_examples(fx):
    v = check_theorem_A(fx["M1"], 1, 0)
    assert v.recursive_membership and v.invariant_membership and v.agree
    v = check_theorem_A(fx["T2"], -1, 2)
    assert not v.recursive_membership and not v.invariant_membership
    v = check_theorem_A(fx["zero"], -1, 0)
    assert v.recursive_membership and v.invariant_membership


def test_theorem_B_examples(fx):
    v = check_theorem_B(fx["diamond"], 1, 3)
    assert v.recursive_membership and v.invariant_membership
    for d in range(4):
        v = check_theorem_B(fx[f"T{d}"], -1, d)
        assert not v.recursive_membership and not v.invariant_membership
    for m in range(3):
        v = check_theorem_B(fx[f"M{m}"], m, 0)
        assert v.recursive_membership and v.invariant_membership


def test_derivative_props_examples(fx):
    rep = check_derivative_props(fx["diamond"])
    assert rep.ok
    assert rep.checks["reg(DV) = reg(V) - 1"] and rep.checks["crit(DV) = crit(V) - 1"]
    from fistab.fihom import regularity_from_syzygies
    from fistab.localcoh import crit

    dv = derivative(fx["diamond"])
    assert regularity_from_syzygies(dv).value == 1 and crit(dv).value == 1
    for d in range(4):
        assert check_derivative_props(fx[f"T{d}"]).checks["deg K = h0"]
    rep = check_derivative_props(fx["M2"])
    assert "reg(DV) <= reg(V) - 1" not in rep.checks and rep.ok


def test_uncertified_input_raises(fx):
    with pytest.raises(UncertifiedInput):
        check_theorem_A(fx["diamond"].with_bounds(None, None).restrict(3), 1, 2)
    with pytest.raises(UncertifiedInput):
        check_theorem_A(fx["diamond"].restrict(4), 1, 2)


@given(st.integers(0, 1 << 30), st.integers(-1, 3), st.integers(0, 6), st.sampled_from([1, 2]))
def test_membership_is_monotone(seed, r, b, flavor):
    v = random_module(seed)
    q = PolyQuery(flavor, r, b)
    try:
        base = q.evaluate(v)[0]
        up_r = PolyQuery(flavor, r + 1, b).evaluate(v)[0]
        up_b = PolyQuery(flavor, r, b + 1).evaluate(v)[0]
    except UncertifiedInput:
        assume(False)
    if base:
        assert up_r and up_b


@given(st.integers(0, 1 << 30))
def test_stable_degree_matches_dimension_growth(seed):
    v = random_module(seed, RandomParams(horizon=12))
    d = stable_degree(v)
    assume(d.certified)
    try:
        h = hilbert_delta(v)
    except ValueError:
        assume(False)
    assert h.value == d.value


@given(st.integers(0, 1 << 30))
def test_stable_degree_drops_under_derivative(seed):
    v = random_module(seed)
    d = stable_degree(v)
    assume(d.certified and d.value >= 0)
    dd = stable_degree(derivative(v))
    assert dd.value == d.value - 1
