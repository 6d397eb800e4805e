import pytest
from hypothesis import assume, given, strategies as st

from fistab.fimod import degree, validate, validate_morphism, compose
from fistab.fixtures import random_module
from fistab.localcoh import (
    build_semi_induced_complex,
    crit,
    h0_agrees_with_torsion,
    h_table,
    hmax,
    les_dimension_check,
    local_cohomology,
    reg_local,
    shift_until_semi_induced,
)
from fistab.polystab import stable_degree


def hvals(v):
    return [int(x.value) for x in h_table(v).h]


def test_shift_search_examples(fx):
    for m in range(3):
        assert shift_until_semi_induced(fx[f"M{m}"])[0] == 0
    for d in range(4):
        b, sb, cert = shift_until_semi_induced(fx[f"T{d}"])
        assert b == d + 1 and sb.is_zero and cert.certified
    assert shift_until_semi_induced(fx["Z"])[0] >= 1


def test_complex_examples(fx):
    cx = build_semi_induced_complex(fx["M1"])
    assert cx.length == 0 and cx.terms[0].dims == fx["M1"].dims
    cx = build_semi_induced_complex(fx["T2"])
    assert cx.length == 0 and cx.terms[0].is_zero
    cx = build_semi_induced_complex(fx["Z"])
    assert cx.length >= 2
    for f, g in zip(cx.maps, cx.maps[1:]):
        assert validate_morphism(g) == []
        c = compose(g, f)
        assert all(not m.any() for m in c.maps)


def test_local_cohomology_examples(fx):
    for d in range(4):
        h = hvals(fx[f"T{d}"])
        assert h[0] == d and all(x == -1 for x in h[1:])
    for m in range(3):
        assert all(x == -1 for x in hvals(fx[f"M{m}"]))
    h = hvals(fx["Z"])
    assert h[2] == 0 and all(x == -1 for j, x in enumerate(h) if j != 2)


def test_table_examples(fx):
    t = h_table(fx["diamond"])
    assert [int(x.value) for x in t.h][:3] == [1, -1, 0] and t.hmax.value == 1
    assert hmax(fx["M1"]).value == -1
    assert hmax(fx["T3"]).value == 3


def test_crit_examples(fx):
    for d in range(4):
        assert crit(fx[f"T{d}"]).value == 0
    assert crit(fx["diamond"]).value == 2
    assert crit(fx["Z"]).value == 2
    with pytest.raises(ValueError):
        crit(fx["M1"])


def test_les_examples(fx):
    for name in ("M0", "M1", "M2", "T0", "T2", "diamond", "Z", "M1*T1"):
        assert les_dimension_check(fx[name]), name


def test_h0_consistency(fx):
    for name, v in fx.items():
        assert h0_agrees_with_torsion(v), name


def test_cohomology_modules_validate(fx):
    for j in range(4):
        assert validate(local_cohomology(fx["diamond"], j)[0], check_gen_bound=False) == []


@given(st.integers(0, 1 << 30))
def test_support_bound_and_consistency(seed):
    v = random_module(seed)
    d = stable_degree(v)
    t = h_table(v)
    assume(d.certified and t.hmax.certified)
    for j, x in enumerate(t.h):
        if j > d.value + 1:
            assert x.value == -1
        assert x.value <= t.hmax.value
    assert h0_agrees_with_torsion(v)
    assert les_dimension_check(v)


@given(st.integers(0, 1 << 30))
def test_nss_identity_on_random_modules(seed):
    from fistab.fihom import regularity_from_syzygies

    v = random_module(seed)
    a, b = regularity_from_syzygies(v), reg_local(v)
    assume(a.certified and b.certified)
    assert a.value == b.value


@given(st.integers(0, 1 << 30))
def test_torsion_modules_have_reg_equal_degree(seed):
    from fistab.fimod import torsion_H0

    v = random_module(seed)
    h = torsion_H0(v)
    d = degree(h)
    assume(d.certified and d.value >= 0)
    t = h_table(h.with_bounds(int(d.value), int(d.value) + 1))
    assert t.h[0].value == d.value and t.reg.value == d.value
