import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from fistab.exactlin import FieldSpec
from fistab.fimod import (
    INF,
    FIMorphism,
    HorizonExhausted,
    TruncatedFIModule,
    compose,
    degree,
    derivative,
    direct_sum,
    h0_degree,
    identity_morphism,
    induced_map,
    is_torsion,
    kernel_K,
    morphism_cokernel,
    morphism_image,
    morphism_kernel,
    quotient,
    shift,
    tensor,
    torsion_H0,
    validate,
    validate_morphism,
    zero_module,
    zero_morphism,
)
from fistab.fixtures import RandomParams, atomic_torsion, free, random_module, summing_map
from oracles import brute_free_module, injections, naive_rank

FP = FieldSpec.prime()


def _replace_action(v, n, i, mat):
    acts = list(v.actions)
    row = list(acts[n])
    row[i - 1] = mat
    acts[n] = tuple(row)
    return TruncatedFIModule(v.field, v.dims, tuple(acts), v.inclusions, v.gen_bound, v.rel_bound)


def test_validate_examples(fx):
    assert validate(fx["M1"]) == []
    # break s_1^2 = 1 at n = 2 on M(1)
    v = fx["M1"]
    bad = _replace_action(v, 2, 1, FP.matrix([[1, 1], [0, 1]]))
    viol = validate(bad)
    assert any("coxeter s_1^2" in x and "degree 2" in x for x in viol)
    # non-equivariant inclusion at 1 -> 2 on M(2) style data: use M(1) with a skewed iota_2
    v = fx["M1"]
    incl = list(v.inclusions)
    incl[2] = FP.matrix([[1, 0], [0, 0], [0, 1]])
    bad = TruncatedFIModule(FP, v.dims, v.actions, tuple(incl), 1, -1)
    assert any("not equivariant" in x for x in validate(bad))


def test_every_fixture_validates(fx):
    for name, v in fx.items():
        assert validate(v) == [], name


@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_free_module_matches_brute_force(m):
    v = free(FP, m, 7)
    brute = brute_free_module(FP, m, 7)
    assert validate(brute) == []
    assert v.dims == brute.dims == tuple(math.perm(n, m) for n in range(8))
    # characters agree: trace of every generator and of s_1 s_2 products
    for n in range(8):
        for a, b in zip(v.actions[n], brute.actions[n]):
            assert int(np.trace(a)) % FP.p == int(np.trace(b)) % FP.p


def test_induced_map_examples(fx):
    m1 = fx["M1"]
    assert np.array_equal(induced_map(m1, [1, 2, 3]), m1.identity(3))
    assert np.array_equal(induced_map(m1, [1], 2), m1.inclusions[1])
    want = FP.mul(m1.actions[2][0], m1.inclusions[1])
    assert np.array_equal(induced_map(m1, [2], 2), want)
    with pytest.raises(ValueError):
        induced_map(m1, [1, 1], 2)
    with pytest.raises(HorizonExhausted):
        induced_map(m1, [1], 11)


@given(st.integers(0, 2), st.data())
def test_induced_map_against_composition_of_injections(m, data):
    # oracle: on the injection basis of M(m), V_alpha sends f to alpha . f
    v = brute_free_module(FP, m, 5)
    k = data.draw(st.integers(m, 4))
    n = data.draw(st.integers(k, 5))
    alpha = data.draw(st.permutations(range(1, n + 1)))[:k]
    src, dst = injections(m, k), injections(m, n)
    index = {f: i for i, f in enumerate(dst)}
    want = np.zeros((len(dst), len(src)), dtype=np.int64)
    for j, f in enumerate(src):
        want[index[tuple(alpha[x - 1] for x in f)], j] = 1
    assert np.array_equal(induced_map(v, alpha, n), want)


@given(st.integers(0, 1 << 30), st.data())
def test_induced_map_functorial(seed, data):
    v = random_module(seed, RandomParams(horizon=6))
    a = data.draw(st.integers(0, 4))
    b = data.draw(st.integers(a, 5))
    c = data.draw(st.integers(b, 6))
    alpha = data.draw(st.permutations(range(1, b + 1)))[:a]
    beta = data.draw(st.permutations(range(1, c + 1)))[:b]
    composite = [beta[x - 1] for x in alpha]
    lhs = induced_map(v, composite, c)
    rhs = FP.mul(induced_map(v, beta, c), induced_map(v, alpha, b))
    assert np.array_equal(lhs, rhs)


def test_degree_examples(fx):
    z = degree(fx["zero"])
    assert z.value == -1 and z.certified
    for d in range(4):
        t = degree(fx[f"T{d}"])
        assert t.value == d and t.certified
    m = degree(free(FP, 1, 6))
    assert m.value == INF and m.certified


def test_shift_examples(fx):
    s = shift(fx["zero"], 3)
    assert s.is_zero and s.horizon == 7
    t = shift(fx["T3"], 1)
    assert t.dims[2] == 1 and sum(t.dims) == 1 and t.horizon == 9
    assert shift(fx["M1"], 1).dims == tuple(n + 1 for n in range(10))
    with pytest.raises(HorizonExhausted):
        shift(fx["M1"], 11)


def test_derivative_examples(fx):
    assert derivative(fx["M0"]).is_zero
    d = derivative(fx["M1"])
    assert d.dims == (1,) * 10 and validate(d) == []
    assert all(np.array_equal(i, FP.eye(1)) for i in d.inclusions)
    assert derivative(fx["T2"]).dims == shift(fx["T2"], 1).dims


def test_kernel_K_examples(fx):
    for m in range(3):
        assert kernel_K(fx[f"M{m}"]).is_zero
    k = kernel_K(fx["T2"])
    assert k.dims[: 3] == (0, 0, 1) and sum(k.dims) == 1
    assert kernel_K(fx["zero"]).is_zero


def test_torsion_examples(fx):
    for m in range(3):
        assert torsion_H0(fx[f"M{m}"]).is_zero
    assert torsion_H0(fx["T2"]).dims == fx["T2"].dims
    assert torsion_H0(fx["M0+T2"]).dims == fx["T2"].dims
    assert h0_degree(fx["M1"]).value == -1
    assert h0_degree(fx["T3"]).value == 3
    assert h0_degree(fx["T1+T3"]).value == 3
    assert is_torsion(fx["T2"]).value is True
    assert is_torsion(fx["M0"]).value is False
    assert is_torsion(fx["zero"]).value is True


def test_sum_and_tensor_examples(fx):
    v = fx["Z"]
    assert direct_sum(v, zero_module(FP, 10)).dims == v.dims
    mm = tensor(fx["M1"], fx["M1"])
    assert mm.dims == tuple(n * n for n in range(11)) and validate(mm) == []
    assert fx["T1+T3"].dims == (0, 1, 0, 1) + (0,) * 7


def test_morphism_examples(fx):
    v = fx["M1"]
    assert morphism_kernel(identity_morphism(v)).is_zero
    z = zero_morphism(fx["M0"], v)
    assert morphism_cokernel(z).dims == v.dims
    f = summing_map(FP, 10)
    assert validate_morphism(f) == []
    k = morphism_kernel(f)
    # oracle: nullity of the 1 x n all-ones matrix
    want = tuple(n - naive_rank([[1] * n], FP.p) if n else 0 for n in range(11))
    assert k.dims == want == (0, 0) + tuple(n - 1 for n in range(2, 11))
    assert morphism_image(f).dims == (0,) + (1,) * 10
    assert validate(k) == []


def test_compose_and_invalid_morphism(fx):
    v = fx["M1"]
    f = summing_map(FP, 10)
    g = compose(identity_morphism(fx["M0"]), f)
    assert all(np.array_equal(a, b) for a, b in zip(g.maps, f.maps))
    maps = list(f.maps)
    maps[2] = FP.matrix([[1, 0]])
    assert validate_morphism(FIMorphism(v, fx["M0"], tuple(maps))) != []


def _corpus_module(seed, horizon=10):
    return random_module(seed, RandomParams(horizon=horizon))


@given(st.integers(0, 1 << 30))
def test_four_term_sequence_dimensions(seed):
    v = _corpus_module(seed, 8)
    k, d = kernel_K(v), derivative(v)
    for n in range(v.horizon):
        assert k.dims[n] - v.dims[n] + v.dims[n + 1] - d.dims[n] == 0


@given(st.integers(0, 1 << 30))
def test_torsion_submodule_is_torsion_and_quotient_torsion_free(seed):
    from fistab.exactlin import cokernel_pair

    v = _corpus_module(seed)
    t = torsion_H0(v, with_certificate=True)
    h, cert = t if isinstance(t, tuple) else (t, None)
    assume(cert is None or cert.certified)
    assert is_torsion(h).value is True
    # quotient by the torsion submodule has no torsion
    bases = _torsion_bases(v)
    pairs = [cokernel_pair(b, FP) for b in bases]
    qv = quotient(v, [p for p, _ in pairs], [s for _, s in pairs], gen_bound=v.gen_bound,
                  rel_bound=None if v.rel_bound is None else v.gen_bound + v.rel_bound)
    assert h0_degree(qv).value == -1


def _torsion_bases(v):
    from fistab.exactlin import nullspace_basis

    out = []
    for n in range(v.horizon + 1):
        m = v.include_to(n, v.horizon, v.identity(n))
        out.append(nullspace_basis(m, FP))
    return out


@given(st.integers(0, 1 << 30))
def test_shift_lowers_finite_degree(seed):
    v = _corpus_module(seed)
    tor = torsion_H0(v)
    d = degree(tor).value
    assume(0 <= d < INF)
    assert degree(shift(tor, 1)).value == d - 1


@given(st.integers(0, 3), st.integers(0, 3))
def test_pointwise_tensor_degree(a, b):
    # the tensor is degreewise, so supports intersect
    v = tensor(atomic_torsion(FP, a, 8), atomic_torsion(FP, b, 8))
    assert degree(v).value == (a if a == b else -1) and validate(v) == []
