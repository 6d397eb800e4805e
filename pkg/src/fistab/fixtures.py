"""Named fixture modules and the seeded random corpus."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass

import numpy as np

from .exactlin import FieldSpec, cokernel_pair
from .fihom import (
    FBModule,
    InducedModule,
    _Span,
    free_module,
    induce,
    permutation_rep,
    sign_rep,
    trivial_rep,
)
from .fimod import (
    FIMorphism,
    TruncatedFIModule,
    direct_sum,
    morphism_kernel,
    quotient,
    tensor,
    zero_module,
)

DEFAULT_HORIZON = 10


def atomic_torsion(field: FieldSpec, d: int, horizon: int, rep: str = "trivial") -> TruncatedFIModule:
    """``T(d)``: a one-dimensional representation in degree ``d``, zero elsewhere."""
    if horizon < d + 1:
        raise ValueError(f"horizon must be at least {d + 1} for T({d})")
    if rep == "trivial":
        gens = trivial_rep(field, d)
    elif rep == "sign":
        gens = sign_rep(field, d)
    else:
        raise ValueError(f"unknown representation {rep!r}")
    dims = tuple(1 if n == d else 0 for n in range(horizon + 1))
    actions = tuple(tuple(gens) if n == d else tuple(field.zeros(0, 0) for _ in range(max(n - 1, 0)))
                    for n in range(horizon + 1))
    incl = tuple(field.zeros(dims[n + 1], dims[n]) for n in range(horizon))
    name = f"T({d})" if rep == "trivial" else f"T({d},{rep})"
    return TruncatedFIModule(field, dims, actions, incl, d, d + 1, name, "fixture")


def free(field: FieldSpec, m: int, horizon: int) -> TruncatedFIModule:
    v = free_module(field, m, horizon)
    return v.renamed(f"M({m})", "fixture")


def summing_map(field: FieldSpec, horizon: int) -> FIMorphism:
    """``M(1) -> M(0)`` sending every basis injection to ``1``."""
    m1 = free(field, 1, horizon)
    m0 = free(field, 0, horizon)
    maps = tuple(field.matrix(np.ones((1, n), dtype=np.int64)) for n in range(horizon + 1))
    return FIMorphism(m1, m0, maps)


def syzygy_Z(field: FieldSpec, horizon: int) -> TruncatedFIModule:
    """Kernel of the summing map ``M(1) -> M(0)``; generated in degree 2, related in degree 3."""
    z = morphism_kernel(summing_map(field, horizon))
    return z.with_bounds(2, 3).renamed("Z", "fixture")


def diamond_V(field: FieldSpec, horizon: int) -> TruncatedFIModule:
    """``Z + T(1)``."""
    v = direct_sum(syzygy_Z(field, horizon), atomic_torsion(field, 1, horizon))
    return v.renamed("Z+T(1)", "fixture")


def _degree_rep(field: FieldSpec, n: int, kind: str) -> list[np.ndarray]:
    if kind == "trivial":
        return trivial_rep(field, n)
    if kind == "sign":
        return sign_rep(field, n)
    if kind == "perm":
        return permutation_rep(field, n)
    raise ValueError(kind)


def fb_from_spec(field: FieldSpec, parts: dict) -> FBModule:
    """``parts``: degree -> list of representation kinds (``trivial``, ``sign``, ``perm``)."""
    built = {}
    for n, kinds in parts.items():
        blocks = [_degree_rep(field, n, k) for k in kinds]
        dims = [(n if k == "perm" else 1) for k in kinds]
        total = sum(dims)
        gens = []
        for i in range(max(n - 1, 0)):
            m = field.zeros(total, total)
            off = 0
            for b, d in zip(blocks, dims):
                m[off:off + d, off:off + d] = b[i]
                off += d
            gens.append(m)
        built[n] = (total, gens)
    return FBModule.from_parts(field, built)


def induced(field: FieldSpec, parts: dict, horizon: int) -> TruncatedFIModule:
    w = fb_from_spec(field, parts).extend(horizon)
    label = "+".join(f"{k}{n}" for n in sorted(parts) for k in parts[n])
    return induce(w, horizon, f"Ind[{label}]").renamed(f"Ind[{label}]", "fixture")


# ---------------------------------------------------------------------------
# quotients by generated submodules


def generated_submodule_bases(v: TruncatedFIModule, elements: dict[int, np.ndarray]) -> list[np.ndarray]:
    """Per-degree bases of the FI-submodule generated by ``elements[k]`` (columns in ``V_k``)."""
    F = v.field
    out = []
    prev = None
    for n in range(v.horizon + 1):
        sp = _Span(F, v.dims[n])
        if prev is not None and prev.shape[1]:
            y = v.include(n - 1, prev)
            sp.add(y)
            for k in range(n - 1, 0, -1):
                y = v.act(n, k, y)
                sp.add(y)
        new = elements.get(n)
        if new is not None and new.shape[1]:
            sp.add(new)
            # close under S_n
            grown = True
            while grown and not sp.full:
                before = sp.rank
                b = sp.basis()
                for i in range(1, n):
                    sp.add(v.act(n, i, b))
                grown = sp.rank > before
        prev = sp.basis()
        out.append(prev)
    return out


def quotient_by(v: TruncatedFIModule, elements: dict[int, np.ndarray], rel_degree: int,
                name: str = "") -> TruncatedFIModule:
    F = v.field
    bases = generated_submodule_bases(v, elements)
    pairs = [cokernel_pair(b, F) for b in bases]
    g = v.gen_bound
    r = rel_degree if any(b.shape[1] for b in bases) else -1
    if v.rel_bound is not None and v.rel_bound > r:
        r = v.rel_bound
    return quotient(v, [p for p, _ in pairs], [s for _, s in pairs], gen_bound=g, rel_bound=r, name=name)


# ---------------------------------------------------------------------------
# random corpus


@dataclass(frozen=True)
class RandomParams:
    max_gen_degree: int = 2
    max_rel_degree: int = 3
    dim_cap: int = 40
    horizon: int = DEFAULT_HORIZON
    max_summands: int = 2
    max_relations: int = 2


def _random_invertible(rng: random.Random, field: FieldSpec, d: int) -> tuple[np.ndarray, np.ndarray]:
    from .exactlin import solve

    while True:
        m = field.matrix([[rng.randint(-2, 2) for _ in range(d)] for _ in range(d)])
        inv = solve(m, field.eye(d), field)
        if inv is not None:
            return m, inv


def random_fb(rng: random.Random, field: FieldSpec, params: RandomParams) -> FBModule:
    parts = {}
    nsum = rng.randint(1, params.max_summands)
    for _ in range(nsum):
        n = rng.randint(0, params.max_gen_degree)
        kinds = ["trivial", "sign"] + (["perm"] if n >= 2 else [])
        parts.setdefault(n, []).append(rng.choice(kinds if n >= 2 else ["trivial"]))
    w = fb_from_spec(field, parts)
    # conjugate by a random change of basis so the actions are not always monomial
    dims, acts = [], []
    for n in range(w.horizon + 1):
        d = w.dims[n]
        if d > 1:
            p, pinv = _random_invertible(rng, field, d)
            acts.append(tuple(field.mul(p, field.mul(a, pinv)) for a in w.actions[n]))
        else:
            acts.append(w.actions[n])
        dims.append(d)
    return FBModule(field, tuple(dims), tuple(acts))


def _symmetrized(rng: random.Random, v: TruncatedFIModule, k: int) -> np.ndarray:
    """A sparse vector of ``V_k`` averaged over a random Young subgroup with a random character."""
    F = v.field
    d = v.dims[k]
    x = F.zeros(d, 1)
    for _ in range(rng.randint(1, 2)):
        x[rng.randrange(d), 0] = rng.choice((1, -1, 2))
    x = F.reduce(x)
    # Young subgroup S_a x S_{k-a}: symmetrize over each factor
    a = rng.randint(0, k)
    sign = rng.random() < 0.4
    for lo, hi in ((1, a), (a + 1, k)):
        for top in range(lo + 1, hi + 1):
            # average over the transpositions chain (lo..top): x <- x + sum_j chi(c_j) c_j x
            acc = x
            y = x
            for j in range(top - 1, lo - 1, -1):
                y = v.act(k, j, y)
                acc = F.add(acc, F.scale(-1, y) if sign and (top - j) % 2 else y)
            x = acc
    if not x.any():
        x = F.zeros(d, 1)
        x[rng.randrange(d), 0] = 1
    return x


RECIPES = ("quotient", "quotient", "quotient", "plus_torsion", "derivative", "shift", "plus_Z", "tensor_T")


def random_module(seed: int, params: RandomParams | None = None,
                  field: FieldSpec | None = None) -> TruncatedFIModule:
    """``Ind(W) / <random relations>`` for a random FB-module ``W``, optionally post-processed.

    Relations are sparse vectors symmetrized over a random Young subgroup,
    so they generate proper submodules more often than generic vectors.
    The post-processing (sum with a torsion module or with ``Z``, shift,
    derivative, tensor with ``T(d)``) keeps presentation bounds tracked.
    Reproducible from ``seed``.
    """
    from .fimod import derivative, shift

    params = params or RandomParams()
    field = field or FieldSpec.prime()
    rng = random.Random(seed)
    N = params.horizon + 1
    for _ in range(50):
        w = random_fb(rng, field, params)
        ind = InducedModule(w.extend(N), N)
        if max(ind.dims) <= params.dim_cap:
            break
    else:
        raise ValueError("could not respect dim_cap; lower the degrees or raise the cap")
    v = ind.to_module()
    rels: dict[int, np.ndarray] = {}
    if params.max_rel_degree >= 0:
        for _ in range(rng.randint(1, params.max_relations)):
            k = rng.randint(0, params.max_rel_degree)
            if k > N or v.dims[k] == 0:
                continue
            vec = _symmetrized(rng, v, k)
            rels[k] = vec if k not in rels else np.concatenate([rels[k], vec], axis=1)
    rel_deg = max(rels, default=-1)
    out = quotient_by(v, rels, rel_deg)
    # without relations the output stays induced; post-processing would spoil that
    recipe = rng.choice(RECIPES) if params.max_rel_degree >= 0 else "none"
    if recipe == "plus_torsion":
        d = rng.randint(0, 2)
        out = direct_sum(out, atomic_torsion(field, d, N, rng.choice(("trivial", "sign"))))
    elif recipe == "plus_Z":
        out = direct_sum(out, syzygy_Z(field, N))
    elif recipe == "tensor_T":
        out = tensor(out, atomic_torsion(field, rng.randint(0, 1), N))
    elif recipe == "derivative":
        out = derivative(out)
    elif recipe == "shift":
        out = shift(out, 1)
    out = out.restrict(min(out.horizon, params.horizon))
    return out.renamed(f"rand{seed}", f"random seed={seed} recipe={recipe}")


def corpus_seeds(size: int, seed: int = 0) -> list[int]:
    rng = random.Random(seed)
    return [rng.randrange(1 << 30) for _ in range(size)]


def corpus(size: int, seed: int = 0, params: RandomParams | None = None,
           field: FieldSpec | None = None) -> list[TruncatedFIModule]:
    return [random_module(s, params, field) for s in corpus_seeds(size, seed)]


def named_fixtures(field: FieldSpec | None = None, horizon: int = DEFAULT_HORIZON) -> dict[str, TruncatedFIModule]:
    F = field or FieldSpec.prime()
    N = horizon
    out = {
        "zero": zero_module(F, N),
        "M0": free(F, 0, N),
        "M1": free(F, 1, N),
        "M2": free(F, 2, N),
        "T0": atomic_torsion(F, 0, N),
        "T1": atomic_torsion(F, 1, N),
        "T2": atomic_torsion(F, 2, N),
        "T3": atomic_torsion(F, 3, N),
        "T2sign": atomic_torsion(F, 2, N, "sign"),
        "Z": syzygy_Z(F, N),
        "diamond": diamond_V(F, N),
    }
    out["M0+T2"] = direct_sum(out["M0"], out["T2"]).renamed("M(0)+T(2)", "fixture")
    out["T1+T3"] = direct_sum(out["T1"], out["T3"]).renamed("T(1)+T(3)", "fixture")
    out["M1+M0"] = direct_sum(out["M1"], out["M0"]).renamed("M(1)+M(0)", "fixture")
    out["M1*T1"] = tensor(out["M1"], out["T1"]).renamed("M(1)*T(1)", "fixture")
    return out


# ---------------------------------------------------------------------------
# textual fixture specs, e.g. ``sum(free(1),atomic_torsion(2,sign))``

_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*|-?\d+(?::[a-z]+)?|[(),])")


@dataclass(frozen=True)
class FixtureSpec:
    kind: str
    args: tuple = ()

    def __str__(self) -> str:
        if not self.args:
            return self.kind
        return f"{self.kind}({','.join(str(a) for a in self.args)})"


def parse_fixture(text: str) -> FixtureSpec:
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse fixture spec at {text[pos:]!r}")
        toks.append(m.group(1))
        pos = m.end()
    spec, i = _parse(toks, 0)
    if i != len(toks):
        raise ValueError(f"trailing input in fixture spec {text!r}")
    return spec


def _parse(toks: list[str], i: int):
    head = toks[i]
    i += 1
    if i < len(toks) and toks[i] == "(":
        args = []
        i += 1
        while toks[i] != ")":
            if toks[i][0].isalpha() or toks[i][0] == "_":
                a, i = _parse(toks, i)
                if not a.args and a.kind in ("trivial", "sign", "perm"):
                    a = a.kind
            else:
                a = toks[i]
                a = int(a) if ":" not in a else a
                i += 1
            args.append(a)
            if toks[i] == ",":
                i += 1
        return FixtureSpec(head, tuple(args)), i + 1
    return FixtureSpec(head), i


FIXTURE_KINDS = ("free(m)", "atomic_torsion(d[,trivial|sign])", "syzygy_Z", "diamond_V",
                 "induced(deg:kind,...)", "random(seed[,max_gen,max_rel,dim_cap])", "sum(a,b)", "tensor(a,b)")


def fixture(spec: FixtureSpec | str, field: FieldSpec | None = None,
            horizon: int = DEFAULT_HORIZON) -> TruncatedFIModule:
    if isinstance(spec, str):
        spec = parse_fixture(spec)
    F = field or FieldSpec.prime()
    k, a = spec.kind, spec.args
    if k == "free":
        v = free(F, a[0], horizon)
    elif k == "atomic_torsion":
        v = atomic_torsion(F, a[0], horizon, a[1] if len(a) > 1 else "trivial")
    elif k == "syzygy_Z":
        v = syzygy_Z(F, horizon)
    elif k == "diamond_V":
        v = diamond_V(F, horizon)
    elif k == "induced":
        parts: dict = {}
        for item in a:
            deg, kind = str(item).split(":")
            parts.setdefault(int(deg), []).append(kind)
        v = induced(F, parts, horizon)
    elif k == "random":
        names = ("max_gen_degree", "max_rel_degree", "dim_cap")
        p = RandomParams(horizon=horizon, **dict(zip(names, a[1:4])))
        v = random_module(a[0], p, F)
    elif k in ("sum", "tensor"):
        parts_ = [fixture(x, F, horizon) for x in a]
        v = parts_[0]
        for w in parts_[1:]:
            v = direct_sum(v, w) if k == "sum" else tensor(v, w)
    else:
        raise ValueError(f"unknown fixture kind {k!r}; known: {', '.join(FIXTURE_KINDS)}")
    return v.renamed(str(spec), "fixture " + str(spec))
