"""Truncated FI-modules, morphisms between them, and the elementary functors.

A :class:`TruncatedFIModule` stores ``V_0, ..., V_N`` as vector spaces of
dimension ``dims[n]``, the adjacent transpositions ``s_i = (i, i+1)`` of
``S_n`` as matrices ``actions[n][i-1]``, and the standard inclusions
``{1..n} -> {1..n+1}`` as matrices ``inclusions[n]``.  Everything else
(arbitrary injections, shifts, derivatives, kernels, torsion) is derived
from this data.

Invariants are reported as :class:`CertifiedValue`; a value is *certified*
when a stated rule guarantees it does not change at any larger horizon.
The rules used here rely on two optional pieces of presentation data carried
by each module: ``gen_bound`` (generated in degrees <= g) and ``rel_bound``
(a presentation whose relations are generated in degrees <= r).  With both
known, torsion vanishes in degrees >= g + r and the inclusions are injective
from there on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

import numpy as np

from .exactlin import (
    FieldSpec,
    column_basis,
    cokernel_pair,
    equal,
    hstack,
    kron,
    block_diag,
    nullspace_free_rows,
    rank,
)

INF = math.inf


class HorizonExhausted(RuntimeError):
    """The horizon is too small to decide or certify the requested value."""


class InvalidModule(ValueError):
    pass


@dataclass(frozen=True)
class CertifiedValue:
    """An integer invariant (``-1`` allowed, ``INF`` for infinite) with provenance."""

    value: float
    certified: bool
    basis: str = ""

    @property
    def finite(self) -> bool:
        return self.value != INF

    def __int__(self) -> int:
        if not self.finite:
            raise OverflowError("infinite value")
        return int(self.value)

    def to_json(self) -> dict:
        v = self.value
        if isinstance(v, bool):
            out = v
        elif v == INF:
            out = "inf"
        else:
            out = int(v)
        return {"value": out, "certified": self.certified, "basis": self.basis}


def _freeze(m: np.ndarray) -> np.ndarray:
    m = np.ascontiguousarray(m)
    m.flags.writeable = False
    return m


def _floor(b: int | None) -> int | None:
    return None if b is None else max(b, -1)


@dataclass(frozen=True, eq=False)
class TruncatedFIModule:
    field: FieldSpec
    dims: tuple[int, ...]
    actions: tuple[tuple[np.ndarray, ...], ...]
    inclusions: tuple[np.ndarray, ...]
    gen_bound: int | None = None
    rel_bound: int | None = None
    name: str = ""
    provenance: str = ""
    _memo: dict = dc_field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        N = len(self.dims) - 1
        if N < 0:
            raise InvalidModule("a module needs at least degree 0")
        if len(self.actions) != N + 1 or len(self.inclusions) != N:
            raise InvalidModule("actions/inclusions do not match the horizon")
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "actions", tuple(tuple(_freeze(a) for a in acts) for acts in self.actions))
        object.__setattr__(self, "inclusions", tuple(_freeze(i) for i in self.inclusions))

    @property
    def horizon(self) -> int:
        return len(self.dims) - 1

    @property
    def is_zero(self) -> bool:
        return not any(self.dims)

    def __repr__(self) -> str:
        label = self.name or "module"
        return f"<{label} N={self.horizon} dims={list(self.dims)} g={self.gen_bound} r={self.rel_bound}>"

    def memo(self, key, fn: Callable):
        try:
            return self._memo[key]
        except KeyError:
            val = self._memo[key] = fn()
            return val

    # -- applying structure maps ------------------------------------------
    def act(self, n: int, i: int, x: np.ndarray) -> np.ndarray:
        """``rho_n(s_i) @ x`` for the adjacent transposition ``(i, i+1)``, 1 <= i < n."""
        return self.field.mul(self.actions[n][i - 1], x)

    def act_word(self, n: int, word: Sequence[int], x: np.ndarray) -> np.ndarray:
        """Apply ``s_{word[0]}`` first, then ``s_{word[1]}``, and so on."""
        for i in word:
            x = self.act(n, i, x)
        return x

    def include(self, n: int, x: np.ndarray) -> np.ndarray:
        return self.field.mul(self.inclusions[n], x)

    def include_to(self, n: int, m: int, x: np.ndarray) -> np.ndarray:
        for k in range(n, m):
            x = self.include(k, x)
        return x

    def identity(self, n: int) -> np.ndarray:
        return self.field.eye(self.dims[n])

    def restrict(self, horizon: int) -> "TruncatedFIModule":
        """Forget everything above ``horizon``."""
        if horizon > self.horizon or horizon < 0:
            raise HorizonExhausted(f"cannot restrict horizon {self.horizon} to {horizon}")
        if horizon == self.horizon:
            return self
        return TruncatedFIModule(self.field, self.dims[: horizon + 1], self.actions[: horizon + 1],
                                 self.inclusions[:horizon], self.gen_bound, self.rel_bound,
                                 self.name, self.provenance)

    def renamed(self, name: str, provenance: str | None = None) -> "TruncatedFIModule":
        return TruncatedFIModule(self.field, self.dims, self.actions, self.inclusions, self.gen_bound,
                                 self.rel_bound, name, self.provenance if provenance is None else provenance)

    def with_bounds(self, gen_bound: int | None, rel_bound: int | None) -> "TruncatedFIModule":
        return TruncatedFIModule(self.field, self.dims, self.actions, self.inclusions, gen_bound,
                                 rel_bound, self.name, self.provenance)


def zero_module(field: FieldSpec, horizon: int, name: str = "0") -> TruncatedFIModule:
    actions = tuple(tuple(field.zeros(0, 0) for _ in range(max(n - 1, 0))) for n in range(horizon + 1))
    incl = tuple(field.zeros(0, 0) for _ in range(horizon))
    return TruncatedFIModule(field, (0,) * (horizon + 1), actions, incl, -1, -1, name)


# ---------------------------------------------------------------------------
# permutations and injections


def perm_word(perm: Sequence[int]) -> list[int]:
    """Adjacent-transposition word for a permutation given by its images (1-based).

    Applying ``rho(s_i)`` for ``i`` in the returned order realises ``rho(perm)``.
    """
    seq = list(perm)
    word = []
    n = len(seq)
    for top in range(n - 1, 0, -1):
        for i in range(top):
            if seq[i] > seq[i + 1]:
                seq[i], seq[i + 1] = seq[i + 1], seq[i]
                word.append(i + 1)
    return word


def induced_map(v: TruncatedFIModule, alpha: Sequence[int], n: int | None = None) -> np.ndarray:
    """Matrix of ``V_alpha : V_m -> V_n`` for the injection ``k -> alpha[k-1]``."""
    alpha = [int(a) for a in alpha]
    m = len(alpha)
    if n is None:
        n = max(alpha, default=0)
    if len(set(alpha)) != m:
        raise ValueError(f"not injective: {alpha}")
    if any(a < 1 or a > n for a in alpha):
        raise ValueError(f"targets must lie in 1..{n}: {alpha}")
    if n > v.horizon:
        raise HorizonExhausted(f"degree {n} exceeds horizon {v.horizon}")
    rest = sorted(set(range(1, n + 1)) - set(alpha))
    x = v.include_to(m, n, v.identity(m))
    return v.act_word(n, perm_word(alpha + rest), x)


def injection_images(v: TruncatedFIModule, n: int, x: np.ndarray) -> np.ndarray:
    """Images of ``x`` (columns in ``V_{n-1}``) under the coset representatives of S_n / S_{n-1}.

    When the span of ``x`` is ``S_{n-1}``-stable the column span of the result
    is the span of its images under all injections ``{1..n-1} -> {1..n}``.
    """
    y = v.include(n - 1, x)
    blocks = [y]
    for k in range(n - 1, 0, -1):
        y = v.act(n, k, y)
        blocks.append(y)
    return hstack(blocks, v.dims[n], v.field)


def span_of_lower(v: TruncatedFIModule, n: int) -> tuple[np.ndarray, list[int]]:
    """Normalised basis of the subspace of ``V_n`` generated by ``V_{n-1}``."""
    if n == 0 or v.dims[n - 1] == 0 or v.dims[n] == 0:
        return v.field.zeros(v.dims[n], 0), []
    return column_basis(injection_images(v, n, v.identity(n - 1)), v.field)


# ---------------------------------------------------------------------------
# validation


def validate(v: TruncatedFIModule, check_gen_bound: bool = True) -> list[str]:
    """All violated invariants; empty iff ``v`` is a valid truncated FI-module."""
    F = v.field
    out: list[str] = []
    N = v.horizon
    for n in range(N + 1):
        d = v.dims[n]
        acts = v.actions[n]
        if len(acts) != max(n - 1, 0):
            out.append(f"degree {n}: expected {max(n - 1, 0)} generators, got {len(acts)}")
            continue
        bad = [i + 1 for i, a in enumerate(acts) if a.shape != (d, d)]
        if bad:
            out.append(f"degree {n}: generators {bad} have wrong shape")
            continue
        eye = F.eye(d)
        for i in range(1, n):
            a = acts[i - 1]
            if not equal(F.mul(a, a), eye):
                out.append(f"degree {n}: coxeter s_{i}^2 != 1")
            if i + 1 < n:
                b = acts[i]
                ab = F.mul(a, b)
                if not equal(F.mul(ab, F.mul(ab, ab)), eye):
                    out.append(f"degree {n}: coxeter (s_{i} s_{i + 1})^3 != 1")
            for j in range(i + 2, n):
                ab = F.mul(a, acts[j - 1])
                if not equal(F.mul(ab, ab), eye):
                    out.append(f"degree {n}: coxeter (s_{i} s_{j})^2 != 1")
    for n in range(N):
        inc = v.inclusions[n]
        if inc.shape != (v.dims[n + 1], v.dims[n]):
            out.append(f"inclusion {n}->{n + 1}: wrong shape {inc.shape}")
            continue
        for i in range(1, n):
            if not equal(F.mul(inc, v.actions[n][i - 1]), F.mul(v.actions[n + 1][i - 1], inc)):
                out.append(f"inclusion {n}->{n + 1}: not equivariant for s_{i}")
        if n + 2 <= N and v.inclusions[n + 1].shape == (v.dims[n + 2], v.dims[n + 1]):
            # (n+1, n+2) must fix the image of V_n in V_{n+2}
            two = F.mul(v.inclusions[n + 1], inc)
            if not equal(v.act(n + 2, n + 1, two), two):
                out.append(f"inclusion {n}->{n + 2}: image not fixed by s_{n + 1}")
    if check_gen_bound and v.gen_bound is not None and not out:
        g = max(v.gen_bound, 0)
        if v.gen_bound < 0 and v.dims and v.dims[0]:
            out.append("gen_bound -1 but V_0 != 0")
        for n in range(g, N):
            if v.dims[n + 1] and len(span_of_lower(v, n + 1)[1]) != v.dims[n + 1]:
                out.append(f"gen_bound {v.gen_bound}: V_{n + 1} not spanned by the image of V_{n}")
    return out


# ---------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True, eq=False)
class FIMorphism:
    source: TruncatedFIModule
    target: TruncatedFIModule
    maps: tuple[np.ndarray, ...]

    def __post_init__(self):
        if self.source.horizon != self.target.horizon:
            raise ValueError("source and target must share a horizon")
        if self.source.field != self.target.field:
            raise ValueError("field mismatch")
        if len(self.maps) != self.source.horizon + 1:
            raise ValueError("one matrix per degree required")
        object.__setattr__(self, "maps", tuple(_freeze(m) for m in self.maps))

    @property
    def horizon(self) -> int:
        return self.source.horizon

    @property
    def field(self) -> FieldSpec:
        return self.source.field

    def restrict(self, horizon: int) -> "FIMorphism":
        return FIMorphism(self.source.restrict(horizon), self.target.restrict(horizon), self.maps[: horizon + 1])


def validate_morphism(f: FIMorphism) -> list[str]:
    F = f.field
    s, t = f.source, f.target
    out = []
    for n in range(f.horizon + 1):
        m = f.maps[n]
        if m.shape != (t.dims[n], s.dims[n]):
            out.append(f"degree {n}: wrong shape {m.shape}")
            continue
        for i in range(1, n):
            if not equal(F.mul(m, s.actions[n][i - 1]), F.mul(t.actions[n][i - 1], m)):
                out.append(f"degree {n}: does not commute with s_{i}")
    for n in range(f.horizon):
        if f.maps[n].shape != (t.dims[n], s.dims[n]) or f.maps[n + 1].shape != (t.dims[n + 1], s.dims[n + 1]):
            continue
        if not equal(F.mul(f.maps[n + 1], s.inclusions[n]), F.mul(t.inclusions[n], f.maps[n])):
            out.append(f"degree {n}: does not commute with the inclusion")
    return out


def compose(g: FIMorphism, f: FIMorphism) -> FIMorphism:
    """``g o f``; horizons are cut to the smaller one."""
    N = min(f.horizon, g.horizon)
    f, g = f.restrict(N), g.restrict(N)
    return FIMorphism(f.source, g.target, tuple(f.field.mul(g.maps[n], f.maps[n]) for n in range(N + 1)))


def identity_morphism(v: TruncatedFIModule) -> FIMorphism:
    return FIMorphism(v, v, tuple(v.identity(n) for n in range(v.horizon + 1)))


def zero_morphism(s: TruncatedFIModule, t: TruncatedFIModule) -> FIMorphism:
    return FIMorphism(s, t, tuple(s.field.zeros(t.dims[n], s.dims[n]) for n in range(s.horizon + 1)))


def submodule(v: TruncatedFIModule, bases: Sequence[np.ndarray], coord_rows: Sequence[Sequence[int]],
              gen_bound=None, rel_bound=None, name="") -> TruncatedFIModule:
    """Submodule with normalised bases (``bases[n][coord_rows[n]]`` is the identity)."""
    F = v.field
    N = v.horizon
    dims = tuple(b.shape[1] for b in bases)
    actions = []
    for n in range(N + 1):
        b, rows = bases[n], list(coord_rows[n])
        actions.append(tuple(v.act(n, i, b)[rows, :] for i in range(1, n)))
    incl = tuple(v.include(n, bases[n])[list(coord_rows[n + 1]), :] for n in range(N))
    return TruncatedFIModule(F, dims, tuple(actions), incl, gen_bound, rel_bound, name)


def quotient(v: TruncatedFIModule, projs: Sequence[np.ndarray], sections: Sequence[np.ndarray],
             gen_bound=None, rel_bound=None, name="") -> TruncatedFIModule:
    F = v.field
    N = v.horizon
    dims = tuple(q.shape[0] for q in projs)
    actions = tuple(tuple(F.mul(projs[n], v.act(n, i, sections[n])) for i in range(1, n)) for n in range(N + 1))
    incl = tuple(F.mul(projs[n + 1], v.include(n, sections[n])) for n in range(N))
    return TruncatedFIModule(F, dims, actions, incl, gen_bound, rel_bound, name)


def _kernel_data(f: FIMorphism):
    bases, rows = [], []
    for m in f.maps:
        b, free = nullspace_free_rows(m, f.field)
        bases.append(b)
        rows.append(free)
    return bases, rows


def morphism_kernel(f: FIMorphism, with_map: bool = False):
    """Degreewise kernel with the induced structure (optionally with its inclusion)."""
    bases, rows = _kernel_data(f)
    k = submodule(f.source, bases, rows, name="ker")
    if with_map:
        return k, FIMorphism(k, f.source, tuple(bases)), rows
    return k


def morphism_image(f: FIMorphism) -> TruncatedFIModule:
    bases, rows = zip(*(column_basis(m, f.field) for m in f.maps))
    return submodule(f.target, bases, rows, gen_bound=f.source.gen_bound, name="im")


def morphism_cokernel(f: FIMorphism, with_map: bool = False):
    """Degreewise cokernel with the induced structure (optionally with the projection)."""
    pairs = [cokernel_pair(m, f.field) for m in f.maps]
    projs = [p for p, _ in pairs]
    secs = [s for _, s in pairs]
    g, r = f.target.gen_bound, f.target.rel_bound
    if r is not None and f.source.gen_bound is not None:
        r = max(r, f.source.gen_bound)
    else:
        r = None
    c = quotient(f.target, projs, secs, gen_bound=g, rel_bound=r, name="coker")
    if with_map:
        return c, FIMorphism(f.target, c, tuple(projs))
    return c


def subquotient(f_in: FIMorphism, f_out: FIMorphism) -> TruncatedFIModule:
    """``ker(f_out) / im(f_in)`` for composable ``f_in: A -> B``, ``f_out: B -> C``."""
    N = min(f_in.horizon, f_out.horizon)
    f_in, f_out = f_in.restrict(N), f_out.restrict(N)
    k, incl, rows = morphism_kernel(f_out, with_map=True)
    lifted = []
    for n in range(N + 1):
        img = f_in.maps[n]
        lifted.append(img[rows[n], :])
    return morphism_cokernel(FIMorphism(f_in.source, k, tuple(lifted)))


# ---------------------------------------------------------------------------
# functors


def shift(v: TruncatedFIModule, a: int = 1) -> TruncatedFIModule:
    """``(Sigma^a V)_n = V_{n+a}``; ``S_n`` acts through the first ``n`` letters."""
    if a < 0:
        raise ValueError("shift amount must be non-negative")
    if a > v.horizon:
        raise HorizonExhausted(f"shift by {a} exceeds horizon {v.horizon}")
    if a == 0:
        return v

    def build():
        N = v.horizon - a
        dims = v.dims[a:]
        actions = tuple(v.actions[n + a][: max(n - 1, 0)] for n in range(N + 1))
        incl = []
        for n in range(N):
            # [n] + {*_1..*_a} -> [n+1] + {*_1..*_a}: the standard inclusion
            # followed by the cycle moving n+a+1 down to n+1
            x = v.inclusions[n + a]
            for k in range(n + a, n, -1):
                x = v.act(n + a + 1, k, x)
            incl.append(x)
        return TruncatedFIModule(v.field, dims, actions, tuple(incl), v.gen_bound, v.rel_bound,
                                 f"S^{a}({v.name})" if v.name else "")

    return v.memo(("shift", a), build)


def natural_map(v: TruncatedFIModule, a: int = 1) -> FIMorphism:
    """The natural transformation ``V -> Sigma^a V`` (standard inclusions), at horizon ``N - a``."""
    sv = shift(v, a)
    N = sv.horizon
    maps = tuple(v.include_to(n, n + a, v.identity(n)) for n in range(N + 1))
    return FIMorphism(v.restrict(N), sv, maps)


def derivative(v: TruncatedFIModule) -> TruncatedFIModule:
    """``Delta V = coker(V -> Sigma V)``, horizon ``N - 1``."""
    if v.horizon < 1:
        raise HorizonExhausted("derivative needs horizon >= 1")

    def build():
        c = morphism_cokernel(natural_map(v, 1))
        g = None if v.gen_bound is None else max(v.gen_bound - 1, -1)
        r = None if v.rel_bound is None else max(v.rel_bound - 1, -1)
        return c.with_bounds(g, r).renamed(f"D({v.name})" if v.name else "")

    return v.memo("derivative", build)


def iterated_derivative(v: TruncatedFIModule, k: int) -> TruncatedFIModule:
    for _ in range(k):
        v = derivative(v)
    return v


def torsion_bound(v: TruncatedFIModule) -> int | None:
    """Degree from which ``V`` is torsion-free, when presentation bounds are known."""
    if v.gen_bound is None or v.rel_bound is None:
        return None
    if v.gen_bound < 0:
        return 0
    return max(v.gen_bound + v.rel_bound, 0)


def kernel_K(v: TruncatedFIModule) -> TruncatedFIModule:
    """``K V = ker(V -> Sigma V)``, degreewise kernel of the inclusions; horizon ``N - 1``."""
    if v.horizon < 1:
        raise HorizonExhausted("K needs horizon >= 1")

    def build():
        k = morphism_kernel(natural_map(v, 1))
        tb = torsion_bound(v)
        if tb is None:
            return k.renamed("K")
        return k.with_bounds(tb - 1, tb).renamed("K")

    return v.memo("K", build)


def _torsion_at(v: TruncatedFIModule, top: int) -> TruncatedFIModule:
    """Degreewise kernels of ``V_n -> V_top`` for ``n <= top``."""
    F = v.field
    vv = v.restrict(top)
    comp = [None] * (top + 1)
    comp[top] = vv.identity(top)
    for n in range(top - 1, -1, -1):
        comp[n] = F.mul(comp[n + 1], vv.inclusions[n])
    bases, rows = [], []
    for n in range(top + 1):
        b, free = nullspace_free_rows(comp[n], F)
        bases.append(b)
        rows.append(free)
    return submodule(vv, bases, rows, name="H0")


def _top_nonzero(dims: Sequence[int]) -> int:
    nz = [n for n, d in enumerate(dims) if d]
    return max(nz) if nz else -1


def torsion_H0(v: TruncatedFIModule, with_certificate: bool = False):
    """Largest torsion submodule, computed as ``ker(V_n -> V_N)``.

    Exact whenever every torsion element dies by degree ``N``, which holds
    once ``N`` reaches the torsion-free range ``g + r``.
    """

    def build():
        h = _torsion_at(v, v.horizon)
        tb = torsion_bound(v)
        deg = _top_nonzero(h.dims)
        if tb is not None and v.horizon >= tb:
            cert = CertifiedValue(deg, True, f"presentation bound: torsion-free from degree {tb}")
        elif v.horizon >= 3:
            low = _torsion_at(v, v.horizon - 2)
            same = _top_nonzero(low.dims) == deg and deg <= v.horizon - 3
            cert = CertifiedValue(deg, same, "horizon-robust (N-2)" if same else "unstable at N-2")
        else:
            cert = CertifiedValue(deg, False, "horizon too small")
        if tb is not None:
            h = h.with_bounds(tb - 1, tb)
        return h, cert

    h, cert = v.memo("H0", build)
    return (h, cert) if with_certificate else h


def h0_degree(v: TruncatedFIModule) -> CertifiedValue:
    """``h^0(V) = deg H^0(V)``."""
    return torsion_H0(v, with_certificate=True)[1]


def degree(v: TruncatedFIModule) -> CertifiedValue:
    """``deg V``: largest ``n`` with ``V_n != 0`` (``-1`` for zero, ``INF`` if unbounded)."""

    def build():
        N = v.horizon
        dims = v.dims
        top = _top_nonzero(dims)
        g = v.gen_bound
        if g is not None:
            start = max(g, 0)
            zeros = [n for n in range(start, N + 1) if dims[n] == 0]
            if zeros:
                return CertifiedValue(top, True, f"generated in degrees <= {g}, vanishes at {zeros[0]}")
            tb = torsion_bound(v)
            if tb is not None and N >= tb and start <= N:
                return CertifiedValue(INF, True, f"nonzero at {N} inside the injective range n >= {tb}")

        def raw(k):
            return INF if dims[k] else _top_nonzero(dims[: k + 1])

        if N >= 2 and raw(N) == raw(N - 2):
            return CertifiedValue(raw(N), True, "horizon-robust (N-2)")
        return CertifiedValue(raw(N), False, "undecided within horizon")

    return v.memo("degree", build)


def is_torsion(v: TruncatedFIModule) -> CertifiedValue:
    """Torsion iff finite degree (for modules generated in finite degrees)."""
    d = degree(v)
    return CertifiedValue(d.finite, d.certified, d.basis)


# ---------------------------------------------------------------------------
# sums and products


def _check_pair(v: TruncatedFIModule, w: TruncatedFIModule) -> int:
    if v.field != w.field:
        raise ValueError("field mismatch")
    return min(v.horizon, w.horizon)


def _max_or_none(*xs):
    return None if any(x is None for x in xs) else max(xs)


def direct_sum(v: TruncatedFIModule, w: TruncatedFIModule) -> TruncatedFIModule:
    N = _check_pair(v, w)
    F = v.field
    dims = tuple(v.dims[n] + w.dims[n] for n in range(N + 1))
    actions = tuple(tuple(block_diag(v.actions[n][i], w.actions[n][i], F) for i in range(max(n - 1, 0)))
                    for n in range(N + 1))
    incl = tuple(block_diag(v.inclusions[n], w.inclusions[n], F) for n in range(N))
    name = f"{v.name}+{w.name}" if v.name and w.name else ""
    return TruncatedFIModule(F, dims, actions, incl, _max_or_none(v.gen_bound, w.gen_bound),
                             _max_or_none(v.rel_bound, w.rel_bound), name)


def tensor(v: TruncatedFIModule, w: TruncatedFIModule) -> TruncatedFIModule:
    """Pointwise tensor product ``V_n (x) W_n`` with the diagonal action."""
    N = _check_pair(v, w)
    F = v.field
    dims = tuple(v.dims[n] * w.dims[n] for n in range(N + 1))
    actions = tuple(tuple(kron(v.actions[n][i], w.actions[n][i], F) for i in range(max(n - 1, 0)))
                    for n in range(N + 1))
    incl = tuple(kron(v.inclusions[n], w.inclusions[n], F) for n in range(N))
    g = r = None
    if v.gen_bound is not None and w.gen_bound is not None:
        g = v.gen_bound + w.gen_bound if min(v.gen_bound, w.gen_bound) >= 0 else -1
        if v.rel_bound is not None and w.rel_bound is not None:
            terms = [-1]
            if v.rel_bound >= 0 and w.gen_bound >= 0:
                terms.append(v.rel_bound + w.gen_bound)
            if w.rel_bound >= 0 and v.gen_bound >= 0:
                terms.append(w.rel_bound + v.gen_bound)
            r = max(terms)
    name = f"{v.name}*{w.name}" if v.name and w.name else ""
    return TruncatedFIModule(F, dims, actions, incl, g, r, name)


def rank_of(m: np.ndarray, field: FieldSpec) -> int:
    return rank(m, field)
