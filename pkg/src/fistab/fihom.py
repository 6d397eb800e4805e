"""FB-modules, induced FI-modules, FI-homology and syzygy degrees.

Induced modules are handled through :class:`InducedModule`, which applies
the symmetric-group generators and the inclusions combinatorially (a row
permutation plus small blocks from ``W``) instead of storing dense
matrices.  Resolutions

    ... -> Ind(W_1) -> Ind(W_0) -> V -> 0

are built degreewise: ``W_i`` is a complement of the span of the images of
lower degrees in ``K_{i-1}``, the next kernel ``K_i`` is a nullspace inside
``Ind(W_i)``, and FI-homology is the homology of the complex ``W_*`` with
the differentials read off from the ``T = {1..n}`` summand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Sequence

import numpy as np

from .exactlin import (
    FieldSpec,
    cokernel_pair,
    column_basis,
    equal,
    hstack,
    nullspace_free_rows,
    rref,
)
from .fimod import (
    CertifiedValue,
    FIMorphism,
    HorizonExhausted,
    TruncatedFIModule,
)


@dataclass(frozen=True, eq=False)
class FBModule:
    """Symmetric-group representations ``W_0, W_1, ...`` with no maps between them."""

    field: FieldSpec
    dims: tuple[int, ...]
    actions: tuple[tuple[np.ndarray, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))

    @property
    def horizon(self) -> int:
        return len(self.dims) - 1

    @property
    def top(self) -> int:
        nz = [n for n, d in enumerate(self.dims) if d]
        return max(nz) if nz else -1

    def act(self, n: int, i: int, x: np.ndarray) -> np.ndarray:
        return self.field.mul(self.actions[n][i - 1], x)

    def validate(self) -> list[str]:
        F = self.field
        out = []
        for n, acts in enumerate(self.actions):
            eye = F.eye(self.dims[n])
            for i in range(1, n):
                a = acts[i - 1]
                if not equal(F.mul(a, a), eye):
                    out.append(f"degree {n}: s_{i}^2 != 1")
                if i + 1 < n:
                    ab = F.mul(a, acts[i])
                    if not equal(F.mul(ab, F.mul(ab, ab)), eye):
                        out.append(f"degree {n}: (s_{i} s_{i + 1})^3 != 1")
                for j in range(i + 2, n):
                    ab = F.mul(a, acts[j - 1])
                    if not equal(F.mul(ab, ab), eye):
                        out.append(f"degree {n}: (s_{i} s_{j})^2 != 1")
        return out

    def restrict(self, horizon: int) -> "FBModule":
        return FBModule(self.field, self.dims[: horizon + 1], self.actions[: horizon + 1])

    def extend(self, horizon: int) -> "FBModule":
        """Pad with zero spaces up to ``horizon``."""
        F = self.field
        dims = list(self.dims)
        acts = list(self.actions)
        for n in range(len(dims), horizon + 1):
            dims.append(0)
            acts.append(tuple(F.zeros(0, 0) for _ in range(max(n - 1, 0))))
        return FBModule(F, tuple(dims), tuple(acts))

    @classmethod
    def concentrated(cls, field: FieldSpec, degree: int, actions: Sequence[np.ndarray],
                     dim: int | None = None) -> "FBModule":
        """A single representation of ``S_degree``, given by its ``degree-1`` generator matrices."""
        if dim is None:
            dim = actions[0].shape[0] if len(actions) else 1
        return cls.from_parts(field, {degree: (dim, actions)})

    @classmethod
    def from_parts(cls, field: FieldSpec, parts: dict) -> "FBModule":
        """``parts`` maps degree -> (dim, generator matrices)."""
        top = max(parts, default=-1)
        dims, acts = [], []
        for n in range(top + 1):
            if n in parts:
                dim, gens = parts[n]
                gens = [field.matrix(g) for g in gens]
                if dim is None:
                    dim = gens[0].shape[0]
                if len(gens) != max(n - 1, 0):
                    raise ValueError(f"degree {n} needs {max(n - 1, 0)} generators")
                dims.append(dim)
                acts.append(tuple(gens))
            else:
                dims.append(0)
                acts.append(tuple(field.zeros(0, 0) for _ in range(max(n - 1, 0))))
        return cls(field, tuple(dims), tuple(acts))


def trivial_rep(field: FieldSpec, n: int, dim: int = 1) -> list[np.ndarray]:
    return [field.eye(dim) for _ in range(max(n - 1, 0))]


def sign_rep(field: FieldSpec, n: int) -> list[np.ndarray]:
    return [field.matrix([[-1]]) for _ in range(max(n - 1, 0))]


def regular_rep(field: FieldSpec, n: int) -> list[np.ndarray]:
    """Left regular representation of ``S_n``, basis = permutations in lexicographic order."""
    from itertools import permutations

    perms = list(permutations(range(n)))
    index = {p: k for k, p in enumerate(perms)}
    gens = []
    for i in range(n - 1):
        m = field.zeros(len(perms), len(perms))
        for p, k in index.items():
            # s_i o p
            q = tuple(i + 1 if x == i else i if x == i + 1 else x for x in p)
            m[index[q], k] = 1
        gens.append(m)
    return gens


def permutation_rep(field: FieldSpec, n: int) -> list[np.ndarray]:
    """Permutation representation of ``S_n`` on ``k^n``."""
    gens = []
    for i in range(n - 1):
        m = field.eye(n)
        m[[i, i + 1]] = m[[i + 1, i]]
        gens.append(m)
    return gens


# ---------------------------------------------------------------------------
# induced modules


class _Layout:
    """Basis of ``Ind(W)_n``: blocks ``(T, W_|T|)`` by ``|T|`` then ``T`` in lexicographic order."""

    def __init__(self, wdims: Sequence[int], n: int):
        self.n = n
        self.offsets: dict[tuple, int] = {}
        self.sizes: list[int] = []
        off = 0
        for k in range(min(n, len(wdims) - 1) + 1):
            wk = wdims[k]
            if not wk:
                continue
            for t in combinations(range(1, n + 1), k):
                self.offsets[t] = off
                off += wk
        self.dim = off


class InducedModule:
    """``Ind(W)`` up to ``horizon``, with structure maps applied combinatorially."""

    def __init__(self, w: FBModule, horizon: int):
        self.w = w
        self.field = w.field
        self.horizon = horizon
        self._layouts: dict[int, _Layout] = {}
        self._acts: dict[tuple[int, int], tuple] = {}
        self._incl: dict[int, np.ndarray] = {}

    def layout(self, n: int) -> _Layout:
        lay = self._layouts.get(n)
        if lay is None:
            lay = self._layouts[n] = _Layout(self.w.dims, n)
        return lay

    def dim(self, n: int) -> int:
        return self.layout(n).dim

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(self.dim(n) for n in range(self.horizon + 1))

    def _act_data(self, n: int, i: int):
        key = (n, i)
        if key in self._acts:
            return self._acts[key]
        lay = self.layout(n)
        wd = self.w.dims
        src = np.arange(lay.dim)
        twists: dict[tuple[int, int], list[int]] = {}
        for t, off in lay.offsets.items():
            k = len(t)
            a, b = i in t, (i + 1) in t
            if a and b:
                pos = t.index(i) + 1
                twists.setdefault((k, pos), []).append(off)
            elif a or b:
                u = tuple(sorted(i + 1 if x == i else i if x == i + 1 else x for x in t))
                src[lay.offsets[u]: lay.offsets[u] + wd[k]] = np.arange(off, off + wd[k])
        tw = []
        for (k, pos), offs in twists.items():
            rows = (np.asarray(offs)[:, None] + np.arange(wd[k])[None, :])
            tw.append((self.w.actions[k][pos - 1], rows))
        data = (src, tw)
        self._acts[key] = data
        return data

    def act(self, n: int, i: int, x: np.ndarray) -> np.ndarray:
        src, tw = self._act_data(n, i)
        y = x[src]
        F = self.field
        c = x.shape[1]
        for mat, rows in tw:
            nt, wk = rows.shape
            block = y[rows.ravel()].reshape(nt, wk, c).transpose(1, 0, 2).reshape(wk, nt * c)
            block = F.mul(mat, block).reshape(wk, nt, c).transpose(1, 0, 2).reshape(nt * wk, c)
            y[rows.ravel()] = block
        return y

    def _incl_index(self, n: int) -> np.ndarray:
        idx = self._incl.get(n)
        if idx is None:
            lo, hi = self.layout(n), self.layout(n + 1)
            wd = self.w.dims
            parts = [np.arange(hi.offsets[t], hi.offsets[t] + wd[len(t)]) for t in lo.offsets]
            idx = np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)
            self._incl[n] = idx
        return idx

    def include(self, n: int, x: np.ndarray) -> np.ndarray:
        y = self.field.zeros(self.dim(n + 1), x.shape[1])
        y[self._incl_index(n)] = x
        return y

    def top_block(self, n: int) -> slice:
        """Rows of the ``T = {1..n}`` summand."""
        d = self.dim(n)
        wn = self.w.dims[n] if n < len(self.w.dims) else 0
        return slice(d - wn, d)

    def to_module(self, name: str = "") -> TruncatedFIModule:
        F = self.field
        N = self.horizon
        actions = []
        for n in range(N + 1):
            eye = F.eye(self.dim(n))
            actions.append(tuple(self.act(n, i, eye) for i in range(1, n)))
        incl = tuple(self.include(n, F.eye(self.dim(n))) for n in range(N))
        return TruncatedFIModule(F, self.dims, tuple(actions), incl, self.w.top, -1, name,
                                 "induced")


def induce(w: FBModule, horizon: int | None = None, name: str = "") -> TruncatedFIModule:
    """Dense ``Ind(W)``; ``(Ind W)_n`` is the sum over subsets ``T`` of ``{1..n}`` of ``W_|T|``."""
    if horizon is None:
        horizon = w.horizon
    return InducedModule(w, horizon).to_module(name)


def free_module(field: FieldSpec, m: int, horizon: int) -> TruncatedFIModule:
    """``M(m)``: induced from the regular representation of ``S_m``."""
    w = FBModule.from_parts(field, {m: (math.factorial(m), regular_rep(field, m))})
    return induce(w.extend(horizon), horizon, f"M({m})")


# ---------------------------------------------------------------------------
# generators


class _Span:
    """Incrementally grown column span inside a space of dimension ``dim``."""

    def __init__(self, field: FieldSpec, dim: int):
        self.field = field
        self.dim = dim
        self.rows = field.zeros(0, dim)

    @property
    def rank(self) -> int:
        return self.rows.shape[0]

    @property
    def full(self) -> bool:
        return self.rank == self.dim

    def add(self, cols: np.ndarray):
        if self.full or cols.shape[1] == 0:
            return
        stack = np.concatenate([self.rows, cols.T], axis=0)
        r, piv = rref(stack, self.field, reduced=False)
        self.rows = np.ascontiguousarray(r[: len(piv)])

    def basis(self) -> np.ndarray:
        return np.ascontiguousarray(self.rows.T)


def lower_span(v, n: int) -> _Span:
    """Span in ``V_n`` of the images of ``V_{n-1}`` under all injections."""
    sp = _Span(v.field, v.dims[n])
    if n == 0 or v.dims[n - 1] == 0 or v.dims[n] == 0:
        return sp
    y = v.include(n - 1, v.identity(n - 1))
    sp.add(y)
    for k in range(n - 1, 0, -1):
        if sp.full:
            break
        y = v.act(n, k, y)
        sp.add(y)
    return sp


def _reynolds(v, n: int, x: np.ndarray, q_act: list[np.ndarray]) -> np.ndarray:
    """``(1/n!) sum_g rho_V(g) x rho_Q(g)^{-1}`` via coset recursion over ``S_1 < S_2 < ...``."""
    F = v.field
    y = x
    for t in range(1, n):
        # coset representatives of S_{t+1}/S_t: s_j s_{j+1} ... s_t, j = 1..t+1
        r = y
        total = y
        for j in range(t, 0, -1):
            r = F.mul(v.act(n, j, r), q_act[j - 1])
            total = F.add(total, r)
        y = total
    return F.scale(F.inv(math.factorial(n)), y) if n > 1 else y


@dataclass
class Generators:
    """A generating FB-module ``W`` for ``V`` with ``gens[n]: W_n -> V_n``.

    ``minimal`` is true when each ``gens[n]`` maps ``W_n`` isomorphically
    onto ``V_n`` modulo the image of lower degrees.
    """

    w: FBModule
    gens: list[np.ndarray]
    minimal: bool
    quotients: list[tuple[np.ndarray, np.ndarray]] = dc_field(default_factory=list)


def generators(v, horizon: int | None = None) -> Generators:
    """Generators of ``v`` degree by degree (``H_0`` with an equivariant lift when possible)."""
    F = v.field
    N = v.horizon if horizon is None else horizon
    dims, acts, gens, quots = [], [], [], []
    minimal = True
    for n in range(N + 1):
        d = v.dims[n]
        sp = lower_span(v, n)
        q, s = cokernel_pair(sp.basis(), F)
        quots.append((q, s))
        e = q.shape[0]
        if e == 0:
            dims.append(0)
            acts.append(tuple(F.zeros(0, 0) for _ in range(max(n - 1, 0))))
            gens.append(F.zeros(d, 0))
            continue
        q_act = [F.mul(q, v.act(n, i, s)) for i in range(1, n)]
        if F.invertible_factorials_up_to(n):
            lift = _reynolds(v, n, s, q_act)
            dims.append(e)
            acts.append(tuple(q_act))
            gens.append(lift)
        else:
            # no equivariant section in general: take the S_n-closure of the lifts
            minimal = False
            sp2 = _Span(F, d)
            sp2.add(s)
            grown = True
            while grown:
                before = sp2.rank
                b = sp2.basis()
                for i in range(1, n):
                    sp2.add(v.act(n, i, b))
                grown = sp2.rank > before
            b, rows = column_basis(sp2.basis(), F)
            dims.append(b.shape[1])
            acts.append(tuple(v.act(n, i, b)[rows, :] for i in range(1, n)))
            gens.append(b)
    return Generators(FBModule(F, tuple(dims), tuple(acts)), gens, minimal, quots)


def h0_fi(v) -> FBModule:
    """FI-homology in degree 0: the cokernel of lower-degree images, degree by degree."""
    F = v.field
    dims, acts = [], []
    for n in range(v.horizon + 1):
        sp = lower_span(v, n)
        q, s = cokernel_pair(sp.basis(), F)
        dims.append(q.shape[0])
        acts.append(tuple(F.mul(q, v.act(n, i, s)) for i in range(1, n)))
    return FBModule(F, tuple(dims), tuple(acts))


def embed_generators(v, gen: Generators, ind: InducedModule, n_max: int) -> list[np.ndarray]:
    """Matrices ``Ind(W)_n -> V_n`` sending ``(T, w)`` to ``V(std_T)(gens(w))``."""
    F = v.field
    wd = gen.w.dims
    out = []
    prev: dict[int, np.ndarray] = {}
    prev_lay = None
    for n in range(n_max + 1):
        lay = ind.layout(n)
        cur: dict[int, np.ndarray] = {}
        if n > 0 and prev:
            lifted = {k: v.include(n - 1, blk) for k, blk in prev.items()}
        for k in range(min(n, len(wd) - 1) + 1):
            wk = wd[k]
            if not wk:
                continue
            if k == n:
                cur[k] = gen.gens[n]
                continue
            subsets = list(combinations(range(1, n + 1), k))
            cols = np.empty(len(subsets) * wk, dtype=np.int64)
            js = np.empty(len(subsets) * wk, dtype=np.int64)
            base = prev_lay.offsets[next(iter(combinations(range(1, n), k)))]
            for idx, t in enumerate(subsets):
                if n not in t:
                    j = n
                    src = t
                else:
                    missing = [x for x in range(1, n + 1) if x not in t]
                    j = missing[-1]
                    src = tuple(x if x < j else x - 1 for x in t)
                start = prev_lay.offsets[src] - base
                cols[idx * wk:(idx + 1) * wk] = np.arange(start, start + wk)
                js[idx * wk:(idx + 1) * wk] = j
            y = lifted[k][:, cols]
            for kk in range(n - 1, 0, -1):
                mask = np.flatnonzero(js <= kk)
                if mask.size:
                    y[:, mask] = v.act(n, kk, y[:, mask])
            cur[k] = y
        blocks = [cur[k] for k in sorted(cur)]
        out.append(hstack(blocks, v.dims[n], F))
        prev, prev_lay = cur, lay
    return out


# ---------------------------------------------------------------------------
# resolutions


@dataclass
class ResolutionStep:
    gen: Generators
    ind: InducedModule
    eps: list[np.ndarray]            # Ind(W_i)_n -> K_{i-1,n} in K-coordinates
    kernel: TruncatedFIModule        # K_i
    kernel_basis: list[np.ndarray]   # K_i inside Ind(W_i), normalised
    kernel_rows: list[list[int]]


@dataclass
class AcyclicResolution:
    """Resolution of ``v`` by induced modules, computed in degrees ``<= horizon``."""

    v: TruncatedFIModule
    horizon: int
    steps: list[ResolutionStep]

    @property
    def depth(self) -> int:
        return len(self.steps) - 1

    @property
    def W(self) -> list[FBModule]:
        return [s.gen.w for s in self.steps]

    @property
    def minimal(self) -> bool:
        return all(s.gen.minimal for s in self.steps)

    def boundary(self, i: int, n: int) -> np.ndarray:
        """``d_i : W_{i,n} -> W_{i-1,n}`` induced on generators."""
        F = self.v.field
        cur = self.steps[i]
        wn = cur.gen.w.dims[n] if n < len(cur.gen.w.dims) else 0
        if i == 0:
            return F.zeros(0, wn)
        prev = self.steps[i - 1]
        amb = F.mul(prev.kernel_basis[n], cur.gen.gens[n]) if wn else F.zeros(prev.ind.dim(n), 0)
        return np.ascontiguousarray(amb[prev.ind.top_block(n), :])

    def induced(self, i: int) -> TruncatedFIModule:
        return self.steps[i].ind.to_module(f"A{i}")

    def differential(self, i: int) -> FIMorphism:
        """``A_i -> A_{i-1}`` (``i >= 1``) or the augmentation ``A_0 -> V`` (``i = 0``)."""
        F = self.v.field
        step = self.steps[i]
        src = self.induced(i)
        if i == 0:
            tgt = self.v.restrict(self.horizon)
            return FIMorphism(src, tgt, tuple(step.eps))
        prev = self.steps[i - 1]
        maps = tuple(F.mul(prev.kernel_basis[n], step.eps[n]) for n in range(self.horizon + 1))
        return FIMorphism(src, self.induced(i - 1), maps)


def _kernel_in_induced(ind: InducedModule, eps: list[np.ndarray], field: FieldSpec, name: str):
    bases, rows = [], []
    for m in eps:
        b, free = nullspace_free_rows(m, field)
        bases.append(b)
        rows.append(free)
    N = len(eps) - 1
    dims = tuple(b.shape[1] for b in bases)
    actions = tuple(tuple(ind.act(n, i, bases[n])[rows[n], :] for i in range(1, n)) for n in range(N + 1))
    incl = tuple(ind.include(n, bases[n])[rows[n + 1], :] for n in range(N))
    return TruncatedFIModule(field, dims, actions, incl, name=name), bases, rows


def resolution_horizon(v: TruncatedFIModule, depth: int) -> int:
    """Smallest horizon at which ``t_0..t_depth`` are certified by presentation bounds."""
    need = [_t_bound(v, i) for i in range(depth + 1)]
    if any(b is None for b in need):
        return v.horizon
    return min(v.horizon, max(max(need), 0))


def build_resolution(v: TruncatedFIModule, depth: int, horizon: int | None = None) -> AcyclicResolution:
    """Resolve ``v`` by induced modules ``A_0, ..., A_depth`` in degrees ``<= horizon``."""
    if horizon is None:
        horizon = resolution_horizon(v, depth)
    horizon = min(horizon, v.horizon)
    key = ("resolution", horizon)
    res = v._memo.get(key)
    if res is not None and (res.depth >= depth or res.steps[-1].kernel.is_zero):
        return res
    F = v.field
    cur = v.restrict(horizon)
    steps = [] if res is None else list(res.steps)
    if steps:
        cur = steps[-1].kernel
    for i in range(len(steps), depth + 1):
        gen = generators(cur)
        ind = InducedModule(gen.w, horizon)
        eps = embed_generators(cur, gen, ind, horizon)
        kern, bases, rows = _kernel_in_induced(ind, eps, F, f"K{i}")
        steps.append(ResolutionStep(gen, ind, eps, kern, bases, rows))
        cur = kern
        if kern.is_zero:
            break
    res = AcyclicResolution(v, horizon, steps)
    v._memo[key] = res
    return res


def _homology_at(res: AcyclicResolution, i: int, n: int):
    """``(basis of ker d_i, image of d_{i+1})`` at degree ``n``, inside ``W_{i,n}``."""
    F = res.v.field
    w = res.steps[i].gen.w if i < len(res.steps) else None
    wn = w.dims[n] if w is not None and n < len(w.dims) else 0
    if wn == 0:
        return F.zeros(0, 0), F.zeros(0, 0)
    if res.minimal:
        return F.eye(wn), F.zeros(wn, 0)
    ker = nullspace_free_rows(res.boundary(i, n), F)[0] if i > 0 else F.eye(wn)
    img = res.boundary(i + 1, n) if i + 1 < len(res.steps) else F.zeros(wn, 0)
    return ker, img


def fi_homology(v: TruncatedFIModule, i: int, res: AcyclicResolution | None = None) -> FBModule:
    """``H_i^FI(v)`` as an FB-module, degrees ``<=`` the resolution horizon."""
    if res is None:
        res = build_resolution(v, _depth_for(v, i))
    F = v.field
    if i >= len(res.steps):
        if res.steps and res.steps[-1].kernel.is_zero:
            return FBModule(F, (0,) * (res.horizon + 1),
                            tuple(tuple(F.zeros(0, 0) for _ in range(max(n - 1, 0))) for n in range(res.horizon + 1)))
        raise HorizonExhausted(f"resolution depth {res.depth} too small for H_{i}")
    if not res.minimal and i + 1 >= len(res.steps) and not res.steps[-1].kernel.is_zero:
        raise HorizonExhausted(f"non-minimal resolution needs depth {i + 1} for H_{i}")
    w = res.steps[i].gen.w
    dims, acts = [], []
    for n in range(res.horizon + 1):
        ker, img = _homology_at(res, i, n)
        if ker.shape[1] == 0:
            dims.append(0)
            acts.append(tuple(F.zeros(0, 0) for _ in range(max(n - 1, 0))))
            continue
        # coordinates of im inside ker, then quotient
        kb, krows = column_basis(ker, F)
        img_c = img[krows, :] if img.shape[1] else F.zeros(kb.shape[1], 0)
        q, s = cokernel_pair(img_c, F)
        dims.append(q.shape[0])
        acts.append(tuple(F.mul(q, w.act(n, a, F.mul(kb, s))[krows, :]) for a in range(1, n)))
    return FBModule(F, tuple(dims), tuple(acts))


def _t_bound(v: TruncatedFIModule, i: int) -> int | None:
    """Upper bound for ``t_i(v)`` from the presentation bounds (``None`` if unknown)."""
    g, r = v.gen_bound, v.rel_bound
    if g is None:
        return None
    if g < 0:
        return -1
    if i == 0:
        return g
    if r is None:
        return None
    if i == 1:
        return r
    if r < 0:
        return -1
    return g + r + i - 1


def _top(dims: Sequence[int]) -> int:
    nz = [n for n, d in enumerate(dims) if d]
    return max(nz) if nz else -1


def t_i(v: TruncatedFIModule, i: int, res: AcyclicResolution | None = None) -> CertifiedValue:
    """``t_i(v) = deg H_i^FI(v)``."""
    h = fi_homology(v, i, res)
    N = h.horizon
    val = _top(h.dims)
    bound = _t_bound(v, i)
    if bound is not None and N >= bound:
        return CertifiedValue(val, True, f"degree bound {bound} within horizon {N}")
    if N >= 2 and h.dims[N] == 0 and h.dims[N - 1] == 0:
        return CertifiedValue(val, True, "horizon-robust (top two degrees vanish)")
    return CertifiedValue(val, False, "may grow beyond horizon")


def t0(v: TruncatedFIModule) -> CertifiedValue:
    h = h0_fi(v)
    val = _top(h.dims)
    g = v.gen_bound
    if g is not None:
        ok = val <= g and v.horizon >= g
        return CertifiedValue(val, ok, f"generated in degrees <= {g}" if ok else "gen_bound not reached")
    N = v.horizon
    ok = N >= 2 and h.dims[N] == 0 and h.dims[N - 1] == 0
    return CertifiedValue(val, ok, "horizon-robust (top two degrees vanish)" if ok else "no gen_bound")


def _depth_for(v: TruncatedFIModule, top: int) -> int:
    # non-minimal generators need one extra step to compute the top homology
    return top if v.field.invertible_factorials_up_to(v.horizon) else top + 1


def syzygy_degrees(v: TruncatedFIModule, depth: int) -> list[CertifiedValue]:
    res = build_resolution(v, _depth_for(v, depth))
    return [t_i(v, i, res) for i in range(depth + 1)]


def regularity_from_syzygies(v: TruncatedFIModule, window: int | None = None) -> CertifiedValue:
    """``max{t_i - i : 1 <= i <= window}``; ``-2`` when all vanish."""
    if window is None:
        from .polystab import stable_degree

        d = stable_degree(v)
        window = int(d.value) + 3 if d.finite else 3
    window = max(window, 1)
    key = ("reg", window)
    if key in v._memo:
        return v._memo[key]
    res = build_resolution(v, _depth_for(v, window))
    vals = [t_i(v, i, res) for i in range(1, window + 1)]
    best = max([t.value - i for i, t in zip(range(1, window + 1), vals)] + [-2])
    if best < -2:
        best = -2
    cert = all(t.certified for t in vals)
    out = CertifiedValue(int(best), cert, f"syzygies t_1..t_{window}" + ("" if cert else " (uncertified)"))
    v._memo[key] = out
    return out


class SemiInducedViolation(AssertionError):
    """``t_1 = -1`` but a higher ``t_i`` is nonzero."""


def is_semi_induced(v: TruncatedFIModule, verify: bool = True) -> CertifiedValue:
    """True iff ``t_1(v) = -1``; when true, ``t_2 = t_3 = -1`` is verified as well."""
    key = ("semi_induced", verify)
    if key in v._memo:
        return v._memo[key]
    res = build_resolution(v, _depth_for(v, 3 if verify else 1))
    t1 = t_i(v, 1, res)
    if t1.value != -1:
        out = CertifiedValue(False, t1.certified, t1.basis)
    else:
        cert = t1.certified
        if verify:
            for i in (2, 3):
                ti = t_i(v, i, res)
                if ti.value != -1:
                    raise SemiInducedViolation(f"t_1 = -1 but t_{i} = {ti.value} for {v!r}")
                cert = cert and ti.certified
        out = CertifiedValue(True, cert, t1.basis)
    v._memo[key] = out
    return out
