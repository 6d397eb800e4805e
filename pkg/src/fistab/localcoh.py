"""Local cohomology through complexes of shifted semi-induced modules.

Starting from ``C^0 = V`` we repeatedly shift until the result is
semi-induced, map into it, and pass to the cokernel:

    C^j -> Q^j = Sigma^{b_j} C^j,    C^{j+1} = coker(C^j -> Q^j).

The complex ``V -> Q^0 -> Q^1 -> ...`` (``V`` in position 0) has
cohomology ``H^j(V)`` in position ``j``; in particular ``H^j(V)`` is the
torsion submodule of ``C^j``.  A cokernel that is already torsion is
closed off with a zero term (shifting past its support).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .fihom import is_semi_induced
from .fimod import (
    CertifiedValue,
    FIMorphism,
    HorizonExhausted,
    TruncatedFIModule,
    compose,
    degree,
    derivative,
    h0_degree,
    is_torsion,
    kernel_K,
    morphism_cokernel,
    morphism_kernel,
    natural_map,
    shift,
    subquotient,
    torsion_H0,
    zero_module,
    zero_morphism,
)


class TerminationError(AssertionError):
    """The cokernel iteration ran past the length allowed by the stable degree."""


def shift_until_semi_induced(v: TruncatedFIModule) -> tuple[int, TruncatedFIModule, CertifiedValue]:
    """Smallest ``b`` with ``Sigma^b v`` semi-induced.

    Shifts that still carry torsion (``b <= h^0(v)``) are skipped without a
    resolution, since semi-induced modules are torsion-free.
    """
    if v.is_zero:
        return 0, v, CertifiedValue(True, True, "zero module")
    h0 = h0_degree(v)
    start = max(int(h0.value) + 1, 0)
    for b in range(start, v.horizon + 1):
        sb = shift(v, b)
        si = is_semi_induced(sb)
        if si.value:
            cert = CertifiedValue(True, si.certified and h0.certified, si.basis)
            return b, sb, cert
    raise HorizonExhausted(f"no shift b <= {v.horizon} of {v!r} is semi-induced")


@dataclass
class SemiInducedComplex:
    v: TruncatedFIModule
    terms: list[TruncatedFIModule]
    shifts: list[int]
    maps: list[FIMorphism]              # v -> Q^0, Q^0 -> Q^1, ...
    cokernels: list[TruncatedFIModule]  # C^0 = v, C^1, ...
    certified: bool
    notes: list[str] = dc_field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.terms) - 1


def _stable_degree_value(v: TruncatedFIModule) -> int | None:
    from .polystab import stable_degree

    try:
        d = stable_degree(v)
    except HorizonExhausted:
        return None
    return int(d.value) if d.finite else None


def build_semi_induced_complex(v: TruncatedFIModule, max_length: int | None = None) -> SemiInducedComplex:
    """``v -> Q^0 -> ... -> Q^l`` with each ``Q^j`` semi-induced (the last may be zero)."""
    memo = v._memo.get("complex")
    if memo is not None:
        return memo
    if max_length is None:
        delta = _stable_degree_value(v)
        max_length = None if delta is None else delta + 2
    c = v
    terms, shifts, maps, coks = [], [], [], [v]
    certified = True
    notes = []
    prev_proj = None  # Q^{j-1} -> C^j
    while True:
        if c.is_zero and terms:
            break
        tor = is_torsion(c)
        if not tor.certified:
            certified = False
            notes.append(f"torsion test on C^{len(terms)} uncertified ({tor.basis})")
        if tor.value or c.is_zero:
            # shifting past the support gives the zero module
            b = int(degree(c).value) + 1
            q = zero_module(c.field, c.horizon)
            nat = zero_morphism(c, q)
            sc = CertifiedValue(True, tor.certified, "zero module")
        else:
            b, q, sc = shift_until_semi_induced(c)
            nat = natural_map(c, b)
        if not sc.certified:
            certified = False
            notes.append(f"semi-induced test on Q^{len(terms)} uncertified")
        terms.append(q)
        shifts.append(b)
        maps.append(nat if prev_proj is None else compose(nat, prev_proj))
        if max_length is not None and len(terms) - 1 > max_length:
            raise TerminationError(f"complex for {v!r} exceeds length {max_length}")
        if q.is_zero:
            break
        c, proj = morphism_cokernel(nat, with_map=True)
        coks.append(c)
        prev_proj = proj
    out = SemiInducedComplex(v, terms, shifts, maps, coks, certified, notes)
    v._memo["complex"] = out
    return out


def _support_bound(v: TruncatedFIModule, j: int) -> int | None:
    """``h^j(v) <= g + r - 1 - j`` from the regularity bound."""
    g, r = v.gen_bound, v.rel_bound
    if g is None or r is None:
        return None
    if g < 0:
        return -1
    return g + r - 1 - j


def _certify_degree(v: TruncatedFIModule, j: int, h: TruncatedFIModule, cx_ok: bool) -> CertifiedValue:
    dims = h.dims
    nz = [n for n, d in enumerate(dims) if d]
    val = max(nz) if nz else -1
    N = h.horizon
    bound = _support_bound(v, j)
    if bound is not None and N > bound:
        return CertifiedValue(val, cx_ok, f"support bound {bound} below horizon {N}")
    if N >= 2 and dims[N] == 0 and dims[N - 1] == 0:
        return CertifiedValue(val, cx_ok, "horizon-robust (top two degrees vanish)")
    return CertifiedValue(val, False, "may grow beyond horizon")


def local_cohomology(v: TruncatedFIModule, j: int) -> tuple[TruncatedFIModule, CertifiedValue]:
    """``H^j(v)`` with its certified degree ``h^j(v)``."""
    key = ("H", j)
    if key in v._memo:
        return v._memo[key]
    cx = build_semi_induced_complex(v)
    if j == 0:
        h = morphism_kernel(cx.maps[0])
    elif j <= len(cx.terms) - 1:
        h = subquotient(cx.maps[j - 1], cx.maps[j])
    elif j == len(cx.terms):
        # cokernel of the last map; zero unless the last term is nonzero and not hit
        h = morphism_cokernel(cx.maps[-1])
    else:
        h = zero_module(v.field, cx.terms[-1].horizon)
    out = (h.renamed(f"H^{j}"), _certify_degree(v, j, h, cx.certified))
    v._memo[key] = out
    return out


@dataclass
class LocalCohomologyTable:
    h: list[CertifiedValue]
    dims: list[tuple[int, ...]]
    hmax: CertifiedValue
    crit: CertifiedValue | None
    reg: CertifiedValue

    def to_json(self) -> dict:
        return {
            "h": [x.to_json() for x in self.h],
            "dims": [list(d) for d in self.dims],
            "hmax": self.hmax.to_json(),
            "crit": None if self.crit is None else self.crit.to_json(),
            "reg_local": self.reg.to_json(),
        }


def h_table(v: TruncatedFIModule, J: int | None = None) -> LocalCohomologyTable:
    """``h^0..h^J`` together with ``hmax``, ``max(h^j + j)`` and ``crit``."""
    cx = build_semi_induced_complex(v)
    top = len(cx.terms)
    if J is None:
        J = top
    J = max(J, top)
    hs, dims = [], []
    for j in range(J + 1):
        mod, val = local_cohomology(v, j)
        hs.append(val)
        dims.append(mod.dims)
    cert = all(x.certified for x in hs)
    hmax = CertifiedValue(max(int(x.value) for x in hs), cert, "max over computed h^j")
    live = [(int(x.value) + j, j) for j, x in enumerate(hs) if x.value >= 0]
    if live:
        best = max(s for s, _ in live)
        crit = CertifiedValue(min(j for s, j in live if s == best), cert, "least j attaining max h^j + j")
        reg = CertifiedValue(best, cert, "max h^j + j")
    else:
        crit = None
        reg = CertifiedValue(-2, cert, "no local cohomology")
    return LocalCohomologyTable(hs, dims, hmax, crit, reg)


def hmax(v: TruncatedFIModule) -> CertifiedValue:
    return h_table(v).hmax


def crit(v: TruncatedFIModule) -> CertifiedValue:
    t = h_table(v)
    if t.crit is None:
        raise ValueError("critical index is undefined when all local cohomology vanishes")
    return t.crit


def reg_local(v: TruncatedFIModule) -> CertifiedValue:
    """``max{h^j + j : h^j >= 0}`` (``-2`` when there is none)."""
    return h_table(v).reg


def les_terms(v: TruncatedFIModule) -> list[tuple[str, tuple[int, ...], int]]:
    """Dimension data of ``0 -> KV -> H^0 -> Sigma H^0 -> H^0(DV) -> H^1 -> ...``.

    Each entry is ``(label, dims, offset)``: the term's dimension at degree
    ``n`` is ``dims[n + offset]``.
    """
    dv = derivative(v)
    tv = h_table(v)
    td = h_table(dv)
    J = max(len(tv.h), len(td.h))
    out = [("K", kernel_K(v).dims, 0)]
    for j in range(J):
        hv = local_cohomology(v, j)[0].dims
        hd = local_cohomology(dv, j)[0].dims
        out.append((f"H^{j}", hv, 0))
        out.append((f"S H^{j}", hv, 1))
        out.append((f"H^{j}(D)", hd, 0))
    return out


def les_dimension_check(v: TruncatedFIModule) -> bool:
    """Alternating sum of dimensions along the long exact sequence vanishes in every evaluable degree."""
    h0 = h0_degree(v)
    if not h0.finite:
        raise ValueError("requires finite h^0")
    terms = les_terms(v)
    top = min(len(d) - 1 - off for _, d, off in terms)
    for n in range(top + 1):
        total = 0
        for k, (_, dims, off) in enumerate(terms):
            total += (-1) ** k * dims[n + off]
        if total != 0:
            return False
    return True


def h0_agrees_with_torsion(v: TruncatedFIModule) -> bool:
    """``H^0`` from the complex matches the direct torsion computation."""
    h = local_cohomology(v, 0)[0]
    t = torsion_H0(v)
    n = min(h.horizon, t.horizon)
    return h.dims[: n + 1] == t.dims[: n + 1]
