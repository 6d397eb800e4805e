"""Stable degree, the two recursive polynomiality conditions, and their invariant descriptions."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .fimod import (
    INF,
    CertifiedValue,
    HorizonExhausted,
    TruncatedFIModule,
    degree,
    derivative,
    h0_degree,
    is_torsion,
    kernel_K,
)


class UncertifiedInput(RuntimeError):
    """An invariant needed for a decision could not be certified."""


def stable_degree(v: TruncatedFIModule) -> CertifiedValue:
    """``min{r >= -1 : Delta^{r+1} v is torsion}``."""
    if "delta" in v._memo:
        return v._memo["delta"]
    cur = v
    cert = True
    r = -1
    while True:
        t = is_torsion(cur)
        cert = cert and t.certified
        if t.value:
            break
        if cur.horizon < 1:
            raise HorizonExhausted(f"stable degree of {v!r}: horizon used up at r = {r}")
        cur = derivative(cur)
        r += 1
    out = CertifiedValue(r, cert, "iterated derivative reaches torsion")
    v._memo["delta"] = out
    return out


def hilbert_delta(v: TruncatedFIModule, start: int | None = None) -> CertifiedValue:
    """Degree of the polynomial eventually matching ``n -> dim V_n``, by finite differences.

    Uses the dimensions from ``start`` (default ``g + r`` when both bounds
    are known, else the generation bound) to the horizon.  Never certified.
    Raises ``ValueError`` when the samples do not determine a polynomial.
    """
    if start is None:
        g, r = v.gen_bound, v.rel_bound
        start = max(g + r, 0) if g is not None and r is not None else max(g or 0, 0)
    seq = list(v.dims[start:])
    deg = -1
    while any(seq):
        if len(seq) < 2:
            raise ValueError("not enough samples to fit a polynomial")
        seq = [b - a for a, b in zip(seq, seq[1:])]
        deg += 1
    # the zero run must have length >= 1 to be a check, not an accident
    if deg >= 0 and len(seq) < 2:
        raise ValueError("not enough samples to confirm the fitted degree")
    return CertifiedValue(deg, False, f"finite differences of dims from degree {start}")


@dataclass(frozen=True)
class PolyQuery:
    flavor: int
    r: int
    bound: int

    def __post_init__(self):
        if self.flavor not in (1, 2):
            raise ValueError("flavor must be 1 or 2")
        if self.r < -1 or self.bound < 0:
            raise ValueError("need r >= -1 and bound >= 0")

    def evaluate(self, v: TruncatedFIModule) -> tuple[bool, "PolyTrace"]:
        return (in_poly1 if self.flavor == 1 else in_poly2)(v, self.r, self.bound)


@dataclass
class PolyTrace:
    flavor: int
    steps: list[str] = dc_field(default_factory=list)

    def add(self, msg: str):
        self.steps.append(msg)


def _require(cv: CertifiedValue, what: str):
    if not cv.certified:
        raise UncertifiedInput(f"{what} not certified ({cv.basis})")


def _fmt(x) -> str:
    return "inf" if x == INF else str(int(x))


def _in_poly(v: TruncatedFIModule, r: int, b: int, flavor: int, trace: PolyTrace, depth: int = 0) -> bool:
    pad = "  " * depth
    if r == -1:
        d = degree(v)
        _require(d, f"deg at level {depth}")
        ok = d.value <= b - 1
        trace.add(f"{pad}r=-1 bound={b}: deg={_fmt(d.value)} <= {b - 1}? {ok}")
        return ok
    h0 = h0_degree(v)
    _require(h0, f"h0 at level {depth}")
    ok = h0.value <= b - 1
    trace.add(f"{pad}r={r} bound={b}: h0={_fmt(h0.value)} <= {b - 1}? {ok}")
    if not ok:
        return False
    if v.horizon < 1:
        raise HorizonExhausted(f"derivative at recursion level {depth}")
    nb = b if flavor == 1 else max(0, b - 1)
    return _in_poly(derivative(v), r - 1, nb, flavor, trace, depth + 1)


def in_poly1(v: TruncatedFIModule, r: int, L: int) -> tuple[bool, PolyTrace]:
    """Membership in the first recursive class (bound kept fixed under the derivative)."""
    if r < -1 or L < 0:
        raise ValueError("need r >= -1 and L >= 0")
    tr = PolyTrace(1)
    return _in_poly(v, r, L, 1, tr), tr


def in_poly2(v: TruncatedFIModule, r: int, M: int) -> tuple[bool, PolyTrace]:
    """Membership in the second recursive class (bound decremented under the derivative)."""
    if r < -1 or M < 0:
        raise ValueError("need r >= -1 and M >= 0")
    tr = PolyTrace(2)
    return _in_poly(v, r, M, 2, tr), tr


@dataclass
class EquivalenceVerdict:
    recursive_membership: bool
    invariant_membership: bool
    trace: list[str]

    @property
    def agree(self) -> bool:
        return self.recursive_membership == self.invariant_membership


def check_theorem_A(v: TruncatedFIModule, r: int, L: int) -> EquivalenceVerdict:
    """Recursive class 1 against ``delta <= r and hmax <= L - 1``."""
    from .localcoh import hmax

    d = stable_degree(v)
    hm = hmax(v)
    _require(d, "stable degree")
    _require(hm, "hmax")
    rec, tr = in_poly1(v, r, L)
    inv = d.value <= r and hm.value <= L - 1
    return EquivalenceVerdict(rec, inv, tr.steps)


def check_theorem_B(v: TruncatedFIModule, r: int, M: int) -> EquivalenceVerdict:
    """Recursive class 2 against ``delta <= r and reg <= M - 1``."""
    from .fihom import regularity_from_syzygies

    d = stable_degree(v)
    reg = regularity_from_syzygies(v)
    _require(d, "stable degree")
    _require(reg, "regularity")
    rec, tr = in_poly2(v, r, M)
    inv = d.value <= r and reg.value <= M - 1
    return EquivalenceVerdict(rec, inv, tr.steps)


@dataclass
class DerivativeReport:
    checks: dict[str, bool]
    notes: list[str]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def check_derivative_props(v: TruncatedFIModule) -> DerivativeReport:
    """Regularity and local cohomology of ``v`` against those of its derivative."""
    from .fihom import regularity_from_syzygies
    from .localcoh import h_table

    checks: dict[str, bool] = {}
    notes: list[str] = []
    dv = derivative(v)
    k = degree(kernel_K(v))
    h0 = h0_degree(v)
    if k.certified and h0.certified:
        checks["deg K = h0"] = k.value == h0.value
    else:
        notes.append("deg K / h0 uncertified")
    reg = regularity_from_syzygies(v)
    regd = regularity_from_syzygies(dv)
    _require(reg, "reg(V)")
    _require(regd, "reg(DV)")
    tv, td = h_table(v), h_table(dv)
    if reg.value != -2:
        checks["reg(DV) <= reg(V) - 1"] = regd.value <= reg.value - 1
        if tv.crit is not None and tv.crit.value >= 1:
            checks["reg(DV) = reg(V) - 1"] = regd.value == reg.value - 1
            checks["crit(DV) = crit(V) - 1"] = td.crit is not None and td.crit.value == tv.crit.value - 1
    else:
        notes.append("V is H0-acyclic; regularity clauses not applicable")
    J = max(len(tv.h), len(td.h))

    def hv(t, j):
        return t.h[j].value if j < len(t.h) else -1

    for j in range(J):
        checks[f"h{j}(DV) <= max(h{j}(V)-1, h{j + 1}(V))"] = hv(td, j) <= max(hv(tv, j) - 1, hv(tv, j + 1))
        if j >= 1:
            checks[f"h{j}(V) <= max(h{j - 1}(DV), h{j}(DV))"] = hv(tv, j) <= max(hv(td, j - 1), hv(td, j))
    return DerivativeReport(checks, notes)
