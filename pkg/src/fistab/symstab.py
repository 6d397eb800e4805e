"""Coinvariants ``(V_n)_{S_n}`` and the stabilization maps between them."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .exactlin import cokernel_pair, hstack, is_zero, rank
from .fimod import InvalidModule, TruncatedFIModule
from .ranges import thmC_range


class DescentError(InvalidModule):
    """The inclusion does not descend to coinvariants."""


def _coinv_pair(v: TruncatedFIModule, n: int):
    def build():
        F = v.field
        d = v.dims[n]
        eye = F.eye(d)
        blocks = [F.sub(a, eye) for a in v.actions[n]]
        span = hstack(blocks, d, F) if blocks else F.zeros(d, 0)
        return cokernel_pair(span, F)

    return v.memo(("coinv", n), build)


def coinvariants(v: TruncatedFIModule, n: int) -> tuple[int, np.ndarray]:
    """Dimension of ``(V_n)_{S_n}`` and the projection ``V_n -> (V_n)_{S_n}``."""
    if not 0 <= n <= v.horizon:
        raise ValueError(f"degree {n} outside 0..{v.horizon}")
    q, _ = _coinv_pair(v, n)
    return q.shape[0], q


def stabilization_map(v: TruncatedFIModule, n: int) -> np.ndarray:
    """The map ``(V_n)_{S_n} -> (V_{n+1})_{S_{n+1}}`` induced by the inclusion."""
    if not 0 <= n < v.horizon:
        raise ValueError(f"need 0 <= n < {v.horizon}")
    F = v.field
    q0, s0 = _coinv_pair(v, n)
    q1, _ = _coinv_pair(v, n + 1)
    through = F.mul(q1, v.inclusions[n])
    # descent: q1 . iota must kill (s_i - 1) V_n
    for a in v.actions[n]:
        if not is_zero(F.mul(through, F.sub(a, F.eye(v.dims[n])))):
            raise DescentError(f"inclusion at degree {n} does not descend to coinvariants")
    return F.mul(through, s0)


@dataclass
class CoinvariantSequence:
    dims: list[int]
    maps: list[np.ndarray]
    ranks: list[int]

    def is_iso(self, n: int) -> bool:
        return self.dims[n] == self.dims[n + 1] == self.ranks[n]

    def is_surj(self, n: int) -> bool:
        return self.ranks[n] == self.dims[n + 1]

    def to_json(self) -> dict:
        return {"dims": self.dims, "ranks": self.ranks}


def coinvariant_sequence(v: TruncatedFIModule) -> CoinvariantSequence:
    dims = [coinvariants(v, n)[0] for n in range(v.horizon + 1)]
    maps = [stabilization_map(v, n) for n in range(v.horizon)]
    ranks = [rank(m, v.field) for m in maps]
    return CoinvariantSequence(dims, maps, ranks)


@dataclass
class K0StabilityReport:
    r: int
    L: int
    iso_from: int
    surj_from: int
    seq: CoinvariantSequence
    iso_failures: list[int] = dc_field(default_factory=list)
    surj_failures: list[int] = dc_field(default_factory=list)
    below_bound: list[str] = dc_field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.iso_failures and not self.surj_failures

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "L": self.L,
            "iso_from": self.iso_from,
            "surj_from": self.surj_from,
            "coinvariants": self.seq.to_json(),
            "iso_failures": self.iso_failures,
            "surj_failures": self.surj_failures,
            "below_bound": self.below_bound,
            "checked": self.checked,
            "pass": self.ok,
        }


def check_k0_stability(v: TruncatedFIModule, r: int, L: int, require_membership: bool = True) -> K0StabilityReport:
    """Check the degree-0 stability range of the first polynomial class on ``v``.

    Only ``n`` at or above the bounds are judged; behaviour below them is
    recorded as informational.  Raises ``ValueError`` when ``v`` is not a
    certified member of the class.
    """
    from .polystab import UncertifiedInput, in_poly1

    rng = thmC_range(0, r, L)
    if require_membership:
        try:
            member, _ = in_poly1(v, r, L)
        except UncertifiedInput as exc:
            raise ValueError(f"membership of {v!r} not certified: {exc}") from exc
        if not member:
            raise ValueError(f"{v!r} is not in the class ({r}, {L})")
    seq = coinvariant_sequence(v)
    rep = K0StabilityReport(r, L, rng.iso_from, rng.surj_from, seq)
    for n in range(v.horizon):
        iso, surj = seq.is_iso(n), seq.is_surj(n)
        if n >= rng.iso_from:
            rep.checked += 1
            if not iso:
                rep.iso_failures.append(n)
        elif not iso:
            rep.below_bound.append(f"n={n}: not an isomorphism")
        if n >= rng.surj_from:
            rep.checked += 1
            if not surj:
                rep.surj_failures.append(n)
    return rep
