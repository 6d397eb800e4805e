"""Closed-form stability ranges and their comparisons.

All functions are plain integer formulas.  A range ``(iso_from, surj_from)``
means the stabilization map is an isomorphism for ``n >= iso_from`` and a
surjection for ``n >= surj_from``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product


@dataclass(frozen=True)
class RangePair:
    iso_from: int
    surj_from: int

    def __post_init__(self):
        if self.surj_from > self.iso_from:
            raise ValueError(f"surjection bound {self.surj_from} exceeds isomorphism bound {self.iso_from}")

    def to_json(self) -> dict:
        return {"iso_from": self.iso_from, "surj_from": self.surj_from}


@dataclass(frozen=True)
class CongruenceQuery:
    k: int
    s: int
    n0: int = 0

    def __post_init__(self):
        if self.k < 1 or self.s < 0 or self.n0 < 0:
            raise ValueError("need k >= 1, s >= 0, n0 >= 0")
        if self.n0 > 2 * self.s + 1:
            raise ValueError(f"n0 = {self.n0} exceeds 2s + 1 = {2 * self.s + 1}")


def _nonneg(**kw):
    for name, val in kw.items():
        if val < 0:
            raise ValueError(f"{name} must be >= 0, got {val}")


def thmC_range(k: int, r: int, L: int) -> RangePair:
    """Twisted stability range for the first polynomial class with parameters ``(r, L)``."""
    _nonneg(k=k, r=r, L=L)
    if L < 2 * r:
        iso = 2 * k + r + (L + 1) // 2 + 2
        return RangePair(iso, iso - 1)
    return RangePair(max(2 * k + 2 * r + 2, L), max(2 * k + 2 * r, L))


def rw_range(k: int, r: int, L: int) -> RangePair:
    """The earlier range ``max{2L+1, 2k+2r+2}`` / ``max{2L+1, 2k+2r}``."""
    _nonneg(k=k, r=r, L=L)
    return RangePair(max(2 * L + 1, 2 * k + 2 * r + 2), max(2 * L + 1, 2 * k + 2 * r))


def putman_range(k: int, M: int) -> RangePair:
    """Range for the second polynomial class with bound ``M``: ``(2k+M+1, 2k+M)``."""
    _nonneg(k=k, M=M)
    return RangePair(2 * k + M + 1, 2 * k + M)


def reg_bound_poly1(r: int, L: int) -> int:
    """Regularity bound for members of the first polynomial class ``(r, L)``."""
    _nonneg(r=r, L=L)
    if L == 0:
        return -2
    if L >= max(1, 2 * r):
        return L
    return r + (L + 1) // 2


def congruence_range(k: int, s: int) -> int:
    CongruenceQuery(k, s)
    return 4 * k + 2 * s + 3


def mpp_range(k: int, s: int) -> int:
    CongruenceQuery(k, s)
    return 8 * k + 4 * s + 9


@dataclass
class GridComparison:
    cases: int
    iso_violations: list[tuple[int, int, int]]
    surj_violations: list[tuple[int, int, int]]

    @property
    def ok(self) -> bool:
        return not self.iso_violations and not self.surj_violations


def compare_thmC_rw(kmax: int = 20, rmax: int = 20, lmax: int = 20) -> GridComparison:
    """Componentwise ``thmC_range <= rw_range`` over ``0 <= k,r,L <= max``."""
    iso_bad, surj_bad = [], []
    n = 0
    for k, r, L in product(range(kmax + 1), range(rmax + 1), range(lmax + 1)):
        a, b = thmC_range(k, r, L), rw_range(k, r, L)
        n += 1
        if a.iso_from > b.iso_from:
            iso_bad.append((k, r, L))
        if a.surj_from > b.surj_from:
            surj_bad.append((k, r, L))
    return GridComparison(n, iso_bad, surj_bad)


def range_table(kmax: int, rmax: int, lmax: int) -> list[dict]:
    rows = []
    for k, r, L in product(range(kmax + 1), range(rmax + 1), range(lmax + 1)):
        a, b = thmC_range(k, r, L), rw_range(k, r, L)
        rows.append({"k": k, "r": r, "L": L, "thmC": a.to_json(), "rw": b.to_json()})
    return rows


def format_table(rows: list[dict]) -> str:
    head = f"{'k':>3} {'r':>3} {'L':>3} | {'C.iso':>5} {'C.surj':>6} | {'RW.iso':>6} {'RW.surj':>7}"
    lines = [head, "-" * len(head)]
    for row in rows:
        a, b = row["thmC"], row["rw"]
        lines.append(f"{row['k']:>3} {row['r']:>3} {row['L']:>3} | {a['iso_from']:>5} {a['surj_from']:>6} | "
                     f"{b['iso_from']:>6} {b['surj_from']:>7}")
    return "\n".join(lines)
