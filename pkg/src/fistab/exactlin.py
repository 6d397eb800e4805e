"""Exact dense linear algebra over the rationals and prime fields.

Matrices are plain numpy arrays: ``int64`` holding least non-negative
residues for a prime field, ``object`` arrays of :class:`fractions.Fraction`
for the rationals.  Every routine takes the :class:`FieldSpec` explicitly.

The row-reduction kernel for prime fields is compiled (Cython) when the
extension is available and falls back to a vectorised numpy loop otherwise;
``KERNEL`` names the implementation that was selected at import.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _fallback

if os.environ.get("FISTAB_PURE"):
    _rref_modp = _fallback.rref_modp
    KERNEL = "numpy"
else:
    try:
        from ._kernels import rref_modp as _rref_modp

        KERNEL = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        _rref_modp = _fallback.rref_modp
        KERNEL = "numpy"

DEFAULT_PRIME = 32003
_MAX_PRIME = 1 << 20
_FLOAT_EXACT = float(1 << 53)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: ``kind`` is ``"prime"`` (with ``p``) or ``"rationals"``."""

    kind: str = "prime"
    p: int | None = DEFAULT_PRIME

    def __post_init__(self):
        if self.kind == "prime":
            if self.p is None or not _is_prime(int(self.p)):
                raise ValueError(f"p={self.p} is not prime")
            if self.p >= _MAX_PRIME:
                raise ValueError(f"p must be below 2**20, got {self.p}")
        elif self.kind == "rationals":
            object.__setattr__(self, "p", None)
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def prime(cls, p: int = DEFAULT_PRIME) -> "FieldSpec":
        return cls("prime", p)

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("rationals", None)

    @property
    def is_prime(self) -> bool:
        return self.kind == "prime"

    @property
    def characteristic(self) -> int:
        return self.p if self.is_prime else 0

    def invertible_factorials_up_to(self, n: int) -> bool:
        """True when ``n!`` is a unit, i.e. group algebras of S_k, k <= n, are semisimple."""
        return not self.is_prime or self.p > n

    # -- element level -----------------------------------------------------
    def elem(self, x):
        if self.is_prime:
            return int(x) % self.p
        return Fraction(x)

    def inv(self, x):
        if self.is_prime:
            x = int(x) % self.p
            if x == 0:
                raise ZeroDivisionError("inverse of 0")
            return pow(x, self.p - 2, self.p)
        return 1 / Fraction(x)

    # -- matrix level ------------------------------------------------------
    def zeros(self, rows: int, cols: int) -> np.ndarray:
        if self.is_prime:
            return np.zeros((rows, cols), dtype=np.int64)
        out = np.empty((rows, cols), dtype=object)
        out.fill(Fraction(0))
        return out

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros(n, n)
        for i in range(n):
            out[i, i] = 1 if self.is_prime else Fraction(1)
        return out

    def matrix(self, data, rows: int | None = None, cols: int | None = None) -> np.ndarray:
        """Coerce nested lists/arrays (or a flat list plus shape) into canonical form."""
        arr = np.array(data, dtype=object)
        if rows is not None:
            arr = arr.reshape(rows, cols)
        flat = [self.parse(x) for x in arr.ravel()]
        dtype = np.int64 if self.is_prime else object
        out = np.empty(len(flat), dtype=dtype)
        out[:] = flat
        return out.reshape(arr.shape)

    def reduce(self, m: np.ndarray) -> np.ndarray:
        if self.is_prime:
            return np.mod(m, self.p)
        return m

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Exact matrix product."""
        if a.shape[1] != b.shape[0]:
            raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
        if not self.is_prime:
            if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
                return self.zeros(a.shape[0], b.shape[1])
            return _rational_mul(a, b)
        k = a.shape[1]
        if k * float(self.p - 1) ** 2 < _FLOAT_EXACT:
            prod = a.astype(np.float64) @ b.astype(np.float64)
            return np.fmod(prod, self.p).astype(np.int64)
        return (a @ b) % self.p

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.reduce(a + b)

    def sub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.reduce(a - b)

    def scale(self, c, a: np.ndarray) -> np.ndarray:
        return self.reduce(self.elem(c) * a)

    def canonical(self, x):
        """JSON-ready canonical form of one element."""
        if self.is_prime:
            return int(x) % self.p
        x = Fraction(x)
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def parse(self, x):
        if self.is_prime:
            return int(x) % self.p
        return Fraction(x)

    def to_json(self) -> dict:
        return {"kind": self.kind, "p": self.p} if self.is_prime else {"kind": self.kind}

    @classmethod
    def from_json(cls, d: dict) -> "FieldSpec":
        return cls(d["kind"], d.get("p"))


def _integral(m: np.ndarray) -> tuple[list[int], int, int]:
    """Numerators over a common denominator, the denominator, and the largest |numerator|."""
    flat = m.ravel().tolist()
    den = 1
    for x in flat:
        d = x.denominator
        if d != 1:
            den = math.lcm(den, d)
    ints = [x.numerator * (den // x.denominator) for x in flat]
    return ints, den, max(map(abs, ints), default=0)


def _rational_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # clear denominators so the inner products run on integers, not Fraction objects
    ia, da, ma = _integral(a)
    ib, db, mb = _integral(b)
    k = a.shape[1]
    if ma * mb * k < (1 << 62):
        prod = np.array(ia, dtype=np.int64).reshape(a.shape) @ np.array(ib, dtype=np.int64).reshape(b.shape)
    else:
        ao = np.empty(len(ia), dtype=object)
        ao[:] = ia
        bo = np.empty(len(ib), dtype=object)
        bo[:] = ib
        prod = ao.reshape(a.shape).dot(bo.reshape(b.shape))
    den = da * db
    out = np.empty(prod.size, dtype=object)
    out[:] = [Fraction(int(x), den) for x in prod.ravel().tolist()]
    return out.reshape(prod.shape)


def is_zero(m: np.ndarray) -> bool:
    return m.size == 0 or not np.any(m != 0)


def equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and (a.size == 0 or bool(np.all(a == b)))


def rref(m: np.ndarray, field: FieldSpec, reduced: bool = True) -> tuple[np.ndarray, list[int]]:
    """Return a (reduced) row echelon form of ``m`` and its pivot columns."""
    if field.is_prime:
        work = np.ascontiguousarray(m, dtype=np.int64).copy()
        pivots = _rref_modp(work, field.p, reduced)
    else:
        work = np.array(m, dtype=object, copy=True)
        pivots = _fallback.rref_generic(work, reduced)
    return work, list(pivots)


def rank(m: np.ndarray, field: FieldSpec) -> int:
    if m.size == 0:
        return 0
    # eliminate along the shorter side
    if m.shape[0] > m.shape[1]:
        m = m.T
    return len(rref(m, field, reduced=False)[1])


def nullspace_basis(m: np.ndarray, field: FieldSpec) -> np.ndarray:
    """Columns spanning ``{v : m v = 0}``; ``cols(m) - rank(m)`` of them."""
    return nullspace_free_rows(m, field)[0]


def nullspace_free_rows(m: np.ndarray, field: FieldSpec) -> tuple[np.ndarray, list[int]]:
    """Nullspace basis together with the rows on which it is the identity.

    Coordinates of a kernel vector ``v`` in this basis are ``v[free]``.
    """
    cols = m.shape[1]
    r, pivots = rref(m, field)
    ps = set(pivots)
    free = [c for c in range(cols) if c not in ps]
    basis = field.zeros(cols, len(free))
    if free:
        basis[free, np.arange(len(free))] = 1
        if pivots:
            block = r[: len(pivots)][:, free]
            basis[pivots, :] = field.reduce(-block) if field.is_prime else -block
    return basis, free


def column_basis(m: np.ndarray, field: FieldSpec) -> tuple[np.ndarray, list[int]]:
    """Normalised basis of the column space of ``m``.

    Returns ``(B, P)`` with ``B[P, :]`` the identity, so any vector ``y`` in
    the span has coordinates ``y[P]``.
    """
    rows = m.shape[0]
    if m.shape[1] == 0:
        return field.zeros(rows, 0), []
    r, pivots = rref(m.T, field)
    k = len(pivots)
    return np.ascontiguousarray(r[:k].T), pivots


def cokernel_pair(m: np.ndarray, field: FieldSpec) -> tuple[np.ndarray, np.ndarray]:
    """Projection ``q`` with ``ker q = im m`` and a section ``s`` with ``q s = I``."""
    rows = m.shape[0]
    if m.shape[1] == 0:
        return field.eye(rows), field.eye(rows)
    r, pivots = rref(m.T, field)
    k = len(pivots)
    ps = set(pivots)
    free = [c for c in range(rows) if c not in ps]
    q = field.zeros(len(free), rows)
    s = field.zeros(rows, len(free))
    # y in im(m): y_free = R[:, free]^T y_pivots, so q y = y_free - R_free^T y_piv
    rf = r[:k][:, free]
    for j, f in enumerate(free):
        q[j, f] = 1
        s[f, j] = 1
    if k and free:
        q[:, pivots] = field.reduce(-rf.T) if field.is_prime else -rf.T
    return q, s


def cokernel_projection(m: np.ndarray, field: FieldSpec) -> np.ndarray:
    """Surjection from the codomain of ``m`` whose kernel is ``im m``."""
    return cokernel_pair(m, field)[0]


def solve(a: np.ndarray, b: np.ndarray, field: FieldSpec) -> np.ndarray | None:
    """Return ``x`` with ``a x = b``, or ``None`` when ``b`` is not in the column space."""
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"row mismatch: {a.shape} vs {b.shape}")
    n = a.shape[1]
    aug = np.concatenate([a, b], axis=1) if field.is_prime else np.concatenate(
        [a.astype(object), b.astype(object)], axis=1)
    r, pivots = rref(aug, field)
    if any(p >= n for p in pivots):
        return None
    x = field.zeros(n, b.shape[1])
    for i, pc in enumerate(pivots):
        x[pc, :] = r[i, n:]
    return x


def hstack(blocks: list[np.ndarray], rows: int, field: FieldSpec) -> np.ndarray:
    blocks = [b for b in blocks if b.shape[1]]
    if not blocks:
        return field.zeros(rows, 0)
    return np.concatenate(blocks, axis=1)


def block_diag(a: np.ndarray, b: np.ndarray, field: FieldSpec) -> np.ndarray:
    out = field.zeros(a.shape[0] + b.shape[0], a.shape[1] + b.shape[1])
    out[: a.shape[0], : a.shape[1]] = a
    out[a.shape[0]:, a.shape[1]:] = b
    return out


def kron(a: np.ndarray, b: np.ndarray, field: FieldSpec) -> np.ndarray:
    if field.is_prime:
        return np.kron(a, b) % field.p
    out = field.zeros(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            out[i * b.shape[0]:(i + 1) * b.shape[0], j * b.shape[1]:(j + 1) * b.shape[1]] = a[i, j] * b
    return out
