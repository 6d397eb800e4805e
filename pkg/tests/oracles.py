"""Independent reference implementations used as test oracles.

Nothing here imports the package's linear algebra or induction code: ranks
are computed by textbook elimination on Python integers / fractions, and
free modules are built straight from sets of injections.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

import numpy as np


def naive_rank(rows, p=None) -> int:
    """Rank by plain Gaussian elimination over F_p (``p`` given) or Q."""
    m = [[(int(x) % p) if p else Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p) if p else 1 / m[r][c]
        m[r] = [(x * inv) % p if p else x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [((a - f * b) % p) if p else a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def injections(m: int, n: int) -> list[tuple[int, ...]]:
    """Injections ``{1..m} -> {1..n}`` as tuples of images, lexicographic order."""
    return list(permutations(range(1, n + 1), m))


def brute_free_module(field, m: int, horizon: int):
    """``M(m)`` with basis the injections ``{1..m} -> {1..n}``, built by composing maps."""
    from fistab.fimod import TruncatedFIModule

    dims, actions, incl = [], [], []
    bases = [injections(m, n) for n in range(horizon + 1)]
    for n, basis in enumerate(bases):
        index = {f: k for k, f in enumerate(basis)}
        dims.append(len(basis))
        acts = []
        for i in range(1, n):
            s = {i: i + 1, i + 1: i}
            mat = np.zeros((len(basis), len(basis)), dtype=object)
            for k, f in enumerate(basis):
                mat[index[tuple(s.get(x, x) for x in f)], k] = 1
            acts.append(field.matrix(mat.tolist() if len(basis) else [], len(basis), len(basis)))
        actions.append(tuple(acts))
    for n in range(horizon):
        src, dst = bases[n], bases[n + 1]
        index = {f: k for k, f in enumerate(dst)}
        mat = np.zeros((len(dst), len(src)), dtype=object)
        for k, f in enumerate(src):
            mat[index[f], k] = 1
        incl.append(field.matrix(mat.tolist() if len(src) else [], len(dst), len(src)))
    return TruncatedFIModule(field, tuple(dims), tuple(actions), tuple(incl), m, -1, f"brute M({m})")


def orbit_count(v, n: int) -> int:
    """Number of ``S_n``-orbits on a permutation basis (columns with a single 1)."""
    d = v.dims[n]
    parent = list(range(d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in v.actions[n]:
        for k in range(d):
            j = int(np.nonzero(np.asarray(a[:, k], dtype=np.int64))[0][0])
            parent[find(k)] = find(j)
    return len({find(k) for k in range(d)})
