"""Dense GF(2) matrix helpers used for code construction and checks."""

import numpy as np


def mod2(a):
    return np.asarray(a, dtype=np.uint8) & 1


def matmul2(a, b):
    """Matrix product over GF(2)."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    return ((a @ b) & 1).astype(np.uint8)


def rank2(a):
    """Rank of a binary matrix over GF(2)."""
    a = mod2(a).copy()
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        pivots = np.nonzero(a[r:, c])[0]
        if pivots.size == 0:
            continue
        p = r + pivots[0]
        a[[r, p]] = a[[p, r]]
        elim = np.nonzero(a[:, c])[0]
        elim = elim[elim != r]
        a[elim] ^= a[r]
        r += 1
        if r == rows:
            break
    return r


def solve2(a, b):
    """Solve a @ x = b over GF(2) for square invertible a; returns x."""
    a = mod2(a).copy()
    b = mod2(b).copy()
    n = a.shape[0]
    if b.ndim == 1:
        b = b[:, None]
    for c in range(n):
        pivots = np.nonzero(a[c:, c])[0]
        if pivots.size == 0:
            raise ValueError("matrix is singular over GF(2)")
        p = c + pivots[0]
        a[[c, p]] = a[[p, c]]
        b[[c, p]] = b[[p, c]]
        elim = np.nonzero(a[:, c])[0]
        elim = elim[elim != c]
        a[elim] ^= a[c]
        b[elim] ^= b[c]
    return b


def nullspace2(a):
    """Basis (rows) of the right null space of a over GF(2)."""
    a = mod2(a).copy()
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        idx = np.nonzero(a[r:, c])[0]
        if idx.size == 0:
            continue
        p = r + idx[0]
        a[[r, p]] = a[[p, r]]
        elim = np.nonzero(a[:, c])[0]
        elim = elim[elim != r]
        a[elim] ^= a[r]
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, pc in enumerate(pivots):
            basis[i, pc] = a[row, f]
    return basis
