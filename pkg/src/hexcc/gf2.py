"""Dense GF(2) linear algebra on uint8 arrays: rank, solve, span membership."""

import numpy as np


def rref(mat):
    """Reduced row echelon form over GF(2).

    Returns (R, pivots) where R is the reduced matrix and pivots the list of
    pivot column indices. Input is not modified.
    """
    a = (np.atleast_2d(np.asarray(mat)) & 1).astype(np.uint8)
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        rows = np.nonzero(a[r:, c])[0]
        if rows.size == 0:
            continue
        p = r + int(rows[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        if others.size:
            a[others] ^= a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(mat):
    return len(rref(mat)[1])


def row_basis(mat):
    """Indices of a maximal linearly independent subset of rows, in order."""
    a = (np.atleast_2d(np.asarray(mat)) & 1).astype(np.uint8)
    basis = np.zeros((0, a.shape[1]), dtype=np.uint8)
    keep = []
    for i, row in enumerate(a):
        if rank(np.vstack([basis, row])) > len(keep):
            basis = np.vstack([basis, row])
            keep.append(i)
    return keep


class Solver:
    """Repeated solves x @ basis = target over GF(2) for a fixed row basis."""

    def __init__(self, basis):
        self.basis = (np.atleast_2d(np.asarray(basis)) & 1).astype(np.uint8)
        k, n = self.basis.shape
        # Row-reduce [basis | I_k] so coordinates come along for free.
        red, piv = rref(np.hstack([self.basis, np.eye(k, dtype=np.uint8)]))
        piv = [p for p in piv if p < n]
        if len(piv) != k:
            raise ValueError("basis rows are not independent")
        self._rows = red
        self._pivcols = piv
        self._n = n
        self._k = k

    def solve(self, target):
        """Coordinates of target in the basis, or None if not in the span."""
        t = (np.asarray(target).ravel() & 1).astype(np.uint8)
        if t.size != self._n:
            raise ValueError("target length mismatch")
        coords = np.zeros(self._k, dtype=np.uint8)
        resid = t.copy()
        for i, c in enumerate(self._pivcols):
            if resid[c]:
                resid ^= self._rows[i, : self._n]
                coords ^= self._rows[i, self._n :]
        if resid.any():
            return None
        return coords

    def contains(self, target):
        return self.solve(target) is not None
