"""Dense exact linear algebra over a prime field F_p.

Matrices are lists of row lists of ints in [0, p).  Everything here is
elementary Gaussian elimination; sizes stay small (graded pieces of
desk-scale modules), so no attempt is made at anything clever.
"""

from __future__ import annotations


def rref(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form.  Returns (reduced rows, pivot column list)."""
    mat = [row[:] for row in rows]
    pivots: list[int] = []
    r = 0
    ncols = len(mat[0]) if mat else 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(mat)):
            if mat[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][c], p - 2, p)
        mat[r] = [(x * inv) % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] % p:
                f = mat[i][c]
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: list[list[int]], p: int) -> int:
    return len(rref(rows, p)[1])


def kernel_basis(rows: list[list[int]], ncols: int, p: int) -> list[list[int]]:
    """Basis of the right kernel {v : A v = 0} of the matrix with given rows."""
    red, pivots = rref(rows, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-red[i][fc]) % p
        basis.append(v)
    return basis


class SpanTracker:
    """Incrementally maintained row space over F_p with membership tests."""

    def __init__(self, ncols: int, p: int):
        self.ncols = ncols
        self.p = p
        self.rows: list[list[int]] = []  # kept in echelon form
        self.pivots: list[int] = []

    def _reduce(self, vec: list[int]) -> list[int]:
        v = [x % self.p for x in vec]
        for row, c in zip(self.rows, self.pivots):
            if v[c]:
                f = v[c]
                v = [(a - f * b) % self.p for a, b in zip(v, row)]
        return v

    def contains(self, vec: list[int]) -> bool:
        return not any(self._reduce(vec))

    def add(self, vec: list[int]) -> bool:
        """Add a vector to the span; returns True if it enlarged the space."""
        v = self._reduce(vec)
        for c in range(self.ncols):
            if v[c]:
                inv = pow(v[c], self.p - 2, self.p)
                v = [(x * inv) % self.p for x in v]
                # keep rows sorted by pivot for determinism
                idx = 0
                while idx < len(self.pivots) and self.pivots[idx] < c:
                    idx += 1
                self.rows.insert(idx, v)
                self.pivots.insert(idx, c)
                return True
        return False

    @property
    def dim(self) -> int:
        return len(self.rows)
