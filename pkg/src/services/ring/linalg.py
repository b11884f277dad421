"""Dense linear algebra over GF(p) on numpy int64 arrays.

Every strand computation in the engine (kernels, images, lifts, homology
coordinates) reduces to these routines. Values are kept in [0, p) so that a
single product of two entries fits in int64 for p < 2^31. Sums of products go
through ``matmul_mod``, which falls back to exact Python integers once an
accumulated dot product could leave int64.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

import numpy as np

INT64_MAX = int(np.iinfo(np.int64).max)


def mod_p(matrix: np.ndarray, p: int) -> np.ndarray:
    return np.asarray(matrix, dtype=np.int64) % p


def matmul_mod(left: np.ndarray, right: np.ndarray, p: int) -> np.ndarray:
    """``left @ right`` reduced mod p, exact for every p below 2^31."""
    left = mod_p(left, p)
    right = mod_p(right, p)
    inner = left.shape[-1]
    if inner * (p - 1) ** 2 <= INT64_MAX:
        return (left @ right) % p
    product = left.astype(object) @ right.astype(object)
    return np.asarray(product % p, dtype=np.int64)


def rref_mod(matrix: np.ndarray, p: int, ncols: Optional[int] = None) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form; pivots are only searched in the first ``ncols`` columns."""
    A = mod_p(np.array(matrix, dtype=np.int64, copy=True), p)
    if A.ndim != 2:
        raise ValueError("rref_mod expects a 2-d array")
    m, n = A.shape
    limit = n if ncols is None else min(ncols, n)
    pivots: List[int] = []
    row = 0
    for col in range(limit):
        if row >= m:
            break
        candidates = np.nonzero(A[row:, col])[0]
        if candidates.size == 0:
            continue
        pivot = row + int(candidates[0])
        if pivot != row:
            A[[row, pivot]] = A[[pivot, row]]
        inverse = pow(int(A[row, col]), -1, p)
        A[row, col:] = (A[row, col:] * inverse) % p
        column = A[:, col].copy()
        column[row] = 0
        targets = np.nonzero(column)[0]
        if targets.size:
            A[targets, col:] = (A[targets, col:] - np.outer(column[targets], A[row, col:])) % p
        pivots.append(col)
        row += 1
    return A, pivots


def rank_mod(matrix: np.ndarray, p: int) -> int:
    matrix = np.asarray(matrix)
    if matrix.size == 0:
        return 0
    # eliminate along the shorter side
    if matrix.shape[0] > matrix.shape[1]:
        matrix = matrix.T
    _, pivots = rref_mod(matrix, p)
    return len(pivots)


def nullspace_mod(matrix: np.ndarray, p: int) -> np.ndarray:
    """Right kernel of ``matrix``; rows of the result form the canonical RREF basis."""
    matrix = np.asarray(matrix, dtype=np.int64)
    m, n = matrix.shape
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if m == 0:
        return np.eye(n, dtype=np.int64)
    R, pivots = rref_mod(matrix, p)
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for row, pc in enumerate(pivots):
            basis[k, pc] = (-R[row, f]) % p
    return basis


def solve_many(matrix: np.ndarray, rhs: np.ndarray, p: int) -> Tuple[np.ndarray, np.ndarray]:
    """Solve ``matrix @ x = rhs[:, j]`` for every column j.

    Returns the canonical solutions (free variables set to zero) as columns and a
    boolean mask telling which right-hand sides were consistent.
    """
    matrix = np.asarray(matrix, dtype=np.int64)
    rhs = np.asarray(rhs, dtype=np.int64)
    if rhs.ndim == 1:
        rhs = rhs.reshape(-1, 1)
    m, n = matrix.shape
    k = rhs.shape[1]
    if m == 0:
        return np.zeros((n, k), dtype=np.int64), np.ones(k, dtype=bool)
    augmented = np.concatenate([matrix % p, rhs % p], axis=1)
    R, pivots = rref_mod(augmented, p, ncols=n)
    rank = len(pivots)
    consistent = ~np.any(R[rank:, n:] != 0, axis=0)
    solution = np.zeros((n, k), dtype=np.int64)
    for row, pc in enumerate(pivots):
        solution[pc, :] = R[row, n:]
    return solution, consistent


class LinearSolver:
    """Factorises ``A`` once so that many systems ``A x = b`` can be solved cheaply."""

    def __init__(self, matrix: np.ndarray, p: int):
        matrix = np.asarray(matrix, dtype=np.int64)
        self.p = p
        self.shape = matrix.shape
        m, n = matrix.shape
        augmented = np.concatenate([matrix % p, np.eye(m, dtype=np.int64)], axis=1)
        R, pivots = rref_mod(augmented, p, ncols=n)
        self.pivots = pivots
        self.rank = len(pivots)
        self._transform = R[:, n:]

    def solve(self, rhs: np.ndarray) -> Optional[np.ndarray]:
        rhs = np.asarray(rhs, dtype=np.int64) % self.p
        m, n = self.shape
        if m == 0:
            return np.zeros(n, dtype=np.int64)
        reduced = matmul_mod(self._transform, rhs, self.p)
        if np.any(reduced[self.rank :] != 0):
            return None
        solution = np.zeros(n, dtype=np.int64)
        for row, pc in enumerate(self.pivots):
            solution[pc] = reduced[row]
        return solution

    def contains(self, rhs: np.ndarray) -> bool:
        return self.solve(rhs) is not None


class EchelonBasis:
    """Incrementally grown echelon basis of a subspace of GF(p)^n."""

    def __init__(self, dimension: int, p: int):
        self.dimension = dimension
        self.p = p
        self._rows: List[np.ndarray] = []
        self._pivots: List[int] = []

    @classmethod
    def from_matrix(cls, matrix: np.ndarray, p: int) -> "EchelonBasis":
        """Seed the basis with the row space of ``matrix`` in one vectorised pass."""
        matrix = np.asarray(matrix, dtype=np.int64)
        basis = cls(matrix.shape[1], p)
        if matrix.shape[0] == 0:
            return basis
        R, pivots = rref_mod(matrix, p)
        basis._rows = [R[row].copy() for row in range(len(pivots))]
        basis._pivots = list(pivots)
        return basis

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, vector: np.ndarray) -> np.ndarray:
        v = np.asarray(vector, dtype=np.int64) % self.p
        for row, pc in zip(self._rows, self._pivots):
            c = v[pc]
            if c:
                v = (v - c * row) % self.p
        return v

    def add(self, vector: np.ndarray) -> bool:
        """Add ``vector`` if it is independent of the current span."""
        v = self.reduce(vector)
        nonzero = np.nonzero(v)[0]
        if nonzero.size == 0:
            return False
        pc = int(nonzero[0])
        v = (v * pow(int(v[pc]), -1, self.p)) % self.p
        for index, row in enumerate(self._rows):
            c = row[pc]
            if c:
                self._rows[index] = (row - c * v) % self.p
        self._rows.append(v)
        self._pivots.append(pc)
        return True

    def extend(self, vectors: Sequence[np.ndarray]) -> List[int]:
        """Add vectors in order and return the positions that enlarged the span."""
        return [index for index, vector in enumerate(vectors) if self.add(vector)]
