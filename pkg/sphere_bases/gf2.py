"""Bit-packed linear algebra over GF(2).

Rows are packed into little-endian uint64 lanes so that a row operation is a
single vectorised XOR over ``ceil(cols / 64)`` words.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence

import numpy as np

from .errors import ConsistencyError, DomainError


logger = logging.getLogger(__name__)

WORD = 64
ONE = np.uint64(1)
LANE = np.dtype("<u8")


def _nwords(cols: int) -> int:
    return max(1, (cols + WORD - 1) // WORD)


def _pack(dense: np.ndarray) -> np.ndarray:
    rows, cols = dense.shape
    width = _nwords(cols) * WORD
    padded = np.zeros((rows, width), dtype=np.uint8)
    padded[:, :cols] = dense.astype(bool)
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view(LANE)


def _unpack(words: np.ndarray, cols: int) -> np.ndarray:
    raw = np.ascontiguousarray(words).view(np.uint8)
    return np.unpackbits(raw, axis=1, bitorder="little")[:, :cols].astype(bool)


def _column_bits(words: np.ndarray, col: int) -> np.ndarray:
    w, b = divmod(col, WORD)
    return ((words[:, w] >> np.uint64(b)) & ONE).astype(bool)


def _row_reduce(words: np.ndarray, limit: int, full: bool = True) -> tuple[np.ndarray, list[int]]:
    """Gauss-Jordan elimination on a copy; pivots only in columns < limit.

    The pivot for each column is the lowest-index row still available. With
    ``full`` the result is in reduced row echelon form, otherwise only the rows
    below each pivot are cleared.
    """
    work = words.copy()
    nrows = work.shape[0]
    pivots: list[int] = []
    row = 0
    for col in range(limit):
        if row == nrows:
            break
        below = _column_bits(work[row:], col)
        hits = np.flatnonzero(below)
        if hits.size == 0:
            continue
        pivot = row + int(hits[0])
        if pivot != row:
            work[[row, pivot]] = work[[pivot, row]]
        mask = _column_bits(work, col)
        mask[row] = False
        if not full:
            mask[:row] = False
        work[mask] ^= work[row]
        pivots.append(col)
        row += 1
    return work, pivots


class Gf2Matrix:
    __slots__ = ("rows", "cols", "_words")

    def __init__(self, rows: int, cols: int, words: np.ndarray | None = None) -> None:
        if rows < 0 or cols < 0:
            raise DomainError(f"bad matrix shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        if words is None:
            words = np.zeros((rows, _nwords(cols)), dtype=LANE)
        elif words.shape != (rows, _nwords(cols)):
            raise DomainError(f"packed storage {words.shape} does not match {rows}x{cols}")
        self._words = words
        self._words.flags.writeable = False

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]] | np.ndarray) -> Gf2Matrix:
        array = np.asarray(dense, dtype=np.int64)
        if array.ndim != 2:
            raise DomainError("expected a two-dimensional array")
        rows, cols = array.shape
        return cls(rows, cols, _pack(array & 1))

    @classmethod
    def from_columns(cls, rows: int, supports: Iterable[Iterable[int]]) -> Gf2Matrix:
        """Build from the row-index support of each column."""
        supports = [list(s) for s in supports]
        dense = np.zeros((rows, len(supports)), dtype=np.uint8)
        for col, support in enumerate(supports):
            for row in support:
                dense[row, col] ^= 1
        return cls(rows, len(supports), _pack(dense))

    @classmethod
    def identity(cls, n: int) -> Gf2Matrix:
        return cls.from_dense(np.eye(n, dtype=np.int64))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, index: tuple[int, int]) -> int:
        r, c = index
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise DomainError(f"index {index} outside {self.rows}x{self.cols}")
        w, b = divmod(c, WORD)
        return int((self._words[r, w] >> np.uint64(b)) & ONE)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Gf2Matrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._words, other._words))

    def __repr__(self) -> str:
        return f"Gf2Matrix({self.rows}x{self.cols})"

    def to_dense(self) -> np.ndarray:
        if self.rows == 0:
            return np.zeros((0, self.cols), dtype=bool)
        return _unpack(self._words, self.cols)

    def transpose(self) -> Gf2Matrix:
        return Gf2Matrix.from_dense(self.to_dense().T.astype(np.int64))

    def take_columns(self, columns: Sequence[int]) -> Gf2Matrix:
        return Gf2Matrix.from_dense(self.to_dense()[:, list(columns)].astype(np.int64))

    def with_column(self, b: np.ndarray) -> Gf2Matrix:
        return Gf2Matrix.from_dense(np.column_stack([self.to_dense(), b]).astype(np.int64))

    def matvec(self, x: Sequence[int] | np.ndarray) -> np.ndarray:
        vector = _as_bits(x, self.cols, "vector")
        result = np.zeros(self.rows, dtype=bool)
        for col in np.flatnonzero(vector):
            result ^= _column_bits(self._words, int(col))
        return result

    def dump(self) -> str:
        return "\n".join("".join("1" if bit else "0" for bit in row) for row in self.to_dense())


def _as_bits(vector: Sequence[int] | np.ndarray, length: int, what: str) -> np.ndarray:
    array = np.asarray(vector, dtype=np.int64).reshape(-1)
    if array.size != length:
        raise DomainError(f"{what} has length {array.size}, expected {length}")
    return (array & 1).astype(bool)


def rank(matrix: Gf2Matrix) -> int:
    if matrix.rows == 0 or matrix.cols == 0:
        return 0
    _, pivots = _row_reduce(matrix._words, matrix.cols, full=False)
    logger.debug("rank of %dx%d matrix = %d", matrix.rows, matrix.cols, len(pivots))
    return len(pivots)


def reduce(matrix: Gf2Matrix, b: Sequence[int] | np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split ``b`` as ``matrix @ x + residual``; the residual is zero iff b is in the column space."""
    target = _as_bits(b, matrix.rows, "right-hand side")
    x = np.zeros(matrix.cols, dtype=bool)
    if matrix.cols and matrix.rows:
        augmented = matrix.with_column(target)
        reduced, pivots = _row_reduce(augmented._words, matrix.cols)
        rhs = _column_bits(reduced, matrix.cols)
        for row, col in enumerate(pivots):
            x[col] = rhs[row]
    residual = target ^ matrix.matvec(x)
    return x, residual


def solve(matrix: Gf2Matrix, b: Sequence[int] | np.ndarray) -> np.ndarray | None:
    """One solution of ``matrix @ x = b``, or None when the system is inconsistent."""
    x, residual = reduce(matrix, b)
    if residual.any():
        return None
    if not np.array_equal(matrix.matvec(x), _as_bits(b, matrix.rows, "right-hand side")):
        raise ConsistencyError("solution failed re-multiplication")
    return x


def kernel_basis(matrix: Gf2Matrix) -> list[np.ndarray]:
    if matrix.cols == 0:
        return []
    if matrix.rows == 0:
        return [np.eye(matrix.cols, dtype=bool)[c] for c in range(matrix.cols)]
    reduced, pivots = _row_reduce(matrix._words, matrix.cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(matrix.cols):
        if free in pivot_set:
            continue
        vector = np.zeros(matrix.cols, dtype=bool)
        vector[free] = True
        column = _column_bits(reduced, free)
        for row, col in enumerate(pivots):
            if column[row]:
                vector[col] = True
        basis.append(vector)
    return basis
