"""Sparse matrices of polynomials, stored column by column."""

from __future__ import annotations

from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from src.services.errors import PreconditionError
from src.services.ring.polynomial import Polynomial, PolynomialRing


class PolyMatrix:
    """An ``nrows x ncols`` matrix over R; column c is the image of the c-th source generator."""

    __slots__ = ("ring", "nrows", "ncols", "_cols")

    def __init__(
        self,
        ring: PolynomialRing,
        nrows: int,
        ncols: int,
        entries: Optional[Mapping[Tuple[int, int], Polynomial]] = None,
    ):
        self.ring = ring
        self.nrows = nrows
        self.ncols = ncols
        self._cols: Dict[int, Dict[int, Polynomial]] = {}
        for (row, col), value in (entries or {}).items():
            if not (0 <= row < nrows and 0 <= col < ncols):
                raise PreconditionError(f"entry ({row}, {col}) outside a {nrows}x{ncols} matrix")
            if not value.is_zero():
                self._cols.setdefault(col, {})[row] = value

    @classmethod
    def zeros(cls, ring: PolynomialRing, nrows: int, ncols: int) -> "PolyMatrix":
        return cls(ring, nrows, ncols)

    @classmethod
    def identity(cls, ring: PolynomialRing, size: int) -> "PolyMatrix":
        return cls(ring, size, size, {(i, i): ring.one() for i in range(size)})

    @classmethod
    def from_columns(cls, ring: PolynomialRing, nrows: int, columns: Sequence[Sequence[Polynomial]]) -> "PolyMatrix":
        entries = {
            (row, col): value
            for col, column in enumerate(columns)
            for row, value in enumerate(column)
            if not value.is_zero()
        }
        return cls(ring, nrows, len(columns), entries)

    @classmethod
    def from_rows(cls, ring: PolynomialRing, rows: Sequence[Sequence[Polynomial]], ncols: int) -> "PolyMatrix":
        entries = {
            (row, col): value
            for row, values in enumerate(rows)
            for col, value in enumerate(values)
            if not value.is_zero()
        }
        return cls(ring, len(rows), ncols, entries)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, key: Tuple[int, int]) -> Polynomial:
        row, col = key
        return self._cols.get(col, {}).get(row) or self.ring.zero()

    def items(self) -> Iterator[Tuple[Tuple[int, int], Polynomial]]:
        for col in sorted(self._cols):
            column = self._cols[col]
            for row in sorted(column):
                yield (row, col), column[row]

    def column_entries(self, col: int) -> Mapping[int, Polynomial]:
        return self._cols.get(col, {})

    def column(self, col: int) -> List[Polynomial]:
        zero = self.ring.zero()
        entries = self._cols.get(col, {})
        return [entries.get(row, zero) for row in range(self.nrows)]

    def columns(self) -> List[List[Polynomial]]:
        return [self.column(col) for col in range(self.ncols)]

    def row_entries(self, row: int) -> Dict[int, Polynomial]:
        return {col: column[row] for col, column in self._cols.items() if row in column}

    def is_zero(self) -> bool:
        return not self._cols

    def apply(self, vector: Sequence[Polynomial]) -> List[Polynomial]:
        if len(vector) != self.ncols:
            raise PreconditionError("vector length does not match the matrix")
        result = [self.ring.zero() for _ in range(self.nrows)]
        for col, coefficient in enumerate(vector):
            if coefficient.is_zero():
                continue
            for row, value in self._cols.get(col, {}).items():
                result[row] = result[row] + value * coefficient
        return result

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ncols != other.nrows:
            raise PreconditionError(f"cannot compose {self.shape} with {other.shape}")
        entries: Dict[Tuple[int, int], Polynomial] = {}
        for col, column in other._cols.items():
            for middle, value in column.items():
                for row, left in self._cols.get(middle, {}).items():
                    key = (row, col)
                    entries[key] = entries[key] + left * value if key in entries else left * value
        return PolyMatrix(self.ring, self.nrows, other.ncols, entries)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise PreconditionError("matrix shapes differ")
        entries = dict(self.items())
        for key, value in other.items():
            entries[key] = entries[key] + value if key in entries else value
        return PolyMatrix(self.ring, self.nrows, self.ncols, entries)

    def __neg__(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, self.nrows, self.ncols, {key: -value for key, value in self.items()})

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and dict(self.items()) == dict(other.items())

    __hash__ = None  # type: ignore[assignment]

    def scale(self, scalar: int) -> "PolyMatrix":
        return PolyMatrix(self.ring, self.nrows, self.ncols, {key: value.scale(scalar) for key, value in self.items()})

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, self.ncols, self.nrows, {(col, row): value for (row, col), value in self.items()})

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        row_index = {row: i for i, row in enumerate(rows)}
        entries = {}
        for j, col in enumerate(cols):
            for row, value in self._cols.get(col, {}).items():
                if row in row_index:
                    entries[(row_index[row], j)] = value
        return PolyMatrix(self.ring, len(rows), len(cols), entries)

    def delete_row(self, row: int) -> "PolyMatrix":
        return self.submatrix([r for r in range(self.nrows) if r != row], list(range(self.ncols)))

    def delete_column(self, col: int) -> "PolyMatrix":
        return self.submatrix(list(range(self.nrows)), [c for c in range(self.ncols) if c != col])

    def unit_positions(self) -> List[Tuple[int, int]]:
        """Positions of nonzero constant entries, columns left to right, rows top to bottom."""
        return [key for key, value in self.items() if value.is_constant()]

    def has_unit_entry(self) -> bool:
        return any(value.is_constant() for _, value in self.items())

    def eliminate_unit(self, row: int, col: int) -> "PolyMatrix":
        """Schur complement after splitting off the unit entry at ``(row, col)``."""
        pivot = self[row, col]
        if pivot.is_zero() or not pivot.is_constant():
            raise PreconditionError(f"entry ({row}, {col}) is not a unit")
        inverse = self.ring.field.inverse(pivot.constant_term())
        pivot_row = self.row_entries(row)
        entries: Dict[Tuple[int, int], Polynomial] = dict(self.items())
        for a, left in self._cols.get(col, {}).items():
            if a == row:
                continue
            factor = left.scale(inverse)
            for b, right in pivot_row.items():
                if b == col:
                    continue
                key = (a, b)
                update = factor * right
                entries[key] = entries[key] - update if key in entries else -update
        reduced = PolyMatrix(self.ring, self.nrows, self.ncols, entries)
        return reduced.delete_row(row).delete_column(col)

    @staticmethod
    def block(ring: PolynomialRing, blocks: Sequence[Sequence[Optional["PolyMatrix"]]], row_sizes: Sequence[int], col_sizes: Sequence[int]) -> "PolyMatrix":
        """Assemble a block matrix; ``None`` stands for a zero block."""
        entries: Dict[Tuple[int, int], Polynomial] = {}
        row_offset = 0
        for i, block_row in enumerate(blocks):
            col_offset = 0
            for j, piece in enumerate(block_row):
                if piece is not None:
                    if piece.shape != (row_sizes[i], col_sizes[j]):
                        raise PreconditionError(f"block ({i}, {j}) has shape {piece.shape}")
                    for (row, col), value in piece.items():
                        entries[(row_offset + row, col_offset + col)] = value
                col_offset += col_sizes[j]
            row_offset += row_sizes[i]
        return PolyMatrix(ring, sum(row_sizes), sum(col_sizes), entries)

    def __repr__(self) -> str:
        return f"PolyMatrix({self.nrows}x{self.ncols}, nnz={sum(len(c) for c in self._cols.values())})"
