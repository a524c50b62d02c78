"""
Dense GF(2) linear algebra over bit-packed matrices

Rows are packed into uint8 words with little bit order: column j of a row is
bit (j % 8) of word (j // 8). Bits past the last column are always zero.
Elimination always runs on a scratch copy, so every public operation is a pure
function of its inputs and can be shared by concurrent trial workers.
"""

from typing import Iterable, List, Optional, Sequence, Tuple
import numpy as np

from .exceptions import ContractViolation

WORD_BITS = 8

_POPCOUNT = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)
_PARITY = (_POPCOUNT & 1).astype(np.uint8)


def _words_for(length: int) -> int:
    return (length + WORD_BITS - 1) // WORD_BITS


def _pack(bits: np.ndarray, length: int) -> np.ndarray:
    """Pack the last axis of a 0/1 array into uint8 words"""
    bits = (np.asarray(bits) & 1).astype(np.uint8)
    packed = np.packbits(bits, axis=-1, bitorder="little")
    words = _words_for(length)
    if packed.shape[-1] != words:
        # packbits of a zero-length axis yields zero words
        shape = packed.shape[:-1] + (words,)
        padded = np.zeros(shape, dtype=np.uint8)
        padded[..., : packed.shape[-1]] = packed
        packed = padded
    return packed


def _unpack(words: np.ndarray, length: int) -> np.ndarray:
    return np.unpackbits(words, axis=-1, count=length, bitorder="little")


class BitVector:
    """Immutable GF(2) vector stored as packed words"""

    __slots__ = ("_len", "_data")

    def __init__(self, length: int, data: Optional[np.ndarray] = None):
        if length < 0:
            raise ContractViolation("vector length must be non-negative")
        words = _words_for(length)
        if data is None:
            data = np.zeros(words, dtype=np.uint8)
        else:
            data = np.array(data, dtype=np.uint8, copy=True).reshape(words)
            tail = length % WORD_BITS
            if tail and words:
                data[-1] &= np.uint8((1 << tail) - 1)
        data.flags.writeable = False
        self._len = length
        self._data = data

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(length)

    @classmethod
    def from_array(cls, bits: Iterable[int]) -> "BitVector":
        bits = np.asarray(list(bits) if not isinstance(bits, np.ndarray) else bits).reshape(-1)
        return cls(bits.size, _pack(bits, bits.size))

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> "BitVector":
        bits = np.zeros(length, dtype=np.uint8)
        for index in support:
            if not 0 <= index < length:
                raise ContractViolation(f"support index {index} outside 0..{length - 1}")
            bits[index] = 1
        return cls.from_array(bits)

    @property
    def len(self) -> int:
        return self._len

    @property
    def data(self) -> np.ndarray:
        return self._data

    def __len__(self) -> int:
        return self._len

    def __getitem__(self, index: int) -> int:
        if not -self._len <= index < self._len:
            raise IndexError(index)
        index %= self._len
        return int((self._data[index // WORD_BITS] >> (index % WORD_BITS)) & 1)

    def to_array(self) -> np.ndarray:
        return _unpack(self._data, self._len)

    def support(self) -> List[int]:
        return np.flatnonzero(self.to_array()).tolist()

    def weight(self) -> int:
        return int(_POPCOUNT[self._data].sum())

    def is_zero(self) -> bool:
        return not self._data.any()

    def __xor__(self, other: "BitVector") -> "BitVector":
        if not isinstance(other, BitVector):
            return NotImplemented
        if other._len != self._len:
            raise ContractViolation(f"length mismatch: {self._len} vs {other._len}")
        return BitVector(self._len, self._data ^ other._data)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self._len == other._len and np.array_equal(self._data, other._data)

    def __hash__(self) -> int:
        return hash((self._len, self._data.tobytes()))

    def __repr__(self) -> str:
        bits = "".join(str(b) for b in self.to_array()[:64])
        suffix = "..." if self._len > 64 else ""
        return f"BitVector({self._len}, {bits}{suffix})"


class BitMatrix:
    """Immutable dense GF(2) matrix with bit-packed rows"""

    __slots__ = ("_rows", "_cols", "_data")

    def __init__(self, rows: int, cols: int, data: Optional[np.ndarray] = None):
        if rows < 0 or cols < 0:
            raise ContractViolation("matrix dimensions must be non-negative")
        words = _words_for(cols)
        if data is None:
            data = np.zeros((rows, words), dtype=np.uint8)
        else:
            data = np.array(data, dtype=np.uint8, copy=True).reshape(rows, words)
            tail = cols % WORD_BITS
            if tail and words:
                data[:, -1] &= np.uint8((1 << tail) - 1)
        data.flags.writeable = False
        self._rows = rows
        self._cols = cols
        self._data = data

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, size: int) -> "BitMatrix":
        return cls.from_array(np.eye(size, dtype=np.uint8))

    @classmethod
    def from_array(cls, array) -> "BitMatrix":
        array = np.asarray(array)
        if array.ndim != 2:
            if array.size == 0:
                array = array.reshape(0, 0)
            else:
                raise ContractViolation(f"expected a 2-D array, got shape {array.shape}")
        rows, cols = array.shape
        return cls(rows, cols, _pack(array, cols))

    @classmethod
    def from_rows(cls, rows: Sequence[BitVector], cols: Optional[int] = None) -> "BitMatrix":
        if not rows:
            return cls(0, cols or 0)
        width = rows[0].len
        if any(row.len != width for row in rows):
            raise ContractViolation("rows have different lengths")
        return cls(len(rows), width, np.stack([row.data for row in rows]))

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self) -> Tuple[int, int]:
        return self._rows, self._cols

    @property
    def data(self) -> np.ndarray:
        return self._data

    def to_array(self) -> np.ndarray:
        return _unpack(self._data, self._cols).reshape(self._rows, self._cols)

    def row(self, index: int) -> BitVector:
        return BitVector(self._cols, self._data[index])

    def get(self, row: int, col: int) -> int:
        return int((self._data[row, col // WORD_BITS] >> (col % WORD_BITS)) & 1)

    def count_ones(self) -> int:
        return int(_POPCOUNT[self._data].sum())

    def column_weights(self) -> np.ndarray:
        return self.to_array().sum(axis=0).astype(np.int64)

    def row_weights(self) -> np.ndarray:
        return _POPCOUNT[self._data].sum(axis=1).astype(np.int64)

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_array(self.to_array().T)

    def append_row(self, vector: BitVector) -> "BitMatrix":
        if vector.len != self._cols:
            raise ContractViolation(f"row length {vector.len} does not match {self._cols} columns")
        return BitMatrix(self._rows + 1, self._cols, np.vstack([self._data, vector.data[None, :]]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self._data, other._data)

    def __hash__(self) -> int:
        return hash((self._rows, self._cols, self._data.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self._rows}x{self._cols}, ones={self.count_ones()})"


def _eliminate(
    data: np.ndarray,
    columns: Iterable[int],
    rhs: Optional[np.ndarray] = None,
) -> List[int]:
    """
    Reduce `data` in place to reduced row-echelon form on the visited columns

    Pivot for each column is the lowest-index uneliminated row with a one there.
    `rhs` (one byte per row) is carried along as the augmented column.
    Returns the pivot columns in pivot-row order.
    """
    n_rows = data.shape[0]
    pivots: List[int] = []
    r = 0
    for col in columns:
        if r == n_rows:
            break
        word, bit = divmod(col, WORD_BITS)
        column = (data[:, word] >> bit) & 1
        candidates = np.flatnonzero(column[r:])
        if candidates.size == 0:
            continue
        p = r + int(candidates[0])
        if p != r:
            data[[r, p]] = data[[p, r]]
            if rhs is not None:
                rhs[[r, p]] = rhs[[p, r]]
            column[[r, p]] = column[[p, r]]
        mask = column.astype(bool)
        mask[r] = False
        if mask.any():
            data[mask] ^= data[r]
            if rhs is not None:
                rhs[mask] ^= rhs[r]
        pivots.append(col)
        r += 1
    return pivots


def row_reduce(matrix: BitMatrix) -> Tuple[BitMatrix, List[int]]:
    """Return the reduced row-echelon basis (nonzero rows only) and its pivot columns"""
    scratch = np.array(matrix.data, copy=True)
    pivots = _eliminate(scratch, range(matrix.cols))
    return BitMatrix(len(pivots), matrix.cols, scratch[: len(pivots)]), pivots


def rank(matrix: BitMatrix) -> int:
    """GF(2) rank; the input is not mutated"""
    if matrix.rows == 0 or matrix.cols == 0:
        return 0
    scratch = np.array(matrix.data, copy=True)
    return len(_eliminate(scratch, range(matrix.cols)))


def mul_vec(matrix: BitMatrix, vector: BitVector) -> BitVector:
    """M·v over GF(2)"""
    if vector.len != matrix.cols:
        raise ContractViolation(f"vector length {vector.len} does not match {matrix.cols} columns")
    if matrix.rows == 0:
        return BitVector(0)
    if matrix.cols == 0:
        return BitVector(matrix.rows)
    products = matrix.data & vector.data[None, :]
    folded = np.bitwise_xor.reduce(products, axis=1)
    return BitVector.from_array(_PARITY[folded])


def mul_transpose(a: BitMatrix, b: BitMatrix) -> np.ndarray:
    """Dense 0/1 array of A·Bᵀ over GF(2)"""
    if a.cols != b.cols:
        raise ContractViolation(f"column mismatch: {a.cols} vs {b.cols}")
    left = a.to_array().astype(np.int64)
    right = b.to_array().astype(np.int64)
    return ((left @ right.T) & 1).astype(np.uint8)


def reduces_to_zero(basis: BitMatrix, pivots: Sequence[int], vector: BitVector) -> bool:
    """Membership test against a basis already in reduced row-echelon form (see row_reduce)"""
    if vector.len != basis.cols:
        raise ContractViolation(f"vector length {vector.len} does not match {basis.cols} columns")
    residual = np.array(vector.data, copy=True)
    for row, col in enumerate(pivots):
        word, bit = divmod(col, WORD_BITS)
        if (residual[word] >> bit) & 1:
            residual ^= basis.data[row]
    return not residual.any()


def in_rowspace(matrix: BitMatrix, vector: BitVector) -> bool:
    """True iff `vector` is a GF(2) combination of the rows of `matrix`"""
    if vector.len != matrix.cols:
        raise ContractViolation(f"vector length {vector.len} does not match {matrix.cols} columns")
    if vector.is_zero():
        return True
    basis, pivots = row_reduce(matrix)
    return reduces_to_zero(basis, pivots, vector)


def solve_consistent(
    matrix: BitMatrix,
    rhs: BitVector,
    pivot_order: Sequence[int],
) -> Optional[BitVector]:
    """
    Solve M·x = b choosing pivot columns greedily in `pivot_order`

    Returns the solution with every non-pivot coordinate zero, or None when the
    system is inconsistent.
    """
    if rhs.len != matrix.rows:
        raise ContractViolation(f"right-hand side length {rhs.len} does not match {matrix.rows} rows")
    order = [int(c) for c in pivot_order]
    if sorted(order) != list(range(matrix.cols)):
        raise ContractViolation("pivot_order must be a permutation of the column indices")

    scratch = np.array(matrix.data, copy=True)
    augmented = rhs.to_array().astype(np.uint8)
    pivots = _eliminate(scratch, order, augmented)

    if augmented[len(pivots):].any():
        return None
    solution = np.zeros(matrix.cols, dtype=np.uint8)
    for row, col in enumerate(pivots):
        solution[col] = augmented[row]
    return BitVector.from_array(solution)
