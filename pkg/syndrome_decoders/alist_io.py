"""
MacKay alist reader/writer for parity-check matrices

Layout: "n m", "max_col_weight max_row_weight", the n column weights, the m
row weights, then n lines of 1-based row indices (one line per column) and m
lines of 1-based column indices (one line per row). Index lines may be padded
with zeros up to the maximum weight; padding is ignored. A weight-zero column
or row may appear as a blank line.
"""

from pathlib import Path
from typing import List, Optional, Tuple, Union
import logging
import numpy as np

from .exceptions import AlistParseError
from .gf2 import BitMatrix

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class _LineReader:
    """Cursor over the integer tokens of each physical line"""

    def __init__(self, path: PathLike):
        self.path = str(path)
        self.lines: List[Tuple[int, Optional[List[int]]]] = []
        with open(path, "r") as f:
            for number, raw in enumerate(f, start=1):
                tokens = raw.split()
                try:
                    self.lines.append((number, [int(t) for t in tokens] if tokens else None))
                except ValueError:
                    raise AlistParseError(f"non-integer token in {raw.strip()!r}", number, self.path)
        self.cursor = 0

    def error(self, message: str, line_number: int) -> AlistParseError:
        return AlistParseError(message, line_number, self.path)

    def at_end(self) -> bool:
        return all(tokens is None for _, tokens in self.lines[self.cursor:])

    def take(self, expected: str, allow_blank: bool = False) -> Tuple[int, List[int]]:
        while self.cursor < len(self.lines):
            number, tokens = self.lines[self.cursor]
            self.cursor += 1
            if tokens is not None:
                return number, tokens
            if allow_blank:
                return number, []
        last = self.lines[-1][0] + 1 if self.lines else 1
        raise self.error(f"unexpected end of file, expected {expected}", last)


def _index_entries(reader: _LineReader, what: str, weight: int, bound: int) -> Tuple[int, List[int]]:
    number, entries = reader.take(what, allow_blank=weight == 0)
    indices = [e for e in entries if e != 0]
    if len(indices) != weight:
        raise reader.error(f"{what} declares weight {weight} but lists {len(indices)} entries", number)
    for index in indices:
        if not 1 <= index <= bound:
            raise reader.error(f"index {index} in {what} outside 1..{bound}", number)
    if len(set(indices)) != len(indices):
        raise reader.error(f"repeated index in {what}", number)
    return number, indices


def load_alist(path: PathLike) -> BitMatrix:
    """Parse an alist file into a BitMatrix (rows = checks, columns = variables)"""
    reader = _LineReader(path)

    number, header = reader.take("dimensions 'n m'")
    if len(header) != 2 or min(header) < 0:
        raise reader.error("first line must hold two non-negative integers 'n m'", number)
    n, m = header

    number, maxima = reader.take("maximum weights")
    if len(maxima) != 2:
        raise reader.error("second line must hold 'max_col_weight max_row_weight'", number)
    max_col, max_row = maxima

    col_line, col_weights = reader.take("column weights") if n else (number, [])
    if len(col_weights) != n:
        raise reader.error(f"expected {n} column weights, found {len(col_weights)}", col_line)
    row_line, row_weights = reader.take("row weights") if m else (col_line, [])
    if len(row_weights) != m:
        raise reader.error(f"expected {m} row weights, found {len(row_weights)}", row_line)

    if max(col_weights, default=0) != max_col:
        raise reader.error(
            f"declared max column weight {max_col} but largest column weight is {max(col_weights, default=0)}",
            col_line,
        )
    if max(row_weights, default=0) != max_row:
        raise reader.error(
            f"declared max row weight {max_row} but largest row weight is {max(row_weights, default=0)}",
            row_line,
        )
    if sum(col_weights) != sum(row_weights):
        raise reader.error("column and row weights have different totals", row_line)

    dense = np.zeros((m, n), dtype=np.uint8)
    for col in range(n):
        _, indices = _index_entries(reader, f"column {col + 1}", col_weights[col], m)
        dense[[i - 1 for i in indices], col] = 1

    if m and reader.at_end():
        logger.warning(f"{path}: alist has no row section; matrix rebuilt from columns only")
        return BitMatrix.from_array(dense)

    for row in range(m):
        number, indices = _index_entries(reader, f"row {row + 1}", row_weights[row], n)
        if sorted(indices) != (np.flatnonzero(dense[row]) + 1).tolist():
            raise reader.error(f"row {row + 1} disagrees with the column section", number)

    if not reader.at_end():
        number, _ = reader.take("end of file")
        raise reader.error("trailing data after row section", number)

    return BitMatrix.from_array(dense)


def save_alist(matrix: BitMatrix, path: PathLike, pad: bool = True) -> None:
    """Write a BitMatrix in alist format; `pad` zero-fills index lines to the max weight"""
    dense = matrix.to_array()
    m, n = dense.shape
    col_weights = dense.sum(axis=0).astype(int).tolist()
    row_weights = dense.sum(axis=1).astype(int).tolist()
    max_col = max(col_weights, default=0)
    max_row = max(row_weights, default=0)

    def index_line(indices: List[int], width: int) -> str:
        values = [i + 1 for i in indices]
        if pad:
            values += [0] * (width - len(values))
        return " ".join(str(v) for v in values)

    out = [f"{n} {m}", f"{max_col} {max_row}"]
    if n:
        out.append(" ".join(str(w) for w in col_weights))
    if m:
        out.append(" ".join(str(w) for w in row_weights))
    out += [index_line(np.flatnonzero(dense[:, j]).tolist(), max_col) for j in range(n)]
    out += [index_line(np.flatnonzero(dense[i]).tolist(), max_row) for i in range(m)]
    with open(path, "w") as f:
        f.write("\n".join(out) + "\n")
