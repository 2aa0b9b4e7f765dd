"""Matrix files: decimal CSV and a small binary container.

Binary layout (little-endian)::

    offset  size  field
    0       4     magic b"TWSP"
    4       1     format version (1)
    5       4     uint32 row count
    9       4     uint32 column count
    13      8*r*c float64 entries, row-major
"""

from __future__ import annotations

import csv
import struct
from pathlib import Path

import numpy as np

from ._validation import check_matrix

__all__ = ["read_matrix", "write_matrix", "read_csv", "write_csv", "read_bin", "write_bin", "guess_format"]

MAGIC = b"TWSP"
VERSION = 1
_HEADER = struct.Struct("<4sBII")


class MatrixFormatError(ValueError):
    pass


def guess_format(path) -> str:
    return "bin" if Path(path).suffix.lower() in (".bin", ".twsp") else "csv"


def write_csv(path, X) -> None:
    X = check_matrix(X)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        for row in X:
            # repr gives the shortest string that round-trips exactly
            writer.writerow([repr(float(v)) for v in row])


def read_csv(path, header: bool = False) -> np.ndarray:
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        if header:
            next(reader, None)
        for lineno, row in enumerate(reader, start=2 if header else 1):
            if not row or all(not cell.strip() for cell in row):
                continue
            try:
                rows.append([float(cell) for cell in row])
            except ValueError as exc:
                raise MatrixFormatError(f"{path}:{lineno}: {exc}") from None
    if not rows:
        raise MatrixFormatError(f"{path}: no data rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise MatrixFormatError(f"{path}: ragged rows")
    return check_matrix(rows)


def write_bin(path, X) -> None:
    X = check_matrix(X)
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, VERSION, X.shape[0], X.shape[1]))
        fh.write(X.astype("<f8").tobytes(order="C"))


def read_bin(path) -> np.ndarray:
    data = Path(path).read_bytes()
    if len(data) < _HEADER.size:
        raise MatrixFormatError(f"{path}: truncated header")
    magic, version, n, m = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise MatrixFormatError(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise MatrixFormatError(f"{path}: unsupported version {version}")
    expected = _HEADER.size + 8 * n * m
    if len(data) != expected:
        raise MatrixFormatError(f"{path}: expected {expected} bytes, found {len(data)}")
    X = np.frombuffer(data, dtype="<f8", offset=_HEADER.size).reshape(n, m)
    return check_matrix(X.astype(np.float64), copy=True)


def read_matrix(path, fmt: str | None = None, header: bool = False) -> np.ndarray:
    fmt = fmt or guess_format(path)
    if fmt == "csv":
        return read_csv(path, header=header)
    if fmt == "bin":
        return read_bin(path)
    raise ValueError(f"unknown matrix format {fmt!r}")


def write_matrix(path, X, fmt: str | None = None) -> None:
    fmt = fmt or guess_format(path)
    if fmt == "csv":
        write_csv(path, X)
    elif fmt == "bin":
        write_bin(path, X)
    else:
        raise ValueError(f"unknown matrix format {fmt!r}")
