"""Matrix file I/O: CSV and a raw little-endian float64 format.

CSV uses '.' decimals, comma separators, no header unless asked for, and
17 significant digits so doubles survive a write/read round trip exactly.

The raw format is: magic "RFFM", then row count and column count as
little-endian uint32, then the n*d float64 payload little-endian in
row-major order.  Malformed files raise MatrixFormatError carrying the
byte offset where the file stopped making sense.
"""

from __future__ import annotations

import struct
import warnings
from contextlib import contextmanager
from os import PathLike

import numpy as np

__all__ = [
    "MAGIC",
    "FORMATS",
    "MatrixFormatError",
    "read_matrix",
    "write_matrix",
    "read_csv",
    "write_csv",
    "read_raw",
    "write_raw",
]

MAGIC = b"RFFM"
FORMATS = ("csv", "raw-f64")

_HEADER = struct.Struct("<4sII")


class MatrixFormatError(ValueError):
    """Unreadable matrix file; offset is the byte position of the problem."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


def _check_matrix(data) -> np.ndarray:
    arr = np.asarray(data, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2-d matrix, got shape {arr.shape}")
    return arr


@contextmanager
def _opened(src, mode: str):
    if isinstance(src, (str, PathLike)):
        with open(src, mode) as handle:
            yield handle
    else:
        yield src


def write_csv(dest, data, header: bool = False) -> None:
    """Write a matrix as CSV with 17 significant digits per value."""
    arr = _check_matrix(data)
    with _opened(dest, "w") as out:
        if header:
            out.write(",".join(f"c{j}" for j in range(arr.shape[1])) + "\n")
        for row in arr:
            out.write(",".join(format(v, ".17g") for v in row) + "\n")


def read_csv(src, header: bool = False) -> np.ndarray:
    """Read a CSV matrix; raises MatrixFormatError on ragged or empty input."""
    with _opened(src, "r") as handle:
        try:
            with warnings.catch_warnings():
                # empty input warns before we can turn it into an error
                warnings.simplefilter("ignore", UserWarning)
                arr = np.loadtxt(handle, delimiter=",", skiprows=1 if header else 0, ndmin=2)
        except ValueError as exc:
            raise MatrixFormatError(f"unreadable CSV matrix: {exc}") from exc
    if arr.size == 0:
        raise MatrixFormatError("CSV matrix has no rows")
    return arr


def write_raw(dest, data) -> None:
    """Write the raw-f64 format: magic, u32 n, u32 d, row-major f64 payload."""
    arr = _check_matrix(data)
    n, d = arr.shape
    if n >= 1 << 32 or d >= 1 << 32:
        raise ValueError(f"matrix shape {arr.shape} does not fit u32 header fields")
    with _opened(dest, "wb") as out:
        out.write(_HEADER.pack(MAGIC, n, d))
        out.write(np.ascontiguousarray(arr, dtype="<f8").tobytes())


def read_raw(src) -> np.ndarray:
    """Read the raw-f64 format, validating magic, header, and payload size."""
    with _opened(src, "rb") as handle:
        buf = handle.read()
    if len(buf) < _HEADER.size:
        raise MatrixFormatError(
            f"truncated header: need {_HEADER.size} bytes, file has {len(buf)}", offset=len(buf)
        )
    magic, n, d = _HEADER.unpack_from(buf)
    if magic != MAGIC:
        raise MatrixFormatError(f"bad magic {magic!r}, expected {MAGIC!r}", offset=0)
    if n < 1 or d < 1:
        raise MatrixFormatError(f"header declares empty matrix {n}x{d}", offset=4)
    expected = _HEADER.size + 8 * n * d
    if len(buf) < expected:
        raise MatrixFormatError(
            f"payload ends early: {n}x{d} matrix needs {expected} bytes, file has {len(buf)}",
            offset=len(buf),
        )
    if len(buf) > expected:
        raise MatrixFormatError(
            f"trailing bytes after {n}x{d} payload: expected {expected} bytes, file has {len(buf)}",
            offset=expected,
        )
    return np.frombuffer(buf, dtype="<f8", offset=_HEADER.size).astype(np.float64).reshape(n, d)


def write_matrix(dest, data, fmt: str = "csv", header: bool = False) -> None:
    """Write a matrix in the named format ("csv" or "raw-f64")."""
    if fmt == "csv":
        write_csv(dest, data, header=header)
    elif fmt == "raw-f64":
        write_raw(dest, data)
    else:
        raise ValueError(f"unknown matrix format {fmt!r}; choose from {FORMATS}")


def read_matrix(src, fmt: str = "csv", header: bool = False) -> np.ndarray:
    """Read a matrix in the named format ("csv" or "raw-f64")."""
    if fmt == "csv":
        return read_csv(src, header=header)
    if fmt == "raw-f64":
        return read_raw(src)
    raise ValueError(f"unknown matrix format {fmt!r}; choose from {FORMATS}")
