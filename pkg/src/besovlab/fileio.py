"""Binary containers for sampled functions (``BSVF``) and wavelet coefficients (``BSVW``), plus CSV export.

Both containers start with a 4-byte magic and little-endian ``u32`` fields
``version, d, W, r``.  ``BSVF`` follows with ``N^d`` float64 samples in
row-major order.  ``BSVW`` follows with ``u32 nblocks``, a table of
``(i32 level, u32 orientation, u32 count)`` entries (level ``-1`` is the
scaling block) and then the blocks' float64 payloads in table order.
"""

from __future__ import annotations

import csv
import struct
from pathlib import Path

import numpy as np

from .errors import FormatError, GridError
from .grid import Grid, SampledFunction
from .wavelet import WaveletCoeffs

__all__ = ["write_function", "read_function", "write_coeffs", "read_coeffs", "export_csv"]

VERSION = 1
_HEADER = struct.Struct("<4sIIII")
_ENTRY = struct.Struct("<iII")
_F64 = np.dtype("<f8")


def _header(magic, grid):
    return _HEADER.pack(magic, VERSION, grid.d, grid.W, grid.r)


def _parse_header(buf, magic):
    if len(buf) < _HEADER.size:
        raise FormatError(f"truncated header: {len(buf)} bytes, need {_HEADER.size}")
    got, version, d, W, r = _HEADER.unpack_from(buf)
    if got != magic:
        raise FormatError(f"bad magic {got!r}, expected {magic!r}")
    if version != VERSION:
        raise FormatError(f"unsupported version {version}")
    if d not in (1, 2):
        raise FormatError(f"unsupported dimension d={d}")
    N = W * 2**r if r < 64 else 0
    if W == 0 or N & (N - 1):
        raise FormatError(f"N = W*2^r = {W}*2^{r} is not a power of two")
    try:
        return Grid(d, W, r)
    except GridError as exc:
        raise FormatError(str(exc)) from exc


def write_function(f, path):
    data = _header(b"BSVF", f.grid) + np.ascontiguousarray(f.values, dtype=_F64).tobytes()
    Path(path).write_bytes(data)


def read_function(path):
    buf = Path(path).read_bytes()
    grid = _parse_header(buf, b"BSVF")
    need = grid.size * 8
    payload = buf[_HEADER.size :]
    if len(payload) != need:
        raise FormatError(f"payload has {len(payload)} bytes, grid {grid} needs {need}")
    values = np.frombuffer(payload, dtype=_F64).astype(np.float64)
    try:
        return SampledFunction(grid, values)
    except GridError as exc:
        raise FormatError(str(exc)) from exc


def _blocks(coeffs):
    yield -1, 0, coeffs.scaling
    for j, blk in enumerate(coeffs.details):
        if coeffs.grid.d == 1:
            yield j, 1, blk
        else:
            for i in range(blk.shape[0]):
                yield j, i + 1, blk[i]


def write_coeffs(coeffs, path):
    blocks = list(_blocks(coeffs))
    parts = [_header(b"BSVW", coeffs.grid), struct.pack("<I", len(blocks))]
    parts += [_ENTRY.pack(j, i, b.size) for j, i, b in blocks]
    parts += [np.ascontiguousarray(b, dtype=_F64).tobytes() for _, _, b in blocks]
    Path(path).write_bytes(b"".join(parts))


def read_coeffs(path):
    buf = Path(path).read_bytes()
    grid = _parse_header(buf, b"BSVW")
    off = _HEADER.size
    if len(buf) < off + 4:
        raise FormatError("truncated block count")
    (nblocks,) = struct.unpack_from("<I", buf, off)
    off += 4
    if len(buf) < off + nblocks * _ENTRY.size:
        raise FormatError("truncated index table")
    table = [_ENTRY.unpack_from(buf, off + n * _ENTRY.size) for n in range(nblocks)]
    off += nblocks * _ENTRY.size
    out = WaveletCoeffs.zeros(grid)
    expected = {(j, i): b.size for j, i, b in _blocks(out)}
    if sorted(expected) != sorted((j, i) for j, i, _ in table):
        raise FormatError(f"index table does not match the level layout of grid {grid}")
    if len(buf) - off != 8 * sum(c for _, _, c in table):
        raise FormatError("payload size does not match the index table")
    for j, i, count in table:
        if count != expected[(j, i)]:
            raise FormatError(f"block (level {j}, orientation {i}) has {count} entries, expected {expected[(j, i)]}")
        vals = np.frombuffer(buf, dtype=_F64, count=count, offset=off)
        off += 8 * count
        if j < 0:
            target = out.scaling
        elif grid.d == 1:
            target = out.details[j]
        else:
            target = out.details[j][i - 1]
        target[...] = vals.reshape(target.shape)
    return out


def export_csv(f, path):
    """One row per sample: coordinates then value."""
    axes = [c.ravel() for c in f.grid.coords()]
    names = ["x", "y"][: f.grid.d]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(names + ["value"])
        for row in zip(*axes, f.values.ravel()):
            w.writerow([repr(float(v)) for v in row])
