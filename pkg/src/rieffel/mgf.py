"""Binary grid format MGF1 for module functions.

Layout: magic bytes "MGF1"; little-endian u32 fields n, N, k; f64 L; then
N^n * k^2 complex values as (re, im) f64 pairs, row-major over the grid with
matrix entries innermost row-major.  Reads validate the magic, dimensions,
payload length, and finiteness before any object is constructed.
"""
from __future__ import annotations

import struct

import numpy as np

from .errors import MGFFormatError
from .grids import GridSpec
from .module_space import ModuleFunction

MAGIC = b"MGF1"
_HEADER = struct.Struct("<4sIIId")

MAX_POINTS = 1 << 16
MAX_DIM = 1 << 10


def write_mgf(path, f: ModuleFunction) -> None:
    g = f.grid
    k = f.algebra_dim
    payload = np.empty(g.shape + (k, k, 2), dtype="<f8")
    payload[..., 0] = f.samples.real
    payload[..., 1] = f.samples.imag
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, g.n, g.points, k, g.half_width))
        fh.write(payload.tobytes())


def read_mgf(path, expect_dim: int | None = None) -> ModuleFunction:
    with open(path, "rb") as fh:
        head = fh.read(_HEADER.size)
        if len(head) < _HEADER.size:
            raise MGFFormatError("truncated header")
        magic, n, npts, k, half_width = _HEADER.unpack(head)
        if magic != MAGIC:
            raise MGFFormatError(f"bad magic {magic!r}")
        if not (1 <= n <= 2):
            raise MGFFormatError(f"unsupported dimension n={n}")
        if npts < 8 or npts % 2 or npts > MAX_POINTS:
            raise MGFFormatError(f"invalid point count N={npts}")
        if not (1 <= k <= MAX_DIM):
            raise MGFFormatError(f"invalid algebra dimension k={k}")
        if not np.isfinite(half_width) or half_width <= 0:
            raise MGFFormatError(f"invalid half width L={half_width}")
        if expect_dim is not None and k != expect_dim:
            raise MGFFormatError(f"algebra dimension {k} != expected {expect_dim}")
        count = (npts ** n) * k * k * 2
        raw = fh.read(count * 8)
        if len(raw) < count * 8:
            raise MGFFormatError("truncated payload")
        if fh.read(1):
            raise MGFFormatError("trailing bytes after payload")
    flat = np.frombuffer(raw, dtype="<f8")
    if not np.all(np.isfinite(flat)):
        raise MGFFormatError("payload contains NaN or Inf")
    arr = flat.reshape((npts,) * n + (k, k, 2))
    samples = arr[..., 0] + 1j * arr[..., 1]
    return ModuleFunction(GridSpec(n, npts, float(half_width)), samples)
