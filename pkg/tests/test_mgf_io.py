import numpy as np
import pytest

from rieffel.errors import MGFFormatError
from rieffel.grids import GridSpec
from rieffel.mgf import MAGIC, read_mgf, write_mgf
from rieffel.module_space import ModuleFunction


def sample_field(seed=0, n=2, npts=16, L=8.0, k=2):
    r = np.random.default_rng(seed)
    g = GridSpec(n, npts, L)
    return ModuleFunction(g, r.normal(size=g.shape + (k, k))
                          + 1j * r.normal(size=g.shape + (k, k)))


def test_round_trip_bit_identical(tmp_path):
    f = sample_field()
    p = tmp_path / "field.mgf"
    write_mgf(p, f)
    back = read_mgf(p)
    assert back.grid.compatible(f.grid)
    assert np.array_equal(back.samples, f.samples)
    # a second write of the read-back file produces the same bytes
    p2 = tmp_path / "again.mgf"
    write_mgf(p2, back)
    assert p.read_bytes() == p2.read_bytes()


def test_truncated_header(tmp_path):
    p = tmp_path / "short.mgf"
    p.write_bytes(MAGIC + b"\x01\x00")
    with pytest.raises(MGFFormatError, match="truncated header"):
        read_mgf(p)


def test_truncated_payload(tmp_path):
    f = sample_field()
    p = tmp_path / "cut.mgf"
    write_mgf(p, f)
    data = p.read_bytes()
    p.write_bytes(data[:-16])
    with pytest.raises(MGFFormatError, match="truncated payload"):
        read_mgf(p)


def test_trailing_bytes(tmp_path):
    f = sample_field()
    p = tmp_path / "long.mgf"
    write_mgf(p, f)
    p.write_bytes(p.read_bytes() + b"\x00")
    with pytest.raises(MGFFormatError, match="trailing"):
        read_mgf(p)


def test_bad_magic(tmp_path):
    f = sample_field()
    p = tmp_path / "bad.mgf"
    write_mgf(p, f)
    data = bytearray(p.read_bytes())
    data[:4] = b"XGF1"
    p.write_bytes(bytes(data))
    with pytest.raises(MGFFormatError, match="magic"):
        read_mgf(p)


def test_nan_payload_rejected(tmp_path):
    f = sample_field()
    f.samples[0, 0, 0, 0] = np.nan
    p = tmp_path / "nan.mgf"
    write_mgf(p, f)
    with pytest.raises(MGFFormatError, match="NaN"):
        read_mgf(p)


def test_expect_dim_mismatch(tmp_path):
    f = sample_field(k=2)
    p = tmp_path / "k2.mgf"
    write_mgf(p, f)
    with pytest.raises(MGFFormatError, match="dimension"):
        read_mgf(p, expect_dim=3)
    assert read_mgf(p, expect_dim=2).algebra_dim == 2


def test_invalid_header_fields(tmp_path):
    import struct
    from rieffel.mgf import _HEADER
    p = tmp_path / "hdr.mgf"
    for n, npts, k, L in [(3, 16, 1, 8.0), (2, 7, 1, 8.0), (2, 16, 0, 8.0),
                          (2, 16, 1, -1.0), (2, 16, 1, float("inf"))]:
        p.write_bytes(_HEADER.pack(MAGIC, n, npts, k, L))
        with pytest.raises(MGFFormatError):
            read_mgf(p)


def test_one_dimensional_round_trip(tmp_path):
    f = sample_field(seed=1, n=1, npts=32, k=1)
    p = tmp_path / "oned.mgf"
    write_mgf(p, f)
    back = read_mgf(p)
    assert back.grid.n == 1
    assert np.array_equal(back.samples, f.samples)
