import struct

import numpy as np
import pytest

from besovlab import Grid, SampledFunction, analyze
from besovlab.errors import FormatError
from besovlab.fileio import export_csv, read_coeffs, read_function, write_coeffs, write_function


@pytest.mark.parametrize("grid", [Grid(1, 8, 5), Grid(2, 4, 3)])
def test_function_round_trip_is_bit_exact(tmp_path, rng, grid):
    f = SampledFunction(grid, rng.standard_normal(grid.shape))
    path = tmp_path / "f.bsvf"
    write_function(f, path)
    back = read_function(path)
    assert back.grid == grid
    assert back.values.tobytes() == f.values.tobytes()


def test_header_layout(tmp_path):
    g = Grid(1, 2, 1)
    write_function(SampledFunction(g, [1.0, 2.0, 3.0, 4.0]), tmp_path / "f")
    raw = (tmp_path / "f").read_bytes()
    assert raw[:4] == b"BSVF"
    assert struct.unpack("<IIII", raw[4:20]) == (1, 1, 2, 1)
    assert np.frombuffer(raw[20:], "<f8").tolist() == [1.0, 2.0, 3.0, 4.0]


def _raw(tmp_path, magic=b"BSVF", version=1, d=1, W=4, r=2, payload=None):
    n = (W * 2**r) ** d if payload is None else payload
    path = tmp_path / "x"
    path.write_bytes(struct.pack("<4sIIII", magic, version, d, W, r) + b"\0" * 8 * n)
    return path


def test_rejects_non_power_of_two(tmp_path):
    with pytest.raises(FormatError, match="power of two"):
        read_function(_raw(tmp_path, W=6))


def test_rejects_unsupported_dimension(tmp_path):
    with pytest.raises(FormatError, match="unsupported dimension"):
        read_function(_raw(tmp_path, d=3))


@pytest.mark.parametrize("kw", [{"magic": b"XXXX"}, {"version": 2}, {"payload": 3}])
def test_rejects_malformed(tmp_path, kw):
    with pytest.raises(FormatError):
        read_function(_raw(tmp_path, **kw))


def test_rejects_truncated_header(tmp_path):
    (tmp_path / "x").write_bytes(b"BSVF\x01")
    with pytest.raises(FormatError):
        read_function(tmp_path / "x")


@pytest.mark.parametrize("grid", [Grid(1, 8, 5), Grid(2, 4, 3)])
def test_coeff_round_trip(tmp_path, rng, grid):
    c = analyze(SampledFunction(grid, rng.standard_normal(grid.shape)))
    write_coeffs(c, tmp_path / "c.bsvw")
    back = read_coeffs(tmp_path / "c.bsvw")
    assert back.scaling.tobytes() == c.scaling.tobytes()
    assert all(a.tobytes() == b.tobytes() for a, b in zip(back.details, c.details))
    assert (tmp_path / "c.bsvw").read_bytes()[:4] == b"BSVW"


def test_coeff_reader_rejects_function_file(tmp_path, rng):
    g = Grid(1, 8, 3)
    write_function(SampledFunction.zeros(g), tmp_path / "f")
    with pytest.raises(FormatError, match="magic"):
        read_coeffs(tmp_path / "f")


def test_csv_export(tmp_path):
    g = Grid(2, 2, 1)
    f = SampledFunction(g, np.arange(16.0))
    export_csv(f, tmp_path / "f.csv")
    lines = (tmp_path / "f.csv").read_text().splitlines()
    assert lines[0] == "x,y,value"
    assert len(lines) == 17
    assert lines[2] == "0.0,0.5,1.0"
