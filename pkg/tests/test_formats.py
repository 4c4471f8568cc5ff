import struct

import pytest
from hypothesis import given, strategies as st

from insdelcode.errors import UsageError
from insdelcode.formats import (pack_bits, read_values, unpack_bits,
                                write_values)


@given(st.lists(st.integers(0, 1), max_size=200))
def test_pack_unpack_round_trip(bits):
    assert unpack_bits(pack_bits(bits)) == bits


def test_layout_is_msb_first_with_length_prefix():
    blob = pack_bits([1, 0, 1])
    assert blob[:8] == struct.pack("<Q", 3)
    assert blob[8] == 0b1010_0000  # zero-padded on the right


def test_pack_rejects_non_bits():
    with pytest.raises(UsageError):
        pack_bits([0, 2])


def test_unpack_validates_length():
    with pytest.raises(UsageError):
        unpack_bits(b"\x01")
    with pytest.raises(UsageError):
        unpack_bits(struct.pack("<Q", 64) + b"\x00")


@pytest.mark.parametrize("fmt", ["json", "csv"])
def test_value_files_round_trip(tmp_path, fmt):
    values = [0, 5, 63, 1, 0]
    path = tmp_path / f"vals.{fmt}"
    write_values(path, values, fmt)
    assert read_values(path, fmt) == values


def test_raw_value_file_round_trip(tmp_path):
    path = tmp_path / "bits.raw"
    write_values(path, [1, 1, 0, 1, 0, 0, 0, 1, 1], "raw")
    assert read_values(path, "raw") == [1, 1, 0, 1, 0, 0, 0, 1, 1]


def test_unknown_format(tmp_path):
    with pytest.raises(UsageError):
        write_values(tmp_path / "x", [1], "xml")
