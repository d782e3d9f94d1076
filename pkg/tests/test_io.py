import wave

import numpy as np
import pytest

from islr.exceptions import ParseError, RaggedRows, UnsupportedFormat
from islr.io import (
    WeightOutOfRange, read_edge_list, read_matrix_csv, read_wav, write_matrix_csv, write_wav,
)


def test_csv_examples(tmp_path):
    p = tmp_path / "m.csv"
    p.write_text("1,2\n3,4\n")
    np.testing.assert_array_equal(read_matrix_csv(p), [[1, 2], [3, 4]])
    p.write_text("a,b\n1,2\n")
    np.testing.assert_array_equal(read_matrix_csv(p), [[1, 2]])
    p.write_text("1,2\n3\n")
    with pytest.raises(RaggedRows, match="row 2"):
        read_matrix_csv(p)
    p.write_text("1,2\n3,x\n")
    with pytest.raises(ParseError, match="row 2, column 2"):
        read_matrix_csv(p)
    p.write_text("")
    with pytest.raises(ParseError):
        read_matrix_csv(p)


def test_csv_round_trip(tmp_path, rng):
    M = rng.normal(size=(50, 40)) * 10.0 ** rng.integers(-8, 8, size=(50, 40))
    p = tmp_path / "rt.csv"
    write_matrix_csv(M, p)
    assert np.array_equal(read_matrix_csv(p), M)


def _edges(tmp_path, text):
    p = tmp_path / "e.tsv"
    p.write_text(text)
    return p


def test_edge_list_examples(tmp_path):
    el, A = read_edge_list(_edges(tmp_path, "# comment\nA\tB\t0.5\n\nB\tC\t1.0\nB\tA\t0.7\n"))
    assert el.nodes == ["A", "B", "C"]
    np.testing.assert_array_equal(A, [[0, 0.7, 0], [0.7, 0, 1.0], [0, 1.0, 0]])
    with pytest.warns(WeightOutOfRange):
        el, A = read_edge_list(_edges(tmp_path, "x\ty\t3.5\n"))
    assert A[0, 1] == 3.5 and len(el.warnings) == 1
    with pytest.raises(ParseError, match="line 1"):
        read_edge_list(_edges(tmp_path, "x y 1\n"))
    with pytest.raises(ParseError, match="not a number"):
        read_edge_list(_edges(tmp_path, "x\ty\theavy\n"))
    with pytest.raises(ParseError):
        read_edge_list(_edges(tmp_path, "# nothing\n"))


def test_wav_round_trip(tmp_path):
    t = np.arange(8000) / 8000
    x = 0.5 * np.sin(2 * np.pi * 440 * t)
    p = tmp_path / "a.wav"
    write_wav(x, 8000, p)
    y, rate = read_wav(p)
    assert rate == 8000 and y.shape == x.shape
    assert np.max(np.abs(y - x)) <= 2.0**-15


def test_wav_clipping(tmp_path):
    p = tmp_path / "c.wav"
    write_wav(np.array([2.0, -2.0, 0.0]), 8000, p)
    y, _ = read_wav(p)
    np.testing.assert_array_equal(y, [1 - 2.0**-15, -1.0, 0.0])


def test_wav_rejections(tmp_path):
    p = tmp_path / "s.wav"
    with wave.open(str(p), "wb") as wf:
        wf.setnchannels(2)
        wf.setsampwidth(2)
        wf.setframerate(8000)
        wf.writeframes(b"\x00" * 8)
    with pytest.raises(UnsupportedFormat, match="channels"):
        read_wav(p)
    with wave.open(str(p), "wb") as wf:
        wf.setnchannels(1)
        wf.setsampwidth(2)
        wf.setframerate(8000)
    with pytest.raises(ParseError, match="empty"):
        read_wav(p)
    p.write_bytes(b"not a wav file at all")
    with pytest.raises(UnsupportedFormat):
        read_wav(p)
