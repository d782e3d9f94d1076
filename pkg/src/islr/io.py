"""Readers and writers for matrices (CSV), weighted edge lists (TSV) and mono WAV."""

import csv
import warnings
import wave
from dataclasses import dataclass, field

import numpy as np

from .exceptions import ParseError, RaggedRows, UnsupportedFormat

WEIGHT_RANGE = (0.0, 2.0)


class WeightOutOfRange(UserWarning):
    pass


def _is_number(text):
    try:
        float(text)
    except ValueError:
        return False
    return True


def read_matrix_csv(path):
    """Read a rectangular numeric CSV; a non-numeric first row is taken as a header."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh)]
    while rows and not any(cell.strip() for cell in rows[-1]):
        rows.pop()
    start = 0
    if rows and not all(_is_number(c) for c in rows[0]):
        start = 1
    body = rows[start:]
    if not body:
        raise ParseError(f"{path}: no numeric rows")
    width = len(body[0])
    out = np.empty((len(body), width))
    for i, row in enumerate(body, start=start + 1):
        if len(row) != width:
            raise RaggedRows(f"{path}: row {i} has {len(row)} fields, expected {width}")
        for j, cell in enumerate(row, start=1):
            try:
                out[i - start - 1, j - 1] = float(cell)
            except ValueError:
                raise ParseError(f"{path}: row {i}, column {j}: not a number: {cell!r}") from None
    if not np.all(np.isfinite(out)):
        bad = np.argwhere(~np.isfinite(out))[0]
        raise ParseError(f"{path}: row {bad[0] + start + 1}, column {bad[1] + 1}: non-finite value")
    return out


def write_matrix_csv(M, path):
    """Write with 17 significant digits so float64 values round-trip exactly."""
    M = np.atleast_2d(np.asarray(M, dtype=float))
    with open(path, "w", newline="", encoding="utf-8") as fh:
        for row in M:
            fh.write(",".join(format(v, ".17g") for v in row) + "\n")


@dataclass
class EdgeList:
    edges: list = field(default_factory=list)  # (node_a, node_b, weight)
    index: dict = field(default_factory=dict)  # node name -> row, first appearance order
    warnings: list = field(default_factory=list)

    @property
    def nodes(self):
        return list(self.index)


def read_edge_list(path):
    """Parse ``node_a<TAB>node_b<TAB>weight`` lines into a symmetric adjacency matrix.

    Lines starting with ``#`` and blank lines are skipped; a repeated edge
    keeps its last weight. Weights outside [0, 2] are kept but recorded and
    reported with a :class:`WeightOutOfRange` warning.
    """
    el = EdgeList()
    latest = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.rstrip("\r\n")
            if not text.strip() or text.lstrip().startswith("#"):
                continue
            parts = text.split("\t")
            if len(parts) != 3:
                raise ParseError(f"{path}: line {lineno}: expected 3 tab-separated fields, got {len(parts)}")
            a, b, w = parts[0].strip(), parts[1].strip(), parts[2].strip()
            if not a or not b:
                raise ParseError(f"{path}: line {lineno}: empty node name")
            try:
                weight = float(w)
            except ValueError:
                raise ParseError(f"{path}: line {lineno}: weight {w!r} is not a number") from None
            if not np.isfinite(weight):
                raise ParseError(f"{path}: line {lineno}: non-finite weight")
            if not WEIGHT_RANGE[0] <= weight <= WEIGHT_RANGE[1]:
                msg = f"line {lineno}: weight {weight:g} outside [0, 2]"
                el.warnings.append(msg)
                warnings.warn(f"{path}: {msg}", WeightOutOfRange, stacklevel=2)
            for node in (a, b):
                el.index.setdefault(node, len(el.index))
            el.edges.append((a, b, weight))
            latest[frozenset((a, b))] = (a, b, weight)
    if not el.edges:
        raise ParseError(f"{path}: no edges found")
    n = len(el.index)
    A = np.zeros((n, n))
    for a, b, weight in latest.values():
        i, j = el.index[a], el.index[b]
        A[i, j] = A[j, i] = weight
    return el, A


def read_wav(path):
    """Read mono 16-bit PCM; returns samples in [-1, 1) and the sample rate."""
    try:
        with wave.open(str(path), "rb") as wf:
            channels, width, rate = wf.getnchannels(), wf.getsampwidth(), wf.getframerate()
            if channels != 1:
                raise UnsupportedFormat(f"{path}: {channels} channels; only mono is supported")
            if width != 2:
                raise UnsupportedFormat(f"{path}: {8 * width}-bit samples; only 16-bit PCM is supported")
            raw = wf.readframes(wf.getnframes())
    except wave.Error as exc:
        raise UnsupportedFormat(f"{path}: {exc}") from exc
    except EOFError as exc:
        raise ParseError(f"{path}: truncated file") from exc
    if not raw:
        raise ParseError(f"{path}: empty data chunk")
    samples = np.frombuffer(raw, dtype="<i2").astype(float) / 32768.0
    return samples, rate


def write_wav(samples, rate, path):
    """Clamp to [-1, 1 - 2**-15], quantize to int16 and write mono PCM."""
    x = np.asarray(samples, dtype=float)
    if x.ndim != 1:
        raise ValueError("only mono (1-D) signals can be written")
    q = np.round(np.clip(x, -1.0, 1.0 - 2.0**-15) * 32768.0).astype("<i2")
    with wave.open(str(path), "wb") as wf:
        wf.setnchannels(1)
        wf.setsampwidth(2)
        wf.setframerate(int(rate))
        wf.writeframes(q.tobytes())
