"""Pairwise matrices over a collection of embedded series.

Distance matrices hold exact pairwise L^p distances (unscaled or between
normalised functions), the alignment matrix holds L^2 cosines, affinity
matrices are affinely rescaled distances in [0, 1], and consistency
matrices are element-wise differences of two affinity-like matrices.
Every constructor computes each unordered pair once, so the outputs are
exactly symmetric and independent of evaluation order.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np

from .errors import LabelMismatch, ZeroFunction
from .stepfn import StepFunction, inner_product, lp_distance, lp_norm, normalize

_CLAMP_TOL = 1e-12


class MatrixKind(str, Enum):
    DISTANCE = "distance"
    AFFINITY = "affinity"
    ALIGNMENT = "alignment"
    CONSISTENCY = "consistency"


@dataclass(frozen=True, eq=False)
class LabeledSquareMatrix:
    """A symmetric n x n matrix over an indexed collection.

    Invariants checked at construction:
      distance:    zero diagonal, entries >= 0
      affinity:    unit diagonal, entries in [0, 1]
      alignment:   unit diagonal, entries in [-1, 1]
      consistency: entries in [-1, 1]
    """

    labels: tuple[str, ...]
    entries: np.ndarray
    kind: MatrixKind

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        if len(set(labels)) != len(labels):
            raise ValueError("labels must be distinct")
        m = np.array(self.entries, dtype=float)
        n = len(labels)
        if m.shape != (n, n):
            raise ValueError(f"entries must be {n}x{n}, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("entries must be finite")
        if not np.array_equal(m, m.T):
            raise ValueError("entries must be exactly symmetric")
        kind = MatrixKind(self.kind)
        diag = np.diag(m)
        if kind is MatrixKind.DISTANCE:
            if np.any(diag != 0.0) or np.any(m < 0.0):
                raise ValueError("distance matrix needs zero diagonal and nonnegative entries")
        elif kind is MatrixKind.AFFINITY:
            if np.any(diag != 1.0) or np.any(m < 0.0) or np.any(m > 1.0):
                raise ValueError("affinity matrix needs unit diagonal and entries in [0, 1]")
        elif kind is MatrixKind.ALIGNMENT:
            if np.any(diag != 1.0) or np.any(m < -1.0) or np.any(m > 1.0):
                raise ValueError("alignment matrix needs unit diagonal and entries in [-1, 1]")
        else:
            if np.any(m < -1.0) or np.any(m > 1.0):
                raise ValueError("consistency matrix needs entries in [-1, 1]")
        m.flags.writeable = False
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "entries", m)
        object.__setattr__(self, "kind", kind)

    @property
    def n(self) -> int:
        return len(self.labels)


def _default_labels(fs, labels) -> tuple[str, ...]:
    if labels is None:
        return tuple(str(i) for i in range(len(fs)))
    if len(labels) != len(fs):
        raise ValueError("labels and functions must have equal length")
    return tuple(labels)


def _pairwise(fs, fill) -> np.ndarray:
    n = len(fs)
    if n < 2:
        raise ValueError(f"need at least 2 functions, got {n}")
    m = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            v = fill(fs[i], fs[j])
            m[i, j] = v
            m[j, i] = v
    return m


def unscaled_distance_matrix(
    fs: list[StepFunction], p: float, labels=None
) -> LabeledSquareMatrix:
    """Pairwise ||f_i - f_j||_p."""
    labels = _default_labels(fs, labels)
    m = _pairwise(fs, lambda a, b: lp_distance(a, b, p))
    return LabeledSquareMatrix(labels, m, MatrixKind.DISTANCE)


def normalized_distance_matrix(
    fs: list[StepFunction], p: float, labels=None
) -> LabeledSquareMatrix:
    """Pairwise distances between the p-normalised functions f_i / ||f_i||_p."""
    labels = _default_labels(fs, labels)
    hats = []
    for label, f in zip(labels, fs):
        try:
            hats.append(normalize(f, p))
        except ZeroFunction:
            raise ZeroFunction(f"series {label!r} embeds to the zero function") from None
    m = _pairwise(hats, lambda a, b: lp_distance(a, b, p))
    return LabeledSquareMatrix(labels, m, MatrixKind.DISTANCE)


def alignment_matrix(fs: list[StepFunction], labels=None) -> LabeledSquareMatrix:
    """Pairwise L^2 cosines <f_i, f_j> / (||f_i||_2 ||f_j||_2)."""
    labels = _default_labels(fs, labels)
    norms = []
    for label, f in zip(labels, fs):
        nrm = lp_norm(f, 2.0)
        if nrm == 0.0:
            raise ZeroFunction(f"series {label!r} embeds to the zero function")
        norms.append(nrm)
    n = len(fs)
    if n < 2:
        raise ValueError(f"need at least 2 functions, got {n}")
    m = np.ones((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            c = inner_product(fs[i], fs[j]) / (norms[i] * norms[j])
            if c > 1.0:
                if c > 1.0 + _CLAMP_TOL:
                    raise ValueError(f"cosine {c} exceeds 1 beyond rounding tolerance")
                c = 1.0
            elif c < -1.0:
                if c < -1.0 - _CLAMP_TOL:
                    raise ValueError(f"cosine {c} below -1 beyond rounding tolerance")
                c = -1.0
            m[i, j] = c
            m[j, i] = c
    return LabeledSquareMatrix(labels, m, MatrixKind.ALIGNMENT)


def to_affinity(d: LabeledSquareMatrix) -> LabeledSquareMatrix:
    """Affine rescale of a distance matrix: A = 1 - D / max(D).

    The all-zero distance matrix maps to the all-ones affinity.
    """
    if d.kind is not MatrixKind.DISTANCE:
        raise ValueError(f"to_affinity expects a distance matrix, got {d.kind.value}")
    top = float(d.entries.max())
    if top == 0.0:
        a = np.ones_like(d.entries)
    else:
        a = 1.0 - d.entries / top
        np.fill_diagonal(a, 1.0)
    return LabeledSquareMatrix(d.labels, a, MatrixKind.AFFINITY)


def consistency_matrix(a: LabeledSquareMatrix, a_g: LabeledSquareMatrix) -> LabeledSquareMatrix:
    """Element-wise difference A - A_G between two affinity-like matrices."""
    if a.kind not in (MatrixKind.AFFINITY, MatrixKind.ALIGNMENT):
        raise ValueError(f"first argument must be affinity or alignment, got {a.kind.value}")
    if a_g.kind is not MatrixKind.AFFINITY:
        raise ValueError(f"second argument must be an affinity matrix, got {a_g.kind.value}")
    if a.labels != a_g.labels:
        raise LabelMismatch(f"labels differ: {a.labels} vs {a_g.labels}")
    return LabeledSquareMatrix(a.labels, a.entries - a_g.entries, MatrixKind.CONSISTENCY)


def matrix_norm(c: LabeledSquareMatrix) -> float:
    """Mean absolute entry (diagonal included): (1/n^2) * sum |c_ij|."""
    return float(np.abs(c.entries).mean())


def write_matrix_csv(m: LabeledSquareMatrix, path) -> None:
    """Header row of labels, then one row per label: label,v1,...,vn.

    Values are rendered with repr so the decimal text round-trips to the
    exact same doubles.
    """
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(m.labels)
        for label, row in zip(m.labels, m.entries):
            w.writerow([label, *[repr(float(v)) for v in row]])


def read_matrix_csv(path, kind: MatrixKind) -> LabeledSquareMatrix:
    path = Path(path)
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ValueError(f"{path}: empty matrix file")
    labels = tuple(rows[0])
    n = len(labels)
    if len(rows) != n + 1:
        raise ValueError(f"{path}: expected {n} data rows, got {len(rows) - 1}")
    entries = np.zeros((n, n))
    for i, row in enumerate(rows[1:]):
        if len(row) != n + 1 or row[0] != labels[i]:
            raise ValueError(f"{path}: malformed row {i + 1}")
        entries[i] = [float(tok) for tok in row[1:]]
    return LabeledSquareMatrix(labels, entries, kind)
