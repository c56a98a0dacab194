"""Baseline (semi-)metrics between change-point sets.

These compare only the break locations and ignore segment levels, which
is what makes them discontinuous under small deformations; they are kept
here for side-by-side comparison with the step-function distances.
Distances between points are plain |s - t| in index units.
"""

from __future__ import annotations

import numpy as np

from .changepoint import ChangePointSet
from .errors import EmptySet


def _point_arrays(s: ChangePointSet, t: ChangePointSet) -> tuple[np.ndarray, np.ndarray]:
    if len(s) == 0 or len(t) == 0:
        raise EmptySet("set metrics are undefined for empty change-point sets")
    return np.asarray(s.points, dtype=float), np.asarray(t.points, dtype=float)


def _directed(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """d(x, B) for every x in A."""
    return np.abs(a[:, None] - b[None, :]).min(axis=1)


def hausdorff(s: ChangePointSet, t: ChangePointSet) -> float:
    """max of the two directed worst-case point-to-set distances."""
    a, b = _point_arrays(s, t)
    return float(max(_directed(a, b).max(), _directed(b, a).max()))


def modified_hausdorff(s: ChangePointSet, t: ChangePointSet) -> float:
    """max of the two directed average point-to-set distances."""
    a, b = _point_arrays(s, t)
    return float(max(_directed(a, b).mean(), _directed(b, a).mean()))


def mj_semi_metric(s: ChangePointSet, t: ChangePointSet, p: float = 1.0) -> float:
    """Symmetrised p-average of point-to-set distances.

    ( sum_{t in T} d(t, S)^p / (2|T|) + sum_{s in S} d(s, T)^p / (2|S|) )^(1/p)
    """
    p = float(p)
    if not p >= 1.0:
        raise ValueError(f"p must be >= 1, got {p}")
    a, b = _point_arrays(s, t)
    total = (_directed(b, a) ** p).sum() / (2 * b.size) + (_directed(a, b) ** p).sum() / (2 * a.size)
    return float(total ** (1.0 / p))
