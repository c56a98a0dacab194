"""Shared test utilities: random generators and independent oracles.

The oracles here deliberately re-derive results through a different code
path than the library (pointwise evaluation + quadrature, plain-python
scans, an alternative haversine formulation) so they can vouch for the
closed-form implementations.
"""

from __future__ import annotations

import math

import numpy as np

from stepdist import StepFunction


def random_step_function(rng, h=1.0, max_segments=8, vmax=5.0) -> StepFunction:
    """Random canonical step function on [0, h]."""
    k = int(rng.integers(1, max_segments + 1))
    while True:
        interior = np.unique(rng.uniform(0.0, h, size=k - 1))
        if interior.size == k - 1 and (interior.size == 0 or (interior[0] > 0 and interior[-1] < h)):
            break
    values = rng.uniform(-vmax, vmax, size=k)
    return StepFunction((0.0, *interior, h), tuple(values))


def eval_step(f: StepFunction, xs: np.ndarray) -> np.ndarray:
    """Pointwise values at xs, independent of the library's arithmetic."""
    idx = np.searchsorted(np.asarray(f.breakpoints), xs, side="right") - 1
    idx = np.clip(idx, 0, len(f.values) - 1)
    return np.asarray(f.values)[idx]


def quadrature_lp_distance(f: StepFunction, g: StepFunction, p: float, n_points: int = 10**6) -> float:
    """Midpoint-rule oracle on the refined merged partition.

    Each merged cell is split into subcells (about n_points across [0, H])
    and |f - g|^p is sampled at subcell midpoints.
    """
    edges = np.union1d(np.asarray(f.breakpoints), np.asarray(g.breakpoints))
    h = edges[-1]
    xs_parts = []
    w_parts = []
    for a, b in zip(edges[:-1], edges[1:]):
        m = max(1, int(round(n_points * (b - a) / h)))
        step = (b - a) / m
        xs_parts.append(a + (np.arange(m) + 0.5) * step)
        w_parts.append(np.full(m, step))
    xs = np.concatenate(xs_parts)
    ws = np.concatenate(w_parts)
    diff = np.abs(eval_step(f, xs) - eval_step(g, xs))
    total = float(np.sum(diff**p * ws)) / h
    return total ** (1.0 / p)


def add_bump(f: StepFunction, t0: float, delta: float, epsilon: float) -> StepFunction:
    """f plus a constant offset epsilon on the open window (t0, t0 + delta)."""
    edges = np.union1d(np.asarray(f.breakpoints), np.asarray([t0, t0 + delta]))
    values = eval_step(f, (edges[:-1] + edges[1:]) / 2.0)
    inside = (edges[:-1] >= t0) & (edges[1:] <= t0 + delta)
    values = values + np.where(inside, epsilon, 0.0)
    return StepFunction(tuple(edges), tuple(values))


def haversine_oracle(lat1, lon1, lat2, lon2, radius=6371.0088) -> float:
    """Great-circle distance via the atan2 formulation."""
    p1, l1, p2, l2 = map(math.radians, (lat1, lon1, lat2, lon2))
    a = math.sin((p2 - p1) / 2) ** 2 + math.cos(p1) * math.cos(p2) * math.sin((l2 - l1) / 2) ** 2
    return radius * 2.0 * math.atan2(math.sqrt(a), math.sqrt(max(0.0, 1.0 - a)))


def t_scan_oracle(x: np.ndarray, min_segment: int) -> int:
    """Argmax split of the two-sample t statistic, plain-python scan."""
    n = len(x)
    best_stat, best_s = -1.0, None
    for s in range(min_segment, n - min_segment + 1):
        left, right = x[:s], x[s:]
        diff = abs(left.mean() - right.mean())
        pooled = (((left - left.mean()) ** 2).sum() + ((right - right.mean()) ** 2).sum()) / (n - 2)
        se = math.sqrt(pooled * (1 / s + 1 / (n - s)))
        stat = math.inf if se == 0 and diff > 0 else (0.0 if se == 0 else diff / se)
        if stat > best_stat:
            best_stat, best_s = stat, s
    return best_s


def f_scan_oracle(x: np.ndarray, min_segment: int) -> int:
    """Argmax split of the two-sample variance-ratio statistic."""
    n = len(x)
    best_stat, best_s = -1.0, None
    for s in range(min_segment, n - min_segment + 1):
        v1 = float(np.var(x[:s], ddof=1))
        v2 = float(np.var(x[s:], ddof=1))
        hi, lo = max(v1, v2), min(v1, v2)
        stat = 1.0 if hi == 0 else (math.inf if lo == 0 else hi / lo)
        if stat > best_stat:
            best_stat, best_s = stat, s
    return best_s
