import numpy as np
import pytest

from stepdist import (
    Attribute,
    ChangePointSet,
    DetectionParams,
    TimeSeries,
    detect_change_points,
    segment_statistics,
)
from stepdist.errors import DegenerateSegment, SeriesTooShort

from tests.helpers import f_scan_oracle, t_scan_oracle


def jump_series(rng, n=400, at=200, size=10.0, sigma=1.0, sid="x"):
    values = rng.standard_normal(n) * sigma
    values[at:] += size
    return TimeSeries(sid, values)


class TestDetect:
    def test_constant_series_yields_empty(self):
        ts = TimeSeries("c", np.full(200, 5.0))
        assert detect_change_points(ts, DetectionParams()).points == ()

    def test_mean_jump_found_at_scan_argmax(self):
        rng = np.random.default_rng(11)
        ts = jump_series(rng)
        cps = detect_change_points(ts, DetectionParams(significance=0.05))
        assert len(cps.points) >= 1
        near = [c for c in cps.points if 195 <= c <= 205]
        assert len(near) == 1
        assert near[0] == t_scan_oracle(ts.values, 30)

    def test_variance_jump_found(self):
        rng = np.random.default_rng(5)
        values = np.concatenate([rng.normal(0, 1, 200), rng.normal(0, 5, 200)])
        ts = TimeSeries("v", values)
        cps = detect_change_points(ts, DetectionParams(attribute=Attribute.VARIANCE))
        near = [c for c in cps.points if 190 <= c <= 210]
        assert len(near) == 1
        assert near[0] == f_scan_oracle(ts.values, 30)

    def test_deterministic_bit_for_bit(self):
        rng = np.random.default_rng(7)
        ts = jump_series(rng, size=3.0)
        params = DetectionParams(seed=123)
        assert detect_change_points(ts, params) == detect_change_points(ts, params)

    def test_spacing_respects_min_segment(self):
        rng = np.random.default_rng(2)
        values = np.concatenate(
            [rng.normal(m, 1.0, 120) for m in (0.0, 6.0, 0.0, 6.0, 12.0)]
        )
        ts = TimeSeries("m", values)
        params = DetectionParams(min_segment=40)
        cps = detect_change_points(ts, params)
        bounds = [0, *cps.points, ts.h]
        gaps = [b - a for a, b in zip(bounds, bounds[1:])]
        gaps[-1] += 1  # last segment includes index H
        assert all(g >= params.min_segment for g in gaps)

    def test_too_short_series_rejected(self):
        ts = TimeSeries("s", np.arange(20.0))
        with pytest.raises(SeriesTooShort):
            detect_change_points(ts, DetectionParams(min_segment=30))

    def test_mean_detection_shift_invariant(self):
        rng = np.random.default_rng(21)
        ts = jump_series(rng, size=5.0)
        shifted = TimeSeries("x", ts.values + 1000.0)
        params = DetectionParams()
        assert detect_change_points(ts, params) == detect_change_points(shifted, params)

    @pytest.mark.parametrize("factor", [2.0, -1.0, 3.0])
    def test_variance_detection_scale_invariant(self, factor):
        rng = np.random.default_rng(31)
        values = np.concatenate([rng.normal(0, 1, 150), rng.normal(0, 4, 150)])
        ts = TimeSeries("v", values)
        scaled = TimeSeries("v", values * factor)
        params = DetectionParams(attribute=Attribute.VARIANCE)
        assert detect_change_points(ts, params) == detect_change_points(scaled, params)

    def test_detection_rate_monotone_in_jump_size(self):
        params = DetectionParams()
        rates = []
        for size in (0.5, 1.0, 2.0, 4.0):
            hits = 0
            for seed in range(100):
                rng = np.random.default_rng((97, seed))
                ts = jump_series(rng, n=200, at=100, size=size)
                cps = detect_change_points(ts, params)
                hits += any(90 <= c <= 110 for c in cps.points)
            rates.append(hits / 100)
        assert all(b >= a - 0.05 for a, b in zip(rates, rates[1:]))
        assert rates[-1] > rates[0]


class TestSegmentStatistics:
    def test_mean_halves(self):
        ts = TimeSeries("a", [1.0, 1.0, 2.0, 2.0])
        assert segment_statistics(ts, ChangePointSet((2,)), Attribute.MEAN) == (1.0, 2.0)

    def test_mean_no_breaks(self):
        ts = TimeSeries("z", [0.0, 0.0, 0.0, 0.0])
        assert segment_statistics(ts, ChangePointSet(()), Attribute.MEAN) == (0.0,)

    def test_unbiased_variance_halves(self):
        ts = TimeSeries("v", [0.0, 2.0, 0.0, 2.0, 5.0, 9.0, 5.0, 9.0])
        stats = segment_statistics(ts, ChangePointSet((4,)), Attribute.VARIANCE)
        assert stats == pytest.approx((4.0 / 3.0, 16.0 / 3.0), abs=1e-12)

    def test_last_segment_includes_horizon(self):
        ts = TimeSeries("h", [0.0, 0.0, 0.0, 0.0, 9.0])
        assert segment_statistics(ts, ChangePointSet((3,)), Attribute.MEAN) == (0.0, 4.5)

    def test_degenerate_variance_segment(self):
        ts = TimeSeries("d", [1.0, 2.0, 3.0, 4.0, 5.0])
        with pytest.raises(DegenerateSegment):
            segment_statistics(ts, ChangePointSet((1,)), Attribute.VARIANCE)

    def test_interior_bounds_checked(self):
        ts = TimeSeries("b", [1.0, 2.0, 3.0])
        with pytest.raises(ValueError):
            segment_statistics(ts, ChangePointSet((2,)), Attribute.MEAN)


class TestValidation:
    def test_series_needs_two_points(self):
        with pytest.raises(ValueError):
            TimeSeries("one", [1.0])

    def test_series_needs_finite_values(self):
        with pytest.raises(ValueError):
            TimeSeries("nan", [0.0, np.nan, 1.0])

    def test_change_points_strictly_increasing(self):
        with pytest.raises(ValueError):
            ChangePointSet((3, 3))

    def test_significance_range(self):
        with pytest.raises(ValueError):
            DetectionParams(significance=1.5)

    def test_min_segment_floor_depends_on_attribute(self):
        DetectionParams(attribute=Attribute.MEAN, min_segment=2)
        with pytest.raises(ValueError):
            DetectionParams(attribute=Attribute.VARIANCE, min_segment=2)

    def test_permutations_positive(self):
        with pytest.raises(ValueError):
            DetectionParams(permutations=0)
