import numpy as np
import pytest

from accustripes.core import GapTooLarge, InvalidSize
from accustripes.datagen import (FlawSpec, apply_flaw, flaw_sweep,
                                 gen_clustered, gen_gaussian)


class TestGenGaussian:
    def test_deterministic(self):
        a = gen_gaussian(1000, seed=7)
        b = gen_gaussian(1000, seed=7)
        assert np.array_equal(a.values, b.values)

    def test_different_seeds_differ(self):
        assert not np.array_equal(gen_gaussian(100, 1).values,
                                  gen_gaussian(100, 2).values)

    def test_values_in_unit_interval(self):
        d = gen_gaussian(5000, seed=3)
        assert d.values[0] >= 0.0 and d.values[-1] <= 1.0

    def test_mean_inside_band_over_seeds(self):
        means = [gen_gaussian(1000, seed).values.mean() for seed in range(100)]
        assert all(0.3 <= m <= 0.7 for m in means)

    def test_invalid_size(self):
        with pytest.raises(InvalidSize):
            gen_gaussian(1, seed=0)

    def test_seed_recorded(self):
        assert gen_gaussian(100, seed=42).source_seed == 42


class TestApplyFlaw:
    def test_zero_severity_is_identity(self):
        base = gen_gaussian(1000, seed=1)
        out = apply_flaw(base, FlawSpec(kind="gap", severity=0.0,
                                        location=0.5, seed=1))
        assert out is base

    def test_none_kind_is_identity(self):
        base = gen_gaussian(100, seed=1)
        assert apply_flaw(base, FlawSpec(kind="none", seed=1)) is base

    def test_gap_removes_expected_count(self):
        base = gen_gaussian(10_000, seed=7)
        out = apply_flaw(base, FlawSpec(kind="gap", severity=0.25,
                                        location=0.5, seed=7))
        assert out.n == 7500

    def test_gap_opens_measurable_void(self):
        base = gen_gaussian(10_000, seed=11)
        out = apply_flaw(base, FlawSpec(kind="gap", severity=0.25,
                                        location=0.5, seed=11))
        values = out.values
        near = values[(values > 0.3) & (values < 0.7)]
        gaps = np.diff(near)
        assert gaps.max() > 5 * np.median(np.diff(values))

    def test_gap_too_large(self):
        # unreachable through the validated 25% cap, so force the severity
        # past validation to exercise the guard
        base = gen_gaussian(4, seed=1)
        spec = FlawSpec(kind="gap", severity=0.25, location=0.5, seed=1)
        object.__setattr__(spec, "severity", 0.9)
        with pytest.raises(GapTooLarge):
            apply_flaw(base, spec)

    def test_spike_adds_exact_points(self):
        base = gen_gaussian(10_000, seed=5)
        out = apply_flaw(base, FlawSpec(kind="spike", severity=0.15,
                                        location=0.3, seed=5))
        assert out.n == 11_500
        added = np.abs(out.values - 0.3) <= 1e-5
        assert added.sum() >= 1500

    def test_outlier_reaches_right_end(self):
        base = gen_gaussian(1000, seed=9)
        out = apply_flaw(base, FlawSpec(kind="outlier", severity=0.1, seed=9))
        assert out.n == 1100
        assert out.values[-1] >= 0.95
        assert (out.values >= 0.95).sum() >= 100

    def test_noise_adds_uniform_points(self):
        base = gen_gaussian(1000, seed=2)
        out = apply_flaw(base, FlawSpec(kind="noise", severity=0.2, seed=2))
        assert out.n == 1200

    def test_deterministic(self):
        base = gen_gaussian(500, seed=3)
        spec = FlawSpec(kind="outlier", severity=0.2, seed=3)
        assert np.array_equal(apply_flaw(base, spec).values,
                              apply_flaw(base, spec).values)


class TestFlawSpecValidation:
    def test_severity_bound(self):
        with pytest.raises(ValueError):
            FlawSpec(kind="gap", severity=0.3, location=0.5, seed=0)

    def test_location_required_for_gap_and_spike(self):
        with pytest.raises(ValueError):
            FlawSpec(kind="gap", severity=0.1, seed=0)
        with pytest.raises(ValueError):
            FlawSpec(kind="spike", severity=0.1, seed=0)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            FlawSpec(kind="wobble", severity=0.1, seed=0)

    def test_location_in_open_interval(self):
        with pytest.raises(ValueError):
            FlawSpec(kind="spike", severity=0.1, location=1.0, seed=0)


class TestFlawSweep:
    def test_returns_four(self):
        series = flaw_sweep(1000, "spike", seed=7, location=0.3)
        assert len(series) == 4

    def test_first_is_unflawed_base(self):
        series = flaw_sweep(1000, "gap", seed=7, location=0.5)
        base = gen_gaussian(1000, seed=7)
        assert np.array_equal(series[0].values, base.values)

    def test_shared_base_points(self):
        series = flaw_sweep(1000, "spike", seed=7, location=0.3)
        base = set(series[0].values.tolist())
        for flawed in series[1:]:
            assert base <= set(flawed.values.tolist())

    def test_severities(self):
        series = flaw_sweep(1000, "outlier", seed=4)
        assert [d.n for d in series] == [1000, 1050, 1150, 1250]

    def test_rejects_none(self):
        with pytest.raises(ValueError):
            flaw_sweep(1000, "none", seed=1)


class TestGenClustered:
    def test_deterministic(self):
        a, ca = gen_clustered(1000, [1, 2, 3])
        b, cb = gen_clustered(1000, [1, 2, 3])
        assert np.array_equal(a.values, b.values)
        assert np.array_equal(ca, cb)

    def test_values_in_unit_interval(self):
        d, _ = gen_clustered(2000, 5)
        assert d.values[0] >= 0.0 and d.values[-1] <= 1.0

    def test_component_count_by_size(self):
        _, small = gen_clustered(1000, 0)
        _, big = gen_clustered(100_000, 0)
        assert len(small) in (3, 4)
        assert len(big) == 7

    def test_centers_sorted_and_separated(self):
        _, centers = gen_clustered(1000, 9)
        assert np.all(np.diff(centers) > 0.05)
