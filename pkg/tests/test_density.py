import numpy as np
import pytest

from accustripes.core import DegenerateRange, ingest
from accustripes.density import density_for, kde, silverman_bandwidth


class TestSilvermanBandwidth:
    def test_standard_normal_magnitude(self):
        rng = np.random.default_rng(123)
        values = rng.normal(0, 1, 10_000)
        d = ingest(values, "t")
        h = silverman_bandwidth(d)
        # plug-in arithmetic on the realized sigma / IQR
        sigma = np.std(values, ddof=1)
        iqr = np.subtract(*np.percentile(values, [75, 25]))
        expected = 0.9 * min(sigma, iqr / 1.34) * 10_000 ** -0.2
        assert h == pytest.approx(expected, rel=1e-12)
        # and near the ideal-sigma value 0.9 * 1 * n^(-1/5) ~ 0.143
        assert h == pytest.approx(0.1427, rel=0.10)

    def test_degenerate(self):
        with pytest.raises(DegenerateRange):
            silverman_bandwidth(ingest([5.0, 5.0, 5.0, 5.0], "t"))

    def test_scale_homogeneous(self):
        rng = np.random.default_rng(5)
        values = rng.normal(0, 1, 500)
        h1 = silverman_bandwidth(ingest(values, "t"))
        h2 = silverman_bandwidth(ingest(3.5 * values, "t"))
        assert h2 == pytest.approx(3.5 * h1, rel=1e-9)

    def test_iqr_zero_falls_back_to_sigma(self):
        values = np.concatenate([np.full(80, 1.0), [0.0, 2.0]])
        d = ingest(values, "t")
        sigma = np.std(d.values, ddof=1)
        assert silverman_bandwidth(d) == pytest.approx(
            0.9 * sigma * len(values) ** -0.2)


class TestKde:
    def test_peak_at_point_mass(self):
        rng = np.random.default_rng(0)
        values = 0.5 + rng.uniform(-1e-6, 1e-6, 1000)
        d = ingest(values, "t")
        est = kde(d, h=0.01)
        assert est.xs[np.argmax(est.ys)] == pytest.approx(0.5, abs=0.005)

    def test_integral_near_one(self):
        rng = np.random.default_rng(1)
        d = ingest(rng.normal(0.5, 0.1, 5000), "t")
        est = density_for(d)
        integral = np.trapezoid(est.ys, est.xs)
        assert 0.99 <= integral <= 1.01

    def test_non_negative(self):
        rng = np.random.default_rng(2)
        d = ingest(rng.uniform(0, 1, 300), "t")
        est = density_for(d)
        assert np.all(est.ys >= 0)

    def test_translation_equivariant(self):
        rng = np.random.default_rng(3)
        values = rng.normal(0, 1, 400)
        est0 = kde(ingest(values, "t"), h=0.2)
        est1 = kde(ingest(values + 5.0, "t"), h=0.2)
        assert np.allclose(est1.xs, est0.xs + 5.0, atol=1e-9)
        assert np.allclose(est1.ys, est0.ys, atol=1e-9)

    def test_two_separated_clusters_equal_peaks(self):
        rng = np.random.default_rng(4)
        values = np.concatenate([rng.normal(0.2, 0.02, 2000),
                                 rng.normal(0.8, 0.02, 2000)])
        d = ingest(values, "t")
        est = density_for(d)
        left = est.ys[est.xs < 0.5].max()
        right = est.ys[est.xs >= 0.5].max()
        assert abs(left - right) / max(left, right) < 0.05

    def test_flattens_as_h_doubles(self):
        rng = np.random.default_rng(6)
        d = ingest(rng.normal(0, 1, 1000), "t")
        peaks = [kde(d, h).ys.max() for h in (0.05, 0.1, 0.2, 0.4)]
        assert all(b <= a + 1e-12 for a, b in zip(peaks, peaks[1:]))

    def test_grid_spans_padded_support(self):
        rng = np.random.default_rng(7)
        d = ingest(rng.uniform(0, 1, 100), "t")
        est = kde(d, h=0.1, sample_count=64)
        assert len(est.xs) == 64
        assert est.xs[0] == pytest.approx(d.lo - 0.3)
        assert est.xs[-1] == pytest.approx(d.hi + 0.3)

    def test_parameter_validation(self):
        d = ingest([0.0, 1.0], "t")
        with pytest.raises(ValueError):
            kde(d, h=0.0)
        with pytest.raises(ValueError):
            kde(d, h=0.1, sample_count=8)
