import numpy as np
import pytest

from hetissue import (
    DegenerateHistogram,
    Histogram256,
    Method,
    apply_threshold,
    apply_threshold_below,
    build_histogram,
    merge_histograms,
    otsu_threshold,
)

from oracles import fraction_otsu, integer_otsu, random_histograms


def hist_from(**bins) -> Histogram256:
    counts = np.zeros(256, dtype=np.int64)
    for key, value in bins.items():
        counts[int(key.lstrip("b"))] = value
    return Histogram256(counts)


class TestBuildHistogram:
    def test_all_zero_field(self):
        h = build_histogram(np.zeros((10, 10)))
        assert h.counts[0] == 100
        assert h.counts[1:].sum() == 0
        assert h.total == 100

    def test_edge_inclusion_of_one(self):
        field = np.array([0.0] * 50 + [1.0] * 50)
        h = build_histogram(field)
        assert h.counts[0] == 50 and h.counts[255] == 50

    def test_half_lands_in_bin_128(self):
        h = build_histogram(np.full(10, 0.5))
        assert h.counts[128] == 10

    def test_bin_lower_edges(self):
        for i in (0, 1, 127, 255):
            h = build_histogram(np.array([i / 256]))
            assert h.counts[i] == 1

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            build_histogram(np.array([1.5]))
        with pytest.raises(ValueError):
            build_histogram(np.array([-0.1]))


class TestMerge:
    def test_identity(self):
        h = hist_from(b3=5, b200=7)
        empty = Histogram256(np.zeros(256, dtype=np.int64))
        assert np.array_equal(merge_histograms(h, empty).counts, h.counts)

    def test_commutative_associative(self):
        rng = np.random.default_rng(21)
        for _ in range(20):
            a, b, c = (Histogram256(rng.integers(0, 50, 256)) for _ in range(3))
            ab = merge_histograms(a, b)
            ba = merge_histograms(b, a)
            assert np.array_equal(ab.counts, ba.counts)
            assert np.array_equal(
                merge_histograms(ab, c).counts, merge_histograms(a, merge_histograms(b, c)).counts
            )

    def test_tiles_equal_whole(self):
        rng = np.random.default_rng(22)
        field = rng.uniform(0, 1, (64, 64))
        whole = build_histogram(field)
        quads = [field[:32, :32], field[:32, 32:], field[32:, :32], field[32:, 32:]]
        merged = build_histogram(quads[0])
        for q in quads[1:]:
            merged = merge_histograms(merged, build_histogram(q))
        assert np.array_equal(merged.counts, whole.counts)
        assert merged.total == whole.total == 64 * 64


class TestOtsu:
    def test_two_spikes_tie_breaks_low(self):
        # sigma_b^2 is constant across every split between the spikes; the
        # fraction oracle confirms, and the smallest index wins.
        h = hist_from(b0=50, b255=50)
        oracle_t, oracle_sigma = fraction_otsu(h.counts)
        assert oracle_t == 0 and oracle_sigma > 0
        thr = otsu_threshold(h)
        assert thr.bin_index == 0
        assert thr.gamma == 1 / 256

    def test_single_bin_no_separation(self):
        h = hist_from(b37=1000)
        thr = otsu_threshold(h)
        assert thr.bin_index == 0
        assert thr.variance == 0.0

    def test_empty_histogram_raises(self):
        with pytest.raises(DegenerateHistogram):
            otsu_threshold(Histogram256(np.zeros(256, dtype=np.int64)))

    def test_gamma_is_upper_edge(self):
        rng = np.random.default_rng(23)
        for _ in range(10):
            h = Histogram256(rng.integers(0, 100, 256))
            thr = otsu_threshold(h)
            assert thr.gamma == (thr.bin_index + 1) / 256

    def test_matches_definitional_oracle(self):
        # Exact-rational textbook formula, recomputed per split.
        for counts in random_histograms(seed=101, n=18):
            t, sigma = fraction_otsu(counts)
            thr = otsu_threshold(Histogram256(counts))
            assert thr.bin_index == t
            assert thr.variance == pytest.approx(float(sigma), rel=1e-12, abs=1e-300)

    def test_integer_oracle_agrees_with_definitional(self):
        # Validates the fast oracle the acceptance suite runs at scale.
        for counts in random_histograms(seed=102, n=18):
            assert integer_otsu(counts) == fraction_otsu(counts)[0]

    def test_total_variance_identity(self):
        # w0*mu0 + w1*mu1 reproduces the global mean at every split.
        rng = np.random.default_rng(24)
        for _ in range(5):
            counts = rng.integers(0, 1000, 256).astype(np.float64)
            total = counts.sum()
            centers = (np.arange(256) + 0.5) / 256
            grand_mean = float((counts * centers).sum() / total)
            for t in range(255):
                c0 = counts[: t + 1].sum()
                c1 = total - c0
                term0 = (counts[: t + 1] * centers[: t + 1]).sum() / total
                term1 = (counts[t + 1 :] * centers[t + 1 :]).sum() / total
                assert term0 + term1 == pytest.approx(grand_mean, rel=1e-9)
                if c0 and c1:
                    w0mu0 = (c0 / total) * ((counts[: t + 1] * centers[: t + 1]).sum() / c0)
                    w1mu1 = (c1 / total) * ((counts[t + 1 :] * centers[t + 1 :]).sum() / c1)
                    assert w0mu0 + w1mu1 == pytest.approx(grand_mean, rel=1e-9)


class TestApplyThreshold:
    def test_all_zero_field_never_tissue(self):
        field = np.zeros((5, 5))
        thr = otsu_threshold(build_histogram(field))
        mask = apply_threshold(field, thr, Method.HE_REPRESENTATION)
        assert mask.tissue_pixel_count == 0

    def test_value_equal_to_gamma_rejected(self):
        thr = otsu_threshold(hist_from(b0=5, b128=5))
        field = np.full((2, 2), thr.gamma)
        mask = apply_threshold(field, thr, Method.HE_REPRESENTATION)
        assert mask.tissue_pixel_count == 0

    def test_end_to_end_bimodal(self):
        field = np.array([0.0] * 50 + [0.9] * 50).reshape(10, 10)
        thr = otsu_threshold(build_histogram(field))
        mask = apply_threshold(field, thr, Method.HE_REPRESENTATION)
        assert mask.tissue_pixel_count == 50
        assert np.array_equal(mask.bits, field > thr.gamma)
        assert mask.gamma == thr.gamma
        assert mask.method is Method.HE_REPRESENTATION

    def test_below_selects_low_bins_exactly(self):
        rng = np.random.default_rng(25)
        field = rng.uniform(0, 1, (40, 40))
        thr = otsu_threshold(build_histogram(field))
        mask = apply_threshold_below(field, thr, Method.LUMINANCE_BASELINE)
        bins = np.minimum((field * 256).astype(int), 255)
        assert np.array_equal(mask.bits, bins <= thr.bin_index)


class TestPermutationInvariance:
    def test_histogram_threshold_and_mask_multiset(self):
        rng = np.random.default_rng(26)
        field = rng.uniform(0, 1, (30, 30))
        perm = rng.permutation(field.size)
        shuffled = field.reshape(-1)[perm].reshape(field.shape)

        h0, h1 = build_histogram(field), build_histogram(shuffled)
        assert np.array_equal(h0.counts, h1.counts)
        t0, t1 = otsu_threshold(h0), otsu_threshold(h1)
        assert t0 == t1
        m0 = apply_threshold(field, t0, Method.HE_REPRESENTATION)
        m1 = apply_threshold(shuffled, t1, Method.HE_REPRESENTATION)
        assert m0.tissue_pixel_count == m1.tissue_pixel_count
        assert np.array_equal(m0.bits.reshape(-1)[perm], m1.bits.reshape(-1))
