import numpy as np
import pytest

from hetissue import (
    ArrayTileReader,
    Label,
    Method,
    TileGrid,
    TileReadError,
    artefact_dominant_scene,
    build_scene,
    cube_analysis,
    dice,
    render,
    segment_he,
    segment_he_tiled,
    segment_luminance,
    tissue_representation,
)
from hetissue.imageio import PpmTileReader, write_ppm


def two_tone_image(h=20, w=20):
    """Left half stained purple-pink, right half plain white."""
    img = np.empty((h, w, 3), dtype=np.uint8)
    img[:, : w // 2] = (190, 80, 170)
    img[:, w // 2 :] = (255, 255, 255)
    return img


class TestSegmentHe:
    def test_two_tone_exact_mask(self):
        img = two_tone_image()
        mask, report = segment_he(img)
        expected = np.zeros((20, 20), dtype=bool)
        expected[:, :10] = True
        assert np.array_equal(mask.bits, expected)
        assert report.method is Method.HE_REPRESENTATION
        assert report.tissue_pixel_count == 200
        assert report.total_pixels == 400
        assert report.tissue_fraction == 0.5
        assert not report.degenerate

    def test_uniform_image_degenerate(self):
        img = np.full((8, 8, 3), 255, dtype=np.uint8)
        mask, report = segment_he(img)
        assert report.degenerate
        assert mask.tissue_pixel_count == 0

    def test_single_pixel_degenerate(self):
        mask, report = segment_he(np.full((1, 1, 3), 255, dtype=np.uint8))
        assert report.degenerate and mask.tissue_pixel_count == 0

    def test_grey_slide_is_degenerate_not_error(self):
        # Two grey tones: the representation collapses both to zero.
        img = np.full((8, 8, 3), 90, dtype=np.uint8)
        img[:4] = 200
        mask, report = segment_he(img)
        assert report.degenerate and mask.tissue_pixel_count == 0

    def test_clean_scene_dice(self):
        scene = build_scene(903, kind="clean")
        rendered = render(scene)
        mask, _ = segment_he(rendered.image)
        assert dice(mask, rendered.truth_bits) >= 0.95

    def test_green_never_tissue(self):
        rng = np.random.default_rng(31)
        for kind, color in (("pen", "green"), ("scan", None), ("clean", None)):
            scene = build_scene(int(rng.integers(2**60)), kind=kind, pen_color=color)
            img = render(scene).image
            mask, _ = segment_he(img)
            g_not_lowest = (img[..., 1] >= img[..., 0]) | (img[..., 1] >= img[..., 2])
            assert not np.any(mask.bits & g_not_lowest)


class TestSegmentLuminance:
    def test_dark_class_is_tissue(self):
        img = two_tone_image()
        mask, report = segment_luminance(img)
        assert report.method is Method.LUMINANCE_BASELINE
        expected = np.zeros((20, 20), dtype=bool)
        expected[:, :10] = True  # the stained (darker) half
        assert np.array_equal(mask.bits, expected)

    def test_clean_scene_dice(self):
        scene = build_scene(904, kind="clean")
        rendered = render(scene)
        mask, _ = segment_luminance(rendered.image)
        assert dice(mask, rendered.truth_bits) >= 0.9

    def test_pen_marks_leak_into_mask(self):
        scene = build_scene(905, kind="pen", pen_color="black")
        rendered = render(scene)
        mask, _ = segment_luminance(rendered.image)
        pen = rendered.labels == Label.PEN
        assert np.count_nonzero(mask.bits & pen) > 0

    def test_dominant_artefact_starves_tissue(self):
        rendered = render(artefact_dominant_scene(906))
        mask, _ = segment_luminance(rendered.image)
        tissue = rendered.labels == Label.TISSUE
        recall = np.count_nonzero(mask.bits & tissue) / np.count_nonzero(tissue)
        assert recall < 0.5


class TestComparativeClaim:
    def test_pen_rejected_by_he_but_not_luminance(self):
        for seed, color in ((907, "blue"), (908, "green"), (909, "orange"), (910, "black")):
            rendered = render(build_scene(seed, kind="pen", pen_color=color))
            pen = rendered.labels == Label.PEN
            he_mask, _ = segment_he(rendered.image)
            lum_mask, _ = segment_luminance(rendered.image)
            assert np.count_nonzero(he_mask.bits & pen) == 0
            assert np.count_nonzero(lum_mask.bits & pen) > 0

    def test_eosin_coloured_pen_defeats_he(self):
        rendered = render(build_scene(911, kind="pen", pen_color="pink"))
        pen = rendered.labels == Label.PEN
        he_mask, _ = segment_he(rendered.image)
        assert np.count_nonzero(he_mask.bits & pen) > 0


class TestTileGrid:
    def test_partition(self):
        grid = TileGrid.cover(1000, 700, 512)
        grid.validate_partition()
        assert len(grid.tiles) == 4

    def test_rejects_non_power_of_two(self):
        with pytest.raises(ValueError):
            TileGrid.cover(100, 100, 500)

    def test_rejects_bad_dims(self):
        with pytest.raises(ValueError):
            TileGrid.cover(0, 100, 512)


class TestTiled:
    @staticmethod
    def make_image(seed, kind="clean", pen_color=None, width=480, height=320):
        return render(build_scene(seed, width=width, height=height, kind=kind, pen_color=pen_color)).image

    def test_single_tile_identity(self):
        img = self.make_image(912)
        mask0, _ = segment_he(img)
        grid = TileGrid.cover(img.shape[1], img.shape[0], 512)
        assert len(grid.tiles) == 1
        mask1, _ = segment_he_tiled(ArrayTileReader(img), grid)
        assert np.array_equal(mask0.bits, mask1.bits)

    def test_non_divisible_dimensions(self):
        img = self.make_image(913, width=1000, height=700)
        mask0, report0 = segment_he(img)
        mask1, report1 = segment_he_tiled(ArrayTileReader(img), TileGrid.cover(1000, 700, 512))
        assert np.array_equal(mask0.bits, mask1.bits)
        assert report0.gamma == report1.gamma
        assert report0.tissue_pixel_count == report1.tissue_pixel_count

    def test_workers_do_not_change_output(self):
        img = self.make_image(914, kind="scan")
        grid = TileGrid.cover(img.shape[1], img.shape[0], 128)
        mask1, _ = segment_he_tiled(ArrayTileReader(img), grid, workers=1)
        mask4, _ = segment_he_tiled(ArrayTileReader(img), grid, workers=4)
        assert np.array_equal(mask1.bits, mask4.bits)

    def test_ppm_reader_matches_array_reader(self, tmp_path):
        img = self.make_image(915, kind="pen", pen_color="blue", width=513, height=257)
        path = tmp_path / "slide.ppm"
        write_ppm(path, img)
        mask0, _ = segment_he(img)
        with PpmTileReader(path) as reader:
            assert (reader.width, reader.height) == (513, 257)
            mask1, _ = segment_he_tiled(reader, TileGrid.cover(513, 257, 128))
        assert np.array_equal(mask0.bits, mask1.bits)

    def test_ppm_reader_safe_under_concurrent_tiles(self, tmp_path):
        # Positional reads keep parallel passes over one handle exact.
        img = self.make_image(916, kind="scan", width=640, height=480)
        path = tmp_path / "slide.ppm"
        write_ppm(path, img)
        mask0, _ = segment_he(img)
        grid = TileGrid.cover(640, 480, 64)
        with PpmTileReader(path) as reader:
            mask1, _ = segment_he_tiled(reader, grid, workers=8)
        assert np.array_equal(mask0.bits, mask1.bits)

    def test_degenerate_tiled(self):
        img = np.full((600, 600, 3), 255, dtype=np.uint8)
        mask, report = segment_he_tiled(ArrayTileReader(img), TileGrid.cover(600, 600, 256))
        assert report.degenerate and mask.tissue_pixel_count == 0

    def test_reader_failure_carries_tile_coordinates(self):
        class FailingReader:
            width = 64
            height = 64

            def read_tile(self, x, y, w, h):
                raise OSError("disk gone")

        with pytest.raises(TileReadError) as excinfo:
            segment_he_tiled(FailingReader(), TileGrid.cover(64, 64, 32))
        assert "x=0" in str(excinfo.value) and "y=0" in str(excinfo.value)
        assert excinfo.value.tile == (0, 0, 32, 32)


class TestCubeAnalysis:
    def test_corner_step(self):
        # Only the magenta corner (255, 0, 255) is positive among the 8.
        count, fraction = cube_analysis(step=255)
        assert count == 1
        assert fraction == 1 / 8

    def test_invalid_steps(self):
        with pytest.raises(ValueError):
            cube_analysis(0)
        with pytest.raises(ValueError):
            cube_analysis(2)  # does not divide 255

    def test_sampled_lattice_matches_brute_force(self):
        step = 15
        lattice = range(0, 256, step)
        expected = 0
        for r in lattice:
            for g in lattice:
                for b in lattice:
                    if max(r - g, 0) * max(b - g, 0) > 0:
                        expected += 1
        count, fraction = cube_analysis(step)
        assert count == expected
        assert fraction == expected / len(lattice) ** 3

    def test_uses_real_representation(self):
        # Spot check: a lattice slice agrees with tissue_representation.
        img = np.zeros((1, 2, 3), dtype=np.uint8)
        img[0, 0] = (255, 0, 255)
        img[0, 1] = (120, 120, 120)
        t = tissue_representation(img)
        assert t[0, 0] == 1.0 and t[0, 1] == 0.0
