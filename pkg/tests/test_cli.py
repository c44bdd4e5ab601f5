import hashlib
import json

import numpy as np

from hetissue.cli import main
from hetissue.imageio import read_mask_png, write_ppm, write_rgb_png
from hetissue.synthgen import build_scene, render


def file_sha(path):
    return hashlib.sha256(path.read_bytes()).hexdigest()


def scene_png(tmp_path, seed=820, kind="clean", pen_color=None, name="slide.png"):
    img = render(build_scene(seed, kind=kind, pen_color=pen_color)).image
    path = tmp_path / name
    write_rgb_png(path, img)
    return path, img


class TestSegment:
    def test_he_mask_and_report(self, tmp_path):
        slide, _ = scene_png(tmp_path)
        mask_path = tmp_path / "mask.png"
        report_path = tmp_path / "report.json"
        code = main(
            ["segment", str(slide), "--out", str(mask_path), "--report", str(report_path)]
        )
        assert code == 0
        report = json.loads(report_path.read_text())
        canonical = report["canonical"]
        assert canonical["command"] == "segment"
        assert canonical["method"] == "he"
        assert not canonical["degenerate"]
        bits = read_mask_png(mask_path)
        assert bits.sum() == canonical["tissue_pixel_count"]
        assert canonical["tissue_fraction"] == bits.sum() / bits.size

    def test_tiled_mask_file_is_byte_identical(self, tmp_path):
        slide, _ = scene_png(tmp_path, seed=821, kind="pen", pen_color="green")
        plain = tmp_path / "plain.png"
        tiled = tmp_path / "tiled.png"
        assert main(["segment", str(slide), "--out", str(plain)]) == 0
        assert main(["segment", str(slide), "--out", str(tiled), "--tiled", "--tile-size", "128"]) == 0
        assert plain.read_bytes() == tiled.read_bytes()

    def test_tiled_ppm_input(self, tmp_path):
        img = render(build_scene(822, kind="scan")).image
        slide = tmp_path / "slide.ppm"
        write_ppm(slide, img)
        out = tmp_path / "mask.png"
        assert main(["segment", str(slide), "--out", str(out), "--tiled"]) == 0
        from hetissue import segment_he

        expected, _ = segment_he(img)
        assert np.array_equal(read_mask_png(out), expected.bits)

    def test_luminance_method(self, tmp_path):
        slide, img = scene_png(tmp_path, seed=823)
        out = tmp_path / "mask.png"
        report = tmp_path / "r.json"
        code = main(
            ["segment", str(slide), "--method", "luminance", "--out", str(out), "--report", str(report)]
        )
        assert code == 0
        assert json.loads(report.read_text())["canonical"]["method_id"] == "luminance_baseline"

    def test_tiny_white_image_is_degenerate(self, tmp_path):
        slide = tmp_path / "white.ppm"
        write_ppm(slide, np.full((1, 1, 3), 255, dtype=np.uint8))
        out = tmp_path / "mask.png"
        report = tmp_path / "r.json"
        code = main(["segment", str(slide), "--out", str(out), "--report", str(report)])
        assert code == 0
        assert json.loads(report.read_text())["canonical"]["degenerate"] is True
        assert read_mask_png(out).sum() == 0

    def test_unreadable_input_exits_2(self, tmp_path):
        junk = tmp_path / "junk.png"
        junk.write_bytes(b"not an image")
        assert main(["segment", str(junk), "--out", str(tmp_path / "m.png")]) == 2
        assert main(["segment", str(tmp_path / "missing.png"), "--out", str(tmp_path / "m.png")]) == 2

    def test_tiled_luminance_rejected(self, tmp_path):
        slide, _ = scene_png(tmp_path, seed=824)
        code = main(
            ["segment", str(slide), "--method", "luminance", "--tiled", "--out", str(tmp_path / "m.png")]
        )
        assert code == 2


class TestGen:
    def test_writes_full_corpus(self, tmp_path):
        out = tmp_path / "corpus"
        assert main(["gen", "--out", str(out), "--master-seed", "9"]) == 0
        assert len(list(out.glob("scene_*.png"))) == 180  # image + truth + labels
        assert len(list(out.glob("scene_*.json"))) == 60
        assert (out / "corpus.json").is_file()

    def test_rerun_is_byte_identical(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        assert main(["gen", "--out", str(a), "--master-seed", "9"]) == 0
        assert main(["gen", "--out", str(b), "--master-seed", "9"]) == 0
        for pa in sorted(a.iterdir()):
            assert file_sha(pa) == file_sha(b / pa.name), pa.name

    def test_master_seed_changes_corpus(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        assert main(["gen", "--out", str(a), "--master-seed", "9"]) == 0
        assert main(["gen", "--out", str(b), "--master-seed", "10"]) == 0
        assert file_sha(a / "scene_000.png") != file_sha(b / "scene_000.png")


class TestEval:
    def test_standard_corpus_report(self, corpus_dir, tmp_path):
        report_path = tmp_path / "eval.json"
        code = main(["eval", "--corpus", str(corpus_dir), "--report", str(report_path)])
        assert code == 0  # pink pen is an expected failure, so the gate holds
        canonical = json.loads(report_path.read_text())["canonical"]
        he = canonical["aggregates"]["he"]
        lum = canonical["aggregates"]["luminance"]
        assert he["scenes_evaluated"] == 60
        assert he["successes"] == 59
        assert he["tissue_segmented"] == 60
        assert lum["artefact_scenes_fully_rejected"] == 0
        assert canonical["expected_failure_scenes"] == [14]
        assert canonical["he_gate_passed"] is True

    def test_single_method(self, corpus_dir, tmp_path):
        report_path = tmp_path / "lum.json"
        code = main(
            ["eval", "--corpus", str(corpus_dir), "--methods", "luminance", "--report", str(report_path)]
        )
        assert code == 0  # no he evaluated, nothing gates
        canonical = json.loads(report_path.read_text())["canonical"]
        assert list(canonical["aggregates"]) == ["luminance"]

    def test_empty_corpus_dir(self, tmp_path):
        empty = tmp_path / "empty"
        empty.mkdir()
        assert main(["eval", "--corpus", str(empty)]) == 2

    def test_missing_truth_file(self, tmp_path):
        out = tmp_path / "corpus"
        assert main(["gen", "--out", str(out)]) == 0
        (out / "scene_000_truth.png").unlink()
        assert main(["eval", "--corpus", str(out)]) == 2

    def test_unknown_method(self, corpus_dir):
        assert main(["eval", "--corpus", str(corpus_dir), "--methods", "psychic"]) == 2


class TestCube:
    def test_sampled_run(self, tmp_path):
        report_path = tmp_path / "cube.json"
        assert main(["cube", "--step", "51", "--report", str(report_path)]) == 0
        canonical = json.loads(report_path.read_text())["canonical"]
        assert canonical["lattice_points"] == 6**3
        assert 0 < canonical["count_nonzero"] < 6**3
        assert canonical["fraction"] == canonical["count_nonzero"] / 6**3

    def test_step_zero_is_usage_error(self):
        assert main(["cube", "--step", "0"]) == 2

    def test_step_not_dividing_255(self):
        assert main(["cube", "--step", "7"]) == 2


class TestUsage:
    def test_no_command(self, capsys):
        assert main([]) == 2
        capsys.readouterr()

    def test_version(self, capsys):
        assert main(["--version"]) == 0
        capsys.readouterr()
