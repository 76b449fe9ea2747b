import numpy as np
import pytest

from swih import GrayImage, read_pgm, write_pgm
from swih.cli import main


@pytest.fixture
def tiled(tmp_path, rng):
    tpl = GrayImage(rng.integers(0, 256, size=(7, 7), dtype=np.uint8))
    search = GrayImage(np.tile(tpl.pixels, (3, 4)))
    write_pgm(tmp_path / "t.pgm", tpl)
    write_pgm(tmp_path / "s.pgm", search)
    return tmp_path


def _likelihood(d, method, out, *extra):
    return main(["likelihood", "--search", str(d / "s.pgm"), "--template", str(d / "t.pgm"),
                 "--bins", "16", "--kernel", "manhattan", "--kw", "7", "--kh", "7",
                 "--method", method, "--out", str(d / out), *extra])


def test_likelihood_tiled_peak(tiled, capsys):
    assert _likelihood(tiled, "swih", "a.pgm", "--csv", str(tiled / "a.csv")) == 0
    assert capsys.readouterr().out.strip() == "peak x=3 y=3 score=1.000000000"
    lmap = read_pgm(tiled / "a.pgm")
    assert (lmap.width, lmap.height) == (28 - 6, 21 - 6)
    assert (tiled / "a.csv").read_text().count("\n") == 15


def test_swih_and_brute_outputs_byte_identical(tiled):
    assert _likelihood(tiled, "swih", "a.pgm", "--csv", str(tiled / "a.csv")) == 0
    assert _likelihood(tiled, "brute", "b.pgm", "--csv", str(tiled / "b.csv")) == 0
    assert (tiled / "a.pgm").read_bytes() == (tiled / "b.pgm").read_bytes()
    assert (tiled / "a.csv").read_bytes() == (tiled / "b.csv").read_bytes()


def test_cake_and_plain_methods(tiled, capsys):
    assert _likelihood(tiled, "cake", "c.pgm", "--rings", "3", "--ring-rule", "level") == 0
    assert _likelihood(tiled, "plain", "p.pgm", "--sim", "intersection") == 0
    assert capsys.readouterr().out.count("score=1.000000000") == 2


def test_even_kernel_exits_1(tiled, capsys):
    rc = main(["likelihood", "--search", str(tiled / "s.pgm"), "--template", str(tiled / "t.pgm"),
               "--kw", "6", "--kh", "7", "--out", str(tiled / "x.pgm")])
    assert rc == 1
    err = capsys.readouterr().err
    assert "odd" in err and err.count("\n") == 1


def test_missing_file_exits_1(tmp_path, capsys):
    rc = main(["likelihood", "--search", str(tmp_path / "none.pgm"), "--template", str(tmp_path / "t.pgm"),
               "--kw", "3", "--kh", "3", "--out", str(tmp_path / "x.pgm")])
    assert rc == 1 and "cannot read" in capsys.readouterr().err


def test_scene_is_deterministic(tmp_path, capsys):
    for tag in ("a", "b"):
        assert main(["scene", "--seed", "4", "--out-search", str(tmp_path / f"s{tag}.pgm"),
                     "--out-template", str(tmp_path / f"t{tag}.pgm")]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == out[1] and out[0].startswith("truth x=")
    assert (tmp_path / "sa.pgm").read_bytes() == (tmp_path / "sb.pgm").read_bytes()


def test_query_csv(tmp_path, example_image, capsys):
    write_pgm(tmp_path / "e.pgm", example_image)
    args = ["query", "--image", str(tmp_path / "e.pgm"), "--x", "1", "--y", "1", "--bins", "2",
            "--kw", "3", "--kh", "3"]
    assert main(args) == 0
    assert capsys.readouterr().out == "bin,value\n0,7\n1,8\n"
    assert main(args + ["--method", "brute", "--normalize", "--out", str(tmp_path / "q.csv")]) == 0
    lines = (tmp_path / "q.csv").read_text().splitlines()
    assert lines[0] == "bin,value" and float(lines[1].split(",")[1]) == 7 / 15
    assert main(args + ["--kernel", "chebyshev", "--method", "cake", "--rings", "2"]) == 0
    assert capsys.readouterr().out == "bin,value\n0,6\n1,4\n"


def test_query_strict_border_error(tmp_path, example_image, capsys):
    write_pgm(tmp_path / "e.pgm", example_image)
    rc = main(["query", "--image", str(tmp_path / "e.pgm"), "--x", "0", "--y", "0", "--kw", "3", "--kh", "3"])
    assert rc == 1 and "does not fit" in capsys.readouterr().err


def test_bench_command(tmp_path, capsys):
    path = tmp_path / "b.csv"
    rc = main(["bench", "--width", "30", "--height", "20", "--bins", "4", "--kernels", "3,5",
               "--methods", "swih,cake", "--reps", "1", "--csv", str(path)])
    assert rc == 0
    assert len(path.read_text().splitlines()) == 5


def test_bench_invalid_exits_1(tmp_path):
    assert main(["bench", "--width", "10", "--height", "10", "--kernels", "4", "--csv", str(tmp_path / "b.csv")]) == 1
