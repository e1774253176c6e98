import subprocess
import sys

import numpy as np
import pytest

from shapexml.cli import main
from shapexml.contour import BinaryImage, write_pbm
from shapexml.descriptor import read_descriptor
from shapexml.synthetic import make_corpus, write_corpus


@pytest.fixture
def square_pbm(tmp_path):
    px = np.zeros((80, 80), dtype=bool)
    px[15:65, 15:65] = True
    path = tmp_path / "square-01.pbm"
    path.write_bytes(write_pbm(BinaryImage(px)))
    return path


@pytest.fixture(scope="module")
def db(tmp_path_factory):
    root = tmp_path_factory.mktemp("db")
    write_corpus(root, make_corpus())
    return root


def test_describe_square(square_pbm, capsys):
    assert main(["describe", str(square_pbm)]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "NP 256" and out[1] == "NC 4"
    assert all(line.split()[1] == "R" for line in out[2:])
    d = read_descriptor(square_pbm.with_suffix(".xml"))
    assert d.nc == 4 and d.name == "square-01"


def test_describe_output_and_name(square_pbm, tmp_path, capsys):
    out = tmp_path / "o.xml"
    assert main(["describe", str(square_pbm), "-o", str(out), "--name", "sq", "--resample", "128"]) == 0
    d = read_descriptor(out)
    assert d.name == "sq" and d.np == 128


def test_describe_missing_file(tmp_path, capsys):
    missing = tmp_path / "nothing.pbm"
    assert main(["describe", str(missing)]) == 1
    err = capsys.readouterr().err
    assert str(missing) in err and len(err.strip().splitlines()) == 1


def test_describe_white_image(tmp_path, capsys):
    path = tmp_path / "white.pbm"
    path.write_bytes(write_pbm(BinaryImage(np.zeros((20, 20), dtype=bool))))
    assert main(["describe", str(path)]) == 1
    assert "EmptyImage" in capsys.readouterr().err
    assert not path.with_suffix(".xml").exists()


def test_describe_disc_needs_split(tmp_path, capsys):
    yy, xx = np.mgrid[:120, :120]
    path = tmp_path / "disc.pbm"
    path.write_bytes(write_pbm(BinaryImage((xx - 60) ** 2 + (yy - 60) ** 2 < 45**2)))
    assert main(["describe", str(path)]) == 1
    assert "InsufficientCorners" in capsys.readouterr().err
    assert main(["describe", str(path), "--split-closed"]) == 0
    assert "NC 2" in capsys.readouterr().out


def test_describe_bad_quantizer(square_pbm, tmp_path, capsys):
    q = tmp_path / "q.cfg"
    q.write_text("nonsense = 3\n")
    assert main(["describe", str(square_pbm), "--quantizer", str(q)]) == 2


def test_match_self(db, capsys):
    f = str(db / "square-00.xml")
    assert main(["match", f, f]) == 0
    assert capsys.readouterr().out.strip() == "0"


def test_match_dump_matrix(db, tmp_path, capsys):
    csv_path = tmp_path / "m.csv"
    assert main(["match", str(db / "square-00.xml"), str(db / "triangle-00.xml"), "--dump-matrix", str(csv_path)]) == 0
    rows = [line.split(",") for line in csv_path.read_text().splitlines()]
    assert rows[0][:2] == ["", "-"] and len(rows[0]) == 2 + 12
    assert len(rows) == 2 + 16
    assert rows[1][1:4] == ["0", "2", "4"]


def test_query_csv(db, capsys):
    assert main(["query", str(db / "circle-04.xml"), "--db", str(db), "--top", "3"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "rank,name,distance"
    assert len(lines) == 4
    assert all(line.split(",")[1].startswith("circle-") for line in lines[1:])


def test_index(db, tmp_path):
    out = tmp_path / "index.csv"
    assert main(["index", str(db), "-o", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "name,class,np,nc,codes" and len(lines) == 31


def test_bench_summary(db, tmp_path, capsys):
    report = tmp_path / "r.csv"
    assert main(["bench", "--db", str(db), "--k", "3,7", "--iters", "2", "--report", str(report)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "k,percent_matching"
    assert [line.split(",")[0] for line in lines[1:]] == ["3", "7"]
    assert len(report.read_text().splitlines()) == 1 + 2 * 2


def test_bench_all_skipped(db, capsys):
    assert main(["bench", "--db", str(db), "--k", "50"]) == 1
    assert "InsufficientClassMembers" in capsys.readouterr().err


def test_unknown_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["match", "a.xml", "b.xml", "--frobnicate"])
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_console_exit_codes(tmp_path):
    run = subprocess.run([sys.executable, "-m", "shapexml.cli", "describe"], capture_output=True)
    assert run.returncode == 2


def test_deterministic_outputs(db, square_pbm, tmp_path, capsys):
    outs = []
    for i in range(2):
        x = tmp_path / f"d{i}.xml"
        s = tmp_path / f"s{i}.csv"
        main(["describe", str(square_pbm), "-o", str(x)])
        main(["bench", "--db", str(db), "--k", "3", "--iters", "3", "--seed", "9", "--summary", str(s)])
        outs.append((x.read_bytes(), s.read_bytes()))
    assert outs[0] == outs[1]
