import json

import pytest

from sphere_bases import cli
from sphere_bases.cli import EXIT_FALSE, EXIT_OK, EXIT_USAGE, main
from sphere_bases.errors import ConsistencyError


def json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_basis_json_lines(capsys):
    assert main(["basis", "--family", "cube", "--n", "5", "--k", "2", "--json"]) == EXIT_OK
    lines = json_lines(capsys.readouterr().out)
    assert len(lines) == 31
    assert lines[0]["seed"] is True
    assert [line["index"] for line in lines] == list(range(31))


def test_basis_check(capsys):
    assert main(["basis", "--family", "simplex", "--n", "5", "--k", "2", "--check", "--json"]) == EXIT_OK
    summary = json_lines(capsys.readouterr().out)[-1]
    assert summary["ok"] is True
    assert summary["size"] == summary["rank"] == summary["betti"] == 10


def test_basis_written_to_file(tmp_path, capsys):
    target = tmp_path / "b.json"
    assert main(["basis", "--n", "4", "--k", "2", "--out", str(target)]) == EXIT_OK
    assert json.loads(target.read_text(encoding="utf-8"))["n"] == 4
    assert (tmp_path / "b.json.sha256").exists()


def test_betti(capsys):
    assert main(["betti", "--family", "cube", "--n", "4", "--k", "2", "--ell", "2", "--json"]) == EXIT_OK
    (line,) = json_lines(capsys.readouterr().out)
    assert line["betti"] == line["formula"] == 7


def test_cells_faces(capsys):
    assert main(["cells", "--family", "cube", "--n", "3", "--cell", "**0", "--faces", "1"]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out == ["0*0", "1*0", "*00", "*10", "-- 4 cells"]


def test_parse_error_is_usage_error(capsys):
    assert main(["cells", "--family", "cube", "--n", "3", "--cell", "0*2"]) == EXIT_USAGE
    assert "position 3" in capsys.readouterr().err


def test_unknown_verb():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_decompose_random_is_reproducible(capsys):
    argv = ["decompose", "--family", "cube", "--n", "5", "--k", "2", "--random", "3", "--seed", "7", "--json"]
    assert main(argv) == EXIT_OK
    first = capsys.readouterr().out
    assert main(argv) == EXIT_OK
    assert capsys.readouterr().out == first
    lines = json_lines(first)
    assert len(lines) == 3
    assert all(line["seed"] == 7 and line["oracle_agrees"] for line in lines)
    assert all(line["sampled"] == line["decomposition"]["indices"] for line in lines)


def test_decompose_rejects_non_cycle(capsys):
    argv = ["decompose", "--family", "simplex", "--n", "4", "--k", "2", "--cells", "{1,2,3}"]
    assert main(argv) == EXIT_USAGE
    assert "not a cycle" in capsys.readouterr().err


def test_counts_sequences(capsys):
    assert main(["counts", "--fn", "s", "--nmax", "9", "--oeis", "--json"]) == EXIT_OK
    rows = {row["k"]: row["values"] for row in json_lines(capsys.readouterr().out)}
    assert rows[1] == [1, 5, 17, 49, 129, 321, 769, 1793]
    assert rows[2] == [1, 7, 31, 111, 351, 1023, 2815]


def test_counts_xlsx(tmp_path, capsys):
    target = tmp_path / "s.xlsx"
    assert main(["counts", "--fn", "bw", "--nmax", "6", "--export-xlsx", str(target)]) == EXIT_OK
    assert target.exists()


def test_identities(capsys):
    assert main(["identities", "--nmax", "12", "--bw-nmax", "10"]) == EXIT_OK
    assert "FAIL" not in capsys.readouterr().out


def test_torus(tmp_path, capsys):
    target = tmp_path / "torus.off"
    assert main(["torus", "--out", str(target)]) == EXIT_OK
    assert "excluded=[0, 1, 2]" in capsys.readouterr().out
    assert target.read_text(encoding="utf-8").startswith("nOFF\n4\n16 16 32\n")


def test_robust(capsys):
    assert main(["robust", "--family", "simplex", "--n", "3", "--json"]) == EXIT_OK
    (report,) = json_lines(capsys.readouterr().out)
    assert report["total"] == report["verified"] == 7


def test_treecheck(capsys):
    assert main(["treecheck", "--family", "simplex", "--n", "4", "--k", "2"]) == EXIT_OK
    assert "verdict=True" in capsys.readouterr().out


def test_treecheck_needs_arguments(capsys):
    assert main(["treecheck"]) == EXIT_USAGE


@pytest.mark.parametrize(
    "argv",
    [
        ["basis", "--family", "cube", "--n", "12", "--k", "2", "--json"],
        ["basis", "--family", "cube", "--n", "5", "--k", "2", "--max-n", "4"],
        ["decompose", "--family", "simplex", "--n", "11", "--k", "2", "--random", "1"],
        ["betti", "--family", "cube", "--n", "9", "--k", "2"],
        ["cells", "--family", "cube", "--n", "12", "--j", "1"],
        ["robust", "--family", "simplex", "--n", "4", "--max-n", "3"],
        ["treecheck", "--family", "cube", "--n", "6", "--k", "2", "--max-n", "5"],
    ],
)
def test_size_guards_refuse(capsys, argv):
    assert main(argv) == EXIT_USAGE
    assert "exceeds the configured bound" in capsys.readouterr().err


def test_max_n_raises_the_bound(capsys):
    assert main(["betti", "--family", "cube", "--n", "9", "--k", "1", "--ell", "0", "--max-n", "9", "--json"]) == EXIT_OK
    assert json_lines(capsys.readouterr().out)[0]["betti"] == 1


def test_internal_failure_is_not_a_usage_error(monkeypatch):
    def broken():
        raise ConsistencyError("peel left cells behind")

    monkeypatch.setattr(cli, "torus_build", broken)
    assert main(["torus"]) == EXIT_FALSE
