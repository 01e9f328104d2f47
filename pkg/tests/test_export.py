import pytest
from openpyxl import load_workbook

from sphere_bases.bases import cube_basis, simplex_basis
from sphere_bases.cells import Family
from sphere_bases.export import cache_path, export_table_to_excel, load_or_build_basis, read_basis, write_basis
from sphere_bases.errors import SizeGuardError


def test_basis_file_round_trip(tmp_path):
    basis = simplex_basis(5, 2)
    path = write_basis(basis, tmp_path / "basis.json")
    assert read_basis(path) == basis


def test_tampered_file_is_ignored(tmp_path):
    path = write_basis(cube_basis(4, 2), tmp_path / "basis.json")
    path.write_text(path.read_text(encoding="utf-8").replace('"level": 3', '"level": 4', 1), encoding="utf-8")
    assert read_basis(path) is None


def test_missing_file(tmp_path):
    assert read_basis(tmp_path / "nothing.json") is None


def test_cache_is_filled_then_used(tmp_path):
    basis = load_or_build_basis("cube", 5, 2, tmp_path)
    path = cache_path(tmp_path, Family.CUBE, 5, 2)
    assert path.name == "cube-n5-k2.json"
    assert path.exists()
    assert load_or_build_basis(Family.CUBE, 5, 2, tmp_path) == basis


def test_no_cache_dir_builds_directly():
    assert load_or_build_basis("simplex", 4, 2, "") is simplex_basis(4, 2)


def test_excel_table(tmp_path):
    output = export_table_to_excel("s", {3: {1: 5, 2: 1}, 60: {1: 2**60}}, tmp_path / "out" / "s.xlsx")
    sheet = load_workbook(output).active
    assert sheet.title == "s"
    rows = list(sheet.iter_rows(values_only=True))
    assert rows[0] == ("n", "k=1", "k=2")
    assert rows[1] == (3, 5, 1)
    assert rows[2] == (60, str(2**60), None)


def test_cache_respects_size_guard(tmp_path):
    with pytest.raises(SizeGuardError):
        load_or_build_basis("cube", 9, 2, tmp_path)
    assert not any(tmp_path.iterdir())
