from __future__ import annotations

import hashlib
import json
import logging
from pathlib import Path
from typing import Any

from openpyxl import Workbook

from .bases import SphereBasis, build_basis
from .cells import Ambient, Family, check_size


logger = logging.getLogger(__name__)


def json_line(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, ensure_ascii=False)


def write_text(path: Path, text: str) -> Path:
    output = path.expanduser().resolve()
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(text, encoding="utf-8")
    return output


def _basis_text(basis: SphereBasis) -> str:
    return json.dumps(basis.to_json(), sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def write_basis(basis: SphereBasis, path: Path) -> Path:
    """Write the basis file and its SHA-256 next to it."""
    text = _basis_text(basis)
    output = write_text(path, text)
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
    output.with_name(output.name + ".sha256").write_text(f"{digest}  {output.name}\n", encoding="utf-8")
    return output


def read_basis(path: Path) -> SphereBasis | None:
    """Load a basis file; None when it is missing or its hash does not match."""
    sidecar = path.with_name(path.name + ".sha256")
    if not path.exists() or not sidecar.exists():
        return None
    text = path.read_text(encoding="utf-8")
    expected = sidecar.read_text(encoding="utf-8").split()[0]
    if hashlib.sha256(text.encode("utf-8")).hexdigest() != expected:
        logger.warning("hash mismatch for %s, ignoring cached basis", path)
        return None
    return SphereBasis.from_json(json.loads(text))


def cache_path(cache_dir: Path, family: Family | str, n: int, k: int) -> Path:
    return cache_dir / f"{Family(family).value}-n{n}-k{k}.json"


def load_or_build_basis(
    family: Family | str,
    n: int,
    k: int,
    cache_dir: str | Path | None = None,
    max_n: int | None = None,
) -> SphereBasis:
    check_size(Ambient(Family(family), n), max_n)
    if not cache_dir:
        return build_basis(family, n, k)
    path = cache_path(Path(cache_dir), family, n, k)
    cached = read_basis(path)
    if cached is not None:
        logger.debug("cache hit %s", path)
        return cached
    basis = build_basis(family, n, k)
    write_basis(basis, path)
    logger.info("cached %s", path)
    return basis


def export_table_to_excel(name: str, rows: dict[int, dict[int, int]], output_path: Path) -> Path:
    """One sheet, rows n, columns k, exact values."""
    wb = Workbook()
    ws = wb.active
    ws.title = name

    ks = sorted({k for row in rows.values() for k in row})
    ws.append(["n"] + [f"k={k}" for k in ks])
    for n in sorted(rows):
        # xlsx numbers are doubles; large values go in as text to stay exact
        ws.append([n] + [_cell_value(rows[n].get(k)) for k in ks])

    output = output_path.expanduser().resolve()
    output.parent.mkdir(parents=True, exist_ok=True)
    wb.save(output)
    return output


def _cell_value(value: int | None) -> int | str | None:
    if value is None:
        return None
    return value if abs(value) < 2**53 else str(value)
