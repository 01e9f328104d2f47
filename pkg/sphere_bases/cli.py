from __future__ import annotations

import argparse
import logging
import random
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from . import settings
from .bases import basis_rank, coverage_check, level_census, private_faces_unique
from .cells import Ambient, Family, cell_to_json, check_size, cofaces, enumerate_cells, faces, parse_cell
from .complex import Chain, SkeletonSpec, betti
from .conjectures import spanning_tree_check, spanning_tree_sweep
from .counting import CountFn, m, m_prime, sequence_rows, table, verify_identities
from .decompose import (
    connected_sum_sample,
    decompose,
    off_text,
    oracle_decompose,
    robust_check_all,
    sample_combination,
    torus_build,
)
from .errors import ConsistencyError, DomainError, SphereBasesError
from .export import export_table_to_excel, json_line, load_or_build_basis, write_basis, write_text


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2


def configure_logging(verbosity: int) -> None:
    level = settings.LOG_LEVEL
    if verbosity == 1:
        level = "INFO"
    elif verbosity >= 2:
        level = "DEBUG"
    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, level, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def emit(args: argparse.Namespace, payload: dict[str, Any], human: str) -> None:
    print(json_line(payload) if args.json else human)


def _ambient_args(parser: argparse.ArgumentParser, with_k: bool = True) -> None:
    parser.add_argument("--family", choices=[f.value for f in Family], default=Family.CUBE.value)
    parser.add_argument("--n", type=int, required=True, help="Dimension of the ambient simplex or cube.")
    if with_k:
        parser.add_argument("--k", type=int, required=True, help="Dimension of the even subcomplexes.")


def cmd_cells(args: argparse.Namespace) -> int:
    ambient = Ambient(Family(args.family), args.n)
    check_size(ambient, args.max_n)
    if args.cell:
        cell = parse_cell(args.cell, ambient)
        if args.cofaces:
            listing = cofaces(cell, ambient)
        elif args.faces is not None:
            listing = faces(cell, args.faces)
        else:
            emit(args, {"cell": cell_to_json(cell), "dim": cell.dim}, f"{cell}  dim={cell.dim}")
            return EXIT_OK
    elif args.j is not None:
        listing = list(enumerate_cells(ambient, args.j))
    else:
        raise DomainError("cells: give --j, or --cell with --faces/--cofaces")
    for cell in listing:
        emit(args, {"cell": cell_to_json(cell), "dim": cell.dim}, str(cell))
    if not args.json:
        print(f"-- {len(listing)} cells")
    return EXIT_OK


def cmd_betti(args: argparse.Namespace) -> int:
    ambient = Ambient(Family(args.family), args.n)
    check_size(ambient, args.max_n)
    spec = SkeletonSpec(ambient, args.k)
    degrees = [args.ell] if args.ell is not None else list(range(args.k + 1))
    for ell in degrees:
        value = betti(spec, ell)
        payload: dict[str, Any] = {"family": args.family, "n": args.n, "k": args.k, "ell": ell, "betti": value}
        if ell == args.k and 1 <= args.k <= args.n - 1:
            payload["formula"] = m(args.n, args.k) if ambient.is_cube else m_prime(args.n, args.k)
        emit(args, payload, f"b_{ell}({ambient}^{args.k}) = {value}")
    return EXIT_OK


def cmd_basis(args: argparse.Namespace) -> int:
    basis = load_or_build_basis(args.family, args.n, args.k, args.cache, args.max_n)
    for index, element in enumerate(basis):
        emit(
            args,
            {"index": index, **element.to_json()},
            f"{index:5d}  level={element.level}  generator={element.generator}  private={element.private_face}",
        )
    if args.out:
        output = write_basis(basis, Path(args.out))
        logger.info("wrote %s", output)
    if not args.check:
        return EXIT_OK
    spec = SkeletonSpec(basis.ambient, basis.k)
    summary = {
        "size": len(basis),
        "rank": basis_rank(basis),
        "betti": betti(spec, basis.k),
        "coverage": coverage_check(basis),
        "private_faces": private_faces_unique(basis),
        "levels": {str(level): count for level, count in level_census(basis).items()},
        "sha256": basis.content_hash(),
    }
    ok = summary["size"] == summary["rank"] == summary["betti"] and summary["coverage"] and summary["private_faces"]
    summary["ok"] = ok
    emit(
        args,
        summary,
        f"size={summary['size']} rank={summary['rank']} betti={summary['betti']} "
        f"coverage={summary['coverage']} private_faces={summary['private_faces']} ok={ok}",
    )
    return EXIT_OK if ok else EXIT_FALSE


def cmd_decompose(args: argparse.Namespace) -> int:
    basis = load_or_build_basis(args.family, args.n, args.k, args.cache, args.max_n)
    ambient = basis.ambient
    seed = settings.SEED if args.seed is None else args.seed
    if args.cells:
        chains = [(None, Chain.of(ambient, args.k, (parse_cell(t, ambient) for t in args.cells)))]
    else:
        rng = random.Random(seed)
        chains = [sample_combination(basis, rng) for _ in range(args.random)]
    status = EXIT_OK
    for sampled, z in chains:
        result = decompose(z, basis)
        oracle = oracle_decompose(z, basis)
        agrees = oracle.basis_indices == result.basis_indices
        payload: dict[str, Any] = {
            "chain": z.to_json(),
            "decomposition": result.to_json(),
            "oracle_agrees": agrees,
        }
        if sampled is not None:
            payload["seed"] = seed
            payload["sampled"] = list(sampled)
            agrees = agrees and tuple(sampled) == result.basis_indices
        if not (agrees and result.success):
            status = EXIT_FALSE
        emit(
            args,
            payload,
            f"{len(z)} cells -> {result.method.value} {list(result.basis_indices)} oracle_agrees={agrees}",
        )
    return status


def cmd_counts(args: argparse.Namespace) -> int:
    fn = CountFn(args.fn)
    rows = table(fn, args.nmax)
    if args.oeis:
        for row in sequence_rows(fn, args.nmax):
            emit(args, row, f"k={row['k']}: " + ", ".join(str(v) for v in row["values"]))  # type: ignore[union-attr]
    else:
        for n, values in rows.items():
            emit(
                args,
                {"fn": fn.value, "n": n, "values": {str(k): v for k, v in values.items()}},
                f"n={n:3d}  " + "  ".join(str(v) for v in values.values()),
            )
    if args.export_xlsx:
        output = export_table_to_excel(fn.value, rows, Path(args.export_xlsx))
        print(f"exported: {output}", file=sys.stderr)
    return EXIT_OK


def cmd_identities(args: argparse.Namespace) -> int:
    results = verify_identities(args.nmax, args.bw_nmax)
    for result in results:
        emit(
            args,
            result.to_json(),
            f"{'ok  ' if result.ok else 'FAIL'} {result.name}  ({result.checked} checked)"
            + (f" first failure at {result.first_failure}" if result.first_failure else ""),
        )
    return EXIT_OK if all(r.ok for r in results) else EXIT_FALSE


def cmd_torus(args: argparse.Namespace) -> int:
    result = torus_build()
    surface = result.surface
    emit(
        args,
        result.to_json(),
        f"excluded={list(result.excluded)} opposite_pair={result.opposite_pair} "
        f"pair_search_hits={result.pair_search_hits}\n"
        f"squares={surface.squares} closed={surface.closed_surface} connected={surface.connected} "
        f"chi={surface.euler_characteristic} betti={surface.betti} (Z2 cannot separate torus from Klein bottle)",
    )
    if args.out:
        output = write_text(Path(args.out), off_text(result.chain))
        print(f"exported: {output}", file=sys.stderr)
    return EXIT_OK if surface.torus_profile else EXIT_FALSE


def cmd_robust(args: argparse.Namespace) -> int:
    if Family(args.family) is Family.CUBE:
        seed = settings.SEED if args.seed is None else args.seed
        report = connected_sum_sample(args.n, args.k or 1, args.samples, seed, args.budget, max_n=args.max_n)
        emit(args, {**report.to_json(), "seed": seed}, _robust_line(report) + f" seed={seed} (experimental)")
        return EXIT_OK
    ns = [args.n] if args.nmax is None else list(range(2, args.nmax + 1))
    status = EXIT_OK
    for n in ns:
        report = robust_check_all(n, args.budget, max_n=args.max_n, workers=args.workers, progress=args.progress)
        emit(args, report.to_json(), _robust_line(report))
        if not report.all_verified:
            status = EXIT_FALSE
    return status


def _robust_line(report: Any) -> str:
    return (
        f"{report.family.value} n={report.n} k={report.k}: {report.verified}/{report.total} verified, "
        f"{report.failed} failed, {report.inconclusive} inconclusive"
    )


def cmd_treecheck(args: argparse.Namespace) -> int:
    if args.nmax is not None:
        reports = spanning_tree_sweep(
            args.family, args.nmax, args.kmax, workers=args.workers, progress=args.progress, max_n=args.max_n
        )
    else:
        if args.n is None or args.k is None:
            raise DomainError("treecheck: give --n and --k, or --nmax")
        reports = [spanning_tree_check(args.family, args.n, args.k, max_n=args.max_n)]
    for report in reports:
        emit(
            args,
            report.to_json(),
            f"{report.family.value} ({report.n},{report.k}): facets={report.facet_count} "
            f"rank={report.boundary_rank} independent={report.independent} verdict={report.verdict} [Z2 only]",
        )
    return EXIT_OK if all(r.verdict for r in reports) else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Emit one JSON object per line.")
    common.add_argument("--out", default="", help="Write the basis (JSON) or surface (OFF) artifact to this file.")
    common.add_argument("--seed", type=int, default=None, help="Seed for randomized commands.")
    common.add_argument("--cache", default=settings.CACHE_DIR, help="Directory for cached bases.")
    common.add_argument(
        "--max-n",
        type=int,
        default=None,
        help="Refuse ambients above this dimension (default: the configured guard for the command).",
    )
    common.add_argument("--workers", type=int, default=settings.WORKERS, help="Worker threads for sweeps.")
    common.add_argument("--progress", action=argparse.BooleanOptionalAction, default=settings.PROGRESS, help="Show tqdm progress bars.")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(
        prog="sphere-bases",
        description="Sphere bases for even subcomplexes of simplex and cube skeleta over Z2.",
    )
    verbs = parser.add_subparsers(dest="verb", required=True)

    p = verbs.add_parser("cells", parents=[common], help="Enumerate cells, faces and cofaces.")
    _ambient_args(p, with_k=False)
    p.add_argument("--j", type=int, default=None, help="Enumerate all j-cells.")
    p.add_argument("--cell", default="", help="A cell, e.g. '**0' or '{1,3,5}'.")
    p.add_argument("--faces", type=int, default=None, help="List the faces of --cell of this dimension.")
    p.add_argument("--cofaces", action="store_true", help="List the cofaces of --cell.")
    p.set_defaults(handler=cmd_cells)

    p = verbs.add_parser("betti", parents=[common], help="Z2 Betti numbers of a skeleton.")
    _ambient_args(p)
    p.add_argument("--ell", type=int, default=None)
    p.set_defaults(handler=cmd_betti)

    p = verbs.add_parser("basis", parents=[common], help="Build a sphere basis.")
    _ambient_args(p)
    p.add_argument("--check", action="store_true", help="Verify rank, Betti number and coverage.")
    p.set_defaults(handler=cmd_basis)

    p = verbs.add_parser("decompose", parents=[common], help="Decompose a cycle into basis spheres.")
    _ambient_args(p)
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--cells", nargs="+", default=None, help="Cells of the cycle.")
    source.add_argument("--random", type=int, default=0, help="Decompose this many random basis sums.")
    p.set_defaults(handler=cmd_decompose)

    p = verbs.add_parser("counts", parents=[common], help="Tables of the closed-form counts.")
    p.add_argument("--fn", choices=[f.value for f in CountFn], default=CountFn.S.value)
    p.add_argument("--nmax", type=int, default=10)
    p.add_argument("--oeis", action="store_true", help="Flat sequences per k instead of rows per n.")
    p.add_argument("--export-xlsx", default="", help="Also write the table to an .xlsx file.")
    p.set_defaults(handler=cmd_counts)

    p = verbs.add_parser("identities", parents=[common], help="Verify the counting identities.")
    p.add_argument("--nmax", type=int, default=25)
    p.add_argument("--bw-nmax", type=int, default=20)
    p.set_defaults(handler=cmd_identities)

    p = verbs.add_parser("torus", parents=[common], help="Build the torus in the 2-skeleton of Q_4.")
    p.set_defaults(handler=cmd_torus)

    p = verbs.add_parser("robust", parents=[common], help="Search robust / connected-sum orderings.")
    p.add_argument("--family", choices=[f.value for f in Family], default=Family.SIMPLEX.value)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--nmax", type=int, default=None, help="Check every n from 2 up to this bound.")
    p.add_argument("--k", type=int, default=None, help="Cube only; defaults to 1.")
    p.add_argument("--samples", type=int, default=20, help="Cube only; random cycles to try.")
    p.add_argument("--budget", type=int, default=None, help="Search-node budget per cycle.")
    p.set_defaults(handler=cmd_robust)

    p = verbs.add_parser("treecheck", parents=[common], help="Z2 cellular spanning tree check.")
    p.add_argument("--family", choices=[f.value for f in Family], default=Family.CUBE.value)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--nmax", type=int, default=None, help="Sweep all (n,k) with n up to this bound.")
    p.add_argument("--kmax", type=int, default=None)
    p.set_defaults(handler=cmd_treecheck)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        return args.handler(args)
    except ConsistencyError as ex:
        logger.error("internal check failed: %s", ex)
        return EXIT_FALSE
    except SphereBasesError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
