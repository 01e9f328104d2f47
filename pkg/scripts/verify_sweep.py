from __future__ import annotations

import argparse
import random
import sys
import time
from pathlib import Path

from tqdm import tqdm


def _setup_path() -> None:
    project_root = Path(__file__).resolve().parents[1]
    if str(project_root) not in sys.path:
        sys.path.insert(0, str(project_root))


def _report(label: str, ok: bool, started: float, detail: str = "") -> bool:
    elapsed = time.perf_counter() - started
    print(f"[{'ok' if ok else 'FAIL':>4}] {label} ({elapsed:.2f}s){' ' + detail if detail else ''}")
    return ok


def main() -> None:
    parser = argparse.ArgumentParser(description="Run the desk-scale verification sweep and print a status report")
    parser.add_argument("--cube-nmax", type=int, default=7, help="Largest cube for the basis oracle check.")
    parser.add_argument("--simplex-nmax", type=int, default=9, help="Largest simplex for the basis oracle check.")
    parser.add_argument("--samples", type=int, default=100, help="Random sums per (n,k) in the round trip.")
    parser.add_argument("--seed", type=int, default=20181)
    args = parser.parse_args()

    _setup_path()

    from sphere_bases.bases import build_basis, coverage_check, is_independent, level_census
    from sphere_bases.cells import Ambient, Family
    from sphere_bases.complex import SkeletonSpec, betti
    from sphere_bases.conjectures import spanning_tree_check
    from sphere_bases.counting import s, verify_identities
    from sphere_bases.decompose import decompose, oracle_decompose, robust_check_all, sample_combination, torus_build

    results: list[bool] = []

    started = time.perf_counter()
    rows = {
        1: [s(n, 1) for n in range(2, 10)],
        2: [s(n, 2) for n in range(3, 11)],
        3: [s(n, 3) for n in range(4, 12)],
    }
    expected = {
        1: [1, 5, 17, 49, 129, 321, 769, 1793],
        2: [1, 7, 31, 111, 351, 1023, 2815, 7423],
        3: [1, 9, 49, 209, 769, 2561, 7937, 23297],
    }
    results.append(_report("counting triangle", rows == expected, started))

    started = time.perf_counter()
    identities = verify_identities(25, 20)
    failing = [r.name for r in identities if not r.ok]
    results.append(_report("identity sweeps", not failing, started, ", ".join(failing)))

    started = time.perf_counter()
    pairs = [(Family.CUBE, n, k) for n in range(2, args.cube_nmax + 1) for k in range(1, n)]
    pairs.append((Family.CUBE, 8, 2))
    pairs += [(Family.SIMPLEX, n, k) for n in range(2, args.simplex_nmax + 1) for k in range(1, n)]
    bad = []
    for family, n, k in tqdm(pairs, desc="Basis oracle", unit="basis"):
        basis = build_basis(family, n, k)
        spec = SkeletonSpec(Ambient(family, n), k)
        if not (is_independent(basis) and len(basis) == betti(spec, k) and coverage_check(basis)):
            bad.append(f"{family.value}({n},{k})")
    census_ok = level_census(build_basis(Family.CUBE, 5, 2)).get(4) == 24
    results.append(_report("basis rank, Betti number and coverage", not bad and census_ok, started, " ".join(bad)))

    started = time.perf_counter()
    rng = random.Random(args.seed)
    cases = [(Family.CUBE, 4, 2), (Family.CUBE, 5, 2), (Family.CUBE, 5, 3), (Family.CUBE, 6, 2)]
    cases += [(Family.SIMPLEX, 5, 2), (Family.SIMPLEX, 6, 2), (Family.SIMPLEX, 6, 3)]
    mismatches = 0
    for family, n, k in tqdm(cases, desc="Round trip", unit="basis"):
        basis = build_basis(family, n, k)
        for _ in range(args.samples):
            chosen, z = sample_combination(basis, rng)
            result = decompose(z, basis)
            if result.basis_indices != chosen or oracle_decompose(z, basis).basis_indices != chosen:
                mismatches += 1
    results.append(_report("decomposition round trip", mismatches == 0, started, f"seed={args.seed}"))

    started = time.perf_counter()
    torus = torus_build()
    results.append(
        _report("torus", torus.surface.torus_profile, started, f"excluded={list(torus.excluded)}")
    )

    started = time.perf_counter()
    robust = [robust_check_all(n) for n in (3, 4, 5)]
    results.append(
        _report(
            "robust orderings on K4, K5, K6",
            all(r.all_verified for r in robust),
            started,
            " ".join(f"{r.verified}/{r.total}" for r in robust),
        )
    )

    started = time.perf_counter()
    trees = [spanning_tree_check(Family.CUBE, n, k) for n in range(2, 7) for k in range(1, min(n - 1, 2) + 1)]
    trees += [spanning_tree_check(Family.SIMPLEX, n, k) for n in range(2, 9) for k in range(1, min(n - 1, 3) + 1)]
    results.append(_report("Z2 spanning trees", all(t.verdict for t in trees), started))

    print(f"\n{sum(results)}/{len(results)} checks passed")
    if not all(results):
        raise SystemExit(1)


if __name__ == "__main__":
    main()
