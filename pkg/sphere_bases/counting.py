"""Closed-form counts and the identities relating them.

All arithmetic is on Python integers, so every sweep is exact.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from enum import Enum
from math import comb

from .errors import DomainError


logger = logging.getLogger(__name__)


class CountFn(str, Enum):
    S = "s"
    M = "m"
    M_PRIME = "m_prime"
    BASIS_CARD_SIMPLEX = "basis_card_simplex"
    BW = "bw"
    GR = "gr"


def _s_sum(n: int, k: int) -> int:
    return sum(comb(j, k) * 2 ** (j - k) for j in range(k, n))


def _m_sum(n: int, k: int) -> int:
    return (-1) ** (1 + k) + sum((-1) ** (k - j) * comb(n, j) * 2 ** (n - j) for j in range(k + 1))


def _require(condition: bool, name: str, n: int, k: int, rule: str) -> None:
    if not condition:
        raise DomainError(f"{name}({n},{k}) is defined for {rule}")


def s(n: int, k: int) -> int:
    """Size of the cube basis B(n,k)."""
    _require(1 <= k <= n - 1, "s", n, k, "1 <= k <= n-1")
    return _s_sum(n, k)


def m(n: int, k: int) -> int:
    """b_k of the k-skeleton of Q_n by Euler-Poincaré."""
    _require(1 <= k <= n - 1, "m", n, k, "1 <= k <= n-1")
    return _m_sum(n, k)


def m_prime(n: int, k: int) -> int:
    """b_k of the k-skeleton of Δ_n by Euler-Poincaré, summing from the empty cell."""
    _require(1 <= k <= n - 1, "m_prime", n, k, "1 <= k <= n-1")
    return sum((-1) ** (k - j) * comb(n + 1, j + 1) for j in range(-1, k + 1))


def basis_card_simplex(n: int, k: int) -> int:
    _require(1 <= k <= n - 1, "basis_card_simplex", n, k, "1 <= k <= n-1")
    return comb(n, k + 1)


def bw(n: int, k: int) -> int:
    """Rank of the no-k-equal cohomology group, as a binomial sum."""
    _require(3 <= k <= n, "bw", n, k, "3 <= k <= n")
    return sum(comb(n, i) * comb(i - 1, k - 1) for i in range(k, n + 1))


def gr(n: int, k: int) -> int:
    _require(3 <= k <= n, "gr", n, k, "3 <= k <= n")
    return sum((-1) ** (k + i) * 2 ** (n - i) * comb(n, i) for i in range(k, n + 1))


def attached_count(n: int, k: int) -> int:
    """Spheres added going from B(n,k) to B(n+1,k)."""
    _require(1 <= k <= n, "attached_count", n, k, "1 <= k <= n")
    return comb(n, k) * 2 ** (n - k)


COUNT_FUNCTIONS: dict[CountFn, Callable[[int, int], int]] = {
    CountFn.S: s,
    CountFn.M: m,
    CountFn.M_PRIME: m_prime,
    CountFn.BASIS_CARD_SIMPLEX: basis_card_simplex,
    CountFn.BW: bw,
    CountFn.GR: gr,
}

# Extended to k = 0 and k = n straight from the defining sums; the recursion
# needs T(n-1, k) with n-1 = k and T(n-1, 0).
_RAW_FORMULAS: dict[CountFn, Callable[[int, int], int]] = {
    CountFn.S: _s_sum,
    CountFn.M: _m_sum,
}


def domain(fn: CountFn, nmax: int) -> Iterable[tuple[int, int]]:
    low = 3 if fn in (CountFn.BW, CountFn.GR) else 1
    for n in range(1, nmax + 1):
        top = n if fn in (CountFn.BW, CountFn.GR) else n - 1
        for k in range(low, top + 1):
            yield n, k


def evaluate(fn: CountFn | str, n: int, k: int) -> int:
    return COUNT_FUNCTIONS[CountFn(fn)](n, k)


def table(fn: CountFn | str, nmax: int) -> dict[int, dict[int, int]]:
    """Rows n, columns k, over the function's domain up to nmax."""
    fn = CountFn(fn)
    rows: dict[int, dict[int, int]] = {}
    for n, k in domain(fn, nmax):
        rows.setdefault(n, {})[k] = evaluate(fn, n, k)
    return rows


@dataclass
class RecursionCheck:
    name: str
    nmax: int
    checked: int = 0
    failures: list[tuple[int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok


def recursion_check(T: CountFn | str | Callable[[int, int], int], nmax: int) -> RecursionCheck:
    """Check T(n,k) = 2 T(n-1,k) + T(n-1,k-1) for 1 <= k <= n-1, n <= nmax."""
    if callable(T):
        name, fn = getattr(T, "__name__", "T"), T
    else:
        key = CountFn(T)
        if key not in _RAW_FORMULAS:
            raise DomainError(f"recursion is stated for s and m, not {key.value}")
        name, fn = key.value, _RAW_FORMULAS[key]
    report = RecursionCheck(name=name, nmax=nmax)
    for n in range(2, nmax + 1):
        for k in range(1, n):
            report.checked += 1
            if fn(n, k) != 2 * fn(n - 1, k) + fn(n - 1, k - 1):
                report.failures.append((n, k))
    if report.failures:
        logger.info("recursion for %s fails at %s", name, report.failures[0])
    return report


@dataclass
class IdentityResult:
    name: str
    checked: int = 0
    first_failure: tuple[int, int] | None = None

    @property
    def ok(self) -> bool:
        return self.first_failure is None

    def to_json(self) -> dict[str, object]:
        return {
            "identity": self.name,
            "checked": self.checked,
            "ok": self.ok,
            "first_failure": list(self.first_failure) if self.first_failure else None,
        }


def _sweep(name: str, pairs: Iterable[tuple[int, int]], holds: Callable[[int, int], bool]) -> IdentityResult:
    result = IdentityResult(name)
    for n, k in pairs:
        result.checked += 1
        if not holds(n, k):
            result.first_failure = (n, k)
            break
    return result


def verify_identities(nmax: int = 25, bw_nmax: int = 20) -> list[IdentityResult]:
    basis_range = [(n, k) for n in range(2, nmax + 1) for k in range(1, n)]
    bw_range = [(n, k) for n in range(3, bw_nmax + 1) for k in range(3, n + 1)]
    results = [
        _sweep("s = m", basis_range, lambda n, k: s(n, k) == m(n, k)),
        _sweep("m' = C(n,k+1)", basis_range, lambda n, k: m_prime(n, k) == comb(n, k + 1)),
        _sweep("s(k+1,k) = 1", ((k + 1, k) for k in range(1, nmax)), lambda n, k: s(n, k) == 1),
        _sweep(
            "s(n+1,k) = s(n,k) + C(n,k) 2^(n-k)",
            ((n, k) for n in range(2, nmax) for k in range(1, n)),
            lambda n, k: s(n + 1, k) == s(n, k) + attached_count(n, k),
        ),
        _sweep("gr = bw", bw_range, lambda n, k: gr(n, k) == bw(n, k)),
        _sweep("bw(n,3) = s(n,2)", ((n, 2) for n in range(3, bw_nmax + 1)), lambda n, k: bw(n, 3) == s(n, 2)),
        _sweep("bw(n,4) = s(n,3)", ((n, 3) for n in range(4, bw_nmax + 1)), lambda n, k: bw(n, 4) == s(n, 3)),
        _sweep(
            "bw(n,k+1) = s(n,k)",
            ((n, k) for n in range(3, bw_nmax + 1) for k in range(2, n)),
            lambda n, k: bw(n, k + 1) == s(n, k),
        ),
    ]
    for name in (CountFn.S, CountFn.M):
        check = recursion_check(name, nmax)
        results.append(
            IdentityResult(
                f"{name.value}(n,k) = 2 {name.value}(n-1,k) + {name.value}(n-1,k-1)",
                checked=check.checked,
                first_failure=check.failures[0] if check.failures else None,
            )
        )
    return results


# Sequences the s(n,k) rows are cross-referenced against, by k.
OEIS_ROWS = {2: "A055580", 3: "A027608", 4: "A211386"}
OEIS_TRIANGLE = "A119258"


def sequence_rows(fn: CountFn | str, nmax: int) -> list[dict[str, object]]:
    """One flat sequence per k: the values for increasing n, starting at the first defined n."""
    fn = CountFn(fn)
    columns: dict[int, list[tuple[int, int]]] = {}
    for n, k in domain(fn, nmax):
        columns.setdefault(k, []).append((n, evaluate(fn, n, k)))
    rows = []
    for k in sorted(columns):
        entries = columns[k]
        row: dict[str, object] = {
            "fn": fn.value,
            "k": k,
            "first_n": entries[0][0],
            "values": [v for _, v in entries],
        }
        if fn is CountFn.S:
            row["compare"] = OEIS_ROWS.get(k, OEIS_TRIANGLE)
        elif fn is CountFn.BW and k - 1 in OEIS_ROWS:
            row["compare"] = OEIS_ROWS[k - 1]
        rows.append(row)
    return rows
