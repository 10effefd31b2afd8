"""Candidate enumeration, obstruction searches and the genus-one classification."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterable

from .errors import InputError
from .obstruct import (
    CHECK_ORDER,
    FAIL,
    PASS,
    CurveHypothesis,
    ReportOptions,
    full_report,
)

SEARCH_CHECKS = ("theorem_main", "bmy", "multiplicity", "spectrum", "dinvariant")
CSV_COLUMNS = ("d", "p", "q", "genus", "theorem_main", "bmy", "multiplicity", "spectrum", "verdict")


@dataclass(frozen=True, order=True)
class CandidateTriple:
    d: int
    p: int
    q: int
    g: int

    def __post_init__(self) -> None:
        if not (2 <= self.p < self.q) or gcd(self.p, self.q) != 1:
            raise InputError(f"invalid pair ({self.p},{self.q})")
        if (self.p - 1) * (self.q - 1) != (self.d - 1) * (self.d - 2) - 2 * self.g:
            raise InputError(f"({self.p},{self.q};{self.d}) violates the genus formula for g={self.g}")

    def hypothesis(self) -> CurveHypothesis:
        return CurveHypothesis.simple(self.p, self.q, self.d, self.g)

    def __str__(self) -> str:
        return f"({self.p},{self.q};{self.d})"


def divisors(n: int) -> list[int]:
    small, large = [], []
    for a in range(1, isqrt(n) + 1):
        if n % a == 0:
            small.append(a)
            if a != n // a:
                large.append(n // a)
    return small + large[::-1]


def candidates_for(d: int, g: int) -> list[CandidateTriple]:
    """Coprime p < q with (p-1)(q-1) = (d-1)(d-2) - 2g, sorted by p."""
    if d < 3 or g < 0:
        raise InputError(f"need d >= 3 and g >= 0, got d={d}, g={g}")
    target = (d - 1) * (d - 2) - 2 * g
    if target <= 0:
        return []
    out = []
    for a in divisors(target):
        p, q = a + 1, target // a + 1
        if p < q and gcd(p, q) == 1:
            out.append(CandidateTriple(d, p, q, g))
    return out


# -- search ------------------------------------------------------------------


@dataclass(frozen=True)
class SearchRow:
    triple: CandidateTriple
    statuses: tuple[tuple[str, str], ...]  # (check name, status) in CHECK_ORDER
    verdict: str

    def status(self, name: str) -> str:
        return dict(self.statuses)[name]

    @property
    def failures(self) -> list[str]:
        return [name for name, status in self.statuses if status == FAIL]


@dataclass(frozen=True)
class SurvivorTable:
    g: int
    filters: tuple[str, ...]
    rows: tuple[SearchRow, ...]

    @property
    def survivors(self) -> list[SearchRow]:
        return [r for r in self.rows if r.verdict == PASS]

    @property
    def rejected(self) -> list[SearchRow]:
        return [r for r in self.rows if r.verdict == FAIL]


def _evaluate(triple: CandidateTriple, opts: ReportOptions) -> SearchRow:
    report = full_report(triple.hypothesis(), opts)
    statuses = tuple((c.name, c.status) for c in report.checks)
    return SearchRow(triple, statuses, report.verdict)


def _evaluate_degree(args: tuple[int, int, ReportOptions]) -> list[SearchRow]:
    d, g, opts = args
    return [_evaluate(t, opts) for t in candidates_for(d, g)]


def default_threads() -> int:
    raw = os.environ.get("CURVEBOUND_THREADS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"CURVEBOUND_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise InputError(f"CURVEBOUND_THREADS must be a positive integer, got {raw!r}")
    return n


def search(
    d_min: int,
    d_max: int,
    g: int,
    filters: Iterable[str],
    threads: int | None = None,
    early_exit: bool = True,
) -> SurvivorTable:
    """Evaluate every candidate (p, q; d) with d_min <= d <= d_max.

    Rows come back ordered by (d, p) whatever the worker count.  With
    ``early_exit`` a candidate stops at its first failing filter and the
    remaining filters are reported as skipped.
    """
    wanted = set(filters)
    if not wanted:
        raise InputError("at least one filter is required")
    unknown = wanted - set(SEARCH_CHECKS)
    if unknown:
        raise InputError(f"unknown filters {sorted(unknown)}; known: {list(SEARCH_CHECKS)}")
    filters = tuple(sorted(wanted, key=CHECK_ORDER.index))
    if not 3 <= d_min <= d_max:
        raise InputError(f"need 3 <= d_min <= d_max, got {d_min}..{d_max}")
    threads = default_threads() if threads is None else threads
    if threads < 1:
        raise InputError("threads must be positive")
    opts = ReportOptions(
        checks=frozenset(filters), early_exit=early_exit, first_witness_only=True
    )
    jobs = [(d, g, opts) for d in range(d_min, d_max + 1)]
    if threads == 1:
        chunks = map(_evaluate_degree, jobs)
        rows = [r for chunk in chunks for r in chunk]
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = [r for chunk in pool.map(_evaluate_degree, jobs) for r in chunk]
    rows.sort(key=lambda r: (r.triple.d, r.triple.p))
    return SurvivorTable(g, filters, tuple(rows))


# -- Fibonacci and Pell ---------------------------------------------------------


def fibonacci(n: int) -> int:
    """phi_n with phi_0 = 0, phi_1 = 1 (fast doubling, exact)."""
    if n < 0:
        raise InputError("Fibonacci index must be non-negative")

    def pair(k: int) -> tuple[int, int]:
        if k == 0:
            return 0, 1
        a, b = pair(k >> 1)
        c = a * (2 * b - a)
        e = a * a + b * b
        return (e, c + e) if k & 1 else (c, e)

    return pair(n)[0]


def fibonacci_triple(j: int) -> CandidateTriple:
    """(phi_{4j-2}, phi_{4j+2}; phi_{4j}) at genus one; j = 1 gives p = 1 and is rejected."""
    if j < 2:
        raise InputError(f"j={j} gives p = phi_{4 * j - 2} = 1, a smooth point; need j >= 2")
    p, d, q = fibonacci(4 * j - 2), fibonacci(4 * j), fibonacci(4 * j + 2)
    if (p - 1) * (q - 1) != d * (d - 3):
        raise RuntimeError(f"Fibonacci identity failed at j={j}")
    return CandidateTriple(d, p, q, 1)


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def pell_degrees(N: int) -> list[int]:
    """All 1 <= d <= N with 5d^2 + 4 a perfect square."""
    if N < 1:
        raise InputError("N must be positive")
    return [d for d in range(1, N + 1) if is_square(5 * d * d + 4)]


# -- genus one classification --------------------------------------------------

EXCEPTIONAL = {
    "a": (2, 5, 4),
    "b": (2, 11, 5),
    "c": (3, 10, 6),
    "d": (6, 37, 15),
    "e": (9, 64, 24),
    "f": (10, 73, 27),
    "g": (12, 91, 33),
}

# cases (a)-(c), the Fibonacci family and (2,19;6) from case (h) are known to be realized
KNOWN_REALIZABLE = {(2, 5, 4), (2, 11, 5), (3, 10, 6), (2, 19, 6)}


def expected_genus_one(d_max: int) -> dict[tuple[int, int, int], str]:
    """Triples (p, q, d) allowed by the classification, with their family label."""
    out: dict[tuple[int, int, int], str] = {}
    for label, t in EXCEPTIONAL.items():
        if t[2] <= d_max:
            out[t] = f"({label})"
    for p in range(2, 11):
        if 3 * p <= d_max:
            out[(p, 9 * p + 1, 3 * p)] = f"(h) p={p}"
    j = 2
    while fibonacci(4 * j) <= d_max:
        t = fibonacci_triple(j)
        out[(t.p, t.q, t.d)] = f"fibonacci j={j}"
        j += 1
    return out


@dataclass(frozen=True)
class ClassifiedSurvivor:
    triple: CandidateTriple
    family: str  # label from the classification list, or "unexplained"
    realizable: str  # "known" or "open"


@dataclass(frozen=True)
class Classification:
    d_max: int
    survivors: tuple[ClassifiedSurvivor, ...]
    missing: tuple[tuple[int, int, int], ...]  # expected triples the search rejected
    rejected: tuple[tuple[CandidateTriple, str], ...]  # (triple, failing checks joined by "+")

    @property
    def unexplained(self) -> list[CandidateTriple]:
        return [s.triple for s in self.survivors if s.family == "unexplained"]


def classify_genus_one(d_max: int, threads: int | None = None) -> Classification:
    """Search genus-one simple-type candidates with d <= d_max and label the survivors."""
    if d_max < 4:
        raise InputError("d_max must be >= 4")
    table = search(4, d_max, 1, ("theorem_main", "bmy"), threads=threads, early_exit=False)
    expected = expected_genus_one(d_max)
    survivors = []
    seen = set()
    for row in table.survivors:
        t = row.triple
        key = (t.p, t.q, t.d)
        seen.add(key)
        family = expected.get(key, "unexplained")
        known = key in KNOWN_REALIZABLE or family.startswith("fibonacci")
        survivors.append(ClassifiedSurvivor(t, family, "known" if known else "open"))
    rejected = tuple((r.triple, "+".join(r.failures)) for r in table.rejected)
    missing = tuple(sorted(set(expected) - seen, key=lambda k: (k[2], k[0])))
    return Classification(d_max, tuple(survivors), missing, rejected)
