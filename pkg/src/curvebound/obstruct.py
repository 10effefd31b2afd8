"""Obstruction checks for a hypothetical cuspidal curve.

A hypothesis is a degree d, a genus g and a list of singular points.
Each check returns a :class:`CheckResult` whose status is one of

* ``pass`` / ``fail`` -- the check ran; failures carry witnesses,
* ``skipped`` -- the check's own hypotheses do not hold (e.g. the BMY
  bound needs g > 0, the multiplicity bound needs g = 1 and one point),
  the genus formula failed, or an earlier failure ended an early-exit run,
* ``not-applicable`` -- the check was not requested.

Only ``fail`` makes the overall verdict fail.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor
from typing import Iterable, Sequence, Union

from .errors import InputError
from .floer import check_dinvariant_bounds
from .gapfn import counting_function
from .semigroup import GeneralSingularity, SimplePairSingularity, Singularity

Number = Union[int, Fraction]

PASS, FAIL, SKIPPED, NOT_APPLICABLE = "pass", "fail", "skipped", "not-applicable"

CHECK_ORDER = ("genus_formula", "bmy", "multiplicity", "theorem_main", "spectrum", "dinvariant")


@dataclass(frozen=True)
class CurveHypothesis:
    d: int
    g: int
    sings: tuple[Singularity, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sings", tuple(self.sings))
        if self.d < 3:
            raise InputError(f"degree must be >= 3, got {self.d}")
        if self.g < 0:
            raise InputError(f"genus must be >= 0, got {self.g}")
        if not self.sings:
            raise InputError("at least one singular point is required")
        for s in self.sings:
            if not isinstance(s, (SimplePairSingularity, GeneralSingularity)):
                raise InputError(f"unsupported singularity {s!r}")

    @classmethod
    def simple(cls, p: int, q: int, d: int, g: int) -> "CurveHypothesis":
        return cls(d, g, (SimplePairSingularity(p, q),))

    @property
    def total_delta(self) -> int:
        return sum(s.delta for s in self.sings)

    @property
    def all_simple(self) -> bool:
        return all(isinstance(s, SimplePairSingularity) for s in self.sings)

    def __str__(self) -> str:
        return ";".join(map(str, self.sings)) + f" d={self.d} g={self.g}"


@dataclass(frozen=True)
class Witness:
    indices: tuple[Number, ...]
    lhs: Number
    bound_lo: Number | None
    bound_hi: Number | None


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    witnesses: tuple[Witness, ...] = ()


@dataclass(frozen=True)
class ObstructionReport:
    hypothesis: CurveHypothesis
    checks: tuple[CheckResult, ...]

    @property
    def verdict(self) -> str:
        return FAIL if any(c.status == FAIL for c in self.checks) else PASS

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def status(self, name: str) -> str:
        return self.check(name).status


def _verdict(name: str, witnesses: Sequence[Witness]) -> CheckResult:
    return CheckResult(name, FAIL if witnesses else PASS, tuple(witnesses))


# -- genus formula ----------------------------------------------------------


def genus_formula_holds(h: CurveHypothesis) -> bool:
    return 2 * (h.g + h.total_delta) == (h.d - 1) * (h.d - 2)


def check_genus_formula(h: CurveHypothesis) -> CheckResult:
    if genus_formula_holds(h):
        return CheckResult("genus_formula", PASS)
    implied = Fraction((h.d - 1) * (h.d - 2), 2) - h.total_delta
    return CheckResult("genus_formula", FAIL, (Witness((), implied, h.g, h.g),))


# -- the semigroup counting inequality ---------------------------------------


def theorem_main_bounds(d: int, g: int, j: int, b: int) -> tuple[int, int, int]:
    """Return (u, lo, hi) such that the inequality reads lo <= R(u) <= hi."""
    lo = (j + 1) * (j + 2) // 2 - b
    return j * d - 2 * b + 1, lo, lo + g


def check_theorem_main(h: CurveHypothesis, first_only: bool = False) -> CheckResult:
    """0 <= R(jd - 2b + 1) - (j+1)(j+2)/2 + b <= g for j = 1..d-2, b = 0..g.

    ``first_only`` stops at the first violated pair (the status is the
    same, the witness list is truncated).
    """
    if not genus_formula_holds(h):
        return CheckResult("theorem_main", SKIPPED)
    R = counting_function(h.sings)
    witnesses = []
    for j in range(1, h.d - 1):
        for b in range(h.g + 1):
            u, lo, hi = theorem_main_bounds(h.d, h.g, j, b)
            r = R(u)
            if not lo <= r <= hi:
                witnesses.append(Witness((j, b), r, lo, hi))
                if first_only:
                    return _verdict("theorem_main", witnesses)
    return _verdict("theorem_main", witnesses)


# -- BMY / Orevkov and the multiplicity bound --------------------------------


def check_bmy(h: CurveHypothesis) -> CheckResult:
    """sum of M-bar numbers <= 3d + 4g - 5 (needs g > 0 and every M-bar known)."""
    mbars = [s.mbar for s in h.sings]
    if h.g == 0 or any(m is None for m in mbars):
        return CheckResult("bmy", SKIPPED)
    total = sum(mbars)
    bound = 3 * h.d + 4 * h.g - 5
    if total <= bound:
        return CheckResult("bmy", PASS)
    return CheckResult("bmy", FAIL, (Witness((), total, None, bound),))


def multiplicity_quadratic(d: int, m: int) -> int:
    return d * d - 3 * (1 + m) * d + m * m - m


def check_multiplicity_bound(h: CurveHypothesis) -> CheckResult:
    """d^2 - 3(1+m)d + m^2 - m <= 0 for genus one with a single point of multiplicity m."""
    if h.g != 1 or len(h.sings) != 1:
        return CheckResult("multiplicity", SKIPPED)
    m = h.sings[0].multiplicity
    value = multiplicity_quadratic(h.d, m)
    if value <= 0:
        return CheckResult("multiplicity", PASS)
    return CheckResult("multiplicity", FAIL, (Witness((m,), value, None, 0),))


# -- spectrum semicontinuity -------------------------------------------------


@dataclass(frozen=True)
class SpectrumMultiset:
    """Multiset of rationals numerator/denominator; numerators kept sorted."""

    denominator: int
    numerators: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.numerators)

    def count_open(self, lo: Number, hi: Number) -> int:
        """Number of elements x (with multiplicity) with lo < x < hi."""
        den = self.denominator
        left = bisect_right(self.numerators, floor(Fraction(lo) * den))
        right = bisect_left(self.numerators, ceil(Fraction(hi) * den))
        return max(0, right - left)

    def multiplicities(self) -> dict[Fraction, int]:
        out: dict[Fraction, int] = {}
        for n in self.numerators:
            x = Fraction(n, self.denominator)
            out[x] = out.get(x, 0) + 1
        return out

    def values(self) -> list[Fraction]:
        return sorted(self.multiplicities())


def spectrum_torus(p: int, q: int) -> SpectrumMultiset:
    """{i/p + j/q : 1 <= i < p, 1 <= j < q} with multiplicity (p = q allowed)."""
    if p < 1 or q < 1:
        raise InputError("spectrum parameters must be positive")
    nums = sorted(i * q + j * p for i in range(1, p) for j in range(1, q))
    return SpectrumMultiset(p * q, tuple(nums))


def count_below_torus_spectrum(p: int, q: int, x: Fraction) -> int:
    """#(Sigma_{p,q} cap (0, x)) without building the multiset."""
    # i/p + j/q < x  <=>  j < (x - i/p) * q
    total = 0
    for i in range(1, p):
        limit = (x - Fraction(i, p)) * q
        if limit <= 1:
            continue
        jmax = ceil(limit) - 1
        total += min(jmax, q - 1)
    return total


def ss_counts(h: CurveHypothesis) -> tuple[list[int], list[int]]:
    """Left and right sides of the SS_l inequalities for l = 1..d."""
    pairs = [(s.p, s.q) for s in h.sings]
    lhs = [sum(count_below_torus_spectrum(p, q, Fraction(l, h.d)) for p, q in pairs)
           for l in range(1, h.d + 1)]
    rhs = [(l - 1) * (l - 2) // 2 for l in range(1, h.d + 1)]
    return lhs, rhs


def _critical_points(spectra: Iterable[SpectrumMultiset]) -> list[Fraction]:
    pts: set[Fraction] = set()
    for sp in spectra:
        for v in sp.multiplicities():
            pts.add(v)
            pts.add(v - 1)
    ordered = sorted(pts)
    probes = set(ordered)
    probes.add(ordered[0] - 1)
    probes.add(ordered[-1] + 1)
    for a, b in zip(ordered, ordered[1:]):
        probes.add((a + b) / 2)
    return sorted(probes)


def check_spectrum_semicontinuity(h: CurveHypothesis, mode: str = "ssl") -> CheckResult:
    """Semicontinuity against the spectrum of x^d - y^d.

    ``ssl``: the inequalities at x = -1 + l/d, l = 1..d.
    ``full``: #(Sigma_dd cap (x, x+1)) >= sum #(Sigma_i cap (x, x+1)) at every
    x where either side can change, plus one point inside every gap.
    """
    if mode not in ("ssl", "full"):
        raise InputError(f"unknown spectrum mode {mode!r}")
    if not h.all_simple:
        return CheckResult("spectrum", SKIPPED)
    witnesses = []
    if mode == "ssl":
        lhs, rhs = ss_counts(h)
        for l, (a, b) in enumerate(zip(lhs, rhs), start=1):
            if a > b:
                witnesses.append(Witness((l,), a, None, b))
        return _verdict("spectrum", witnesses)
    local = [spectrum_torus(s.p, s.q) for s in h.sings]
    ambient = spectrum_torus(h.d, h.d)
    for x in _critical_points([ambient, *local]):
        a = sum(sp.count_open(x, x + 1) for sp in local)
        b = ambient.count_open(x, x + 1)
        if a > b:
            witnesses.append(Witness((x,), a, None, b))
    return _verdict("spectrum", witnesses)


# -- d-invariant form --------------------------------------------------------


def check_dinvariant(h: CurveHypothesis) -> CheckResult:
    if not genus_formula_holds(h):
        return CheckResult("dinvariant", SKIPPED)
    result = check_dinvariant_bounds(h.d, h.g, h.sings)
    witnesses = []
    for w in result.witnesses:
        if w.kind == "bottom":
            witnesses.append(Witness((w.k,), w.value, w.bound, None))
        else:
            witnesses.append(Witness((w.k,), w.value, None, w.bound))
    return _verdict("dinvariant", witnesses)


# -- aggregation -------------------------------------------------------------


@dataclass(frozen=True)
class ReportOptions:
    checks: frozenset[str] = field(
        default_factory=lambda: frozenset(c for c in CHECK_ORDER if c != "dinvariant")
    )
    spectrum_mode: str = "ssl"
    early_exit: bool = False
    first_witness_only: bool = False

    def __post_init__(self) -> None:
        unknown = set(self.checks) - set(CHECK_ORDER)
        if unknown:
            raise InputError(f"unknown checks: {sorted(unknown)}; known: {list(CHECK_ORDER)}")


def _run(name: str, h: CurveHypothesis, opts: ReportOptions) -> CheckResult:
    if name == "genus_formula":
        return check_genus_formula(h)
    if name == "bmy":
        return check_bmy(h)
    if name == "multiplicity":
        return check_multiplicity_bound(h)
    if name == "theorem_main":
        return check_theorem_main(h, first_only=opts.first_witness_only)
    if name == "spectrum":
        return check_spectrum_semicontinuity(h, opts.spectrum_mode)
    return check_dinvariant(h)


def full_report(h: CurveHypothesis, opts: ReportOptions | None = None) -> ObstructionReport:
    """Run the requested checks in fixed cheapest-first order.

    The genus formula is always evaluated; when it fails every other
    check is skipped.
    """
    opts = opts or ReportOptions()
    results = []
    stop = False
    for name in CHECK_ORDER:
        if name != "genus_formula" and name not in opts.checks:
            results.append(CheckResult(name, NOT_APPLICABLE))
            continue
        if stop:
            results.append(CheckResult(name, SKIPPED))
            continue
        res = _run(name, h, opts)
        results.append(res)
        if res.status == FAIL and (opts.early_exit or name == "genus_formula"):
            stop = True
    return ObstructionReport(h, tuple(results))
