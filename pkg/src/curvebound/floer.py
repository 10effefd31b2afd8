"""Staircases, the gamma function and d-invariants of large surgeries.

The chain-level knot Floer complex is never built.  An L-space knot is
represented by its staircase T, the bifiltration levels of its grading-0
generators, and

    gamma_m(T) = min_{(i, j) in T} max(i, j - m).

For links of singular points gamma_m = I(m + h), with I the gap function
and h the genus, and connected sums correspond to Minkowski sums of
staircases and to min-plus convolution of gap functions.  The production
checker goes through gap functions; the staircase path exists so the two
can be compared.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import InputError
from .gapfn import GapFunction, combined_gap_function, gap_function
from .semigroup import NumericalSemigroup, Singularity, as_semigroup

GammaProfile = Callable[[int], int]


def pareto_minimal(points: Iterable[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    """Points not dominated (componentwise >=) by another point of the set."""
    pts = sorted(set(points))
    keep = []
    best_j = None
    # sorted by i then j: a point survives iff its j is below every j seen so far
    for i, j in pts:
        if best_j is None or j < best_j:
            keep.append((i, j))
            best_j = j
    return frozenset(keep)


@dataclass(frozen=True)
class Staircase:
    vertices: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        verts = frozenset((int(i), int(j)) for i, j in self.vertices)
        if pareto_minimal(verts) != verts:
            raise InputError("staircase vertices must form an antichain")
        object.__setattr__(self, "vertices", verts)

    @classmethod
    def from_points(cls, points: Iterable[tuple[int, int]]) -> "Staircase":
        return cls(pareto_minimal(points))

    def shifted(self, a: int, b: int) -> "Staircase":
        return Staircase(frozenset((i + a, j + b) for i, j in self.vertices))


def gamma(T: Staircase, m: int) -> int:
    if not T.vertices:
        raise InputError("gamma of an empty staircase is undefined")
    return min(max(i, j - m) for i, j in T.vertices)


def staircase_from_semigroup(S: NumericalSemigroup) -> Staircase:
    I = gap_function(S)
    h = I.h
    return Staircase.from_points((I(m + h), I(m + h) + m) for m in range(-h, h + 1))


def staircase_sum(T1: Staircase, T2: Staircase) -> Staircase:
    if not T1.vertices or not T2.vertices:
        raise InputError("staircase_sum needs nonempty staircases")
    return Staircase.from_points(
        (i1 + i2, j1 + j2) for i1, j1 in T1.vertices for i2, j2 in T2.vertices
    )


def profile_from_gap_function(I: GapFunction) -> GammaProfile:
    """m -> I(m + h), a total function on Z."""
    h = I.h
    return lambda m: I(m + h)


def profile_from_staircase(T: Staircase) -> GammaProfile:
    return lambda m: gamma(T, m)


# -- d-invariants ---------------------------------------------------------


def grading_shift(n: int, m: int) -> Fraction:
    return Fraction((2 * m - n) ** 2 - n, 4 * n)


def _check_large_surgery(n: int, g: int, knot_genus: int) -> None:
    if n < 1:
        raise InputError(f"surgery coefficient must be positive, got {n}")
    if g < 0 or knot_genus < 0:
        raise InputError("genera must be non-negative")
    if n < 2 * knot_genus + 2 * g - 1:
        raise InputError(
            f"large-surgery bound n >= 2*g(K) + 2*g - 1 = {2 * knot_genus + 2 * g - 1} "
            f"violated by n = {n}"
        )


def _shifted_gammas(m: int, g: int, gamma_profile: GammaProfile) -> list[int]:
    # a + b = g, value gamma_{m - b + a} + a
    return [gamma_profile(m - (g - a) + a) + a for a in range(g + 1)]


def d_bottom(n: int, m: int, g: int, gamma_profile: GammaProfile, knot_genus: int = 0) -> Fraction:
    _check_large_surgery(n, g, knot_genus)
    return -2 * max(_shifted_gammas(m, g, gamma_profile)) + g + grading_shift(n, m)


def d_top(n: int, m: int, g: int, gamma_profile: GammaProfile, knot_genus: int = 0) -> Fraction:
    _check_large_surgery(n, g, knot_genus)
    return -2 * min(_shifted_gammas(m, g, gamma_profile)) + g + grading_shift(n, m)


@dataclass(frozen=True)
class SpincIndexRange:
    """The q numbers -(q-1)/2, ..., (q-1)/2, stored as numerators over 2."""

    q: int
    numerators: tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        if self.q < 1:
            raise InputError(f"q must be positive, got {self.q}")
        object.__setattr__(self, "numerators", tuple(range(-(self.q - 1), self.q, 2)))

    @property
    def elements(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(n, 2) for n in self.numerators)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return self.q


def spinc_range(q: int) -> SpincIndexRange:
    return SpincIndexRange(q)


@dataclass(frozen=True)
class DInvariantWitness:
    k: Fraction
    j: int  # k + (d - 3)/2, the matching index of the semigroup inequality
    kind: str  # "bottom" (d_b >= -g violated) or "top" (d_t <= g violated)
    value: Fraction
    bound: int


@dataclass(frozen=True)
class DInvariantResult:
    values: tuple[tuple[Fraction, Fraction, Fraction], ...]  # (k, d_b, d_t)
    witnesses: tuple[DInvariantWitness, ...]

    @property
    def passed(self) -> bool:
        return not self.witnesses


def check_dinvariant_bounds(
    d: int, g: int, sings: Sequence[Singularity | NumericalSemigroup]
) -> DInvariantResult:
    """Evaluate d_b(s_kd) >= -g and d_t(s_kd) <= g for every k in S_d.

    Surgery coefficient n = d^2 on the connected sum of the links, with
    gamma_m = (I_1 <> ... <> I_n)(m + h).
    """
    if d < 3:
        raise InputError(f"degree must be >= 3, got {d}")
    if not sings:
        raise InputError("need at least one singular point")
    semigroups = [as_semigroup(s) for s in sings]
    h = sum(S.delta for S in semigroups)
    if 2 * (g + h) != (d - 1) * (d - 2):
        raise InputError(
            f"genus formula fails: (d-1)(d-2)/2 - sum(delta) = "
            f"{Fraction((d - 1) * (d - 2), 2) - h} != g = {g}"
        )
    profile = profile_from_gap_function(combined_gap_function(semigroups))
    n = d * d
    values = []
    witnesses = []
    for k in spinc_range(d):
        m = k * d
        assert m.denominator == 1
        m = int(m)
        db = d_bottom(n, m, g, profile, knot_genus=h)
        dt = d_top(n, m, g, profile, knot_genus=h)
        values.append((k, db, dt))
        j = int(k + Fraction(d - 3, 2))
        if db < -g:
            witnesses.append(DInvariantWitness(k, j, "bottom", db, -g))
        if dt > g:
            witnesses.append(DInvariantWitness(k, j, "top", dt, g))
    return DInvariantResult(tuple(values), tuple(witnesses))
