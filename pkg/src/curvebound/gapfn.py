"""Gap functions, their min-plus convolution, and the multi-point R.

For a gap set G with h elements the gap function is

    I(m) = #{k in G cup Z_<0 : k >= m},

so I(m) = h - m for m <= 0 and I(m) = 0 past the largest gap.  Only the
window [0, length) is stored; both tails are linear and are filled in by
``__call__``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Callable, Sequence

import numpy as np

from .errors import InputError
from .semigroup import NumericalSemigroup, Singularity, as_semigroup


@dataclass(frozen=True)
class GapFunction:
    h: int
    # I(0), I(1), ..., I(length-1); I(s) = 0 for s >= length.
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.table or self.table[0] != self.h:
            raise ValueError("gap function table must start with I(0) = h")

    def __call__(self, s: int) -> int:
        if s <= 0:
            return self.h - s
        if s >= len(self.table):
            return 0
        return self.table[s]

    @property
    def length(self) -> int:
        return len(self.table)

    def as_array(self, upto: int) -> np.ndarray:
        """Values I(0..upto) as an int64 array (zero-padded past the table)."""
        out = np.zeros(upto + 1, dtype=np.int64)
        n = min(len(self.table), upto + 1)
        out[:n] = self.table[:n]
        return out


def gap_function(S: NumericalSemigroup) -> GapFunction:
    gaps = S.gaps
    h = len(gaps)
    # table covers 0 .. largest gap; I(largest gap + 1) = 0
    length = (gaps[-1] + 1) if gaps else 1
    table = []
    remaining = h
    i = 0
    for s in range(length):
        while i < h and gaps[i] < s:
            i += 1
            remaining -= 1
        table.append(remaining)
    return GapFunction(h, tuple(table))


def from_gap_set(gaps: Sequence[int]) -> GapFunction:
    """Gap function of an arbitrary finite set of positive integers."""
    gs = sorted(set(gaps))
    if gs and gs[0] <= 0:
        raise InputError("gap sets contain positive integers only")
    h = len(gs)
    length = (gs[-1] + 1) if gs else 1
    table = tuple(sum(1 for g in gs if g >= s) for s in range(length))
    return GapFunction(h, table)


def diamond(I1: GapFunction, I2: GapFunction) -> GapFunction:
    """Min-plus convolution (I1 <> I2)(s) = min_m I1(m) + I2(s - m).

    Splits with m < 0 or m > len(I1) never beat m = 0 or m = len(I1)
    because the left tail rises by exactly one per step while the other
    factor falls by at most one; the same holds for s - m.  So the
    minimum is attained with 0 <= m <= L1 and 0 <= s - m <= L2.
    """
    L1, L2 = I1.length, I2.length
    a = I1.as_array(L1)
    b = I2.as_array(L2)
    n = L1 + L2 + 1
    out = np.full(n, np.iinfo(np.int64).max, dtype=np.int64)
    for m in range(L1 + 1):
        np.minimum(out[m : m + L2 + 1], a[m] + b, out=out[m : m + L2 + 1])
    table = out.tolist()
    while len(table) > 1 and table[-1] == 0:
        table.pop()
    return GapFunction(I1.h + I2.h, tuple(table))


def combined_gap_function(sings: Sequence[Singularity | NumericalSemigroup]) -> GapFunction:
    if not sings:
        raise InputError("need at least one singular point")
    return reduce(diamond, (gap_function(as_semigroup(s)) for s in sings))


def counting_function(sings: Sequence[Singularity | NumericalSemigroup]) -> Callable[[int], int]:
    """Return u -> R(u), the partition minimum of per-point counts.

    R(u) = u - h + (I_1 <> ... <> I_n)(u) with h the total number of
    gaps; for u <= 0 this is 0.  A single point short-circuits to the
    semigroup's own counting function.
    """
    if not sings:
        raise InputError("need at least one singular point")
    semigroups = [as_semigroup(s) for s in sings]
    if len(semigroups) == 1:
        return semigroups[0].count_below
    total = combined_gap_function(semigroups)
    return lambda u: u - total.h + total(u) if u > 0 else 0


def multi_R(sings: Sequence[Singularity | NumericalSemigroup], u: int) -> int:
    return counting_function(sings)(u)
