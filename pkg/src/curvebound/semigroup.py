"""Numerical semigroups of unibranched plane curve singularities.

A singular point whose link is the (p, q) torus knot has semigroup
generated by p and q.  Everything the obstructions need is derived from
the semigroup: the counting function R(m) = #(S cap [0, m)), the gap
sequence, the delta invariant and the Alexander polynomial of the link.

Two-generator semigroups are handled in closed form (membership by a
modular inverse, counting by a floor sum), so the search drivers never
materialize tables of size (p-1)(q-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, reduce
from itertools import accumulate
from math import gcd
from typing import Iterable, Union

from .errors import InputError


def floor_sum(n: int, m: int, a: int, b: int) -> int:
    """Return sum_{i=0}^{n-1} floor((a*i + b) / m) for n >= 0, m >= 1, a, b >= 0."""
    total = 0
    while True:
        if a >= m:
            total += (n - 1) * n // 2 * (a // m)
            a %= m
        if b >= m:
            total += n * (b // m)
            b %= m
        y_max = a * n + b
        if y_max < m:
            return total
        n, b = divmod(y_max, m)
        m, a = a, m


@dataclass(frozen=True)
class NumericalSemigroup:
    """Additive submonoid of Z>=0 with finite complement.

    ``generators`` is kept sorted and deduplicated; it need not be a
    minimal generating set.
    """

    generators: tuple[int, ...]

    def __post_init__(self) -> None:
        gens = tuple(sorted(set(int(g) for g in self.generators)))
        if not gens:
            raise InputError("empty generator list")
        if gens[0] <= 0:
            raise InputError(f"generators must be positive, got {gens}")
        if reduce(gcd, gens) != 1:
            raise InputError(
                f"generators {gens} have gcd != 1: not a numerical semigroup of a knot"
            )
        object.__setattr__(self, "generators", gens)

    # -- structure -----------------------------------------------------

    @property
    def multiplicity(self) -> int:
        """Smallest positive element (multiplicity of the singular point)."""
        return self.generators[0]

    @property
    def _pair(self) -> tuple[int, int] | None:
        if len(self.generators) == 2 and self.generators[0] > 1:
            return self.generators  # type: ignore[return-value]
        return None

    @cached_property
    def _q_inverse(self) -> int:
        p, q = self.generators
        return pow(q, -1, p)

    @cached_property
    def conductor(self) -> int:
        """Smallest c with [c, oo) contained in S."""
        if self.generators[0] == 1:
            return 0
        if self._pair is not None:
            p, q = self._pair
            return (p - 1) * (q - 1)
        return self._sieve[1]

    @cached_property
    def _sieve(self) -> tuple[tuple[bool, ...], int]:
        # Additive DP; S contains [c, oo) as soon as it contains
        # multiplicity-many consecutive integers starting at c.
        gens = self.generators
        a = gens[0]
        table = [True]
        run = 1
        x = 0
        while run < a:
            x += 1
            member = any(x >= g and table[x - g] for g in gens)
            table.append(member)
            run = run + 1 if member else 0
        c = len(table) - run
        return tuple(table[:c]), c

    @cached_property
    def membership(self) -> tuple[bool, ...]:
        """Membership flags for 0 .. conductor-1."""
        if self._pair is None:
            return self._sieve[0] if self.generators[0] != 1 else ()
        return tuple(self._pair_contains(x) for x in range(self.conductor))

    @cached_property
    def gaps(self) -> tuple[int, ...]:
        return tuple(x for x, member in enumerate(self.membership) if not member)

    @cached_property
    def delta(self) -> int:
        """Number of gaps; the genus of the link."""
        if self._pair is not None:
            p, q = self._pair
            return (p - 1) * (q - 1) // 2
        return len(self.gaps)

    @property
    def mu(self) -> int:
        """Milnor number, 2 * delta."""
        return 2 * self.delta

    @property
    def is_symmetric(self) -> bool:
        """True for semigroups of plane curve singularities (conductor = 2 delta)."""
        return self.conductor == 2 * self.delta

    @property
    def frobenius(self) -> int:
        """Largest gap (-1 for the whole of Z>=0)."""
        return self.conductor - 1

    # -- membership and counting --------------------------------------

    def _pair_contains(self, x: int) -> bool:
        # x = a*p + b*q with 0 <= b < p is the unique candidate representation
        p, q = self.generators
        b = (x * self._q_inverse) % p
        return x - b * q >= 0

    def __contains__(self, x: object) -> bool:
        if not isinstance(x, int) or x < 0:
            return False
        if x >= self.conductor:
            return True
        if self._pair is not None:
            return self._pair_contains(x)
        return self.membership[x]

    @cached_property
    def _prefix(self) -> tuple[int, ...]:
        return (0, *accumulate(int(b) for b in self.membership))

    def count_below(self, m: int) -> int:
        """#(S cap [0, m)); zero for m <= 0."""
        if m <= 0:
            return 0
        if m >= self.conductor:
            return m - self.delta
        if self._pair is not None:
            p, q = self._pair
            top = min(p - 1, (m - 1) // q)
            return top + 1 + floor_sum(top + 1, p, q, m - 1 - top * q)
        return self._prefix[m]

    def elements_below(self, m: int) -> list[int]:
        return [x for x in range(max(m, 0)) if x in self]

    def __str__(self) -> str:
        return "<" + ",".join(map(str, self.generators)) + ">"


def from_generators(gens: Iterable[int]) -> NumericalSemigroup:
    return NumericalSemigroup(tuple(gens))


def count_below(S: NumericalSemigroup, m: int) -> int:
    return S.count_below(m)


def alexander_polynomial(S: NumericalSemigroup) -> list[int]:
    """Coefficients (lowest degree first) of 1 + (t-1) * sum_{g in G} t^g.

    The degree is the conductor, which is mu for singularity semigroups.
    """
    coeffs = [0] * (S.conductor + 1)
    coeffs[0] = 1
    for g in S.gaps:
        coeffs[g + 1] += 1
        coeffs[g] -= 1
    return coeffs


def alexander_second_expansion(S: NumericalSemigroup) -> list[int]:
    """k_j = #{gaps > j} for j = 0 .. conductor-2, the coefficients of the (t-1)^2 term."""
    if S.delta == 0:
        return []
    gaps = S.gaps
    out = []
    i = 0
    for j in range(S.conductor - 1):
        while i < len(gaps) and gaps[i] <= j:
            i += 1
        out.append(len(gaps) - i)
    return out


@dataclass(frozen=True)
class SimplePairSingularity:
    """Singularity with one Puiseux pair: locally x^p = y^q, link T(p, q)."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p < 2:
            raise InputError(f"p must be >= 2 (p=1 is a smooth point), got p={self.p}")
        if self.q <= self.p:
            raise InputError(f"need p < q, got ({self.p},{self.q})")
        if gcd(self.p, self.q) != 1:
            raise InputError(f"({self.p},{self.q}) are not coprime")

    @cached_property
    def semigroup(self) -> NumericalSemigroup:
        return NumericalSemigroup((self.p, self.q))

    @property
    def delta(self) -> int:
        return (self.p - 1) * (self.q - 1) // 2

    @property
    def multiplicity(self) -> int:
        return self.p

    @property
    def mbar(self) -> int:
        return orevkov_mbar(self)

    def __str__(self) -> str:
        return f"({self.p},{self.q})"


@dataclass(frozen=True)
class GeneralSingularity:
    """Singularity given only by its semigroup; the M-bar number is optional."""

    semigroup: NumericalSemigroup
    mbar: int | None = None

    @property
    def delta(self) -> int:
        return self.semigroup.delta

    @property
    def multiplicity(self) -> int:
        return self.semigroup.multiplicity

    def __str__(self) -> str:
        return str(self.semigroup)


Singularity = Union[SimplePairSingularity, GeneralSingularity]


def orevkov_mbar(sing: SimplePairSingularity) -> int:
    return sing.p + sing.q - sing.q // sing.p - 3


def as_semigroup(obj: Singularity | NumericalSemigroup) -> NumericalSemigroup:
    if isinstance(obj, NumericalSemigroup):
        return obj
    return obj.semigroup
