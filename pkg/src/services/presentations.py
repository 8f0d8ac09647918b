"""Computable reals given by nested rational intervals.

A presentation answers ``bounds(m) -> (L, U)`` with ``L <= s <= U``,
``U - L <= 2**-m``, ``L`` nondecreasing and ``U`` nonincreasing in ``m``.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Sequence
from fractions import Fraction
from math import isqrt
from typing import override

from src.core.rational import RationalLike, as_rational, format_rational


class CauchyPresentation(ABC):
    """One presented real."""

    def __init__(self, name: str) -> None:
        self.name = name

    @abstractmethod
    def _raw_bounds(self, m: int) -> tuple[Fraction, Fraction]: ...

    def bounds(self, m: int) -> tuple[Fraction, Fraction]:
        if m < 0:
            raise ValueError(f"depth must be a natural number, got {m}")
        return self._raw_bounds(m)

    def midpoint(self, m: int) -> Fraction:
        """A rational within ``2**-(m+1)`` of the presented real."""
        lo, hi = self.bounds(m)
        return (lo + hi) / 2

    def exact_value(self) -> Fraction | None:
        """The value when it is known to be rational, else None."""
        return None

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r})"


class RationalPresentation(CauchyPresentation):
    def __init__(self, value: RationalLike, name: str | None = None) -> None:
        self.value = as_rational(value)
        super().__init__(name or f"rational:{format_rational(self.value)}")

    @override
    def _raw_bounds(self, m: int) -> tuple[Fraction, Fraction]:
        return self.value, self.value

    def exact_value(self) -> Fraction | None:
        return self.value


class SqrtPresentation(CauchyPresentation):
    """Square root of a nonnegative rational via integer square roots.

    The scaled root ``floor(sqrt(q) * 2**M)`` is cached for the deepest ``M``
    requested so far; coarser depths are right shifts of it.
    """

    def __init__(self, radicand: RationalLike, name: str | None = None) -> None:
        self.radicand = as_rational(radicand)
        if self.radicand < 0:
            raise ValueError("square roots need a nonnegative radicand")
        super().__init__(name or f"sqrt:{format_rational(self.radicand)}")
        self._depth = -1
        self._root = 0

    def _scaled_root(self, m: int) -> int:
        if m > self._depth:
            depth = max(m, 2 * self._depth, 64)
            q = self.radicand
            self._root = isqrt((q.numerator << (2 * depth)) // q.denominator)
            self._depth = depth
        return self._root >> (self._depth - m)

    def _raw_bounds(self, m: int) -> tuple[Fraction, Fraction]:
        r = self._scaled_root(m)
        scale = 1 << m
        return Fraction(r, scale), Fraction(r + 1, scale)

    def exact_value(self) -> Fraction | None:
        num, den = self.radicand.numerator, self.radicand.denominator
        root_num, root_den = isqrt(num), isqrt(den)
        if root_num * root_num == num and root_den * root_den == den:
            return Fraction(root_num, root_den)
        return None


class EPresentation(CauchyPresentation):
    """Euler's number from partial sums of ``1/k!``.

    With ``S_K = sum_{k<=K} 1/k!`` the tail is below ``2/(K+1)!``, so
    ``[S_K, S_K + 2/(K+1)!]`` is used with the least ``K`` giving width
    ``<= 2**-m``.
    """

    def __init__(self, name: str = "e") -> None:
        super().__init__(name)
        self._sums = [Fraction(1)]
        self._factorials = [1]

    def _extend(self) -> None:
        k = len(self._sums)
        self._factorials.append(self._factorials[-1] * k)
        self._sums.append(self._sums[-1] + Fraction(1, self._factorials[-1]))

    def _raw_bounds(self, m: int) -> tuple[Fraction, Fraction]:
        target = 1 << (m + 1)
        k = 0
        while True:
            while len(self._factorials) <= k + 1:
                self._extend()
            if self._factorials[k + 1] >= target:
                break
            k += 1
        partial = self._sums[k]
        return partial, partial + Fraction(2, self._factorials[k + 1])


class RealFamily:
    """A finite ordered family ``S = (s_1, s_2, ...)`` of presented reals."""

    def __init__(self, members: Sequence[CauchyPresentation]) -> None:
        if not members:
            raise ValueError("a family needs at least one member")
        self.members = list(members)

    def __len__(self) -> int:
        return len(self.members)

    def member(self, j: int) -> CauchyPresentation:
        if not 1 <= j <= len(self.members):
            raise IndexError(f"family index {j} outside 1..{len(self.members)}")
        return self.members[j - 1]

    def bounds(self, j: int, m: int) -> tuple[Fraction, Fraction]:
        return self.member(j).bounds(m)

    @property
    def names(self) -> list[str]:
        return [member.name for member in self.members]

    def index_of_value(self, value: RationalLike) -> int | None:
        """First member known to equal the rational ``value``."""
        value = as_rational(value)
        for j, member in enumerate(self.members, start=1):
            if member.exact_value() == value:
                return j
        return None

    def index_of_name(self, name: str) -> int | None:
        for j, member in enumerate(self.members, start=1):
            if member.name == name:
                return j
        return None
