"""Integer partitions as conjugacy-class and irrep labels of S_n.

Partitions are stored as weakly decreasing tuples of positive integers.  The
canonical order everywhere in the package is reverse lexicographic, so
``enumerate_partitions(4)`` yields (4), (3,1), (2,2), (2,1,1), (1,1,1,1).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cache
from math import factorial, prod
from typing import Iterable, Sequence

from .errors import InvalidInputError

__all__ = [
    "Partition",
    "ClassDescriptor",
    "enumerate_partitions",
    "conjugate",
    "cycle_counts",
    "class_size",
    "class_sign",
    "class_descriptor",
    "derangement_count",
    "even_odd_derangement_gap",
    "parse_partition",
]


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Doubles as a cycle type (conjugacy class label) and as an irreducible
    representation label.  ``str(p)`` gives the text form ``"3,1,1"``.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(x) for x in parts)
        if not parts:
            raise InvalidInputError("a partition needs at least one part")
        if any(x < 1 for x in parts):
            raise InvalidInputError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise InvalidInputError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def n(self) -> int:
        return sum(self)

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def cycle_counts(self) -> dict[int, int]:
        return cycle_counts(self)

    @property
    def fixed_points(self) -> int:
        return tuple.count(self, 1)

    @property
    def support_size(self) -> int:
        return self.n - self.fixed_points

    def __str__(self) -> str:
        return ",".join(str(x) for x in self)

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"


def _as_partition(p: Sequence[int]) -> Partition:
    return p if isinstance(p, Partition) else Partition(p)


def parse_partition(text: str) -> Partition:
    """Parse ``"3,1,1"`` or exponent shorthand such as ``"2^3"`` / ``"3,1^2"``."""
    parts: list[int] = []
    text = text.strip()
    if not text:
        raise InvalidInputError("empty partition text")
    for token in text.split(","):
        token = token.strip()
        try:
            if "^" in token:
                base, exp = token.split("^")
                value, times = int(base), int(exp)
                if times < 1:
                    raise ValueError
                parts.extend([value] * times)
            else:
                parts.append(int(token))
        except ValueError:
            raise InvalidInputError(f"bad partition token {token!r} in {text!r}") from None
    return Partition(parts)


@cache
def _partitions(n: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


@cache
def enumerate_partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if not isinstance(n, int) or n < 1:
        raise InvalidInputError(f"n must be a positive integer, got {n!r}")
    return tuple(Partition(p) for p in _partitions(n, n))


def conjugate(p: Sequence[int]) -> Partition:
    p = _as_partition(p)
    return Partition(sum(1 for part in p if part >= i) for i in range(1, p[0] + 1))


def cycle_counts(gamma: Sequence[int]) -> dict[int, int]:
    """Map part value i to c_i, the number of parts equal to i."""
    return dict(Counter(_as_partition(gamma)))


def class_size(n: int, gamma: Sequence[int]) -> int:
    """Exact size of the conjugacy class of S_n with cycle type ``gamma``."""
    gamma = _as_partition(gamma)
    if gamma.n != n:
        raise InvalidInputError(f"{gamma} is not a partition of {n}")
    centralizer = prod(i**c * factorial(c) for i, c in cycle_counts(gamma).items())
    return factorial(n) // centralizer


def class_sign(gamma: Sequence[int]) -> int:
    gamma = _as_partition(gamma)
    return -1 if (gamma.n - len(gamma)) % 2 else 1


@dataclass(frozen=True)
class ClassDescriptor:
    """A cycle type together with its class size and sign."""

    gamma: Partition
    size: int
    sign: int


def class_descriptor(gamma: Sequence[int]) -> ClassDescriptor:
    gamma = _as_partition(gamma)
    return ClassDescriptor(gamma, class_size(gamma.n, gamma), class_sign(gamma))


@cache
def derangement_count(t: int) -> int:
    """Number of fixed-point-free permutations of t points."""
    if t < 0:
        raise InvalidInputError(f"t must be non-negative, got {t}")
    d = 1
    for k in range(1, t + 1):
        d = k * d + (-1) ** k
    return d


def even_odd_derangement_gap(t: int) -> int:
    """E(t) - O(t): even derangements minus odd derangements of t points."""
    if t < 1:
        raise InvalidInputError(f"t must be positive, got {t}")
    return (-1) ** (t - 1) * (t - 1)
