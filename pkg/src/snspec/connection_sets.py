"""Connection sets that are unions of conjugacy classes of S_n.

A set is held symbolically as its list of cycle types; the permutations
themselves are only ever expanded by the brute-force oracle.

Selector grammar (also used by the CLI)::

    class:3,1,1,1           one conjugacy class
    TI:2,5,7                permutations whose support size lies in I
    Tk:4                    support size between 2 and k
    F:2                     permutations fixing exactly k points
    D                       derangements
    custom:3,1,1,1;2,2,1,1  explicit list of classes
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial
from typing import Iterable, Sequence

from .errors import InvalidInputError, SelectorParseError
from .partitions import (
    Partition,
    class_sign,
    class_size,
    derangement_count,
    enumerate_partitions,
    parse_partition,
)

__all__ = [
    "ConnectionSetSpec",
    "build_set",
    "custom",
    "derangements",
    "fixing",
    "generated_index",
    "parse_selector",
    "set_size",
    "single",
    "t_of_i",
    "t_of_k",
]


@dataclass(frozen=True)
class ConnectionSetSpec:
    n: int
    classes: tuple[Partition, ...]
    label: str  # single-class | T(n,I) | T(n,k) | F(n,k) | derangements | custom
    selector: str

    def __str__(self) -> str:
        return self.selector

    def __iter__(self):
        return iter(self.classes)

    def __len__(self) -> int:
        return len(self.classes)


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 2:
        raise InvalidInputError(f"n must be an integer >= 2, got {n!r}")


def _canonical(classes: Iterable[Partition]) -> tuple[Partition, ...]:
    return tuple(sorted(classes, reverse=True))


def _by_support(n: int, keep) -> tuple[Partition, ...]:
    return tuple(g for g in enumerate_partitions(n) if keep(g.support_size))


def single(n: int, gamma: Sequence[int]) -> ConnectionSetSpec:
    _check_n(n)
    gamma = gamma if isinstance(gamma, Partition) else Partition(gamma)
    if gamma.n != n:
        raise InvalidInputError(f"{gamma} is not a partition of {n}")
    if gamma.support_size == 0:
        raise InvalidInputError("the identity class cannot be part of a connection set")
    return ConnectionSetSpec(n, (gamma,), "single-class", f"class:{gamma}")


def t_of_i(n: int, support_sizes: Iterable[int]) -> ConnectionSetSpec:
    """All permutations whose support size lies in ``support_sizes``."""
    _check_n(n)
    sizes = sorted(set(int(t) for t in support_sizes))
    if not sizes:
        raise InvalidInputError("the support-size set I must be non-empty")
    bad = [t for t in sizes if t < 2 or t > n]
    if bad:
        raise InvalidInputError(f"support sizes must lie in 2..{n}, got {bad}")
    wanted = set(sizes)
    return ConnectionSetSpec(n, _by_support(n, wanted.__contains__), "T(n,I)",
                             "TI:" + ",".join(map(str, sizes)))


def t_of_k(n: int, k: int) -> ConnectionSetSpec:
    _check_n(n)
    if not 2 <= k <= n:
        raise InvalidInputError(f"k must lie in 2..{n}, got {k}")
    return ConnectionSetSpec(n, _by_support(n, lambda s: 2 <= s <= k), "T(n,k)", f"Tk:{k}")


def fixing(n: int, k: int) -> ConnectionSetSpec:
    """Permutations fixing exactly ``k`` points (the k-point-fixing graph)."""
    _check_n(n)
    if not 0 <= k <= n - 2:
        raise InvalidInputError(f"k must lie in 0..{n - 2} (nothing fixes exactly n-1 points), got {k}")
    return ConnectionSetSpec(n, _by_support(n, lambda s: s == n - k), "F(n,k)", f"F:{k}")


def derangements(n: int) -> ConnectionSetSpec:
    _check_n(n)
    return ConnectionSetSpec(n, _by_support(n, lambda s: s == n), "derangements", "D")


def custom(n: int, classes: Iterable[Sequence[int]]) -> ConnectionSetSpec:
    _check_n(n)
    parts = [c if isinstance(c, Partition) else Partition(c) for c in classes]
    if not parts:
        raise InvalidInputError("a custom connection set needs at least one class")
    if len(set(parts)) != len(parts):
        raise InvalidInputError("custom classes must be distinct")
    for gamma in parts:
        if gamma.n != n:
            raise InvalidInputError(f"{gamma} is not a partition of {n}")
        if gamma.support_size == 0:
            raise InvalidInputError("the identity class cannot be part of a connection set")
    classes = _canonical(parts)
    return ConnectionSetSpec(n, classes, "custom", "custom:" + ";".join(map(str, classes)))


def build_set(n: int, kind: str, value=None) -> ConnectionSetSpec:
    """Dispatch on selector kind: ``class``, ``TI``, ``Tk``, ``F``, ``D`` or ``custom``."""
    if kind == "class":
        return single(n, value)
    if kind == "TI":
        return t_of_i(n, value)
    if kind == "Tk":
        return t_of_k(n, value)
    if kind == "F":
        return fixing(n, value)
    if kind == "D":
        return derangements(n)
    if kind == "custom":
        return custom(n, value)
    raise InvalidInputError(f"unknown selector kind {kind!r}")


def _int_token(token: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise SelectorParseError(f"expected an integer, got {token!r}", token) from None


def _partition_token(token: str) -> Partition:
    try:
        return parse_partition(token)
    except InvalidInputError as exc:
        raise SelectorParseError(f"bad partition {token!r}: {exc}", token) from None


def parse_selector(text: str, n: int) -> ConnectionSetSpec:
    """Parse a selector string (see module docstring) for S_n."""
    text = text.strip()
    kind, sep, body = text.partition(":")
    kind = kind.strip()
    if kind == "D":
        if sep:
            raise SelectorParseError(f"'D' takes no argument, got {body!r}", body)
    elif kind not in ("class", "TI", "Tk", "F", "custom"):
        raise SelectorParseError(f"unknown selector kind {kind!r}", kind)
    elif not sep or not body.strip():
        raise SelectorParseError(f"selector {kind!r} needs an argument", kind)

    try:
        if kind == "D":
            spec = derangements(n)
        elif kind == "class":
            spec = single(n, _partition_token(body))
        elif kind == "TI":
            sizes = [_int_token(tok.strip()) for tok in body.split(",")]
            for tok, t in zip(body.split(","), sizes):
                if t < 2 or t > n:
                    raise SelectorParseError(f"support size {t} is impossible in S_{n}", tok.strip())
            spec = t_of_i(n, sizes)
        elif kind == "Tk":
            spec = t_of_k(n, _int_token(body.strip()))
        elif kind == "F":
            spec = fixing(n, _int_token(body.strip()))
        else:
            spec = custom(n, [_partition_token(tok) for tok in body.split(";")])
    except SelectorParseError:
        raise
    except InvalidInputError as exc:
        raise SelectorParseError(f"invalid selector {text!r}: {exc}", body or kind) from None
    return spec


def set_size(spec: ConnectionSetSpec) -> int:
    """|S| as the sum of its class sizes."""
    return sum(class_size(spec.n, gamma) for gamma in spec.classes)


def support_count(n: int, t: int) -> int:
    """Number of permutations of S_n with support size exactly t."""
    return comb(n, t) * derangement_count(t)


def generated_index(spec: ConnectionSetSpec) -> int:
    """t = [S_n : <S>].

    For n >= 5 the only normal subgroups containing a non-identity class are
    A_n and S_n, so parity decides.  S_3 and S_4 (which has the Klein four
    group as a normal subgroup) go through explicit closure.
    """
    if not spec.classes:
        raise InvalidInputError("empty connection set")
    n = spec.n
    if n >= 5:
        return 2 if all(class_sign(g) == 1 for g in spec.classes) else 1
    from .oracle import subgroup_closure

    return factorial(n) // subgroup_closure(spec)
