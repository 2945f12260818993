"""Exact irreducible characters of the symmetric group.

Characters are evaluated with the Murnaghan-Nakayama rule: the largest
remaining cycle is peeled off as a rim hook (border strip) of the shape, with
sign (-1)^(height).  Whole tables are built level by level (S_0, S_1, ..., S_n)
so that every sub-value is computed once; the level fill is delegated to a
compiled kernel when available.  Dimensions come from the hook length formula,
which is an independent route to the identity column.
"""
from __future__ import annotations

import math
import os
import threading
from collections import defaultdict
from fractions import Fraction
from functools import cache
from pathlib import Path
from typing import Sequence

import numpy as np

from . import _mn_fallback
from .errors import CacheFormatError, InvalidInputError
from .partitions import Partition, _partitions, conjugate, enumerate_partitions

try:
    from . import _mn_kernel
except ImportError:  # extension not built
    _mn_kernel = None

__all__ = [
    "BACKEND",
    "CharacterTable",
    "FAMILIES",
    "available_backends",
    "character",
    "character_recursive",
    "cached_character_table",
    "character_table",
    "character_ratio_exponent",
    "check_lemma25",
    "closed_form_character",
    "closed_form_dimension",
    "dimension",
    "family_shape",
    "hook_lengths",
    "load_character_table",
    "normalized_character",
    "rim_hooks",
    "save_character_table",
]

# Largest n whose table entries and MN partial sums provably fit in int64:
# |chi| <= sqrt(n!) and a sum has at most n terms.
INT64_SAFE_N = 32
# Above this, single character values use the lazy recursion instead of a table.
TABLE_MAX_N = 24

if _mn_kernel is not None and not os.environ.get("SNSPEC_PURE_PYTHON"):
    BACKEND = "cython"
else:
    BACKEND = "python"


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _mn_kernel is not None else [])


def _check_same_n(zeta: Sequence[int], gamma: Sequence[int]) -> tuple[Partition, Partition]:
    zeta = zeta if isinstance(zeta, Partition) else Partition(zeta)
    gamma = gamma if isinstance(gamma, Partition) else Partition(gamma)
    if zeta.n != gamma.n:
        raise InvalidInputError(f"{zeta} and {gamma} partition different integers")
    return zeta, gamma


@cache
def rim_hooks(shape: tuple[int, ...]) -> dict[int, tuple[tuple[tuple[int, ...], int], ...]]:
    """All rim hooks of ``shape`` grouped by length.

    Returns ``{r: ((remaining_shape, sign), ...)}`` where ``sign`` is
    (-1)^(rows spanned - 1).  Works on beta-sets: removing an r-hook moves a
    bead from b to b - r, and the height is the number of beads jumped over.
    """
    length = len(shape)
    beta = [shape[i] + length - 1 - i for i in range(length)]
    occupied = set(beta)
    out: dict[int, list] = defaultdict(list)
    for pos, b in enumerate(beta):
        for r in range(1, b + 1):
            target = b - r
            if target in occupied:
                continue
            # beta is strictly decreasing, so beads strictly between target and b
            # are those after pos with value > target
            height = 0
            for x in beta[pos + 1:]:
                if x > target:
                    height += 1
                else:
                    break
            moved = sorted([x for x in beta if x != b] + [target], reverse=True)
            remaining = tuple(x - (length - 1 - i) for i, x in enumerate(moved))
            remaining = tuple(x for x in remaining if x > 0)
            out[r].append((remaining, -1 if height % 2 else 1))
    return {r: tuple(v) for r, v in out.items()}


@cache
def _mn(shape: tuple[int, ...], cycles: tuple[int, ...]) -> int:
    if not cycles:
        return 1 if not shape else 0
    head, rest = cycles[0], cycles[1:]
    return sum(sign * _mn(sub, rest) for sub, sign in rim_hooks(shape).get(head, ()))


def character_recursive(zeta: Sequence[int], gamma: Sequence[int]) -> int:
    """chi_zeta(gamma) by memoized recursion, largest cycle first."""
    zeta, gamma = _check_same_n(zeta, gamma)
    return _mn(tuple(zeta), tuple(gamma))


class CharacterTable:
    """Full character table of S_n, rows and columns in canonical order."""

    def __init__(self, n: int, values: list[list[int]]):
        self.n = n
        self.partitions = enumerate_partitions(n)
        self.index = {p: i for i, p in enumerate(self.partitions)}
        self.values = values

    def __getitem__(self, key) -> int:
        zeta, gamma = key
        return self.values[self.index[tuple(zeta)]][self.index[tuple(gamma)]]

    def row(self, zeta: Sequence[int]) -> list[int]:
        return self.values[self.index[tuple(zeta)]]

    def column(self, gamma: Sequence[int]) -> list[int]:
        j = self.index[tuple(gamma)]
        return [row[j] for row in self.values]

    def __eq__(self, other):
        if not isinstance(other, CharacterTable):
            return NotImplemented
        return self.n == other.n and self.values == other.values

    def __repr__(self):
        return f"CharacterTable(n={self.n}, size={len(self.partitions)})"


def _level_inputs(n: int):
    levels = [_partitions(m, m) for m in range(n + 1)]
    index = [{p: i for i, p in enumerate(ps)} for ps in levels]
    counts = [len(ps) for ps in levels]
    offsets = [0] * (n + 1)
    for m in range(1, n + 1):
        offsets[m] = offsets[m - 1] + counts[m - 1] ** 2
    total = offsets[n] + counts[n] ** 2
    per_level = [None]
    for m in range(1, n + 1):
        ptr, tgt, sgn = [], [], []
        for lam in levels[m]:
            hooks = rim_hooks(lam)
            for r in range(m + 1):
                ptr.append(len(tgt))
                for sub, s in hooks.get(r, ()):
                    tgt.append(index[m - r][sub])
                    sgn.append(s)
        ptr.append(len(tgt))
        col_r = [mu[0] for mu in levels[m]]
        col_tail = [index[m - mu[0]][mu[1:]] for mu in levels[m]]
        per_level.append((ptr, tgt, sgn, col_r, col_tail))
    return counts, offsets, total, per_level


def _build_values(n: int, backend: str) -> list[list[int]]:
    counts, offsets, total, per_level = _level_inputs(n)
    if backend == "cython":
        if _mn_kernel is None:
            raise InvalidInputError("compiled kernel is not available")
        if n > INT64_SAFE_N:
            raise InvalidInputError(f"int64 kernel is unsafe above n={INT64_SAFE_N}")
        as_i64 = lambda xs: np.asarray(xs, dtype=np.int64)  # noqa: E731
        buf = np.zeros(total, dtype=np.int64)
        buf[0] = 1
        c, o = as_i64(counts), as_i64(offsets)
        for m in range(1, n + 1):
            ptr, tgt, sgn, col_r, col_tail = per_level[m]
            _mn_kernel.fill_level(buf, o, c, m, as_i64(ptr), as_i64(tgt), as_i64(sgn),
                                  as_i64(col_r), as_i64(col_tail))
        top = buf[offsets[n]:].reshape(counts[n], counts[n])
        return top.tolist()
    if backend == "python":
        buf = [0] * total
        buf[0] = 1
        for m in range(1, n + 1):
            _mn_fallback.fill_level(buf, offsets, counts, m, *per_level[m])
        p = counts[n]
        start = offsets[n]
        return [buf[start + i * p:start + (i + 1) * p] for i in range(p)]
    raise InvalidInputError(f"unknown backend {backend!r}")


_tables: dict[tuple[int, str], CharacterTable] = {}
_tables_lock = threading.Lock()


def character_table(n: int, backend: str | None = None) -> CharacterTable:
    """Exact character table of S_n (cached; safe to call from many threads)."""
    if not isinstance(n, int) or n < 1:
        raise InvalidInputError(f"n must be a positive integer, got {n!r}")
    if backend is None:
        backend = BACKEND if n <= INT64_SAFE_N else "python"
    key = (n, backend)
    with _tables_lock:
        table = _tables.get(key)
        if table is None:
            table = CharacterTable(n, _build_values(n, backend))
            _tables[key] = table
    return table


def clear_table_cache() -> None:
    with _tables_lock:
        _tables.clear()


def character(zeta: Sequence[int], gamma: Sequence[int]) -> int:
    """chi_zeta(gamma), exact."""
    zeta, gamma = _check_same_n(zeta, gamma)
    if zeta.n <= TABLE_MAX_N:
        return character_table(zeta.n)[zeta, gamma]
    return _mn(tuple(zeta), tuple(gamma))


def hook_lengths(zeta: Sequence[int]) -> list[list[int]]:
    zeta = zeta if isinstance(zeta, Partition) else Partition(zeta)
    cols = conjugate(zeta)
    return [[row - j + cols[j] - i - 1 for j in range(row)] for i, row in enumerate(zeta)]


@cache
def _dimension(zeta: Partition) -> int:
    hooks = math.prod(h for row in hook_lengths(zeta) for h in row)
    return math.factorial(zeta.n) // hooks


def dimension(zeta: Sequence[int]) -> int:
    """Dimension of the irrep labelled ``zeta``, by the hook length formula."""
    return _dimension(zeta if isinstance(zeta, Partition) else Partition(zeta))


def normalized_character(zeta: Sequence[int], gamma: Sequence[int]) -> Fraction:
    zeta, gamma = _check_same_n(zeta, gamma)
    return Fraction(character(zeta, gamma), dimension(zeta))


def character_ratio_exponent(zeta: Sequence[int], gamma: Sequence[int]) -> float | None:
    """log|chi_zeta(gamma)| / log dim(zeta), or None when undefined.

    Reporting aid only; never used in an assertion.
    """
    zeta, gamma = _check_same_n(zeta, gamma)
    dim = dimension(zeta)
    value = character(zeta, gamma)
    if dim < 2 or value == 0:
        return None
    return math.log(abs(value)) / math.log(dim)


def _d2(x: int) -> int:
    assert x % 2 == 0
    return x // 2


def _d3(x: int) -> int:
    assert x % 3 == 0
    return x // 3


def _d6(x: int) -> int:
    assert x % 6 == 0
    return x // 6


# name -> (shape builder, smallest n with a valid shape, dimension, character in c1, c2, c3)
FAMILIES = {
    "n": (lambda n: (n,), 1,
          lambda n: 1,
          lambda c1, c2, c3: 1),
    "n-1,1": (lambda n: (n - 1, 1), 2,
              lambda n: n - 1,
              lambda c1, c2, c3: c1 - 1),
    "n-2,2": (lambda n: (n - 2, 2), 4,
              lambda n: _d2(n * (n - 3)),
              lambda c1, c2, c3: _d2(c1 * (c1 - 3)) + c2),
    "n-2,1,1": (lambda n: (n - 2, 1, 1), 3,
                lambda n: _d2((n - 1) * (n - 2)),
                lambda c1, c2, c3: _d2((c1 - 1) * (c1 - 2)) - c2),
    "n-3,3": (lambda n: (n - 3, 3), 6,
              lambda n: _d6(n * (n - 1) * (n - 5)),
              lambda c1, c2, c3: _d6(c1 * (c1 - 1) * (c1 - 5)) + (c1 - 1) * c2 + c3),
    "n-3,2,1": (lambda n: (n - 3, 2, 1), 5,
                lambda n: _d3(n * (n - 2) * (n - 4)),
                lambda c1, c2, c3: _d3(c1 * (c1 - 2) * (c1 - 4)) - c3),
}


def _family_key(family: str) -> str:
    key = family.replace(" ", "").replace("−", "-").strip("()")
    if key not in FAMILIES:
        raise InvalidInputError(f"unknown family {family!r}; expected one of {sorted(FAMILIES)}")
    return key


def family_shape(family: str, n: int) -> Partition:
    builder, min_n, _, _ = FAMILIES[_family_key(family)]
    if n < min_n:
        raise InvalidInputError(f"family ({family}) needs n >= {min_n}, got {n}")
    return Partition(builder(n))


def closed_form_dimension(family: str, n: int) -> int:
    family_shape(family, n)
    return FAMILIES[_family_key(family)][2](n)


def closed_form_character(family: str, gamma: Sequence[int]) -> int:
    """Character of a small-depth family evaluated from cycle counts c1, c2, c3."""
    gamma = gamma if isinstance(gamma, Partition) else Partition(gamma)
    family_shape(family, gamma.n)
    return FAMILIES[_family_key(family)][3](gamma.count(1), gamma.count(2), gamma.count(3))


def check_lemma25(n: int) -> list[Partition]:
    """Shapes with >= 3 cells outside both the first row and first column
    whose dimension falls below n**2.05 (compared exactly as dim**20 < n**41).
    """
    if n < 13:
        raise InvalidInputError(f"the dimension bound is only claimed for n >= 13, got {n}")
    bound = n**41
    return [
        zeta for zeta in enumerate_partitions(n)
        if n - zeta[0] >= 3 and n - len(zeta) >= 3 and dimension(zeta) ** 20 < bound
    ]


CACHE_HEADER = "snchar v1 n={n}"


def save_character_table(table: CharacterTable, path: str | os.PathLike) -> None:
    lines = [CACHE_HEADER.format(n=table.n)]
    for zeta, row in zip(table.partitions, table.values):
        for gamma, value in zip(table.partitions, row):
            lines.append(f"{zeta};{gamma};{value}")
    path = Path(path)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text("\n".join(lines) + "\n")
    os.replace(tmp, path)


def load_character_table(path: str | os.PathLike, n: int) -> CharacterTable:
    """Read a table written by :func:`save_character_table`.

    Raises CacheFormatError on a header mismatch or an incomplete/corrupt body.
    """
    from .partitions import parse_partition

    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CacheFormatError(f"cannot read {path}: {exc}") from exc
    lines = text.splitlines()
    expected = CACHE_HEADER.format(n=n)
    if not lines or lines[0].strip() != expected:
        got = lines[0].strip() if lines else "<empty>"
        raise CacheFormatError(f"header mismatch: expected {expected!r}, got {got!r}")
    parts = enumerate_partitions(n)
    index = {p: i for i, p in enumerate(parts)}
    values = [[None] * len(parts) for _ in parts]
    try:
        for line in lines[1:]:
            if not line.strip():
                continue
            z, g, v = line.split(";")
            values[index[parse_partition(z)]][index[parse_partition(g)]] = int(v)
    except (ValueError, KeyError, InvalidInputError) as exc:
        raise CacheFormatError(f"corrupt cache body in {path}: {exc}") from exc
    if any(v is None for row in values for v in row):
        raise CacheFormatError(f"incomplete cache body in {path}")
    return CharacterTable(n, values)


def cached_character_table(n: int, cache_dir: str | os.PathLike) -> CharacterTable:
    """Character table backed by ``<cache_dir>/snchar_n<n>.txt``.

    A missing, mismatched or corrupt file is logged, rebuilt and rewritten.
    """
    import logging

    path = Path(cache_dir) / f"snchar_n{n}.txt"
    key = (n, BACKEND if n <= INT64_SAFE_N else "python")
    if path.exists():
        try:
            table = load_character_table(path, n)
        except CacheFormatError as exc:
            logging.getLogger(__name__).warning("ignoring character cache %s: %s", path, exc)
        else:
            with _tables_lock:
                _tables.setdefault(key, table)
            return table
    table = character_table(n)
    path.parent.mkdir(parents=True, exist_ok=True)
    save_character_table(table, path)
    return table
