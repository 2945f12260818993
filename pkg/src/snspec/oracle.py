"""Brute-force ground truth for small symmetric groups.

Everything here works on explicit permutations: the group is listed in
factorial-number-system (lexicographic) order, the connection set is expanded
element by element, and the Cayley graph's adjacency matrix is diagonalised
numerically.  Nothing in this module touches character theory.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from functools import cache
from typing import Sequence

import numpy as np

from .errors import (
    CapacityError,
    InternalConsistencyError,
    InvalidInputError,
    StructuralMismatchError,
)

__all__ = [
    "MAX_N",
    "MatchReport",
    "adjacency_matrix",
    "compare_spectra",
    "component_count",
    "cycle_type",
    "expand_set",
    "inversion_sign",
    "numeric_spectrum",
    "rank",
    "subgroup_closure",
    "unrank",
]

MAX_N = 7


def rank(perm: Sequence[int]) -> int:
    """Lexicographic rank of a permutation of 1..n given in one-line notation."""
    n = len(perm)
    if sorted(perm) != list(range(1, n + 1)):
        raise InvalidInputError(f"{tuple(perm)} is not a permutation of 1..{n}")
    r = 0
    for i, x in enumerate(perm):
        smaller_later = sum(1 for y in perm[i + 1:] if y < x)
        r += smaller_later * math.factorial(n - 1 - i)
    return r


def unrank(n: int, index: int) -> tuple[int, ...]:
    if n < 1 or not 0 <= index < math.factorial(n):
        raise InvalidInputError(f"index {index} out of range for S_{n}")
    pool = list(range(1, n + 1))
    out = []
    for i in range(n - 1, -1, -1):
        digit, index = divmod(index, math.factorial(i))
        out.append(pool.pop(digit))
    return tuple(out)


def cycle_type(perm: Sequence[int]) -> tuple[int, ...]:
    """Cycle lengths of a 0-based permutation, largest first."""
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def inversion_sign(perm: Sequence[int]) -> int:
    inversions = sum(1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


def _check_capacity(n: int) -> None:
    if n > MAX_N:
        raise CapacityError(f"brute force is capped at n <= {MAX_N} (got n={n})")


@cache
def _group(n: int) -> tuple[np.ndarray, np.ndarray, tuple[tuple[int, ...], ...]]:
    """(perms, keys, cycle types): 0-based perms in rank order and their base-n keys."""
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    weights = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
    keys = perms @ weights
    types = tuple(cycle_type(p) for p in perms.tolist())
    return perms, keys, types


def _ranks_of(perms: np.ndarray, n: int) -> np.ndarray:
    _, keys, _ = _group(n)
    weights = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
    q = perms @ weights
    idx = np.searchsorted(keys, q)
    if not np.array_equal(keys[np.minimum(idx, len(keys) - 1)], q):
        raise InternalConsistencyError("product is not a permutation")
    return idx


def expand_set(spec) -> np.ndarray:
    """Explicit elements of the connection set, 0-based, one per row."""
    n = spec.n
    _check_capacity(n)
    perms, _, types = _group(n)
    wanted = {tuple(g) for g in spec.classes}
    mask = np.fromiter((t in wanted for t in types), dtype=bool, count=len(types))
    return perms[mask]


def _neighbours(spec) -> np.ndarray:
    """neighbours[g, k] = rank of g * s_k (apply s_k first, then g)."""
    n = spec.n
    perms, _, _ = _group(n)
    elements = expand_set(spec)
    out = np.empty((len(perms), len(elements)), dtype=np.int64)
    for k, s in enumerate(elements):
        out[:, k] = _ranks_of(perms[:, s], n)
    return out


def adjacency_matrix(spec) -> np.ndarray:
    nbrs = _neighbours(spec)
    size = nbrs.shape[0]
    adj = np.zeros((size, size), dtype=np.float64)
    rows = np.repeat(np.arange(size), nbrs.shape[1])
    adj[rows, nbrs.ravel()] = 1.0
    if not np.array_equal(adj, adj.T):
        raise InternalConsistencyError("adjacency matrix is not symmetric; S is not inverse-closed")
    return adj


def numeric_spectrum(spec, dump_csv: str | None = None) -> list[float]:
    """All adjacency eigenvalues, descending, from a dense symmetric eigensolve."""
    _check_capacity(spec.n)
    eigenvalues = np.linalg.eigvalsh(adjacency_matrix(spec))[::-1]
    if dump_csv:
        np.savetxt(dump_csv, eigenvalues, delimiter=",", header="eigenvalue", comments="")
    return eigenvalues.tolist()


def _components(spec) -> np.ndarray:
    nbrs = _neighbours(spec)
    label = np.full(nbrs.shape[0], -1, dtype=np.int64)
    current = 0
    for start in range(nbrs.shape[0]):
        if label[start] >= 0:
            continue
        label[start] = current
        frontier = np.array([start])
        while frontier.size:
            reached = np.unique(nbrs[frontier].ravel())
            frontier = reached[label[reached] < 0]
            label[frontier] = current
        current += 1
    return label


def component_count(spec) -> int:
    _check_capacity(spec.n)
    return int(_components(spec).max()) + 1


def subgroup_closure(spec) -> int:
    """|<S>|: the component of the identity is exactly the generated subgroup."""
    _check_capacity(spec.n)
    label = _components(spec)
    return int(np.count_nonzero(label == label[0]))


@dataclass(frozen=True)
class MatchReport:
    match: bool
    max_deviation: float
    tolerance: float
    first_mismatch: int | None = None

    def __str__(self) -> str:
        if self.match:
            return f"match, max_dev {self.max_deviation:.3e} <= tol {self.tolerance:.3e}"
        return (f"MISMATCH at index {self.first_mismatch}, "
                f"max_dev {self.max_deviation:.3e} > tol {self.tolerance:.3e}")


def compare_spectra(exact, numeric: Sequence[float], tol: float) -> MatchReport:
    """Compare an exact spectrum (anything with ``.lines`` of value/multiplicity)
    against a list of floats, respecting multiplicities."""
    expanded = []
    for line in exact.lines:
        expanded.extend([float(line.value)] * int(line.multiplicity))
    if len(expanded) != len(numeric):
        raise StructuralMismatchError(
            f"exact spectrum has {len(expanded)} eigenvalues, numeric has {len(numeric)}")
    a = np.sort(np.asarray(expanded))
    b = np.sort(np.asarray(numeric, dtype=np.float64))
    dev = np.abs(a - b)
    max_dev = float(dev.max()) if dev.size else 0.0
    bad = np.flatnonzero(dev > tol)
    first = int(bad[0]) if bad.size else None
    return MatchReport(first is None, max_dev, tol, first)


def class_histogram(n: int) -> Counter:
    """Number of elements per cycle type, by enumeration."""
    _check_capacity(n)
    return Counter(_group(n)[2])
