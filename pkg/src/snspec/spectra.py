"""Exact spectra of normal Cayley graphs on S_n.

For a connection set S that is a union of conjugacy classes, the eigenvalue
belonging to the irrep zeta is

    lambda_zeta = sum over classes gamma in S of |C(gamma)| * chi_zeta(gamma) / dim(zeta)

and it occurs with multiplicity dim(zeta)**2 (summed over every zeta giving the
same value).  All values are exact ``Fraction`` objects; equal eigenvalues are
grouped by exact equality.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable

from .characters import character_table, dimension
from .connection_sets import (
    ConnectionSetSpec,
    derangements,
    generated_index,
    set_size,
    single,
)
from .errors import InternalConsistencyError, InvalidInputError
from .partitions import Partition, class_size, derangement_count, enumerate_partitions

__all__ = [
    "AldousReport",
    "Lemma22Finding",
    "Spectrum",
    "SpectrumLine",
    "Theorem1Row",
    "ab_gap",
    "aldous_check",
    "derangement_min_eigenvalue",
    "eigenvalues",
    "format_fraction",
    "gap_polynomial",
    "lemma22_findings",
    "scan_lemma22",
    "scan_theorem1",
    "sign_eigenvalue_closed_form",
    "spectrum",
    "standard_eigenvalue_closed_form",
    "strictly_second_largest",
]


def format_fraction(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class SpectrumLine:
    value: Fraction
    multiplicity: int
    partitions: tuple[Partition, ...]


@dataclass(frozen=True)
class Spectrum:
    n: int
    degree: int
    index_t: int
    lines: tuple[SpectrumLine, ...]
    selector: str = ""

    def eigenvalue_of(self, zeta) -> Fraction:
        zeta = tuple(zeta)
        for line in self.lines:
            if zeta in line.partitions:
                return line.value
        raise KeyError(zeta)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "degree": str(self.degree),
            "index_t": self.index_t,
            "set": self.selector,
            "lines": [
                {
                    "value": format_fraction(line.value),
                    "multiplicity": str(line.multiplicity),
                    "partitions": [str(p) for p in line.partitions],
                }
                for line in self.lines
            ],
        }

    def to_csv(self) -> str:
        rows = ["value,multiplicity"]
        rows += [f"{format_fraction(l.value)},{l.multiplicity}" for l in self.lines]
        return "\n".join(rows) + "\n"


def _require_nonempty(spec: ConnectionSetSpec) -> None:
    if not spec.classes:
        raise InvalidInputError("empty connection set")


def eigenvalues(spec: ConnectionSetSpec, threads: int = 1) -> dict[Partition, Fraction]:
    """lambda_zeta for every zeta, keyed in canonical partition order."""
    _require_nonempty(spec)
    n = spec.n
    table = character_table(n)
    sizes = [(table.index[g], class_size(n, g)) for g in spec.classes]

    def one(zeta: Partition) -> Fraction:
        row = table.row(zeta)
        return Fraction(sum(size * row[j] for j, size in sizes), dimension(zeta))

    parts = table.partitions
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(one, parts))
    else:
        values = [one(z) for z in parts]
    return dict(zip(parts, values))


def spectrum(spec: ConnectionSetSpec, threads: int = 1) -> Spectrum:
    values = eigenvalues(spec, threads)
    grouped: dict[Fraction, list[Partition]] = {}
    for zeta, value in values.items():
        grouped.setdefault(value, []).append(zeta)
    lines = tuple(
        SpectrumLine(value, sum(dimension(z) ** 2 for z in zetas), tuple(zetas))
        for value, zetas in sorted(grouped.items(), key=lambda kv: kv[0], reverse=True)
    )
    return Spectrum(spec.n, set_size(spec), generated_index(spec), lines, spec.selector)


def _as_spectrum(spec_or_spectrum, threads: int = 1) -> Spectrum:
    if isinstance(spec_or_spectrum, Spectrum):
        return spec_or_spectrum
    return spectrum(spec_or_spectrum, threads)


def strictly_second_largest(spec_or_spectrum, threads: int = 1) -> tuple[Fraction, tuple[Partition, ...]]:
    """Largest eigenvalue below the degree and every partition attaining it."""
    spec = _as_spectrum(spec_or_spectrum, threads)
    below = [line for line in spec.lines if line.value < spec.degree]
    if not below or spec.lines[0].value != spec.degree:
        raise InternalConsistencyError("spectrum has no value strictly below the degree")
    return below[0].value, below[0].partitions


@dataclass(frozen=True)
class AldousReport:
    holds: bool
    strictly_second: Fraction
    achievers: tuple[Partition, ...]
    standard_value: Fraction
    index_t: int
    degree: int

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "strictly_second": format_fraction(self.strictly_second),
            "achievers": [str(p) for p in self.achievers],
            "standard_value": format_fraction(self.standard_value),
            "index_t": self.index_t,
            "degree": str(self.degree),
        }


def aldous_check(spec: ConnectionSetSpec, threads: int = 1) -> AldousReport:
    """Is the strictly second largest eigenvalue attained by (n-1,1)?"""
    if spec.n < 3:
        raise InvalidInputError("the Aldous property is defined for n >= 3")
    spec_ = spectrum(spec, threads)
    second, achievers = strictly_second_largest(spec_)
    standard = Partition((spec.n - 1, 1))
    return AldousReport(
        holds=standard in achievers,
        strictly_second=second,
        achievers=achievers,
        standard_value=spec_.eigenvalue_of(standard),
        index_t=spec_.index_t,
        degree=spec_.degree,
    )


def _check_inner_sizes(n: int, sizes: Iterable[int]) -> list[int]:
    sizes = sorted(set(sizes))
    if not sizes:
        raise InvalidInputError("I must be non-empty")
    bad = [t for t in sizes if not 2 <= t <= n - 2]
    if bad:
        raise InvalidInputError(f"support sizes must lie in 2..{n - 2}, got {bad}")
    return sizes


def standard_eigenvalue_closed_form(n: int, sizes: Iterable[int]) -> Fraction:
    """lambda_(n-1,1) of T(n,I) as sum_t (n-t-1)/(n-1) * C(n,t) * D(t)."""
    return sum((Fraction((n - t - 1) * comb(n, t) * derangement_count(t), n - 1)
                for t in _check_inner_sizes(n, sizes)), Fraction(0))


def sign_eigenvalue_closed_form(n: int, sizes: Iterable[int]) -> int:
    """lambda_(1^n) of T(n,I) as sum_t (-1)^(t-1) (t-1) C(n,t)."""
    return sum((-1) ** (t - 1) * (t - 1) * comb(n, t) for t in _check_inner_sizes(n, sizes))


def ab_gap(n: int, t: int) -> Fraction:
    """Per-support-size difference between the standard and sign eigenvalue terms."""
    if not 2 <= t <= n - 2:
        raise InvalidInputError(f"t must lie in 2..{n - 2}, got {t}")
    return standard_eigenvalue_closed_form(n, [t]) - sign_eigenvalue_closed_form(n, [t])


def gap_polynomial(n: int, t: int) -> int:
    """-2t^2 + 2nt - 2t - n + 1, the quadratic bounding the gap for 5 <= t <= n-2."""
    return -2 * t * t + 2 * n * t - 2 * t - n + 1


def derangement_min_eigenvalue(n: int, threads: int = 1) -> tuple[Fraction, tuple[Partition, ...]]:
    if n < 4:
        raise InvalidInputError(f"n must be >= 4, got {n}")
    last = spectrum(derangements(n), threads).lines[-1]
    return last.value, last.partitions


@dataclass(frozen=True)
class Theorem1Row:
    gamma: Partition
    fixed_points: int
    holds: bool
    strictly_second: Fraction
    standard_value: Fraction
    asserted: bool  # True where failure is a proven fact rather than an observation

    @property
    def violates(self) -> bool:
        return self.asserted and self.holds

    def to_dict(self) -> dict:
        return {
            "gamma": str(self.gamma),
            "c1": self.fixed_points,
            "holds": self.holds,
            "strictly_second": format_fraction(self.strictly_second),
            "standard_value": format_fraction(self.standard_value),
            "asserted": self.asserted,
        }


def scan_theorem1(n: int, threads: int = 1) -> list[Theorem1Row]:
    """Aldous check for every single non-identity class of S_n.

    Classes with at most one fixed point are proven to fail from n = 6 on;
    those rows carry ``asserted=True``.  The remaining rows are observations.
    """
    if n < 4:
        raise InvalidInputError(f"n must be >= 4, got {n}")
    rows = []
    for gamma in enumerate_partitions(n):
        if gamma.support_size == 0:
            continue
        report = aldous_check(single(n, gamma), threads)
        rows.append(Theorem1Row(gamma, gamma.fixed_points, report.holds, report.strictly_second,
                                report.standard_value, n >= 6 and gamma.fixed_points <= 1))
    return rows


@dataclass(frozen=True)
class Lemma22Finding:
    gamma: Partition
    maximum: Fraction
    achievers: tuple[Partition, ...]
    standard_value: Fraction

    def to_dict(self) -> dict:
        return {
            "gamma": str(self.gamma),
            "max": format_fraction(self.maximum),
            "achievers": [str(p) for p in self.achievers],
            "standard_value": format_fraction(self.standard_value),
            "asserted": False,
        }


def lemma22_findings(n: int) -> list[Lemma22Finding]:
    """Classes with >= 2 fixed points where some irrep other than the trivial,
    sign and standard ones has a strictly larger normalized character."""
    if n < 4:
        raise InvalidInputError(f"n must be >= 4, got {n}")
    table = character_table(n)
    trivial, sign_rep = Partition((n,)), Partition((1,) * n)
    standard = Partition((n - 1, 1))
    others = [z for z in table.partitions if z not in (trivial, sign_rep)]
    dims = {z: dimension(z) for z in others}
    out = []
    for j, gamma in enumerate(table.partitions):
        if gamma.fixed_points < 2:
            continue
        ratios = {z: Fraction(table.values[table.index[z]][j], dims[z]) for z in others}
        best = max(ratios.values())
        if ratios[standard] < best:
            achievers = tuple(z for z in others if ratios[z] == best)
            out.append(Lemma22Finding(gamma, best, achievers, ratios[standard]))
    return out


def scan_lemma22(n: int) -> list[Partition]:
    return [f.gamma for f in lemma22_findings(n)]
