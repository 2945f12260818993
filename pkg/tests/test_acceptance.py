"""Acceptance criteria 1-14, one or more tests each.

Every test carries a ``criterion`` marker; conftest prints one PASS/FAIL
line per criterion at the end of the run.
"""
import io
import itertools
import random
import time
from fractions import Fraction
from math import comb, factorial

import numpy as np
import pytest

from snspec import oracle
from snspec.characters import (
    FAMILIES,
    character_table,
    check_lemma25,
    clear_table_cache,
    closed_form_character,
    dimension,
    family_shape,
)
from snspec.cli import run
from snspec.connection_sets import derangements, fixing, single, t_of_i, t_of_k
from snspec.partitions import (
    Partition,
    class_sign,
    class_size,
    conjugate,
    derangement_count,
    enumerate_partitions,
    even_odd_derangement_gap,
)
from snspec.spectra import (
    ab_gap,
    aldous_check,
    derangement_min_eigenvalue,
    eigenvalues,
    gap_polynomial,
    scan_lemma22,
    scan_theorem1,
    sign_eigenvalue_closed_form,
    spectrum,
    standard_eigenvalue_closed_form,
)

from conftest import perm_cycle_type

criterion = pytest.mark.criterion


def _tol(spec_):
    return 1e-6 * max(1, spec_.degree)


def _oracle_agrees(spec):
    exact = spectrum(spec)
    report = oracle.compare_spectra(exact, oracle.numeric_spectrum(spec), _tol(exact))
    assert report.match, f"{spec.selector} at n={spec.n}: {report}"
    assert oracle.component_count(spec) == exact.index_t


def _oracle_suite(n, rng):
    for gamma in enumerate_partitions(n):
        if gamma.support_size:
            yield single(n, gamma)
    for k in range(2, n + 1):
        yield t_of_k(n, k)
    for k in range(0, n - 1):
        yield fixing(n, k)
    yield derangements(n)
    pool = list(range(2, n + 1))
    for _ in range(10):
        yield t_of_i(n, rng.sample(pool, rng.randint(1, len(pool))))


@criterion(1, "oracle equivalence for n in 3..6 (and n=7 derangements, slow)")
def test_c01_oracle_equivalence():
    rng = random.Random(2024)
    start = time.perf_counter()
    count = 0
    for n in (3, 4, 5, 6):
        for spec in _oracle_suite(n, rng):
            _oracle_agrees(spec)
            count += 1
    elapsed = time.perf_counter() - start
    assert count > 0
    assert elapsed < 120, f"oracle suite took {elapsed:.1f}s"


@pytest.mark.slow
@criterion(1, "oracle equivalence for n in 3..6 (and n=7 derangements, slow)")
def test_c01_oracle_derangements_n7():
    start = time.perf_counter()
    _oracle_agrees(derangements(7))
    assert time.perf_counter() - start < 600


@criterion(2, "character engine: orthogonality, conjugation sign, bounds, Burnside, closed forms")
@pytest.mark.parametrize("n", range(1, 10))
def test_c02_character_identities(n):
    t = character_table(n)
    sizes = [class_size(n, g) for g in t.partitions]
    rows = {z: t.row(z) for z in t.partitions}
    for a, b in itertools.product(t.partitions, repeat=2):
        inner = sum(s * x * y for s, x, y in zip(sizes, rows[a], rows[b]))
        assert inner == (factorial(n) if a == b else 0)
    for z in t.partitions:
        d = dimension(z)
        for gamma in t.partitions:
            v = t[z, gamma]
            assert t[conjugate(z), gamma] == class_sign(gamma) * v
            assert abs(v) <= d
    assert sum(dimension(z) ** 2 for z in t.partitions) == factorial(n)


@criterion(2, "character engine: orthogonality, conjugation sign, bounds, Burnside, closed forms")
@pytest.mark.parametrize("n", range(1, 11))
def test_c02_table_closed_forms(n):
    t = character_table(n)
    for name, (_, min_n, _, _) in FAMILIES.items():
        if n < min_n:
            continue
        shape = family_shape(name, n)
        for gamma in t.partitions:
            assert closed_form_character(name, gamma) == t[shape, gamma]


def _numeric_second(spec):
    vals = np.asarray(oracle.numeric_spectrum(spec))
    top = vals.max()
    below = vals[vals < top - _tol(spectrum(spec))]
    return below.max()


@criterion(3, "transposition graph has the Aldous property with the expected value")
@pytest.mark.parametrize("n", range(4, 9))
def test_c03_transpositions(n):
    report = aldous_check(t_of_k(n, 2))
    expected = Fraction(comb(n, 2) * (n - 3), n - 1)
    assert report.holds
    assert report.strictly_second == expected
    if n <= 6:
        assert abs(_numeric_second(t_of_k(n, 2)) - float(expected)) <= 1e-6 * comb(n, 2)


@criterion(4, "every class with at most one fixed point fails the Aldous check, n in 6..8")
@pytest.mark.parametrize("n", [6, 7, 8])
def test_c04_necessity(n):
    rows = scan_theorem1(n)
    checked = [r for r in rows if r.fixed_points <= 1]
    assert checked
    assert all(not r.holds for r in checked)
    assert all(r.asserted for r in checked)


@criterion(5, "derangement graph minimum -|D_n|/(n-1), unique from n=5")
@pytest.mark.parametrize("n", range(4, 9))
def test_c05_derangement_minimum(n):
    value, achievers = derangement_min_eigenvalue(n)
    assert value == Fraction(-derangement_count(n), n - 1)
    if n >= 5:
        assert achievers == (Partition((n - 1, 1)),)


@criterion(6, "complete graph spectrum")
@pytest.mark.parametrize("n", range(4, 9))
def test_c06_complete_graph(n):
    s = spectrum(t_of_k(n, n))
    assert [(l.value, l.multiplicity) for l in s.lines] == [(factorial(n) - 1, 1), (-1, factorial(n) - 1)]


@criterion(7, "complement identity: complementary eigenvalues sum to -1")
@pytest.mark.parametrize("n", range(5, 9))
def test_c07_complement(n):
    rng = random.Random(700 + n)
    full = set(range(2, n + 1))
    for _ in range(25):
        sizes = set(rng.sample(sorted(full), rng.randint(1, len(full) - 1)))
        a = eigenvalues(t_of_i(n, sizes))
        b = eigenvalues(t_of_i(n, full - sizes))
        for zeta in a:
            if zeta != (n,):
                assert a[zeta] + b[zeta] == -1


def _closed_form_subsets(n):
    inner = list(range(2, n - 1))
    small = [c for r in (1, 2, 3) for c in itertools.combinations(inner, r)]
    large = [c for r in range(4, len(inner) + 1) for c in itertools.combinations(inner, r)]
    rng = random.Random(800 + n)
    return small + rng.sample(large, min(20, len(large)))


@criterion(8, "standard and sign eigenvalue closed forms")
@pytest.mark.parametrize("n", range(7, 13))
def test_c08_closed_forms(n):
    standard, sign = Partition((n - 1, 1)), Partition((1,) * n)
    for sizes in _closed_form_subsets(n):
        values = eigenvalues(t_of_i(n, sizes))
        assert standard_eigenvalue_closed_form(n, sizes) == values[standard]
        assert sign_eigenvalue_closed_form(n, sizes) == values[sign]


@criterion(8, "standard and sign eigenvalue closed forms")
@pytest.mark.parametrize("n", range(5, 13))
def test_c08_three_cycle_value(n):
    assert eigenvalues(t_of_i(n, [3]))[Partition((n - 1, 1))] == Fraction(n * (n - 2) * (n - 4), 3)


@criterion(9, "gap identities and the quadratic bound")
@pytest.mark.parametrize("n", range(7, 13))
def test_c09_gaps(n):
    base = n * (n - 2)
    assert ab_gap(n, 2) == base
    assert ab_gap(n, 3) == -base
    assert ab_gap(n, 4) == Fraction(base * (n - 3) * (n - 4), 2)
    assert all(ab_gap(n, t) >= base for t in range(2, n - 1) if t != 3)


@criterion(9, "gap identities and the quadratic bound")
def test_c09_quadratic():
    for n in range(7, 41):
        fs = {t: gap_polynomial(n, t) for t in range(5, n - 1)}
        assert all(f > 0 for f in fs.values())
        assert fs[n - 2] == n - 3 == min(fs.values())


@criterion(10, "even minus odd derangements by enumeration")
@pytest.mark.parametrize("t", range(1, 10))
def test_c10_even_odd(t):
    diff = 0
    for perm in itertools.permutations(range(t)):
        if all(perm[i] != i for i in range(t)):
            ctype = perm_cycle_type(perm)
            diff += -1 if (t - len(ctype)) % 2 else 1
    assert even_odd_derangement_gap(t) == diff == (-1) ** (t - 1) * (t - 1)


@criterion(11, "dimension bound dim^20 >= n^41 for n in 13..16")
def test_c11_dimension_bound():
    start = time.perf_counter()
    for n in (13, 14, 15, 16):
        assert check_lemma25(n) == []
    assert time.perf_counter() - start < 60


@criterion(12, "point-fixing graphs fail the Aldous check where proven")
def test_c12_point_fixing():
    for n in (5, 6, 7):
        assert not aldous_check(fixing(n, 0)).holds
    assert not aldous_check(fixing(7, 1)).holds


@criterion(13, "normalized-character scan completes up to n=14 and reports")
def test_c13_normalized_max_scan():
    start = time.perf_counter()
    out = io.StringIO()
    for n in range(4, 15):
        assert run(["scan-lemma22", "--n", str(n)], out, io.StringIO()) == 0
        scan_lemma22(n)
    assert out.getvalue().count('"command": "scan-lemma22"') == 11
    assert time.perf_counter() - start < 300


@criterion(14, "performance and determinism")
def test_c14_table_speed():
    clear_table_cache()
    start = time.perf_counter()
    character_table(14)
    assert time.perf_counter() - start <= 10


@criterion(14, "performance and determinism")
def test_c14_table_speed_fallback():
    clear_table_cache()
    start = time.perf_counter()
    character_table(14, backend="python")
    assert time.perf_counter() - start <= 10


@criterion(14, "performance and determinism")
@pytest.mark.parametrize("argv", [
    ["spectrum", "--n", "10", "--set", "TI:2,5,7"],
    ["aldous", "--n", "9", "--set", "custom:3,3,1,1,1;2,2,1,1,1,1,1"],
    ["verify", "--n", "6", "--set", "Tk:4"],
    ["scan-theorem1", "--n", "9"],
    ["scan-lemma22", "--n", "11"],
    ["check-lemma25", "--n", "14"],
    ["report-derangement", "--n", "9"],
    ["gap-table", "--n", "12"],
])
def test_c14_byte_identical_json(argv):
    outputs = set()
    for threads in (1, 2, 8):
        out = io.StringIO()
        assert run(argv + ["--threads", str(threads)], out, io.StringIO()) == 0
        outputs.add(out.getvalue())
    assert len(outputs) == 1
