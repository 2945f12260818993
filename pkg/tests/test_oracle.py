import itertools
from math import factorial

import numpy as np
import pytest
from hypothesis import given, strategies as st

from snspec import oracle
from snspec.connection_sets import derangements, single, t_of_k
from snspec.errors import CapacityError, InvalidInputError, StructuralMismatchError
from snspec.spectra import spectrum

from conftest import brute_class_counts


@pytest.mark.parametrize("n", range(1, 6))
def test_rank_is_lexicographic(n):
    for r, perm in enumerate(itertools.permutations(range(1, n + 1))):
        assert oracle.rank(perm) == r
        assert oracle.unrank(n, r) == perm


@given(st.integers(1, 12).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, factorial(n) - 1))))
def test_unrank_rank_round_trip(pair):
    n, r = pair
    assert oracle.rank(oracle.unrank(n, r)) == r


def test_rank_rejects_non_permutations():
    with pytest.raises(InvalidInputError):
        oracle.rank((1, 1, 2))
    with pytest.raises(InvalidInputError):
        oracle.unrank(3, 6)


def test_cycle_type_and_sign():
    assert oracle.cycle_type((1, 2, 0, 4, 3)) == (3, 2)
    assert oracle.inversion_sign((1, 0, 2)) == -1


@pytest.mark.parametrize("n", range(1, 7))
def test_class_histogram(n):
    assert oracle.class_histogram(n) == brute_class_counts(n)


def test_adjacency_is_regular_and_symmetric():
    adj = oracle.adjacency_matrix(t_of_k(4, 2))
    assert adj.shape == (24, 24)
    assert np.array_equal(adj, adj.T)
    assert set(adj.sum(axis=1)) == {6.0}
    assert not adj.diagonal().any()


def test_transposition_graph_of_s3():
    vals = oracle.numeric_spectrum(t_of_k(3, 2))
    assert np.allclose(vals, [3, 0, 0, 0, 0, -3])


def test_components():
    assert oracle.component_count(t_of_k(5, 2)) == 1
    assert oracle.component_count(single(5, (3, 1, 1))) == 2
    assert oracle.component_count(single(4, (2, 2))) == 6
    assert oracle.subgroup_closure(single(4, (2, 2))) == 4


def test_capacity():
    with pytest.raises(CapacityError):
        oracle.numeric_spectrum(derangements(8))


def test_compare_reports_mismatch():
    exact = spectrum(t_of_k(3, 2))
    good = oracle.compare_spectra(exact, [3, 0, 0, 0, 0, -3], 1e-9)
    assert good.match and str(good).startswith("match")
    bad = oracle.compare_spectra(exact, [3, 0, 0, 0, 0.5, -3], 1e-6)
    assert not bad.match and bad.first_mismatch is not None
    assert bad.max_deviation == pytest.approx(0.5)
    with pytest.raises(StructuralMismatchError):
        oracle.compare_spectra(exact, [3, 0], 1e-6)


def test_dump_csv(tmp_path):
    path = tmp_path / "eig.csv"
    vals = oracle.numeric_spectrum(t_of_k(3, 2), str(path))
    lines = path.read_text().splitlines()
    assert lines[0] == "eigenvalue"
    assert [float(x) for x in lines[1:]] == pytest.approx(vals)
