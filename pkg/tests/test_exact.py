import numpy as np
import pytest

from conftest import all_assignments, random_int_qubo
from qubo_forge import CapacityError, ConfigError, QuboModel, evaluate, max_cut, number_partitioning
from qubo_forge.exact import gray_energies, solve_exact, spectrum
from qubo_forge.exact import _assignments
from qubo_forge.problems import Graph


def test_number_partitioning_top2():
    s = solve_exact(number_partitioning([1, 5, 5, 11]), top_k=2)
    assert [x.energy for x in s] == [0.0, 0.0]
    assert [x.bitstring for x in s] == ["0001", "1110"]


def test_triangle(triangle):
    assert solve_exact(max_cut(triangle)).first.energy == -2.0


def test_constant_only():
    s = solve_exact(QuboModel(5, {}, {}, 3.5), top_k=3)
    assert [x.bitstring for x in s] == ["00000", "00001", "00010"]
    assert all(x.energy == 3.5 for x in s)


def test_gray_walk_matches_direct_evaluation(rng):
    for n in range(1, 13):
        q = random_int_qubo(rng, n, density=0.5)
        energies, lanes = gray_energies(q)
        rows = np.repeat(np.arange(energies.shape[0]), energies.shape[1])
        cols = np.tile(np.arange(energies.shape[1]), energies.shape[0])
        bits = _assignments(rows, lanes[cols], n)
        assert len({tuple(b) for b in bits}) == 1 << n
        direct = np.array([evaluate(q, b) for b in bits])
        np.testing.assert_array_equal(energies.ravel(), direct)


def test_gray_walk_non_integer(rng):
    q = QuboModel.from_matrix(rng.normal(size=(9, 9)), 0.25)
    energies, lanes = gray_energies(q)
    assert sorted(energies.ravel()) == pytest.approx(sorted(spectrum(q)), rel=1e-9, abs=1e-9)


def test_full_enumeration_is_sorted_spectrum(rng):
    for n in (1, 3, 6, 9):
        q = random_int_qubo(rng, n, low=-3, high=3)
        s = solve_exact(q, top_k=1 << n)
        assert len(s) == 1 << n
        assert [x.energy for x in s] == sorted(spectrum(q).tolist())
        keys = [(x.energy, x.bitstring) for x in s]
        assert keys == sorted(keys)


def test_top_k_against_brute_force(rng):
    for _ in range(20):
        n = int(rng.integers(2, 11))
        q = random_int_qubo(rng, n, low=-4, high=4)
        ranked = sorted((evaluate(q, a), "".join(map(str, a))) for a in all_assignments(n))
        s = solve_exact(q, top_k=5)
        assert [(x.energy, x.bitstring) for x in s] == ranked[:5]


def test_threads_do_not_change_result(rng):
    q = random_int_qubo(rng, 22, density=0.2)
    assert solve_exact(q, top_k=4, workers=1) == solve_exact(q, top_k=4, workers=3)


def test_spectrum_examples():
    np.testing.assert_array_equal(spectrum(QuboModel(1, {0: 3.0}, {}, 1.0)), [1.0, 4.0])
    np.testing.assert_array_equal(spectrum(max_cut(Graph(2, ((0, 1),)))), [0.0, -1.0, -1.0, 0.0])


def test_capacity():
    with pytest.raises(CapacityError, match="annealing"):
        solve_exact(QuboModel(27, {0: 1.0}))
    with pytest.raises(CapacityError):
        spectrum(QuboModel(17, {0: 1.0}))
    with pytest.raises(ConfigError):
        solve_exact(QuboModel(2), top_k=0)
