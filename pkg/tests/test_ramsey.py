import random

import pytest

import oracles as O
from smallcanc import InvariantViolation, find_disjoint_triple, ramsey_K3


def test_K3_table_values():
    assert [ramsey_K3(n) for n in range(1, 9)] == [3, 6, 9, 14, 18, 23, 28, 36]
    assert ramsey_K3(9) == 46


def test_K3_is_monotone():
    vals = [ramsey_K3(n) for n in range(1, 30)]
    assert vals == sorted(vals)


def test_K3_rejects_zero():
    with pytest.raises(ValueError):
        ramsey_K3(0)


def test_small_ramsey_numbers_by_exhaustion():
    assert O.ramsey_holds(3, 2, 3) and not O.ramsey_holds(2, 2, 3)
    assert not O.ramsey_holds(5, 3, 3)


def _valid(rel, k, kk):
    return 0 < k < kk and not (rel(0, k) or rel(0, kk) or rel(k, kk))


def test_all_false_relation():
    assert find_disjoint_triple(lambda i, j: False, 1) == (1, 2)


def test_five_cycle_pattern():
    def c5(i, j):
        return i < 5 and j < 5 and (i - j) % 5 in (1, 4)

    k, kk = find_disjoint_triple(c5, 2, K3=6)
    assert _valid(c5, k, kk)
    brute = [(a, b) for a in range(1, 6) for b in range(a + 1, 6) if _valid(c5, a, b)]
    assert (k, kk) == brute[0]


def test_complete_relation_is_rejected():
    with pytest.raises(ValueError):
        find_disjoint_triple(lambda i, j: i != j, 2)


def test_matrix_form_and_asymmetry():
    m = [[False] * 3 for _ in range(3)]
    assert find_disjoint_triple(m, 1) == (1, 2)
    m[0][1] = True
    with pytest.raises(ValueError):
        find_disjoint_triple(m, 1)


def test_anticlique_avoiding_zero_is_reported():
    # a star centred at 0 is triangle-free, and every anticlique of size 3 avoids 0
    def star(i, j):
        return i != j and 0 in (i, j)

    assert not O.has_clique([[star(a, b) for b in range(6)] for a in range(6)], 3)
    with pytest.raises(ValueError, match="shift invariant"):
        find_disjoint_triple(star, 2, K3=6)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_random_shift_invariant_relations(n):
    rng = random.Random(n)
    K3 = ramsey_K3(n)
    for _ in range(50):
        dist = {d for d in range(1, K3) if rng.random() < 0.4}

        def rel(i, j, dist=dist):
            return i != j and abs(i - j) in dist

        adj = [[rel(a, b) for b in range(K3)] for a in range(K3)]
        if O.has_clique(adj, n + 1):
            continue
        k, kk = find_disjoint_triple(rel, n)
        assert _valid(rel, k, kk)


def test_invariant_violation_below_ramsey_cannot_happen():
    # K3 below the Ramsey number is refused up front
    with pytest.raises(ValueError):
        find_disjoint_triple(lambda i, j: False, 2, K3=5)
    assert issubclass(InvariantViolation, Exception)
