import itertools

import pytest

from syncword.automaton import (
    cubic_length_bound,
    generate_cerny,
    generate_random,
    is_synchronizing_word,
    parse_fa,
    word_from_letters,
)
from syncword.errors import ResourceLimitError
from syncword.exact import check_synchronizable, greedy_sync, shortest_sync_bfs


def synchronizable_sweep(count, max_n=7, max_k=3, base_seed=1000):
    """Deterministic sample of synchronizable random automata."""
    import random

    out = []
    seed = base_seed
    while len(out) < count:
        rng = random.Random(seed)
        a = generate_random(rng.randint(2, max_n), rng.randint(1, max_k), seed)
        seed += 1
        if check_synchronizable(a):
            out.append(a)
    return out


def brute_force_optimum(a, cap=12):
    """Independent oracle: exhaustive enumeration of all words by length."""
    for length in range(0, cap + 1):
        for w in itertools.product(range(1, a.k + 1), repeat=length):
            if is_synchronizing_word(a, w):
                return length
    return None


class TestCheckSynchronizable:
    def test_a1(self, a1):
        assert check_synchronizable(a1)

    def test_swap_automaton(self, swap):
        assert not check_synchronizable(swap)

    def test_cerny5(self):
        assert check_synchronizable(generate_cerny(5))

    def test_one_state(self, one_state):
        assert check_synchronizable(one_state)

    def test_agrees_with_bfs_presence(self):
        for seed in range(60):
            a = generate_random(2 + seed % 5, 1 + seed % 3, seed)
            assert check_synchronizable(a) == (shortest_sync_bfs(a) is not None)


class TestShortestSyncBfs:
    def test_a1_optimum_and_witness(self, a1):
        res = shortest_sync_bfs(a1)
        assert res.length == 4
        assert res.witness == word_from_letters("baab")
        assert res.sink == 1

    def test_a1_level_structure(self, a1):
        # BFS levels: d1 reaches {s1,s2}, d2 {s2,s3}, d3 {s1,s3}, d4 {s1};
        # equivalently no word shorter than 4 synchronizes.
        assert brute_force_optimum(a1, cap=4) == 4

    def test_one_state(self, one_state):
        res = shortest_sync_bfs(one_state)
        assert res.length == 0 and res.witness == () and res.sink == 1

    def test_cerny4(self):
        assert shortest_sync_bfs(generate_cerny(4)).length == 9

    def test_not_synchronizable_returns_none(self, swap):
        assert shortest_sync_bfs(swap) is None

    def test_witness_verifies_and_matches_brute_force(self):
        for a in synchronizable_sweep(30):
            res = shortest_sync_bfs(a)
            assert is_synchronizing_word(a, res.witness)
            assert len(res.witness) == res.length
            if a.k ** res.length <= 10**6:
                assert brute_force_optimum(a, cap=res.length) == res.length

    def test_lexicographically_smallest_witness(self):
        for a in synchronizable_sweep(15, max_n=5, max_k=2):
            res = shortest_sync_bfs(a)
            candidates = [
                w
                for w in itertools.product(range(1, a.k + 1), repeat=res.length)
                if is_synchronizing_word(a, w)
            ]
            assert res.witness == min(candidates)

    def test_visited_cap(self):
        with pytest.raises(ResourceLimitError):
            shortest_sync_bfs(generate_cerny(8), max_visited=3)


class TestGreedySync:
    def test_a1(self, a1):
        w = greedy_sync(a1)
        assert is_synchronizing_word(a1, w)
        assert len(w) >= 4  # never beats the certified optimum

    def test_one_state(self, one_state):
        assert greedy_sync(one_state) == ()

    def test_not_synchronizable(self, swap):
        assert greedy_sync(swap) is None

    def test_cerny6_bounds(self):
        a = generate_cerny(6)
        w = greedy_sync(a)
        assert is_synchronizing_word(a, w)
        assert 25 <= len(w) <= cubic_length_bound(6)

    def test_dominates_optimum_on_sweep(self):
        for a in synchronizable_sweep(40):
            w = greedy_sync(a)
            assert w is not None and is_synchronizing_word(a, w)
            assert len(w) >= shortest_sync_bfs(a).length


class TestUpperBoundInvariant:
    def test_optimum_below_cubic_bound(self):
        for a in synchronizable_sweep(40):
            assert shortest_sync_bfs(a).length <= cubic_length_bound(a.n)
        for n in range(2, 9):
            assert shortest_sync_bfs(generate_cerny(n)).length <= cubic_length_bound(n)


class TestPermutationAutomata:
    def test_permutations_never_synchronize(self):
        # any permutation alphabet preserves set cardinality
        a = parse_fa("3 2\n2 3\n3 1\n1 2\n")
        assert not check_synchronizable(a)
        assert shortest_sync_bfs(a) is None
        assert greedy_sync(a) is None
