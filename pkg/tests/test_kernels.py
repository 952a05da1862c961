import random

import numpy as np

from icmup import kernels


def lcs_oracle(a, b):
    """Independent prefix-table LCS length."""
    n, m = len(a), len(b)
    dp = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            if a[i - 1] == b[j - 1]:
                dp[i][j] = dp[i - 1][j - 1] + 1
            else:
                dp[i][j] = max(dp[i - 1][j], dp[i][j - 1])
    return dp[n][m]


def random_pair(rng, max_len=40, alphabet=5):
    a = [rng.randrange(alphabet) for _ in range(rng.randrange(max_len + 1))]
    b = [rng.randrange(alphabet) for _ in range(rng.randrange(max_len + 1))]
    return np.array(a, dtype=np.int32), np.array(b, dtype=np.int32)


class TestSuffixTable:
    def test_paths_agree(self):
        rng = random.Random(7)
        for _ in range(50):
            a, b = random_pair(rng)
            expect = kernels.suffix_table_numpy(a, b)
            assert np.array_equal(kernels.suffix_table_numba(a, b), expect)

    def test_against_oracle(self):
        rng = random.Random(11)
        for _ in range(100):
            a, b = random_pair(rng)
            table = kernels.suffix_table(a, b)
            assert table[0, 0] == lcs_oracle(list(a), list(b))

    def test_empty_inputs(self):
        empty = np.array([], dtype=np.int32)
        one = np.array([3], dtype=np.int32)
        assert kernels.suffix_table(empty, one)[0, 0] == 0
        assert kernels.suffix_table(one, empty)[0, 0] == 0
        assert kernels.suffix_table_numpy(one, empty)[0, 0] == 0

    def test_env_flag_selects_numpy(self, monkeypatch):
        calls = []
        real = kernels.suffix_table_numpy

        def spy(a, b):
            calls.append(1)
            return real(a, b)

        monkeypatch.setattr(kernels, "suffix_table_numpy", spy)
        monkeypatch.setattr(kernels, "USE_NUMBA", False)
        a = np.array([1, 2], dtype=np.int32)
        kernels.suffix_table(a, a)
        assert calls


class TestMatchPairs:
    def test_count_equals_lcs(self):
        rng = random.Random(13)
        for _ in range(200):
            a, b = random_pair(rng)
            pairs = kernels.match_pairs(a, b)
            assert len(pairs) == lcs_oracle(list(a), list(b))

    def test_pairs_are_monotone_matches(self):
        rng = random.Random(17)
        for _ in range(100):
            a, b = random_pair(rng)
            pairs = kernels.match_pairs(a, b)
            for (i1, j1), (i2, j2) in zip(pairs, pairs[1:]):
                assert i1 < i2 and j1 < j2
            assert all(a[i] == b[j] for i, j in pairs)

    def test_leftmost_preference(self):
        a = np.array([1, 2], dtype=np.int32)
        b = np.array([1, 1, 2, 2], dtype=np.int32)
        assert kernels.match_pairs(a, b) == [(0, 0), (1, 2)]

    def test_identical(self):
        a = np.array([4, 5, 6], dtype=np.int32)
        assert kernels.match_pairs(a, a) == [(0, 0), (1, 1), (2, 2)]


def test_intern_ids_shares_table():
    xs, ys = kernels.intern_ids(("a", "b", "a"), ("b", "c"))
    assert list(xs) == [0, 1, 0]
    assert list(ys) == [1, 2]
