import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mfopt.core import is_valid_genome
from mfopt.operators import (
    CrossoverWindow,
    draw_window,
    dynamic_ox,
    order_crossover,
    two_opt,
    window_length,
)


def reference_ox(keeper, filler, lo, hi):
    """Independent OX reference: keep keeper[lo:hi], then walk filler
    cyclically from position hi, appending unseen values left to right."""
    n = len(keeper)
    child = [None] * n
    child[lo:hi] = list(keeper[lo:hi])
    seen = set(keeper[lo:hi])
    fill = [filler[(hi + t) % n] for t in range(n)]
    fill = [v for v in fill if v not in seen]
    it = iter(fill)
    for pos in list(range(lo)) + list(range(hi, n)):
        child[pos] = next(it)
    return child


class TestWindow:
    def test_bad_windows_rejected(self):
        with pytest.raises(ValueError):
            CrossoverWindow(start=0, length=0)
        with pytest.raises(ValueError):
            CrossoverWindow(start=-1, length=2)

    def test_draw_window_bounds(self, rng):
        for _ in range(200):
            w = draw_window(8, rng)
            assert 0 <= w.start and w.start + w.length <= 8
            assert w.length >= 1
        for _ in range(200):
            w = draw_window(8, rng, length=3)
            assert w.length == 3 and w.start + 3 <= 8

    def test_window_length_formula(self):
        # 0.5 * 0.9 * 52 = 23.4 -> 23;  0.5 * 0.95 * 51 = 24.225 -> 24
        assert window_length(0.5, 0.9, 52, 76) == 23
        assert window_length(0.5, 0.95, 51, 76) == 24
        # half-up rounding: 0.5 * 0.1 * 70 = 3.5 -> 4
        assert window_length(0.5, 0.1, 70, 76) == 4
        # floor at one gene and cap below the genome size
        assert window_length(0.5, 0.1, 4, 76) == 1
        assert window_length(1.0, 1.0, 76, 76) == 75


class TestOrderCrossover:
    def test_hand_example(self):
        a = np.arange(1, 9)
        b = a[::-1].copy()
        w = CrossoverWindow(start=3, length=2)
        c1, c2 = order_crossover(a, b, window=w)
        assert list(c1) == [3, 2, 1, 4, 5, 8, 7, 6]
        assert list(c2) == [6, 7, 8, 5, 4, 1, 2, 3]

    def test_identical_parents_fixed_point(self, rng):
        a = rng.permutation(10) + 1
        c1, c2 = order_crossover(a, a.copy(), rng=rng)
        assert np.array_equal(c1, a) and np.array_equal(c2, a)

    def test_length_mismatch(self, rng):
        with pytest.raises(ValueError):
            order_crossover(np.arange(1, 5), np.arange(1, 6), rng=rng)

    def test_window_out_of_bounds(self):
        with pytest.raises(ValueError):
            order_crossover(np.arange(1, 5), np.arange(1, 5),
                            window=CrossoverWindow(start=3, length=2))

    def test_exhaustive_against_reference_small(self):
        # Every parent pair and window for n = 4: exact agreement.
        n = 4
        perms = [np.array(p) for p in itertools.permutations(range(1, n + 1))]
        for a in perms:
            for b in perms:
                for lo in range(n):
                    for length in range(1, n - lo + 1):
                        w = CrossoverWindow(start=lo, length=length)
                        c1, c2 = order_crossover(a, b, window=w)
                        assert list(c1) == reference_ox(a, b, lo, lo + length)
                        assert list(c2) == reference_ox(b, a, lo, lo + length)

    @given(st.integers(min_value=0, max_value=2 ** 31))
    @settings(max_examples=200, deadline=None)
    def test_children_are_permutations(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 60))
        a, b = rng.permutation(n) + 1, rng.permutation(n) + 1
        c1, c2 = order_crossover(a, b, rng=rng)
        assert is_valid_genome(c1) and is_valid_genome(c2)


class TestTwoOpt:
    def test_explicit_reversal(self):
        g = np.array([1, 2, 3, 4, 5])
        assert list(two_opt(g, 1, 3)) == [1, 4, 3, 2, 5]
        assert list(two_opt(g, 0, 4)) == [5, 4, 3, 2, 1]

    def test_involution(self, rng):
        g = rng.permutation(20) + 1
        assert np.array_equal(two_opt(two_opt(g, 4, 11), 4, 11), g)

    def test_random_move_always_changes(self, rng):
        g = rng.permutation(15) + 1
        for _ in range(300):
            assert not np.array_equal(two_opt(g, rng=rng), g)

    def test_bad_indices(self):
        g = np.arange(1, 6)
        with pytest.raises(ValueError):
            two_opt(g, 3, 3)
        with pytest.raises(ValueError):
            two_opt(g, 2, 9)
        with pytest.raises(ValueError):
            two_opt(g)  # no rng, no indices


class TestDynamicOx:
    def test_child_is_permutation_and_differs(self, rng):
        for _ in range(500):
            n = int(rng.integers(4, 40))
            dom, don = rng.permutation(n) + 1, rng.permutation(n) + 1
            d_k = int(rng.integers(2, n + 1))
            child = dynamic_ox(dom, don, float(rng.uniform(0.1, 1.0)), 0.5,
                               d_k, rng)
            assert is_valid_genome(child)
            assert not np.array_equal(child, dom)

    def test_parent_centric_bound(self, rng):
        # Positions differing from the dominant parent never exceed the
        # window length plus the two positions a fallback swap can touch.
        for _ in range(2000):
            n = int(rng.integers(4, 40))
            dom, don = rng.permutation(n) + 1, rng.permutation(n) + 1
            d_k = int(rng.integers(2, n + 1))
            entry = float(rng.uniform(0.1, 1.0))
            child = dynamic_ox(dom, don, entry, 0.5, d_k, rng)
            bound = window_length(0.5, entry, d_k, n) + 2
            assert int((child != dom).sum()) <= bound

    def test_window_reordered_by_donor(self):
        # Window [1, 4) of dominant holds (2, 3, 4); the donor orders
        # those values 4, 3, 2, so the child's window becomes (4, 3, 2).
        dom = np.array([1, 2, 3, 4, 5])
        don = np.array([5, 4, 3, 2, 1])

        class FixedRng:
            def integers(self, lo, hi):
                return 1  # window start

            def random(self):  # pragma: no cover - not used here
                return 0.0

        child = dynamic_ox(dom, don, rmp_entry=0.6, w=1.0, d_k=5,
                           rng=FixedRng())
        # window_length(1.0, 0.6, 5, 5) = 3 -> window [1, 4)
        assert list(child) == [1, 4, 3, 2, 5]

    def test_identical_parents_get_guard_swap(self, rng):
        dom = np.arange(1, 11)
        child = dynamic_ox(dom, dom.copy(), 0.5, 0.5, 10, rng)
        assert int((child != dom).sum()) == 2  # one adjacent transposition
