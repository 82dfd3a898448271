"""Curve generation: grammar string, cell order, nesting, span bounds."""

import numpy as np
import pytest

from hilbertalloc.curve import (
    build_order,
    generate_moves,
    min_refinement_level,
    subsquare_span,
)
from hilbertalloc.geometry import canonical_cells

# The rotate-copy recursion is the independent reference for the grammar:
# y1 = urd, y(n) = h4(y(n-1)) u y(n-1) r y(n-1) d h5(y(n-1)).
_H4 = str.maketrans("udrl", "rlud")
_H5 = str.maketrans("udrl", "lrdu")


def reference_moves(level: int) -> str:
    moves = "urd"
    for _ in range(level - 1):
        moves = moves.translate(_H4) + "u" + moves + "r" + moves + "d" + moves.translate(_H5)
    return moves


class TestMoves:
    def test_level_one(self):
        assert generate_moves(1).moves == "urd"

    def test_level_two(self):
        assert generate_moves(2).moves == "ruluurdrurddldr"

    def test_level_three_length(self):
        assert len(generate_moves(3)) == 63

    def test_matches_rotate_copy_recursion(self):
        for level in range(1, 9):
            assert generate_moves(level).moves == reference_moves(level)

    def test_errors(self):
        with pytest.raises(ValueError, match="invalid level"):
            generate_moves(0)
        with pytest.raises(ValueError, match="level too large"):
            generate_moves(13)


class TestOrder:
    def test_degenerate_grid(self):
        order = build_order(0)
        assert order.count == 1 and order.cell(0) == (0, 0)

    def test_level_one_cells(self):
        order = build_order(1)
        assert [order.cell(k) for k in range(4)] == [(0, 1), (0, 0), (1, 0), (1, 1)]

    def test_first_quadrant_at_level_two(self):
        order = build_order(2)
        quad = {order.cell(k) for k in range(4)}
        xs = {x for x, _ in quad}
        ys = {y for _, y in quad}
        assert xs == {0, 1} and ys == {2, 3}

    def test_bijection_and_adjacency(self):
        for level in range(1, 9):
            order = build_order(level)
            xs = order.xs.astype(np.int64)
            ys = order.ys.astype(np.int64)
            keys = xs * order.size + ys
            assert np.unique(keys).size == order.count
            steps = np.abs(np.diff(xs)) + np.abs(np.diff(ys))
            assert (steps == 1).all()
            # forward o inverse is the identity
            assert (order._inverse[keys] == np.arange(order.count)).all()
            assert order.cell(0) == (0, order.size - 1)

    def test_nesting(self):
        # Indices [m*4**t, (m+1)*4**t) always fill one aligned 2**t block.
        for level in range(1, 9):
            order = build_order(level)
            for t in range(1, level + 1):
                block = 1 << t
                xs = order.xs.reshape(-1, block * block)
                ys = order.ys.reshape(-1, block * block)
                assert ((xs.max(axis=1) - xs.min(axis=1)) == block - 1).all()
                assert ((ys.max(axis=1) - ys.min(axis=1)) == block - 1).all()
                assert (xs.min(axis=1) % block == 0).all()
                assert (ys.min(axis=1) % block == 0).all()

    def test_index_and_window_errors(self):
        order = build_order(2)
        with pytest.raises(ValueError):
            order.cell(16)
        with pytest.raises(ValueError):
            order.index(4, 0)
        with pytest.raises(ValueError, match="window overflow"):
            order.window_cells(10, 17)


class TestSubsquareSpan:
    def test_full_curve_is_one_block(self):
        order = build_order(4)
        assert subsquare_span(order, 0, order.count, order.level) == 1

    def test_window_of_four(self):
        order = build_order(3)
        for start in range(order.count - 3):
            assert subsquare_span(order, start, 4, 1) <= 2

    def test_window_of_fourteen(self):
        order = build_order(4)
        for start in range(order.count - 13):
            assert subsquare_span(order, start, 14, 1) <= 5

    def test_errors(self):
        order = build_order(3)
        with pytest.raises(ValueError, match="window overflow"):
            subsquare_span(order, 60, 10, 1)
        with pytest.raises(ValueError, match="invalid level"):
            subsquare_span(order, 0, 4, 0)
        with pytest.raises(ValueError, match="invalid level"):
            subsquare_span(order, 0, 4, 4)


class TestMinRefinementLevel:
    @pytest.mark.parametrize("n,expected", [(65, 7), (1, 3), (16, 5), (4, 3), (5, 4), (12, 4), (13, 5), (28, 5), (29, 6), (60, 6), (61, 7)])
    def test_formula(self, n, expected):
        assert min_refinement_level(n) == expected

    def test_invalid(self):
        with pytest.raises(ValueError, match="invalid size"):
            min_refinement_level(0)


class TestLevelSufficiency:
    def test_window_shape_sets_stable_for_small_n(self):
        # The canonical n-cell window shapes do not change when the grid is
        # refined once beyond the minimal sufficient level.
        for n in range(1, 21):
            level = min_refinement_level(n)
            shapes = {}
            for lvl in (level, level + 1):
                order = build_order(lvl)
                shapes[lvl] = {
                    canonical_cells(order.window_cells(s, s + n))
                    for s in range(order.count - n + 1)
                }
            assert shapes[level] == shapes[level + 1], n
