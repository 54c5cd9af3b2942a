"""Exact linear algebra: fixed examples plus algebraic invariants."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eulerlab.linalg import (
    AffineSubspace,
    Hyperplane,
    SpanBuilder,
    affine_dim,
    affine_hull,
    dot,
    format_rational,
    hyperplane_through,
    line_hyperplane_intersection,
    line_meets_affine,
    linear_feasible,
    nullspace,
    parse_rational,
    rank,
    solve_linear,
    vec,
    vsub,
)

F = Fraction


def rationals(max_num=30, max_den=7):
    return st.builds(
        Fraction,
        st.integers(-max_num, max_num),
        st.integers(1, max_den),
    )


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_cols).flatmap(
        lambda n: st.lists(
            st.lists(rationals(), min_size=n, max_size=n).map(tuple),
            min_size=1,
            max_size=max_rows,
        )
    )


class TestRationalText:
    def test_round_trip(self):
        for s in ["0", "7", "-3", "22/7", "-1/2"]:
            assert format_rational(parse_rational(s)) == s

    def test_non_canonical_parses(self):
        assert parse_rational("4/2") == 2

    def test_rejects_floats(self):
        with pytest.raises(ValueError):
            parse_rational("1.5")
        with pytest.raises(ValueError):
            parse_rational("1/0")


class TestRank:
    def test_identity(self):
        assert rank([vec(1, 0, 0), vec(0, 1, 0), vec(0, 0, 1)]) == 3

    def test_proportional_rows(self):
        assert rank([vec(2, 4), vec(1, 2), vec(-3, -6)]) == 1

    def test_empty(self):
        assert rank([]) == 0

    def test_zero_rows(self):
        assert rank([vec(0, 0), vec(0, 0)]) == 0

    @given(matrices())
    def test_matches_plain_elimination(self, rows):
        from eulerlab.linalg import _fraction_rank

        assert rank(rows) == _fraction_rank(rows)

    @given(matrices(), st.randoms(use_true_random=False))
    def test_row_permutation_invariant(self, rows, rng):
        shuffled = rows[:]
        rng.shuffle(shuffled)
        assert rank(shuffled) == rank(rows)

    @given(matrices(), st.lists(st.sampled_from([1, 2, -1, 5]), min_size=5, max_size=5))
    def test_row_scaling_invariant(self, rows, scales):
        scaled = [
            tuple(scales[i % len(scales)] * x for x in row)
            for i, row in enumerate(rows)
        ]
        assert rank(scaled) == rank(rows)


class TestSolveAndNullspace:
    def test_unique_solution(self):
        x = solve_linear([vec(2, 1), vec(1, -1)], [F(5), F(1)])
        assert x == vec(2, 1)

    def test_inconsistent(self):
        assert solve_linear([vec(1, 1), vec(2, 2)], [F(1), F(3)]) is None

    @given(matrices())
    def test_nullspace_vectors_annihilate(self, rows):
        width = len(rows[0])
        basis = nullspace(rows, width)
        assert len(basis) == width - rank(rows)
        for v in basis:
            for row in rows:
                assert dot(row, v) == 0
        assert rank(basis) == len(basis)

    @given(matrices())
    def test_solve_consistent_systems(self, rows):
        width = len(rows[0])
        target = tuple(F(i + 1, 3) for i in range(width))
        rhs = [dot(r, target) for r in rows]
        x = solve_linear(rows, rhs)
        assert x is not None
        assert [dot(r, x) for r in rows] == rhs


class TestSpanBuilder:
    def test_incremental_matches_rank(self):
        rows = [vec(1, 2, 3), vec(2, 4, 6), vec(0, 1, 1), vec(1, 3, 4)]
        span = SpanBuilder(3)
        grew = [span.add(r) for r in rows]
        assert grew == [True, False, True, False]
        assert span.rank == rank(rows)
        assert span.contains(vec(3, 7, 10))
        assert not span.contains(vec(0, 0, 1))


class TestAffine:
    def test_single_point(self):
        sub = affine_hull([vec(3, 4)])
        assert sub.dim == 0
        assert sub.contains(vec(3, 4))
        assert not sub.contains(vec(3, 5))

    def test_collinear_triple(self):
        sub = affine_hull([vec(0, 0), vec(1, 1), vec(2, 2)])
        assert sub.dim == 1
        assert sub.contains(vec(-5, -5))

    def test_plane_triple(self):
        assert affine_hull([vec(0, 0, 0), vec(1, 0, 0), vec(0, 1, 0)]).dim == 2

    def test_affine_dim_empty(self):
        assert affine_dim([]) == -1

    def test_no_points(self):
        with pytest.raises(ValueError):
            affine_hull([])

    @given(st.lists(st.lists(rationals(), min_size=3, max_size=3).map(tuple), min_size=1, max_size=6))
    def test_translation_invariant(self, pts):
        shift = vec(5, -7, F(1, 3))
        moved = [tuple(a + b for a, b in zip(p, shift)) for p in pts]
        assert affine_dim(moved) == affine_dim(pts)


class TestHyperplane:
    def test_rejects_zero_normal(self):
        with pytest.raises(ValueError):
            Hyperplane(vec(0, 0), F(1))

    def test_side_signs(self):
        h = Hyperplane(vec(0, 0, 1), F(2))
        assert h.side(vec(9, 9, 2)) == 0
        assert h.side(vec(0, 0, 3)) > 0
        assert h.side(vec(0, 0, 0)) < 0

    def test_normalized_is_canonical(self):
        a = Hyperplane(vec(F(2, 3), F(4, 3)), F(2))
        b = Hyperplane(vec(5, 10), F(15))
        assert a.normalized() == b.normalized()

    def test_through_points_orients_away_from_beneath(self):
        h = hyperplane_through([vec(1, 0, 0), vec(0, 1, 0), vec(0, 0, 1)], vec(0, 0, 0))
        assert h.side(vec(0, 0, 0)) < 0
        assert h.side(vec(1, 1, 1)) > 0
        for p in [vec(1, 0, 0), vec(0, 1, 0), vec(0, 0, 1)]:
            assert h.side(p) == 0

    def test_through_points_degenerate(self):
        with pytest.raises(ValueError):
            hyperplane_through([vec(0, 0, 0), vec(1, 0, 0)], vec(0, 1, 0))


class TestLineIntersections:
    def test_crossing(self):
        h = Hyperplane(vec(1, 0, 0), F(4))
        p = line_hyperplane_intersection(vec(0, 1, 2), vec(2, 0, 1), h)
        assert p == vec(4, 1, 4)

    def test_parallel_is_none(self):
        h = Hyperplane(vec(0, 0, 1), F(1))
        assert line_hyperplane_intersection(vec(0, 0, 0), vec(1, 1, 0), h) is None

    def test_line_within_plane_is_parallel_case(self):
        h = Hyperplane(vec(0, 0, 1), F(0))
        assert line_hyperplane_intersection(vec(1, 2, 0), vec(3, 4, 0), h) is None

    @given(rationals(), rationals())
    def test_scaling_direction_keeps_point(self, a, b):
        h = Hyperplane(vec(1, 2, -1), F(3))
        base, d = vec(0, 0, 0), vec(1, 1, 1)
        p = line_hyperplane_intersection(base, d, h)
        for s in (a, b):
            if s != 0:
                assert line_hyperplane_intersection(base, vec(s, s, s), h) == p

    def test_line_meets_affine(self):
        seg = affine_hull([vec(0, 0, 0), vec(1, 0, 0)])
        assert line_meets_affine(vec(0, -1, 0), vec(0, 1, 0), seg)
        assert not line_meets_affine(vec(0, -1, 1), vec(0, 1, 0), seg)
        assert isinstance(seg, AffineSubspace)


class TestLinearFeasible:
    def test_simple_box(self):
        rows = [vec(1, 0), vec(-1, 0), vec(0, 1), vec(0, -1)]
        rhs = [F(1), F(1), F(1), F(1)]
        y = linear_feasible(rows, rhs)
        assert y is not None
        assert all(dot(r, y) <= b for r, b in zip(rows, rhs))

    def test_empty_box(self):
        rows = [vec(1), vec(-1)]
        assert linear_feasible(rows, [F(-1), F(0)]) is None

    def test_negative_rhs_feasible(self):
        rows = [vec(1, 1), vec(-1, 0), vec(0, -1)]
        rhs = [F(-3), F(10), F(10)]
        y = linear_feasible(rows, rhs)
        assert y is not None
        assert all(dot(r, y) <= b for r, b in zip(rows, rhs))

    def test_equality_trap(self):
        # x <= 0 and -x <= 0 force x = 0, then x >= 1 is impossible.
        rows = [vec(1), vec(-1), vec(-1)]
        assert linear_feasible(rows, [F(0), F(0), F(-1)]) is None

    @given(
        st.lists(
            st.tuples(st.lists(rationals(5, 3), min_size=3, max_size=3), rationals(5, 3)),
            min_size=1,
            max_size=6,
        ),
        st.randoms(use_true_random=False),
    )
    @settings(max_examples=60, deadline=None)
    def test_witness_or_certified_empty(self, cons, rng):
        rows = [tuple(r) for r, _ in cons if any(r)]
        if not rows:
            return
        rhs = [b for r, b in cons if any(r)]
        y = linear_feasible(rows, rhs)
        if y is not None:
            assert all(dot(r, y) <= b for r, b in zip(rows, rhs))
        else:
            # Infeasibility cross-check on a coarse rational grid.
            probes = [
                tuple(Fraction(rng.randint(-20, 20), 2) for _ in range(3))
                for _ in range(50)
            ]
            for p in probes:
                assert any(dot(r, p) > b for r, b in zip(rows, rhs))

    def test_witness_respects_strict_margin_encoding(self):
        # Strict feasibility of {a·y < 0} is encoded as {a·y <= -1} by scaling.
        rows = [vec(1, 1), vec(-2, 1)]
        y = linear_feasible(rows, [F(-1), F(-1)])
        assert y is not None
        assert dot(rows[0], y) <= -1 and dot(rows[1], y) <= -1

    def test_no_constraints(self):
        assert linear_feasible([], []) == ()

    def test_random_infeasible_sandwich(self):
        rng = random.Random(7)
        for _ in range(20):
            a = tuple(Fraction(rng.randint(-5, 5)) for _ in range(2))
            if not any(a):
                continue
            # a·y <= -1 together with -a·y <= -1 is always empty.
            assert linear_feasible([a, tuple(-x for x in a)], [F(-1), F(-1)]) is None
