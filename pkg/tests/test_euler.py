"""Alternating face-count sums equal 1 on everything we can build."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eulerlab.euler import check_euler, euler_alternating_sum, f_vector
from eulerlab.linalg import vec
from eulerlab.polytope import (
    build_polytope,
    face_lattice,
    facet_polytope,
    generate,
    point_polytope,
)


class TestFVector:
    def test_segment(self):
        p = build_polytope([vec(0), vec(1)])
        assert f_vector(face_lattice(p)) == (2, 1)

    def test_pentagon(self):
        pts = [vec(0, 0), vec(4, 0), vec(5, 3), vec(2, 5), vec(-1, 2)]
        assert f_vector(face_lattice(build_polytope(pts))) == (5, 5, 1)

    def test_cube4(self):
        assert f_vector(face_lattice(generate("cube:4"))) == (16, 32, 24, 8, 1)

    def test_point(self):
        assert f_vector(face_lattice(point_polytope(vec(3, 1)))) == (1,)


class TestAlternatingSum:
    def test_small_examples(self):
        assert euler_alternating_sum((2, 1)) == 1
        assert euler_alternating_sum((8, 12, 6, 1)) == 1
        assert euler_alternating_sum((16, 32, 24, 8, 1)) == 1

    def test_non_unit_sum_detectable(self):
        assert euler_alternating_sum((8, 12, 5, 1)) == 0


class TestCheckEuler:
    def test_families(self):
        assert check_euler(generate("simplex:6"))
        assert check_euler(generate("crosspolytope:5"))
        assert check_euler(build_polytope([vec(0), vec(1)]))

    @pytest.mark.parametrize("d", range(1, 6))
    def test_all_families_per_dimension(self, d):
        for fam in ("simplex", "cube", "crosspolytope"):
            assert check_euler(generate(f"{fam}:{d}"))

    @given(st.integers(0, 10_000))
    @settings(max_examples=30, deadline=None)
    def test_random_polytopes(self, seed):
        assert check_euler(generate("random:3,7,6", seed))

    def test_facets_satisfy_it_too(self):
        # facets, viewed as polytopes of their own, have f-vectors of length
        # d and alternating sum 1 - the inductive step the identities rely on
        for kind in ["cube:3", "crosspolytope:3", "simplex:4", "cube:4"]:
            p = generate(kind)
            for i in range(len(p.facets)):
                q = facet_polytope(p, i)
                fv = f_vector(face_lattice(q))
                assert len(fv) == p.dim
                assert euler_alternating_sum(fv) == 1


class TestFVectorValidation:
    def test_rejects_broken_lattice(self):
        from eulerlab.polytope import Face, FaceLattice

        bad = FaceLattice(
            {0: (Face(frozenset({0}), 0), Face(frozenset({1}), 0)),
             1: (Face(frozenset({0, 1}), 1), Face(frozenset({0, 1}), 1))}
        )
        with pytest.raises(ValueError):
            f_vector(bad)
