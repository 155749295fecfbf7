"""Tests for affine subspaces and their set calculus."""

import numpy as np
import pytest

from src.numkernel import (
    AffineMap, AffineSubspace, affine_equal, affine_image, affine_intersect, affine_is_subset,
    affine_preimage,
)
from src.utils.errors import DimensionMismatchError, InconsistentError


class TestAffineSubspace:
    def setup_method(self):
        # x2 = 0 in R^2
        self.line = AffineSubspace.from_constraints([[0.0, 1.0]], [0.0])

    def test_dimensions(self):
        assert self.line.dim == 1
        assert AffineSubspace.full(3).dim == 3
        assert AffineSubspace.point([1.0, 2.0]).dim == 0

    def test_inconsistent_constraints_are_empty(self):
        S = AffineSubspace.from_constraints([[1.0, 0.0], [2.0, 0.0]], [1.0, 3.0])
        assert S.is_empty
        assert S.dim == -1
        assert not S.contains([1.0, 0.0])

    def test_zero_row_with_nonzero_rhs_is_empty(self):
        S = AffineSubspace.from_constraints([[0.0, 0.0]], [1.0])
        assert S.is_empty

    def test_redundant_rows_collapse(self):
        S = AffineSubspace.from_constraints([[1.0, 1.0], [2.0, 2.0]], [1.0, 2.0])
        assert S.rank == 1
        assert S.dim == 1

    def test_scaled_rows_are_the_same_set(self):
        S = AffineSubspace.from_constraints([[0.0, 5.0]], [0.0])
        assert affine_equal(S, self.line)

    def test_projection(self):
        np.testing.assert_allclose(self.line.project([1.0, 5.0]), [1.0, 0.0], atol=1e-14)

    def test_project_onto_empty_raises(self):
        with pytest.raises(InconsistentError):
            AffineSubspace.empty(2).project([0.0, 0.0])

    def test_generators_match_implicit_form(self):
        S = AffineSubspace.from_generators([0.0, 0.0, 1.0], [[1.0], [1.0], [0.0]])
        T = AffineSubspace.from_constraints([[1.0, -1.0, 0.0], [0.0, 0.0, 1.0]], [0.0, 1.0])
        assert affine_equal(S, T)

    def test_samples_are_members(self, rng):
        S = AffineSubspace.from_constraints([[1.0, 2.0, 3.0]], [4.0])
        for p in S.sample(rng, count=5, scale=3.0):
            assert S.contains(p)

    def test_text_rendering(self):
        lines = self.line.to_text(['x', 'y'])
        assert len(lines) == 1
        assert '*y' in lines[0] and '*x' not in lines[0]
        assert AffineSubspace.empty(2).to_text() == ["EMPTY"]
        assert AffineSubspace.full(2).to_text() == ["R^2"]


class TestSetCalculus:
    def test_intersection(self):
        A = AffineSubspace.from_constraints([[1.0, 0.0]], [1.0])
        B = AffineSubspace.from_constraints([[0.0, 1.0]], [2.0])
        C = affine_intersect(A, B)
        assert C.dim == 0
        np.testing.assert_allclose(C.base_point, [1.0, 2.0], atol=1e-14)

    def test_parallel_intersection_is_empty(self):
        A = AffineSubspace.from_constraints([[1.0, 0.0]], [1.0])
        B = AffineSubspace.from_constraints([[1.0, 0.0]], [2.0])
        assert affine_intersect(A, B).is_empty

    def test_subset(self):
        point = AffineSubspace.point([3.0, 0.0])
        line = AffineSubspace.from_constraints([[0.0, 1.0]], [0.0])
        assert affine_is_subset(point, line)
        assert not affine_is_subset(line, point)
        assert affine_is_subset(AffineSubspace.empty(2), point)

    def test_image_under_projection(self):
        line = AffineSubspace.from_constraints([[1.0, -1.0]], [1.0])
        first = AffineMap.coordinate_projection(2, [0])
        assert affine_image(line, first).dim == 1
        point = AffineSubspace.point([1.0, 0.0])
        image = affine_image(point, first)
        assert image.dim == 0
        np.testing.assert_allclose(image.base_point, [1.0])

    def test_preimage(self):
        target = AffineSubspace.point([2.0])
        first = AffineMap.coordinate_projection(2, [0])
        pre = affine_preimage(target, first)
        assert pre.dim == 1
        assert pre.contains([2.0, -7.0])

    def test_mismatched_dimensions(self):
        with pytest.raises(DimensionMismatchError):
            affine_intersect(AffineSubspace.full(2), AffineSubspace.full(3))

    def test_map_composition(self):
        T = AffineMap.create([[2.0]], [1.0])
        U = AffineMap.create([[3.0]], [-1.0])
        np.testing.assert_allclose(T.compose(U)([1.0]), T(U([1.0])))
