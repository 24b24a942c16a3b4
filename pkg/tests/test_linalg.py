from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from doubleore.fields import PrimeField
from doubleore.linalg import (LinalgError, ScalarMatrix, Subspace, complement_in, determinant,
                              intersect, kernel_basis, rank, sum_of)


def sympy_rank(dense):
    return sympy.Matrix(dense).rank() if dense and dense[0] else 0


class TestBasics:
    def test_rank_examples(self):
        assert rank(ScalarMatrix.from_dense([[1, 2], [2, 4]])) == 1
        assert rank(ScalarMatrix.from_dense([[1, 0], [0, 1]])) == 2
        assert rank(ScalarMatrix(3, 3)) == 0

    def test_kernel_canonical(self):
        K = kernel_basis(ScalarMatrix.from_dense([[1, 2], [2, 4]]))
        assert K.basis == ({0: -2, 1: 1},)

    def test_kernel_of_zero_map(self):
        assert kernel_basis(ScalarMatrix(2, 3)) == Subspace.full(3)

    def test_determinant(self):
        assert determinant([[0, 1], [1, 0]]) == -1
        assert determinant([[2, 1], [4, 2]]) == 0
        assert determinant([]) == 1
        with pytest.raises(LinalgError):
            determinant([[1, 2]])

    def test_out_of_range(self):
        with pytest.raises(LinalgError):
            ScalarMatrix(1, 2, [{5: 1}])
        with pytest.raises(LinalgError):
            Subspace.span([{3: 1}], 2)

    def test_coo_text(self):
        m = ScalarMatrix.from_dense([[0, Fraction(1, 2)], [3, 0]])
        assert m.to_coo_text() == "0 1 1/2\n1 0 3\n"
        assert m.transpose().to_dense() == [[0, 3], [Fraction(1, 2), 0]]

    def test_prime_field_rank(self):
        F = PrimeField(7)
        m = ScalarMatrix.from_dense([[F(1), F(2)], [F(3), F(6)]])
        assert rank(m) == 1
        assert rank(ScalarMatrix.from_dense([[Fraction(1), Fraction(2)], [Fraction(3), Fraction(6)]])) == 1
        assert rank(ScalarMatrix.from_dense([[F(1), F(3)], [F(3), F(2)]])) == 1


class TestSubspaces:
    def test_canonical_form_independent_of_spanning_set(self):
        a = Subspace.span([{0: 1, 1: 1}, {1: 1, 2: 1}], 3)
        b = Subspace.span([{0: 1, 2: -1}, {0: 2, 1: 2}], 3)
        assert a == b
        assert all(v[max(v)] == 1 for v in a.basis)

    def test_intersect_example(self):
        a = Subspace.span([{0: 1}, {1: 1}], 3)
        b = Subspace.span([{1: 1}, {2: 1}], 3)
        assert intersect(a, b) == Subspace.span([{1: 1}], 3)

    def test_complement_example(self):
        sub = Subspace.span([{0: 1, 1: 1}], 3)
        c = complement_in(sub, Subspace.full(3))
        assert c.dim == 2
        assert sum_of(sub, c) == Subspace.full(3)

    def test_complement_requires_containment(self):
        with pytest.raises(LinalgError):
            complement_in(Subspace.full(2), Subspace.span([{0: 1}], 2))

    def test_coordinates(self):
        s = Subspace.span([{0: 1, 2: 1}, {1: 1}], 3)
        vec = {0: 2, 1: 3, 2: 2}
        coords = s.coordinates(vec)
        rebuilt = {}
        for k, c in coords.items():
            for i, x in s.basis[k].items():
                rebuilt[i] = rebuilt.get(i, 0) + c * x
        assert {i: x for i, x in rebuilt.items() if x} == vec
        with pytest.raises(LinalgError):
            s.coordinates({0: 1})

    def test_annihilator(self):
        s = Subspace.span([{0: 1, 1: 1}], 3)
        ann = s.annihilator()
        assert len(ann) == 2
        for phi in ann:
            assert sum(phi.get(i, 0) * x for i, x in s.basis[0].items()) == 0

    def test_ambient_mismatch(self):
        with pytest.raises(LinalgError):
            intersect(Subspace.full(2), Subspace.full(3))


# hypothesis properties on small rational matrices

scalar = st.fractions(min_value=-3, max_value=3, max_denominator=3)


def sparse(x):
    # bias towards zeros so ranks vary
    return st.one_of(st.just(Fraction(0)), st.just(Fraction(0)), x)


matrices = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(sparse(scalar), min_size=n, max_size=n), min_size=1, max_size=6))


def subspaces(ambient=8):
    return st.lists(st.dictionaries(st.integers(0, ambient - 1), sparse(scalar), max_size=4),
                    max_size=5).map(lambda vs: Subspace.span(vs, ambient))


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_rank_nullity(dense):
    m = ScalarMatrix.from_dense(dense)
    r = rank(m)
    assert r == sympy_rank(dense)
    K = kernel_basis(m)
    assert K.dim + r == m.ncols
    for v in K.basis:
        assert not m.apply(v)


@settings(max_examples=60, deadline=None)
@given(subspaces(), subspaces(), subspaces())
def test_intersection_laws(a, b, c):
    ab = intersect(a, b)
    assert ab == intersect(b, a)
    assert intersect(ab, c) == intersect(a, intersect(b, c))
    assert ab.is_subspace_of(a) and ab.is_subspace_of(b)
    assert ab.dim + sum_of(a, b).dim == a.dim + b.dim


@settings(max_examples=60, deadline=None)
@given(subspaces(), subspaces())
def test_complement_properties(a, b):
    within = sum_of(a, b)
    c = complement_in(a, within)
    assert c.dim + a.dim == within.dim
    assert intersect(a, c).dim == 0
    assert sum_of(a, c) == within
