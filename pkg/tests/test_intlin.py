from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import det, minors_gcd
from scottbench.errors import InputError
from scottbench.intlin import (
    IntMatrix,
    determinant,
    extends_to_basis,
    lattice_member,
    left_kernel,
    same_lattice,
    smith_normal_form,
    snf_diagonal,
)


def matrices(max_dim=4, lo=-6, hi=6):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def square(max_dim=4):
    return st.integers(1, max_dim).flatmap(
        lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)
    )


@given(square())
def test_determinant_matches_leibniz(rows):
    assert determinant(IntMatrix.from_rows(rows)) == det(rows)


@given(matrices())
def test_snf_factorisation(rows):
    M = IntMatrix.from_rows(rows)
    S, D, T = smith_normal_form(M)
    assert (S @ M @ T).to_rows() == D.to_rows()
    assert abs(determinant(S)) == 1 and abs(determinant(T)) == 1
    diag = snf_diagonal(M)
    for a, b in zip(diag, diag[1:]):
        assert b % a == 0 if a else b == 0


@given(matrices(max_dim=3, lo=-3, hi=3))
def test_extends_to_basis_is_minor_gcd(rows):
    if len(rows) > len(rows[0]):
        with pytest.raises(InputError):
            extends_to_basis(IntMatrix.from_rows(rows))
    else:
        assert extends_to_basis(IntMatrix.from_rows(rows)) == (minors_gcd(rows) == 1)


@given(matrices(max_dim=3))
def test_left_kernel_annihilates(rows):
    M = IntMatrix.from_rows(rows)
    ker = left_kernel(M)
    for v in ker:
        assert all(sum(v[i] * rows[i][j] for i in range(len(rows))) == 0 for j in range(len(rows[0])))
    rank = len(rows) - len(ker)
    assert rank == sum(1 for d in snf_diagonal(M) if d)


def test_examples():
    M = IntMatrix.from_rows([[2, 4], [6, 8]])
    assert snf_diagonal(M) == [2, 4]
    assert str(IntMatrix.from_rows([[1, 0], [0, 6]])) == "[[1 0] [0 6]]"
    assert extends_to_basis(IntMatrix.from_rows([[1, 0]]))
    assert not extends_to_basis(IntMatrix.from_rows([[2, 0]]))
    assert lattice_member([[2, 0], [0, 3]], (4, -3))
    assert not lattice_member([[2, 0], [0, 3]], (1, 0))
    assert same_lattice([[1, 1], [0, 1]], [[1, 0], [0, 1]])
    assert not same_lattice([[2, 0], [0, 1]], [[1, 0], [0, 1]])
