import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from flatcauchy.snf import invariant_factors, smith_normal_form

matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r
        )
    )
)


def _sympy_factors(rows):
    D = sympy_snf(Matrix(rows), domain=ZZ)
    return sorted(abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_invariant_factors_match_sympy(rows):
    ours = sorted(d for d in invariant_factors(np.array(rows, dtype=object)) if d != 0)
    assert ours == _sympy_factors(rows)


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_coordinates_are_invertible(rows):
    A = np.array(rows, dtype=object)
    diag, V, Vinv = smith_normal_form(A)
    n = A.shape[1]
    assert (np.array(V, dtype=object).dot(np.array(Vinv, dtype=object)) == np.eye(n, dtype=object)).all()
    rank = sum(1 for d in diag if d)
    assert all(d > 0 for d in diag[:rank]) and not any(diag[rank:])
    assert all(diag[i + 1] % diag[i] == 0 for i in range(rank - 1))
