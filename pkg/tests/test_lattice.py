"""Integer lattice helpers against sympy and brute force."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from metawhit import _lattice as la

small = st.integers(min_value=-6, max_value=6)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


@given(st.integers(1, 4).flatmap(square))
def test_invariant_factors_match_sympy(M):
    ours = la.invariant_factors(M)
    snf = smith_normal_form(Matrix(M), domain=ZZ)
    theirs = [abs(int(snf[k, k])) for k in range(min(snf.shape)) if snf[k, k] != 0]
    assert ours == theirs


@given(st.integers(1, 4).flatmap(square))
def test_hnf_spans_same_lattice(M):
    H = la.hnf(M)
    for row in M:
        assert la.in_lattice(row, H)
    for row in H:
        sol, _ = la.solve_int_left(M, row)
        assert sol is not None
    nz = [r for r in M if any(r)]
    if nz and la.rank(M) == len(M):
        assert abs(la.determinant(H)) == abs(la.determinant(M))


@given(st.integers(1, 3).flatmap(square), st.lists(small, min_size=3, max_size=3))
def test_reduce_mod_is_canonical(M, shift):
    H = la.hnf(M)
    if not H:
        return
    n = len(M[0])
    v = tuple(shift[:n]) + (0,) * max(0, n - len(shift))
    w = la.vadd(v, la.vec_mat([1] * len(H), H))
    assert la.reduce_mod(v, H) == la.reduce_mod(w, H)


@given(st.integers(1, 3).flatmap(square), st.lists(small, min_size=3, max_size=3))
def test_solve_int_left(P, c):
    c = c[: len(P)]
    target = la.vec_mat(c, P)
    sol, ker = la.solve_int_left(P, target)
    assert sol is not None
    assert tuple(la.vec_mat(sol, P)) == tuple(target)
    for k in ker:
        assert not any(la.vec_mat(k, P))


@given(st.integers(1, 3).flatmap(square), st.integers(1, 12))
def test_kernel_mod_brute_force(G, N):
    K = la.kernel_mod(G, N)
    r = len(G)
    assert abs(la.determinant(K)) > 0
    box = range(N)
    import itertools

    for c in itertools.product(box, repeat=r):
        inside = all(x % N == 0 for x in la.vec_mat(c, G))
        assert inside == la.in_lattice(c, K)


def test_int_vec_rejects_fractions():
    with pytest.raises(ValueError):
        la.int_vec([Fraction(1, 2)])
