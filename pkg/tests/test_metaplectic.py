from itertools import product
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from metawhit import _lattice as la
from metawhit.errors import HypothesisFailed, InfiniteSet
from metawhit.forms import barkappa_multiple
from metawhit.metaplectic import (
    MetaplecticDatum,
    abbgm_compare,
    coset_analysis,
    restricted_coweights,
    simply_connected_check,
)
from metawhit.rootdata import build


def md_of(t, m, N, **kw):
    rd = build(t, **kw)
    return MetaplecticDatum(rd, barkappa_multiple(rd, m), N)


@pytest.mark.parametrize("m,N", [(1, 3), (1, 5), (2, 7), (3, 9), (2, 15), (4, 21)])
def test_sl2_odd_n(m, N):
    n = N // gcd(N, m)
    md = md_of("A1", m, N)
    assert md.delta == (n,)
    assert md.sharp_basis == [(n,)]
    sc, _ = simply_connected_check(md.dual)
    assert not sc  # adjoint A1
    got = sorted(md.rd.coroot_coords(w)[0] for w in restricted_coweights(md))
    assert got == [a for a in range(n) if 2 * a < n]


def test_sl2_even_n_dual_is_sc():
    md = md_of("A1", 1, 4)
    assert md.sharp_basis == [(2,)]
    assert simply_connected_check(md.dual)[0]


def _index_by_enumeration(md):
    """|L / L#| by counting residues of kbar(lambda) mod N over a box."""
    n = md.rd.lattice_dim
    seen = set()
    for c in product(range(md.N), repeat=n):
        seen.add(tuple(x % md.N for x in la.vec_mat(c, md.gram)))
    return len(seen)


@pytest.mark.parametrize(
    "t,m,N,kw",
    [("A1", 1, 6, {}), ("A2", 1, 3, {}), ("A2", 1, 2, {}), ("A2", 3, 3, {"isogeny": "adjoint"}),
     ("C2", 1, 4, {}), ("G2", 1, 6, {}), ("A2", 1, 3, {"central_rank": 1}), ("C2", 1, 4, {"central_rank": 1})],
)
def test_index_three_ways(t, m, N, kw):
    md = md_of(t, m, N, **kw)
    assert md.index == md.index_by_cokernel == _index_by_enumeration(md)


@pytest.mark.parametrize("t,m,N", [("A2", 1, 3), ("B2", 1, 4), ("G2", 1, 5), ("A3", 1, 4)])
@given(data=st.data())
def test_sharp_membership_agrees(t, m, N, data):
    md = md_of(t, m, N)
    c = data.draw(st.lists(st.integers(-12, 12), min_size=md.rd.lattice_dim, max_size=md.rd.lattice_dim))
    assert md.in_sharp_by_kappa(c) == md.in_sharp_by_basis(c)


def test_sl3_n3_dual_sc():
    md = md_of("A2", 1, 3)
    assert md.delta == (3, 3)
    assert simply_connected_check(md.dual)[0]


def test_dual_cartan_c3():
    md = md_of("C3", 1, 4)
    assert md.delta == (2, 2, 4)
    assert md.index == 8
    assert md.dual.cartan == build("B3").cartan


def test_restricted_needs_semisimple():
    md = md_of("A2", 1, 3, central_rank=1)
    with pytest.raises(InfiniteSet):
        restricted_coweights(md)
    assert restricted_coweights(md, modulo_center=True)


@pytest.mark.parametrize("t,m,N,kw", [("A2", 1, 3, {}), ("A2", 3, 3, {"isogeny": "adjoint"}), ("C2", 1, 4, {}), ("A1", 1, 5, {})])
def test_coset_analysis_consistent(t, m, N, kw):
    md = md_of(t, m, N, **kw)
    rep = coset_analysis(md)
    assert len(rep.cosets) == md.index
    for c in rep.cosets:
        if c.restricted_rep is not None:
            assert c.verdict == "free" and c.minimal == [c.restricted_rep]
            assert md.coset_of(md.rd.to_basis(c.restricted_rep)) == c.coset
        if len(c.minimal) > 1:
            assert c.verdict == "not_free"
    if rep.dual_simply_connected:
        assert all(c.verdict == "free" for c in rep.cosets)


@pytest.mark.parametrize("t,m,ell", [("A2", 1, 3), ("A2", 2, 3), ("A1", 1, 2), ("C2", 1, 2), ("C2", 1, 4), ("C2", 3, 2), ("B2", 1, 2)])
def test_abbgm_passes(t, m, ell):
    rep = abbgm_compare(build(t), m, ell)
    assert rep.passed and all(rep.checks.values())
    assert rep.N == m * ell


def test_abbgm_hypotheses():
    with pytest.raises(HypothesisFailed):
        abbgm_compare(build("C2"), 1, 3)  # d_1 = 2 does not divide 3
    with pytest.raises(HypothesisFailed):
        abbgm_compare(build("A2", central_rank=1), 1, 3)


def test_scaling_preserves_lattice_data():
    md = md_of("G2", 1, 7)
    for k in (2, 3):
        s = md.scaled(k)
        assert s.delta == md.delta and s.sharp_basis == md.sharp_basis
