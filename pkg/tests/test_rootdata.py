"""Root data: goldens from the classification tables and independent orbit oracles."""

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from metawhit import _lattice as la
from metawhit.errors import InvalidRank, LatticeMismatch, NotInLattice
from metawhit.rootdata import Weight, build, parse_type

# (|Phi+|, |W|) from the classification
COUNTS = {
    "A1": (1, 2), "A2": (3, 6), "A3": (6, 24), "A4": (10, 120),
    "B2": (4, 8), "B3": (9, 48), "B4": (16, 384),
    "C2": (4, 8), "C3": (9, 48), "C4": (16, 384),
    "D4": (12, 192), "D5": (20, 1920),
    "G2": (6, 12), "F4": (24, 1152),
    "E6": (36, 51840), "E7": (63, 2903040), "E8": (120, 696729600),
}

CARTAN = {
    "G2": ((2, -3), (-1, 2)),
    "B3": ((2, -1, 0), (-1, 2, -2), (0, -1, 2)),
    "C3": ((2, -1, 0), (-1, 2, -1), (0, -2, 2)),
    "F4": ((2, -1, 0, 0), (-1, 2, -2, 0), (0, -1, 2, -1), (0, 0, -1, 2)),
}


def _ambient_orbit(rd, w):
    """Orbit by BFS on ambient vectors with s_i(v) = v - <v, a_i^vee> a_i."""
    seen = {w.coords}
    todo = [w.coords]
    while todo:
        v = todo.pop()
        for a, r in zip(rd.coroot_vecs, rd.root_vecs):
            u = la.vsub(v, la.vscale(la.dot(v, r), a))
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return seen


@pytest.mark.parametrize("t", sorted(COUNTS))
def test_counts(t):
    rd = build(t)
    npos, order = COUNTS[t]
    assert len(rd.positive_roots) == npos
    assert len(rd.positive_coroots) == npos
    assert rd.weyl_group_order == order
    assert len(rd.w0_word) == npos


@pytest.mark.parametrize("t", sorted(CARTAN))
def test_cartan_transposed_against_table(t):
    # stored as <alpha_i, alpha_j^vee>, the transpose of the table above
    A = build(t).cartan
    T = CARTAN[t]
    assert A == tuple(tuple(T[j][i] for j in range(len(T))) for i in range(len(T)))


@pytest.mark.parametrize("t", ["A3", "B3", "C3", "D4", "G2", "F4", "E6"])
def test_symmetrizer(t):
    rd = build(t)
    d, A = rd.symmetrizer, rd.cartan
    for i, j in product(range(rd.rank), repeat=2):
        assert d[i] * A[j][i] == d[j] * A[i][j]


@pytest.mark.parametrize("t", ["A2", "B3", "C3", "G2", "F4", "D4", "A1xA2"])
def test_fundamental_coweights_dual_to_roots(t):
    rd = build(t)
    for i, w in enumerate(rd.fundamental_coweights()):
        assert rd.labels(w) == tuple(1 if j == i else 0 for j in range(rd.rank))


@pytest.mark.parametrize("t,labels", [("A2", (1, 1)), ("B3", (1, 0, 1)), ("C3", (0, 1, 0)), ("G2", (1, 0)), ("G2", (2, 1))])
def test_orbit_labels_against_ambient_bfs(t, labels):
    rd = build(t, isogeny="adjoint")
    w = Weight(la.vec_mat(labels, rd.omega_vecs), "L_ad")
    orb = rd.orbit_labels(labels)
    assert len(orb) == len(_ambient_orbit(rd, w)) == rd.orbit_size_dominant(labels)


@given(st.lists(st.integers(-4, 4), min_size=3, max_size=3))
def test_dominant_rep(l):
    rd = build("B3")
    dom, shift, length = rd.dominant_rep_labels(l)
    assert min(dom) >= 0
    assert length >= 0
    # dom = l + sum shift_j alpha_j in labels
    back = tuple(a + b for a, b in zip(l, rd.labels_of_coroot_combo(shift)))
    assert back == tuple(dom)
    assert min(shift) >= 0


def test_w0_maps_dominant_to_antidominant():
    for t in ["A3", "B3", "D5", "E6", "G2"]:
        rd = build(t)
        w = rd.coroot_combo([1] * rd.rank)
        lam = rd.coroot_combo([k + 1 for k in range(rd.rank)])
        for x in (w, lam):
            if rd.is_dominant(x):
                assert all(v <= 0 for v in rd.labels(rd.w0_act(x)))


def test_gl_and_gsp_models():
    gl = build("A2", central_rank=1)
    assert gl.name == "GL3" and gl.lattice_dim == 3 and len(gl.center_basis) == 1
    gsp = build("C2", central_rank=1)
    assert gsp.name == "GSp4" and gsp.lattice_dim == 3
    # the centre of GSp4 is connected: center basis generates all labels-0 elements
    assert len(gsp.center_basis) == 1


def test_lattice_tags_and_errors():
    rd = build("A1")
    half = Weight((Fraction(1, 2), Fraction(-1, 2)), "L")
    assert not rd.in_lattice(half)
    assert rd.in_lattice(half, "L_ad")
    with pytest.raises(NotInLattice):
        rd.weight(half.coords)
    with pytest.raises(LatticeMismatch):
        rd.simple_coroot(0) + Weight((0, 0), "Lv")
    with pytest.raises(InvalidRank):
        build("D3")
    with pytest.raises(InvalidRank):
        parse_type("Q2")
    assert parse_type("A2xA1") == [("A", 2), ("A", 1)]
