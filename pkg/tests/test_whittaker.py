from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metawhit import whittaker as wh
from metawhit.crystals import tensor_rule_hom_dim
from metawhit.errors import HypothesisFailed, NotDominant, NotInLattice
from metawhit.forms import barkappa_multiple
from metawhit.metaplectic import MetaplecticDatum, restricted_coweights
from metawhit.repthy import tensor_decompose_labels, weyl_dim_labels
from metawhit.rootdata import Weight, build


def md_of(t, m, N, central_rank=0):
    rd = build(t, central_rank=central_rank)
    return MetaplecticDatum(rd, barkappa_multiple(rd, m), N)


def test_sl2_examples():
    md = md_of("A1", 1, 3)
    a = md.rd.simple_coroot(0)
    assert wh.decompose(md, a).values() == {a: 1}
    t = wh.decompose(md, a * 3)
    assert t.regime == "sharp" and t.values() == {a * -3: 1, a * 0: 1, a * 3: 1}
    assert all(e.kind == "exact" for e in t.entries.values())
    t = wh.decompose(md, a * 2)
    assert t.regime == "bound" and t.entries[a * 2].kind == "exact" and t.flags["has_bounds"]
    assert wh.kl_vanishing(md, a * 2, 0)
    assert wh.kl_vanishing(md, a * 3, 0) is False  # label 6
    with pytest.raises(HypothesisFailed):
        wh.freeness_structure(md)


def test_subtop_gate():
    md = md_of("G2", 1, 6)
    lam = md.rd.fundamental_coweights()[0]
    with pytest.raises(HypothesisFailed):
        wh.decompose(md, lam)
    t = wh.decompose(md, lam, assume_subtop=True)
    assert t.flags["conditional_subtop"]


def test_not_dominant():
    md = md_of("A2", 1, 3)
    with pytest.raises(NotDominant):
        wh.decompose(md, md.rd.coroot_combo([-1, 0]))


@pytest.mark.parametrize("t,N", [("A2", 3), ("A2", 2), ("B2", 5), ("G2", 7)])
def test_sharp_tables_are_dual_characters(t, N):
    md = md_of(t, 1, N)
    for dl in product(range(3), repeat=2):
        lam = wh.sharp_weight_with_dual_labels(md, dl)
        if lam is None:
            continue
        tab = wh.decompose(md, lam)
        assert tab.regime in ("sharp", "restricted")
        assert sum(tab.values().values()) == weyl_dim_labels(md.dual, dl)
        for mu in tab.values():
            assert md.contains(lam - mu)


@pytest.mark.parametrize("t,N", [("A1", 5), ("A2", 3), ("B2", 5)])
def test_restricted_tables_trivial(t, N):
    md = md_of(t, 1, N)
    for lam in restricted_coweights(md):
        assert wh.decompose(md, lam).values() == {lam: 1}


def _dominant_box(rd, bound):
    out = []
    for l in product(range(bound), repeat=rd.rank):
        for z in product(range(-1, 2), repeat=rd.lattice_dim - rd.rank):
            w = rd.from_basis(_solve_labels(rd, l, z))
            if w is not None:
                out.append(w)
    return out


def _solve_labels(rd, l, z):
    from metawhit import _lattice as la

    # brute force over a small box of lattice coordinates
    for c in product(range(-8, 9), repeat=rd.lattice_dim):
        if la.vec_mat(c, rd.root_dual_coords_T) == tuple(l) and tuple(c[rd.rank:]) == tuple(z):
            return c
    return None


@pytest.mark.parametrize("t,N,c", [("A2", 3, 0), ("A2", 2, 1), ("A2", 3, 1), ("C2", 4, 1), ("G2", 7, 0)])
def test_freeness_against_brute_force(t, N, c):
    md = md_of(t, 1, N, central_rank=c)
    fs = wh.freeness_structure(md)
    rd = md.rd
    for lam in product(range(-3, 7), repeat=rd.lattice_dim):
        w = rd.from_basis(lam)
        if not rd.is_dominant(w):
            continue
        la_, mu = fs.coords(w)
        assert fs.inverse(la_, mu) == w
        hits = [a for a in fs.basis if md.is_sharp_dominant(w - a)]
        assert hits == [la_]


@pytest.mark.parametrize("t,N", [("A2", 3), ("B2", 2), ("G2", 7)])
def test_hecke_is_a_module_action(t, N):
    md = md_of(t, 1, N)
    sharp = [w for dl in product(range(2), repeat=2) if (w := wh.sharp_weight_with_dual_labels(md, dl)) is not None]
    targets = restricted_coweights(md)[:3] + sharp[1:3]
    for g1, g2 in product(sharp[1:], repeat=2):
        for lam in targets:
            K = {lam: 1}
            lhs = wh.hecke_act(md, g1, wh.hecke_act(md, g2, K).result).result
            other = wh.hecke_act(md, g2, wh.hecke_act(md, g1, K).result).result
            assert lhs == other
            rhs = wh.WhittakerClass()
            d1, d2 = wh._dual_labels(md, g1), wh._dual_labels(md, g2)
            for n, mult in tensor_decompose_labels(md.dual, d1, d2).items():
                nu = (g1 + g2) - md.dual.coroot_combo(n).retag("L")
                for w, c in wh.hecke_act(md, nu, K).result.items():
                    rhs.add(w, c * mult)
            assert dict(lhs) == dict(rhs)


def test_hecke_restricted_shift():
    md = md_of("A2", 1, 3)
    g = wh.sharp_weight_with_dual_labels(md, (1, 0))
    for lam in restricted_coweights(md):
        res = wh.hecke_act(md, g, {lam: 2})
        assert dict(res.result) == {lam + g: 2} and not res.structural
    with pytest.raises(NotInLattice):
        wh.hecke_act(md, md.rd.fundamental_coweights()[0], {})


@pytest.mark.parametrize("t", ["A2", "B2", "G2"])
@settings(max_examples=40)
@given(data=st.data())
def test_csh_untwisted_is_tensor_rule(t, data):
    """With N = 1 the count is dim Hom(V(gamma) x V(mu), V(mu + nu)) in every regime."""
    md = md_of(t, 1, 1)
    rd = md.rd
    fw = [w.retag("L") for w in rd.fundamental_coweights()]
    lab = st.lists(st.integers(0, 3), min_size=2, max_size=2)
    g, m = data.draw(lab), data.draw(lab)
    gamma = fw[0] * g[0] + fw[1] * g[1]
    mu = fw[0] * m[0] + fw[1] * m[1]
    if not (rd.in_lattice(gamma) and rd.in_lattice(mu)):
        return
    n = data.draw(st.lists(st.integers(-2, 4), min_size=2, max_size=2))
    nu = rd.coroot_combo(n)
    if not rd.is_dominant(mu + nu):
        return
    res = wh.csh_h0_dim(md, gamma, mu, nu)
    assert res.value == tensor_rule_hom_dim(rd, gamma, mu, mu + nu)


def test_csh_regimes():
    md = md_of("A1", 1, 3)
    a = md.rd.simple_coroot(0)
    r = wh.csh_h0_dim(md, a * 3, a * 10, a * 0)
    assert (r.value, r.regime, r.kind) == (1, "case_ii", "exact")
    assert wh.csh_h0_dim(md, a * 3, a * 10, a * 1).value == 0
    r = wh.csh_h0_dim(md, a * 3, a * 0, a * 3)
    assert r.regime == "case_i" and r.value == 1


def test_json_shapes():
    md = md_of("A1", 1, 3)
    a = md.rd.simple_coroot(0)
    js = wh.decompose(md, a * 3).to_json()
    assert js["regime"] == "sharp" and len(js["entries"]) == 3
