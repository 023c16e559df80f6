"""Acceptance suite: one test per criterion, named test_criterion_NN_*.

A summary line per criterion is printed at the end of the run (see conftest).
"""

import time
from collections import Counter
from fractions import Fraction
from itertools import product

import pytest

from metawhit import whittaker as wh
from metawhit.cli import run
from metawhit.crystals import enumerate_B, hom_dims_by_rule, iter_nu, kashiwara_filter
from metawhit.errors import HypothesisFailed
from metawhit.forms import barkappa_multiple
from metawhit.metaplectic import MetaplecticDatum, abbgm_compare, restricted_coweights, simply_connected_check
from metawhit.propc import check_property_c, forbidden_divisors, varrho_condition, verify_witness
from metawhit.repthy import character_drops, is_weight_of, tensor_decompose_labels, weyl_dim, weyl_dim_labels
from metawhit.rootdata import Weight, build

TITLES = {
    1: "Property (C) sufficiency sweep over the type rows",
    2: "forbidden divisors per type",
    3: "E8 witnesses with divisor degrees 10, 8, 6",
    4: "dimension goldens for G2 and F4",
    5: "crystal counts = Freudenthal, |B(lambda)| = weyl_dim (dim <= 400)",
    6: "tensor rule = Brauer-Klimyk (dim product <= 10^4, A1 A2 B2 C2 G2)",
    7: "SL2 goldens for odd n in {3, 5, 7}",
    8: "comparison map phi_ell for A2 and C2",
    9: "Kashiwara filter lands in wts(V^{omega_i}) (height <= 6)",
    10: "restricted vanishing core for SL2 and SL3",
    11: "exact tables = dual Freudenthal dims <= candidate bounds (dim <= 200)",
    12: "determinism and scale covariance",
}


def md_of(t, m, N, central_rank=0):
    rd = build(t, central_rank=central_rank)
    return MetaplecticDatum(rd, barkappa_multiple(rd, m), N)


def dominant_upto(rd, bound):
    """All dominant labels with weyl_dim <= bound (dim grows in every label)."""
    out = []

    def rec(pref):
        if len(pref) == rd.rank:
            out.append(tuple(pref))
            return
        a = 0
        while weyl_dim_labels(rd, tuple(pref) + (a,) + (0,) * (rd.rank - len(pref) - 1)) <= bound:
            rec(pref + [a])
            a += 1

    rec([])
    return out


# ------------------------------------------------------------------ 1

# row -> (models, ks): the condition is varrho(alpha_i) not in (1/k)Z for k in ks
ROWS = {
    "A_n": ([("A1", 1), ("A2", 1), ("A3", 1), ("A4", 1), ("A5", 1)], (1,)),
    "C2": ([("C2", 1)], (1,)),
    "B3": ([("B3", 0)], (2,)),
    "C3": ([("C3", 0)], (2,)),
    "D4": ([("D4", 0)], (2,)),
    "G2": ([("G2", 0)], (2,)),
    "F4": ([("F4", 0)], (2, 3)),
}
GRID = [(m, N) for m in (1, 2, 3) for N in range(1, 19)]


def test_criterion_01_sufficiency_sweep():
    t0 = time.time()
    for row, (models, ks) in ROWS.items():
        holds = fails = 0
        for (t, c), (m, N) in product(models, GRID):
            md = md_of(t, m, N, central_rank=c)
            rep = check_property_c(md)
            assert rep.mode == "full_search"
            if varrho_condition(md, ks):
                assert rep.verdict == "holds", (row, t, m, N)
                holds += 1
            elif rep.checked == 0:
                assert rep.verdict == "holds"  # A1: the search space is empty
            else:
                assert rep.verdict == "fails" and rep.witnesses, (row, t, m, N)
                for w in rep.witnesses:
                    ok, deg = verify_witness(md, w.node, w.lam)
                    assert ok and deg % N == 0
                fails += 1
        assert holds >= 20 and fails >= 5, (row, holds, fails)
    assert time.time() - t0 < 300


# ------------------------------------------------------------------ 2


def test_criterion_02_forbidden_divisors():
    rd = build("G2")
    g2 = forbidden_divisors(rd, barkappa_multiple(rd, 1))
    assert g2.per_node[1] == [6]
    assert {2, 3, 6} <= set(g2.all_degrees[1])
    for n in (3, 4, 5):
        rd = build(f"B{n}")
        rep = forbidden_divisors(rd, barkappa_multiple(rd, 1))
        assert 4 in rep.maximal
        md = MetaplecticDatum(rd, barkappa_multiple(rd, 1), 4)
        lam_minus = Weight(tuple(Fraction(2) for _ in range(n - 1)) + (Fraction(-2),))
        ok, deg = verify_witness(md, n - 1, lam_minus + rd.simple_coroot(n - 1))
        assert ok and deg == 4
    rd = build("F4")
    assert {4, 6} <= set(forbidden_divisors(rd, barkappa_multiple(rd, 1)).maximal)
    for n in range(1, 6):
        rd = build(f"A{n}", central_rank=1)
        rep = forbidden_divisors(rd, barkappa_multiple(rd, 1))
        assert all(ds in ([], [1]) for ds in rep.all_degrees)


# ------------------------------------------------------------------ 3


def test_criterion_03_e8_witnesses():
    rd = build("E8")
    md = MetaplecticDatum(rd, barkappa_multiple(rd, 1), 1)
    e8 = tuple(Fraction(1 if k == 7 else 0) for k in range(8))
    got = {}
    for i, d in ((3, 10), (4, 8), (5, 6)):
        t0 = time.time()
        lam_minus = Weight(tuple(d * x for x in e8))
        lam = lam_minus + rd.simple_coroot(i)
        assert lam - rd.simple_coroot(i) == lam_minus
        _, deg = verify_witness(md, i, lam)
        assert time.time() - t0 < 1
        got[i + 1] = deg
    assert got == {4: 10, 5: 8, 6: 6}


# ------------------------------------------------------------------ 4


def test_criterion_04_dimensions():
    g2 = build("G2").fundamental_coweights()
    f4 = build("F4").fundamental_coweights()
    assert [weyl_dim(build("G2"), w) for w in g2] == [7, 14]
    assert weyl_dim(build("F4"), f4[1]) == 273
    assert weyl_dim(build("F4"), f4[2]) == 1274


# ------------------------------------------------------------------ 5


def test_criterion_05_crystal_characters():
    t0 = time.time()
    for t in ("A1", "A2", "B2", "C2", "G2"):
        rd = build(t)
        for l in dominant_upto(rd, 400):
            B = enumerate_B(rd, l)
            assert len(B) == weyl_dim_labels(rd, l)
            assert Counter(b.drop for b in B) == Counter(character_drops(rd, l))
    assert time.time() - t0 < 120


# ------------------------------------------------------------------ 6


def test_criterion_06_tensor_rule():
    for t in ("A1", "A2", "B2", "C2", "G2"):
        rd = build(t)
        ws = dominant_upto(rd, 10**4)
        dims = {l: weyl_dim_labels(rd, l) for l in ws}
        for g, m in product(ws, repeat=2):
            if dims[g] * dims[m] <= 10**4:
                assert hom_dims_by_rule(rd, g, m) == tensor_decompose_labels(rd, g, m), (t, g, m)


# ------------------------------------------------------------------ 7


def test_criterion_07_sl2_goldens():
    rd = build("A1")
    for n in (3, 5, 7):
        for m in (1, 2):
            N = n * m
            md = MetaplecticDatum(rd, barkappa_multiple(rd, m), N)
            assert md.sharp_basis == [(n,)]  # L# = n L
            sc, _ = simply_connected_check(md.dual)
            assert md.dual.cartan == ((2,),) and not sc  # adjoint A1
            got = sorted(rd.coroot_coords(w)[0] for w in restricted_coweights(md))
            assert got == [a for a in range(n) if 2 * a < n]


# ------------------------------------------------------------------ 8


def test_criterion_08_abbgm():
    done = 0
    for t in ("A2", "C2"):
        rd = build(t)
        for m, ell in product(range(1, 5), range(1, 9)):
            try:
                rep = abbgm_compare(rd, m, ell)
            except HypothesisFailed:
                continue
            assert rep.passed and all(rep.checks.values()), (t, m, ell, rep.checks)
            assert rep.checks["phi_root_to_delta_coroot"] and rep.checks["kbar_phi_equals_N"]
            done += 1
    assert done >= 20


# ------------------------------------------------------------------ 9


def test_criterion_09_kashiwara_filter():
    t0 = time.time()
    for t in ("A2", "B2", "C2", "G2", "A1xA1"):
        rd = build(t)
        for nu in iter_nu(rd.rank, 6):
            for i in range(rd.rank):
                top = tuple(1 if j == i else 0 for j in range(rd.rank))
                for x in kashiwara_filter(rd, nu, i):
                    assert is_weight_of(rd, top, x.nu)
                    assert nu in character_drops(rd, top)
    assert time.time() - t0 < 600


# ------------------------------------------------------------------ 10


def test_criterion_10_restricted_vanishing():
    cases = [("A1", 3), ("A1", 5), ("A2", 2), ("A2", 3)]
    for t, N in cases:
        md = md_of(t, 1, N)
        assert set(md.delta) == {N}
        for lam in restricted_coweights(md):
            top = wh._lowest_drop(md, lam)
            for nu in product(*[range(0, x + 1, d) for x, d in zip(top, md.delta)]):
                if any(nu):
                    assert wh.candidate_filter(md, lam, nu, region=top) == []
            assert wh.decompose(md, lam).values() == {lam: 1}


# ------------------------------------------------------------------ 11


def test_criterion_11_sharp_tables():
    for t, N in (("A1", 3), ("A2", 2)):
        md = md_of(t, 1, N)
        dual = md.dual
        checked = 0
        for dl in dominant_upto(dual, 200):
            lam = wh.sharp_weight_with_dual_labels(md, dl)
            if lam is None:
                continue  # labels not realized by L# (e.g. odd labels for a PSL2 dual)
            checked += 1
            tab = wh.decompose(md, lam)
            want = {}
            for n, mult in character_drops(dual, dl).items():
                want[lam - dual.coroot_combo(n).retag("L")] = mult
            assert tab.values() == want
            top = wh._lowest_drop(md, lam)
            for mu, e in tab.entries.items():
                assert e.kind == "exact"
                assert e.value <= wh.candidate_bound(md, lam, mu, region=top), (t, dl, mu)
        assert checked >= 10, (t, checked)


# ------------------------------------------------------------------ 12

CLI_RUNS = [
    ["property-c", "--type", "F4", "--N", "4"],
    ["metaplectic", "--type", "C3", "--N", "4", "--cosets"],
    ["decompose", "--type", "A1", "--N", "3", "--lambda", "2"],
    ["crystal", "--type", "G2", "--stable", "--nu", "2,1", "--phi-geom"],
    ["hecke", "--type", "A2", "--N", "3", "--gamma", "labels:3,0", "--on", "1*[1,1]"],
]


def test_criterion_12_determinism_and_scaling():
    for argv in CLI_RUNS:
        assert run([*argv, "--json"]) == run([*argv, "--json"])
    pc = [("G2", 6), ("G2", 7), ("B3", 4), ("F4", 6), ("A3", 4)]
    for (t, N), k in product(pc, (2, 3)):
        md = md_of(t, 1, N)
        sc = md.scaled(k)
        assert (sc.delta, sc.sharp_basis) == (md.delta, md.sharp_basis)
        a, b = check_property_c(md), check_property_c(sc)
        assert a.verdict == b.verdict
        assert [(w.node, w.drop) for w in a.witnesses] == [(w.node, w.drop) for w in b.witnesses]
    for (t, N), k in product([("A1", 3), ("A2", 3), ("A1", 5)], (2, 3)):
        md = md_of(t, 1, N)
        sc = md.scaled(k)
        for l in product(range(4), repeat=md.rd.rank):
            lam = _weight_with_labels(md.rd, l)
            if lam is None:
                continue
            assert wh.decompose(md, lam).to_json() == wh.decompose(sc, lam).to_json()


def _weight_with_labels(rd, l):
    for c in product(range(-4, 5), repeat=rd.lattice_dim):
        w = rd.from_basis(c)
        if rd.labels(w) == tuple(l):
            return w
    return None
