from fractions import Fraction

import pytest

from metawhit.errors import CapExceeded, InvalidWitness
from metawhit.forms import barkappa_multiple
from metawhit.metaplectic import MetaplecticDatum
from metawhit.propc import (
    check_property_c,
    forbidden_divisors,
    search_space,
    subtop_report,
    verify_witness,
)
from metawhit.repthy import character_drops
from metawhit.rootdata import Weight, build

MAXIMAL = {
    ("A2", 1): [1], ("A3", 1): [1], ("A5", 1): [1], ("C2", 1): [2], ("C3", 1): [4],
    ("B3", 0): [4], ("B4", 0): [4], ("C3", 0): [4], ("D4", 0): [2], ("G2", 0): [6], ("F4", 0): [4, 6],
}


def md_of(t, m, N, central_rank=0):
    rd = build(t, central_rank=central_rank)
    return MetaplecticDatum(rd, barkappa_multiple(rd, m), N)


@pytest.mark.parametrize("t,c", sorted(MAXIMAL))
def test_maximal_divisors(t, c):
    rd = build(t, central_rank=c)
    assert forbidden_divisors(rd, barkappa_multiple(rd, 1)).maximal == MAXIMAL[(t, c)]


def test_g2_per_node():
    rd = build("G2")
    rep = forbidden_divisors(rd, barkappa_multiple(rd, 1))
    assert rep.per_node == [[2, 3], [6]]
    assert rep.all_degrees[1] == [1, 2, 3, 6]


@pytest.mark.parametrize("t", ["A3", "B3", "C3", "G2", "D4"])
def test_search_space_against_character(t):
    """The search space is {n - e_i : n a drop of V(omega_i), n > e_i}."""
    rd = build(t)
    for i in range(rd.rank):
        top = tuple(1 if j == i else 0 for j in range(rd.rank))
        want = set()
        for n in character_drops(rd, top):
            c = list(n)
            c[i] -= 1
            if min(c) >= 0 and any(c):
                want.add(tuple(c))
        assert set(search_space(rd, i)) == want


@pytest.mark.parametrize("t,N,verdict", [("G2", 6, "fails"), ("G2", 7, "holds"), ("B3", 4, "fails"), ("B3", 3, "holds"), ("D4", 2, "fails"), ("D4", 3, "holds")])
def test_verdicts(t, N, verdict):
    rep = check_property_c(md_of(t, 1, N))
    assert rep.verdict == verdict and rep.mode == "full_search"
    for w in rep.witnesses:
        ok, deg = verify_witness(md_of(t, 1, N), w.node, w.lam)
        assert ok and deg % N == 0


def test_bn_witness():
    for n in (3, 4):
        rd = build(f"B{n}")
        md = MetaplecticDatum(rd, barkappa_multiple(rd, 1), 4)
        lam_minus = Weight(tuple(Fraction(2) for _ in range(n - 1)) + (Fraction(-2),))
        lam = lam_minus + rd.simple_coroot(n - 1)
        ok, deg = verify_witness(md, n - 1, lam)
        assert ok and deg == 4


def test_threads_do_not_change_report():
    md = md_of("F4", 1, 4)
    a = check_property_c(md).to_json()
    b = check_property_c(md, threads=3).to_json()
    assert a == b and a["verdict"] == "fails"


def test_witness_only_never_holds():
    rep = check_property_c(md_of("G2", 1, 7), mode="witness_only")
    assert rep.verdict == "inconclusive" and rep.notes


def test_e8_is_witness_only():
    md = md_of("E8", 1, 7)
    with pytest.raises(CapExceeded):
        forbidden_divisors(md.rd, md.kbar)


def test_invalid_witnesses():
    md = md_of("G2", 1, 6)
    rd = md.rd
    with pytest.raises(InvalidWitness):
        verify_witness(md, 0, rd.simple_coroot(0))  # lambda = alpha_i
    with pytest.raises(InvalidWitness):
        verify_witness(md, 0, rd.coroot_combo([1, 5]))  # not a weight
    with pytest.raises(InvalidWitness):
        verify_witness(md, 5, rd.coroot_combo([1, 1]))


def test_subtop_report():
    assert subtop_report(md_of("G2", 1, 7)).subtop == "certified"
    assert subtop_report(md_of("G2", 1, 6)).subtop.startswith("unknown")
    rep = subtop_report(md_of("A1", 1, 1))
    assert rep.hypothesis == [False] and rep.subtop.startswith("unknown")


@pytest.mark.parametrize("k", [2, 3])
def test_scale_covariance(k):
    md = md_of("F4", 1, 6)
    a, b = check_property_c(md), check_property_c(md.scaled(k))
    assert a.verdict == b.verdict
    assert [w.drop for w in a.witnesses] == [w.drop for w in b.witnesses]
