"""Grothendieck-level bookkeeping for Whittaker objects.

Objects are only labels: ``F[lambda]`` for the irreducible Whittaker objects
and ``L[mu]`` for the factorizable sheaves.  Everything below is arithmetic on
these labels driven by the metaplectic dual datum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

from . import _lattice as la
from .crystals import candidate_special, phi_geom, stabilize_region, tensor_rule_hom_dim
from .errors import HypothesisFailed, InternalInconsistency, NotDominant, NotInLattice
from .metaplectic import MetaplecticDatum, restricted_coweights, simply_connected_check
from .propc import subtop_report
from .repthy import character_drops, tensor_decompose_labels
from .rootdata import Weight

SUBTOP = "subtop cohomology property"


def _require_dominant(md: MetaplecticDatum, lam: Weight) -> tuple[int, ...]:
    rd = md.rd
    if not rd.in_lattice(lam):
        raise NotInLattice(f"{lam} is not in the coweight lattice")
    l = rd.labels(lam)
    if min(l, default=0) < 0:
        raise NotDominant(f"{lam} is not dominant")
    return l


def _dual_labels(md: MetaplecticDatum, lam: Weight) -> tuple[int, ...]:
    l = md.rd.labels(lam)
    return tuple(x // d for x, d in zip(l, md.delta))


def _nu_coords(md: MetaplecticDatum, lam: Weight, mu: Weight) -> tuple[int, ...] | None:
    """Coroot coordinates of lambda - mu, or None if not a nonnegative integer combination."""
    c = md.rd.coroot_coords(lam - mu)
    if c is None or not la.is_integral(c) or any(x < 0 for x in c):
        return None
    return la.int_vec(c)


def in_restricted(md: MetaplecticDatum, lam: Weight) -> bool:
    l = md.rd.labels(lam)
    return md.rd.in_lattice(lam) and all(0 <= x < d for x, d in zip(l, md.delta))


def in_sharp_dominant(md: MetaplecticDatum, lam: Weight) -> bool:
    return md.contains(lam) and md.rd.is_dominant(lam)


# ------------------------------------------------------------------ dual characters


def sharp_weight_with_dual_labels(md: MetaplecticDatum, dl: Sequence[int]) -> Weight | None:
    """Some lambda in L# with <lambda, alpha_i^vee / delta_i> = dl_i, or None."""
    target = tuple(d * x for d, x in zip(md.delta, dl))
    P = la.mat_mul(md.sharp_basis, md.rd.root_dual_coords_T)
    s, _ = la.solve_int_left(P, target)
    if s is None:
        return None
    return md.rd.from_basis(la.vec_mat(s, md.sharp_basis))


def dual_character(md: MetaplecticDatum, lam: Weight) -> dict[Weight, int]:
    """Weights of V_zeta(lambda) for lambda in the dominant part of L#, as elements of L."""
    if not in_sharp_dominant(md, lam):
        raise NotInLattice(f"{lam} is not a dominant element of L#")
    dual = md.dual
    dl = _dual_labels(md, lam)
    out = {}
    for n, m in character_drops(dual, dl).items():
        w = Weight(la.vsub(lam.coords, la.vec_mat(n, dual.coroot_vecs)), "L")
        out[w] = m
    return out


def dual_weight_mult(md: MetaplecticDatum, lam: Weight, mu: Weight) -> int:
    """dim V_zeta(lambda)_mu."""
    return dual_character(md, lam).get(mu.retag("L"), 0)


# ------------------------------------------------------------------ candidates


def candidate_filter(md: MetaplecticDatum, lam: Weight, nu: Sequence[int], region: Sequence[int] | None = None) -> list:
    """Stable elements x of B_g(nu) that are candidate special and satisfy
    phi_geom(x, i) <= <lambda, alpha_i^vee> for all i."""
    l = md.rd.labels(lam)
    nu = tuple(nu)
    if any(n % d for n, d in zip(nu, md.delta)):
        return []
    reg = stabilize_region(md.rd, nu if region is None else region)
    out = []
    for x in reg.get(nu, []):
        if all(phi_geom(x, i) <= l[i] for i in range(md.rd.rank)) and candidate_special(x, md):
            out.append(x)
    return out


def candidate_bound(md: MetaplecticDatum, lam: Weight, mu: Weight, region: Sequence[int] | None = None) -> int:
    nu = _nu_coords(md, lam, mu)
    if nu is None:
        return 0
    return len(candidate_filter(md, lam, nu, region))


def _lowest_drop(md: MetaplecticDatum, lam: Weight) -> tuple[int, ...]:
    """Coroot coordinates of lambda - w0(lambda)."""
    c = md.rd.coroot_coords(lam - md.rd.w0_act(lam))
    return la.int_vec(c)


# ------------------------------------------------------------------ decomposition


@dataclass
class Entry:
    value: int
    kind: str  # exact | bound

    def to_json(self) -> dict:
        return {"value": self.value, "kind": self.kind}


@dataclass
class DecompositionTable:
    lam: Weight
    regime: str  # restricted | sharp | bound
    entries: dict[Weight, Entry]
    flags: dict[str, bool] = field(default_factory=dict)

    def values(self) -> dict[Weight, int]:
        return {w: e.value for w, e in self.entries.items()}

    def to_json(self) -> dict:
        return {
            "lambda": self.lam.to_json(),
            "regime": self.regime,
            "flags": dict(sorted(self.flags.items())),
            "entries": [{"mu": w.to_json(), **e.to_json()} for w, e in sorted(self.entries.items())],
        }


def _subtop_flags(md: MetaplecticDatum, assume_subtop: bool) -> dict[str, bool]:
    if assume_subtop:
        return {"conditional_subtop": True}
    rep = subtop_report(md)
    if rep.subtop != "certified":
        raise HypothesisFailed(SUBTOP, f"not certified ({rep.subtop}); pass assume_subtop to proceed conditionally")
    return {"conditional_subtop": False}


def decompose(md: MetaplecticDatum, lam: Weight, assume_subtop: bool = False) -> DecompositionTable:
    """The table mu -> dim V^lambda_mu.

    lambda restricted: {lambda: 1}.  lambda in the dominant part of L#:
    dim V_zeta(lambda)_mu.  Otherwise an upper bound from candidate special
    elements, with the exact value 1 at mu = lambda.
    """
    _require_dominant(md, lam)
    lam = lam.retag("L")
    flags = _subtop_flags(md, assume_subtop)
    if in_restricted(md, lam):
        return DecompositionTable(lam, "restricted", {lam: Entry(1, "exact")}, flags)
    if in_sharp_dominant(md, lam):
        ch = dual_character(md, lam)
        entries = {w: Entry(m, "exact") for w, m in sorted(ch.items())}
        return DecompositionTable(lam, "sharp", entries, flags)
    rd = md.rd
    top = _lowest_drop(md, lam)
    entries = {lam: Entry(1, "exact")}
    steps = [range(0, t + 1, d) for t, d in zip(top, md.delta)]
    for nu in product(*steps):
        if not any(nu):
            continue
        b = len(candidate_filter(md, lam, nu, region=top))
        if b:
            mu = Weight(la.vsub(lam.coords, la.vec_mat(nu, rd.coroot_vecs)), "L")
            entries[mu] = Entry(b, "bound")
    flags["has_bounds"] = len(entries) > 1
    return DecompositionTable(lam, "bound", dict(sorted(entries.items())), flags)


# ------------------------------------------------------------------ freeness and Hecke action


@dataclass
class FreenessStructure:
    """lambda = lambda_a + mu with lambda_a in ``basis`` (restricted, one per
    coset of L/L#) and mu in the dominant part of L#."""

    md: MetaplecticDatum
    basis: list[Weight]
    sharp_fundamental: list[tuple[int, ...]]  # lattice coords of elements of L# with labels delta_i e_i

    def __post_init__(self):
        self._basis_set = set(self.basis)

    def coords(self, lam: Weight) -> tuple[Weight, Weight]:
        md = self.md
        rd = md.rd
        l = _require_dominant(md, lam)
        q = [x // d for x, d in zip(l, md.delta)]
        mu0 = (0,) * rd.lattice_dim
        for qi, w in zip(q, self.sharp_fundamental):
            mu0 = la.vadd(mu0, la.vscale(qi, w))
        c = la.int_vec(rd.to_basis(lam))
        base = la.reduce_mod(la.vsub(c, mu0), md.sharp_center_basis)
        lam_a = rd.from_basis(base)
        if lam_a not in self._basis_set:
            raise InternalInconsistency("coset representative outside the basis")
        return lam_a, rd.from_basis(la.vsub(c, base))

    def inverse(self, lam_a: Weight, mu: Weight) -> Weight:
        return lam_a + mu

    def to_json(self) -> dict:
        return {"basis": [w.to_json() for w in self.basis]}


def freeness_structure(md: MetaplecticDatum) -> FreenessStructure:
    sc, f = simply_connected_check(md.dual)
    if not sc:
        raise HypothesisFailed(
            "derived group of the dual group simply connected", f"fundamental group invariant factors {f}"
        )
    basis = sorted(restricted_coweights(md, modulo_center=True))
    fund = []
    for i in range(md.rd.rank):
        w = sharp_weight_with_dual_labels(md, tuple(1 if j == i else 0 for j in range(md.rd.rank)))
        if w is None:
            raise InternalInconsistency("dual fundamental weight missing although the dual is simply connected")
        fund.append(la.int_vec(md.rd.to_basis(w)))
    return FreenessStructure(md, basis, fund)


class WhittakerClass(dict):
    """Formal Z-combination of labels F[lambda]."""

    def add(self, lam: Weight, c: int) -> None:
        v = self.get(lam, 0) + c
        if v:
            self[lam] = v
        else:
            self.pop(lam, None)

    def to_json(self) -> list:
        return [{"lambda": w.to_json(), "coef": c} for w, c in sorted(self.items())]


@dataclass
class HeckeResult:
    result: WhittakerClass
    structural: bool

    def to_json(self) -> dict:
        return {"result": self.result.to_json(), "structural": self.structural}


def hecke_act(md: MetaplecticDatum, gamma: Weight, K: Mapping[Weight, int]) -> HeckeResult:
    """Action of V_zeta(gamma) on a class.

    On F[lambda] with lambda restricted (or zero) this is F[lambda + gamma].
    Otherwise lambda = lambda_a + mu and the result is
    sum_nu c^nu_{gamma, mu} F[lambda_a + nu], with tensor multiplicities of
    the dual group; such results are flagged ``structural``.
    """
    gamma = gamma.retag("L")
    if not in_sharp_dominant(md, gamma):
        raise NotInLattice(f"{gamma} is not a dominant element of L#")
    out = WhittakerClass()
    structural = False
    fs = None
    dual = md.dual
    for lam, c in sorted(K.items()):
        lam = lam.retag("L")
        _require_dominant(md, lam)
        if in_restricted(md, lam):
            out.add(lam + gamma, c)
            continue
        structural = True
        if fs is None:
            fs = freeness_structure(md)
        lam_a, mu = fs.coords(lam)
        dg, dm = _dual_labels(md, gamma), _dual_labels(md, mu)
        top = gamma + mu
        for n, mult in tensor_decompose_labels(dual, dg, dm).items():
            nu = Weight(la.vsub(top.coords, la.vec_mat(n, dual.coroot_vecs)), "L")
            out.add(lam_a + nu, c * mult)
    return HeckeResult(out, structural)


# ------------------------------------------------------------------ vanishing and CSh counts


def kl_vanishing(md: MetaplecticDatum, lam: Weight, i: int) -> bool:
    """<lambda, alpha_i^vee> not in delta_i Z (a certificate that the stalk vanishes)."""
    rd = md.rd
    _require_dominant(md, lam)
    _require_dominant(md, lam - rd.simple_coroot(i))
    return rd.labels(lam)[i] % md.delta[i] != 0


@dataclass
class CshResult:
    value: int
    kind: str  # exact | bound
    regime: str  # case_i | case_ii | general

    def to_json(self) -> dict:
        return {"value": self.value, "kind": self.kind, "regime": self.regime}


def _orbit_min_labels(rd, labels) -> tuple[int, ...]:
    orb = rd.orbit_labels(labels)
    return tuple(min(l[k] for l in orb.values()) for k in range(rd.rank))


def csh_h0_dim(md: MetaplecticDatum, gamma: Weight, mu: Weight, nu: Weight) -> CshResult:
    """Size of the canonical base of H^0 of the Casselman-Shalika complex."""
    rd = md.rd
    gamma, mu, nu = gamma.retag("L"), mu.retag("L"), nu.retag("L")
    if not in_sharp_dominant(md, gamma):
        raise NotInLattice(f"{gamma} is not a dominant element of L#")
    lm = _require_dominant(md, mu)
    _require_dominant(md, mu + nu)
    lg = rd.labels(gamma)
    # case ii: every weight tau of V(gamma) has tau + mu dominant
    low = _orbit_min_labels(rd, lg)
    if all(a + b >= 0 for a, b in zip(low, lm)):
        return CshResult(dual_weight_mult(md, gamma, nu), "exact", "case_ii")
    top = mu + nu
    if in_sharp_dominant(md, top):
        lt = rd.labels(top)
        low_t = _orbit_min_labels(rd, lt)
        shift = rd.labels(-rd.w0_act(gamma))
        if all(a + b >= 0 for a, b in zip(low_t, shift)):
            return CshResult(dual_weight_mult(md, top, mu + rd.w0_act(gamma)), "exact", "case_i")
    return CshResult(tensor_rule_hom_dim(rd, gamma, mu, top), "bound", "general")
