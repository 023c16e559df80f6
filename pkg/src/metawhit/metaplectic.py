"""Metaplectic dual data derived from (root datum, kbar, N)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import gcd, prod
from typing import Sequence

from . import _lattice as la
from ._dynkin import classify
from .errors import CapExceeded, HypothesisFailed, InfiniteSet, InternalInconsistency
from .forms import BilinearForm, FormError, QuadraticForm, delta_i
from .rootdata import RootDatum, Weight

DEFAULT_COSET_CAP = 100_000
DEFAULT_BOX_CAP = 1_000_000


class MetaplecticDatum:
    """Immutable bundle (rd, kbar, N) with the derived lattice data."""

    def __init__(self, rd: RootDatum, kbar: BilinearForm, N: int):
        if kbar.rd is not rd:
            raise ValueError("form belongs to a different root datum")
        if not kbar.is_integral:
            raise FormError("kbar must be integral on the coweight lattice")
        self.rd = rd
        self.kbar = kbar
        self.N = int(N)
        self.q = QuadraticForm(kbar, self.N)
        self.delta = delta_i(self.q)
        self.gram = kbar.int_gram()
        self.sharp_basis = la.kernel_mod(self.gram, self.N)
        self._check_sharp()

    # -- the lattice L#

    def _check_sharp(self) -> None:
        for row in self.sharp_basis:
            if not self.in_sharp_by_kappa(row):
                raise InternalInconsistency("L# basis vector fails the kappa test")
            labels = la.vec_mat(row, self.rd.root_dual_coords_T)
            for i, d in enumerate(self.delta):
                if labels[i] % d:
                    raise InternalInconsistency("L# element with label not divisible by delta")
        if self.index != self.index_by_cokernel:
            raise InternalInconsistency("index computations disagree")

    def in_sharp_by_kappa(self, c: Sequence[int]) -> bool:
        """Membership via the covector kbar(lambda) modulo N."""
        return all(x % self.N == 0 for x in la.vec_mat(c, self.gram))

    def in_sharp_by_basis(self, c: Sequence[int]) -> bool:
        """Membership via the HNF basis."""
        return la.in_lattice(c, self.sharp_basis)

    def contains(self, lam: Weight) -> bool:
        c = self.rd.to_basis(lam)
        return la.is_integral(c) and self.in_sharp_by_basis(la.int_vec(c))

    @cached_property
    def index(self) -> int:
        return abs(int(la.determinant(self.sharp_basis)))

    @cached_property
    def index_by_cokernel(self) -> int:
        """[L : L#] = |(kbar(L) + N Lv) / N Lv| computed from invariant factors."""
        n = self.rd.lattice_dim
        aug = [tuple(self.gram[k]) + tuple(self.N if j == k else 0 for j in range(n)) for k in range(n)]
        return self.N**n // prod(la.invariant_factors(aug))

    def sharp_weights(self) -> list[Weight]:
        return [self.rd.from_basis(row, "L_sharp") for row in self.sharp_basis]

    @cached_property
    def sharp_center_basis(self) -> list[tuple[int, ...]]:
        """HNF basis (lattice coordinates) of L#_0 = {mu in L# : labels 0}."""
        S = self.sharp_basis
        P = la.mat_mul(S, self.rd.root_dual_coords_T)
        _, ker = la.solve_int_left(P, (0,) * self.rd.rank)
        return la.hnf([la.vec_mat(k, S) for k in ker])

    # -- the dual datum

    @cached_property
    def dual(self) -> RootDatum:
        return dual_root_datum(self)

    def coset_of(self, c: Sequence[int]) -> tuple[int, ...]:
        return la.reduce_mod(c, self.sharp_basis)

    def labels_of_coords(self, c: Sequence) -> tuple:
        return la.vec_mat(c, self.rd.root_dual_coords_T)

    def is_sharp_dominant(self, lam: Weight) -> bool:
        return self.contains(lam) and self.rd.is_dominant(lam)

    def is_restricted(self, lam: Weight) -> bool:
        l = self.rd.labels(lam)
        return self.rd.in_lattice(lam) and all(0 <= x < d for x, d in zip(l, self.delta))

    def scaled(self, k: int) -> "MetaplecticDatum":
        return MetaplecticDatum(self.rd, self.kbar.scaled(k), self.N * k)

    def __repr__(self) -> str:
        return f"MetaplecticDatum({self.rd.type_string()}, N={self.N}, delta={self.delta})"


def lambda_sharp(rd: RootDatum, kbar: BilinearForm, N: int) -> list[tuple[int, ...]]:
    return MetaplecticDatum(rd, kbar, N).sharp_basis


def dual_root_datum(md: MetaplecticDatum) -> RootDatum:
    """Datum with coweight lattice L#, coroots delta_i alpha_i, roots alpha_i^vee/delta_i."""
    rd = md.rd
    basis = [la.vec_mat(row, rd.basis) for row in md.sharp_basis]
    cor = [la.vscale(d, a) for d, a in zip(md.delta, rd.coroot_vecs)]
    rts = [la.vscale(Fraction(1, d), a) for d, a in zip(md.delta, rd.root_vecs)]
    om = [la.vscale(d, w) for d, w in zip(md.delta, rd.omega_vecs)]
    for i in range(rd.rank):
        c = la.vscale(md.delta[i], rd.coroot_lattice_coords[i])
        if not md.in_sharp_by_kappa(c):
            raise InternalInconsistency(f"delta_{i} alpha_{i} is not in L#")
    cart = [[la.dot(a, b) for b in rts] for a in cor]
    if not all(x.denominator == 1 for row in cart for x in row):
        raise InternalInconsistency("dual Cartan matrix is not integral")
    cart = [[int(x) for x in row] for row in cart]
    factors = [(l, n) for l, n, _ in classify(cart)]
    fnodes = [c for _, _, c in classify(cart)]
    try:
        return RootDatum(
            rd.ambient_dim,
            basis,
            cor,
            rts,
            om,
            factors=factors,
            factor_nodes=fnodes,
            ambient_form=None,
            central_rank=rd.lattice_dim - rd.rank,
            name=f"dual({rd.name})",
        )
    except ValueError as exc:
        raise InternalInconsistency(f"dual datum is not a valid root datum: {exc}") from exc


def simply_connected_check(dual: RootDatum) -> tuple[bool, list[int]]:
    """Whether the derived group of the group with *weights* given by ``dual``
    is simply connected: the simple roots (covectors) must span a saturated
    sublattice of the weight lattice."""
    f = la.invariant_factors(dual.root_dual_coords)
    return all(x == 1 for x in f), f


# ------------------------------------------------------------------ restricted coweights


def _coset_reps(sub_basis: Sequence[Sequence[int]], big_basis: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Representatives of big/sub, both given by rows in the same coordinates."""
    if not big_basis:
        return [()]
    coords = []
    for s in sub_basis:
        c = la.solve_left(big_basis, s)
        coords.append(la.int_vec(c))
    H = la.hnf(coords)
    ranges = [range(H[k][k]) for k in range(len(H))]
    out = []
    for a in product(*ranges):
        out.append(tuple(la.vec_mat(a, big_basis)))
    return out


def _solutions_with_labels(md: MetaplecticDatum, labels: Sequence[int]) -> list[tuple[int, ...]]:
    """All lambda in L (mod L#_0) with the given labels, canonically reduced."""
    rd = md.rd
    c0, _ = la.solve_int_left(rd.root_dual_coords_T, labels)
    if c0 is None:
        return []
    Z = rd.center_basis
    if not Z:
        return [tuple(c0)]
    H0 = md.sharp_center_basis
    out = set()
    for t in _center_reps(md):
        out.add(la.reduce_mod(la.vadd(c0, t), H0))
    return sorted(out)


def _center_reps(md: MetaplecticDatum) -> list[tuple[int, ...]]:
    key = "_center_reps_cache"
    if not hasattr(md, key):
        setattr(md, key, _coset_reps(md.sharp_center_basis, md.rd.center_basis))
    return getattr(md, key)


def restricted_coweights(md: MetaplecticDatum, modulo_center: bool = False) -> list[Weight]:
    """Dominant lambda in L with 0 <= <lambda, alpha_i^vee> < delta_i."""
    rd = md.rd
    if rd.center_basis and not modulo_center:
        raise InfiniteSet("the centre has positive rank; pass modulo_center=True")
    out = []
    for l in product(*[range(d) for d in md.delta]):
        for c in _solutions_with_labels(md, l):
            out.append(rd.from_basis(c))
    return out


# ------------------------------------------------------------------ cosets


@dataclass
class CosetInfo:
    coset: tuple[int, ...]
    restricted_rep: Weight | None
    minimal: list[Weight]
    verdict: str  # free | not_free | inconclusive

    def to_json(self) -> dict:
        return {
            "coset": list(self.coset),
            "restricted_rep": None if self.restricted_rep is None else self.restricted_rep.to_json(),
            "minimal": [w.to_json() for w in self.minimal],
            "verdict": self.verdict,
        }


@dataclass
class CosetReport:
    index: int
    cosets: list[CosetInfo]
    dual_simply_connected: bool
    projection_surjective: bool
    complete_search: bool
    box: tuple[int, ...]

    @property
    def conditional(self) -> bool:
        """True when the freeness statement is not covered by the simply-connected case."""
        return not self.dual_simply_connected

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "dual_simply_connected": self.dual_simply_connected,
            "conditional": self.conditional,
            "projection_surjective": self.projection_surjective,
            "complete_search": self.complete_search,
            "box": list(self.box),
            "cosets": [c.to_json() for c in self.cosets],
        }


def _sharp_multiple(md: MetaplecticDatum, i: int) -> int:
    """min{c > 0 : c * omega_i in L#}."""
    rd = md.rd
    w = rd.to_basis(Weight(rd.omega_vecs[i]))
    den = 1
    for x in w:
        den = den * x.denominator // gcd(den, x.denominator)
    base = la.int_vec(x * den for x in w)
    k = 1
    while True:
        if md.in_sharp_by_basis(la.vscale(k, base)):
            return k * den
        k += 1


def coset_analysis(
    md: MetaplecticDatum,
    box: Sequence[int] | None = None,
    coset_cap: int = DEFAULT_COSET_CAP,
    box_cap: int = DEFAULT_BOX_CAP,
) -> CosetReport:
    """Per coset a of L/L#: a restricted representative if one exists, the
    minimal elements of the dominant part of a (w.r.t. adding L#-dominant
    elements) and the freeness verdict.

    The default box bound c_i = min{c : c omega_i in L#} makes the search for
    minimal elements complete; a smaller user box may give ``inconclusive``.
    """
    rd = md.rd
    if md.index > coset_cap:
        raise CapExceeded("cosets", md.index, coset_cap)
    H = md.sharp_basis
    ranges = [range(H[k][k]) for k in range(len(H))]
    coset_keys = [la.reduce_mod(a, H) for a in product(*ranges)]
    complete = box is None
    if box is None:
        box = tuple(_sharp_multiple(md, i) for i in range(rd.rank))
        if prod(box) > box_cap:
            box = tuple(3 * d for d in md.delta)
            complete = False
    box = tuple(box)
    if prod(box) > box_cap:
        raise CapExceeded("coset search box", prod(box), box_cap)
    restricted: dict[tuple, Weight] = {}
    found: dict[tuple, list[tuple[tuple, tuple]]] = {k: [] for k in coset_keys}
    for l in product(*[range(b) for b in box]):
        for c in _solutions_with_labels(md, l):
            key = md.coset_of(c)
            found[key].append((l, c))
            if all(x < d for x, d in zip(l, md.delta)) and key not in restricted:
                restricted[key] = rd.from_basis(c)
    sc, _ = simply_connected_check(md.dual)
    cosets = []
    for key in coset_keys:
        elems = found[key]
        mins = []
        for l, c in elems:
            if not any(l2 != l and all(a <= b for a, b in zip(l2, l)) for l2, _ in elems):
                mins.append(rd.from_basis(c))
        rep = restricted.get(key)
        if rep is not None:
            verdict = "free"
            if len(mins) != 1:
                raise InternalInconsistency("restricted representative but several minimal elements")
        elif len(mins) > 1:
            verdict = "not_free"
        elif len(mins) == 1 and complete:
            verdict = "free"
        else:
            verdict = "inconclusive"
        cosets.append(CosetInfo(key, rep, sorted(mins), verdict))
    surj = all(c.restricted_rep is not None for c in cosets)
    return CosetReport(md.index, cosets, sc, surj, complete, box)


# ------------------------------------------------------------------ comparison with the quantum-group normalization


def symmetrizer(rd: RootDatum) -> tuple[int, ...]:
    """Minimal positive d_i with d_i A[j][i] = d_j A[i][j] on each component."""
    return rd.symmetrizer


def canonical_form(rd: RootDatum) -> BilinearForm:
    """The W-invariant form with (alpha_i, alpha_i) = 2 d_i (semisimple only)."""
    if rd.lattice_dim != rd.rank:
        raise HypothesisFailed("semisimple", "the canonical form is defined on the coroot span only")
    d = symmetrizer(rd)
    S = [[d[j] * rd.cartan[i][j] for j in range(rd.rank)] for i in range(rd.rank)]
    # lattice basis in coroot coordinates
    Cinv = la.inverse(rd.coroot_lattice_coords)
    G = la.mat_mul(la.mat_mul(Cinv, S), la.transpose(Cinv))
    return BilinearForm(rd, tuple(tuple(r) for r in G))


@dataclass
class AbbgmReport:
    d: tuple[int, ...]
    delta: tuple[int, ...]
    N: int
    checks: dict[str, bool]
    gram_ell: list[list[int]]
    phi_matrix: list[list[int]]
    passed: bool = False

    def to_json(self) -> dict:
        return {
            "d": list(self.d),
            "delta": list(self.delta),
            "N": self.N,
            "checks": dict(self.checks),
            "gram_ell": self.gram_ell,
            "phi_matrix": self.phi_matrix,
            "passed": self.passed,
        }


def abbgm_form(rd: RootDatum, ell: int) -> list[tuple[Fraction, ...]]:
    """Gram matrix on the dual basis of Lv of the form with
    (alpha_i^vee, x)_ell = (ell / d_i) <alpha_i, x>."""
    d = symmetrizer(rd)
    r = rd.rank
    M = [[Fraction(ell, d[i]) * rd.cartan[i][j] for j in range(r)] for i in range(r)]
    Rinv = la.inverse(rd.root_dual_coords)
    return la.mat_mul(la.mat_mul(Rinv, M), la.transpose(Rinv))


def abbgm_compare(rd: RootDatum, m: int, ell: int, gram_ell: Sequence[Sequence] | None = None) -> AbbgmReport:
    """Check that, for kbar = m (.,.) and N = m ell, the map phi_ell: Lv -> L
    dual to (.,.)_ell identifies the root datum of G with the metaplectic dual.

    Raises HypothesisFailed naming the first violated precondition.
    """
    if rd.lattice_dim != rd.rank:
        raise HypothesisFailed("semisimple", "the comparison needs kbar on all of L")
    if m <= 0 or ell <= 0:
        raise HypothesisFailed("m, ell positive")
    d = symmetrizer(rd)
    for i, di in enumerate(d):
        if ell % di:
            raise HypothesisFailed("d_i divides ell", f"d_{i + 1} = {di} does not divide ell = {ell}")
    canon = canonical_form(rd)
    if not canon.is_integral:
        raise HypothesisFailed("canonical form integral on L")
    kbar = canon.scaled(m)
    N = m * ell
    md = MetaplecticDatum(rd, kbar, N)
    r = rd.rank
    R = rd.root_dual_coords
    if gram_ell is None:
        Gl = abbgm_form(rd, ell)
    else:
        Gl = [tuple(Fraction(x) for x in row) for row in gram_ell]
        for i in range(r):
            lhs = la.vec_mat(R[i], Gl)
            want = la.vscale(Fraction(ell, d[i]), rd.coroot_lattice_coords[i])
            if tuple(lhs) != tuple(want):
                raise HypothesisFailed("(alpha_i^vee, -)_ell = delta_i <alpha_i, ->", f"fails at i = {i + 1}")
    if not all(x.denominator == 1 for row in Gl for x in row):
        raise HypothesisFailed("(.,.)_ell integral on Lv")
    Gl = [la.int_vec(row) for row in Gl]
    checks: dict[str, bool] = {}
    checks["delta_equals_ell_over_d"] = md.delta == tuple(ell // x for x in d)
    # phi(x) has lattice coordinates Gl x (x in dual-basis coordinates)
    phi = Gl
    prodm = la.mat_mul(md.gram, phi)
    checks["kbar_phi_equals_N"] = prodm == [tuple(N if a == b else 0 for b in range(r)) for a in range(r)]
    injective = la.determinant(phi) != 0
    image = la.hnf(la.transpose(phi))
    checks["phi_onto_sharp"] = injective and image == md.sharp_basis
    ok_roots = True
    for i in range(r):
        img = la.mat_vec(phi, R[i])
        if tuple(img) != la.vscale(md.delta[i], rd.coroot_lattice_coords[i]):
            ok_roots = False
    ok_dual = True
    for k in range(r):
        col = [phi[a][k] for a in range(r)]
        for i in range(r):
            val = Fraction(la.dot(col, R[i]), md.delta[i])
            if val != rd.coroot_lattice_coords[i][k]:
                ok_dual = False
    checks["phi_root_to_delta_coroot"] = ok_roots
    checks["dual_coroot_to_coroot"] = ok_dual
    rep = AbbgmReport(d, md.delta, N, checks, [list(r_) for r_ in Gl], [list(r_) for r_ in phi])
    rep.passed = all(checks.values())
    return rep
