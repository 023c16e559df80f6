"""Based root data with explicit ambient coordinate models.

A coweight is stored by its coordinates in an ambient rational space (the
``e_i`` coordinates used for the classical and exceptional models), together
with a tag naming the lattice it is claimed to live in:

``"L"``        the coweight lattice of G,
``"L_ad"``     the lattice spanned by the coweight lattice and the fundamental
               coweights,
``"L_sharp"``  the metaplectic sublattice (see :mod:`metawhit.metaplectic`).

Covectors (elements of the weight lattice) are tagged ``"Lv"`` and stored by
their values on the chosen basis of the coweight lattice.

Heavy algorithms never touch the ambient model.  They work with Dynkin
labels ``<x, alpha_j^vee>`` and with *drops*: the integer coroot coordinates
of ``top - x`` for a fixed reference weight ``top``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

from . import _lattice as la
from ._dynkin import RANK_OK, classify, parabolic_order, standard_cartan, weyl_order
from .errors import CapExceeded, InvalidRank, LatticeMismatch, NotInLattice

DEFAULT_ORBIT_CAP = 10**7

TAGS = ("L", "L_ad", "L_sharp", "Lv")


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True, order=True)
class Weight:
    coords: tuple[Fraction, ...]
    lattice: str = "L"

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(x) for x in self.coords))
        if self.lattice not in TAGS:
            raise ValueError(f"unknown lattice tag {self.lattice!r}")

    def _check(self, other: "Weight"):
        if not isinstance(other, Weight):
            return NotImplemented
        if other.lattice != self.lattice:
            raise LatticeMismatch(f"{self.lattice} vs {other.lattice}")
        return None

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(la.vadd(self.coords, other.coords), self.lattice)

    def __sub__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(la.vsub(self.coords, other.coords), self.lattice)

    def __neg__(self) -> "Weight":
        return Weight(tuple(-x for x in self.coords), self.lattice)

    def __mul__(self, c) -> "Weight":
        return Weight(la.vscale(Fraction(c), self.coords), self.lattice)

    __rmul__ = __mul__

    def retag(self, lattice: str) -> "Weight":
        return Weight(self.coords, lattice)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def to_json(self) -> list:
        return [int(x) if x.denominator == 1 else _fmt(x) for x in self.coords]

    def __str__(self) -> str:
        return "(" + ", ".join(_fmt(x) for x in self.coords) + ")"


# ------------------------------------------------------------------ models


def _e(n: int, *pairs) -> tuple[Fraction, ...]:
    v = [Fraction(0)] * n
    for k, c in pairs:
        v[k] += Fraction(c)
    return tuple(v)


@dataclass
class _Model:
    dim: int
    coroots: list
    roots: list
    omegas: list
    basis: list
    form_scale: Fraction  # normalized form is form_scale * (standard dot product)
    central: int = 0  # central directions already built into the model
    name: str = ""


def _model_A(n: int, variant: str) -> _Model:
    d = n + 1
    cor = [_e(d, (i, 1), (i + 1, -1)) for i in range(n)]
    om_sc = [tuple(Fraction(1 if k <= i else 0) - Fraction(i + 1, d) for k in range(d)) for i in range(n)]
    if variant == "GL":
        om = [_e(d, *[(k, 1) for k in range(i + 1)]) for i in range(n)]
        basis = [_e(d, (k, 1)) for k in range(d)]
        return _Model(d, cor, list(cor), om, basis, Fraction(1), central=1, name=f"GL{d}")
    basis = om_sc if variant == "adjoint" else list(cor)
    return _Model(d, cor, list(cor), om_sc, basis, Fraction(1), name=("PGL" if variant == "adjoint" else "SL") + str(d))


def _model_B(n: int, variant: str) -> _Model:
    cor = [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_e(n, (n - 1, 2))]
    rts = [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_e(n, (n - 1, 1))]
    om = [_e(n, *[(k, 1) for k in range(i + 1)]) for i in range(n)]
    basis = om if variant == "adjoint" else list(cor)
    return _Model(n, cor, rts, om, basis, Fraction(1), name=f"Spin{2 * n + 1}")


def _model_C(n: int, variant: str) -> _Model:
    d = 2 * n
    cor = [_e(d, (i, 1), (i + 1, -1), (n + i + 1, 1), (n + i, -1)) for i in range(n - 1)]
    cor.append(_e(d, (n - 1, 1), (d - 1, -1)))
    rts = [_e(d, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_e(d, (n - 1, 1), (d - 1, -1))]
    om = [_e(d, *[(k, 1) for k in range(i + 1)], *[(n + k, -1) for k in range(i + 1)]) for i in range(n - 1)]
    if variant == "GL":
        om.append(_e(d, *[(k, 1) for k in range(n)]))
        basis = [_e(d, (i, 1), (n + i, -1)) for i in range(n)] + [_e(d, *[(n + k, 1) for k in range(n)])]
        return _Model(d, cor, rts, om, basis, Fraction(1), central=1, name=f"GSp{d}")
    om.append(tuple(Fraction(1, 2) if k < n else Fraction(-1, 2) for k in range(d)))
    basis = om if variant == "adjoint" else list(cor)
    return _Model(d, cor, rts, om, basis, Fraction(1), name=f"Sp{d}")


def _model_D(n: int, variant: str) -> _Model:
    cor = [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_e(n, (n - 2, 1), (n - 1, 1))]
    om = [_e(n, *[(k, 1) for k in range(i + 1)]) for i in range(n - 2)]
    half = Fraction(1, 2)
    om.append(tuple([half] * (n - 1) + [-half]))
    om.append(tuple([half] * n))
    basis = om if variant == "adjoint" else list(cor)
    return _Model(n, cor, list(cor), om, basis, Fraction(1), name=f"Spin{2 * n}")


def _model_G(n: int, variant: str) -> _Model:
    cor = [_e(3, (0, 1), (1, -1)), _e(3, (0, -2), (1, 1), (2, 1))]
    rts = [_e(3, (0, 1), (1, -1)), _e(3, (0, -1))]
    om = [_e(3, (1, -1), (2, 1)), _e(3, (0, -1), (1, -1), (2, 2))]
    return _Model(3, cor, rts, om, list(cor), Fraction(1), name="G2")


def _model_F(n: int, variant: str) -> _Model:
    h = Fraction(1, 2)
    cor = [(h, -h, -h, -h), _e(4, (3, 1)), _e(4, (2, 1), (3, -1)), _e(4, (1, 1), (2, -1))]
    rts = [_e(4, (0, 1), (1, -1), (2, -1), (3, -1)), _e(4, (3, 2)), _e(4, (2, 1), (3, -1)), _e(4, (1, 1), (2, -1))]
    om = [_e(4, (0, 1)), (Fraction(3, 2), h, h, h), _e(4, (0, 2), (1, 1), (2, 1)), _e(4, (0, 1), (1, 1))]
    return _Model(4, cor, rts, om, list(cor), Fraction(2), name="F4")


def _model_E(n: int, variant: str) -> _Model:
    h = Fraction(1, 2)
    allc = [(h, -h, -h, -h, -h, -h, -h, h), _e(8, (0, 1), (1, 1))]
    allc += [_e(8, (k, 1), (k - 1, -1)) for k in range(1, 7)]
    cor = allc[:n]
    A = [[int(la.dot(a, b)) for b in cor] for a in cor]
    om = [tuple(la.vec_mat(row, cor)) for row in la.inverse(A)]
    basis = om if variant == "adjoint" else list(cor)
    return _Model(8, cor, list(cor), om, basis, Fraction(1), name=f"E{n}")


_MODELS = {"A": _model_A, "B": _model_B, "C": _model_C, "D": _model_D, "E": _model_E, "F": _model_F, "G": _model_G}


# ------------------------------------------------------------------ datum


class RootDatum:
    """An immutable based root datum in an explicit ambient model.

    Use :func:`build` rather than calling the constructor directly.
    """

    def __init__(
        self,
        ambient_dim: int,
        basis: Sequence[Sequence],
        coroots: Sequence[Sequence],
        roots: Sequence[Sequence],
        omegas: Sequence[Sequence],
        factors: Sequence[tuple[str, int]] = (),
        factor_nodes: Sequence[Sequence[int]] = (),
        ambient_form: Sequence[Sequence] | None = None,
        factor_forms: Sequence[Sequence[Sequence]] = (),
        central_rank: int = 0,
        name: str = "",
        isogeny: str = "sc",
    ):
        self.ambient_dim = ambient_dim
        self.basis = tuple(la.frac_vec(b) for b in basis)
        self.coroot_vecs = tuple(la.frac_vec(a) for a in coroots)
        self.root_vecs = tuple(la.frac_vec(a) for a in roots)
        self.omega_vecs = tuple(la.frac_vec(a) for a in omegas)
        self.factors = tuple(factors)
        self.factor_nodes = tuple(tuple(x) for x in factor_nodes)
        self.ambient_form = ambient_form
        self.factor_forms = tuple(factor_forms)
        self.central_rank = central_rank
        self.name = name
        self.isogeny = isogeny
        self.rank = len(self.coroot_vecs)
        self.lattice_dim = len(self.basis)
        self._validate()

    # -- construction checks

    def _validate(self) -> None:
        r = self.rank
        if la.rank(self.basis) != self.lattice_dim:
            raise ValueError("lattice basis is not independent")
        cart = []
        for a in self.coroot_vecs:
            row = [la.dot(a, b) for b in self.root_vecs]
            if not la.is_integral(row):
                raise ValueError("pairing of coroots and roots is not integral")
            cart.append(tuple(int(x) for x in row))
        self.cartan = tuple(cart)
        for i in range(r):
            if self.cartan[i][i] != 2:
                raise ValueError("Cartan diagonal must be 2")
            for j in range(r):
                if i != j and self.cartan[i][j] > 0:
                    raise ValueError("Cartan off-diagonal entries must be <= 0")
                if (self.cartan[i][j] == 0) != (self.cartan[j][i] == 0):
                    raise ValueError("Cartan zero pattern must be symmetric")
        if r and la.rank(self.coroot_vecs) != r:
            raise ValueError("simple coroots are not independent")
        # coroots in the lattice, roots integral on the lattice
        self.coroot_lattice_coords = tuple(self._basis_coords_int(a) for a in self.coroot_vecs)
        rd = []
        for a in self.root_vecs:
            vals = [la.dot(b, a) for b in self.basis]
            if not la.is_integral(vals):
                raise ValueError("simple root is not integral on the lattice")
            rd.append(tuple(int(x) for x in vals))
        self.root_dual_coords = tuple(rd)
        for w in self.omega_vecs:
            labels = [la.dot(w, a) for a in self.root_vecs]
            if len(self.omega_vecs) == r and not la.is_integral(labels):
                raise ValueError("fundamental coweight labels not integral")
        for k, w in enumerate(self.omega_vecs):
            for j, a in enumerate(self.root_vecs):
                if la.dot(w, a) != (1 if j == k else 0):
                    raise ValueError("fundamental coweights are not dual to the simple roots")
        # declared types match
        found = sorted((l if l != "C" or n > 2 else "B", n) for l, n, _ in classify(self.cartan))
        want = sorted((l if l != "C" or n > 2 else "B", n) for l, n in self.factors)
        if self.factors and found != want:
            raise ValueError(f"Cartan matrix has type {found}, declared {want}")
        for l, n, comp in classify(self.cartan):
            sub = [[self.cartan[a][b] for b in comp] for a in comp]
            if not _same_up_to_permutation(sub, standard_cartan(l, n)):
                raise ValueError(f"component {l}{n} does not match its Cartan matrix")
        # <alpha_i, 2 rho^vee> = 2
        two_rho = [0] * r
        for c in self.positive_roots:
            two_rho = [x + y for x, y in zip(two_rho, c)]
        for i in range(r):
            if sum(two_rho[k] * self.cartan[i][k] for k in range(r)) != 2:
                raise ValueError("rho pairing check failed")

    def _basis_coords_int(self, v) -> tuple[int, ...]:
        c = la.solve_left(self.basis, v)
        if c is None or not la.is_integral(c):
            raise NotInLattice(f"{v} is not in the coweight lattice")
        return la.int_vec(c)

    # -- derived data

    @cached_property
    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        """Positive roots of G in simple-root coordinates."""
        return self._closure(lambda c, i: sum(c[k] * self.cartan[i][k] for k in range(self.rank)))

    @cached_property
    def positive_coroots(self) -> tuple[tuple[int, ...], ...]:
        """Positive coroots of G in simple-coroot coordinates."""
        return self._closure(lambda c, i: sum(c[k] * self.cartan[k][i] for k in range(self.rank)))

    def _closure(self, pairing) -> tuple[tuple[int, ...], ...]:
        r = self.rank
        start = [tuple(1 if k == i else 0 for k in range(r)) for i in range(r)]
        seen = set(start)
        queue = deque(start)
        while queue:
            c = queue.popleft()
            for i in range(r):
                p = pairing(c, i)
                d = list(c)
                d[i] -= p
                d = tuple(d)
                if all(x >= 0 for x in d) and any(d) and d not in seen:
                    seen.add(d)
                    queue.append(d)
        return tuple(sorted(seen, key=lambda c: (sum(c), c)))

    @cached_property
    def positive_coroot_labels(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.labels_of_coroot_combo(c) for c in self.positive_coroots)

    def labels_of_coroot_combo(self, c: Sequence[int]) -> tuple[int, ...]:
        """Labels of sum_i c_i alpha_i."""
        r = self.rank
        return tuple(sum(c[k] * self.cartan[k][j] for k in range(r)) for j in range(r))

    @cached_property
    def weyl_group_order(self) -> int:
        out = 1
        for l, n, _ in classify(self.cartan):
            out *= weyl_order(l, n)
        return out

    @cached_property
    def w0_word(self) -> tuple[int, ...]:
        """Lexicographically minimal reduced word of the longest element (0-based nodes)."""
        l = [1] * self.rank
        word = []
        while True:
            i = next((k for k in range(self.rank) if l[k] > 0), None)
            if i is None:
                return tuple(word)
            l = list(self.reflect_labels(l, i))
            word.append(i)

    @cached_property
    def symmetrizer(self) -> tuple[int, ...]:
        """Minimal positive d_i with d_i A[j][i] = d_j A[i][j] on each component.

        The form S_ij = d_j A[i][j] on the simple coroots is then W-invariant
        with (alpha_i, alpha_i) = 2 d_i.
        """
        A = self.cartan
        d: list = [None] * self.rank
        for _, _, comp in classify(A):
            d[comp[0]] = Fraction(1)
            stack = [comp[0]]
            while stack:
                i = stack.pop()
                for j in comp:
                    if A[i][j] and d[j] is None:
                        d[j] = d[i] * A[j][i] / A[i][j]
                        stack.append(j)
            den = 1
            for i in comp:
                den = den * d[i].denominator // gcd(den, d[i].denominator)
            vals = [int(d[i] * den) for i in comp]
            g = la.vgcd(vals)
            for i, v in zip(comp, vals):
                d[i] = v // g
        return tuple(d)

    @cached_property
    def inverse_cartan(self) -> list[tuple[Fraction, ...]]:
        return la.inverse(self.cartan)

    @cached_property
    def center_basis(self) -> list[tuple[int, ...]]:
        """Basis (lattice coordinates) of the central part {x in L : labels 0}."""
        _, ker = la.solve_int_left(self.root_dual_coords_T, (0,) * self.rank)
        return la.hnf(ker)

    @cached_property
    def root_dual_coords_T(self) -> list[tuple[int, ...]]:
        """Matrix P with (lattice coords)·P = labels."""
        return la.transpose(self.root_dual_coords)

    # -- coordinates

    def weight(self, vec: Iterable, lattice: str = "L") -> Weight:
        w = Weight(tuple(vec), lattice)
        if len(w.coords) != self.ambient_dim:
            raise ValueError(f"expected {self.ambient_dim} coordinates")
        if lattice in ("L", "L_ad") and not self.in_lattice(w, lattice):
            raise NotInLattice(f"{w} is not in {lattice}")
        return w

    def from_basis(self, c: Sequence, lattice: str = "L") -> Weight:
        return Weight(la.vec_mat([Fraction(x) for x in c], self.basis), lattice)

    def to_basis(self, w: Weight) -> tuple[Fraction, ...]:
        c = la.solve_left(self.basis, w.coords)
        if c is None:
            raise NotInLattice(f"{w} is not in the span of the coweight lattice")
        return c

    def in_lattice(self, w: Weight, lattice: str = "L") -> bool:
        c = la.solve_left(self.basis, w.coords)
        if c is None:
            return False
        if lattice == "L":
            return la.is_integral(c)
        if lattice == "L_ad":
            D, H = self._ad_hnf
            v = [x * D for x in w.coords]
            return la.is_integral(v) and la.in_lattice(la.int_vec(v), H)
        raise ValueError(lattice)

    @cached_property
    def _ad_hnf(self) -> tuple[int, list[tuple[int, ...]]]:
        gens = list(self.basis) + list(self.omega_vecs)
        D = 1
        for g in gens:
            for x in g:
                D = D * x.denominator // gcd(D, x.denominator)
        return D, la.hnf([la.int_vec(x * D for x in g) for g in gens])

    def _basis_coords_frac(self, v) -> tuple[Fraction, ...]:
        c = la.solve_left(self.basis, v)
        if c is None:
            raise NotInLattice(f"{v} is outside the lattice span")
        return c

    def labels(self, w: Weight) -> tuple:
        """Dynkin labels <w, alpha_j^vee>, as ints when integral."""
        out = []
        for a in self.root_vecs:
            x = la.dot(w.coords, a)
            out.append(int(x) if x.denominator == 1 else x)
        return tuple(out)

    def coroot_coords(self, w: Weight) -> tuple[Fraction, ...] | None:
        """Coordinates of w along the simple coroots, None if outside their span."""
        return la.solve_left(self.coroot_vecs, w.coords)

    def pair(self, w: Weight, cov: Weight) -> Fraction:
        """Pairing of a coweight with a covector given in Lv coordinates."""
        if cov.lattice != "Lv":
            raise LatticeMismatch("second argument must be a covector")
        return la.dot(self.to_basis(w), cov.coords)

    def simple_coroot(self, i: int, lattice: str = "L") -> Weight:
        return Weight(self.coroot_vecs[i], lattice)

    def simple_root(self, i: int) -> Weight:
        """The simple root as a covector (values on the lattice basis)."""
        return Weight(self.root_dual_coords[i], "Lv")

    def coroot_combo(self, c: Sequence, lattice: str = "L") -> Weight:
        return Weight(la.vec_mat([Fraction(x) for x in c], self.coroot_vecs), lattice)

    # -- Weyl group

    def reflect_labels(self, l: Sequence, i: int) -> tuple:
        li = l[i]
        if not li:
            return tuple(l)
        row = self.cartan[i]
        return tuple(a - li * b for a, b in zip(l, row))

    def reflect(self, w: Weight, i: int) -> Weight:
        li = la.dot(w.coords, self.root_vecs[i])
        return Weight(la.vsub(w.coords, la.vscale(li, self.coroot_vecs[i])), w.lattice)

    def dominant_rep_labels(self, l: Sequence) -> tuple[tuple, tuple, int]:
        """Reflect labels to the dominant chamber.

        Returns (dominant labels, shift, length) where ``shift`` is the coroot
        vector c with dominant = x + sum c_i alpha_i, and ``length`` the number
        of reflections used (its parity is the sign of the Weyl element).
        """
        l = list(l)
        shift = [0] * self.rank
        length = 0
        while True:
            i = next((k for k in range(self.rank) if l[k] < 0), None)
            if i is None:
                return tuple(l), tuple(shift), length
            li = l[i]
            shift[i] -= li
            row = self.cartan[i]
            l = [a - li * b for a, b in zip(l, row)]
            length += 1

    def is_dominant(self, w: Weight) -> bool:
        return all(x >= 0 for x in self.labels(w))

    def dominance_leq(self, mu: Weight, lam: Weight) -> bool:
        """True iff lam - mu is a nonnegative integer combination of simple coroots."""
        diff = lam - mu
        c = self.coroot_coords(diff)
        return c is not None and la.is_integral(c) and all(x >= 0 for x in c)

    def w0_act(self, w: Weight) -> Weight:
        for i in self.w0_word:
            w = self.reflect(w, i)
        return w

    def orbit_size_dominant(self, dom_labels: Sequence) -> int:
        stab = [k for k in range(self.rank) if dom_labels[k] == 0]
        return self.weyl_group_order // parabolic_order(self.cartan, stab)

    def orbit_labels(self, l: Sequence, cap: int = DEFAULT_ORBIT_CAP) -> dict[tuple, tuple[int, ...]]:
        """W-orbit of the labels l as a map drop -> labels.

        The drop of an orbit element y is the integer coroot vector c with
        x - y = sum c_i alpha_i, where x is the starting element.
        """
        dom, _, _ = self.dominant_rep_labels(l)
        size = self.orbit_size_dominant(dom)
        if size > cap:
            raise CapExceeded("weyl orbit", size, cap)
        start = (0,) * self.rank
        seen = {start: tuple(l)}
        queue = deque([start])
        r = self.rank
        cart = self.cartan
        while queue:
            d = queue.popleft()
            lab = seen[d]
            for i in range(r):
                li = lab[i]
                if li == 0:
                    continue
                nd = list(d)
                nd[i] += li
                nd = tuple(nd)
                if nd not in seen:
                    row = cart[i]
                    seen[nd] = tuple(a - li * b for a, b in zip(lab, row))
                    queue.append(nd)
        if len(seen) != size:
            raise AssertionError("orbit size disagrees with the stabilizer count")
        return seen

    def weyl_orbit(self, w: Weight, cap: int = DEFAULT_ORBIT_CAP) -> set[Weight]:
        l = self.labels(w)
        orb = self.orbit_labels(l, cap)
        out = set()
        for d in orb:
            out.add(Weight(la.vsub(w.coords, la.vec_mat(d, self.coroot_vecs)), w.lattice))
        return out

    # -- fundamental coweights

    def fundamental_coweights(self) -> list[Weight]:
        out = []
        for v in self.omega_vecs:
            w = Weight(v, "L")
            out.append(w if self.in_lattice(w, "L") else w.retag("L_ad"))
        return out

    def fundamental_coweight(self, i: int) -> Weight:
        return self.fundamental_coweights()[i]

    def rho_labels(self) -> tuple[int, ...]:
        return (1,) * self.rank

    # -- forms

    def ambient_gram(self, form) -> list[tuple[Fraction, ...]]:
        """Gram matrix on the lattice basis of an ambient bilinear form."""
        return [tuple(la.dot(la.vec_mat(b, form), c) for c in self.basis) for b in self.basis]

    def type_string(self) -> str:
        s = "x".join(f"{l}{n}" for l, n in self.factors) or "T"
        if self.central_rank:
            s += f"+T{self.central_rank}"
        return s

    def __repr__(self) -> str:
        return f"RootDatum({self.type_string()}, isogeny={self.isogeny!r})"


def _same_up_to_permutation(A, B) -> bool:
    from itertools import permutations

    n = len(A)
    if n != len(B):
        return False
    At = [list(r) for r in zip(*A)]
    for cand in (A, At):
        # try permutations guided by degrees; n <= 8 but use backtracking
        for perm in _iso_candidates(cand, B):
            if all(cand[perm[i]][perm[j]] == B[i][j] for i in range(n) for j in range(n)):
                return True
    return False


def _iso_candidates(A, B):
    n = len(A)
    order = []

    def rec(i, used, perm):
        if i == n:
            yield tuple(perm)
            return
        for a in range(n):
            if a in used:
                continue
            ok = all(A[perm[j]][a] == B[j][i] and A[a][perm[j]] == B[i][j] for j in range(i)) and A[a][a] == B[i][i]
            if ok:
                perm.append(a)
                used.add(a)
                yield from rec(i + 1, used, perm)
                perm.pop()
                used.discard(a)

    yield from rec(0, set(), [])


# ------------------------------------------------------------------ builder


def parse_type(name: str) -> list[tuple[str, int]]:
    """Parse ``"C3"`` or ``"A2xA1"`` into [(letter, rank), ...]."""
    out = []
    for part in name.replace("×", "x").split("x"):
        part = part.strip()
        if not part:
            continue
        letter, digits = part[0].upper(), part[1:]
        if letter not in RANK_OK or not digits.isdigit():
            raise InvalidRank(f"cannot parse type {part!r}")
        out.append((letter, int(digits)))
    if not out:
        raise InvalidRank(f"empty type {name!r}")
    return out


def build(type_list, central_rank: int = 0, isogeny: str = "sc") -> RootDatum:
    """Build a based root datum.

    ``type_list`` is a list of (letter, rank) pairs or a string such as
    ``"A2xA1"``.  A single factor of type A or C with ``central_rank=1``
    gives the general linear / general symplectic model (connected centre).
    Otherwise the simply-connected models (or ``isogeny="adjoint"``) are
    combined with ``central_rank`` orthogonal central directions.
    """
    if isinstance(type_list, str):
        type_list = parse_type(type_list)
    type_list = [(str(l).upper(), int(n)) for l, n in type_list]
    if central_rank < 0:
        raise InvalidRank("central_rank must be nonnegative")
    if isogeny not in ("sc", "adjoint"):
        raise ValueError("isogeny must be 'sc' or 'adjoint'")
    for l, n in type_list:
        if l not in RANK_OK or not RANK_OK[l](n):
            raise InvalidRank(f"rank {n} is not valid for type {l}")
    models = []
    if len(type_list) == 1 and central_rank == 1 and type_list[0][0] in "AC" and isogeny == "sc":
        l, n = type_list[0]
        models.append(_MODELS[l](n, "GL"))
        central_left = 0
    else:
        for l, n in type_list:
            models.append(_MODELS[l](n, isogeny))
        central_left = central_rank
    dim = sum(m.dim for m in models) + central_left
    basis, cor, rts, om = [], [], [], []
    factor_nodes, factor_forms = [], []
    form = [[Fraction(0)] * dim for _ in range(dim)]
    off = 0
    node = 0

    def pad(v):
        return tuple([Fraction(0)] * off + list(v) + [Fraction(0)] * (dim - off - len(v)))

    for m in models:
        basis += [pad(v) for v in m.basis]
        cor += [pad(v) for v in m.coroots]
        rts += [pad(v) for v in m.roots]
        om += [pad(v) for v in m.omegas]
        k = len(m.coroots)
        factor_nodes.append(list(range(node, node + k)))
        ff = [[Fraction(0)] * dim for _ in range(dim)]
        for t in range(m.dim):
            ff[off + t][off + t] = m.form_scale
            form[off + t][off + t] = m.form_scale
        factor_forms.append(ff)
        node += k
        off += m.dim
    for t in range(central_left):
        basis.append(tuple(Fraction(1 if s == off + t else 0) for s in range(dim)))
    name = "x".join(m.name for m in models) + (f"xT{central_left}" if central_left else "")
    return RootDatum(
        dim,
        basis,
        cor,
        rts,
        om,
        factors=type_list,
        factor_nodes=factor_nodes,
        ambient_form=form,
        factor_forms=factor_forms,
        central_rank=central_rank,
        name=name,
        isogeny=isogeny,
    )


def fundamental_coweights(rd: RootDatum) -> list[Weight]:
    return rd.fundamental_coweights()


def weyl_orbit(rd: RootDatum, lam: Weight, cap: int = DEFAULT_ORBIT_CAP) -> set[Weight]:
    return rd.weyl_orbit(lam, cap)


def dominance_leq(rd: RootDatum, mu: Weight, lam: Weight) -> bool:
    return rd.dominance_leq(mu, lam)


def is_dominant(rd: RootDatum, lam: Weight) -> bool:
    return rd.is_dominant(lam)


def w0_act(rd: RootDatum, lam: Weight) -> Weight:
    return rd.w0_act(lam)
