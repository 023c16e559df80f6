"""Bilinear and quadratic forms on the coweight lattice."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _lattice as la
from .errors import LatticeMismatch, MetawhitError, ZeroVector
from .rootdata import RootDatum, Weight


class FormError(MetawhitError, ValueError):
    code = "bad_form"


@dataclass(frozen=True)
class BilinearForm:
    """Symmetric form given by its Gram matrix on the lattice basis of ``rd``."""

    rd: RootDatum
    gram: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        g = tuple(tuple(Fraction(x) for x in row) for row in self.gram)
        n = self.rd.lattice_dim
        if len(g) != n or any(len(row) != n for row in g):
            raise FormError(f"Gram matrix must be {n}x{n}")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise FormError("Gram matrix is not symmetric")
        object.__setattr__(self, "gram", g)

    @property
    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.gram for x in row)

    @property
    def is_even(self) -> bool:
        return self.is_integral and all(self.gram[k][k] % 2 == 0 for k in range(len(self.gram)))

    def int_gram(self) -> list[tuple[int, ...]]:
        return [la.int_vec(row) for row in self.gram]

    def __call__(self, x: Weight, y: Weight) -> Fraction:
        cx, cy = self.rd.to_basis(x), self.rd.to_basis(y)
        return la.dot(la.vec_mat(cx, self.gram), cy)

    def image(self, x: Weight) -> Weight:
        """The covector kappa(x) = kappa(x, -), in Lv coordinates."""
        if x.lattice == "Lv":
            raise LatticeMismatch("kappa_map takes a coweight")
        return Weight(la.vec_mat(self.rd.to_basis(x), self.gram), "Lv")

    def image_of_coords(self, c: Sequence) -> tuple:
        return la.vec_mat(c, self.gram)

    def scaled(self, k) -> "BilinearForm":
        k = Fraction(k)
        return BilinearForm(self.rd, tuple(tuple(k * x for x in row) for row in self.gram))

    def __add__(self, other: "BilinearForm") -> "BilinearForm":
        return BilinearForm(self.rd, tuple(la.vadd(a, b) for a, b in zip(self.gram, other.gram)))

    def __neg__(self) -> "BilinearForm":
        return self.scaled(-1)

    def on_coroots(self) -> list[tuple[Fraction, ...]]:
        """Gram matrix on the simple coroots."""
        C = self.rd.coroot_lattice_coords
        return la.mat_mul(la.mat_mul(C, self.gram), la.transpose(C))


@dataclass(frozen=True)
class QuadraticForm:
    """varrho(mu) = kbar(mu, mu) / 2N."""

    kbar: BilinearForm
    N: int

    def __post_init__(self):
        if int(self.N) != self.N or self.N <= 0:
            raise FormError("N must be a positive integer")

    def __call__(self, mu: Weight) -> Fraction:
        return self.kbar(mu, mu) / (2 * self.N)


# ------------------------------------------------------------------ builders


def zero_form(rd: RootDatum) -> BilinearForm:
    n = rd.lattice_dim
    return BilinearForm(rd, tuple((Fraction(0),) * n for _ in range(n)))


def roots_of_factor(rd: RootDatum, j: int) -> list[tuple[int, ...]]:
    """Positive roots of factor j as covectors (Lv coordinates)."""
    nodes = set(rd.factor_nodes[j])
    out = []
    for c in rd.positive_roots:
        if all(c[k] == 0 for k in range(rd.rank) if k not in nodes):
            out.append(la.vec_mat(c, rd.root_dual_coords))
    return out


def killing_form(rd: RootDatum, j: int) -> BilinearForm:
    """kappa_j = sum over all roots of factor j of the square of the root."""
    if not 0 <= j < len(rd.factor_nodes):
        raise FormError(f"no factor with index {j}")
    n = rd.lattice_dim
    g = [[0] * n for _ in range(n)]
    for r in roots_of_factor(rd, j):
        for a in range(n):
            for b in range(n):
                g[a][b] += 2 * r[a] * r[b]
    return BilinearForm(rd, tuple(tuple(row) for row in g))


def normalized_form(rd: RootDatum, j: int | None = None) -> BilinearForm:
    """The fixed W-invariant form of the coordinate model (short coroots of norm 2
    in types A, B, C, D, E, G; norm 2 for the short coroots of F4 too)."""
    if j is None:
        if rd.ambient_form is None:
            raise FormError("this datum has no model form")
        return BilinearForm(rd, tuple(tuple(r) for r in rd.ambient_gram(rd.ambient_form)))
    return BilinearForm(rd, tuple(tuple(r) for r in rd.ambient_gram(rd.factor_forms[j])))


def killing_ratio(rd: RootDatum, j: int) -> Fraction:
    """The scalar r_j with kappa_j = r_j * (normalized form of factor j) on coroots."""
    K = killing_form(rd, j).on_coroots()
    B = normalized_form(rd, j).on_coroots()
    i = rd.factor_nodes[j][0]
    r = Fraction(K[i][i]) / B[i][i]
    for a in rd.factor_nodes[j]:
        for b in rd.factor_nodes[j]:
            if K[a][b] != r * B[a][b]:
                raise FormError("Killing form is not proportional to the model form")
    return r


def build_barkappa(rd: RootDatum, beta: BilinearForm | None, c: Sequence) -> BilinearForm:
    """kbar = -beta - sum_j c_j kappa_j.

    ``beta`` must vanish on the coroots (it is pulled back from the
    abelianization) and be even; ``c`` may contain rationals as long as the
    result is an even integral form.
    """
    if beta is None:
        beta = zero_form(rd)
    if len(c) != len(rd.factor_nodes):
        raise FormError("need one coefficient per simple factor")
    if not beta.is_even:
        raise FormError("beta must be even")
    C = rd.coroot_lattice_coords
    for a in C:
        if any(la.vec_mat(a, beta.gram)):
            raise FormError("beta must vanish on the coroots")
    out = -beta
    for j, cj in enumerate(c):
        out = out + killing_form(rd, j).scaled(-Fraction(cj))
    if not out.is_even:
        raise FormError("resulting form is not even integral")
    return out


def barkappa_multiple(rd: RootDatum, m) -> BilinearForm:
    """kbar = m * (normalized form), built through the Killing-form constructor
    on each factor and the model form on the centre."""
    m = Fraction(m)
    if rd.lattice_dim == rd.rank:
        c = [-m / killing_ratio(rd, j) for j in range(len(rd.factor_nodes))]
        return build_barkappa(rd, None, c)
    return normalized_form(rd).scaled(m)


# ------------------------------------------------------------------ queries


def varrho(q: QuadraticForm, mu: Weight) -> Fraction:
    return q(mu)


def delta_i(q: QuadraticForm) -> tuple[int, ...]:
    """Reduced denominators of varrho(alpha_i)."""
    rd = q.kbar.rd
    return tuple(q(rd.simple_coroot(i)).denominator for i in range(rd.rank))


def kappa_map(kbar: BilinearForm, lam: Weight) -> Weight:
    return kbar.image(lam)


def divisibility_degree(rd: RootDatum, v: Weight) -> int:
    """Largest d with v/d in the weight lattice."""
    if v.lattice != "Lv":
        raise LatticeMismatch("divisibility_degree takes a covector")
    if not la.is_integral(v.coords):
        raise LatticeMismatch("covector is not in the weight lattice")
    g = la.vgcd(la.int_vec(v.coords))
    if g == 0:
        raise ZeroVector("divisibility degree of the zero covector is undefined")
    return g
