"""Property (C) search, forbidden divisors and single-witness checks.

For a node i the search space consists of the lambda > alpha_i such that
omega_i - lambda is a weight of V(omega_i).  Writing omega_i - lambda =
omega_i - sum n_j alpha_j, the drop n ranges over the Weyl orbits of the
dominant weights below omega_i, and lambda - alpha_i = sum c_j alpha_j with
c = n - e_i.  Divisibility of kbar(lambda - alpha_i) by N is then a statement
about the integer vector sum c_j kbar(alpha_j).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from . import _lattice as la
from .errors import CapExceeded, InternalInconsistency, InvalidWitness, ZeroVector
from .forms import BilinearForm
from .metaplectic import MetaplecticDatum
from .repthy import dominant_drops, is_weight_of
from .rootdata import DEFAULT_ORBIT_CAP, RootDatum, Weight

WITNESS_SWEEP_CAP = 50_000
FULL_SEARCH_BUDGET_CAP = 10**6


def _unit(r: int, i: int) -> tuple[int, ...]:
    return tuple(1 if k == i else 0 for k in range(r))


def in_budget(rd: RootDatum) -> bool:
    """Types on which a complete search is attempted."""
    for letter, n in rd.factors:
        if letter == "E":
            return False
        if n > 4 and letter not in "ABCD":
            return False
        if n > 7:
            return False
    return rd.rank <= 7


@lru_cache(maxsize=64)
def search_space(rd: RootDatum, i: int, orbit_cap: int = DEFAULT_ORBIT_CAP) -> tuple[tuple[int, ...], ...]:
    """All c = n - e_i (coroot coordinates of lambda - alpha_i) for node i, sorted."""
    r = rd.rank
    top = _unit(r, i)
    out = set()
    for n_mu in dominant_drops(rd, top):
        lab = tuple(a - b for a, b in zip(top, rd.labels_of_coroot_combo(n_mu)))
        for q in rd.orbit_labels(lab, orbit_cap):
            c = list(a + b for a, b in zip(n_mu, q))
            c[i] -= 1
            if min(c) >= 0 and any(c):
                out.add(tuple(c))
    return tuple(sorted(out, key=lambda c: (sum(c), c)))


def _small_orbit_space(rd: RootDatum, i: int, cap: int) -> tuple[list[tuple[int, ...]], bool]:
    """The part of the search space coming from dominant mu with orbits of size <= cap."""
    r = rd.rank
    top = _unit(r, i)
    out = set()
    complete = True
    for n_mu in dominant_drops(rd, top):
        lab = tuple(a - b for a, b in zip(top, rd.labels_of_coroot_combo(n_mu)))
        if rd.orbit_size_dominant(lab) > cap:
            complete = False
            continue
        for q in rd.orbit_labels(lab, cap):
            c = list(a + b for a, b in zip(n_mu, q))
            c[i] -= 1
            if min(c) >= 0 and any(c):
                out.add(tuple(c))
    return sorted(out, key=lambda c: (sum(c), c)), complete


def _kbar_on_coroots(kbar: BilinearForm) -> list[tuple[int, ...]]:
    """Rows K_j = kbar(alpha_j) in Lv coordinates."""
    return [la.vec_mat(a, kbar.int_gram()) for a in kbar.rd.coroot_lattice_coords]


@dataclass(frozen=True, order=True)
class Witness:
    node: int
    drop: tuple[int, ...]  # coroot coordinates of lambda
    lam: Weight = field(compare=False)
    image: tuple[int, ...] = field(compare=False)  # kbar(lambda - alpha_i) in Lv coordinates
    degree: int = field(compare=False)

    def to_json(self) -> dict:
        return {
            "node": self.node + 1,
            "lambda": self.lam.to_json(),
            "lambda_coroot_coords": list(self.drop),
            "kbar_lambda_minus_alpha": list(self.image),
            "divisor": self.degree,
        }


@dataclass
class PropertyCReport:
    verdict: str  # holds | fails | inconclusive
    mode: str  # full_search | witness_only
    witnesses: list[Witness]
    checked: int
    notes: list[str] = field(default_factory=list)

    def to_json(self, max_witnesses: int | None = None) -> dict:
        ws = self.witnesses if max_witnesses is None else self.witnesses[:max_witnesses]
        return {
            "verdict": self.verdict,
            "mode": self.mode,
            "checked": self.checked,
            "witness_count": len(self.witnesses),
            "witnesses": [w.to_json() for w in ws],
            "notes": list(self.notes),
        }


def _scan(md: MetaplecticDatum, i: int, space) -> list[Witness]:
    rd = md.rd
    K = _kbar_on_coroots(md.kbar)
    N = md.N
    out = []
    for c in space:
        v = la.vec_mat(c, K)
        if all(x % N == 0 for x in v):
            n = list(c)
            n[i] += 1
            lam = rd.coroot_combo(n)
            ok, deg = verify_witness(md, i, lam)
            if not ok:
                raise InternalInconsistency("witness failed ambient re-verification")
            out.append(Witness(i, tuple(n), lam, tuple(int(x) for x in md.kbar.image(lam - rd.simple_coroot(i)).coords), deg))
    return out


def _node_search(md: MetaplecticDatum, i: int, mode: str, sweep_cap: int) -> tuple[int, list[Witness], list[str], bool]:
    rd = md.rd
    notes = []
    complete = True
    if mode == "full_search":
        try:
            space = search_space(rd, i)
        except CapExceeded as exc:
            notes.append(f"node {i + 1}: {exc}")
            complete = False
            space, _ = _small_orbit_space(rd, i, sweep_cap)
    else:
        space, complete = _small_orbit_space(rd, i, sweep_cap)
    return len(space), _scan(md, i, space), notes, complete


def check_property_c(
    md: MetaplecticDatum, mode: str | None = None, sweep_cap: int = WITNESS_SWEEP_CAP, threads: int = 1
) -> PropertyCReport:
    """Search for lambda > alpha_i with omega_i - lambda a weight of V(omega_i)
    and kbar(lambda - alpha_i) divisible by N.

    ``mode`` is ``full_search`` (default when the type is within budget) or
    ``witness_only``: a sweep over the dominant mu <= omega_i with Weyl orbits
    of size at most ``sweep_cap``; this never certifies ``holds``.
    With ``threads > 1`` the nodes are searched in worker processes; the
    report does not depend on the number of workers.
    """
    rd = md.rd
    if mode is None:
        mode = "full_search" if in_budget(rd) else "witness_only"
    if mode not in ("full_search", "witness_only"):
        raise ValueError(f"unknown mode {mode!r}")
    nodes = range(rd.rank)
    if threads > 1 and rd.rank > 1:
        with ProcessPoolExecutor(max_workers=min(threads, rd.rank)) as ex:
            parts = list(ex.map(_node_search, [md] * rd.rank, nodes, [mode] * rd.rank, [sweep_cap] * rd.rank))
    else:
        parts = [_node_search(md, i, mode, sweep_cap) for i in nodes]
    witnesses = sorted(w for _, ws, _, _ in parts for w in ws)
    checked = sum(n for n, _, _, _ in parts)
    notes = [x for _, _, ns, _ in parts for x in ns]
    complete = all(c for _, _, _, c in parts)
    if witnesses:
        verdict = "fails"
    elif mode == "full_search" and complete:
        verdict = "holds"
    else:
        verdict = "inconclusive"
        if mode == "witness_only":
            notes.append("witness-only sweep: absence of witnesses is not a certificate")
    return PropertyCReport(verdict, mode if complete or mode == "witness_only" else "witness_only", witnesses, checked, notes)


def verify_witness(md: MetaplecticDatum, i: int, lam: Weight) -> tuple[bool, int]:
    """Exact divisibility of kbar(lambda - alpha_i) by N, after checking that
    lambda > alpha_i and omega_i - lambda is a weight of V(omega_i).

    Returns (divisible, divisibility degree of kbar(lambda - alpha_i)).
    """
    rd = md.rd
    if not 0 <= i < rd.rank:
        raise InvalidWitness(f"no node {i}")
    n = rd.coroot_coords(lam)
    if n is None or not la.is_integral(n):
        raise InvalidWitness(f"{lam} is not in the coroot lattice")
    n = la.int_vec(n)
    c = list(n)
    c[i] -= 1
    if min(c) < 0 or not any(c):
        raise InvalidWitness("lambda > alpha_i fails")
    if not is_weight_of(rd, _unit(rd.rank, i), n):
        raise InvalidWitness(f"omega_{i + 1} - lambda is not a weight of the fundamental representation")
    v = md.kbar.image(lam - rd.simple_coroot(i))
    vi = la.int_vec(v.coords)
    g = la.vgcd(vi)
    if g == 0:
        raise ZeroVector("kbar(lambda - alpha_i) vanishes")
    return all(x % md.N == 0 for x in vi), g


# ------------------------------------------------------------------ forbidden divisors


def _maximal(ds: set[int]) -> list[int]:
    return sorted(d for d in ds if not any(e != d and e % d == 0 for e in ds))


@dataclass
class DivisorReport:
    per_node: list[list[int]]  # maximal divisors per node
    all_degrees: list[list[int]]

    @property
    def maximal(self) -> list[int]:
        return _maximal({d for ds in self.per_node for d in ds})

    def condition_holds(self, m: int, N: int) -> bool:
        """Property (C) for kbar = m kappa at level N."""
        return all((d * m) % N for d in self.maximal)

    def to_json(self) -> dict:
        return {
            "per_node": [{"node": i + 1, "maximal": ds, "all": al} for i, (ds, al) in enumerate(zip(self.per_node, self.all_degrees))],
            "maximal": self.maximal,
        }


def forbidden_divisors(rd: RootDatum, kappa: BilinearForm) -> DivisorReport:
    """Divisibility degrees of kappa(lambda - alpha_i) over the search space.

    For kbar = m kappa, N divides kbar(lambda - alpha_i) iff N | d m where d is
    the degree, so Property (C) is equivalent to d m not in N Z for every
    maximal d.
    """
    if not in_budget(rd):
        raise CapExceeded("full-search budget (rank <= 4, or classical rank <= 7)", rd.rank, 4)
    K = _kbar_on_coroots(kappa)
    per, alls = [], []
    for i in range(rd.rank):
        ds = set()
        for c in search_space(rd, i):
            g = la.vgcd(la.vec_mat(c, K))
            if g == 0:
                raise ZeroVector("kappa vanishes on an element of the search space")
            ds.add(g)
        alls.append(sorted(ds))
        per.append(_maximal(ds))
    return DivisorReport(per, alls)


# ------------------------------------------------------------------ subtop


@dataclass
class SubtopReport:
    hypothesis: list[bool]  # varrho(alpha_i) not in Z, per node
    varrho: list[str]
    property_c: PropertyCReport
    subtop: str

    def to_json(self) -> dict:
        return {
            "hypothesis_varrho_not_integral": self.hypothesis,
            "varrho_alpha": self.varrho,
            "property_c": self.property_c.to_json(max_witnesses=5),
            "subtop": self.subtop,
        }


def subtop_report(md: MetaplecticDatum, mode: str | None = None) -> SubtopReport:
    """Hypothesis check, Property (C) verdict and the one-way implication
    (C) => subtop cohomology property."""
    rd = md.rd
    vals = [md.q(rd.simple_coroot(i)) for i in range(rd.rank)]
    hyp = [v.denominator != 1 for v in vals]
    rep = check_property_c(md, mode)
    if not all(hyp):
        status = "unknown: varrho(alpha_i) is integral for some node"
    elif rep.verdict == "holds":
        status = "certified"
    elif rep.verdict == "fails":
        status = "unknown: (C)-route unavailable"
    else:
        status = "unknown: (C) search inconclusive"
    return SubtopReport(hyp, [str(v) for v in vals], rep, status)


def varrho_condition(md: MetaplecticDatum, ks: tuple[int, ...]) -> bool:
    """varrho(alpha_i) not in (1/k)Z for every node i and every k in ``ks``."""
    rd = md.rd
    for i in range(rd.rank):
        v = md.q(rd.simple_coroot(i))
        for k in ks:
            if (v * k).denominator == 1:
                return False
    return True

