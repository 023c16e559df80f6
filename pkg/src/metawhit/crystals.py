"""Littelmann paths for B(lambda), string coordinates and stable elements.

A path is a tuple of segments ``(direction, length)``: the direction is an
element of the orbit W.lambda, recorded by its drop from lambda.  Lengths are
positive integers summing to ``D``, the lcm of the nonzero pairings of
lambda with the positive coroots; every breakpoint of an LS path of shape
lambda lies in (1/D)Z, so time is measured in units of 1/D and heights in
units of 1/D as well.  Adjacent segments never share a direction.  Only
Dynkin labels enter the computations, so a crystal is determined by the root
datum and the labels of its highest weight.

Nodes are 0-based throughout the library.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import CapExceeded, InternalInconsistency, NotDominant, WordNotReduced
from .repthy import is_weight_of, weyl_dim_labels
from .rootdata import RootDatum, Weight

DEFAULT_CRYSTAL_CAP = 200_000

Path = tuple  # tuple[tuple[tuple[int, ...], int], ...]


def _exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise InternalInconsistency("path breakpoint outside the expected grid")
    return q


class LSCrystal:
    """The crystal B(lambda) for dominant labels ``lam``."""

    def __init__(self, rd: RootDatum, lam: Sequence[int]):
        lam = tuple(int(x) for x in lam)
        if len(lam) != rd.rank or min(lam, default=0) < 0:
            raise NotDominant(f"labels {lam} are not dominant")
        self.rd = rd
        self.lam = lam
        self.orbit = rd.orbit_labels(lam)
        D = 1
        for c in rd.positive_roots:
            v = sum(a * b for a, b in zip(c, lam))
            if v:
                D = math.lcm(D, v)
        self.D = D
        self.highest: Path = (((0,) * rd.rank, D),)

    # -- statistics (heights are scaled by D)

    def _heights(self, path: Path, i: int) -> list[int]:
        h = 0
        out = [0]
        orb = self.orbit
        for d, ln in path:
            h += ln * orb[d][i]
            out.append(h)
        return out

    def epsilon(self, path: Path, i: int) -> int:
        return _exact_div(-min(self._heights(path, i)), self.D)

    def phi(self, path: Path, i: int) -> int:
        hs = self._heights(path, i)
        return _exact_div(hs[-1] - min(hs), self.D)

    def drop(self, path: Path) -> tuple[int, ...]:
        tot = [0] * self.rd.rank
        for d, ln in path:
            for k, x in enumerate(d):
                tot[k] += ln * x
        return tuple(_exact_div(x, self.D) for x in tot)

    def labels(self, path: Path) -> tuple[int, ...]:
        sub = self.rd.labels_of_coroot_combo(self.drop(path))
        return tuple(a - b for a, b in zip(self.lam, sub))

    # -- root operators

    def _reflect_dir(self, d: tuple[int, ...], i: int) -> tuple[int, ...]:
        li = self.orbit[d][i]
        nd = list(d)
        nd[i] += li
        return tuple(nd)

    @staticmethod
    def _times(path: Path) -> list[int]:
        ts = [0]
        for _, ln in path:
            ts.append(ts[-1] + ln)
        return ts

    def f(self, path: Path, i: int) -> Path | None:
        D = self.D
        orb = self.orbit
        hs = self._heights(path, i)
        lo = min(hs)
        if hs[-1] - lo < D:
            return None
        # last breakpoint at the minimum, then the first later crossing of lo + D
        k = max(j for j, h in enumerate(hs) if h == lo)
        t0 = sum(ln for _, ln in path[:k])
        t = t0
        for j in range(k, len(path)):
            if hs[j + 1] >= lo + D:
                t1 = t + _exact_div(lo + D - hs[j], orb[path[j][0]][i])
                break
            t += path[j][1]
        return self._reflect_windows(path, i, [(t0, t1)])

    def e(self, path: Path, i: int) -> Path | None:
        D = self.D
        orb = self.orbit
        hs = self._heights(path, i)
        lo = min(hs)
        if lo > -D:
            return None
        # first breakpoint at the minimum, then the last earlier crossing of lo + D
        k = hs.index(lo)
        t1 = sum(ln for _, ln in path[:k])
        t = t1
        for j in range(k - 1, -1, -1):
            t -= path[j][1]
            if hs[j] >= lo + D:
                t0 = t + _exact_div(lo + D - hs[j], orb[path[j][0]][i])
                break
        return self._reflect_windows(path, i, [(t0, t1)])

    def _crossings(self, path: Path, i: int, lo: int, hi: int) -> dict[int, list[int]]:
        """Sorted times at which the i-height takes each integer value in [lo, hi]."""
        D = self.D
        hs = self._heights(path, i)
        ts = self._times(path)
        out: dict[int, set] = {L: set() for L in range(lo, hi + 1)}
        for k in range(len(path)):
            a, b = hs[k], hs[k + 1]
            if a == b:
                if a % D == 0 and lo <= a // D <= hi:
                    out[a // D].update((ts[k], ts[k + 1]))
                continue
            slope = self.orbit[path[k][0]][i]
            first = max(lo, -((-min(a, b)) // D))
            last = min(hi, max(a, b) // D)
            for L in range(first, last + 1):
                out[L].add(ts[k] + _exact_div(L * D - a, slope))
        return {L: sorted(v) for L, v in out.items()}

    def f_pow(self, path: Path, i: int, k: int) -> Path | None:
        """f_i^k in one pass.

        With m the minimum of the i-height h, f_i^k reflects the windows
        [s_j, e_j], j < k, where s_j is the last time h = m + j and e_j the
        first later time h = m + j + 1; the windows are disjoint.
        """
        if k == 0:
            return path
        hs = self._heights(path, i)
        m = _exact_div(min(hs), self.D)
        if hs[-1] - m * self.D < k * self.D:
            return None
        cr = self._crossings(path, i, m, m + k)
        wins = []
        for j in range(k):
            s0 = cr[m + j][-1]
            s1 = next(t for t in cr[m + j + 1] if t > s0)
            wins.append((s0, s1))
        return self._reflect_windows(path, i, wins)

    def e_pow(self, path: Path, i: int, k: int) -> Path | None:
        """e_i^k in one pass (mirror image of :meth:`f_pow`)."""
        if k == 0:
            return path
        hs = self._heights(path, i)
        m = _exact_div(min(hs), self.D)
        if -m < k:
            return None
        cr = self._crossings(path, i, m, m + k)
        wins = []
        for j in range(k):
            t1 = cr[m + j][0]
            t0 = max(t for t in cr[m + j + 1] if t < t1)
            wins.append((t0, t1))
        return self._reflect_windows(path, i, sorted(wins))

    def _reflect_windows(self, path: Path, i: int, wins: list[tuple[int, int]]) -> Path:
        """Reflect by s_i on each of the disjoint time windows, sorted by start."""
        wins = [w for w in wins if w[1] > w[0]]
        cuts = sorted({t for w in wins for t in w})
        out: list = []
        s = 0
        c = w = 0
        for d, ln in path:
            end = s + ln
            pts = [s]
            while c < len(cuts) and cuts[c] <= s:
                c += 1
            while c < len(cuts) and cuts[c] < end:
                pts.append(cuts[c])
                c += 1
            pts.append(end)
            for lo, hi in zip(pts, pts[1:]):
                while w < len(wins) and wins[w][1] <= lo:
                    w += 1
                refl = w < len(wins) and wins[w][0] <= lo
                nd = self._reflect_dir(d, i) if refl else d
                if out and out[-1][0] == nd:
                    out[-1] = (nd, out[-1][1] + hi - lo)
                else:
                    out.append((nd, hi - lo))
            s = end
        return tuple(out)

    # -- enumeration

    def elements(self, bound: Sequence[int] | None = None, cap: int = DEFAULT_CRYSTAL_CAP) -> list[Path]:
        """All paths, or those whose drop is <= ``bound`` coordinatewise."""
        if bound is None:
            size = weyl_dim_labels(self.rd, self.lam)
            if size > cap:
                raise CapExceeded("crystal", size, cap)
        seen = {self.highest: (0,) * self.rd.rank}
        queue = deque([self.highest])
        r = self.rd.rank
        while queue:
            p = queue.popleft()
            dp = seen[p]
            for i in range(r):
                if bound is not None and dp[i] + 1 > bound[i]:
                    continue
                q = self.f(p, i)
                if q is not None and q not in seen:
                    nd = list(dp)
                    nd[i] += 1
                    seen[q] = tuple(nd)
                    queue.append(q)
                    if len(seen) > cap:
                        raise CapExceeded("crystal", len(seen), cap)
        return sorted(seen, key=lambda p: (sum(seen[p]), seen[p], p))

    def apply_f_word(self, path: Path, word: Sequence[int], powers: Sequence[int]) -> Path | None:
        """f_{w_1}^{a_1} ... f_{w_N}^{a_N} path (rightmost factor acts first)."""
        for i, a in zip(reversed(word), reversed(powers)):
            path = self.f_pow(path, i, a)
            if path is None:
                return None
        return path

    def string_coords(self, path: Path, word: Sequence[int]) -> tuple[int, ...]:
        out = []
        for i in word:
            a = self.epsilon(path, i)
            path = self.e_pow(path, i, a)
            out.append(a)
        if path != self.highest:
            raise InternalInconsistency("raising along the word did not reach the highest path")
        return tuple(out)


@lru_cache(maxsize=4096)
def crystal(rd: RootDatum, lam: tuple[int, ...]) -> LSCrystal:
    return LSCrystal(rd, lam)


# ------------------------------------------------------------------ elements


@dataclass(frozen=True)
class CrystalElement:
    """An element of B(lambda); statistics are computed on demand."""

    cr: LSCrystal = field(compare=False, repr=False)
    path: Path = ()
    lam: tuple[int, ...] = ()

    @property
    def drop(self) -> tuple[int, ...]:
        return self.cr.drop(self.path)

    @property
    def labels(self) -> tuple[int, ...]:
        return self.cr.labels(self.path)

    def wt(self, top: Weight) -> Weight:
        """The weight, given the highest weight ``top`` with the crystal's labels."""
        from . import _lattice as la

        return Weight(la.vsub(top.coords, la.vec_mat(self.drop, self.cr.rd.coroot_vecs)), top.lattice)

    def epsilon(self, i: int) -> int:
        return self.cr.epsilon(self.path, i)

    def phi(self, i: int) -> int:
        return self.cr.phi(self.path, i)

    def f(self, i: int) -> "CrystalElement | None":
        q = self.cr.f(self.path, i)
        return None if q is None else CrystalElement(self.cr, q, self.lam)

    def e(self, i: int) -> "CrystalElement | None":
        q = self.cr.e(self.path, i)
        return None if q is None else CrystalElement(self.cr, q, self.lam)

    def string_coords(self, word: Sequence[int] | None = None) -> tuple[int, ...]:
        return string_coords(self, word)


def _labels_of(rd: RootDatum, lam) -> tuple[int, ...]:
    if isinstance(lam, Weight):
        l = rd.labels(lam)
    else:
        l = tuple(lam)
    if any(not isinstance(x, int) or x < 0 for x in l):
        raise NotDominant(f"{lam} is not dominant")
    return tuple(l)


def enumerate_B(rd: RootDatum, lam, cap: int = DEFAULT_CRYSTAL_CAP) -> list[CrystalElement]:
    l = _labels_of(rd, lam)
    cr = crystal(rd, l)
    return [CrystalElement(cr, p, l) for p in cr.elements(cap=cap)]


def check_reduced_w0(rd: RootDatum, word: Sequence[int]) -> None:
    """Raise WordNotReduced unless ``word`` is a reduced word of w0."""
    v = [1] * rd.rank
    for i in word:
        if not 0 <= i < rd.rank or v[i] <= 0:
            raise WordNotReduced(f"{tuple(word)} is not reduced")
        v = list(rd.reflect_labels(v, i))
    if len(word) != len(rd.positive_roots):
        raise WordNotReduced(f"{tuple(word)} is reduced but not a word for w0")


def string_coords(b: CrystalElement, word: Sequence[int] | None = None) -> tuple[int, ...]:
    rd = b.cr.rd
    word = rd.w0_word if word is None else tuple(word)
    check_reduced_w0(rd, word)
    return b.cr.string_coords(b.path, word)


# ------------------------------------------------------------------ stable elements


@dataclass(frozen=True, order=True)
class StableElement:
    """An element of B_g(nu), identified by its e-string coordinates for ``word``."""

    nu: tuple[int, ...]
    strings: tuple[int, ...]
    word: tuple[int, ...]
    rd: RootDatum = field(compare=False, repr=False, default=None)
    provenance: tuple[tuple[int, ...], ...] = field(compare=False, default=())

    @property
    def height(self) -> int:
        return sum(self.nu)

    def to_json(self) -> dict:
        return {"nu": list(self.nu), "strings": list(self.strings), "word": [i + 1 for i in self.word]}


def _elements_of_drop(rd: RootDatum, lam: tuple[int, ...], nu: tuple[int, ...]) -> list[Path]:
    cr = crystal(rd, lam)
    return [p for p in cr.elements(bound=nu) if cr.drop(p) == nu]


def stabilize(rd: RootDatum, nu: Sequence[int], depth: int | None = None, word: Sequence[int] | None = None) -> list[StableElement]:
    """B_g(nu), read off from B(lambda)_{lambda - nu} for deep lambda.

    The ambient lambda has all labels equal to ``depth`` (default the height
    of nu); the same computation at depth + 1 must give the same string
    coordinates, otherwise an internal error is raised.
    """
    nu = tuple(int(x) for x in nu)
    if len(nu) != rd.rank or min(nu, default=0) < 0:
        raise ValueError("nu must be a nonnegative coroot vector")
    word = rd.w0_word if word is None else tuple(word)
    check_reduced_w0(rd, word)
    h = sum(nu) if depth is None else depth
    found = []
    for dep in (h, h + 1):
        lam = (dep,) * rd.rank
        cr = crystal(rd, lam)
        found.append({cr.string_coords(p, word) for p in _elements_of_drop(rd, lam, nu)})
    if found[0] != found[1]:
        raise InternalInconsistency(f"stability witness failed for nu = {nu}")
    prov = ((h,) * rd.rank, (h + 1,) * rd.rank)
    return [StableElement(nu, s, word, rd, prov) for s in sorted(found[0])]


def stabilize_region(rd: RootDatum, nu_max: Sequence[int], word: Sequence[int] | None = None) -> dict[tuple[int, ...], list[StableElement]]:
    """B_g(nu) for every nu <= nu_max from a single pair of ambient crystals
    (depths height(nu_max) and height(nu_max) + 1)."""
    word = rd.w0_word if word is None else tuple(word)
    check_reduced_w0(rd, word)
    return _region(rd, tuple(int(x) for x in nu_max), word)


@lru_cache(maxsize=64)
def _region(rd: RootDatum, nu_max: tuple[int, ...], word: tuple[int, ...]) -> dict:
    h = sum(nu_max)
    found = []
    for dep in (h, h + 1):
        lam = (dep,) * rd.rank
        cr = crystal(rd, lam)
        by_nu: dict[tuple[int, ...], set] = {}
        for p in cr.elements(bound=nu_max):
            by_nu.setdefault(cr.drop(p), set()).add(cr.string_coords(p, word))
        found.append(by_nu)
    if found[0] != found[1]:
        raise InternalInconsistency(f"stability witness failed below nu = {nu_max}")
    prov = ((h,) * rd.rank, (h + 1,) * rd.rank)
    return {nu: [StableElement(nu, s, word, rd, prov) for s in sorted(ss)] for nu, ss in sorted(found[0].items())}


def _member(rd: RootDatum, x: StableElement, lam: tuple[int, ...], verify: bool = False) -> bool:
    cr = crystal(rd, lam)
    p = cr.apply_f_word(cr.highest, x.word, x.strings)
    if p is None:
        return False
    if cr.drop(p) != x.nu or (verify and cr.string_coords(p, x.word) != x.strings):
        raise InternalInconsistency("f-word image has different string coordinates")
    return True


_PHI_MEMO: dict = {}


def phi_geom(x: StableElement, i: int) -> int:
    """Least m such that x occurs in B(lambda) for every dominant lambda with
    <lambda, alpha_i^vee> = m and the other labels at least the height of nu.

    Membership is monotone in m; the search bisects and then checks the
    threshold from both sides.
    """
    rd = x.rd
    key = (rd, x.word, x.strings, x.nu, i)
    if key in _PHI_MEMO:
        return _PHI_MEMO[key]
    h = x.height

    def lam(m):
        l = [h] * rd.rank
        l[i] = m
        return tuple(l)

    if not _member(rd, x, lam(h), verify=True):
        raise InternalInconsistency("element absent from B(lambda) at full depth")
    lo, hi = 0, h  # membership known at hi
    while lo < hi:
        mid = (lo + hi) // 2
        if _member(rd, x, lam(mid)):
            hi = mid
        else:
            lo = mid + 1
    m = lo
    if (m > 0 and _member(rd, x, lam(m - 1))) or not _member(rd, x, lam(m + 1), verify=True):
        raise InternalInconsistency("phi_geom threshold is not monotone")
    _PHI_MEMO[key] = m
    return m


def phi_profile(x: StableElement) -> tuple[int, ...]:
    return tuple(phi_geom(x, i) for i in range(x.rd.rank))


def candidate_special(x: StableElement, md) -> bool:
    """Weight in sum Z_+ delta_i alpha_i and phi_geom in Z_+ delta_i for all i."""
    if x.rd is not md.rd:
        raise ValueError("element and metaplectic datum use different root data")
    if any(n % d for n, d in zip(x.nu, md.delta)):
        return False
    return all(phi_geom(x, i) % d == 0 for i, d in enumerate(md.delta))


def kashiwara_filter(rd: RootDatum, nu: Sequence[int], i: int) -> list[StableElement]:
    """Stable elements of B_g(nu) with phi_j = 0 for j != i and phi_i <= 1.

    Each returned element is checked to have omega_i - nu among the weights of
    V(omega_i).
    """
    out = []
    for x in stabilize(rd, nu):
        prof = phi_profile(x)
        if prof[i] <= 1 and all(p == 0 for j, p in enumerate(prof) if j != i):
            top = tuple(1 if j == i else 0 for j in range(rd.rank))
            if not is_weight_of(rd, top, x.nu):
                raise InternalInconsistency(f"omega_{i} - {x.nu} is not a weight of V(omega_{i})")
            out.append(x)
    return out


# ------------------------------------------------------------------ tensor rule


def hom_dims_by_rule(rd: RootDatum, gamma: Sequence[int], mu: Sequence[int]) -> dict[tuple[int, ...], int]:
    """dim Hom(V(gamma) x V(mu), V(lambda)) for all lambda, keyed by the drop
    of lambda from gamma + mu: count b in B(gamma) with eps_i(b) <= mu_i."""
    gamma, mu = tuple(gamma), tuple(mu)
    table = _eps_table(rd, gamma)
    out: dict[tuple[int, ...], int] = {}
    for drop, eps in table:
        if all(e <= m for e, m in zip(eps, mu)):
            out[drop] = out.get(drop, 0) + 1
    return out


@lru_cache(maxsize=64)
def _eps_table(rd: RootDatum, gamma: tuple[int, ...]) -> tuple:
    cr = crystal(rd, gamma)
    return tuple((cr.drop(p), tuple(cr.epsilon(p, i) for i in range(rd.rank))) for p in cr.elements())


def tensor_rule_hom_dim(rd: RootDatum, gamma, mu, lam) -> int:
    g = _labels_of(rd, gamma)
    m = _labels_of(rd, mu)
    l = _labels_of(rd, lam)
    if isinstance(gamma, Weight):
        c = rd.coroot_coords(gamma + mu - lam)
        if c is None or any(x.denominator != 1 or x < 0 for x in c):
            return 0
        drop = tuple(int(x) for x in c)
    else:
        drop = _drop_from_labels(rd, tuple(a + b - x for a, b, x in zip(g, m, l)))
        if drop is None:
            return 0
    return hom_dims_by_rule(rd, g, m).get(drop, 0)


def _drop_from_labels(rd: RootDatum, diff: Sequence[int]) -> tuple[int, ...] | None:
    """Coroot coordinates of the element with labels ``diff`` (semisimple part)."""
    from . import _lattice as la

    c = la.vec_mat(diff, rd.inverse_cartan)
    if not la.is_integral(c) or any(x < 0 for x in c):
        return None
    return la.int_vec(c)


def kostant_count(rd: RootDatum, nu: Sequence[int]) -> int:
    """Number of ways to write nu as a sum of positive coroots (independent oracle)."""
    roots = list(rd.positive_coroots)

    @lru_cache(maxsize=None)
    def count(v: tuple[int, ...], k: int) -> int:
        if not any(v):
            return 1
        if k == len(roots):
            return 0
        total = 0
        r = roots[k]
        w = v
        while min(w) >= 0:
            total += count(w, k + 1)
            w = tuple(a - b for a, b in zip(w, r))
        return total

    return count(tuple(nu), 0)


def iter_nu(rank: int, max_height: int) -> Iterable[tuple[int, ...]]:
    """All nonzero nu in Z_+^rank of height at most ``max_height``."""

    def rec(k, left):
        if k == rank:
            yield ()
            return
        for a in range(left + 1):
            for rest in rec(k + 1, left - a):
                yield (a,) + rest

    for v in rec(0, max_height):
        if any(v):
            yield v
