"""Characters of irreducible representations of the dual group.

A representation is indexed by a dominant coweight lambda (an element of the
weight lattice of the dual group).  Internally every weight of V(lambda) is
the *drop* n, meaning the weight lambda - sum n_i alpha_i.  Multiplicities are
computed with Freudenthal's formula on dominant weights only and then spread
over Weyl orbits on demand.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Iterator, Mapping, Sequence

from . import _lattice as la
from .errors import CapExceeded, NotDominant
from .rootdata import RootDatum, Weight

DEFAULT_SUPPORT_CAP = 2 * 10**6
CACHE_ENV = "METAWHIT_CACHE_DIR"


def _dominant_labels(rd: RootDatum, lam: Weight) -> tuple[int, ...]:
    l = rd.labels(lam)
    if any(not isinstance(x, int) for x in l) or any(x < 0 for x in l):
        raise NotDominant(f"{lam} is not dominant")
    return l


def weyl_dim(rd: RootDatum, lam: Weight) -> int:
    l = _dominant_labels(rd, lam)
    return weyl_dim_labels(rd, l)


def weyl_dim_labels(rd: RootDatum, l: Sequence[int]) -> int:
    num, den = 1, 1
    for c in rd.positive_roots:
        num *= sum(ck * (lk + 1) for ck, lk in zip(c, l))
        den *= sum(c)
    q, r = divmod(num, den)
    if r:
        raise AssertionError("Weyl dimension is not an integer")
    return q


# ------------------------------------------------------------------ dominant weights


def dominant_drops(rd: RootDatum, l: Sequence[int]) -> list[tuple[int, ...]]:
    """Drops of all dominant mu <= lambda, sorted by height.

    Every dominant mu < lambda is reached from a dominant weight above it by
    subtracting one positive root of the dual group (Stembridge), so a search
    along these steps is complete.
    """
    r = rd.rank
    start = (0,) * r
    seen = {start}
    stack = [(start, tuple(l))]
    steps = list(zip(rd.positive_coroots, rd.positive_coroot_labels))
    while stack:
        n, lab = stack.pop()
        for c, cl in steps:
            nl = tuple(a - b for a, b in zip(lab, cl))
            if min(nl) < 0:
                continue
            nn = tuple(a + b for a, b in zip(n, c))
            if nn not in seen:
                seen.add(nn)
                stack.append((nn, nl))
    return sorted(seen, key=lambda n: (sum(n), n))


def dominant_weights_below(rd: RootDatum, lam: Weight) -> list[Weight]:
    l = _dominant_labels(rd, lam)
    return [_weight_at(rd, lam, n) for n in dominant_drops(rd, l)]


def _weight_at(rd: RootDatum, top: Weight, drop: Sequence[int]) -> Weight:
    return Weight(la.vsub(top.coords, la.vec_mat(drop, rd.coroot_vecs)), top.lattice)


# ------------------------------------------------------------------ Freudenthal


def _labels_of_drop(rd: RootDatum, l: Sequence[int], n: Sequence[int]) -> tuple[int, ...]:
    sub = rd.labels_of_coroot_combo(n)
    return tuple(a - b for a, b in zip(l, sub))


def _disk_path(rd: RootDatum, l: Sequence[int]) -> Path | None:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    key = "cartan_" + "_".join("".join(str(x + 5) for x in row) for row in rd.cartan)
    return Path(root) / key / ("_".join(map(str, l)) + ".json")


@lru_cache(maxsize=256)
def _dominant_character_cached(rd: RootDatum, l: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    path = _disk_path(rd, l)
    if path is not None and path.exists():
        data = json.loads(path.read_text())
        return tuple((tuple(n), int(m)) for n, m in data)
    out = _freudenthal_dominant(rd, l)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps([[list(n), m] for n, m in out]))
        tmp.replace(path)
    return out


def _freudenthal_dominant(rd: RootDatum, l: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    r = rd.rank
    d = rd.symmetrizer
    A = rd.cartan
    S = [[d[j] * A[i][j] for j in range(r)] for i in range(r)]
    lr = [d[i] * (l[i] + 1) for i in range(r)]  # (lambda + rho, alpha_i)
    drops = dominant_drops(rd, l)
    mult: dict[tuple[int, ...], int] = {}
    pos = [(c, rd.labels_of_coroot_combo(c)) for c in rd.positive_coroots]
    for n in drops:
        if not any(n):
            mult[n] = 1
            continue
        nn = sum(n[i] * sum(S[i][j] * n[j] for j in range(r)) for i in range(r))
        denom = 2 * sum(n[i] * lr[i] for i in range(r)) - nn
        lab = _labels_of_drop(rd, l, n)
        total = 0
        for c, cl in pos:
            k = 1
            while True:
                m_drop = tuple(a - k * b for a, b in zip(n, c))
                if min(m_drop) < 0:
                    break
                m_lab = tuple(a + k * b for a, b in zip(lab, cl))
                dom, shift, _ = rd.dominant_rep_labels(m_lab)
                key = tuple(a - b for a, b in zip(m_drop, shift))
                m = mult.get(key, 0)
                if m:
                    # (mu + k beta, beta) with beta = sum c_j alpha_j
                    total += m * sum(c[j] * d[j] * m_lab[j] for j in range(r))
                k += 1
        q, rem = divmod(2 * total, denom)
        if rem:
            raise AssertionError("Freudenthal recursion produced a non-integer")
        if q:
            mult[n] = q
    return tuple((n, mult[n]) for n in drops if n in mult)


def dominant_character(rd: RootDatum, lam: Weight) -> dict[Weight, int]:
    """Multiplicities of the dominant weights of V(lambda)."""
    l = _dominant_labels(rd, lam)
    return {_weight_at(rd, lam, n): m for n, m in _dominant_character_cached(rd, l)}


class WeightMultiset(Mapping):
    """Character of V(lambda) as an exact map weight -> multiplicity."""

    def __init__(self, rd: RootDatum, top: Weight, drops: Mapping[tuple[int, ...], int]):
        self.rd = rd
        self.top = top
        self.drops = dict(drops)
        self._weights = {_weight_at(rd, top, n): m for n, m in self.drops.items()}

    def __getitem__(self, w: Weight) -> int:
        return self._weights[w]

    def get(self, w, default=0):
        return self._weights.get(w, default)

    def __iter__(self) -> Iterator[Weight]:
        return iter(sorted(self._weights))

    def __len__(self) -> int:
        return len(self._weights)

    def dim(self) -> int:
        return sum(self.drops.values())

    def by_labels(self) -> dict[tuple, int]:
        l = self.rd.labels(self.top)
        return {_labels_of_drop(self.rd, l, n): m for n, m in self.drops.items()}


def character_drops(rd: RootDatum, l: Sequence[int], cap: int = DEFAULT_SUPPORT_CAP) -> dict[tuple[int, ...], int]:
    l = tuple(l)
    dom = _dominant_character_cached(rd, l)
    size = sum(rd.orbit_size_dominant(_labels_of_drop(rd, l, n)) for n, _ in dom)
    if size > cap:
        raise CapExceeded("weight support", size, cap)
    out: dict[tuple[int, ...], int] = {}
    for n, m in dom:
        for dn in rd.orbit_labels(_labels_of_drop(rd, l, n), cap):
            out[tuple(a + b for a, b in zip(n, dn))] = m
    return out


def freudenthal(rd: RootDatum, lam: Weight, cap: int = DEFAULT_SUPPORT_CAP) -> WeightMultiset:
    l = _dominant_labels(rd, lam)
    return WeightMultiset(rd, lam, character_drops(rd, l, cap))


def is_weight_of(rd: RootDatum, top_labels: Sequence[int], drop: Sequence[int]) -> bool:
    """Whether top - sum drop_i alpha_i is a weight of V(top), without enumeration."""
    if min(drop) < 0:
        return False
    lab = _labels_of_drop(rd, top_labels, drop)
    _, shift, _ = rd.dominant_rep_labels(lab)
    dd = tuple(a - b for a, b in zip(drop, shift))
    return min(dd) >= 0


# ------------------------------------------------------------------ tensor products


def tensor_decompose_labels(
    rd: RootDatum, l1: Sequence[int], l2: Sequence[int], cap: int = DEFAULT_SUPPORT_CAP
) -> dict[tuple[int, ...], int]:
    """Multiplicities in V(l1) x V(l2), keyed by the drop from l1 + l2 (Brauer-Klimyk).

    The character of the smaller factor is expanded.
    """
    if weyl_dim_labels(rd, l1) > weyl_dim_labels(rd, l2):
        l1, l2 = l2, l1
    chi = character_drops(rd, l1, cap)
    out: dict[tuple[int, ...], int] = {}
    for n, m in chi.items():
        lab = tuple(a + b + 1 for a, b in zip(_labels_of_drop(rd, l1, n), l2))
        dom, shift, length = rd.dominant_rep_labels(lab)
        if min(dom) == 0:
            continue
        key = tuple(a - b for a, b in zip(n, shift))
        out[key] = out.get(key, 0) + (-m if length % 2 else m)
    res = {k: v for k, v in out.items() if v}
    if any(v < 0 for v in res.values()):
        raise AssertionError("negative tensor multiplicity")
    return res


def tensor_decompose(rd: RootDatum, lam: Weight, mu: Weight, cap: int = DEFAULT_SUPPORT_CAP) -> dict[Weight, int]:
    l1 = _dominant_labels(rd, lam)
    l2 = _dominant_labels(rd, mu)
    top = lam + mu
    res = tensor_decompose_labels(rd, l1, l2, cap)
    return {_weight_at(rd, top, n): m for n, m in sorted(res.items())}
