"""Recognising Cartan matrices and Weyl group orders."""

from __future__ import annotations

from math import factorial
from typing import Sequence

RANK_OK = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


def weyl_order(letter: str, n: int) -> int:
    if letter == "A":
        return factorial(n + 1)
    if letter in "BC":
        return 2**n * factorial(n)
    if letter == "D":
        return 2 ** (n - 1) * factorial(n)
    if letter == "E":
        return {6: 51840, 7: 2903040, 8: 696729600}[n]
    if letter == "F":
        return 1152
    if letter == "G":
        return 12
    raise ValueError(letter)


def components(cartan: Sequence[Sequence[int]], nodes: Sequence[int] | None = None) -> list[list[int]]:
    """Connected components of the Dynkin graph restricted to ``nodes``."""
    if nodes is None:
        nodes = range(len(cartan))
    nodes = list(nodes)
    left = set(nodes)
    comps = []
    while left:
        start = min(left)
        comp = {start}
        stack = [start]
        while stack:
            a = stack.pop()
            for b in nodes:
                if b not in comp and (cartan[a][b] or cartan[b][a]):
                    comp.add(b)
                    stack.append(b)
        left -= comp
        comps.append(sorted(comp))
    return comps


def classify_component(cartan: Sequence[Sequence[int]], comp: Sequence[int]) -> tuple[str, int]:
    """Type letter and rank of a connected component.

    B and C are told apart by the orientation of the double bond: in our
    convention A[i][j] = <alpha_i, alpha_j^vee>, and in type B the end node of
    the double bond carries the -2 in its own row.
    """
    k = len(comp)
    if k == 1:
        return ("A", 1)
    deg = {a: 0 for a in comp}
    mult = {}
    for x, a in enumerate(comp):
        for b in comp[x + 1:]:
            p = cartan[a][b] * cartan[b][a]
            if p:
                deg[a] += 1
                deg[b] += 1
                mult[(a, b)] = p
    if any(p == 3 for p in mult.values()):
        return ("G", 2)
    doubles = [e for e, p in mult.items() if p == 2]
    if doubles:
        (a, b), = doubles
        if k == 2:
            return ("B", 2)
        if k == 4 and deg[a] == 2 and deg[b] == 2:
            return ("F", 4)
        leaf, inner = (a, b) if deg[a] == 1 else (b, a)
        return ("B", k) if cartan[leaf][inner] == -2 else ("C", k)
    branch = [a for a in comp if deg[a] == 3]
    if not branch:
        return ("A", k)
    (c,) = branch
    arms = []
    for nb in [b for b in comp if b != c and cartan[c][b]]:
        length, prev, cur = 1, c, nb
        while True:
            nxt = [x for x in comp if x not in (prev, cur) and cartan[cur][x]]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return ("D", k)
    if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
        return ("E", k)
    raise ValueError("not a finite Dynkin diagram")


def classify(cartan: Sequence[Sequence[int]], nodes: Sequence[int] | None = None) -> list[tuple[str, int, list[int]]]:
    return [(*classify_component(cartan, c), c) for c in components(cartan, nodes)]


def parabolic_order(cartan: Sequence[Sequence[int]], nodes: Sequence[int]) -> int:
    """Order of the Weyl subgroup generated by the given simple reflections."""
    out = 1
    for letter, n, _ in classify(cartan, nodes):
        out *= weyl_order(letter, n)
    return out


def standard_cartan(letter: str, n: int) -> list[list[int]]:
    """Cartan matrix C[i][j] = <alpha_i^vee, alpha_j> in Bourbaki numbering.

    Our pairing matrix <alpha_i, alpha_j^vee> (coroots of G against roots of
    G) is compared against this up to transposition and node permutation.
    """
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        C[i][i + 1] = C[i + 1][i] = -1
    if letter == "B":
        C[n - 2][n - 1] = -2
    elif letter == "C":
        C[n - 1][n - 2] = -2
    elif letter == "D":
        C[n - 2][n - 1] = C[n - 1][n - 2] = 0
        C[n - 3][n - 1] = C[n - 1][n - 3] = -1
    elif letter == "E":
        C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        for a, b in [(0, 2), (2, 3), (3, 1), (3, 4)] + [(k, k + 1) for k in range(4, n - 1)]:
            C[a][b] = C[b][a] = -1
    elif letter == "F":
        C[1][2] = -2
    elif letter == "G":
        C[0][1] = -3
    return C
