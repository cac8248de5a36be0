"""Classical Dynkin diagrams, Cartan matrices and positive roots.

Nodes are addressed by 0-based indices.  Labels are only for display:
``1..n`` for A, B, C and ``1b, 1, 2, ..., n-1`` for D, where ``1b`` and
``1`` are the two short legs of the fork at node ``2``.

Cartan entries follow ``a_ij = <alpha_j, alpha_i^vee>``, so a node whose
root is shorter than its neighbour's carries the ``-2``.  For B the
``-2`` sits at ``a_21`` (relation ``[e2,[e2,[e2,e1]]] = 0``), for C at
``a_12`` (relation ``[e1,[e1,[e1,e2]]] = 0``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Tuple

from .errors import NotAPositiveRoot, UnsupportedType

Root = Tuple[int, ...]
CartanMatrix = Tuple[Tuple[int, ...], ...]

FAMILIES = ("A", "B", "C", "D")


@dataclass(frozen=True)
class DynkinDiagram:
    family: str
    rank: int
    labels: Tuple[str, ...] = field(init=False, compare=False)

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise UnsupportedType(f"unsupported family {self.family!r}")
        if not isinstance(self.rank, int) or self.rank < 1:
            raise UnsupportedType(f"rank must be a positive integer, got {self.rank!r}")
        if self.family == "D" and self.rank < 3:
            raise UnsupportedType("type D needs rank >= 3")
        if self.family == "D":
            labels = ("1b",) + tuple(str(k) for k in range(1, self.rank))
        else:
            labels = tuple(str(k) for k in range(1, self.rank + 1))
        object.__setattr__(self, "labels", labels)

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def node(self, label: str) -> int:
        """Index of the node with the given label."""
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise KeyError(f"{self.name} has no node {label!r}") from None

    def edges(self) -> List[Tuple[int, int]]:
        r = self.rank
        if self.family == "D":
            return [(0, 2), (1, 2)] + [(k, k + 1) for k in range(2, r - 1)]
        return [(k, k + 1) for k in range(r - 1)]

    def adjacent(self, i: int, j: int) -> bool:
        return cartan_matrix(self)[i][j] != 0 and i != j

    def __repr__(self) -> str:
        return f"DynkinDiagram({self.family!r}, {self.rank})"


def diagram(family: str, rank: int) -> DynkinDiagram:
    return DynkinDiagram(str(family).upper(), int(rank))


@lru_cache(maxsize=None)
def cartan_matrix(d: DynkinDiagram) -> CartanMatrix:
    r = d.rank
    a = [[0] * r for _ in range(r)]
    for i in range(r):
        a[i][i] = 2
    for i, j in d.edges():
        a[i][j] = a[j][i] = -1
    if d.family == "B" and r >= 2:
        a[1][0] = -2
    if d.family == "C" and r >= 2:
        a[0][1] = -2
    return tuple(tuple(row) for row in a)


def symmetrizer(d: DynkinDiagram) -> Tuple[int, ...]:
    """Positive integers s_i with s_i a_ij = s_j a_ji (squared root lengths)."""
    r = d.rank
    if d.family == "B":
        return (2,) + (1,) * (r - 1)
    if d.family == "C":
        return (1,) + (2,) * (r - 1)
    return (1,) * r


def parity_signs(d: DynkinDiagram) -> Tuple[int, ...]:
    """Bipartite +-1 colouring of the nodes (the diagrams are trees)."""
    sign = [0] * d.rank
    sign[0] = 1
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(d.rank):
            if d.adjacent(i, j) and sign[j] == 0:
                sign[j] = -sign[i]
                stack.append(j)
    return tuple(sign)


def height(alpha: Root) -> int:
    return sum(alpha)


def simple_root(d: DynkinDiagram, i: int) -> Root:
    return tuple(1 if k == i else 0 for k in range(d.rank))


@lru_cache(maxsize=None)
def positive_roots(d: DynkinDiagram) -> Tuple[Root, ...]:
    """All positive roots, sorted by height then lexicographically (descending coefficients)."""
    a = cartan_matrix(d)
    r = d.rank
    roots = {simple_root(d, i) for i in range(r)}
    layer = sorted(roots)
    while layer:
        nxt = set()
        for beta in layer:
            for i in range(r):
                # i-string through beta: beta - p alpha_i, ..., beta + q alpha_i
                p = 0
                while True:
                    cand = tuple(b - (p + 1) * (k == i) for k, b in enumerate(beta))
                    if cand in roots:
                        p += 1
                    else:
                        break
                pairing = sum(beta[j] * a[i][j] for j in range(r))
                if p - pairing > 0:
                    up = tuple(b + (k == i) for k, b in enumerate(beta))
                    if up not in roots:
                        nxt.add(up)
        roots |= nxt
        layer = sorted(nxt)
    return tuple(sorted(roots, key=lambda b: (height(b), tuple(-x for x in b))))


def expected_root_count(family: str, rank: int) -> int:
    n = rank
    return {"A": n * (n + 1) // 2, "B": n * n, "C": n * n, "D": n * n - n}[family]


@lru_cache(maxsize=None)
def root_decomposition(alpha: Root, d: DynkinDiagram) -> Tuple[int, ...]:
    """Lexicographically smallest (i_1, ..., i_t) summing to alpha such that every
    tail alpha_{i_s} + ... + alpha_{i_t} is a positive root.

    The tails are the partial sums in the order the word [e_i1,[e_i2,[...]]]
    is assembled (innermost letter first), which keeps every word nonzero.
    """
    alpha = tuple(alpha)
    roots = set(positive_roots(d))
    if alpha not in roots:
        raise NotAPositiveRoot(f"{alpha} is not a positive root of {d.name}")
    out = []
    rest = list(alpha)
    while sum(rest) > 1:
        for i in range(d.rank):
            if rest[i] == 0:
                continue
            rest[i] -= 1
            if tuple(rest) in roots:
                out.append(i)
                break
            rest[i] += 1
        else:  # pragma: no cover - every non-simple positive root has a simple predecessor
            raise NotAPositiveRoot(f"no decomposition for {alpha}")
    out.append(rest.index(1))
    return tuple(out)


def build_order_sums(seq: Tuple[int, ...], d: DynkinDiagram) -> List[Root]:
    """Partial sums of a decomposition read from the innermost letter outward."""
    acc = [0] * d.rank
    sums = []
    for i in reversed(seq):
        acc[i] += 1
        sums.append(tuple(acc))
    return sums


def root_label(alpha: Root, d: DynkinDiagram) -> str:
    parts = []
    for k, c in enumerate(alpha):
        if c:
            parts.append((f"{c}" if c > 1 else "") + f"a{d.labels[k]}")
    return "+".join(parts)
