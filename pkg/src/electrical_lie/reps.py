"""Explicit matrix representations and generator maps.

Matrices are :class:`~electrical_lie.exactla.SparseMatrix` with exact
``Fraction`` entries.  Sizes and index formulas below are 1-based where
they mirror printed formulas and converted at the ``_F`` helper.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .dynkin import DynkinDiagram, diagram
from .errors import DiagramMismatch, DimensionMismatch, MissingAssignment
from .exactla import SparseMatrix
from .freelie import LieElement, Tree, electrical_relators, substitute


class SizeMismatch(DimensionMismatch):
    pass


class MissingGenerator(MissingAssignment):
    pass


class Representation:
    """Generator index -> square matrix, all of one size."""

    def __init__(self, d: DynkinDiagram, size: int, images: Mapping[int, SparseMatrix], name: str = ""):
        missing = [d.labels[i] for i in range(d.rank) if i not in images]
        if missing:
            raise MissingGenerator(f"no matrix for generators {missing} of {d.name}")
        for i, m in images.items():
            if m.nrows != size or m.ncols != size:
                raise SizeMismatch(f"image of node {i} is {m.nrows}x{m.ncols}, expected {size}")
        self.diagram = d
        self.size = size
        self.images: Dict[int, SparseMatrix] = dict(images)
        self.name = name or f"rep of {d.name}"

    @property
    def dim(self) -> int:
        return self.size

    def evaluate(self, x: LieElement) -> SparseMatrix:
        return evaluate(x, self)

    def relator_residuals(self) -> List[Tuple[str, SparseMatrix]]:
        return [(r.name, self.evaluate(r.lhs)) for r in electrical_relators(self.diagram)]

    def satisfies_relators(self) -> bool:
        return all(m.is_zero() for _, m in self.relator_residuals())

    def restrict(self, d: DynkinDiagram) -> "Representation":
        """Keep the first ``d.rank`` generators (the diagram must be a leading subdiagram)."""
        return Representation(d, self.size, {i: self.images[i] for i in range(d.rank)}, self.name + " (restricted)")

    def to_dict(self) -> dict:
        return {
            "family": self.diagram.family,
            "rank": self.diagram.rank,
            "size": self.size,
            "images": {
                self.diagram.labels[i]: [[r, c, str(v)] for r, c, v in sorted(m.entries())]
                for i, m in sorted(self.images.items())
            },
        }

    def __repr__(self) -> str:
        return f"Representation({self.diagram.name}, size={self.size})"


def evaluate(x: LieElement, rep: Representation) -> SparseMatrix:
    """Brackets become commutators; exact throughout."""
    cache: Dict[Tree, SparseMatrix] = {}

    def image(t: Tree) -> SparseMatrix:
        got = cache.get(t)
        if got is not None:
            return got
        if isinstance(t, int):
            if t not in rep.images:
                raise MissingGenerator(f"no image for generator {x.diagram.labels[t]}")
            m = rep.images[t]
        else:
            m = image(t[0]).commutator(image(t[1]))
        cache[t] = m
        return m

    if x.diagram != rep.diagram:
        raise DiagramMismatch(f"{x.diagram.name} element, {rep.diagram.name} representation")
    out = SparseMatrix(rep.size)
    for t, c in x.terms.items():
        out = out + image(t).scale(c)
    return out


# -- type A --------------------------------------------------------------------------

def symplectic_form(m: int) -> SparseMatrix:
    """[[0, I], [-I, 0]] of size 2m."""
    j = SparseMatrix(2 * m)
    for k in range(m):
        j.add_entry(k, m + k, 1)
        j.add_entry(m + k, k, -1)
    return j


def _outer_block(v: Sequence[int], m: int, upper: bool) -> SparseMatrix:
    out = SparseMatrix(2 * m)
    for r, a in enumerate(v):
        for c, b in enumerate(v):
            if a and b:
                if upper:
                    out.add_entry(r, m + c, a * b)
                else:
                    out.add_entry(m + r, c, a * b)
    return out


def rep_A_even(n: int) -> Representation:
    """A_{2n+2} into sp_{2n+2}: a_1 = eps_1, a_i = eps_{i-1} + eps_i, b_i = eps_i.

    e_{2i-1} -> [[0, a_i a_i^T], [0, 0]] and e_{2i} -> [[0, 0], [b_i b_i^T, 0]].
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    m = n + 1
    images = {}
    for i in range(1, m + 1):
        a = [0] * m
        a[i - 1] = 1
        if i > 1:
            a[i - 2] = 1
        b = [0] * m
        b[i - 1] = 1
        images[2 * i - 2] = _outer_block(a, m, upper=True)
        images[2 * i - 1] = _outer_block(b, m, upper=False)
    return Representation(diagram("A", 2 * m), 2 * m, images, f"sp_{2 * m} model of A{2 * m}")


def rep_A(rank: int) -> Representation:
    """Faithful model of A_rank: rep_A_even for even rank, its truncation for odd rank."""
    if rank % 2 == 0:
        return rep_A_even(rank // 2 - 1)
    return rep_A_even((rank - 1) // 2).restrict(diagram("A", rank))


def in_symplectic(mat: SparseMatrix) -> bool:
    """m^T J + J m = 0, i.e. block form [[A, B], [C, -A^T]] with B, C symmetric."""
    if mat.nrows != mat.ncols or mat.nrows % 2:
        raise SizeMismatch(f"{mat.nrows}x{mat.ncols} is not of even square size")
    j = symplectic_form(mat.nrows // 2)
    return (mat.transpose() @ j + j @ mat).is_zero()


def odd_symplectic_membership(mat: SparseMatrix, n: int) -> bool:
    """Membership in the odd symplectic algebra inside sp_{2n+2}.

    The extra conditions are a zero (n+1)-th column and a zero last row
    (1-based); for symplectic matrices either one implies the other.
    """
    size = 2 * n + 2
    if mat.nrows != size or mat.ncols != size:
        raise SizeMismatch(f"expected {size}x{size}, got {mat.nrows}x{mat.ncols}")
    if not in_symplectic(mat):
        return False
    col = n
    if any(mat.entry(r, col) for r in range(size)):
        return False
    return not mat.rows.get(size - 1)


# -- generator maps --------------------------------------------------------------

@dataclass
class Homomorphism:
    """Generator assignment into one target algebra or a direct sum of them."""

    source: DynkinDiagram
    targets: Tuple[DynkinDiagram, ...]
    assignment: Dict[int, Tuple[LieElement, ...]]

    def __post_init__(self) -> None:
        missing = [i for i in range(self.source.rank) if i not in self.assignment]
        if missing:
            raise MissingAssignment(f"no image for nodes {missing} of {self.source.name}")

    def apply(self, x: LieElement) -> Tuple[LieElement, ...]:
        if x.diagram != self.source:
            raise DiagramMismatch(f"{x.diagram.name} element, map from {self.source.name}")
        out = []
        for k, t in enumerate(self.targets):
            sub = {i: imgs[k] for i, imgs in self.assignment.items()}
            out.append(substitute(x, sub, target=t))
        return tuple(out)

    def image_of_generator(self, i: int) -> Tuple[LieElement, ...]:
        return self.assignment[i]


def hom_B_to_AplusA(n: int) -> Homomorphism:
    """e_1 -> (f_1, 0), e_k -> (f_k, f_k); the second summand is generated by f_2..f_n."""
    if n < 2:
        raise ValueError("type B needs n >= 2")
    src, a1, a2 = diagram("B", n), diagram("A", n), diagram("A", n - 1)
    assign = {0: (LieElement.gen(a1, 0), LieElement.zero(a2))}
    for k in range(1, n):
        assign[k] = (LieElement.gen(a1, k), LieElement.gen(a2, k - 1))
    return Homomorphism(src, (a1, a2), assign)


def direct_sum(d: DynkinDiagram, parts: Sequence[Representation], maps: Mapping[int, Sequence[Optional[int]]]) -> Representation:
    """Block-diagonal representation; ``maps[i][k]`` is the node of part k hit by node i (None for 0)."""
    size = sum(p.size for p in parts)
    images = {}
    for i in range(d.rank):
        m = SparseMatrix(size)
        off = 0
        for k, p in enumerate(parts):
            node = maps[i][k]
            if node is not None:
                for r, c, v in p.images[node].entries():
                    m.add_entry(off + r, off + c, v)
            off += p.size
        images[i] = m
    return Representation(d, size, images)


def rep_B(n: int) -> Representation:
    """B_n through the map to A_n + A_{n-1}, each summand in its own symplectic model."""
    if n < 2:
        raise ValueError("type B needs n >= 2")
    maps = {0: (0, None)}
    for k in range(1, n):
        maps[k] = (k, k - 1)
    rep = direct_sum(diagram("B", n), [rep_A(n), rep_A(n - 1)], maps)
    rep.name = f"A{n}+A{n - 1} model of B{n}"
    return rep


def _F(entries: Dict[Tuple[int, int], Q], size: int, i: int, j: int, c) -> None:
    """Add c at 1-based (i, j); positions outside the matrix are dropped."""
    if 1 <= i <= size and 1 <= j <= size:
        entries[(i - 1, j - 1)] = entries.get((i - 1, j - 1), Q(0)) + Q(c)


def rep_C_gl(n: int, as_printed: bool = False) -> Representation:
    """C_{2n} into gl of size (2n)^2 from the F[i, j] formulas.

    The printed e_k formula carries ``-2F[k^2+2, k^2+3]``; with it the
    relators fail from C_4 on.  The default replaces that term by
    ``F[k^2+2, k^2+3] - 2F[(k-1)^2+1, k^2+2]``, which is the adjoint action
    in the block basis and satisfies every relator.  ``as_printed=True``
    keeps the literal formula for comparison.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    r = 2 * n
    size = r * r
    images = {}

    e1: Dict[Tuple[int, int], Q] = {}
    _F(e1, size, 3, 2, 1)
    _F(e1, size, 4, 3, 1)
    _F(e1, size, 8, 16, -1)
    for j in range(3, r + 1):
        b = (j - 1) ** 2
        _F(e1, size, b + j, b + j - 1, 1)
        _F(e1, size, b + j + 1, b + j, 1)
        _F(e1, size, b + j + 1, b + j + 2, 1)
    images[0] = e1

    for k in range(2, r + 1):
        ek: Dict[Tuple[int, int], Q] = {}
        b0, b1 = (k - 2) ** 2, (k - 1) ** 2
        kk = k * k
        for i in range(2, 2 * k - 1):
            _F(ek, size, b1 + i, b0 + i - 1, -1)
        _F(ek, size, b1 + 1, b1 + 2, 2)
        if k >= 3:
            _F(ek, size, b1 + 2 * k - 2, b1 + 2 * k - 1, 1)
        else:
            _F(ek, size, 3, 4, 2)
        _F(ek, size, kk + 2, kk + 1, 1)
        if as_printed:
            _F(ek, size, kk + 2, kk + 3, -2)
        else:
            _F(ek, size, kk + 2, kk + 3, 1)
            _F(ek, size, b1 + 1, kk + 2, -2)
        for i in range(3, 2 * k):
            _F(ek, size, b1 + i - 1, kk + i, -1)
        _F(ek, size, kk + 2 * k + 1, kk + 2 * k, 1)
        _F(ek, size, (k + 1) ** 2 + 2 * k + 2, (k + 2) ** 2 + 2 * k + 5, -1)
        for j in range(k + 2, r + 1):
            bj = (j - 1) ** 2
            _F(ek, size, bj + j - k + 1, bj + j - k, 1)
            _F(ek, size, bj + j - k + 1, bj + j - k + 2, 1)
            _F(ek, size, bj + j + k, bj + j + k - 1, 1)
            _F(ek, size, bj + j + k, bj + j + k + 1, 1)
        images[k - 1] = ek

    mats = {i: SparseMatrix(size, size, e) for i, e in images.items()}
    return Representation(diagram("C", r), size, mats, f"gl_{size} model of C{r}")


def rep_C_scalar(n: int) -> Representation:
    """C_{2n} -> gl_1 with e_1 -> 1 and every other generator -> 0."""
    d = diagram("C", 2 * n)
    images = {i: SparseMatrix(1, 1, {(0, 0): 1} if i == 0 else None) for i in range(d.rank)}
    return Representation(d, 1, images, f"scalar rep of {d.name}")


def hom_C_into_D(n: int) -> Homomorphism:
    """C_{2n} -> D_{2n+1}: f_1 -> (e_1 + e_1b)/2, f_k -> e_k."""
    if n < 1:
        raise ValueError("n must be >= 1")
    src, tgt = diagram("C", 2 * n), diagram("D", 2 * n + 1)
    one, bar = tgt.node("1"), tgt.node("1b")
    assign = {0: ((LieElement.gen(tgt, one) + LieElement.gen(tgt, bar)) / 2,)}
    for k in range(2, 2 * n + 1):
        assign[k - 1] = (LieElement.gen(tgt, tgt.node(str(k))),)
    return Homomorphism(src, (tgt,), assign)


def rep_C(rank: int) -> Representation:
    """Faithful model of C_rank: the gl model plus the scalar one (the gl model kills the center).

    Odd ranks restrict the model of C_{rank+1}.
    """
    if rank < 2:
        raise ValueError("type C needs rank >= 2")
    n = (rank + 1) // 2
    d = diagram("C", 2 * n)
    both = direct_sum(d, [rep_C_gl(n), rep_C_scalar(n)], {i: (i, i) for i in range(d.rank)})
    both.name = f"gl_{(2 * n) ** 2}+gl_1 model of {d.name}"
    if rank % 2:
        return both.restrict(diagram("C", rank))
    return both
