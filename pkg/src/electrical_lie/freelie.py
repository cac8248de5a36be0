"""Formal brackets over Dynkin generators.

A bracket tree is either an ``int`` (a generator index) or a pair
``(left, right)``.  Trees inside a :class:`LieElement` are kept in a
canonical form: in every pair the smaller subtree (by leaf count, then
structure) sits on the left, swaps cost a sign and ``[t, t]`` vanishes.
Right-nested words such as ``[e1[e2e3]]`` are already canonical.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from .dynkin import DynkinDiagram, cartan_matrix, root_decomposition
from .errors import DiagramMismatch, MissingAssignment

Tree = Union[int, Tuple["Tree", "Tree"]]
Scalar = Union[int, Fraction]


def leaf_count(t: Tree) -> int:
    if isinstance(t, int):
        return 1
    return leaf_count(t[0]) + leaf_count(t[1])


def tree_key(t: Tree) -> tuple:
    if isinstance(t, int):
        return (1, t)
    return (leaf_count(t), tree_key(t[0]), tree_key(t[1]))


def leaves(t: Tree) -> Iterator[int]:
    if isinstance(t, int):
        yield t
    else:
        yield from leaves(t[0])
        yield from leaves(t[1])


def canonical(t: Tree) -> Tuple[int, Optional[Tree]]:
    """Return (sign, tree) with the tree in canonical form; sign 0 means the tree vanishes."""
    if isinstance(t, int):
        return 1, t
    sa, a = canonical(t[0])
    if sa == 0:
        return 0, None
    sb, b = canonical(t[1])
    if sb == 0:
        return 0, None
    ka, kb = tree_key(a), tree_key(b)
    if ka == kb:
        return 0, None
    if ka < kb:
        return sa * sb, (a, b)
    return -sa * sb, (b, a)


def word_tree(word: Iterable[int]) -> Tree:
    """Right-nested [e_i1,[e_i2,[...,e_it]]] from an index sequence."""
    seq = list(word)
    t: Tree = seq[-1]
    for i in reversed(seq[:-1]):
        t = (i, t)
    return t


class LieElement:
    """Exact rational combination of canonical bracket trees over one diagram."""

    __slots__ = ("diagram", "terms")

    def __init__(self, diagram: DynkinDiagram, terms: Optional[Mapping[Tree, Scalar]] = None):
        self.diagram = diagram
        acc: Dict[Tree, Fraction] = {}
        for t, c in (terms or {}).items():
            s, ct = canonical(t)
            if s == 0 or c == 0:
                continue
            acc[ct] = acc.get(ct, Fraction(0)) + s * Fraction(c)
        self.terms = {t: c for t, c in acc.items() if c != 0}

    @classmethod
    def gen(cls, d: DynkinDiagram, i: int) -> "LieElement":
        if not 0 <= i < d.rank:
            raise DiagramMismatch(f"{d.name} has no node index {i}")
        return cls(d, {i: 1})

    @classmethod
    def from_tree(cls, d: DynkinDiagram, t: Tree, coeff: Scalar = 1) -> "LieElement":
        return cls(d, {t: coeff})

    @classmethod
    def word(cls, d: DynkinDiagram, seq: Iterable[int], coeff: Scalar = 1) -> "LieElement":
        return cls(d, {word_tree(seq): coeff})

    @classmethod
    def zero(cls, d: DynkinDiagram) -> "LieElement":
        return cls(d)

    def _check(self, other: "LieElement") -> None:
        if not isinstance(other, LieElement):
            raise TypeError(f"expected LieElement, got {type(other).__name__}")
        if other.diagram != self.diagram:
            raise DiagramMismatch(f"{self.diagram.name} vs {other.diagram.name}")

    def __add__(self, other: "LieElement") -> "LieElement":
        self._check(other)
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = out.get(t, Fraction(0)) + c
        return LieElement(self.diagram, out)

    def __neg__(self) -> "LieElement":
        return LieElement(self.diagram, {t: -c for t, c in self.terms.items()})

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def __mul__(self, k: Scalar) -> "LieElement":
        return LieElement(self.diagram, {t: c * Fraction(k) for t, c in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, k: Scalar) -> "LieElement":
        return self * (1 / Fraction(k))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.diagram == other.diagram and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.diagram, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self) -> str:
        return f"LieElement({format_element(self)})"


def bracket(x: LieElement, y: LieElement) -> LieElement:
    x._check(y)
    out: Dict[Tree, Fraction] = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            s, t = canonical((a, b))
            if s:
                out[t] = out.get(t, Fraction(0)) + s * ca * cb
    return LieElement(x.diagram, out)


def normalize(x: LieElement) -> LieElement:
    return LieElement(x.diagram, x.terms)


def to_associative(x: LieElement) -> Dict[Tuple[int, ...], Fraction]:
    """Image in the free associative algebra ([a,b] = ab - ba); faithful on the free Lie algebra."""

    def expand(t: Tree) -> Dict[Tuple[int, ...], int]:
        if isinstance(t, int):
            return {(t,): 1}
        left, right = expand(t[0]), expand(t[1])
        out: Dict[Tuple[int, ...], int] = {}
        for u, cu in left.items():
            for v, cv in right.items():
                out[u + v] = out.get(u + v, 0) + cu * cv
                out[v + u] = out.get(v + u, 0) - cu * cv
        return out

    acc: Dict[Tuple[int, ...], Fraction] = {}
    for t, c in x.terms.items():
        for w, k in expand(t).items():
            acc[w] = acc.get(w, Fraction(0)) + c * k
    return {w: c for w, c in acc.items() if c != 0}


class Relator:
    """A relator ``ad(e_i)^p(e_j) - rhs``; it must vanish in the algebra."""

    __slots__ = ("lhs", "i", "j", "power", "rhs")

    def __init__(self, d: DynkinDiagram, i: int, j: int, power: int, rhs: LieElement):
        self.i, self.j, self.power, self.rhs = i, j, power, rhs
        self.lhs = ad_power(d, i, j, power) - rhs

    @property
    def name(self) -> str:
        d = self.lhs.diagram
        return f"ad(e{d.labels[self.i]})^{self.power}(e{d.labels[self.j]})"

    def __repr__(self) -> str:
        return f"Relator({format_element(self.lhs)} = 0)"


def ad_power(d: DynkinDiagram, i: int, j: int, power: int) -> LieElement:
    t: Tree = j
    for _ in range(power):
        t = (i, t)
    return LieElement.from_tree(d, t)


def electrical_relators(d: DynkinDiagram) -> List[Relator]:
    """One relator per ordered pair of distinct nodes (the a_ij = -1 right side is -2 e_i)."""
    a = cartan_matrix(d)
    out = []
    for i in range(d.rank):
        for j in range(d.rank):
            if i == j:
                continue
            if a[i][j] == -1:
                out.append(Relator(d, i, j, 2, LieElement.gen(d, i) * -2))
            else:
                out.append(Relator(d, i, j, 1 - a[i][j], LieElement.zero(d)))
    return out


def spanning_word(alpha, d: DynkinDiagram) -> Tree:
    return word_tree(root_decomposition(tuple(alpha), d))


def substitute(
    x: LieElement, assignment: Mapping[int, LieElement], target: Optional[DynkinDiagram] = None
) -> LieElement:
    """Homomorphic image of x under generator i -> assignment[i]."""
    if target is None:
        vals = list(assignment.values())
        if not vals:
            raise MissingAssignment("empty assignment needs an explicit target diagram")
        target = vals[0].diagram
    cache: Dict[Tree, LieElement] = {}

    def image(t: Tree) -> LieElement:
        if t in cache:
            return cache[t]
        if isinstance(t, int):
            if t not in assignment:
                raise MissingAssignment(f"no image for generator {x.diagram.labels[t]}")
            v = assignment[t]
            if v.diagram != target:
                raise DiagramMismatch("assignment values live in different diagrams")
        else:
            v = bracket(image(t[0]), image(t[1]))
        cache[t] = v
        return v

    out = LieElement.zero(target)
    for t, c in x.terms.items():
        out = out + image(t) * c
    return out


# -- text form ---------------------------------------------------------------

def format_tree(t: Tree, d: DynkinDiagram) -> str:
    if isinstance(t, int):
        return "e" + d.labels[t]
    return "[" + format_tree(t[0], d) + format_tree(t[1], d) + "]"


def format_fraction(c: Fraction) -> str:
    return str(Fraction(c))


def format_element(x: LieElement) -> str:
    if not x.terms:
        return "0"
    parts = []
    for t in sorted(x.terms, key=tree_key):
        c = x.terms[t]
        s = format_tree(t, x.diagram)
        if c == 1:
            parts.append(f"+{s}")
        elif c == -1:
            parts.append(f"-{s}")
        else:
            parts.append(f"{'+' if c > 0 else '-'}{format_fraction(abs(c))}*{s}")
    out = "".join(parts)
    return out[1:] if out.startswith("+") else out


_TOKEN = re.compile(r"\s*(\[|\]|e(\d+b?))")


def parse_tree(text: str, d: DynkinDiagram) -> Tree:
    """Parse ``[e1[e2e3]]``-style text (D uses ``e1b`` for the barred node)."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        tokens.append(m.group(2) if m.group(2) else m.group(1))
        pos = m.end()

    def parse(k: int) -> Tuple[Tree, int]:
        if k >= len(tokens):
            raise ValueError(f"unexpected end of {text!r}")
        tok = tokens[k]
        if tok == "[":
            left, k = parse(k + 1)
            right, k = parse(k)
            if k >= len(tokens) or tokens[k] != "]":
                raise ValueError(f"expected ']' in {text!r}")
            return (left, right), k + 1
        if tok == "]":
            raise ValueError(f"unexpected ']' in {text!r}")
        return d.node(tok), k + 1

    tree, end = parse(0)
    if end != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return tree
