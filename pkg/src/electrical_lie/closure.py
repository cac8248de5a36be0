"""Structure-constant tables on the root-indexed spanning basis.

Two independent routes produce a table:

* :func:`table_from_representation` pulls brackets back through a matrix
  representation (exact span solves on flattened matrices);
* :func:`table_from_presentation` works from the relators alone.

:func:`certify_table` then checks antisymmetry, every Jacobi triple, every
relator and that each basis word evaluates to its own basis vector.  A
table passing all four is a Lie algebra generated by elements satisfying
the relators, hence a quotient of the presented algebra of the same
dimension as the basis.

Presentation route
------------------
The unknowns are the generator actions ``T(m, g) = [e_m, e_g]``.  They are
found height by height: ``T(m, g)`` with ``height(g) = h`` is solved after
all lower heights are known.  Brackets of basis words are expanded along
the left word, ``[[e_m, u], v] = [e_m, [u, v]] - [u, [e_m, v]]``, so every
bracket of total height ``h + 1`` is affine in the height-``h`` unknowns.
Antisymmetry, the relators and (when needed) Jacobi instances of that
total height give a linear system.  The ansatz for ``T(m, g)`` uses the
filtration by height and the grading by signed height (each relator keeps
the alternating sum over a bipartite colouring of the nodes fixed): only
basis vectors of height at most ``h + 1`` and of matching signed height
may appear, and at height ``h + 1`` only the root ``g + alpha_m``.
"""
from __future__ import annotations

import json
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .dynkin import (
    DynkinDiagram,
    Root,
    diagram,
    height,
    parity_signs,
    positive_roots,
    root_decomposition,
    simple_root,
)
from .errors import (
    ClosureDiverged,
    ExpansionFailed,
    InconsistentPresentation,
    NotClosed,
    NotFaithfulAtThisRank,
)
from .exactla import EchelonBasis, SparseMatrix, Vector, axpy, solve_linear_system
from .freelie import LieElement, Tree, electrical_relators, format_tree, parse_tree, word_tree

REP_DERIVED = "rep-derived"
CLOSURE_DERIVED = "closure-derived"

JACOBI_EXHAUSTIVE_LIMIT = 64
JACOBI_SAMPLE_SIZE = 50000


class StructureTable:
    """Basis ``e_alpha`` (alpha a positive root) and constants ``[e_a, e_b] = sum_c C[a,b][c] e_c``."""

    def __init__(
        self,
        d: DynkinDiagram,
        constants: Mapping[Tuple[int, int], Mapping[int, Fraction]],
        provenance: str,
    ):
        self.diagram = d
        self.roots: Tuple[Root, ...] = positive_roots(d)
        self.index: Dict[Root, int] = {r: k for k, r in enumerate(self.roots)}
        self.words: Tuple[Tuple[int, ...], ...] = tuple(root_decomposition(r, d) for r in self.roots)
        self.trees: Tuple[Tree, ...] = tuple(word_tree(w) for w in self.words)
        self.simple: Tuple[int, ...] = tuple(self.index[simple_root(d, i)] for i in range(d.rank))
        self.provenance = provenance
        n = len(self.roots)
        self._c: Dict[Tuple[int, int], Vector] = {}
        for a in range(n):
            for b in range(n):
                v = constants.get((a, b))
                if v is None:
                    continue
                v = {k: Fraction(x) for k, x in v.items() if x != 0}
                if v:
                    self._c[(a, b)] = v

    @classmethod
    def from_upper(cls, d: DynkinDiagram, upper: Mapping[Tuple[int, int], Mapping[int, Fraction]], provenance: str) -> "StructureTable":
        """Build from constants for a < b, filling b > a by antisymmetry."""
        full: Dict[Tuple[int, int], Vector] = {}
        for (a, b), v in upper.items():
            if a == b:
                continue
            full[(a, b)] = dict(v)
            full[(b, a)] = {k: -x for k, x in v.items()}
        return cls(d, full, provenance)

    @property
    def dim(self) -> int:
        return len(self.roots)

    def bracket(self, a: int, b: int) -> Vector:
        return self._c.get((a, b), {})

    def unit(self, a: int) -> Vector:
        return {a: Fraction(1)}

    def ad_apply(self, a: int, v: Mapping[int, Fraction]) -> Vector:
        acc: Vector = {}
        for k, c in v.items():
            w = self._c.get((a, k))
            if w:
                axpy(acc, c, w)
        return acc

    def bracket_vec(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Vector:
        acc: Vector = {}
        for a, ca in u.items():
            for b, cb in v.items():
                w = self._c.get((a, b))
                if w:
                    axpy(acc, ca * cb, w)
        return acc

    def evaluate_tree(self, t: Tree) -> Vector:
        if isinstance(t, int):
            return {self.simple[t]: Fraction(1)}
        return self.bracket_vec(self.evaluate_tree(t[0]), self.evaluate_tree(t[1]))

    def evaluate(self, x: LieElement) -> Vector:
        if x.diagram != self.diagram:
            raise ExpansionFailed(f"element over {x.diagram.name}, table over {self.diagram.name}")
        acc: Vector = {}
        cache: Dict[Tree, Vector] = {}
        for t, c in x.terms.items():
            if t not in cache:
                cache[t] = self.evaluate_tree(t)
            axpy(acc, c, cache[t])
        return acc

    def element(self, v: Mapping[int, Fraction]) -> LieElement:
        return LieElement(self.diagram, {self.trees[k]: c for k, c in v.items()})

    def word_index(self, word: Sequence[int]) -> int:
        """Basis index whose word is exactly ``word``."""
        w = tuple(word)
        try:
            return self.words.index(w)
        except ValueError:
            raise KeyError(f"{w} is not a basis word of {self.diagram.name}") from None

    def ad_matrix(self, a: int) -> SparseMatrix:
        m = SparseMatrix(self.dim, self.dim)
        for b in range(self.dim):
            for k, c in self.bracket(a, b).items():
                m.add_entry(k, b, c)
        return m

    def constants_equal(self, other: "StructureTable") -> bool:
        return self.diagram == other.diagram and self._c == other._c

    def mutated(self, a: int, b: int, target: int, delta: Fraction = Fraction(1)) -> "StructureTable":
        """Copy with ``C[a,b][target] += delta`` (and the antisymmetric partner)."""
        new = {k: dict(v) for k, v in self._c.items()}
        for (x, y), s in (((a, b), 1), ((b, a), -1)):
            v = new.setdefault((x, y), {})
            v[target] = v.get(target, Fraction(0)) + s * delta
            if v[target] == 0:
                del v[target]
        return StructureTable(self.diagram, new, self.provenance + "+mutated")

    def rescaled(self, a: int, k: Fraction) -> "StructureTable":
        """Same algebra in the basis with e_a replaced by k e_a."""
        k = Fraction(k)
        new: Dict[Tuple[int, int], Vector] = {}
        for (x, y), v in self._c.items():
            s = (k if x == a else 1) * (k if y == a else 1)
            w = {}
            for g, c in v.items():
                w[g] = c * s / (k if g == a else 1)
            new[(x, y)] = w
        return StructureTable(self.diagram, new, self.provenance + "+rescaled")

    # -- serialization ------------------------------------------------------------

    def to_dict(self) -> dict:
        d = self.diagram
        consts = []
        for a in range(self.dim):
            for b in range(a + 1, self.dim):
                v = self.bracket(a, b)
                if v:
                    consts.append([a, b, [[k, str(v[k])] for k in sorted(v)]])
        return {
            "schema": 1,
            "family": d.family,
            "rank": d.rank,
            "provenance": self.provenance,
            "basis": [format_tree(t, d) for t in self.trees],
            "constants": consts,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: Mapping) -> "StructureTable":
        d = diagram(data["family"], data["rank"])
        t0 = cls(d, {}, data.get("provenance", "loaded"))
        got = [parse_tree(s, d) for s in data["basis"]]
        if tuple(got) != t0.trees:
            raise ExpansionFailed("basis words in the document differ from the canonical basis")
        upper = {(a, b): {k: Fraction(c) for k, c in entries} for a, b, entries in data["constants"]}
        return cls.from_upper(d, upper, data.get("provenance", "loaded"))

    @classmethod
    def from_json(cls, text: str) -> "StructureTable":
        return cls.from_dict(json.loads(text))

    def __repr__(self) -> str:
        return f"StructureTable({self.diagram.name}, dim={self.dim}, {self.provenance})"


# -- representation route ----------------------------------------------------------

def word_images(d: DynkinDiagram, images: Mapping[int, SparseMatrix]) -> List[SparseMatrix]:
    """Images of the basis words, each built from the image of its tail."""
    roots = positive_roots(d)
    index = {r: k for k, r in enumerate(roots)}
    out: List[Optional[SparseMatrix]] = [None] * len(roots)
    for k, r in enumerate(roots):
        w = root_decomposition(r, d)
        if len(w) == 1:
            out[k] = images[w[0]]
        else:
            m = w[0]
            tail = tuple(x - (j == m) for j, x in enumerate(r))
            out[k] = images[m].commutator(out[index[tail]])
    return out  # type: ignore[return-value]


def table_from_representation(d: DynkinDiagram, rep) -> StructureTable:
    images = {i: rep.images[i] for i in range(d.rank)}
    mats = word_images(d, images)
    basis = EchelonBasis()
    for m in mats:
        basis.add(m.flatten())
    if basis.rank < len(mats):
        raise NotFaithfulAtThisRank(
            f"word images of {d.name} span {basis.rank} < {len(mats)} dimensions"
        )
    upper: Dict[Tuple[int, int], Vector] = {}
    n = len(mats)
    for a in range(n):
        for b in range(a + 1, n):
            target = mats[a].commutator(mats[b]).flatten()
            coeffs = basis.express(target)
            if coeffs is None:
                raise NotClosed(f"[e_{a}, e_{b}] leaves the span of the word images in {d.name}")
            if coeffs:
                upper[(a, b)] = coeffs
    return StructureTable.from_upper(d, upper, REP_DERIVED)


# -- presentation route -----------------------------------------------------------

SymVec = Dict[Tuple[int, Optional[int]], Fraction]


def _sym(v: Mapping[int, Fraction]) -> SymVec:
    return {(k, None): c for k, c in v.items()}


def _sym_axpy(acc: SymVec, c: Fraction, v: Mapping) -> None:
    if c == 0:
        return
    for k, x in v.items():
        y = acc.get(k, Fraction(0)) + c * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)


def _numeric(v: SymVec) -> Optional[Vector]:
    out: Vector = {}
    for (k, var), c in v.items():
        if var is not None:
            return None
        out[k] = c
    return out


def default_iteration_cap(d: DynkinDiagram) -> int:
    n = len(positive_roots(d))
    env = os.environ.get("ELA_ITER_CAP")
    if env:
        return int(env)
    return 10 * n * n


class _PresentationSolver:
    def __init__(self, d: DynkinDiagram, max_iterations: int):
        self.d = d
        self.cap = max_iterations
        self.roots = positive_roots(d)
        self.index = {r: k for k, r in enumerate(self.roots)}
        self.n = len(self.roots)
        self.words = [root_decomposition(r, d) for r in self.roots]
        self.ht = [height(r) for r in self.roots]
        signs = parity_signs(d)
        self.sdeg = [sum(s * c for s, c in zip(signs, r)) for r in self.roots]
        self.signs = signs
        self.simple = [self.index[simple_root(d, i)] for i in range(d.rank)]
        self.tail = [None] * self.n
        self.T: Dict[Tuple[int, int], Vector] = {}
        for k, r in enumerate(self.roots):
            w = self.words[k]
            if len(w) > 1:
                m = w[0]
                t = self.index[tuple(x - (j == m) for j, x in enumerate(r))]
                self.tail[k] = t
                self.T[(m, t)] = {k: Fraction(1)}
        self.memo: Dict[Tuple[int, int], Vector] = {}
        self.sym_memo: Dict[Tuple[int, int], SymVec] = {}
        self.unknown: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
        self.level = 0
        self.steps = 0
        self.relators = electrical_relators(d)

    def _tick(self) -> None:
        self.steps += 1
        if self.steps > self.cap:
            raise ClosureDiverged(
                f"{self.d.name}: iteration cap {self.cap} reached at height {self.level}",
                steps=self.steps,
                level=self.level,
            )

    def apply_T(self, m: int, v: SymVec) -> SymVec:
        out: SymVec = {}
        for (k, var), c in v.items():
            known = self.T.get((m, k))
            if known is not None:
                for g, x in known.items():
                    key = (g, var)
                    y = out.get(key, Fraction(0)) + c * x
                    if y:
                        out[key] = y
                    else:
                        out.pop(key, None)
                continue
            slots = self.unknown.get((m, k))
            if slots is None:
                raise RuntimeError(f"generator action ({m},{k}) needed above the current height")
            if var is not None:
                raise RuntimeError("nonlinear term in the height recursion")
            for g, x in slots:
                key = (g, x)
                out[key] = out.get(key, Fraction(0)) + c
        return out

    def br(self, a: int, b: int) -> SymVec:
        total = self.ht[a] + self.ht[b]
        if total <= self.level:
            got = self.memo.get((a, b))
            if got is not None:
                return _sym(got)
        else:
            got_s = self.sym_memo.get((a, b))
            if got_s is not None:
                return got_s
        self._tick()
        w = self.words[a]
        if len(w) == 1:
            res = self.apply_T(w[0], {(b, None): Fraction(1)})
        else:
            m, a1 = w[0], self.tail[a]
            res = dict(self.apply_T(m, self.br(a1, b)))
            inner = self.apply_T(m, {(b, None): Fraction(1)})
            _sym_axpy(res, Fraction(-1), self.br_left(a1, inner))
        num = _numeric(res)
        if num is not None and total <= self.level:
            self.memo[(a, b)] = num
        else:
            self.sym_memo[(a, b)] = res
        return res

    def br_left(self, a: int, v: SymVec) -> SymVec:
        """[e_a, v] for a vector v with constant coefficients."""
        out: SymVec = {}
        for (k, var), c in v.items():
            if var is not None:
                raise RuntimeError("nonlinear term in the height recursion")
            _sym_axpy(out, c, self.br(a, k))
        return out

    def br_right(self, v: SymVec, b: int) -> SymVec:
        out: SymVec = {}
        for (k, var), c in v.items():
            if var is not None:
                raise RuntimeError("nonlinear term in the height recursion")
            _sym_axpy(out, c, self.br(k, b))
        return out

    def eval_tree(self, t: Tree) -> SymVec:
        if isinstance(t, int):
            return {(self.simple[t], None): Fraction(1)}
        left, right = t
        if isinstance(left, int):
            return self.apply_T(left, self.eval_tree(right))
        lv = self.eval_tree(left)
        rv = self.eval_tree(right)
        out: SymVec = {}
        for (k, var), c in lv.items():
            if var is not None:
                raise RuntimeError("nonlinear term in the height recursion")
            _sym_axpy(out, c, self.br_left(k, rv))
        return out

    def _support(self, m: int, g: int) -> List[int]:
        h = self.ht[g]
        s = self.signs[m] + self.sdeg[g]
        up = tuple(x + (j == m) for j, x in enumerate(self.roots[g]))
        out = []
        for k in range(self.n):
            if self.sdeg[k] != s:
                continue
            if self.ht[k] <= h - 1 or self.roots[k] == up:
                out.append(k)
        return out

    @staticmethod
    def _equations(v: SymVec) -> List[Dict[Optional[int], Fraction]]:
        rows: Dict[int, Dict[Optional[int], Fraction]] = {}
        for (k, var), c in v.items():
            rows.setdefault(k, {})[var] = c
        return list(rows.values())

    def solve_level(self, h: int) -> Tuple[int, int]:
        self.level = h
        self.sym_memo = {}
        self.unknown = {}
        nvars = 0
        slots_of: List[Tuple[int, int, int]] = []
        for g in range(self.n):
            if self.ht[g] != h:
                continue
            for m in range(self.d.rank):
                if (m, g) in self.T:
                    continue
                slots = []
                for k in self._support(m, g):
                    slots.append((k, nvars))
                    slots_of.append((m, g, k))
                    nvars += 1
                self.unknown[(m, g)] = slots
        if not self.unknown:
            return 0, 0
        eqs: List[Dict[Optional[int], Fraction]] = []
        for a in range(self.n):
            for b in range(a, self.n):
                if self.ht[a] + self.ht[b] != h + 1:
                    continue
                v = dict(self.br(a, b))
                if a != b:
                    _sym_axpy(v, Fraction(1), self.br(b, a))
                eqs.extend(self._equations(v))
        for rel in self.relators:
            if rel.power != h:
                continue
            v: SymVec = {}
            for t, c in rel.lhs.terms.items():
                _sym_axpy(v, c, self.eval_tree(t))
            eqs.extend(self._equations(v))
        sol, rk = solve_linear_system(eqs, nvars)
        if sol is None:
            raise InconsistentPresentation(f"{self.d.name}: no solution at height {h}")
        if rk < nvars:
            for m in range(self.d.rank):
                for b in range(self.n):
                    for c in range(b + 1, self.n):
                        if self.ht[b] + self.ht[c] != h:
                            continue
                        v = dict(self.apply_T(m, _sym(self.br_num(b, c))))
                        _sym_axpy(v, Fraction(-1), self.br_right(_sym(self.T[(m, b)]), c))
                        _sym_axpy(v, Fraction(-1), self.br_left(b, _sym(self.T[(m, c)])))
                        eqs.extend(self._equations(v))
            sol, rk = solve_linear_system(eqs, nvars)
            if sol is None:
                raise InconsistentPresentation(f"{self.d.name}: no solution at height {h}")
            if rk < nvars:
                raise ClosureDiverged(
                    f"{self.d.name}: {nvars - rk} undetermined constants at height {h}",
                    steps=self.steps,
                    level=h,
                )
        for (m, g), slots in self.unknown.items():
            v: Vector = {}
            for k, var in slots:
                c = sol.get(var, Fraction(0))
                if c:
                    v[k] = c
            self.T[(m, g)] = v
        self.unknown = {}
        self.sym_memo = {}
        return nvars, len(eqs)

    def br_num(self, a: int, b: int) -> Vector:
        got = _numeric(self.br(a, b))
        if got is None:
            raise RuntimeError("expected a determined bracket")
        return got

    def run(self) -> StructureTable:
        top = max(self.ht)
        for h in range(1, top + 1):
            self.solve_level(h)
        self.level = 2 * top + 1
        upper: Dict[Tuple[int, int], Vector] = {}
        for a in range(self.n):
            for b in range(a + 1, self.n):
                v = self.br_num(a, b)
                if v:
                    upper[(a, b)] = v
        return StructureTable.from_upper(self.d, upper, CLOSURE_DERIVED)


def table_from_presentation(d: DynkinDiagram, max_iterations: Optional[int] = None) -> StructureTable:
    cap = default_iteration_cap(d) if max_iterations is None else max_iterations
    solver = _PresentationSolver(d, cap)
    table = solver.run()
    table.steps = solver.steps
    return table


# -- certification -----------------------------------------------------------------

@dataclass
class TableCertificate:
    antisymmetry_ok: bool
    jacobi_ok: bool
    relations_ok: bool
    generated_ok: bool
    dimension: int
    checked_triples: int
    total_triples: int
    exhaustive: bool
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.antisymmetry_ok and self.jacobi_ok and self.relations_ok and self.generated_ok

    def to_dict(self) -> dict:
        return {
            "antisymmetry_ok": self.antisymmetry_ok,
            "jacobi_ok": self.jacobi_ok,
            "relations_ok": self.relations_ok,
            "generated_ok": self.generated_ok,
            "dimension": self.dimension,
            "checked_triples": self.checked_triples,
            "total_triples": self.total_triples,
            "exhaustive": self.exhaustive,
            "failures": list(self.failures),
        }


def jacobi_residual(t: StructureTable, a: int, b: int, c: int) -> Vector:
    acc: Vector = {}
    axpy(acc, Fraction(1), t.ad_apply(a, t.bracket(b, c)))
    axpy(acc, Fraction(1), t.ad_apply(b, t.bracket(c, a)))
    axpy(acc, Fraction(1), t.ad_apply(c, t.bracket(a, b)))
    return acc


def _triples(n: int, seed: int = 0) -> Tuple[Iterable[Tuple[int, int, int]], int, bool]:
    total = n * (n - 1) * (n - 2) // 6
    if n <= JACOBI_EXHAUSTIVE_LIMIT:
        return combinations(range(n), 3), total, True
    rng = random.Random(seed)
    picked = set()
    while len(picked) < min(JACOBI_SAMPLE_SIZE, total):
        picked.add(tuple(sorted(rng.sample(range(n), 3))))
    return sorted(picked), total, False


def certify_table(t: StructureTable, d: Optional[DynkinDiagram] = None, seed: int = 0) -> TableCertificate:
    d = d or t.diagram
    failures: List[str] = []
    n = t.dim

    anti = True
    for a in range(n):
        if t.bracket(a, a):
            anti = False
            failures.append(f"[e{a},e{a}] != 0")
        for b in range(a + 1, n):
            u, v = t.bracket(a, b), t.bracket(b, a)
            if set(u) != set(v) or any(u[k] != -v[k] for k in u):
                anti = False
                failures.append(f"antisymmetry fails at ({a},{b})")

    triples, total, exhaustive = _triples(n, seed)
    jac = True
    checked = 0
    for a, b, c in triples:
        checked += 1
        if jacobi_residual(t, a, b, c):
            jac = False
            if len(failures) < 20:
                failures.append(f"Jacobi fails at ({a},{b},{c})")

    rel_ok = True
    for rel in electrical_relators(d):
        if t.evaluate(rel.lhs):
            rel_ok = False
            failures.append(f"relator {rel.name} does not vanish")

    gen_ok = True
    for k, tree in enumerate(t.trees):
        if t.evaluate_tree(tree) != {k: Fraction(1)}:
            gen_ok = False
            failures.append(f"basis word {format_tree(tree, d)} does not evaluate to itself")

    return TableCertificate(
        antisymmetry_ok=anti,
        jacobi_ok=jac,
        relations_ok=rel_ok,
        generated_ok=gen_ok,
        dimension=n,
        checked_triples=checked,
        total_triples=total,
        exhaustive=exhaustive,
        failures=failures,
    )
