"""Free Lie algebra terms: antisymmetry, Jacobi, relators, substitution and text form."""
from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from electrical_lie.dynkin import diagram
from electrical_lie.errors import DiagramMismatch, MissingAssignment
from electrical_lie.freelie import (
    LieElement,
    bracket,
    electrical_relators,
    format_element,
    format_tree,
    leaf_count,
    parse_tree,
    substitute,
    to_associative,
    word_tree,
)

A4 = diagram("A", 4)
D5 = diagram("D", 5)


def trees(d, max_leaves=4):
    leaf = st.integers(min_value=0, max_value=d.rank - 1)
    return st.recursive(leaf, lambda kids: st.tuples(kids, kids), max_leaves=max_leaves)


def elements(d):
    term = st.tuples(trees(d), st.fractions(max_denominator=5).filter(lambda c: c != 0))
    return st.lists(term, max_size=3).map(lambda ts: sum((LieElement.from_tree(d, t, c) for t, c in ts), LieElement.zero(d)))


def assoc_sum(*xs):
    out = {}
    for x in xs:
        for w, c in to_associative(x).items():
            out[w] = out.get(w, Q(0)) + c
    return {w: c for w, c in out.items() if c}


def test_bracket_examples():
    e1, e2 = LieElement.gen(A4, 0), LieElement.gen(A4, 1)
    assert bracket(e1, e1).is_zero()
    assert bracket(e2, e1) == -bracket(e1, e2)
    assert format_element(bracket(e1, bracket(e1, e2))) == "[e1[e1e2]]"
    assert format_element(bracket(e1, e2) * Q(-3, 2) + e1) == "e1-3/2*[e1e2]"


@given(elements(A4), elements(A4))
def test_antisymmetry(x, y):
    assert bracket(x, y) == -bracket(y, x)


@given(elements(A4), elements(A4), elements(A4))
def test_jacobi_holds_formally(x, y, z):
    # the free Lie algebra embeds in the free associative algebra
    s = assoc_sum(bracket(x, bracket(y, z)), bracket(y, bracket(z, x)), bracket(z, bracket(x, y)))
    assert s == {}


@given(elements(A4), elements(A4))
def test_associative_image_is_commutator(x, y):
    lhs = to_associative(bracket(x, y))
    ax, ay = to_associative(x), to_associative(y)
    rhs = {}
    for u, cu in ax.items():
        for v, cv in ay.items():
            rhs[u + v] = rhs.get(u + v, Q(0)) + cu * cv
            rhs[v + u] = rhs.get(v + u, Q(0)) - cu * cv
    assert lhs == {w: c for w, c in rhs.items() if c}


@given(trees(D5, 6))
def test_parse_format_roundtrip(t):
    x = LieElement.from_tree(D5, t)
    for tt in x.terms:
        assert parse_tree(format_tree(tt, D5), D5) == tt
        assert leaf_count(tt) == leaf_count(t)


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_tree("[e1e2", A4)
    with pytest.raises(ValueError):
        parse_tree("[e1 x]", A4)
    with pytest.raises(KeyError):
        parse_tree("e9", A4)


def test_relator_examples():
    b2 = diagram("B", 2)
    names = sorted(r.name for r in electrical_relators(b2))
    assert names == ["ad(e1)^2(e2)", "ad(e2)^3(e1)"]
    a3 = diagram("A", 3)
    rels = {r.name: r for r in electrical_relators(a3)}
    assert len(rels) == 6
    e1, e2 = LieElement.gen(a3, 0), LieElement.gen(a3, 1)
    assert rels["ad(e1)^2(e2)"].lhs == bracket(e1, bracket(e1, e2)) + e1 * 2
    assert rels["ad(e1)^1(e3)"].lhs == LieElement.word(a3, [0, 2])


@pytest.mark.parametrize("fam,n", [("A", 5), ("B", 4), ("C", 4), ("D", 5)])
def test_one_relator_per_ordered_pair(fam, n):
    d = diagram(fam, n)
    rels = electrical_relators(d)
    assert len(rels) == n * (n - 1)
    for r in rels:
        assert r.rhs.is_zero() or r.power == 2


def test_substitute_homomorphism():
    a2 = diagram("A", 2)
    x = LieElement.word(a2, [0, 0, 1])
    img = substitute(x, {0: LieElement.gen(A4, 0), 1: LieElement.word(A4, [1, 2])})
    assert img == LieElement.from_tree(A4, (0, (0, (1, 2))))
    with pytest.raises(MissingAssignment):
        substitute(x, {0: LieElement.gen(A4, 0)})
    with pytest.raises(DiagramMismatch):
        LieElement.gen(A4, 0) + LieElement.gen(D5, 0)


@given(elements(A4), elements(A4))
def test_substitute_respects_brackets(x, y):
    phi = {0: LieElement.gen(D5, 2), 1: LieElement.gen(D5, 3), 2: LieElement.word(D5, [0, 2]), 3: LieElement.gen(D5, 4)}
    lhs = substitute(bracket(x, y), phi, D5)
    rhs = bracket(substitute(x, phi, D5), substitute(y, phi, D5))
    assert assoc_sum(lhs, -rhs) == {}


def test_word_tree():
    assert word_tree([0, 1, 2]) == (0, (1, 2))
    assert word_tree([3]) == 3
