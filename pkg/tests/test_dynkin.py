"""Diagrams, Cartan matrices, root enumeration and spanning-word decompositions."""
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from electrical_lie.dynkin import (
    build_order_sums,
    cartan_matrix,
    diagram,
    expected_root_count,
    parity_signs,
    positive_roots,
    root_decomposition,
    root_label,
    simple_root,
    symmetrizer,
)
from electrical_lie.errors import NotAPositiveRoot, UnsupportedType

SMALL = [("A", n) for n in range(1, 7)] + [("B", n) for n in range(2, 6)] + [("C", n) for n in range(2, 6)] + [
    ("D", n) for n in range(3, 7)
]


def weyl_orbit_positive_roots(d):
    """Independent oracle: close the simple roots under simple reflections."""
    a = cartan_matrix(d)
    r = d.rank
    seen = {simple_root(d, i) for i in range(r)}
    todo = list(seen)
    while todo:
        beta = todo.pop()
        for i in range(r):
            pairing = sum(beta[j] * a[i][j] for j in range(r))
            img = tuple(b - pairing * (k == i) for k, b in enumerate(beta))
            if all(x <= 0 for x in img):
                img = tuple(-x for x in img)
            if img not in seen:
                seen.add(img)
                todo.append(img)
    return seen


def brute_force_decomposition(alpha, d):
    roots = set(positive_roots(d))
    multiset = [i for i, c in enumerate(alpha) for _ in range(c)]
    best = None
    for seq in set(permutations(multiset)):
        if all(s in roots for s in build_order_sums(seq, d)):
            if best is None or seq < best:
                best = seq
    return best


def test_cartan_examples():
    assert cartan_matrix(diagram("A", 2)) == ((2, -1), (-1, 2))
    assert cartan_matrix(diagram("B", 2)) == ((2, -1), (-2, 2))
    assert cartan_matrix(diagram("C", 2)) == ((2, -2), (-1, 2))
    d4 = diagram("D", 4)
    assert d4.labels == ("1b", "1", "2", "3")
    assert cartan_matrix(d4)[0][2] == cartan_matrix(d4)[1][2] == -1
    assert cartan_matrix(d4)[0][1] == 0


@pytest.mark.parametrize("fam,n", SMALL)
def test_symmetrizable(fam, n):
    d = diagram(fam, n)
    a, s = cartan_matrix(d), symmetrizer(d)
    for i in range(n):
        for j in range(n):
            assert s[i] * a[i][j] == s[j] * a[j][i]


@pytest.mark.parametrize("fam,n", SMALL)
def test_parity_signs_alternate_on_edges(fam, n):
    d = diagram(fam, n)
    sg = parity_signs(d)
    for i, j in d.edges():
        assert sg[i] == -sg[j]


@pytest.mark.parametrize("fam,n", SMALL)
def test_positive_roots_match_weyl_orbit(fam, n):
    d = diagram(fam, n)
    roots = positive_roots(d)
    assert len(roots) == expected_root_count(fam, n)
    assert set(roots) == weyl_orbit_positive_roots(d)


def test_positive_root_examples():
    assert positive_roots(diagram("A", 2)) == ((1, 0), (0, 1), (1, 1))
    assert positive_roots(diagram("C", 2)) == ((1, 0), (0, 1), (1, 1), (2, 1))
    assert positive_roots(diagram("B", 2))[-1] == (1, 2)
    assert root_label((2, 1), diagram("C", 2)) == "2a1+a2"


def test_decomposition_examples():
    c3 = diagram("C", 3)
    # 2a1+2a2+a3 = [e2[e1[e1[e2e3]]]]
    assert root_decomposition((2, 2, 1), c3) == (1, 0, 0, 1, 2)
    d5 = diagram("D", 5)
    # a1b+a1+2a2+a3 = [e2[e1b[e1[e2e3]]]]
    assert root_decomposition((1, 1, 2, 1, 0), d5) == (2, 0, 1, 2, 3)
    assert root_decomposition((0, 1, 0), diagram("A", 3)) == (1,)


def test_decomposition_rejects_non_roots():
    with pytest.raises(NotAPositiveRoot):
        root_decomposition((1, 0, 1), diagram("A", 3))
    with pytest.raises(NotAPositiveRoot):
        root_decomposition((0, 2), diagram("C", 2))


@pytest.mark.parametrize("fam,n", [("A", 4), ("B", 3), ("B", 4), ("C", 3), ("C", 4), ("D", 4), ("D", 5)])
def test_decomposition_is_lexicographic_minimum(fam, n):
    d = diagram(fam, n)
    for alpha in positive_roots(d):
        assert root_decomposition(alpha, d) == brute_force_decomposition(alpha, d)


@pytest.mark.parametrize("fam,lo,hi", [("A", 1, 10), ("B", 2, 8), ("C", 2, 8), ("D", 3, 8)])
def test_decomposition_properties_all_ranks(fam, lo, hi):
    for n in range(lo, hi + 1):
        d = diagram(fam, n)
        roots = set(positive_roots(d))
        for alpha in positive_roots(d):
            seq = root_decomposition(alpha, d)
            sums = build_order_sums(seq, d)
            assert sums[-1] == alpha
            assert all(s in roots for s in sums)


@given(st.sampled_from(["A", "B", "C", "D"]), st.integers(min_value=1, max_value=30))
def test_unsupported_shapes_raise(fam, n):
    if fam == "D" and n < 3:
        with pytest.raises(UnsupportedType):
            diagram(fam, n)
    else:
        assert diagram(fam, n).rank == n


def test_unknown_family():
    with pytest.raises(UnsupportedType):
        diagram("E", 6)
    with pytest.raises(UnsupportedType):
        diagram("A", 0)
