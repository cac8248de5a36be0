"""Claim suites, weights and the Weyl dimension formula."""
import json
from math import comb

import pytest
from hypothesis import given, strategies as st

from electrical_lie.dynkin import diagram
from electrical_lie.errors import NonDominant, Unsupported
from electrical_lie.freelie import LieElement
from electrical_lie.reps import evaluate, rep_A_even
from electrical_lie.verify import (
    IdealSpec,
    Weight,
    build_table,
    certify_dimension,
    d_D,
    d_E,
    doubled,
    gen,
    ideal_Iprime,
    run_all,
    run_suite,
    typeC_c,
    typeD_c,
    verify_abelian,
    verify_center,
    verify_ideal,
    weight_vector_preimages,
    weyl_dim_sp,
)


# closed forms for sp_2n modules: Sym^k V and the traceless part of Lambda^k V
@given(st.integers(1, 6), st.integers(0, 6))
def test_weyl_dim_symmetric_powers(n, k):
    assert weyl_dim_sp(Weight((k,)), n) == comb(2 * n + k - 1, k)


@given(st.integers(1, 7), st.data())
def test_weyl_dim_fundamentals(n, data):
    k = data.draw(st.integers(1, n))
    labels = [0] * n
    labels[k - 1] = 1
    assert weyl_dim_sp(Weight.from_dynkin_labels(labels), n) == comb(2 * n, k) - (comb(2 * n, k - 2) if k >= 2 else 0)


@given(st.integers(1, 8))
def test_weyl_dim_named_modules(n):
    assert weyl_dim_sp(Weight((0,)), n) == 1
    assert weyl_dim_sp(Weight((1,)), n) == 2 * n
    assert weyl_dim_sp(Weight((2,)), n) == n * (2 * n + 1)  # adjoint
    if n >= 2:
        assert weyl_dim_sp(Weight((1, 1)), n) == (2 * n + 1) * (n - 1)


@given(st.lists(st.integers(0, 4), min_size=1, max_size=6))
def test_dynkin_label_roundtrip(labels):
    w = Weight.from_dynkin_labels(labels)
    assert w.dynkin_labels() == tuple(labels)


def test_non_dominant_weights():
    with pytest.raises(NonDominant):
        weyl_dim_sp(Weight((0, 1)), 2)
    with pytest.raises(NonDominant):
        weyl_dim_sp(Weight((1, 1, 1)), 2)


def test_named_elements():
    c4 = diagram("C", 4)
    assert doubled(c4, 1, 3) == LieElement.word(c4, [0, 0, 1, 2])
    d5 = diagram("D", 5)
    assert d_E(d5, 3, bar=True) == LieElement.word(d5, [0, 2, 3])
    assert d_D(d5, 2, 3) == LieElement.word(d5, [2, 0, 1, 2, 3])
    assert d_D(d5, 1, 2) == LieElement.word(d5, [0, 1, 2])


def test_typeD_products_from_the_lemma():
    t = build_table("D", 5)
    d = t.diagram
    e12, e123 = d_E(d, 2), d_E(d, 3)
    got = t.bracket_vec(t.evaluate(e12), t.evaluate(e123))
    assert got == t.evaluate(gen(d, 1) * 2 + e123)


def test_C_into_D_halves_the_center():
    from electrical_lie.reps import hom_C_into_D

    t = build_table("D", 5)
    (img,) = hom_C_into_D(2).apply(typeC_c(2))
    assert t.evaluate(img * 2) == t.evaluate(typeD_c(2))


def test_non_ideal_and_non_abelian_are_caught():
    t = build_table("A", 3)
    d = t.diagram
    assert not verify_ideal(t, IdealSpec("e1", [gen(d, 1)])).overall
    assert not verify_abelian(t, IdealSpec("e1e2", [gen(d, 1), gen(d, 2)])).overall
    assert verify_ideal(t, IdealSpec("all", [t.element(t.unit(k)) for k in range(t.dim)])).overall


def test_perturbed_center_is_caught():
    t = build_table("C", 4)
    d = t.diagram
    assert verify_center(t, typeC_c(2)).overall
    assert not verify_center(t, typeC_c(2) + gen(d, 2)).overall


def test_Iprime_examples():
    t = build_table("C", 4)
    spec = ideal_Iprime(t.diagram)
    assert len(spec.elements) == 5
    assert verify_ideal(t, spec).overall and verify_abelian(t, spec).overall


@pytest.mark.parametrize("n", [1, 2, 3])
def test_weight_preimages_in_sp(n):
    pre = weight_vector_preimages(n)
    rep = rep_A_even(n - 1)
    # toral preimages go to the diagonal units E_kk - E_{n+k,n+k}
    for k, x in enumerate(pre.toral):
        m = evaluate(x, rep)
        assert sorted(m.entries()) == [(k, k, 1), (n + k, n + k, -1)]


def test_preimage_base_case():
    pre = weight_vector_preimages(1)
    d = diagram("A", 2)
    assert pre.toral == [LieElement.word(d, [0, 1])]
    assert pre.top == gen(d, 1)


def test_unsupported_suites():
    with pytest.raises(Unsupported):
        run_suite("quotient", "C", 3)
    with pytest.raises(Unsupported):
        run_suite("radical", "D", 4)
    with pytest.raises(Unsupported):
        run_suite("oddA", "A", 4)
    with pytest.raises(Unsupported):
        run_suite("nope", "A", 4)


@pytest.mark.parametrize("fam,n", [("A", 3), ("A", 5), ("B", 4), ("C", 2), ("C", 4), ("D", 3), ("D", 4)])
def test_all_applicable_suites_pass(fam, n):
    cert = run_all(fam, n)
    assert cert.overall, cert.failed()


def test_certificate_json_is_stable():
    a = certify_dimension("B", 3).to_json()
    b = certify_dimension("B", 3).to_json()
    assert a == b
    doc = json.loads(a)
    assert doc["overall"] and doc["family"] == "B"
    assert [c["name"] for c in doc["checks"]][:2] == ["b3.dim.upper", "b3.table.antisymmetry"]
