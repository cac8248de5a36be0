"""Acceptance criteria, one test each.  Tolerance is exact equality throughout."""
import random
import subprocess
import sys
import time

from electrical_lie.closure import certify_table
from electrical_lie.dynkin import diagram
from electrical_lie.freelie import LieElement
from electrical_lie.reps import evaluate, rep_C_gl, rep_C_scalar
from electrical_lie.verify import (
    build_table,
    certify_dimension,
    run_suite,
    typeC_c,
    typeD_lemma_cases,
    verify_typeC_oracle,
)

DIMENSIONS = (
    [("A", n, n * (n + 1) // 2) for n in range(1, 9)]
    + [("B", n, n * n) for n in range(2, 7)]
    + [("C", n, n * n) for n in range(2, 9)]
    + [("D", n, n * n - n) for n in range(4, 7)]
)
BOTH_ROUTES = [(f, n) for f, n, _ in DIMENSIONS if f != "D"]


def _names(cert):
    return {c.name: c.ok for c in cert.checks}


def test_criterion_1_dimension_certificates():
    bad = []
    for fam, n, expected in DIMENSIONS:
        t0 = time.perf_counter()
        cert = certify_dimension(fam, n)
        took = time.perf_counter() - t0
        dim = len(build_table(fam, n).roots)
        if not cert.overall or dim != expected or took >= 60:
            bad.append((f"{fam}{n}", dim, expected, cert.failed(), round(took, 1)))
    assert not bad, bad


def test_criterion_2_representation_fidelity():
    x = LieElement.word(diagram("C", 4), [0, 0, 1, 2])  # [e1[e1[e2e3]]]
    assert evaluate(x, rep_C_gl(2)).entry(13, 9) == 1
    for n in (2, 3):
        m = evaluate(typeC_c(n), rep_C_scalar(n))
        assert m.to_dense() == [[2 * n]]


def test_criterion_3_oracle_equivalence():
    report = {}
    for r in (4, 6):
        cert = verify_typeC_oracle(build_table("C", r))
        report[f"C{r}"] = cert.failed()
    t = build_table("D", 5)
    d5 = []
    for name, x, y, expected in typeD_lemma_cases(2):
        got = t.bracket_vec(t.evaluate(x), t.evaluate(y))
        if got != t.evaluate(expected):
            d5.append(name)
    report["D5"] = d5
    assert report == {"C4": [], "C6": [], "D5": []}, report


def test_criterion_4_typeC_structural_suites():
    for n in (2, 3):
        r = 2 * n
        ideal = _names(run_suite("ideal", "C", r))
        center = _names(run_suite("center", "C", r))
        quotient = _names(run_suite("quotient", "C", r))
        weights = _names(run_suite("weights", "C", r))
        p = f"c{r}."
        required = {
            "ideal.Iprime": ideal,
            "abelian.Iprime": ideal,
            "ideal.I.dim": ideal,
            "center.c.generators_commute": center,
            "center.c.in_nullspace": center,
            "quotient.constants_equal": quotient,
            "quotient.dim_I": quotient,
            "weights.eigenvalues": weights,
            "weights.weyl_dim": weights,
            "weights.dim_I_is_V_lambda_plus_trivial": weights,
        }
        for name, checks in required.items():
            assert checks.get(p + name) is True, (r, name)
        for checks in (ideal, center, quotient, weights):
            assert all(checks.values()), [k for k, v in checks.items() if not v]


def test_criterion_5_typeD_suites():
    for n in (1, 2):
        r = 2 * n + 1
        cert = run_suite("radical", "D", r)
        checks = _names(cert)
        p = f"d{r}."
        for name in (
            "embed.injective",
            "radical.KI_zero",
            "radical.JJ_in_I",
            "radical.quotient.constants_equal",
            "radical.dim_Kbar",
            "radical.dimension_identity",
        ):
            assert checks.get(p + name) is True, (r, name)
        assert any(k.startswith(p + "embed.ad(") for k in checks)
        assert cert.overall, cert.failed()
        inj = next(c for c in cert.checks if c.name == p + "embed.injective")
        assert inj.witness == 4 * n * n
        assert (2 * n * n + n) + 2 * n + (2 * n * n - n) == (2 * n + 1) ** 2 - (2 * n + 1)


def test_criterion_6_property_suites():
    bad = []
    rng = random.Random(20261018)
    for fam, n, _ in DIMENSIONS:
        t = build_table(fam, n)
        c = certify_table(t)
        if not (c.antisymmetry_ok and c.jacobi_ok and c.relations_ok and c.generated_ok and c.exhaustive):
            bad.append((t.diagram.name, "certificate", c.failures[:3]))
        if t.dim >= 2:
            for _ in range(3):
                a, b = rng.sample(range(t.dim), 2)
                m = certify_table(t.mutated(a, b, rng.randrange(t.dim), rng.choice([1, -1, 2])))
                if m.jacobi_ok and m.relations_ok:
                    bad.append((t.diagram.name, "mutation missed", a, b))
    for fam, n in BOTH_ROUTES:
        if not build_table(fam, n, "representation").constants_equal(build_table(fam, n, "presentation")):
            bad.append((f"{fam}{n}", "routes differ"))
    assert not bad, bad


def test_criterion_7_determinism():
    commands = [
        ["verify", "--family", "C", "--rank", "4", "--suite", "all"],
        ["verify", "--family", "D", "--rank", "5", "--suite", "radical"],
        ["verify", "--family", "B", "--rank", "3", "--suite", "table"],
    ]
    for argv in commands:
        outs = [subprocess.run([sys.executable, "-m", "electrical_lie", *argv], capture_output=True) for _ in range(2)]
        assert outs[0].returncode == outs[1].returncode
        assert outs[0].stdout == outs[1].stdout and outs[0].stdout
