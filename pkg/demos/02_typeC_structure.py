"""C4: the abelian ideal I, its central element c and the quotient by I.

Run: python3 demos/02_typeC_structure.py
"""
from electrical_lie.verify import build_table, ideal_I, run_suite, typeC_c
from electrical_lie.freelie import format_element

n = 2
t = build_table("C", 2 * n)
print(t)
print("c =", format_element(typeC_c(n)))
print("I has", len(ideal_I(n).elements), "spanning elements; 2n^2 - n =", 2 * n * n - n)

for suite in ("ideal", "center", "quotient", "weights"):
    cert = run_suite(suite, "C", 2 * n)
    print(f"{suite:9s} {'pass' if cert.overall else 'FAIL'}  ({len(cert.checks)} checks)")
    for c in cert.checks:
        if c.name.endswith(("eigenvalues", "weyl_dim", "constants_equal", "center.dim")):
            print("   ", c.name, c.witness)
