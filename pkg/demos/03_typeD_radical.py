"""D5: the radical J, the quotient A4, and a bracket the closed-form tables get wrong.

Run: python3 demos/03_typeD_radical.py
"""
from electrical_lie import LieElement, bracket, diagram, evaluate, rep_A_even
from electrical_lie.verify import build_table, d_E, run_suite, verify_typeD_oracle

cert = run_suite("radical", "D", 5)
print(f"radical suite: {'pass' if cert.overall else 'FAIL'} ({len(cert.checks)} checks)")
for c in cert.checks:
    if c.name.startswith("d5.radical.d"):
        print("   ", c.name, c.witness)

t = build_table("D", 5)
oracle = verify_typeD_oracle(t)
print("\nentries of the closed-form type-D bracket table that the certified table contradicts:")
for c in oracle.checks:
    if not c.ok:
        print("   ", c.name, c.witness)

# The first one is visible without the D solver: modulo J the algebra is A4 = sp4.
a4 = diagram("A", 4)
x = bracket(LieElement.word(a4, [0, 1]), LieElement.word(a4, [0, 1, 2, 3]))
print("\nin the sp4 model of A4, [[e1e2],[e1[e2[e3e4]]]] =")
for row in evaluate(x, rep_A_even(1)).to_dense():
    print("   ", " ".join(f"{str(c):>3}" for c in row))
print("which is the image of [e1[e2[e3e4]]], not 0")
d5 = diagram("D", 5)
v = t.bracket_vec(t.evaluate(d_E(d5, 2)), t.evaluate(d_E(d5, 4)))
print("D5 table agrees, [E(2), E(4)] == E(4):", v == t.evaluate(d_E(d5, 4)))
