"""Build a few structure tables and print their certified dimensions.

Run: python3 demos/01_small_tables.py
"""
from electrical_lie import certify_table, diagram, table_from_presentation
from electrical_lie.freelie import format_tree
from electrical_lie.verify import certify_dimension

# A2: the electrical relation [e1[e1e2]] = -2e1 turns the span of e1, e2, [e1e2] into sl2
t = table_from_presentation(diagram("A", 2))
names = [format_tree(w, t.diagram) for w in t.trees]
for a in range(t.dim):
    for b in range(a + 1, t.dim):
        v = t.bracket(a, b)
        rhs = " + ".join(f"{c}*{names[k]}" for k, c in sorted(v.items())) or "0"
        print(f"[{names[a]}, {names[b]}] = {rhs}")
print(certify_table(t))

print()
for fam, n in [("A", 5), ("A", 6), ("B", 4), ("C", 5), ("D", 5)]:
    cert = certify_dimension(fam, n)
    dim = next(c.witness for c in cert.checks if c.name.endswith("dim.lower"))
    print(f"{fam}{n}: dim {dim}  certified={cert.overall}")
