"""Fixity-2 actions of PSL2(5) and PSL2(7), read off the table of marks.

Run: python3 demos/psl2_fixity_two.py
"""
from permfix.catalog import catalog_group
from permfix.fixity import fixity_k_actions, test_tom
from permfix.subgroups import table_of_marks

for name in ("L2(5)", "L2(7)"):
    G = catalog_group(name)
    tom = table_of_marks(G)
    print(f"{name}: |G| = {G.order}, {len(tom)} classes of subgroups")

    # the marks filter: every nontrivial mark at most 2, 2 attained, degree above 2
    hits = test_tom(tom, 2)
    for r in fixity_k_actions(G, 2):
        assert r.class_index in hits
        print(f"  {r.stabilizer_name:<8} |H| = {r.stabilizer_order:<3} degree {r.degree:<3} marks {r.marks_row}")
    print()

# PSL2(7) has two classes of A4; both give a fixity-2 action on 14 points
G = catalog_group("L2(7)")
a4 = [r for r in fixity_k_actions(G, 2) if r.stabilizer_order == 12]
print("non-conjugate A4 stabilizers at classes", [r.class_index for r in a4])
