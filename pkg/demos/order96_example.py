"""A soluble group of order 96 acting with fixity 2 on 32 points.

The group is the affine group v -> vA + b on GF(4)^2 with A in
<scalar w> x <[[1,1],[0,1]]>, acting on the cosets of the scalar C3.
Point stabilizers have order 3, so the Sylow 2-subgroup (order 32)
acts regularly. With Z(G) = 1 the odd-stabilizer audit has to find
[O_2(G), G_a]G_a acting as a Frobenius group; here that subgroup has
order 48 and index 2.

Run: python3 demos/order96_example.py
"""
from permfix.audit import run_audit
from permfix.catalog import load_fixture
from permfix.core.action import coset_action
from permfix.fixity import classify_sylow2, fixity, fixity_k_actions
from permfix.structure import radicals

G = load_fixture("g96_70")
r = radicals(G)
print(f"|G| = {G.order}, |Z(G)| = {r.center.order}, |O_2(G)| = {r.p_cores[2].order}")

(rec,) = fixity_k_actions(G, 2)
A = coset_action(G, rec.stabilizer_class.representative)
rep = fixity(A)
print(f"unique fixity-2 action: |G_a| = {rec.stabilizer_order}, degree {A.domain_size}, k = {rep.k}")
print(f"  witness {rep.witness.cycle_string()} fixes {rep.witness_fixed_set}")

c = classify_sylow2(A)
print(f"Sylow 2: |S| = {c.s_order}, orbit lengths {sorted(set(c.orbit_lengths))}, case {c.case_number}")

audit = run_audit(A, "l216")
for chk in audit.checks:
    print(f"  [{chk.status:>10}] {chk.claim}")
w = [chk for chk in audit.checks if chk.claim.startswith("case (4)")][0].witness
print(f"Frobenius subgroup: order {w['frobenius_order']}, kernel {w['frobenius_kernel_order']}, "
      f"index {w['frobenius_index']}, normal {w['frobenius_normal']}")
