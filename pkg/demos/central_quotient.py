"""SL2(5) on the 24 nonzero vectors of GF(5)^2, and its quotient by -1.

Fixity 4 upstairs; the central involution pairs v with -v, and PSL2(5)
acts on the 12 pairs with fixity 2 and the same stabilizer order.

Run: python3 demos/central_quotient.py
"""
from permfix.catalog import catalog_group
from permfix.core.action import natural_action
from permfix.fixity import fixity, quotient_by_central
from permfix.structure import center

G = catalog_group("SL2(5)")
A = natural_action(G)
print(f"SL2(5) on {A.domain_size} vectors: fixity {fixity(A).k}")

Z = center(G)
q = quotient_by_central(A, Z)
for key, val in q.to_dict().items():
    print(f"  {key:<24} {val}")
