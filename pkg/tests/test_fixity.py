import numpy as np
import pytest

from oracles import fixed_count
from permfix import fixity as fx
from permfix.core.action import coset_action, natural_action
from permfix.core.permutation import Permutation
from permfix.errors import KernelError, PreconditionError
from permfix.structure import center, sub, sylow
from permfix.subgroups import subgroup_classes, table_of_marks


def test_natural_fixity_matches_brute_force(get_group):
    for name in ["S4", "L2(7)", "A5", "D10", "M11"]:
        G = get_group(name)
        rep = fx.fixity(natural_action(G))
        best = max(fixed_count(g.images) for g in G.elements() if not g.is_identity())
        assert rep.k == best
        assert len(rep.witness_fixed_set) == best


@pytest.mark.parametrize("name", ["S4", "L2(5)", "D10", "SL2(5)"])
def test_coset_fixed_points_match_oracle(get_group, get_brute, name):
    G, B = get_group(name), get_brute(name)
    for c in subgroup_classes(G):
        H = c.representative
        hm = B.mask_of_perms([e.images for e in H.elements()])
        for r in G.table.class_reps:
            x = G.table.perm(int(r))
            assert fx.coset_fixed_points(x, H, G) == B.coset_fixed(hm, B.index[x.images])


def test_coset_action_fixity_agrees_with_image(get_group):
    G = get_group("L2(7)")
    for c in subgroup_classes(G).classes[1:-1]:
        A = coset_action(G, c.representative)
        rep = fx.fixity(A)
        img = A.image(rep.witness)
        assert len(img.fixed_points()) == rep.k
        assert sorted(rep.witness_fixed_set) == img.fixed_points()


def test_unfaithful_coset_action_raises(get_group):
    G = get_group("S4")
    A4 = [c for c in subgroup_classes(G) if c.order == 12][0]
    with pytest.raises(KernelError) as exc:
        fx.fixity(coset_action(G, A4.representative))
    assert exc.value.kernel.order == 12


def test_literal_filter_equals_semantic(get_group):
    for name in ["S4", "L2(5)", "L2(7)", "D10", "SL2(5)", "g96_70", "L2(9)"]:
        G = get_group(name)
        tom = table_of_marks(G)
        for k in (1, 2, 3, 4):
            lit = fx.test_tom(tom, k)
            sem = [r.class_index for r in fx.fixity_k_actions(G, k)]
            assert lit == sem, (name, k)


def test_enumeration_from_ingested_table(get_group):
    tom = table_of_marks(get_group("L2(7)"))
    from permfix.subgroups import TableOfMarks

    back = TableOfMarks.from_json(tom.to_json())
    a = [r.to_dict() for r in fx.fixity_k_actions_from_tom(back, 2)]
    b = [r.to_dict() for r in fx.fixity_k_actions(get_group("L2(7)"), 2)]
    assert a == b


def test_frobenius_actions(get_group):
    assert fx.is_frobenius_action(natural_action(get_group("D10")))
    r = fx.is_frobenius_action(natural_action(get_group("A4")))
    assert r and r.kernel.order == 4 and r.complement.order == 3
    assert not fx.is_frobenius_action(natural_action(get_group("S4")))


def test_frobenius_complement_criterion(get_group):
    G = get_group("A4")
    ok, wit = fx.frobenius_complement_criterion(G, sylow(G, 3))
    assert ok and wit is None
    S4 = get_group("S4")
    ok, wit = fx.frobenius_complement_criterion(S4, S4.stabilizer(0))
    assert not ok and wit["X_order"] == 2
    with pytest.raises(PreconditionError):
        fx.frobenius_complement_criterion(S4, S4)


@pytest.mark.parametrize("name,case,shape", [("L2(5)", 2, "klein"), ("Sz(8)", 4, "other"), ("S4", 2, "dihedral")])
def test_sylow2_natural(get_group, name, case, shape):
    cl = fx.classify_sylow2(natural_action(get_group(name)))
    assert (cl.case_number, cl.shape.tag) == (case, shape)


def test_sylow2_in_stabilizer(get_group):
    G = get_group("L2(5)")
    A4 = [c for c in subgroup_classes(G) if c.order == 12][0]
    cl = fx.classify_sylow2(coset_action(G, A4.representative))
    assert cl.case_number == 4 and cl.s_alpha_order == cl.s_order == 4


def test_sylow2_dihedral_case(get_group):
    G = get_group("L2(7)")
    A4 = [c for c in subgroup_classes(G) if c.order == 12][0]
    cl = fx.classify_sylow2(coset_action(G, A4.representative))
    assert cl.case_number == 2 and cl.shape.tag == "dihedral"
    assert set(cl.orbit_lengths) <= {1, 2, cl.s_order // 2, cl.s_order}


def test_sylow2_needs_fixity_two(get_group):
    with pytest.raises(PreconditionError):
        fx.classify_sylow2(natural_action(get_group("D10")))


def test_quotient_by_centre(get_group):
    G = get_group("SL2(5)")
    A = natural_action(G)
    assert A.domain_size == 24
    q = fx.quotient_by_central(A, center(G))
    assert q.degree == 12 and q.quotient_order == 60
    assert q.stabilizer_order_before == q.stabilizer_order_after == 5
    assert q.fixity_after == 2 and q.fixity_before == 4
    assert q.ok


def test_quotient_precondition(get_group):
    G = get_group("S4")
    V = sub(G, G.table.normal_closure([G.table.index(Permutation.from_cycles(4, (0, 1), (2, 3)))]))
    with pytest.raises(PreconditionError):
        fx.quotient_by_central(natural_action(G), V)


def test_class_formula_vs_action_counts(get_group):
    G = get_group("L2(9)")
    c = [c for c in subgroup_classes(G) if c.order == 5][0]
    A = coset_action(G, c.representative)
    counts = fx.action_fix_counts(A)
    for j, r in enumerate(G.table.class_reps):
        assert counts[j] == len(A.image(G.table.perm(int(r))).fixed_points())
    assert isinstance(counts, np.ndarray)
