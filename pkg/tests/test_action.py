import pytest

from permfix.core.action import action_kernel, coset_action, is_faithful, natural_action
from permfix.core.permutation import Permutation
from permfix.structure import sub


def test_natural_action(get_group):
    G = get_group("L2(7)")
    A = natural_action(G)
    assert A.domain_size == G.degree
    x = G.generators[0]
    assert A.image(x) == x
    assert A.fixed_points(x) == x.fixed_points()


def test_coset_action_is_transitive_with_right_stabilizer(get_group, get_brute):
    G = get_group("S4")
    H = G.stabilizer(0)
    A = coset_action(G, H)
    assert A.domain_size == 4
    img = A.image_group()
    assert img.is_transitive()
    # point 0 is the coset H itself
    assert all(A.image(h)(0) == 0 for h in H.generators)
    # the image group is a homomorphic image: orders agree for faithful actions
    assert img.order == G.order


def test_coset_action_is_homomorphism(get_group):
    G = get_group("L2(5)")
    A = coset_action(G, sub(G, G.table.closure([int(G.table.class_reps[1])])))
    els = G.elements()[:20]
    for a in els[:6]:
        for b in els[:6]:
            assert A.image(a * b) == A.image(a) * A.image(b)


def test_kernel_of_unfaithful_action(get_group):
    G = get_group("S4")
    V = sub(G, G.table.normal_closure([G.table.index(Permutation.from_cycles(4, (0, 1), (2, 3)))]))
    assert V.order == 4
    A = coset_action(G, V)
    assert not is_faithful(A)
    assert action_kernel(A).order == 4
    assert is_faithful(natural_action(G))


def test_orbits_of_subgroup(get_group):
    G = get_group("Sz(8)")
    A = natural_action(G)
    S = G.stabilizer(0)
    assert sorted(len(o) for o in A.orbits_of(S)) == [1, 64]


def test_descriptor(get_group):
    G = get_group("S4")
    assert natural_action(G).descriptor == "natural"
    A = coset_action(G, G.stabilizer(0))
    assert A.descriptor == "coset(order=6, degree=4)"


def test_coset_action_needs_stabilizer(get_group):
    from permfix.core.action import Action

    with pytest.raises(ValueError):
        Action(get_group("S4"), kind="coset")
    with pytest.raises(ValueError):
        Action(get_group("S4"), kind="bogus")
