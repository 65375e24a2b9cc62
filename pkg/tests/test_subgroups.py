import json

import pytest

from permfix.errors import ResourceError, ValidationError
from permfix.subgroups import TableOfMarks, subgroup_classes, table_of_marks

# subgroup class counts and total subgroup counts, checked against the oracle below
ORACLE_GROUPS = ["C6", "V4", "D8", "Q8", "D10", "S4", "SD16", "Q16", "L2(5)", "SL2(5)", "g96_70"]


def oracle_mask(B, H):
    return B.mask_of_perms([e.images for e in H.elements()])


@pytest.mark.parametrize("name", ORACLE_GROUPS)
def test_classes_match_brute_force(get_group, get_brute, name):
    G, B = get_group(name), get_brute(name)
    lat = subgroup_classes(G)
    ref, total = B.subgroup_classes()
    assert len(lat) == len(ref)
    assert sum(c.class_size for c in lat) == total
    assert sorted((c.order, c.class_size) for c in lat) == sorted((bin(m).count("1"), s) for m, s in ref)
    # representatives pairwise non-conjugate
    masks = [oracle_mask(B, c.representative) for c in lat]
    for i, m in enumerate(masks):
        for n in masks[i + 1:]:
            if bin(m).count("1") == bin(n).count("1"):
                assert not B.conjugate_into(m, n)


@pytest.mark.parametrize("name", ["S4", "D8", "L2(5)", "SL2(5)", "g96_70"])
def test_marks_match_coset_counts(get_group, get_brute, name):
    G, B = get_group(name), get_brute(name)
    tom = table_of_marks(G)
    masks = [oracle_mask(B, c.representative) for c in tom.lattice]
    for g, H in enumerate(masks):
        for i, K in enumerate(masks):
            assert tom.mark(g, i) == B.mark(H, K), (g, i)


def test_canonical_order(get_group):
    lat = subgroup_classes(get_group("L2(7)"))
    keys = [(c.order, c.degree, c.class_size) for c in lat]
    assert keys == sorted(keys)
    assert lat[0].order == 1 and lat[-1].order == 168


def test_l25_rows(get_group):
    tom = table_of_marks(get_group("L2(5)"))
    rows = {(tom.orders[g], tom.names[g]): tom.contained_row(g) for g in range(len(tom))}
    assert rows[(12, "A4")] == [5, 1, 2, 1, 1]
    assert rows[(10, "D10")] == [6, 2, 1, 1]
    assert rows[(1, "1")] == [60]


def test_threads_give_same_result(get_group):
    from permfix.catalog import catalog_group

    a = subgroup_classes(catalog_group("L2(7)"), threads=1)
    b = subgroup_classes(catalog_group("L2(7)"), threads=4)
    assert [(c.order, c.class_size, c.histogram) for c in a] == [(c.order, c.class_size, c.histogram) for c in b]


def test_order_bound(get_group):
    with pytest.raises(ResourceError):
        subgroup_classes(get_group("L3(4)"))


def test_json_round_trip(get_group):
    tom = table_of_marks(get_group("S4"))
    back = TableOfMarks.from_json(tom.to_json())
    assert back.marks == tom.marks
    assert back.orders == tom.orders and back.names == tom.names
    assert back.contained_row(len(back) - 1) == [1] * len(back)


@pytest.mark.parametrize("doc", [
    {"classes": [], "marks": []},
    {"classes": [{"order": 2, "class_size": 1}], "marks": [[1]]},
    {"classes": [{"order": 1, "class_size": 1}], "marks": [[1, 2]]},
    {"classes": [{"class_size": 1}], "marks": [[1]]},
])
def test_malformed_tables(doc):
    with pytest.raises(ValidationError):
        TableOfMarks.from_dict(doc)


def test_invalid_json():
    with pytest.raises(ValidationError):
        TableOfMarks.from_json("{nope")


def test_assumption_recorded(get_group):
    assert subgroup_classes(get_group("S4")).assumptions
    json.dumps(subgroup_classes(get_group("S4")).assumptions)
