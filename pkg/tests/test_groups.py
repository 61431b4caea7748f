import random

import pytest

from groupgraph import (enumerate_elements, quotient_group, realize,
                        stabilizer_chain_order)
from groupgraph.errors import CapExceeded, NotNormal
from groupgraph.groups import quotient_with_projection, subgroup_group
from groupgraph.perms import compose, identity, parse_cycles


def test_enumerate_identity_only():
    assert enumerate_elements([identity(4)]) == (identity(4),)


def test_enumerate_s3():
    gens = [parse_cycles("(0 1 2)", 3), parse_cycles("(0 1)", 3)]
    assert len(enumerate_elements(gens)) == 6


def test_enumerate_a5():
    a5 = realize("alternating(5)")
    assert len(enumerate_elements(a5.generators)) == 60


def test_enumerate_cap():
    a5 = realize("alternating(5)")
    with pytest.raises(CapExceeded):
        enumerate_elements(a5.generators, order_cap=59)


def test_element_table_sorted_and_indexed():
    g = realize("dihedral(5)")
    assert list(g.elements) == sorted(g.elements)
    assert all(g.element_index[p] == i for i, p in enumerate(g.elements))


def test_table_closed_under_products():
    g = realize("symmetric(4)")
    rng = random.Random(20240817)
    members = set(g.elements)
    for _ in range(1000):
        x, y = rng.choice(g.elements), rng.choice(g.elements)
        assert compose(x, y) in members


@pytest.mark.parametrize("text,order", [
    ("symmetric(4)", 24), ("psl2(7)", 168), ("cyclic(1)", 1),
    ("dicyclic(4)", 16), ("alternating(5)", 60),
])
def test_stabilizer_chain_order(text, order):
    g = realize(text)
    assert stabilizer_chain_order(g.generators) == order == g.order


def test_mul_inv_conj_tables():
    g = realize("dihedral(4)")
    for i in (0, 1, 3, 5):
        for j in (0, 2, 4, 7):
            assert g.elements[g.mul[i, j]] == compose(g.elements[i], g.elements[j])
    for i in range(g.order):
        assert g.mul[i, g.inv[i]] == 0
        assert g.conj[0, i] == i


def _subgroup_mask(group, predicate):
    mask = 0
    for i, p in enumerate(group.elements):
        if predicate(p):
            mask |= 1 << i
    return mask


def test_quotient_s4_by_v4():
    s4 = realize("symmetric(4)")
    from groupgraph.perms import cycles, perm_order
    v4 = _subgroup_mask(
        s4, lambda p: perm_order(p) == 1
        or (perm_order(p) == 2 and len(cycles(p)) == 2))
    assert v4.bit_count() == 4
    q = quotient_group(s4, v4)
    assert q.order == 6 and q.degree == 6
    a, b = q.generators[0], q.generators[1]
    assert compose(a, b) != compose(b, a)  # S4/V4 is nonabelian, i.e. S3


def test_quotient_by_trivial_is_regular():
    g = realize("dihedral(3)")
    q = quotient_group(g, 1)
    assert q.order == 6 and q.degree == 6


def test_quotient_z6_by_z3():
    z6 = realize("cyclic(6)")
    from groupgraph.perms import perm_order
    z3 = _subgroup_mask(z6, lambda p: perm_order(p) in (1, 3))
    assert quotient_group(z6, z3).order == 2


def test_quotient_rejects_non_normal():
    s3 = realize("dihedral(3)")
    from groupgraph.perms import perm_order
    z2 = 1 | (1 << s3.element_index[parse_cycles("(1 2)", 3)])
    with pytest.raises(NotNormal):
        quotient_group(s3, z2)
    with pytest.raises(NotNormal):
        quotient_group(s3, 0b11)  # not even a subgroup


def test_quotient_projection_maps_subgroups():
    g = realize("dihedral(6)")
    r3 = tuple((i + 3) % 6 for i in range(6))
    center = 1 | (1 << g.element_index[r3])
    q, proj = quotient_with_projection(g, center)
    assert q.order == 6
    # preimages of subgroups of the quotient are subgroups of g
    from groupgraph.perms import perm_order
    image_z3 = {int(proj[i]) for i, p in enumerate(g.elements)
                if perm_order(p) in (1, 3)}
    preimage = 0
    for i in range(g.order):
        if int(proj[i]) in image_z3:
            preimage |= 1 << i
    assert g.is_subgroup_mask(preimage)


def test_subgroup_group_materializes():
    s4 = realize("symmetric(4)")
    from groupgraph.perms import cycles, perm_order
    a4 = _subgroup_mask(
        s4, lambda p: sum(len(c) - 1 for c in cycles(p)) % 2 == 0)
    sub = subgroup_group(s4, a4)
    assert sub.order == 12
    assert stabilizer_chain_order(sub.generators) == 12
