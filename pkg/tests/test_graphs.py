import pytest

from groupgraph import build_graph, star_reduction
from groupgraph.errors import GroupGraphError, NotNormal
from groupgraph.graphs import (conjugation_vertex_map, graph_to_json_dict,
                               is_graph_automorphism, quotient_embedding,
                               semidirect_embedding, to_dot)


def test_difference_of_s3(dgraph):
    d = dgraph("dihedral(3)")
    assert d.n == 4
    assert d.edge_count() == 3
    isolated = d.isolated()
    assert len(isolated) == 1
    assert d.lattice.order_of(d.vertices[isolated[0]]) == 3  # the A3 vertex


def test_difference_of_a4_has_18_edges(dgraph):
    d = dgraph("alternating(4)")
    assert (d.n, d.edge_count()) == (8, 18)
    # V4 is the unique isolated vertex
    (iso,) = d.isolated()
    assert d.lattice.order_of(d.vertices[iso]) == 4


@pytest.mark.parametrize("text", [
    "cyclic(12)", "elem_abelian(2,3)", "dicyclic(2)",
    "direct(cyclic(4), dicyclic(2))",
])
def test_edgeless_difference_graphs(dgraph, text):
    assert dgraph(text).edge_count() == 0


@pytest.mark.parametrize("text", [
    "dihedral(3)", "alternating(4)", "symmetric(4)", "cyclic(6)",
    "dihedral(4)", "semidirect(cyclic(5), cyclic(8), z5_by_doubling)",
])
def test_difference_is_delta_minus_gamma(dgraph, text):
    gamma, delta, diff = (dgraph(text, k) for k in ("gamma", "delta", "difference"))
    for i in range(delta.n):
        assert gamma.adj[i] & ~delta.adj[i] == 0     # gamma subgraph of delta
        assert diff.adj[i] == delta.adj[i] & ~gamma.adj[i]
        assert not diff.adj[i] >> i & 1              # irreflexive
    assert all(diff.adj[i] >> j & 1 == diff.adj[j] >> i & 1
               for i in range(diff.n) for j in range(diff.n))


def test_z6_delta_gamma_difference(dgraph):
    assert dgraph("cyclic(6)", "delta").edge_count() == 1
    assert dgraph("cyclic(6)", "gamma").edge_count() == 1
    assert dgraph("cyclic(6)").edge_count() == 0


def test_star_reduction(dgraph):
    star = star_reduction(dgraph("dihedral(3)"))
    assert star.n == 3 and star.edge_count() == 3
    assert star.isolated() == []
    star4 = star_reduction(dgraph("dihedral(4)"))
    assert star4.n == 4 and all(star4.degree(i) == 2 for i in range(4))
    empty = star_reduction(dgraph("cyclic(12)"))
    assert empty.n == 0


def test_star_reduction_requires_difference(dgraph):
    with pytest.raises(GroupGraphError):
        star_reduction(dgraph("dihedral(3)", "gamma"))


def test_build_graph_rejects_unknown_kind(make):
    _, lat = make("cyclic(6)")
    with pytest.raises(GroupGraphError):
        build_graph(lat, "chordal")


def test_conjugation_identity_is_identity(make, dgraph):
    _, lat = make("dihedral(4)")
    assert conjugation_vertex_map(lat, 0) == list(range(8))


def test_conjugation_swaps_reflections_in_d4(make, dgraph):
    g, lat = make("dihedral(4)")
    d = dgraph("dihedral(4)")
    r = g.element_index[(1, 2, 3, 0)]
    mapping = conjugation_vertex_map(lat, r)
    moved = [i for i, j in enumerate(mapping) if i != j]
    orders = {lat.order_of(d.vertices[i]) for i in moved}
    assert moved and orders == {2}   # conjugation by r swaps reflection pairs
    assert is_graph_automorphism(d, mapping)


@pytest.mark.parametrize("text", [
    "dihedral(3)", "symmetric(4)", "alternating(4)", "dicyclic(3)",
])
def test_conjugation_is_automorphism_of_all_kinds(make, dgraph, text):
    g, lat = make(text)
    for kind in ("gamma", "delta", "difference"):
        graph = dgraph(text, kind)
        for e in range(g.order):
            assert is_graph_automorphism(
                graph, conjugation_vertex_map(lat, e))


def test_quotient_embedding_s3xz2(make):
    g, lat = make("direct(dihedral(3), cyclic(2))")
    centers = [sid for sid in lat.nontrivial_proper_ids()
               if lat.order_of(sid) == 2 and lat.is_normal[sid]]
    emb = quotient_embedding(lat, centers[0])
    assert emb.source_group.order == 6
    assert emb.source_graph.edge_count() == 3   # D(S3)
    assert emb.is_induced_isomorphism()


def test_quotient_embedding_cyclic_quotient_is_edgeless(make):
    g, lat = make("dihedral(4)")
    z4 = next(sid for sid in lat.nontrivial_proper_ids()
              if lat.order_of(sid) == 4 and lat.is_cyclic_subgroup(sid))
    emb = quotient_embedding(lat, z4)
    assert emb.source_graph.edge_count() == 0
    assert emb.is_induced_isomorphism()


def test_quotient_embedding_d4_center(make):
    _, lat = make("dihedral(4)")
    center = lat.frattini()   # the center of D4 is its Frattini subgroup
    emb = quotient_embedding(lat, center)
    assert emb.source_group.order == 4
    assert emb.source_graph.edge_count() == 0   # D(V4) is edgeless
    assert emb.is_induced_isomorphism()


def test_quotient_embedding_rejects_non_normal(make):
    _, lat = make("dihedral(3)")
    nonnormal = next(sid for sid in lat.nontrivial_proper_ids()
                     if not lat.is_normal[sid])
    with pytest.raises(NotNormal):
        quotient_embedding(lat, nonnormal)


def test_semidirect_embedding_z5_z8(make):
    _, lat = make("semidirect(cyclic(5), cyclic(8), z5_by_doubling)")
    emb = semidirect_embedding(lat)
    assert emb.source_group.order == 8
    assert emb.source_graph.n == 2          # Z2 and Z4 inside Z8
    assert emb.source_graph.edge_count() == 0
    assert emb.is_induced_isomorphism()


def test_semidirect_embedding_empty_for_prime_complement(make):
    _, lat = make("semidirect(elem_abelian(3,2), cyclic(3), heisenberg3)")
    emb = semidirect_embedding(lat)
    assert emb.source_graph.n == 0
    assert emb.is_induced_isomorphism()


def test_semidirect_embedding_needs_semidirect_group(make):
    _, lat = make("symmetric(4)")
    with pytest.raises(GroupGraphError):
        semidirect_embedding(lat)


def test_semidirect_embedding_explicit_parts(make):
    # S3 x Z2 = A3 x| (Z2 x Z2-ish complement): use A3 as H and a
    # non-normal order-4... there is none; use the direct factors instead
    g, lat = make("direct(dihedral(3), cyclic(2))")
    a3z2 = next(sid for sid in lat.nontrivial_proper_ids()
                if lat.order_of(sid) == 6 and lat.is_normal[sid]
                and lat.is_cyclic_subgroup(sid))
    z2 = next(sid for sid in lat.nontrivial_proper_ids()
              if lat.order_of(sid) == 2
              and lat.mask_of(sid) & lat.mask_of(a3z2) == 1)
    emb = semidirect_embedding(lat, normal_id=a3z2, complement_id=z2)
    assert emb.source_graph.n == 0


def test_dot_and_json_exports_are_deterministic(dgraph):
    d = dgraph("dihedral(3)")
    assert to_dot(d) == to_dot(d)
    payload = graph_to_json_dict(d)
    assert payload["vertex_count"] == 4
    assert payload["edges"] == [[0, 1], [0, 2], [1, 2]]
    dot = to_dot(d)
    assert dot.startswith("graph difference {") and dot.count(" -- ") == 3
    star = star_reduction(d)
    assert "v3" not in to_dot(star)   # the isolated vertex is gone
