"""The four graphs on nontrivial proper subgroups.

Vertices are always the nontrivial proper subgroups of G. Two distinct
vertices H, K are adjacent in:

* the join graph (delta) when <H, K> = G,
* the comaximal graph (gamma) when the set product HK equals G,
* the difference graph when <H, K> = G but HK != G,
* the reduced difference graph (difference_star): the difference graph
  with isolated vertices removed.

A join equals G exactly when no maximal subgroup contains both endpoints,
so delta adjacency is a disjointness test on per-vertex bitsets over the
maximal subgroups. The set product HK always has |H||K| / |H n K| elements,
so gamma adjacency is a popcount test.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import perms
from .bits import iter_bits, mask_from_indices
from .errors import GroupGraphError, NotNormal
from .groups import FiniteGroup, quotient_with_projection, subgroup_group
from .lattice import SubgroupLattice, all_subgroups

KINDS = ("gamma", "delta", "difference", "difference_star")


@dataclass
class SubgroupGraph:
    kind: str
    lattice: SubgroupLattice
    vertices: tuple[int, ...]          # subgroup ids
    adj: list[int]                     # bitsets over vertex positions
    vertex_pos: dict[int, int] = field(init=False)

    def __post_init__(self):
        self.vertex_pos = {sid: i for i, sid in enumerate(self.vertices)}

    @property
    def n(self) -> int:
        return len(self.vertices)

    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def degree(self, i: int) -> int:
        return self.adj[i].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for i, row in enumerate(self.adj):
            for j in iter_bits(row):
                if j > i:
                    out.append((i, j))
        return out

    def isolated(self) -> list[int]:
        return [i for i, row in enumerate(self.adj) if row == 0]


def build_graph(lat: SubgroupLattice, kind: str) -> SubgroupGraph:
    """Construct one of the four subgroup graphs."""
    if kind not in KINDS:
        raise GroupGraphError(f"unknown graph kind {kind!r}")
    if kind == "difference_star":
        return star_reduction(build_graph(lat, "difference"))
    vertices = tuple(lat.nontrivial_proper_ids())
    n = len(vertices)
    order = lat.group.order
    maximal_ids = lat.maximal_subgroups()
    maximal_pos = {m: i for i, m in enumerate(maximal_ids)}
    above = []      # per vertex: bitset over maximal subgroups containing it
    masks = []
    orders = []
    for sid in vertices:
        sup = lat.supersets[sid]
        mm = 0
        for m in maximal_ids:
            if sup >> m & 1:
                mm |= 1 << maximal_pos[m]
        above.append(mm)
        masks.append(lat.mask_of(sid))
        orders.append(lat.order_of(sid))
    adj = [0] * n
    for i in range(n):
        mi, oi, ai = masks[i], orders[i], above[i]
        for j in range(i + 1, n):
            joined = not (ai & above[j])
            if kind == "delta":
                edge = joined
            else:
                product_is_group = (
                    oi * orders[j] == order * (mi & masks[j]).bit_count())
                if kind == "gamma":
                    edge = product_is_group
                else:  # difference
                    edge = joined and not product_is_group
            if edge:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return SubgroupGraph(kind, lat, vertices, adj)


def star_reduction(graph: SubgroupGraph) -> SubgroupGraph:
    """Difference graph with isolated vertices removed."""
    if graph.kind != "difference":
        raise GroupGraphError("star reduction applies to the difference graph")
    keep = [i for i, row in enumerate(graph.adj) if row]
    remap = {old: new for new, old in enumerate(keep)}
    adj = []
    for old in keep:
        row = 0
        for j in iter_bits(graph.adj[old]):
            row |= 1 << remap[j]
        adj.append(row)
    return SubgroupGraph("difference_star", graph.lattice,
                         tuple(graph.vertices[i] for i in keep), adj)


def conjugation_vertex_map(lat: SubgroupLattice, g_elem: int) -> list[int]:
    """The permutation H -> g H g^-1 of the standard vertex set (all
    nontrivial proper subgroups), as a list over vertex positions."""
    vertices = lat.nontrivial_proper_ids()
    pos = {sid: i for i, sid in enumerate(vertices)}
    return [pos[lat.conjugate_subgroup(sid, g_elem)] for sid in vertices]


def is_graph_automorphism(graph: SubgroupGraph, mapping: list[int]) -> bool:
    """Does a vertex permutation preserve adjacency (hence an automorphism)?"""
    if sorted(mapping) != list(range(graph.n)):
        return False
    for i, row in enumerate(graph.adj):
        for j in iter_bits(row):
            if not graph.adj[mapping[i]] >> mapping[j] & 1:
                return False
    return True


@dataclass
class GraphEmbedding:
    """An injection of the difference graph of a smaller group into D(G)."""
    source_group: FiniteGroup
    source_lattice: SubgroupLattice
    source_graph: SubgroupGraph
    target_graph: SubgroupGraph
    vertex_map: dict[int, int]      # source vertex position -> target position

    def is_induced_isomorphism(self) -> bool:
        positions = list(self.vertex_map.values())
        if len(set(positions)) != len(positions):
            return False
        for i in range(self.source_graph.n):
            for j in range(i + 1, self.source_graph.n):
                src = bool(self.source_graph.adj[i] >> j & 1)
                tgt = bool(self.target_graph.adj[self.vertex_map[i]]
                           >> self.vertex_map[j] & 1)
                if src != tgt:
                    return False
        return True


def quotient_embedding(lat: SubgroupLattice, normal_id: int,
                       target: SubgroupGraph | None = None) -> GraphEmbedding:
    """D(G/N) mapped onto the subgroups of G containing N, H/N -> H."""
    group = lat.group
    if not lat.is_normal[normal_id]:
        raise NotNormal(f"subgroup {normal_id} is not normal")
    if normal_id in (lat.trivial_id, lat.full_id):
        raise NotNormal("quotient embedding needs a nontrivial proper subgroup")
    quotient, projection = quotient_with_projection(
        group, lat.mask_of(normal_id))
    qlat = all_subgroups(quotient)
    qgraph = build_graph(qlat, "difference")
    if target is None:
        target = build_graph(lat, "difference")
    mapping: dict[int, int] = {}
    for pos, q_sid in enumerate(qgraph.vertices):
        q_mask = qlat.mask_of(q_sid)
        preimage = 0
        for i in range(group.order):
            if q_mask >> int(projection[i]) & 1:
                preimage |= 1 << i
        sid = lat.index_of[preimage]
        mapping[pos] = target.vertex_pos[sid]
    return GraphEmbedding(quotient, qlat, qgraph, target, mapping)


def semidirect_embedding(lat: SubgroupLattice,
                         normal_id: int | None = None,
                         complement_id: int | None = None,
                         target: SubgroupGraph | None = None) -> GraphEmbedding:
    """For G = H x| K, map D(K) into D(G) by K1 -> H K1.

    Defaults to the parts recorded by the semidirect constructor; explicit
    ids are validated (H normal, H n K trivial, |H||K| = |G|).
    """
    group = lat.group
    if normal_id is None or complement_id is None:
        if group.semidirect_normal_mask is None:
            raise GroupGraphError(
                f"{group.spec_label} was not realized as a semidirect product; "
                "pass normal_id and complement_id explicitly")
        normal_id = lat.index_of[group.semidirect_normal_mask]
        complement_id = lat.index_of[group.semidirect_complement_mask]
    h_mask, k_mask = lat.mask_of(normal_id), lat.mask_of(complement_id)
    if not lat.is_normal[normal_id]:
        raise NotNormal("the designated part H is not normal")
    if h_mask & k_mask != 1 or \
            lat.order_of(normal_id) * lat.order_of(complement_id) != group.order:
        raise GroupGraphError("K is not a complement of H")
    k_group = subgroup_group(group, k_mask,
                             gen_hint=lat.subgroups[complement_id].gen_hint)
    k_lat = all_subgroups(k_group)
    k_graph = build_graph(k_lat, "difference")
    if target is None:
        target = build_graph(lat, "difference")
    h_idx = np.array(list(iter_bits(h_mask)), dtype=np.int64)
    mapping: dict[int, int] = {}
    for pos, k_sid in enumerate(k_graph.vertices):
        k1_parent_idx = [group.element_index[k_group.elements[i]]
                         for i in iter_bits(k_lat.mask_of(k_sid))]
        prod = np.unique(
            group.mul[np.ix_(h_idx, np.array(k1_parent_idx, dtype=np.int64))])
        sid = lat.index_of[mask_from_indices(prod)]
        mapping[pos] = target.vertex_pos[sid]
    return GraphEmbedding(k_group, k_lat, k_graph, target, mapping)


# -- serialization -----------------------------------------------------------

def vertex_label(graph: SubgroupGraph, pos: int) -> str:
    lat = graph.lattice
    sid = graph.vertices[pos]
    sub = lat.subgroups[sid]
    gens = ", ".join(
        perms.format_cycles(lat.group.elements[i]) for i in sub.gen_hint) or "()"
    return f"{sub.order}:<{gens}>"


def to_dot(graph: SubgroupGraph) -> str:
    """DOT source; vertex labels carry subgroup order and generator hint."""
    lines = [f"graph {graph.kind} {{"]
    for i in range(graph.n):
        lines.append(f'  v{i} [label="{vertex_label(graph, i)}"];')
    for i, j in graph.edges():
        lines.append(f"  v{i} -- v{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json_dict(graph: SubgroupGraph) -> dict:
    return {
        "kind": graph.kind,
        "group": graph.lattice.group.spec_label,
        "vertex_count": graph.n,
        "vertices": [
            {"id": int(sid), "order": graph.lattice.order_of(sid),
             "label": vertex_label(graph, i)}
            for i, sid in enumerate(graph.vertices)],
        "edges": [[i, j] for i, j in graph.edges()],
    }
