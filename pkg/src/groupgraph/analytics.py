"""Exact graph invariants on bitset-adjacency graphs.

Works on anything exposing ``n`` (vertex count) and ``adj`` (per-vertex
neighbor bitsets): both SubgroupGraph and the plain Graph here qualify.

The clique and independence solvers are exact branch-and-bound searches
with greedy-coloring upper bounds and a node-expansion budget; when the
budget runs out they raise BudgetExceeded instead of returning an
approximation.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field

from .bits import iter_bits, lowest_bit
from .errors import BudgetExceeded

DEFAULT_SOLVER_BUDGET = 5_000_000
DEFAULT_ISO_BUDGET = 200_000

INF = math.inf


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]


def graph_from_edges(n: int, edges) -> Graph:
    adj = [0] * n
    for i, j in edges:
        if i == j:
            raise ValueError("no loops")
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    return Graph(n, tuple(adj))


def cycle_graph(n: int) -> Graph:
    return graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << i) for i in range(n)))


def path_graph(n: int) -> Graph:
    return graph_from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complement(g) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full & ~g.adj[i] & ~(1 << i) for i in range(g.n)))


def edge_count(g) -> int:
    return sum(row.bit_count() for row in g.adj) // 2


def degree_sequence(g) -> list[int]:
    return sorted((row.bit_count() for row in g.adj), reverse=True)


def components(g) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by least vertex."""
    unseen = (1 << g.n) - 1
    out = []
    while unseen:
        start = lowest_bit(unseen)
        comp = 1 << start
        frontier = comp
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= nxt
        unseen &= ~comp
        out.append(list(iter_bits(comp)))
    return out


def is_connected(g) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def girth(g):
    """Length of a shortest cycle; math.inf for forests.

    Per-root BFS; the candidate cycle through the root found at each
    cross edge is exact at some root on a shortest cycle.
    """
    best = INF
    for root in range(g.n):
        if best == 3:
            break
        dist = {root: 0}
        frontier = [root]
        d = 0
        while frontier and 2 * d < best - 1:
            nxt = []
            for u in frontier:
                for w in iter_bits(g.adj[u]):
                    if w not in dist:
                        dist[w] = d + 1
                        nxt.append(w)
                    elif dist[w] >= d:
                        best = min(best, d + dist[w] + 1)
            frontier = nxt
            d += 1
    return best


def is_bipartite(g) -> bool:
    color = {}
    for start in range(g.n):
        if start in color:
            continue
        color[start] = 0
        frontier = [start]
        while frontier:
            nxt = []
            for u in frontier:
                for w in iter_bits(g.adj[u]):
                    if w not in color:
                        color[w] = color[u] ^ 1
                        nxt.append(w)
                    elif color[w] == color[u]:
                        return False
            frontier = nxt
    return True


def triangle_count(g) -> int:
    total = 0
    for i in range(g.n):
        for j in iter_bits(g.adj[i]):
            if j > i:
                total += (g.adj[i] & g.adj[j] & ~((1 << (j + 1)) - 1)).bit_count()
    return total


def universal_vertices(g) -> list[int]:
    """Vertices adjacent to all others. On a single-vertex graph the vertex
    is vacuously universal."""
    full = (1 << g.n) - 1
    return [v for v in range(g.n) if g.adj[v] == full & ~(1 << v)]


def is_cycle(g) -> tuple[bool, int | None]:
    if g.n < 3 or edge_count(g) != g.n:
        return False, None
    if any(row.bit_count() != 2 for row in g.adj):
        return False, None
    if not is_connected(g):
        return False, None
    return True, g.n


# -- exact clique / independence ----------------------------------------------


def max_clique(g, budget: int = DEFAULT_SOLVER_BUDGET) -> tuple[int, list[int]]:
    """Exact maximum clique (size, witness). Deterministic: vertices are
    explored in descending-degree order with id tiebreaks."""
    n = g.n
    if n == 0:
        return 0, []
    order = sorted(range(n), key=lambda v: (-g.adj[v].bit_count(), v))
    back = {new: old for new, old in enumerate(order)}
    pos = {old: new for new, old in enumerate(order)}
    adj = [0] * n
    for old_i in range(n):
        row = 0
        for old_j in iter_bits(g.adj[old_i]):
            row |= 1 << pos[old_j]
        adj[pos[old_i]] = row

    # greedy clique seeds the incumbent
    cand = (1 << n) - 1
    greedy = []
    while cand:
        v = lowest_bit(cand)
        greedy.append(v)
        cand &= adj[v]
    best = len(greedy)
    best_list = greedy[:]

    nodes = 0
    limit = budget
    if sys.getrecursionlimit() < n + 512:
        sys.setrecursionlimit(n + 512)

    def expand(rsize: int, p: int, stack: list[int]) -> None:
        nonlocal nodes, best, best_list
        nodes += 1
        if nodes > limit:
            raise BudgetExceeded(
                f"clique search exceeded {limit} node expansions")
        if p == 0:
            if rsize > best:
                best = rsize
                best_list = stack[:]
            return
        # greedy coloring in id order; assignment order has nondecreasing color
        seq: list[tuple[int, int]] = []
        uncolored = p
        c = 0
        while uncolored:
            c += 1
            avail = uncolored
            while avail:
                v = lowest_bit(avail)
                seq.append((v, c))
                uncolored &= ~(1 << v)
                avail &= ~(1 << v) & ~adj[v]
        for i in range(len(seq) - 1, -1, -1):
            v, color = seq[i]
            if rsize + color <= best:
                return
            stack.append(v)
            expand(rsize + 1, p & adj[v], stack)
            stack.pop()
            p &= ~(1 << v)

    expand(0, (1 << n) - 1, [])
    return best, sorted(back[v] for v in best_list)


def clique_number(g, budget: int = DEFAULT_SOLVER_BUDGET) -> int:
    return max_clique(g, budget)[0]


def max_independent_set(g, budget: int = DEFAULT_SOLVER_BUDGET) -> tuple[int, list[int]]:
    return max_clique(complement(g), budget)


def independence_number(g, budget: int = DEFAULT_SOLVER_BUDGET) -> int:
    return max_independent_set(g, budget)[0]


# -- forbidden-subgraph recognizers -------------------------------------------


def find_claw(g) -> tuple[int, int, int, int] | None:
    """An induced K_{1,3} as (center, leaf, leaf, leaf), or None."""
    for v in range(g.n):
        nbrs = g.adj[v]
        for u in iter_bits(nbrs):
            higher = nbrs & ~((1 << (u + 1)) - 1) & ~g.adj[u]
            for w in iter_bits(higher):
                rest = (nbrs & ~g.adj[u] & ~g.adj[w]
                        & ~(1 << u) & ~(1 << w)
                        & ~((1 << (w + 1)) - 1))
                if rest:
                    return (v, u, w, lowest_bit(rest))
    return None


def is_clawfree(g) -> bool:
    return find_claw(g) is None


def is_cograph(g) -> bool:
    """Complement-reduction recursion: a graph on >= 2 vertices is a cograph
    iff it or its complement is disconnected and all parts are cographs."""
    if g.n <= 1:
        return True
    full_row = (1 << g.n) - 1
    stack = [full_row]
    while stack:
        mask = stack.pop()
        if mask.bit_count() <= 3:
            continue
        parts = _components_within(g.adj, mask, False)
        if len(parts) == 1:
            parts = _components_within(g.adj, mask, True)
            if len(parts) == 1:
                return False
        stack.extend(parts)
    return True


def _components_within(adj, mask: int, complemented: bool) -> list[int]:
    out = []
    unseen = mask
    while unseen:
        start = lowest_bit(unseen)
        comp = 1 << start
        frontier = comp
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                row = ~adj[v] & ~(1 << v) if complemented else adj[v]
                nxt |= row & mask
            frontier = nxt & ~comp
            comp |= nxt & mask
        unseen &= ~comp
        out.append(comp)
    return out


def find_induced_p4(g) -> tuple[int, int, int, int] | None:
    """Brute-force quartic scan for an induced path on four vertices."""
    for a in range(g.n):
        for b in iter_bits(g.adj[a]):
            for c in iter_bits(g.adj[b] & ~g.adj[a] & ~(1 << a)):
                tail = g.adj[c] & ~g.adj[a] & ~g.adj[b] & ~(1 << a) & ~(1 << b)
                if tail:
                    return (a, b, c, lowest_bit(tail))
    return None


def has_induced_c4(g) -> bool:
    for a in range(g.n):
        nonadj = ~g.adj[a] & ~((1 << (a + 1)) - 1)
        for c in iter_bits(nonadj & ((1 << g.n) - 1)):
            common = g.adj[a] & g.adj[c]
            for b in iter_bits(common):
                if common & ~g.adj[b] & ~(1 << b):
                    return True
    return False


def find_odd_hole_or_antihole(g, max_length: int = 11,
                              budget: int = DEFAULT_SOLVER_BUDGET) -> tuple[str, tuple[int, ...]] | None:
    """Bounded perfectness scan: an induced odd cycle of length 5..max_length
    in the graph or its complement, or None. Not a full perfection test."""
    for tag, graph in (("hole", g), ("antihole", complement(g))):
        found = _find_odd_hole(graph, max_length, budget)
        if found:
            return tag, found
    return None


def _find_odd_hole(g, max_length: int, budget: int):
    nodes = 0

    def extend(path: list[int], allowed: int):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded("odd-hole scan exceeded its budget")
        start = path[0]
        last = path[-1]
        for v in iter_bits(allowed & g.adj[last]):
            # induced: v may touch nothing strictly inside the path
            if any(g.adj[v] >> u & 1 for u in path[1:-1]):
                continue
            if len(path) >= 2 and g.adj[v] >> start & 1:
                # closing edge: an induced cycle on len(path) + 1 vertices;
                # a chord-free extension through v is impossible either way
                length = len(path) + 1
                if length >= 5 and length % 2 == 1:
                    return tuple(path + [v])
                continue
            if len(path) + 1 < max_length:
                hit = extend(path + [v], allowed & ~(1 << v))
                if hit:
                    return hit
        return None

    for a in range(g.n):
        allowed = ~((1 << (a + 1)) - 1) & ((1 << g.n) - 1)
        hit = extend([a], allowed)
        if hit:
            return hit
    return None


# -- isomorphism ---------------------------------------------------------------


def _refine_colors(gs, colors_pair):
    """Joint one-dimensional refinement of two graphs' vertex colorings.
    Returns stable colorings or None when the color histograms diverge."""
    colors1, colors2 = colors_pair
    while True:
        sigs = []
        for g, colors in ((gs[0], colors1), (gs[1], colors2)):
            sigs.append([
                (colors[v], tuple(sorted(colors[w] for w in iter_bits(g.adj[v]))))
                for v in range(g.n)])
        palette = sorted(set(sigs[0]) | set(sigs[1]))
        code = {sig: i for i, sig in enumerate(palette)}
        new1 = [code[s] for s in sigs[0]]
        new2 = [code[s] for s in sigs[1]]
        if sorted(new1) != sorted(new2):
            return None
        if new1 == colors1 and new2 == colors2:
            return colors1, colors2
        colors1, colors2 = new1, new2


def graphs_isomorphic(g1, g2, budget: int = DEFAULT_ISO_BUDGET) -> bool:
    """Exact isomorphism via invariant prefilter, partition refinement and
    individualization backtracking."""
    if g1.n != g2.n:
        return False
    if edge_count(g1) != edge_count(g2):
        return False
    if degree_sequence(g1) != degree_sequence(g2):
        return False
    if sorted(len(c) for c in components(g1)) != sorted(len(c) for c in components(g2)):
        return False
    if triangle_count(g1) != triangle_count(g2):
        return False
    if g1.n == 0:
        return True
    nodes = 0

    def backtrack(colors1, colors2) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"isomorphism search exceeded {budget} nodes")
        refined = _refine_colors((g1, g2), (colors1, colors2))
        if refined is None:
            return False
        colors1, colors2 = refined
        classes: dict[int, list[int]] = {}
        for v, c in enumerate(colors1):
            classes.setdefault(c, []).append(v)
        target_class = None
        for c in sorted(classes):
            if len(classes[c]) > 1:
                target_class = c
                break
        if target_class is None:
            mapping = [0] * g1.n
            slot = {c: v for v, c in enumerate(colors2)}
            for v, c in enumerate(colors1):
                mapping[v] = slot[c]
            return _is_iso_map(g1, g2, mapping)
        fresh = max(colors1) + 1
        v = classes[target_class][0]
        for w in range(g2.n):
            if colors2[w] != target_class:
                continue
            c1 = list(colors1)
            c2 = list(colors2)
            c1[v] = fresh
            c2[w] = fresh
            if backtrack(c1, c2):
                return True
        return False

    degrees1 = [g1.adj[v].bit_count() for v in range(g1.n)]
    degrees2 = [g2.adj[v].bit_count() for v in range(g2.n)]
    return backtrack(degrees1, degrees2)


def _is_iso_map(g1, g2, mapping) -> bool:
    if sorted(mapping) != list(range(g1.n)):
        return False
    for v in range(g1.n):
        image = 0
        for w in iter_bits(g1.adj[v]):
            image |= 1 << mapping[w]
        if image != g2.adj[mapping[v]]:
            return False
    return True


# -- the report ----------------------------------------------------------------


@dataclass
class AnalysisReport:
    vertex_count: int
    edge_count: int
    isolated_count: int
    component_count: int
    girth: int | float
    bipartite: bool
    clique_number: int | None
    independence_number: int | None
    clawfree: bool
    cograph: bool
    universal_vertices: list[int]
    is_cycle: bool
    cycle_length: int | None
    degree_sequence: list[int]
    unverified: list[str] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        out = {
            "vertex_count": self.vertex_count,
            "edge_count": self.edge_count,
            "isolated_count": self.isolated_count,
            "component_count": self.component_count,
            "girth": "inf" if self.girth == INF else int(self.girth),
            "bipartite": self.bipartite,
            "clique_number": self.clique_number,
            "independence_number": self.independence_number,
            "clawfree": self.clawfree,
            "cograph": self.cograph,
            "universal_vertices": list(self.universal_vertices),
            "is_cycle": self.is_cycle,
            "cycle_length": self.cycle_length,
            "degree_sequence": list(self.degree_sequence),
        }
        if self.unverified:
            out["unverified"] = list(self.unverified)
        return out


def analyze(g, *, clique_budget: int = DEFAULT_SOLVER_BUDGET,
            indep_budget: int = DEFAULT_SOLVER_BUDGET,
            allow_unverified: bool = False) -> AnalysisReport:
    """Full invariant sweep of one graph."""
    unverified: list[str] = []
    omega: int | None = None
    alpha: int | None = None
    try:
        omega = clique_number(g, clique_budget)
    except BudgetExceeded:
        if not allow_unverified:
            raise
        unverified.append("clique_number")
    try:
        alpha = independence_number(g, indep_budget)
    except BudgetExceeded:
        if not allow_unverified:
            raise
        unverified.append("independence_number")
    cyc, cyc_len = is_cycle(g)
    report = AnalysisReport(
        vertex_count=g.n,
        edge_count=edge_count(g),
        isolated_count=sum(1 for row in g.adj if row == 0),
        component_count=len(components(g)),
        girth=girth(g),
        bipartite=is_bipartite(g),
        clique_number=omega,
        independence_number=alpha,
        clawfree=is_clawfree(g),
        cograph=is_cograph(g),
        universal_vertices=universal_vertices(g),
        is_cycle=cyc,
        cycle_length=cyc_len,
        degree_sequence=degree_sequence(g),
        unverified=unverified,
    )
    _check_report(report)
    return report


def _check_report(r: AnalysisReport) -> None:
    if r.clique_number is not None:
        assert (r.clique_number >= 2) == (r.edge_count >= 1)
    if r.independence_number is not None:
        assert r.independence_number >= r.isolated_count
    if r.bipartite:
        assert r.girth == INF or r.girth % 2 == 0
    if r.is_cycle and r.cycle_length % 2 == 1:
        assert not r.bipartite
