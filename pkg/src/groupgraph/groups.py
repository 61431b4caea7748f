"""Concrete finite groups as full permutation element tables.

Everything downstream (lattices, graphs, the verification harness) works on
element indices into the canonical sorted table, so a FiniteGroup also owns
the numpy index tables for multiplication, inversion and conjugation.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from . import perms
from .bits import iter_bits, mask_from_indices
from .errors import CapExceeded, NotNormal, RealizeError
from .perms import Perm

DEFAULT_ORDER_CAP = 20_000
# n x n index tables above this order would not fit in memory; every group
# the toolkit analyses in depth is far below it (largest corpus group: 1092).
TABLE_CAP = 8_192


def enumerate_elements(generators, order_cap: int = DEFAULT_ORDER_CAP) -> tuple[Perm, ...]:
    """Breadth-first closure of the generators, sorted lexicographically."""
    gens = [perms.check_permutation(g) for g in generators]
    if not gens:
        raise RealizeError("empty generator list")
    degree = len(gens[0])
    if any(len(g) != degree for g in gens):
        raise RealizeError("generators have mixed degrees")
    ident = perms.identity(degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = perms.compose(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > order_cap:
                        raise CapExceeded(
                            f"element table exceeds order cap {order_cap}")
        frontier = nxt
    return tuple(sorted(seen))


def stabilizer_chain_order(generators) -> int:
    """Group order via a base-and-strong-generators style chain.

    Independent certificate for the closure count: at each level, compute the
    orbit of the first moved point with coset representatives, form Schreier
    generators for the stabilizer, and recurse. Deduplication keeps the
    generator sets small at this scale.
    """
    gens = {perms.check_permutation(g) for g in generators}
    gens.discard(perms.identity(len(next(iter(gens)))))
    order = 1
    while gens:
        degree = len(next(iter(gens)))
        base = min(i for g in gens for i in range(degree) if g[i] != i)
        transversal = {base: perms.identity(degree)}
        frontier = [base]
        gen_list = sorted(gens)
        while frontier:
            nxt = []
            for pt in frontier:
                rep = transversal[pt]
                for g in gen_list:
                    img = g[pt]
                    if img not in transversal:
                        transversal[img] = perms.compose(rep, g)
                        nxt.append(img)
            frontier = nxt
        order *= len(transversal)
        stab_gens = set()
        for pt, rep in transversal.items():
            for g in gen_list:
                coset_rep = transversal[g[pt]]
                schreier = perms.compose(perms.compose(rep, g), perms.inverse(coset_rep))
                if any(i != j for i, j in enumerate(schreier)):
                    stab_gens.add(schreier)
        gens = stab_gens
    return order


class FiniteGroup:
    """A finite permutation group with a complete canonical element table."""

    def __init__(self, generators, *, spec_label: str = "",
                 order_cap: int = DEFAULT_ORDER_CAP, elements=None):
        self.generators: tuple[Perm, ...] = tuple(
            perms.check_permutation(g) for g in generators)
        if not self.generators:
            raise RealizeError("a group needs at least one generator")
        self.degree: int = len(self.generators[0])
        if elements is None:
            elements = enumerate_elements(self.generators, order_cap)
        self.elements: tuple[Perm, ...] = tuple(elements)
        self.order: int = len(self.elements)
        self.element_index: dict[Perm, int] = {
            p: i for i, p in enumerate(self.elements)}
        self.spec_label = spec_label
        # set by the semidirect constructor; element masks over this table
        self.semidirect_normal_mask: int | None = None
        self.semidirect_complement_mask: int | None = None
        assert self.elements[0] == perms.identity(self.degree)

    def __repr__(self):
        label = self.spec_label or "<raw>"
        return f"FiniteGroup({label}, order={self.order}, degree={self.degree})"

    def generator_indices(self) -> list[int]:
        return [self.element_index[g] for g in self.generators]

    @cached_property
    def mul(self) -> np.ndarray:
        """mul[i, j] = index of elements[i] followed by elements[j]."""
        if self.order > TABLE_CAP:
            raise CapExceeded(
                f"order {self.order} exceeds index-table cap {TABLE_CAP}")
        n = self.order
        table = np.empty((n, n), dtype=np.uint16 if n <= 65535 else np.uint32)
        for i, p in enumerate(self.elements):
            row = [self.element_index[perms.compose(p, q)] for q in self.elements]
            table[i] = row
        return table

    @cached_property
    def inv(self) -> np.ndarray:
        return np.array(
            [self.element_index[perms.inverse(p)] for p in self.elements],
            dtype=np.int64)

    @cached_property
    def conj(self) -> np.ndarray:
        """conj[g, x] = index of g x g^-1."""
        mul = self.mul
        n = self.order
        table = np.empty_like(mul)
        inv = self.inv
        for g in range(n):
            table[g] = mul[mul[g], inv[g]]
        return table

    @cached_property
    def element_orders(self) -> np.ndarray:
        return np.array([perms.perm_order(p) for p in self.elements], dtype=np.int64)

    def conjugate_mask(self, mask: int, g: int) -> int:
        row = self.conj[g]
        out = 0
        for i in iter_bits(mask):
            out |= 1 << int(row[i])
        return out

    def closure_mask(self, seed_indices, generator_indices) -> int:
        """Subgroup generated by the generator indices, seeded with known members.

        Every seed must already lie in the generated subgroup. Returns the
        member bitset; the full group is returned early once more than half
        the elements are reached (a proper subgroup has index at least 2).
        """
        n = self.order
        mul = self.mul
        gens = np.asarray(sorted(set(int(i) for i in generator_indices)))
        visited = np.zeros(n, dtype=bool)
        seed = np.asarray(sorted(set(int(i) for i in seed_indices) | {0}))
        visited[seed] = True
        count = int(seed.size)
        half = n // 2
        frontier = seed
        full = (1 << n) - 1
        while frontier.size:
            prods = mul[np.ix_(frontier, gens)].ravel()
            prods = prods[~visited[prods]]
            if prods.size == 0:
                break
            new = np.unique(prods)
            visited[new] = True
            count += int(new.size)
            if count > half:
                return full
            frontier = new
        return int.from_bytes(np.packbits(visited, bitorder="little").tobytes(), "little")

    def subgroup_generated(self, element_indices) -> int:
        idx = sorted(set(int(i) for i in element_indices) | {0})
        return self.closure_mask(idx, idx)

    def is_subgroup_mask(self, mask: int) -> bool:
        idx = list(iter_bits(mask))
        if not idx or idx[0] != 0:
            return False
        sub = set(idx)
        mul = self.mul
        return all(int(v) in sub for v in mul[np.ix_(idx, idx)].ravel())

    def is_normal_mask(self, mask: int) -> bool:
        return all(self.conjugate_mask(mask, g) == mask
                   for g in self.generator_indices())

    def table_bytes(self) -> bytes:
        """Canonical byte encoding of the element table (cache key material)."""
        head = self.degree.to_bytes(4, "little") + self.order.to_bytes(4, "little")
        body = b"".join(
            bytes().join(int(i).to_bytes(2, "little") for i in p) for p in self.elements)
        return head + body


def subgroup_group(parent: FiniteGroup, mask: int, gen_hint=None,
                   label: str = "") -> FiniteGroup:
    """Materialize a subgroup (given as an element bitset) as its own group."""
    member_idx = list(iter_bits(mask))
    elements = [parent.elements[i] for i in member_idx]
    if gen_hint:
        gens = [parent.elements[i] for i in gen_hint]
    else:
        gens = elements if len(elements) <= 2 else _shrink_generators(parent, member_idx)
    return FiniteGroup(gens, spec_label=label or f"subgroup[{len(elements)}]",
                       elements=sorted(elements))


def _shrink_generators(parent: FiniteGroup, member_idx) -> list[Perm]:
    target = mask_from_indices(member_idx)
    chosen: list[int] = []
    current = 1  # trivial subgroup mask (identity = index 0)
    for i in member_idx:
        if current == target:
            break
        if not (current >> i) & 1:
            chosen.append(i)
            current = parent.subgroup_generated(chosen)
    return [parent.elements[i] for i in chosen] or [parent.elements[0]]


def left_coset_reps(group: FiniteGroup, mask: int) -> list[int]:
    """Minimal-index representative for each left coset x·N, in index order."""
    member_idx = np.array(list(iter_bits(mask)), dtype=np.int64)
    mul = group.mul
    seen = np.zeros(group.order, dtype=bool)
    reps = []
    for x in range(group.order):
        if not seen[x]:
            coset = mul[np.full(member_idx.shape, x), member_idx]
            seen[coset] = True
            reps.append(x)
    return reps


def quotient_group(group: FiniteGroup, normal_mask: int,
                   label: str = "") -> FiniteGroup:
    """The action of the group on left cosets of a normal subgroup.

    Faithful for G/N; degree equals the index [G : N].
    """
    q, _ = quotient_with_projection(group, normal_mask, label)
    return q


def quotient_with_projection(group: FiniteGroup, normal_mask: int,
                             label: str = "") -> tuple[FiniteGroup, np.ndarray]:
    """Quotient plus the element-level projection map G -> G/N.

    projection[i] is the index, in the quotient's element table, of the image
    of group element i.
    """
    if not group.is_subgroup_mask(normal_mask):
        raise NotNormal("quotient modulus is not a subgroup")
    if not group.is_normal_mask(normal_mask):
        raise NotNormal("quotient modulus is not normal")
    reps = left_coset_reps(group, normal_mask)
    rep_pos = {r: i for i, r in enumerate(reps)}
    mul = group.mul
    member_idx = np.array(list(iter_bits(normal_mask)), dtype=np.int64)
    coset_id = np.empty(group.order, dtype=np.int64)
    for pos, r in enumerate(reps):
        coset_id[mul[np.full(member_idx.shape, r), member_idx]] = pos
    k = len(reps)

    def action(g: int) -> Perm:
        return tuple(int(coset_id[mul[g, r]]) for r in reps)

    gen_perms = [action(group.element_index[g]) for g in group.generators]
    quotient = FiniteGroup(
        gen_perms or [perms.identity(k)],
        spec_label=label or f"{group.spec_label}/N[{len(member_idx)}]")
    expected = group.order // int(member_idx.size)
    if quotient.order != expected:
        raise RealizeError(
            f"quotient order {quotient.order} != index {expected}")
    projection = np.array(
        [quotient.element_index[action(i)] for i in range(group.order)],
        dtype=np.int64)
    return quotient, projection
