"""Complete subgroup lattices of finite groups.

Enumeration is by cyclic extension: seed with every cyclic subgroup, then
join each known subgroup with each cyclic subgroup not inside it until no
new subgroup appears. Completeness rests on the fact that any subgroup is
reachable from the trivial one by repeatedly adjoining a cyclic subgroup;
it is additionally cross-checked against a brute-force enumeration for
small groups in the test suite.

Subgroups are bitsets over the parent group's element table, canonically
ordered by (order, bitset value), so ids are stable across runs and safe
to cache.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import log2

import numpy as np

from .bits import indices_from_mask, lowest_bit, mask_from_bool_array
from .errors import CapExceeded, GroupGraphError
from .groups import FiniteGroup

SUBGROUP_CAP = 100_000


@dataclass
class Subgroup:
    mask: int
    order: int
    gen_hint: tuple[int, ...]  # element indices; small generating set

    def member_indices(self) -> list[int]:
        return indices_from_mask(self.mask)


class SubgroupLattice:
    """All subgroups of a group, with inclusion and structural annotations."""

    def __init__(self, group: FiniteGroup, subgroups: list[Subgroup],
                 annotations: dict | None = None):
        self.group = group
        self.subgroups = subgroups
        self.index_of = {s.mask: i for i, s in enumerate(subgroups)}
        self.trivial_id = 0
        self.full_id = len(subgroups) - 1
        self._members = [np.array(s.member_indices(), dtype=np.int64)
                         for s in subgroups]
        self.supersets: list[int] = []
        self.conj_class_of: list[int] = []
        self.conj_classes: list[tuple[int, ...]] = []
        self.is_normal: list[bool] = []
        self.is_maximal: list[bool] = []
        self.sylow_index: dict[int, tuple[int, ...]] = {}
        self.frattini_id: int = -1
        self._annotate(annotations)

    # -- construction ---------------------------------------------------

    def _annotate(self, annotations: dict | None) -> None:
        # inclusion is cheap and fully determined by the masks, so it is
        # recomputed even on cache loads
        self._compute_inclusion()
        n = len(self.subgroups)
        if annotations is not None:
            self.conj_class_of = list(annotations["conj_class_of"])
            classes: dict[int, list[int]] = {}
            for i, c in enumerate(self.conj_class_of):
                classes.setdefault(c, []).append(i)
            self.conj_classes = [tuple(sorted(classes[c]))
                                 for c in sorted(classes)]
            self.sylow_index = {p: tuple(ids) for p, ids
                                in annotations["sylow_index"].items()}
            self.frattini_id = annotations["frattini_id"]
        else:
            self._compute_conjugacy()
            self._compute_sylow()
        self.is_normal = [len(self.conj_classes[self.conj_class_of[i]]) == 1
                          for i in range(n)]
        full_bit = 1 << self.full_id
        self.is_maximal = [
            i != self.full_id and self.supersets[i] == (1 << i) | full_bit
            for i in range(n)]
        if annotations is None:
            maximal_ids = [i for i in range(n) if self.is_maximal[i]]
            if maximal_ids:
                frat = self.subgroups[self.full_id].mask
                for i in maximal_ids:
                    frat &= self.subgroups[i].mask
                self.frattini_id = self.index_of[frat]
            else:
                self.frattini_id = self.full_id

    def _compute_inclusion(self) -> None:
        n = len(self.subgroups)
        order = self.group.order
        members = np.zeros((n, order), dtype=bool)
        for i, idx in enumerate(self._members):
            members[i, idx] = True
        packed = np.packbits(members, axis=1)
        pad = (-packed.shape[1]) % 8
        if pad:
            packed = np.pad(packed, ((0, 0), (0, pad)))
        words = packed.view(np.uint64)
        self.supersets = []
        for i in range(n):
            covered = ((words[i] & ~words) == 0).all(axis=1)
            self.supersets.append(
                int.from_bytes(np.packbits(covered, bitorder="little").tobytes(),
                               "little"))

    def _compute_conjugacy(self) -> None:
        n = len(self.subgroups)
        self.conj_class_of = [-1] * n
        self.conj_classes = []
        gens = self.group.generator_indices()
        abelian = all(
            (self.group.mul[a, b] == self.group.mul[b, a]) for a in gens for b in gens)
        if abelian:
            self.conj_classes = [(i,) for i in range(n)]
            self.conj_class_of = list(range(n))
            return
        conj = self.group.conj
        for i in range(n):
            if self.conj_class_of[i] >= 0:
                continue
            label = len(self.conj_classes)
            orbit = [i]
            self.conj_class_of[i] = label
            stack = [i]
            while stack:
                j = stack.pop()
                idx = self._members[j]
                for g in gens:
                    image = mask_from_bool_array(
                        np.bincount(conj[g, idx],
                                    minlength=self.group.order).astype(bool))
                    k = self.index_of[image]
                    if self.conj_class_of[k] < 0:
                        self.conj_class_of[k] = label
                        orbit.append(k)
                        stack.append(k)
            self.conj_classes.append(tuple(sorted(orbit)))

    def _compute_sylow(self) -> None:
        order = self.group.order
        self.sylow_index = {}
        remaining = order
        p = 2
        while remaining > 1:
            if remaining % p == 0:
                pmax = 1
                while order % (pmax * p) == 0:
                    pmax *= p
                ids = tuple(i for i, s in enumerate(self.subgroups)
                            if s.order == pmax)
                self.sylow_index[p] = ids
                while remaining % p == 0:
                    remaining //= p
            p += 1 if p == 2 else 2

    # -- queries ----------------------------------------------------------

    def order_of(self, sid: int) -> int:
        return self.subgroups[sid].order

    def mask_of(self, sid: int) -> int:
        return self.subgroups[sid].mask

    def join(self, h: int, k: int) -> int:
        """Smallest subgroup containing both; ids are order-sorted, so the
        lowest common superset id is the join."""
        return lowest_bit(self.supersets[h] & self.supersets[k])

    def intersection(self, h: int, k: int) -> int:
        return self.index_of[self.subgroups[h].mask & self.subgroups[k].mask]

    def product_size(self, h: int, k: int) -> int:
        meet = (self.subgroups[h].mask & self.subgroups[k].mask).bit_count()
        return self.subgroups[h].order * self.subgroups[k].order // meet

    def is_permutable_pair(self, h: int, k: int) -> bool:
        """HK = KH, equivalently |HK| = |<H, K>|."""
        return self.product_size(h, k) == self.subgroups[self.join(h, k)].order

    def conjugate_subgroup(self, sid: int, g: int) -> int:
        image = self.group.conjugate_mask(self.subgroups[sid].mask, g)
        return self.index_of[image]

    def conjugates(self, sid: int) -> tuple[int, ...]:
        return self.conj_classes[self.conj_class_of[sid]]

    def normalizer(self, sid: int) -> int:
        idx = self._members[sid]
        membership = np.zeros(self.group.order, dtype=bool)
        membership[idx] = True
        rows = membership[self.group.conj[:, idx]].all(axis=1)
        mask = mask_from_bool_array(rows)
        try:
            return self.index_of[mask]
        except KeyError:  # pragma: no cover - would mean the lattice is incomplete
            raise GroupGraphError("normalizer is missing from the lattice")

    def maximal_subgroups(self) -> list[int]:
        return [i for i, flag in enumerate(self.is_maximal) if flag]

    def sylow_subgroups(self, p: int) -> list[int]:
        if p not in self.sylow_index:
            raise GroupGraphError(f"{p} does not divide the group order "
                                  f"{self.group.order}")
        return list(self.sylow_index[p])

    def frattini(self) -> int:
        return self.frattini_id

    def nontrivial_proper_ids(self) -> list[int]:
        return [i for i in range(len(self.subgroups))
                if i != self.trivial_id and i != self.full_id]

    def is_cyclic_subgroup(self, sid: int) -> bool:
        orders = self.group.element_orders[self._members[sid]]
        return int(orders.max()) == self.subgroups[sid].order

    def subgroup_count(self) -> int:
        return len(self.subgroups)


def _cyclic_subgroups(group: FiniteGroup) -> list[Subgroup]:
    """One subgroup per distinct cyclic subgroup, keyed by first generator."""
    mul = group.mul
    seen: dict[int, Subgroup] = {}
    for x in range(group.order):
        mask = 1
        current = 0
        while True:
            current = int(mul[current, x])
            mask |= 1 << current
            if current == 0:
                break
        if mask not in seen:
            seen[mask] = Subgroup(mask, mask.bit_count(),
                                  (x,) if x else ())
    return sorted(seen.values(), key=lambda s: (s.order, s.mask))


def all_subgroups(group: FiniteGroup,
                  subgroup_cap: int = SUBGROUP_CAP) -> SubgroupLattice:
    """Enumerate every subgroup by cyclic extension and annotate the lattice."""
    cyclics = _cyclic_subgroups(group)
    full_mask = (1 << group.order) - 1
    known: dict[int, Subgroup] = {}
    queue: list[Subgroup] = []
    for s in cyclics:
        known[s.mask] = s
        queue.append(s)
    if full_mask not in known:
        # ensure G itself is present even before any join reaches it
        gen_idx = tuple(group.generator_indices())
        known[full_mask] = Subgroup(full_mask, group.order, gen_idx)
        queue.append(known[full_mask])
    head = 0
    while head < len(queue):
        sub = queue[head]
        head += 1
        if sub.mask == full_mask:
            continue
        for cyc in cyclics:
            if cyc.order == 1 or cyc.mask & ~sub.mask == 0:
                continue
            seed = sub.member_indices() + cyc.member_indices()
            joined = group.closure_mask(seed, sub.gen_hint + cyc.gen_hint)
            if joined not in known:
                if len(known) >= subgroup_cap:
                    raise CapExceeded(
                        f"subgroup enumeration exceeded cap {subgroup_cap}")
                new = Subgroup(joined, joined.bit_count(),
                               sub.gen_hint + cyc.gen_hint)
                known[joined] = new
                queue.append(new)
    ordered = sorted(known.values(), key=lambda s: (s.order, s.mask))
    return SubgroupLattice(group, ordered)


def brute_force_subgroup_masks(group: FiniteGroup,
                               max_generators: int | None = None) -> set[int]:
    """Independent oracle: closures of every generating set of bounded size.

    Any subgroup of a group of order n is generated by at most floor(log2 n)
    elements, since each extra generator at least doubles the subgroup.
    Only intended for small groups (the tests use it up to order 24).
    """
    if max_generators is None:
        max_generators = max(1, int(log2(max(group.order, 2))))
    masks = {1}
    nonidentity = range(1, group.order)
    for size in range(1, max_generators + 1):
        for combo in combinations(nonidentity, size):
            masks.add(group.subgroup_generated(combo))
    return masks
