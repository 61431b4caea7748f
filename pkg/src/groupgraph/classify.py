"""Group-theoretic predicates: abelian, Dedekind, Iwasawa, nilpotent,
solvable, supersolvable, simple, p-group.

The hard predicates (nilpotent, supersolvable) are each decided by two
independent characterizations that must agree; a disagreement raises
rather than returning a guess, since it means the lattice is wrong.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bits import iter_bits
from .errors import CriteriaDisagreement, GroupGraphError
from .groups import FiniteGroup, quotient_group, subgroup_group
from .lattice import SubgroupLattice


@dataclass
class GroupClassification:
    abelian: bool
    p_group: int | None
    dedekind: bool
    iwasawa: bool
    nilpotent: bool
    solvable: bool
    supersolvable: bool
    simple: bool
    witnesses: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "abelian": self.abelian,
            "dedekind": self.dedekind,
            "iwasawa": self.iwasawa,
            "nilpotent": self.nilpotent,
            "solvable": self.solvable,
            "supersolvable": self.supersolvable,
            "simple": self.simple,
            "p_group": self.p_group if self.p_group is not None else False,
        }


def is_abelian(group: FiniteGroup) -> bool:
    gens = group.generator_indices()
    mul = group.mul
    return all(mul[a, b] == mul[b, a] for a in gens for b in gens)


def p_group_prime(group: FiniteGroup) -> int | None:
    n = group.order
    if n == 1:
        return None
    p = 2
    while n % p:
        p += 1 if p == 2 else 2
    while n % p == 0:
        n //= p
    return p if n == 1 else None


def is_dedekind(group: FiniteGroup, lat: SubgroupLattice) -> bool:
    return all(lat.is_normal)


def is_iwasawa(group: FiniteGroup, lat: SubgroupLattice) -> bool:
    """Every pair of subgroups permutes: HK = KH as sets."""
    if is_dedekind(group, lat):
        return True
    return _iwasawa_witness(lat) is None


def _iwasawa_witness(lat: SubgroupLattice) -> tuple[int, int] | None:
    n = lat.subgroup_count()
    for h in range(n):
        for k in range(h + 1, n):
            if not lat.is_permutable_pair(h, k):
                return (h, k)
    return None


def is_nilpotent(group: FiniteGroup, lat: SubgroupLattice) -> bool:
    sylow_normal = all(len(ids) == 1 and lat.is_normal[ids[0]]
                       for ids in lat.sylow_index.values())
    maximal_normal = all(lat.is_normal[m] for m in lat.maximal_subgroups())
    if sylow_normal != maximal_normal:
        raise CriteriaDisagreement(
            f"{group.spec_label}: Sylow-normality says nilpotent={sylow_normal} "
            f"but maximal-normality says {maximal_normal}")
    return sylow_normal


def derived_subgroup_mask(group: FiniteGroup, mask: int) -> int:
    """Commutator subgroup of the subgroup given by ``mask``, inside group."""
    idx = np.array(list(iter_bits(mask)), dtype=np.int64)
    mul, inv = group.mul, group.inv
    step = mul[np.ix_(inv[idx], inv[idx])]
    step = mul[step, idx[:, None]]
    step = mul[step, idx[None, :]]
    comms = np.unique(step)
    return group.closure_mask(comms, comms)


def derived_series_orders(group: FiniteGroup) -> list[int]:
    mask = (1 << group.order) - 1
    orders = [group.order]
    while True:
        nxt = derived_subgroup_mask(group, mask)
        if nxt == mask:
            return orders
        mask = nxt
        orders.append(mask.bit_count())
        if mask == 1:
            return orders


def is_solvable(group: FiniteGroup, lat: SubgroupLattice | None = None) -> bool:
    return derived_series_orders(group)[-1] == 1


def _prime_chain_to_full(lat: SubgroupLattice) -> list[int] | None:
    """A chain of subgroups, each normal in G, with prime indices between
    consecutive entries, from the trivial subgroup to G. None if there is
    no such chain.

    A normal series with cyclic factors refines to one with prime-index
    steps (subgroups of a cyclic quotient are characteristic, so their
    preimages are again normal in G), so this decides supersolvability.
    """
    normals = [i for i in range(lat.subgroup_count()) if lat.is_normal[i]]
    normals.sort(key=lambda i: lat.order_of(i))
    parent: dict[int, int] = {lat.trivial_id: -1}
    by_order: dict[int, list[int]] = {}
    for i in normals:
        by_order.setdefault(lat.order_of(i), []).append(i)
    for i in normals:
        if i in parent:
            continue
        o = lat.order_of(i)
        for q in sorted(_prime_factors(o)):
            below = o // q
            for m in by_order.get(below, ()):
                if m in parent and lat.supersets[m] >> i & 1:
                    parent[i] = m
                    break
            if i in parent:
                break
    if lat.full_id not in parent:
        return None
    chain = [lat.full_id]
    while chain[-1] != lat.trivial_id:
        chain.append(parent[chain[-1]])
    return list(reversed(chain))


def _prime_factors(n: int) -> set[int]:
    out = set()
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.add(n)
    return out


def _verify_cyclic_factors(lat: SubgroupLattice, chain: list[int]) -> None:
    """Check each factor of a normal chain is cyclic, via actual quotients."""
    group = lat.group
    for below, above in zip(chain, chain[1:]):
        sub = subgroup_group(group, lat.mask_of(above),
                             gen_hint=lat.subgroups[above].gen_hint)
        inner_mask = 0
        for i in iter_bits(lat.mask_of(below)):
            inner_mask |= 1 << sub.element_index[group.elements[i]]
        quotient = quotient_group(sub, inner_mask)
        if int(quotient.element_orders.max()) != quotient.order:
            raise GroupGraphError(
                "normal chain factor is not cyclic; chain search is broken")


def is_supersolvable(group: FiniteGroup, lat: SubgroupLattice) -> bool:
    """Primary: every maximal subgroup has prime index (Huppert's criterion
    for finite groups). Cross-check: a G-normal chain with cyclic factors."""
    order = group.order
    huppert = all(_is_prime_value(order // lat.order_of(m))
                  for m in lat.maximal_subgroups())
    chain = _prime_chain_to_full(lat)
    if chain is not None:
        _verify_cyclic_factors(lat, chain)
    if huppert != (chain is not None):
        raise CriteriaDisagreement(
            f"{group.spec_label}: Huppert says supersolvable={huppert} but the "
            f"normal-cyclic-chain search says {chain is not None}")
    return huppert


def is_simple(group: FiniteGroup, lat: SubgroupLattice) -> bool:
    """No normal subgroup strictly between the trivial one and G. The
    trivial group itself does not count as simple."""
    if group.order == 1:
        return False
    return not any(
        lat.is_normal[i] for i in lat.nontrivial_proper_ids())


def classify(group: FiniteGroup, lat: SubgroupLattice) -> GroupClassification:
    witnesses: dict = {}
    abelian = is_abelian(group)
    p = p_group_prime(group)
    dedekind = all(lat.is_normal)
    if not dedekind:
        witnesses["non_normal_subgroup"] = next(
            i for i, flag in enumerate(lat.is_normal) if not flag)
    if dedekind:
        iwasawa = True
    else:
        pair = _iwasawa_witness(lat)
        iwasawa = pair is None
        if pair:
            witnesses["non_permutable_pair"] = pair
    nilpotent = is_nilpotent(group, lat)
    if not nilpotent:
        witnesses["non_normal_sylow"] = next(
            ids[0] for ids in lat.sylow_index.values()
            if not (len(ids) == 1 and lat.is_normal[ids[0]]))
    series = derived_series_orders(group)
    solvable = series[-1] == 1
    witnesses["derived_series_orders"] = tuple(series)
    supersolvable = is_supersolvable(group, lat)
    if not supersolvable:
        witnesses["non_prime_index_maximal"] = next(
            m for m in lat.maximal_subgroups()
            if not _is_prime_value(group.order // lat.order_of(m)))
    simple = is_simple(group, lat)
    result = GroupClassification(
        abelian=abelian, p_group=p, dedekind=dedekind, iwasawa=iwasawa,
        nilpotent=nilpotent, solvable=solvable, supersolvable=supersolvable,
        simple=simple, witnesses=witnesses)
    _assert_implications(group, result)
    return result


def _is_prime_value(n: int) -> bool:
    return n > 1 and _prime_factors(n) == {n}


def _assert_implications(group: FiniteGroup, c: GroupClassification) -> None:
    chain = [
        (c.abelian, c.dedekind, "abelian => dedekind"),
        (c.dedekind, c.iwasawa, "dedekind => iwasawa"),
        (c.abelian, c.nilpotent, "abelian => nilpotent"),
        (c.nilpotent, c.supersolvable, "nilpotent => supersolvable"),
        (c.supersolvable, c.solvable, "supersolvable => solvable"),
        (c.p_group is not None, c.nilpotent, "p-group => nilpotent"),
    ]
    for premise, conclusion, name in chain:
        if premise and not conclusion:
            raise GroupGraphError(
                f"{group.spec_label}: classification violates {name}")
