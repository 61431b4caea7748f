"""Persistent lattice cache.

One text file per group, keyed by a content hash of the canonical element
table, so isomorphic groups with different presentations never collide
(they have different tables) while re-presentations of the same table hit.
Entries carry their own checksum; anything that fails validation is
discarded and recomputed.
"""

from __future__ import annotations

import hashlib
import logging
import os
from pathlib import Path

from .errors import CacheError
from .groups import FiniteGroup
from .lattice import Subgroup, SubgroupLattice, all_subgroups

log = logging.getLogger(__name__)

FORMAT_VERSION = "1"


def table_digest(group: FiniteGroup) -> str:
    return hashlib.sha256(group.table_bytes()).hexdigest()


def lattice_to_text(lat: SubgroupLattice) -> str:
    lines = [f"groupgraph-lattice-cache {FORMAT_VERSION}",
             f"group {lat.group.order} {lat.group.degree} {table_digest(lat.group)}"]
    for s in lat.subgroups:
        hint = ",".join(str(i) for i in s.gen_hint) or "-"
        lines.append(f"sub {s.order} {s.mask:x} {hint}")
    lines.append("conj " + " ".join(str(c) for c in lat.conj_class_of))
    for p in sorted(lat.sylow_index):
        lines.append(f"sylow {p} " + ",".join(str(i) for i in lat.sylow_index[p]))
    lines.append(f"frattini {lat.frattini_id}")
    body = "\n".join(lines)
    digest = hashlib.sha256(body.encode()).hexdigest()
    return body + f"\nchecksum {digest}\n"


def lattice_from_text(group: FiniteGroup, text: str) -> SubgroupLattice:
    body, _, tail = text.rstrip("\n").rpartition("\n")
    if not tail.startswith("checksum "):
        raise CacheError("missing checksum line")
    if hashlib.sha256(body.encode()).hexdigest() != tail.split()[1]:
        raise CacheError("checksum mismatch")
    lines = body.splitlines()
    if lines[0] != f"groupgraph-lattice-cache {FORMAT_VERSION}":
        raise CacheError(f"unsupported cache version: {lines[0]!r}")
    _, order, degree, digest = lines[1].split()
    if (int(order), int(degree)) != (group.order, group.degree) \
            or digest != table_digest(group):
        raise CacheError("cache entry is for a different group")
    subgroups = []
    conj = None
    sylow: dict[int, tuple[int, ...]] = {}
    frattini = None
    for line in lines[2:]:
        kind, _, rest = line.partition(" ")
        if kind == "sub":
            order_s, mask_hex, hint_s = rest.split()
            hint = () if hint_s == "-" else tuple(int(i) for i in hint_s.split(","))
            subgroups.append(Subgroup(int(mask_hex, 16), int(order_s), hint))
        elif kind == "conj":
            conj = [int(c) for c in rest.split()]
        elif kind == "sylow":
            p, ids = rest.split(" ", 1)
            sylow[int(p)] = tuple(int(i) for i in ids.split(","))
        elif kind == "frattini":
            frattini = int(rest)
        else:
            raise CacheError(f"unknown record {kind!r}")
    if conj is None or frattini is None or len(conj) != len(subgroups):
        raise CacheError("incomplete cache entry")
    return SubgroupLattice(group, subgroups, annotations={
        "conj_class_of": conj, "sylow_index": sylow, "frattini_id": frattini})


def cache_path(cache_dir: str | Path, group: FiniteGroup) -> Path:
    return Path(cache_dir) / f"{table_digest(group)}.lattice"


def load_or_compute(group: FiniteGroup, cache_dir: str | Path | None = None,
                    **kwargs) -> tuple[SubgroupLattice, bool]:
    """Return (lattice, was_cache_hit); persist fresh computations."""
    if cache_dir is None:
        return all_subgroups(group, **kwargs), False
    path = cache_path(cache_dir, group)
    if path.exists():
        try:
            return lattice_from_text(group, path.read_text()), True
        except (CacheError, ValueError, IndexError) as exc:
            log.warning("discarding bad cache entry %s: %s", path, exc)
    lat = all_subgroups(group, **kwargs)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(f".tmp{os.getpid()}")
    tmp.write_text(lattice_to_text(lat))
    os.replace(tmp, path)
    return lat, False
