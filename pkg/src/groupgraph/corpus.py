"""Corpus manifests: labeled group specs, partitioned into runtime tiers.

Manifest format: one ``label = constructor-expression`` per line, ``#``
comments and blank lines allowed. Tier membership is decided by realized
group order: fast (<= 200), standard (<= 400), long (everything).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from importlib import resources

from .errors import GroupGraphError
from .specs import GroupSpec, parse_group_spec

TIER_BOUNDS = {"fast": 200, "standard": 400, "long": None}


@dataclass(frozen=True)
class CorpusEntry:
    label: str
    spec: GroupSpec
    spec_text: str


@dataclass
class Corpus:
    entries: tuple[CorpusEntry, ...]
    manifest_sha256: str

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


class ManifestError(GroupGraphError):
    def __init__(self, message: str, line_number: int):
        super().__init__(f"manifest line {line_number}: {message}")
        self.line_number = line_number


def parse_manifest(text: str) -> Corpus:
    entries = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ManifestError("expected 'label = spec-expression'", lineno)
        label, spec_text = (part.strip() for part in line.split("=", 1))
        if not label or not label.replace("_", "").isalnum():
            raise ManifestError(f"bad label {label!r}", lineno)
        if label in seen:
            raise ManifestError(f"duplicate label {label!r}", lineno)
        seen.add(label)
        try:
            spec = parse_group_spec(spec_text)
        except GroupGraphError as exc:
            raise ManifestError(str(exc), lineno) from exc
        entries.append(CorpusEntry(label, spec, spec_text))
    digest = hashlib.sha256(text.encode()).hexdigest()
    return Corpus(tuple(entries), digest)


def load_corpus(path: str | None = None) -> Corpus:
    """Load a manifest file, or the packaged default corpus."""
    if path is None:
        text = resources.files("groupgraph.data").joinpath(
            "corpus_default.txt").read_text()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return parse_manifest(text)


def tier_of_order(order: int) -> str:
    if order <= TIER_BOUNDS["fast"]:
        return "fast"
    if order <= TIER_BOUNDS["standard"]:
        return "standard"
    return "long"


def tier_allows(tier: str, order: int) -> bool:
    """Tiers are cumulative: standard includes fast, long includes all."""
    if tier not in TIER_BOUNDS:
        raise GroupGraphError(f"unknown tier {tier!r}")
    bound = TIER_BOUNDS[tier]
    return bound is None or order <= bound
