import json

import pytest

from groupgraph import REGISTRY, Budgets, build_bundle, hunt, run_corpus, verify
from groupgraph.corpus import parse_manifest
from groupgraph.errors import RealizeError
from groupgraph.harness import registry_table

MINI_MANIFEST = """
# tiny corpus for harness tests
s3 = dihedral(3)
d4 = dihedral(4)
a4 = alternating(4)
z6 = cyclic(6)
z4 = cyclic(4)
a5 = alternating(5)
q8 = dicyclic(2)
z4xq8 = direct(cyclic(4), dicyclic(2))
s3xz5 = direct(dihedral(3), cyclic(5))
s3xz7 = direct(dihedral(3), cyclic(7))
es27_exp3 = semidirect(elem_abelian(3,2), cyclic(3), heisenberg3)
gap_32_49_like = semidirect(elem_abelian(2,3), elem_abelian(2,2), gap3249)
"""

EXPECTED_IDS = [
    "T-2.2a", "T-2.2b", "T-2.2c", "T-2.2d", "T-2.2e", "T-2.2f", "T-2.2g",
    "T-2.3", "T-2.4a", "T-2.4b", "T-2.5", "T-2.6", "T-2.7", "T-2.8",
    "T-2.9", "T-2.10", "T-3.1", "T-3.2", "T-3.3", "T-3.4", "T-4.1",
    "T-4.2", "T-5.1", "T-5.2", "T-5.3", "T-5.4", "T-6.1", "T-6.2",
]


@pytest.fixture(scope="module")
def mini_corpus():
    return parse_manifest(MINI_MANIFEST)


@pytest.fixture(scope="module")
def mini_report(mini_corpus):
    return run_corpus(mini_corpus, tier="fast")


def test_registry_is_complete():
    assert list(REGISTRY) == EXPECTED_IDS
    assert all(check.statement for check in REGISTRY.values())
    table = registry_table()
    assert [row["id"] for row in table] == EXPECTED_IDS


def test_verify_t25_on_a5():
    bundle = build_bundle("a5", "alternating(5)")
    verdict = verify(REGISTRY["T-2.5"], bundle)
    assert verdict.status == "confirmed"


def test_verify_t26_on_d4():
    bundle = build_bundle("d4", "dihedral(4)")
    assert verify(REGISTRY["T-2.6"], bundle).status == "confirmed"


def test_verify_t28_vacuous_on_z6():
    bundle = build_bundle("z6", "cyclic(6)")
    assert verify(REGISTRY["T-2.8"], bundle).status == "vacuous"


def test_failing_hypothesis_is_vacuous_not_confirmed():
    # D(A4) contains triangles and is not bipartite, so T-2.6 must not
    # count A4 as a confirmation
    bundle = build_bundle("a4", "alternating(4)")
    assert verify(REGISTRY["T-2.6"], bundle).status == "vacuous"
    # cyclic(4) has a single-vertex difference graph: T-2.5 skips it
    bundle = build_bundle("z4", "cyclic(4)")
    assert verify(REGISTRY["T-2.5"], bundle).status == "vacuous"


def test_t34_confirmed_on_s3():
    bundle = build_bundle("s3", "dihedral(3)")
    assert verify(REGISTRY["T-3.4"], bundle).status == "confirmed"
    assert verify(REGISTRY["T-3.1"], bundle).status == "confirmed"
    assert verify(REGISTRY["T-3.2"], bundle).status == "confirmed"
    assert verify(REGISTRY["T-3.3"], bundle).status == "confirmed"


def test_t22f_on_semidirect():
    bundle = build_bundle(
        "z5z8", "semidirect(cyclic(5), cyclic(8), z5_by_doubling)")
    assert verify(REGISTRY["T-2.2f"], bundle).status == "confirmed"
    bundle = build_bundle("s4", "symmetric(4)")
    assert verify(REGISTRY["T-2.2f"], bundle).status == "vacuous"


def test_unverified_propagates_from_budget():
    bundle = build_bundle("psl2_7", "psl2(7)",
                          budgets=Budgets(independence=2),
                          allow_unverified=True)
    verdict = verify(REGISTRY["T-5.4"], bundle)
    assert verdict.status == "unverified"
    # clique side still fine
    assert verify(REGISTRY["T-6.2"], bundle).status == "vacuous"


def test_run_corpus_mini_is_clean(mini_report):
    assert mini_report.exit_code() == 0
    assert mini_report.counterexamples() == []
    assert mini_report.labels[0] == "s3"
    assert mini_report.theorem_ids == EXPECTED_IDS


def test_run_corpus_nonvacuous_coverage(mini_report):
    summary = mini_report.summary()
    for tid in ["T-2.5", "T-2.6", "T-4.1", "T-4.2", "T-5.1", "T-5.2",
                "T-5.3", "T-5.4", "T-6.1", "T-6.2"]:
        assert summary[tid]["confirmed"] >= 1, tid


def test_run_corpus_gap3249_row(mini_report):
    row = mini_report.verdicts["gap_32_49_like"]
    assert row["T-2.4a"].status == "confirmed"
    assert row["T-2.4b"].status == "confirmed"
    assert row["T-2.6"].status == "vacuous"   # non-bipartite with triangles


def test_run_corpus_deterministic_across_threads(mini_corpus):
    a = run_corpus(mini_corpus, tier="fast", threads=1)
    b = run_corpus(mini_corpus, tier="fast", threads=4)
    assert json.dumps(a.to_json_dict(), sort_keys=True) == \
        json.dumps(b.to_json_dict(), sort_keys=True)


def test_run_corpus_empty():
    report = run_corpus(parse_manifest(""), tier="fast")
    assert report.labels == [] and report.exit_code() == 0


def test_run_corpus_tier_filter(mini_corpus):
    big = parse_manifest("s3 = dihedral(3)\nbig = psl2(7)\n")
    fast_only = run_corpus(big, tier="fast",
                           checks=[REGISTRY["T-2.9"]])
    assert fast_only.labels == ["s3", "big"]   # psl2(7) has order 168 <= 200
    tiny = parse_manifest("s3 = dihedral(3)\n")
    assert run_corpus(tiny, tier="fast").labels == ["s3"]


def test_run_corpus_check_filter(mini_corpus):
    report = run_corpus(mini_corpus, checks=[REGISTRY["T-6.1"]], tier="fast")
    assert report.theorem_ids == ["T-6.1"]
    assert set(report.verdicts["s3"]) == {"T-6.1"}


def test_run_corpus_aborts_on_bad_spec():
    bad = parse_manifest("huge = symmetric(9)\n")
    with pytest.raises(RealizeError, match="huge"):
        run_corpus(bad, tier="fast")


def test_report_text_format(mini_report):
    text = mini_report.to_text()
    assert "tier=fast" in text
    assert "T-2.5: confirmed=" in text
    assert "COUNTEREXAMPLE" not in text


def test_hunt_h1_boundary_fixture(mini_corpus):
    findings = hunt("H-1", mini_corpus)
    by_group = {f.groups: f for f in findings}
    boundary = by_group[("gap_32_49_like",)]
    assert boundary.status == "outside-hypothesis"
    assert "nilpotent" in boundary.detail
    assert all(f.status != "counterexample" for f in findings)
    supporting = [f for f in findings if f.status == "supporting"]
    assert supporting   # s3, a4, a5 ... all connected reduced graphs


def test_hunt_h2_girth3(mini_corpus):
    findings = hunt("H-2", mini_corpus)
    es27 = [f for f in findings if f.groups == ("es27_exp3",)]
    assert es27 and es27[0].status == "supporting"
    assert "girth=3" in es27[0].detail


def test_hunt_h3_isomorphic_pair(mini_corpus):
    findings = hunt("H-3", mini_corpus)
    pair = [f for f in findings if set(f.groups) == {"s3xz5", "s3xz7"}]
    assert pair and all(f.status == "supporting" for f in pair)
    notes = [f for f in findings if f.status == "coverage-note"]
    assert notes and "a5" in notes[0].groups


def test_hunt_h5(mini_corpus):
    findings = hunt("H-5", mini_corpus)
    a5 = [f for f in findings if f.groups == ("a5",)]
    assert a5 and a5[0].status == "supporting"
    assert "clique number" in a5[0].detail


def test_hunt_unknown_target(mini_corpus):
    from groupgraph.errors import GroupGraphError
    with pytest.raises(GroupGraphError):
        hunt("H-9", mini_corpus)
