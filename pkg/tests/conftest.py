import pytest

from groupgraph import all_subgroups, build_graph, realize


@pytest.fixture(scope="session")
def make():
    """Memoized (group, lattice) factory keyed by spec text."""
    store = {}

    def get(spec_text):
        if spec_text not in store:
            group = realize(spec_text)
            store[spec_text] = (group, all_subgroups(group))
        return store[spec_text]

    return get


@pytest.fixture(scope="session")
def dgraph(make):
    """Memoized subgroup-graph factory, difference graph by default."""
    store = {}

    def get(spec_text, kind="difference"):
        key = (spec_text, kind)
        if key not in store:
            _, lat = make(spec_text)
            store[key] = build_graph(lat, kind)
        return store[key]

    return get
