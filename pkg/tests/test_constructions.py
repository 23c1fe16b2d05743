from itertools import combinations, permutations

import pytest
from hypothesis import given, settings, strategies as st

from lif.constructions import (
    CliqueSpec,
    build_all,
    build_alpha_2n,
    build_alpha_eq,
    build_alpha_exists_3n,
    build_alpha_neq,
    complete_graph,
    load_graph,
    make_graph,
)
from lif.errors import LIFError
from lif.semantics import BRV, Domain, Interpretation, evaluate
from lif.syntax import Vocabulary, variables

S2 = CliqueSpec(n=2)


def ev(e, graph, spec=S2):
    return evaluate(e, graph.interpretation(), spec.universe, graph.domain)


def cliques_as_pairs(graph, n):
    """Every ordered 2n-tuple of distinct, pairwise adjacent vertices, split in half."""
    out = set()
    for t in permutations(graph.vertices, 2 * n):
        if all(frozenset(p) in graph.edges for p in combinations(t, 2)):
            out.add((t[:n], t[n:]))
    return out


def test_all_is_full():
    for n, verts, size in [(2, (1, 2), 16), (2, (1,), 1), (3, (1, 2), 64)]:
        spec = CliqueSpec(n=n)
        g = make_graph(verts, [])
        got = ev(build_all(spec), g, spec)
        assert len(got) == size
        assert got == BRV.full(spec.universe, g.domain)


def test_equality_and_disequality_split_all():
    g = complete_graph(3)
    eq, neq = ev(build_alpha_eq(S2), g), ev(build_alpha_neq(S2), g)
    pairs = BRV.full(S2.universe, g.domain).pairs()
    values = lambda p, q: p + q
    assert set(eq.pairs()) == {(p, q) for p, q in pairs if len(set(values(p, q))) < 4}
    assert set(neq.pairs()) == {(p, q) for p, q in pairs if len(set(values(p, q))) == 4}


def test_alpha_2n_on_complete_graph():
    assert len(ev(build_alpha_2n(S2), complete_graph(4))) == 24


def test_alpha_2n_missing_edge():
    g = make_graph(range(1, 6), [e for e in combinations(range(1, 6), 2) if e != (1, 2)])
    got = ev(build_alpha_2n(S2), g)
    assert len(got) == 2 * 24  # {1,3,4,5} and {2,3,4,5}
    assert not any({1, 2} <= set(p + q) for p, q in got.pairs())


def test_alpha_2n_empty_relation():
    g = make_graph(range(1, 5), [])
    assert len(ev(build_alpha_2n(S2), g)) == 0


def test_exists_3n_on_six_cliques():
    k6 = complete_graph(6)
    assert len(ev(build_alpha_exists_3n(S2), k6)) > 0
    minus = make_graph(k6.vertices, [tuple(e) for e in k6.edges if e != frozenset((1, 2))])
    assert len(ev(build_alpha_exists_3n(S2), minus)) == 0
    assert len(ev(build_alpha_exists_3n(S2), make_graph(range(1, 7), []))) == 0


def test_only_declared_variables():
    for build in (build_all, build_alpha_eq, build_alpha_neq, build_alpha_2n, build_alpha_exists_3n):
        assert variables(build(S2)) == set(S2.variables)
    assert variables(build_alpha_2n(CliqueSpec(n=3))) == {"x1", "x2", "x3"}


graphs = st.integers(1, 6).flatmap(
    lambda k: st.builds(
        lambda es: make_graph(range(1, k + 1), es),
        st.sets(st.sampled_from(list(combinations(range(1, k + 1), 2)) or [(1, 1)])),
    )
)


@settings(max_examples=60)
@given(graphs)
def test_alpha_2n_matches_enumeration(g):
    assert set(ev(build_alpha_2n(S2), g).pairs()) == cliques_as_pairs(g, 2)


@settings(max_examples=40)
@given(graphs)
def test_exists_3n_matches_clique_search(g):
    assert (len(ev(build_alpha_exists_3n(S2), g)) > 0) == g.has_clique(6)
    assert (len(ev(build_alpha_2n(S2), g)) > 0) == g.has_clique(4)


def test_has_clique_reference():
    assert complete_graph(6).has_clique(6)
    assert not make_graph(range(1, 7), []).has_clique(2)


def test_load_graph_formats():
    g = load_graph('{"vertices": [1, 2, 3, 4], "edges": [[1, 2], [2, 3]]}')
    assert g.vertices == (1, 2, 3, 4) and frozenset((2, 3)) in g.edges
    h = load_graph("# triangle\n1 2\n2 3\n3 1\n")
    assert h.has_clique(3) and h.vertices == (1, 2, 3)
    assert make_graph([], [(1, 1), (1, 2)]).edges == {frozenset((1, 2))}
    assert Interpretation({"R": {(1, 2), (2, 1)}}) == make_graph([], [(1, 2)]).interpretation()


@pytest.mark.parametrize("text", ['{"vertices": [1]}', "1 2 3\n", ""])
def test_load_graph_errors(text):
    with pytest.raises(LIFError):
        load_graph(text)


def test_spec_validation():
    with pytest.raises(LIFError):
        CliqueSpec(n=1)
    with pytest.raises(LIFError):
        CliqueSpec(vocabulary=Vocabulary({"R": (2, 1)}))
    assert CliqueSpec(n=3, var_prefix="v").variables == ("v1", "v2", "v3")
    assert CliqueSpec().universe.vars == ("x1", "x2")
    assert isinstance(complete_graph(2).domain, Domain)
