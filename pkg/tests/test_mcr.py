from itertools import combinations, product

import pytest

from fkalg.freealg import format_word
from fkalg.graphs import Graph, complement, named_graph
from fkalg.mcr import (COUNTER_G1, H6_PREFIX, NotFree, algorithm_mcr, mcr_for_subgraph,
                       quotient_series, subgraph_dims, tensor_check, twin_obstruction)
from fkalg.series import GradedSeries, mul, qint


def _partitions(n):
    edges = list(combinations(range(1, n + 1), 2))
    for e in edges:
        rest = [x for x in edges if x != e]
        for mask in product((0, 1), repeat=len(rest)):
            G = Graph(n, [x for x, m in zip(rest, mask) if m])
            H = Graph(n, [x for x, m in zip(rest, mask) if not m])
            yield G, H, e


def test_three_vertex_example():
    r = algorithm_mcr(Graph(3, [(1, 2)]), Graph(3, [(1, 3)]), (2, 3), 5)
    assert r.profile() == [1, 1, 1]
    assert r.stabilized and r.exact
    assert [[format_word(w) for w in ws] for ws in r.M] == [["1"], ["x23"], ["x12.x23"]]


def test_zero_bound():
    r = algorithm_mcr(Graph(3, [(1, 2)]), Graph(3, [(1, 3)]), (2, 3), 0)
    assert r.M == [[()]] and r.N == [[()]] and r.ranks == [1]
    assert not r.stabilized


def test_partition_precondition():
    with pytest.raises(ValueError):
        algorithm_mcr(Graph(3, [(1, 2)]), Graph(3, [(1, 2)]), (2, 3), 3)
    with pytest.raises(ValueError):
        algorithm_mcr(Graph(3, [(1, 2)]), Graph(3), (2, 3), 3)
    with pytest.raises(ValueError):
        mcr_for_subgraph(named_graph("A", [3]).with_n(4), named_graph("complete", [4]), 3)


def test_json_shape():
    j = algorithm_mcr(Graph(3, [(1, 2)]), Graph(3, [(1, 3)]), (2, 3), 5).to_json()
    assert j["degrees"] == [0, 1, 2] and j["ranks"] == [1, 1, 1]
    assert j["M"][0] == ["1"] and j["exact"] is True


def test_d4_in_d5():
    r = mcr_for_subgraph(named_graph("D", [4]).with_n(5), named_graph("D", [5]), 10)
    target = mul(qint(5), GradedSeries([1, 0, 0, 1]))
    assert r.profile() == list(target.coeffs)
    assert r.stabilized


@pytest.mark.parametrize("n", [3, 4])
def test_profile_matches_quotient(n, rs3, rs4):
    rs = rs3 if n == 3 else rs4
    for G, H, e in _partitions(n):
        r = algorithm_mcr(G, H, e, 14, n)
        q = quotient_series(G, G.union(Graph(n, [e])), rs, 14, n)
        assert r.profile() == list(q.coeffs), (G, e)
        assert r.stabilized
        for d in range(1, len(r.M)):
            assert len(r.M[d]) <= len(G.edges | {e}) * len(r.M[d - 1])


def test_quotient_examples(rs3, rs5):
    assert quotient_series(named_graph("A", [2]).with_n(3), named_graph("A", [3]), rs3, 6) == qint(3)
    q = quotient_series(named_graph("D", [4]).with_n(5), named_graph("D", [5]), rs5, 16)
    assert q == mul(qint(5), GradedSeries([1, 0, 0, 1]))
    g = named_graph("cycle", [4]).with_n(5)
    assert list(quotient_series(g, g, rs5, 8).coeffs) == [1]


def test_d3_in_d4_palindromic(rs4):
    q = quotient_series(named_graph("D", [3]).with_n(4), named_graph("D", [4]), rs4, 13)
    assert q == mul(qint(4), GradedSeries([1, 0, 1]))
    assert q.coeffs == q.coeffs[::-1]


def test_quotient_requires_subgraph(rs3):
    with pytest.raises(ValueError):
        quotient_series(Graph(3, [(1, 3)]), Graph(3, [(1, 2)]), rs3, 4)


def test_not_free_is_reported():
    # a fake dims source whose quotient is not integral
    fake = {1: [1, 2, 0], 2: [1, 3, 1, 0]}
    source = lambda g, d: fake[len(g.edges)]
    with pytest.raises(NotFree):
        quotient_series(Graph(3, [(1, 2)]), Graph(3, [(1, 2), (2, 3)]), source, 3)


def test_subgraph_dims_sources(rs4):
    g = named_graph("cycle", [4])
    assert subgraph_dims(g, rs4, 13) == subgraph_dims(g, "form", 13)
    assert subgraph_dims(g, rs4, 13)[-1] == 0
    with pytest.raises(ValueError):
        subgraph_dims(g, "nope", 3)


def test_tensor_claw_triangle(rs4):
    claw = named_graph("star", [4])
    rep = tensor_check(claw, complement(claw), rs4, 14)
    assert rep.ok and rep.first_mismatch is None
    assert rep.ambient[:4] == [1, 6, 19, 42]


def test_tensor_trivial(rs4):
    assert tensor_check(named_graph("complete", [4]), Graph(4), rs4, 13).ok
    with pytest.raises(ValueError):
        tensor_check(named_graph("A", [4]), Graph(4), rs4, 4)


def test_every_split_of_k4_is_a_tensor_product(rs4):
    edges = list(combinations(range(1, 5), 2))
    for mask in product((0, 1), repeat=5):
        g = Graph(4, [e for e, m in zip(edges, (1,) + mask) if m])
        assert tensor_check(g, complement(g), rs4, 13).ok, g


def test_tensor_mismatch_is_located():
    fake = {1: [1, 1, 0], 2: [1, 2, 1, 0], 3: [1, 3, 4, 1, 0]}
    rep = tensor_check(Graph(3, [(1, 2)]), Graph(3, [(1, 3), (2, 3)]),
                       lambda g, d: fake[len(g.edges)], 4)
    assert not rep.ok and rep.first_mismatch == 2


def test_twin_obstruction():
    root, bad = twin_obstruction(H6_PREFIX[:8])
    assert list(root.coeffs[:7]) == [1, 7, 31, 110, 338, 938, 2408]
    assert bad == 7 and root.coeffs[7].denominator == 2
    assert twin_obstruction([1, 3, 3, 1])[1] is None


def test_counterexample_graphs_are_complementary_twins():
    for g in COUNTER_G1:
        h = complement(g)
        assert len(g.edges) == 7 and len(h.edges) == 8


@pytest.mark.slow
def test_counterexample_fails_at_degree_seven():
    rep = tensor_check(COUNTER_G1[0], complement(COUNTER_G1[0]), lambda g, d: _counter_dims(g, d), 7)
    assert rep.first_mismatch == 7
    assert rep.product[7] == 228854 and rep.ambient[7] == 228855


def _counter_dims(g, d):
    if len(g.edges) == 15:
        return list(H6_PREFIX[: d + 1])
    from _systems import rewrite_system
    return subgraph_dims(g, rewrite_system(6, 7), d)
