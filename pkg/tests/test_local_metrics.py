import math

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from astopo import local_metrics as lm
from astopo.graph import GraphError, build_graph
from graphs import complete, cycle, path, random_connected, star, triangle_pendant

random_graphs = st.builds(random_connected, st.integers(3, 12), st.floats(0, 0.6), st.integers(0, 10**6))


def test_basic_stats():
    assert lm.basic_stats(complete(4)) == (4, 6, 3.0)
    n, m, k = lm.basic_stats(path(3))
    assert (n, m) == (3, 2) and k == pytest.approx(4 / 3, abs=1e-15)
    with pytest.raises(GraphError):
        lm.basic_stats(build_graph([]))


def test_degree_distribution():
    d = lm.degree_distribution(star(4))
    assert d.pdf == {1: 0.75, 3: 0.25}
    assert lm.degree_distribution(complete(4)).pdf == {3: 1.0}
    c5 = lm.degree_distribution(cycle(5))
    assert c5.pdf == {2: 1.0} and c5.second_moment == 4
    assert d.ccdf == {1: 1.0, 3: 0.25}
    assert (d.k_min, d.k_max) == (1, 3)


@given(random_graphs)
def test_degree_distribution_identities(g):
    d = lm.degree_distribution(g)
    assert abs(sum(d.pdf.values()) - 1) <= 1e-12
    assert abs(sum(k * p for k, p in d.pdf.items()) - 2 * g.m / g.n) <= 1e-9
    cc = [d.ccdf[k] for k in sorted(d.ccdf)]
    assert all(a >= b for a, b in zip(cc, cc[1:]))
    assert d.ccdf[d.k_min] == 1.0


def test_power_law_max_degree():
    assert lm.power_law_max_degree(16, 3) == pytest.approx(4.0, rel=1e-15)
    assert lm.power_law_max_degree(1, 2.5) == 1.0
    # 9204 ** (1 / 1.25), evaluated independently as exp(ln(9204) / 1.25)
    assert lm.power_law_max_degree(9204, 2.25) == pytest.approx(math.exp(math.log(9204) * 0.8), rel=1e-12)
    assert 1480 < lm.power_law_max_degree(9204, 2.25) < 1490
    with pytest.raises(ValueError):
        lm.power_law_max_degree(10, 1.0)


def test_fit_power_law():
    fit = lm.fit_power_law([(x, x ** -2.0) for x in (1, 2, 4, 8)])
    assert fit.slope == pytest.approx(-2.0, abs=1e-12)
    assert fit.exponent == pytest.approx(2.0, abs=1e-12)
    assert fit.r_squared == pytest.approx(1.0)
    fit = lm.fit_power_law([(x, 8 * x ** -2.0) for x in (1, 2, 4)])
    assert fit.slope == pytest.approx(-2.0, abs=1e-12)
    assert fit.intercept == pytest.approx(math.log10(8), abs=1e-12)
    assert lm.fit_power_law([(1, 3.0), (5, 3.0), (9, 3.0)]).slope == pytest.approx(0.0, abs=1e-12)


def test_fit_power_law_range_and_zeros():
    pts = [(1, 1.0), (2, 0.0), (4, 1 / 16), (100, 5.0)]
    fit = lm.fit_power_law(pts, (1, 10))
    assert fit.slope == pytest.approx(-2.0) and fit.points == 2
    with pytest.raises(ValueError):
        lm.fit_power_law([(1, 1.0)])


def test_jdd_examples():
    j = lm.joint_degree_distribution(complete(3))
    assert j.m_kk == {(2, 2): 3} and j.probability(2, 2) == 1.0
    j = lm.joint_degree_distribution(path(3))
    assert j.m_kk == {(1, 2): 2} and j.probability(1, 2) == 1.0
    assert j.ordered_probability(1, 2) + j.ordered_probability(2, 1) == 1.0
    assert lm.joint_degree_distribution(star(5)).m_kk == {(1, 4): 4}
    with pytest.raises(GraphError):
        lm.joint_degree_distribution(build_graph([], [1, 2]))


@given(random_graphs)
def test_jdd_marginals(g):
    j = lm.joint_degree_distribution(g)
    d = lm.degree_distribution(g)
    assert j.total_edges == g.m
    assert j.endpoint_counts() == {k: k * c for k, c in d.counts.items() if k > 0}
    assert abs(sum(p for _, p in j.ordered_items()) - 1) < 1e-12


def test_knn_examples():
    assert lm.avg_neighbor_degree(star(5)) == {1: 4.0, 4: 1.0}
    assert lm.avg_neighbor_degree(complete(4)) == {3: 3.0}
    assert lm.avg_neighbor_degree(path(3)) == {1: 2.0, 2: 1.0}
    assert lm.normalized_avg_neighbor_degree(complete(4)) == {3: 1.0}


@settings(max_examples=50, deadline=None)
@given(st.integers(3, 200), st.floats(0.01, 0.2), st.integers(0, 10**6))
def test_knn_two_routes_agree(n, p, seed):
    g = random_connected(n, p, seed)
    direct = lm.avg_neighbor_degree(g)
    via_jdd = lm.avg_neighbor_degree_from_jdd(lm.joint_degree_distribution(g), lm.degree_distribution(g))
    assert direct.keys() == via_jdd.keys()
    for k in direct:
        assert abs(direct[k] - via_jdd[k]) <= 1e-9


def test_assortativity_star():
    for n in (3, 5, 9):
        assert lm.assortativity(star(n)) == pytest.approx(-1.0, abs=1e-12)


def test_assortativity_star_s5_by_hand():
    # 8 orientation pairs: four (1,4) and four (4,1); mean 2.5, var 2.25, cov -2.25
    xs = [1] * 4 + [4] * 4
    ys = [4] * 4 + [1] * 4
    mean = sum(xs) / 8
    var = sum((x - mean) ** 2 for x in xs) / 8
    cov = sum((x - mean) * (y - mean) for x, y in zip(xs, ys)) / 8
    assert (var, cov) == (2.25, -2.25)
    assert lm.assortativity(star(5)) == cov / var


def test_assortativity_regular_undefined():
    with pytest.raises(lm.UndefinedMetric):
        lm.assortativity(cycle(5))


@given(random_graphs, st.randoms())
def test_assortativity_relabel_invariant(g, rnd):
    try:
        r = lm.assortativity(g)
    except lm.UndefinedMetric:
        return
    perm = list(range(1000, 1000 + g.n))
    rnd.shuffle(perm)
    relabel = dict(zip(g.nodes, perm))
    h = build_graph((relabel[u], relabel[v]) for u, v in g.edges())
    assert abs(lm.assortativity(h) - r) < 1e-12
    assert lm.assortativity(g) == r
    assert -1 <= r <= 1


def test_clustering_examples():
    c = lm.clustering(complete(4))
    assert (c.by_degree, c.mean, c.coefficient) == ({3: 1.0}, 1.0, 1.0)
    c = lm.clustering(star(5))
    assert (c.mean, c.coefficient) == (0.0, 0.0)


def test_clustering_triangle_pendant():
    g = triangle_pendant()
    c = lm.clustering(g)
    # oracle: exhaustive triangle and triple enumeration
    c_k, c_bar, c_glob = oracles.clustering(g)
    assert oracles.connected_triples(g) == 5
    assert c.triples == 5 and c.triangles == 1
    assert c.coefficient == pytest.approx(3 / 5, abs=1e-15) == pytest.approx(c_glob)
    assert c.by_degree == pytest.approx({2: 1.0, 3: 1 / 3})
    assert 1 not in c.by_degree
    assert c.mean == pytest.approx(c_bar, abs=1e-12)


def test_rich_club_examples():
    assert set(lm.rich_club(complete(4)).values()) == {1.0}
    assert lm.rich_club(path(3))[3] == pytest.approx(2 / 3)
    phi = lm.rich_club(star(5))
    assert phi[2] == 1.0 and phi[3] == pytest.approx(2 / 3)


def test_rich_club_full_density():
    g = random_connected(12, 0.3, 5)
    assert lm.rich_club(g)[g.n] == pytest.approx(2 * g.m / (g.n * (g.n - 1)))


def test_coreness_examples():
    tree = build_graph([(1, 2), (1, 3), (3, 4), (3, 5), (5, 6)])
    c = lm.coreness(tree)
    assert set(c.kappa.values()) == {0} and c.kappa_max == 0
    k5 = lm.coreness(complete(5))
    assert set(k5.kappa.values()) == {3}
    assert lm.coreness(star(5)).kappa[0] == 0


def test_coreness_k5_pendant():
    g = build_graph(list(complete(5).edges()) + [(1, 99)])
    c = lm.coreness(g)
    assert c.kappa[99] == 0
    assert all(c.kappa[v] == 3 for v in range(1, 6))
    assert c.core == frozenset(range(1, 6)) and c.fringe == frozenset({99})
    assert c.min_degree_in_core == 4 and c.max_degree_in_fringe == 1
    assert c.core_ratio == pytest.approx(5 / 6) and c.fringe_ratio == pytest.approx(1 / 6)


def test_coreness_by_degree():
    assert lm.coreness_by_degree(complete(4)) == {3: 2.0}
    tree = path(6)
    assert set(lm.coreness_by_degree(tree).values()) == {0.0}
    assert lm.coreness_by_degree(star(5)) == {1: 0.0, 4: 0.0}


@given(random_graphs)
def test_bounds(g):
    c = lm.clustering(g)
    assert all(0 <= v <= 1 for v in c.by_degree.values())
    assert all(0 <= v <= 1 for v in lm.rich_club(g).values())
    core = lm.coreness(g)
    for v, k in core.kappa.items():
        if g.degree(v) >= 1:
            assert k <= g.degree(v) - 1
    assert core.kappa_min == lm.degree_distribution(g).k_min - 1
