import math

import pytest

from astopo import global_metrics as gm
from astopo import local_metrics as lm
from astopo.graph import build_graph, format_edge_list, parse_canonical
from astopo.report import (
    ROWS,
    SummaryOptions,
    compare,
    emit_plots,
    plot_series,
    read_summary_tsv,
    summary,
)
from astopo.series import COLUMNS, PlotSeries, fmt, read_series
from graphs import complete, random_connected, star


def test_summary_k4():
    s = summary(complete(4))
    assert (s.n, s.m, s.k_bar, s.c, s.radius, s.diameter, s.kappa_max) == (4, 6, 3.0, 1.0, 1, 1, 2)
    assert [s.lambda1, s.lambda2, s.lambda3] == pytest.approx([3, -1, -1])
    assert s.r is None and "r" in s.absent


def test_summary_star():
    s = summary(star(5))
    assert s.r == pytest.approx(-1.0)
    assert (s.c, s.kappa_max) == (0.0, 0)
    assert [s.lambda1, s.lambda2, s.lambda3] == pytest.approx([2, -2, 0], abs=1e-9)


def test_summary_fields_match_modules():
    g = random_connected(60, 0.08, 4)
    s = summary(g)
    assert s.r == lm.assortativity(g)
    cl = lm.clustering(g)
    assert (s.c_bar, s.c) == (cl.mean, cl.coefficient)
    d = gm.distance_stats(g)
    assert (s.d_bar, s.sigma_d) == (d.d_bar, d.sigma)
    b = gm.betweenness(g)
    assert s.b_node_bar == b.mean_node and s.b_edge_bar == b.mean_edge
    core = lm.coreness(g)
    assert s.kappa_max == core.kappa_max and s.kappa_bar == core.mean
    for key, _ in ROWS:
        assert (getattr(s, key) is None) == (key in s.absent), key


def test_absent_fit_policy():
    g = random_connected(60, 0.08, 4)
    strict = summary(g, SummaryOptions(r2_threshold=1.01))
    assert strict.gamma is None and "gamma" in strict.absent
    assert strict.k_max_pl is None
    lax = summary(g, SummaryOptions(r2_threshold=0.0))
    assert lax.gamma == pytest.approx(-lax.fits["gamma"].slope)


def test_summary_tsv_rows():
    s = summary(complete(4))
    rows = read_summary_tsv(s.to_tsv())
    assert list(rows) == [name for _, name in ROWS]
    assert rows["Number of nodes (n)"] == "4"
    assert rows["Assortative coefficient (r)"] == "-"


def test_summary_round_trip_through_file():
    g = random_connected(40, 0.1, 8)
    assert summary(parse_canonical(format_edge_list(g))).to_tsv() == summary(g).to_tsv()


def test_compare_example():
    a = build_graph([(1, 2), (2, 3)])
    b = build_graph([(2, 3), (3, 4)])
    rep = compare(a, b, ("A", "B"))
    assert rep.overlap.nodes_both == 2
    assert rep.only_a_degree_counts == {1: 1}
    assert rep.only_a_mean_degree == 1.0


def test_compare_identical_induced():
    g = random_connected(30, 0.15, 2)
    rep = compare(g, g, induced=True)
    assert rep.overlap.nodes_only_a == rep.overlap.edges_only_b == 0
    base = summary(g).to_tsv()
    assert rep.induced[0].to_tsv() == base == rep.induced[1].to_tsv()


def test_emit_plots_k4(tmp_path):
    paths = emit_plots(complete(4), tmp_path, "k4")
    names = {p.name for p in paths}
    assert "k4.degree_pdf.tsv" in names and "k4.betweenness.tsv" in names
    assert "3\t1.0" in (tmp_path / "k4.degree_pdf.tsv").read_text().splitlines()
    b = read_series((tmp_path / "k4.betweenness.tsv").read_text())
    assert b.rows == [(3, 0.0)]


def test_emit_plots_deterministic(tmp_path):
    g = random_connected(50, 0.1, 1)
    first = {p.name: p.read_bytes() for p in emit_plots(g, tmp_path / "a", "g")}
    second = {p.name: p.read_bytes() for p in emit_plots(g, tmp_path / "b", "g")}
    assert first == second
    assert len(first) == 14


def test_series_round_trip():
    g = random_connected(50, 0.1, 1)
    for ps in plot_series(g, "g"):
        back = read_series(ps.to_tsv())
        assert back.metric == ps.metric and len(back.rows) == len(ps.rows)
        for r0, r1 in zip(ps.rows, back.rows):
            assert len(r1) == len(COLUMNS[ps.metric])
            for x, y in zip(r0, r1):
                assert y == pytest.approx(x, rel=5e-9, abs=1e-300)


def test_fmt_precision():
    assert fmt(1 / 3) == "0.333333333"
    assert fmt(1.0) == "1.0"
    assert fmt(3) == "3"
    assert float(fmt(math.pi)) == pytest.approx(math.pi, rel=5e-9)


def test_series_arity_enforced():
    with pytest.raises(ValueError):
        PlotSeries("jdd_ratio", "g", [(1, 2)])
