"""Summary table assembly, graph comparison and plot-data emission."""
from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field, fields
from pathlib import Path


from . import global_metrics as gm
from . import local_metrics as lm
from .dk import uncorrelated_jdd
from .graph import TopologyGraph, induced_subgraph
from .ingest import OverlapStats, overlap_stats
from .series import PlotSeries

log = logging.getLogger(__name__)

# metric -> default inclusive x range for power-law fits (None = full support)
DEFAULT_FIT_RANGES: dict[str, tuple[float, float] | None] = {
    "degree": None,
    "knn": None,
    "clustering": None,
    "rich_club": (0.1, 1.0),
    "coreness": (1, 100),
    "distance": None,
    "betweenness": None,
}


@dataclass
class SummaryOptions:
    fit_ranges: dict = field(default_factory=lambda: dict(DEFAULT_FIT_RANGES))
    r2_threshold: float = 0.8
    dense_threshold: int = gm.DENSE_THRESHOLD


# (field, summary row name)
ROWS = [
    ("n", "Number of nodes (n)"),
    ("m", "Number of edges (m)"),
    ("k_bar", "Avg node degree (k_bar)"),
    ("k_max", "Max node degree (k_max)"),
    ("k_max_pl", "Power-law max degree (k_max^PL)"),
    ("gamma", "Exponent of P(k) (-gamma)"),
    ("knn_bar_norm", "Avg neighbor degree (k_nn_bar/(n-1))"),
    ("gamma_nn", "Exponent of k_nn(k) (-gamma_nn)"),
    ("r", "Assortative coefficient (r)"),
    ("c_bar", "Mean clustering (C_bar)"),
    ("c", "Clustering coefficient (C)"),
    ("gamma_c", "Exponent of C(k) (-gamma_C)"),
    ("gamma_rc", "Exponent of phi(rho/n) (-gamma_rc)"),
    ("kappa_bar", "Avg node coreness (kappa_bar)"),
    ("kappa_max", "Max node coreness (kappa_max)"),
    ("core_ratio", "Core size ratio (n_core/n)"),
    ("k_core_min", "Min degree in core (k_core^min)"),
    ("fringe_ratio", "Fringe size ratio (n_fringe/n)"),
    ("k_fringe_max", "Max degree in fringe (k_fringe^max)"),
    ("gamma_kappa", "Exponent of kappa(k) (gamma_kappa)"),
    ("d_bar", "Avg distance (d_bar)"),
    ("sigma_d", "Std deviation of distance (sigma)"),
    ("gamma_d", "Exponent of d(k) (-gamma_d)"),
    ("radius", "Graph radius (R, eps_min)"),
    ("ecc_bar", "Avg eccentricity (eps_bar)"),
    ("diameter", "Graph diameter (D, eps_max)"),
    ("center_ratio", "Center size ratio (n_R/n)"),
    ("k_center_min", "Min degree in center (k_R^min)"),
    ("periphery_ratio", "Periphery size ratio (n_D/n)"),
    ("k_periphery_max", "Max degree in periphery (k_D^max)"),
    ("b_node_bar", "Avg node betweenness (B_node_bar/(n(n-1)))"),
    ("gamma_b", "Exponent of B(k) (gamma_B)"),
    ("b_edge_bar", "Avg edge betweeness (B_edge_bar/(n(n-1)))"),
    ("lambda1", "Largest eigenvalue"),
    ("lambda2", "Second largest eigenvalue"),
    ("lambda3", "Third largest eigenvalue"),
]
ROW_NAMES = dict(ROWS)


@dataclass
class SummaryStatistics:
    n: int | None = None
    m: int | None = None
    k_bar: float | None = None
    k_max: int | None = None
    k_max_pl: float | None = None
    gamma: float | None = None
    knn_bar_norm: float | None = None
    gamma_nn: float | None = None
    r: float | None = None
    c_bar: float | None = None
    c: float | None = None
    gamma_c: float | None = None
    gamma_rc: float | None = None
    kappa_bar: float | None = None
    kappa_max: int | None = None
    core_ratio: float | None = None
    k_core_min: int | None = None
    fringe_ratio: float | None = None
    k_fringe_max: int | None = None
    gamma_kappa: float | None = None
    d_bar: float | None = None
    sigma_d: float | None = None
    gamma_d: float | None = None
    radius: int | None = None
    ecc_bar: float | None = None
    diameter: int | None = None
    center_ratio: float | None = None
    k_center_min: int | None = None
    periphery_ratio: float | None = None
    k_periphery_max: int | None = None
    b_node_bar: float | None = None
    gamma_b: float | None = None
    b_edge_bar: float | None = None
    lambda1: float | None = None
    lambda2: float | None = None
    lambda3: float | None = None
    absent: dict[str, str] = field(default_factory=dict)
    fits: dict[str, lm.PowerLawFit] = field(default_factory=dict)

    def values(self) -> dict[str, object]:
        return {f.name: getattr(self, f.name) for f in fields(self) if f.name not in ("absent", "fits")}

    def to_tsv(self) -> str:
        from .series import fmt

        lines = []
        for key, name in ROWS:
            v = getattr(self, key)
            lines.append(f"{name}\t{'-' if v is None else fmt(v)}")
        return "\n".join(lines) + "\n"


def _fit(s: SummaryStatistics, key: str, metric: str, series, sign: int, opts: SummaryOptions):
    try:
        fit = lm.fit_power_law(series, opts.fit_ranges.get(metric))
    except ValueError as exc:
        s.absent[key] = f"fit failed: {exc}"
        return None
    s.fits[key] = fit
    if fit.r_squared < opts.r2_threshold:
        s.absent[key] = f"r^2={fit.r_squared:.3f} below {opts.r2_threshold}"
        return None
    return sign * fit.slope


def summary(g: TopologyGraph, options: SummaryOptions | None = None) -> SummaryStatistics:
    """Every summary row for one graph. Undefined rows are None with a reason in ``absent``."""
    opts = options or SummaryOptions()
    s = SummaryStatistics()
    s.n, s.m, s.k_bar = lm.basic_stats(g)

    dist = lm.degree_distribution(g)
    s.k_max = dist.k_max
    s.gamma = _fit(s, "gamma", "degree", {k: p for k, p in dist.pdf.items() if k > 0}, -1, opts)
    if s.gamma is not None and s.gamma > 1:
        s.k_max_pl = lm.power_law_max_degree(g.n, s.gamma)
    else:
        s.absent["k_max_pl"] = "no power-law exponent > 1"

    if g.m == 0:
        for key, _ in ROWS[6:]:
            s.absent.setdefault(key, "graph has no edges")
        return s

    s.knn_bar_norm = lm.mean_neighbor_degree(g) / (g.n - 1)
    s.gamma_nn = _fit(s, "gamma_nn", "knn", lm.avg_neighbor_degree(g), -1, opts)
    try:
        s.r = lm.assortativity(g)
    except lm.UndefinedMetric as exc:
        s.absent["r"] = str(exc)

    cl = lm.clustering(g)
    s.c_bar, s.c = cl.mean, cl.coefficient
    s.gamma_c = _fit(s, "gamma_c", "clustering", cl.by_degree, -1, opts)
    if g.n >= 2:
        s.gamma_rc = _fit(s, "gamma_rc", "rich_club", lm.rich_club_series(g), -1, opts)

    core = lm.coreness(g)
    s.kappa_bar, s.kappa_max = core.mean, core.kappa_max
    s.core_ratio, s.k_core_min = core.core_ratio, core.min_degree_in_core
    s.fringe_ratio, s.k_fringe_max = core.fringe_ratio, core.max_degree_in_fringe
    s.gamma_kappa = _fit(s, "gamma_kappa", "coreness", lm.coreness_by_degree(g, core), 1, opts)

    dstats, ecc = gm.path_stats(g)
    s.d_bar, s.sigma_d = dstats.d_bar, dstats.sigma
    s.gamma_d = _fit(s, "gamma_d", "distance", dstats.d_of_k, -1, opts)
    s.radius, s.ecc_bar, s.diameter = ecc.radius, ecc.mean, ecc.diameter
    s.center_ratio, s.k_center_min = ecc.center_ratio, ecc.min_degree_in_center
    s.periphery_ratio, s.k_periphery_max = ecc.periphery_ratio, ecc.max_degree_in_periphery

    bw = gm.betweenness(g)
    s.b_node_bar, s.b_edge_bar = bw.mean_node, bw.mean_edge
    b_k, _ = gm.betweenness_by_degree(bw, g)
    s.gamma_b = _fit(s, "gamma_b", "betweenness", b_k, 1, opts)

    spec = gm.spectrum(g, top_k=3, dense_threshold=opts.dense_threshold)
    for key, val in zip(("lambda1", "lambda2", "lambda3"), spec.eigenvalues):
        setattr(s, key, val)
    for key in ("lambda1", "lambda2", "lambda3"):
        if getattr(s, key) is None:
            s.absent[key] = "fewer eigenvalues than rows"
    return s


def read_summary_tsv(text: str) -> dict[str, str]:
    out = {}
    for line in text.splitlines():
        name, _, value = line.partition("\t")
        out[name] = value
    return out


@dataclass
class CompareReport:
    labels: tuple[str, str]
    overlap: OverlapStats
    only_a_degree_counts: dict[int, int]
    only_a_mean_degree: float
    induced: tuple[SummaryStatistics, SummaryStatistics] | None = None

    def to_tsv(self) -> str:
        a, b = self.labels
        lines = [f"# compare\t{a}\t{b}"]
        lines += [f"{k}\t{v}" for k, v in self.overlap.rows()]
        lines.append(f"# degree distribution of {a}-only nodes within {a}")
        lines += [f"only_a_degree\t{k}\t{c}" for k, c in sorted(self.only_a_degree_counts.items())]
        return "\n".join(lines) + "\n"


def compare(a: TopologyGraph, b: TopologyGraph, labels=("A", "B"), induced: bool = False,
            options: SummaryOptions | None = None) -> CompareReport:
    ov = overlap_stats(a, b)
    vb = set(b.nodes)
    only = [v for v in a.nodes if v not in vb]
    counts: dict[int, int] = defaultdict(int)
    for v in only:
        counts[a.degree(v)] += 1
    rep = CompareReport(tuple(labels), ov, dict(sorted(counts.items())), ov.avg_degree_only_a_in_a)
    if induced:
        common = set(a.nodes) & vb
        rep.induced = (summary(induced_subgraph(a, common), options),
                       summary(induced_subgraph(b, common), options))
    return rep


def _log_binned_ratio(g: TopologyGraph, per_decade: int = 10) -> list[tuple[int, int, float]]:
    jdm = lm.joint_degree_distribution(g)
    p1k = uncorrelated_jdd(g)
    obs: dict = defaultdict(float)
    ref: dict = defaultdict(float)
    for (k1, k2), p in jdm.ordered_items():
        obs[(gm.log_bin(k1, per_decade), gm.log_bin(k2, per_decade))] += p
    for (k1, k2), q in p1k.items():
        ref[(gm.log_bin(k1, per_decade), gm.log_bin(k2, per_decade))] += q
    return [(a, b, math.log10(obs[(a, b)] / ref[(a, b)])) for a, b in sorted(obs) if ref[(a, b)] > 0]


def plot_series(g: TopologyGraph, label: str, options: SummaryOptions | None = None,
                spectrum_top: int = 100) -> list[PlotSeries]:
    """All plot-data series for one graph, in fixed order."""
    opts = options or SummaryOptions()
    out: list[PlotSeries] = []

    def fit_or_none(series, metric):
        try:
            return lm.fit_power_law(series, opts.fit_ranges.get(metric))
        except ValueError:
            return None

    dist = lm.degree_distribution(g)
    pdf = {k: p for k, p in dist.pdf.items()}
    out.append(PlotSeries("degree_pdf", label, list(pdf.items()),
                          fit_or_none({k: p for k, p in pdf.items() if k > 0}, "degree")))
    out.append(PlotSeries("degree_ccdf", label, list(dist.ccdf.items())))
    knn = lm.normalized_avg_neighbor_degree(g)
    out.append(PlotSeries("knn", label, list(knn.items()), fit_or_none(knn, "knn")))
    cl = lm.clustering(g)
    out.append(PlotSeries("clustering", label, list(cl.by_degree.items()),
                          fit_or_none(cl.by_degree, "clustering")))
    rc = lm.rich_club_series(g)
    out.append(PlotSeries("rich_club", label, list(rc.items()), fit_or_none(rc, "rich_club")))
    kk = lm.coreness_by_degree(g)
    out.append(PlotSeries("coreness", label, list(kk.items()), fit_or_none(kk, "coreness")))
    dstats, ecc = gm.path_stats(g)
    cov = {"coverage": repr(dstats.coverage)}
    out.append(PlotSeries("distance_pdf", label, list(dstats.pdf.items()), notes=cov))
    out.append(PlotSeries("distance_by_degree", label, list(dstats.d_of_k.items()),
                          fit_or_none(dstats.d_of_k, "distance"), notes=cov))
    out.append(PlotSeries("eccentricity_pdf", label, list(ecc.pdf.items()), notes=cov))
    out.append(PlotSeries("eccentricity_by_degree", label, list(ecc.ecc_of_k.items()), notes=cov))
    bw = gm.betweenness(g)
    b_k, grid = gm.betweenness_by_degree(bw, g)
    out.append(PlotSeries("betweenness", label, list(b_k.items()),
                          fit_or_none(b_k, "betweenness"), notes=cov))
    out.append(PlotSeries("edge_betweenness_grid", label,
                          [(a, b, math.log10(v)) for (a, b), v in grid.items() if v > 0], notes=cov))
    out.append(PlotSeries("jdd_ratio", label, _log_binned_ratio(g)))
    n_lcc = round(g.n * dstats.coverage)
    top = None if n_lcc <= opts.dense_threshold else min(spectrum_top, n_lcc - 2)
    spec = gm.spectrum(g, top_k=top, dense_threshold=opts.dense_threshold)
    total = len(spec.eigenvalues) if spec.method == "dense" else n_lcc
    out.append(PlotSeries("spectrum", label,
                          [((i + 1) / total, abs(v)) for i, v in enumerate(spec.eigenvalues)],
                          notes={"method": spec.method}))
    return out


def emit_plots(g: TopologyGraph, out_dir, label: str = "graph",
               options: SummaryOptions | None = None) -> list[Path]:
    """Write ``<label>.<metric>.tsv`` for every plot series."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for ps in plot_series(g, label, options):
        p = out_dir / f"{label}.{ps.metric}.tsv"
        try:
            p.write_text(ps.to_tsv(), encoding="utf-8")
        except OSError as exc:
            log.error("could not write %s: %s", p, exc)
            continue
        paths.append(p)
    return paths
