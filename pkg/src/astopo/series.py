"""Tagged data series written as TSV files in the style of a plot-data supplement."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .local_metrics import PowerLawFit

# metric id -> (column names, arity)
COLUMNS = {
    "degree_pdf": ("k", "pdf"),
    "degree_ccdf": ("k", "ccdf"),
    "knn": ("k", "knn_over_n_minus_1"),
    "clustering": ("k", "C"),
    "rich_club": ("rho_over_n", "phi"),
    "coreness": ("k", "kappa"),
    "distance_pdf": ("x", "pdf"),
    "distance_by_degree": ("k", "d"),
    "eccentricity_pdf": ("x", "pdf"),
    "eccentricity_by_degree": ("k", "eccentricity"),
    "betweenness": ("k", "B_over_n_n_minus_1"),
    "edge_betweenness_grid": ("k1", "k2", "log10_B_over_n_n_minus_1"),
    "jdd_ratio": ("k1", "k2", "log10_P_over_P1K"),
    "spectrum": ("rank_over_total", "abs_lambda"),
    "c2k": ("k", "C_2K"),
}


def fmt(x) -> str:
    """Integers verbatim; floats rounded to 9 significant digits."""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return repr(float(f"{float(x):.9g}"))


def parse_value(tok: str):
    try:
        return int(tok)
    except ValueError:
        return float(tok)


@dataclass
class PlotSeries:
    metric: str
    graph: str
    rows: list[tuple]
    fit: PowerLawFit | None = None
    notes: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        arity = len(COLUMNS[self.metric])
        for r in self.rows:
            if len(r) != arity:
                raise ValueError(f"{self.metric} rows need {arity} columns, got {len(r)}")

    @property
    def columns(self) -> tuple[str, ...]:
        return COLUMNS[self.metric]

    def to_tsv(self) -> str:
        head = [f"# graph\t{self.graph}", f"# metric\t{self.metric}"]
        if self.fit is not None:
            head.append(f"# fit\tslope={fmt(self.fit.slope)}\tintercept={fmt(self.fit.intercept)}"
                        f"\tr2={fmt(self.fit.r_squared)}"
                        f"\trange={fmt(self.fit.fit_range[0])}:{fmt(self.fit.fit_range[1])}")
        head += [f"# {k}\t{v}" for k, v in self.notes.items()]
        head.append("# " + "\t".join(self.columns))
        body = ["\t".join(fmt(v) for v in r) for r in self.rows]
        return "\n".join(head + body) + "\n"


def read_series(text: str) -> PlotSeries:
    """Inverse of :meth:`PlotSeries.to_tsv` (fit annotation is not re-parsed)."""
    meta, rows = {}, []
    for line in text.splitlines():
        if line.startswith("#"):
            parts = line[1:].strip().split("\t")
            if len(parts) == 2:
                meta[parts[0]] = parts[1]
        elif line.strip():
            rows.append(tuple(parse_value(t) for t in line.split("\t")))
    return PlotSeries(meta["metric"], meta["graph"], rows)
