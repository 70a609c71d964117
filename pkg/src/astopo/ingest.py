"""Readers for AS adjacency edge lists and RPSL (WHOIS) dumps, plus overlap stats."""
from __future__ import annotations

import io
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from .graph import MAX_ASN, TopologyGraph, build_graph

AMBIGUOUS_MARKERS = "{},_"
_ASN_RE = re.compile(r"^(?:AS)?(\d+)$", re.IGNORECASE)


@dataclass(frozen=True)
class FilterPolicy:
    drop_private: bool = True
    private_range: tuple[int, int] = (64512, 65535)
    drop_ambiguous_tokens: bool = True
    drop_indirect: bool = True
    direct_tokens: tuple[str, ...] = ("d", "direct")
    ambiguous_markers: str = AMBIGUOUS_MARKERS

    def __post_init__(self):
        lo, hi = self.private_range
        if not 0 <= lo <= hi <= MAX_ASN:
            raise ValueError(f"bad private range {lo}:{hi}")

    def is_private(self, asn: int) -> bool:
        lo, hi = self.private_range
        return lo <= asn <= hi


@dataclass
class ParseResult:
    graph: TopologyGraph
    rejections: Counter = field(default_factory=Counter)
    rejected_lines: list[tuple[int, str]] = field(default_factory=list)

    def rejection_tsv(self) -> str:
        return "".join(f"{reason}\t{count}\n" for reason, count in sorted(self.rejections.items()))


def _lines(source) -> Iterator[str]:
    if isinstance(source, bytes):
        source = source.decode("utf-8", errors="replace")
    if isinstance(source, str):
        source = io.StringIO(source)
    for line in source:
        if isinstance(line, bytes):
            line = line.decode("utf-8", errors="replace")
        yield line.rstrip("\r\n")


def parse_asn(token: str) -> int | None:
    mo = _ASN_RE.match(token)
    if mo is None:
        return None
    asn = int(mo.group(1))
    return asn if asn <= MAX_ASN else None


def parse_edge_list(source, policy: FilterPolicy = FilterPolicy()) -> ParseResult:
    """Parse a 2- or 3-column whitespace-separated AS adjacency list.

    Bad lines are counted (with line numbers) and skipped. A line with only two
    columns carries no link-type marker and is treated as direct.
    """
    edges = []
    rej: Counter = Counter()
    bad: list[tuple[int, str]] = []

    def reject(lineno, reason):
        rej[reason] += 1
        bad.append((lineno, reason))

    for lineno, raw in enumerate(_lines(source), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) not in (2, 3):
            reject(lineno, "malformed")
            continue
        ends = toks[:2]
        if policy.drop_ambiguous_tokens and any(
                ch in t for t in ends for ch in policy.ambiguous_markers):
            reject(lineno, "ambiguous")
            continue
        u, v = parse_asn(ends[0]), parse_asn(ends[1])
        if u is None or v is None:
            reject(lineno, "malformed")
            continue
        if policy.drop_indirect and len(toks) == 3 and toks[2].lower() not in policy.direct_tokens:
            reject(lineno, "indirect")
            continue
        if policy.drop_private and (policy.is_private(u) or policy.is_private(v)):
            reject(lineno, "private")
            continue
        edges.append((u, v))
    g = build_graph(edges)
    if g.dropped.self_loops:
        rej["self_loop"] += g.dropped.self_loops
    if g.dropped.duplicates:
        rej["duplicate"] += g.dropped.duplicates
    return ParseResult(g, rej, bad)


# RPSL ----------------------------------------------------------------------

@dataclass(frozen=True)
class RpslRecord:
    kind: str  # aut-num | import | export | other
    owner_asn: int | None
    peer_asn: int | None = None


_PEER_RE = {
    "import": re.compile(r"\bfrom\s+(\S+)", re.IGNORECASE),
    "export": re.compile(r"\bto\s+(\S+)", re.IGNORECASE),
}


def _rpsl_objects(source) -> Iterator[list[tuple[str, str]]]:
    """Yield objects as lists of (key, value); continuation lines are folded in."""
    obj: list[list[str]] = []
    for line in _lines(source):
        if not line.strip():
            if obj:
                yield [(k, v) for k, v in obj]
                obj = []
            continue
        if line[0] in "%#":
            continue
        if line[0] in " \t+":
            if obj:
                obj[-1][1] += " " + line.lstrip(" \t+").strip()
            else:
                obj.append(["", line.strip()])  # orphan continuation
            continue
        key, sep, value = line.partition(":")
        if not sep:
            obj.append(["", line.strip()])
            continue
        obj.append([key.strip().lower(), value.strip()])
    if obj:
        yield [(k, v) for k, v in obj]


def iter_rpsl_records(source, counts: Counter | None = None) -> Iterator[RpslRecord]:
    """Extract aut-num/import/export records from an RPSL dump."""
    counts = counts if counts is not None else Counter()
    for obj in _rpsl_objects(source):
        owner = None
        if obj[0][0] == "aut-num":
            owner = parse_asn(obj[0][1].split()[0]) if obj[0][1] else None
            if owner is None:
                counts["bad_aut_num"] += 1
                continue
            yield RpslRecord("aut-num", owner)
        for key, value in obj[1:] if owner is not None else obj:
            if key in _PEER_RE:
                if owner is None:
                    counts["orphan"] += 1
                    continue
                mo = _PEER_RE[key].search(value)
                peer = parse_asn(mo.group(1)) if mo else None
                if peer is None:
                    counts["bad_peer_token"] += 1
                    continue
                yield RpslRecord(key, owner, peer)
            elif key == "":
                counts["orphan"] += 1


def parse_whois_rpsl(source, policy: FilterPolicy = FilterPolicy()) -> ParseResult:
    """Build the WHOIS graph: edges owner-peer with both ends owning an aut-num object."""
    counts: Counter = Counter()
    records = list(iter_rpsl_records(source, counts))
    registered = {r.owner_asn for r in records if r.kind == "aut-num"}
    edges = []
    for r in records:
        if r.kind == "aut-num":
            continue
        if r.peer_asn not in registered:
            counts["external_peer"] += 1
            continue
        if policy.drop_private and (policy.is_private(r.owner_asn) or policy.is_private(r.peer_asn)):
            counts["private"] += 1
            continue
        edges.append((r.owner_asn, r.peer_asn))
    g = build_graph(edges)
    if g.dropped.self_loops:
        counts["self_loop"] += g.dropped.self_loops
    if g.dropped.duplicates:
        counts["duplicate"] += g.dropped.duplicates
    return ParseResult(g, counts)


def merge_graphs(graphs: Iterable[TopologyGraph]) -> TopologyGraph:
    """Union of node sets and edge sets."""
    edges: list[tuple[int, int]] = []
    nodes: list[int] = []
    for g in graphs:
        edges.extend(g.edges())
        nodes.extend(g.nodes)
    return build_graph(edges, nodes)


@dataclass(frozen=True)
class OverlapStats:
    nodes_both: int
    nodes_only_a: int
    nodes_only_b: int
    edges_both: int
    edges_only_a: int
    edges_only_b: int
    avg_degree_only_a_in_a: float

    def rows(self) -> list[tuple[str, float]]:
        return [
            ("nodes_both", self.nodes_both),
            ("nodes_only_a", self.nodes_only_a),
            ("nodes_only_b", self.nodes_only_b),
            ("edges_both", self.edges_both),
            ("edges_only_a", self.edges_only_a),
            ("edges_only_b", self.edges_only_b),
            ("avg_degree_only_a_in_a", self.avg_degree_only_a_in_a),
        ]


def overlap_stats(a: TopologyGraph, b: TopologyGraph) -> OverlapStats:
    va, vb = set(a.nodes), set(b.nodes)
    ea, eb = a.edge_set(), b.edge_set()
    only_a = va - vb
    avg = float(np.mean([a.degree(v) for v in only_a])) if only_a else 0.0
    return OverlapStats(
        nodes_both=len(va & vb), nodes_only_a=len(only_a), nodes_only_b=len(vb - va),
        edges_both=len(ea & eb), edges_only_a=len(ea - eb), edges_only_b=len(eb - ea),
        avg_degree_only_a_in_a=avg,
    )
