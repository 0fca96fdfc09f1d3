#!/usr/bin/env python3
"""Classify every small tree and cycle and tabulate the verdicts.

Enumerates all nonisomorphic trees up to --max-tree-vertices (via
networkx) and all cycles C_3 .. C_{--max-cycle}, runs the dg/not-dg
classifier on each, and prints one row per graph plus a summary.  Every
certificate is re-verified with the independent recomputation pass before
it is counted.

Usage:
    python3 scripts/classify_small_graphs.py
    python3 scripts/classify_small_graphs.py --max-tree-vertices 8 --json out.json
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

import networkx as nx

from dgres import cycle_graph
from dgres.classify import classify, verify_certificate
from dgres.combin import Graph


@dataclass
class SurveyConfig:
    max_tree_vertices: int = 7
    max_cycle: int = 8
    json_path: str | None = None
    reverify: bool = True


@dataclass
class Row:
    name: str
    family: str
    vertices: int
    diameter: int
    verdict: str
    evidence: str
    betti: list[int] | None
    seconds: float
    reverified: bool | None


@dataclass
class Survey:
    config: SurveyConfig
    rows: list[Row] = field(default_factory=list)

    def add(self, name: str, graph: Graph) -> None:
        start = time.monotonic()
        cert = classify(graph)
        elapsed = time.monotonic() - start
        reverified = None
        if self.config.reverify:
            reverified = verify_certificate(cert.to_json())["ok"]
        self.rows.append(
            Row(
                name=name,
                family=cert.family,
                vertices=len(graph.vertices),
                diameter=cert.diameter,
                verdict=cert.verdict,
                evidence=cert.evidence["kind"],
                betti=cert.betti,
                seconds=round(elapsed, 3),
                reverified=reverified,
            )
        )


def nx_tree_to_graph(T) -> Graph:
    verts = tuple(f"v{i}" for i in sorted(T.nodes()))
    edges = tuple((f"v{a}", f"v{b}") for a, b in T.edges())
    return Graph.build(verts, edges)


def run(config: SurveyConfig) -> Survey:
    survey = Survey(config)
    for n in range(2, config.max_tree_vertices + 1):
        for k, T in enumerate(nx.nonisomorphic_trees(n)):
            survey.add(f"tree{n}.{k}", nx_tree_to_graph(T))
    for n in range(3, config.max_cycle + 1):
        survey.add(f"C{n}", cycle_graph(n))
    return survey


def print_table(survey: Survey) -> None:
    header = f"{'graph':<10} {'family':<6} {'|V|':>3} {'diam':>4} {'verdict':<7} {'evidence':<24} {'betti':<20} {'s':>6}"
    print(header)
    print("-" * len(header))
    for r in survey.rows:
        betti = ",".join(map(str, r.betti)) if r.betti else "-"
        flag = "" if r.reverified in (True, None) else "  REVERIFY-FAILED"
        print(
            f"{r.name:<10} {r.family:<6} {r.vertices:>3} {r.diameter:>4} "
            f"{r.verdict:<7} {r.evidence:<24} {betti:<20} {r.seconds:>6.2f}{flag}"
        )
    summary: dict[str, int] = {}
    for r in survey.rows:
        key = f"{r.family}/{r.verdict}/{r.evidence}"
        summary[key] = summary.get(key, 0) + 1
    print()
    print("summary:")
    for key in sorted(summary):
        print(f"  {key}: {summary[key]}")
    if survey.config.reverify:
        bad = [r.name for r in survey.rows if r.reverified is False]
        print(f"  certificates re-verified: {len(survey.rows) - len(bad)}/{len(survey.rows)}")
        if bad:
            print(f"  FAILED: {bad}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-tree-vertices", type=int, default=7)
    parser.add_argument("--max-cycle", type=int, default=8)
    parser.add_argument("--json", dest="json_path", help="also write rows as JSON")
    parser.add_argument(
        "--no-reverify",
        action="store_true",
        help="skip the certificate recomputation pass",
    )
    args = parser.parse_args(argv)
    config = SurveyConfig(
        max_tree_vertices=args.max_tree_vertices,
        max_cycle=args.max_cycle,
        json_path=args.json_path,
        reverify=not args.no_reverify,
    )
    survey = run(config)
    print_table(survey)
    if config.json_path:
        with open(config.json_path, "w", encoding="utf-8") as fh:
            json.dump([r.__dict__ for r in survey.rows], fh, indent=2, sort_keys=True)
            fh.write("\n")
    ok = all(r.reverified in (True, None) for r in survey.rows)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
