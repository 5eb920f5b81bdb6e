#!/usr/bin/env python3
"""Convert public hypergraph citation benchmarks to hyperprop CSV files.

The citation hypergraphs (Cora, CiteSeer, DBLP, PubMed) are distributed
with the HyperGCN code base (https://github.com/malllabiisc/HyperGCN)
as pickles:

    <source>/{coauthorship,cocitation}/<name>/hypergraph.pickle
        dict: hyperedge id -> iterable of member node indices
    <source>/{coauthorship,cocitation}/<name>/labels.pickle
        list: class id per node index

Hyperedge conventions follow the release: co-authorship hyperedges group
the papers sharing an author (cora-ca, dblp), co-citation hyperedges
group the papers cited together (citeseer, cora-cc, pubmed).  Every node
index of the label list enters the node universe, so papers that occur in
no hyperedge are kept as isolated nodes.

Usage:

    python scripts/prepare_citation_datasets.py --source /path/to/data \
        --dataset cora-ca --output data/cora-ca

writes ``incidence.csv`` (nodeId,edgeId) and ``labels.csv``
(nodeId,label) into the output directory, ready for the CLI and for the
dataset-dependent acceptance tests (which look under ``data/<dataset>/``).
"""

import argparse
import csv
import pickle
import sys
from pathlib import Path

DATASETS = {
    "cora-ca": ("coauthorship", "cora"),
    "cora-cc": ("cocitation", "cora"),
    "citeseer": ("cocitation", "citeseer"),
    "dblp": ("coauthorship", "dblp"),
    "pubmed": ("cocitation", "pubmed"),
}


def _load_pickle(path: Path):
    with open(path, "rb") as fh:
        try:
            return pickle.load(fh)
        except UnicodeDecodeError:  # python2-era pickles
            fh.seek(0)
            return pickle.load(fh, encoding="latin1")


def convert(source: Path, dataset: str, output: Path) -> dict:
    """Write incidence.csv and labels.csv; returns summary counts."""
    relation, name = DATASETS[dataset]
    base = Path(source) / relation / name
    hypergraph = _load_pickle(base / "hypergraph.pickle")
    labels = _load_pickle(base / "labels.pickle")

    output = Path(output)
    output.mkdir(parents=True, exist_ok=True)

    n_pairs = 0
    with open(output / "incidence.csv", "w", encoding="utf-8",
              newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["nodeId", "edgeId"])
        for edge_id, members in hypergraph.items():
            for node in members:
                writer.writerow([int(node), edge_id])
                n_pairs += 1

    with open(output / "labels.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["nodeId", "label"])
        for node, label in enumerate(labels):
            writer.writerow([node, int(label)])

    return {"dataset": dataset, "nodes": len(labels),
            "hyperedges": len(hypergraph), "incidence_rows": n_pairs}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--source", required=True,
                        help="root of the published data directory")
    parser.add_argument("--dataset", required=True, choices=sorted(DATASETS))
    parser.add_argument("--output", required=True)
    args = parser.parse_args(argv)
    try:
        summary = convert(Path(args.source), args.dataset, Path(args.output))
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(", ".join(f"{k}={v}" for k, v in summary.items()))
    return 0


if __name__ == "__main__":
    sys.exit(main())
