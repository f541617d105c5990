#!/usr/bin/env python3
"""Write the dual of an unweighted hMetis hypergraph.

Every hyperedge of the input becomes a node of the output and every node of
the input becomes a hyperedge connecting the hyperedges it was a pin of.
Nodes of degree zero would produce empty hyperedges and are dropped.
"""
import argparse


def read_hmetis(path):
    with open(path) as f:
        lines = [l for l in f if not l.startswith("%")]
    header = lines[0].split()
    m, n = int(header[0]), int(header[1])
    if len(header) > 2 and header[2] not in ("0", ""):
        raise SystemExit("only unweighted inputs are supported")
    return n, [[int(x) for x in l.split()] for l in lines[1 : m + 1]]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("input")
    parser.add_argument("output")
    args = parser.parse_args()
    n, edges = read_hmetis(args.input)
    incidence = [[] for _ in range(n)]
    for e, pins in enumerate(edges, start=1):
        for v in pins:
            incidence[v - 1].append(e)
    dual_edges = [d for d in incidence if d]
    with open(args.output, "w") as out:
        out.write(f"{len(dual_edges)} {len(edges)}\n")
        for d in dual_edges:
            out.write(" ".join(map(str, d)) + "\n")


if __name__ == "__main__":
    main()
