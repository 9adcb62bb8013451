# lsl/commands/poset.py
import logging

import click

from lsl.combinatorics import MAX_EXHAUSTIVE_N, all_subsets, partition_of, weight
from lsl.commands.common import build_config, emit, guarded, out_dir, run_options
from lsl.errors import InputValidationError
from lsl.exports import atomic_write_text, hasse_dot, subset_label, to_csv, write_csv
from lsl.poset import MAX_MOBIUS_N, hasse_covers, hasse_graph, mobius_rows

logger = logging.getLogger(__name__)


def weight_rows(n: int):
    rows = []
    for I in sorted(all_subsets(n), key=lambda s: (weight(s), s.members)):
        p = partition_of(I)
        mu = " ".join(str(part) for part in p.mu)
        rows.append((subset_label(I), weight(I), p.m, mu))
    return rows


@click.command("poset")
@run_options
@guarded
def poset(**flags):
    """Hasse diagram, weight table and Möbius function of the cell poset."""
    config = build_config(**flags)
    n = config.n
    if n > MAX_EXHAUSTIVE_N:
        raise InputValidationError(f"poset export needs n <= {MAX_EXHAUSTIVE_N}, got {n}")

    graph = hasse_graph(n)
    dot = hasse_dot(graph)
    weights = weight_rows(n)
    target = out_dir(config)
    atomic_write_text(target / "hasse.dot", dot)
    write_csv(target / "weights.csv", ["subset", "weight", "depth", "partition"], weights)
    files = ["hasse.dot", "weights.csv"]

    if n <= MAX_MOBIUS_N:
        rows = [(subset_label(J), subset_label(K), mu) for J, K, mu in mobius_rows(n)]
        write_csv(target / "mobius.csv", ["lower", "upper", "mu"], rows)
        files.append("mobius.csv")
    else:
        logger.warning(f"Möbius table skipped for n={n} (limit {MAX_MOBIUS_N})")

    covers = hasse_covers(n)
    result = {"n": n, "nodes": graph.number_of_nodes(), "covers": len(covers), "files": files}
    if config.format == "dot":
        result["dot"] = dot
    elif config.format == "csv":
        result["weights"] = to_csv(["subset", "weight", "depth", "partition"], weights)
    else:
        result["edges"] = [[subset_label(K), subset_label(M)] for K, M in covers]
        result["weights"] = {label: w for label, w, _, _ in weights}
    logger.info(f"Poset n={n}: {result['nodes']} nodes, {result['covers']} covers")
    emit(result)
