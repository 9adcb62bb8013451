# lsl/commands/ring.py
import logging
from typing import Dict

import click

from lsl.combinatorics import SubsetIndex
from lsl.commands.common import ConsistencyError, build_config, emit, guarded, out_dir, run_options
from lsl.exports import subset_label, to_csv, write_csv, write_json
from lsl.morse import critical_points_by_index
from lsl.ring import (
    MAX_TABLE_N,
    ExteriorClass,
    basis_class,
    basis_of_degree,
    betti_ranks,
    cup_all,
    is_signed_permutation,
    pairing_matrix,
    poincare_coefficients,
    product_table,
)
from lsl.schemas import ClassPayload

logger = logging.getLogger(__name__)

PRODUCT_HEADER = ["left", "right", "sign", "product"]


def generator_classes(n: int) -> Dict[str, ExteriorClass]:
    """The degree 2i - 1 generators alpha_i and their product, the top class."""
    generators = [basis_class(SubsetIndex.of(n, [i])) for i in range(1, n + 1)]
    named = {f"alpha_{i}": x for i, x in enumerate(generators, start=1)}
    named["top"] = cup_all(generators)
    return named


@click.command("ring")
@run_options
@guarded
def ring(**flags):
    """Betti ranks, complementary-degree pairings and basis products of H*(U(n))."""
    config = build_config(**flags)
    n = config.n
    ranks = betti_ranks(n)
    if ranks != poincare_coefficients(n) or ranks != critical_points_by_index(n):
        raise ConsistencyError(f"rank counts disagree for n={n}")

    pairings = {}
    for k, rank in enumerate(ranks):
        if not rank or k > n * n - k:
            continue
        M = pairing_matrix(n, k)
        if not is_signed_permutation(M):
            raise ConsistencyError(f"pairing in degrees {k}, {n * n - k} is not unimodular")
        pairings[str(k)] = {
            "rows": [subset_label(I) for I in basis_of_degree(n, k)],
            "cols": [subset_label(J) for J in basis_of_degree(n, n * n - k)],
            "matrix": M.tolist(),
        }

    named = generator_classes(n)
    if named["top"] != basis_class(SubsetIndex.full(n)):
        raise ConsistencyError(f"product of the generators is {named['top']}")
    classes = [
        {"name": name, "degree": x.degree, "class": ClassPayload.from_class(x).model_dump()}
        for name, x in named.items()
    ]

    target = out_dir(config)
    write_csv(target / "betti.csv", ["degree", "rank"], enumerate(ranks))
    write_json(target / "pairings.json", pairings)
    write_json(target / "classes.json", classes)
    files = ["betti.csv", "pairings.json", "classes.json"]

    products = []
    if n <= MAX_TABLE_N:
        products = [
            (subset_label(I), subset_label(J), sign, "" if K is None else subset_label(K))
            for I, J, sign, K in product_table(n)
        ]
        write_csv(target / "products.csv", PRODUCT_HEADER, products)
        files.append("products.csv")

    result = {"n": n, "betti": ranks, "total_rank": sum(ranks), "files": files}
    if config.format == "csv":
        result["products"] = to_csv(PRODUCT_HEADER, products)
    else:
        result["pairings"] = pairings
    logger.info(f"Ring n={n}: total rank {sum(ranks)}")
    emit(result)
