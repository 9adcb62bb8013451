# lsl/commands/tunnel.py
import logging
from typing import List, Optional

import click

from lsl.combinatorics import SubsetIndex, all_subsets, parse_subset, weight
from lsl.commands.common import build_config, emit, guarded, out_dir, run_options
from lsl.errors import InputValidationError
from lsl.exports import subset_label, to_csv, write_csv
from lsl.schemas import FramePayload, RunConfig
from lsl.strata import tunnelling_exists, tunnelling_witness

logger = logging.getLogger(__name__)

# exhaustive sweeps beyond this size take minutes per pair
MAX_SWEEP_N = 4
HEADER = ["from", "to", "exists", "found", "weight_from", "weight_to"]


def search(M: SubsetIndex, K: SubsetIndex, config: RunConfig) -> dict:
    witness = tunnelling_witness(
        M, K, config.seed, config.flow_spec(), budget=config.budget, tol=config.tolerances()
    )
    return {
        "from": subset_label(M),
        "to": subset_label(K),
        "exists": tunnelling_exists(M, K),
        "found": witness is not None,
        "weight_from": weight(M),
        "weight_to": weight(K),
        "frame": None if witness is None else FramePayload.from_array(witness).model_dump(),
    }


@click.command("tunnel")
@run_options
@click.option("--from", "source", default=None, help="Backward limit M, e.g. '2' or '1,3'.")
@click.option("--to", "target", default=None, help="Forward limit K.")
@click.option("--budget", type=click.IntRange(min=0), default=None, help="Random restarts.")
@guarded
def tunnel(source: Optional[str], target: Optional[str], **flags):
    """Search for flow lines from Λ_M to Λ_K; all pairs when --from/--to are omitted."""
    config = build_config(**flags)
    n = config.n
    if (source is None) != (target is None):
        raise InputValidationError("give both --from and --to, or neither")
    if source is None:
        if n > MAX_SWEEP_N:
            raise InputValidationError(f"pair sweeps need n <= {MAX_SWEEP_N}, got {n}")
        pairs = [(M, K) for M in all_subsets(n) for K in all_subsets(n)]
    else:
        pairs = [(parse_subset(source, n), parse_subset(target, n))]

    records: List[dict] = [search(M, K, config) for M, K in pairs]
    mismatches = [r for r in records if r["found"] != r["exists"]]
    rows = [[r[h] for h in HEADER] for r in records]
    write_csv(out_dir(config) / "tunnelling.csv", HEADER, rows)

    result = {"n": n, "seed": config.seed, "budget": config.budget, "files": ["tunnelling.csv"]}
    if config.format == "csv":
        result["table"] = to_csv(HEADER, rows)
    else:
        result["pairs"] = records
    if mismatches:
        message = f"{len(mismatches)} pairs where the search disagrees with the cell order"
        logger.warning(message)
        emit(result, message=message, ok=False)
        return 1
    logger.info(f"Tunnel n={n}: {len(records)} pairs consistent with the cell order")
    emit(result)
