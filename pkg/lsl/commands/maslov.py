# lsl/commands/maslov.py
import json
import logging
from typing import Optional

import click
import numpy as np

from lsl.commands.common import ConsistencyError, build_config, emit, guarded, out_dir, run_options
from lsl.errors import InputValidationError
from lsl.exports import write_json
from lsl.schemas import loop_from_payload
from lsl.spectral_flow import crossings_through, det_winding, diagonal_loop, maslov_index

logger = logging.getLogger(__name__)


def parse_windings(text: str):
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise InputValidationError(f"invalid winding vector {text!r}: {e}")


@click.command("maslov")
@run_options
@click.option("--windings", default=None, help="Diagonal loop windings w_j, e.g. '1,0'.")
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--open", "open_loop", is_flag=True, help="The input path is not closed.")
@click.option("--rho", type=float, default=0.0, help="Reference point e^{i rho} on the circle.")
@click.option("--samples", "loop_samples", type=click.IntRange(min=2), default=257)
@guarded
def maslov(
    windings: Optional[str],
    input_path: Optional[str],
    open_loop: bool,
    rho: float,
    loop_samples: int,
    **flags,
):
    """Signed eigenvalue crossings of a unitary loop against its determinant winding."""
    config = build_config(**flags)
    if (windings is None) == (input_path is None):
        raise InputValidationError("give exactly one of --windings and --input")
    if windings is not None:
        loop = diagonal_loop(parse_windings(windings), samples=loop_samples)
    else:
        with open(input_path, "r", encoding="utf-8") as f:
            data = json.load(f)
        if not isinstance(data, list):
            raise InputValidationError("loop input must be a JSON list of {theta, S} samples")
        loop = loop_from_payload(data, closed=not open_loop)

    tol = config.tolerances()
    point = complex(np.exp(1j * rho))
    crossings = crossings_through(loop, point, tol)
    result = {"n": loop.n, "samples": len(loop.theta), "rho": rho, "crossings": crossings}
    if loop.closed:
        index, winding = maslov_index(loop, tol), det_winding(loop)
        result.update({"maslov": index, "det_winding": winding})
        if index != winding:
            raise ConsistencyError(f"Maslov index {index} differs from det winding {winding}")

    write_json(out_dir(config) / "maslov.json", result)
    result["files"] = ["maslov.json"]
    logger.info(f"Maslov n={loop.n}: crossings through e^(i{rho:g}) = {crossings}")
    emit(result)
