# lsl/commands/flow.py
import json
import logging
from typing import List, Optional

import click
import numpy as np

from lsl.combinatorics import SubsetIndex, parse_subset
from lsl.commands.common import ConsistencyError, build_config, emit, guarded, out_dir, run_options
from lsl.errors import FlowHorizonError, InputValidationError
from lsl.exports import to_csv, write_csv, write_json
from lsl.matrices import random_unitary, unitary
from lsl.morse import flow as flow_unitary
from lsl.morse import trajectory
from lsl.schemas import FlowRecord, MatrixPayload, RunConfig, SnapshotPayload, SubsetPayload
from lsl.strata import FlowDirection, flow_limit, horizons, tunnelling_exists

logger = logging.getLogger(__name__)

TRAJECTORY_POINTS = 41
DEFAULT_SPAN = 5.0


def load_matrix(path: str) -> np.ndarray:
    """MatrixPayload JSON, or a nested list of [re, im] pairs."""
    with open(path, "r", encoding="utf-8") as f:
        data = json.load(f)
    if isinstance(data, dict):
        return MatrixPayload(**data).to_array()
    try:
        return np.array([[complex(re, im) for re, im in row] for row in data])
    except (TypeError, ValueError) as e:
        raise InputValidationError(f"cannot read matrix from {path}: {e}")


def initial_unitary(config: RunConfig, input_path: Optional[str], random: bool) -> np.ndarray:
    if random == bool(input_path):
        raise InputValidationError("give exactly one of --input and --random")
    if random:
        return random_unitary(config.n, np.random.default_rng(config.seed))
    S = unitary(load_matrix(input_path), config.tolerances())
    if S.shape[0] != config.n:
        logger.info(f"Using n={S.shape[0]} from the input matrix")
    return S


def parse_targets(text: Optional[str], n: int) -> List[SubsetIndex]:
    """Subsets separated by ';', e.g. '1,3;2;-' ('-' is the empty set)."""
    if not text:
        return []
    try:
        return [parse_subset(part, n) for part in text.split(";")]
    except ValueError as e:
        raise InputValidationError(f"invalid --targets {text!r}: {e}")


def parse_times(text: Optional[str]) -> List[float]:
    if not text:
        return []
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise InputValidationError(f"invalid --snapshots {text!r}: {e}")


@click.command("flow")
@run_options
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--random", "random_start", is_flag=True, help="Start from a Haar-random unitary.")
@click.option("--tmax", "t_max", type=click.FloatRange(min=0, min_open=True), default=None)
@click.option("--targets", default=None, help="Extra distance columns, e.g. '1;2,3;-'.")
@click.option("--snapshots", default=None, help="Times t1,t2,... for Φ_t(S) matrix snapshots.")
@guarded
def flow(input_path, random_start, targets, snapshots, **flags):
    """Follow the flow from S in both directions and classify the limits."""
    config = build_config(**flags)
    tol = config.tolerances()
    S = initial_unitary(config, input_path, random_start)
    n = S.shape[0]
    spec = config.model_copy(update={"n": n}).flow_spec()
    extra = parse_targets(targets, n)
    snapshot_times = parse_times(snapshots)

    backward = flow_limit(S, spec, FlowDirection.BACKWARD, tol, config.t_max)
    forward = flow_limit(S, spec, FlowDirection.FORWARD, tol, config.t_max)
    if not tunnelling_exists(backward, forward):
        raise ConsistencyError(f"limits {backward} -> {forward} violate the cell order")
    if random_start and (backward != SubsetIndex.empty(n) or forward != SubsetIndex.full(n)):
        raise ConsistencyError(f"generic start reached {backward} -> {forward}")

    span = min(config.t_max or DEFAULT_SPAN, horizons(spec)[-1])
    times = np.linspace(-span, span, TRAJECTORY_POINTS)
    columns = list(dict.fromkeys([backward, forward, *extra]))
    rows = trajectory(S, spec, times, columns)
    header = list(rows[0])
    record = FlowRecord(
        backward=SubsetPayload.from_subset(backward),
        forward=SubsetPayload.from_subset(forward),
        morse_initial=rows[0]["morse_value"],
        morse_final=rows[-1]["morse_value"],
    )

    shots = []
    for t in snapshot_times:
        try:
            St = flow_unitary(S, t, spec)
        except FlowHorizonError as e:
            raise InputValidationError(f"snapshot time {t}: {e}")
        shots.append(SnapshotPayload(t=t, matrix=MatrixPayload.from_array(St)))

    target = out_dir(config)
    write_csv(target / "trajectory.csv", header, ([row[h] for h in header] for row in rows))
    write_json(target / "flow.json", record.model_dump())
    files = ["trajectory.csv", "flow.json"]
    if shots:
        write_json(target / "snapshots.json", [shot.model_dump() for shot in shots])
        files.append("snapshots.json")
    logger.info(f"Flow n={n}: {backward} -> {forward}")

    result = {"n": n, "record": record.model_dump(), "files": files}
    if config.format == "csv":
        result["trajectory"] = to_csv(header, ([row[h] for h in header] for row in rows))
    emit(result)
