# lsl/commands/verify.py
import logging

import click

from lsl.commands.common import build_config, emit, guarded, out_dir, run_options
from lsl.exports import write_json
from lsl.runtime import log_host_metrics, timing_decorator
from lsl.verify import Suite, run_verification

logger = logging.getLogger(__name__)


@timing_decorator
def timed_verification(*args, **kwargs):
    return run_verification(*args, **kwargs)


@click.command("verify")
@run_options
@click.option(
    "--suite",
    type=click.Choice([s.value for s in Suite]),
    default=None,
    help="Run a single suite instead of all of them.",
)
@click.option(
    "--samples", type=click.IntRange(min=1), default=None, help="Random samples per group."
)
@click.option("--budget", type=click.IntRange(min=0), default=None, help="Witness search restarts.")
@click.option("--details", is_flag=True, help="Include every case result in the report.")
@click.option("--inject-sign-flip", is_flag=True, hidden=True)
@guarded
def verify(details: bool, inject_sign_flip: bool, **flags):
    """Run the verification suites; exit 1 when any case fails."""
    config = build_config(**flags)
    suites = [Suite(config.suite)] if config.suite else None
    log_host_metrics()
    (report, cases), elapsed = timed_verification(
        config.n,
        config.seed,
        suites=suites,
        samples=config.samples,
        budget=config.budget,
        tol=config.tolerances(),
        inject_sign_flip=inject_sign_flip,
    )
    logger.info(f"Verification finished in {elapsed:.2f}s")

    payload = report.model_dump()
    if details:
        payload["cases"] = {
            name: [r.model_dump() for r in results] for name, results in cases.items()
        }
    files = []
    if config.out:
        write_json(out_dir(config) / "report.json", payload)
        files.append("report.json")
    payload["files"] = files

    if not report.passed:
        failed = [s.suite for s in report.suites if s.failures]
        emit(payload, message=f"verification failed in: {', '.join(failed)}", ok=False)
        return 1
    emit(payload)
