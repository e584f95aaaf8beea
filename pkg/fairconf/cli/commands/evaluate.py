# fairconf/cli/commands/evaluate.py
from pathlib import Path
from typing import Optional

import typer

from fairconf.cli.errors import EXIT_VALIDATION, VALIDATION_ERRORS, abort, emit, require_output
from fairconf.services.clustering_service import ClusteringService
from fairconf.services.instance_service import InstanceService


def evaluate(
        instance: Path = typer.Option(..., "--instance"),
        schedule: Path = typer.Option(..., "--schedule"),
        out: Optional[Path] = typer.Option(None, "--out", help="metrics JSON"),
        stdout: bool = typer.Option(False, "--stdout")
) -> None:
    """Score a schedule file against an instance."""
    require_output(out, stdout)
    try:
        loaded = InstanceService.load_instance(instance)
        parsed = InstanceService.load_schedule(schedule, loaded)
        report = ClusteringService.evaluate_on_full(loaded, parsed)
    except VALIDATION_ERRORS as e:
        abort(e, EXIT_VALIDATION)

    emit(report.model_dump_json(indent=2), out, stdout)
