# fairconf/cli/commands/compare.py
from pathlib import Path
from typing import Optional

import typer
from pydantic import ValidationError

from fairconf.cli.errors import (
    EXIT_SOLVER,
    EXIT_VALIDATION,
    SOLVER_ERRORS,
    VALIDATION_ERRORS,
    abort,
    emit,
    require_output
)
from fairconf.core.config import settings
from fairconf.schemas.objective import ObjectiveSpec
from fairconf.services.instance_service import InstanceService
from fairconf.services.pipeline_service import PipelineService


def compare(
        instance: Path = typer.Option(..., "--instance"),
        lambda1: float = typer.Option(..., "--lambda1", "--l1"),
        lambda2: float = typer.Option(..., "--lambda2", "--l2"),
        w_eff: float = typer.Option(1.0, "--w-eff"),
        budget: Optional[int] = typer.Option(None, "--budget"),
        clusters: Optional[int] = typer.Option(None, "--clusters"),
        cluster_seed: int = typer.Option(0, "--cluster-seed"),
        timings: bool = typer.Option(False, "--timings"),
        out: Optional[Path] = typer.Option(None, "--out", help="report CSV"),
        json_out: Optional[Path] = typer.Option(None, "--json-out"),
        stdout: bool = typer.Option(False, "--stdout")
) -> None:
    """EM, IAM, PFair, SFair and mFairConf side by side."""
    require_output(out, stdout)
    try:
        loaded = InstanceService.load_instance(instance)
        objective = ObjectiveSpec(w_eff=w_eff, lambda1=lambda1, lambda2=lambda2)
        report = PipelineService.compare_methods(
            loaded, objective, budget, k=clusters, cluster_seed=cluster_seed, timings=timings
        )
    except ValidationError as e:
        abort(e, EXIT_VALIDATION)
    except VALIDATION_ERRORS as e:
        abort(e, EXIT_VALIDATION)
    except SOLVER_ERRORS as e:
        abort(e, EXIT_SOLVER)

    emit(report.to_csv(decimals=settings.REPORT_DECIMALS), out, stdout)
    if json_out is not None:
        json_out.write_text(report.model_dump_json(indent=2))
