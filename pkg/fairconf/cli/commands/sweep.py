# fairconf/cli/commands/sweep.py
from pathlib import Path
from typing import Optional

import typer

from fairconf.cli.errors import (
    EXIT_SOLVER,
    EXIT_VALIDATION,
    SOLVER_ERRORS,
    VALIDATION_ERRORS,
    abort,
    emit,
    parse_grid,
    require_output
)
from fairconf.core.config import settings
from fairconf.services.instance_service import InstanceService
from fairconf.services.pipeline_service import PipelineService


def sweep(
        instance: Path = typer.Option(..., "--instance"),
        method: str = typer.Option("rrfs", "--method", help="exact, rrfs or mfairconf"),
        lambda1: str = typer.Option(..., "--l1", "--lambda1", help="comma-separated grid"),
        lambda2: str = typer.Option(..., "--l2", "--lambda2", help="comma-separated grid"),
        w_eff: float = typer.Option(1.0, "--w-eff"),
        budget: Optional[int] = typer.Option(None, "--budget"),
        clusters: Optional[int] = typer.Option(None, "--clusters"),
        cluster_seed: int = typer.Option(0, "--cluster-seed"),
        jobs: int = typer.Option(1, "--jobs", min=1),
        timings: bool = typer.Option(False, "--timings"),
        out: Optional[Path] = typer.Option(None, "--out", help="report CSV"),
        json_out: Optional[Path] = typer.Option(None, "--json-out"),
        stdout: bool = typer.Option(False, "--stdout")
) -> None:
    """Run a lambda grid plus the EM, IAM, PFair and SFair baselines."""
    if method not in ("exact", "rrfs", "mfairconf"):
        raise typer.BadParameter("sweeps use exact, rrfs or mfairconf", param_hint="--method")
    require_output(out, stdout)
    grid1 = parse_grid(lambda1, "--l1")
    grid2 = parse_grid(lambda2, "--l2")

    try:
        loaded = InstanceService.load_instance(instance)
        report = PipelineService.run_sweep(
            loaded, method, grid1, grid2,
            w_eff=w_eff,
            budget=budget,
            k=clusters,
            cluster_seed=cluster_seed,
            jobs=jobs,
            timings=timings
        )
    except VALIDATION_ERRORS as e:
        abort(e, EXIT_VALIDATION)
    except SOLVER_ERRORS as e:
        abort(e, EXIT_SOLVER)

    emit(report.to_csv(decimals=settings.REPORT_DECIMALS), out, stdout)
    if json_out is not None:
        json_out.write_text(report.model_dump_json(indent=2))
