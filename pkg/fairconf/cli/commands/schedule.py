# fairconf/cli/commands/schedule.py
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
from fairconf.schemas.cli import CliConfig
from fairconf.schemas.cluster import ClusterModelSchema
from fairconf.schemas.objective import ObjectiveSpec
from fairconf.schemas.schedule import ScheduleDocumentSchema
from fairconf.services.clustering_service import ClusteringService
from fairconf.services.instance_service import InstanceService
from fairconf.services.lp_service import LPService
from fairconf.services.pipeline_service import PipelineService
from fairconf.services.solver_service import SolverService


def schedule(
        instance: Path = typer.Option(..., "--instance", help="Instance JSON or CSV directory"),
        method: str = typer.Option("em", "--method"),
        lambda1: Optional[float] = typer.Option(None, "--lambda1", "--l1"),
        lambda2: Optional[float] = typer.Option(None, "--lambda2", "--l2"),
        w_eff: float = typer.Option(1.0, "--w-eff"),
        clusters: Optional[int] = typer.Option(None, "--clusters"),
        cluster_seed: int = typer.Option(0, "--cluster-seed"),
        budget: Optional[int] = typer.Option(None, "--budget"),
        fair_solver: str = typer.Option("rrfs", "--fair-solver", help="solver behind pfair/sfair"),
        out: Optional[Path] = typer.Option(None, "--out", help="schedule JSON"),
        metrics_out: Optional[Path] = typer.Option(None, "--metrics-out"),
        model_out: Optional[Path] = typer.Option(None, "--model-out", help="cluster model JSON"),
        dump_lp: Optional[Path] = typer.Option(None, "--dump-lp", help="write the relaxation in LP format"),
        stdout: bool = typer.Option(False, "--stdout")
) -> None:
    """Solve an instance with one method and write the schedule and its metrics."""
    try:
        config = CliConfig(
            subcommand="schedule",
            instance=instance,
            method=method,
            lambda1=lambda1,
            lambda2=lambda2,
            w_eff=w_eff,
            clusters=clusters,
            cluster_seed=cluster_seed,
            budget=budget,
            out=out,
            metrics_out=metrics_out,
            stdout=stdout
        )
    except ValidationError as e:
        abort(e, EXIT_VALIDATION)
    require_output(config.out, config.stdout)

    try:
        loaded = InstanceService.load_instance(config.instance)
        objective = config.objective()

        if dump_lp is not None:
            lp_objective = {
                "pfair": ObjectiveSpec.participant_fair(),
                "sfair": ObjectiveSpec.speaker_fair()
            }.get(config.method, objective)
            dump_lp.write_text(LPService.build_joint_lp(loaded, lp_objective).to_lp_text())

        if config.clusters is not None:
            result, model = ClusteringService.solve_clustered(
                loaded, config.clusters, config.method, objective,
                config.cluster_seed, config.budget, fair_solver
            )
            if model_out is not None:
                model_out.write_text(
                    ClusterModelSchema.from_model(loaded, model).model_dump_json(indent=2)
                )
        else:
            result = SolverService.solve(loaded, config.method, objective, config.budget, fair_solver)
    except VALIDATION_ERRORS as e:
        abort(e, EXIT_VALIDATION)
    except SOLVER_ERRORS as e:
        abort(e, EXIT_SOLVER)

    document = ScheduleDocumentSchema.from_schedule(loaded, result.schedule)
    emit(document.model_dump_json(indent=2), config.out, config.stdout)
    if config.metrics_out is not None:
        row = PipelineService.solve_result_row(loaded, result, k=config.clusters)
        config.metrics_out.write_text(row.model_dump_json(indent=2))
