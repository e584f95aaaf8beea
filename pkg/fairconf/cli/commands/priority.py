# fairconf/cli/commands/priority.py
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
    parse_ints,
    require_output
)
from fairconf.exceptions.instance_exceptions import ParseError
from fairconf.schemas.cli import LAMBDA_METHODS
from fairconf.schemas.objective import ObjectiveSpec
from fairconf.schemas.plan import PriorityPlan
from fairconf.schemas.schedule import ScheduleDocumentSchema
from fairconf.services.instance_service import InstanceService
from fairconf.services.pipeline_service import PipelineService


def priority(
        instance: Path = typer.Option(..., "--instance"),
        groups: int = typer.Option(3, "--groups", help="equal-size interest groups"),
        sequence: str = typer.Option("1,2,3", "--sequence", help="group order, repeats allowed"),
        from_tags: bool = typer.Option(False, "--from-tags", help="group talks by their priority tags"),
        plan_path: Optional[Path] = typer.Option(None, "--plan", help="PriorityPlan JSON"),
        method: str = typer.Option("rrfs", "--method"),
        lambda1: Optional[float] = typer.Option(None, "--lambda1", "--l1"),
        lambda2: Optional[float] = typer.Option(None, "--lambda2", "--l2"),
        w_eff: float = typer.Option(1.0, "--w-eff"),
        budget: Optional[int] = typer.Option(None, "--budget"),
        out: Optional[Path] = typer.Option(None, "--out", help="multi-round schedule JSON"),
        report_out: Optional[Path] = typer.Option(None, "--report-out"),
        stdout: bool = typer.Option(False, "--stdout")
) -> None:
    """Schedule talk groups in rounds over the remaining slots."""
    require_output(out, stdout)
    if plan_path is None and method in LAMBDA_METHODS and (lambda1 is None or lambda2 is None):
        raise typer.BadParameter(
            f"--lambda1 and --lambda2 are required with --method {method}", param_hint="--lambda1"
        )
    try:
        loaded = InstanceService.load_instance(instance)
        if plan_path is not None:
            try:
                plan = PriorityPlan.model_validate_json(plan_path.read_text())
            except OSError as e:
                raise ParseError(f"Cannot read plan {plan_path}: {e}")
        else:
            talk_groups = (
                PipelineService.groups_from_priorities(loaded)
                if from_tags
                else PipelineService.partition_by_priority(loaded, groups)
            )
            objective = None
            if method in LAMBDA_METHODS:
                objective = ObjectiveSpec(w_eff=w_eff, lambda1=lambda1, lambda2=lambda2)
            plan = PipelineService.build_plan(
                loaded, talk_groups, parse_ints(sequence, "--sequence"), objective, method
            )

        result = PipelineService.run_priority_schedule(loaded, plan, budget)
        resolved = [[loaded.talk_index(t) for t in group] for group in plan.groups]
        report = PipelineService.priority_report(loaded, result, resolved, plan.sequence)
    except ValidationError as e:
        abort(e, EXIT_VALIDATION)
    except VALIDATION_ERRORS as e:
        abort(e, EXIT_VALIDATION)
    except SOLVER_ERRORS as e:
        abort(e, EXIT_SOLVER)

    document = ScheduleDocumentSchema.from_schedule(loaded, result)
    emit(document.model_dump_json(indent=2), out, stdout)
    if report_out is not None:
        report_out.write_text(report.model_dump_json(indent=2))
