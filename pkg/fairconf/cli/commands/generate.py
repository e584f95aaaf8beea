# fairconf/cli/commands/generate.py
import json
from pathlib import Path
from typing import Optional

import typer
from pydantic import ValidationError

from fairconf.cli.errors import (
    EXIT_VALIDATION,
    VALIDATION_ERRORS,
    abort,
    emit,
    parse_ints,
    require_output
)
from fairconf.exceptions.instance_exceptions import ParseError
from fairconf.schemas.generator import GeneratorSpec
from fairconf.schemas.instance import InstanceSchema
from fairconf.services.datagen_service import DatagenService
from fairconf.services.instance_service import InstanceService


def generate(
        kind: Optional[str] = typer.Option(None, "--kind", help="uniform, timezone, partition or segregated"),
        preset: Optional[str] = typer.Option(
            None, "--preset", help="fatrec, recsys, icml or segregated-{availability,interest}[-imbalanced]"
        ),
        m: Optional[int] = typer.Option(None, "--m"),
        n: Optional[int] = typer.Option(None, "--n"),
        l: Optional[int] = typer.Option(None, "--l"),
        seed: Optional[int] = typer.Option(None, "--seed"),
        slot_minutes: Optional[int] = typer.Option(None, "--slot-minutes"),
        interest: Optional[str] = typer.Option(None, "--interest", help="bernoulli or normal"),
        values: Optional[str] = typer.Option(None, "--values", help="partition multiset, e.g. 1,2,3"),
        segregate: Optional[str] = typer.Option(None, "--segregate", help="availability or interest"),
        split: Optional[int] = typer.Option(None, "--split", help="size of the first segregated group"),
        config: Optional[Path] = typer.Option(None, "--config", help="GeneratorSpec JSON file"),
        out: Optional[Path] = typer.Option(None, "--out"),
        fmt: str = typer.Option("json", "--format", help="json or csv (directory)"),
        stdout: bool = typer.Option(False, "--stdout")
) -> None:
    """Write a synthetic instance."""
    require_output(out, stdout)
    try:
        fields = {}
        if config is not None:
            try:
                fields = json.loads(config.read_text())
            except (OSError, json.JSONDecodeError) as e:
                raise ParseError(f"Cannot read generator config {config}: {e}")

        flags = {
            "kind": kind,
            "preset": preset,
            "m": m,
            "n": n,
            "l": l,
            "seed": seed,
            "interest_source": interest,
            "values": parse_ints(values, "--values") if values else None,
            "segregate": segregate,
            "split": split
        }
        fields.update({key: value for key, value in flags.items() if value is not None})
        if slot_minutes is not None and l is not None:
            fields["slot_grid"] = {"count": l, "duration_min": slot_minutes}

        spec = GeneratorSpec.model_validate(fields)
        instance = DatagenService.generate(spec)
        InstanceService.validate_instance(instance)

        if stdout:
            emit(InstanceSchema.from_instance(instance).model_dump_json(indent=2), None, True)
        else:
            InstanceService.save_instance(instance, out, fmt)
    except ValidationError as e:
        abort(e, EXIT_VALIDATION)
    except VALIDATION_ERRORS as e:
        abort(e, EXIT_VALIDATION)
