# fairconf/cli/commands/cluster.py
from pathlib import Path
from typing import Optional

import typer

from fairconf.cli.errors import EXIT_VALIDATION, VALIDATION_ERRORS, abort, emit, require_output
from fairconf.schemas.cluster import ClusterModelSchema
from fairconf.schemas.instance import InstanceSchema
from fairconf.services.clustering_service import ClusteringService
from fairconf.services.instance_service import InstanceService


def cluster(
        instance: Path = typer.Option(..., "--instance"),
        k: int = typer.Option(..., "--clusters", "--k"),
        seed: int = typer.Option(0, "--cluster-seed", "--seed"),
        max_iter: Optional[int] = typer.Option(None, "--max-iter"),
        out: Optional[Path] = typer.Option(None, "--out", help="reduced instance JSON"),
        model_out: Optional[Path] = typer.Option(None, "--model-out"),
        stdout: bool = typer.Option(False, "--stdout")
) -> None:
    """Reduce participants to k weighted centroids."""
    require_output(out, stdout)
    try:
        loaded = InstanceService.load_instance(instance)
        model = ClusteringService.kmeans(
            ClusteringService.build_profiles(loaded), k, seed, max_iter
        )
        reduced = ClusteringService.clustered_instance(loaded, model)
    except VALIDATION_ERRORS as e:
        abort(e, EXIT_VALIDATION)

    emit(InstanceSchema.from_instance(reduced).model_dump_json(indent=2), out, stdout)
    if model_out is not None:
        model_out.write_text(ClusterModelSchema.from_model(loaded, model).model_dump_json(indent=2))
