# fairconf/cli/router.py
import typer

from fairconf.cli.commands import cluster, compare, evaluate, generate, priority, schedule, sweep


def register_commands(app: typer.Typer) -> None:
    app.command("generate")(generate.generate)
    app.command("schedule")(schedule.schedule)
    app.command("evaluate")(evaluate.evaluate)
    app.command("sweep")(sweep.sweep)
    app.command("priority")(priority.priority)
    app.command("cluster")(cluster.cluster)
    app.command("compare")(compare.compare)
