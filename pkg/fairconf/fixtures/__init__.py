# fairconf/fixtures/__init__.py
from importlib import resources
from pathlib import Path

EXAMPLE_PROBLEMS = ("example_problem_1", "example_problem_2", "example_problem_3")


def fixture_path(name: str) -> Path:
    """Path of a bundled instance, e.g. fixture_path("example_problem_1")."""
    return Path(str(resources.files(__name__).joinpath(f"{name}.json")))
