# fairconf/schemas/cli.py
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from fairconf.schemas.objective import ObjectiveSpec

Method = Literal["em", "iam", "pfair", "sfair", "mfairconf", "exact", "rrfs"]
LAMBDA_METHODS = ("mfairconf", "exact", "rrfs")


class CliConfig(BaseModel):
    """Options shared by the solving subcommands."""

    model_config = ConfigDict(extra="forbid")

    subcommand: str
    instance: Path
    method: Method = "em"
    lambda1: Optional[float] = Field(None, ge=0.0)
    lambda2: Optional[float] = Field(None, ge=0.0)
    w_eff: float = Field(1.0, ge=0.0)
    clusters: Optional[int] = Field(None, ge=1)
    cluster_seed: int = Field(0, ge=0)
    budget: Optional[int] = Field(None, ge=1)
    out: Optional[Path] = None
    metrics_out: Optional[Path] = None
    stdout: bool = False

    @model_validator(mode="after")
    def check_lambdas(self) -> "CliConfig":
        if self.method in LAMBDA_METHODS and (self.lambda1 is None or self.lambda2 is None):
            raise ValueError(f"--lambda1 and --lambda2 are required with --method {self.method}")
        return self

    def objective(self) -> ObjectiveSpec:
        if self.method in LAMBDA_METHODS:
            return ObjectiveSpec(w_eff=self.w_eff, lambda1=self.lambda1, lambda2=self.lambda2)
        return ObjectiveSpec.efficiency()
