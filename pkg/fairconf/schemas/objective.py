# fairconf/schemas/objective.py
from pydantic import BaseModel, ConfigDict, Field, model_validator


class ObjectiveSpec(BaseModel):
    """Weights of the scalarized objective: efficiency, participant and speaker fairness."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    w_eff: float = Field(1.0, ge=0.0)
    lambda1: float = Field(0.0, ge=0.0)
    lambda2: float = Field(0.0, ge=0.0)

    @model_validator(mode="after")
    def check_not_all_zero(self) -> "ObjectiveSpec":
        if self.w_eff == 0 and self.lambda1 == 0 and self.lambda2 == 0:
            raise ValueError("w_eff, lambda1 and lambda2 cannot all be zero")
        return self

    @classmethod
    def efficiency(cls) -> "ObjectiveSpec":
        return cls(w_eff=1.0, lambda1=0.0, lambda2=0.0)

    @classmethod
    def balanced(cls) -> "ObjectiveSpec":
        """Efficiency with both fairness gaps at weight 0.5, the default mFairConf setting."""
        return cls(w_eff=1.0, lambda1=0.5, lambda2=0.5)

    @classmethod
    def participant_fair(cls) -> "ObjectiveSpec":
        return cls(w_eff=0.0, lambda1=1.0, lambda2=0.0)

    @classmethod
    def speaker_fair(cls) -> "ObjectiveSpec":
        return cls(w_eff=0.0, lambda1=0.0, lambda2=1.0)
